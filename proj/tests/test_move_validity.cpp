#include <doctest.h>

#include <algorithm>

#include "dpcox/errors.hpp"
#include "dpcox/move_validity.hpp"
#include "support/convert.hpp"

using namespace dpcox;

namespace {

DivisorClass minus_k(int r) { return -canonical_class(r); }

CaptureMove move(MoveKind kind, const SurfaceModel& m, const char* a1, const char* a2, const char* c) {
  return {kind, 2, {m.index_of(a1), m.index_of(a2)}, m.index_of(c)};
}

}  // namespace

TEST_CASE("nef and big check") {
  const auto m6 = enumerate_exceptional(6);
  const auto n = nef_big_check(DivisorClass(6, {5, -2, -2, -2, -2, -2, -2}), m6);
  REQUIRE(n);
  CHECK(n->min_product == 0);
  CHECK(n->n_squared == 1);
  CHECK_FALSE(nef_big_check(DivisorClass(6), m6));
  for (int r = 2; r <= 7; ++r) {
    const auto k = nef_big_check(minus_k(r), enumerate_exceptional(r));
    REQUIRE(k);
    CHECK(k->min_product == 1);
    CHECK(k->n_squared == 9 - r);
  }
  CHECK_FALSE(nef_big_check(DivisorClass::line(6) - DivisorClass::exceptional(6, 1), m6));  // N^2 = 0
}

TEST_CASE("validating individual moves") {
  const auto g6 = build_graph(enumerate_exceptional(6));
  const auto ev = validate_move(minus_k(6), move(MoveKind::R6_PATH, g6.model(), "e1", "e2", "f12"), g6);
  REQUIRE(ev);
  CHECK(ev->n_class == DivisorClass(6, {5, -2, -2, -2, -2, -2, -2}));
  CHECK(ev->min_product == 0);
  CHECK(ev->n_squared == 1);
  CHECK(ev->rule == MoveKind::R6_PATH);

  const auto g7 = build_graph(enumerate_exceptional(7));
  const auto& m7 = g7.model();
  const auto p1 = validate_move(-2 * canonical_class(7), move(MoveKind::P1, m7, "e1", "e2", "h1"), g7);
  REQUIRE(p1);
  CHECK(p1->min_product >= 0);
  CHECK(p1->n_squared > 0);

  const DivisorClass d = minus_k(7) + DivisorClass::line(7);
  const int e1 = m7.index_of("e1");
  const CaptureMove m5{MoveKind::M5, 1, {e1, -1}, dual_index(e1, m7)};
  const auto ev5 = validate_move(d, m5, g7);
  REQUIRE(ev5);
  CHECK(intersect(d, m7.curve(e1).divisor) == 1);
  CHECK(intersect(ev5->n_class, m7.curve(e1).divisor) == -1);

  const auto g5 = build_graph(enumerate_exceptional(5));
  CHECK_FALSE(validate_move(DivisorClass::line(5), move(MoveKind::R5_EDGE, g5.model(), "e1", "e2", "f13"), g5));
  CHECK_THROWS_AS(validate_move(minus_k(5), move(MoveKind::R6_PATH, g5.model(), "e1", "e2", "f13"), g5),
                  ContractViolation);
}

TEST_CASE("nef enumeration matches brute force") {
  for (int r = 2; r <= 7; ++r) {
    const auto m = enumerate_exceptional(r);
    for (int t = 1; t <= (r == 7 ? 4 : 5); ++t) {
      CAPTURE(r);
      CAPTURE(t);
      const auto ref = oracle::nef_classes(r, t);
      const auto got = enumerate_nef_classes(r, t, m);
      REQUIRE(got.size() == ref.size());
      CHECK(std::is_sorted(got.begin(), got.end()));
      for (const auto& d : got) CHECK(ref.count(to_vec(d)) == 1);
    }
  }
  const auto m4 = enumerate_exceptional(4);
  const auto deg2 = enumerate_nef_classes(4, 2, m4);
  CHECK(std::count(deg2.begin(), deg2.end(), DivisorClass(4, {2, -1, -1, -1, -1})) == 1);
  for (int i = 1; i <= 4; ++i)
    CHECK(std::count(deg2.begin(), deg2.end(), DivisorClass::line(4) - DivisorClass::exceptional(4, i)) == 1);
  const auto r6 = enumerate_nef_classes(6, 3, enumerate_exceptional(6));
  CHECK(std::count(r6.begin(), r6.end(), minus_k(6)) == 1);
  const auto r7 = enumerate_nef_classes(7, 2, enumerate_exceptional(7));
  CHECK(std::count(r7.begin(), r7.end(), minus_k(7)) == 1);
}

TEST_CASE("effective classes are closed and complete at low degree") {
  for (int r = 2; r <= 6; ++r) {
    const auto m = enumerate_exceptional(r);
    const auto classes = effective_classes(r, 3, m);
    for (const auto& d : classes) CHECK(is_effective(d, m));
    // Every box class of degree <= 3 that the lattice calls effective is listed.
    std::size_t in_box = 0;
    oracle::for_each_in_box(r, 3, 3, [&](const oracle::Vec& v) {
      if (oracle::degree(v) > 3) return;
      const auto d = to_class(v);
      if (!is_effective(d, m)) return;
      ++in_box;
      CHECK(std::binary_search(classes.begin(), classes.end(), d));
    });
    CHECK(in_box > 0);
  }
}

TEST_CASE("certification routes") {
  const auto g6 = build_graph(enumerate_exceptional(6));
  const auto c = certify(minus_k(6), g6);
  CHECK(c.route == Route::GAME);
  REQUIRE(c.game);
  CHECK(static_cast<int>(c.game->moves.size()) == 25);
  CHECK(verify_certificate(c, g6));

  const auto g5 = build_graph(enumerate_exceptional(5));
  const auto bad = certify(DivisorClass(5, {4, 2, -1, -1, -1, -1}), g5);
  CHECK(bad.route == Route::NOT_NEF);
  CHECK(bad.m_d < 0);
  CHECK(intersect(bad.divisor, g5.model().curve(bad.violating_curve).divisor) < 0);

  const auto contraction = certify(DivisorClass::line(5), g5);
  CHECK(contraction.route == Route::CONTRACTION);
  REQUIRE(contraction.contraction);
  CHECK(intersect(DivisorClass::line(5), g5.model().curve(contraction.contraction->contracted).divisor) == 0);
  CHECK(verify_certificate(contraction, g5));

  CHECK_THROWS_AS(certify(DivisorClass(5, {0, 1, 0, 0, 0, 0}), g5), ContractViolation);

  const auto g7 = build_graph(enumerate_exceptional(7));
  const auto& m7 = g7.model();
  const DivisorClass q = DivisorClass::line(7) - DivisorClass::exceptional(7, 1);
  const auto w = certify(minus_k(7) + q, g7);
  REQUIRE(w.route == Route::GAME);
  for (int s : w.game->start.members()) CHECK(intersect(q, m7.curve(s).divisor) == 0);
  CHECK(std::all_of(w.game->moves.begin(), w.game->moves.end(), [](const CertifiedMove& cm) {
    return cm.move.kind == MoveKind::W1 || cm.move.kind == MoveKind::W2 || cm.move.kind == MoveKind::W3;
  }));
}

TEST_CASE("tampered certificates are rejected") {
  const auto g = build_graph(enumerate_exceptional(6));
  auto c = certify(minus_k(6), g);
  auto wrong_divisor = c;
  wrong_divisor.divisor = DivisorClass::line(6);
  CHECK_FALSE(verify_certificate(wrong_divisor, g));
  auto wrong_route = c;
  wrong_route.route = Route::CONTRACTION;
  CHECK_FALSE(verify_certificate(wrong_route, g));
  auto wrong_evidence = c;
  wrong_evidence.game->moves[3].evidence->n_squared += 1;
  CHECK_FALSE(verify_certificate(wrong_evidence, g));
  auto short_game = c;
  short_game.game->moves.pop_back();
  CHECK_FALSE(verify_certificate(short_game, g));
}

TEST_CASE("property: every swept certificate is consistent and deterministic") {
  for (int r = 2; r <= 7; ++r) {
    CAPTURE(r);
    const auto g = build_graph(enumerate_exceptional(r));
    const auto& m = g.model();
    const int top = r == 7 ? 4 : 6;
    const auto certs = sweep(r, top, g);
    CHECK(certs.size() == nef_classes_up_to(r, 3, top, m).size());
    CHECK(sweep(r, top, g, {}, 3).size() == certs.size());
    for (const auto& c : certs) {
      CHECK(verify_certificate(c, g));
      const auto m_d = nef_report(c.divisor, m).m_d;
      CHECK(c.m_d == m_d);
      CHECK(c.route != Route::NOT_NEF);
      if (c.route == Route::CONTRACTION) CHECK(m_d == 0);
      if (c.route == Route::GAME) {
        CHECK(m_d >= 1);
        CHECK(c.game->moves.size() + c.game->start.size() == static_cast<std::size_t>(m.size()));
        for (const auto& cm : c.game->moves) {
          if (cm.move.anchor_count != 2) continue;
          REQUIRE(cm.evidence);
          CHECK(g.mult(cm.move.anchors[0], cm.move.anchors[1]) == 0);
          CHECK(cm.evidence->min_product >= 0);
          CHECK(cm.evidence->n_squared > 0);
        }
      }
    }
  }
}

TEST_CASE("sweep is independent of thread count") {
  const auto g = build_graph(enumerate_exceptional(6));
  const auto a = sweep(6, 5, g, {}, 1);
  const auto b = sweep(6, 5, g, {}, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].divisor == b[i].divisor);
    CHECK(a[i].route == b[i].route);
    CHECK(a[i].game == b[i].game);
  }
}

TEST_CASE("m_D = 1 on X_7 splits as -K plus a nonzero nef class") {
  const auto g = build_graph(enumerate_exceptional(7));
  const auto& m = g.model();
  for (const auto& d : nef_classes_up_to(7, 3, 5, m)) {
    if (nef_report(d, m).m_d != 1) continue;
    const auto f = d + canonical_class(7);
    CHECK_FALSE(f.is_zero());
    CHECK(nef_report(f, m).is_nef);
    CHECK(is_effective(f, m));
  }
}

TEST_CASE("A' bounds and the start pair for m_D = 1, F not a conic multiple") {
  const auto g = build_graph(enumerate_exceptional(7));
  const auto& m = g.model();
  int cases = 0;
  for (const auto& d : nef_classes_up_to(7, 3, 6, m)) {
    MoveValidator v(d, g);
    if (v.m_d() != 1 || v.conic()) continue;
    ++cases;
    const auto f = d + canonical_class(7);
    const auto prods = m.products(f);
    int c = -1;
    for (int i = 0; i < m.size() && c < 0; ++i)
      if (prods(i) == 0) c = i;
    REQUIRE(c >= 0);
    int a = -1;
    for (int i = 0; i < m.size(); ++i)
      if (i != c && g.mult(i, c) == 0 && (a < 0 || prods(i) < prods(a))) a = i;
    const auto a_dual = prods(dual_index(a, m));
    if (prods(a) == 0) CHECK(a_dual >= 3);
    else CHECK(a_dual >= 2);
    CHECK(game_plan(v, {}).start == VertexSet(m.size(), {a, c}));
  }
  CHECK(cases > 0);
}

TEST_CASE("curves off a conic multiple meet a disjoint contracted pair") {
  const auto g = build_graph(enumerate_exceptional(7));
  const auto& m = g.model();
  int cases = 0;
  for (const auto& d : nef_classes_up_to(7, 3, 6, m)) {
    MoveValidator v(d, g);
    if (v.m_d() != 1 || !v.conic()) continue;
    ++cases;
    const auto prods = m.products(d + canonical_class(7));
    for (int b = 0; b < m.size(); ++b) {
      if (prods(b) == 0) continue;
      bool found = false;
      for (int a = 0; a < m.size() && !found; ++a)
        for (int c = a + 1; c < m.size() && !found; ++c)
          found = prods(a) == 0 && prods(c) == 0 && g.mult(a, c) == 0 && g.mult(a, b) == 1 && g.mult(c, b) == 1;
      CHECK(found);
    }
  }
  CHECK(cases > 0);
}

TEST_CASE("side conditions imply the lattice conclusion (low degree)") {
  for (int r = 5; r <= 7; ++r) {
    const auto g = build_graph(enumerate_exceptional(r));
    const auto rep = side_condition_sweep(g, 3, r == 7 ? 4 : 6);
    CHECK(rep.instances > 0);
    CHECK(rep.counterexamples.empty());
  }
}

TEST_CASE("move kind names round-trip") {
  for (auto k : {MoveKind::R5_EDGE, MoveKind::R6_PATH, MoveKind::P1, MoveKind::P2, MoveKind::M1, MoveKind::M2,
                 MoveKind::M3, MoveKind::M4, MoveKind::M5, MoveKind::W1, MoveKind::W2, MoveKind::W3,
                 MoveKind::GENERIC})
    CHECK(parse_move_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_move_kind("M9"), ValidationError);
  for (auto r : {Route::NOT_NEF, Route::CONTRACTION, Route::GAME}) CHECK(parse_route(to_string(r)) == r);
  for (auto k : {MoveKind::R5_EDGE, MoveKind::R6_PATH, MoveKind::P1, MoveKind::P2, MoveKind::W1}) {
    const auto d = diagram_for(k);
    if (d.anchor_count == 2) CHECK(d.a1_a2 == 0);
  }
}
