#include "dpcox/move_validity.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <exception>
#include <limits>
#include <thread>

#include "dpcox/checked_int.hpp"
#include "dpcox/errors.hpp"

namespace dpcox {

std::optional<NefBig> nef_big_check(const DivisorClass& n, const SurfaceModel& model) {
  const auto m = model.min_product(n);
  if (m < 0) return std::nullopt;
  const auto sq = self_intersection(n);
  if (sq <= 0) return std::nullopt;
  return NefBig{m, sq};
}

MoveValidator::MoveValidator(const DivisorClass& d, const CurveGraph& g) : d_(d), g_(&g) {
  const auto& model = g.model();
  require_same_rank(d, model.canonical());
  d_prod_ = model.products(d);
  m_d_ = d_prod_.minCoeff();
  d_squared_ = self_intersection(d);
  degree_ = anticanonical_degree(d);
  const int n = model.size();
  if (model.rank() == 7 && m_d_ == 1) {
    f_ = d + model.canonical();
    f_prod_ = model.products(*f_);
    if (!f_->is_zero()) conic_ = conic_structure(*f_, model);
    f_min_disjoint_.resize(n);
    for (int c = 0; c < n; ++c) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (int e = 0; e < n; ++e)
        if (e != c && g.mult(c, e) == 0) best = std::min(best, f_prod_(e));
      f_min_disjoint_(c) = best;
    }
  }
}

SideConditions MoveValidator::side_conditions(const CaptureMove& m) const {
  SideConditions out;
  out.hold = evaluate_side_conditions(m, &out.facts);
  return out;
}

bool MoveValidator::side_conditions_hold(const CaptureMove& m) const { return evaluate_side_conditions(m, nullptr); }

bool MoveValidator::evaluate_side_conditions(const CaptureMove& m, std::vector<std::string>* facts) const {
  if (!realizes_diagram(*g_, m)) {
    throw ContractViolation("move images do not realize the " + std::string(to_string(m.kind)) + " diagram");
  }
  struct {
    bool hold = true;
  } out;
  auto check = [&](bool ok, const char* name) {
    if (facts) facts->emplace_back(name);
    out.hold = out.hold && ok;
  };
  const int r = g_->model().rank();
  const int a1 = m.anchors[0], a2 = m.anchors[1], c = m.captured;
  if (m.anchor_count == 2) check(g_->mult(a1, a2) == 0, "anchors_disjoint");

  auto m_context = [&] {
    check(r == 7, "rank=7");
    check(m_d_ == 1, "m_D=1");
    bool ok = out.hold && f_ && !f_->is_zero() && !conic_;
    check(ok, "F_nonzero_not_conic_multiple");
    return ok;
  };
  auto w_context = [&] {
    check(r == 7, "rank=7");
    check(m_d_ == 1, "m_D=1");
    bool ok = out.hold && conic_.has_value();
    check(ok, "F=mQ");
    return ok;
  };

  switch (m.kind) {
    case MoveKind::R5_EDGE:
      check(r == 5, "rank=5");
      check(m_d_ >= 1, "m_D>=1");
      break;
    case MoveKind::R6_PATH:
      check(r == 6, "rank=6");
      check(m_d_ >= 1, "m_D>=1");
      break;
    case MoveKind::P1:
    case MoveKind::P2:
      check(r == 7, "rank=7");
      check(m_d_ >= 2, "m_D>=2");
      break;
    case MoveKind::M1:
    case MoveKind::M3:
    case MoveKind::M4:
      if (m_context()) {
        check(f_prod_(a2) == 0, "F.C=0");
        check(f_prod_(a1) == f_min_disjoint_(a2), "F.A_minimal_disjoint_from_C");
      }
      break;
    case MoveKind::M2:
      if (m_context()) check(f_prod_(a2) == 0, "F.C=0");
      break;
    case MoveKind::M5:
      if (m_context()) {
        check(d_prod_(a1) == 1, "D.C=1");
        check(d_prod_(a1) - g_->mult(a1, c) == -1, "(D-C').C=-1");
      }
      break;
    case MoveKind::W1:
    case MoveKind::W2:
    case MoveKind::W3:
      if (w_context()) {
        check(f_prod_(a1) == 0 && f_prod_(a2) == 0, "anchors_contracted_by_F");
        if (m.kind == MoveKind::W1) check(f_prod_(c) == 0, "F.B=0");
        if (m.kind == MoveKind::W3) {
          // B' = -K - B, so F.B' = -K.F - F.B.
          check(anticanonical_degree(*f_) - f_prod_(c) >= 1, "F.B'>=1");
        }
      }
      break;
    case MoveKind::GENERIC:
      break;
  }
  return out.hold;
}

std::optional<NefBig> MoveValidator::nef_big(const CaptureMove& m) const {
  if (m.anchor_count != 2) throw ContractViolation("nef_big needs a two-anchor move");
  const int a1 = m.anchors[0], a2 = m.anchors[1], c = m.captured;
  const int n = g_->vertex_count();
  auto gram = [this](int i, int j) -> std::int64_t { return i == j ? -1 : g_->mult(i, j); };
  std::int64_t min_product = std::numeric_limits<std::int64_t>::max();
  for (int h = 0; h < n; ++h) {
    // N.H = D.H - (a1 + a2 + c).H - K.H
    std::int64_t v = d_prod_(h) - gram(a1, h) - gram(a2, h) - gram(c, h) + 1;
    if (v < 0) return std::nullopt;
    min_product = std::min(min_product, v);
  }
  const std::int64_t s_sq = -3 + 2 * (gram(a1, a2) + gram(a1, c) + gram(a2, c));
  const std::int64_t d_dot_s = d_prod_(a1) + d_prod_(a2) + d_prod_(c);
  const std::int64_t k_sq = 9 - g_->model().rank();
  const std::int64_t n_sq = d_squared_ + s_sq + k_sq - 2 * d_dot_s + 2 * degree_ - 6;
  if (n_sq <= 0) return std::nullopt;
  return NefBig{min_product, n_sq};
}

std::optional<ValidityEvidence> MoveValidator::validate(const CaptureMove& m) const {
  auto side = side_conditions(m);
  if (!side.hold) return std::nullopt;
  const auto& model = g_->model();
  ValidityEvidence ev;
  ev.rule = m.kind;
  ev.side_conditions = std::move(side.facts);
  if (m.kind == MoveKind::M5) {
    // C lies in the fixed part of D - C'.
    ev.n_class = d_ - model.curve(m.captured).divisor;
    ev.min_product = model.min_product(ev.n_class);
    ev.n_squared = self_intersection(ev.n_class);
    if (intersect(ev.n_class, model.curve(m.anchors[0]).divisor) != -1) {
      throw InternalConsistencyError("M5 side conditions hold but (D - C').C != -1");
    }
    return ev;
  }
  auto fast = nef_big(m);
  if (!fast) return std::nullopt;
  ev.n_class = d_ - model.curve(m.anchors[0]).divisor - model.curve(m.anchors[1]).divisor -
               model.curve(m.captured).divisor - model.canonical();
  auto exact = nef_big_check(ev.n_class, model);
  if (!exact || exact->min_product != fast->min_product || exact->n_squared != fast->n_squared) {
    throw InternalConsistencyError("cached nef/big test disagrees with direct evaluation");
  }
  ev.min_product = exact->min_product;
  ev.n_squared = exact->n_squared;
  return ev;
}

MoveOracle MoveValidator::oracle(std::vector<MoveKind> kinds) const {
  return MoveOracle{std::move(kinds), [this](const CaptureMove& m) {
                      auto ev = validate(m);
                      return MoveVerdict{ev.has_value(), std::move(ev)};
                    }};
}

std::optional<ValidityEvidence> validate_move(const DivisorClass& d, const CaptureMove& m, const CurveGraph& g) {
  return MoveValidator(d, g).validate(m);
}

std::vector<DivisorClass> enumerate_nef_classes(int rank, int degree, const SurfaceModel& model) {
  require_valid_rank(rank);
  if (model.rank() != rank) throw ContractViolation("model rank does not match");
  if (degree < 1) throw ContractViolation("degree must be positive");
  // Nef D pairs nonnegatively with e_i (so d_i <= 0) and with the effective
  // class -K - E_i (so -d_i <= degree); d0 is then forced by -K.D = degree.
  std::vector<DivisorClass> out;
  std::vector<int> m(static_cast<std::size_t>(rank), 0);
  std::vector<DivisorClass::Coefficient> c(static_cast<std::size_t>(rank + 1));
  while (true) {
    int sum = 0;
    for (int v : m) sum += v;
    if ((degree + sum) % 3 == 0) {
      const int d0 = (degree + sum) / 3;
      c[0] = d0;
      for (int i = 0; i < rank; ++i) c[static_cast<std::size_t>(i + 1)] = -m[static_cast<std::size_t>(i)];
      DivisorClass d(rank, c);
      if (model.min_product(d) >= 0) out.push_back(d);
    }
    int pos = rank - 1;
    while (pos >= 0 && m[static_cast<std::size_t>(pos)] == degree) {
      m[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++m[static_cast<std::size_t>(pos)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DivisorClass> nef_classes_up_to(int rank, int min_degree, int max_degree, const SurfaceModel& model) {
  std::vector<DivisorClass> out;
  for (int t = min_degree; t <= max_degree; ++t) {
    auto level = enumerate_nef_classes(rank, t, model);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

constexpr std::array<MoveKind, 12> kNamedKinds{MoveKind::R5_EDGE, MoveKind::R6_PATH, MoveKind::P1, MoveKind::P2,
                                              MoveKind::M1,      MoveKind::M2,      MoveKind::M3, MoveKind::M4,
                                              MoveKind::M5,      MoveKind::W1,      MoveKind::W2, MoveKind::W3};

int rank_of_kind(MoveKind k) {
  switch (k) {
    case MoveKind::R5_EDGE: return 5;
    case MoveKind::R6_PATH: return 6;
    case MoveKind::GENERIC: return 0;
    default: return 7;
  }
}

// Instances of every kind realizing its diagram, for one divisor.
void check_move_evidence(const MoveValidator& v, EvidenceSweepReport& report) {
  const auto& g = v.graph();
  const auto& model = g.model();
  const int n = g.vertex_count();
  // Every named kind asks for m_D >= 1, so contraction classes have no instances.
  if (v.m_d() < 1) return;
  auto conclude = [&](const CaptureMove& m) {
    if (!v.side_conditions_hold(m)) return;
    ++report.instances;
    ++report.instances_by_kind[static_cast<std::size_t>(m.kind)];
    bool ok;
    if (m.kind == MoveKind::M5) {
      // The anchor C meets D - C' negatively, so it is a fixed component.
      const DivisorClass rest = v.divisor() - model.curve(m.captured).divisor;
      ok = is_effective(rest, model) && intersect(rest, model.curve(m.anchors[0]).divisor) < 0;
    } else {
      const DivisorClass nc = v.divisor() - model.curve(m.anchors[0]).divisor -
                              model.curve(m.anchors[1]).divisor - model.curve(m.captured).divisor -
                              model.canonical();
      ok = nef_big_check(nc, model).has_value();
    }
    if (!ok) report.counterexamples.push_back({v.divisor(), m});
  };
  for (MoveKind kind : kNamedKinds) {
    if (rank_of_kind(kind) != model.rank()) continue;
    const auto dg = diagram_for(kind);
    for (int a1 = 0; a1 < n; ++a1) {
      if (dg.anchor_count == 1) {
        for (int c = 0; c < n; ++c)
          if (c != a1 && g.mult(a1, c) == dg.a1_c) conclude(CaptureMove{kind, 1, {a1, -1}, c});
        continue;
      }
      for (int a2 = 0; a2 < n; ++a2) {
        if (a2 == a1 || g.mult(a1, a2) != dg.a1_a2) continue;
        for (int c = 0; c < n; ++c) {
          if (c == a1 || c == a2) continue;
          if (g.mult(a1, c) != dg.a1_c || g.mult(a2, c) != dg.a2_c) continue;
          conclude(CaptureMove{kind, 2, {a1, a2}, c});
        }
      }
    }
  }
}

}  // namespace

EvidenceSweepReport side_condition_sweep(const CurveGraph& g, int min_degree, int max_degree, int threads) {
  const int rank = g.model().rank();
  const auto classes = nef_classes_up_to(rank, min_degree, max_degree, g.model());
  const std::size_t n = classes.size();
  const std::size_t kinds = static_cast<std::size_t>(MoveKind::GENERIC) + 1;
  std::vector<EvidenceSweepReport> parts(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        parts[i].instances_by_kind.assign(kinds, 0);
        check_move_evidence(MoveValidator(classes[i], g), parts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < t; ++k) pool.emplace_back(work, k, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  EvidenceSweepReport out;
  out.rank = rank;
  out.classes = static_cast<std::int64_t>(n);
  out.instances_by_kind.assign(kinds, 0);
  for (auto& p : parts) {
    out.instances += p.instances;
    for (std::size_t k = 0; k < kinds; ++k) out.instances_by_kind[k] += p.instances_by_kind[k];
    out.counterexamples.insert(out.counterexamples.end(), p.counterexamples.begin(), p.counterexamples.end());
  }
  return out;
}

std::vector<DivisorClass> effective_classes(int rank, int max_degree, const SurfaceModel& model) {
  std::vector<DivisorClass> layer{DivisorClass(rank)};
  std::vector<DivisorClass> out = layer;
  for (int t = 1; t <= max_degree; ++t) {
    std::vector<DivisorClass> next = enumerate_nef_classes(rank, t, model);
    for (const auto& d : layer)
      for (const auto& c : model.curves()) next.push_back(d + c.divisor);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::NOT_NEF: return "NOT_NEF";
    case Route::CONTRACTION: return "CONTRACTION";
    case Route::GAME: return "GAME";
  }
  return "?";
}

Route parse_route(std::string_view text) {
  if (text == "NOT_NEF") return Route::NOT_NEF;
  if (text == "CONTRACTION") return Route::CONTRACTION;
  if (text == "GAME") return Route::GAME;
  throw ValidationError("unknown route '" + std::string(text) + "'");
}

namespace {

const std::vector<RootClass>& cached_roots(int rank) {
  static const std::array<std::vector<RootClass>, kMaxRank + 1> table = [] {
    std::array<std::vector<RootClass>, kMaxRank + 1> t;
    for (int r = kMinRank; r <= kMaxRank; ++r) t[static_cast<std::size_t>(r)] = weyl_roots(r);
    return t;
  }();
  require_valid_rank(rank);
  return table[static_cast<std::size_t>(rank)];
}

// Shortest chain of root reflections taking curve `from` to e_r.
std::vector<DivisorClass> reflections_to_last(int from, const SurfaceModel& model) {
  const int n = model.size();
  const int target = *model.find(CurveLabel::e(model.rank()));
  const auto& roots = cached_roots(model.rank());
  std::vector<int> parent(static_cast<std::size_t>(n), -1), via(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == target) break;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      auto w = model.find(reflect(model.curve(v).divisor, roots[k]));
      if (!w) throw InternalConsistencyError("reflection of a curve is not a curve");
      if (!seen[static_cast<std::size_t>(*w)]) {
        seen[static_cast<std::size_t>(*w)] = true;
        parent[static_cast<std::size_t>(*w)] = v;
        via[static_cast<std::size_t>(*w)] = static_cast<int>(k);
        queue.push_back(*w);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(target)]) throw InternalConsistencyError("Weyl orbit misses e_r");
  std::vector<DivisorClass> path;
  for (int v = target; v != from; v = parent[static_cast<std::size_t>(v)]) {
    path.push_back(roots[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])].divisor());
  }
  std::reverse(path.begin(), path.end());
  return path;
}

DivisorClass apply_reflections(DivisorClass d, const std::vector<DivisorClass>& roots) {
  for (const auto& r : roots) d = reflect(d, RootClass(r));
  return d;
}

DivisorClass drop_last(const DivisorClass& d) {
  auto c = d.to_vector();
  c.pop_back();
  return DivisorClass(d.rank() - 1, c);
}

}  // namespace

GamePlan game_plan(const MoveValidator& v, const CertifyOptions& opts) {
  const auto& g = v.graph();
  const auto& model = g.model();
  const int r = model.rank();
  const int n = model.size();
  if (v.m_d() < 1) throw ContractViolation("game_plan needs m_D >= 1");
  GamePlan plan;
  plan.start = VertexSet(n);
  auto e = [&](int i) { return *model.find(CurveLabel::e(i)); };
  if (r <= 4) {
    plan.start.insert(e(1));
    plan.start.insert(e(2));
    plan.kinds = {MoveKind::GENERIC};
    return plan;
  }
  if (r == 5 || r == 6 || v.m_d() >= 2) {
    plan.start.insert(e(1));
    plan.start.insert(e(2));
    plan.kinds = r == 5 ? std::vector{MoveKind::R5_EDGE}
                 : r == 6 ? std::vector{MoveKind::R6_PATH}
                          : std::vector{MoveKind::P1, MoveKind::P2};
  } else if (!v.conic()) {
    int c = -1;
    for (int i = 0; i < n && c < 0; ++i)
      if (v.residual_product(i) == 0) c = i;
    if (c < 0) throw InternalConsistencyError("m_D = 1 but F contracts no curve");
    int a = -1;
    for (int i = 0; i < n; ++i) {
      if (i == c || g.mult(i, c) != 0) continue;
      if (a < 0 || v.residual_product(i) < v.residual_product(a)) a = i;
    }
    plan.start.insert(a);
    plan.start.insert(c);
    plan.kinds = {MoveKind::M1, MoveKind::M2, MoveKind::M3, MoveKind::M4, MoveKind::M5};
  } else {
    int a = -1, c = -1;
    for (int i = 0; i < n && a < 0; ++i) {
      if (v.residual_product(i) != 0) continue;
      for (int j = i + 1; j < n; ++j) {
        if (v.residual_product(j) == 0 && g.mult(i, j) == 0) {
          a = i;
          c = j;
          break;
        }
      }
    }
    if (a < 0) throw InternalConsistencyError("conic multiple contracts no disjoint pair");
    plan.start.insert(a);
    plan.start.insert(c);
    plan.kinds = {MoveKind::W1, MoveKind::W2, MoveKind::W3};
  }
  if (opts.allow_generic_moves) plan.kinds.push_back(MoveKind::GENERIC);
  return plan;
}

VanishingCertificate certify(const DivisorClass& d, const CurveGraph& g, const CertifyOptions& opts) {
  const auto& model = g.model();
  require_same_rank(d, model.canonical());
  if (anticanonical_degree(d) < 3) {
    throw ContractViolation("certify needs -K.D >= 3, got " + std::to_string(anticanonical_degree(d)));
  }
  VanishingCertificate cert;
  cert.divisor = d;
  cert.rank = model.rank();
  MoveValidator v(d, g);
  cert.m_d = v.m_d();
  if (v.m_d() < 0) {
    cert.route = Route::NOT_NEF;
    auto p = model.products(d);
    for (int i = 0; i < model.size(); ++i) {
      if (p(i) < 0) {
        cert.violating_curve = i;
        break;
      }
    }
    return cert;
  }
  if (v.m_d() == 0) {
    cert.route = Route::CONTRACTION;
    ContractionStep step;
    step.contracted = nef_report(d, model).contracted.front();
    // On X_2 the Weyl group only swaps e_1 and e_2 and there is no X_1 to
    // restrict to, so the step just names the contracted curve.
    if (model.rank() > kMinRank) {
      step.reflections = reflections_to_last(step.contracted, model);
      step.restricted = drop_last(apply_reflections(d, step.reflections));
    }
    cert.contraction = std::move(step);
    return cert;
  }
  cert.route = Route::GAME;
  auto plan = game_plan(v, opts);
  auto run = closure_run(plan.start, v.oracle(plan.kinds), g);
  if (!run.complete) {
    throw CertificationFailed("capture closure stalled for " + d.to_string(), labels_of(run.final_state, model));
  }
  cert.game = std::move(run.certificate);
  return cert;
}

bool verify_certificate(const VanishingCertificate& cert, const CurveGraph& g, const CertifyOptions& opts) {
  const auto& model = g.model();
  const auto& d = cert.divisor;
  if (cert.rank != model.rank() || d.rank() != model.rank()) return false;
  MoveValidator v(d, g);
  if (cert.m_d != v.m_d()) return false;
  switch (cert.route) {
    case Route::NOT_NEF:
      return v.m_d() < 0 && cert.violating_curve >= 0 && cert.violating_curve < model.size() &&
             intersect(d, model.curve(cert.violating_curve).divisor) < 0;
    case Route::CONTRACTION: {
      if (v.m_d() != 0 || anticanonical_degree(d) < 3 || !cert.contraction) return false;
      const auto& step = *cert.contraction;
      if (step.contracted < 0 || step.contracted >= model.size()) return false;
      if (intersect(d, model.curve(step.contracted).divisor) != 0) return false;
      if (model.rank() == kMinRank) return step.reflections.empty() && !step.restricted;
      for (const auto& r : step.reflections) {
        if (r.rank() != model.rank() || self_intersection(r) != -2 || anticanonical_degree(r) != 0) return false;
      }
      auto image = apply_reflections(model.curve(step.contracted).divisor, step.reflections);
      if (image != DivisorClass::exceptional(model.rank(), model.rank())) return false;
      auto moved = apply_reflections(d, step.reflections);
      if (moved[model.rank()] != 0) return false;
      return step.restricted && *step.restricted == drop_last(moved);
    }
    case Route::GAME: {
      if (v.m_d() < 1 || anticanonical_degree(d) < 3 || !cert.game) return false;
      for (const auto& m : cert.game->moves)
        if (!m.evidence) return false;
      auto plan = game_plan(v, opts);
      return replay(*cert.game, v.oracle(plan.kinds), g);
    }
  }
  return false;
}

std::vector<VanishingCertificate> sweep(int rank, int max_degree, const CurveGraph& g, const CertifyOptions& opts,
                                        int threads, std::vector<double>* seconds) {
  if (max_degree < 3) throw ContractViolation("sweep needs max_degree >= 3");
  if (g.model().rank() != rank) throw ContractViolation("graph rank does not match");
  const auto classes = nef_classes_up_to(rank, 3, max_degree, g.model());
  const std::size_t n = classes.size();
  std::vector<std::optional<VanishingCertificate>> results(n);
  std::vector<double> times(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = certify(classes[i], g, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      times[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < t; ++k) pool.emplace_back(work, k, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<VanishingCertificate> out;
  out.reserve(n);
  for (auto& r : results) out.push_back(std::move(*r));
  if (seconds) *seconds = std::move(times);
  return out;
}

}  // namespace dpcox
