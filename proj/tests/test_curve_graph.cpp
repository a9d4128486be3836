#include <doctest.h>

#include <algorithm>

#include "dpcox/curve_graph.hpp"
#include "support/convert.hpp"

using namespace dpcox;

namespace {

std::vector<std::vector<int>> skeleton(const CurveGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j = 0; j < g.vertex_count(); ++j)
      if (i != j && g.mult(i, j) >= 1) adj[static_cast<std::size_t>(i)].push_back(j);
  return adj;
}

// Triangles counted from raw intersection numbers of the box-search curves.
long long reference_triangles(int r) {
  const auto set = oracle::exceptional(r);
  std::vector<oracle::Vec> c(set.begin(), set.end());
  long long n = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      for (std::size_t k = j + 1; k < c.size(); ++k)
        if (oracle::dot(c[i], c[j]) == 1 && oracle::dot(c[j], c[k]) == 1 && oracle::dot(c[i], c[k]) == 1) ++n;
  return n;
}

}  // namespace

TEST_CASE("multiplicities") {
  for (int r = 2; r <= 7; ++r) {
    const auto g = build_graph(enumerate_exceptional(r));
    const auto& m = g.model();
    for (int i = 0; i < g.vertex_count(); ++i) {
      CHECK(g.mult(i, i) == 0);
      for (int j = 0; j < g.vertex_count(); ++j) {
        CHECK(g.mult(i, j) == g.mult(j, i));
        CHECK(g.mult(i, j) >= 0);
        CHECK(g.mult(i, j) <= (r == 7 ? 2 : 1));
        if (i != j) CHECK(g.mult(i, j) == intersect(m.curve(i).divisor, m.curve(j).divisor));
      }
    }
  }
  const auto g5 = build_graph(enumerate_exceptional(5));
  CHECK(g5.edge_count_with_multiplicity() == 40);
  CHECK(g5.mult(g5.model().index_of("e1"), g5.model().index_of("f12")) == 1);
}

TEST_CASE("structural facts per rank") {
  for (int r = 2; r <= 7; ++r) {
    CAPTURE(r);
    const auto g = build_graph(enumerate_exceptional(r));
    const auto rep = structural_report(g);
    CHECK(rep.all_hold());
    CHECK(rep.triangles == reference_triangles(r));
    CHECK(rep.diameter == oracle::bfs_diameter(skeleton(g)));
    CHECK(static_cast<std::int64_t>(triangles(g).size()) == rep.triangles);
  }
  CHECK(structural_report(build_graph(enumerate_exceptional(5))).triangles == 0);
  const auto r6 = structural_report(build_graph(enumerate_exceptional(6)));
  CHECK(r6.triangles == 45);
  CHECK(r6.every_edge_in_exactly_one_triangle);
  const auto r7 = structural_report(build_graph(enumerate_exceptional(7)));
  CHECK(r7.double_edges == 28);
  CHECK(r7.diameter == 2);
  CHECK(r7.double_edges_perfect_matching);
  CHECK(r7.no_triangle_with_double_edge);
  CHECK(r7.triangles_sum_to_anticanonical_plus_curve);
}

TEST_CASE("G_7 adjacency dichotomy and triangle sums") {
  const auto g = build_graph(enumerate_exceptional(7));
  const auto& m = g.model();
  for (int a = 0; a < 56; ++a) {
    const int ad = dual_index(a, m);
    for (int b = 0; b < 56; ++b) {
      if (b == a || b == ad) continue;
      CHECK((g.mult(a, b) >= 1) == (g.mult(ad, b) == 0));
    }
  }
  const auto k = canonical_class(7);
  for (const auto& t : triangles(g)) {
    const auto v = m.curve(t[0]).divisor + m.curve(t[1]).divisor + m.curve(t[2]).divisor + k;
    CHECK(m.find(v).has_value());
  }
}

TEST_CASE("completing configurations") {
  const auto g6 = build_graph(enumerate_exceptional(6));
  const auto& m6 = g6.model();
  const auto third = complete_configuration(g6, {m6.index_of("e1"), m6.index_of("f12")});
  REQUIRE(third.size() == 1);
  CHECK(m6.curve(third[0]).label.to_string() == "g2");
  CHECK(g6.mult(m6.index_of("e1"), third[0]) == 1);

  const auto g5 = build_graph(enumerate_exceptional(5));
  const auto& m5 = g5.model();
  const int a = m5.index_of("e1"), b = m5.index_of("f12");
  const auto rest = complete_configuration(g5, {a, b});
  REQUIRE(rest.size() == 2);
  CHECK(m5.curve(a).divisor + m5.curve(b).divisor + m5.curve(rest[0]).divisor + m5.curve(rest[1]).divisor ==
        -canonical_class(5));
}

TEST_CASE("vertex sets") {
  VertexSet s(10, {1, 4});
  CHECK(s.size() == 2);
  CHECK(s.contains(4));
  CHECK_FALSE(s.contains(5));
  s.insert(5);
  CHECK(s.members() == std::vector<int>{1, 4, 5});
  CHECK(VertexSet(10, {1}).is_subset_of(s));
  CHECK(build_graph(enumerate_exceptional(7)).all_vertices().full());
}
