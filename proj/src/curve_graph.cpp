#include "dpcox/curve_graph.hpp"

#include <deque>

#include "dpcox/errors.hpp"

namespace dpcox {

VertexSet::VertexSet(int vertex_count, std::initializer_list<int> members) : n_(vertex_count) {
  for (int v : members) insert(v);
}

void VertexSet::insert(int v) {
  if (v < 0 || v >= n_) throw ContractViolation("vertex " + std::to_string(v) + " out of range");
  bits_ |= std::uint64_t{1} << v;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

CurveGraph::CurveGraph(SurfaceModel model) : model_(std::move(model)) {
  const int n = model_.size();
  if (n > 64) throw ContractViolation("curve graphs are limited to 64 vertices");
  mult_ = Multiplicities::Zero(n, n);
  adjacency_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    auto p = model_.products(model_.curve(i).divisor);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      mult_(i, j) = static_cast<int>(p(j));
      if (p(j) > 0) adjacency_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
  }
}

std::int64_t CurveGraph::edge_count_with_multiplicity() const {
  std::int64_t total = 0;
  for (int i = 0; i < vertex_count(); ++i)
    for (int j = i + 1; j < vertex_count(); ++j) total += mult_(i, j);
  return total;
}

VertexSet CurveGraph::all_vertices() const {
  VertexSet s(vertex_count());
  for (int i = 0; i < vertex_count(); ++i) s.insert(i);
  return s;
}

CurveGraph build_graph(const SurfaceModel& model) { return CurveGraph(model); }

std::vector<std::array<int, 3>> triangles(const CurveGraph& g) {
  std::vector<std::array<int, 3>> out;
  const int n = g.vertex_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g.mult(i, j) != 1) continue;
      for (int k = j + 1; k < n; ++k) {
        if (g.mult(i, k) == 1 && g.mult(j, k) == 1) out.push_back({i, j, k});
      }
    }
  return out;
}

namespace {

int skeleton_diameter(const CurveGraph& g) {
  const int n = g.vertex_count();
  int diameter = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (std::uint64_t b = g.neighbours(v); b; b &= b - 1) {
        int w = std::countr_zero(b);
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int d : dist) {
      if (d < 0) return -1;
      diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

}  // namespace

bool StructuralReport::all_hold() const {
  return std::all_of(facts.begin(), facts.end(), [](const StructuralFact& f) { return f.holds; });
}

StructuralReport structural_report(const CurveGraph& g) {
  StructuralReport rep;
  const auto& model = g.model();
  const int n = g.vertex_count();
  rep.rank = model.rank();
  rep.vertices = n;
  rep.edges_with_multiplicity = g.edge_count_with_multiplicity();

  bool entries_ok = true;
  std::vector<int> double_degree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int m = g.mult(i, j);
      if (m != g.mult(j, i) || m < 0 || m > 2) entries_ok = false;
      if (m == 2) {
        ++double_degree[static_cast<std::size_t>(i)];
        if (i < j) ++rep.double_edges;
      }
    }

  auto tris = triangles(g);
  rep.triangles = static_cast<std::int64_t>(tris.size());

  // Each simple edge's triangle count.
  Eigen::MatrixXi per_edge = Eigen::MatrixXi::Zero(n, n);
  for (const auto& t : tris) {
    ++per_edge(t[0], t[1]);
    ++per_edge(t[0], t[2]);
    ++per_edge(t[1], t[2]);
  }
  rep.every_edge_in_exactly_one_triangle = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.mult(i, j) == 1 && per_edge(i, j) != 1) rep.every_edge_in_exactly_one_triangle = false;

  rep.double_edges_perfect_matching =
      n > 0 && std::all_of(double_degree.begin(), double_degree.end(), [](int d) { return d == 1; });

  rep.no_triangle_with_double_edge = true;
  for (int i = 0; i < n && rep.no_triangle_with_double_edge; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g.mult(i, j) < 1) continue;
      for (int k = j + 1; k < n; ++k) {
        if (g.mult(i, k) < 1 || g.mult(j, k) < 1) continue;
        if (g.mult(i, j) == 2 || g.mult(i, k) == 2 || g.mult(j, k) == 2) {
          rep.no_triangle_with_double_edge = false;
        }
      }
    }

  rep.triangles_sum_to_anticanonical_plus_curve = true;
  for (const auto& t : tris) {
    auto v = model.curve(t[0]).divisor + model.curve(t[1]).divisor + model.curve(t[2]).divisor +
             model.canonical();
    if (!model.find(v)) rep.triangles_sum_to_anticanonical_plus_curve = false;
  }

  rep.diameter = skeleton_diameter(g);

  rep.facts.push_back({"multiplicities_in_range", entries_ok});
  switch (rep.rank) {
    case 5:
      rep.facts.push_back({"triangle_free", rep.triangles == 0});
      rep.facts.push_back({"no_double_edges", rep.double_edges == 0});
      break;
    case 6:
      rep.facts.push_back({"every_edge_in_exactly_one_triangle", rep.every_edge_in_exactly_one_triangle});
      rep.facts.push_back({"triangle_count_45", rep.triangles == 45});
      rep.facts.push_back({"no_double_edges", rep.double_edges == 0});
      break;
    case 7:
      rep.facts.push_back({"double_edge_count_28", rep.double_edges == 28});
      rep.facts.push_back({"double_edges_perfect_matching", rep.double_edges_perfect_matching});
      rep.facts.push_back({"diameter_2", rep.diameter == 2});
      rep.facts.push_back({"no_triangle_with_double_edge", rep.no_triangle_with_double_edge});
      rep.facts.push_back({"triangles_sum_to_anticanonical_plus_curve",
                           rep.triangles_sum_to_anticanonical_plus_curve});
      break;
    default:
      rep.facts.push_back({"no_double_edges", rep.double_edges == 0});
      break;
  }
  return rep;
}

std::vector<int> complete_configuration(const CurveGraph& g, std::pair<int, int> adjacent_pair) {
  const auto& model = g.model();
  const int r = model.rank();
  if (r != 5 && r != 6) throw UnsupportedRank("complete_configuration needs rank 5 or 6");
  auto [a, b] = adjacent_pair;
  if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count() || a == b) {
    throw ContractViolation("curve index out of range");
  }
  if (g.mult(a, b) != 1) throw ContractViolation("pair is not adjacent");
  const auto rest = -model.canonical() - model.curve(a).divisor - model.curve(b).divisor;

  if (r == 6) {
    auto c = model.find(rest);
    if (!c) throw InternalConsistencyError("-K - A - B is not exceptional on X_6");
    return {*c};
  }

  // r = 5: the remainder is a conic bundle; pick its first decomposition
  // closing the square A - B' - A' - B ... with A.A' = B.B' = 0.
  for (auto [p, q] : conic_decompositions(rest, model)) {
    for (auto [ap, bp] : {std::pair{p, q}, std::pair{q, p}}) {
      if (g.mult(a, ap) == 0 && g.mult(b, bp) == 0 && g.mult(a, bp) == 1 && g.mult(b, ap) == 1) {
        return {ap, bp};
      }
    }
  }
  throw InternalConsistencyError("no square completion for an adjacent pair on X_5");
}

}  // namespace dpcox
