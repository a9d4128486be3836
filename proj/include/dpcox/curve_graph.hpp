#ifndef DPCOX_CURVE_GRAPH_HPP
#define DPCOX_CURVE_GRAPH_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dpcox/exceptional_curves.hpp"

namespace dpcox {

// Subset of the vertices of a curve graph (at most 64 vertices; G_7 has 56).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int vertex_count) : n_(vertex_count) {}
  VertexSet(int vertex_count, std::initializer_list<int> members);

  int vertex_count() const noexcept { return n_; }
  bool contains(int v) const noexcept { return v >= 0 && v < n_ && ((bits_ >> v) & 1u); }
  void insert(int v);
  int size() const noexcept { return std::popcount(bits_); }
  bool full() const noexcept { return size() == n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool is_subset_of(const VertexSet& other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  std::vector<int> members() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

// Multigraph with C_i.C_j edges between distinct curves.
class CurveGraph {
 public:
  using Multiplicities = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  explicit CurveGraph(SurfaceModel model);

  const SurfaceModel& model() const noexcept { return model_; }
  int vertex_count() const noexcept { return model_.size(); }
  int mult(int i, int j) const { return mult_(i, j); }
  const Multiplicities& multiplicities() const noexcept { return mult_; }
  // Neighbours on the simple skeleton (multiplicity >= 1).
  std::uint64_t neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  std::int64_t edge_count_with_multiplicity() const;
  VertexSet all_vertices() const;

 private:
  SurfaceModel model_;
  Multiplicities mult_;
  std::vector<std::uint64_t> adjacency_;
};

CurveGraph build_graph(const SurfaceModel& model);

struct StructuralFact {
  std::string name;
  bool holds = false;
};

struct StructuralReport {
  int rank = 0;
  int vertices = 0;
  std::int64_t edges_with_multiplicity = 0;
  int double_edges = 0;
  // Triangles use simple edges only; a double edge never counts.
  std::int64_t triangles = 0;
  int diameter = 0;             // on the simple skeleton, -1 if disconnected
  bool every_edge_in_exactly_one_triangle = false;
  bool double_edges_perfect_matching = false;
  bool no_triangle_with_double_edge = false;   // over triples pairwise meeting
  bool triangles_sum_to_anticanonical_plus_curve = false;
  // The facts asserted for this rank; the CLI exits nonzero unless all hold.
  std::vector<StructuralFact> facts;

  bool all_hold() const;
};

StructuralReport structural_report(const CurveGraph& g);

// Simple-edge triangles {i < j < k}.
std::vector<std::array<int, 3>> triangles(const CurveGraph& g);

// r = 5: {A', B'} with A + B + A' + B' = -K forming an induced square, A'
// adjacent to B and B' adjacent to A. r = 6: the third curve C of the triangle
// with A + B + C = -K.
std::vector<int> complete_configuration(const CurveGraph& g, std::pair<int, int> adjacent_pair);

}  // namespace dpcox

#endif  // DPCOX_CURVE_GRAPH_HPP
