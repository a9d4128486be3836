#ifndef DPCOX_CAPTURE_GAME_HPP
#define DPCOX_CAPTURE_GAME_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpcox/curve_graph.hpp"
#include "dpcox/move_kind.hpp"

namespace dpcox {

struct CaptureMove {
  MoveKind kind = MoveKind::GENERIC;
  int anchor_count = 2;
  std::array<int, 2> anchors{-1, -1};
  int captured = -1;

  friend bool operator==(const CaptureMove&, const CaptureMove&) = default;
};

struct CertifiedMove {
  CaptureMove move;
  // Structural replays (diagram-only oracles) carry no evidence.
  std::optional<ValidityEvidence> evidence;

  friend bool operator==(const CertifiedMove&, const CertifiedMove&) = default;
};

struct CaptureCertificate {
  VertexSet start;
  std::vector<CertifiedMove> moves;

  friend bool operator==(const CaptureCertificate&, const CaptureCertificate&) = default;
};

class CaptureState {
 public:
  CaptureState(const CurveGraph& g, VertexSet start);

  const CurveGraph& graph() const noexcept { return *graph_; }
  const VertexSet& captured() const noexcept { return captured_; }
  void capture(int v);

 private:
  const CurveGraph* graph_;
  VertexSet captured_;
};

struct MoveVerdict {
  bool allowed = false;
  std::optional<ValidityEvidence> evidence;  // empty for structural oracles
};

// Decides which moves are allowed and supplies their evidence. The kinds are
// tried in the listed order.
struct MoveOracle {
  std::vector<MoveKind> kinds;
  std::function<MoveVerdict(const CaptureMove&)> approve;
};

// Any move whose images realize the diagram of one of `kinds`.
MoveOracle structural_oracle(std::vector<MoveKind> kinds);

// Images realize the diagram: exact multiplicities on the induced subgraph.
bool realizes_diagram(const CurveGraph& g, const CaptureMove& m);

bool applicable(const CaptureMove& m, const CaptureState& state);

struct ClosureRun {
  CaptureCertificate certificate;  // moves made, possibly partial
  VertexSet final_state;
  bool complete = false;
};

ClosureRun closure_run(const VertexSet& start, const MoveOracle& oracle, const CurveGraph& g);
std::optional<CaptureCertificate> closure(const VertexSet& start, const MoveOracle& oracle,
                                          const CurveGraph& g);

// Throws ValidationError on dangling indices.
bool replay(const CaptureCertificate& cert, const MoveOracle& oracle, const CurveGraph& g);

// Capture the stages in order; inside a stage vertices go in canonical order,
// repeating passes until the stage is exhausted. Anchors may be any captured
// vertex.
std::optional<CaptureCertificate> certificate_from_stages(const VertexSet& start,
                                                          const std::vector<std::vector<int>>& stages,
                                                          const MoveOracle& oracle, const CurveGraph& g);

// The explicit stage tables for r = 5, 6 (one-edge / path moves) and r = 7
// (P1/P2 moves), as curve labels. First entry is the start set.
std::vector<std::vector<std::string>> stage_table_labels(int rank);

// The stage tables replayed with the structural oracle for the rank's kinds
// (R5_EDGE, R6_PATH, or P1 and P2).
std::optional<CaptureCertificate> replay_stage_tables(const CurveGraph& g);

std::vector<std::string> labels_of(const VertexSet& s, const SurfaceModel& model);

}  // namespace dpcox

#endif  // DPCOX_CAPTURE_GAME_HPP
