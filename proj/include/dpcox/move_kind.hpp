#ifndef DPCOX_MOVE_KIND_HPP
#define DPCOX_MOVE_KIND_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpcox/picard_lattice.hpp"

namespace dpcox {

enum class MoveKind { R5_EDGE, R6_PATH, P1, P2, M1, M2, M3, M4, M5, W1, W2, W3, GENERIC };

std::string_view to_string(MoveKind k);
MoveKind parse_move_kind(std::string_view text);  // throws ValidationError

// Required multiplicities among anchors a1, a2 and the captured vertex c.
// Two-anchor diagrams always have a1.a2 = 0.
struct CaptureDiagram {
  int anchor_count = 2;
  int a1_a2 = 0;
  int a1_c = 0;
  int a2_c = 0;        // unused for one-anchor diagrams
  bool any_c_edges = false;  // GENERIC: only a1.a2 = 0 is prescribed
};

CaptureDiagram diagram_for(MoveKind k);

struct ValidityEvidence {
  DivisorClass n_class;
  std::int64_t min_product = 0;
  std::int64_t n_squared = 0;
  MoveKind rule = MoveKind::GENERIC;
  std::vector<std::string> side_conditions;

  friend bool operator==(const ValidityEvidence&, const ValidityEvidence&) = default;
};

}  // namespace dpcox

#endif  // DPCOX_MOVE_KIND_HPP
