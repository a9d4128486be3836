#include "dpcox/move_kind.hpp"

#include "dpcox/errors.hpp"

namespace dpcox {

namespace {

constexpr std::array<std::pair<MoveKind, std::string_view>, 13> kNames{{
    {MoveKind::R5_EDGE, "R5_EDGE"}, {MoveKind::R6_PATH, "R6_PATH"}, {MoveKind::P1, "P1"},
    {MoveKind::P2, "P2"},           {MoveKind::M1, "M1"},           {MoveKind::M2, "M2"},
    {MoveKind::M3, "M3"},           {MoveKind::M4, "M4"},           {MoveKind::M5, "M5"},
    {MoveKind::W1, "W1"},           {MoveKind::W2, "W2"},           {MoveKind::W3, "W3"},
    {MoveKind::GENERIC, "GENERIC"},
}};

}  // namespace

std::string_view to_string(MoveKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

MoveKind parse_move_kind(std::string_view text) {
  for (const auto& [kind, name] : kNames)
    if (name == text) return kind;
  throw ValidationError("unknown move kind '" + std::string(text) + "'");
}

CaptureDiagram diagram_for(MoveKind k) {
  // {anchors, a1.a2, a1.c, a2.c, any}
  switch (k) {
    case MoveKind::R5_EDGE: return {2, 0, 1, 0, false};
    case MoveKind::R6_PATH: return {2, 0, 1, 1, false};
    case MoveKind::P1: return {2, 0, 2, 1, false};
    case MoveKind::P2: return {2, 0, 1, 1, false};
    case MoveKind::M1: return {2, 0, 1, 1, false};
    case MoveKind::M2: return {2, 0, 1, 0, false};
    case MoveKind::M3: return {2, 0, 0, 1, false};
    case MoveKind::M4: return {2, 0, 2, 1, false};
    case MoveKind::M5: return {1, 0, 2, 0, false};
    case MoveKind::W1: return {2, 0, 0, 0, false};
    case MoveKind::W2: return {2, 0, 1, 1, false};
    case MoveKind::W3: return {2, 0, 0, 1, false};
    case MoveKind::GENERIC: return {2, 0, 0, 0, true};
  }
  throw ContractViolation("unknown move kind");
}

}  // namespace dpcox
