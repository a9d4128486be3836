#include "dpcox/capture_game.hpp"

#include <algorithm>

#include "dpcox/errors.hpp"

namespace dpcox {

CaptureState::CaptureState(const CurveGraph& g, VertexSet start) : graph_(&g), captured_(start) {
  if (start.vertex_count() != g.vertex_count()) {
    throw ContractViolation("start set does not belong to this graph");
  }
}

void CaptureState::capture(int v) {
  if (captured_.contains(v)) throw ContractViolation("vertex already captured");
  captured_.insert(v);
}

MoveOracle structural_oracle(std::vector<MoveKind> kinds) {
  return MoveOracle{std::move(kinds), [](const CaptureMove&) { return MoveVerdict{true, std::nullopt}; }};
}

bool realizes_diagram(const CurveGraph& g, const CaptureMove& m) {
  const auto d = diagram_for(m.kind);
  if (m.anchor_count != d.anchor_count) return false;
  const int n = g.vertex_count();
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  if (!in_range(m.captured) || !in_range(m.anchors[0])) return false;
  if (m.anchors[0] == m.captured) return false;
  if (d.anchor_count == 1) return g.mult(m.anchors[0], m.captured) == d.a1_c;
  if (!in_range(m.anchors[1]) || m.anchors[1] == m.captured || m.anchors[1] == m.anchors[0]) return false;
  if (g.mult(m.anchors[0], m.anchors[1]) != d.a1_a2) return false;
  if (d.any_c_edges) return true;
  return g.mult(m.anchors[0], m.captured) == d.a1_c && g.mult(m.anchors[1], m.captured) == d.a2_c;
}

bool applicable(const CaptureMove& m, const CaptureState& state) {
  const auto& s = state.captured();
  if (s.contains(m.captured)) return false;
  for (int i = 0; i < m.anchor_count; ++i)
    if (!s.contains(m.anchors[static_cast<std::size_t>(i)])) return false;
  return realizes_diagram(state.graph(), m);
}

namespace {

std::optional<CertifiedMove> try_capture(int c, const VertexSet& captured, const MoveOracle& oracle,
                                         const CurveGraph& g) {
  const auto members = captured.members();
  bool has_two = false, has_one = false;
  for (auto k : oracle.kinds) (diagram_for(k).anchor_count == 2 ? has_two : has_one) = true;

  if (has_two) {
    for (int a1 : members) {
      for (int a2 : members) {
        if (a1 == a2 || g.mult(a1, a2) != 0) continue;
        for (auto k : oracle.kinds) {
          CaptureMove m{k, 2, {a1, a2}, c};
          if (!realizes_diagram(g, m)) continue;
          auto verdict = oracle.approve(m);
          if (verdict.allowed) return CertifiedMove{m, std::move(verdict.evidence)};
        }
      }
    }
  }
  if (has_one) {
    for (int a : members) {
      for (auto k : oracle.kinds) {
        CaptureMove m{k, 1, {a, -1}, c};
        if (!realizes_diagram(g, m)) continue;
        auto verdict = oracle.approve(m);
        if (verdict.allowed) return CertifiedMove{m, std::move(verdict.evidence)};
      }
    }
  }
  return std::nullopt;
}

void check_start(const VertexSet& start, const CurveGraph& g) {
  if (start.vertex_count() != g.vertex_count()) throw ContractViolation("start set does not belong to this graph");
  if (start.size() > 2) throw ContractViolation("start set has more than two vertices");
}

}  // namespace

ClosureRun closure_run(const VertexSet& start, const MoveOracle& oracle, const CurveGraph& g) {
  check_start(start, g);
  ClosureRun run;
  run.certificate.start = start;
  VertexSet captured = start;
  bool progress = true;
  while (progress && !captured.full()) {
    progress = false;
    for (int c = 0; c < g.vertex_count(); ++c) {
      if (captured.contains(c)) continue;
      if (auto mv = try_capture(c, captured, oracle, g)) {
        run.certificate.moves.push_back(std::move(*mv));
        captured.insert(c);
        progress = true;
      }
    }
  }
  run.final_state = captured;
  run.complete = captured.full();
  return run;
}

std::optional<CaptureCertificate> closure(const VertexSet& start, const MoveOracle& oracle,
                                          const CurveGraph& g) {
  auto run = closure_run(start, oracle, g);
  if (!run.complete) return std::nullopt;
  return std::move(run.certificate);
}

bool replay(const CaptureCertificate& cert, const MoveOracle& oracle, const CurveGraph& g) {
  const int n = g.vertex_count();
  if (cert.start.vertex_count() != n) throw ValidationError("certificate start set has the wrong vertex count");
  if (cert.start.size() > 2) return false;
  for (const auto& cm : cert.moves) {
    const auto& m = cm.move;
    if (m.anchor_count != 1 && m.anchor_count != 2) throw ValidationError("move with bad anchor count");
    if (m.captured < 0 || m.captured >= n) throw ValidationError("captured vertex out of range");
    for (int i = 0; i < m.anchor_count; ++i) {
      int a = m.anchors[static_cast<std::size_t>(i)];
      if (a < 0 || a >= n) throw ValidationError("anchor out of range");
    }
  }
  CaptureState state(g, cert.start);
  for (const auto& cm : cert.moves) {
    const auto& m = cm.move;
    if (std::find(oracle.kinds.begin(), oracle.kinds.end(), m.kind) == oracle.kinds.end()) return false;
    if (!applicable(m, state)) return false;
    auto verdict = oracle.approve(m);
    if (!verdict.allowed) return false;
    if (cm.evidence && cm.evidence != verdict.evidence) return false;
    state.capture(m.captured);
  }
  return state.captured().full();
}

std::optional<CaptureCertificate> certificate_from_stages(const VertexSet& start,
                                                          const std::vector<std::vector<int>>& stages,
                                                          const MoveOracle& oracle, const CurveGraph& g) {
  check_start(start, g);
  CaptureCertificate cert;
  cert.start = start;
  VertexSet captured = start;
  for (const auto& stage : stages) {
    std::vector<int> pending = stage;
    std::sort(pending.begin(), pending.end());
    for (int v : pending) {
      if (v < 0 || v >= g.vertex_count()) throw ValidationError("stage vertex out of range");
      if (captured.contains(v)) return std::nullopt;
    }
    while (!pending.empty()) {
      std::vector<int> left;
      for (int c : pending) {
        if (auto mv = try_capture(c, captured, oracle, g)) {
          cert.moves.push_back(std::move(*mv));
          captured.insert(c);
        } else {
          left.push_back(c);
        }
      }
      if (left.size() == pending.size()) return std::nullopt;
      pending = std::move(left);
    }
  }
  if (!captured.full()) return std::nullopt;
  return cert;
}

std::vector<std::vector<std::string>> stage_table_labels(int rank) {
  switch (rank) {
    case 5:
      return {{"e1", "e2"},
              {"f13", "f14", "f15", "f23", "f24", "f25"},
              {"g", "e3", "e4", "e5", "f12", "f34", "f35", "f45"}};
    case 6: {
      std::vector<std::string> rest;
      auto model = enumerate_exceptional(6);
      const std::vector<std::string> early{"e1", "e2", "f12", "g3", "g4", "g5", "g6"};
      for (const auto& c : model.curves()) {
        auto l = c.label.to_string();
        if (std::find(early.begin(), early.end(), l) == early.end()) rest.push_back(l);
      }
      return {{"e1", "e2"}, {"f12", "g3", "g4", "g5", "g6"}, rest};
    }
    case 7: {
      std::vector<std::string> rest;
      auto model = enumerate_exceptional(7);
      const std::vector<std::string> early{"e1", "e2", "h1", "h2", "e3", "e4", "e5", "e6", "e7"};
      for (const auto& c : model.curves()) {
        auto l = c.label.to_string();
        if (std::find(early.begin(), early.end(), l) == early.end()) rest.push_back(l);
      }
      return {{"e1", "e2"}, {"h1", "h2"}, {"e3", "e4", "e5", "e6", "e7"}, rest};
    }
    default:
      throw UnsupportedRank("stage tables exist for ranks 5, 6 and 7 only");
  }
}

std::optional<CaptureCertificate> replay_stage_tables(const CurveGraph& g) {
  const auto& model = g.model();
  const auto table = stage_table_labels(model.rank());
  std::vector<MoveKind> kinds;
  switch (model.rank()) {
    case 5: kinds = {MoveKind::R5_EDGE}; break;
    case 6: kinds = {MoveKind::R6_PATH}; break;
    default: kinds = {MoveKind::P1, MoveKind::P2}; break;
  }
  VertexSet start(model.size());
  for (const auto& l : table.front()) start.insert(model.index_of(l));
  std::vector<std::vector<int>> stages;
  for (std::size_t i = 1; i < table.size(); ++i) {
    std::vector<int> stage;
    for (const auto& l : table[i]) stage.push_back(model.index_of(l));
    stages.push_back(std::move(stage));
  }
  return certificate_from_stages(start, stages, structural_oracle(kinds), g);
}

std::vector<std::string> labels_of(const VertexSet& s, const SurfaceModel& model) {
  std::vector<std::string> out;
  for (int v : s.members()) out.push_back(model.curve(v).label.to_string());
  return out;
}

}  // namespace dpcox
