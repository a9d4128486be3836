#include "dpcox/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dpcox/errors.hpp"

namespace dpcox {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int curve_index(const Json& j, const SurfaceModel& model) {
  return model.index_of(as_string(j, "curve label"));
}

}  // namespace

Json divisor_to_json(const DivisorClass& d) {
  Json out = Json::array();
  for (auto c : d.coefficients()) out.push_back(c);
  return out;
}

DivisorClass divisor_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("divisor must be a JSON integer array");
  std::vector<DivisorClass::Coefficient> coeffs;
  for (const auto& c : j) coeffs.push_back(as_int(c, "divisor coefficient"));
  const int rank = static_cast<int>(coeffs.size()) - 1;
  if (rank < kMinRank || rank > kMaxRank) throw ValidationError("divisor length must be rank + 1 with rank in 2..7");
  return DivisorClass(rank, coeffs);
}

DivisorClass parse_divisor(const std::string& text, int expected_rank) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("divisor is not valid JSON: ") + e.what());
  }
  auto d = divisor_from_json(j);
  if (d.rank() != expected_rank) {
    throw ValidationError("divisor has rank " + std::to_string(d.rank()) + ", expected " +
                          std::to_string(expected_rank));
  }
  return d;
}

Json curve_table_json(const SurfaceModel& model) {
  Json rows = Json::array();
  for (int i = 0; i < model.size(); ++i) {
    rows.push_back({{"index", i},
                    {"label", model.curve(i).label.to_string()},
                    {"class", divisor_to_json(model.curve(i).divisor)}});
  }
  return {{"rank", model.rank()}, {"curves", rows}};
}

Json graph_json(const CurveGraph& g) {
  const auto& model = g.model();
  Json vertices = Json::array();
  for (const auto& c : model.curves()) vertices.push_back(c.label.to_string());
  Json adjacency = Json::array();
  for (int i = 0; i < g.vertex_count(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.vertex_count(); ++j) row.push_back(g.mult(i, j));
    adjacency.push_back(std::move(row));
  }
  return {{"rank", model.rank()}, {"vertices", vertices}, {"multiplicity", adjacency}};
}

std::string graph_edge_list(const CurveGraph& g) {
  std::ostringstream os;
  const auto& model = g.model();
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j = i + 1; j < g.vertex_count(); ++j)
      if (g.mult(i, j) > 0)
        os << model.curve(i).label.to_string() << ' ' << model.curve(j).label.to_string() << ' ' << g.mult(i, j)
           << '\n';
  return os.str();
}

Json structural_report_json(const StructuralReport& r) {
  Json facts = Json::object();
  for (const auto& f : r.facts) facts[f.name] = f.holds;
  return {{"rank", r.rank},
          {"vertices", r.vertices},
          {"edges_with_multiplicity", r.edges_with_multiplicity},
          {"double_edges", r.double_edges},
          {"triangles", r.triangles},
          {"diameter", r.diameter},
          {"facts", facts},
          {"all_hold", r.all_hold()}};
}

Json evidence_to_json(const ValidityEvidence& ev) {
  return {{"n_class", divisor_to_json(ev.n_class)},
          {"min_product", ev.min_product},
          {"n_squared", ev.n_squared},
          {"rule", to_string(ev.rule)},
          {"side_conditions", ev.side_conditions}};
}

ValidityEvidence evidence_from_json(const Json& j, int rank) {
  ValidityEvidence ev;
  ev.n_class = divisor_from_json(field(j, "n_class"));
  if (ev.n_class.rank() != rank) throw ValidationError("evidence class has the wrong rank");
  ev.min_product = as_int(field(j, "min_product"), "min_product");
  ev.n_squared = as_int(field(j, "n_squared"), "n_squared");
  ev.rule = parse_move_kind(as_string(field(j, "rule"), "rule"));
  const auto& facts = field(j, "side_conditions");
  if (!facts.is_array()) throw ValidationError("side_conditions must be an array");
  for (const auto& f : facts) ev.side_conditions.push_back(as_string(f, "side condition"));
  return ev;
}

Json certificate_to_json(const CaptureCertificate& cert, const SurfaceModel& model) {
  Json moves = Json::array();
  for (const auto& cm : cert.moves) {
    Json anchors = Json::array();
    for (int i = 0; i < cm.move.anchor_count; ++i)
      anchors.push_back(model.curve(cm.move.anchors[static_cast<std::size_t>(i)]).label.to_string());
    Json m = {{"kind", to_string(cm.move.kind)},
              {"anchors", anchors},
              {"captured", model.curve(cm.move.captured).label.to_string()}};
    if (cm.evidence) m["evidence"] = evidence_to_json(*cm.evidence);
    moves.push_back(std::move(m));
  }
  return {{"start", labels_of(cert.start, model)}, {"moves", moves}};
}

CaptureCertificate certificate_from_json(const Json& j, const SurfaceModel& model) {
  CaptureCertificate cert;
  cert.start = VertexSet(model.size());
  const auto& start = field(j, "start");
  if (!start.is_array() || start.size() > 2) throw ValidationError("start must list at most two curves");
  for (const auto& s : start) cert.start.insert(curve_index(s, model));
  const auto& moves = field(j, "moves");
  if (!moves.is_array()) throw ValidationError("moves must be an array");
  for (const auto& m : moves) {
    CertifiedMove cm;
    cm.move.kind = parse_move_kind(as_string(field(m, "kind"), "kind"));
    const auto& anchors = field(m, "anchors");
    if (!anchors.is_array() || anchors.empty() || anchors.size() > 2)
      throw ValidationError("a move needs one or two anchors");
    cm.move.anchor_count = static_cast<int>(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) cm.move.anchors[i] = curve_index(anchors[i], model);
    cm.move.captured = curve_index(field(m, "captured"), model);
    if (m.contains("evidence")) cm.evidence = evidence_from_json(m.at("evidence"), model.rank());
    cert.moves.push_back(std::move(cm));
  }
  return cert;
}

Json vanishing_to_json(const VanishingCertificate& cert, const SurfaceModel& model) {
  Json detail;
  switch (cert.route) {
    case Route::NOT_NEF:
      detail = {{"violating_curve", model.curve(cert.violating_curve).label.to_string()}};
      break;
    case Route::CONTRACTION: {
      const auto& step = *cert.contraction;
      Json roots = Json::array();
      for (const auto& r : step.reflections) roots.push_back(divisor_to_json(r));
      detail = {{"contracted", model.curve(step.contracted).label.to_string()},
                {"reflections", roots},
                {"restricted", step.restricted ? divisor_to_json(*step.restricted) : Json(nullptr)}};
      break;
    }
    case Route::GAME:
      detail = certificate_to_json(*cert.game, model);
      break;
  }
  return {{"divisor", divisor_to_json(cert.divisor)},
          {"rank", cert.rank},
          {"route", std::string(to_string(cert.route))},
          {"m_d", cert.m_d},
          {"detail", detail}};
}

VanishingCertificate vanishing_from_json(const Json& j, const SurfaceModel& model) {
  VanishingCertificate cert;
  cert.divisor = divisor_from_json(field(j, "divisor"));
  cert.rank = static_cast<int>(as_int(field(j, "rank"), "rank"));
  if (cert.rank != model.rank() || cert.divisor.rank() != model.rank())
    throw ValidationError("certificate rank does not match the surface");
  cert.route = parse_route(as_string(field(j, "route"), "route"));
  cert.m_d = as_int(field(j, "m_d"), "m_d");
  const auto& detail = field(j, "detail");
  switch (cert.route) {
    case Route::NOT_NEF:
      cert.violating_curve = curve_index(field(detail, "violating_curve"), model);
      break;
    case Route::CONTRACTION: {
      ContractionStep step;
      step.contracted = curve_index(field(detail, "contracted"), model);
      const auto& roots = field(detail, "reflections");
      if (!roots.is_array()) throw ValidationError("reflections must be an array");
      for (const auto& r : roots) step.reflections.push_back(divisor_from_json(r));
      const auto& restricted = field(detail, "restricted");
      if (!restricted.is_null()) step.restricted = divisor_from_json(restricted);
      cert.contraction = std::move(step);
      break;
    }
    case Route::GAME:
      cert.game = certificate_from_json(detail, model);
      break;
  }
  return cert;
}

Json strand_report_json(const KoszulStrandReport& r) {
  return {{"divisor", divisor_to_json(r.divisor)},
          {"dims", r.dims},
          {"rank_d1", r.rank_d1},
          {"rank_d2", r.rank_d2},
          {"b1", r.b1},
          {"seed", r.seed},
          {"arithmetic", to_string(r.arithmetic)},
          {"certified", r.certified}};
}

PointConfiguration points_from_json(const Json& j, int rank, std::uint64_t seed, const std::string& origin) {
  if (!j.is_array()) throw ValidationError("points must be a JSON array of [x, y, z] triples");
  if (static_cast<int>(j.size()) != rank)
    throw ValidationError("expected " + std::to_string(rank) + " points, found " + std::to_string(j.size()));
  std::vector<ProjectivePoint> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 3) throw ValidationError("each point must be an [x, y, z] triple");
    ProjectivePoint q;
    for (std::size_t k = 0; k < 3; ++k) q[k] = mpz_class(static_cast<long>(as_int(p[k], "point coordinate")));
    pts.push_back(std::move(q));
  }
  return PointConfiguration(std::move(pts), seed, origin);
}

PointConfiguration load_points_file(const std::string& path, int rank, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read points file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("points file is not valid JSON: " + std::string(e.what()));
  }
  return points_from_json(j, rank, seed, path);
}

}  // namespace dpcox
