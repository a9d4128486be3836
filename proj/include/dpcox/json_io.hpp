#ifndef DPCOX_JSON_IO_HPP
#define DPCOX_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "dpcox/capture_game.hpp"
#include "dpcox/cox_oracle.hpp"
#include "dpcox/curve_graph.hpp"
#include "dpcox/move_validity.hpp"

namespace dpcox {

using Json = nlohmann::ordered_json;

// All readers throw ValidationError on malformed input.

Json divisor_to_json(const DivisorClass& d);
DivisorClass divisor_from_json(const Json& j);
DivisorClass parse_divisor(const std::string& text, int expected_rank);

Json curve_table_json(const SurfaceModel& model);
Json graph_json(const CurveGraph& g);
std::string graph_edge_list(const CurveGraph& g);  // "label label multiplicity" per edge
Json structural_report_json(const StructuralReport& r);

Json evidence_to_json(const ValidityEvidence& ev);
ValidityEvidence evidence_from_json(const Json& j, int rank);
Json certificate_to_json(const CaptureCertificate& cert, const SurfaceModel& model);
CaptureCertificate certificate_from_json(const Json& j, const SurfaceModel& model);

Json vanishing_to_json(const VanishingCertificate& cert, const SurfaceModel& model);
VanishingCertificate vanishing_from_json(const Json& j, const SurfaceModel& model);

Json strand_report_json(const KoszulStrandReport& r);

// "[[x, y, z], ...]" with exactly `rank` integer triples.
PointConfiguration points_from_json(const Json& j, int rank, std::uint64_t seed, const std::string& origin);
PointConfiguration load_points_file(const std::string& path, int rank, std::uint64_t seed);

}  // namespace dpcox

#endif  // DPCOX_JSON_IO_HPP
