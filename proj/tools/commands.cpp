#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dpcox/errors.hpp"
#include "dpcox/json_io.hpp"

namespace dpcox::cli {

namespace {

namespace fs = std::filesystem;

void require_rank(int rank) {
  if (rank < kMinRank || rank > kMaxRank) throw ValidationError("--rank must be between 2 and 7");
}

fs::path artifact(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  return fs::path(c.output_dir) / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + p.string());
  f << text;
}

void write_json(const fs::path& p, const Json& j) { write_text(p, j.dump(2) + "\n"); }

std::string divisor_tag(const DivisorClass& d) {
  std::string s;
  for (auto c : d.coefficients()) s += "_" + std::to_string(c);
  return s;
}

int thread_count(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PointConfiguration configuration(const RunConfig& c) {
  if (c.points_file) {
    auto pts = load_points_file(*c.points_file, c.rank, c.seed);
    require_general_position(pts);
    return pts;
  }
  return standard_configuration(c.rank, c.seed);
}

Json points_json(const PointConfiguration& pts) {
  Json out = Json::array();
  for (const auto& p : pts.points()) out.push_back({p[0].get_str(), p[1].get_str(), p[2].get_str()});
  return out;
}

// Runs f(i) for i in [0, n) on `threads` workers; results are placed by index.
template <class F>
void parallel_for(std::size_t n, int threads, F f) {
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        f(i);
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
}

std::string min_n_squared(const VanishingCertificate& c) {
  if (!c.game) return "-";
  std::optional<std::int64_t> best;
  for (const auto& m : c.game->moves)
    if (m.evidence && m.move.anchor_count == 2) best = std::min(best.value_or(m.evidence->n_squared), m.evidence->n_squared);
  return best ? std::to_string(*best) : "-";
}

std::size_t move_count(const VanishingCertificate& c) { return c.game ? c.game->moves.size() : 0; }

}  // namespace

int cmd_curves(const RunConfig& config, std::ostream& out) {
  require_rank(config.rank);
  const auto model = enumerate_exceptional(config.rank);
  const auto g = build_graph(model);
  const auto report = structural_report(g);
  Json table = curve_table_json(model);
  table["structure"] = structural_report_json(report);
  write_json(artifact(config, "curves_r" + std::to_string(config.rank) + ".json"), table);
  write_json(artifact(config, "graph_r" + std::to_string(config.rank) + ".json"), graph_json(g));
  write_text(artifact(config, "graph_r" + std::to_string(config.rank) + ".txt"), graph_edge_list(g));

  out << "rank " << config.rank << ": " << model.size() << " exceptional curves\n";
  for (const auto& c : model.curves()) out << "  " << std::setw(4) << c.label.to_string() << "  " << c.divisor.to_string() << "\n";
  out << "edges (with multiplicity) " << report.edges_with_multiplicity << ", double edges " << report.double_edges
      << ", triangles " << report.triangles << ", diameter " << report.diameter << "\n";
  for (const auto& f : report.facts) out << "  " << (f.holds ? "ok   " : "FAIL ") << f.name << "\n";
  return report.all_hold() ? kExitOk : kExitFailure;
}

int cmd_certify(const RunConfig& config, const std::string& divisor, std::ostream& out) {
  require_rank(config.rank);
  const auto d = parse_divisor(divisor, config.rank);
  const auto g = build_graph(enumerate_exceptional(config.rank));
  const auto name = "certificate_r" + std::to_string(config.rank) + divisor_tag(d) + ".json";
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto cert = certify(d, g, {config.allow_generic_moves});
    const bool ok = verify_certificate(cert, g, {config.allow_generic_moves});
    write_json(artifact(config, name), vanishing_to_json(cert, g.model()));
    out << d.to_string() << "  route " << to_string(cert.route) << "  moves " << move_count(cert) << "  min N^2 "
        << min_n_squared(cert) << "  verified " << (ok ? "yes" : "NO") << "  " << std::fixed << std::setprecision(3)
        << seconds_since(t0) << " s\n";
    return ok ? kExitOk : kExitFailure;
  } catch (const CertificationFailed& e) {
    Json dump = {{"divisor", divisor_to_json(d)}, {"error", e.what()}, {"stuck_state", e.stuck_state()}};
    write_json(artifact(config, name), dump);
    out << d.to_string() << "  certification failed: " << e.what() << "\n  captured:";
    for (const auto& s : e.stuck_state()) out << " " << s;
    out << "\n";
    return kExitFailure;
  }
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  require_rank(config.rank);
  if (config.max_degree < 3) throw ValidationError("--max-degree must be at least 3");
  const auto g = build_graph(enumerate_exceptional(config.rank));
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> times;
  const CertifyOptions opts{config.allow_generic_moves};
  std::vector<VanishingCertificate> certs;
  try {
    certs = sweep(config.rank, config.max_degree, g, opts, thread_count(config), &times);
  } catch (const CertificationFailed& e) {
    out << "sweep failed: " << e.what() << "\n  captured:";
    for (const auto& s : e.stuck_state()) out << " " << s;
    out << "\n";
    return kExitFailure;
  }
  std::vector<char> verified(certs.size(), 0);
  parallel_for(certs.size(), thread_count(config),
               [&](std::size_t i) { verified[i] = verify_certificate(certs[i], g, opts) ? 1 : 0; });

  std::ostringstream jsonl, table;
  table << "divisor\troute\tmoves\tmin_N2\n";
  std::size_t counts[3] = {0, 0, 0};
  bool all_ok = true;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& c = certs[i];
    jsonl << vanishing_to_json(c, g.model()).dump() << "\n";
    table << c.divisor.to_string() << "\t" << to_string(c.route) << "\t" << move_count(c) << "\t" << min_n_squared(c)
          << "\n";
    ++counts[static_cast<int>(c.route)];
    all_ok = all_ok && verified[i] && c.route != Route::NOT_NEF;
  }
  const auto r = std::to_string(config.rank);
  write_text(artifact(config, "certificates_r" + r + ".jsonl"), jsonl.str());
  write_text(artifact(config, "summary_r" + r + ".txt"), table.str());

  out << "rank " << config.rank << ", degrees 3.." << config.max_degree << ": " << certs.size() << " nef classes\n";
  out << "  GAME " << counts[static_cast<int>(Route::GAME)] << ", CONTRACTION "
      << counts[static_cast<int>(Route::CONTRACTION)] << ", NOT_NEF " << counts[static_cast<int>(Route::NOT_NEF)]
      << "\n";
  out << "  verified " << std::count(verified.begin(), verified.end(), 1) << "/" << certs.size() << "\n";
  if (!times.empty()) {
    const auto slow = std::max_element(times.begin(), times.end()) - times.begin();
    out << "  slowest " << certs[static_cast<std::size_t>(slow)].divisor.to_string() << " " << std::fixed
        << std::setprecision(4) << times[static_cast<std::size_t>(slow)] << " s\n";
  }
  out << "  total " << std::fixed << std::setprecision(2) << seconds_since(t0) << " s\n";
  return all_ok ? kExitOk : kExitFailure;
}

namespace {

struct CheckResult {
  Json detail;
  bool pass = true;
};

CheckResult check_h0(CoxOracle& oracle, const RunConfig& config, std::ostream& out) {
  const auto& model = oracle.model();
  const auto classes = effective_classes(config.rank, config.max_degree, model);
  std::vector<int> dims(classes.size());
  parallel_for(classes.size(), thread_count(config),
               [&](std::size_t i) { dims[i] = oracle.interpolation_dimension(classes[i]); });
  CheckResult r;
  Json mismatches = Json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto expected = h0(classes[i], model);
    if (dims[i] != expected) {
      r.pass = false;
      mismatches.push_back({{"divisor", divisor_to_json(classes[i])}, {"h0", expected}, {"interpolation", dims[i]}});
    }
  }
  r.detail = {{"max_degree", config.max_degree}, {"classes", classes.size()}, {"mismatches", mismatches}};
  out << "h0: " << classes.size() << " effective classes up to degree " << config.max_degree << ", "
      << mismatches.size() << " mismatches\n";
  return r;
}

CheckResult check_generators(CoxOracle& oracle, const RunConfig& config, std::ostream& out) {
  const auto& model = oracle.model();
  std::vector<DivisorClass> degree2;
  for (const auto& d : effective_classes(config.rank, 2, model))
    if (anticanonical_degree(d) == 2) degree2.push_back(d);
  std::vector<KoszulStrandReport> reports(degree2.size());
  std::vector<int> monomials(degree2.size());
  parallel_for(degree2.size(), thread_count(config), [&](std::size_t i) {
    reports[i] = oracle.koszul_b1(degree2[i]);
    monomials[i] = static_cast<int>(monomials_of_multidegree(degree2[i], model).size());
  });
  CheckResult r;
  Json gens = Json::array();
  int total = 0;
  for (std::size_t i = 0; i < degree2.size(); ++i) {
    const auto& d = degree2[i];
    // No relations live in degree 1, so b1 counts the monomials beyond h0.
    if (nef_report(d, model).is_nef && reports[i].b1 != monomials[i] - h0(d, model)) r.pass = false;
    if (reports[i].b1 == 0) continue;
    total += reports[i].b1;
    gens.push_back({{"divisor", divisor_to_json(d)}, {"b1", reports[i].b1}});
  }
  if (config.rank == 4) {
    // Expected: L - E_i and 2L - E_1 - ... - E_4, one generator each.
    std::vector<DivisorClass> expected;
    for (int i = 1; i <= 4; ++i) expected.push_back(DivisorClass::line(4) - DivisorClass::exceptional(4, i));
    expected.push_back(DivisorClass(4, {2, -1, -1, -1, -1}));
    std::sort(expected.begin(), expected.end());
    bool match = gens.size() == expected.size();
    for (std::size_t i = 0; match && i < gens.size(); ++i)
      match = divisor_from_json(gens[i]["divisor"]) == expected[i] && gens[i]["b1"] == 1;
    r.pass = r.pass && match;
  }
  r.detail = {{"degree2_classes", degree2.size()}, {"generators", gens}, {"total", total}};
  out << "generators in degree 2: " << total << "\n";
  for (const auto& gj : gens) out << "  " << divisor_from_json(gj["divisor"]).to_string() << "  b1 " << gj["b1"] << "\n";
  return r;
}

CheckResult check_b1(CoxOracle& oracle, const RunConfig& config, std::ostream& out) {
  const auto& model = oracle.model();
  const auto g = build_graph(model);
  const auto classes = nef_classes_up_to(config.rank, 3, std::max(3, config.max_degree), model);
  std::vector<KoszulStrandReport> reports(classes.size());
  std::vector<std::string> routes(classes.size());
  parallel_for(classes.size(), thread_count(config), [&](std::size_t i) {
    reports[i] = oracle.koszul_b1(classes[i]);
    routes[i] = std::string(to_string(certify(classes[i], g).route));
  });
  CheckResult r;
  Json rows = Json::array();
  int nonzero = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (reports[i].b1 != 0) {
      ++nonzero;
      r.pass = false;
    }
    rows.push_back({{"divisor", divisor_to_json(classes[i])}, {"b1", reports[i].b1}, {"route", routes[i]},
                    {"certified", reports[i].certified}});
  }
  r.detail = {{"classes", rows}, {"nonzero_b1", nonzero}};
  out << "b1 vs certificates: " << classes.size() << " nef classes of degree 3.." << std::max(3, config.max_degree)
      << ", " << nonzero << " with b1 != 0\n";
  return r;
}

CheckResult check_sections(CoxOracle& oracle, std::ostream& out) {
  const auto s = oracle.check_27_sections();
  CheckResult r;
  r.pass = s.holds;
  r.detail = {{"full_rank", s.full_rank}, {"subset_ranks", s.subset_ranks}, {"holds", s.holds}};
  out << "27 sections: full rank " << s.full_rank << ", every 27-subset rank 3: " << (s.holds ? "yes" : "NO") << "\n";
  return r;
}

}  // namespace

int cmd_oracle(const RunConfig& config, const std::optional<std::string>& divisor, const std::string& check,
               std::ostream& out) {
  require_rank(config.rank);
  const auto pts = configuration(config);
  CoxOracle oracle(pts, enumerate_exceptional(config.rank), config.arithmetic);
  const auto r = std::to_string(config.rank);
  const auto t0 = std::chrono::steady_clock::now();

  if (divisor) {
    const auto d = parse_divisor(*divisor, config.rank);
    const auto report = oracle.koszul_b1(d);
    Json j = strand_report_json(report);
    j["points"] = points_json(pts);
    write_json(artifact(config, "strand_r" + r + divisor_tag(d) + ".json"), j);
    out << d.to_string() << "  dims " << report.dims[0] << "/" << report.dims[1] << "/" << report.dims[2]
        << "  rank d1 " << report.rank_d1 << "  rank d2 " << report.rank_d2 << "  b1 " << report.b1 << "  ("
        << to_string(report.arithmetic) << (report.certified ? "" : ", uncertified") << ")\n";
    return kExitOk;
  }

  static const std::vector<std::string> known{"27sections", "generators", "b1", "h0"};
  if (!check.empty() && std::find(known.begin(), known.end(), check) == known.end())
    throw ValidationError("unknown --check " + check);
  if (check == "27sections" && config.rank != 7) throw ValidationError("--check 27sections needs --rank 7");

  Json checks = Json::object();
  bool pass = true;
  auto run_check = [&](const std::string& name, auto fn) {
    if (!check.empty() && check != name) return;
    auto res = fn();
    res.detail["pass"] = res.pass;
    checks[name] = res.detail;
    pass = pass && res.pass;
  };
  run_check("generators", [&] { return check_generators(oracle, config, out); });
  run_check("b1", [&] { return check_b1(oracle, config, out); });
  run_check("h0", [&] { return check_h0(oracle, config, out); });
  if (config.rank == 7) run_check("27sections", [&] { return check_sections(oracle, out); });

  Json j = {{"rank", config.rank},
            {"seed", config.seed},
            {"arithmetic", to_string(config.arithmetic)},
            {"points", points_json(pts)},
            {"checks", checks},
            {"pass", pass}};
  write_json(artifact(config, "oracle_r" + r + (check.empty() ? "" : "_" + check) + ".json"), j);
  out << (pass ? "all checks pass" : "CHECK FAILED") << "  " << std::fixed << std::setprecision(2)
      << seconds_since(t0) << " s\n";
  return pass ? kExitOk : kExitFailure;
}

int cmd_replay(const RunConfig& config, const std::optional<std::string>& certificate_file, bool stage_tables,
               std::ostream& out) {
  require_rank(config.rank);
  if (!certificate_file && !stage_tables) throw ValidationError("replay needs --certificate FILE or --stage-tables");
  const auto g = build_graph(enumerate_exceptional(config.rank));
  bool ok = true;
  if (stage_tables) {
    const auto cert = replay_stage_tables(g);
    const auto r = std::to_string(config.rank);
    if (cert) write_json(artifact(config, "stage_tables_r" + r + ".json"), certificate_to_json(*cert, g.model()));
    out << "stage tables, rank " << config.rank << ": " << (cert ? "replayed, all curves captured" : "FAILED")
        << "\n";
    ok = ok && cert.has_value();
  }
  if (certificate_file) {
    std::ifstream in(*certificate_file);
    if (!in) throw ValidationError("cannot read " + *certificate_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::vector<Json> docs;
    try {
      auto whole = Json::parse(buffer.str());
      if (whole.is_array()) {
        for (auto& d : whole) docs.push_back(d);
      } else {
        docs.push_back(whole);
      }
    } catch (const Json::parse_error&) {
      std::istringstream lines(buffer.str());
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          docs.push_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
          throw ValidationError(std::string("malformed certificate line: ") + e.what());
        }
      }
    }
    std::size_t good = 0;
    for (const auto& doc : docs) {
      const auto cert = vanishing_from_json(doc, g.model());
      const bool v = verify_certificate(cert, g, {config.allow_generic_moves});
      if (v) {
        ++good;
      } else {
        out << "  rejected " << cert.divisor.to_string() << "\n";
      }
    }
    out << "replayed " << good << "/" << docs.size() << " certificates\n";
    ok = ok && good == docs.size();
  }
  return ok ? kExitOk : kExitFailure;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capture-game certificates and Koszul-strand checks for Cox rings of Del Pezzo surfaces", "dpcox"};
  app.require_subcommand(1);
  RunConfig config;
  std::string arithmetic = "exact";
  std::string points;
  std::optional<std::string> divisor;
  std::string divisor_text;
  std::string check;
  std::string certificate;
  bool stage_tables = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--rank", config.rank, "number of blown-up points (2..7)")->required();
    sub->add_option("--max-degree", config.max_degree, "largest anticanonical degree swept")->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for generic points")->capture_default_str();
    sub->add_option("--points", points, "JSON file [[x,y,z], ...] with one point per blow-up");
    sub->add_option("--arithmetic", arithmetic, "exact or prime")->check(CLI::IsMember({"exact", "prime"}));
    sub->add_flag("--allow-generic-moves", config.allow_generic_moves, "let the closure use GENERIC moves");
    sub->add_option("--out", config.output_dir, "artifact directory")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads, 0 = all cores")->capture_default_str();
  };
  auto* curves = app.add_subcommand("curves", "exceptional curves and graph facts");
  common(curves);
  auto* cert = app.add_subcommand("certify", "certify one divisor");
  common(cert);
  cert->add_option("--divisor", divisor_text, "JSON integer array [d0, d1, ..., dr]")->required();
  auto* sw = app.add_subcommand("sweep", "certify every nef class of degree 3..max-degree");
  common(sw);
  auto* orc = app.add_subcommand("oracle", "interpolation oracle: strands, generators, 27 sections, h0");
  common(orc);
  auto* div_opt = orc->add_option("--divisor", divisor_text, "single strand report for this class");
  orc->add_option("--check", check, "27sections | generators | b1 | h0");
  auto* rep = app.add_subcommand("replay", "re-verify stored certificates or the built-in stage tables");
  common(rep);
  rep->add_option("--certificate", certificate, "certificate JSON or JSON-lines file");
  rep->add_flag("--stage-tables", stage_tables, "replay the explicit stage tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!points.empty()) config.points_file = points;
  config.arithmetic = parse_arithmetic(arithmetic);

  try {
    if (curves->parsed()) return cmd_curves(config, out);
    if (cert->parsed()) return cmd_certify(config, divisor_text, out);
    if (sw->parsed()) return cmd_sweep(config, out);
    if (orc->parsed()) {
      if (div_opt->count() > 0) divisor = divisor_text;
      return cmd_oracle(config, divisor, check, out);
    }
    if (rep->parsed()) {
      return cmd_replay(config, certificate.empty() ? std::nullopt : std::optional<std::string>(certificate),
                        stage_tables, out);
    }
  } catch (const CertificationFailed& e) {
    err << "certification failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const GeneralPositionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dpcox::cli
