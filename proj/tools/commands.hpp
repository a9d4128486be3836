#ifndef DPCOX_TOOLS_COMMANDS_HPP
#define DPCOX_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dpcox/cox_oracle.hpp"

namespace dpcox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  int rank = 0;
  int max_degree = 3;
  std::optional<std::string> points_file;
  std::uint64_t seed = 1;
  Arithmetic arithmetic = Arithmetic::EXACT;
  bool allow_generic_moves = false;
  std::string output_dir = ".";
  int threads = 1;
};

// Each command writes its artifacts under config.output_dir and a human
// summary to `out`. Library exceptions propagate; run() maps them to exit codes.
int cmd_curves(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, const std::string& divisor, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
// check: "27sections", "generators", "b1" or "h0"; empty runs the whole battery.
int cmd_oracle(const RunConfig& config, const std::optional<std::string>& divisor, const std::string& check,
               std::ostream& out);
int cmd_replay(const RunConfig& config, const std::optional<std::string>& certificate_file, bool stage_tables,
               std::ostream& out);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dpcox::cli

#endif  // DPCOX_TOOLS_COMMANDS_HPP
