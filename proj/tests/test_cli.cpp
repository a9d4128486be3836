#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dpcox");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = dpcox::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dpcox_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every file in a, byte-compared with its namesake in b.
bool same_artifacts(const fs::path& a, const fs::path& b) {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++n;
    const auto other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) return false;
  }
  return n > 0 && n == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

}  // namespace

TEST_CASE("curves") {
  const auto dir = fresh_dir("curves");
  auto r = run({"curves", "--rank", "6", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "curves_r6.json"));
  CHECK(fs::exists(dir / "graph_r6.json"));
  CHECK(fs::exists(dir / "graph_r6.txt"));
  CHECK(slurp(dir / "curves_r6.json").find("\"h1\"") == std::string::npos);
  r = run({"curves", "--rank", "7", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("double edges 28") != std::string::npos);
  CHECK(run({"curves", "--rank", "9"}).code == 2);
  CHECK(run({"curves", "--rank", "1"}).code == 2);
  CHECK(run({"curves"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("certify") {
  const auto dir = fresh_dir("certify");
  auto r = run({"certify", "--rank", "6", "--divisor", "[3,-1,-1,-1,-1,-1,-1]", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("GAME") != std::string::npos);
  CHECK(run({"certify", "--rank", "5", "--divisor", "[0,1,0,0,0,0]", "--out", dir.string()}).code == 2);
  CHECK(run({"certify", "--rank", "5", "--divisor", "[1,0,0,0,0,0]", "--out", dir.string()}).out.find(
            "CONTRACTION") != std::string::npos);
  CHECK(run({"certify", "--rank", "5", "--divisor", "not json", "--out", dir.string()}).code == 2);
  CHECK(run({"certify", "--rank", "5", "--divisor", "[3,-1,-1,-1,-1,-1,-1]", "--out", dir.string()}).code == 2);
  // A class that is not nef certifies as NOT_NEF; that is a successful run.
  r = run({"certify", "--rank", "5", "--divisor", "[4,2,-1,-1,-1,-1]", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT_NEF") != std::string::npos);
}

TEST_CASE("sweep and replay") {
  const auto dir = fresh_dir("sweep");
  auto r = run({"sweep", "--rank", "5", "--max-degree", "6", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT_NEF 0") != std::string::npos);
  CHECK(run({"sweep", "--rank", "7", "--max-degree", "3", "--out", dir.string()}).code == 0);
  CHECK(run({"sweep", "--rank", "5", "--max-degree", "2", "--out", dir.string()}).code == 2);

  const auto jsonl = (dir / "certificates_r5.jsonl").string();
  CHECK(run({"replay", "--rank", "5", "--certificate", jsonl}).code == 0);
  CHECK(run({"replay", "--rank", "6", "--certificate", jsonl}).code == 2);

  // Flip one evidence value: the replay must fail verification, not crash.
  std::string text = slurp(jsonl);
  const auto pos = text.find("\"n_squared\":");
  REQUIRE(pos != std::string::npos);
  text.insert(pos + 12, "1");
  const auto tampered = dir / "tampered.jsonl";
  std::ofstream(tampered) << text;
  CHECK(run({"replay", "--rank", "5", "--certificate", tampered.string()}).code == 1);

  std::ofstream(dir / "garbage.jsonl") << "{ not json\n";
  CHECK(run({"replay", "--rank", "5", "--certificate", (dir / "garbage.jsonl").string()}).code == 2);
  CHECK(run({"replay", "--rank", "5"}).code == 2);
  CHECK(run({"replay", "--rank", "6", "--stage-tables", "--out", dir.string()}).code == 0);
}

TEST_CASE("oracle") {
  const auto dir = fresh_dir("oracle");
  auto r = run({"oracle", "--rank", "4", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("generators in degree 2: 5") != std::string::npos);
  CHECK(run({"oracle", "--rank", "7", "--check", "27sections", "--out", dir.string()}).code == 0);
  CHECK(run({"oracle", "--rank", "6", "--check", "27sections", "--out", dir.string()}).code == 2);
  CHECK(run({"oracle", "--rank", "6", "--check", "nothing", "--out", dir.string()}).code == 2);
  r = run({"oracle", "--rank", "6", "--divisor", "[3,-1,-1,-1,-1,-1,-1]", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("b1 0") != std::string::npos);
  r = run({"oracle", "--rank", "5", "--arithmetic", "prime", "--check", "b1", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(run({"oracle", "--rank", "5", "--arithmetic", "float"}).code == 2);

  std::ofstream(dir / "collinear.json") << "[[1,0,0],[0,1,0],[1,1,0]]";
  r = run({"oracle", "--rank", "3", "--points", (dir / "collinear.json").string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("collinear") != std::string::npos);
  std::ofstream(dir / "short.json") << "[[1,0,0]]";
  CHECK(run({"oracle", "--rank", "3", "--points", (dir / "short.json").string()}).code == 2);
  std::ofstream(dir / "good.json") << "[[1,0,0],[0,1,0],[0,0,1],[1,1,1]]";
  CHECK(run({"oracle", "--rank", "4", "--points", (dir / "good.json").string(), "--out", dir.string()}).code == 0);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  const std::vector<std::vector<std::string>> commands{
      {"curves", "--rank", "7"},
      {"certify", "--rank", "7", "--divisor", "[4,-1,-1,-1,-1,-1,-1,-1]"},
      {"sweep", "--rank", "6", "--max-degree", "5", "--threads", "3"},
      {"oracle", "--rank", "5", "--seed", "4"},
      {"replay", "--rank", "7", "--stage-tables"},
  };
  int k = 0;
  for (const auto& cmd : commands) {
    const auto a = fresh_dir("det_a" + std::to_string(k));
    const auto b = fresh_dir("det_b" + std::to_string(k));
    ++k;
    auto args_a = cmd, args_b = cmd;
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    CHECK(run(args_a).code == 0);
    CHECK(run(args_b).code == 0);
    CAPTURE(cmd[0]);
    CHECK(same_artifacts(a, b));
  }
  // Thread count must not leak into artifacts either.
  const auto one = fresh_dir("threads1"), many = fresh_dir("threads4");
  CHECK(run({"sweep", "--rank", "6", "--max-degree", "5", "--threads", "1", "--out", one.string()}).code == 0);
  CHECK(run({"sweep", "--rank", "6", "--max-degree", "5", "--threads", "4", "--out", many.string()}).code == 0);
  CHECK(same_artifacts(one, many));
}
