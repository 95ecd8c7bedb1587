#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "koszul/cache.hpp"
#include "koszul/curve_file.hpp"

using namespace koszul;
namespace fs = std::filesystem;

namespace {

const std::string kData = KOSZUL_DATA_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "koszul");
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("koszul_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return (path / name).string();
  }
};

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_curve_file(in, "t.crv");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const std::string kQuartic = kData + "/quartic.crv";

}  // namespace

TEST_CASE("parser errors carry the line number") {
  CHECK(parse_error("prime 2147483647\ndegree 4\n4 0 0 1\n3 0 0 1\n") ==
        "t.crv:4: exponents sum to 3, not the degree 4");
  CHECK(parse_error("degree 4\nprime 7\nprime 7\n").rfind("t.crv:3:", 0) == 0);
  CHECK(parse_error("4 0 0 1\n").rfind("t.crv:1: monomial before", 0) == 0);
  CHECK(parse_error("degree 4\n4 0 0 1\nfoo bar\n").rfind("t.crv:3: unrecognized line", 0) == 0);
  CHECK(parse_error("degree 4\n4 0 0 1\nminus 1 0 0 1\n").rfind("t.crv:3:", 0) == 0);
  CHECK(parse_error("degree 4\n4 0 0 1\nbundle L twist 2\nbundle L twist 3\n").rfind("t.crv:4:", 0) == 0);
  CHECK(parse_error("# nothing\n") == "t.crv: missing 'degree' line");
  CHECK(parse_error("degree 4\n4 0 0 1\n4 0 0 2\n").rfind("t.crv:3: monomial listed twice", 0) == 0);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({"--version"}).code == cli::kExitOk);
  CHECK(run({"betti"}).code == cli::kExitInput);
  CHECK(run({"betti", "--input", (tmp.path / "missing.crv").string()}).code == cli::kExitInput);
  CHECK(run({"betti", "--input", kQuartic, "--format", "xml"}).code == cli::kExitInput);
  CHECK(run({"betti", "--input", kQuartic, "--bundle-l", "nope"}).code == cli::kExitInput);
  CHECK(run({"betti", "--input", kQuartic, "--prime", "1000"}).code == cli::kExitInput);

  const std::string singular =
      tmp.file("s.crv", "prime 2147483647\ndegree 4\n2 1 1 1\n1 2 1 1\n1 1 2 1\nbundle L twist 2\n");
  const Result sing = run({"curve-check", "--input", singular});
  CHECK(sing.code == cli::kExitInput);
  const auto j = nlohmann::json::parse(sing.out);
  CHECK(j["smooth"] == false);
  CHECK(j.contains("witness"));

  const Result ok = run({"curve-check", "--input", kQuartic});
  CHECK(ok.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(ok.out)["genus"] == 3);

  const Result betti = run({"betti", "--input", kQuartic, "--single-prime"});
  CHECK(betti.code == cli::kExitOk);
  const Result verify = run({"verify", "--input", kQuartic, "--format", "table"});
  CHECK(verify.code == cli::kExitOk);
  CHECK(verify.out.find("overall: match") != std::string::npos);
}

TEST_CASE("mismatches map to exit code 2") {
  BettiTable t;
  CHECK(cli::exit_code(t) == cli::kExitOk);
  t.two_prime.status = CheckStatus::kFail;
  CHECK(cli::exit_code(t) == cli::kExitMismatch);
  VerifyReport rep;
  CHECK(cli::exit_code(rep) == cli::kExitOk);
  OracleVerdict v;
  v.verdict = Verdict::kMismatch;
  rep.oracles.push_back(v);
  CHECK(cli::exit_code(rep) == cli::kExitMismatch);
}

TEST_CASE("output formats") {
  const Result js = run({"betti", "--input", kQuartic, "--single-prime"});
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["genus"] == 3);
  CHECK(j["r"] == 5);
  bool found = false;
  for (const auto& c : j["cells"])
    if (c["p"] == 2 && c["q"] == 1) {
      CHECK(c["kappa"] == 8);
      found = true;
    }
  CHECK(found);
  const Result csv = run({"betti", "--input", kQuartic, "--single-prime", "--format", "csv"});
  CHECK(csv.out.rfind("p,q,", 0) == 0);
  const Result table = run({"betti", "--input", kQuartic, "--single-prime", "--format", "table"});
  CHECK(table.out.find("dsquared") != std::string::npos);
}

TEST_CASE("timings off gives byte-identical reruns") {
  const std::vector<std::string> args{"betti", "--input", kQuartic, "--no-timings"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Result c = run({"betti", "--input", kQuartic, "--no-timings", "--format", "csv"});
  const Result d = run({"betti", "--input", kQuartic, "--no-timings", "--format", "csv"});
  CHECK(c.out == d.out);
}

TEST_CASE("result cache") {
  TempDir tmp;
  const std::string dir = (tmp.path / "cache").string();
  const std::vector<std::string> args{"verify", "--input", kQuartic, "--cache-dir", dir};
  const Result first = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.err.empty());
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cache") entries.push_back(e.path());
  REQUIRE(entries.size() == 1);
  const fs::path manifest = fs::path(entries[0]).replace_extension(".manifest.json");
  CHECK(nlohmann::json::parse(slurp(manifest))["cache_hit"] == false);

  const Result second = run(args);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.empty());
  CHECK(nlohmann::json::parse(slurp(manifest))["cache_hit"] == true);

  SUBCASE("a tampered entry is recomputed with a warning") {
    std::string text = slurp(entries[0]);
    const auto pos = text.find("\"kappa\": 8");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 10, "\"kappa\": 9");
    std::ofstream(entries[0], std::ios::binary | std::ios::trunc) << text;
    const Result again = run(args);
    CHECK(again.code == 0);
    CHECK(again.err.find("warning") != std::string::npos);
    CHECK(again.out.find("\"kappa\": 9") == std::string::npos);
    // The recomputed entry replaced the bad one.
    CHECK(run(args).err.empty());
  }
  SUBCASE("a truncated entry is a miss") {
    std::ofstream(entries[0], std::ios::binary | std::ios::trunc) << "sha256:";
    const Result again = run(args);
    CHECK(again.code == 0);
    CHECK(again.err.find("warning") != std::string::npos);
  }
  SUBCASE("different options use a different key") {
    const Result other = run({"verify", "--input", kQuartic, "--cache-dir", dir, "--bundle-l", "L2x"});
    CHECK(other.code == 0);
    CHECK(other.out != first.out);
  }
}

TEST_CASE("an unusable cache directory only warns") {
  TempDir tmp;
  const std::string blocker = tmp.file("plain", "x");
  const Result r = run({"betti", "--input", kQuartic, "--single-prime", "--cache-dir", blocker + "/sub"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("output file and manifest") {
  TempDir tmp;
  const std::string out = (tmp.path / "report.json").string();
  const Result r = run({"betti", "--input", kQuartic, "--single-prime", "--output", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report["degree_L"] == 8);
  const auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(m["command"] == "betti");
  CHECK(m["input_sha256"] == sha256_hex(slurp(kQuartic)));
  CHECK(m["outputs"][0] == out);
  CHECK(m["seed"] == 20240601);
}
