#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MPVC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(MPVC_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("analyze prints verdicts") {
  const Run r = run("analyze " + fixture("ex21.mpvc") + " --point 0,0");
  CHECK(r.code == 0);
  CHECK(r.out.find("MPVC-GMFCQ") != std::string::npos);
  CHECK(r.out.find("I_00 = {1}") != std::string::npos);
}

TEST_CASE("JSON output parses and global flags may follow the subcommand") {
  const Run r = run("analyze " + fixture("ex22.mpvc") + " --point 0,0 --json --directions 36");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "analyze");
  CHECK(j.contains("analysis"));
}

TEST_CASE("exit codes") {
  CHECK(run("analyze " + fixture("ex22.mpvc") + " --point 1,1").code == 2);
  CHECK(run("analyze /nonexistent.mpvc --point 0,0").code == 1);
  CHECK(run("analyze " + fixture("ex22.mpvc") + " --point 0").code == 1);
  CHECK(run("analyze " + fixture("ex22.mpvc") + " --point 0,abc").code == 1);
  CHECK(run("penalty-sweep " + fixture("ex22.mpvc") + " --point 0,0 --alphas 1,0.5").code == 1);
  CHECK(run("frobnicate").code == 1);
  const std::string bad = "/tmp/mpvc_cli_bad.mpvc";
  std::ofstream(bad) << "[vars] x\n[objective] x +\n";
  CHECK(run("analyze " + bad + " --point 0").code == 1);
}

TEST_CASE("each subcommand runs") {
  CHECK(run("penalty-sweep " + fixture("ex22.mpvc") + " --point 0,0").code == 0);
  CHECK(run("scan " + fixture("ex22.mpvc") + " --point 0,0 --samples 50").code == 0);
  CHECK(run("solve " + fixture("ex21.mpvc")).code == 0);
  CHECK(run("acq " + fixture("ex41.mpvc") + " --point 0,0 --directions 16").code == 0);
  const Run a = run("audit --instances 4");
  CHECK(a.code == 0);
  CHECK(a.out.find("chain violations: 0") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "/tmp/mpvc_cli_out.json";
  std::remove(path.c_str());
  CHECK(run("--json --out " + path + " solve " + fixture("ex22.mpvc")).code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j["command"] == "solve");
}

TEST_CASE("runs are reproducible apart from the timestamp") {
  const std::string args = "scan " + fixture("ex22.mpvc") + " --point 0,0 --samples 40 --json";
  auto a = nlohmann::json::parse(run(args).out), b = nlohmann::json::parse(run(args).out);
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);
}
