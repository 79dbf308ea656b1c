#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "support.hpp"

using namespace surfkernel;
namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(SURFKERNEL_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("surfkernel_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_job(const fs::path& dir, const std::string& text) {
  fs::path p = dir / "job.json";
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("job parsing") {
  JobConfig job = load_job(support::fixture("z5xz5.json"));
  CHECK(job.group.order() == 25);
  CHECK(job.signature.periods.size() == 6);
  CHECK(job.vector.x[1] == job.group.abelian_element({4, 4}));
  CHECK(job.input_sha256 == sha256_hex(support::read_file(support::fixture("z5xz5.json"))));

  try {
    parse_job("{\"group\": [1, 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_job("{}"), ParseError);
  CHECK_THROWS_AS(parse_job(R"({"group": {"kind": "abelian", "invariants": [2]},
      "signature": {"genus": 0, "periods": [2, 2]}, "generating_vector": {"x": [[1], [3]]}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_job(R"({"group": {"kind": "table", "table": [[0, 1], [0, 1]]},
      "signature": {"genus": 0, "periods": [2]}, "generating_vector": {"x": [1]}})"),
                  ParseError);
}

TEST_CASE("small helpers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(parse_formats("text,csv") == std::vector<std::string>{"text", "csv"});
  CHECK_THROWS_AS(parse_formats("xml"), ParseError);
  CHECK(matrix_file_name(3, 25) == "g03.txt");
  CHECK(matrix_file_name(0, 2) == "g0.txt");
}

TEST_CASE("cli exit codes") {
  fs::path dir = scratch("exit");
  const std::string out = " -o " + dir.string();
  CHECK(cli("validate -i " + support::fixture("z5xz5.json")) == 0);
  CHECK(cli("reduce -i " + support::fixture("hyperelliptic2.json") + out) == 0);
  CHECK(fs::exists(dir / "audit.txt"));
  CHECK(cli("matrices -i " + support::fixture("hyperelliptic2.json") + out) == 0);
  CHECK(cli("report -i " + support::fixture("hyperelliptic2.json") + out) == 0);

  CHECK(cli("validate -i " + write_job(dir, "{ not json")) == 2);
  CHECK(cli("validate -i " + write_job(dir, R"({"group": {"kind": "abelian", "invariants": [2]},
      "signature": {"genus": 0, "periods": [2, 2, 2, 2]}, "generating_vector": {"x": [[1], [1], [1], [5]]}})")) == 2);
  CHECK(cli("validate -i " + write_job(dir, R"({"group": {"kind": "abelian", "invariants": [2]},
      "signature": {"genus": 0, "periods": [2, 2, 2, 2, 2, 2]}, "generating_vector": {"x": [[1], [1], [1], [1], [1], [0]]}})")) == 1);
  CHECK(cli("reduce -i " + write_job(dir, R"({"group": {"kind": "abelian", "invariants": [2]},
      "signature": {"genus": 0, "periods": [2, 2, 2]}, "generating_vector": {"x": [[1], [1], [1]]}})") + out) == 1);
  CHECK(cli("reduce -i /nonexistent.json" + out) == 2);
}

TEST_CASE("cli output is deterministic and hashed") {
  fs::path one = scratch("det1"), two = scratch("det2");
  const std::string in = support::fixture("hyperelliptic2.json");
  REQUIRE(cli("matrices -j 2 --format text,json,csv -i " + in + " -o " + one.string()) == 0);
  REQUIRE(cli("matrices -j 1 --format text,json,csv -i " + in + " -o " + two.string()) == 0);
  for (const char* f : {"g0.txt", "g1.txt", "manifest.json", "matrices.json", "matrices.csv"})
    CHECK(support::read_file((one / f).string()) == support::read_file((two / f).string()));
  CHECK(support::read_file((one / "g1.txt").string()) == "-1 0 0 0\n0 -1 0 0\n0 0 -1 0\n0 0 0 -1\n");
  auto manifest = nlohmann::json::parse(support::read_file((one / "manifest.json").string()));
  CHECK(manifest.at("input_sha256") == sha256_hex(support::read_file(in)));
}
