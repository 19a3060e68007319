#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "specbasis/export.hpp"
#include "specbasis/mesh.hpp"
#include "specbasis/seeds.hpp"

using namespace specbasis;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "specbasis_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string sphere_mesh() {
  static const std::string path = [] {
    const auto p = scratch("mesh") / "ico2.off";
    REQUIRE(run({"generate", "icosphere", p.string(), "--level", "2"}).code == 0);
    return p.string();
  }();
  return path;
}

json manifest(const fs::path& dir) { return json::parse(read_text_file(dir / "manifest.json")); }

}  // namespace

TEST_CASE("generate writes a loadable mesh") {
  const auto mesh = load_mesh(sphere_mesh());
  CHECK(mesh.num_vertices() == 162);
  const auto dir = scratch("gen");
  CHECK(run({"generate", "torus", (dir / "t.off").string(), "--major-segments", "12", "--minor-segments", "6"}).code ==
        0);
  CHECK(load_mesh(dir / "t.off").num_vertices() == 72);
}

TEST_CASE("diffusion basis outputs and manifest") {
  const auto dir = scratch("diffusion");
  const auto r = run({"--mesh", sphere_mesh(), "--out", dir.string(), "--format", "csv,ply,json", "basis",
                      "diffusion", "--seed", "3", "--seed", "40", "--t", "0.1"});
  REQUIRE(r.code == 0);
  for (const char* f : {"diffusion_3.csv", "diffusion_40.csv", "diffusion_3.ply", "fields.json", "manifest.json"})
    CHECK(fs::exists(dir / f));
  const json m = manifest(dir);
  CHECK(m["mesh"]["vertices"] == 162);
  CHECK(m["mesh"]["sha256"] == cli::sha256_hex(read_text_file(sphere_mesh())));
  for (const auto& o : m["outputs"]) {
    const std::string content = read_text_file(dir / o["file"].get<std::string>());
    CHECK(o["sha256"] == cli::sha256_hex(content));
    CHECK(o["bytes"] == content.size());
  }
  const Vector f = read_field_csv(dir / "diffusion_3.csv");
  CHECK(f.size() == 162);
  CHECK(f.maxCoeff() == f[3]);
  CHECK_FALSE(fs::exists(dir / "diffusion_3.ply.build"));
}

TEST_CASE("repeated runs are byte-identical") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b})
    REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "basis", "harmonic", "--seed", "0", "--seed", "80"})
                .code == 0);
  CHECK(read_text_file(a / "harmonic_0.csv") == read_text_file(b / "harmonic_0.csv"));
  CHECK(read_text_file(a / "harmonic_80.csv") == read_text_file(b / "harmonic_80.csv"));
}

TEST_CASE("sha256 of a known string") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("eigen basis starts at zero") {
  const auto dir = scratch("eigen");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "basis", "eigen", "--k", "10"}).code == 0);
  const json s = json::parse(read_text_file(dir / "spectrum.json"));
  REQUIRE(s["values"].size() == 10);
  CHECK(std::abs(s["values"][0].get<double>()) < 1e-8);
  CHECK(s["values"][1].get<double>() == doctest::Approx(2.0).epsilon(0.05));
  CHECK(fs::exists(dir / "eigen_9.csv"));
}

TEST_CASE("spectral basis records the evaluation path") {
  const auto dir = scratch("spectral");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "basis", "spectral", "--seed", "5", "--filter",
               "rat:num=1;den=1,0,1"})
              .code == 0);
  CHECK(manifest(dir).dump().find("exact_rational") != std::string::npos);
  const auto dir2 = scratch("spectral_exp");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir2.string(), "basis", "spectral", "--seed", "5", "--filter",
               "exp:t=0.1"})
              .code == 0);
  CHECK(manifest(dir2).dump().find("pade_chebyshev") != std::string::npos);
}

TEST_CASE("metrics matrix exports") {
  const auto dir = scratch("metrics");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "metrics", "area", "--generate", "diffusion", "--fps",
               "5", "--t", "0.001"})
              .code == 0);
  const std::string pgm = read_text_file(dir / "matrix.pgm");
  CHECK(pgm.rfind("P2\n5 5\n255\n", 0) == 0);
  std::istringstream csv(read_text_file(dir / "matrix.csv"));
  int rows = 0;
  for (std::string line; std::getline(csv, line);) rows += !line.empty();
  CHECK(rows == 5);
}

TEST_CASE("seeds and coverage") {
  const auto dir = scratch("seeds");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "seeds", "--k", "12", "--t", "0.01"}).code == 0);
  CHECK(read_seeds(dir / "seeds.txt").size() == 12);
  CHECK(read_text_file(dir / "coverage_curve.csv").rfind("k,fraction\n", 0) == 0);

  const auto cov = scratch("coverage");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", cov.string(), "coverage", "--k0", "7", "--t", "1"}).code == 0);
  const json c = json::parse(read_text_file(cov / "coverage.json"));
  CHECK(c["iterations"] == 1);
  CHECK(c["history"].back() == 1.0);
}

TEST_CASE("validate and spectrum") {
  const auto r = run({"--mesh", sphere_mesh(), "validate"});
  REQUIRE(r.code == 0);
  const json v = json::parse(r.out);
  CHECK(v["boundary_edges"] == 0);
  const auto dir = scratch("spectrum");
  REQUIRE(run({"--mesh", sphere_mesh(), "--out", dir.string(), "spectrum", "--k", "5"}).code == 0);
  const json s = json::parse(read_text_file(dir / "spectrum.json"));
  CHECK(s.contains("next_value"));
  CHECK(s["residuals"].size() == 5);
}

TEST_CASE("errors exit with status 1") {
  const auto dir = scratch("errors");
  CHECK(run({"--mesh", sphere_mesh(), "--out", dir.string(), "basis", "harmonic", "--seed", "1", "--seed", "1"}).code ==
        1);
  CHECK(run({"--mesh", (dir / "missing.off").string(), "validate"}).code == 1);
  CHECK(run({"--mesh", sphere_mesh(), "--bogus"}).code == 1);
  CHECK(run({"--mesh", sphere_mesh(), "--scheme", "meanvalue", "--out", dir.string(), "basis", "eigen"}).code == 1);
  const auto e = run({"--mesh", sphere_mesh(), "--out", dir.string(), "basis", "harmonic", "--seed", "9999"});
  CHECK(e.code == 1);
  CHECK(e.err.rfind("error: ", 0) == 0);
  CHECK(run({"--help"}).code == 0);
}
