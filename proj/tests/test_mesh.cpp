#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"
#include "specbasis/mesh.hpp"

using namespace specbasis;

namespace {

const char* kSquareOff = "OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n";

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / "specbasis_mesh_tests";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("OFF unit square loads as two triangles") {
  const auto mesh = parse_mesh(kSquareOff, MeshFormat::OFF);
  CHECK(mesh.num_vertices() == 4);
  CHECK(mesh.num_triangles() == 2);
  CHECK(mesh.vertex(2) == Point(1, 1, 0));
  CHECK(mesh.total_area() == doctest::Approx(1.0));
}

TEST_CASE("OBJ quad is fan-triangulated with a warning") {
  const auto mesh = parse_mesh("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n", MeshFormat::OBJ);
  CHECK(mesh.num_triangles() == 2);
  CHECK(mesh.load_warnings().size() == 1);
}

TEST_CASE("OBJ pentagon is rejected") {
  CHECK_THROWS_AS(parse_mesh("v 0 0 0\nv 1 0 0\nv 2 1 0\nv 1 2 0\nv 0 1 0\nf 1 2 3 4 5\n", MeshFormat::OBJ),
                  UnsupportedFeature);
}

TEST_CASE("malformed files raise ParseError") {
  CHECK_THROWS_AS(parse_mesh("OFF\n4 2 0\n0 0 0\n1 0 x\n", MeshFormat::OFF), ParseError);
  CHECK_THROWS_AS(parse_mesh("OFF\n4 2 0\n0 0 0\n", MeshFormat::OFF), ParseError);
  CHECK_THROWS_AS(parse_mesh("v 0 0 0\nv 1 0 0\nv 1 1 0\nf 0 1 2\n", MeshFormat::OBJ), ParseError);
  CHECK_THROWS_AS(parse_mesh("nope", MeshFormat::PLY), ParseError);
}

TEST_CASE("invalid connectivity is rejected at construction") {
  std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(TriangleMesh(pts, {{0, 1, 3}}), InvalidMesh);
  CHECK_THROWS_AS(TriangleMesh(pts, {{0, 1, 1}}), InvalidMesh);
  CHECK_THROWS_AS(TriangleMesh(pts, {}), InvalidMesh);
}

TEST_CASE("ascii PLY reader") {
  const std::string ply =
      "ply\nformat ascii 1.0\nelement vertex 3\nproperty float x\nproperty float y\nproperty float z\n"
      "element face 1\nproperty list uchar int vertex_indices\nend_header\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";
  const auto mesh = parse_mesh(ply, MeshFormat::PLY);
  CHECK(mesh.num_triangles() == 1);
  CHECK(mesh.total_area() == doctest::Approx(0.5));
}

TEST_CASE("icosphere level 4 satisfies Euler's formula") {
  const auto mesh = make_icosphere(4);
  CHECK(mesh.num_vertices() == 2562);
  CHECK(mesh.num_triangles() == 2 * mesh.num_vertices() - 4);
  const auto r = validate(mesh);
  CHECK(r.boundary_edges == 0);
  CHECK(r.connected_components == 1);
  CHECK(r.non_manifold_edges.empty());
}

TEST_CASE("unit square has four boundary edges") {
  const auto r = validate(make_unit_square());
  CHECK(r.num_edges == 5);
  CHECK(r.boundary_edges == 4);
}

TEST_CASE("zero-area triangle is reported as degenerate") {
  std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}};
  const TriangleMesh mesh(pts, {{0, 1, 2}, {0, 1, 3}});
  const auto r = validate(mesh);
  REQUIRE(r.degenerate_triangles.size() == 1);
  CHECK(r.degenerate_triangles[0] == 1);
}

TEST_CASE("adjacency is symmetric") {
  const auto mesh = make_torus(12, 8, 1.0, 0.3);
  for (int i = 0; i < mesh.num_vertices(); ++i)
    for (int j : mesh.neighbors(i)) {
      const auto nj = mesh.neighbors(j);
      CHECK(std::binary_search(nj.begin(), nj.end(), i));
    }
}

TEST_CASE("distances on the unit square") {
  const auto mesh = make_unit_square();
  const auto e = vertex_distances(mesh, 0, DistanceMetric::Euclidean);
  CHECK(e.values[2] == doctest::Approx(std::sqrt(2.0)));
  const auto g = vertex_distances(mesh, 0, DistanceMetric::GraphGeodesic);
  CHECK(g.values[2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.values[0] == 0.0);
  CHECK_FALSE(g.disconnected);
}

TEST_CASE("disconnected meshes keep infinite distances") {
  std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}};
  const TriangleMesh mesh(pts, {{0, 1, 2}, {3, 4, 5}});
  const auto g = vertex_distances(mesh, 0, DistanceMetric::GraphGeodesic);
  CHECK(g.disconnected);
  CHECK(std::isinf(g.values[4]));
  CHECK(connected_components(mesh).second == 2);
}

TEST_CASE("property: graph distance dominates the chord") {
  std::mt19937 rng(11);
  const auto mesh = oracle::jittered_sphere(2, 0.1, 3);
  std::uniform_int_distribution<int> pick(0, mesh.num_vertices() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const int s = pick(rng);
    const auto e = vertex_distances(mesh, s, DistanceMetric::Euclidean).values;
    const auto g = vertex_distances(mesh, s, DistanceMetric::GraphGeodesic).values;
    CHECK(e[s] == 0.0);
    CHECK(g[s] == 0.0);
    CHECK((g - e).minCoeff() >= -1e-12);
    CHECK(e.minCoeff() >= 0.0);
  }
}

TEST_CASE("property: OFF round trip keeps 9 significant digits") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ud(-10, 10);
  std::vector<Point> pts;
  for (int i = 0; i < 30; ++i) pts.emplace_back(ud(rng), ud(rng), ud(rng));
  std::vector<Triangle> tris;
  for (int i = 0; i + 2 < 30; ++i) tris.push_back({i, i + 1, i + 2});
  const TriangleMesh mesh(pts, tris);
  const auto path = temp_dir() / "round.off";
  save_off(mesh, path);
  const auto back = load_mesh(path);
  REQUIRE(back.num_vertices() == mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v)
    for (int c = 0; c < 3; ++c) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.9g", mesh.vertex(v)[c]);
      CHECK(back.vertex(v)[c] == std::strtod(buf, nullptr));
    }
  // Writing the reloaded mesh gives the same bytes.
  CHECK(format_off(back) == format_off(mesh));
  CHECK(back.triangles() == mesh.triangles());
}

TEST_CASE("PLY writer stores colors and reloads") {
  const auto mesh = make_unit_square();
  std::vector<std::array<std::uint8_t, 3>> colors(4, {255, 0, 0});
  const auto path = temp_dir() / "square.ply";
  save_ply(mesh, path, colors);
  const auto text = read_text_file(path);
  CHECK(text.find("property uchar red") != std::string::npos);
  CHECK(load_mesh(path).num_triangles() == 2);
}

TEST_CASE("submesh keeps an index map") {
  const auto mesh = make_grid(3, 3);
  std::vector<int> keep{0, 1};
  const auto [sub, map] = submesh(mesh, keep);
  CHECK(sub.num_triangles() == 2);
  CHECK(static_cast<int>(map.size()) == sub.num_vertices());
  for (int v = 0; v < sub.num_vertices(); ++v) CHECK(sub.vertex(v) == mesh.vertex(map[v]));
}

TEST_CASE("hop distances on a grid") {
  const auto mesh = make_grid(4, 4);
  const auto hops = hop_distances(mesh, 0);
  CHECK(hops[0] == 0);
  CHECK(hops[24] == 4);  // diagonal edges shorten the corner-to-corner path
}
