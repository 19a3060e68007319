#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <Eigen/Geometry>

#include "oracles.hpp"
#include "specbasis/basis.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/seeds.hpp"

using namespace specbasis;

namespace {

Vector delta(int n, int i) {
  Vector e = Vector::Zero(n);
  e[i] = 1.0;
  return e;
}

double min_pairwise(const TriangleMesh& mesh, const std::vector<int>& seeds, int k) {
  double best = HUGE_VAL;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) best = std::min(best, (mesh.vertex(seeds[i]) - mesh.vertex(seeds[j])).norm());
  return best;
}

}  // namespace

TEST_CASE("curvature of spheres and planes") {
  for (double radius : {1.0, 2.0}) {
    const auto mesh = make_icosphere(4, radius);
    const Vector h = curvature_field(mesh, assemble(mesh));
    CAPTURE(radius);
    CHECK(h.mean() == doctest::Approx(1.0 / radius).epsilon(0.05));
    // Spread as the coefficient of variation. The twelve valence-5 vertices
    // sit about 15% high under barycentric lumping at every resolution.
    const double sd = std::sqrt((h.array() - h.mean()).square().mean());
    CHECK(sd <= 0.1 * h.mean());
    CHECK((h.array() * radius - 1.0).abs().maxCoeff() <= 0.15);
  }
  const auto grid = make_grid(20, 20);
  const Vector h = curvature_field(grid, assemble(grid));
  Eigen::AlignedBox3d box;
  for (const auto& p : grid.vertices()) box.extend(p);
  for (int v = 0; v < grid.num_vertices(); ++v) {
    const Point& p = grid.vertex(v);
    const bool border = p.x() == box.min().x() || p.x() == box.max().x() || p.y() == box.min().y() ||
                        p.y() == box.max().y();
    if (!border) CHECK(h[v] <= 1e-10);
  }
}

TEST_CASE("curvature maximum picks the sharpest vertex") {
  // A sphere with one vertex pulled out into a spike.
  const auto sphere = make_icosphere(3);
  auto pts = sphere.vertices();
  pts[140] *= 1.3;
  const TriangleMesh mesh(pts, sphere.triangles());
  CHECK(curvature_maximum(mesh, assemble(mesh)) == 140);
  CHECK(curvature_maximum(sphere, assemble(sphere)) < sphere.num_vertices());
}

TEST_CASE("farthest point sampling") {
  const auto square = make_unit_square();
  CHECK(farthest_point_sampling(square, 1, 0).indices == std::vector<int>{0});
  CHECK(farthest_point_sampling(square, 2, 0).indices == std::vector<int>{0, 2});
  const auto mesh = oracle::jittered_sphere(2, 0.1, 8);
  for (auto metric : {DistanceMetric::Euclidean, DistanceMetric::GraphGeodesic}) {
    const auto all = farthest_point_sampling(mesh, mesh.num_vertices(), 5, metric);
    std::set<int> unique(all.indices.begin(), all.indices.end());
    CHECK(static_cast<int>(unique.size()) == mesh.num_vertices());
    CHECK(all.start == 5);
    CHECK(all.metric == metric);
  }
  CHECK_THROWS_AS(farthest_point_sampling(square, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(farthest_point_sampling(square, 5, 0), InvalidArgument);
}

TEST_CASE("property: FPS is deterministic and its spread shrinks") {
  for (unsigned trial = 0; trial < 5; ++trial) {
    const auto mesh = oracle::jittered_sphere(3, 0.1, trial);
    const int start = static_cast<int>(trial * 37 % mesh.num_vertices());
    const auto a = farthest_point_sampling(mesh, 60, start);
    const auto b = farthest_point_sampling(mesh, 60, start);
    CHECK(a.indices == b.indices);
    double last = HUGE_VAL;
    for (int k = 2; k <= 60; ++k) {
      const double d = min_pairwise(mesh, a.indices, k);
      CHECK(d <= last);
      last = d;
    }
  }
}

TEST_CASE("support thresholds") {
  CHECK(support(delta(10, 3), 0.5) == std::vector<int>{3});
  CHECK(support(delta(10, 3), 1e-9) == std::vector<int>{3});
  CHECK(support(Vector::Constant(6, -2.0), 1e-3).size() == 6);
  CHECK_THROWS_AS(support(Vector::Zero(4), 1e-3), ZeroField);
  CHECK_THROWS_AS(support(Vector::Ones(4), 0.0), InvalidArgument);
  CHECK_THROWS_AS(support(Vector::Ones(4), 1.0), InvalidArgument);
}

TEST_CASE("small-scale diffusion is local") {
  const auto mesh = make_icosphere(5);  // about 10K vertices
  const auto op = assemble(mesh);
  const Vector f = diffusion_basis(op, 1e-3, 0).values;
  CHECK(static_cast<int>(support(f, 1e-3).size()) < op.size());
}

TEST_CASE("coverage loop at a large scale finishes in one round") {
  const auto mesh = make_icosphere(3);
  const auto op = assemble(mesh);
  const auto result = coverage_loop(
      mesh, op, [&](int seed) { return diffusion_basis(op, 1.0, seed).values; }, 7);
  CHECK(result.iterations() == 1);
  CHECK(result.history.back() == 1.0);
  CHECK(result.seeds.size() == 7);
  CHECK(result.seeds.indices[0] == curvature_maximum(mesh, op));
}

TEST_CASE("coverage loop with deltas seeds every vertex") {
  const auto mesh = make_icosphere(1);
  const auto op = assemble(mesh);
  const int n = op.size();
  const auto result = coverage_loop(mesh, op, [n](int seed) { return delta(n, seed); }, 1, 0.3);
  CHECK(result.seeds.size() == n);
  std::set<int> unique(result.seeds.indices.begin(), result.seeds.indices.end());
  CHECK(static_cast<int>(unique.size()) == n);
  CHECK(result.history.back() == 1.0);
  for (size_t i = 1; i < result.history.size(); ++i) CHECK(result.history[i] > result.history[i - 1]);
  CHECK(result.iterations() <= n);
}

TEST_CASE("coverage loop at an intermediate scale") {
  const auto mesh = make_torus(40, 20, 1.0, 0.35);
  const auto op = assemble(mesh);
  RationalFilterOperator heat(op, rational_form(FilterSpec::exponential(2e-3)));
  const auto result = coverage_loop(
      mesh, op, [&](int seed) { return heat.apply(delta(op.size(), seed)); }, 10);
  CHECK(result.iterations() > 1);
  CHECK(result.history.back() == 1.0);
  for (size_t i = 1; i < result.history.size(); ++i) CHECK(result.history[i] > result.history[i - 1]);
  CHECK(static_cast<int>(result.fields.size()) == result.seeds.size());
}

TEST_CASE("generators must cover their own seed") {
  const auto mesh = make_icosphere(1);
  const auto op = assemble(mesh);
  const int n = op.size();
  CHECK_THROWS_AS(coverage_loop(mesh, op, [n](int seed) { return delta(n, (seed + 1) % n); }, 2), NoProgress);
}

TEST_CASE("coverage curve") {
  const auto mesh = make_icosphere(4);
  const auto op = assemble(mesh);
  const auto seeds = farthest_point_sampling(mesh, 50, curvature_maximum(mesh, op)).indices;
  const auto set = diffusion_set(op, 1e-3, seeds);
  std::vector<Vector> fields;
  for (const auto& f : set.fields) fields.push_back(f.values);
  const auto curve = coverage_curve(fields, 1e-3);
  REQUIRE(curve.size() == 50);
  for (size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] >= curve[i - 1]);
  CHECK(curve.back() < 1.0);
  CHECK(coverage_curve({Vector::Ones(op.size())}, 1e-3).back() == 1.0);
}

TEST_CASE("seed files") {
  CHECK(format_seeds({3, 1, 4}) == "3\n1\n4\n");
  CHECK(parse_seeds("3\n1\n\n4\n") == std::vector<int>{3, 1, 4});
  CHECK_THROWS_AS(parse_seeds("3\nx\n"), ParseError);
  const auto path = std::filesystem::temp_directory_path() / "specbasis_seeds.txt";
  std::ofstream(path) << format_seeds({9, 8});
  CHECK(read_seeds(path) == std::vector<int>{9, 8});
}
