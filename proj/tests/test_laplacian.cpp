#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/laplacian.hpp"

using namespace specbasis;

TEST_CASE("unit square cotangent weights by hand") {
  const auto op = assemble(make_unit_square());
  const Matrix L = oracle::dense(op.L());
  CHECK(L(0, 2) == doctest::Approx(0.0).epsilon(1e-14));  // two right angles face the diagonal
  CHECK(L(0, 1) == doctest::Approx(-0.5));
  CHECK(L(1, 2) == doctest::Approx(-0.5));
  CHECK(L(2, 3) == doctest::Approx(-0.5));
  CHECK(L(3, 0) == doctest::Approx(-0.5));
  const Vector b = op.B().diagonal();
  CHECK(b[0] == doctest::Approx(1.0 / 3.0));
  CHECK(b[1] == doctest::Approx(1.0 / 6.0));
  CHECK(b[2] == doctest::Approx(1.0 / 3.0));
  CHECK(b[3] == doctest::Approx(1.0 / 6.0));
  CHECK(b.sum() == doctest::Approx(1.0));
}

TEST_CASE("stiffness and masses match the angle-based oracle") {
  const auto mesh = oracle::jittered_sphere(2, 0.2, 17);
  const auto fem = assemble(mesh, LaplacianScheme::LinearFem, MassMode::Consistent);
  const auto cot = assemble(mesh, LaplacianScheme::VoronoiCotangent, MassMode::Lumped);
  const Matrix Lref = oracle::cot_stiffness(mesh);
  CHECK((oracle::dense(fem.L()) - Lref).cwiseAbs().maxCoeff() < 1e-10 * Lref.cwiseAbs().maxCoeff());
  CHECK((oracle::dense(cot.L()) - Lref).cwiseAbs().maxCoeff() < 1e-10 * Lref.cwiseAbs().maxCoeff());
  CHECK((oracle::dense(fem.B().matrix()) - oracle::consistent_mass(mesh)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((oracle::dense(cot.B().matrix()) - oracle::lumped_mass(mesh)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("consistent mass is only defined for FEM") {
  CHECK_THROWS_AS(assemble(make_unit_square(), LaplacianScheme::MeanValue, MassMode::Consistent), InvalidArgument);
}

TEST_CASE("scheme and mass names") {
  CHECK(parse_scheme("fem") == LaplacianScheme::LinearFem);
  CHECK(parse_scheme("cot") == LaplacianScheme::VoronoiCotangent);
  CHECK(parse_scheme("meanvalue") == LaplacianScheme::MeanValue);
  CHECK(parse_mass_mode("consistent") == MassMode::Consistent);
  CHECK_THROWS_AS(parse_scheme("bogus"), InvalidArgument);
}

TEST_CASE("all-degenerate mesh is rejected") {
  std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(assemble(TriangleMesh(pts, {{0, 1, 2}})), AllDegenerate);
}

TEST_CASE("degenerate triangles contribute nothing") {
  // Vertex 3 sits on the edge 0-1; the sliver (0, 3, 1) has zero area.
  std::vector<Point> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.5, 0, 0}};
  const auto op = assemble(TriangleMesh(pts, {{0, 3, 2}, {3, 1, 2}, {0, 3, 1}}), LaplacianScheme::LinearFem,
                           MassMode::Lumped);
  CHECK(op.degenerate_triangles == 1);
  CHECK(op.L().coeff(0, 1) == 0.0);
  CHECK(op.B().diagonal().sum() == doctest::Approx(0.5));
}

TEST_CASE("negative cotangent weights are counted") {
  // One very obtuse triangle next to a regular one.
  std::vector<Point> pts{{0, 0, 0}, {2, 0, 0}, {1, 0.1, 0}, {1, -1, 0}};
  const auto op = assemble(TriangleMesh(pts, {{0, 1, 2}, {0, 3, 1}}));
  CHECK(op.negative_weights > 0);
}

TEST_CASE("apply: constants vanish and the sphere's coordinates are eigenfunctions") {
  const auto mesh = make_icosphere(4);
  const auto op = assemble(mesh);
  CHECK(oracle::linf(apply(op, Vector::Constant(op.size(), 3.0))) < 1e-10);
  Vector x(op.size());
  for (int v = 0; v < op.size(); ++v) x[v] = mesh.vertex(v).x();
  const Vector y = apply(op, x);
  CHECK((y - 2.0 * x).norm() <= 0.05 * (2.0 * x).norm());
}

TEST_CASE("apply with consistent mass solves against B") {
  const auto mesh = oracle::jittered_sphere(2, 0.1, 3);
  const auto op = assemble(mesh, LaplacianScheme::LinearFem, MassMode::Consistent);
  std::mt19937 rng(8);
  const Vector f = oracle::random_vector(op.size(), rng);
  const Vector ref = oracle::dense(op.B().matrix()).llt().solve(oracle::dense(op.L()) * f);
  CHECK(oracle::linf(apply(op, f) - ref) < 1e-8 * oracle::linf(ref));
}

TEST_CASE("mean-value weights are positive and rows normalised") {
  const auto mesh = oracle::jittered_sphere(2, 0.2, 5);
  const auto op = assemble(mesh, LaplacianScheme::MeanValue);
  CHECK_FALSE(op.symmetric());
  CHECK_THROWS_AS(op.stiffness(), SchemeNotSymmetric);
  const Matrix L = oracle::dense(op.L());
  for (int i = 0; i < op.size(); ++i) {
    CHECK(std::abs(L.row(i).sum()) < 1e-12);
    for (int j : mesh.neighbors(i)) CHECK(L(i, j) < 0.0);
  }
}

TEST_CASE("property: operator invariants on random meshes") {
  std::mt19937 rng(21);
  for (unsigned trial = 0; trial < 4; ++trial) {
    const auto mesh = trial % 2 ? oracle::jittered_sphere(2, 0.15, trial) : make_torus(18, 9, 1.0, 0.3 + 0.05 * trial);
    for (MassMode mode : {MassMode::Lumped, MassMode::Consistent}) {
      const auto op = assemble(mesh, LaplacianScheme::LinearFem, mode);
      const Matrix L = oracle::dense(op.L());
      const double Lnorm = op.stiffness().norm_inf();
      CHECK(oracle::linf(L * Vector::Ones(op.size())) <= 1e-10 * Lnorm);
      CHECK(asymmetry(op.L()) == 0.0);
      CHECK(Vector::Ones(op.size()).dot(op.B() * Vector::Ones(op.size())) ==
            doctest::Approx(mesh.total_area()).epsilon(1e-10));
      if (mode == MassMode::Lumped) {
        CHECK(op.B().is_diagonal());
        CHECK(op.B().diagonal().minCoeff() > 0.0);
      }
      // Locality.
      for (int k = 0; k < op.L().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(op.L(), k); it; ++it) {
          if (it.row() == it.col()) continue;
          const auto nb = mesh.neighbors(static_cast<int>(it.row()));
          CHECK(std::binary_search(nb.begin(), nb.end(), static_cast<int>(it.col())));
        }
      for (int s = 0; s < 5; ++s) {
        const Vector f = oracle::random_vector(op.size(), rng);
        const Vector g = oracle::random_vector(op.size(), rng);
        CHECK(f.dot(op.stiffness() * f) >= -1e-10 * f.squaredNorm() * Lnorm);
        const double lhs = apply(op, f).dot(op.B() * g);
        const double rhs = f.dot(op.B() * apply(op, g));
        const double scale = std::abs(f.dot(op.stiffness() * g)) + f.norm() * g.norm() * Lnorm * 1e-3;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("area normalisation") {
  AssembleOptions opts;
  opts.normalize_area = true;
  const auto op = assemble(make_icosphere(2, 3.0), LaplacianScheme::LinearFem, MassMode::Lumped, opts);
  CHECK(op.B().diagonal().sum() == doctest::Approx(1.0));
  CHECK(op.length_scale == doctest::Approx(1.0 / std::sqrt(make_icosphere(2, 3.0).total_area())));
}

TEST_CASE("matrix market export") {
  const auto op = assemble(make_unit_square());
  const std::string mm = format_matrix_market(op.L());
  CHECK(mm.rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  CHECK(mm.find("\n4 4 ") != std::string::npos);
}
