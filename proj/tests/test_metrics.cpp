#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "specbasis/basis.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/metrics.hpp"
#include "specbasis/seeds.hpp"

using namespace specbasis;

namespace {

Vector delta(int n, int i) {
  Vector e = Vector::Zero(n);
  e[i] = 1.0;
  return e;
}

double mean_off_diagonal(const Matrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += std::abs(m(i, j));
  return s / (m.rows() * (m.rows() - 1.0));
}

}  // namespace

TEST_CASE("area and conformal metrics reduce to matrix entries") {
  const auto mesh = oracle::jittered_sphere(2, 0.1, 1);
  const auto op = assemble(mesh, LaplacianScheme::LinearFem, MassMode::Consistent);
  const Vector ones = Vector::Ones(op.size());
  CHECK(area_metric(op, ones, ones) == doctest::Approx(mesh.total_area()).epsilon(1e-12));
  const Matrix B = oracle::dense(op.B().matrix());
  const Matrix L = oracle::dense(op.L());
  for (auto [i, j] : {std::pair{0, 0}, std::pair{3, 7}, std::pair{10, 11}, std::pair{5, 100}}) {
    CHECK(area_metric(op, delta(op.size(), i), delta(op.size(), j)) == B(i, j));
    CHECK(conformal_metric(op, delta(op.size(), i), delta(op.size(), j)) == L(i, j));
  }
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector g = oracle::random_vector(op.size(), rng);
    CHECK(std::abs(conformal_metric(op, Vector::Constant(op.size(), 4.0), g)) <= 1e-10 * g.norm());
    CHECK(conformal_metric(op, g, g) >= 0.0);
  }
}

TEST_CASE("eigenvectors are orthonormal in h_a and diagonal in h_c") {
  const auto op = assemble(oracle::jittered_sphere(3, 0.05, 2));
  const auto eig = eigen_basis(op, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const Vector xi = eig.vectors.col(i), xj = eig.vectors.col(j);
      CHECK(std::abs(area_metric(op, xi, xj) - (i == j ? 1.0 : 0.0)) <= 1e-8);
      const double lam = eig.values[j];
      const double hc = conformal_metric(op, xi, xj);
      CHECK(std::abs(hc - (i == j ? lam : 0.0)) <= 1e-7 * std::max(lam, 1.0));
    }
}

TEST_CASE("conformal metric needs a symmetric operator") {
  const auto op = assemble(make_icosphere(1), LaplacianScheme::MeanValue);
  const Vector f = Vector::Ones(op.size());
  CHECK_THROWS_AS(conformal_metric(op, f, f), SchemeNotSymmetric);
}

TEST_CASE("kernel metric") {
  const auto op = assemble(oracle::jittered_sphere(2, 0.1, 3));
  std::mt19937 rng(3);
  const Vector f = oracle::random_vector(op.size(), rng);
  const Vector g = oracle::random_vector(op.size(), rng);
  const KernelApply identity = [](const Vector& x) { return x; };
  CHECK(kernel_metric(op, identity, f, g) == doctest::Approx(area_metric(op, f, g)).epsilon(1e-14));

  const double t = 0.1;
  auto heat = std::make_shared<RationalFilterOperator>(op, rational_form(FilterSpec::exponential(t)));
  const KernelApply diffusion = [heat](const Vector& x) { return heat->apply(x); };
  const auto eig = eigen_basis(op, 8);
  for (int i = 0; i < 8; ++i) {
    const Vector x = eig.vectors.col(i);
    CHECK(std::abs(kernel_metric(op, diffusion, x, x) - std::exp(-eig.values[i] * t)) <= 1e-4);
  }
  const Vector f2 = oracle::random_vector(op.size(), rng);
  const double a = 0.7, b = -1.3;
  const double lhs = kernel_metric(op, diffusion, a * f + b * f2, g);
  const double rhs = a * kernel_metric(op, diffusion, f, g) + b * kernel_metric(op, diffusion, f2, g);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(a * kernel_metric(op, diffusion, f, g)) + std::abs(rhs) + 1e-12));
}

TEST_CASE("non-adjoint kernels are rejected") {
  const auto op = assemble(oracle::jittered_sphere(2, 0.1, 4));
  // A one-sided shift of values is not self-adjoint in any inner product.
  const KernelApply skew = [](const Vector& x) {
    Vector y = Vector::Zero(x.size());
    y.tail(x.size() - 1) = x.head(x.size() - 1);
    return y;
  };
  const Vector f = Vector::Ones(op.size());
  CHECK_THROWS_AS(kernel_metric(op, skew, f, f), NotAdjoint);
  CHECK_THROWS_AS(check_adjoint(op, skew), NotAdjoint);
  CHECK_NOTHROW(check_adjoint(op, [](const Vector& x) { return Vector(2.0 * x); }));
}

TEST_CASE("comparison matrix of eigenvectors is the identity") {
  const auto op = assemble(make_icosphere(3));
  const auto eig = eigen_basis(op, 10);
  std::vector<Vector> fields;
  for (int i = 0; i < 10; ++i) fields.push_back(eig.vectors.col(i));
  const auto cm = comparison_matrix(op, fields, MetricKind::Area);
  CHECK((cm.values - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(cm.field_ids.size() == 10);
  CHECK_FALSE(cm.normalized);
}

TEST_CASE("small-scale diffusion fields with disjoint supports are orthogonal") {
  const auto mesh = make_icosphere(4);
  const auto op = assemble(mesh);
  const auto seeds = farthest_point_sampling(mesh, 6, 0).indices;
  const auto set = diffusion_set(op, 1e-4, seeds);
  std::vector<Vector> fields;
  for (const auto& f : set.fields) fields.push_back(f.values);
  const auto cm = comparison_matrix(op, fields, MetricKind::Area);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) CHECK(std::abs(cm.values(i, j)) <= 1e-6 * cm.values(i, i));
}

TEST_CASE("single field gives a 1x1 matrix") {
  const auto op = assemble(make_icosphere(2));
  std::mt19937 rng(4);
  const Vector f = oracle::random_vector(op.size(), rng);
  const auto cm = comparison_matrix(op, {f}, MetricKind::Conformal, {}, {"f"});
  REQUIRE(cm.values.rows() == 1);
  CHECK(cm.values(0, 0) == doctest::Approx(conformal_metric(op, f, f)).epsilon(1e-14));
  CHECK(cm.field_ids[0] == "f");
}

TEST_CASE("property: symmetry and Gram positivity") {
  std::mt19937 rng(5);
  const auto mesh = oracle::jittered_sphere(2, 0.1, 5);
  const auto op = assemble(mesh);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vector> fields;
    for (int i = 0; i < 20; ++i) fields.push_back(oracle::random_vector(op.size(), rng));
    for (MetricKind kind : {MetricKind::Area, MetricKind::Conformal}) {
      const Matrix M = comparison_matrix(op, fields, kind).values;
      CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * M.cwiseAbs().maxCoeff());
      CHECK(M.allFinite());
    }
    const Matrix G = comparison_matrix(op, fields, MetricKind::Area).values;
    Eigen::SelfAdjointEigenSolver<Matrix> es(G);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("kernel comparison matrix is symmetric for B-adjoint kernels") {
  const auto op = assemble(make_torus(24, 12, 1.0, 0.4));
  auto heat = std::make_shared<RationalFilterOperator>(op, rational_form(FilterSpec::exponential(0.05)));
  const KernelApply kernel = [heat](const Vector& x) { return heat->apply(x); };
  std::mt19937 rng(6);
  std::vector<Vector> fields;
  for (int i = 0; i < 8; ++i) fields.push_back(oracle::random_vector(op.size(), rng));
  const Matrix M = comparison_matrix(op, fields, MetricKind::Kernel, kernel).values;
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * M.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(comparison_matrix(op, fields, MetricKind::Kernel), InvalidArgument);
}

TEST_CASE("overlap grows with the diffusion scale") {
  const auto mesh = make_torus(48, 24, 1.0, 0.35);
  const auto op = assemble(mesh);
  const auto seeds = farthest_point_sampling(mesh, 30, 0).indices;
  double last = -1.0;
  for (double t : {1e-3, 1e-2, 1e-1, 1.0}) {
    const auto set = diffusion_set(op, t, seeds);
    std::vector<Vector> fields;
    for (const auto& f : set.fields) fields.push_back(f.values);
    const double off = mean_off_diagonal(comparison_matrix(op, fields, MetricKind::Area).values);
    CAPTURE(t);
    CHECK(off >= last);
    last = off;
  }
}

TEST_CASE("normalisation is opt-in and recorded") {
  const auto op = assemble(make_icosphere(2));
  std::mt19937 rng(7);
  const Vector f = oracle::random_vector(op.size(), rng);
  ComparisonOptions opts;
  opts.normalize = true;
  const auto cm = comparison_matrix(op, {f, 3.0 * f + Vector::Constant(op.size(), 2.0)}, MetricKind::Area, {}, {}, opts);
  CHECK(cm.normalized);
  CHECK(cm.values(0, 1) == doctest::Approx(cm.values(0, 0)).epsilon(1e-12));
  const Vector u = normalize_unit_range(f);
  CHECK(u.minCoeff() == 0.0);
  CHECK(u.maxCoeff() == doctest::Approx(1.0));
  CHECK(normalize_unit_range(Vector::Constant(5, 2.0)).isZero());
  CHECK(parse_metric_kind("conformal") == MetricKind::Conformal);
  CHECK(to_string(MetricKind::Kernel) == "kernel");
}
