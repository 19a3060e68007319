#include "specbasis/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "specbasis/errors.hpp"

namespace specbasis {

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>>;

double asymmetry(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  const SparseMatrix d = m - t;
  double dmax = 0.0;
  double mmax = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) mmax = std::max(mmax, std::abs(it.value()));
  return mmax > 0 ? dmax / mmax : 0.0;
}

SparseSymMatrix::SparseSymMatrix(SparseMatrix m, Definiteness definiteness)
    : definiteness_(definiteness) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetric matrix must be square");
  m.makeCompressed();
  if (asymmetry(m) > 1e-12) throw InvalidArgument("matrix is not symmetric");
  data_ = std::make_shared<const SparseMatrix>(std::move(m));
}

double SparseSymMatrix::norm_inf() const {
  Vector rows = Vector::Zero(size());
  for (int k = 0; k < data_->outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(*data_, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return size() ? rows.maxCoeff() : 0.0;
}

bool SparseSymMatrix::is_diagonal() const {
  for (int k = 0; k < data_->outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(*data_, k); it; ++it)
      if (it.row() != it.col() && it.value() != 0.0) return false;
  return true;
}

namespace {

void project_out(Vector& v, const Vector& z) {
  if (z.size()) v -= z.dot(v) * z;
}

// Direct solve used when CG gives up. For a deflated PSD system one vertex is
// pinned to zero; the remaining rows determine the solution up to the nullspace.
Vector direct_spd(const SparseMatrix& A, const Vector& b, const Vector& z) {
  const int n = static_cast<int>(A.rows());
  SparseMatrix M = A;
  Vector rhs = b;
  if (z.size()) {
    int p = 0;
    z.cwiseAbs().maxCoeff(&p);
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < A.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(A, k); it; ++it)
        if (it.row() != p && it.col() != p) trips.emplace_back(it.row(), it.col(), it.value());
    trips.emplace_back(p, p, 1.0);
    M.resize(n, n);
    M.setFromTriplets(trips.begin(), trips.end());
    rhs[p] = 0.0;
  }
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(M);
  if (ldlt.info() != Eigen::Success) throw SingularSystem("sparse Cholesky factorisation failed");
  Vector x = ldlt.solve(rhs);
  for (int k = 0; k < 2; ++k) {
    Vector r = rhs - M * x;
    x += ldlt.solve(r);
  }
  if (!x.allFinite()) throw SingularSystem("sparse Cholesky produced non-finite values");
  project_out(x, z);
  return x;
}

}  // namespace

Vector solve_spd(const SparseSymMatrix& A, const Vector& b_in, const SolveOptions& options,
                 SolveStats* stats) {
  const int n = A.size();
  if (b_in.size() != n) throw DimensionMismatch("right-hand side length does not match matrix");
  const SparseMatrix& M = A.matrix();
  Vector z = options.nullspace;
  if (z.size() && z.size() != n) throw DimensionMismatch("nullspace vector length does not match");
  if (z.size()) z.normalize();

  Vector b = b_in;
  project_out(b, z);
  SolveStats local;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    if (stats) *stats = local;
    return Vector::Zero(n);
  }

  Vector dinv = M.diagonal();
  for (int i = 0; i < n; ++i) {
    if (!(dinv[i] > 0.0)) throw SingularSystem("non-positive diagonal entry in SPD solve");
    dinv[i] = 1.0 / dinv[i];
  }
  const int cap = options.max_iterations > 0 ? options.max_iterations : 10 * n;

  Vector x = Vector::Zero(n);
  Vector r = b;
  Vector zr = dinv.cwiseProduct(r);
  project_out(zr, z);
  Vector p = zr;
  double rz = r.dot(zr);
  double best = 1.0;
  int since_best = 0;
  bool converged = false;
  int it = 0;
  for (; it < cap; ++it) {
    Vector Ap = M * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) break;
    const double a = rz / pAp;
    x += a * p;
    r -= a * Ap;
    project_out(r, z);
    const double rel = r.norm() / bnorm;
    if (rel <= options.tol) {
      converged = true;
      ++it;
      break;
    }
    if (rel < 0.999 * best) {
      best = rel;
      since_best = 0;
    } else if (++since_best > std::max(200, n / 5)) {
      break;  // stagnation
    }
    zr = dinv.cwiseProduct(r);
    project_out(zr, z);
    const double rz_new = r.dot(zr);
    p = zr + (rz_new / rz) * p;
    rz = rz_new;
  }
  local.iterations = it;
  if (converged) {
    // recompute the true residual rather than trusting the recurrence
    Vector rt = b - M * x;
    project_out(rt, z);
    local.relative_residual = rt.norm() / bnorm;
    converged = local.relative_residual <= 10 * options.tol;
  }
  if (!converged) {
    if (!options.direct_fallback)
      throw NotConverged("conjugate gradients did not converge in " + std::to_string(it) + " iterations");
    x = direct_spd(M, b, z);
    Vector rt = b - M * x;
    project_out(rt, z);
    local.relative_residual = rt.norm() / bnorm;
    local.used_direct = true;
    if (local.relative_residual > std::max(1e3 * options.tol, 1e-8))
      throw SingularSystem("direct solve residual " + std::to_string(local.relative_residual));
  }
  project_out(x, z);
  if (stats) *stats = local;
  return x;
}

struct ShiftedSolver::Impl {
  SparseMatrix a_real;
  ComplexSparse a_complex;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  Eigen::SparseLU<ComplexSparse> lu;
};

ShiftedSolver::ShiftedSolver(const SparseSymMatrix& B, const SparseSymMatrix& L,
                             std::complex<double> beta, double tol)
    : impl_(std::make_unique<Impl>()), beta_(beta), tol_(tol) {
  if (B.size() != L.size()) throw DimensionMismatch("B and L differ in size");
  if (beta.imag() == 0.0) {
    impl_->a_real = B.matrix() + beta.real() * L.matrix();
    impl_->ldlt.compute(impl_->a_real);
    if (impl_->ldlt.info() != Eigen::Success) throw FactorizationFailed("LDL^T of B + beta L failed");
  } else {
    impl_->a_complex = B.matrix().cast<std::complex<double>>() + beta * L.matrix().cast<std::complex<double>>();
    impl_->a_complex.makeCompressed();
    impl_->lu.analyzePattern(impl_->a_complex);
    impl_->lu.factorize(impl_->a_complex);
    if (impl_->lu.info() != Eigen::Success) throw FactorizationFailed("sparse LU of B + beta L failed");
  }
}

ShiftedSolver::~ShiftedSolver() = default;
ShiftedSolver::ShiftedSolver(ShiftedSolver&&) noexcept = default;
ShiftedSolver& ShiftedSolver::operator=(ShiftedSolver&&) noexcept = default;

Vector ShiftedSolver::solve_real(const Vector& rhs) const {
  if (!is_real()) throw InvalidArgument("solve_real called on a complex shift");
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) return Vector::Zero(rhs.size());
  Vector x = impl_->ldlt.solve(rhs);
  double rel = 0.0;
  for (int k = 0; k < 4; ++k) {
    Vector r = rhs - impl_->a_real * x;
    rel = r.norm() / bnorm;
    if (rel <= tol_) break;
    x += impl_->ldlt.solve(r);
  }
  if (!(rel <= tol_)) {
    Vector r = rhs - impl_->a_real * x;
    rel = r.norm() / bnorm;
  }
  if (!(rel <= tol_)) throw NotConverged("shifted real solve residual " + std::to_string(rel));
  max_residual_ = std::max(max_residual_, rel);
  return x;
}

ComplexVector ShiftedSolver::solve(const ComplexVector& rhs) const {
  if (is_real()) {
    Vector re = solve_real(rhs.real());
    Vector im = rhs.imag().isZero(0.0) ? Vector::Zero(rhs.size()) : solve_real(rhs.imag());
    ComplexVector out(rhs.size());
    out.real() = re;
    out.imag() = im;
    return out;
  }
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) return ComplexVector::Zero(rhs.size());
  ComplexVector x = impl_->lu.solve(rhs);
  double rel = 0.0;
  for (int k = 0; k < 4; ++k) {
    ComplexVector r = rhs - impl_->a_complex * x;
    rel = r.norm() / bnorm;
    if (rel <= tol_) break;
    x += impl_->lu.solve(r);
  }
  if (!(rel <= tol_)) {
    ComplexVector r = rhs - impl_->a_complex * x;
    rel = r.norm() / bnorm;
  }
  if (!(rel <= tol_)) throw NotConverged("shifted complex solve residual " + std::to_string(rel));
  max_residual_ = std::max(max_residual_, rel);
  return x;
}

double shift_condition(std::complex<double> beta, double lambda_min, double lambda_max) {
  auto mag = [&](double s) { return std::abs(1.0 + beta * s); };
  const double hi = std::max(mag(lambda_min), mag(lambda_max));
  double lo = std::min(mag(lambda_min), mag(lambda_max));
  const double b2 = std::norm(beta);
  if (b2 > 0.0) {
    const double s = -beta.real() / b2;
    if (s > lambda_min && s < lambda_max) lo = std::min(lo, mag(s));
  }
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

void check_shift(std::complex<double> beta, double lambda_min, double lambda_max, double limit) {
  const double kappa = shift_condition(beta, lambda_min, lambda_max);
  if (!(kappa <= limit)) {
    throw NearSingularShift("shift (" + std::to_string(beta.real()) + ", " + std::to_string(beta.imag()) +
                            ") has estimated condition " + std::to_string(kappa));
  }
}

ComplexVector solve_shifted(const SparseSymMatrix& B, const SparseSymMatrix& L,
                            std::complex<double> beta, const ComplexVector& rhs, double lambda_max,
                            double tol) {
  if (rhs.size() != B.size()) throw DimensionMismatch("right-hand side length does not match");
  check_shift(beta, 0.0, lambda_max);
  ShiftedSolver solver(B, L, beta, tol);
  return solver.solve(rhs);
}

double largest_eigenvalue(const SparseSymMatrix& L, const SparseSymMatrix& B, int steps, unsigned seed) {
  const int n = L.size();
  if (B.size() != n) throw DimensionMismatch("B and L differ in size");
  steps = std::min(steps, n);
  const SparseMatrix& Lm = L.matrix();
  const SparseMatrix& Bm = B.matrix();
  const bool diag = B.is_diagonal();
  Eigen::SimplicialLDLT<SparseMatrix> bfac;
  if (!diag) {
    bfac.compute(Bm);
    if (bfac.info() != Eigen::Success) throw FactorizationFailed("mass matrix factorisation failed");
  }
  const Vector bd = Bm.diagonal();
  auto binv = [&](const Vector& v) -> Vector {
    return diag ? Vector(v.cwiseQuotient(bd)) : Vector(bfac.solve(v));
  };

  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Vector q(n);
  for (int i = 0; i < n; ++i) q[i] = nd(rng);
  q /= std::sqrt(q.dot(Bm * q));
  Matrix Q(n, steps);
  Matrix BQ(n, steps);
  std::vector<double> alpha, beta;
  for (int j = 0; j < steps; ++j) {
    Q.col(j) = q;
    BQ.col(j) = Bm * q;
    const Vector Lq = Lm * q;
    alpha.push_back(q.dot(Lq));
    Vector w = binv(Lq);
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (BQ.leftCols(j + 1).transpose() * w);
    const double b = std::sqrt(std::max(0.0, w.dot(Bm * w)));
    if (j + 1 == steps || b <= 1e-12 * std::abs(alpha.back())) break;
    beta.push_back(b);
    q = w / b;
  }
  const int m = static_cast<int>(alpha.size());
  Matrix T = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Matrix> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace specbasis
