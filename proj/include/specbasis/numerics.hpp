#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace specbasis {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Definiteness { PositiveDefinite, PositiveSemiDefinite, Indefinite };

/// Symmetric sparse matrix. Both triangles are kept in storage so products are
/// plain SpMV; symmetry is checked once at construction.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  SparseSymMatrix(SparseMatrix m, Definiteness definiteness);

  int size() const { return static_cast<int>(data_ ? data_->rows() : 0); }
  const SparseMatrix& matrix() const { return *data_; }
  Definiteness definiteness() const { return definiteness_; }
  /// Dense product, evaluated (a vector for vector input, a matrix otherwise).
  template <typename Derived>
  auto operator*(const Eigen::MatrixBase<Derived>& x) const {
    return (*data_ * x.derived()).eval();
  }
  double coeff(int i, int j) const { return data_->coeff(i, j); }
  Vector diagonal() const { return data_->diagonal(); }
  /// Max absolute row sum (equal to the 1-norm by symmetry).
  double norm_inf() const;
  bool is_diagonal() const;

 private:
  std::shared_ptr<const SparseMatrix> data_;
  Definiteness definiteness_ = Definiteness::PositiveDefinite;
};

/// Relative asymmetry max|A - A^T| / max|A|.
double asymmetry(const SparseMatrix& m);

struct SolveOptions {
  double tol = 1e-10;
  /// 0 means 10 * n.
  int max_iterations = 0;
  /// Unit vector spanning the nullspace of a PSD matrix. When set, the right-hand
  /// side and every residual are projected onto its orthogonal complement.
  Vector nullspace;
  /// Switch to a sparse Cholesky factorisation when CG stagnates or hits the cap.
  bool direct_fallback = true;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool used_direct = false;
};

/// Jacobi-preconditioned conjugate gradients for SPD (or deflated PSD) systems.
Vector solve_spd(const SparseSymMatrix& A, const Vector& b, const SolveOptions& options = {},
                 SolveStats* stats = nullptr);

/// Factorisation of A = B + beta L reused across right-hand sides.
///
/// Real shifts use LDL^T; complex shifts use a complex sparse LU on the complex
/// symmetric matrix. Every solve is refined until the relative residual reaches
/// `tol`.
class ShiftedSolver {
 public:
  ShiftedSolver(const SparseSymMatrix& B, const SparseSymMatrix& L, std::complex<double> beta,
                double tol = 1e-10);
  ~ShiftedSolver();
  ShiftedSolver(ShiftedSolver&&) noexcept;
  ShiftedSolver& operator=(ShiftedSolver&&) noexcept;

  std::complex<double> beta() const { return beta_; }
  bool is_real() const { return beta_.imag() == 0.0; }

  ComplexVector solve(const ComplexVector& rhs) const;
  /// Real-shift fast path; throws if the shift is complex.
  Vector solve_real(const Vector& rhs) const;
  /// Largest relative residual seen so far.
  double max_residual() const { return max_residual_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::complex<double> beta_;
  double tol_;
  mutable double max_residual_ = 0.0;
};

/// Condition estimate of the pencil B + beta L over generalised eigenvalues in
/// [lambda_min, lambda_max]: max |1 + beta s| / min |1 + beta s|.
double shift_condition(std::complex<double> beta, double lambda_min, double lambda_max);

/// Throws NearSingularShift when shift_condition exceeds `limit`.
void check_shift(std::complex<double> beta, double lambda_min, double lambda_max,
                 double limit = 1e14);

/// One-off solve of (B + beta L) g = rhs with the shift checked against the
/// spectral range [0, lambda_max].
ComplexVector solve_shifted(const SparseSymMatrix& B, const SparseSymMatrix& L,
                            std::complex<double> beta, const ComplexVector& rhs,
                            double lambda_max, double tol = 1e-10);

/// Largest generalised eigenvalue of L x = lambda B x by B-inner-product Lanczos.
double largest_eigenvalue(const SparseSymMatrix& L, const SparseSymMatrix& B, int steps = 80,
                          unsigned seed = 7);

/// Generalised eigenpairs, ascending. Columns of `vectors` are B-orthonormal.
struct EigenSystem {
  Vector values;
  Matrix vectors;
  /// |L x - lambda B x| / (|L x| + |lambda| |B x| + eps |L|) per pair.
  Vector residuals;
  /// The next eigenvalue past the stored ones, when it was resolved.
  std::optional<double> next_value;
  /// Runs of eigenvalues within the cluster tolerance: (first index, count).
  std::vector<std::pair<int, int>> clusters;

  int size() const { return static_cast<int>(values.size()); }
};

struct EigenOptions {
  double sigma = -1e-8;
  double tol = 1e-10;
  int block_size = 8;
  int max_restarts = 60;
  /// Problems with n at or below this size, or asking for more than half the
  /// spectrum, use a dense solver.
  int dense_threshold = 400;
  bool force_iterative = false;
  double cluster_tol = 1e-6;
  unsigned seed = 12345;
};

/// The k algebraically smallest eigenpairs of L x = lambda B x.
///
/// Shift-invert block Lanczos in the B-inner product with full
/// reorthogonalisation. Converged Ritz pairs are locked and the iteration is
/// restarted from the remaining Ritz vectors; a final pass from a fresh random
/// block catches multiplicities larger than the block.
EigenSystem smallest_eigenpairs(const SparseSymMatrix& L, const SparseSymMatrix& B, int k,
                                const EigenOptions& options = {});

/// Full generalised eigendecomposition through dense matrices.
EigenSystem dense_eigenpairs(const SparseSymMatrix& L, const SparseSymMatrix& B);

/// Groups eigenvalues whose gap is at most tol * max(1, |lambda|).
std::vector<std::pair<int, int>> eigen_clusters(const Vector& values, double tol);

}  // namespace specbasis
