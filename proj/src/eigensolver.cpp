#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "specbasis/errors.hpp"
#include "specbasis/numerics.hpp"

namespace specbasis {

std::vector<std::pair<int, int>> eigen_clusters(const Vector& values, double tol) {
  std::vector<std::pair<int, int>> out;
  const int k = static_cast<int>(values.size());
  for (int i = 0; i < k;) {
    int j = i + 1;
    while (j < k && values[j] - values[j - 1] <= tol * std::max(1.0, std::abs(values[j]))) ++j;
    out.emplace_back(i, j - i);
    i = j;
  }
  return out;
}

namespace {

// Residual relative to |Lx| + |lambda||Bx|, with a floor proportional to |L||x|
// so that the null pair (where both terms vanish) is measured sensibly.
double relative_residual(const SparseMatrix& L, const SparseMatrix& B, const Vector& x, double lambda,
                         double lnorm) {
  const Vector Lx = L * x;
  const Vector Bx = B * x;
  const double scale = Lx.norm() + std::abs(lambda) * Bx.norm() + 1e-4 * lnorm * x.norm();
  return (Lx - lambda * Bx).norm() / scale;
}

void fix_signs(Matrix& X) {
  for (int j = 0; j < X.cols(); ++j) {
    Eigen::Index p = 0;
    X.col(j).cwiseAbs().maxCoeff(&p);
    if (X(p, j) < 0) X.col(j) = -X.col(j);
  }
}

void finish(EigenSystem& es, const SparseMatrix& L, const SparseMatrix& B, double lnorm, double cluster_tol) {
  fix_signs(es.vectors);
  es.residuals.resize(es.size());
  for (int i = 0; i < es.size(); ++i)
    es.residuals[i] = relative_residual(L, B, es.vectors.col(i), es.values[i], lnorm);
  es.clusters = eigen_clusters(es.values, cluster_tol);
}

// Keeps the columns of V, B-orthonormalised against the locked block X, the
// current basis Q and each other. Columns that collapse are dropped.
Matrix b_orthonormalize(Matrix V, const Matrix& X, const Matrix& BX, const Matrix& Q, const Matrix& BQ,
                        const SparseMatrix& B, Matrix& BV) {
  Matrix keep(V.rows(), V.cols());
  Matrix bkeep(V.rows(), V.cols());
  int kept = 0;
  for (int j = 0; j < V.cols(); ++j) {
    Vector v = V.col(j);
    const double n0 = std::sqrt(std::max(0.0, v.dot(B * v)));
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (X.cols()) v -= X * (BX.transpose() * v);
      if (Q.cols()) v -= Q * (BQ.transpose() * v);
      if (kept) v -= keep.leftCols(kept) * (bkeep.leftCols(kept).transpose() * v);
    }
    Vector Bv = B * v;
    const double nv = std::sqrt(std::max(0.0, v.dot(Bv)));
    if (nv <= 1e-10 * n0) continue;
    keep.col(kept) = v / nv;
    bkeep.col(kept) = Bv / nv;
    ++kept;
  }
  BV = bkeep.leftCols(kept);
  return keep.leftCols(kept);
}

Matrix random_block(std::mt19937_64& rng, int n, int cols) {
  std::normal_distribution<double> nd;
  Matrix M(n, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < n; ++i) M(i, j) = nd(rng);
  return M;
}

}  // namespace

EigenSystem dense_eigenpairs(const SparseSymMatrix& L, const SparseSymMatrix& B) {
  if (L.size() != B.size()) throw DimensionMismatch("L and B differ in size");
  const Matrix Ld = Matrix(L.matrix());
  const Matrix Bd = Matrix(B.matrix());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(Ld, Bd, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success) throw NotConverged("dense generalised eigensolver failed");
  EigenSystem es;
  es.values = ges.eigenvalues();
  es.vectors = ges.eigenvectors();
  finish(es, L.matrix(), B.matrix(), L.norm_inf(), 1e-6);
  return es;
}

EigenSystem smallest_eigenpairs(const SparseSymMatrix& L, const SparseSymMatrix& B, int k,
                                const EigenOptions& opt) {
  const int n = L.size();
  if (B.size() != n) throw DimensionMismatch("L and B differ in size");
  if (k < 1 || k > n) throw InvalidArgument("eigenpair count must lie in [1, n]");
  const SparseMatrix& Lm = L.matrix();
  const SparseMatrix& Bm = B.matrix();
  const double lnorm = L.norm_inf();

  if (!opt.force_iterative && (n <= opt.dense_threshold || 2 * k > n)) {
    EigenSystem full = dense_eigenpairs(L, B);
    EigenSystem es;
    es.values = full.values.head(k);
    es.vectors = full.vectors.leftCols(k);
    if (k < n) es.next_value = full.values[k];
    finish(es, Lm, Bm, lnorm, opt.cluster_tol);
    return es;
  }

  const SparseMatrix shifted = Lm - opt.sigma * Bm;
  Eigen::SimplicialLDLT<SparseMatrix> fac(shifted);
  if (fac.info() != Eigen::Success) throw FactorizationFailed("factorisation of L - sigma B failed");

  const int bs = std::max(1, std::min(opt.block_size, n));
  const int want = std::min(n, k + 1);
  std::mt19937_64 rng(opt.seed);

  Matrix X(n, 0), BX(n, 0);
  std::vector<double> locked;
  Matrix start = random_block(rng, n, bs);
  bool verifying = false;
  bool done = false;

  for (int cycle = 0; cycle <= opt.max_restarts && !done; ++cycle) {
    const int nlocked = static_cast<int>(X.cols());
    const int room = n - nlocked;
    if (room <= 0) break;
    const int missing = std::max(0, want - nlocked);
    const int m = std::min(room, std::max(2 * missing + 2 * bs, 4 * bs));

    // Krylov basis of (L - sigma B)^{-1} B, B-orthonormal and B-orthogonal to X.
    Matrix Q(n, m), BQ(n, m);
    int q = 0;
    Matrix BV;
    Matrix V = b_orthonormalize(start, X, BX, Q.leftCols(0), BQ.leftCols(0), Bm, BV);
    while (q < m) {
      if (V.cols() == 0) {
        V = b_orthonormalize(random_block(rng, n, std::min(bs, m - q)), X, BX, Q.leftCols(q), BQ.leftCols(q), Bm, BV);
        if (V.cols() == 0) break;
      }
      const int take = std::min<int>(static_cast<int>(V.cols()), m - q);
      Q.middleCols(q, take) = V.leftCols(take);
      BQ.middleCols(q, take) = BV.leftCols(take);
      q += take;
      if (q >= m) break;
      Matrix W = fac.solve(BQ.middleCols(q - take, take));
      if (fac.info() != Eigen::Success) throw FactorizationFailed("shift-invert solve failed");
      V = b_orthonormalize(W, X, BX, Q.leftCols(q), BQ.leftCols(q), Bm, BV);
    }
    if (q == 0) break;

    // Rayleigh-Ritz on the stiffness projection.
    const Matrix Qm = Q.leftCols(q);
    Matrix T = Qm.transpose() * (Lm * Qm);
    T = 0.5 * (T + T.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> rr(T);
    const Vector theta = rr.eigenvalues();
    const Matrix Y = Qm * rr.eigenvectors();

    std::vector<int> conv, unconv;
    for (int i = 0; i < q; ++i) {
      if (relative_residual(Lm, Bm, Y.col(i), theta[i], lnorm) <= opt.tol)
        conv.push_back(i);
      else
        unconv.push_back(i);
    }

    double threshold = std::numeric_limits<double>::infinity();
    if (static_cast<int>(locked.size()) >= want) {
      std::vector<double> sorted = locked;
      std::sort(sorted.begin(), sorted.end());
      threshold = sorted[want - 1];
    }
    if (verifying) {
      // Anything in a fresh space below the current cut-off was missed.
      const double cut = threshold + opt.cluster_tol * std::max(1.0, std::abs(threshold));
      if (theta[0] > cut) {
        done = true;
        break;
      }
    }

    for (int i : conv) {
      X.conservativeResize(Eigen::NoChange, X.cols() + 1);
      BX.conservativeResize(Eigen::NoChange, BX.cols() + 1);
      X.col(X.cols() - 1) = Y.col(i);
      BX.col(BX.cols() - 1) = Bm * Y.col(i);
      locked.push_back(theta[i]);
    }

    const int next = std::min<int>(bs, static_cast<int>(unconv.size()));
    start = Matrix(n, bs);
    for (int j = 0; j < next; ++j) start.col(j) = Y.col(unconv[j]);
    if (next < bs) start.rightCols(bs - next) = random_block(rng, n, bs - next);

    const bool was_verifying = verifying;
    verifying = static_cast<int>(locked.size()) >= want;
    // A fresh random block checks for missed eigenvalues, unless the previous
    // check is still chasing an unconverged candidate.
    if (verifying && (!was_verifying || !conv.empty())) start = random_block(rng, n, bs);
  }

  if (static_cast<int>(locked.size()) < k)
    throw NotConverged("Lanczos resolved " + std::to_string(locked.size()) + " of " + std::to_string(k) +
                       " eigenpairs");

  // Final clean-up: B-orthonormalise the locked block and redo Rayleigh-Ritz on it.
  Matrix G = X.transpose() * BX;
  G = 0.5 * (G + G.transpose());
  Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success) throw NotConverged("locked eigenvectors lost B-orthogonality");
  const Matrix Rinv = llt.matrixU().solve(Matrix::Identity(G.rows(), G.cols()));
  X = X * Rinv;
  Matrix T = X.transpose() * (Lm * X);
  T = 0.5 * (T + T.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> rr(T);
  const Matrix Xs = X * rr.eigenvectors();

  EigenSystem es;
  es.values = rr.eigenvalues().head(k);
  es.vectors = Xs.leftCols(k);
  if (rr.eigenvalues().size() > k && static_cast<int>(locked.size()) >= want) es.next_value = rr.eigenvalues()[k];
  finish(es, Lm, Bm, lnorm, opt.cluster_tol);
  return es;
}

}  // namespace specbasis
