#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specbasis/filters.hpp"
#include "specbasis/laplacian.hpp"
#include "specbasis/numerics.hpp"

namespace specbasis {

/// An ordered family of fields on one mesh plus how they were generated.
struct BasisSet {
  std::string family;
  std::vector<ScalarField> fields;
  std::vector<int> seeds;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(fields.size()); }
  /// Fields as the columns of an n x m matrix.
  Matrix matrix() const;
};

/// psi_i with L psi_i = 0 off the seeds and psi_i(p_j) = delta_ij. Every seed row
/// is constrained at once, so the functions sum to one.
BasisSet harmonic_basis(const LaplacianOperator& op, std::span<const int> seeds);

/// Same constraints with H = L + mu * (B diag(V) + diag(V) B) / 2 in place of L.
BasisSet hamiltonian_basis(const LaplacianOperator& op, const Vector& potential, double mu,
                           std::span<const int> seeds);

/// The k smallest eigenpairs of L x = lambda B x (symmetric schemes only).
EigenSystem eigen_basis(const LaplacianOperator& op, int k, const EigenOptions& options = {});

/// alpha = X^T B f.
Vector spectral_coefficients(const LaplacianOperator& op, const EigenSystem& eig, const Vector& f);

struct Reconstruction {
  Vector field;
  /// |f - f_k|_B^2
  double residual_sq = 0.0;
  /// (f^T L f) / lambda_{k+1}, when lambda_{k+1} is known.
  std::optional<double> bound;
  bool bound_satisfied = true;
};

/// f_k = sum_{i < k_use} alpha_i x_i with the residual measured against f and
/// compared to the Dirichlet-energy bound.
Reconstruction reconstruct(const LaplacianOperator& op, const EigenSystem& eig, const Vector& f,
                           const Vector& alpha, int k_use);

/// sum_j phi(lambda_j) (x_j^T B f) x_j over the stored pairs. Filters singular
/// at zero drop the null modes; `deflated` reports whether that happened.
Vector truncated_spectral(const LaplacianOperator& op, const EigenSystem& eig, const FilterSpec& filter,
                          const Vector& f, bool* deflated = nullptr);

/// K f = a0 f + sum_j a_j g_j with (B + b_j L) g_j = B f, stage after stage.
///
/// Shifts are factored once at construction, so applying the operator to many
/// fields costs only back-substitutions. A conjugate pair of poles is solved
/// once and contributes twice the real part.
class RationalFilterOperator {
 public:
  RationalFilterOperator(const LaplacianOperator& op, RationalStages stages, double tol = 1e-10);
  ~RationalFilterOperator();
  RationalFilterOperator(RationalFilterOperator&&) noexcept;
  RationalFilterOperator& operator=(RationalFilterOperator&&) noexcept;

  Vector apply(const Vector& f) const;
  /// Largest relative residual of any shifted solve so far.
  double max_residual() const;
  /// Largest |imaginary part| / |result| discarded so far.
  double max_imaginary() const { return max_imag_; }
  const RationalStages& stages() const { return stages_; }

 private:
  struct Term;
  const LaplacianOperator* op_;
  RationalStages stages_;
  std::vector<std::vector<Term>> terms_;
  mutable double max_imag_ = 0.0;
};

/// One-shot application of a rational form.
Vector chebyshev_spectral(const LaplacianOperator& op, const PartialFraction& pf, const Vector& f);
Vector chebyshev_spectral(const LaplacianOperator& op, const RationalStages& stages, const Vector& f);

enum class DiffusionMethod { Chebyshev, Truncated };

struct DiffusionOptions {
  DiffusionMethod method = DiffusionMethod::Chebyshev;
  int r = 5;
  int k = 100;
  /// Eigenpairs to reuse on the truncated path; computed when null.
  const EigenSystem* eigen = nullptr;
};

/// Heat-kernel column K_t e_seed.
ScalarField diffusion_basis(const LaplacianOperator& op, double t, int seed,
                            const DiffusionOptions& options = {});

/// Heat-kernel columns for several seeds sharing one factorisation or one
/// eigendecomposition.
BasisSet diffusion_set(const LaplacianOperator& op, double t, std::span<const int> seeds,
                       const DiffusionOptions& options = {});

enum class GreenRole { Harmonic, Diffusion, General };

struct GreenOptions {
  GreenRole role = GreenRole::Harmonic;
  double t = 1.0;
  FilterSpec filter;
  int r = 5;
};

/// Green-kernel column at `seed`. The harmonic case solves L g = B(e_i - c 1)
/// with c chosen so the right-hand side has zero mean, then removes the
/// constant so that <g, 1>_B = 0.
ScalarField green_column(const LaplacianOperator& op, int seed, const GreenOptions& options = {});

}  // namespace specbasis
