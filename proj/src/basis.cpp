#include "specbasis/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"

namespace specbasis {

Matrix BasisSet::matrix() const {
  if (fields.empty()) return Matrix();
  Matrix M(fields.front().size(), size());
  for (int j = 0; j < size(); ++j) M.col(j) = fields[j].values;
  return M;
}

namespace {

void check_seeds(int n, std::span<const int> seeds) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  std::set<int> seen;
  for (int s : seeds) {
    if (s < 0 || s >= n) throw InvalidArgument("seed " + std::to_string(s) + " is out of range");
    if (!seen.insert(s).second) throw DuplicateSeeds("seed " + std::to_string(s) + " appears twice");
  }
}

// Solves A psi_i = 0 on the free rows with psi_i(seed_j) = delta_ij, moving the
// known seed columns to the right-hand side.
Matrix constrained_solve(const SparseMatrix& A, std::span<const int> seeds, bool symmetric) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(seeds.size());
  std::vector<int> seed_slot(n, -1);
  for (int j = 0; j < m; ++j) seed_slot[seeds[j]] = j;
  std::vector<int> free_index(n, -1);
  std::vector<int> free_vertices;
  for (int v = 0; v < n; ++v) {
    if (seed_slot[v] >= 0) continue;
    free_index[v] = static_cast<int>(free_vertices.size());
    free_vertices.push_back(v);
  }
  const int nf = static_cast<int>(free_vertices.size());
  Matrix out = Matrix::Zero(n, m);
  for (int j = 0; j < m; ++j) out(seeds[j], j) = 1.0;
  if (nf == 0) return out;

  std::vector<Eigen::Triplet<double>> ff;
  Matrix rhs = Matrix::Zero(nf, m);
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      const int r = free_index[it.row()];
      if (r < 0) continue;
      const int c = static_cast<int>(it.col());
      if (free_index[c] >= 0)
        ff.emplace_back(r, free_index[c], it.value());
      else
        rhs(r, seed_slot[c]) -= it.value();
    }
  }
  SparseMatrix Aff(nf, nf);
  Aff.setFromTriplets(ff.begin(), ff.end());
  Aff.makeCompressed();

  Matrix x;
  if (symmetric) {
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(Aff);
    if (ldlt.info() != Eigen::Success) throw SolverFailure("factorisation of the constrained system failed");
    x = ldlt.solve(rhs);
    x += ldlt.solve(Matrix(rhs - Aff * x));
  } else {
    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(Aff);
    lu.factorize(Aff);
    if (lu.info() != Eigen::Success) throw SolverFailure("LU of the constrained system failed (is every component seeded?)");
    x = lu.solve(rhs);
    x += lu.solve(Matrix(rhs - Aff * x));
  }
  if (!x.allFinite()) throw SolverFailure("constrained solve produced non-finite values (is every component seeded?)");
  const double res = (Aff * x - rhs).norm();
  const double scale = std::max(rhs.norm(), 1e-300);
  if (res > 1e-8 * scale) throw SolverFailure("constrained solve residual " + std::to_string(res / scale));
  for (int i = 0; i < nf; ++i) out.row(free_vertices[i]) = x.row(i);
  return out;
}

BasisSet seeded_set(const std::string& family, const Matrix& M, std::span<const int> seeds) {
  BasisSet set;
  set.family = family;
  set.seeds.assign(seeds.begin(), seeds.end());
  for (int j = 0; j < M.cols(); ++j)
    set.fields.push_back({M.col(j), family + " seed " + std::to_string(seeds[j])});
  return set;
}

}  // namespace

BasisSet harmonic_basis(const LaplacianOperator& op, std::span<const int> seeds) {
  check_seeds(op.size(), seeds);
  BasisSet set = seeded_set("harmonic", constrained_solve(op.L(), seeds, op.symmetric()), seeds);
  set.parameters["scheme"] = to_string(op.scheme());
  return set;
}

BasisSet hamiltonian_basis(const LaplacianOperator& op, const Vector& potential, double mu,
                           std::span<const int> seeds) {
  const int n = op.size();
  check_seeds(n, seeds);
  if (potential.size() != n) throw DimensionMismatch("potential length does not match the mesh");
  if (!potential.allFinite() || !std::isfinite(mu)) throw InvalidArgument("potential and mu must be finite");
  const SparseMatrix& B = op.B().matrix();
  const SparseMatrix DV = SparseMatrix(potential.asDiagonal());
  SparseMatrix H = op.L() + (0.5 * mu) * (SparseMatrix(B * DV) + SparseMatrix(DV * B));
  H.makeCompressed();
  BasisSet set = seeded_set("hamiltonian", constrained_solve(H, seeds, op.symmetric()), seeds);
  set.parameters["mu"] = format_double(mu);
  set.parameters["scheme"] = to_string(op.scheme());
  if (mu * potential.minCoeff() < 0.0)
    set.warnings.push_back("mu * min(V) < 0: the Hamiltonian may be indefinite");
  return set;
}

EigenSystem eigen_basis(const LaplacianOperator& op, int k, const EigenOptions& options) {
  return smallest_eigenpairs(op.stiffness(), op.B(), k, options);
}

Vector spectral_coefficients(const LaplacianOperator& op, const EigenSystem& eig, const Vector& f) {
  if (f.size() != op.size() || eig.vectors.rows() != op.size())
    throw DimensionMismatch("field, eigenvectors and operator must share one mesh");
  return eig.vectors.transpose() * (op.B() * f);
}

Reconstruction reconstruct(const LaplacianOperator& op, const EigenSystem& eig, const Vector& f,
                           const Vector& alpha, int k_use) {
  if (k_use < 0 || k_use > eig.size() || k_use > alpha.size())
    throw InvalidArgument("k_use must not exceed the stored eigenpairs");
  Reconstruction rec;
  rec.field = eig.vectors.leftCols(k_use) * alpha.head(k_use);
  const Vector r = f - rec.field;
  rec.residual_sq = r.dot(op.B() * r);
  std::optional<double> next;
  if (k_use < eig.size())
    next = eig.values[k_use];
  else
    next = eig.next_value;
  const double energy = f.dot(op.L() * f);
  if (next && *next > 0.0) {
    rec.bound = energy / *next;
    rec.bound_satisfied = rec.residual_sq <= *rec.bound;
  } else if (k_use == op.size()) {
    // complete basis: nothing left to bound
    rec.bound_satisfied = rec.residual_sq <= 1e-8 * std::max(1.0, f.dot(op.B() * f));
  }
  return rec;
}

Vector truncated_spectral(const LaplacianOperator& op, const EigenSystem& eig, const FilterSpec& filter,
                          const Vector& f, bool* deflated) {
  const Vector alpha = spectral_coefficients(op, eig, f);
  const double top = eig.size() ? std::abs(eig.values[eig.size() - 1]) : 1.0;
  const double zero_tol = 1e-8 * std::max(1.0, top);
  Vector weights(eig.size());
  bool dropped = false;
  for (int j = 0; j < eig.size(); ++j) {
    if (filter.singular_at_zero() && eig.values[j] <= zero_tol) {
      weights[j] = 0.0;
      dropped = true;
    } else {
      weights[j] = evaluate(filter, std::max(eig.values[j], 0.0)) * alpha[j];
    }
  }
  if (deflated) *deflated = dropped;
  return eig.vectors * weights;
}

struct RationalFilterOperator::Term {
  std::complex<double> weight;
  /// 1 for a single pole, 2 for a pole standing in for its conjugate pair.
  double multiplicity;
  std::unique_ptr<ShiftedSolver> solver;
};

RationalFilterOperator::RationalFilterOperator(const LaplacianOperator& op, RationalStages stages, double tol)
    : op_(&op), stages_(std::move(stages)) {
  const SparseSymMatrix& L = op.stiffness();
  // The Lanczos estimate is a lower bound on lambda_max; pad it.
  const double lmax = 1.05 * op.lambda_max();
  for (const auto& stage : stages_.stages) {
    std::vector<Term> terms;
    std::vector<bool> used(stage.poles.size(), false);
    for (std::size_t i = 0; i < stage.poles.size(); ++i) {
      if (used[i]) continue;
      const Pole& p = stage.poles[i];
      used[i] = true;
      double mult = 1.0;
      if (p.node.imag() != 0.0) {
        for (std::size_t j = i + 1; j < stage.poles.size(); ++j) {
          if (!used[j] && stage.poles[j].node == std::conj(p.node) && stage.poles[j].weight == std::conj(p.weight)) {
            used[j] = true;
            mult = 2.0;
            break;
          }
        }
      }
      check_shift(p.node, 0.0, lmax);
      terms.push_back({p.weight, mult, std::make_unique<ShiftedSolver>(op.B(), L, p.node, tol)});
    }
    terms_.push_back(std::move(terms));
  }
}

RationalFilterOperator::~RationalFilterOperator() = default;
RationalFilterOperator::RationalFilterOperator(RationalFilterOperator&&) noexcept = default;
RationalFilterOperator& RationalFilterOperator::operator=(RationalFilterOperator&&) noexcept = default;

Vector RationalFilterOperator::apply(const Vector& f) const {
  if (f.size() != op_->size()) throw DimensionMismatch("field length does not match operator");
  Vector cur = f;
  for (std::size_t s = 0; s < terms_.size(); ++s) {
    const Vector rhs = op_->B() * cur;
    Vector acc = stages_.stages[s].constant * cur;
    Vector imag = Vector::Zero(cur.size());
    // fixed order: poles summed as listed
    for (const Term& term : terms_[s]) {
      if (term.solver->is_real()) {
        const Vector g = term.solver->solve_real(rhs);
        acc += (term.weight.real() * term.multiplicity) * g;
        imag += (term.weight.imag() * term.multiplicity) * g;
      } else {
        const ComplexVector g = term.solver->solve(rhs.cast<std::complex<double>>());
        const ComplexVector wg = term.weight * g;
        acc += term.multiplicity * wg.real();
        if (term.multiplicity == 1.0) imag += wg.imag();
      }
    }
    const double an = acc.norm();
    if (an > 0.0) max_imag_ = std::max(max_imag_, imag.norm() / an);
    cur = std::move(acc);
  }
  return cur;
}

double RationalFilterOperator::max_residual() const {
  double r = 0.0;
  for (const auto& terms : terms_)
    for (const auto& t : terms) r = std::max(r, t.solver->max_residual());
  return r;
}

Vector chebyshev_spectral(const LaplacianOperator& op, const PartialFraction& pf, const Vector& f) {
  RationalStages st;
  st.stages.push_back(pf);
  return chebyshev_spectral(op, st, f);
}

Vector chebyshev_spectral(const LaplacianOperator& op, const RationalStages& stages, const Vector& f) {
  RationalFilterOperator K(op, stages);
  return K.apply(f);
}

BasisSet diffusion_set(const LaplacianOperator& op, double t, std::span<const int> seeds,
                       const DiffusionOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("diffusion scale t must be positive");
  check_seeds(op.size(), seeds);
  BasisSet set;
  set.family = "diffusion";
  set.seeds.assign(seeds.begin(), seeds.end());
  set.parameters["t"] = format_double(t);
  const FilterSpec filter = FilterSpec::exponential(t);
  auto delta = [&](int s) {
    Vector e = Vector::Zero(op.size());
    e[s] = 1.0;
    return e;
  };
  if (options.method == DiffusionMethod::Chebyshev) {
    set.parameters["method"] = "chebyshev";
    set.parameters["r"] = std::to_string(options.r);
    RationalFilterOperator K(op, rational_form(filter, options.r));
    for (int s : seeds)
      set.fields.push_back({K.apply(delta(s)), "diffusion chebyshev r=" + std::to_string(options.r) +
                                                   " t=" + format_double(t) + " seed " + std::to_string(s)});
    set.parameters["max_residual"] = format_double(K.max_residual());
  } else {
    set.parameters["method"] = "truncated";
    EigenSystem local;
    const EigenSystem* eig = options.eigen;
    if (!eig) {
      local = eigen_basis(op, std::min(options.k, op.size()));
      eig = &local;
    }
    set.parameters["k"] = std::to_string(eig->size());
    if (eig->size() < op.size())
      set.warnings.push_back("truncated expansion: accuracy cannot be estimated without the whole spectrum");
    for (int s : seeds)
      set.fields.push_back({truncated_spectral(op, *eig, filter, delta(s)),
                            "diffusion truncated k=" + std::to_string(eig->size()) + " t=" + format_double(t) +
                                " seed " + std::to_string(s)});
  }
  return set;
}

ScalarField diffusion_basis(const LaplacianOperator& op, double t, int seed, const DiffusionOptions& options) {
  const int seeds[] = {seed};
  return diffusion_set(op, t, seeds, options).fields.front();
}

ScalarField green_column(const LaplacianOperator& op, int seed, const GreenOptions& options) {
  const int n = op.size();
  if (seed < 0 || seed >= n) throw InvalidArgument("seed is out of range");
  Vector e = Vector::Zero(n);
  e[seed] = 1.0;
  switch (options.role) {
    case GreenRole::Harmonic: {
      const SparseSymMatrix& L = op.stiffness();
      const Vector ones = Vector::Ones(n);
      const Vector mass = op.B() * ones;
      const double area = mass.sum();
      const Vector rhs = op.B() * Vector(e - (mass[seed] / area) * ones);
      SolveOptions so;
      so.tol = 1e-12;
      so.nullspace = ones / std::sqrt(static_cast<double>(n));
      Vector g = solve_spd(L, rhs, so);
      g -= (mass.dot(g) / area) * ones;
      return {g, "green harmonic seed " + std::to_string(seed)};
    }
    case GreenRole::Diffusion: {
      DiffusionOptions d;
      d.r = options.r;
      ScalarField f = diffusion_basis(op, options.t, seed, d);
      f.provenance = "green diffusion t=" + format_double(options.t) + " seed " + std::to_string(seed);
      return f;
    }
    case GreenRole::General: {
      Vector g = chebyshev_spectral(op, rational_form(options.filter, options.r), e);
      return {g, "green " + options.filter.describe() + " seed " + std::to_string(seed)};
    }
  }
  throw InvalidArgument("unknown Green role");
}

}  // namespace specbasis
