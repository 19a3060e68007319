#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace specbasis {

enum class FilterKind { Exponential, Polyharmonic, CommuteTime, MexicanHat, Rational, Custom };

/// A spectral filter phi(s) applied to generalised eigenvalues s.
struct FilterSpec {
  FilterKind kind = FilterKind::Exponential;
  double t = 1.0;                   // exponential scale
  double k = 1.0;                   // polyharmonic order, phi(s) = s^{-k/2}
  std::vector<double> numerator;    // rational, coefficients low to high degree
  std::vector<double> denominator;
  std::vector<std::pair<double, double>> samples;  // custom (s, phi(s)), ascending s

  static FilterSpec exponential(double t);
  static FilterSpec polyharmonic(double k);
  static FilterSpec commute_time();
  static FilterSpec mexican_hat();
  static FilterSpec rational(std::vector<double> numerator, std::vector<double> denominator);
  static FilterSpec custom(std::vector<std::pair<double, double>> samples);

  /// Filters that blow up at s = 0 and need the constant mode removed.
  bool singular_at_zero() const;
  std::string describe() const;
};

/// phi(s). Custom tables are linearly interpolated and held constant beyond
/// their end points.
double evaluate(const FilterSpec& filter, double s);

/// Parses `exp:t=0.1`, `poly:k=2`, `commute`, `mexican` or
/// `rat:num=1;den=1,0,1` (coefficients low to high degree).
FilterSpec parse_filter(const std::string& text);

struct Pole {
  std::complex<double> weight;  // alpha_j
  std::complex<double> node;    // beta_j
};

/// constant + sum_j weight_j / (1 + node_j s).
struct PartialFraction {
  double constant = 0.0;
  std::vector<Pole> poles;

  int degree() const { return static_cast<int>(poles.size()); }
  std::complex<double> evaluate_complex(double s) const;
  /// Real part of evaluate_complex.
  double evaluate(double s) const;
  /// Same function of t * s: every node multiplied by t.
  PartialFraction scaled(double t) const;
};

/// A product of partial fractions applied one after another. Rational filters
/// with repeated poles factor into several simple-pole stages.
struct RationalStages {
  std::vector<PartialFraction> stages;
  double evaluate(double s) const;
  RationalStages scaled(double t) const;
};

/// Partial fractions of the best uniform rational approximation of e^{-s} on
/// [0, inf), type (r - 1, r), r in 3..14.
PartialFraction exp_chebyshev_coefficients(int r);
/// Minimax error of the degree-r table entry.
double exp_chebyshev_error(int r);

/// Exact partial fractions of num(s) / den(s). Throws RepeatedRoots when the
/// denominator has a multiple root and DegreeMismatch when deg num > deg den.
PartialFraction rational_partial_fractions(const FilterSpec& filter);

/// Like rational_partial_fractions, but repeated roots are split into chained
/// simple-pole stages.
RationalStages rational_stages(const FilterSpec& filter);

/// The rational form used by the spectrum-free path: Chebyshev coefficients
/// (degree r, time folded into the nodes) for exponentials, the exact
/// decomposition for rational filters. Other kinds throw UnsupportedFilter.
RationalStages rational_form(const FilterSpec& filter, int r = 5);

/// Roots of a real polynomial given low-to-high coefficients.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

}  // namespace specbasis
