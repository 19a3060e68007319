#include "specbasis/filters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "specbasis/errors.hpp"
#include "specbasis/exp_rational_table.hpp"

namespace specbasis {

using cd = std::complex<double>;

FilterSpec FilterSpec::exponential(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("diffusion scale t must be finite and >= 0");
  FilterSpec f;
  f.kind = FilterKind::Exponential;
  f.t = t;
  return f;
}

FilterSpec FilterSpec::polyharmonic(double k) {
  if (!(k > 0.0)) throw InvalidArgument("polyharmonic order must be positive");
  FilterSpec f;
  f.kind = FilterKind::Polyharmonic;
  f.k = k;
  return f;
}

FilterSpec FilterSpec::commute_time() {
  FilterSpec f;
  f.kind = FilterKind::CommuteTime;
  return f;
}

FilterSpec FilterSpec::mexican_hat() {
  FilterSpec f;
  f.kind = FilterKind::MexicanHat;
  return f;
}

FilterSpec FilterSpec::rational(std::vector<double> numerator, std::vector<double> denominator) {
  FilterSpec f;
  f.kind = FilterKind::Rational;
  f.numerator = std::move(numerator);
  f.denominator = std::move(denominator);
  if (f.numerator.empty() || f.denominator.empty()) throw InvalidArgument("rational filter needs coefficients");
  return f;
}

FilterSpec FilterSpec::custom(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw InvalidArgument("custom filter needs at least one sample");
  std::sort(samples.begin(), samples.end());
  FilterSpec f;
  f.kind = FilterKind::Custom;
  f.samples = std::move(samples);
  return f;
}

bool FilterSpec::singular_at_zero() const {
  return kind == FilterKind::Polyharmonic || kind == FilterKind::CommuteTime;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  return ss.str();
}

std::string num(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

double poly_eval(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

cd poly_eval(const std::vector<double>& c, cd s) {
  cd acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::vector<double> trimmed(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

bool close_roots(cd a, cd b) { return std::abs(a - b) <= 1e-4 * std::max(1.0, std::abs(a)); }

// Real nodes first, then conjugate pairs (positive imaginary part first), each
// group by increasing |node|.
void canonical_order(std::vector<Pole>& poles) {
  std::stable_sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
    const bool ra = a.node.imag() == 0.0;
    const bool rb = b.node.imag() == 0.0;
    if (ra != rb) return ra;
    const cd ka(std::abs(a.node), std::abs(a.node.imag()));
    const cd kb(std::abs(b.node), std::abs(b.node.imag()));
    if (std::abs(ka.real() - kb.real()) > 1e-14 * std::max(1.0, ka.real())) return ka.real() < kb.real();
    if (ka.imag() != kb.imag()) return ka.imag() < kb.imag();
    return a.node.imag() > b.node.imag();
  });
}

}  // namespace

std::string FilterSpec::describe() const {
  switch (kind) {
    case FilterKind::Exponential: return "exp:t=" + num(t);
    case FilterKind::Polyharmonic: return "poly:k=" + num(k);
    case FilterKind::CommuteTime: return "commute";
    case FilterKind::MexicanHat: return "mexican";
    case FilterKind::Rational: return "rat:num=" + join(numerator) + ";den=" + join(denominator);
    case FilterKind::Custom: return "custom:" + std::to_string(samples.size()) + " samples";
  }
  return "?";
}

double evaluate(const FilterSpec& filter, double s) {
  switch (filter.kind) {
    case FilterKind::Exponential: return std::exp(-filter.t * s);
    case FilterKind::Polyharmonic:
      if (!(s > 0.0)) throw SingularEvaluation("polyharmonic filter is singular at s = 0");
      return std::pow(s, -filter.k / 2.0);
    case FilterKind::CommuteTime:
      if (!(s > 0.0)) throw SingularEvaluation("commute-time filter is singular at s = 0");
      return 1.0 / std::sqrt(s);
    case FilterKind::MexicanHat: return std::sqrt(std::max(s, 0.0)) * std::exp(-s * s);
    case FilterKind::Rational: {
      const double d = poly_eval(filter.denominator, s);
      if (d == 0.0) throw SingularEvaluation("rational filter denominator vanishes at s = " + num(s));
      return poly_eval(filter.numerator, s) / d;
    }
    case FilterKind::Custom: {
      const auto& tab = filter.samples;
      if (s <= tab.front().first) return tab.front().second;
      if (s >= tab.back().first) return tab.back().second;
      auto hi = std::upper_bound(tab.begin(), tab.end(), std::make_pair(s, -HUGE_VAL));
      auto lo = hi - 1;
      const double w = (s - lo->first) / (hi->first - lo->first);
      return (1.0 - w) * lo->second + w * hi->second;
    }
  }
  return 0.0;
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw FilterSyntaxError("bad number '" + text + "' for " + what);
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// key=value pairs separated by ';'
std::vector<std::pair<std::string, std::string>> parse_params(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const auto semi = text.find(';', start);
    const std::string item = text.substr(start, semi - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw FilterSyntaxError("expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace

FilterSpec parse_filter(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  const auto params = parse_params(rest);
  auto single = [&](const std::string& key) {
    if (params.size() != 1 || params[0].first != key)
      throw FilterSyntaxError("filter '" + name + "' expects exactly '" + key + "=<value>'");
    return parse_number(params[0].second, key);
  };
  auto none = [&] {
    if (!params.empty()) throw FilterSyntaxError("filter '" + name + "' takes no parameters");
  };
  if (name == "exp") return FilterSpec::exponential(single("t"));
  if (name == "poly") return FilterSpec::polyharmonic(single("k"));
  if (name == "commute") return none(), FilterSpec::commute_time();
  if (name == "mexican") return none(), FilterSpec::mexican_hat();
  if (name == "rat") {
    std::vector<double> nv, dv;
    bool has_num = false, has_den = false;
    for (const auto& [k, v] : params) {
      if (k == "num" && !has_num) {
        nv = parse_list(v, "num");
        has_num = true;
      } else if (k == "den" && !has_den) {
        dv = parse_list(v, "den");
        has_den = true;
      } else {
        throw FilterSyntaxError("unexpected rational parameter '" + k + "'");
      }
    }
    if (!has_num || !has_den) throw FilterSyntaxError("rational filter needs num=... and den=...");
    return FilterSpec::rational(nv, dv);
  }
  if (name == "wave") throw UnsupportedFilter("the wave kernel exp(is) is not supported");
  throw FilterSyntaxError("unknown filter '" + name + "'");
}

cd PartialFraction::evaluate_complex(double s) const {
  cd acc = constant;
  for (const auto& p : poles) acc += p.weight / (1.0 + p.node * s);
  return acc;
}

double PartialFraction::evaluate(double s) const { return evaluate_complex(s).real(); }

PartialFraction PartialFraction::scaled(double t) const {
  PartialFraction out = *this;
  for (auto& p : out.poles) p.node *= t;
  return out;
}

double RationalStages::evaluate(double s) const {
  double v = 1.0;
  for (const auto& st : stages) v *= st.evaluate(s);
  return v;
}

RationalStages RationalStages::scaled(double t) const {
  RationalStages out;
  for (const auto& st : stages) out.stages.push_back(st.scaled(t));
  return out;
}

PartialFraction exp_chebyshev_coefficients(int r) {
  for (const auto& entry : detail::kExpRationalTable) {
    if (entry.degree != r) continue;
    PartialFraction pf;
    pf.constant = entry.constant;
    for (const auto& term : entry.terms)
      pf.poles.push_back({cd(term.weight_re, term.weight_im), cd(term.node_re, term.node_im)});
    return pf;
  }
  throw UnsupportedDegree("rational degree " + std::to_string(r) + " is outside 3..14");
}

double exp_chebyshev_error(int r) {
  for (const auto& entry : detail::kExpRationalTable)
    if (entry.degree == r) return entry.minimax_error;
  throw UnsupportedDegree("rational degree " + std::to_string(r) + " is outside 3..14");
}

std::vector<cd> polynomial_roots(const std::vector<double>& coeffs) {
  const auto c = trimmed(coeffs);
  if (c.size() <= 1) return {};
  const int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cd> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  const auto dc = derivative(c);
  // Newton polish; a step is kept only if it lowers |p|, which protects
  // clustered (multiple) roots where p' is nearly zero.
  for (auto& z : roots) {
    for (int it = 0; it < 4; ++it) {
      const cd dp = poly_eval(dc, z);
      if (dp == 0.0) break;
      const cd step = poly_eval(c, z) / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(poly_eval(c, z - step)) >= std::abs(poly_eval(c, z))) break;
      z -= step;
    }
  }
  // exact conjugate symmetry
  for (auto& z : roots)
    if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) z = cd(z.real(), 0.0);
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].imag() <= 0.0) continue;
    std::size_t best = roots.size();
    double bd = HUGE_VAL;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j] || j == i || roots[j].imag() >= 0.0) continue;
      const double dist = std::abs(roots[j] - std::conj(roots[i]));
      if (dist < bd) {
        bd = dist;
        best = j;
      }
    }
    if (best < roots.size()) {
      roots[best] = std::conj(roots[i]);
      used[best] = used[i] = true;
    }
  }
  return roots;
}

PartialFraction rational_partial_fractions(const FilterSpec& filter) {
  if (filter.kind != FilterKind::Rational) throw UnsupportedFilter("not a rational filter: " + filter.describe());
  const auto nm = trimmed(filter.numerator);
  const auto dn = trimmed(filter.denominator);
  if (dn.empty()) throw InvalidArgument("rational filter denominator is zero");
  if (nm.size() > dn.size()) throw DegreeMismatch("numerator degree exceeds denominator degree");
  PartialFraction pf;
  if (nm.empty()) return pf;
  if (dn.size() == 1) {
    pf.constant = nm[0] / dn[0];
    return pf;
  }
  if (dn[0] == 0.0) throw UnsupportedFilter("rational filter has a pole at s = 0");
  pf.constant = nm.size() == dn.size() ? nm.back() / dn.back() : 0.0;
  std::vector<double> rem(dn.size() - 1, 0.0);
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = (i < nm.size() ? nm[i] : 0.0) - pf.constant * dn[i];

  const auto roots = polynomial_roots(dn);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (close_roots(roots[i], roots[j])) throw RepeatedRoots("denominator has a repeated root");
  const auto dd = derivative(dn);
  for (const cd& rho : roots) {
    // c / (s - rho) = (-c / rho) / (1 - s / rho)
    const cd c = poly_eval(rem, rho) / poly_eval(dd, rho);
    pf.poles.push_back({-c / rho, -1.0 / rho});
  }
  for (auto& p : pf.poles)
    if (p.node.imag() == 0.0) p.weight = cd(p.weight.real(), 0.0);
  canonical_order(pf.poles);
  // conjugate partners carry exactly conjugate weights
  for (std::size_t i = 0; i + 1 < pf.poles.size(); ++i) {
    if (pf.poles[i].node.imag() > 0.0 && pf.poles[i + 1].node == std::conj(pf.poles[i].node)) {
      pf.poles[i + 1].weight = std::conj(pf.poles[i].weight);
      ++i;
    }
  }
  return pf;
}

RationalStages rational_stages(const FilterSpec& filter) {
  if (filter.kind != FilterKind::Rational) throw UnsupportedFilter("not a rational filter: " + filter.describe());
  const auto nm = trimmed(filter.numerator);
  const auto dn = trimmed(filter.denominator);
  if (dn.empty()) throw InvalidArgument("rational filter denominator is zero");
  if (nm.size() > dn.size()) throw DegreeMismatch("numerator degree exceeds denominator degree");
  const auto roots = polynomial_roots(dn);

  // distinct roots with multiplicities
  // A root of multiplicity m is only resolved to about eps^(1/m), so the
  // members of a cluster are replaced by their mean.
  std::vector<std::pair<cd, int>> distinct;
  std::vector<cd> sums;
  for (const cd& r : roots) {
    auto it = std::find_if(distinct.begin(), distinct.end(), [&](const auto& e) { return close_roots(e.first, r); });
    if (it == distinct.end()) {
      distinct.emplace_back(r, 1);
      sums.push_back(r);
    } else {
      ++it->second;
      sums[it - distinct.begin()] += r;
    }
  }
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    cd mean = sums[i] / static_cast<double>(distinct[i].second);
    // A root of multiplicity m is a simple root of the (m-1)-th derivative.
    std::vector<double> dm = dn;
    for (int d = 1; d < distinct[i].second; ++d) dm = derivative(dm);
    const auto dm1 = derivative(dm);
    for (int it = 0; it < 8 && distinct[i].second > 1; ++it) {
      const cd dp = poly_eval(dm1, mean);
      if (dp == 0.0) break;
      const cd step = poly_eval(dm, mean) / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      mean -= step;
    }
    if (std::abs(mean.imag()) <= 1e-12 * std::max(1.0, std::abs(mean))) mean = cd(mean.real(), 0.0);
    distinct[i].first = mean;
  }
  int layers = 0;
  for (const auto& e : distinct) layers = std::max(layers, e.second);
  RationalStages out;
  if (layers <= 1) {
    out.stages.push_back(rational_partial_fractions(filter));
    return out;
  }
  // den = lead * prod_layers P_l(s), P_l monic over the roots of multiplicity > l.
  std::vector<std::vector<double>> polys;
  for (int layer = 0; layer < layers; ++layer) {
    std::vector<cd> poly{1.0};
    for (const auto& e : distinct) {
      if (e.second <= layer) continue;
      std::vector<cd> next(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= e.first * poly[i];
      }
      poly = std::move(next);
    }
    std::vector<double> real(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) real[i] = poly[i].real();
    polys.push_back(std::move(real));
  }
  // Later stages are normalised to P_l(0) / P_l(s); the first stage absorbs the
  // leading coefficient and those normalisations.
  std::vector<double> first = polys[0];
  double scale = dn.back();
  for (int layer = 1; layer < layers; ++layer) scale *= polys[layer][0];
  for (auto& v : first) v *= scale;
  if (nm.size() > first.size())
    throw DegreeMismatch("numerator degree exceeds the simple-pole part of the denominator");
  out.stages.push_back(rational_partial_fractions(FilterSpec::rational(nm, first)));
  for (int layer = 1; layer < layers; ++layer)
    out.stages.push_back(rational_partial_fractions(FilterSpec::rational({polys[layer][0]}, polys[layer])));
  return out;
}

RationalStages rational_form(const FilterSpec& filter, int r) {
  RationalStages out;
  switch (filter.kind) {
    case FilterKind::Exponential: out.stages.push_back(exp_chebyshev_coefficients(r).scaled(filter.t)); return out;
    case FilterKind::Rational: return rational_stages(filter);
    default: throw UnsupportedFilter("no rational form for filter " + filter.describe() + "; use the truncated path");
  }
}

}  // namespace specbasis
