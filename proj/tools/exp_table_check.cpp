// Build step: the compiled-in rational tables must reproduce e^{-s} on a dense
// log grid before anything downstream is built against them.

#include <cmath>
#include <cstdio>

#include "specbasis/filters.hpp"

int main() {
  int bad = 0;
  for (int r = 3; r <= 14; ++r) {
    const auto pf = specbasis::exp_chebyshev_coefficients(r);
    const int count = r == 5 ? 1000000 : 20000;
    double sup = std::abs(pf.evaluate(0.0) - 1.0);
    for (int i = 0; i < count; ++i) {
      const double s = std::pow(10.0, -10.0 + 14.0 * i / (count - 1.0));
      sup = std::max(sup, std::abs(pf.evaluate(s) - std::exp(-s)));
    }
    // Rounding adds a few 1e-14 at the highest degrees.
    const double limit = 1.01 * specbasis::exp_chebyshev_error(r) + 2e-14;
    if (sup > limit || (r == 5 && sup > 5e-5)) {
      std::fprintf(stderr, "rational table r=%d: sup error %.3e exceeds %.3e\n", r, sup, limit);
      ++bad;
    }
  }
  return bad == 0 ? 0 : 1;
}
