#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qnls/exppoly.hpp"

namespace testsupport {

using qnls::cplx;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5EEDull + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cplx random_complex(std::mt19937_64& g, double re, double im) {
  return {uniform(g, -re, re), uniform(g, -im, im)};
}

inline std::vector<double> random_point(std::mt19937_64& g, int n, double half) {
  std::vector<double> x(n);
  for (auto& v : x) v = uniform(g, -half, half);
  return x;
}

// Rapidities with pairwise gaps bounded below, small imaginary parts.
inline std::vector<cplx> random_rapidities(std::mt19937_64& g, int n, double min_gap = 0.3) {
  for (;;) {
    std::vector<cplx> lam(n);
    for (auto& l : lam) l = {uniform(g, -2.0, 2.0), uniform(g, -0.2, 0.2)};
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (std::abs(lam[a] - lam[b]) < min_gap) ok = false;
    if (ok) return lam;
  }
}

// Random exp-poly with the given number of terms and polynomial degree.
inline qnls::ExpPolySum random_exppoly(std::mt19937_64& g, int n, int terms, int max_degree) {
  qnls::ExpPolySum f(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<cplx> mu(n);
    for (auto& m : mu) m = random_complex(g, 2.0, 0.3);
    qnls::ExpPolyTerm term{mu, {}};
    std::vector<int> deg(n, 0);
    const int monos = 1 + static_cast<int>(g() % 3);
    for (int m = 0; m < monos; ++m) {
      std::fill(deg.begin(), deg.end(), 0);
      int total = max_degree ? static_cast<int>(g() % (max_degree + 1)) : 0;
      while (total-- > 0) deg[g() % n]++;
      term.monomials.push_back({qnls::mono_key(deg), random_complex(g, 1.0, 1.0)});
    }
    f.push_term(term);
  }
  return qnls::canonicalize(f);
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testsupport

namespace testsupport {

// Adaptive Simpson quadrature for complex integrands on [a, b].
template <class F>
cplx simpson(F&& f, double a, double b, double tol = 1e-12, int depth = 40) {
  struct Rec {
    static cplx run(F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
      const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const cplx flm = f(lm), frm = f(rm);
      const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const cplx diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
      return run(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + run(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }
  };
  const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return Rec::run(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace testsupport

namespace testsupport {

// Composite Gauss-Legendre rule that splits [a, b] at the given break points,
// so piecewise-smooth integrands are integrated segment by segment.
class PiecewiseGauss {
public:
  explicit PiecewiseGauss(std::vector<double> breaks, int order = 24) : breaks_(std::move(breaks)) {
    std::sort(breaks_.begin(), breaks_.end());
    nodes_.resize(order);
    weights_.resize(order);
    for (int k = 0; k < order; ++k) {
      double t = std::cos(M_PI * (k + 0.75) / (order + 0.5));
      double dp = 1.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int m = 2; m <= order; ++m) {
          const double p2 = ((2.0 * m - 1.0) * t * p1 - (m - 1.0) * p0) / m;
          p0 = p1;
          p1 = p2;
        }
        dp = order * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-16) break;
      }
      nodes_[k] = t;
      weights_[k] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }

  template <class F>
  cplx operator()(F&& f, double a, double b) const {
    if (a == b) return 0.0;
    if (a > b) return -(*this)(f, b, a);
    std::vector<double> cuts{a};
    for (double c : breaks_)
      if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    cplx sum = 0.0;
    for (std::size_t s = 1; s < cuts.size(); ++s) {
      const double mid = 0.5 * (cuts[s] + cuts[s - 1]), half = 0.5 * (cuts[s] - cuts[s - 1]);
      for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weights_[k] * half * f(mid + half * nodes_[k]);
    }
    return sum;
  }

private:
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace testsupport
