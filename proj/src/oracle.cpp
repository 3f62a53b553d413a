#include "qnls/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace qnls::oracle {

namespace {

const cplx I(0.0, 1.0);

template <int n>
struct GaussRule {
  std::array<double, n> nodes{};
  std::array<double, n> weights{};
  GaussRule() {
    for (int k = 0; k < n; ++k) {
      double t = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int l = 2; l <= n; ++l) {
          const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-16) {
          nodes[k] = t;
          weights[k] = 2.0 / ((1.0 - t * t) * dp * dp);
          break;
        }
      }
    }
  }
};

const GaussRule<15>& rule15() {
  static const GaussRule<15> r;
  return r;
}
const GaussRule<7>& rule7() {
  static const GaussRule<7> r;
  return r;
}

// Integrand returning its own error (from inner quadratures).
using Inner = std::function<QuadResult(double)>;

struct Panel {
  QuadResult r15;
  cplx r7;
  double magnitude = 0.0;  // integral of |g|, for the rounding floor
};

Panel panel(const Inner& g, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Panel p;
  const auto& R15 = rule15();
  for (int k = 0; k < 15; ++k) {
    const auto v = g(mid + half * R15.nodes[k]);
    p.r15.value += R15.weights[k] * v.value;
    p.r15.error += R15.weights[k] * v.error;
    p.magnitude += R15.weights[k] * std::abs(v.value);
  }
  p.r15.value *= half;
  p.r15.error *= std::abs(half);
  p.magnitude *= std::abs(half);
  const auto& R7 = rule7();
  p.r7 = 0.0;
  for (int k = 0; k < 7; ++k) p.r7 += R7.weights[k] * g(mid + half * R7.nodes[k]).value;
  p.r7 *= half;
  return p;
}

QuadResult adapt(const Inner& g, double a, double b, const Panel& p, double tol, int depth, const QuadConfig& cfg) {
  const double est = std::abs(p.r15.value - p.r7);
  const double rounding = 50.0 * std::numeric_limits<double>::epsilon() * p.magnitude;
  if (est <= tol) return {p.r15.value, std::max(est, rounding) + p.r15.error};
  if (depth >= cfg.max_subdivisions)
    throw QuadratureError("quadrature did not converge within the subdivision budget");
  const double m = 0.5 * (a + b);
  const auto left = adapt(g, a, m, panel(g, a, m), tol / 2, depth + 1, cfg);
  const auto right = adapt(g, m, b, panel(g, m, b), tol / 2, depth + 1, cfg);
  return {left.value + right.value, left.error + right.error};
}

QuadResult integrate_inner(const Inner& g, double a, double b, const QuadConfig& cfg) {
  if (a == b) return {};
  if (a > b) {
    const auto r = integrate_inner(g, b, a, cfg);
    return {-r.value, r.error};
  }
  const Panel whole = panel(g, a, b);
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole.r15.value));
  return adapt(g, a, b, whole, tol, 0, cfg);
}

// One summand of an integral operator at a fixed output point:
// pref * int_box e^{-i mu sum y} f(args) dy, where args mixes fixed values and y's.
struct Slot {
  int y = -1;  // index into the y vector, or -1 for a fixed value
  double value = 0.0;
};

struct Term {
  cplx pref;
  std::vector<std::pair<double, double>> box;  // signed limits (from, to) per y
  std::vector<Slot> args;
};

Slot fixed(double v) { return {-1, v}; }
Slot yvar(int m) { return {m, 0.0}; }

QuadResult integrate_term(const Term& t, const AlcoveFunction& f, cplx mu, const std::vector<double>& x,
                          const QuadConfig& cfg) {
  const int dims = static_cast<int>(t.box.size());
  if (dims > cfg.max_dim) throw std::invalid_argument("quad_apply: too many nested integrals for the oracle");
  std::vector<double> y(dims), arg(t.args.size());
  std::function<QuadResult(int)> level = [&](int d) -> QuadResult {
    if (d == dims) {
      double ysum = 0.0;
      for (double v : y) ysum += v;
      for (std::size_t s = 0; s < t.args.size(); ++s) arg[s] = t.args[s].y < 0 ? t.args[s].value : y[t.args[s].y];
      return {std::exp(-I * mu * ysum) * f(arg), 0.0};
    }
    // split where y_d crosses a fixed coordinate; integrands are smooth in between
    auto [from, to] = t.box[d];
    const double sign = from <= to ? 1.0 : -1.0;
    const double lo = std::min(from, to), hi = std::max(from, to);
    std::vector<double> cuts{lo};
    for (double c : x)
      if (c > lo && c < hi) cuts.push_back(c);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    QuadResult sum;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const auto r = integrate_inner(
          [&](double v) {
            y[d] = v;
            return level(d + 1);
          },
          cuts[s], cuts[s + 1], cfg);
      sum.value += r.value;
      sum.error += r.error;
    }
    return {sign * sum.value, sum.error};
  };
  const auto r = level(0);
  return {t.pref * r.value, std::abs(t.pref) * r.error};
}

bool decreasing_at(const std::vector<double>& x, const std::vector<int>& i) {
  for (std::size_t m = 0; m + 1 < i.size(); ++m)
    if (!(x[i[m] - 1] > x[i[m + 1] - 1])) return false;
  return true;
}

std::vector<int> complement(int N, const std::vector<int>& i) {
  std::vector<int> out;
  for (int k = 1; k <= N; ++k)
    if (std::find(i.begin(), i.end(), k) == i.end()) out.push_back(k);
  return out;
}

// Terms of A (plus) or D (minus) on x_1 > ... > x_N.
std::vector<Term> terms_AD(bool plus, const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int N = static_cast<int>(x.size());
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : increasing_tuples(N, n)) {
      Term t;
      cplx phase = 0.0;
      for (int k : i) phase += x[k - 1];
      t.pref = std::pow(m.gamma, n) * std::exp(I * mu * (phase + (plus ? -m.L / 2 : m.L / 2)));
      for (int s = 0; s < n; ++s) {
        if (plus)
          t.box.push_back({s + 1 < n ? x[i[s + 1] - 1] : -m.L / 2, x[i[s] - 1]});
        else
          t.box.push_back({x[i[s] - 1], s > 0 ? x[i[s - 1] - 1] : m.L / 2});
      }
      for (int k : complement(N, i)) t.args.push_back(fixed(x[k - 1]));
      for (int s = 0; s < n; ++s) t.args.push_back(yvar(s));
      out.push_back(std::move(t));
    }
  return out;
}

// Terms of B on x_1 > ... > x_{N+1}.
std::vector<Term> terms_B(const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int M = static_cast<int>(x.size()), N = M - 1;
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : increasing_tuples(M, n + 1)) {
      Term t;
      cplx phase = 0.0;
      for (int k : i) phase += x[k - 1];
      t.pref = std::pow(m.gamma, n) / static_cast<double>(N + 1) * std::exp(I * mu * phase);
      for (int s = 0; s < n; ++s) t.box.push_back({x[i[s + 1] - 1], x[i[s] - 1]});
      for (int k : complement(M, i)) t.args.push_back(fixed(x[k - 1]));
      for (int s = 0; s < n; ++s) t.args.push_back(yvar(s));
      out.push_back(std::move(t));
    }
  return out;
}

// Terms of C on x_1 > ... > x_N; n indices use n+1 integrations.
std::vector<Term> terms_C(const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int N = static_cast<int>(x.size());
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : increasing_tuples(N, n)) {
      Term t;
      cplx phase = 0.0;
      for (int k : i) phase += x[k - 1];
      t.pref = std::pow(m.gamma, n) * static_cast<double>(N + 1) * std::exp(I * mu * phase);
      auto bound = [&](int s) { return s == 0 ? m.L / 2 : s == n + 1 ? -m.L / 2 : x[i[s - 1] - 1]; };
      for (int s = 1; s <= n + 1; ++s) t.box.push_back({bound(s), bound(s - 1)});
      for (int k : complement(N, i)) t.args.push_back(fixed(x[k - 1]));
      for (int s = 0; s <= n; ++s) t.args.push_back(yvar(s));
      out.push_back(std::move(t));
    }
  return out;
}

std::vector<Term> terms_ad(bool plus, const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int N = static_cast<int>(x.size());
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : distinct_tuples(N, n)) {
      if (!decreasing_at(x, i)) continue;
      Term t;
      cplx phase = 0.0;
      for (int k : i) phase += x[k - 1];
      t.pref = std::pow(m.gamma, n) * std::exp(I * mu * (phase + (plus ? -m.L / 2 : m.L / 2)));
      for (int s = 0; s < n; ++s) {
        if (plus)
          t.box.push_back({s + 1 < n ? x[i[s + 1] - 1] : -m.L / 2, x[i[s] - 1]});
        else
          t.box.push_back({x[i[s] - 1], s > 0 ? x[i[s - 1] - 1] : m.L / 2});
      }
      for (int k = 1; k <= N; ++k) t.args.push_back(fixed(x[k - 1]));
      for (int s = 0; s < n; ++s) t.args[i[s] - 1] = yvar(s);
      out.push_back(std::move(t));
    }
  return out;
}

std::vector<Term> terms_b(bool plus, const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int N = static_cast<int>(x.size()) - 1;
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : distinct_tuples(N, n)) {
      // plus: theta(x_{i_1+1} > ... > x_{i_n+1} > x_1); minus: theta(x_{N+1} > x_{i_1} > ... > x_{i_n})
      std::vector<int> chain;
      if (plus) {
        for (int k : i) chain.push_back(k + 1);
        chain.push_back(1);
      } else {
        chain.push_back(N + 1);
        for (int k : i) chain.push_back(k);
      }
      if (!decreasing_at(x, chain)) continue;
      Term t;
      cplx phase = plus ? x[0] : x[N];
      for (int k : i) phase += x[(plus ? k + 1 : k) - 1];
      t.pref = std::pow(m.gamma, n) * std::exp(I * mu * phase);
      for (int s = 0; s < n; ++s) t.box.push_back({x[chain[s + 1] - 1], x[chain[s] - 1]});
      for (int k = 1; k <= N; ++k) t.args.push_back(fixed(x[(plus ? k + 1 : k) - 1]));
      for (int s = 0; s < n; ++s) t.args[i[s] - 1] = yvar(s);
      out.push_back(std::move(t));
    }
  return out;
}

std::vector<Term> terms_c(bool plus, const std::vector<double>& x, cplx mu, const ModelParams& m) {
  const int N = static_cast<int>(x.size());
  std::vector<Term> out;
  for (int n = 0; n <= N; ++n)
    for (const auto& i : distinct_tuples(N, n)) {
      if (!decreasing_at(x, i)) continue;
      Term t;
      cplx phase = 0.0;
      for (int k : i) phase += x[k - 1];
      t.pref = std::pow(m.gamma, n) * std::exp(I * mu * phase);
      auto bound = [&](int s) { return s == 0 ? m.L / 2 : s == n + 1 ? -m.L / 2 : x[i[s - 1] - 1]; };
      for (int s = 0; s <= n; ++s) t.box.push_back({bound(s + 1), bound(s)});
      std::vector<Slot> inner;
      for (int k = 1; k <= N; ++k) inner.push_back(fixed(x[k - 1]));
      // y vector index s holds y_s for plus and y_{s+1} for minus
      if (plus) {
        for (int s = 1; s <= n; ++s) inner[i[s - 1] - 1] = yvar(s);
        t.args = inner;
        t.args.push_back(yvar(0));
      } else {
        for (int s = 1; s <= n; ++s) inner[i[s - 1] - 1] = yvar(s - 1);
        t.args.push_back(yvar(n));
        t.args.insert(t.args.end(), inner.begin(), inner.end());
      }
      out.push_back(std::move(t));
    }
  return out;
}

int input_dim(Family fam, int out) {
  switch (fam) {
    case Family::B:
    case Family::b_plus:
    case Family::b_minus: return out - 1;
    case Family::C:
    case Family::c_plus:
    case Family::c_minus: return out + 1;
    default: return out;
  }
}

}  // namespace

QuadResult integrate(const std::function<cplx(double)>& g, double a, double b, const QuadConfig& cfg) {
  return integrate_inner([&](double v) { return QuadResult{g(v), 0.0}; }, a, b, cfg);
}

QuadResult quad_apply(const OperatorSpec& spec, const AlcoveFunction& f, const std::vector<double>& x,
                      const QuadConfig& cfg) {
  const int out = static_cast<int>(x.size());
  if (input_dim(spec.family, out) != f.n() || input_dim(spec.family, out) < 0)
    throw std::invalid_argument("quad_apply: point and input dimensions do not match the operator");
  std::vector<double> pt = x;
  if (is_symmetric_family(spec.family)) std::sort(pt.begin(), pt.end(), std::greater<>());
  const auto& m = spec.model;
  std::vector<Term> terms;
  switch (spec.family) {
    case Family::A: terms = terms_AD(true, pt, spec.mu, m); break;
    case Family::D: terms = terms_AD(false, pt, spec.mu, m); break;
    case Family::B: terms = terms_B(pt, spec.mu, m); break;
    case Family::C: terms = terms_C(pt, spec.mu, m); break;
    case Family::a: terms = terms_ad(true, pt, spec.mu, m); break;
    case Family::d: terms = terms_ad(false, pt, spec.mu, m); break;
    case Family::b_plus: terms = terms_b(true, pt, spec.mu, m); break;
    case Family::b_minus: terms = terms_b(false, pt, spec.mu, m); break;
    case Family::c_plus: terms = terms_c(true, pt, spec.mu, m); break;
    case Family::c_minus: terms = terms_c(false, pt, spec.mu, m); break;
  }
  QuadResult total;
  for (const auto& t : terms) {
    const auto r = integrate_term(t, f, spec.mu, pt, cfg);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

QuadResult inner_product(const AlcoveFunction& f, const AlcoveFunction& g, double L, const QuadConfig& cfg) {
  if (f.n() != g.n()) throw std::invalid_argument("inner_product: dimension mismatch");
  const int N = f.n();
  if (N == 0) return {f({}) * std::conj(g({})), 0.0};
  QuadResult total;
  std::vector<double> x(N);
  for (const auto& sigma : all_permutations(N)) {
    // t_1 > ... > t_N with x_{sigma(k)} = t_k
    std::function<QuadResult(int, double)> level = [&](int k, double upper) -> QuadResult {
      if (k == N) return {f(x) * std::conj(g(x)), 0.0};
      return integrate_inner(
          [&](double t) {
            x[sigma(k + 1) - 1] = t;
            return level(k + 1, t);
          },
          -L / 2, upper, cfg);
    };
    const auto r = level(0, L / 2);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

cplx fd_derivative(const AlcoveFunction& F, int j, const std::vector<double>& x, double h, bool richardson) {
  const Permutation home = ordering_of(x);
  auto central = [&](double step) {
    auto xp = x, xm = x;
    xp[j - 1] += step;
    xm[j - 1] -= step;
    if (on_wall(xp) || on_wall(xm) || ordering_of(xp) != home || ordering_of(xm) != home)
      throw WallCrossingError("fd_derivative: stencil crosses a wall");
    return (F(xp) - F(xm)) / (2.0 * step);
  };
  const cplx coarse = central(h);
  if (!richardson) return coarse;
  return (4.0 * central(h / 2) - coarse) / 3.0;
}

cplx fd_dunkl(const AlcoveFunction& F, int j, double gamma, const std::vector<double>& x, double h, bool richardson) {
  cplx out = fd_derivative(F, j, x, h, richardson);
  for (int k = 1; k <= static_cast<int>(x.size()); ++k) {
    if (k == j) continue;
    auto swapped = x;
    std::swap(swapped[j - 1], swapped[k - 1]);
    if (k < j && x[j - 1] > x[k - 1]) out -= gamma * F(swapped);
    if (k > j && x[k - 1] > x[j - 1]) out += gamma * F(swapped);
  }
  return out;
}

}  // namespace qnls::oracle
