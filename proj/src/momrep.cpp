#include "qnls/momrep.hpp"

#include <cmath>
#include <limits>

namespace qnls {

namespace {

const cplx kI(0.0, 1.0);

void check_same(const OrbitFunction& a, const OrbitFunction& b) {
  if (a.n() != b.n() || a.nvars() != b.nvars() || a.base() != b.base())
    throw std::invalid_argument("OrbitFunction: operands live on different orbits");
}

Permutation embed_first(const Permutation& w, int n) {
  std::vector<int> im(n);
  for (int j = 1; j <= n; ++j) im[j - 1] = j <= w.size() ? w(j) : j;
  return Permutation(std::move(im));
}

}  // namespace

double min_pairwise_gap(const std::vector<cplx>& lambda) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < lambda.size(); ++a)
    for (std::size_t b = a + 1; b < lambda.size(); ++b) g = std::min(g, std::abs(lambda[a] - lambda[b]));
  return g;
}

OrbitFunction::OrbitFunction(std::vector<cplx> lambda, int nvars)
    : lambda_(std::move(lambda)), nvars_(nvars) {
  if (min_pairwise_gap(lambda_) < kRegularityGap)
    throw RegularityError("OrbitFunction: rapidities are not regular (gap below 1e-8)");
  entries_.assign(static_cast<std::size_t>(factorial(n())), ExpPolySum(nvars_));
}

std::vector<cplx> OrbitFunction::point(const Permutation& sigma) const {
  std::vector<cplx> p(lambda_.size());
  for (int j = 1; j <= n(); ++j) p[j - 1] = lambda_[sigma.inverse()(j) - 1];
  return p;
}

OrbitFunction orbit_planewave(const std::vector<cplx>& lambda) {
  const int n = static_cast<int>(lambda.size());
  OrbitFunction o(lambda, n);
  const auto& perms = all_permutations(n);
  for (std::size_t i = 0; i < perms.size(); ++i) o.entry_at(i) = ExpPolySum::plane_wave(o.point(perms[i]));
  return o;
}

OrbitFunction orbit_scalar(const std::vector<cplx>& lambda, const ScalarField& field, int nvars) {
  OrbitFunction o(lambda, nvars);
  const auto& perms = all_permutations(o.n());
  for (std::size_t i = 0; i < perms.size(); ++i) o.entry_at(i) = ExpPolySum::constant(nvars, field(o.point(perms[i])));
  return o;
}

OrbitFunction add(const OrbitFunction& a, const OrbitFunction& b) {
  check_same(a, b);
  OrbitFunction out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.entry_at(i) = add(a.entry_at(i), b.entry_at(i));
  return out;
}

OrbitFunction scale(cplx c, const OrbitFunction& a) {
  OrbitFunction out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.entry_at(i) = scale(c, a.entry_at(i));
  return out;
}

OrbitFunction operator+(const OrbitFunction& a, const OrbitFunction& b) { return add(a, b); }
OrbitFunction operator-(const OrbitFunction& a, const OrbitFunction& b) { return add(a, scale(-1.0, b)); }
OrbitFunction operator*(cplx c, const OrbitFunction& a) { return scale(c, a); }

OrbitFunction act_momentum(const Permutation& w, const OrbitFunction& o) {
  if (w.size() != o.n()) throw std::invalid_argument("act_momentum: size mismatch");
  OrbitFunction out = o;
  const Permutation winv = w.inverse();
  const auto& perms = all_permutations(o.n());
  for (std::size_t i = 0; i < perms.size(); ++i) out.entry_at(i) = o.entry(winv * perms[i]);
  return out;
}

OrbitFunction mult_lambda(const OrbitFunction& o, int k) {
  if (k < 1 || k > o.n()) throw std::out_of_range("mult_lambda: index out of range");
  OrbitFunction out = o;
  const auto& perms = all_permutations(o.n());
  for (std::size_t i = 0; i < perms.size(); ++i) out.entry_at(i) = scale(o.point(perms[i])[k - 1], o.entry_at(i));
  return out;
}

OrbitFunction mult_scalar(const OrbitFunction& o, const ScalarField& field) {
  OrbitFunction out = o;
  const auto& perms = all_permutations(o.n());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const cplx v = field(o.point(perms[i]));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error("mult_scalar: scalar field singular at an orbit point");
    out.entry_at(i) = scale(v, o.entry_at(i));
  }
  return out;
}

OrbitFunction divided_difference(const OrbitFunction& o, int j, int k) {
  if (j == k || j < 1 || k < 1 || j > o.n() || k > o.n()) throw std::out_of_range("divided_difference: bad indices");
  OrbitFunction out = o;
  const Permutation s = Permutation::transposition(o.n(), j, k);
  const auto& perms = all_permutations(o.n());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto p = o.point(perms[i]);
    const cplx denom = p[j - 1] - p[k - 1];
    if (denom == 0.0) throw std::domain_error("divided_difference: zero denominator");
    out.entry_at(i) = scale(1.0 / denom, o.entry_at(i) - o.entry(s * perms[i]));
  }
  return out;
}

OrbitFunction deformed_transposition_momentum(const OrbitFunction& o, int j, double gamma) {
  OrbitFunction swapped = act_momentum(Permutation::simple(o.n(), j), o);
  if (gamma == 0.0) return swapped;
  return swapped - scale(kI * gamma, divided_difference(o, j, j + 1));
}

OrbitFunction apply_deformed_word(const OrbitFunction& o, const Permutation& w, double gamma) {
  const auto word = reduced_word(w);
  OrbitFunction g = o;
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = deformed_transposition_momentum(g, *it, gamma);
  return g;
}

OrbitFunction gamma_symmetrizer(const OrbitFunction& o, double gamma, int m) {
  if (m == 0) m = o.n();
  const auto& perms = all_permutations(m);
  OrbitFunction acc = scale(0.0, o);
  for (const auto& w : perms) acc = acc + apply_deformed_word(o, embed_first(w, o.n()), gamma);
  return scale(1.0 / static_cast<double>(perms.size()), acc);
}

OrbitFunction symmetrizer(const OrbitFunction& o, int m) { return gamma_symmetrizer(o, 0.0, m); }

cplx coeff_G(const std::vector<cplx>& lambda, double gamma) {
  cplx g = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k) {
      const cplx d = lambda[j] - lambda[k];
      if (d == 0.0) throw std::domain_error("coeff_G: coinciding rapidities");
      g *= (d - kI * gamma) / d;
    }
  return g;
}

cplx tau_pm(cplx mu, const std::vector<cplx>& lambda, double gamma, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("tau_pm: sign must be +1 or -1");
  cplx t = 1.0;
  for (const auto& l : lambda) {
    const cplx d = l - mu;
    if (d == 0.0) throw std::domain_error("tau_pm: mu hits a rapidity");
    t *= (d - static_cast<double>(sign) * kI * gamma) / d;
  }
  return t;
}

}  // namespace qnls
