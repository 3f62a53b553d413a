#include "qnls/alcovefn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qnls {

AlcoveFunction::AlcoveFunction(int n, bool continuous)
    : n_(n), continuous_(continuous), pieces_(static_cast<std::size_t>(factorial(n)), ExpPolySum(n)) {}

AlcoveFunction AlcoveFunction::from_analytic(const ExpPolySum& f) {
  AlcoveFunction out(f.nvars(), true);
  for (auto& p : out.pieces_) p = f;
  return out;
}

AlcoveFunction AlcoveFunction::symmetric_extension(const ExpPolySum& fundamental) {
  const int n = fundamental.nvars();
  AlcoveFunction out(n, true);
  const auto& perms = all_permutations(n);
  for (std::size_t i = 0; i < perms.size(); ++i) out.pieces_[i] = act_position(perms[i], fundamental);
  return out;
}

Permutation ordering_of(const std::vector<double>& x) {
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 1);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a - 1] > x[b - 1]; });
  return Permutation(std::move(idx));
}

bool on_wall(const std::vector<double>& x) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (x[a] == x[b]) return true;
  return false;
}

cplx AlcoveFunction::operator()(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("AlcoveFunction: dimension mismatch");
  if (!continuous_ && on_wall(x))
    throw std::domain_error("AlcoveFunction: evaluation on a wall needs a side for a discontinuous function");
  return eval(piece(ordering_of(x)), x);
}

cplx AlcoveFunction::eval_side(const std::vector<double>& x, int j, int k, bool plus) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("AlcoveFunction: dimension mismatch");
  std::vector<int> idx(x.size());
  std::iota(idx.begin(), idx.end(), 1);
  const int first = plus ? j : k;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (x[a - 1] != x[b - 1]) return x[a - 1] > x[b - 1];
    return a == first && b != first && (b == j || b == k);
  });
  return eval(piece(Permutation(std::move(idx))), x);
}

AlcoveFunction add(const AlcoveFunction& f, const AlcoveFunction& g) {
  if (f.n() != g.n()) throw std::invalid_argument("AlcoveFunction add: dimension mismatch");
  AlcoveFunction out(f.n(), f.continuous() && g.continuous());
  for (std::size_t i = 0; i < out.piece_count(); ++i) out.piece_at(i) = add(f.piece_at(i), g.piece_at(i));
  return out;
}

AlcoveFunction scale(cplx c, const AlcoveFunction& f) {
  AlcoveFunction out(f.n(), f.continuous());
  for (std::size_t i = 0; i < out.piece_count(); ++i) out.piece_at(i) = scale(c, f.piece_at(i));
  return out;
}

AlcoveFunction operator+(const AlcoveFunction& f, const AlcoveFunction& g) { return add(f, g); }
AlcoveFunction operator-(const AlcoveFunction& f, const AlcoveFunction& g) { return add(f, scale(-1.0, g)); }
AlcoveFunction operator*(cplx c, const AlcoveFunction& f) { return scale(c, f); }

ExpPolySum act_position(const Permutation& w, const ExpPolySum& f) {
  if (w.size() != f.nvars()) throw std::invalid_argument("act_position: dimension mismatch");
  return remap(f, w.images(), f.nvars());
}

AlcoveFunction act_position(const Permutation& w, const AlcoveFunction& f) {
  if (w.size() != f.n()) throw std::invalid_argument("act_position: dimension mismatch");
  AlcoveFunction out(f.n(), f.continuous());
  const Permutation winv = w.inverse();
  const auto& perms = all_permutations(f.n());
  for (std::size_t i = 0; i < perms.size(); ++i) out.piece_at(i) = act_position(w, f.piece(winv * perms[i]));
  return out;
}

AlcoveFunction symmetrize(const AlcoveFunction& f) {
  const auto& perms = all_permutations(f.n());
  AlcoveFunction out(f.n(), f.continuous());
  const double norm = 1.0 / static_cast<double>(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    ExpPolySum acc(f.n());
    for (const auto& w : perms) {
      const ExpPolySum moved = act_position(w, f.piece(w.inverse() * perms[i]));
      for (const auto& t : moved.terms()) acc.push_term(t);
    }
    out.piece_at(i) = scale(norm, canonicalize(acc));
  }
  return out;
}

AlcoveFunction derivative(const AlcoveFunction& f, int j) {
  AlcoveFunction out(f.n(), false);
  for (std::size_t i = 0; i < f.piece_count(); ++i) out.piece_at(i) = derivative(f.piece_at(i), j);
  return out;
}

AlcoveFunction laplacian(const AlcoveFunction& f) {
  AlcoveFunction out(f.n(), false);
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    ExpPolySum acc(f.n());
    for (int j = 1; j <= f.n(); ++j) acc = add(acc, derivative(derivative(f.piece_at(i), j), j));
    out.piece_at(i) = acc;
  }
  return out;
}

AlcoveFunction dunkl(const AlcoveFunction& f, int j, double gamma) {
  const int n = f.n();
  if (j < 1 || j > n) throw std::out_of_range("dunkl: index out of range");
  const auto& perms = all_permutations(n);
  AlcoveFunction out(n, false);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Permutation& sigma = perms[i];
    const Permutation rank = sigma.inverse();  // smaller rank = larger coordinate
    ExpPolySum acc = derivative(f.piece_at(i), j);
    for (int k = 1; k <= n; ++k) {
      if (k == j) continue;
      // k<j contributes -gamma th(x_j-x_k) s_jk, k>j contributes +gamma th(x_k-x_j) s_jk
      const bool active = k < j ? rank(j) < rank(k) : rank(k) < rank(j);
      if (!active) continue;
      const Permutation s = Permutation::transposition(n, j, k);
      const ExpPolySum reflected = act_position(s, f.piece(s * sigma));
      acc = add(acc, scale(k < j ? -gamma : gamma, reflected));
    }
    out.piece_at(i) = acc;
  }
  return out;
}

ExpPolySum reflection_integral(const ExpPolySum& f, int j, int k) {
  const int n = f.nvars();
  if (j == k || j < 1 || k < 1 || j > n || k > n) throw std::out_of_range("reflection_integral: bad indices");
  const int y = n + 1;
  std::vector<int> embed(n);
  std::iota(embed.begin(), embed.end(), 1);
  ExpPolySum g = remap(f, embed, n + 1);
  AffineForm shift_j{std::vector<cplx>(n + 1, 0.0), 0.0};
  shift_j.coeffs[j - 1] = 1.0;
  shift_j.coeffs[y - 1] = -1.0;
  AffineForm shift_k{std::vector<cplx>(n + 1, 0.0), 0.0};
  shift_k.coeffs[k - 1] = 1.0;
  shift_k.coeffs[y - 1] = 1.0;
  g = substitute_affine(substitute_affine(g, j, shift_j), k, shift_k);
  const ExpPolySum a = antiderivative(g, y);
  AffineForm upper{std::vector<cplx>(n + 1, 0.0), 0.0};
  upper.coeffs[j - 1] = 1.0;
  upper.coeffs[k - 1] = -1.0;
  ExpPolySum r = substitute_affine(a, y, upper) - substitute(a, y, Bound::constant(0.0));
  std::vector<int> drop(n + 1);
  std::iota(drop.begin(), drop.end(), 1);
  drop[y - 1] = 0;
  return remap(r, drop, n);
}

ExpPolySum deformed_transposition_position(const ExpPolySum& f, int j, double gamma) {
  const ExpPolySum swapped = act_position(Permutation::simple(f.nvars(), j), f);
  if (gamma == 0.0) return swapped;
  return add(swapped, scale(gamma, reflection_integral(f, j, j + 1)));
}

ExpPolySum deformed_word_position(const ExpPolySum& f, const Permutation& w, double gamma) {
  const std::vector<int> word = reduced_word(w);
  ExpPolySum g = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = deformed_transposition_position(g, *it, gamma);
  return g;
}

AlcoveFunction propagation(const ExpPolySum& f, double gamma) {
  const int n = f.nvars();
  const auto& perms = all_permutations(n);
  AlcoveFunction out(n, true);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Permutation& sigma = perms[i];
    out.piece_at(i) = act_position(sigma, deformed_word_position(f, sigma.inverse(), gamma));
  }
  return out;
}

namespace {

ExpPolySum difference_derivative(const ExpPolySum& f, int j, int k, int times) {
  ExpPolySum g = f;
  for (int t = 0; t < times; ++t) g = derivative(g, j) - derivative(g, k);
  return g;
}

}  // namespace

std::vector<JumpRecord> wall_jump(const AlcoveFunction& f, int j, int k, double gamma,
                                  const std::vector<WallSample>& samples, int order) {
  if (j >= k) throw std::invalid_argument("wall_jump: need j < k");
  if (order < 1) throw std::invalid_argument("wall_jump: order must be positive");
  AlcoveFunction dr(f.n(), false), dr1(f.n(), false);
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    dr.piece_at(i) = difference_derivative(f.piece_at(i), j, k, order);
    dr1.piece_at(i) = difference_derivative(f.piece_at(i), j, k, order - 1);
  }
  const double factor = (order % 2 == 1) ? 2.0 * gamma : 0.0;
  std::vector<JumpRecord> out;
  for (const auto& s : samples) {
    if (s.j != j || s.k != k || s.x[j - 1] != s.x[k - 1]) throw std::invalid_argument("wall_jump: sample not on the wall");
    JumpRecord r{s, dr.eval_side(s.x, j, k, true), dr.eval_side(s.x, j, k, false), 0.0};
    r.residual = r.plus - r.minus - factor * dr1.eval_side(s.x, j, k, true);
    out.push_back(r);
  }
  return out;
}

double continuity_defect(const AlcoveFunction& f, const std::vector<WallSample>& samples) {
  double worst = 0.0;
  for (const auto& s : samples) {
    const cplx a = f.eval_side(s.x, s.j, s.k, true);
    const cplx b = f.eval_side(s.x, s.j, s.k, false);
    worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
  }
  return worst;
}

namespace {

bool gaps_ok(const std::vector<double>& x, int skip_j, int skip_k) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (static_cast<int>(a) + 1 == skip_j && static_cast<int>(b) + 1 == skip_k) continue;
      if (std::abs(x[a] - x[b]) < kWallGapFloor) return false;
    }
  return true;
}

}  // namespace

std::vector<std::vector<double>> sample_regular_points(int n, double L, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-L / 2, L / 2);
  std::vector<std::vector<double>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    if (gaps_ok(x, 0, 0)) out.push_back(std::move(x));
  }
  return out;
}

std::vector<WallSample> sample_wall_points(int n, int j, int k, double L, int count, std::mt19937_64& rng) {
  if (j >= k || j < 1 || k > n) throw std::invalid_argument("sample_wall_points: need 1 <= j < k <= N");
  std::uniform_real_distribution<double> u(-L / 2, L / 2);
  std::vector<WallSample> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    x[k - 1] = x[j - 1];
    if (gaps_ok(x, j, k)) out.push_back({j, k, std::move(x)});
  }
  return out;
}

}  // namespace qnls
