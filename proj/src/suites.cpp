#include "qnls/suites.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>

#include "qnls/bae.hpp"
#include "qnls/momrep.hpp"
#include "qnls/oracle.hpp"
#include "qnls/wavefn.hpp"
#include "qnls/ybops.hpp"

namespace qnls {

namespace {

const cplx I(0.0, 1.0);
using Points = std::vector<std::vector<double>>;
using PointFn = std::function<cplx(const std::vector<double>&)>;

class Runner {
public:
  Runner(const SuiteConfig& cfg, std::uint64_t salt) : cfg_(cfg), rng_(cfg.seed * 0x9E3779B97F4A7C15ull + salt) {}

  std::mt19937_64& rng() { return rng_; }
  const SuiteConfig& cfg() const { return cfg_; }
  double gamma() const { return cfg_.gamma; }
  double L() const { return cfg_.L; }
  ModelParams model() const { return {cfg_.gamma, cfg_.L}; }

  Points points(int n, int count) {
    if (n == 0) return Points(1);
    return sample_regular_points(n, cfg_.L, count, rng_);
  }
  Points points(int n) { return points(n, cfg_.points); }

  // Runs one identity; an exception turns into a failing row carrying its message.
  void check(const std::string& id, const std::string& ref, int n, double tol, int samples,
             const std::function<double()>& residual, double L = -1.0) {
    push(id, ref, n, tol, samples, residual, false, L);
  }
  // Negative control: passes when the residual exceeds the threshold.
  void check_nonzero(const std::string& id, const std::string& ref, int n, double threshold, int samples,
                     const std::function<double()>& residual, double L = -1.0) {
    push(id, ref, n, threshold, samples, residual, true, L);
  }
  void add(const CheckResult& c, int n, double L = -1.0) {
    rows.push_back({c.check, c.paper_ref, n, cfg_.gamma, L < 0 ? cfg_.L : L, c.max_residual, c.tolerance, c.samples,
                    c.pass, ""});
  }

  std::vector<IdentityResult> rows;

private:
  void push(const std::string& id, const std::string& ref, int n, double tol, int samples,
            const std::function<double()>& residual, bool negative, double L) {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string error;
    try {
      value = residual();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool pass = negative ? value > tol : value < tol;
    rows.push_back({id, ref, n, cfg_.gamma, L < 0 ? cfg_.L : L, value, tol, samples, pass, error});
  }

  SuiteConfig cfg_;
  std::mt19937_64 rng_;
};

// ---------- sampling and comparison ----------

double uniform(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

double min_gap(const std::vector<cplx>& v) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) gap = std::min(gap, std::abs(v[a] - v[b]));
  return gap;
}

std::vector<cplx> random_rapidities(std::mt19937_64& g, int n, double im = 0.1, double gap = 0.3) {
  for (;;) {
    std::vector<cplx> lam(n);
    for (auto& l : lam) l = {uniform(g, -2.0, 2.0), im > 0 ? uniform(g, -im, im) : 0.0};
    if (min_gap(lam) >= gap) return lam;
  }
}

// A spectral parameter at distance at least gap from every entry of avoid.
cplx random_spectral(std::mt19937_64& g, const std::vector<cplx>& avoid, double im = 0.1, double gap = 0.3) {
  for (;;) {
    const cplx mu(uniform(g, -2.0, 2.0), im > 0 ? uniform(g, -im, im) : 0.0);
    bool ok = true;
    for (cplx a : avoid) ok = ok && std::abs(a - mu) >= gap;
    if (ok) return mu;
  }
}

ExpPolySum random_exppoly(std::mt19937_64& g, int n, int terms, int max_degree) {
  if (n == 0) return ExpPolySum::constant(0, {uniform(g, -1, 1), uniform(g, -1, 1)});
  ExpPolySum f(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<cplx> mu(n);
    for (auto& m : mu) m = {uniform(g, -2.0, 2.0), uniform(g, -0.2, 0.2)};
    ExpPolyTerm term{mu, {}};
    std::vector<int> deg(n, 0);
    const int total = max_degree ? static_cast<int>(g() % (max_degree + 1)) : 0;
    for (int d = 0; d < total; ++d) deg[g() % n]++;
    term.monomials.push_back({mono_key(deg), {uniform(g, -1, 1), uniform(g, -1, 1)}});
    if (total > 0) term.monomials.push_back({mono_key(std::vector<int>(n, 0)), {uniform(g, -1, 1), uniform(g, -1, 1)}});
    f.push_term(term);
  }
  return canonicalize(f);
}

AlcoveFunction random_piecewise(std::mt19937_64& g, int n) {
  if (n == 0) return vacuum();
  AlcoveFunction f(n);
  for (std::size_t p = 0; p < f.piece_count(); ++p) f.piece_at(p) = random_exppoly(g, n, 2, 1);
  return f;
}

AlcoveFunction random_symmetric(std::mt19937_64& g, int n) {
  if (n == 0) return vacuum();
  auto F = AlcoveFunction::symmetric_extension(random_exppoly(g, n, 2, 1));
  return F;
}

OrbitFunction random_orbit(std::mt19937_64& g, const std::vector<cplx>& lam, int nvars) {
  OrbitFunction o(lam, nvars);
  for (std::size_t i = 0; i < o.size(); ++i) o.entry_at(i) = random_exppoly(g, nvars, 2, 0);
  return o;
}

// max |a - b| relative to max(1, |a|, |b|) over the sample set
double compare(const PointFn& a, const PointFn& b, const Points& pts) {
  double diff = 0.0, scale = 1.0;
  for (const auto& x : pts) {
    const cplx va = a(x), vb = b(x);
    diff = std::max(diff, std::abs(va - vb));
    scale = std::max({scale, std::abs(va), std::abs(vb)});
  }
  return diff / scale;
}

double compare(const AlcoveFunction& a, const AlcoveFunction& b, const Points& pts) {
  if (a.n() != b.n()) throw std::invalid_argument("compared functions have different particle numbers");
  return compare([&](const std::vector<double>& x) { return a(x); }, [&](const std::vector<double>& x) { return b(x); },
                 pts);
}

double compare(const ExpPolySum& a, const ExpPolySum& b, const Points& pts) {
  return compare([&](const std::vector<double>& x) { return eval(a, x); },
                 [&](const std::vector<double>& x) { return eval(b, x); }, pts);
}

double compare(const OrbitFunction& a, const OrbitFunction& b, const Points& pts) {
  double diff = 0.0, scale = 1.0;
  for (const auto& x : pts)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const cplx va = eval(a.entry_at(i), x), vb = eval(b.entry_at(i), x);
      diff = std::max(diff, std::abs(va - vb));
      scale = std::max({scale, std::abs(va), std::abs(vb)});
    }
  return diff / scale;
}

// Largest value relative to max(1, largest value of the reference).
double vanishing(const AlcoveFunction& f, const AlcoveFunction& reference, const Points& pts) {
  double worst = 0.0, scale = 1.0;
  for (const auto& x : pts) {
    worst = std::max(worst, std::abs(f(x)));
    scale = std::max(scale, std::abs(reference(x)));
  }
  return worst / scale;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<double> sorted_down(std::vector<double> x) {
  std::sort(x.begin(), x.end(), std::greater<>());
  return x;
}

Points fundamental(Points pts) {
  for (auto& x : pts) x = sorted_down(x);
  return pts;
}

// ---------- small operator helpers ----------

AlcoveFunction op(Family f, cplx mu, const AlcoveFunction& F, const ModelParams& m) { return apply({f, mu, m}, F); }

std::vector<cplx> without(const std::vector<cplx>& v, std::vector<int> drop) {
  std::sort(drop.begin(), drop.end());
  std::vector<cplx> out;
  for (int j = 0; j < static_cast<int>(v.size()); ++j)
    if (!std::binary_search(drop.begin(), drop.end(), j)) out.push_back(v[j]);
  return out;
}

std::vector<cplx> with(std::vector<cplx> v, cplx mu) {
  v.push_back(mu);
  return v;
}

AlcoveFunction Psi(const std::vector<cplx>& lam, const ModelParams& m) {
  return bethe_wavefunction(make_rapidities(lam, m.gamma, m.L));
}

AlcoveFunction psi(const std::vector<cplx>& lam, const ModelParams& m) {
  return prewavefunction(make_rapidities(lam, m.gamma, m.L));
}

cplx tau(cplx mu, const std::vector<cplx>& lam, double gamma, int sign) { return tau_pm(mu, lam, gamma, sign); }

// Multiplication by theta(x_j - x_k).
AlcoveFunction theta(const AlcoveFunction& f, int j, int k) {
  AlcoveFunction out = f;
  out.set_continuous(false);
  const auto& perms = all_permutations(f.n());
  for (std::size_t p = 0; p < perms.size(); ++p) {
    const auto rank = perms[p].inverse();
    if (rank(j) > rank(k)) out.piece_at(p) = ExpPolySum::zero(f.n());
  }
  return out;
}

AlcoveFunction swap_positions(const AlcoveFunction& f, int j, int k) {
  return act_position(Permutation::transposition(f.n(), j, k), f);
}

// The reflection part of the Dunkl-type operator: d_{j,gamma} = d_j - gamma Lambda_j.
AlcoveFunction reflection_part(const AlcoveFunction& f, int j) { return derivative(f, j) - dunkl(f, j, 1.0); }

Permutation extend(const Permutation& w, int n) {
  auto im = w.images();
  for (int k = w.size() + 1; k <= n; ++k) im.push_back(k);
  return Permutation(im);
}

std::vector<int> permuted(const Permutation& w, const std::vector<int>& i) {
  std::vector<int> out;
  for (int k : i) out.push_back(w(k));
  return out;
}

// Reduced word built by always removing the largest descent.
std::vector<int> reduced_word_largest_first(Permutation w) {
  std::vector<int> word;
  const int n = w.size();
  for (;;) {
    int d = 0;
    for (int j = n - 1; j >= 1; --j)
      if (w(j) > w(j + 1)) {
        d = j;
        break;
      }
    if (d == 0) break;
    word.push_back(d);
    w = compose(w, Permutation::simple(n, d));
  }
  std::reverse(word.begin(), word.end());
  return word;
}

OrbitFunction deformed(const OrbitFunction& o, int j, double g) { return deformed_transposition_momentum(o, j, g); }
OrbitFunction swap_momenta(const OrbitFunction& o, int j, int k) {
  return act_momentum(Permutation::transposition(o.n(), j, k), o);
}

// ---------- dAHA axioms ----------

void suite_daha(Runner& r) {
  const double g = r.gamma();
  const int top = std::clamp(r.cfg().max_n, 2, 4);
  for (int N = 2; N <= top; ++N) {
    auto& rng = r.rng();
    const auto lam = random_rapidities(rng, N);
    const auto o = random_orbit(rng, lam, 2);
    const auto pts = r.points(2, 6);
    const std::string reg = "momentum-space representation by deformed transpositions and multiplication by lambda_k";
    r.check("momentum-involution", reg, N, 1e-9, N - 1, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j) w = std::max(w, compare(deformed(deformed(o, j, g), j, g), o, pts));
      return w;
    });
    if (N >= 3)
      r.check("momentum-braid", reg, N, 1e-9, N - 2, [&] {
      double w = 0.0;
      for (int j = 1; j + 1 < N; ++j)
        w = std::max(w, compare(deformed(deformed(deformed(o, j + 1, g), j, g), j + 1, g),
                                deformed(deformed(deformed(o, j, g), j + 1, g), j, g), pts));
      return w;
    });
    if (N >= 4)
      r.check("momentum-far-commute", reg, N, 1e-9, 1, [&] {
        return compare(deformed(deformed(o, 3, g), 1, g), deformed(deformed(o, 1, g), 3, g), pts);
      });
    r.check("momentum-cross-relation", reg, N, 1e-9, (N - 1) * N, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j)
        for (int k = 1; k <= N; ++k) {
          const int sk = Permutation::simple(N, j)(k);
          const auto lhs = deformed(mult_lambda(o, k), j, g) - mult_lambda(deformed(o, j, g), sk);
          const double delta = (k == j ? 1.0 : 0.0) - (k == j + 1 ? 1.0 : 0.0);
          w = std::max(w, compare(lhs, scale(-I * g * delta, o), pts));
        }
      return w;
    });
    r.check("momentum-commuting-multipliers", reg, N, 1e-9, N * N, [&] {
      double w = 0.0;
      for (int j = 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k)
          w = std::max(w, compare(mult_lambda(mult_lambda(o, j), k), mult_lambda(mult_lambda(o, k), j), pts));
      return w;
    });
    r.check("momentum-word-independence", "deformed permutations do not depend on the reduced word", N, 1e-9,
            static_cast<int>(factorial(N)), [&] {
              double w = 0.0;
              for (const auto& p : all_permutations(N)) {
                OrbitFunction alt = o;
                const auto word = reduced_word_largest_first(p);
                for (auto it = word.rbegin(); it != word.rend(); ++it) alt = deformed(alt, *it, g);
                w = std::max(w, compare(apply_deformed_word(o, p, g), alt, pts));
              }
              return w;
            });

    // position space: s_{j,gamma} = s_j + gamma I_{j,j+1} and X_k = -i d_k on analytic functions
    const auto f = random_exppoly(rng, N, 3, 1);
    const auto xs = r.points(N, 10);
    auto S = [&](const ExpPolySum& h, int j) { return deformed_transposition_position(h, j, g); };
    const std::string intr = "integral representation s_{j,gamma} = s_j + gamma I_j, X_k = -i d_k";
    r.check("integral-involution", intr, N, 1e-9, N - 1, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j) w = std::max(w, compare(S(S(f, j), j), f, xs));
      return w;
    });
    if (N >= 3)
      r.check("integral-braid", intr, N, 1e-9, N - 2, [&] {
      double w = 0.0;
      for (int j = 1; j + 1 < N; ++j)
        w = std::max(w, compare(S(S(S(f, j + 1), j), j + 1), S(S(S(f, j), j + 1), j), xs));
      return w;
    });
    if (N >= 4)
      r.check("integral-far-commute", intr, N, 1e-9, 1, [&] { return compare(S(S(f, 3), 1), S(S(f, 1), 3), xs); });
    r.check("integral-cross-relation", intr, N, 1e-9, (N - 1) * N, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j)
        for (int k = 1; k <= N; ++k) {
          const int sk = Permutation::simple(N, j)(k);
          const auto lhs = S(derivative(f, k), j) - derivative(S(f, j), sk);
          const double delta = (k == j ? 1.0 : 0.0) - (k == j + 1 ? 1.0 : 0.0);
          w = std::max(w, compare(lhs, scale(g * delta, f), xs));
        }
      return w;
    });

    // Dunkl-type representation on piecewise functions
    const auto F = random_piecewise(rng, N);
    const auto ys = r.points(N, 10);
    const std::string dk = "Dunkl-type representation s_j, X_k = -i d_{k,gamma}";
    r.check("dunkl-cross-relation", dk, N, 1e-9, (N - 1) * N, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j)
        for (int k = 1; k <= N; ++k) {
          const Permutation s = Permutation::simple(N, j);
          const auto lhs = act_position(s, dunkl(F, k, g)) - dunkl(act_position(s, F), s(k), g);
          const double delta = (k == j ? 1.0 : 0.0) - (k == j + 1 ? 1.0 : 0.0);
          w = std::max(w, compare(lhs, scale(g * delta, F), ys));
        }
      return w;
    });
    r.check("dunkl-commute", dk, N, 1e-9, N * (N - 1) / 2, [&] {
      double w = 0.0;
      for (int j = 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k)
          w = std::max(w, compare(dunkl(dunkl(F, k, g), j, g), dunkl(dunkl(F, j, g), k, g), ys));
      return w;
    });
  }
}

// ---------- wavefunction routes ----------

void suite_routes(Runner& r) {
  const auto m = r.model();
  for (int N = 1; N <= std::max(1, r.cfg().max_n); ++N) {
    const auto lam = random_rapidities(r.rng(), N, 0.2);
    const auto set = make_rapidities(lam, m.gamma, m.L);
    const auto pts = r.points(N, std::max(r.cfg().points, 50));
    const auto ref = prewavefunction(set, PrewaveRoute::orbit);
    const std::string pre = "pre-wavefunction from deformed momentum words, propagation, and creation operators";
    for (auto route : {PrewaveRoute::propagation, PrewaveRoute::creation, PrewaveRoute::creation_plus})
      r.check(std::string("prewave-orbit-vs-") + route_name(route), pre, N, 1e-9, static_cast<int>(pts.size()),
              [&] { return compare(ref, prewavefunction(set, route), pts); });
    const auto bref = bethe_wavefunction(set, BetheRoute::explicit_sum);
    const std::string bw = "Bethe wavefunction as symmetrized pre-wavefunction, explicit sum, and B-product";
    for (auto route : {BetheRoute::symmetrize, BetheRoute::creation})
      r.check(std::string("bethe-explicit-vs-") + route_name(route), bw, N, 1e-9, static_cast<int>(pts.size()),
              [&] { return compare(bref, bethe_wavefunction(set, route), pts); });
    r.check("bethe-symmetric", "Bethe wavefunction is symmetric in the positions", N, 1e-9, 1,
            [&] { return is_symmetric(bref) ? 0.0 : 1.0; });

    if (N <= 3)
      r.check("prewave-position-action", "w psi equals the inverse deformed momentum word on the orbit", N, 1e-9,
              static_cast<int>(factorial(N) * factorial(N)), [&] {
                OrbitFunction base(lam, N);
                std::vector<AlcoveFunction> family;
                for (const auto& sigma : all_permutations(N)) family.push_back(psi(base.point(sigma), m));
                const auto xs = r.points(N, 4);
                double w = 0.0;
                for (const auto& p : all_permutations(N)) {
                  const auto lhs = act_position(p, ref);
                  for (const auto& tau : all_permutations(N)) {
                    OrbitFunction o(lam, N);
                    for (std::size_t s = 0; s < o.size(); ++s) o.entry_at(s) = family[s].piece(tau);
                    const auto rhs = apply_deformed_word(o, p.inverse(), m.gamma).entry(Permutation::identity(N));
                    w = std::max(w, compare(lhs.piece(tau), rhs, xs));
                  }
                }
                return w;
              });

    if (N == 2) {
      r.check("bethe-two-particle-closed-form", "two-particle Bethe wavefunction with sign coefficients", 2, 1e-9,
              static_cast<int>(pts.size()), [&] {
                const cplx d = lam[0] - lam[1];
                auto closed = [&](const std::vector<double>& x) {
                  const double sgn = x[0] > x[1] ? 1.0 : -1.0;
                  const cplx e12 = std::exp(I * (lam[0] * x[0] + lam[1] * x[1]));
                  const cplx e21 = std::exp(I * (lam[1] * x[0] + lam[0] * x[1]));
                  return 0.5 * ((1.0 - I * m.gamma * sgn / d) * e12 + (1.0 + I * m.gamma * sgn / d) * e21);
                };
                return compare([&](const std::vector<double>& x) { return bref(x); }, closed, pts);
              });
      r.check("prewave-degenerate-pair", "coinciding pair: e^{i lambda (x1+x2)} (1 + gamma (x2-x1)_+)", 2, 1e-6,
              static_cast<int>(pts.size()), [&] {
                const double l0 = lam[0].real();
                const auto lim = prewavefunction_degenerate(make_rapidities({l0, l0}, m.gamma, m.L));
                auto closed = [&](const std::vector<double>& x) {
                  const double step = x[1] > x[0] ? x[1] - x[0] : 0.0;
                  return std::exp(I * l0 * (x[0] + x[1])) * (1.0 + m.gamma * step);
                };
                return compare([&](const std::vector<double>& x) { return lim.value(x); }, closed, pts);
              });
    }
  }
}

// ---------- QNLS eigenvalue problem and Dunkl system ----------

void suite_qnls(Runner& r) {
  const auto m = r.model();
  for (int N = 1; N <= std::max(1, r.cfg().max_n); ++N) {
    const auto set = make_rapidities(random_rapidities(r.rng(), N, 0.2), m.gamma, m.L);
    const SampleBudget budget{r.cfg().points, 10, r.rng()()};
    const auto pre = prewavefunction(set);
    for (const auto& c : verify_qnls(pre, set, true, budget).checks) {
      auto row = c;
      row.check = "prewave-" + c.check;
      r.add(row, N);
    }
    for (const auto& c : verify_qnls(bethe_wavefunction(set), set, false, budget).checks) {
      auto row = c;
      row.check = "bethe-" + c.check;
      r.add(row, N);
    }
    int used = 0;
    r.check("prewave-dunkl-eigen-finite-difference", "Dunkl-type eigen-system with finite-difference derivatives", N,
            1e-5, 0, [&] {
              double w = 0.0;
              for (const auto& x : r.points(N, r.cfg().points)) {
                const auto y = sorted_down(x);
                bool spaced = true;
                for (int a = 0; a + 1 < N; ++a) spaced = spaced && y[a] - y[a + 1] > 1e-3;
                if (!spaced) continue;
                ++used;
                for (int j = 1; j <= N; ++j)
                  w = std::max(w, rel(oracle::fd_dunkl(pre, j, m.gamma, x, 1e-4), I * set.lambda[j - 1] * pre(x)));
              }
              return w;
            });
    r.rows.back().samples = used * N;
  }
}

// ---------- algebraic Bethe ansatz on the symmetric sector ----------

struct Relation {
  const char* id;
  Family x, y;
  cplx coeff;  // [X_l, Y_m] = coeff/(l - m) (P_l Q_m - P_m Q_l)
  Family p, q;
};

std::vector<Relation> symmetric_relations(double g) {
  const cplx ig = I * g;
  return {
      {"AA", Family::A, Family::A, 0.0, Family::A, Family::A},
      {"BB", Family::B, Family::B, 0.0, Family::B, Family::B},
      {"CC", Family::C, Family::C, 0.0, Family::C, Family::C},
      {"DD", Family::D, Family::D, 0.0, Family::D, Family::D},
      {"AB", Family::A, Family::B, -ig, Family::B, Family::A},
      {"AC", Family::A, Family::C, ig, Family::C, Family::A},
      {"BA", Family::B, Family::A, -ig, Family::A, Family::B},
      {"BD", Family::B, Family::D, ig, Family::D, Family::B},
      {"CA", Family::C, Family::A, ig, Family::A, Family::C},
      {"CD", Family::C, Family::D, -ig, Family::D, Family::C},
      {"DB", Family::D, Family::B, ig, Family::B, Family::D},
      {"DC", Family::D, Family::C, -ig, Family::C, Family::D},
      {"AD", Family::A, Family::D, -ig * g, Family::B, Family::C},
      {"DA", Family::D, Family::A, -ig * g, Family::C, Family::B},
      {"BC", Family::B, Family::C, -I, Family::A, Family::D},
      {"CB", Family::C, Family::B, -I, Family::D, Family::A},
  };
}

// Residual of one commutation relation applied to F.
double relation_residual(const Relation& rel, cplx l, cplx mu, const AlcoveFunction& F, const ModelParams& m,
                         Runner& r) {
  const auto lhs = op(rel.x, l, op(rel.y, mu, F, m), m) - op(rel.y, mu, op(rel.x, l, F, m), m);
  AlcoveFunction rhs = scale(0.0, lhs);
  if (rel.coeff != 0.0)
    rhs = scale(rel.coeff / (l - mu), op(rel.p, l, op(rel.q, mu, F, m), m) - op(rel.p, mu, op(rel.q, l, F, m), m));
  const auto pts = r.points(lhs.n());
  // both sides are differences; measure against the size of the products
  const auto xy = op(rel.x, l, op(rel.y, mu, F, m), m);
  double diff = 0.0, scale_ = 1.0;
  for (const auto& x : pts) {
    diff = std::max(diff, std::abs(lhs(x) - rhs(x)));
    scale_ = std::max({scale_, std::abs(xy(x)), std::abs(rhs(x))});
  }
  return diff / scale_;
}

std::vector<int> default_quantum_numbers(int N) {
  std::vector<int> doubled(N);
  for (int j = 0; j < N; ++j) doubled[j] = 2 * j - (N - 1);
  return doubled;
}

void suite_aba(Runner& r) {
  const auto m = r.model();
  const double g = m.gamma;
  const int N = std::max(1, r.cfg().n);
  auto& rng = r.rng();

  // off-shell expansions of A, D, C on Psi
  if (N <= 3) {
    const auto lam = random_rapidities(rng, N);
    const cplx mu = random_spectral(rng, lam);
    const auto F = Psi(lam, m);
    const auto pts = r.points(N);
    r.check("APsi-expansion", "A_mu Psi as tau^+ Psi plus terms with one rapidity replaced by mu", N, 1e-8,
            static_cast<int>(pts.size()), [&] {
              AlcoveFunction rhs = scale(tau(mu, lam, g, 1) * std::exp(-I * mu * m.L / 2.0), F);
              for (int j = 0; j < N; ++j) {
                const auto hat = without(lam, {j});
                rhs = rhs + scale(tau(lam[j], hat, g, 1) * I * g / (lam[j] - mu) * std::exp(-I * lam[j] * m.L / 2.0),
                                  Psi(with(hat, mu), m));
              }
              return compare(op(Family::A, mu, F, m), rhs, pts);
            });
    r.check("DPsi-expansion", "D_mu Psi as tau^- Psi plus terms with one rapidity replaced by mu", N, 1e-8,
            static_cast<int>(pts.size()), [&] {
              AlcoveFunction rhs = scale(tau(mu, lam, g, -1) * std::exp(I * mu * m.L / 2.0), F);
              for (int j = 0; j < N; ++j) {
                const auto hat = without(lam, {j});
                rhs = rhs - scale(tau(lam[j], hat, g, -1) * I * g / (lam[j] - mu) * std::exp(I * lam[j] * m.L / 2.0),
                                  Psi(with(hat, mu), m));
              }
              return compare(op(Family::D, mu, F, m), rhs, pts);
            });
    r.check("CPsi-expansion-off-shell", "gamma C_mu Psi as single and double sums over removed rapidities", N, 1e-8,
            r.cfg().points, [&] {
              const auto lhs = scale(g, op(Family::C, mu, F, m));
              AlcoveFunction rhs = scale(0.0, lhs);
              for (int j = 0; j < N; ++j) {
                const auto hat = without(lam, {j});
                const cplx c = -I * g / (lam[j] - mu) *
                               (tau(lam[j], hat, g, -1) * tau(mu, hat, g, 1) * std::exp(I * (lam[j] - mu) * m.L / 2.0) -
                                tau(mu, hat, g, -1) * tau(lam[j], hat, g, 1) * std::exp(-I * (lam[j] - mu) * m.L / 2.0));
                rhs = rhs + scale(c, Psi(hat, m));
              }
              for (int j = 0; j < N; ++j)
                for (int k = j + 1; k < N; ++k) {
                  const auto hj = without(lam, {j}), hk = without(lam, {k}), hjk = without(lam, {j, k});
                  const cplx c = -(I * g / (lam[j] - mu)) * (I * g / (lam[k] - mu)) *
                                 (tau(lam[j], hj, g, -1) * tau(lam[k], hjk, g, 1) * std::exp(I * (lam[j] - lam[k]) * m.L / 2.0) +
                                  tau(lam[k], hk, g, -1) * tau(lam[j], hjk, g, 1) * std::exp(-I * (lam[j] - lam[k]) * m.L / 2.0));
                  rhs = rhs + scale(c, Psi(with(hjk, mu), m));
                }
              return compare(lhs, rhs, r.points(lhs.n()));
            });
    r.check("B-creates", "B_mu Psi_lambda = Psi_(lambda, mu)", N, 1e-8, r.cfg().points, [&] {
      return compare(op(Family::B, mu, F, m), Psi(with(lam, mu), m), r.points(N + 1));
    });
  }

  // on-shell: solver output
  if (g > 0 && N <= 3) {
    const auto sol = solve_bae(QuantumNumbers(default_quantum_numbers(N)), g, m.L);
    const auto& set = sol.rapidities;
    const auto& lam = set.lambda;
    const auto F = bethe_wavefunction(set);
    const auto pts = r.points(N, std::max(30, r.cfg().points));
    std::vector<cplx> mus;
    for (int k = 0; k < 5; ++k) mus.push_back(random_spectral(rng, lam, 0.2));
    r.check("transfer-eigenvalue", "(A_mu + D_mu) Psi = tau_mu Psi for Bethe-equation solutions", N, 1e-8,
            5 * static_cast<int>(pts.size()), [&] {
              double w = 0.0;
              for (cplx mu : mus)
                w = std::max(w, compare(transfer(mu, F, m), scale(transfer_eigenvalue(mu, set), F), pts));
              return w;
            });
    for (auto c : check_periodicity(F, set).checks) {
      c.check = "bethe-" + c.check;
      r.add(c, N);
    }
    if (N >= 2) {
      int used = 0;
      r.check_nonzero("prewave-not-periodic", "the pre-wavefunction is not periodic on shell", N, 1e-3, 0, [&] {
        const auto res = periodicity_residuals(prewavefunction(set), m.L);
        used = res.samples;
        return std::max(res.value, res.derivative);
      });
      r.rows.back().samples = used;
    }
    r.check("CPsi-expansion-on-shell", "gamma C_mu Psi in its simplified form for Bethe-equation solutions", N, 1e-8,
            r.cfg().points, [&] {
              const cplx mu = mus.front();
              const auto lhs = scale(g, op(Family::C, mu, F, m));
              AlcoveFunction rhs = scale(0.0, lhs);
              for (int j = 0; j < N; ++j) {
                const auto hat = without(lam, {j});
                const cplx c = -I * g * std::exp(I * lam[j] * m.L / 2.0) / (lam[j] - mu) * tau(lam[j], hat, g, -1) *
                               (tau(mu, hat, g, 1) * std::exp(-I * mu * m.L / 2.0) -
                                tau(mu, hat, g, -1) * std::exp(I * mu * m.L / 2.0));
                rhs = rhs + scale(c, Psi(hat, m));
              }
              for (int j = 0; j < N; ++j)
                for (int k = j + 1; k < N; ++k) {
                  const auto hjk = without(lam, {j, k});
                  const cplx c = -2.0 * (I * g) * (I * g) / ((lam[j] - mu) * (lam[k] - mu)) *
                                 std::exp(I * (lam[j] + lam[k]) * m.L / 2.0) * tau(lam[j], hjk, g, -1) *
                                 tau(lam[k], hjk, g, -1);
                  rhs = rhs + scale(c, Psi(with(hjk, mu), m));
                }
              return compare(lhs, rhs, r.points(lhs.n()));
            });
  }

  // quantum determinant and the Yang-Baxter algebra on inputs with at most two particles
  const int Nin = std::min(N, 2);
  const auto lam = random_rapidities(rng, Nin);
  const auto F = Psi(lam, m);
  const cplx l = random_spectral(rng, lam), mu = random_spectral(rng, with(lam, l));
  r.check("qdet-on-Psi", "quantum determinant acts on Bethe wavefunctions as e^{-gamma L/2}", Nin, 1e-8,
          r.cfg().points, [&] {
            return compare(qdet(mu, F, m), scale(std::exp(-g * m.L / 2.0), F), r.points(Nin));
          });
  r.check("qdet-commutes-A", "[A_lambda, qdet_mu] Psi = 0", Nin, 1e-8, r.cfg().points, [&] {
    return compare(op(Family::A, l, qdet(mu, F, m), m), qdet(mu, op(Family::A, l, F, m), m), r.points(Nin));
  });
  r.check("qdet-commutes-B", "[B_lambda, qdet_mu] Psi = 0", Nin, 1e-8, r.cfg().points, [&] {
    return compare(op(Family::B, l, qdet(mu, F, m), m), qdet(mu, op(Family::B, l, F, m), m), r.points(Nin + 1));
  });
  for (const auto& rel : symmetric_relations(g))
    r.check(std::string("yang-baxter-") + rel.id, "commutation relations of the monodromy entries on Psi", Nin, 1e-8,
            r.cfg().points, [&] { return relation_residual(rel, l, mu, F, m, r); });
  r.check("transfer-commute", "[T_lambda, T_mu] Psi = 0", Nin, 1e-8, r.cfg().points, [&] {
    return compare(transfer(l, transfer(mu, F, m), m), transfer(mu, transfer(l, F, m), m), r.points(Nin));
  });
  r.check("rmatrix-yang-baxter", "R12(l-m) R13(l) R23(m) = R23(m) R13(l) R12(l-m)", 0, 1e-13, 1,
          [&] { return ybe_residual(l, mu, g); });

  // large-L limit of A on Psi: e^{i mu L/2} A_mu Psi -> tau^+ Psi for Im mu > 0
  r.check("A-large-L-decay", "e^{i mu L/2} A_mu Psi approaches tau^+_mu Psi as L grows, Im mu > 0", Nin, 1.0, 3,
          [&] {
            const auto lreal = random_rapidities(rng, Nin, 0.0);
            const cplx z(random_spectral(rng, lreal, 0.0).real(), 0.5);
            const auto xs = sample_regular_points(Nin, 4.0, 5, rng);
            std::vector<double> res;
            for (double L : {5.0, 10.0, 20.0}) {
              const ModelParams ml{g, L};
              const auto G = Psi(lreal, ml);
              const auto lhs = scale(std::exp(I * z * L / 2.0), op(Family::A, z, G, ml));
              res.push_back(compare(lhs, scale(tau(z, lreal, g, 1), G), xs));
            }
            return std::max(res[1] / res[0], res[2] / res[1]);
          });
}

// ---------- non-symmetric Yang-Baxter algebra on the pre-wavefunction span ----------

struct NsRelation {
  const char* id;
  Family x, y;
  cplx coeff;
  Family p, q;
};

std::vector<NsRelation> nonsymmetric_relations(double g) {
  const cplx ig = I * g;
  return {
      {"a-a", Family::a, Family::a, 0.0, Family::a, Family::a},
      {"bminus-bplus", Family::b_minus, Family::b_plus, 0.0, Family::b_minus, Family::b_plus},
      {"cminus-cplus", Family::c_minus, Family::c_plus, 0.0, Family::c_minus, Family::c_plus},
      {"d-d", Family::d, Family::d, 0.0, Family::d, Family::d},
      {"a-bplus", Family::a, Family::b_plus, -ig, Family::b_plus, Family::a},
      {"bplus-a", Family::b_plus, Family::a, -ig, Family::a, Family::b_plus},
      {"d-bminus", Family::d, Family::b_minus, ig, Family::b_minus, Family::d},
      {"bminus-d", Family::b_minus, Family::d, ig, Family::d, Family::b_minus},
      {"a-cplus", Family::a, Family::c_plus, ig, Family::c_plus, Family::a},
      {"cplus-a", Family::c_plus, Family::a, ig, Family::a, Family::c_plus},
      {"d-cminus", Family::d, Family::c_minus, -ig, Family::c_minus, Family::d},
      {"cminus-d", Family::c_minus, Family::d, -ig, Family::d, Family::c_minus},
  };
}

void suite_nonsymmetric(Runner& r) {
  const auto m = r.model();
  const double g = m.gamma;
  auto& rng = r.rng();
  const int Nin = std::clamp(r.cfg().n, 1, 2);
  const auto lam = random_rapidities(rng, Nin);
  const auto f = psi(lam, m);
  const cplx l = random_spectral(rng, lam), mu = random_spectral(rng, with(lam, l));
  const std::string ybref = "non-symmetric Yang-Baxter algebra on the pre-wavefunction span";

  for (const auto& rel : nonsymmetric_relations(g))
    r.check(std::string("nonsym-") + rel.id, ybref, Nin, 1e-8, r.cfg().points, [&] {
      return relation_residual({rel.id, rel.x, rel.y, rel.coeff, rel.p, rel.q}, l, mu, f, m, r);
    });
  // [a_l, d_m] = gamma (c-_m b+_l - c+_l b-_m) and [d_l, a_m] = gamma (c+_m b-_l - c-_l b+_m)
  r.check("nonsym-a-d", ybref, Nin, 1e-8, r.cfg().points, [&] {
    const auto ad = op(Family::a, l, op(Family::d, mu, f, m), m);
    const auto lhs = ad - op(Family::d, mu, op(Family::a, l, f, m), m);
    const auto rhs = scale(g, op(Family::c_minus, mu, op(Family::b_plus, l, f, m), m) -
                                  op(Family::c_plus, l, op(Family::b_minus, mu, f, m), m));
    const auto pts = r.points(Nin);
    return compare(lhs, rhs, pts) / std::max(1.0, compare(ad, scale(0.0, ad), pts));
  });
  r.check("nonsym-d-a", ybref, Nin, 1e-8, r.cfg().points, [&] {
    const auto da = op(Family::d, l, op(Family::a, mu, f, m), m);
    const auto lhs = da - op(Family::a, mu, op(Family::d, l, f, m), m);
    const auto rhs = scale(g, op(Family::c_plus, mu, op(Family::b_minus, l, f, m), m) -
                                  op(Family::c_minus, l, op(Family::b_plus, mu, f, m), m));
    return compare(lhs, rhs, r.points(Nin));
  });
  for (Family b : {Family::b_minus, Family::b_plus})
    r.check_nonzero(std::string("nonsym-") + family_name(b) + "-self-commutator-nonzero",
                    "creation operators of one kind do not commute", Nin, 1e-3, r.cfg().points, [&] {
                      return compare(op(b, l, op(b, mu, f, m), m), op(b, mu, op(b, l, f, m), m), r.points(Nin + 2));
                    });

  // exchange of two creation operators through the last simple transposition
  r.check("bminus-exchange", "s_{N+1} b-_l b-_m - b-_m b-_l = i gamma/(l-m) [b-_l, b-_m] on psi", Nin, 1e-8,
          r.cfg().points, [&] {
            const auto lm = op(Family::b_minus, l, op(Family::b_minus, mu, f, m), m);
            const auto ml = op(Family::b_minus, mu, op(Family::b_minus, l, f, m), m);
            const auto s = Permutation::simple(Nin + 2, Nin + 1);
            return compare(act_position(s, lm) - ml, scale(I * g / (l - mu), lm - ml), r.points(Nin + 2));
          });
  r.check("bplus-exchange", "s_1 b+_l b+_m - b+_m b+_l = -i gamma/(l-m) [b+_l, b+_m] on psi", Nin, 1e-8,
          r.cfg().points, [&] {
            const auto lm = op(Family::b_plus, l, op(Family::b_plus, mu, f, m), m);
            const auto ml = op(Family::b_plus, mu, op(Family::b_plus, l, f, m), m);
            const auto s = Permutation::simple(Nin + 2, 1);
            return compare(act_position(s, lm) - ml, scale(-I * g / (l - mu), lm - ml), r.points(Nin + 2));
          });

  // creation operators build pre-wavefunctions
  const int N = std::clamp(r.cfg().n, 1, 3);
  const auto lam3 = random_rapidities(rng, N);
  const auto p3 = psi(lam3, m);
  const cplx nu = random_spectral(rng, lam3);
  r.check("bminus-appends", "b-_mu psi_lambda = psi_(lambda, mu)", N, 1e-9, r.cfg().points, [&] {
    return compare(op(Family::b_minus, nu, p3, m), psi(with(lam3, nu), m), r.points(N + 1));
  });
  r.check("bplus-prepends", "b+_mu psi_lambda = psi_(mu, lambda)", N, 1e-9, r.cfg().points, [&] {
    std::vector<cplx> front{nu};
    front.insert(front.end(), lam3.begin(), lam3.end());
    return compare(op(Family::b_plus, nu, p3, m), psi(front, m), r.points(N + 1));
  });

  // Dunkl-type operators and creation operators
  const auto h = propagation(random_exppoly(rng, N, 2, 0), g);
  for (const auto& [name, input] : {std::pair{std::string("psi"), p3}, std::pair{std::string("propagated"), h}}) {
    const std::string dref = "creation operators intertwine Dunkl-type operators";
    r.check("bminus-dunkl-" + name, dref, N, 1e-9, r.cfg().points * (N + 1), [&] {
      const auto b = op(Family::b_minus, nu, input, m);
      const auto pts = r.points(N + 1);
      double w = compare(dunkl(b, N + 1, g), scale(I * nu, b), pts);
      for (int j = 1; j <= N; ++j)
        w = std::max(w, compare(dunkl(b, j, g), op(Family::b_minus, nu, dunkl(input, j, g), m), pts));
      return w;
    });
    r.check("bplus-dunkl-" + name, dref, N, 1e-9, r.cfg().points * (N + 1), [&] {
      const auto b = op(Family::b_plus, nu, input, m);
      const auto pts = r.points(N + 1);
      double w = compare(dunkl(b, 1, g), scale(I * nu, b), pts);
      for (int j = 1; j <= N; ++j)
        w = std::max(w, compare(dunkl(b, j + 1, g), op(Family::b_plus, nu, dunkl(input, j, g), m), pts));
      return w;
    });
  }
  r.check("propagation-intertwines-bminus", "P_gamma (f e^{i mu x_{N+1}}) = b-_mu P_gamma f", N, 1e-9, r.cfg().points,
          [&] {
            const auto base = random_exppoly(rng, N, 2, 1);
            std::vector<int> map(N);
            for (int j = 0; j < N; ++j) map[j] = j + 1;
            std::vector<cplx> k(N + 1, 0.0);
            k[N] = nu;
            const auto extended = mul_plane_wave(remap(base, map, N + 1), k, 1.0);
            return compare(propagation(extended, g), op(Family::b_minus, nu, propagation(base, g), m), r.points(N + 1));
          });

  // a and d on psi through products of (1 -+ i gamma Delta_{k,N+1}) on the (lambda, mu) orbit
  for (int sign : {1, -1}) {
    const char* id = sign > 0 ? "a-psi-momentum-form" : "d-psi-momentum-form";
    r.check(id, "a and d on psi as products of deformed divided differences through the last momentum", N, 1e-9,
            r.cfg().points, [&] {
              const auto full = with(lam3, nu);
              OrbitFunction proto(full, N);
              std::vector<AlcoveFunction> family;
              std::vector<cplx> phase;
              for (const auto& sigma : all_permutations(N + 1)) {
                const auto pt = proto.point(sigma);
                family.push_back(psi(std::vector<cplx>(pt.begin(), pt.end() - 1), m));
                phase.push_back(std::exp(-static_cast<double>(sign) * I * pt.back() * m.L / 2.0));
              }
              AlcoveFunction rhs(N);
              for (const auto& tau_ : all_permutations(N)) {
                OrbitFunction o(full, N);
                for (std::size_t s = 0; s < o.size(); ++s) o.entry_at(s) = scale(phase[s], family[s].piece(tau_));
                // d applies Delta_{1,N+1} first; a only holds with Delta_{N,N+1} first
                for (int kk = 1; kk <= N; ++kk) {
                  const int k = sign > 0 ? N + 1 - kk : kk;
                  o = o + scale(-static_cast<double>(sign) * I * g, divided_difference(o, k, N + 1));
                }
                rhs.piece(tau_) = o.entry(Permutation::identity(N + 1));
              }
              return compare(op(sign > 0 ? Family::a : Family::d, nu, p3, m), rhs, r.points(N));
            });
  }

  // restriction to symmetric functions
  const auto F = random_symmetric(rng, N);
  r.check("restriction-a-d", "a and d restrict to A and D on symmetric functions", N, 1e-9, r.cfg().points, [&] {
    const auto pts = r.points(N);
    return std::max(compare(op(Family::a, nu, F, m), op(Family::A, nu, F, m), pts),
                    compare(op(Family::d, nu, F, m), op(Family::D, nu, F, m), pts));
  });
  r.check("restriction-b", "symmetrized b+ and b- equal B on symmetric functions", N, 1e-9, r.cfg().points, [&] {
    const auto pts = r.points(N + 1);
    const auto B = op(Family::B, nu, F, m);
    return std::max(compare(symmetrize(op(Family::b_plus, nu, F, m)), B, pts),
                    compare(symmetrize(op(Family::b_minus, nu, F, m)), B, pts));
  });
  r.check("restriction-c", "c+ and c- restrict to C/(N+1) on symmetric functions", N, 1e-9, r.cfg().points, [&] {
    const auto G = random_symmetric(rng, N + 1);
    const auto pts = r.points(N);
    const auto C = scale(1.0 / (N + 1.0), op(Family::C, nu, G, m));
    return std::max(compare(op(Family::c_plus, nu, G, m), C, pts), compare(op(Family::c_minus, nu, G, m), C, pts));
  });

  // large-L limit: e^{-i mu L/2} d_mu psi -> tau^- psi for Im mu < 0
  r.check("d-large-L-decay", "e^{-i mu L/2} d_mu psi approaches tau^-_mu psi as L grows, Im mu = -0.5", N, 1.0, 3,
          [&] {
            const auto lreal = random_rapidities(rng, N, 0.0);
            const cplx z(random_spectral(rng, lreal, 0.0).real(), -0.5);
            const auto xs = sample_regular_points(N, 4.0, 5, rng);
            const auto base = psi(lreal, m);
            std::vector<double> res;
            for (double L : {5.0, 10.0, 20.0}) {
              const ModelParams ml{g, L};
              const auto lhs = scale(std::exp(-I * z * L / 2.0), op(Family::d, z, base, ml));
              res.push_back(compare(lhs, scale(tau(z, lreal, g, -1), base), xs));
            }
            return std::max(res[1] / res[0], res[2] / res[1]);
          });
}

// ---------- Q-operator, TQ equation, asymptotics ----------

void suite_q(Runner& r) {
  const auto m = r.model();
  const double g = m.gamma;
  const int N = std::clamp(r.cfg().n, 1, 4);
  auto& rng = r.rng();

  const auto lam = random_rapidities(rng, N);
  const auto F = Psi(lam, m);
  const auto pts = r.points(N);
  r.check("Q-eigenvalue", "prod_j (-i d_{j,gamma} - mu) Psi = prod_j (lambda_j - mu) Psi", N, 1e-9,
          static_cast<int>(pts.size()), [&] {
            const cplx mu = random_spectral(rng, lam);
            return compare(q_operator(mu, F, g), scale(q_operator_scalar(mu, lam), F), pts);
          });
  r.check("Q-vanishes-at-rapidities", "Q_{lambda_j} Psi = 0", N, 1e-10, N * static_cast<int>(pts.size()), [&] {
    double w = 0.0;
    for (int j = 0; j < N; ++j) w = std::max(w, vanishing(q_operator(lam[j], F, g), F, pts));
    return w;
  });

  if (g <= 0) return;
  const auto sol = solve_bae(QuantumNumbers(default_quantum_numbers(N)), g, m.L);
  const auto& on = sol.rapidities.lambda;
  auto tq_rhs = [&](cplx mu) {
    cplx up = 1.0, down = 1.0;
    for (cplx x : on) {
      up *= x - mu - I * g;
      down *= x - mu + I * g;
    }
    return std::exp(-I * mu * m.L / 2.0) * up + std::exp(I * mu * m.L / 2.0) * down;
  };
  r.check("TQ-scalar", "tau_mu Q_mu = e^{-i mu L/2} Q_{mu + i gamma} + e^{i mu L/2} Q_{mu - i gamma} on shell", N,
          1e-10, 5 + N, [&] {
            double w = 0.0;
            for (int k = 0; k < 5; ++k) {
              const cplx mu = random_spectral(rng, on, 0.3);
              w = std::max(w, rel(transfer_eigenvalue_partial_fraction(mu, on, g, m.L) * q_operator_scalar(mu, on),
                                  tq_rhs(mu)));
            }
            for (cplx x : on) w = std::max(w, rel(0.0, tq_rhs(x)));
            return w;
          });
  r.check("transfer-eigenvalue-forms", "product and partial-fraction forms of tau_mu agree on shell", N, 1e-10, 5, [&] {
    double w = 0.0;
    for (int k = 0; k < 5; ++k) {
      const cplx mu = random_spectral(rng, on, 0.3);
      w = std::max(w, rel(transfer_eigenvalue_product(mu, on, g, m.L),
                          transfer_eigenvalue_partial_fraction(mu, on, g, m.L)));
    }
    return w;
  });
  if (N <= 3)
    r.check("TQ-operator", "T_mu Q_mu Psi = (e^{-i mu L/2} Q_{mu+i gamma} + e^{i mu L/2} Q_{mu-i gamma}) Psi", N, 1e-8,
            r.cfg().points, [&] {
              const auto G = bethe_wavefunction(sol.rapidities);
              const cplx mu = random_spectral(rng, on, 0.2);
              const auto lhs = transfer(mu, q_operator(mu, G, g), m);
              const auto rhs = scale(std::exp(-I * mu * m.L / 2.0), q_operator(mu + I * g, G, g)) +
                               scale(std::exp(I * mu * m.L / 2.0), q_operator(mu - I * g, G, g));
              return compare(lhs, rhs, r.points(N));
            });
  r.check("transfer-asymptotic-series", "power-sum series of log tau_mu: residual ratio 1e-4 within a factor 2", N,
          std::log10(2.0), 2, [&] {
            const auto rep = asymptotic_check(on, g, m.L, {100.0 * I, 1000.0 * I});
            return std::abs(std::log10(rep.ratio[0]) + 4.0);
          });
}

// ---------- regular-representation, plane-wave and Dunkl lemmas ----------

void suite_appendix_a(Runner& r) {
  const double g = r.gamma();
  auto& rng = r.rng();
  const int top = std::clamp(r.cfg().max_n, 3, 4);
  const auto lam = random_rapidities(rng, top);
  const auto o = random_orbit(rng, lam, 1);
  const auto pts = r.points(1, 6);
  auto D = [](const OrbitFunction& f, int a, int b) { return divided_difference(f, a, b); };
  auto S = [](const OrbitFunction& f, int a, int b) { return swap_momenta(f, a, b); };
  const std::string dd = "divided differences in the momentum representation";

  r.check("divided-difference-multiplier", dd, top, 1e-9, top * top * (top - 1), [&] {
    double w = 0.0;
    for (int j = 1; j <= top; ++j)
      for (int k = 1; k <= top; ++k) {
        if (j == k) continue;
        for (int l = 1; l <= top; ++l) {
          const int lbar = Permutation::transposition(top, j, k)(l);
          const auto lhs = D(mult_lambda(o, l), j, k) - mult_lambda(D(o, j, k), lbar);
          w = std::max(w, compare(lhs, scale((j == l ? 1.0 : 0.0) - (k == l ? 1.0 : 0.0), o), pts));
        }
      }
    return w;
  });
  if (top >= 4) {
    r.check("disjoint-commute", dd, top, 1e-9, 2, [&] {
      return std::max(compare(S(D(o, 3, 4), 1, 2), D(S(o, 1, 2), 3, 4), pts),
                      compare(D(D(o, 3, 4), 1, 2), D(D(o, 1, 2), 3, 4), pts));
    });
  }
  std::vector<std::tuple<int, int, int>> triples{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}};
  if (top >= 4) triples.insert(triples.end(), {{2, 4, 1}, {3, 1, 4}});
  auto over_triples = [&](const std::function<double(int, int, int)>& fn) {
    return [&, fn] {
      double w = 0.0;
      for (auto [j, k, l] : triples) w = std::max(w, fn(j, k, l));
      return w;
    };
  };
  const int nt = static_cast<int>(triples.size());
  r.check("divided-difference-commutator", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            const auto comm = D(D(o, k, l), j, k) - D(D(o, j, k), k, l);
            return compare(comm, S(D(D(S(o, j, k), k, l), j, k), k, l), pts);
          }));
  r.check("conjugated-divided-difference", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            return compare(S(D(S(o, j, k), k, l), j, k), S(D(S(o, k, l), j, k), k, l), pts);
          }));
  r.check("transpositions-past-divided-difference", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            return compare(S(S(D(o, j, k), k, l), j, k), D(S(S(o, k, l), j, k), k, l), pts);
          }));
  r.check("divided-difference-sandwich", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            return compare(D(S(D(o, k, l), j, k), k, l),
                           S(D(D(o, j, k), k, l), j, k) + D(D(S(o, j, k), k, l), j, k), pts);
          }));
  r.check("divided-difference-braid", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            return compare(D(D(D(o, j, k), k, l), j, k), D(D(D(o, k, l), j, k), k, l), pts);
          }));
  r.check("divided-difference-symmetric-kernel", dd, top, 1e-9, nt, over_triples([&](int j, int k, int l) {
            const auto sym = o + S(o, k, l);
            return compare(D(D(sym, j, l), j, k), D(D(sym, j, k), j, l), pts);
          }));

  // symmetrizer lemmas
  const std::string sy = "deformed transpositions acting on symmetrized momentum functions";
  for (int n = 1; n <= top - 1; ++n) {
    r.check("symmetrizer-tau-plus", sy, n, 1e-9, 1, [&] {
      const auto lam_n = random_rapidities(rng, n);
      const auto Sn = symmetrizer(random_orbit(rng, lam_n, 1));
      const cplx mu = random_spectral(rng, lam_n);
      const auto weight = mult_scalar(Sn, [&](const std::vector<cplx>& p) { return I * g / (p[n - 1] - mu); });
      OrbitFunction lhs = weight;
      for (int s = n - 1; s >= 1; --s) {
        OrbitFunction t = weight;
        for (int j = n - 1; j >= s; --j) t = deformed(t, j, g);
        lhs = lhs + t;
      }
      const auto rhs = mult_scalar(Sn, [&](const std::vector<cplx>& p) { return 1.0 - tau(mu, p, g, 1); });
      return compare(lhs, rhs, pts);
    });
    r.check("symmetrizer-tau-last", sy, n, 1e-9, 1, [&] {
      const auto lam_n = random_rapidities(rng, n + 1);
      const auto Sn = symmetrizer(random_orbit(rng, lam_n, 1), n);
      const auto weighted = mult_scalar(Sn, [&](const std::vector<cplx>& p) {
        return tau(p[n], std::vector<cplx>(p.begin(), p.end() - 1), g, 1);
      });
      OrbitFunction lhs = weighted, rhs = Sn;
      for (int s = 1; s <= n; ++s) {
        OrbitFunction a = weighted, b = Sn;
        for (int j = n; j >= s; --j) {
          a = act_momentum(Permutation::simple(n + 1, j), a);
          b = deformed(b, j, g);
        }
        lhs = lhs + a;
        rhs = rhs + b;
      }
      return compare(lhs, rhs, pts);
    });
    r.check("deformed-product-through-last", sy, n, 1e-9, 1, [&] {
      const auto oo = random_orbit(rng, random_rapidities(rng, n + 1), 1);
      OrbitFunction lhs = oo;
      for (int j = 1; j <= n; ++j) lhs = lhs + scale(I * g, divided_difference(lhs, j, n + 1));
      OrbitFunction rhs = oo;
      for (int j = n; j >= 1; --j) rhs = act_momentum(Permutation::simple(n + 1, j), rhs);
      for (int j = 1; j <= n; ++j) rhs = deformed(rhs, j, g);
      return compare(lhs, rhs, pts);
    });
  }

  // plane waves: position operators reduce to momentum operators
  for (int N = 2; N <= top; ++N) {
    const auto l = random_rapidities(rng, N);
    const auto e = ExpPolySum::plane_wave(l);
    const auto E = orbit_planewave(l);
    const auto id = Permutation::identity(N);
    const auto xs = r.points(N, 8);
    const std::string pw = "plane waves intertwine position and momentum operators";
    r.check("planewave-transposition", pw, N, 1e-9, N * (N - 1) / 2, [&] {
      double w = 0.0;
      for (int j = 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k) {
          const auto s = Permutation::transposition(N, j, k);
          w = std::max(w, compare(act_position(s, e), act_momentum(s, E).entry(id), xs));
        }
      return w;
    });
    r.check("planewave-reflection-integral", pw, N, 1e-9, N * (N - 1), [&] {
      double w = 0.0;
      for (int j = 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k)
          if (j != k)
            w = std::max(w, compare(reflection_integral(e, j, k), scale(-I, divided_difference(E, j, k).entry(id)), xs));
      return w;
    });
    r.check("planewave-deformed-transposition", pw, N, 1e-9, N - 1, [&] {
      double w = 0.0;
      for (int j = 1; j < N; ++j)
        w = std::max(w, compare(deformed_transposition_position(e, j, g), deformed(E, j, g).entry(id), xs));
      return w;
    });
    r.check("planewave-deformed-word", pw, N, 1e-9, static_cast<int>(factorial(N)), [&] {
      double w = 0.0;
      for (const auto& p : all_permutations(N))
        w = std::max(w, compare(deformed_word_position(e, p, g), apply_deformed_word(E, p.inverse(), g).entry(id), xs));
      return w;
    });
    r.check("planewave-coinciding-reflection-integral", "I_jk e^{i lambda} = (x_j - x_k) e^{i lambda} at lambda_j = lambda_k",
            N, 1e-9, 1, [&] {
              auto lc = l;
              lc[1] = lc[0];
              const auto ec = ExpPolySum::plane_wave(lc);
              return compare(reflection_integral(ec, 1, 2),
                             [&] {
                               std::vector<int> d1(N, 0), d2(N, 0);
                               d1[0] = 1;
                               d2[1] = 1;
                               return ExpPolySum::monomial(lc, d1, 1.0) - ExpPolySum::monomial(lc, d2, 1.0);
                             }(),
                             xs);
            });

    // Dunkl-type representation: reflection parts
    const auto F = random_piecewise(rng, N);
    r.check("dunkl-reflection-part-cross", "s_j Lambda_k - Lambda_{s_j k} s_j = -(delta_jk - delta_{j+1,k})", N, 1e-9,
            (N - 1) * N, [&] {
              double w = 0.0;
              for (int j = 1; j < N; ++j)
                for (int k = 1; k <= N; ++k) {
                  const auto s = Permutation::simple(N, j);
                  const auto lhs = act_position(s, reflection_part(F, k)) - reflection_part(act_position(s, F), s(k));
                  const double delta = (k == j ? 1.0 : 0.0) - (k == j + 1 ? 1.0 : 0.0);
                  w = std::max(w, compare(lhs, scale(-delta, F), xs));
                }
              return w;
            });
  }
}

// ---------- elementary integral operators ----------

void suite_appendix_b(Runner& r) {
  const auto m = r.model();
  auto& rng = r.rng();
  const int N = std::clamp(r.cfg().n, 1, 3);
  const cplx mu = random_spectral(rng, {});
  const auto f = random_piecewise(rng, N);
  const auto f1 = random_piecewise(rng, N + 1);
  auto e = [&](NonSymmetricKind k, const std::vector<int>& i, const AlcoveFunction& h) {
    return elementary_nonsymmetric_op(k, mu, i, h, m);
  };
  using K = NonSymmetricKind;
  std::vector<std::vector<int>> indices;
  for (int n = 0; n <= std::min(N, 2); ++n)
    for (const auto& i : distinct_tuples(N, n)) indices.push_back(i);

  r.check("elementary-permutation-equivariance", "w e(i) = e(w i) w, with w_+ for the shifted variants", N, 1e-9,
          static_cast<int>(factorial(N) * indices.size()) * 6, [&] {
            double w = 0.0;
            const auto pn = r.points(N, 4), pn1 = r.points(N + 1, 4);
            for (const auto& p : all_permutations(N)) {
              const auto wp = shift_embed(p);
              const auto we = extend(p, N + 1);
              const auto wf = act_position(p, f);
              for (const auto& i : indices) {
                const auto wi = permuted(p, i);
                w = std::max(w, compare(act_position(we, e(K::e_hat_minus, i, f)), e(K::e_hat_minus, wi, wf), pn1));
                w = std::max(w, compare(act_position(wp, e(K::e_hat_plus, i, f)), e(K::e_hat_plus, wi, wf), pn1));
                w = std::max(w, compare(act_position(p, e(K::e_bar_plus, i, f)), e(K::e_bar_plus, wi, wf), pn));
                w = std::max(w, compare(act_position(p, e(K::e_bar_minus, i, f)), e(K::e_bar_minus, wi, wf), pn));
                w = std::max(w, compare(act_position(p, e(K::e_check_plus, i, f1)),
                                        e(K::e_check_plus, wi, act_position(we, f1)), pn));
                w = std::max(w, compare(act_position(p, e(K::e_check_minus, i, f1)),
                                        e(K::e_check_minus, wi, act_position(wp, f1)), pn));
              }
            }
            return w;
          });

  const auto Fs = random_symmetric(rng, N + 1);
  r.check("check-operators-agree-on-symmetric", "e-check-plus and e-check-minus coincide on symmetric functions", N,
          1e-9, static_cast<int>(indices.size()), [&] {
            double w = 0.0;
            const auto pn = r.points(N, 6);
            for (const auto& i : indices) w = std::max(w, compare(e(K::e_check_plus, i, Fs), e(K::e_check_minus, i, Fs), pn));
            return w;
          });

  const auto Fn = random_symmetric(rng, N);
  r.check("elementary-restriction",
          "on the fundamental alcove the elementary operators reduce to the symmetric ones or vanish", N, 1e-9,
          static_cast<int>(indices.size()) * 6, [&] {
            double w = 0.0;
            const auto pn = fundamental(r.points(N, 6)), pn1 = fundamental(r.points(N + 1, 6));
            auto zero = [](const AlcoveFunction& h, const Points& pts) { return compare(h, scale(0.0, h), pts); };
            for (const auto& i : indices) {
              // e-hat keeps x_{N+1} (resp. x_1) above all of x_i, impossible on the alcove unless i is empty
              if (i.empty()) {
                w = std::max(w, compare(e(K::e_hat_minus, i, Fn),
                                        elementary_symmetric_op(SymmetricKind::E_hat, mu, {N + 1}, Fn, m), pn1));
                w = std::max(w, compare(e(K::e_hat_plus, i, Fn),
                                        elementary_symmetric_op(SymmetricKind::E_hat, mu, {1}, Fn, m), pn1));
              } else {
                w = std::max({w, zero(e(K::e_hat_minus, i, Fn), pn1), zero(e(K::e_hat_plus, i, Fn), pn1)});
              }
              const bool inc = std::is_sorted(i.begin(), i.end());
              auto against = [&](const AlcoveFunction& got, SymmetricKind kind, const AlcoveFunction& in) {
                return inc ? compare(got, elementary_symmetric_op(kind, mu, i, in, m), pn) : zero(got, pn);
              };
              w = std::max(w, against(e(K::e_bar_plus, i, Fn), SymmetricKind::E_bar_plus, Fn));
              w = std::max(w, against(e(K::e_bar_minus, i, Fn), SymmetricKind::E_bar_minus, Fn));
              w = std::max(w, against(e(K::e_check_plus, i, Fs), SymmetricKind::E_check, Fs));
              w = std::max(w, against(e(K::e_check_minus, i, Fs), SymmetricKind::E_check, Fs));
            }
            return w;
          });

  // derivatives and step functions against the creation-type elementary operators, on smooth inputs
  const auto pn1 = r.points(N + 1, 10);
  const auto fs = AlcoveFunction::from_analytic(random_exppoly(rng, N, 2, 1));
  int counted = 0;
  r.check("elementary-derivative-free-index", "d_j commutes with e-hat(i) when j is not in i", N, 1e-9, 0, [&] {
    double w = 0.0;
    for (const auto& i : indices)
      for (int j = 1; j <= N; ++j) {
        if (std::find(i.begin(), i.end(), j) != i.end()) continue;
        counted += 2;
        w = std::max(w, compare(derivative(e(K::e_hat_minus, i, fs), j), e(K::e_hat_minus, i, derivative(fs, j)), pn1));
        w = std::max(w, compare(derivative(e(K::e_hat_plus, i, fs), j + 1), e(K::e_hat_plus, i, derivative(fs, j)), pn1));
      }
    return w;
  });
  r.rows.back().samples = counted * static_cast<int>(pn1.size());
  r.check("elementary-derivative-single-index", "d_j e-hat(j) - e-hat(j) d_j is a reflected step times e-hat()", N,
          1e-9, 2 * N, [&] {
            double w = 0.0;
            const auto e0m = e(K::e_hat_minus, {}, fs), e0p = e(K::e_hat_plus, {}, fs);
            for (int j = 1; j <= N; ++j) {
              const auto lm = derivative(e(K::e_hat_minus, {j}, fs), j) - e(K::e_hat_minus, {j}, derivative(fs, j));
              w = std::max(w, compare(lm, scale(-1.0, theta(swap_positions(e0m, j, N + 1), N + 1, j)), pn1));
              const auto lp = derivative(e(K::e_hat_plus, {j}, fs), j + 1) - e(K::e_hat_plus, {j}, derivative(fs, j));
              w = std::max(w, compare(lp, theta(swap_positions(e0p, 1, j + 1), j + 1, 1), pn1));
            }
            return w;
          });
  auto contains = [](const std::vector<int>& i, int j) { return std::find(i.begin(), i.end(), j) != i.end(); };
  // residual of theta_jk e(i) - e(i) theta_jk = theta_jk e(i) theta_kj, with the shift j -> j+1 for e-hat-plus
  counted = 0;
  auto step_residual = [&](bool holds_case) {
    double w = 0.0;
    for (const auto& i : indices)
      for (int j = 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k) {
          if (j == k) continue;
          // e-hat-minus fails when only j is in i, e-hat-plus when only k is
          if ((!contains(i, j) || contains(i, k)) == holds_case) {
            ++counted;
            const auto em = e(K::e_hat_minus, i, fs);
            w = std::max(w, compare(theta(em, j, k) - e(K::e_hat_minus, i, theta(fs, j, k)),
                                    theta(e(K::e_hat_minus, i, theta(fs, k, j)), j, k), pn1));
          }
          if ((!contains(i, k) || contains(i, j)) == holds_case) {
            ++counted;
            const auto ep = e(K::e_hat_plus, i, fs);
            w = std::max(w, compare(theta(ep, j + 1, k + 1) - e(K::e_hat_plus, i, theta(fs, j, k)),
                                    theta(e(K::e_hat_plus, i, theta(fs, k, j)), j + 1, k + 1), pn1));
          }
        }
    return w;
  };
  r.check("elementary-step-functions", "theta_jk e-hat(i) - e-hat(i) theta_jk = theta_jk e-hat(i) theta_kj outside the one-sided cases",
          N, 1e-9, 0, [&] { return step_residual(true); });
  r.rows.back().samples = std::exchange(counted, 0) * static_cast<int>(pn1.size());
  if (N >= 2)
    r.check_nonzero("elementary-step-functions-excluded-case", "the step-function identity fails when exactly one of j, k is in i on the integrated side",
                    N, 1e-3, 0, [&] { return step_residual(false); });
  if (N >= 2) r.rows.back().samples = counted * static_cast<int>(pn1.size());
  auto partial_b = [&](K kind, int n) {
    AlcoveFunction acc = scale(0.0, e(kind, {}, fs));
    for (const auto& i : distinct_tuples(N, n)) acc = acc + e(kind, i, fs);
    return acc;
  };
  r.check("partial-creation-recursion", "(d_{N+1} - i mu) b-(n+1) = Lambda_{N+1} b-(n), mirrored for b+", N, 1e-9, N,
          [&] {
            double w = 0.0;
            for (int n = 0; n < N; ++n) {
              const auto bm1 = partial_b(K::e_hat_minus, n + 1), bm = partial_b(K::e_hat_minus, n);
              w = std::max(w, compare(derivative(bm1, N + 1) - scale(I * mu, bm1), reflection_part(bm, N + 1), pn1));
              const auto bp1 = partial_b(K::e_hat_plus, n + 1), bp = partial_b(K::e_hat_plus, n);
              w = std::max(w, compare(derivative(bp1, 1) - scale(I * mu, bp1), reflection_part(bp, 1), pn1));
            }
            return w;
          });
  r.check("full-creation-reflection-vanishes", "Lambda_{N+1} b-(N) = Lambda_1 b+(N) = 0", N, 1e-9, 2, [&] {
    const auto bm = partial_b(K::e_hat_minus, N), bp = partial_b(K::e_hat_plus, N);
    return std::max(vanishing(reflection_part(bm, N + 1), bm, pn1), vanishing(reflection_part(bp, 1), bp, pn1));
  });
}

// ---------- oracle cross-checks ----------

int input_size(Family f, int out) {
  if (f == Family::B || f == Family::b_plus || f == Family::b_minus) return out - 1;
  if (f == Family::C || f == Family::c_plus || f == Family::c_minus) return out + 1;
  return out;
}

void suite_oracle(Runner& r) {
  const auto m = r.model();
  auto& rng = r.rng();
  const cplx mu = random_spectral(rng, {}, 0.2);
  for (Family fam : {Family::A, Family::B, Family::C, Family::D, Family::a, Family::b_plus, Family::b_minus,
                     Family::c_plus, Family::c_minus, Family::d}) {
    for (int out = 1; out <= 2; ++out) {
      const int in = input_size(fam, out);
      if (in < 0 || in > 2) continue;
      const auto f = is_symmetric_family(fam) ? random_symmetric(rng, in) : random_piecewise(rng, in);
      r.check(std::string("quadrature-") + family_name(fam), "exact operator application against nested quadrature", in,
              1e-6, r.cfg().points, [&] {
                const OperatorSpec spec{fam, mu, m};
                const auto exact = apply(spec, f);
                double w = 0.0;
                for (const auto& x : r.points(out)) w = std::max(w, rel(oracle::quad_apply(spec, f, x).value, exact(x)));
                return w;
              });
    }
  }

  auto ip = [&](const AlcoveFunction& u, const AlcoveFunction& v) { return oracle::inner_product(u, v, m.L).value; };
  const cplx mc = std::conj(mu);
  const std::string adj = "formal adjoints under the L2 inner product on the box";
  for (int n = 0; n <= 1; ++n) {
    r.check("adjoint-B-C", adj, n, 1e-6, 1, [&] {
      const auto F = random_symmetric(rng, n), G = random_symmetric(rng, n + 1);
      return rel(ip(op(Family::B, mu, F, m), G), ip(F, op(Family::C, mc, G, m)) / (n + 1.0));
    });
    r.check("adjoint-b-c", adj, n, 1e-6, 2, [&] {
      const auto f = random_piecewise(rng, n), h = random_piecewise(rng, n + 1);
      return std::max(rel(ip(op(Family::b_plus, mu, f, m), h), ip(f, op(Family::c_minus, mc, h, m))),
                      rel(ip(op(Family::b_minus, mu, f, m), h), ip(f, op(Family::c_plus, mc, h, m))));
    });
  }
  for (int n = 1; n <= 2; ++n)
    r.check("adjoint-a-d", adj, n, 1e-6, 2, [&] {
      const auto f = random_piecewise(rng, n), h = random_piecewise(rng, n);
      const auto F = random_symmetric(rng, n), G = random_symmetric(rng, n);
      return std::max(rel(ip(op(Family::a, mu, f, m), h), ip(f, op(Family::d, mc, h, m))),
                      rel(ip(op(Family::A, mu, F, m), G), ip(F, op(Family::D, mc, G, m))));
    });
  r.check("adjoint-elementary", "e-hat(+-) is adjoint to e-check(-+), e-bar(+) to e-bar(-)", 2, 1e-6, 0, [&] {
    using K = NonSymmetricKind;
    const auto f = random_piecewise(rng, 1), h = random_piecewise(rng, 2), k = random_piecewise(rng, 1);
    auto e = [&](K kind, cplx z, const std::vector<int>& i, const AlcoveFunction& x) {
      return elementary_nonsymmetric_op(kind, z, i, x, m);
    };
    double w = 0.0;
    for (const auto& i : {std::vector<int>{}, std::vector<int>{1}}) {
      w = std::max(w, rel(ip(e(K::e_hat_plus, mu, i, f), h), ip(f, e(K::e_check_minus, mc, i, h))));
      w = std::max(w, rel(ip(e(K::e_hat_minus, mu, i, f), h), ip(f, e(K::e_check_plus, mc, i, h))));
      w = std::max(w, rel(ip(e(K::e_bar_plus, mu, i, f), k), ip(f, e(K::e_bar_minus, mc, i, k))));
    }
    return w;
  });
  r.rows.back().samples = 6;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dAHA-axioms", "wavefunction-routes", "QNLS-eigen",
                                              "ABA",         "nonsymmetric-YBA",    "Q-operator",
                                              "appendix-A",  "appendix-B",          "oracle-crosscheck"};
  return names;
}

std::string canonical_suite_name(const std::string& name) {
  for (const auto& s : suite_names())
    if (lower(s) == lower(name)) return s;
  throw UnknownSuiteError("unknown suite: " + name);
}

std::vector<IdentityResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
  const std::string s = canonical_suite_name(name);
  const auto& names = suite_names();
  const auto salt = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), s) - names.begin());
  Runner r(cfg, salt);
  if (s == "dAHA-axioms") suite_daha(r);
  else if (s == "wavefunction-routes") suite_routes(r);
  else if (s == "QNLS-eigen") suite_qnls(r);
  else if (s == "ABA") suite_aba(r);
  else if (s == "nonsymmetric-YBA") suite_nonsymmetric(r);
  else if (s == "Q-operator") suite_q(r);
  else if (s == "appendix-A") suite_appendix_a(r);
  else if (s == "appendix-B") suite_appendix_b(r);
  else suite_oracle(r);
  return std::move(r.rows);
}

bool all_pass(const std::vector<IdentityResult>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const IdentityResult& r) { return r.pass; });
}

void to_json(nlohmann::json& j, const IdentityResult& r) {
  j = {{"identity_id", r.identity_id}, {"paper_ref", r.paper_ref},       {"n", r.n},
       {"gamma", r.gamma},             {"L", r.L},                       {"max_residual", r.max_residual},
       {"tolerance", r.tolerance},     {"samples", r.samples},           {"pass", r.pass}};
  if (!r.error.empty()) j["error"] = r.error;
}

}  // namespace qnls
