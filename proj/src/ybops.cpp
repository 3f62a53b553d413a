#include "qnls/ybops.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnls {

namespace {

const cplx I(0.0, 1.0);

// Integration limit: +L/2, -L/2 or an output coordinate.
struct Limit {
  enum class Kind { top, bottom, coord };
  Kind kind = Kind::coord;
  int index = 0;
  static Limit top() { return {Kind::top, 0}; }
  static Limit bottom() { return {Kind::bottom, 0}; }
  static Limit coord(int k) { return {Kind::coord, k}; }
};

// Input argument of f: an output coordinate or an integration variable (1-based).
struct Arg {
  bool is_y = false;
  int index = 0;
};

Arg xarg(int k) { return {false, k}; }
Arg yarg(int m) { return {true, m}; }

// prefactor * theta(chain) * prod_m int_{lower_m}^{upper_m} dy_m
//   e^{i mu (sum_{k in phase} x_k - sum_m y_m)} f(args)
struct IntegralTerm {
  cplx prefactor = 1.0;
  std::vector<int> chain;
  std::vector<int> phase;
  std::vector<std::pair<Limit, Limit>> y;  // (lower, upper)
  std::vector<Arg> args;
};

void require_cap(int n) {
  if (n > kExactParticleCap)
    throw ParticleCapError("exact operator application is limited to " + std::to_string(kExactParticleCap) +
                           " input particles");
}

// Splits every y-interval at the output coordinates lying inside it, so that on
// each segment combination the ordering of f's arguments is fixed.
AlcoveFunction apply_terms(const std::vector<IntegralTerm>& terms, const AlcoveFunction& f, int M, cplx mu, double L,
                           const std::vector<Permutation>* only = nullptr) {
  AlcoveFunction out(M);
  const std::vector<Permutation> all = only ? std::vector<Permutation>{} : all_permutations(M);
  const std::vector<Permutation>& targets = only ? *only : all;
  const int K = f.n();

  for (const auto& sigma : targets) {
    std::vector<int> level(M + 1, 0);
    for (int r = 1; r <= M; ++r) level[sigma(r)] = r;
    auto level_of = [&](const Limit& l) {
      switch (l.kind) {
        case Limit::Kind::top: return 0;
        case Limit::Kind::bottom: return M + 1;
        default: return level[l.index];
      }
    };
    // Bound at a level: 0 is +L/2, M+1 is -L/2.
    auto bound_at = [&](int lev) {
      if (lev == 0) return Bound::constant(L / 2.0);
      if (lev == M + 1) return Bound::constant(-L / 2.0);
      return Bound::coordinate(sigma(lev));
    };

    ExpPolySum acc(M);
    for (const auto& t : terms) {
      bool ok = true;
      for (std::size_t c = 1; c < t.chain.size(); ++c)
        if (level[t.chain[c - 1]] >= level[t.chain[c]]) ok = false;
      if (!ok) continue;

      const int ny = static_cast<int>(t.y.size());
      std::vector<int> gap_lo(ny), gap_hi(ny);
      cplx sign = t.prefactor;
      for (int m = 0; m < ny; ++m) {
        const int lo = level_of(t.y[m].first), up = level_of(t.y[m].second);
        if (lo == up) ok = false;
        if (up > lo) sign = -sign;
        gap_lo[m] = std::min(lo, up);
        gap_hi[m] = std::max(lo, up) - 1;
      }
      if (!ok) continue;

      std::vector<cplx> wave(M + ny, 0.0);
      for (int k : t.phase) wave[k - 1] += mu;
      for (int m = 0; m < ny; ++m) wave[M + m] -= mu;
      std::vector<int> slot(K);
      for (int k = 0; k < K; ++k) slot[k] = t.args[k].is_y ? M + t.args[k].index : t.args[k].index;
      std::vector<int> drop(M + ny, 0);
      for (int v = 1; v <= M; ++v) drop[v - 1] = v;

      std::vector<int> gap(gap_lo);
      for (;;) {
        for (int a = 0; a < ny; ++a)
          for (int b = a + 1; b < ny; ++b)
            if (gap[a] == gap[b]) throw std::logic_error("two integration variables share a gap");
        // rank 2*level for coordinates, 2*gap+1 for integration variables
        std::vector<double> rep(K);
        for (int k = 0; k < K; ++k)
          rep[k] = t.args[k].is_y ? -(2.0 * gap[t.args[k].index - 1] + 1.0) : -2.0 * level[t.args[k].index];
        const ExpPolySum& piece = f.piece(ordering_of(rep));
        if (!piece.empty()) {
          ExpPolySum g = mul_plane_wave(remap(piece, slot, M + ny), wave, sign);
          for (int m = 0; m < ny; ++m) g = integrate(g, M + m + 1, bound_at(gap[m] + 1), bound_at(gap[m]));
          acc += remap(g, drop, M);
        }
        int a = 0;
        while (a < ny && ++gap[a] > gap_hi[a]) {
          gap[a] = gap_lo[a];
          ++a;
        }
        if (a == ny) break;
      }
    }
    out.piece(sigma) = canonicalize(acc);
  }
  return out;
}

std::vector<int> complement(int N, const std::vector<int>& i) {
  std::vector<int> c;
  for (int k = 1; k <= N; ++k)
    if (std::find(i.begin(), i.end(), k) == i.end()) c.push_back(k);
  return c;
}

int position_in(const std::vector<int>& i, int k) {
  for (std::size_t m = 0; m < i.size(); ++m)
    if (i[m] == k) return static_cast<int>(m) + 1;
  return 0;
}

// Arguments x with x_{i_m} replaced by y_m.
std::vector<Arg> replaced_args(int N, const std::vector<int>& i, int y_offset = 0) {
  std::vector<Arg> a(N);
  for (int k = 1; k <= N; ++k) {
    const int m = position_in(i, k);
    a[k - 1] = m ? yarg(m + y_offset) : xarg(k);
  }
  return a;
}

IntegralTerm term_e_bar(bool plus, cplx mu, const std::vector<int>& i, int N, double L, cplx weight) {
  IntegralTerm t;
  const int n = static_cast<int>(i.size());
  t.prefactor = weight * std::exp((plus ? -1.0 : 1.0) * I * mu * L / 2.0);
  t.chain = i;
  t.phase = i;
  for (int m = 1; m <= n; ++m) {
    if (plus)
      t.y.push_back({m < n ? Limit::coord(i[m]) : Limit::bottom(), Limit::coord(i[m - 1])});
    else
      t.y.push_back({Limit::coord(i[m - 1]), m > 1 ? Limit::coord(i[m - 2]) : Limit::top()});
  }
  t.args = replaced_args(N, i);
  return t;
}

IntegralTerm term_e_hat(bool plus, const std::vector<int>& i, int N, cplx weight) {
  IntegralTerm t;
  const int n = static_cast<int>(i.size());
  t.prefactor = weight;
  if (plus) {
    for (int v : i) t.chain.push_back(v + 1);
    t.chain.push_back(1);
    t.phase = t.chain;
    for (int m = 1; m <= n; ++m)
      t.y.push_back({m < n ? Limit::coord(i[m] + 1) : Limit::coord(1), Limit::coord(i[m - 1] + 1)});
    t.args.resize(N);
    for (int k = 1; k <= N; ++k) {
      const int m = position_in(i, k);
      t.args[k - 1] = m ? yarg(m) : xarg(k + 1);
    }
  } else {
    t.chain.push_back(N + 1);
    for (int v : i) t.chain.push_back(v);
    t.phase = t.chain;
    for (int m = 1; m <= n; ++m)
      t.y.push_back({Limit::coord(i[m - 1]), m > 1 ? Limit::coord(i[m - 2]) : Limit::coord(N + 1)});
    t.args = replaced_args(N, i);
  }
  return t;
}

// Output has N coordinates, f has N+1 arguments.
IntegralTerm term_e_check(bool plus, const std::vector<int>& i, int N, cplx weight) {
  IntegralTerm t;
  const int n = static_cast<int>(i.size());
  t.prefactor = weight;
  t.chain = i;
  t.phase = i;
  if (plus) {
    // y slot 1 is y_0 (appended last), slot m+1 is y_m
    t.y.push_back({n >= 1 ? Limit::coord(i[0]) : Limit::bottom(), Limit::top()});
    for (int m = 1; m <= n; ++m) t.y.push_back({m < n ? Limit::coord(i[m]) : Limit::bottom(), Limit::coord(i[m - 1])});
    t.args = replaced_args(N, i, 1);
    t.args.push_back(yarg(1));
  } else {
    for (int m = 1; m <= n + 1; ++m)
      t.y.push_back({m <= n ? Limit::coord(i[m - 1]) : Limit::bottom(), m > 1 ? Limit::coord(i[m - 2]) : Limit::top()});
    t.args.push_back(yarg(n + 1));
    const auto rest = replaced_args(N, i);
    t.args.insert(t.args.end(), rest.begin(), rest.end());
  }
  return t;
}

// Symmetric elementary operators on x_1 > ... > x_M; arguments are x_{i^c} then y.
IntegralTerm term_symmetric(SymmetricKind kind, cplx mu, const std::vector<int>& i, int M, double L, cplx weight) {
  IntegralTerm t;
  const int n = static_cast<int>(i.size());
  t.prefactor = weight;
  t.chain = i;
  t.phase = i;
  int ny = 0;
  switch (kind) {
    case SymmetricKind::E_hat:
      ny = n - 1;
      for (int m = 1; m <= ny; ++m) t.y.push_back({Limit::coord(i[m]), Limit::coord(i[m - 1])});
      break;
    case SymmetricKind::E_bar_plus:
      ny = n;
      t.prefactor *= std::exp(-I * mu * L / 2.0);
      for (int m = 1; m <= n; ++m) t.y.push_back({m < n ? Limit::coord(i[m]) : Limit::bottom(), Limit::coord(i[m - 1])});
      break;
    case SymmetricKind::E_bar_minus:
      ny = n;
      t.prefactor *= std::exp(I * mu * L / 2.0);
      for (int m = 1; m <= n; ++m) t.y.push_back({Limit::coord(i[m - 1]), m > 1 ? Limit::coord(i[m - 2]) : Limit::top()});
      break;
    case SymmetricKind::E_check:
      ny = n + 1;
      for (int m = 1; m <= n + 1; ++m)
        t.y.push_back({m <= n ? Limit::coord(i[m - 1]) : Limit::bottom(), m > 1 ? Limit::coord(i[m - 2]) : Limit::top()});
      break;
  }
  for (int k : complement(M, i)) t.args.push_back(xarg(k));
  for (int m = 1; m <= ny; ++m) t.args.push_back(yarg(m));
  return t;
}

int symmetric_output_dim(SymmetricKind kind, int input) {
  switch (kind) {
    case SymmetricKind::E_hat: return input + 1;
    case SymmetricKind::E_check: return input - 1;
    default: return input;
  }
}

AlcoveFunction apply_symmetric_terms(const std::vector<IntegralTerm>& terms, const AlcoveFunction& F, int M, cplx mu,
                                     double L) {
  const std::vector<Permutation> fundamental{Permutation::identity(M)};
  const auto partial = apply_terms(terms, F, M, mu, L, &fundamental);
  return AlcoveFunction::symmetric_extension(partial.piece(Permutation::identity(M)));
}

void require_symmetric(const AlcoveFunction& F) {
  if (!is_symmetric(F)) throw std::invalid_argument("symmetric operator applied to a non-symmetric function");
}

// Output orderings of M coordinates with coordinate `low` smallest and, if
// high > 0, coordinate `high` largest.
std::vector<Permutation> orderings_with_extremes(int M, int low, int high) {
  std::vector<Permutation> out;
  for (const auto& s : all_permutations(M))
    if (s(M) == low && (high == 0 || s(1) == high)) out.push_back(s);
  return out;
}

std::vector<IntegralTerm> b_terms(bool plus, int N, double gamma) {
  std::vector<IntegralTerm> terms;
  cplx g = 1.0;
  for (int n = 0; n <= N; ++n, g *= gamma)
    for (const auto& i : distinct_tuples(N, n)) terms.push_back(term_e_hat(plus, i, N, g));
  return terms;
}

}  // namespace

std::vector<std::vector<int>> distinct_tuples(int N, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(N + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= N; ++k) {
      if (used[k]) continue;
      used[k] = true;
      cur.push_back(k);
      self(self);
      cur.pop_back();
      used[k] = false;
    }
  };
  rec(rec);
  return out;
}

std::vector<std::vector<int>> increasing_tuples(int N, int n) {
  std::vector<std::vector<int>> out;
  for (auto& t : distinct_tuples(N, n))
    if (std::is_sorted(t.begin(), t.end())) out.push_back(t);
  return out;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::a: return "a";
    case Family::b_plus: return "b+";
    case Family::b_minus: return "b-";
    case Family::c_plus: return "c+";
    case Family::c_minus: return "c-";
    case Family::d: return "d";
  }
  return "?";
}

bool is_symmetric_family(Family f) {
  return f == Family::A || f == Family::B || f == Family::C || f == Family::D;
}

bool is_symmetric(const AlcoveFunction& F, double tol) {
  const auto& fund = F.piece(Permutation::identity(F.n()));
  const double scale = std::max(1.0, fund.max_coeff());
  for (const auto& s : all_permutations(F.n()))
    if ((F.piece(s) - act_position(s, fund)).max_coeff() > tol * scale) return false;
  return true;
}

AlcoveFunction insert_boundary(const AlcoveFunction& F, int pos, bool top, double L) {
  const int n = F.n();
  if (pos < 1 || pos > n) throw std::out_of_range("insertion position out of range");
  const int M = n - 1;
  AlcoveFunction out(M);
  std::vector<int> map(n);
  for (int k = 1; k <= n; ++k) map[k - 1] = k < pos ? k : (k == pos ? 0 : k - 1);
  for (const auto& sigma : all_permutations(M)) {
    std::vector<int> level(M + 1, 0);
    for (int r = 1; r <= M; ++r) level[sigma(r)] = r;
    std::vector<double> rep(n);
    for (int k = 1; k <= n; ++k) {
      if (k == pos)
        rep[k - 1] = top ? 1.0 : -(M + 1.0);
      else
        rep[k - 1] = -static_cast<double>(level[k < pos ? k : k - 1]);
    }
    const auto& piece = F.piece(ordering_of(rep));
    out.piece(sigma) = remap(substitute(piece, pos, Bound::constant(top ? L / 2.0 : -L / 2.0)), map, M);
  }
  return out;
}

AlcoveFunction elementary_symmetric_op(SymmetricKind kind, cplx mu, const std::vector<int>& i, const AlcoveFunction& F,
                                       const ModelParams& model) {
  require_cap(F.n());
  require_symmetric(F);
  const int M = symmetric_output_dim(kind, F.n());
  if (M < 0) throw std::invalid_argument("operator needs at least one particle");
  for (std::size_t m = 0; m < i.size(); ++m) {
    if (i[m] < 1 || i[m] > M) throw std::out_of_range("multi-index entry out of range");
    if (m > 0 && i[m] <= i[m - 1]) throw std::invalid_argument("symmetric multi-index must increase");
  }
  if (kind == SymmetricKind::E_hat && i.empty()) throw std::invalid_argument("E-hat needs a nonempty multi-index");
  return apply_symmetric_terms({term_symmetric(kind, mu, i, M, model.L, 1.0)}, F, M, mu, model.L);
}

AlcoveFunction elementary_nonsymmetric_op(NonSymmetricKind kind, cplx mu, const std::vector<int>& i,
                                          const AlcoveFunction& f, const ModelParams& model) {
  const bool check = kind == NonSymmetricKind::e_check_plus || kind == NonSymmetricKind::e_check_minus;
  const int N = check ? f.n() - 1 : f.n();
  require_cap(f.n());
  if (N < 0) throw std::invalid_argument("operator needs at least one particle");
  for (std::size_t m = 0; m < i.size(); ++m) {
    if (i[m] < 1 || i[m] > N) throw std::out_of_range("multi-index entry out of range");
    for (std::size_t l = 0; l < m; ++l)
      if (i[l] == i[m]) throw std::invalid_argument("multi-index entries must be distinct");
  }
  switch (kind) {
    case NonSymmetricKind::e_bar_plus: return apply_terms({term_e_bar(true, mu, i, N, model.L, 1.0)}, f, N, mu, model.L);
    case NonSymmetricKind::e_bar_minus: return apply_terms({term_e_bar(false, mu, i, N, model.L, 1.0)}, f, N, mu, model.L);
    case NonSymmetricKind::e_hat_plus: return apply_terms({term_e_hat(true, i, N, 1.0)}, f, N + 1, mu, model.L);
    case NonSymmetricKind::e_hat_minus: return apply_terms({term_e_hat(false, i, N, 1.0)}, f, N + 1, mu, model.L);
    case NonSymmetricKind::e_check_plus: return apply_terms({term_e_check(true, i, N, 1.0)}, f, N, mu, model.L);
    case NonSymmetricKind::e_check_minus: return apply_terms({term_e_check(false, i, N, 1.0)}, f, N, mu, model.L);
  }
  throw std::logic_error("unknown operator kind");
}

AlcoveFunction apply_symmetric(const OperatorSpec& spec, const AlcoveFunction& F) {
  require_cap(F.n());
  require_symmetric(F);
  const double gamma = spec.model.gamma, L = spec.model.L;
  const cplx mu = spec.mu;
  std::vector<IntegralTerm> terms;
  int M = F.n();
  switch (spec.family) {
    case Family::A:
    case Family::D: {
      const auto kind = spec.family == Family::A ? SymmetricKind::E_bar_plus : SymmetricKind::E_bar_minus;
      cplx g = 1.0;
      for (int n = 0; n <= M; ++n, g *= gamma)
        for (const auto& i : increasing_tuples(M, n)) terms.push_back(term_symmetric(kind, mu, i, M, L, g));
      break;
    }
    case Family::B: {
      const int N = F.n();
      M = N + 1;
      cplx g = 1.0 / (N + 1.0);
      for (int n = 0; n <= N; ++n, g *= gamma)
        for (const auto& i : increasing_tuples(M, n + 1)) terms.push_back(term_symmetric(SymmetricKind::E_hat, mu, i, M, L, g));
      break;
    }
    case Family::C: {
      M = F.n() - 1;
      if (M < 0) return AlcoveFunction(0, true);  // C annihilates the vacuum
      cplx g = M + 1.0;
      for (int n = 0; n <= M; ++n, g *= gamma)
        for (const auto& i : increasing_tuples(M, n)) terms.push_back(term_symmetric(SymmetricKind::E_check, mu, i, M, L, g));
      break;
    }
    default: throw std::invalid_argument("not a symmetric operator family");
  }
  return apply_symmetric_terms(terms, F, M, mu, L);
}

AlcoveFunction apply_c_direct(const OperatorSpec& spec, const AlcoveFunction& f) {
  const bool plus = spec.family == Family::c_plus;
  if (!plus && spec.family != Family::c_minus) throw std::invalid_argument("not a c operator");
  require_cap(f.n());
  const int N = f.n() - 1;
  if (N < 0) return AlcoveFunction(0);
  std::vector<IntegralTerm> terms;
  cplx g = 1.0;
  for (int n = 0; n <= N; ++n, g *= spec.model.gamma)
    for (const auto& i : distinct_tuples(N, n)) terms.push_back(term_e_check(plus, i, N, g));
  return apply_terms(terms, f, N, spec.mu, spec.model.L);
}

AlcoveFunction apply_a_via_b(cplx mu, const AlcoveFunction& f, const ModelParams& model) {
  require_cap(f.n());
  const int N = f.n();
  const auto targets = orderings_with_extremes(N + 1, 1, 0);
  const auto bf = apply_terms(b_terms(true, N, model.gamma), f, N + 1, mu, model.L, &targets);
  return insert_boundary(bf, 1, false, model.L);
}

AlcoveFunction apply_d_via_b(cplx mu, const AlcoveFunction& f, const ModelParams& model) {
  require_cap(f.n());
  const int N = f.n();
  std::vector<Permutation> targets;
  for (const auto& s : all_permutations(N + 1))
    if (s(1) == N + 1) targets.push_back(s);
  const auto bf = apply_terms(b_terms(false, N, model.gamma), f, N + 1, mu, model.L, &targets);
  return insert_boundary(bf, N + 1, true, model.L);
}

AlcoveFunction apply_nonsymmetric(const OperatorSpec& spec, const AlcoveFunction& f) {
  require_cap(f.n());
  const double gamma = spec.model.gamma, L = spec.model.L;
  const cplx mu = spec.mu;
  const int N = f.n();
  switch (spec.family) {
    case Family::a:
    case Family::d: {
      const bool plus = spec.family == Family::a;
      std::vector<IntegralTerm> terms;
      cplx g = 1.0;
      for (int n = 0; n <= N; ++n, g *= gamma)
        for (const auto& i : distinct_tuples(N, n)) terms.push_back(term_e_bar(plus, mu, i, N, L, g));
      return apply_terms(terms, f, N, mu, L);
    }
    case Family::b_plus:
    case Family::b_minus: return apply_terms(b_terms(spec.family == Family::b_plus, N, gamma), f, N + 1, mu, L);
    case Family::c_plus:
    case Family::c_minus: {
      if (N == 0) return AlcoveFunction(0);
      if (gamma == 0.0) return apply_c_direct(spec, f);
      const int M = N - 1;
      if (spec.family == Family::c_plus) {
        // gamma c+ f(x) = (b+ f)(-L/2, x, L/2) - (b+ g)(-L/2, x), g = f(., L/2)
        const auto t1 = orderings_with_extremes(N + 1, 1, N + 1);
        auto first = apply_terms(b_terms(true, N, gamma), f, N + 1, mu, L, &t1);
        first = insert_boundary(insert_boundary(first, N + 1, true, L), 1, false, L);
        const auto g = insert_boundary(f, N, true, L);
        const auto t2 = orderings_with_extremes(N, 1, 0);
        const auto second = insert_boundary(apply_terms(b_terms(true, M, gamma), g, N, mu, L, &t2), 1, false, L);
        return scale(1.0 / gamma, first - second);
      }
      // gamma c- f(x) = (b- f)(-L/2, x, L/2) - (b- h)(x, L/2), h = f(-L/2, .)
      const auto t1 = orderings_with_extremes(N + 1, 1, N + 1);
      auto first = apply_terms(b_terms(false, N, gamma), f, N + 1, mu, L, &t1);
      first = insert_boundary(insert_boundary(first, N + 1, true, L), 1, false, L);
      const auto h = insert_boundary(f, 1, false, L);
      std::vector<Permutation> t2;
      for (const auto& s : all_permutations(N))
        if (s(1) == N) t2.push_back(s);
      const auto second = insert_boundary(apply_terms(b_terms(false, M, gamma), h, N, mu, L, &t2), N, true, L);
      return scale(1.0 / gamma, first - second);
    }
    default: throw std::invalid_argument("not a non-symmetric operator family");
  }
}

AlcoveFunction apply(const OperatorSpec& spec, const AlcoveFunction& f) {
  return is_symmetric_family(spec.family) ? apply_symmetric(spec, f) : apply_nonsymmetric(spec, f);
}

AlcoveFunction elementary_E_bar_plus_altform(cplx mu, const std::vector<int>& i, const AlcoveFunction& F,
                                             const ModelParams& model) {
  const int N = F.n();
  require_cap(N);
  require_symmetric(F);
  const int n = static_cast<int>(i.size());
  const double L = model.L;
  const ExpPolySum& fund = F.piece(Permutation::identity(N));
  const auto ic = complement(N, i);
  ExpPolySum acc(N);
  // j_m ranges over i_m <= j_m < i_{m+1} (with i_{n+1} = N+1); y_{j_m} lies in (x_{j_m+1}, x_{j_m}),
  // the remaining arguments y_{j^c_m} equal x_{i^c_m}, and y_1 > ... > y_N.
  std::vector<int> j(i);
  if (n > 0)
    for (;;) {
      bool valid = true;
      for (int m = 1; m < n; ++m)
        if (j[m - 1] >= j[m]) valid = false;
      if (valid) {
        const auto jc = complement(N, j);
        // variables 1..N are x, N+1..N+n are y_{j_1}..y_{j_n}
        std::vector<int> slot(N);
        for (int m = 0; m < n; ++m) slot[j[m] - 1] = N + m + 1;
        for (std::size_t m = 0; m < jc.size(); ++m) slot[jc[m] - 1] = ic[m];
        std::vector<cplx> wave(N + n, 0.0);
        for (int m = 0; m < n; ++m) {
          wave[i[m] - 1] += mu;
          wave[N + m] -= mu;
        }
        ExpPolySum g = mul_plane_wave(remap(fund, slot, N + n), wave, std::exp(-I * mu * L / 2.0));
        for (int m = 0; m < n; ++m) {
          const Bound lower = j[m] + 1 <= N ? Bound::coordinate(j[m] + 1) : Bound::constant(-L / 2.0);
          g = integrate(g, N + m + 1, lower, Bound::coordinate(j[m]));
        }
        std::vector<int> drop(N + n, 0);
        for (int v = 1; v <= N; ++v) drop[v - 1] = v;
        acc += remap(g, drop, N);
      }
      int m = n - 1;
      while (m >= 0) {
        const int hi = (m + 1 < n ? i[m + 1] : N + 1) - 1;
        if (++j[m] <= hi) break;
        j[m] = i[m];
        --m;
      }
      if (m < 0) break;
    }
  else
    acc = scale(std::exp(-I * mu * L / 2.0), fund);
  return AlcoveFunction::symmetric_extension(canonicalize(acc));
}

AlcoveFunction apply_A_altform(cplx mu, const AlcoveFunction& F, const ModelParams& model) {
  if (F.n() > 3) throw ParticleCapError("the split-index form of A is limited to 3 particles");
  const int N = F.n();
  AlcoveFunction out(N, true);
  cplx g = 1.0;
  for (int n = 0; n <= N; ++n, g *= model.gamma)
    for (const auto& i : increasing_tuples(N, n)) out = out + scale(g, elementary_E_bar_plus_altform(mu, i, F, model));
  out.set_continuous(true);
  return out;
}

Matrix4 rmatrix(cplx lambda, double gamma) {
  if (lambda == 0.0) throw std::invalid_argument("R-matrix needs a nonzero spectral parameter");
  Matrix4 R{};
  const cplx c = -I * gamma / lambda;
  for (int a = 0; a < 4; ++a) R[a][a] = 1.0;
  // P swaps the tensor factors: |01> <-> |10>
  R[0][0] += c;
  R[3][3] += c;
  R[1][2] += c;
  R[2][1] += c;
  return R;
}

double ybe_residual(cplx lambda, cplx mu, double gamma) {
  using M8 = Eigen::Matrix<cplx, 8, 8>;
  // embed a two-site matrix on sites (p, q) of C^2 (x) C^2 (x) C^2
  auto embed = [](const Matrix4& R, int p, int q) {
    M8 out = M8::Zero();
    for (int row = 0; row < 8; ++row)
      for (int col = 0; col < 8; ++col) {
        auto bit = [](int v, int site) { return (v >> (2 - site)) & 1; };
        const int r = 3 - p - q;
        if (bit(row, r) != bit(col, r)) continue;
        out(row, col) = R[2 * bit(row, p) + bit(row, q)][2 * bit(col, p) + bit(col, q)];
      }
    return out;
  };
  const M8 R12 = embed(rmatrix(lambda - mu, gamma), 0, 1);
  const M8 R13 = embed(rmatrix(lambda, gamma), 0, 2);
  const M8 R23 = embed(rmatrix(mu, gamma), 1, 2);
  return (R12 * R13 * R23 - R23 * R13 * R12).cwiseAbs().maxCoeff();
}

AlcoveFunction transfer(cplx mu, const AlcoveFunction& F, const ModelParams& model) {
  return apply_symmetric({Family::A, mu, model}, F) + apply_symmetric({Family::D, mu, model}, F);
}

AlcoveFunction qdet(cplx mu, const AlcoveFunction& F, const ModelParams& model) {
  const cplx mp = mu - I * model.gamma / 2.0, mm = mu + I * model.gamma / 2.0;
  const auto ad = apply_symmetric({Family::A, mp, model}, apply_symmetric({Family::D, mm, model}, F));
  if (F.n() == 0) return ad;
  const auto bc = apply_symmetric({Family::B, mp, model}, apply_symmetric({Family::C, mm, model}, F));
  return ad - scale(model.gamma, bc);
}

cplx q_operator_scalar(cplx mu, const std::vector<cplx>& lambda) {
  cplx p = 1.0;
  for (cplx l : lambda) p *= l - mu;
  return p;
}

AlcoveFunction q_operator(cplx mu, const AlcoveFunction& F, double gamma) {
  AlcoveFunction out = F;
  for (int j = 1; j <= F.n(); ++j) out = scale(-I, dunkl(out, j, gamma)) - scale(mu, out);
  out.set_continuous(F.continuous());
  return out;
}

}  // namespace qnls
