#include "qnls/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qnls/momrep.hpp"
#include "qnls/ybops.hpp"

namespace qnls {

namespace {

const cplx I(0.0, 1.0);

void require_regular(const RapiditySet& r) {
  if (r.n() > 1 && min_pairwise_gap(r.lambda) < kRegularityGap)
    throw RegularityError("rapidities coincide; use the degenerate limit");
}

AlcoveFunction prewave_orbit(const RapiditySet& r) {
  const int N = r.n();
  const OrbitFunction E = orbit_planewave(r.lambda);
  AlcoveFunction out(N, true);
  for (const auto& sigma : all_permutations(N)) {
    // piece on the alcove of sigma is w~_gamma^{-1} w~ e^{i lambda} with w = sigma^{-1}
    const auto moved = apply_deformed_word(act_momentum(sigma.inverse(), E), sigma, r.gamma);
    out.piece(sigma) = canonicalize(moved.entry(Permutation::identity(N)));
  }
  return out;
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double coefficient_scale(const AlcoveFunction& F) {
  double s = 1.0;
  for (std::size_t p = 0; p < F.piece_count(); ++p) s = std::max(s, F.piece_at(p).max_coeff());
  return s;
}

// Largest coefficient of G - c F, relative to the size of F.
double coefficient_residual(const AlcoveFunction& G, cplx c, const AlcoveFunction& F) {
  double worst = 0.0;
  for (std::size_t p = 0; p < F.piece_count(); ++p)
    worst = std::max(worst, canonicalize(G.piece_at(p) - scale(c, F.piece_at(p))).max_coeff());
  return worst / (coefficient_scale(F) * std::max(1.0, std::abs(c)));
}

}  // namespace

const char* route_name(PrewaveRoute r) {
  switch (r) {
    case PrewaveRoute::orbit: return "orbit";
    case PrewaveRoute::propagation: return "propagation";
    case PrewaveRoute::creation: return "creation";
    case PrewaveRoute::creation_plus: return "creation-plus";
  }
  return "?";
}

const char* route_name(BetheRoute r) {
  switch (r) {
    case BetheRoute::symmetrize: return "symmetrize";
    case BetheRoute::explicit_sum: return "explicit";
    case BetheRoute::creation: return "creationB";
  }
  return "?";
}

AlcoveFunction vacuum() { return AlcoveFunction::symmetric_extension(ExpPolySum::constant(0, 1.0)); }

AlcoveFunction prewavefunction(const RapiditySet& r, PrewaveRoute route) {
  require_regular(r);
  const int N = r.n();
  switch (route) {
    case PrewaveRoute::orbit: return prewave_orbit(r);
    case PrewaveRoute::propagation: return propagation(ExpPolySum::plane_wave(r.lambda), r.gamma);
    case PrewaveRoute::creation: {
      AlcoveFunction f = vacuum();
      for (int k = 0; k < N; ++k) f = apply_nonsymmetric({Family::b_minus, r.lambda[k], r.model()}, f);
      f.set_continuous(true);
      return f;
    }
    case PrewaveRoute::creation_plus: {
      AlcoveFunction f = vacuum();
      for (int k = N - 1; k >= 0; --k) f = apply_nonsymmetric({Family::b_plus, r.lambda[k], r.model()}, f);
      f.set_continuous(true);
      return f;
    }
  }
  throw std::logic_error("unknown route");
}

DegenerateLimit prewavefunction_degenerate(const RapiditySet& r, double delta) {
  const int N = r.n();
  // clusters of (numerically) equal rapidities, by union of close pairs
  std::vector<int> cluster(N);
  for (int j = 0; j < N; ++j) cluster[j] = j;
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k)
      if (std::abs(r.lambda[j] - r.lambda[k]) < kRegularityGap) {
        const int from = cluster[k], to = cluster[j];
        for (int& c : cluster)
          if (c == from) c = to;
      }
  // offsets spread each cluster symmetrically: +-1 for pairs, evenly spaced for larger clusters
  std::vector<double> dir(N, 0.0);
  bool degenerate = false;
  for (int c = 0; c < N; ++c) {
    std::vector<int> members;
    for (int j = 0; j < N; ++j)
      if (cluster[j] == c) members.push_back(j);
    const int m = static_cast<int>(members.size());
    if (m < 2) continue;
    degenerate = true;
    for (int t = 0; t < m; ++t) dir[members[t]] = 2.0 * t - (m - 1.0);
  }
  if (!degenerate) return {prewavefunction(r, PrewaveRoute::orbit), 0.0};
  double norm = 0.0;
  for (double d : dir) norm += d * d;
  for (double& d : dir) d /= std::sqrt(norm);

  auto central = [&](double h) {
    RapiditySet plus = r, minus = r;
    for (int j = 0; j < N; ++j) {
      plus.lambda[j] += h * dir[j];
      minus.lambda[j] -= h * dir[j];
    }
    return scale(0.5, prewave_orbit(plus) + prewave_orbit(minus));
  };
  const AlcoveFunction coarse = central(delta), fine = central(delta / 2);
  AlcoveFunction value = scale(4.0 / 3.0, fine) - scale(1.0 / 3.0, coarse);
  value.set_continuous(true);

  std::mt19937_64 rng(0x5EED);
  double accuracy = 0.0;
  for (const auto& x : sample_regular_points(N, r.L, 50, rng)) accuracy = std::max(accuracy, rel_diff(value(x), fine(x)));
  if (accuracy > 1e-5) throw ExtrapolationError("degenerate limit: extrapolation disagreement above 1e-5");
  return {std::move(value), accuracy};
}

AlcoveFunction bethe_wavefunction(const RapiditySet& r, BetheRoute route) {
  require_regular(r);
  const int N = r.n();
  switch (route) {
    case BetheRoute::symmetrize: return symmetrize(prewavefunction(r, PrewaveRoute::orbit));
    case BetheRoute::explicit_sum: {
      ExpPolySum fund(N);
      const double norm = 1.0 / static_cast<double>(factorial(N));
      for (const auto& w : all_permutations(N)) {
        std::vector<cplx> lw(N);
        for (int j = 0; j < N; ++j) lw[j] = r.lambda[w(j + 1) - 1];
        fund += ExpPolySum::plane_wave(lw, norm * coeff_G(lw, r.gamma));
      }
      return AlcoveFunction::symmetric_extension(canonicalize(fund));
    }
    case BetheRoute::creation: {
      AlcoveFunction F = vacuum();
      for (int k = 0; k < N; ++k) F = apply_symmetric({Family::B, r.lambda[k], r.model()}, F);
      return F;
    }
  }
  throw std::logic_error("unknown route");
}

Report verify_qnls(const AlcoveFunction& F, const RapiditySet& r, bool prewave, const SampleBudget& budget) {
  Report rep;
  const int N = F.n();
  cplx E = 0.0;
  for (cplx l : r.lambda) E += l * l;
  rep.add(make_check("eigenvalue-equation", "-Laplacian F = (sum of squared rapidities) F on every alcove",
                     coefficient_residual(laplacian(F), -E, F), static_cast<int>(F.piece_count()), 1e-9));

  std::mt19937_64 rng(budget.seed);
  double jump = 0.0, cont = 0.0;
  int wall_samples = 0;
  for (int j = 1; j <= N; ++j)
    for (int k = j + 1; k <= N; ++k) {
      const auto samples = sample_wall_points(N, j, k, r.L, budget.per_wall, rng);
      for (const auto& rec : wall_jump(F, j, k, r.gamma, samples, 1))
        jump = std::max(jump, std::abs(rec.residual) / std::max({1.0, std::abs(rec.plus), std::abs(rec.minus)}));
      cont = std::max(cont, continuity_defect(F, samples));
      wall_samples += static_cast<int>(samples.size());
    }
  rep.add(make_check("derivative-jumps", "(d_j - d_k) F jumps by 2 gamma F across x_j = x_k", jump, wall_samples, 1e-9));
  rep.add(make_check("continuity", "one-sided limits agree on every wall", cont, wall_samples, 1e-10));

  if (prewave) {
    double coeff = 0.0, point = 0.0;
    const auto pts = sample_regular_points(N, r.L, budget.interior, rng);
    for (int j = 1; j <= N; ++j) {
      const auto D = dunkl(F, j, r.gamma);
      coeff = std::max(coeff, coefficient_residual(D, I * r.lambda[j - 1], F));
      for (const auto& x : pts) point = std::max(point, rel_diff(D(x), I * r.lambda[j - 1] * F(x)));
    }
    rep.add(make_check("dunkl-eigen-coefficients", "Dunkl-type operators act on the pre-wavefunction by i lambda_j",
                       coeff, N * static_cast<int>(F.piece_count()), 1e-9));
    rep.add(make_check("dunkl-eigen-pointwise", "Dunkl-type operators act on the pre-wavefunction by i lambda_j", point,
                       N * budget.interior, 1e-9));
  }
  return rep;
}

PeriodicityResiduals periodicity_residuals(const AlcoveFunction& F, double L, const SampleBudget& budget) {
  const int N = F.n();
  if (N < 1) throw std::invalid_argument("periodicity needs at least one particle");
  PeriodicityResiduals out;
  std::mt19937_64 rng(budget.seed);
  const auto dF1 = derivative(F, 1), dFN = derivative(F, N);
  const int count = N == 1 ? 1 : budget.interior;
  for (auto xs : sample_regular_points(N - 1, L, count, rng)) {
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::vector<double> top{L / 2}, bottom(xs);
    top.insert(top.end(), xs.begin(), xs.end());
    bottom.push_back(-L / 2);
    out.value = std::max(out.value, rel_diff(F(top), F(bottom)));
    out.derivative = std::max(out.derivative, rel_diff(dF1(top), dFN(bottom)));
    ++out.samples;
  }
  return out;
}

Report check_periodicity(const AlcoveFunction& F, const RapiditySet& r, const SampleBudget& budget) {
  Report rep;
  rep.add(make_check("on-shell", "rapidities solve the Bethe equations",
                     r.bae_residual.value_or(std::numeric_limits<double>::infinity()), 1, RapiditySet::kOnShellTol));
  const auto res = periodicity_residuals(F, r.L, budget);
  rep.add(make_check("periodicity-value", "F(L/2, x') = F(x', -L/2)", res.value, res.samples, 1e-8));
  rep.add(make_check("periodicity-derivative", "d_1 F(L/2, x') = d_N F(x', -L/2)", res.derivative, res.samples, 1e-8));
  return rep;
}

}  // namespace qnls
