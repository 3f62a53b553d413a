#include "qnls/bae.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnls/momrep.hpp"

namespace qnls {

namespace {

const cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

void require_positive_coupling(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("the logarithmic Bethe equations need gamma > 0");
}

// (e^z - 1)/z, accurate for small |z|.
cplx phi1(cplx z) {
  if (std::abs(z) < 1e-3) return 1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0 * (1.0 + z / 5.0)));
  return (std::exp(z) - 1.0) / z;
}

std::vector<cplx> drop(const std::vector<cplx>& v, std::size_t j) {
  std::vector<cplx> out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != j) out.push_back(v[k]);
  return out;
}

}  // namespace

QuantumNumbers::QuantumNumbers(std::vector<int> doubled) : doubled_(std::move(doubled)) {
  const bool odd = doubled_.size() % 2 == 1;
  for (int d : doubled_) {
    const bool integer = d % 2 == 0;
    if (integer != odd)
      throw std::invalid_argument(odd ? "quantum numbers must be integers for odd N"
                                      : "quantum numbers must be half-integers for even N");
  }
}

QuantumNumbers QuantumNumbers::from_values(const std::vector<double>& n) {
  std::vector<int> doubled;
  for (double v : n) {
    const double d = 2.0 * v;
    if (std::abs(d - std::round(d)) > 1e-9) throw std::invalid_argument("quantum numbers must be multiples of 1/2");
    doubled.push_back(static_cast<int>(std::lround(d)));
  }
  return QuantumNumbers(std::move(doubled));
}

std::vector<cplx> bae_residual(const std::vector<cplx>& lambda, double gamma, double L) {
  if (min_pairwise_gap(lambda) < kRegularityGap) throw RegularityError("Bethe equations need distinct rapidities");
  std::vector<cplx> out(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    cplx prod = 1.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      if (k == j) continue;
      const cplx d = lambda[j] - lambda[k];
      if (std::abs(d - I * gamma) < 1e-14 * std::max(1.0, std::abs(d))) throw PoleError("rapidity difference equals i gamma");
      prod *= (d + I * gamma) / (d - I * gamma);
    }
    out[j] = std::exp(I * lambda[j] * L) - prod;
  }
  return out;
}

double bae_residual_norm(const std::vector<cplx>& lambda, double gamma, double L) {
  double m = 0.0;
  for (cplx c : bae_residual(lambda, gamma, L)) m = std::max(m, std::abs(c));
  return m;
}

std::vector<double> log_bae_residual(const std::vector<double>& lambda, const QuantumNumbers& n, double gamma,
                                     double L) {
  require_positive_coupling(gamma);
  if (static_cast<int>(lambda.size()) != n.size()) throw std::invalid_argument("size mismatch");
  std::vector<double> out(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    double s = L * lambda[j] - 2.0 * kPi * n.value(static_cast<int>(j));
    for (std::size_t k = 0; k < lambda.size(); ++k) s += 2.0 * std::atan((lambda[j] - lambda[k]) / gamma);
    out[j] = s;
  }
  return out;
}

YangYang yang_yang(const std::vector<double>& lambda, const QuantumNumbers& n, double gamma, double L) {
  require_positive_coupling(gamma);
  const std::size_t N = lambda.size();
  if (static_cast<int>(N) != n.size()) throw std::invalid_argument("size mismatch");
  YangYang y;
  y.gradient = log_bae_residual(lambda, n, gamma, L);
  y.hessian.assign(N, std::vector<double>(N, 0.0));
  for (std::size_t j = 0; j < N; ++j) {
    y.value += 0.5 * L * lambda[j] * lambda[j] - 2.0 * kPi * n.value(static_cast<int>(j)) * lambda[j];
    y.hessian[j][j] = L;
    for (std::size_t k = 0; k < N; ++k) {
      if (k == j) continue;
      const double a = lambda[j] - lambda[k];
      // integral of 2 atan(m/gamma) from 0 to a, halved for the double count
      y.value += 0.5 * (2.0 * a * std::atan(a / gamma) - gamma * std::log1p(a * a / (gamma * gamma)));
      const double h = 2.0 * gamma / (gamma * gamma + a * a);
      y.hessian[j][j] += h;
      y.hessian[j][k] = -h;
    }
  }
  return y;
}

BaeSolution solve_bae(const QuantumNumbers& n, double gamma, double L, int max_iterations) {
  require_positive_coupling(gamma);
  if (!(L > 0.0)) throw std::invalid_argument("box length must be positive");
  const int N = n.size();
  std::vector<double> lam(N);
  for (int j = 0; j < N; ++j) lam[j] = 2.0 * kPi * n.value(j) / L;
  const double tol = 1e-12 * L;
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  int it = 0;
  YangYang y = yang_yang(lam, n, gamma, L);
  while (inf_norm(y.gradient) >= tol) {
    if (it == max_iterations)
      throw ConvergenceError("Bethe equation solver did not converge", inf_norm(y.gradient));
    ++it;
    Eigen::MatrixXd H(N, N);
    Eigen::VectorXd g(N);
    for (int j = 0; j < N; ++j) {
      g(j) = y.gradient[j];
      for (int k = 0; k < N; ++k) H(j, k) = y.hessian[j][k];
    }
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) throw ConvergenceError("Yang-Yang Hessian is not positive definite", inf_norm(y.gradient));
    const Eigen::VectorXd step = llt.solve(-g);
    const double slope = g.dot(step);
    double t = 1.0;
    std::vector<double> trial(N);
    YangYang yt;
    for (int halvings = 0;; ++halvings) {
      for (int j = 0; j < N; ++j) trial[j] = lam[j] + t * step(j);
      yt = yang_yang(trial, n, gamma, L);
      // Armijo; near the minimum the value stagnates in rounding, so accept a gradient decrease too
      if (yt.value <= y.value + 1e-4 * t * slope || inf_norm(yt.gradient) < inf_norm(y.gradient)) break;
      if (halvings == 60) throw ConvergenceError("line search failed", inf_norm(y.gradient));
      t *= 0.5;
    }
    lam = trial;
    y = std::move(yt);
  }

  BaeSolution s;
  s.lambda = lam;
  s.iterations = it;
  std::vector<cplx> lc(lam.begin(), lam.end());
  s.rapidities = with_bae_check(make_rapidities(lc, gamma, L));
  s.residual = *s.rapidities.bae_residual;
  return s;
}

cplx transfer_eigenvalue_product(cplx mu, const std::vector<cplx>& lambda, double gamma, double L) {
  for (cplx l : lambda)
    if (l == mu) throw PoleError("spectral parameter coincides with a rapidity");
  return std::exp(-I * mu * L / 2.0) * tau_pm(mu, lambda, gamma, 1) + std::exp(I * mu * L / 2.0) * tau_pm(mu, lambda, gamma, -1);
}

cplx transfer_eigenvalue_partial_fraction(cplx mu, const std::vector<cplx>& lambda, double gamma, double L) {
  // tau = e^{-i mu L/2} + e^{i mu L/2} - e^{-i mu L/2} i gamma sum_k tau^-_{l_k}(l_k^) (e^{i l_k L} - e^{i mu L})/(l_k - mu)
  // with (e^{i l L} - e^{i mu L})/(l - mu) = i L e^{i mu L} phi1(i (l - mu) L).
  cplx sum = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    const cplx quotient = I * L * std::exp(I * mu * L) * phi1(I * (lambda[k] - mu) * L);
    sum += tau_pm(lambda[k], drop(lambda, k), gamma, -1) * quotient;
  }
  return std::exp(-I * mu * L / 2.0) + std::exp(I * mu * L / 2.0) - std::exp(-I * mu * L / 2.0) * I * gamma * sum;
}

cplx transfer_eigenvalue_diagonal(int j, const std::vector<cplx>& lambda, double gamma, double L) {
  const std::size_t jj = static_cast<std::size_t>(j - 1);
  const cplx lj = lambda.at(jj);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k == jj) continue;
    sum += tau_pm(lambda[k], drop(lambda, k), gamma, -1) * (std::exp(I * lj * L) - std::exp(I * lambda[k] * L)) / (lj - lambda[k]);
  }
  return std::exp(-I * lj * L / 2.0) + std::exp(I * lj * L / 2.0) - I * gamma * std::exp(-I * lj * L / 2.0) * sum +
         gamma * L * std::exp(I * lj * L / 2.0) * tau_pm(lj, drop(lambda, jj), gamma, -1);
}

cplx transfer_eigenvalue(cplx mu, const RapiditySet& r) {
  for (std::size_t j = 0; j < r.lambda.size(); ++j) {
    if (std::abs(mu - r.lambda[j]) >= kDiagonalWindow) continue;
    if (!r.on_shell()) throw PoleError("spectral parameter at a rapidity of an off-shell set");
    if (mu == r.lambda[j]) return transfer_eigenvalue_diagonal(static_cast<int>(j + 1), r.lambda, r.gamma, r.L);
    return transfer_eigenvalue_partial_fraction(mu, r.lambda, r.gamma, r.L);
  }
  return transfer_eigenvalue_product(mu, r.lambda, r.gamma, r.L);
}

cplx power_sum_series(cplx mu, const std::vector<cplx>& lambda, double gamma) {
  cplx p0 = static_cast<double>(lambda.size()), p1 = 0.0, p2 = 0.0;
  for (cplx l : lambda) {
    p1 += l;
    p2 += l * l;
  }
  const cplx ig = I * gamma;
  return ig / mu * p0 + ig / (mu * mu) * (p1 - ig / 2.0 * p0) + ig / (mu * mu * mu) * (p2 - ig * p1 - gamma * gamma / 3.0 * p0);
}

AsymptoticReport asymptotic_check(const std::vector<cplx>& lambda, double gamma, double L,
                                  const std::vector<cplx>& mu_list) {
  AsymptoticReport rep;
  for (cplx mu : mu_list) {
    if (std::abs(mu.real()) > 1e-12 * std::abs(mu) || mu.imag() <= 0.0)
      throw std::invalid_argument("asymptotic check needs mu on the positive imaginary axis");
    // e^{i mu L/2} tau_mu = tau^+_mu + e^{i mu L} tau^-_mu, which avoids overflow of e^{-i mu L/2}
    cplx log_tau = 0.0;
    for (cplx l : lambda) log_tau += std::log((l - mu - I * gamma) / (l - mu));
    const cplx scaled = std::exp(I * mu * L) * tau_pm(mu, lambda, gamma, -1) / tau_pm(mu, lambda, gamma, 1);
    const cplx value = log_tau + std::log(1.0 + scaled);
    rep.mu.push_back(mu);
    rep.residual.push_back(std::abs(value - power_sum_series(mu, lambda, gamma)));
  }
  for (std::size_t k = 1; k < rep.residual.size(); ++k)
    rep.ratio.push_back(rep.residual[k - 1] > 0.0 ? rep.residual[k] / rep.residual[k - 1] : 0.0);
  return rep;
}

}  // namespace qnls
