#pragma once

#include <stdexcept>
#include <vector>

#include "qnls/model.hpp"

namespace qnls {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual(last_residual) {}
  double last_residual;
};

// Quantum numbers stored doubled, so half-integers are exact. Integers are
// required for odd N and half-integers for even N.
class QuantumNumbers {
public:
  explicit QuantumNumbers(std::vector<int> doubled);
  static QuantumNumbers from_values(const std::vector<double>& n);

  int size() const { return static_cast<int>(doubled_.size()); }
  double value(int j) const { return 0.5 * doubled_[j]; }
  const std::vector<int>& doubled() const { return doubled_; }

private:
  std::vector<int> doubled_;
};

// Component j: e^{i lambda_j L} - prod_{k != j} (lambda_j - lambda_k + i gamma)/(lambda_j - lambda_k - i gamma).
std::vector<cplx> bae_residual(const std::vector<cplx>& lambda, double gamma, double L);
double bae_residual_norm(const std::vector<cplx>& lambda, double gamma, double L);

// Component j: L lambda_j + sum_k 2 atan((lambda_j - lambda_k)/gamma) - 2 pi n_j.
std::vector<double> log_bae_residual(const std::vector<double>& lambda, const QuantumNumbers& n, double gamma,
                                     double L);

struct YangYang {
  double value = 0.0;
  std::vector<double> gradient;
  std::vector<std::vector<double>> hessian;
};

// Convex action whose gradient is the logarithmic residual; requires gamma > 0.
YangYang yang_yang(const std::vector<double>& lambda, const QuantumNumbers& n, double gamma, double L);

struct BaeSolution {
  RapiditySet rapidities;
  std::vector<double> lambda;
  double residual = 0.0;  // max-norm of the exponential-form residual
  int iterations = 0;
};

// Damped Newton on the Yang-Yang action from lambda_j = 2 pi n_j / L.
// Throws ConvergenceError after max_iterations.
BaeSolution solve_bae(const QuantumNumbers& n, double gamma, double L, int max_iterations = 100);

// tau_mu = e^{-i mu L/2} tau^+_mu + e^{i mu L/2} tau^-_mu. Near a rapidity of an
// on-shell set the removable singularity is resolved analytically; off-shell a
// pole throws PoleError.
cplx transfer_eigenvalue(cplx mu, const RapiditySet& r);
// The product form only; never resolves poles.
cplx transfer_eigenvalue_product(cplx mu, const std::vector<cplx>& lambda, double gamma, double L);
// On-shell partial-fraction form, valid for all mu including the rapidities.
cplx transfer_eigenvalue_partial_fraction(cplx mu, const std::vector<cplx>& lambda, double gamma, double L);
// Value at mu = lambda_j (1-based j) of the analytic continuation of an on-shell tau.
cplx transfer_eigenvalue_diagonal(int j, const std::vector<cplx>& lambda, double gamma, double L);

inline constexpr double kDiagonalWindow = 1e-6;

struct AsymptoticReport {
  std::vector<cplx> mu;
  std::vector<double> residual;  // |log(e^{i mu L/2} tau_mu) - three-term series|
  std::vector<double> ratio;     // residual[k+1]/residual[k]
};

// Power-sum expansion of log(e^{i mu L/2} tau_mu) up to mu^{-3}.
cplx power_sum_series(cplx mu, const std::vector<cplx>& lambda, double gamma);
AsymptoticReport asymptotic_check(const std::vector<cplx>& lambda, double gamma, double L,
                                  const std::vector<cplx>& mu_list);

}  // namespace qnls
