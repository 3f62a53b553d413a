#pragma once

#include <optional>
#include <vector>

#include "qnls/exppoly.hpp"

namespace qnls {

// Coupling and box length. The box is J = [-L/2, L/2].
struct ModelParams {
  double gamma = 1.0;
  double L = 1.0;
};

// Rapidities with the model they live in. regularity is the smallest pairwise
// gap; bae_residual is set once the Bethe equations have been checked.
struct RapiditySet {
  std::vector<cplx> lambda;
  double gamma = 0.0;
  double L = 1.0;
  double regularity = 0.0;
  std::optional<double> bae_residual;

  int n() const { return static_cast<int>(lambda.size()); }
  bool on_shell() const { return bae_residual && *bae_residual < kOnShellTol; }
  ModelParams model() const { return {gamma, L}; }

  static constexpr double kOnShellTol = 1e-9;
};

RapiditySet make_rapidities(std::vector<cplx> lambda, double gamma, double L);
// Computes the Bethe-equation residual and stores it.
RapiditySet with_bae_check(RapiditySet r);

}  // namespace qnls
