#pragma once

#include <cstdint>

#include "qnls/alcovefn.hpp"
#include "qnls/model.hpp"
#include "qnls/report.hpp"

namespace qnls {

enum class PrewaveRoute {
  orbit,          // deformed momentum words on the plane-wave orbit, alcove by alcove
  propagation,    // propagation operator on the plane wave
  creation,       // b-_{l_N} ... b-_{l_1} on the vacuum
  creation_plus,  // b+_{l_1} ... b+_{l_N} on the vacuum
};

enum class BetheRoute {
  symmetrize,  // position symmetrizer of the pre-wavefunction
  explicit_sum,  // (1/N!) sum_w G(w lambda) e^{i <w lambda, x>} on the fundamental alcove
  creation,    // B_{l_N} ... B_{l_1} on the vacuum
};

const char* route_name(PrewaveRoute r);
const char* route_name(BetheRoute r);

// The constant function 1 with no variables.
AlcoveFunction vacuum();

// Throws RegularityError if two rapidities are closer than kRegularityGap.
AlcoveFunction prewavefunction(const RapiditySet& r, PrewaveRoute route = PrewaveRoute::orbit);

struct DegenerateLimit {
  AlcoveFunction value;
  // Max relative change between the extrapolated value and the finer central difference.
  double accuracy = 0.0;
};

struct ExtrapolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Limit of psi at coinciding rapidities: central differences along a direction
// that splits each cluster of equal rapidities, at delta and delta/2, combined
// by Richardson extrapolation. Throws ExtrapolationError above 1e-5.
DegenerateLimit prewavefunction_degenerate(const RapiditySet& r, double delta = 1e-3);

AlcoveFunction bethe_wavefunction(const RapiditySet& r, BetheRoute route = BetheRoute::explicit_sum);

struct SampleBudget {
  int interior = 50;
  int per_wall = 10;
  std::uint64_t seed = 0x5EED;
};

// Eigenvalue equation (coefficient level), derivative jumps at sampled walls,
// and for non-symmetric input also the Dunkl eigen-system.
Report verify_qnls(const AlcoveFunction& F, const RapiditySet& r, bool prewave, const SampleBudget& budget = {});

// Residuals of F(L/2, x') - F(x', -L/2) and of the matching derivative condition
// for x' in the fundamental alcove of N-1 variables.
struct PeriodicityResiduals {
  double value = 0.0;
  double derivative = 0.0;
  int samples = 0;
};
PeriodicityResiduals periodicity_residuals(const AlcoveFunction& F, double L, const SampleBudget& budget = {});
Report check_periodicity(const AlcoveFunction& F, const RapiditySet& r, const SampleBudget& budget = {});

}  // namespace qnls
