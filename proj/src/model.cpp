#include "qnls/model.hpp"

#include <stdexcept>

#include "qnls/bae.hpp"
#include "qnls/momrep.hpp"

namespace qnls {

RapiditySet make_rapidities(std::vector<cplx> lambda, double gamma, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("box length must be positive");
  RapiditySet r;
  r.lambda = std::move(lambda);
  r.gamma = gamma;
  r.L = L;
  r.regularity = min_pairwise_gap(r.lambda);
  return r;
}

RapiditySet with_bae_check(RapiditySet r) {
  r.bae_residual = bae_residual_norm(r.lambda, r.gamma, r.L);
  return r;
}

}  // namespace qnls
