#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "qnls/exppoly.hpp"
#include "qnls/symgroup.hpp"

namespace qnls {

struct RegularityError : std::domain_error {
  using std::domain_error::domain_error;
};

inline constexpr double kRegularityGap = 1e-8;

double min_pairwise_gap(const std::vector<cplx>& lambda);

// A momentum-space function F known on the orbit of a base vector lambda:
// entry(sigma) = F(sigma lambda) with (sigma lambda)_j = lambda_{sigma^{-1}(j)}.
// Entries are exp-poly functions of x, so plane waves and scalars share a type.
class OrbitFunction {
public:
  OrbitFunction() = default;
  OrbitFunction(std::vector<cplx> lambda, int nvars);

  int n() const { return static_cast<int>(lambda_.size()); }
  int nvars() const { return nvars_; }
  const std::vector<cplx>& base() const { return lambda_; }
  std::vector<cplx> point(const Permutation& sigma) const;

  const ExpPolySum& entry(const Permutation& sigma) const { return entries_[permutation_index(sigma)]; }
  ExpPolySum& entry(const Permutation& sigma) { return entries_[permutation_index(sigma)]; }
  const ExpPolySum& entry_at(std::size_t i) const { return entries_[i]; }
  ExpPolySum& entry_at(std::size_t i) { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

private:
  std::vector<cplx> lambda_;
  int nvars_ = 0;
  std::vector<ExpPolySum> entries_;
};

using ScalarField = std::function<cplx(const std::vector<cplx>&)>;

OrbitFunction orbit_planewave(const std::vector<cplx>& lambda);
// Entries are the constants field(sigma lambda) as functions of nvars variables.
OrbitFunction orbit_scalar(const std::vector<cplx>& lambda, const ScalarField& field, int nvars = 0);

OrbitFunction add(const OrbitFunction& a, const OrbitFunction& b);
OrbitFunction scale(cplx c, const OrbitFunction& a);
OrbitFunction operator+(const OrbitFunction& a, const OrbitFunction& b);
OrbitFunction operator-(const OrbitFunction& a, const OrbitFunction& b);
OrbitFunction operator*(cplx c, const OrbitFunction& a);

// Plain momentum permutation: (w~ F)(mu) = F(w^{-1} mu), entries'[sigma] = entries[w^{-1} sigma].
OrbitFunction act_momentum(const Permutation& w, const OrbitFunction& o);
// Multiplication by lambda_k.
OrbitFunction mult_lambda(const OrbitFunction& o, int k);
OrbitFunction mult_scalar(const OrbitFunction& o, const ScalarField& field);

OrbitFunction divided_difference(const OrbitFunction& o, int j, int k);
// s~_{j,gamma} = s~_j - i gamma Delta~_{j,j+1}
OrbitFunction deformed_transposition_momentum(const OrbitFunction& o, int j, double gamma);
// w~_gamma along the reduced word of w.
OrbitFunction apply_deformed_word(const OrbitFunction& o, const Permutation& w, double gamma);
// (1/m!) sum over w in S_m (acting on the first m momenta) of w~_gamma; m = 0 means all.
OrbitFunction gamma_symmetrizer(const OrbitFunction& o, double gamma, int m = 0);
OrbitFunction symmetrizer(const OrbitFunction& o, int m = 0);

cplx coeff_G(const std::vector<cplx>& lambda, double gamma);
// tau^{+-}_mu(lambda) = prod_j (lambda_j - mu -+ i gamma)/(lambda_j - mu); sign is +1 or -1.
cplx tau_pm(cplx mu, const std::vector<cplx>& lambda, double gamma, int sign);

}  // namespace qnls
