#pragma once

#include <vector>

#include "json.hpp"
#include "qnls/alcovefn.hpp"
#include "qnls/bae.hpp"
#include "qnls/exppoly.hpp"

// JSON forms:
//   complex        [re, im]
//   ExpPolySum     {"terms":[{"wavevector":[[re,im],...],"monomials":[{"deg":[...],"coeff":[re,im]},...]}]}
//   AlcoveFunction {"n":N, "continuous":bool, "pieces":{"[2,1,3]": ExpPolySum, ...}}
//   solver input   {"N":..., "gamma":..., "L":..., "n":[...]}
//   solver output  {"lambda":[[re,im],...], "residual":..., "iterations":...}
namespace qnls {

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const ExpPolySum& f);
// The number of variables is not stored; it is taken from the wavevectors, or
// from nvars when the sum is empty.
ExpPolySum exppoly_from_json(const nlohmann::json& j, int nvars);

void to_json(nlohmann::json& j, const AlcoveFunction& f);
void from_json(const nlohmann::json& j, AlcoveFunction& f);

struct BaeRequest {
  int N = 0;
  double gamma = 0.0;
  double L = 0.0;
  std::vector<double> n;  // quantum numbers as values, integers or half-integers
};

void from_json(const nlohmann::json& j, BaeRequest& r);
void to_json(nlohmann::json& j, const BaeSolution& s);

}  // namespace qnls
