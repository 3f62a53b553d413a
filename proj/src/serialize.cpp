#include "qnls/serialize.hpp"

#include <stdexcept>
#include <string>

namespace qnls {

using nlohmann::json;

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const ExpPolySum& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json wv = json::array();
    for (cplx m : t.wavevector) wv.push_back(complex_to_json(m));
    json monos = json::array();
    for (const auto& m : t.monomials) {
      std::vector<int> deg;
      for (int v = 1; v <= f.nvars(); ++v) deg.push_back(mono_degree(m.key, v));
      monos.push_back({{"deg", deg}, {"coeff", complex_to_json(m.coeff)}});
    }
    terms.push_back({{"wavevector", wv}, {"monomials", monos}});
  }
  j = {{"terms", terms}};
}

ExpPolySum exppoly_from_json(const json& j, int nvars) {
  ExpPolySum f(nvars);
  for (const auto& t : j.at("terms")) {
    ExpPolyTerm term;
    for (const auto& m : t.at("wavevector")) term.wavevector.push_back(complex_from_json(m));
    if (static_cast<int>(term.wavevector.size()) != nvars)
      throw std::invalid_argument("wavevector length does not match the number of variables");
    for (const auto& m : t.at("monomials")) {
      const auto deg = m.at("deg").get<std::vector<int>>();
      if (static_cast<int>(deg.size()) != nvars) throw std::invalid_argument("degree vector length mismatch");
      term.monomials.push_back({mono_key(deg), complex_from_json(m.at("coeff"))});
    }
    f.push_term(std::move(term));
  }
  return canonicalize(f);
}

namespace {

std::string images_key(const Permutation& p) { return json(p.images()).dump(); }

}  // namespace

void to_json(json& j, const AlcoveFunction& f) {
  json pieces = json::object();
  for (const auto& p : all_permutations(f.n())) pieces[images_key(p)] = f.piece(p);
  j = {{"n", f.n()}, {"continuous", f.continuous()}, {"pieces", pieces}};
}

void from_json(const json& j, AlcoveFunction& f) {
  const int n = j.at("n").get<int>();
  AlcoveFunction out(n, j.value("continuous", false));
  const auto& pieces = j.at("pieces");
  if (pieces.size() != out.piece_count()) throw std::invalid_argument("AlcoveFunction JSON needs one piece per alcove");
  for (const auto& p : all_permutations(n)) out.piece(p) = exppoly_from_json(pieces.at(images_key(p)), n);
  f = std::move(out);
}

void from_json(const json& j, BaeRequest& r) {
  r.N = j.at("N").get<int>();
  r.gamma = j.at("gamma").get<double>();
  r.L = j.at("L").get<double>();
  r.n = j.at("n").get<std::vector<double>>();
  if (static_cast<int>(r.n.size()) != r.N) throw std::invalid_argument("expected N quantum numbers");
}

void to_json(json& j, const BaeSolution& s) {
  json lam = json::array();
  for (cplx l : s.rapidities.lambda) lam.push_back(complex_to_json(l));
  j = {{"lambda", lam}, {"residual", s.residual}, {"iterations", s.iterations}};
}

}  // namespace qnls
