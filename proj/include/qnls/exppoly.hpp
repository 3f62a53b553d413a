#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qnls {

using cplx = std::complex<double>;

// Variables are x_1..x_n; every public index below is 1-based.
inline constexpr int kMaxVars = 16;

struct DegreeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Packed multidegree: four bits per variable, variable v (1-based) in bits 4(v-1).
using MonoKey = std::uint64_t;

inline int mono_degree(MonoKey k, int v) { return static_cast<int>((k >> (4 * (v - 1))) & 0xF); }
MonoKey mono_key(const std::vector<int>& degrees);
int mono_total_degree(MonoKey k);

struct Monomial {
  MonoKey key = 0;
  cplx coeff;
};

// p(x) e^{i<mu,x>} with p stored as monomials sorted by key.
struct ExpPolyTerm {
  std::vector<cplx> wavevector;
  std::vector<Monomial> monomials;
};

class ExpPolySum {
public:
  ExpPolySum() = default;
  explicit ExpPolySum(int nvars) : nvars_(nvars) {}

  static ExpPolySum zero(int nvars) { return ExpPolySum(nvars); }
  static ExpPolySum constant(int nvars, cplx c);
  static ExpPolySum plane_wave(const std::vector<cplx>& wavevector, cplx coeff = 1.0);
  // c * x^deg * e^{i<mu,x>}
  static ExpPolySum monomial(const std::vector<cplx>& wavevector, const std::vector<int>& deg, cplx coeff);

  int nvars() const { return nvars_; }
  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  std::vector<ExpPolyTerm>& mutable_terms() { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void push_term(ExpPolyTerm t);

  int max_total_degree() const;
  // Largest coefficient magnitude over all monomials.
  double max_coeff() const;
  bool depends_on(int j) const;

private:
  int nvars_ = 0;
  std::vector<ExpPolyTerm> terms_;
};

struct Bound {
  enum class Kind { constant, coordinate };
  Kind kind = Kind::constant;
  cplx value = 0.0;
  int index = 0;

  static Bound constant(cplx c) { return {Kind::constant, c, 0}; }
  static Bound coordinate(int k) { return {Kind::coordinate, 0.0, k}; }
  bool is_constant() const { return kind == Kind::constant; }
};

// x_j := sum_c coeffs[c-1] x_c + offset. coeffs has one entry per variable.
struct AffineForm {
  std::vector<cplx> coeffs;
  cplx offset = 0.0;
};

int degree_cap();
void set_degree_cap(int cap);

inline constexpr double kZeroWavenumber = 1e-12;
inline constexpr double kSeriesWavenumber = 1e-6;
inline constexpr double kMergeTol = 1e-12;
inline constexpr double kPruneTol = 1e-14;

cplx eval(const ExpPolySum& f, const std::vector<double>& x);
cplx eval(const ExpPolySum& f, const std::vector<cplx>& x);

ExpPolySum add(const ExpPolySum& f, const ExpPolySum& g);
ExpPolySum scale(cplx c, const ExpPolySum& f);
ExpPolySum mul(const ExpPolySum& f, const ExpPolySum& g);
// f * c e^{i<mu,x>} without going through a general product.
ExpPolySum mul_plane_wave(const ExpPolySum& f, const std::vector<cplx>& wavevector, cplx c);

ExpPolySum operator+(const ExpPolySum& f, const ExpPolySum& g);
ExpPolySum operator-(const ExpPolySum& f, const ExpPolySum& g);
ExpPolySum operator*(cplx c, const ExpPolySum& f);
ExpPolySum operator*(const ExpPolySum& f, const ExpPolySum& g);
ExpPolySum& operator+=(ExpPolySum& f, const ExpPolySum& g);

ExpPolySum derivative(const ExpPolySum& f, int j);
ExpPolySum integrate(const ExpPolySum& f, int j, const Bound& lower, const Bound& upper);
// Antiderivative in x_j, still a function of x_j.
ExpPolySum antiderivative(const ExpPolySum& f, int j);
ExpPolySum substitute(const ExpPolySum& f, int j, const Bound& b);
ExpPolySum substitute_affine(const ExpPolySum& f, int j, const AffineForm& form);

// Merge equal wavevectors (within kMergeTol * scale), combine monomials, prune.
ExpPolySum canonicalize(const ExpPolySum& f);
// Entry map[v-1] is the new 1-based slot of x_v, or 0 to drop a variable the
// sum does not depend on.
ExpPolySum remap(const ExpPolySum& f, const std::vector<int>& map, int new_nvars);

}  // namespace qnls
