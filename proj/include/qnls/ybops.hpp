#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "qnls/alcovefn.hpp"
#include "qnls/model.hpp"

namespace qnls {

// Largest input particle number for exact operator application.
inline constexpr int kExactParticleCap = 4;

struct ParticleCapError : std::length_error {
  using std::length_error::length_error;
};

// n-tuples of distinct entries of {1..N}, lexicographic.
std::vector<std::vector<int>> distinct_tuples(int N, int n);
// Strictly increasing n-tuples of {1..N}, lexicographic.
std::vector<std::vector<int>> increasing_tuples(int N, int n);

enum class SymmetricKind { E_hat, E_bar_plus, E_bar_minus, E_check };
enum class NonSymmetricKind { e_hat_plus, e_hat_minus, e_bar_plus, e_bar_minus, e_check_plus, e_check_minus };
enum class Family { A, B, C, D, a, b_plus, b_minus, c_plus, c_minus, d };

const char* family_name(Family f);
bool is_symmetric_family(Family f);

struct OperatorSpec {
  Family family = Family::A;
  cplx mu = 0.0;
  ModelParams model;
};

// True when every piece is the permuted fundamental piece, to relative tol.
bool is_symmetric(const AlcoveFunction& F, double tol = 1e-9);

// F with +-L/2 (top = +L/2) inserted as argument number pos of F; one variable fewer.
AlcoveFunction insert_boundary(const AlcoveFunction& F, int pos, bool top, double L);

// Elementary operators. Symmetric kinds take increasing multi-indices and a
// symmetric F; the result is computed on x_1 > ... > x_N and extended by symmetry.
AlcoveFunction elementary_symmetric_op(SymmetricKind kind, cplx mu, const std::vector<int>& i, const AlcoveFunction& F,
                                       const ModelParams& model);
AlcoveFunction elementary_nonsymmetric_op(NonSymmetricKind kind, cplx mu, const std::vector<int>& i,
                                          const AlcoveFunction& f, const ModelParams& model);

AlcoveFunction apply_symmetric(const OperatorSpec& spec, const AlcoveFunction& F);
// c+- go through the boundary commutators with b+-; a and d use their defining sums.
AlcoveFunction apply_nonsymmetric(const OperatorSpec& spec, const AlcoveFunction& f);
AlcoveFunction apply(const OperatorSpec& spec, const AlcoveFunction& f);

// c+- summed straight from the elementary operators.
AlcoveFunction apply_c_direct(const OperatorSpec& spec, const AlcoveFunction& f);
// a = b+(-L/2, .) and d = b-(., L/2).
AlcoveFunction apply_a_via_b(cplx mu, const AlcoveFunction& f, const ModelParams& model);
AlcoveFunction apply_d_via_b(cplx mu, const AlcoveFunction& f, const ModelParams& model);

// E-bar-plus through the split-index form: one integral per adjacent gap.
AlcoveFunction elementary_E_bar_plus_altform(cplx mu, const std::vector<int>& i, const AlcoveFunction& F,
                                             const ModelParams& model);
// A through the split-index form, N <= 3.
AlcoveFunction apply_A_altform(cplx mu, const AlcoveFunction& F, const ModelParams& model);

using Matrix4 = std::array<std::array<cplx, 4>, 4>;
// R_lambda = 1 - (i gamma / lambda) P on C^2 (x) C^2, basis |00>,|01>,|10>,|11>.
Matrix4 rmatrix(cplx lambda, double gamma);
// Max-norm of R12(l-m) R13(l) R23(m) - R23(m) R13(l) R12(l-m).
double ybe_residual(cplx lambda, cplx mu, double gamma);

AlcoveFunction transfer(cplx mu, const AlcoveFunction& F, const ModelParams& model);
// A_{mu+} D_{mu-} - gamma B_{mu+} C_{mu-}, mu+- = mu -+ i gamma/2.
AlcoveFunction qdet(cplx mu, const AlcoveFunction& F, const ModelParams& model);
// prod_j (lambda_j - mu).
cplx q_operator_scalar(cplx mu, const std::vector<cplx>& lambda);
// prod_j (-i d_{j,gamma} - mu) applied with exact Dunkl operators.
AlcoveFunction q_operator(cplx mu, const AlcoveFunction& F, double gamma);

}  // namespace qnls
