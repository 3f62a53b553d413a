#include "doctest.h"

#include "qnls/oracle.hpp"
#include "qnls/wavefn.hpp"
#include "support.hpp"

using namespace qnls;
using namespace testsupport;
namespace orc = qnls::oracle;

namespace {

const cplx I(0.0, 1.0);
constexpr double kL = 3.0;
constexpr double kGamma = 0.8;
const ModelParams kModel{kGamma, kL};

AlcoveFunction random_nonsymmetric(std::mt19937_64& g, int n) {
  if (n == 0) return vacuum();
  AlcoveFunction f(n);
  for (std::size_t p = 0; p < f.piece_count(); ++p) f.piece_at(p) = random_exppoly(g, n, 2, 1);
  return f;
}

AlcoveFunction random_symmetric(std::mt19937_64& g, int n) {
  if (n == 0) return vacuum();
  auto F = AlcoveFunction::symmetric_extension(random_exppoly(g, n, 2, 1));
  F.set_continuous(true);
  return F;
}

int input_size(Family f, int out) {
  if (f == Family::B || f == Family::b_plus || f == Family::b_minus) return out - 1;
  if (f == Family::C || f == Family::c_plus || f == Family::c_minus) return out + 1;
  return out;
}

}  // namespace

TEST_CASE("adaptive quadrature on closed-form integrals") {
  auto g = rng(1);
  int bounded = 0;
  const int trials = 1000;
  orc::QuadConfig cfg;
  cfg.rel_tol = 1e-6;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_exppoly(g, 1, 2, 2);
    double a = uniform(g, -2.0, 2.0), b = uniform(g, -2.0, 2.0);
    const auto prim = antiderivative(f, 1);
    const cplx exact = eval(prim, std::vector<double>{b}) - eval(prim, std::vector<double>{a});
    const auto r = orc::integrate([&](double y) { return eval(f, std::vector<double>{y}); }, a, b, cfg);
    CHECK(rel(r.value, exact) < 1e-6);
    // the closed form itself carries rounding near 1e-14
    if (std::abs(r.value - exact) <= r.error + 1e-13 * std::max(1.0, std::abs(exact))) ++bounded;
  }
  CHECK(bounded >= 950);
  CHECK(orc::integrate([](double) { return cplx(1.0); }, 1.0, 1.0).value == cplx(0.0));
  CHECK(std::abs(orc::integrate([](double y) { return cplx(y); }, 1.0, 0.0).value + 0.5) < 1e-15);
}

TEST_CASE("vacuum input is plain multiplication") {
  const auto one = vacuum();
  const cplx mu(0.4, 0.1);
  for (Family f : {Family::A, Family::D, Family::a, Family::d}) {
    const auto r = orc::quad_apply({f, mu, kModel}, one, {});
    CHECK(r.error == 0.0);
    const bool plus = f == Family::A || f == Family::a;
    CHECK(rel(r.value, std::exp(I * mu * (plus ? -kL / 2 : kL / 2))) < 1e-15);
  }
  for (Family f : {Family::B, Family::b_plus, Family::b_minus}) {
    const auto r = orc::quad_apply({f, mu, kModel}, one, {0.3});
    CHECK(r.error == 0.0);
    CHECK(rel(r.value, std::exp(I * mu * 0.3)) < 1e-15);
  }
}

TEST_CASE("quadrature matches exact operator application") {
  auto g = rng(2);
  const cplx mu(0.7, -0.2);
  for (Family fam : {Family::A, Family::B, Family::C, Family::D, Family::a, Family::b_plus, Family::b_minus,
                     Family::c_plus, Family::c_minus, Family::d}) {
    for (int out = 1; out <= 2; ++out) {
      const int in = input_size(fam, out);
      if (in < 0 || in > 2) continue;
      CAPTURE(family_name(fam));
      CAPTURE(out);
      const auto f = is_symmetric_family(fam) ? random_symmetric(g, in) : random_nonsymmetric(g, in);
      const OperatorSpec spec{fam, mu, kModel};
      const auto exact = apply(spec, f);
      for (const auto& x : sample_regular_points(out, kL, 6, g)) {
        const auto q = orc::quad_apply(spec, f, x);
        CHECK(rel(q.value, exact(x)) < 1e-6);
        CHECK(q.error < 1e-6 * std::max(1.0, std::abs(q.value)));
      }
    }
  }
}

TEST_CASE("three nested integrals for C on three-particle input") {
  auto g = rng(3);
  const auto F = random_symmetric(g, 3);
  const OperatorSpec spec{Family::C, 0.5, kModel};
  const auto exact = apply_symmetric(spec, F);
  for (const auto& x : sample_regular_points(2, kL, 2, g)) CHECK(rel(orc::quad_apply(spec, F, x).value, exact(x)) < 1e-6);
  orc::QuadConfig small;
  small.max_dim = 2;
  CHECK_THROWS_AS(orc::quad_apply(spec, F, {0.2, -0.4}, small), std::invalid_argument);
}

TEST_CASE("A on two particles against the written-out formula") {
  auto g = rng(4);
  const auto F = random_symmetric(g, 2);
  const cplx mu(0.3, 0.2);
  const double lo = -kL / 2;
  for (int t = 0; t < 5; ++t) {
    auto x = sample_regular_points(2, kL, 1, g).front();
    std::sort(x.begin(), x.end(), std::greater<>());
    const double x1 = x[0], x2 = x[1];
    const PiecewiseGauss integral({x1, x2});
    const cplx one_a = integral([&](double y) { return std::exp(I * mu * (x1 - y)) * F({x2, y}); }, lo, x1);
    const cplx one_b = integral([&](double y) { return std::exp(I * mu * (x2 - y)) * F({x1, y}); }, lo, x2);
    const cplx two = integral(
        [&](double y1) {
          return integral([&](double y2) { return std::exp(I * mu * (x1 + x2 - y1 - y2)) * F({y1, y2}); }, lo, x2);
        },
        x2, x1);
    const cplx expect = std::exp(-I * mu * kL / 2.0) * (F(x) + kGamma * (one_a + one_b) + kGamma * kGamma * two);
    CHECK(rel(orc::quad_apply({Family::A, mu, kModel}, F, x).value, expect) < 1e-8);
  }
}

TEST_CASE("inner products") {
  auto g = rng(5);
  for (int n = 1; n <= 2; ++n) {
    const std::vector<cplx> lam = {0.7, -1.1};
    const auto e = AlcoveFunction::from_analytic(ExpPolySum::plane_wave(std::vector<cplx>(lam.begin(), lam.begin() + n)));
    CHECK(rel(orc::inner_product(e, e, kL).value, std::pow(kL, n)) < 1e-10);
    const auto f = random_nonsymmetric(g, n), h = random_nonsymmetric(g, n);
    CHECK(rel(orc::inner_product(f, h, kL).value, std::conj(orc::inner_product(h, f, kL).value)) < 1e-10);
  }
  // symmetric functions: N! times the fundamental-alcove integral
  const auto F = random_symmetric(g, 2), G = random_symmetric(g, 2);
  const cplx fundamental = orc::integrate(
      [&](double x1) {
        return orc::integrate([&](double x2) { return F({x1, x2}) * std::conj(G({x1, x2})); }, -kL / 2, x1).value;
      },
      -kL / 2, kL / 2).value;
  CHECK(rel(orc::inner_product(F, G, kL).value, 2.0 * fundamental) < 1e-9);
}

TEST_CASE("formal adjoints through oracle inner products") {
  auto g = rng(6);
  const cplx mu(0.6, 0.3);
  const ModelParams model{kGamma, kL};
  auto ip = [](const AlcoveFunction& u, const AlcoveFunction& v) { return orc::inner_product(u, v, kL).value; };
  for (int n = 0; n <= 1; ++n) {
    CAPTURE(n);
    // B and C between symmetric sectors; with B carrying 1/(N+1) and C carrying N+1
    // the plain L2 adjoint of B is C/(N+1)
    const auto F = random_symmetric(g, n), G = random_symmetric(g, n + 1);
    CHECK(rel(ip(apply_symmetric({Family::B, mu, model}, F), G),
              ip(F, apply_symmetric({Family::C, std::conj(mu), model}, G)) / (n + 1.0)) < 1e-6);
    // b+ with c-, b- with c+
    const auto f = random_nonsymmetric(g, n), h = random_nonsymmetric(g, n + 1);
    CHECK(rel(ip(apply_nonsymmetric({Family::b_plus, mu, model}, f), h),
              ip(f, apply_nonsymmetric({Family::c_minus, std::conj(mu), model}, h))) < 1e-6);
    CHECK(rel(ip(apply_nonsymmetric({Family::b_minus, mu, model}, f), h),
              ip(f, apply_nonsymmetric({Family::c_plus, std::conj(mu), model}, h))) < 1e-6);
  }
  for (int n = 1; n <= 2; ++n) {
    const auto f = random_nonsymmetric(g, n), h = random_nonsymmetric(g, n);
    CHECK(rel(ip(apply_nonsymmetric({Family::a, mu, model}, f), h), ip(f, apply_nonsymmetric({Family::d, std::conj(mu), model}, h))) <
          1e-6);
    const auto F = random_symmetric(g, n), G = random_symmetric(g, n);
    CHECK(rel(ip(apply_symmetric({Family::A, mu, model}, F), G), ip(F, apply_symmetric({Family::D, std::conj(mu), model}, G))) <
          1e-6);
  }
  // elementary level: e^+_{hat; i} against e^-_{check; i}
  const auto f = random_nonsymmetric(g, 2), h = random_nonsymmetric(g, 3);
  for (const auto& i : distinct_tuples(2, 1)) {
    const auto lhs = ip(elementary_nonsymmetric_op(NonSymmetricKind::e_hat_plus, mu, i, f, model), h);
    const auto rhs = ip(f, elementary_nonsymmetric_op(NonSymmetricKind::e_check_minus, std::conj(mu), i, h, model));
    CHECK(rel(lhs, rhs) < 1e-6);
  }
}

TEST_CASE("finite differences") {
  auto g = rng(7);
  const std::vector<cplx> lam{0.9, -0.4};
  const auto e = AlcoveFunction::from_analytic(ExpPolySum::plane_wave(lam));
  const std::vector<double> x{0.5, -0.3};
  CHECK(rel(orc::fd_derivative(e, 1, x, 1e-4), I * lam[0] * e(x)) < 1e-7);
  CHECK(rel(orc::fd_derivative(e, 2, x, 1e-3, true), I * lam[1] * e(x)) < 1e-10);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_nonsymmetric(g, 2);
    const auto df = derivative(f, 2);
    const auto p = sample_regular_points(2, kL, 1, g).front();
    if (std::abs(p[0] - p[1]) < 1e-3) continue;
    CHECK(rel(orc::fd_derivative(f, 2, p, 1e-5), df(p)) < 1e-6);
  }
  CHECK_THROWS_AS(orc::fd_derivative(e, 1, {0.1, 0.1 + 1e-6}, 1e-4), orc::WallCrossingError);
}

TEST_CASE("finite-difference Dunkl eigen-check agrees with the exact pipeline") {
  auto g = rng(8);
  for (int n = 1; n <= 3; ++n) {
    const auto r = make_rapidities(random_rapidities(g, n), kGamma, kL);
    const auto psi = prewavefunction(r);
    for (const auto& x : sample_regular_points(n, kL, 10, g)) {
      double gap = 1.0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gap = std::min(gap, std::abs(x[a] - x[b]));
      if (gap < 1e-3) continue;
      for (int j = 1; j <= n; ++j) {
        const cplx fd = orc::fd_dunkl(psi, j, r.gamma, x, 1e-4);
        CHECK(rel(fd, I * r.lambda[j - 1] * psi(x)) < 1e-5);
        CHECK(rel(fd, dunkl(psi, j, r.gamma)(x)) < 1e-5);
      }
    }
  }
}
