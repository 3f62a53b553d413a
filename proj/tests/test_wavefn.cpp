#include "doctest.h"

#include "qnls/bae.hpp"
#include "qnls/momrep.hpp"
#include "qnls/wavefn.hpp"
#include "qnls/ybops.hpp"
#include "support.hpp"

using namespace qnls;
using namespace testsupport;

namespace {

const cplx I(0.0, 1.0);
constexpr double kL = 4.0;
constexpr double kGamma = 0.7;

double max_diff(const AlcoveFunction& a, const AlcoveFunction& b, std::mt19937_64& g, int count = 20) {
  REQUIRE(a.n() == b.n());
  double worst = 0.0;
  for (const auto& x : sample_regular_points(a.n(), kL, count, g)) worst = std::max(worst, rel(a(x), b(x)));
  return worst;
}

cplx plane(const std::vector<cplx>& lam, const std::vector<double>& x) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += lam[j] * x[j];
  return std::exp(I * s);
}

RapiditySet random_set(std::mt19937_64& g, int n, double gamma = kGamma) {
  return make_rapidities(random_rapidities(g, n), gamma, kL);
}

}  // namespace

TEST_CASE("two-particle pre-wavefunction against its closed form") {
  auto g = rng(1);
  for (int trial = 0; trial < 4; ++trial) {
    const auto r = random_set(g, 2);
    const auto& lam = r.lambda;
    const std::vector<cplx> swapped{lam[1], lam[0]};
    auto closed = [&](const std::vector<double>& x) {
      const cplx e = plane(lam, x);
      if (x[0] > x[1]) return e;
      return e - r.gamma * (e - plane(swapped, x)) / (I * (lam[0] - lam[1]));
    };
    for (auto route : {PrewaveRoute::orbit, PrewaveRoute::propagation, PrewaveRoute::creation,
                       PrewaveRoute::creation_plus}) {
      CAPTURE(route_name(route));
      const auto psi = prewavefunction(r, route);
      for (const auto& x : sample_regular_points(2, kL, 20, g)) CHECK(rel(psi(x), closed(x)) < 1e-12);
    }
  }
}

TEST_CASE("two-particle Bethe wavefunction against the sign form") {
  auto g = rng(2);
  const auto r = random_set(g, 2);
  const cplx d = r.lambda[0] - r.lambda[1];
  const std::vector<cplx> swapped{r.lambda[1], r.lambda[0]};
  for (auto route : {BetheRoute::explicit_sum, BetheRoute::symmetrize, BetheRoute::creation}) {
    CAPTURE(route_name(route));
    const auto Psi = bethe_wavefunction(r, route);
    for (const auto& x : sample_regular_points(2, kL, 20, g)) {
      const double sgn = x[0] > x[1] ? 1.0 : -1.0;
      const cplx expect =
          0.5 * ((1.0 - I * r.gamma * sgn / d) * plane(r.lambda, x) + (1.0 + I * r.gamma * sgn / d) * plane(swapped, x));
      CHECK(rel(Psi(x), expect) < 1e-12);
    }
  }
}

TEST_CASE("free case is the plane wave on every alcove") {
  auto g = rng(3);
  for (int n = 1; n <= 4; ++n) {
    const auto r = random_set(g, n, 0.0);
    const auto psi = prewavefunction(r, PrewaveRoute::orbit);
    for (const auto& x : sample_regular_points(n, kL, 10, g)) CHECK(rel(psi(x), plane(r.lambda, x)) < 1e-12);
  }
}

TEST_CASE("pre-wavefunction routes agree") {
  auto g = rng(4);
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    const auto r = random_set(g, n);
    const auto ref = prewavefunction(r, PrewaveRoute::orbit);
    CHECK(max_diff(ref, prewavefunction(r, PrewaveRoute::propagation), g) < 1e-10);
    if (n <= 3) {
      CHECK(max_diff(ref, prewavefunction(r, PrewaveRoute::creation), g) < 1e-10);
      CHECK(max_diff(ref, prewavefunction(r, PrewaveRoute::creation_plus), g) < 1e-10);
    }
  }
}

TEST_CASE("Bethe wavefunction routes agree") {
  auto g = rng(5);
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    const auto r = random_set(g, n);
    const auto ref = bethe_wavefunction(r, BetheRoute::explicit_sum);
    CHECK(is_symmetric(ref));
    CHECK(max_diff(ref, bethe_wavefunction(r, BetheRoute::symmetrize), g) < 1e-10);
    if (n <= 3) CHECK(max_diff(ref, bethe_wavefunction(r, BetheRoute::creation), g) < 1e-10);
  }
}

TEST_CASE("Bethe wavefunction is one at the origin and symmetric in the rapidities") {
  auto g = rng(6);
  for (int n = 1; n <= 4; ++n) {
    const auto r = random_set(g, n);
    const auto Psi = bethe_wavefunction(r);
    CHECK(rel(eval(Psi.piece(Permutation::identity(n)), std::vector<double>(n, 0.0)), 1.0) < 1e-12);
    for (const auto& w : all_permutations(n)) {
      RapiditySet moved = r;
      for (int j = 0; j < n; ++j) moved.lambda[j] = r.lambda[w(j + 1) - 1];
      CHECK(max_diff(Psi, bethe_wavefunction(moved), g, 5) < 1e-10);
    }
  }
}

TEST_CASE("coinciding rapidities are rejected") {
  const auto r = make_rapidities({0.4, 0.4, 1.0}, kGamma, kL);
  CHECK_THROWS_AS(prewavefunction(r), RegularityError);
  CHECK_THROWS_AS(bethe_wavefunction(r), RegularityError);
}

TEST_CASE("QNLS checks pass for wavefunctions and fail for a perturbed one") {
  auto g = rng(7);
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto r = random_set(g, n);
    const auto psi = prewavefunction(r);
    const auto Psi = bethe_wavefunction(r);
    const auto rp = verify_qnls(psi, r, true);
    const auto rs = verify_qnls(Psi, r, false);
    for (const auto& c : rp.checks) {
      CAPTURE(c.check);
      CHECK(c.pass);
    }
    for (const auto& c : rs.checks) {
      CAPTURE(c.check);
      CHECK(c.pass);
    }
    if (n >= 2) {
      // an extra plane wave with the wrong energy on one alcove breaks everything
      AlcoveFunction bad = Psi;
      bad.piece_at(1) += ExpPolySum::plane_wave(std::vector<cplx>(n, 0.1), 0.05);
      const auto rb = verify_qnls(bad, r, false);
      CHECK_FALSE(rb.checks[0].pass);
      CHECK_FALSE(rb.pass());
    }
  }
}

TEST_CASE("periodicity on shell, and its failure off shell and for the pre-wavefunction") {
  for (const auto& doubled : std::vector<std::vector<int>>{{0}, {-1, 1}, {-2, 0, 2}, {-3, -1, 1, 5}}) {
    const int n = static_cast<int>(doubled.size());
    CAPTURE(n);
    const auto sol = solve_bae(QuantumNumbers(doubled), kGamma, kL);
    const auto& r = sol.rapidities;
    REQUIRE(r.on_shell());
    const auto Psi = bethe_wavefunction(r);
    const auto rep = check_periodicity(Psi, r);
    for (const auto& c : rep.checks) {
      CAPTURE(c.check);
      CHECK(c.pass);
    }
    if (n >= 2) {
      const auto res = periodicity_residuals(prewavefunction(r), r.L);
      CHECK(std::max(res.value, res.derivative) > 1e-3);
    }
    RapiditySet off = r;
    off.lambda[0] += 0.05;
    off = with_bae_check(off);
    const auto res = periodicity_residuals(bethe_wavefunction(off), off.L);
    CHECK(std::max(res.value, res.derivative) > 1e-3);
    CHECK_FALSE(check_periodicity(bethe_wavefunction(off), off).pass());
  }
}

TEST_CASE("degenerate pair matches the closed form") {
  auto g = rng(8);
  const double lam = 0.6;
  const auto r = make_rapidities({lam, lam}, kGamma, kL);
  const auto lim = prewavefunction_degenerate(r);
  CHECK(lim.accuracy < 1e-5);
  for (const auto& x : sample_regular_points(2, kL, 20, g)) {
    const double step = x[1] > x[0] ? x[1] - x[0] : 0.0;
    const cplx expect = std::exp(I * lam * (x[0] + x[1])) * (1.0 + kGamma * step);
    CHECK(rel(lim.value(x), expect) < 1e-7);
  }
}

TEST_CASE("repeated rapidities match propagation evaluated at the coinciding point") {
  auto g = rng(9);
  const auto r = make_rapidities({1.0, 1.0, 2.0}, kGamma, kL);
  const auto coarse = prewavefunction_degenerate(r, 1e-3);
  const auto fine = prewavefunction_degenerate(r, 5e-4);
  // propagation has no denominators, so it evaluates exactly at repeated rapidities
  const auto exact = propagation(ExpPolySum::plane_wave(r.lambda), r.gamma);
  CHECK(max_diff(coarse.value, fine.value, g) < 1e-7);
  CHECK(max_diff(fine.value, exact, g) < 1e-7);

  const auto r3 = make_rapidities({0.5, 0.5, 0.5}, kGamma, kL);
  const auto exact3 = propagation(ExpPolySum::plane_wave(r3.lambda), r3.gamma);
  CHECK(max_diff(prewavefunction_degenerate(r3).value, exact3, g) < 1e-6);
}

TEST_CASE("regular rapidities pass through the degenerate entry point unchanged") {
  auto g = rng(10);
  const auto r = random_set(g, 3);
  const auto lim = prewavefunction_degenerate(r);
  CHECK(lim.accuracy == 0.0);
  CHECK(max_diff(lim.value, prewavefunction(r), g) < 1e-14);
}

TEST_CASE("position action on psi equals the inverse deformed momentum action") {
  auto g = rng(11);
  for (int n = 2; n <= 3; ++n) {
    const auto r = random_set(g, n);
    OrbitFunction base(r.lambda, n);
    std::vector<AlcoveFunction> psis;
    for (const auto& sigma : all_permutations(n)) {
      RapiditySet moved = r;
      moved.lambda = base.point(sigma);
      psis.push_back(prewavefunction(moved));
    }
    const auto psi = psis[permutation_index(Permutation::identity(n))];
    for (const auto& w : all_permutations(n)) {
      const auto lhs = act_position(w, psi);
      for (const auto& tau : all_permutations(n)) {
        OrbitFunction o(r.lambda, n);
        for (std::size_t s = 0; s < o.size(); ++s) o.entry_at(s) = psis[s].piece(tau);
        const auto rhs = apply_deformed_word(o, w.inverse(), r.gamma).entry(Permutation::identity(n));
        for (const auto& x : sample_regular_points(n, kL, 4, g))
          CHECK(rel(eval(lhs.piece(tau), x), eval(rhs, x)) < 1e-10);
      }
    }
  }
}

TEST_CASE("property: random rapidity sets satisfy the QNLS checks") {
  auto g = rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + static_cast<int>(g() % 4);
    const double gamma = uniform(g, -1.5, 2.5);
    const auto r = random_set(g, n, gamma);
    CAPTURE(n);
    CAPTURE(gamma);
    CHECK(verify_qnls(prewavefunction(r), r, true, {10, 4, g()}).pass());
    CHECK(verify_qnls(bethe_wavefunction(r), r, false, {10, 4, g()}).pass());
  }
}
