#include "doctest.h"

#include "qnls/alcovefn.hpp"
#include "support.hpp"

using namespace qnls;
using namespace testsupport;

namespace {

const cplx I(0.0, 1.0);

AlcoveFunction random_alcove_function(std::mt19937_64& r, int n) {
  AlcoveFunction f(n);
  for (std::size_t i = 0; i < f.piece_count(); ++i) f.piece_at(i) = random_exppoly(r, n, 2, 1);
  return f;
}

ExpPolySum plane_wave(const std::vector<cplx>& lam) { return ExpPolySum::plane_wave(lam); }

double max_rel(const AlcoveFunction& f, const AlcoveFunction& g, const std::vector<std::vector<double>>& pts) {
  double worst = 0.0;
  for (const auto& x : pts) worst = std::max(worst, rel(f(x), g(x)));
  return worst;
}

}  // namespace

TEST_CASE("analytic functions become continuous alcove functions") {
  auto r = rng(20);
  const auto f = random_exppoly(r, 3, 3, 1);
  const auto F = AlcoveFunction::from_analytic(f);
  CHECK(F.continuous());
  for (const auto& x : sample_regular_points(3, 4.0, 100, r)) CHECK(rel(F(x), eval(f, x)) < 1e-15);
  // the propagation operator is the identity at zero coupling
  const auto P0 = propagation(plane_wave({0.3, -0.8, 1.1}), 0.0);
  for (const auto& x : sample_regular_points(3, 4.0, 20, r))
    CHECK(rel(P0(x), eval(plane_wave({0.3, -0.8, 1.1}), x)) < 1e-14);
}

TEST_CASE("position action") {
  auto r = rng(21);
  const auto F = random_alcove_function(r, 3);
  const auto pts = sample_regular_points(3, 4.0, 30, r);
  CHECK(max_rel(act_position(Permutation::identity(3), F), F, pts) == 0.0);
  for (const auto& w : all_permutations(3)) {
    const auto wF = act_position(w, F);
    const Permutation winv = w.inverse();
    for (const auto& x : pts) {
      // (w^{-1} x)_m = x_{w(m)}
      std::vector<double> y(3);
      for (int m = 1; m <= 3; ++m) y[m - 1] = x[w(m) - 1];
      CHECK(rel(wF(x), F(y)) < 1e-14);
    }
    for (const auto& v : all_permutations(3))
      CHECK(max_rel(act_position(w * v, F), act_position(w, act_position(v, F)), pts) < 1e-14);
  }
  // w e^{i lam} = e^{i w lam} with (w lam)_j = lam_{w^{-1}(j)}
  const std::vector<cplx> lam{0.4, -1.2, 2.5};
  for (const auto& w : all_permutations(3)) {
    std::vector<cplx> wl(3);
    for (int j = 1; j <= 3; ++j) wl[j - 1] = lam[w.inverse()(j) - 1];
    const auto lhs = act_position(w, plane_wave(lam));
    for (const auto& x : pts) CHECK(rel(eval(lhs, x), eval(plane_wave(wl), x)) < 1e-14);
  }
}

TEST_CASE("symmetrizer") {
  auto r = rng(22);
  const auto F = random_alcove_function(r, 3);
  const auto S = symmetrize(F);
  const auto pts = sample_regular_points(3, 4.0, 20, r);
  CHECK(max_rel(symmetrize(S), S, pts) < 1e-13);
  for (const auto& w : all_permutations(3)) CHECK(max_rel(act_position(w, S), S, pts) < 1e-13);
  for (const auto& x : pts) {
    cplx acc = 0.0;
    for (const auto& w : all_permutations(3)) {
      std::vector<double> y(3);
      for (int m = 1; m <= 3; ++m) y[m - 1] = x[w(m) - 1];
      acc += F(y);
    }
    CHECK(rel(S(x), acc / 6.0) < 1e-13);
  }
}

TEST_CASE("wall evaluation needs a side for discontinuous functions") {
  auto r = rng(23);
  const auto F = random_alcove_function(r, 2);
  CHECK_THROWS_AS(F(std::vector<double>{0.5, 0.5}), std::domain_error);
  const auto G = AlcoveFunction::from_analytic(random_exppoly(r, 2, 1, 0));
  CHECK_NOTHROW(G(std::vector<double>{0.5, 0.5}));
  const std::vector<double> x{0.5, 0.5};
  CHECK(rel(F.eval_side(x, 1, 2, true), eval(F.piece(Permutation::identity(2)), x)) == 0.0);
  CHECK(rel(F.eval_side(x, 1, 2, false), eval(F.piece(Permutation::simple(2, 1)), x)) == 0.0);
}

TEST_CASE("Dunkl operators") {
  auto r = rng(24);
  const double gamma = 0.9;
  const auto F = random_alcove_function(r, 3);
  const auto pts = sample_regular_points(3, 4.0, 30, r);
  // on the fundamental alcove the Dunkl operator is the plain derivative
  for (int j = 1; j <= 3; ++j) {
    const auto D = dunkl(F, j, gamma);
    CHECK(D.piece(Permutation::identity(3)).terms().size() ==
          derivative(F.piece(Permutation::identity(3)), j).terms().size());
  }
  // N = 2: d_{1,g} = d_1 + g th(x2 - x1) s_12, d_{2,g} = d_2 - g th(x2 - x1) s_12
  const auto G = random_alcove_function(r, 2);
  const auto D1 = dunkl(G, 1, gamma), D2 = dunkl(G, 2, gamma);
  const auto dG1 = derivative(G, 1), dG2 = derivative(G, 2);
  for (const auto& x : sample_regular_points(2, 4.0, 20, r)) {
    const double th = x[1] > x[0] ? 1.0 : 0.0;
    const std::vector<double> sx{x[1], x[0]};
    CHECK(rel(D1(x), dG1(x) + gamma * th * G(sx)) < 1e-13);
    CHECK(rel(D2(x), dG2(x) - gamma * th * G(sx)) < 1e-13);
  }
  // commutativity
  for (int j = 1; j <= 3; ++j)
    for (int k = j + 1; k <= 3; ++k) {
      const auto a = dunkl(dunkl(F, k, gamma), j, gamma), b = dunkl(dunkl(F, j, gamma), k, gamma);
      CHECK(max_rel(a, b, pts) < 1e-11);
    }
}

TEST_CASE("Dunkl representation satisfies the cross relation") {
  auto r = rng(25);
  const double gamma = -0.7;
  const int n = 3;
  const auto F = random_alcove_function(r, n);
  const auto pts = sample_regular_points(n, 4.0, 20, r);
  for (int j = 1; j < n; ++j)
    for (int k = 1; k <= n; ++k) {
      const Permutation s = Permutation::simple(n, j);
      const auto lhs = act_position(s, dunkl(F, k, gamma)) - dunkl(act_position(s, F), s(k), gamma);
      const double delta = (k == j ? 1.0 : 0.0) - (k == j + 1 ? 1.0 : 0.0);
      CHECK(max_rel(lhs, scale(gamma * delta, F), pts) < 1e-11);
    }
}

TEST_CASE("symmetric polynomials in Dunkl operators") {
  auto r = rng(26);
  const double gamma = 1.3;
  const auto F = random_alcove_function(r, 3);
  const auto pts = sample_regular_points(3, 4.0, 20, r);
  AlcoveFunction p2(3), e2(3), e2plain(3);
  for (int j = 1; j <= 3; ++j) p2 = p2 + dunkl(dunkl(F, j, gamma), j, gamma);
  CHECK(max_rel(p2, laplacian(F), pts) < 1e-11);
  for (int j = 1; j <= 3; ++j)
    for (int k = j + 1; k <= 3; ++k) {
      e2 = e2 + dunkl(dunkl(F, k, gamma), j, gamma);
      e2plain = e2plain + derivative(derivative(F, k), j);
    }
  CHECK(max_rel(e2, e2plain, pts) < 1e-11);
  // symmetrization commutes with symmetric combinations of Dunkl operators
  const auto S = symmetrize(F);
  AlcoveFunction e2S(3);
  for (int j = 1; j <= 3; ++j)
    for (int k = j + 1; k <= 3; ++k) e2S = e2S + dunkl(dunkl(S, k, gamma), j, gamma);
  CHECK(max_rel(symmetrize(e2), e2S, pts) < 1e-11);
}

TEST_CASE("reflection integral") {
  auto r = rng(27);
  const std::vector<cplx> lam{0.6, -0.9, 1.7};
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      if (j == k) continue;
      const auto Ie = reflection_integral(plane_wave(lam), j, k);
      std::vector<cplx> sl = lam;
      std::swap(sl[j - 1], sl[k - 1]);
      for (int p = 0; p < 10; ++p) {
        auto x = random_point(r, 3, 2.0);
        // I_{jk} e^{i lam} = -i (e^{i lam} - e^{i s_jk lam}) / (lam_j - lam_k)
        const cplx div = (eval(plane_wave(lam), x) - eval(plane_wave(sl), x)) / (lam[j - 1] - lam[k - 1]);
        CHECK(rel(eval(Ie, x), -I * div) < 1e-12);
        x[k - 1] = x[j - 1];
        CHECK(std::abs(eval(Ie, x)) < 1e-13);
      }
    }
  // degenerate wavenumbers give a polynomial prefactor
  const std::vector<cplx> deg{0.8, 0.8, -0.3};
  const auto Id = reflection_integral(plane_wave(deg), 1, 2);
  for (int p = 0; p < 10; ++p) {
    auto x = random_point(r, 3, 2.0);
    CHECK(rel(eval(Id, x), (x[0] - x[1]) * eval(plane_wave(deg), x)) < 1e-13);
  }
  // against quadrature for a random exp-poly
  const auto f = random_exppoly(r, 3, 2, 2);
  const auto If = reflection_integral(f, 1, 3);
  for (int p = 0; p < 5; ++p) {
    auto x = random_point(r, 3, 1.5);
    const cplx ref = simpson(
        [&](double y) {
          return eval(f, std::vector<double>{x[0] - y, x[1], x[2] + y});
        },
        0.0, x[0] - x[2], 1e-13);
    CHECK(rel(eval(If, x), ref) < 1e-9);
  }
}

TEST_CASE("deformed transpositions in the position representation") {
  auto r = rng(28);
  const double gamma = 0.8;
  const auto f = random_exppoly(r, 3, 2, 1);
  CHECK(canonicalize(deformed_transposition_position(f, 1, 0.0) - act_position(Permutation::simple(3, 1), f)).empty());
  for (int j = 1; j <= 2; ++j) {
    const auto twice = deformed_transposition_position(deformed_transposition_position(f, j, gamma), j, gamma);
    for (int p = 0; p < 10; ++p) {
      auto x = random_point(r, 3, 2.0);
      CHECK(rel(eval(twice, x), eval(f, x)) < 1e-10);
    }
  }
  // s_{j,g} e^{i lam} equals the momentum-space deformed transposition
  const std::vector<cplx> lam{0.5, -1.1, 0.9};
  for (int j = 1; j <= 2; ++j) {
    const auto lhs = deformed_transposition_position(plane_wave(lam), j, gamma);
    std::vector<cplx> sl = lam;
    std::swap(sl[j - 1], sl[j]);
    for (int p = 0; p < 10; ++p) {
      auto x = random_point(r, 3, 2.0);
      const cplx e = eval(plane_wave(lam), x), es = eval(plane_wave(sl), x);
      // s~_{j,g} = s~_j - i g Delta~_{j,j+1}, acting on lam -> e^{i<lam,x>}
      const cplx rhs = es - I * gamma * (e - es) / (lam[j - 1] - lam[j]);
      CHECK(rel(eval(lhs, x), rhs) < 1e-12);
    }
  }
}

TEST_CASE("propagation operator for two particles") {
  auto r = rng(29);
  const double gamma = 1.1;
  const auto f = random_exppoly(r, 2, 2, 1);
  const auto P = propagation(f, gamma);
  for (const auto& x : sample_regular_points(2, 3.0, 10, r)) {
    cplx ref = eval(f, x);
    if (x[1] > x[0])
      ref += gamma * simpson([&](double y) { return eval(f, std::vector<double>{x[0] + y, x[1] - y}); }, 0.0,
                             x[1] - x[0], 1e-13);
    CHECK(rel(P(x), ref) < 1e-9);
  }
}

TEST_CASE("propagation operator intertwines") {
  auto r = rng(30);
  const double gamma = 0.75;
  const int n = 3;
  const auto f = random_exppoly(r, n, 2, 1);
  const auto P = propagation(f, gamma);
  const auto pts = sample_regular_points(n, 3.0, 20, r);
  // continuity across walls
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) CHECK(continuity_defect(P, sample_wall_points(n, j, k, 3.0, 10, r)) < 1e-11);
  // Dunkl operators on P f are P applied to derivatives
  for (int j = 1; j <= n; ++j) CHECK(max_rel(dunkl(P, j, gamma), propagation(derivative(f, j), gamma), pts) < 1e-9);
  // w P f = P w_g f
  for (const auto& w : all_permutations(n))
    CHECK(max_rel(act_position(w, P), propagation(deformed_word_position(f, w, gamma), gamma), pts) < 1e-9);
}

TEST_CASE("propagated plane waves solve the Dunkl system and the jump conditions") {
  auto r = rng(31);
  const double gamma = -0.7;
  const std::vector<cplx> lam{0.4 + 0.1 * I, -1.2, 2.5};
  const auto psi = propagation(plane_wave(lam), gamma);
  const auto pts = sample_regular_points(3, 4.0, 30, r);
  for (int j = 1; j <= 3; ++j) CHECK(max_rel(dunkl(psi, j, gamma), scale(I * lam[j - 1], psi), pts) < 1e-10);
  for (int j = 1; j <= 3; ++j)
    for (int k = j + 1; k <= 3; ++k) {
      const auto samples = sample_wall_points(3, j, k, 4.0, 10, r);
      for (int order = 1; order <= 3; ++order)
        for (const auto& rec : wall_jump(psi, j, k, gamma, samples, order))
          CHECK(std::abs(rec.residual) < 1e-9 * std::max({1.0, std::abs(rec.plus), std::abs(rec.minus)}));
    }
  // an analytic function has jump residual -2 gamma F
  const auto F = AlcoveFunction::from_analytic(plane_wave(lam));
  for (const auto& rec : wall_jump(F, 1, 2, gamma, sample_wall_points(3, 1, 2, 4.0, 5, r)))
    CHECK(std::abs(rec.residual + 2.0 * gamma * F(rec.sample.x)) < 1e-12);
  CHECK_THROWS(wall_jump(F, 2, 1, gamma, {}));
}
