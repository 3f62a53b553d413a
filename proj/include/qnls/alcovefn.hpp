#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qnls/exppoly.hpp"
#include "qnls/symgroup.hpp"

namespace qnls {

// Piecewise exp-poly function on R^N. The piece for ordering sigma lives on
// the alcove x_{sigma(1)} > ... > x_{sigma(N)}; pieces are stored in the
// enumeration order of all_permutations(N).
class AlcoveFunction {
public:
  AlcoveFunction() = default;
  explicit AlcoveFunction(int n, bool continuous = false);

  static AlcoveFunction from_analytic(const ExpPolySum& f);
  // Extension by symmetry of a function given on x_1 > ... > x_N.
  static AlcoveFunction symmetric_extension(const ExpPolySum& fundamental);

  int n() const { return n_; }
  bool continuous() const { return continuous_; }
  void set_continuous(bool c) { continuous_ = c; }

  const ExpPolySum& piece(const Permutation& sigma) const { return pieces_[permutation_index(sigma)]; }
  ExpPolySum& piece(const Permutation& sigma) { return pieces_[permutation_index(sigma)]; }
  const ExpPolySum& piece_at(std::size_t idx) const { return pieces_[idx]; }
  ExpPolySum& piece_at(std::size_t idx) { return pieces_[idx]; }
  std::size_t piece_count() const { return pieces_.size(); }

  // Value at x. Points on a wall are accepted only when the continuity flag is set.
  cplx operator()(const std::vector<double>& x) const;
  // One-sided value on the wall x_j = x_k: plus means the limit from x_j > x_k.
  cplx eval_side(const std::vector<double>& x, int j, int k, bool plus) const;

private:
  int n_ = 0;
  bool continuous_ = false;
  std::vector<ExpPolySum> pieces_;
};

// Ordering sigma with x_{sigma(1)} > ... > x_{sigma(N)}; ties broken by index.
Permutation ordering_of(const std::vector<double>& x);
bool on_wall(const std::vector<double>& x);

AlcoveFunction add(const AlcoveFunction& f, const AlcoveFunction& g);
AlcoveFunction scale(cplx c, const AlcoveFunction& f);
AlcoveFunction operator+(const AlcoveFunction& f, const AlcoveFunction& g);
AlcoveFunction operator-(const AlcoveFunction& f, const AlcoveFunction& g);
AlcoveFunction operator*(cplx c, const AlcoveFunction& f);

// (w f)(x) = f(w^{-1} x), (w^{-1}x)_m = x_{w(m)}: slot m moves to slot w(m).
ExpPolySum act_position(const Permutation& w, const ExpPolySum& f);
AlcoveFunction act_position(const Permutation& w, const AlcoveFunction& f);

AlcoveFunction symmetrize(const AlcoveFunction& f);
AlcoveFunction derivative(const AlcoveFunction& f, int j);
AlcoveFunction laplacian(const AlcoveFunction& f);

// Dunkl-type operator d_j - gamma (sum_{k<j} th(x_j-x_k) s_{jk} - sum_{k>j} th(x_k-x_j) s_{jk}).
AlcoveFunction dunkl(const AlcoveFunction& f, int j, double gamma);

// (I_{jk} f)(x) = int_0^{x_j-x_k} f(x - y(e_j - e_k)) dy in closed form.
ExpPolySum reflection_integral(const ExpPolySum& f, int j, int k);
// s_{j,gamma} = s_j + gamma I_{j,j+1}.
ExpPolySum deformed_transposition_position(const ExpPolySum& f, int j, double gamma);
// w_gamma f along the reduced word of w.
ExpPolySum deformed_word_position(const ExpPolySum& f, const Permutation& w, double gamma);
// Piece on the alcove of ordering sigma is w^{-1} w_gamma f with w = sigma^{-1}.
AlcoveFunction propagation(const ExpPolySum& f, double gamma);

struct WallSample {
  int j = 0;
  int k = 0;
  std::vector<double> x;
};

struct JumpRecord {
  WallSample sample;
  cplx plus;
  cplx minus;
  cplx residual;
};

// Derivative jump (d_j-d_k)^r F|+ - (d_j-d_k)^r F|- - (1-(-1)^r) gamma (d_j-d_k)^{r-1} F on the wall.
std::vector<JumpRecord> wall_jump(const AlcoveFunction& f, int j, int k, double gamma,
                                  const std::vector<WallSample>& samples, int order = 1);

// Largest |left limit - right limit| relative to max(1, |value|) over the samples.
double continuity_defect(const AlcoveFunction& f, const std::vector<WallSample>& samples);

inline constexpr double kWallGapFloor = 1e-6;

// Regular points in [-L/2, L/2]^N with pairwise gaps at least the floor.
std::vector<std::vector<double>> sample_regular_points(int n, double L, int count, std::mt19937_64& rng);
std::vector<WallSample> sample_wall_points(int n, int j, int k, double L, int count, std::mt19937_64& rng);

}  // namespace qnls
