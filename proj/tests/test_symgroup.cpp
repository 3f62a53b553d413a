#include "doctest.h"

#include <set>

#include "qnls/symgroup.hpp"

using namespace qnls;

TEST_CASE("compose follows w(v(j))") {
  const Permutation s1 = Permutation::simple(3, 1), s2 = Permutation::simple(3, 2);
  CHECK(compose(Permutation::identity(3), s2) == s2);
  CHECK(compose(s1, s1).is_identity());
  const Permutation p = compose(s1, s2);
  // index chase: s2 sends 2->3, then s1 fixes 3
  CHECK(p(1) == 2);
  CHECK(p(2) == 3);
  CHECK(p(3) == 1);
  for (const auto& w : all_permutations(4)) CHECK(compose(w, w.inverse()).is_identity());
  CHECK_THROWS(compose(s1, Permutation::identity(4)));
}

TEST_CASE("inversion sets and lengths against brute force") {
  CHECK(inversion_set(Permutation::identity(4)).empty());
  for (int j = 1; j < 4; ++j) {
    auto inv = inversion_set(Permutation::simple(4, j));
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == std::make_pair(j, j + 1));
  }
  for (const auto& w : all_permutations(4)) {
    std::set<std::pair<int, int>> expect;
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        if (j < k && w(j) > w(k)) expect.insert({j, k});
    auto got = inversion_set(w);
    CHECK(std::set<std::pair<int, int>>(got.begin(), got.end()) == expect);
    CHECK(length(w) == static_cast<int>(expect.size()));
    CHECK(length(w.inverse()) == length(w));
  }
  for (int n = 1; n <= 6; ++n) CHECK(length(Permutation::longest(n)) == n * (n - 1) / 2);
}

TEST_CASE("length changes by one under right multiplication by s_j") {
  for (const auto& w : all_permutations(5))
    for (int j = 1; j < 5; ++j) {
      const int expect = length(w) + (w(j) < w(j + 1) ? 1 : -1);
      CHECK(length(w * Permutation::simple(5, j)) == expect);
    }
}

TEST_CASE("reduced words multiply back to w and have minimal length") {
  CHECK(reduced_word(Permutation::identity(3)).empty());
  const Permutation s2s1 = Permutation::simple(3, 2) * Permutation::simple(3, 1);
  const auto word = reduced_word(s2s1);
  CHECK(word.size() == 2);
  CHECK(word_product(3, word) == s2s1);
  for (const auto& w : all_permutations(5)) {
    const auto rw = reduced_word(w);
    CHECK(static_cast<int>(rw.size()) == length(w));
    CHECK(word_product(5, rw) == w);
  }
}

TEST_CASE("shift embedding") {
  CHECK(shift_embed(Permutation::identity(3)) == Permutation::identity(4));
  CHECK(shift_embed(Permutation::simple(2, 1)) == Permutation::simple(3, 2));
  for (const auto& w : all_permutations(3)) {
    const Permutation wp = shift_embed(w);
    CHECK(wp(1) == 1);
    for (int j = 1; j <= 3; ++j) CHECK(wp(j + 1) == w(j) + 1);
    CHECK(length(wp) == length(w));
  }
}

TEST_CASE("S_{N+1} splits as S_N times a choice of position") {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::pair<std::vector<int>, int>> images;
    for (const auto& w : all_permutations(n + 1)) {
      const int m = w.inverse()(n + 1);
      const Permutation v = w * Permutation::transposition(n + 1, m, n + 1);
      CHECK(v(n + 1) == n + 1);
      std::vector<int> head(v.images().begin(), v.images().end() - 1);
      images.insert({head, m});
    }
    CHECK(static_cast<long>(images.size()) == factorial(n + 1));
  }
}

TEST_CASE("length conditions on pairs agree") {
  // l(vw) = l(v)+l(w)  <=>  Sigma(vw) = w^{-1}Sigma(v) u Sigma(w)  <=>  w^{-1}Sigma(v) has only increasing pairs
  for (const auto& v : all_permutations(4))
    for (const auto& w : all_permutations(4)) {
      const Permutation vw = v * w, winv = w.inverse();
      std::set<std::pair<int, int>> moved;
      for (auto [j, k] : inversion_set(v)) moved.insert({winv(j), winv(k)});
      const bool c1 = length(vw) == length(v) + length(w);
      std::set<std::pair<int, int>> uni = moved;
      for (auto p : inversion_set(w)) uni.insert(p);
      auto lhs = inversion_set(vw);
      const bool c2 = std::set<std::pair<int, int>>(lhs.begin(), lhs.end()) == uni;
      bool c3 = true;
      for (auto [j, k] : moved) c3 = c3 && j < k;
      CHECK(c1 == c2);
      CHECK(c1 == c3);
    }
}

TEST_CASE("enumeration order matches the Lehmer index") {
  for (int n = 0; n <= 5; ++n) {
    const auto& perms = all_permutations(n);
    CHECK(static_cast<long>(perms.size()) == factorial(n));
    for (std::size_t i = 0; i < perms.size(); ++i) CHECK(permutation_index(perms[i]) == i);
  }
  CHECK_THROWS(all_permutations(enumeration_cap() + 1));
  CHECK_THROWS(Permutation({1, 1, 2}));
}
