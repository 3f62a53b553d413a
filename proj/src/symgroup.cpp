#include "qnls/symgroup.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace qnls {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<char> seen(n + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::simple(int n, int j) {
  if (j < 1 || j >= n) throw std::out_of_range("Permutation::simple: index out of range");
  return transposition(n, j, j + 1);
}

Permutation Permutation::transposition(int n, int j, int k) {
  if (j < 1 || k < 1 || j > n || k > n) throw std::out_of_range("Permutation::transposition: index out of range");
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::swap(im[j - 1], im[k - 1]);
  return Permutation(std::move(im));
}

Permutation Permutation::longest(int n) {
  std::vector<int> im(n);
  for (int j = 0; j < n; ++j) im[j] = n - j;
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int j = 1; j <= size(); ++j) im[images_[j - 1] - 1] = j;
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (int j = 1; j <= size(); ++j)
    if (images_[j - 1] != j) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(images_[j]);
  }
  return s + "]";
}

Permutation compose(const Permutation& w, const Permutation& v) {
  if (w.size() != v.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> im(w.size());
  for (int j = 1; j <= w.size(); ++j) im[j - 1] = w(v(j));
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation& w, const Permutation& v) { return compose(w, v); }

std::vector<std::pair<int, int>> inversion_set(const Permutation& w) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= w.size(); ++j)
    for (int k = j + 1; k <= w.size(); ++k)
      if (w(j) > w(k)) out.emplace_back(j, k);
  return out;
}

int length(const Permutation& w) {
  int l = 0;
  for (int j = 1; j <= w.size(); ++j)
    for (int k = j + 1; k <= w.size(); ++k)
      if (w(j) > w(k)) ++l;
  return l;
}

std::vector<int> reduced_word(const Permutation& w) {
  // v <- v s_j at the first descent until v = id; then w = s_{j_l} ... s_{j_1}.
  std::vector<int> v = w.images();
  std::vector<int> steps;
  for (;;) {
    int j = 0;
    for (std::size_t t = 0; t + 1 < v.size(); ++t)
      if (v[t] > v[t + 1]) {
        j = static_cast<int>(t) + 1;
        break;
      }
    if (j == 0) break;
    std::swap(v[j - 1], v[j]);
    steps.push_back(j);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

Permutation word_product(int n, const std::vector<int>& word) {
  Permutation p = Permutation::identity(n);
  for (int j : word) p = p * Permutation::simple(n, j);
  return p;
}

Permutation shift_embed(const Permutation& w) {
  std::vector<int> im(w.size() + 1);
  im[0] = 1;
  for (int j = 1; j <= w.size(); ++j) im[j] = w(j) + 1;
  return Permutation(std::move(im));
}

namespace {
std::atomic<int> g_cap{6};
std::mutex g_mutex;
std::map<int, std::unique_ptr<std::vector<Permutation>>> g_cache;
}  // namespace

int enumeration_cap() { return g_cap.load(); }
void set_enumeration_cap(int cap) { g_cap.store(cap); }

const std::vector<Permutation>& all_permutations(int n) {
  if (n < 0 || n > enumeration_cap()) throw std::out_of_range("all_permutations: N above enumeration cap");
  std::lock_guard<std::mutex> lock(g_mutex);
  auto& slot = g_cache[n];
  if (!slot) {
    slot = std::make_unique<std::vector<Permutation>>();
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    do slot->emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
  }
  return *slot;
}

std::size_t permutation_index(const Permutation& w) {
  // Lehmer code rank, matching the lexicographic enumeration order.
  const int n = w.size();
  std::size_t rank = 0;
  for (int j = 1; j <= n; ++j) {
    int smaller = 0;
    for (int k = j + 1; k <= n; ++k)
      if (w(k) < w(j)) ++smaller;
    rank = rank * static_cast<std::size_t>(n - j + 1) + static_cast<std::size_t>(smaller);
  }
  return rank;
}

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace qnls
