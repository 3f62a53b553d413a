#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qnls {

// Element of S_N stored by its images: images()[j-1] = w(j), 1-based values.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  // Simple transposition s_j swapping j and j+1.
  static Permutation simple(int n, int j);
  // Transposition s_{jk}.
  static Permutation transposition(int n, int j, int k);
  static Permutation longest(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[j - 1]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<int> images_;
};

// (compose(w, v))(j) = w(v(j)).
Permutation compose(const Permutation& w, const Permutation& v);
Permutation operator*(const Permutation& w, const Permutation& v);

std::vector<std::pair<int, int>> inversion_set(const Permutation& w);
int length(const Permutation& w);

// Indices j_1..j_l with w = s_{j_1} ... s_{j_l}, l = length(w). Built by
// bubble-sort descent, smallest descent first.
std::vector<int> reduced_word(const Permutation& w);
Permutation word_product(int n, const std::vector<int>& word);

// w_+ in S_{N+1}: w_+(1) = 1, w_+(j+1) = w(j) + 1.
Permutation shift_embed(const Permutation& w);

// All of S_N in lexicographic order of images. Cached for n <= enumeration_cap().
const std::vector<Permutation>& all_permutations(int n);
int enumeration_cap();
void set_enumeration_cap(int cap);

// Position of w in all_permutations(w.size()).
std::size_t permutation_index(const Permutation& w);

long factorial(int n);

}  // namespace qnls
