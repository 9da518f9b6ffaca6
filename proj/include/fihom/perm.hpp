#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fihom {

/// A permutation of {0, ..., n-1}, stored in one-line notation.
/// Composition is right-to-left: (a * b)(i) = a(b(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n) : images_(n) { std::iota(images_.begin(), images_.end(), std::size_t{0}); }
  explicit Perm(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (auto v : images_) {
      if (v >= images_.size() || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = 1;
    }
  }

  static Perm identity(std::size_t n) { return Perm(n); }

  /// The adjacent transposition swapping i and i+1 (0-based).
  static Perm adjacent(std::size_t n, std::size_t i) {
    if (i + 1 >= n) throw std::out_of_range("adjacent transposition index out of range");
    Perm p(n);
    std::swap(p.images_[i], p.images_[i + 1]);
    return p;
  }

  /// The cycle i -> i+1 -> ... -> j -> i (0-based, i <= j).
  static Perm cycle(std::size_t n, std::size_t i, std::size_t j) {
    Perm p(n);
    for (std::size_t k = i; k < j; ++k) p.images_[k] = k + 1;
    if (j < n) p.images_[j] = i;
    return p;
  }

  /// From 1-based images, the external notation.
  static Perm from_one_based(const std::vector<std::size_t>& img) {
    std::vector<std::size_t> v(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (img[i] == 0) throw std::invalid_argument("permutation images are 1-based");
      v[i] = img[i] - 1;
    }
    return Perm(std::move(v));
  }

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Perm operator*(const Perm& b) const {
    if (b.size() != size()) throw std::invalid_argument("composing permutations of different degree");
    Perm c(size());
    for (std::size_t i = 0; i < size(); ++i) c.images_[i] = images_[b.images_[i]];
    return c;
  }

  Perm inverse() const {
    Perm c(size());
    for (std::size_t i = 0; i < size(); ++i) c.images_[images_[i]] = i;
    return c;
  }

  /// Extends to a permutation of {0..m-1}, m >= n, fixing the new points.
  Perm extended(std::size_t m) const {
    Perm c(m);
    std::copy(images_.begin(), images_.end(), c.images_.begin());
    return c;
  }

  /// Indices i_1, ..., i_k with *this = s_{i_1} s_{i_2} ... s_{i_k}, a
  /// reduced word found by bubble sort.
  std::vector<std::size_t> coxeter_word() const {
    std::vector<std::size_t> w = images_;
    std::vector<std::size_t> right;  // sigma * s_{r1} * s_{r2} ... = id
    for (std::size_t pass = 0; pass < w.size(); ++pass) {
      bool swapped = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] > w[i + 1]) {
          std::swap(w[i], w[i + 1]);
          right.push_back(i);
          swapped = true;
        }
      }
      if (!swapped) break;
    }
    std::reverse(right.begin(), right.end());
    return right;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(images_[i] + 1);
    return s + "]";
  }

 private:
  std::vector<std::size_t> images_;
};

/// A subset of {0..n-1}, kept sorted.
using Subset = std::vector<std::size_t>;

/// Factors sigma . beta_S = beta_T . tau, where beta_S is the
/// order-preserving injection [m] -> [n] with image S.
struct SubsetPermResult {
  Subset image;
  Perm tau;
};

inline SubsetPermResult induced_subset_perm(const Perm& sigma, const Subset& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] >= sigma.size()) throw std::invalid_argument("subset element outside [n]");
    if (k && s[k] <= s[k - 1]) throw std::invalid_argument("subset must be strictly increasing");
  }
  Subset t(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) t[k] = sigma(s[k]);
  std::sort(t.begin(), t.end());
  std::vector<std::size_t> tau(s.size());
  for (std::size_t k = 0; k < s.size(); ++k)
    tau[k] = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), sigma(s[k])) - t.begin());
  return {std::move(t), Perm(std::move(tau))};
}

/// All m-subsets of {0..n-1} in lexicographic order.
inline std::vector<Subset> subsets_of_size(std::size_t n, std::size_t m) {
  std::vector<Subset> out;
  if (m > n) return out;
  Subset cur(m);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  while (true) {
    out.push_back(cur);
    std::size_t i = m;
    while (i > 0 && cur[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Lexicographic rank of an m-subset among all m-subsets of {0..n-1}.
inline std::size_t subset_rank(std::size_t n, const Subset& s) {
  std::size_t m = s.size(), r = 0, prev = 0;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t v = (k ? prev + 1 : 0); v < s[k]; ++v) r += binomial(n - v - 1, m - k - 1);
    prev = s[k];
  }
  return r;
}

}  // namespace fihom
