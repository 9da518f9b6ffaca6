#pragma once

// Seeded generation of test instances.
//
// Seed discipline: the seed of trial t of suite s (s includes the field,
// e.g. "main/p=2") under master seed M is
//   h = splitmix64(M); h = splitmix64(h ^ fnv1a64(s)); h = splitmix64(h ^ t)
// and the trial draws from a std::mt19937_64 seeded with h. Integers in
// [0, n) come from rejection sampling on the raw 64-bit output, so the
// stream does not depend on the standard library's distributions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fihom/complex.hpp"
#include "fihom/fb_module.hpp"
#include "fihom/induced.hpp"
#include "fihom/snrep.hpp"

namespace fihom::harness {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a64(stream));
  return splitmix64(h ^ trial);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  Scalar scalar(const PrimeField& f) { return static_cast<Scalar>(below(f.p())); }

 private:
  std::mt19937_64 eng_;
};

/// All partitions of m, largest parts first, in reverse lexicographic order.
inline std::vector<Partition> partitions(std::size_t m) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, std::size_t left, std::size_t max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

inline std::size_t perm_module_dim(const Partition& lambda) {
  std::size_t n = 0, d = 1;
  for (auto part : lambda) {
    n += part;
    d = d * binomial(n, part);
  }
  return d;
}

struct GenProfile {
  std::uint32_t p = 2;
  std::size_t nmax = 8;
  std::size_t gen_degree = 2;
  std::size_t cap = 60;          // bound on dim V = sum_m dim V_m
  std::vector<Partition> pool;   // empty: every partition of every m <= g
  std::size_t trials = 100;
  std::uint64_t seed = 20240601;

  std::vector<Partition> pool_for(std::size_t m) const {
    std::vector<Partition> out;
    if (pool.empty()) return partitions(m);
    for (const auto& l : pool)
      if (is_partition_of(l, m)) out.push_back(l);
    return out;
  }

  /// First violated profile invariant.
  std::optional<std::string> check() const {
    if (!PrimeField::is_prime(p) || p >= (1u << 31)) return "p = " + std::to_string(p) + " is not a prime below 2^31";
    if (nmax < 2 * gen_degree + 3)
      return "nmax = " + std::to_string(nmax) + " is below 2 g + 3 = " + std::to_string(2 * gen_degree + 3);
    if (trials == 0) return "trials must be positive";
    for (const auto& l : pool) {
      std::size_t s = 0;
      for (auto x : l) s += x;
      if (!is_partition_of(l, s)) return "pool entry is not a partition";
    }
    return std::nullopt;
  }
};

/// For each m <= g, a sum of 0-3 permutation modules with shapes from the
/// pool, skipping summands that would exceed the dimension cap.
inline FBModule rand_fb_module(const GenProfile& prof, Rng& rng) {
  PrimeField f(prof.p);
  FBModule v(f);
  std::size_t total = 0;
  for (std::size_t m = 0; m <= prof.gen_degree; ++m) {
    SnRep part = SnRep::zero(f, m);
    auto shapes = prof.pool_for(m);
    std::size_t count = rng.below(4);
    for (std::size_t c = 0; c < count && !shapes.empty(); ++c) {
      const Partition& l = shapes[rng.below(shapes.size())];
      std::size_t d = perm_module_dim(l);
      if (total + d > prof.cap) continue;
      total += d;
      part = part.direct_sum(perm_module(f, m, l));
    }
    v.set_part(m, std::move(part));
  }
  return v;
}

namespace detail {

inline std::vector<Matrix> zero_data(const FBModule& v, const FBModule& w) {
  std::vector<Matrix> data;
  for (std::size_t m = 0; m < v.stored(); ++m) data.emplace_back(v.field(), induced_dim(w, m), v.dim(m));
  return data;
}

inline void accumulate(std::vector<Matrix>& data, const InducedMorphism& b, Scalar a) {
  if (a == 0) return;
  for (std::size_t m = 0; m < data.size(); ++m) data[m] = data[m] + b.datum(m).scaled(a);
}

inline Vector flatten(const InducedMorphism& f) {
  Vector out;
  for (const auto& c : f.data())
    for (std::size_t r = 0; r < c.rows(); ++r) {
      auto row = c.row(r);
      out.insert(out.end(), row.begin(), row.end());
    }
  return out;
}

}  // namespace detail

/// A uniformly random element of Hom(II(V), II(W)) in the coordinates of
/// hom_space_basis.
inline InducedMorphism rand_morphism(const FBModule& v, const FBModule& w, Rng& rng) {
  auto basis = hom_space_basis(v, w);
  auto data = detail::zero_data(v, w);
  for (const auto& b : basis) detail::accumulate(data, b, rng.scalar(v.field()));
  return InducedMorphism(v, w, std::move(data));
}

/// A random complex of length L: d_1 is any morphism; d_k for k >= 2 is a
/// random element of {g : d_{k-1} g = 0}, a linear condition on the
/// hom_space_basis coordinates. All-zero draws are retried up to 8 times.
inline ChainComplexFI rand_complex(const GenProfile& prof, Rng& rng, std::size_t length) {
  if (length == 0) throw std::invalid_argument("rand_complex: length must be positive");
  PrimeField f(prof.p);
  std::vector<FBModule> mods;
  for (std::size_t k = 0; k <= length; ++k) mods.push_back(rand_fb_module(prof, rng));
  std::vector<InducedMorphism> diffs;
  for (std::size_t k = 1; k <= length; ++k) {
    auto basis = hom_space_basis(mods[k], mods[k - 1]);
    std::vector<Vector> allowed;  // coefficient vectors
    if (k == 1) {
      for (std::size_t i = 0; i < basis.size(); ++i) {
        Vector e(basis.size(), 0);
        e[i] = 1;
        allowed.push_back(std::move(e));
      }
    } else if (!basis.empty()) {
      std::vector<Vector> cols;
      for (const auto& b : basis) cols.push_back(detail::flatten(diffs.back().compose(b)));
      std::size_t rows = cols.front().size();
      Subspace ker = kernel_basis(Matrix::from_columns(f, rows, cols));
      for (std::size_t i = 0; i < ker.dim(); ++i) allowed.push_back(ker.basis_vector(i));
    }
    auto data = detail::zero_data(mods[k], mods[k - 1]);
    for (int attempt = 0; attempt < 8 && !allowed.empty(); ++attempt) {
      Vector coeff(basis.size(), 0);
      for (const auto& a : allowed) {
        Scalar s = rng.scalar(f);
        for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] = f.add(coeff[i], f.mul(s, a[i]));
      }
      data = detail::zero_data(mods[k], mods[k - 1]);
      for (std::size_t i = 0; i < basis.size(); ++i) detail::accumulate(data, basis[i], coeff[i]);
      bool zero = true;
      for (const auto& c : data) zero = zero && c.is_zero();
      if (!zero) break;
    }
    diffs.emplace_back(mods[k], mods[k - 1], std::move(data));
  }
  ChainComplexFI c(std::move(mods), std::move(diffs), prof.nmax);
  if (auto v = check_complex(c)) throw std::logic_error("rand_complex produced a non-complex: " + *v);
  return c;
}

}  // namespace fihom::harness
