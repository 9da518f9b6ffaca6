#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fihom {

using Scalar = std::uint32_t;

/// Arithmetic in the prime field F_p, 2 <= p < 2^31.
///
/// Products are reduced with a Barrett step, so a field value is only
/// 16 bytes and can be copied freely into every matrix.
class PrimeField {
 public:
  PrimeField() : PrimeField(2) {}

  explicit PrimeField(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31))
      throw std::invalid_argument("modulus out of range [2, 2^31): " + std::to_string(p));
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    p_ = static_cast<Scalar>(p);
    barrett_ = ~std::uint64_t{0} / p_;
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  Scalar p() const { return p_; }

  /// Reduces any x < 2^64 - p.
  Scalar reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Scalar>(r);
  }

  Scalar from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Scalar>(r);
  }

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;  // < 2^32 since p < 2^31
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return reduce(static_cast<std::uint64_t>(a) * b); }

  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Scalar inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return from_int(t);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Scalar p_ = 2;
  std::uint64_t barrett_ = 0;
};

}  // namespace fihom
