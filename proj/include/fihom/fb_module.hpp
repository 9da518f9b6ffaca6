#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fihom/snrep.hpp"

namespace fihom {

/// A finite sequence of symmetric group representations V_0, V_1, ..., V_g.
/// Parts past the stored range are zero.
class FBModule {
 public:
  FBModule() = default;
  explicit FBModule(PrimeField field) : field_(field) {}
  FBModule(PrimeField field, std::vector<SnRep> parts) : field_(field), parts_(std::move(parts)) {
    for (std::size_t m = 0; m < parts_.size(); ++m) {
      if (parts_[m].n() != m) throw std::invalid_argument("FBModule part m must be a representation of S_m");
      if (!(parts_[m].field() == field_)) throw std::invalid_argument("FBModule part over a different field");
    }
  }

  /// V concentrated in a single degree.
  static FBModule concentrated(const SnRep& rep) {
    std::vector<SnRep> parts;
    for (std::size_t m = 0; m < rep.n(); ++m) parts.push_back(SnRep::zero(rep.field(), m));
    parts.push_back(rep);
    return FBModule(rep.field(), std::move(parts));
  }

  const PrimeField& field() const { return field_; }

  /// Number of stored parts (one more than the largest stored degree).
  std::size_t stored() const { return parts_.size(); }

  SnRep part(std::size_t m) const { return m < parts_.size() ? parts_[m] : SnRep::zero(field_, m); }
  const SnRep& stored_part(std::size_t m) const { return parts_.at(m); }
  std::size_t dim(std::size_t m) const { return m < parts_.size() ? parts_[m].dim() : 0; }

  /// Largest m with V_m != 0, or -1.
  int deg() const {
    for (std::size_t m = parts_.size(); m-- > 0;)
      if (parts_[m].dim() > 0) return static_cast<int>(m);
    return -1;
  }

  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& p : parts_) d += p.dim();
    return d;
  }

  bool is_zero() const { return deg() < 0; }

  /// Replaces part m (extending with zero parts as needed).
  void set_part(std::size_t m, SnRep rep) {
    if (rep.n() != m) throw std::invalid_argument("FBModule part m must be a representation of S_m");
    while (parts_.size() <= m) parts_.push_back(SnRep::zero(field_, parts_.size()));
    parts_[m] = std::move(rep);
  }

  /// Parts above `top` removed.
  FBModule truncated(int top) const {
    FBModule out(field_);
    for (std::size_t m = 0; m < parts_.size() && static_cast<int>(m) <= top; ++m) out.set_part(m, parts_[m]);
    return out;
  }

  FBModule direct_sum(const FBModule& o) const {
    FBModule out(field_);
    std::size_t top = std::max(parts_.size(), o.parts_.size());
    for (std::size_t m = 0; m < top; ++m) out.set_part(m, part(m).direct_sum(o.part(m)));
    return out;
  }

  friend bool operator==(const FBModule& a, const FBModule& b) {
    if (!(a.field_ == b.field_)) return false;
    std::size_t top = std::max(a.parts_.size(), b.parts_.size());
    for (std::size_t m = 0; m < top; ++m)
      if (!(a.part(m) == b.part(m))) return false;
    return true;
  }

 private:
  PrimeField field_;
  std::vector<SnRep> parts_;
};

}  // namespace fihom
