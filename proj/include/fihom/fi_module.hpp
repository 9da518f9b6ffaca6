#pragma once

// Truncated FI-modules in matrix form: per level n <= window, an
// S_n-representation and the structure map phi_n : M_n -> M_{n+1} for the
// standard inclusion [n] -> [n+1]. Every injection factors as a permutation
// after a chain of standard inclusions, so this data determines the module.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/induced.hpp"
#include "fihom/linalg.hpp"
#include "fihom/perm.hpp"
#include "fihom/snrep.hpp"

namespace fihom {

class FIMatrixModule {
 public:
  FIMatrixModule() = default;
  FIMatrixModule(PrimeField field, std::vector<SnRep> actions, std::vector<Matrix> phi)
      : field_(field), actions_(std::move(actions)), phi_(std::move(phi)) {
    if (actions_.empty()) throw std::invalid_argument("FI-module needs at least level 0");
    if (phi_.size() + 1 != actions_.size())
      throw std::invalid_argument("FI-module needs one structure map per level below the window");
    for (std::size_t n = 0; n < actions_.size(); ++n) {
      if (actions_[n].n() != n) throw std::invalid_argument("level " + std::to_string(n) + " is not an S_n-rep");
      if (!(actions_[n].field() == field_)) throw std::invalid_argument("level over a different field");
    }
    for (std::size_t n = 0; n < phi_.size(); ++n)
      if (phi_[n].rows() != dim(n + 1) || phi_[n].cols() != dim(n))
        throw std::invalid_argument("phi_" + std::to_string(n) + " has the wrong shape");
  }

  static FIMatrixModule zero(PrimeField field, std::size_t window) {
    std::vector<SnRep> actions;
    std::vector<Matrix> phi;
    for (std::size_t n = 0; n <= window; ++n) {
      actions.push_back(SnRep::zero(field, n));
      if (n < window) phi.emplace_back(field, 0, 0);
    }
    return FIMatrixModule(field, std::move(actions), std::move(phi));
  }

  const PrimeField& field() const { return field_; }
  std::size_t window() const { return actions_.size() - 1; }
  std::size_t dim(std::size_t n) const { return actions_.at(n).dim(); }
  const SnRep& action(std::size_t n) const { return actions_.at(n); }
  const Matrix& phi(std::size_t n) const { return phi_.at(n); }
  const std::vector<SnRep>& actions() const { return actions_; }
  const std::vector<Matrix>& phis() const { return phi_; }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& a : actions_) d.push_back(a.dim());
    return d;
  }

  bool is_zero() const {
    for (const auto& a : actions_)
      if (a.dim()) return false;
    return true;
  }

  /// Levels 0..window only.
  FIMatrixModule truncated(std::size_t window) const {
    if (window > this->window()) throw std::invalid_argument("cannot extend a truncated module");
    std::vector<SnRep> a(actions_.begin(), actions_.begin() + static_cast<std::ptrdiff_t>(window + 1));
    std::vector<Matrix> p(phi_.begin(), phi_.begin() + static_cast<std::ptrdiff_t>(window));
    return FIMatrixModule(field_, std::move(a), std::move(p));
  }

  /// Mutable access for building perturbed instances (mutation controls).
  Matrix& mutable_phi(std::size_t n) { return phi_.at(n); }
  SnRep& mutable_action(std::size_t n) { return actions_.at(n); }

  friend bool operator==(const FIMatrixModule& a, const FIMatrixModule& b) {
    return a.field_ == b.field_ && a.actions_ == b.actions_ && a.phi_ == b.phi_;
  }

 private:
  PrimeField field_;
  std::vector<SnRep> actions_;
  std::vector<Matrix> phi_;
};

/// Checks the truncated FI-module axioms: Coxeter relations at every level,
/// S_n-equivariance of phi_n, and symmetry of the double image under the
/// transposition of the two adjoined points. Returns the first violation.
inline std::optional<std::string> fi_check(const FIMatrixModule& m) {
  for (std::size_t n = 0; n <= m.window(); ++n)
    if (auto v = m.action(n).coxeter_violation()) return "level " + std::to_string(n) + ": " + *v;
  for (std::size_t n = 0; n < m.window(); ++n) {
    const Matrix& phi = m.phi(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(m.action(n + 1).gen(i) * phi == phi * m.action(n).gen(i)))
        return "phi_" + std::to_string(n) + " is not equivariant for s_" + std::to_string(i + 1);
  }
  for (std::size_t n = 0; n + 1 < m.window(); ++n) {
    Matrix two = m.phi(n + 1) * m.phi(n);
    if (!(m.action(n + 2).gen(n) * two == two))
      return "two-step symmetry fails at level " + std::to_string(n) + ": s_" + std::to_string(n + 1) +
             " does not fix phi_" + std::to_string(n + 1) + " phi_" + std::to_string(n);
  }
  return std::nullopt;
}

/// II(V) packaged as a truncated FI-module.
inline FIMatrixModule materialize(const FBModule& v, std::size_t window) {
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (std::size_t n = 0; n <= window; ++n) {
    actions.push_back(induced_level_rep(v, n));
    if (n < window) phi.push_back(induced_transition(v, n));
  }
  return FIMatrixModule(v.field(), std::move(actions), std::move(phi));
}

/// phi_{b-1} ... phi_a : M_a -> M_b.
inline Matrix standard_inclusion_map(const FIMatrixModule& m, std::size_t a, std::size_t b) {
  if (a > b || b > m.window()) throw std::invalid_argument("standard inclusion out of range");
  Matrix x = Matrix::identity(m.field(), m.dim(a));
  for (std::size_t k = a; k < b; ++k) x = m.phi(k) * x;
  return x;
}

/// M applied to an injection j : [s] -> [t] given by its images (0-based).
/// j = sigma o (standard inclusion), sigma sending the first s points to
/// the images of j and the remaining points, in order, to the complement.
inline Matrix injection_map(const FIMatrixModule& m, const std::vector<std::size_t>& images, std::size_t t) {
  std::size_t s = images.size();
  if (s > t || t > m.window()) throw std::invalid_argument("injection out of window");
  std::vector<char> used(t, 0);
  std::vector<std::size_t> sigma(t);
  for (std::size_t a = 0; a < s; ++a) {
    if (images[a] >= t || used[images[a]]) throw std::invalid_argument("not an injection");
    used[images[a]] = 1;
    sigma[a] = images[a];
  }
  std::size_t next = s;
  for (std::size_t v = 0; v < t; ++v)
    if (!used[v]) sigma[next++] = v;
  return m.action(t).apply(Perm(std::move(sigma)), standard_inclusion_map(m, s, t));
}

/// M_{|S|} -> M_{|T|} induced by S subset T subset [n], each set identified
/// with [|S|] (resp. [|T|]) in order.
inline Matrix transition_map(const FIMatrixModule& m, const Subset& s, const Subset& t) {
  std::vector<std::size_t> images;
  for (auto x : s) {
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it == t.end() || *it != x) throw std::invalid_argument("transition_map: S is not a subset of T");
    images.push_back(static_cast<std::size_t>(it - t.begin()));
  }
  return injection_map(m, images, t.size());
}

/// Restricts an FI-module to level-wise subspaces U_n (must be FI-stable).
/// The new basis at level n is U_n's canonical basis.
inline FIMatrixModule submodule(const FIMatrixModule& m, const std::vector<Subspace>& u) {
  if (u.size() != m.window() + 1) throw std::invalid_argument("submodule: one subspace per level required");
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (std::size_t n = 0; n <= m.window(); ++n) {
    Matrix basis = u[n].basis();
    std::vector<Matrix> gens;
    for (const auto& g : m.action(n).gens()) {
      Matrix img = g * basis;
      for (std::size_t c = 0; c < img.cols(); ++c)
        if (!u[n].contains(img.column(c)))
          throw std::logic_error("submodule: level " + std::to_string(n) + " is not S_n-stable");
      gens.push_back(u[n].coordinates_of_columns(img));
    }
    actions.emplace_back(m.field(), n, u[n].dim(), std::move(gens));
    if (n < m.window()) {
      Matrix img = m.phi(n) * basis;
      for (std::size_t c = 0; c < img.cols(); ++c)
        if (!u[n + 1].contains(img.column(c)))
          throw std::logic_error("submodule: phi_" + std::to_string(n) + " leaves the subspace");
      phi.push_back(u[n + 1].coordinates_of_columns(img));
    }
  }
  return FIMatrixModule(m.field(), std::move(actions), std::move(phi));
}

/// The quotient M / U for FI-stable level-wise subspaces U_n, in the
/// coordinates of quotient_map(U_n).
inline FIMatrixModule quotient_module(const FIMatrixModule& m, const std::vector<Subspace>& u) {
  if (u.size() != m.window() + 1) throw std::invalid_argument("quotient_module: one subspace per level required");
  std::vector<Matrix> q;
  std::vector<std::vector<std::size_t>> section;
  for (std::size_t n = 0; n <= m.window(); ++n) {
    q.push_back(quotient_map(u[n]));
    section.push_back(complement_coordinates(u[n]));
  }
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (std::size_t n = 0; n <= m.window(); ++n) {
    std::vector<Matrix> gens;
    for (const auto& g : m.action(n).gens()) gens.push_back((q[n] * g).select_columns(section[n]));
    actions.emplace_back(m.field(), n, q[n].rows(), std::move(gens));
    if (n < m.window()) phi.push_back((q[n + 1] * m.phi(n)).select_columns(section[n]));
  }
  return FIMatrixModule(m.field(), std::move(actions), std::move(phi));
}

/// Z = ker(f) as a truncated FI-module (a submodule of II(V)).
inline FIMatrixModule kernel_module(const InducedMorphism& f, std::size_t window) {
  std::vector<Subspace> ker;
  for (std::size_t n = 0; n <= window; ++n) ker.push_back(kernel_basis(f.eval(n)));
  return submodule(materialize(f.source(), window), ker);
}

/// coker(f) = II(W) / im(f) as a truncated FI-module.
inline FIMatrixModule cokernel_module(const InducedMorphism& f, std::size_t window) {
  std::vector<Subspace> im;
  for (std::size_t n = 0; n <= window; ++n) im.push_back(image_basis(f.eval(n)));
  return quotient_module(materialize(f.target(), window), im);
}

/// Direct sum of two truncated modules on the same window.
inline FIMatrixModule direct_sum(const FIMatrixModule& a, const FIMatrixModule& b) {
  if (a.window() != b.window()) throw std::invalid_argument("direct_sum: windows differ");
  auto block = [&](const Matrix& x, const Matrix& y) {
    Matrix out(a.field(), x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x(r, c);
    for (std::size_t r = 0; r < y.rows(); ++r)
      for (std::size_t c = 0; c < y.cols(); ++c) out(x.rows() + r, x.cols() + c) = y(r, c);
    return out;
  };
  std::vector<SnRep> actions;
  std::vector<Matrix> phi;
  for (std::size_t n = 0; n <= a.window(); ++n) {
    actions.push_back(a.action(n).direct_sum(b.action(n)));
    if (n < a.window()) phi.push_back(block(a.phi(n), b.phi(n)));
  }
  return FIMatrixModule(a.field(), std::move(actions), std::move(phi));
}

}  // namespace fihom
