#pragma once

// Degree restriction of a G-graded polynomial ring R to a finite-index
// subgroup H of G. Restricted ideals are stored in the ambient exponents of R;
// every generator produced here has degree in H, which makes R-divisibility
// and S-divisibility agree on them.

#include <cstddef>
#include <vector>

#include "monotor/lattice.hpp"
#include "monotor/monomial.hpp"

namespace monotor {

/// R = A[X_0..X_{n-1}] graded by psi: Z^n -> G (column i = degree of X_i).
class GradedRing {
 public:
  /// Throws DomainError unless psi is onto G.
  GradedRing(FgAbelianGroup group, IntMatrix psi);
  /// Z-graded ring with the given integer degrees.
  static GradedRing integer_graded(const std::vector<long>& degrees);

  std::size_t num_vars() const { return psi_.cols(); }
  const FgAbelianGroup& group() const { return group_; }
  const IntMatrix& psi() const { return psi_; }
  /// Ambient representative psi * m (not reduced).
  IntVector degree_vector(const Exponent& m) const;
  IntVector variable_degree(std::size_t i) const { return psi_.column(i); }

 private:
  FgAbelianGroup group_;
  IntMatrix psi_;
};

/// Canonical representative of deg(X^m) in G.
IntVector degree(const GradedRing& ring, const Exponent& m);

/// S = R_(H) for a finite-index subgroup H of G.
class RestrictedRing {
 public:
  /// Throws InfiniteIndex when H has infinite index in G.
  RestrictedRing(GradedRing base, Subgroup h);
  static RestrictedRing unrestricted(const GradedRing& base);

  const GradedRing& base() const { return base_; }
  const Subgroup& subgroup() const { return h_; }
  std::size_t num_vars() const { return base_.num_vars(); }
  bool in_subring(const Exponent& m) const;
  /// ord_{G/H}(deg X_i) for every variable.
  const std::vector<Integer>& variable_orders() const { return variable_orders_; }

 private:
  GradedRing base_;
  Subgroup h_;
  std::vector<Integer> variable_orders_;
};

/// a_(H) = a ∩ S, minimal generators in ambient exponents.
MonomialIdeal restrict_ideal(const RestrictedRing& s, const MonomialIdeal& a);
/// Least m with (supp mu)^m in a_(H); mu must be a minimal generator of a.
unsigned m_mu(const RestrictedRing& s, const MonomialIdeal& a, const Exponent& mu);
/// ⌊a⌋_H = <(supp mu)^{m_mu} : mu in E(a)>_S
MonomialIdeal floor_H(const RestrictedRing& s, const MonomialIdeal& a);
/// ⌊a⌋_(H) = (⌊a⌋)_(H)
MonomialIdeal floor_restricted(const RestrictedRing& s, const MonomialIdeal& a);

}  // namespace monotor
