#pragma once

// Decision procedures for equality and ordering of torsion functors Γ_a with
// monomial support. Torsion functors are never materialized: Γ_a ⊆ Γ_b holds
// iff some power of b lies in a, so everything reduces to ideal combinatorics.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monotor/lattice.hpp"
#include "monotor/monomial.hpp"
#include "monotor/restriction.hpp"

namespace monotor {

namespace base_ring {

struct ZeroRing {};
/// characteristic 0 or a prime
struct Field {
  unsigned long characteristic = 0;
};
struct Integers {};
struct IntegersMod {
  Integer modulus;  // >= 2
};
/// Q[Y_1..Y_N] / (Y_k^{e_k}), every e_k >= 1.
struct TruncatedPolynomial {
  std::vector<unsigned> exponents;
};
/// Q[(Y_k)] / (Y_j Y_k : all j, k), finitely or infinitely many Y_k.
struct SquareZeroFamily {
  bool unbounded = true;
};
/// Q[(Y_k)_{k >= 1}] / (Y_k^k : k >= 1)
struct TruncatedFamilyUnbounded {};

}  // namespace base_ring

/// Symbolic coefficient ring A, enough to answer nilradical queries exactly.
using BaseRingDescriptor =
    std::variant<base_ring::ZeroRing, base_ring::Field, base_ring::Integers, base_ring::IntegersMod,
                 base_ring::TruncatedPolynomial, base_ring::SquareZeroFamily, base_ring::TruncatedFamilyUnbounded>;

std::string variant_name(const BaseRingDescriptor& base);
/// Throws DomainError for malformed parameters (modulus < 2, e_k = 0, ...).
void validate(const BaseRingDescriptor& base);

/// Nilpotency index of nil(A): least n with nil(A)^n = 0; nullopt = infinite.
using NilIndex = std::optional<unsigned long>;
NilIndex nil_index(const BaseRingDescriptor& base);

/// Γ_⌊a⌋ = Γ_√a for every monomial ideal a iff nil(A) is nilpotent.
bool gamma_floor_eq_radical(const BaseRingDescriptor& base);

/// Least n with (√a)^n ⊆ ⌊a⌋, using √a = nil(R) + ⌊a⌋ and termwise monomial
/// membership. nullopt when no such n exists. Requires a proper and nonzero.
std::optional<unsigned long> radical_power_in_floor(const BaseRingDescriptor& base, const MonomialIdeal& a);

/// Least n with (√a)^n ⊆ a; nullopt when nil(A) is not nilpotent.
/// Throws DomainError for the zero or unit ideal.
std::optional<unsigned long> radical_power_in_ideal(const BaseRingDescriptor& base, const MonomialIdeal& a);

/// Whether the monomial X^m lies in √a = nil(R) + ⌊a⌋.
bool monomial_in_radical(const BaseRingDescriptor& base, const MonomialIdeal& a, const Exponent& m);

/// A nonzero element of nil(A)^n inside a finite truncation of A:
/// the ring Q[Y_1..Y_N]/(Y_k^{e_k}) and the exponent of the witness monomial.
struct NilWitness {
  base_ring::TruncatedPolynomial truncation;
  Exponent monomial;
};
/// nullopt when nil(A)^n = 0. Supported for the truncated-polynomial variants.
std::optional<NilWitness> nil_power_witness(const BaseRingDescriptor& base, unsigned long n);

enum class Relation {
  equal,
  left_subfunctor,   // Γ_a ⊊ Γ_b
  right_subfunctor,  // Γ_b ⊊ Γ_a
  incomparable,
};

std::string to_string(Relation r);

struct TorsionComparison {
  Relation relation = Relation::incomparable;
  /// least m with a^m ⊆ b, certifying Γ_b ⊆ Γ_a
  std::optional<unsigned> a_power_in_b;
  /// least n with b^n ⊆ a, certifying Γ_a ⊆ Γ_b
  std::optional<unsigned> b_power_in_a;
};

TorsionComparison gamma_compare(const MonomialIdeal& a, const MonomialIdeal& b);
/// Γ_a = Γ_b decided by ⌊a⌋ = ⌊b⌋.
bool gamma_eq_finite_type(const MonomialIdeal& a, const MonomialIdeal& b);
/// Γ_{a_(H)} = Γ_{b_(H)}, decided by ⌊a⌋ = ⌊b⌋.
bool gamma_eq_restricted(const RestrictedRing& s, const MonomialIdeal& a, const MonomialIdeal& b);

struct FloorIdentityCertificate {
  MonomialIdeal restricted;        // a_(H)
  MonomialIdeal floor_h;           // ⌊a⌋_H
  MonomialIdeal floor_restricted;  // ⌊a⌋_(H)
  unsigned p = 0;                  // least p with ⌊a⌋_(H)^p ⊆ a_(H)
  unsigned q = 0;                  // least q with ⌊a⌋_(H)^q ⊆ ⌊a⌋_H
  unsigned bound = 0;
};

/// Certificates that Γ_{a_(H)} = Γ_{⌊a⌋_H} = Γ_{⌊a⌋_(H)}.
/// Throws DomainError for the zero ideal; std::logic_error if the search
/// exceeds its bound.
FloorIdentityCertificate gamma_floor_identity(const RestrictedRing& s, const MonomialIdeal& a);

/// Truncation level N and a monomial of ⌊b⌋^n outside b = <X_i^{e(i)}>.
struct ContainmentWitness {
  std::size_t level = 0;
  Exponent monomial;
};
/// Throws DomainError for families with bounded exponents (c = 0).
ContainmentWitness no_containment_witness(const IdealFamily& family, unsigned n);

}  // namespace monotor
