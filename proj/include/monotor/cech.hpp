#pragma once

// G-graded Čech cocomplex of a monomial quotient M = R/c (or S/c_(H)) with
// respect to a finite sequence of monomials a_1..a_s.
//
// A localization M_t has the Laurent monomials X^λ (λ_i < 0 only on supp t)
// that survive modulo c as a basis, and every Čech differential sends X^λ to
// ±X^λ. The degree-g slice therefore splits into independent finite blocks,
// one per λ with psi(λ) = g, and its cohomology is the direct sum of the
// cohomology of the blocks. Infinite slices are cut to the exponent box
// |λ_i| <= box; the cut only drops whole blocks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monotor/lattice.hpp"
#include "monotor/monomial.hpp"
#include "monotor/restriction.hpp"
#include "monotor/torsion.hpp"

namespace monotor {

using LaurentExponent = std::vector<long>;

/// Coefficient ring for cohomology: a field (characteristic 0 or p) or Z.
struct Coefficients {
  enum class Kind { field, integers };
  Kind kind = Kind::field;
  unsigned long characteristic = 0;

  static Coefficients rationals() { return {Kind::field, 0}; }
  static Coefficients integers() { return {Kind::integers, 0}; }
};

/// Throws DomainError("unsupported base ring") unless base is a field or Z.
Coefficients coefficients_for(const BaseRingDescriptor& base);

/// R/c or S/c_(H), optionally shifted: M(s)_g = M_{g+s}.
class GradedModule {
 public:
  GradedModule(GradedRing ring, MonomialIdeal quotient, std::optional<IntVector> shift = std::nullopt);
  GradedModule(RestrictedRing ring, MonomialIdeal quotient, std::optional<IntVector> shift = std::nullopt);

  const GradedRing& ring() const { return ring_; }
  const std::optional<Subgroup>& restriction() const { return restriction_; }
  const MonomialIdeal& quotient() const { return quotient_; }
  const std::optional<IntVector>& shift() const { return shift_; }
  std::size_t num_vars() const { return ring_.num_vars(); }

  /// Canonical degree of X^λ in M (shift applied).
  IntVector degree_of(const LaurentExponent& lambda) const;
  /// False for degrees outside H when M lives over S = R_(H).
  bool degree_allowed(const IntVector& g) const;

 private:
  GradedRing ring_;
  std::optional<Subgroup> restriction_;
  MonomialIdeal quotient_;
  std::optional<IntVector> shift_;
};

struct LocalizationBasis {
  std::vector<LaurentExponent> monomials;  // lexicographic
  bool truncated = false;                  // some monomial touches the box boundary
};

LocalizationBasis localization_basis(const GradedModule& m, const Exponent& t, const IntVector& g, unsigned box);

/// One fine-degree summand of a Čech slice.
struct CechBlock {
  LaurentExponent weight;
  /// cells[i]: subsets J (bitmasks, colex order) with |J| = i where X^weight
  /// is nonzero in M_{a_J}
  std::vector<std::vector<std::uint32_t>> cells;
  /// differentials[i]: cells[i+1].size() x cells[i].size() sign matrix
  std::vector<IntMatrix> differentials;
};

class CechSlice {
 public:
  CechSlice(std::vector<Exponent> sequence, IntVector degree, std::vector<CechBlock> blocks, bool truncated);

  const std::vector<Exponent>& sequence() const { return sequence_; }
  const IntVector& degree() const { return degree_; }
  const std::vector<CechBlock>& blocks() const { return blocks_; }
  bool truncated() const { return truncated_; }
  std::size_t positions() const { return sequence_.size() + 1; }

  /// Basis of C^i_g: (subset, monomial) pairs, subsets colex then monomials lex.
  std::vector<std::pair<std::uint32_t, LaurentExponent>> basis(std::size_t i) const;
  /// d^i : C^i_g -> C^{i+1}_g as one matrix in the basis order above.
  IntMatrix assembled_differential(std::size_t i) const;

 private:
  std::vector<Exponent> sequence_;
  IntVector degree_;
  std::vector<CechBlock> blocks_;
  bool truncated_ = false;
};

/// Sign of the component J -> J ∪ {j}: (-1)^(position of j in sorted J ∪ {j}).
int cech_sign(std::uint32_t subset, std::size_t j);

CechSlice cech_slice(const GradedModule& m, const std::vector<Exponent>& sequence, const IntVector& g, unsigned box);

struct CohomologyGroup {
  std::size_t rank = 0;  // dimension (field) or free rank (Z)
  IntVector torsion;     // invariant factors > 1 (Z only), ascending

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

struct DegreeCohomology {
  IntVector degree;
  std::vector<CohomologyGroup> groups;   // H^0 .. H^s
  std::vector<std::size_t> cochain_dims;  // dim C^i_g inside the box
  bool truncated = false;
  /// Ranks unchanged when the box grows by one.
  bool exact = false;

  bool nonzero() const;
  /// H^i, zero outside 0..s.
  CohomologyGroup group(long i) const;
};

DegreeCohomology cech_cohomology_degree(const GradedModule& m, const std::vector<Exponent>& sequence,
                                        const IntVector& g, unsigned box, Coefficients coeffs);

struct CohomologyReport {
  std::vector<DegreeCohomology> degrees;  // window order
  std::vector<IntVector> degsupp;
  std::vector<IntVector> flat_eligible;
};

/// Degrees of the window with some nonzero H^i; the complement is flat-eligible.
/// Slices are evaluated in parallel (MONOTOR_THREADS caps the worker count).
CohomologyReport degsupp_window(const GradedModule& m, const std::vector<Exponent>& sequence,
                                const std::vector<IntVector>& window, unsigned box, Coefficients coeffs);

struct PieceFlatness {
  bool flat = true;
  std::size_t rank = 0;
  bool truncated = false;
};

/// Flatness over Z of the degree-g piece M_g (monomial quotients: always free).
PieceFlatness flatness_check_piece(const GradedModule& m, const IntVector& g, unsigned box, Coefficients coeffs);
/// True iff coker(presentation) is torsion-free.
bool presentation_is_flat(const IntMatrix& presentation);

/// H^0(seq, M) agrees degreewise with saturation(c, <seq>)/c inside the box.
/// Throws DomainError on a disagreement confined to the box boundary.
bool h0_equals_torsion(const GradedModule& m, const std::vector<Exponent>& sequence,
                       const std::vector<IntVector>& window, unsigned box);

/// Worker count from MONOTOR_THREADS (default: hardware concurrency).
unsigned worker_count();

}  // namespace monotor
