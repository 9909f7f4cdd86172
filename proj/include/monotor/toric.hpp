#pragma once

// Simplicial fans and their Cox rings: grading group A = Z^{Σ_1} / M,
// Picard subgroup, the monomials Ẑ_σ and the irrelevant ideal, plus the
// report that feeds a B-restricted Cox module through the Čech machinery.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monotor/cech.hpp"
#include "monotor/lattice.hpp"
#include "monotor/monomial.hpp"
#include "monotor/restriction.hpp"
#include "monotor/torsion.hpp"

namespace monotor {

using Cone = std::vector<std::size_t>;  // sorted ray indices

struct Fan {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  /// every cone including faces and the empty cone, ordered by (dimension, lex)
  std::vector<Cone> cones;
  std::vector<Cone> max_cones;
  std::vector<std::string> warnings;
};

/// Primitivizes rays (with a warning), closes the cone list under faces and
/// checks simpliciality, strong convexity and that cones meet along faces.
/// Throws DomainError on invalid input.
Fan validate_fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> cones);

struct CoxData {
  FgAbelianGroup group;  // A, torsion coordinates first, then free ones
  IntMatrix deg_map;     // column ρ = class of Z_ρ

  GradedRing ring() const { return GradedRing(group, deg_map); }
};

CoxData cox_grading(const Fan& fan);
/// Classes of Cartier divisors: Z^{Σ_1}-vectors that are integral linear
/// functions on every maximal cone.
Subgroup pic_subgroup(const Fan& fan, const CoxData& cox);

Exponent z_hat(const Fan& fan, const Cone& sigma);
/// Least m >= 1 with m * deg(Ẑ_σ) in B; 0 when Ẑ_σ = 1. Throws InfiniteIndex.
unsigned m_sigma(const Fan& fan, const CoxData& cox, const Subgroup& b, const Cone& sigma);
MonomialIdeal irrelevant_ideal(const Fan& fan);
/// (Ẑ_σ^{m_σ}) over all cones in fan order.
std::vector<Exponent> cech_sequence(const Fan& fan, const CoxData& cox, const Subgroup& b);

struct ToricFloorIdentity {
  MonomialIdeal generated;  // <Ẑ_σ^{m_σ} : σ in Σ>
  MonomialIdeal floor_b;    // ⌊I⌋_B
  bool ideals_equal = false;
  /// least powers of each side inside the other; both present iff Γ agrees
  std::optional<unsigned> generated_power_in_floor;
  std::optional<unsigned> floor_power_in_generated;
  bool gamma_equal = false;
  FloorIdentityCertificate certificate;  // Γ_{I_B} = Γ_{⌊I⌋_B} = Γ_{⌊I⌋_(B)}
  /// the same generators over maximal cones only; always equal to floor_b
  MonomialIdeal generated_maximal;
  bool maximal_equal = false;
};

ToricFloorIdentity floor_identity_toric(const Fan& fan, const CoxData& cox, const Subgroup& b);

struct FlatDegreeReport {
  std::vector<Exponent> sequence;
  CohomologyReport cohomology;
  std::vector<IntVector> outside_b;  // window degrees not in B (skipped)
  std::vector<PieceFlatness> pieces;  // per entry of cohomology.degrees
  bool b_subset_pic = false;
  bool localized_flatness_asserted = false;
};

FlatDegreeReport flat_degree_report(const Fan& fan, const CoxData& cox, const Subgroup& b, const MonomialIdeal& quotient,
                                    const std::optional<IntVector>& shift, const std::vector<IntVector>& window,
                                    unsigned box, Coefficients coeffs, bool localized_flatness_asserted);

}  // namespace monotor
