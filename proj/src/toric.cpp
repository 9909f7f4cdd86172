#include "monotor/toric.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "monotor/errors.hpp"

namespace monotor {

namespace {

std::size_t rank_of(const IntMatrix& m) { return m.empty() ? 0 : smith_normal_form(m).rank; }

IntMatrix ray_columns(const std::vector<IntVector>& rays, const std::vector<IntVector>& extra, std::size_t d) {
  std::vector<IntVector> cols = rays;
  cols.insert(cols.end(), extra.begin(), extra.end());
  return IntMatrix::from_columns(cols, d);
}

// Whether some nonzero x >= 0 with m x = 0 has a positive entry among the
// first `watched` columns. Nonnegative kernel vectors are conformal sums of
// sign-uniform circuits, so it suffices to test circuits.
bool nonnegative_relation(const IntMatrix& m, std::size_t watched) {
  const std::size_t c = m.cols();
  if (c > 16) throw DomainError("cone too large for the convexity test");
  for (std::uint32_t subset = 1; subset < (1U << c); ++subset) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < c; ++j)
      if (subset >> j & 1U) cols.push_back(j);
    const IntMatrix sub = m.select_columns(cols);
    if (rank_of(sub) + 1 != cols.size()) continue;
    const IntMatrix k = integer_kernel(sub);
    if (k.cols() != 1) continue;
    bool pos = true, neg = true, full = true;
    for (std::size_t i = 0; i < k.rows(); ++i) {
      if (k(i, 0) == 0) full = false;
      if (k(i, 0) < 0) pos = false;
      if (k(i, 0) > 0) neg = false;
    }
    if (!full || !(pos || neg)) continue;
    if (cols.front() < watched) return true;
  }
  return false;
}

void check_cone(const Fan& fan, const Cone& sigma) {
  std::vector<IntVector> rays;
  for (auto i : sigma) rays.push_back(fan.rays[i]);
  const IntMatrix m = ray_columns(rays, {}, fan.rank);
  if (rank_of(m) == sigma.size()) return;
  if (nonnegative_relation(m, m.cols())) throw DomainError("cone is not strongly convex");
  throw DomainError("cone is not simplicial");
}

void check_intersection(const Fan& fan, const Cone& s, const Cone& t) {
  std::vector<IntVector> only, shared;
  for (auto i : s)
    if (!std::binary_search(t.begin(), t.end(), i)) only.push_back(fan.rays[i]);
  for (auto j : t)
    if (!std::binary_search(s.begin(), s.end(), j)) {
      IntVector neg = fan.rays[j];
      for (auto& x : neg) x = -x;
      only.push_back(neg);
    }
  for (auto i : s)
    if (std::binary_search(t.begin(), t.end(), i)) {
      shared.push_back(fan.rays[i]);
      IntVector neg = fan.rays[i];
      for (auto& x : neg) x = -x;
      shared.push_back(neg);
    }
  if (only.empty()) return;
  // a point of s equal to a point of t that uses a non-shared ray
  if (nonnegative_relation(ray_columns(only, shared, fan.rank), only.size()))
    throw DomainError("cones do not meet along a common face");
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Fan validate_fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> cones) {
  Fan fan;
  fan.rank = rank;
  if (rays.size() > 64) throw DomainError("at most 64 rays are supported");
  for (std::size_t r = 0; r < rays.size(); ++r) {
    auto& u = rays[r];
    if (u.size() != rank) throw DimensionMismatch("ray has the wrong dimension");
    Integer g = 0;
    for (const auto& x : u) g = gcd(g, x);
    if (g == 0) throw DomainError("ray " + std::to_string(r) + " is zero");
    if (g != 1) {
      for (auto& x : u) x /= g;
      fan.warnings.push_back("ray " + std::to_string(r) + " divided by " + g.get_str() + " to make it primitive");
    }
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw DomainError("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  fan.rays = std::move(rays);

  std::set<Cone> all = {Cone{}};
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto i : c)
      if (i >= fan.rays.size()) throw DomainError("cone refers to ray " + std::to_string(i) + " which does not exist");
    check_cone(fan, c);
    if (c.size() > 20) throw DomainError("cone has too many rays");
    for (std::uint32_t sub = 0; sub < (1U << c.size()); ++sub) {
      Cone face;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (sub >> k & 1U) face.push_back(c[k]);
      all.insert(face);
    }
  }
  fan.cones.assign(all.begin(), all.end());
  std::sort(fan.cones.begin(), fan.cones.end(), cone_less);

  for (const auto& c : fan.cones) {
    bool maximal = true;
    for (const auto& d : fan.cones)
      if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    if (maximal) fan.max_cones.push_back(c);
  }
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < fan.max_cones.size(); ++j) check_intersection(fan, fan.max_cones[i], fan.max_cones[j]);
  return fan;
}

CoxData cox_grading(const Fan& fan) {
  const std::size_t r = fan.rays.size(), d = fan.rank;
  // P: Z^d -> Z^{Σ_1}, m -> (<m, u_ρ>)_ρ; A = coker P.
  IntMatrix p(r, d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) = fan.rays[i][j];
  const SmithForm snf = smith_normal_form(p);

  std::vector<IntVector> torsion_rows, free_rows;
  IntVector moduli;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector row = snf.U.row(i);
    if (i < snf.rank) {
      const Integer di = snf.D(i, i);
      if (di == 1) continue;
      for (auto& x : row) x = ((x % di) + di) % di;
      torsion_rows.push_back(row);
      moduli.push_back(di);
    } else {
      free_rows.push_back(row);
    }
  }
  // Canonical basis of the free part: Hermite form of the row lattice.
  if (!free_rows.empty()) {
    const HermiteBasis h = column_hermite_form(IntMatrix::from_columns(free_rows, r));
    for (std::size_t k = 0; k < free_rows.size(); ++k) free_rows[k] = h.basis.column(k);
  }

  const std::size_t k = torsion_rows.size() + free_rows.size();
  std::vector<IntVector> rows = torsion_rows;
  rows.insert(rows.end(), free_rows.begin(), free_rows.end());
  IntMatrix deg = IntMatrix::from_rows(rows, r);
  IntMatrix relations(k, torsion_rows.size());
  for (std::size_t i = 0; i < torsion_rows.size(); ++i) relations(i, i) = moduli[i];
  CoxData cox{FgAbelianGroup(relations), deg};

  // a ∘ P = 0 in A, and a is onto (checked by GradedRing)
  const IntMatrix composite = deg * p;
  for (std::size_t c = 0; c < composite.cols(); ++c)
    if (!cox.group.is_zero(composite.column(c))) throw std::logic_error("Cox grading does not kill the characters");
  (void)cox.ring();
  return cox;
}

Subgroup pic_subgroup(const Fan& fan, const CoxData& cox) {
  const std::size_t r = fan.rays.size(), d = fan.rank;
  std::optional<IntMatrix> cartier;
  const std::vector<Cone> cones = fan.max_cones.empty() ? std::vector<Cone>{Cone{}} : fan.max_cones;
  for (const auto& sigma : cones) {
    // d is linear on σ iff d|_σ comes from some m, i.e. d ∈ P Z^d + <e_ρ : ρ ∉ σ>
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < d; ++j) {
      IntVector c(r);
      for (std::size_t i = 0; i < r; ++i) c[i] = fan.rays[i][j];
      cols.push_back(c);
    }
    for (std::size_t i = 0; i < r; ++i)
      if (!std::binary_search(sigma.begin(), sigma.end(), i)) {
        IntVector e(r, Integer(0));
        e[i] = 1;
        cols.push_back(e);
      }
    IntMatrix lattice = column_hermite_form(IntMatrix::from_columns(cols, r)).basis;
    cartier = cartier ? lattice_intersection(*cartier, lattice) : lattice;
  }
  return Subgroup(cox.group, cox.deg_map * *cartier);
}

Exponent z_hat(const Fan& fan, const Cone& sigma) {
  Exponent e(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    if (!std::binary_search(sigma.begin(), sigma.end(), i)) e[i] = 1;
  return e;
}

unsigned m_sigma(const Fan& fan, const CoxData& cox, const Subgroup& b, const Cone& sigma) {
  const Exponent z = z_hat(fan, sigma);
  if (!b.finite_index()) throw InfiniteIndex();
  if (z.is_zero()) return 0;
  return static_cast<unsigned>(b.order_in_quotient(cox.ring().degree_vector(z)).get_ui());
}

MonomialIdeal irrelevant_ideal(const Fan& fan) {
  std::vector<Exponent> gens;
  for (const auto& c : fan.cones) gens.push_back(z_hat(fan, c));
  return MonomialIdeal::minimalize(std::move(gens), fan.rays.size());
}

std::vector<Exponent> cech_sequence(const Fan& fan, const CoxData& cox, const Subgroup& b) {
  std::vector<Exponent> seq;
  for (const auto& c : fan.cones) seq.push_back(z_hat(fan, c).scaled(m_sigma(fan, cox, b, c)));
  return seq;
}

ToricFloorIdentity floor_identity_toric(const Fan& fan, const CoxData& cox, const Subgroup& b) {
  const RestrictedRing s(cox.ring(), b);
  const MonomialIdeal irrelevant = irrelevant_ideal(fan);
  ToricFloorIdentity out{MonomialIdeal::minimalize(cech_sequence(fan, cox, b), fan.rays.size()),
                         floor_H(s, irrelevant),
                         false,
                         std::nullopt,
                         std::nullopt,
                         false,
                         gamma_floor_identity(s, irrelevant),
                         MonomialIdeal::zero(fan.rays.size()),
                         false};
  out.ideals_equal = out.generated == out.floor_b;
  std::vector<Exponent> top;
  for (const auto& sigma : fan.max_cones) {
    const unsigned m = m_sigma(fan, cox, b, sigma);
    top.push_back(z_hat(fan, sigma).scaled(m));
  }
  out.generated_maximal = MonomialIdeal::minimalize(std::move(top), fan.rays.size());
  out.maximal_equal = out.generated_maximal == out.floor_b;
  out.generated_power_in_floor = power_containment_exists(out.generated, out.floor_b);
  out.floor_power_in_generated = power_containment_exists(out.floor_b, out.generated);
  out.gamma_equal = out.generated_power_in_floor && out.floor_power_in_generated;
  return out;
}

FlatDegreeReport flat_degree_report(const Fan& fan, const CoxData& cox, const Subgroup& b, const MonomialIdeal& quotient,
                                    const std::optional<IntVector>& shift, const std::vector<IntVector>& window,
                                    unsigned box, Coefficients coeffs, bool localized_flatness_asserted) {
  FlatDegreeReport out;
  out.localized_flatness_asserted = localized_flatness_asserted;
  const Subgroup pic = pic_subgroup(fan, cox);
  out.b_subset_pic = true;
  for (std::size_t c = 0; c < b.generators().cols(); ++c)
    out.b_subset_pic = out.b_subset_pic && pic.contains(b.generators().column(c));

  const GradedModule f(RestrictedRing(cox.ring(), b), quotient, shift);
  std::vector<IntVector> inside;
  for (const auto& g : window) {
    if (g.size() != cox.group.ambient_rank()) throw DimensionMismatch("window degree has the wrong length");
    (f.degree_allowed(g) ? inside : out.outside_b).push_back(g);
  }
  out.sequence = cech_sequence(fan, cox, b);
  out.cohomology = degsupp_window(f, out.sequence, inside, box, coeffs);
  for (const auto& d : out.cohomology.degrees) out.pieces.push_back(flatness_check_piece(f, d.degree, box, coeffs));
  return out;
}

}  // namespace monotor
