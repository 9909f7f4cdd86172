#include "monotor/restriction.hpp"

#include <algorithm>
#include <stdexcept>

#include "monotor/errors.hpp"

namespace monotor {

GradedRing::GradedRing(FgAbelianGroup group, IntMatrix psi) : group_(std::move(group)), psi_(std::move(psi)) {
  if (psi_.rows() != group_.ambient_rank())
    throw DimensionMismatch("degree matrix rows must match the ambient rank of G");
  Subgroup image(group_, psi_);
  if (!image.index() || *image.index() != 1) throw DomainError("degree map is not onto the grading group");
}

GradedRing GradedRing::integer_graded(const std::vector<long>& degrees) {
  IntMatrix psi(1, degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) psi(0, i) = degrees[i];
  return GradedRing(FgAbelianGroup::free(1), std::move(psi));
}

IntVector GradedRing::degree_vector(const Exponent& m) const {
  if (m.size() != num_vars()) throw DimensionMismatch("exponent length does not match the ring");
  IntVector out(psi_.rows(), Integer(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    for (std::size_t r = 0; r < psi_.rows(); ++r) out[r] += psi_(r, i) * m[i];
  }
  return out;
}

IntVector degree(const GradedRing& ring, const Exponent& m) { return ring.group().reduce(ring.degree_vector(m)); }

RestrictedRing::RestrictedRing(GradedRing base, Subgroup h) : base_(std::move(base)), h_(std::move(h)) {
  if (h_.parent().relations() != base_.group().relations())
    throw DomainError("subgroup does not belong to the grading group of the ring");
  if (!h_.finite_index()) throw InfiniteIndex();
  for (std::size_t i = 0; i < base_.num_vars(); ++i)
    variable_orders_.push_back(h_.order_in_quotient(base_.variable_degree(i)));
}

RestrictedRing RestrictedRing::unrestricted(const GradedRing& base) {
  return RestrictedRing(base, Subgroup::full(base.group()));
}

bool RestrictedRing::in_subring(const Exponent& m) const { return h_.contains(base_.degree_vector(m)); }

namespace {

constexpr unsigned long kMaxBox = 50'000'000UL;

std::vector<long> to_longs(const IntVector& v) {
  std::vector<long> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw DomainError("quotient G/H too large to enumerate");
    out.push_back(x.get_si());
  }
  return out;
}

}  // namespace

MonomialIdeal restrict_ideal(const RestrictedRing& s, const MonomialIdeal& a) {
  const std::size_t n = s.num_vars();
  if (a.num_vars() != n) throw DimensionMismatch("restrict_ideal: ideal and ring differ in variable count");
  if (a.is_zero()) return a;

  const Subgroup& h = s.subgroup();
  const std::vector<long> moduli = to_longs(h.quotient_moduli());
  std::vector<std::vector<long>> var_coset(n);
  std::vector<unsigned long> box(n);
  unsigned long box_size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    var_coset[i] = to_longs(h.coset_coordinates(s.base().variable_degree(i)));
    box[i] = s.variable_orders()[i].get_ui();
    box_size *= box[i];
    if (box_size > kMaxBox) throw DomainError("restriction box too large to enumerate");
  }

  // Minimal nu with psi(mu + nu) in H have nu_i < ord(deg X_i): a larger
  // coordinate can drop by that order without leaving H.
  std::vector<Exponent> raw;
  for (const auto& mu : a.gens()) {
    std::vector<long> coset = to_longs(h.coset_coordinates(s.base().degree_vector(mu)));
    Exponent nu(n);
    for (;;) {
      if (std::all_of(coset.begin(), coset.end(), [](long v) { return v == 0; })) raw.push_back(mu + nu);
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (nu[i] + 1 < box[i]) {
          ++nu[i];
          for (std::size_t j = 0; j < moduli.size(); ++j) coset[j] = (coset[j] + var_coset[i][j]) % moduli[j];
          break;
        }
        // wrap coordinate i back to 0: subtract (box[i]-1) copies
        const long back = static_cast<long>(box[i] - 1);
        for (std::size_t j = 0; j < moduli.size(); ++j)
          coset[j] = ((coset[j] - back * var_coset[i][j]) % moduli[j] + moduli[j]) % moduli[j];
        nu[i] = 0;
      }
      if (i == n) break;
    }
  }
  return MonomialIdeal::minimalize(std::move(raw), n);
}

unsigned m_mu(const RestrictedRing& s, const MonomialIdeal& a, const Exponent& mu) {
  if (a.num_vars() != s.num_vars() || mu.size() != s.num_vars())
    throw DimensionMismatch("m_mu: variable counts differ");
  if (a.is_zero()) throw DomainError("m_mu: the zero ideal has no minimal generators");
  if (std::find(a.gens().begin(), a.gens().end(), mu) == a.gens().end())
    throw DomainError("m_mu: exponent is not a minimal generator of the ideal");

  const Exponent supp = mu.support();
  const Integer ord = s.subgroup().order_in_quotient(s.base().degree_vector(supp));
  const unsigned long bound = mu.max_entry() + ord.get_ui();
  for (unsigned long m = 0; m <= bound; ++m) {
    Exponent candidate = supp.scaled(static_cast<Exponent::value_type>(m));
    if (contains_monomial(a, candidate) && s.in_subring(candidate)) return static_cast<unsigned>(m);
  }
  throw std::logic_error("m_mu: no power found below the finite-index bound");
}

MonomialIdeal floor_H(const RestrictedRing& s, const MonomialIdeal& a) {
  if (a.num_vars() != s.num_vars()) throw DimensionMismatch("floor_H: variable counts differ");
  std::vector<Exponent> raw;
  for (const auto& mu : a.gens())
    raw.push_back(mu.support().scaled(static_cast<Exponent::value_type>(m_mu(s, a, mu))));
  return MonomialIdeal::minimalize(std::move(raw), a.num_vars());
}

MonomialIdeal floor_restricted(const RestrictedRing& s, const MonomialIdeal& a) {
  return restrict_ideal(s, floor(a));
}

}  // namespace monotor
