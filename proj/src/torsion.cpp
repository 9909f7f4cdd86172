#include "monotor/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "monotor/errors.hpp"

namespace monotor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest exponent in the prime factorization of n (n >= 2).
unsigned long max_prime_multiplicity(Integer n) {
  unsigned long best = 0;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    best = std::max(best, e);
  }
  if (n > 1) best = std::max(best, 1UL);
  return best;
}

void require_proper_nonzero(const MonomialIdeal& a, const char* what) {
  if (a.is_zero()) throw DomainError(std::string(what) + ": ideal must be nonzero");
  if (a.is_unit()) throw DomainError(std::string(what) + ": ideal must be proper");
}

// (nil(R) + F)^n ⊆ target iff each term nil^k F^{n-k} with nil(A)^k != 0 does;
// a term c*X^m with c != 0 lies in a monomial ideal iff X^m does.
bool radical_power_contained(const NilIndex& nu, const std::vector<MonomialIdeal>& floor_powers,
                             const MonomialIdeal& target, unsigned long n) {
  for (unsigned long k = 0; k <= n; ++k) {
    if (nu && k >= *nu) break;
    if (!ideal_contains(target, floor_powers[n - k])) return false;
  }
  return true;
}

std::optional<unsigned long> least_radical_power(const BaseRingDescriptor& base, const MonomialIdeal& a,
                                                 const MonomialIdeal& target) {
  const NilIndex nu = nil_index(base);
  // With nil(A) not nilpotent the k = n term survives for every n, and a
  // nonzero constant never lies in a proper monomial ideal.
  if (!nu) return std::nullopt;
  const MonomialIdeal f = floor(a);
  const unsigned long limit = *nu + power_containment_bound(f, target);
  std::vector<MonomialIdeal> powers = {MonomialIdeal::unit(a.num_vars())};
  for (unsigned long n = 0; n <= limit; ++n) {
    if (n > 0) powers.push_back(ideal_product(powers.back(), f));
    if (radical_power_contained(nu, powers, target, n)) return n;
  }
  throw std::logic_error("radical power search exceeded its bound");
}

}  // namespace

std::string variant_name(const BaseRingDescriptor& base) {
  return std::visit(overloaded{
                        [](const base_ring::ZeroRing&) { return std::string("ZeroRing"); },
                        [](const base_ring::Field&) { return std::string("Field"); },
                        [](const base_ring::Integers&) { return std::string("Integers"); },
                        [](const base_ring::IntegersMod&) { return std::string("IntegersMod"); },
                        [](const base_ring::TruncatedPolynomial&) { return std::string("TruncatedPolynomial"); },
                        [](const base_ring::SquareZeroFamily&) { return std::string("SquareZeroFamily"); },
                        [](const base_ring::TruncatedFamilyUnbounded&) {
                          return std::string("TruncatedFamilyUnbounded");
                        },
                    },
                    base);
}

void validate(const BaseRingDescriptor& base) {
  if (const auto* f = std::get_if<base_ring::Field>(&base)) {
    Integer p(f->characteristic);
    if (p != 0 && mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
      throw DomainError("field characteristic must be 0 or a prime");
  } else if (const auto* m = std::get_if<base_ring::IntegersMod>(&base)) {
    if (m->modulus < 2) throw DomainError("IntegersMod needs modulus >= 2");
  } else if (const auto* t = std::get_if<base_ring::TruncatedPolynomial>(&base)) {
    if (std::any_of(t->exponents.begin(), t->exponents.end(), [](unsigned e) { return e == 0; }))
      throw DomainError("TruncatedPolynomial exponents must be >= 1");
  }
}

NilIndex nil_index(const BaseRingDescriptor& base) {
  validate(base);
  return std::visit(overloaded{
                        [](const base_ring::ZeroRing&) -> NilIndex { return 0UL; },
                        [](const base_ring::Field&) -> NilIndex { return 1UL; },
                        [](const base_ring::Integers&) -> NilIndex { return 1UL; },
                        [](const base_ring::IntegersMod& m) -> NilIndex {
                          return max_prime_multiplicity(m.modulus);
                        },
                        [](const base_ring::TruncatedPolynomial& t) -> NilIndex {
                          unsigned long sum = 1;
                          for (unsigned e : t.exponents) sum += e - 1;
                          return sum;
                        },
                        [](const base_ring::SquareZeroFamily&) -> NilIndex { return 2UL; },
                        [](const base_ring::TruncatedFamilyUnbounded&) -> NilIndex { return std::nullopt; },
                    },
                    base);
}

bool gamma_floor_eq_radical(const BaseRingDescriptor& base) { return nil_index(base).has_value(); }

std::optional<unsigned long> radical_power_in_floor(const BaseRingDescriptor& base, const MonomialIdeal& a) {
  require_proper_nonzero(a, "radical_power_in_floor");
  return least_radical_power(base, a, floor(a));
}

std::optional<unsigned long> radical_power_in_ideal(const BaseRingDescriptor& base, const MonomialIdeal& a) {
  require_proper_nonzero(a, "radical_power_in_ideal");
  if (std::holds_alternative<base_ring::ZeroRing>(base)) return 0UL;
  return least_radical_power(base, a, a);
}

bool monomial_in_radical(const BaseRingDescriptor& base, const MonomialIdeal& a, const Exponent& m) {
  if (std::holds_alternative<base_ring::ZeroRing>(base)) return true;
  // The coefficient of X^m in g + h (g nilpotent, h in ⌊a⌋) is 1, so X^m
  // outside ⌊a⌋ would force 1 to be nilpotent.
  return contains_monomial(floor(a), m);
}

std::optional<NilWitness> nil_power_witness(const BaseRingDescriptor& base, unsigned long n) {
  validate(base);
  auto from_truncation = [n](const base_ring::TruncatedPolynomial& t) -> std::optional<NilWitness> {
    Exponent mono(t.exponents.size());
    unsigned long left = n;
    for (std::size_t k = 0; k < t.exponents.size() && left > 0; ++k) {
      unsigned long take = std::min<unsigned long>(left, t.exponents[k] - 1);
      mono[k] = static_cast<Exponent::value_type>(take);
      left -= take;
    }
    if (left > 0) return std::nullopt;
    return NilWitness{t, std::move(mono)};
  };
  return std::visit(
      overloaded{
          [&](const base_ring::TruncatedPolynomial& t) { return from_truncation(t); },
          [&](const base_ring::SquareZeroFamily&) { return from_truncation(base_ring::TruncatedPolynomial{{2}}); },
          [&](const base_ring::TruncatedFamilyUnbounded&) -> std::optional<NilWitness> {
            // Y_{n+1}^n in Q[Y_1..Y_{n+1}]/(Y_k^k): nonzero since n < n + 1.
            base_ring::TruncatedPolynomial t;
            for (unsigned k = 1; k <= n + 1; ++k) t.exponents.push_back(k);
            Exponent mono(n + 1);
            mono[n] = static_cast<Exponent::value_type>(n);
            return NilWitness{std::move(t), std::move(mono)};
          },
          [&](const auto&) -> std::optional<NilWitness> {
            throw DomainError("nil witnesses are provided for polynomial-type base rings only");
          },
      },
      base);
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal:
      return "equal";
    case Relation::left_subfunctor:
      return "left-subfunctor";
    case Relation::right_subfunctor:
      return "right-subfunctor";
    case Relation::incomparable:
      return "incomparable";
  }
  return "incomparable";
}

TorsionComparison gamma_compare(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("gamma_compare: variable counts differ");
  TorsionComparison out;
  out.a_power_in_b = power_containment_exists(a, b);
  out.b_power_in_a = power_containment_exists(b, a);
  if (out.a_power_in_b && out.b_power_in_a)
    out.relation = Relation::equal;
  else if (out.b_power_in_a)
    out.relation = Relation::left_subfunctor;
  else if (out.a_power_in_b)
    out.relation = Relation::right_subfunctor;
  else
    out.relation = Relation::incomparable;
  return out;
}

bool gamma_eq_finite_type(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionMismatch("gamma_eq_finite_type: variable counts differ");
  return floor(a) == floor(b);
}

bool gamma_eq_restricted(const RestrictedRing& s, const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.num_vars() != s.num_vars() || b.num_vars() != s.num_vars())
    throw DimensionMismatch("gamma_eq_restricted: variable counts differ");
  return floor(a) == floor(b);
}

FloorIdentityCertificate gamma_floor_identity(const RestrictedRing& s, const MonomialIdeal& a) {
  if (a.is_zero()) throw DomainError("gamma_floor_identity: ideal must be nonzero");
  FloorIdentityCertificate cert{restrict_ideal(s, a), floor_H(s, a), floor_restricted(s, a), 0, 0, 0};
  cert.bound = std::max(power_containment_bound(cert.floor_restricted, cert.restricted),
                        power_containment_bound(cert.floor_restricted, cert.floor_h));
  auto p = power_containment_exists(cert.floor_restricted, cert.restricted);
  auto q = power_containment_exists(cert.floor_restricted, cert.floor_h);
  if (!p || !q || *p > cert.bound || *q > cert.bound)
    throw std::logic_error("gamma_floor_identity: no certificate below the bound");
  cert.p = *p;
  cert.q = *q;
  return cert;
}

ContainmentWitness no_containment_witness(const IdealFamily& family, unsigned n) {
  if (family.c <= 0) throw DomainError("ideal family has bounded exponents; no witness exists");
  if (family.exponent(1) < 0) throw DomainError("ideal family rule yields a negative exponent");
  if (family.exponent(1) == 0) throw DomainError("ideal family contains the unit ideal; no witness exists");
  // e is strictly increasing, so X_j^n with the least j such that e(j) > n
  // lies in ⌊b⌋^n = <X_1..X_j>^n but not in <X_i^{e(i)}>.
  long j = 1;
  while (family.exponent(j) <= static_cast<long>(n)) ++j;
  ContainmentWitness w;
  w.level = static_cast<std::size_t>(j);
  w.monomial = Exponent(w.level);
  w.monomial[w.level - 1] = n;
  return w;
}

}  // namespace monotor
