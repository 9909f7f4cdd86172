#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "monotor/errors.hpp"
#include "monotor/torsion.hpp"
#include "oracles.hpp"

using namespace monotor;
namespace br = monotor::base_ring;

namespace {

MonomialIdeal ideal(std::vector<Exponent> gens, std::size_t n) { return MonomialIdeal::minimalize(std::move(gens), n); }

RestrictedRing even_part(const std::vector<long>& degrees) {
  GradedRing r = GradedRing::integer_graded(degrees);
  return RestrictedRing(r, Subgroup(r.group(), IntMatrix::from_rows({{2}})));
}

}  // namespace

TEST_CASE("nil index of shipped descriptors") {
  CHECK(nil_index(br::ZeroRing{}) == 0UL);
  CHECK(nil_index(br::Field{0}) == 1UL);
  CHECK(nil_index(br::Field{7}) == 1UL);
  CHECK(nil_index(br::Integers{}) == 1UL);
  CHECK(nil_index(br::IntegersMod{12}) == 2UL);
  CHECK(nil_index(br::TruncatedPolynomial{{1, 2, 3}}) == 4UL);
  CHECK(nil_index(br::SquareZeroFamily{true}) == 2UL);
  CHECK_FALSE(nil_index(br::TruncatedFamilyUnbounded{}).has_value());
  CHECK_THROWS_AS(nil_index(br::Field{6}), DomainError);
  CHECK_THROWS_AS(nil_index(br::IntegersMod{1}), DomainError);
  CHECK_THROWS_AS(nil_index(br::TruncatedPolynomial{{0}}), DomainError);
}

TEST_CASE("nil index against brute-force ring arithmetic") {
  for (long n = 2; n <= 72; ++n) CHECK(nil_index(br::IntegersMod{n}) == oracle::nil_index_mod(n));
  const std::vector<std::vector<unsigned>> cases = {{1}, {2}, {1, 2, 3}, {3, 3}, {1, 1}, {4, 2, 2}, {5}};
  for (const auto& e : cases) CHECK(nil_index(br::TruncatedPolynomial{e}) == oracle::nil_index_truncated(e));
}

TEST_CASE("floor versus radical criterion") {
  const std::vector<BaseRingDescriptor> all = {br::ZeroRing{},
                                               br::Field{0},
                                               br::Field{3},
                                               br::Integers{},
                                               br::IntegersMod{12},
                                               br::TruncatedPolynomial{{1, 2, 3}},
                                               br::SquareZeroFamily{true},
                                               br::TruncatedFamilyUnbounded{}};
  for (const auto& b : all) CHECK(gamma_floor_eq_radical(b) == nil_index(b).has_value());
  CHECK(gamma_floor_eq_radical(br::Field{0}));
  CHECK_FALSE(gamma_floor_eq_radical(br::TruncatedFamilyUnbounded{}));
  CHECK(gamma_floor_eq_radical(br::SquareZeroFamily{true}));
}

TEST_CASE("radical powers") {
  const MonomialIdeal a = ideal({{2}}, 1);
  CHECK(radical_power_in_ideal(br::Field{0}, a) == 2UL);
  CHECK(radical_power_in_ideal(br::IntegersMod{12}, a) == 3UL);
  CHECK_FALSE(radical_power_in_ideal(br::TruncatedFamilyUnbounded{}, a).has_value());
  CHECK_THROWS_AS(radical_power_in_ideal(br::Field{0}, MonomialIdeal::zero(1)), DomainError);
  CHECK_THROWS_AS(radical_power_in_ideal(br::Field{0}, MonomialIdeal::unit(1)), DomainError);

  // least n with √a^n ⊆ ⌊a⌋ is the nil index
  std::mt19937_64 rng(53);
  const std::vector<BaseRingDescriptor> finite = {br::Field{0}, br::IntegersMod{12}, br::IntegersMod{8},
                                                  br::TruncatedPolynomial{{1, 2, 3}}, br::SquareZeroFamily{true}};
  for (int t = 0; t < 40; ++t) {
    const MonomialIdeal b = oracle::random_ideal(rng, 3, 3, 3);
    if (b.is_unit()) continue;
    for (const auto& base : finite) {
      CHECK(radical_power_in_floor(base, b) == nil_index(base));
      const auto p = power_containment_exists(floor(b), b);
      CHECK(radical_power_in_ideal(base, b) == *nil_index(base) - 1 + *p);
    }
    CHECK_FALSE(radical_power_in_floor(br::TruncatedFamilyUnbounded{}, b).has_value());
  }
}

TEST_CASE("monomial membership modulo nilpotents") {
  const MonomialIdeal a = ideal({{2, 1, 0}, {0, 0, 3}}, 3);
  CHECK(monomial_in_radical(br::IntegersMod{12}, a, {1, 1, 0}));
  CHECK_FALSE(monomial_in_radical(br::IntegersMod{12}, a, {1, 0, 0}));
  CHECK(monomial_in_radical(br::ZeroRing{}, a, {0, 0, 0}));
}

TEST_CASE("nil witnesses") {
  const auto w = nil_power_witness(br::TruncatedPolynomial{{1, 2, 3}}, 3);
  REQUIRE(w.has_value());
  CHECK(w->monomial == Exponent{0, 1, 2});
  CHECK_FALSE(nil_power_witness(br::TruncatedPolynomial{{1, 2, 3}}, 4).has_value());
  CHECK_FALSE(nil_power_witness(br::SquareZeroFamily{true}, 2).has_value());
  CHECK(nil_power_witness(br::SquareZeroFamily{true}, 1).has_value());
  CHECK_THROWS_AS(nil_power_witness(br::Integers{}, 1), DomainError);

  for (unsigned long n = 1; n <= 10; ++n) {
    const auto u = nil_power_witness(br::TruncatedFamilyUnbounded{}, n);
    REQUIRE(u.has_value());
    CHECK(u->truncation.exponents.size() == n + 1);
    // total degree n and every Y_k below its truncation exponent: nonzero
    CHECK(u->monomial.total_degree() == n);
    for (std::size_t k = 0; k < u->monomial.size(); ++k) CHECK(u->monomial[k] < u->truncation.exponents[k]);
  }
}

TEST_CASE("gamma_compare") {
  const auto eq = gamma_compare(ideal({{4}}, 1), ideal({{2}}, 1));
  CHECK(eq.relation == Relation::equal);
  CHECK(eq.a_power_in_b == 1u);
  CHECK(eq.b_power_in_a == 2u);

  CHECK(gamma_compare(ideal({{1, 0}}, 2), ideal({{0, 1}}, 2)).relation == Relation::incomparable);

  // a = <X_0 X_1> ⊆ b = <X_0>, so Γ_b ⊆ Γ_a and no power of b lies in a
  const auto sub = gamma_compare(ideal({{1, 1}}, 2), ideal({{1, 0}}, 2));
  CHECK(sub.relation == Relation::right_subfunctor);
  CHECK(sub.a_power_in_b == 1u);
  CHECK_FALSE(sub.b_power_in_a.has_value());
  CHECK(gamma_compare(ideal({{1, 0}}, 2), ideal({{1, 1}}, 2)).relation == Relation::left_subfunctor);
  CHECK(to_string(Relation::left_subfunctor) == "left-subfunctor");
}

TEST_CASE("gamma equality fast path") {
  CHECK(gamma_eq_finite_type(ideal({{4}}, 1), ideal({{2}}, 1)));
  CHECK(gamma_eq_finite_type(ideal({{2, 1, 0}, {0, 0, 3}}, 3), ideal({{1, 7, 0}, {0, 0, 1}}, 3)));
  CHECK_FALSE(gamma_eq_finite_type(ideal({{1, 0}}, 2), ideal({{1, 1}}, 2)));
  CHECK_THROWS_AS(gamma_eq_finite_type(ideal({{1}}, 1), ideal({{1, 1}}, 2)), DimensionMismatch);
}

TEST_CASE("gamma equality after restriction") {
  RestrictedRing s = even_part({1});
  const MonomialIdeal a = ideal({{4}}, 1), b = ideal({{2}}, 1);
  CHECK(gamma_eq_restricted(s, a, b));
  CHECK_FALSE(floor_H(s, a) == floor_H(s, b));
  CHECK_FALSE(gamma_eq_restricted(even_part({1, 1}), ideal({{1, 0}}, 2), ideal({{0, 1}}, 2)));
}

TEST_CASE("floor identity certificates") {
  const auto c = gamma_floor_identity(even_part({1}), ideal({{4}}, 1));
  CHECK(c.p == 2);
  CHECK(c.q == 2);
  RestrictedRing whole = RestrictedRing::unrestricted(GradedRing::integer_graded({1, 1}));
  CHECK(gamma_floor_identity(whole, ideal({{2, 1}}, 2)).p == 2);
  const auto u = gamma_floor_identity(whole, MonomialIdeal::unit(2));
  CHECK(u.p == 0);
  CHECK(u.q == 0);
  CHECK_THROWS_AS(gamma_floor_identity(whole, MonomialIdeal::zero(2)), DomainError);

  // a case that needs more than maxexp + index + 1
  RestrictedRing cube = RestrictedRing::unrestricted(GradedRing::integer_graded({1, 1, 1}));
  const auto big = gamma_floor_identity(cube, ideal({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}}, 3));
  CHECK(big.p == 10);
  CHECK(big.p <= big.bound);
}

TEST_CASE("no containment witnesses") {
  const auto w3 = no_containment_witness({1, 0}, 3);
  CHECK(w3.level == 4);
  CHECK(w3.monomial == Exponent{0, 0, 0, 3});
  const auto w1 = no_containment_witness({1, 0}, 1);
  CHECK(w1.level == 2);
  CHECK(w1.monomial == Exponent{0, 1});
  CHECK_THROWS_AS(no_containment_witness({0, 1}, 1), DomainError);

  for (unsigned n = 1; n <= 8; ++n) {
    const auto w = no_containment_witness({1, 0}, n);
    const MonomialIdeal b = family_truncate({1, 0}, w.level);
    // ⌊b⌋ is the maximal ideal, so ⌊b⌋^n is everything of degree >= n
    CHECK(floor(b) == family_truncate({0, 1}, w.level));
    CHECK(w.monomial.total_degree() >= n);
    if (n <= 4) CHECK(contains_monomial(ideal_power(floor(b), n), w.monomial));
    CHECK_FALSE(contains_monomial(b, w.monomial));
  }
}
