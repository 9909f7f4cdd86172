#include <random>

#include "doctest.h"
#include "monotor/errors.hpp"
#include "monotor/restriction.hpp"
#include "oracles.hpp"

using namespace monotor;

namespace {

MonomialIdeal ideal(std::vector<Exponent> gens, std::size_t n) { return MonomialIdeal::minimalize(std::move(gens), n); }

RestrictedRing even_part(const std::vector<long>& degrees) {
  GradedRing r = GradedRing::integer_graded(degrees);
  return RestrictedRing(r, Subgroup(r.group(), IntMatrix::from_rows({{2}})));
}

// Minimal generators of a ∩ S by scanning the exponent box [0, limit]^n.
MonomialIdeal restrict_by_scan(const RestrictedRing& s, const MonomialIdeal& a, unsigned limit) {
  const std::size_t n = s.num_vars();
  std::vector<Exponent> hits;
  Exponent m(n);
  for (;;) {
    if (oracle::member(a.gens(), m) && s.in_subring(m)) hits.push_back(m);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (m[i] < limit) {
        ++m[i];
        break;
      }
      m[i] = 0;
    }
    if (i == n) break;
  }
  return MonomialIdeal::minimalize(hits, n);
}

// A random finite-index subgroup of Z or Z ⊕ Z/2 with index ≤ 6, plus a grading.
struct RandomCase {
  RestrictedRing ring;
  MonomialIdeal a;
};

RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> deg(0, 3), idx(1, 6), pick(0, 1);
  const std::size_t n = 2 + rng() % 2;
  if (pick(rng) == 0) {
    std::vector<long> degrees;
    degrees.push_back(1);
    for (std::size_t i = 1; i < n; ++i) degrees.push_back(1 + deg(rng));
    GradedRing r = GradedRing::integer_graded(degrees);
    Subgroup h(r.group(), IntMatrix::from_rows({{idx(rng)}}));
    return {RestrictedRing(r, h), oracle::random_ideal(rng, n, 3, 3)};
  }
  // G = Z ⊕ Z/2; X_0 has degree (1, 0) so psi is onto, others random
  FgAbelianGroup g(IntMatrix::from_rows({{0}, {2}}));
  IntMatrix psi(2, n);
  psi(0, 0) = 1;
  psi(1, 1) = 1;
  for (std::size_t i = 2; i < n; ++i) {
    psi(0, i) = deg(rng);
    psi(1, i) = pick(rng);
  }
  const long k = 1 + pick(rng) * 2;
  Subgroup h(g, IntMatrix::from_rows({{k, 0}, {0, pick(rng)}}));
  return {RestrictedRing(GradedRing(g, psi), h), oracle::random_ideal(rng, n, 3, 3)};
}

}  // namespace

TEST_CASE("degree") {
  GradedRing z = GradedRing::integer_graded({1});
  CHECK(degree(z, {4}) == to_int_vector({4}));
  CHECK(degree(z, {0}) == to_int_vector({0}));
  GradedRing z2(FgAbelianGroup::cyclic(2), IntMatrix::from_rows({{1}}));
  CHECK(degree(z2, {3}) == to_int_vector({1}));
  CHECK_THROWS_AS(degree(z, {1, 1}), DimensionMismatch);
  CHECK_THROWS_AS(GradedRing::integer_graded({2, 4}), DomainError);
}

TEST_CASE("restricted ring requires finite index") {
  GradedRing r(FgAbelianGroup::free(2), IntMatrix::from_rows({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(RestrictedRing(r, Subgroup(r.group(), IntMatrix::from_rows({{1}, {0}}))), InfiniteIndex);
}

TEST_CASE("restrict_ideal") {
  CHECK(restrict_ideal(even_part({1}), ideal({{4}}, 1)) == ideal({{4}}, 1));
  CHECK(restrict_ideal(even_part({1}), ideal({{3}}, 1)) == ideal({{4}}, 1));
  CHECK(restrict_ideal(even_part({1, 1}), ideal({{1, 0}}, 2)) == ideal({{2, 0}, {1, 1}}, 2));
  CHECK(restrict_ideal(even_part({1}), MonomialIdeal::zero(1)).is_zero());
}

TEST_CASE("restrict_ideal agrees with a box scan") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 80; ++t) {
    RandomCase c = random_case(rng);
    const MonomialIdeal r = restrict_ideal(c.ring, c.a);
    CHECK(r == restrict_by_scan(c.ring, c.a, 3 + 6));
    for (const auto& g : r.gens()) {
      CHECK(c.ring.in_subring(g));
      CHECK(contains_monomial(c.a, g));
    }
  }
}

TEST_CASE("m_mu and floors") {
  RestrictedRing s = even_part({1});
  CHECK(m_mu(s, ideal({{4}}, 1), {4}) == 4);
  CHECK(m_mu(s, ideal({{2}}, 1), {2}) == 2);
  RestrictedRing whole = RestrictedRing::unrestricted(GradedRing::integer_graded({1, 1}));
  CHECK(m_mu(whole, ideal({{2, 1}}, 2), {2, 1}) == 2);
  CHECK(floor_H(whole, ideal({{2, 1}}, 2)) == ideal({{2, 2}}, 2));
  CHECK_THROWS_AS(m_mu(whole, ideal({{2, 1}}, 2), {1, 1}), DomainError);
  CHECK_THROWS_AS(m_mu(whole, MonomialIdeal::zero(2), {1, 1}), DomainError);

  CHECK(floor_H(s, ideal({{4}}, 1)) == ideal({{4}}, 1));
  CHECK(floor_H(s, ideal({{2}}, 1)) == ideal({{2}}, 1));
  CHECK(floor_restricted(s, ideal({{4}}, 1)) == ideal({{2}}, 1));
  CHECK(floor_restricted(even_part({1, 1}), ideal({{2, 1}}, 2)) == ideal({{1, 1}}, 2));
}

TEST_CASE("H = G degenerates to the unrestricted operations") {
  std::mt19937_64 rng(43);
  RestrictedRing whole = RestrictedRing::unrestricted(GradedRing::integer_graded({1, 2, 3}));
  for (int t = 0; t < 50; ++t) {
    const MonomialIdeal a = oracle::random_ideal(rng, 3, 4, 4);
    CHECK(restrict_ideal(whole, a) == a);
    // m_mu is the least m with supp(mu)^m in a, so ⌊a⌋_G lies inside a and
    // shares its floor
    CHECK(ideal_contains(a, floor_H(whole, a)));
    CHECK(floor(floor_H(whole, a)) == floor(a));
    CHECK(floor_restricted(whole, a) == floor(a));
  }
}

TEST_CASE("restriction chain: floor_H ⊆ a_(H) ⊆ floor_restricted") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 120; ++t) {
    RandomCase c = random_case(rng);
    const MonomialIdeal r = restrict_ideal(c.ring, c.a);
    const MonomialIdeal fh = floor_H(c.ring, c.a);
    const MonomialIdeal fr = floor_restricted(c.ring, c.a);
    CHECK(ideal_contains(r, fh));
    CHECK(ideal_contains(fr, r));
    CHECK(ideal_contains(fr, fh));
    CHECK(floor(fh) == floor(c.a));
    for (const auto& g : fh.gens()) CHECK(c.ring.in_subring(g));
  }
}

TEST_CASE("strict chain for X_0^4 over the even part") {
  RestrictedRing s = even_part({1});
  const MonomialIdeal a = ideal({{4}}, 1);
  CHECK(restrict_ideal(s, a) == floor_H(s, a));
  CHECK(floor_H(s, a) == ideal({{4}}, 1));
  CHECK(floor_restricted(s, a) == ideal({{2}}, 1));
  CHECK_FALSE(floor_H(s, a) == floor_restricted(s, a));
}
