#include <random>

#include "doctest.h"
#include "monotor/errors.hpp"
#include "monotor/lattice.hpp"
#include "oracles.hpp"

using namespace monotor;

namespace {

void check_smith(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  const IntVector d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (i < s.rank) CHECK(d[i] != 0);
    if (i >= s.rank) CHECK(d[i] == 0);
  }
  for (std::size_t r = 0; r < s.D.rows(); ++r)
    for (std::size_t c = 0; c < s.D.cols(); ++c)
      if (r != c) CHECK(s.D(r, c) == 0);
}

Subgroup subgroup_of_z(long k) { return Subgroup(FgAbelianGroup::free(1), IntMatrix::from_rows({{k}})); }

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  const SmithForm s = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(s.D == IntMatrix::from_rows({{1, 0}, {0, 6}}));
  CHECK(s.U * IntMatrix::from_rows({{2, 0}, {0, 3}}) * s.V == s.D);

  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  const SmithForm z = smith_normal_form(IntMatrix::from_rows({{0}}));
  CHECK(z.D == IntMatrix::from_rows({{0}}));
  CHECK(z.rank == 0);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = entry(rng);
    check_smith(a);
    // the product of the nonzero invariant factors is the gcd of the top minors
    const SmithForm s = smith_normal_form(a);
    if (s.rank == a.rows()) {
      Integer prod = 1;
      for (std::size_t i = 0; i < s.rank; ++i) prod *= s.D(i, i);
      CHECK(prod == oracle::maximal_minor_gcd(a));
    }
  }
}

TEST_CASE("smith normal form is deterministic") {
  const IntMatrix a = IntMatrix::from_rows({{4, 6, 2}, {6, 9, 3}, {2, 3, 8}});
  const SmithForm s1 = smith_normal_form(a), s2 = smith_normal_form(a);
  CHECK(s1.U == s2.U);
  CHECK(s1.V == s2.V);
  CHECK(s1.D == s2.D);
}

TEST_CASE("subgroup membership") {
  CHECK(subgroup_membership(to_int_vector({4}), subgroup_of_z(2)));
  CHECK_FALSE(subgroup_membership(to_int_vector({3}), subgroup_of_z(2)));

  // G = Z ⊕ Z/2, H = <(1, 1)>: (2, 0) = 2*(1,1) - (0,2)
  FgAbelianGroup g(IntMatrix::from_rows({{0}, {2}}));
  Subgroup h(g, IntMatrix::from_rows({{1}, {1}}));
  CHECK(subgroup_membership(to_int_vector({2, 0}), h));
  CHECK_FALSE(subgroup_membership(to_int_vector({1, 0}), h));
  CHECK_THROWS_AS(subgroup_membership(to_int_vector({1}), h), DimensionMismatch);
}

TEST_CASE("subgroup index") {
  CHECK(subgroup_index(subgroup_of_z(2)) == Integer(2));
  Subgroup line(FgAbelianGroup::free(2), IntMatrix::from_rows({{1}, {0}}));
  CHECK_FALSE(subgroup_index(line).has_value());
  Subgroup box(FgAbelianGroup::free(2), IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(subgroup_index(box) == Integer(6));
}

TEST_CASE("subgroup index matches coset enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4), ngen(1, 3);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 60; ++t) {
    const std::size_t k = 1 + t % 2;
    IntMatrix gens(k, ngen(rng));
    for (std::size_t r = 0; r < gens.rows(); ++r)
      for (std::size_t c = 0; c < gens.cols(); ++c) gens(r, c) = entry(rng);
    Subgroup h(FgAbelianGroup::free(k), gens);
    const auto idx = subgroup_index(h);
    CHECK(idx.has_value() == (oracle::maximal_minor_gcd(gens) != 0));
    if (!idx || *idx > 24) continue;
    CHECK(*idx == oracle::maximal_minor_gcd(gens));
    // breadth-first search over cosets, stepping by unit vectors
    std::vector<IntVector> reps = {IntVector(k, Integer(0))};
    for (std::size_t q = 0; q < reps.size(); ++q)
      for (std::size_t i = 0; i < k; ++i) {
        IntVector next = reps[q];
        next[i] += 1;
        bool seen = false;
        for (const auto& r : reps) {
          IntVector diff(k);
          for (std::size_t j = 0; j < k; ++j) diff[j] = next[j] - r[j];
          if (h.contains(diff)) {
            seen = true;
            break;
          }
        }
        if (!seen) reps.push_back(next);
      }
    CHECK(Integer(static_cast<long>(reps.size())) == *idx);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("quotient order table") {
  CHECK(quotient_order_table(subgroup_of_z(2), {to_int_vector({1}), to_int_vector({2})}) ==
        std::vector<Integer>{2, 1});
  Subgroup box(FgAbelianGroup::free(2), IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(quotient_order_table(box, {to_int_vector({1, 1})}) == std::vector<Integer>{6});
  Subgroup line(FgAbelianGroup::free(2), IntMatrix::from_rows({{1}, {0}}));
  CHECK_THROWS_AS(quotient_order_table(line, {to_int_vector({0, 1})}), InfiniteIndex);
}

TEST_CASE("quotient order agrees with membership of multiples") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-5, 5);
  FgAbelianGroup g(IntMatrix::from_rows({{0, 0}, {4, 0}, {0, 0}}));  // Z ⊕ Z/4 ⊕ Z
  for (int t = 0; t < 60; ++t) {
    IntMatrix gens(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) gens(r, c) = entry(rng);
    Subgroup h(g, gens);
    if (!h.finite_index() || *h.index() > 40) continue;
    IntVector v = {Integer(entry(rng)), Integer(entry(rng)), Integer(entry(rng))};
    const Integer ord = h.order_in_quotient(v);
    for (long m = 1; m <= 2 * ord.get_si(); ++m) {
      IntVector mv = v;
      for (auto& x : mv) x *= m;
      CHECK(h.contains(mv) == (m % ord.get_si() == 0));
    }
  }
}

TEST_CASE("group element reduction") {
  FgAbelianGroup g(IntMatrix::from_rows({{0}, {2}}));
  CHECK(g.equal(to_int_vector({3, 5}), to_int_vector({3, 1})));
  CHECK_FALSE(g.equal(to_int_vector({3, 0}), to_int_vector({3, 1})));
  CHECK(g.reduce(to_int_vector({3, 5})) == g.reduce(to_int_vector({3, -1})));
  CHECK(FgAbelianGroup::cyclic(2).invariant_factors() == IntVector{2});
  CHECK(g.invariant_factors() == IntVector{2, 0});
}

TEST_CASE("integer kernel and lattice intersection") {
  const IntMatrix a = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  const IntMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK(a * k == IntMatrix(2, 2));

  // 2Z ∩ 3Z = 6Z
  const IntMatrix meet = lattice_intersection(IntMatrix::from_rows({{2}}), IntMatrix::from_rows({{3}}));
  REQUIRE(meet.cols() == 1);
  CHECK(abs(meet(0, 0)) == 6);
}

TEST_CASE("hermite form solves membership") {
  const HermiteBasis h = column_hermite_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(h.solve(to_int_vector({4, 9})).has_value());
  CHECK_FALSE(h.solve(to_int_vector({1, 0})).has_value());
}
