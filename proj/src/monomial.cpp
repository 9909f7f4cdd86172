#include "monotor/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "monotor/errors.hpp"

namespace monotor {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": variable counts differ");
}

}  // namespace

bool Exponent::divides(const Exponent& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

bool Exponent::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
}

Exponent Exponent::support() const {
  Exponent s(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] > 0 ? 1 : 0;
  return s;
}

std::uint64_t Exponent::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > 0) mask |= std::uint64_t{1} << i;
  return mask;
}

Exponent::value_type Exponent::max_entry() const {
  return e_.empty() ? 0 : *std::max_element(e_.begin(), e_.end());
}

std::uint64_t Exponent::total_degree() const {
  return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
}

Exponent Exponent::scaled(value_type k) const {
  Exponent s = *this;
  for (auto& v : s.e_) v *= k;
  return s;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  require_same_length(a.size(), b.size(), "exponent sum");
  Exponent s = a;
  for (std::size_t i = 0; i < a.size(); ++i) s.e_[i] += b.e_[i];
  return s;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  require_same_length(a.size(), b.size(), "exponent lcm");
  Exponent s = a;
  for (std::size_t i = 0; i < a.size(); ++i) s.e_[i] = std::max(a.e_[i], b.e_[i]);
  return s;
}

MonomialIdeal MonomialIdeal::zero(std::size_t n) { return MonomialIdeal(n, {}); }

MonomialIdeal MonomialIdeal::unit(std::size_t n) { return MonomialIdeal(n, {Exponent(n)}); }

MonomialIdeal MonomialIdeal::minimalize(std::vector<Exponent> raw, std::size_t n) {
  for (const auto& e : raw) require_same_length(e.size(), n, "minimalize");
  // A divisor has total degree <= its multiple, so scanning by degree lets
  // each candidate be checked against already-kept generators only.
  std::sort(raw.begin(), raw.end(), [](const Exponent& a, const Exponent& b) {
    auto da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a < b;
  });
  std::vector<Exponent> kept;
  for (auto& e : raw) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Exponent& g) { return g.divides(e); });
    if (!redundant) kept.push_back(std::move(e));
  }
  std::sort(kept.begin(), kept.end());
  return MonomialIdeal(n, std::move(kept));
}

Exponent::value_type MonomialIdeal::max_exponent() const {
  Exponent::value_type m = 0;
  for (const auto& g : gens_) m = std::max(m, g.max_entry());
  return m;
}

MonomialIdeal floor(const MonomialIdeal& a) {
  std::vector<Exponent> raw;
  raw.reserve(a.gens().size());
  for (const auto& g : a.gens()) raw.push_back(g.support());
  return MonomialIdeal::minimalize(std::move(raw), a.num_vars());
}

bool contains_monomial(const MonomialIdeal& a, const Exponent& m) {
  require_same_length(a.num_vars(), m.size(), "contains_monomial");
  return std::any_of(a.gens().begin(), a.gens().end(), [&](const Exponent& g) { return g.divides(m); });
}

MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_length(a.num_vars(), b.num_vars(), "ideal_product");
  std::vector<Exponent> raw;
  raw.reserve(a.gens().size() * b.gens().size());
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) raw.push_back(x + y);
  return MonomialIdeal::minimalize(std::move(raw), a.num_vars());
}

MonomialIdeal ideal_power(const MonomialIdeal& a, unsigned k) {
  MonomialIdeal result = MonomialIdeal::unit(a.num_vars());
  MonomialIdeal base = a;
  while (k > 0) {
    if (k & 1U) result = ideal_product(result, base);
    k >>= 1U;
    if (k > 0) base = ideal_product(base, base);
  }
  return result;
}

bool ideal_contains(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_length(a.num_vars(), b.num_vars(), "ideal_contains");
  return std::all_of(b.gens().begin(), b.gens().end(), [&](const Exponent& g) { return contains_monomial(a, g); });
}

MonomialIdeal ideal_intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_length(a.num_vars(), b.num_vars(), "ideal_intersection");
  std::vector<Exponent> raw;
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) raw.push_back(lcm(x, y));
  return MonomialIdeal::minimalize(std::move(raw), a.num_vars());
}

MonomialIdeal colon(const MonomialIdeal& c, const Exponent& m) {
  require_same_length(c.num_vars(), m.size(), "colon");
  std::vector<Exponent> raw;
  raw.reserve(c.gens().size());
  for (const auto& g : c.gens()) {
    Exponent q(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) q[i] = g[i] > m[i] ? g[i] - m[i] : 0;
    raw.push_back(std::move(q));
  }
  return MonomialIdeal::minimalize(std::move(raw), c.num_vars());
}

MonomialIdeal saturation(const MonomialIdeal& c, const MonomialIdeal& a) {
  require_same_length(c.num_vars(), a.num_vars(), "saturation");
  MonomialIdeal current = c;
  for (;;) {
    // c : a is the intersection of c : g over the generators g of a; the
    // empty intersection (a = 0) is the unit ideal.
    MonomialIdeal next = MonomialIdeal::unit(c.num_vars());
    for (const auto& g : a.gens()) next = ideal_intersection(next, colon(current, g));
    if (next == current) return current;
    current = std::move(next);
  }
}

bool power_containment_possible(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_length(a.num_vars(), b.num_vars(), "power_containment");
  for (const auto& mu : a.gens()) {
    const auto mu_mask = mu.support_mask();
    bool found = std::any_of(b.gens().begin(), b.gens().end(), [&](const Exponent& nu) {
      return (nu.support_mask() & ~mu_mask) == 0;
    });
    if (!found) return false;
  }
  return true;
}

unsigned power_containment_bound(const MonomialIdeal& a, const MonomialIdeal& b) {
  // Pigeonhole: in a product of n generators some mu occurs at least
  // n / |E(a)| times, and mu^k is divisible by any nu supported in supp(mu)
  // once k >= max exponent of nu.
  unsigned bound = static_cast<unsigned>(a.gens().size()) * b.max_exponent();
  return std::max(bound, 1U);
}

std::optional<unsigned> power_containment_exists(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (!power_containment_possible(a, b)) return std::nullopt;
  if (b.is_unit()) return 0U;
  const unsigned bound = power_containment_bound(a, b);
  // Generators of a^n not already in b; products of members of b stay in b,
  // so only these need to be extended to a^{n+1}.
  std::vector<Exponent> outside = {Exponent(a.num_vars())};
  for (unsigned n = 1; n <= bound; ++n) {
    std::vector<Exponent> raw;
    raw.reserve(outside.size() * a.gens().size());
    for (const auto& x : outside)
      for (const auto& g : a.gens()) raw.push_back(x + g);
    MonomialIdeal power = MonomialIdeal::minimalize(std::move(raw), a.num_vars());
    outside.clear();
    for (const auto& g : power.gens())
      if (!contains_monomial(b, g)) outside.push_back(g);
    if (outside.empty()) return n;
  }
  throw std::logic_error("power_containment_exists: search exceeded its proven bound");
}

MonomialIdeal family_truncate(const IdealFamily& f, std::size_t N) {
  if (N < 1) throw DomainError("family truncation needs N >= 1");
  std::vector<Exponent> raw;
  for (std::size_t i = 1; i <= N; ++i) {
    long e = f.exponent(static_cast<long>(i));
    if (e < 0) throw DomainError("ideal family rule yields a negative exponent at i = " + std::to_string(i));
    Exponent g(N);
    g[i - 1] = static_cast<Exponent::value_type>(e);
    raw.push_back(std::move(g));
  }
  return MonomialIdeal::minimalize(std::move(raw), N);
}

}  // namespace monotor
