#pragma once

// Monomial ideals of A[X_0, ..., X_{n-1}] in canonical form: the antichain of
// minimal generator exponents, sorted lexicographically. Monomial ideals are
// coefficient-free, so nothing here depends on the base ring A.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace monotor {

/// Exponent vector of a monomial; the componentwise order is divisibility.
class Exponent {
 public:
  using value_type = std::uint32_t;

  Exponent() = default;
  explicit Exponent(std::size_t n) : e_(n, 0) {}
  explicit Exponent(std::vector<value_type> entries) : e_(std::move(entries)) {}
  Exponent(std::initializer_list<value_type> entries) : e_(entries) {}

  std::size_t size() const { return e_.size(); }
  value_type operator[](std::size_t i) const { return e_[i]; }
  value_type& operator[](std::size_t i) { return e_[i]; }
  const std::vector<value_type>& entries() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  /// Componentwise <=, i.e. X^this divides X^other.
  bool divides(const Exponent& other) const;
  bool is_zero() const;
  /// 0/1 vector of the support: exponent of prod_{i: e_i > 0} X_i.
  Exponent support() const;
  /// Bitmask of the support (n <= 64).
  std::uint64_t support_mask() const;
  value_type max_entry() const;
  std::uint64_t total_degree() const;
  Exponent scaled(value_type k) const;

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent lcm(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.e_ <=> b.e_; }

 private:
  std::vector<value_type> e_;
};

class MonomialIdeal {
 public:
  static MonomialIdeal zero(std::size_t n);
  static MonomialIdeal unit(std::size_t n);
  /// The unique antichain generating the same ideal as `raw`.
  static MonomialIdeal minimalize(std::vector<Exponent> raw, std::size_t n);

  std::size_t num_vars() const { return n_; }
  /// E(a): minimal generators, sorted lexicographically.
  const std::vector<Exponent>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_zero(); }
  /// Largest exponent occurring in any minimal generator (0 for zero/unit).
  Exponent::value_type max_exponent() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  MonomialIdeal(std::size_t n, std::vector<Exponent> gens) : n_(n), gens_(std::move(gens)) {}
  std::size_t n_ = 0;
  std::vector<Exponent> gens_;
};

inline MonomialIdeal minimalize(std::vector<Exponent> raw, std::size_t n) {
  return MonomialIdeal::minimalize(std::move(raw), n);
}

/// ⌊a⌋: generated by the squarefree supports of E(a).
MonomialIdeal floor(const MonomialIdeal& a);
bool contains_monomial(const MonomialIdeal& a, const Exponent& m);
MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_power(const MonomialIdeal& a, unsigned k);
/// a ⊇ b
bool ideal_contains(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_intersection(const MonomialIdeal& a, const MonomialIdeal& b);
/// c : X^m
MonomialIdeal colon(const MonomialIdeal& c, const Exponent& m);
/// c : a^∞, iterating c <- c : a until stable.
MonomialIdeal saturation(const MonomialIdeal& c, const MonomialIdeal& a);

/// Combinatorial existence test for some power of a inside b: every minimal
/// generator of a has a generator of b supported inside its support.
bool power_containment_possible(const MonomialIdeal& a, const MonomialIdeal& b);
/// Upper bound on the least n with a^n ⊆ b whenever such n exists.
unsigned power_containment_bound(const MonomialIdeal& a, const MonomialIdeal& b);
/// Least n >= 0 with a^n ⊆ b, or nullopt if no power of a lies in b.
std::optional<unsigned> power_containment_exists(const MonomialIdeal& a, const MonomialIdeal& b);

/// Affine exponent rule i -> X_i^{c*i + d} over variables X_1, X_2, ...
struct IdealFamily {
  long c = 1;
  long d = 0;

  long exponent(long i) const { return c * i + d; }
};

/// <X_i^{e(i)} : 1 <= i <= N> in N variables; variable X_i has index i-1.
MonomialIdeal family_truncate(const IdealFamily& f, std::size_t N);

}  // namespace monotor
