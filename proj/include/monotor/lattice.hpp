#pragma once

// Exact integer linear algebra: matrices over Z, Smith and Hermite normal
// forms, finitely generated abelian groups presented as Z^k / relations, and
// their subgroups.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace monotor {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Each entry of `columns` becomes one column; all must have length `rows`.
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix diagonal(const IntVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& cols) const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
/// Horizontal concatenation [a | b]; row counts must agree.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

/// Determinant by fraction-free elimination (Bareiss). Square matrices only.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal d_1 | d_2 | ... | d_rank, then zeros
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;

  IntVector diagonal() const;
};

/// U * m * V = D. Pivots on the entry of least absolute value, ties broken by
/// lowest row then lowest column, so the result is reproducible.
SmithForm smith_normal_form(const IntMatrix& m);

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `m`: a basis in column echelon form (pivot rows strictly increasing, pivots
/// positive, entries left of each pivot reduced into [0, pivot)).
struct HermiteBasis {
  IntMatrix basis;                    // rows x rank
  std::vector<std::size_t> pivot_rows;

  /// Solves basis * x = v over Z; nullopt when v is not in the lattice.
  std::optional<IntVector> solve(const IntVector& v) const;
};

HermiteBasis column_hermite_form(const IntMatrix& m);

/// Z-basis of {x : m x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& m);

/// Generators (columns) of the intersection of the column lattices of a and b.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Finitely generated abelian group Z^k / (column span of relations).
class FgAbelianGroup {
 public:
  FgAbelianGroup() : FgAbelianGroup(IntMatrix(0, 0)) {}
  explicit FgAbelianGroup(IntMatrix relations);
  static FgAbelianGroup free(std::size_t rank);
  static FgAbelianGroup cyclic(const Integer& order);

  std::size_t ambient_rank() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  const SmithForm& smith() const { return smith_; }
  /// Nontrivial invariant factors followed by one 0 per free summand.
  const IntVector& invariant_factors() const { return invariant_factors_; }

  /// Canonical ambient representative of the class of g: two vectors
  /// represent the same element iff their reductions are equal.
  IntVector reduce(const IntVector& g) const;
  bool equal(const IntVector& a, const IntVector& b) const;
  bool is_zero(const IntVector& g) const;

 private:
  IntMatrix relations_;
  SmithForm smith_;
  IntMatrix u_inverse_;
  IntVector invariant_factors_;
};

/// Index of a subgroup; nullopt encodes infinite index.
using SubgroupIndex = std::optional<Integer>;

class Subgroup {
 public:
  Subgroup(FgAbelianGroup parent, IntMatrix generators);
  /// The whole group.
  static Subgroup full(const FgAbelianGroup& parent);

  const FgAbelianGroup& parent() const { return parent_; }
  const IntMatrix& generators() const { return generators_; }
  /// Generators of H together with the parent relations, as one matrix.
  const IntMatrix& lattice() const { return lattice_; }

  /// Decided through the Hermite basis of the subgroup lattice.
  bool contains(const IntVector& g) const;
  SubgroupIndex index() const { return index_; }
  bool finite_index() const { return index_.has_value(); }

  /// Least m >= 1 with m*v in H. Throws InfiniteIndex when the index is infinite.
  Integer order_in_quotient(const IntVector& v) const;
  /// Coordinates of the class of v in G/H ~ sum Z/d_i (finite index only).
  /// Two vectors lie in the same coset iff their coordinates agree.
  IntVector coset_coordinates(const IntVector& v) const;
  const IntVector& quotient_moduli() const { return quotient_moduli_; }

 private:
  FgAbelianGroup parent_;
  IntMatrix generators_;
  IntMatrix lattice_;
  HermiteBasis hermite_;
  SmithForm smith_;
  SubgroupIndex index_;
  IntVector quotient_moduli_;  // nontrivial d_i of the lattice SNF
  std::vector<std::size_t> quotient_rows_;
};

bool subgroup_membership(const IntVector& g, const Subgroup& h);
SubgroupIndex subgroup_index(const Subgroup& h);
/// Per-vector order in G/H. Throws InfiniteIndex for infinite index.
std::vector<Integer> quotient_order_table(const Subgroup& h, const std::vector<IntVector>& vectors);

IntVector to_int_vector(std::initializer_list<long> values);

}  // namespace monotor
