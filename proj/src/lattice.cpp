#include "monotor/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "monotor/errors.hpp"

namespace monotor {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("matrix row has wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  IntMatrix m(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionMismatch("matrix row has wrong length");
    std::size_t c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionMismatch("matrix column has wrong length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  IntMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector product: dimensions differ");
  IntVector out(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntVector SmithForm::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

struct Position {
  std::size_t row;
  std::size_t col;
};

// Least nonzero |entry| in the block starting at (t, t); row-major scan makes
// the first minimum found the lowest row, then lowest column.
std::optional<Position> smallest_in_block(const IntMatrix& a, std::size_t t) {
  std::optional<Position> best;
  Integer best_abs;
  for (std::size_t r = t; r < a.rows(); ++r)
    for (std::size_t c = t; c < a.cols(); ++c) {
      if (a(r, c) == 0) continue;
      Integer v = abs(a(r, c));
      if (!best || v < best_abs) {
        best = Position{r, c};
        best_abs = v;
      }
    }
  return best;
}

// Same, restricted to row t and column t of the block.
Position smallest_in_cross(const IntMatrix& a, std::size_t t) {
  Position best{t, t};
  Integer best_abs = abs(a(t, t));
  auto consider = [&](std::size_t r, std::size_t c) {
    if (a(r, c) == 0) return;
    Integer v = abs(a(r, c));
    if (best_abs == 0 || v < best_abs) {
      best = Position{r, c};
      best_abs = v;
    }
  };
  for (std::size_t r = t; r < a.rows(); ++r) consider(r, t);
  for (std::size_t c = t + 1; c < a.cols(); ++c) consider(t, c);
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto move_to = [&](std::size_t t, Position p) {
    a.swap_rows(t, p.row);
    u.swap_rows(t, p.row);
    a.swap_cols(t, p.col);
    v.swap_cols(t, p.col);
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    auto pivot = smallest_in_block(a, t);
    if (!pivot) break;
    move_to(t, *pivot);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = -floor_div(a(i, t), a(t, t));
        a.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = -floor_div(a(t, j), a(t, t));
        a.add_col_multiple(j, t, q);
        v.add_col_multiple(j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_to(t, smallest_in_cross(a, t));
        continue;
      }
      // Divisibility chain: fold an offending row into the pivot row.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (floor_mod(a(i, j), a(t, t)) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  return SmithForm{std::move(u), std::move(a), std::move(v), t};
}

HermiteBasis column_hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows && k < cols; ++r) {
    // Euclid across columns k.. on row r.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t c = k; c < cols; ++c)
        if (a(r, c) != 0 && (!best || abs(a(r, c)) < abs(a(r, *best)))) best = c;
      if (!best) break;
      a.swap_cols(k, *best);
      bool others_zero = true;
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (a(r, c) == 0) continue;
        a.add_col_multiple(c, k, -floor_div(a(r, c), a(r, k)));
        if (a(r, c) != 0) others_zero = false;
      }
      if (others_zero) break;
    }
    if (a(r, k) == 0) continue;
    if (a(r, k) < 0)
      for (std::size_t i = 0; i < rows; ++i) a(i, k) = -a(i, k);
    for (std::size_t c = 0; c < k; ++c) a.add_col_multiple(c, k, -floor_div(a(r, c), a(r, k)));
    pivots.push_back(r);
    ++k;
  }
  std::vector<std::size_t> keep(k);
  for (std::size_t i = 0; i < k; ++i) keep[i] = i;
  return HermiteBasis{a.select_columns(keep), std::move(pivots)};
}

std::optional<IntVector> HermiteBasis::solve(const IntVector& v) const {
  if (v.size() != basis.rows()) throw DimensionMismatch("lattice solve: vector length mismatch");
  IntVector residual = v;
  IntVector x(basis.cols(), Integer(0));
  std::size_t next = 0;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    if (next < pivot_rows.size() && pivot_rows[next] == r) {
      const Integer& p = basis(r, next);
      if (floor_mod(residual[r], p) != 0) return std::nullopt;
      Integer q = residual[r] / p;
      x[next] = q;
      for (std::size_t i = r; i < basis.rows(); ++i) residual[i] -= q * basis(i, next);
      ++next;
    } else if (residual[r] != 0) {
      return std::nullopt;
    }
  }
  return x;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < m.cols(); ++j) cols.push_back(j);
  return s.V.select_columns(cols);
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("lattice intersection: ambient ranks differ");
  IntMatrix neg_b = b;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) neg_b(r, c) = -b(r, c);
  IntMatrix kernel = integer_kernel(hstack(a, neg_b));
  std::vector<std::size_t> top(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) top[i] = i;
  return a * kernel.select_rows(top);
}

namespace {

IntMatrix unimodular_inverse(const IntMatrix& u) {
  const std::size_t n = u.rows();
  // Gauss-Jordan over Q; the result is integral because det = +-1.
  std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = mpq_class(u(i, j));
    aug[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (aug[p][c] == 0) ++p;
    std::swap(aug[p], aug[c]);
    mpq_class inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      mpq_class f = aug[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[c][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      assert(aug[i][n + j].get_den() == 1);
      out(i, j) = aug[i][n + j].get_num();
    }
  return out;
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(IntMatrix relations)
    : relations_(std::move(relations)), smith_(smith_normal_form(relations_)) {
  u_inverse_ = unimodular_inverse(smith_.U);
  for (std::size_t i = 0; i < smith_.rank; ++i)
    if (smith_.D(i, i) != 1) invariant_factors_.push_back(smith_.D(i, i));
  for (std::size_t i = smith_.rank; i < ambient_rank(); ++i) invariant_factors_.emplace_back(0);
}

FgAbelianGroup FgAbelianGroup::free(std::size_t rank) { return FgAbelianGroup(IntMatrix(rank, 0)); }

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  IntMatrix rel(1, 1);
  rel(0, 0) = order;
  return FgAbelianGroup(std::move(rel));
}

IntVector FgAbelianGroup::reduce(const IntVector& g) const {
  if (g.size() != ambient_rank()) throw DimensionMismatch("group element has wrong ambient rank");
  IntVector y = smith_.U * g;
  for (std::size_t i = 0; i < smith_.rank; ++i) y[i] = floor_mod(y[i], smith_.D(i, i));
  return u_inverse_ * y;
}

bool FgAbelianGroup::equal(const IntVector& a, const IntVector& b) const { return reduce(a) == reduce(b); }

bool FgAbelianGroup::is_zero(const IntVector& g) const {
  return reduce(g) == IntVector(ambient_rank(), Integer(0));
}

Subgroup::Subgroup(FgAbelianGroup parent, IntMatrix generators)
    : parent_(std::move(parent)), generators_(std::move(generators)) {
  if (generators_.rows() != parent_.ambient_rank())
    throw DimensionMismatch("subgroup generators live in the wrong ambient rank");
  lattice_ = hstack(generators_, parent_.relations());
  hermite_ = column_hermite_form(lattice_);
  smith_ = smith_normal_form(lattice_);
  const std::size_t k = parent_.ambient_rank();
  if (smith_.rank == k) {
    Integer idx = 1;
    for (std::size_t i = 0; i < k; ++i) {
      idx *= smith_.D(i, i);
      if (smith_.D(i, i) != 1) {
        quotient_moduli_.push_back(smith_.D(i, i));
        quotient_rows_.push_back(i);
      }
    }
    index_ = idx;
  }
}

Subgroup Subgroup::full(const FgAbelianGroup& parent) {
  return Subgroup(parent, IntMatrix::identity(parent.ambient_rank()));
}

bool Subgroup::contains(const IntVector& g) const {
  if (g.size() != parent_.ambient_rank()) throw DimensionMismatch("element has wrong ambient rank");
  return hermite_.solve(g).has_value();
}

IntVector Subgroup::coset_coordinates(const IntVector& v) const {
  if (!index_) throw InfiniteIndex();
  if (v.size() != parent_.ambient_rank()) throw DimensionMismatch("element has wrong ambient rank");
  IntVector y = smith_.U * v;
  IntVector out;
  out.reserve(quotient_rows_.size());
  for (std::size_t i = 0; i < quotient_rows_.size(); ++i)
    out.push_back(floor_mod(y[quotient_rows_[i]], quotient_moduli_[i]));
  return out;
}

Integer Subgroup::order_in_quotient(const IntVector& v) const {
  IntVector w = coset_coordinates(v);
  Integer order = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Integer g = gcd(quotient_moduli_[i], w[i]);
    order = lcm(order, quotient_moduli_[i] / g);
  }
  return order;
}

bool subgroup_membership(const IntVector& g, const Subgroup& h) { return h.contains(g); }

SubgroupIndex subgroup_index(const Subgroup& h) { return h.index(); }

std::vector<Integer> quotient_order_table(const Subgroup& h, const std::vector<IntVector>& vectors) {
  if (!h.finite_index()) throw InfiniteIndex();
  std::vector<Integer> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(h.order_in_quotient(v));
  return out;
}

IntVector to_int_vector(std::initializer_list<long> values) {
  IntVector out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace monotor
