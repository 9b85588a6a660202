#pragma once

// Exact integer linear algebra over GMP integers: Smith and Hermite normal
// forms with transform tracking, integer linear solving, Bareiss determinants.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tilehom/error.hpp"

namespace tilehom {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw UsageError("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return sgn(v) == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (sgn(k) == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn((*this)(src, j)) != 0) (*this)(dst, j) += k * (*this)(src, j);
    }
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (sgn(k) == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn((*this)(i, src)) != 0) (*this)(i, dst) += k * (*this)(i, src);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<Integer> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw UsageError("matrix/vector dimension mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) != 0) y[i] += a(i, j) * x[j];
    }
  }
  return y;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … | d_rank, all > 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
  std::size_t rank{0};

  /// Nonzero diagonal entries d₁ … d_rank.
  IntVector invariant_factors() const {
    IntVector out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

/// Floor quotient; the remainder a - q·b has |r| < |b|.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace detail

/// Smith normal form with transforms.
///
/// Pivot: smallest nonzero magnitude in the trailing block, ties broken by
/// lowest row then lowest column. Deterministic for a fixed input.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  SmithDecomposition s{IntMatrix::identity(r), IntMatrix::identity(c), m, 0};
  IntMatrix& D = s.D;
  IntMatrix& U = s.U;
  IntMatrix& V = s.V;

  auto move_pivot = [&](std::size_t t, std::size_t pi, std::size_t pj) {
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);
  };

  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Global pivot search over the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < r; ++i) {
      for (std::size_t j = t; j < c; ++j) {
        if (sgn(D(i, j)) == 0) continue;
        if (!best || detail::cmpabs(D(i, j), D(best->first, best->second)) < 0) best = {i, j};
      }
    }
    if (!best) break;
    move_pivot(t, best->first, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(D(i, t)) == 0) continue;
        const Integer q = -detail::floor_div(D(i, t), D(t, t));
        D.add_row(i, t, q);
        U.add_row(i, t, q);
        if (sgn(D(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(D(t, j)) == 0) continue;
        const Integer q = -detail::floor_div(D(t, j), D(t, t));
        D.add_col(j, t, q);
        V.add_col(j, t, q);
        if (sgn(D(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot: bring the smallest entry of
        // row t / column t to the corner and reduce again.
        std::pair<std::size_t, std::size_t> pick{t, t};
        for (std::size_t i = t + 1; i < r; ++i) {
          if (sgn(D(i, t)) != 0 && detail::cmpabs(D(i, t), D(pick.first, pick.second)) < 0) pick = {i, t};
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (sgn(D(t, j)) != 0 && detail::cmpabs(D(t, j), D(pick.first, pick.second)) < 0) pick = {t, j};
        }
        move_pivot(t, pick.first, pick.second);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < r && !offender; ++i) {
        for (std::size_t j = t + 1; j < c; ++j) {
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
        }
      }
      if (!offender) break;
      D.add_row(t, *offender, 1);
      U.add_row(t, *offender, 1);
    }
    if (sgn(D(t, t)) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

/// Row-style Hermite normal form H = W·M: H is in row echelon form, pivots are
/// positive and entries above each pivot lie in [0, pivot).
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix W;
  std::size_t rank{0};
  std::vector<std::size_t> pivot_cols;
};

inline HermiteDecomposition hermite_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  HermiteDecomposition h{m, IntMatrix::identity(r), 0, {}};
  IntMatrix& H = h.H;
  IntMatrix& W = h.W;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    bool found = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < r; ++i) {
        if (sgn(H(i, col)) != 0 && (!best || detail::cmpabs(H(i, col), H(*best, col)) < 0)) best = i;
      }
      if (!best) break;
      found = true;
      H.swap_rows(row, *best);
      W.swap_rows(row, *best);
      bool clean = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (sgn(H(i, col)) == 0) continue;
        const Integer q = -detail::floor_div(H(i, col), H(row, col));
        H.add_row(i, row, q);
        W.add_row(i, row, q);
        if (sgn(H(i, col)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (sgn(H(row, col)) < 0) {
      H.negate_row(row);
      W.negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      const Integer q = -detail::floor_div(H(i, col), H(row, col));
      H.add_row(i, row, q);
      W.add_row(i, row, q);
    }
    h.pivot_cols.push_back(col);
    ++row;
  }
  h.rank = row;
  return h;
}

/// Integer solution of M·x = b via the Smith form, or std::nullopt if none
/// exists. Solvable iff dᵢ | yᵢ for i < rank and yᵢ = 0 beyond, y = U·b.
inline std::optional<IntVector> solve_integer(const SmithDecomposition& s, const IntVector& b) {
  if (b.size() != s.U.cols()) throw UsageError("right-hand side has wrong length");
  const IntVector y = s.U * b;
  IntVector z(s.V.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      z[i] = y[i] / s.D(i, i);
    } else if (sgn(y[i]) != 0) {
      return std::nullopt;
    }
  }
  return s.V * z;
}

inline std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  return solve_integer(smith_normal_form(m), b);
}

/// Integer solution of M·x = b through the Hermite form of Mᵀ. Independent of
/// the Smith route; used to cross-check it.
inline std::optional<IntVector> solve_integer_hermite(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw UsageError("right-hand side has wrong length");
  const HermiteDecomposition h = hermite_normal_form(m.transposed());
  // x = Wᵀ z and Hᵀ z = b, with Hᵀ lower echelon.
  IntVector z(h.H.rows());
  for (std::size_t k = 0; k < h.rank; ++k) {
    const std::size_t p = h.pivot_cols[k];
    Integer rest = b[p];
    for (std::size_t j = 0; j < k; ++j) rest -= h.H(j, p) * z[j];
    if (!mpz_divisible_p(rest.get_mpz_t(), h.H(k, p).get_mpz_t())) return std::nullopt;
    z[k] = rest / h.H(k, p);
  }
  if (h.H.transposed() * z != b) return std::nullopt;
  return h.W.transposed() * z;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace tilehom
