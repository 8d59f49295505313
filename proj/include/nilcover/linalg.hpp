#pragma once

// Exact linear algebra over the coordinate space of strictly upper
// triangular n x n matrices. Coordinates follow the graded order:
// superdiagonal index d = col - row ascending, then row ascending, so
// for n = 3 the order is (1,2), (2,3), (1,3). RREF pivots taken in this
// order line up with the lower central filtration, which the coset
// canonicalization downstream relies on.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "nilcover/errors.hpp"
#include "nilcover/rational.hpp"

namespace nilcover {

constexpr int kMinAmbient = 2;
constexpr int kMaxAmbient = 8;

inline int coord_dim(int n) { return n * (n - 1) / 2; }

inline void check_ambient(int n) {
  if (n < kMinAmbient || n > kMaxAmbient)
    throw DimensionMismatch("ambient size n must be in [2,8], got " +
                            std::to_string(n));
}

/// Index tables between coordinate index and (row, col), 0-based.
class GradedOrder {
 public:
  static const GradedOrder& get(int n) {
    check_ambient(n);
    static const std::array<GradedOrder, kMaxAmbient + 1> tables = [] {
      std::array<GradedOrder, kMaxAmbient + 1> t;
      for (int n = kMinAmbient; n <= kMaxAmbient; ++n) t[n] = GradedOrder(n);
      return t;
    }();
    return tables[static_cast<std::size_t>(n)];
  }

  int n() const { return n_; }
  int dim() const { return static_cast<int>(pairs_.size()); }
  int index(int i, int j) const { return index_[i][j]; }
  std::pair<int, int> pair(int idx) const { return pairs_[idx]; }
  /// Superdiagonal degree of a coordinate (1 = just above the diagonal).
  int degree(int idx) const { return pairs_[idx].second - pairs_[idx].first; }

  GradedOrder() = default;

 private:
  explicit GradedOrder(int n) : n_(n) {
    index_.assign(n, std::vector<int>(n, -1));
    for (int d = 1; d < n; ++d)
      for (int i = 0; i + d < n; ++i) {
        index_[i][i + d] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(i, i + d);
      }
  }

  int n_ = 0;
  std::vector<std::vector<int>> index_;
  std::vector<std::pair<int, int>> pairs_;
};

using CoordVector = std::vector<Rational>;

inline bool is_zero_vector(const CoordVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline CoordVector vec_add(const CoordVector& a, const CoordVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  CoordVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CoordVector vec_scale(const Rational& c, const CoordVector& v) {
  CoordVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

/// A rational subspace of the graded coordinate space, stored as a
/// canonical reduced row echelon basis: pivot entries 1, pivots strictly
/// increasing, pivot coordinates zero in every other row. The
/// representation is unique per subspace.
struct Subspace {
  int ambient_n = 0;
  std::vector<CoordVector> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  int coord_count() const { return coord_dim(ambient_n); }

  std::vector<int> pivots() const {
    std::vector<int> p;
    p.reserve(basis.size());
    for (const auto& row : basis) {
      int j = 0;
      while (j < static_cast<int>(row.size()) && row[j].is_zero()) ++j;
      p.push_back(j);
    }
    return p;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_n == b.ambient_n && a.basis == b.basis;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) {
    return !(a == b);
  }
};

namespace detail {

inline void check_vec(int n, const CoordVector& v) {
  if (static_cast<int>(v.size()) != coord_dim(n))
    throw DimensionMismatch("coordinate vector has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(coord_dim(n)));
}

// In-place Gaussian elimination to canonical RREF; drops zero rows.
inline void rref_rows(std::vector<CoordVector>& rows) {
  if (rows.empty()) return;
  const std::size_t m = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    Rational inv_pivot = Rational(1) / rows[rank][col];
    for (std::size_t j = col; j < m; ++j) rows[rank][j] *= inv_pivot;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      Rational f = rows[r][col];
      for (std::size_t j = col; j < m; ++j)
        rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
}

}  // namespace detail

/// Canonical basis of the span of the given vectors.
inline Subspace rref(int n, std::vector<CoordVector> vectors) {
  check_ambient(n);
  for (const auto& v : vectors) detail::check_vec(n, v);
  detail::rref_rows(vectors);
  return Subspace{n, std::move(vectors)};
}

inline Subspace zero_subspace(int n) {
  check_ambient(n);
  return Subspace{n, {}};
}

inline Subspace full_subspace(int n) {
  check_ambient(n);
  std::vector<CoordVector> rows;
  for (int i = 0; i < coord_dim(n); ++i) {
    CoordVector e(coord_dim(n), Rational(0));
    e[i] = Rational(1);
    rows.push_back(std::move(e));
  }
  return Subspace{n, std::move(rows)};
}

/// Residual of v after eliminating all pivot coordinates of S.
inline CoordVector reduce_against(const Subspace& S, CoordVector v) {
  detail::check_vec(S.ambient_n, v);
  std::vector<int> piv = S.pivots();
  for (std::size_t r = 0; r < S.basis.size(); ++r) {
    const Rational& c = v[piv[r]];
    if (c.is_zero()) continue;
    Rational f = c;
    const CoordVector& row = S.basis[r];
    for (std::size_t j = static_cast<std::size_t>(piv[r]); j < v.size(); ++j)
      v[j] -= f * row[j];
  }
  return v;
}

/// Exact membership: true iff v lies in the span of S.
inline bool member(const Subspace& S, const CoordVector& v) {
  return is_zero_vector(reduce_against(S, v));
}

/// Coefficients of v in S's basis, when v is a member.
inline std::optional<std::vector<Rational>> coordinates_in(const Subspace& S,
                                                           const CoordVector& v) {
  detail::check_vec(S.ambient_n, v);
  std::vector<int> piv = S.pivots();
  CoordVector w = v;
  std::vector<Rational> coeff(S.basis.size());
  for (std::size_t r = 0; r < S.basis.size(); ++r) {
    Rational c = w[piv[r]];
    coeff[r] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = static_cast<std::size_t>(piv[r]); j < w.size(); ++j)
      w[j] -= c * S.basis[r][j];
  }
  if (!is_zero_vector(w)) return std::nullopt;
  return coeff;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_n != b.ambient_n)
    throw DimensionMismatch("subspace sum: ambient mismatch");
  std::vector<CoordVector> rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return rref(a.ambient_n, std::move(rows));
}

inline bool subspace_leq(const Subspace& a, const Subspace& b) {
  if (a.ambient_n != b.ambient_n)
    throw DimensionMismatch("subspace comparison: ambient mismatch");
  for (const auto& row : a.basis)
    if (!member(b, row)) return false;
  return true;
}

/// Kernel of a linear map restricted to a subspace: the map is given by
/// its rows over the ambient coordinate space (any number of output
/// rows), and the result is {v in domain : map(v) = 0} in canonical form.
inline Subspace kernel_in(const std::vector<CoordVector>& map_rows,
                          const Subspace& domain) {
  const int m = domain.coord_count();
  for (const auto& row : map_rows)
    if (static_cast<int>(row.size()) != m)
      throw DimensionMismatch("kernel: map row length mismatch");
  const std::size_t d = domain.basis.size();
  if (d == 0) return zero_subspace(domain.ambient_n);

  // Composite matrix C[r][c] = <map row r, basis c>, then nullspace of C
  // in coefficient space.
  std::vector<CoordVector> C(map_rows.size(), CoordVector(d, Rational(0)));
  for (std::size_t r = 0; r < map_rows.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) {
      Rational acc(0);
      for (int k = 0; k < m; ++k) acc += map_rows[r][k] * domain.basis[c][k];
      C[r][c] = acc;
    }
  detail::rref_rows(C);

  std::vector<bool> is_pivot(d, false);
  std::vector<int> pivot_col;
  for (const auto& row : C) {
    std::size_t j = 0;
    while (j < d && row[j].is_zero()) ++j;
    is_pivot[j] = true;
    pivot_col.push_back(static_cast<int>(j));
  }
  std::vector<CoordVector> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> coeff(d, Rational(0));
    coeff[free] = Rational(1);
    for (std::size_t r = 0; r < C.size(); ++r)
      coeff[static_cast<std::size_t>(pivot_col[r])] = -C[r][free];
    CoordVector v(static_cast<std::size_t>(m), Rational(0));
    for (std::size_t c = 0; c < d; ++c) {
      if (coeff[c].is_zero()) continue;
      for (int k = 0; k < m; ++k) v[static_cast<std::size_t>(k)] += coeff[c] * domain.basis[c][static_cast<std::size_t>(k)];
    }
    out.push_back(std::move(v));
  }
  return rref(domain.ambient_n, std::move(out));
}

}  // namespace nilcover
