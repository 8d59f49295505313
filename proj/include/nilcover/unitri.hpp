#pragma once

// Arithmetic in the group U_n of upper unitriangular matrices over the
// rationals and in its Lie algebra of strictly upper triangular matrices.
// Both log and exp are finite series here (N^n = 0), so they are exact
// and mutually inverse.

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "nilcover/errors.hpp"
#include "nilcover/linalg.hpp"
#include "nilcover/rational.hpp"

namespace nilcover {

namespace detail {

// For each graded coordinate (i,j), the index pairs (i,k),(k,j) with
// i < k < j contributing to a product entry.
struct MulTable {
  struct Term {
    int left, right;
  };
  std::vector<boost::container::small_vector<Term, 6>> terms;

  static const MulTable& get(int n) {
    check_ambient(n);
    static const std::array<MulTable, kMaxAmbient + 1> tables = [] {
      std::array<MulTable, kMaxAmbient + 1> t;
      for (int n = kMinAmbient; n <= kMaxAmbient; ++n) {
        const GradedOrder& ord = GradedOrder::get(n);
        t[n].terms.resize(static_cast<std::size_t>(ord.dim()));
        for (int idx = 0; idx < ord.dim(); ++idx) {
          auto [i, j] = ord.pair(idx);
          for (int k = i + 1; k < j; ++k)
            t[n].terms[static_cast<std::size_t>(idx)].push_back(
                {ord.index(i, k), ord.index(k, j)});
        }
      }
      return t;
    }();
    return tables[static_cast<std::size_t>(n)];
  }
};

}  // namespace detail

using UpperCoords = boost::container::small_vector<Rational, 6>;

/// Strictly-upper-triangular matrix product in graded coordinates.
inline UpperCoords nil_mul(int n, const UpperCoords& x, const UpperCoords& y) {
  const auto& table = detail::MulTable::get(n).terms;
  UpperCoords r(x.size());
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    Rational acc(0);
    for (const auto& t : table[idx])
      acc += x[static_cast<std::size_t>(t.left)] * y[static_cast<std::size_t>(t.right)];
    r[idx] = std::move(acc);
  }
  return r;
}

/// A Lie algebra element: strictly upper triangular rational matrix,
/// identified with its graded coordinate vector.
struct NilVec {
  int n = 0;
  CoordVector coords;

  static NilVec zero(int n) {
    check_ambient(n);
    return NilVec{n, CoordVector(static_cast<std::size_t>(coord_dim(n)), Rational(0))};
  }
  static NilVec basis(int n, int idx) {
    NilVec v = zero(n);
    v.coords[static_cast<std::size_t>(idx)] = Rational(1);
    return v;
  }

  friend bool operator==(const NilVec& a, const NilVec& b) {
    return a.n == b.n && a.coords == b.coords;
  }
};

inline NilVec nil_bracket(const NilVec& x, const NilVec& y) {
  if (x.n != y.n) throw DimensionMismatch("bracket: size mismatch");
  UpperCoords a(x.coords.begin(), x.coords.end());
  UpperCoords b(y.coords.begin(), y.coords.end());
  UpperCoords ab = nil_mul(x.n, a, b);
  UpperCoords ba = nil_mul(x.n, b, a);
  NilVec r = NilVec::zero(x.n);
  for (std::size_t i = 0; i < ab.size(); ++i) r.coords[i] = ab[i] - ba[i];
  return r;
}

/// Bracket as a linear map on coordinate rows: row k of the result is
/// the coordinate vector of [x, e_k].
inline std::vector<CoordVector> ad_matrix(const NilVec& x) {
  const int m = coord_dim(x.n);
  std::vector<CoordVector> rows;
  rows.reserve(static_cast<std::size_t>(m));
  // Build columns [x, e_k] and transpose into map rows.
  std::vector<CoordVector> cols;
  for (int k = 0; k < m; ++k)
    cols.push_back(nil_bracket(x, NilVec::basis(x.n, k)).coords);
  for (int r = 0; r < m; ++r) {
    CoordVector row(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) row[static_cast<std::size_t>(k)] = cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// A group element: upper unitriangular n x n matrix with exact rational
/// entries, stored by its strictly upper part in graded order. Immutable
/// after construction.
class UniTri {
 public:
  UniTri() = default;

  static UniTri identity(int n) {
    check_ambient(n);
    UniTri g;
    g.n_ = n;
    g.upper_.assign(static_cast<std::size_t>(coord_dim(n)), Rational(0));
    return g;
  }

  static UniTri from_upper(int n, UpperCoords upper) {
    check_ambient(n);
    if (static_cast<int>(upper.size()) != coord_dim(n))
      throw DimensionMismatch("UniTri: wrong coordinate count");
    UniTri g;
    g.n_ = n;
    g.upper_ = std::move(upper);
    return g;
  }

  /// Elementary matrix I + v * E_{i,j} (0-based indices, i < j).
  static UniTri elementary(int n, int i, int j, const Rational& v) {
    UniTri g = identity(n);
    g.upper_[static_cast<std::size_t>(GradedOrder::get(n).index(i, j))] = v;
    return g;
  }

  int n() const { return n_; }
  const UpperCoords& upper() const { return upper_; }

  /// Full matrix entry accessor; diagonal is 1, below-diagonal is 0.
  Rational entry(int i, int j) const {
    if (i == j) return Rational(1);
    if (i > j) return Rational(0);
    return upper_[static_cast<std::size_t>(GradedOrder::get(n_).index(i, j))];
  }

  bool is_identity() const {
    for (const auto& x : upper_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const UniTri& a, const UniTri& b) {
    return a.n_ == b.n_ && a.upper_ == b.upper_;
  }
  friend bool operator!=(const UniTri& a, const UniTri& b) { return !(a == b); }

 private:
  int n_ = 0;
  UpperCoords upper_;
};

inline UniTri mul(const UniTri& g, const UniTri& h) {
  if (g.n() != h.n()) throw DimensionMismatch("mul: size mismatch");
  const int n = g.n();
  const auto& table = detail::MulTable::get(n).terms;
  const UpperCoords& a = g.upper();
  const UpperCoords& b = h.upper();
  UpperCoords r(a.size());
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    Rational acc = a[idx] + b[idx];
    for (const auto& t : table[idx])
      acc += a[static_cast<std::size_t>(t.left)] * b[static_cast<std::size_t>(t.right)];
    r[idx] = std::move(acc);
  }
  return UniTri::from_upper(n, std::move(r));
}

inline UniTri inv(const UniTri& g) {
  // (I + N)^-1 = sum_{k=0..n-1} (-N)^k, a finite series.
  const int n = g.n();
  UpperCoords negN(g.upper().size());
  for (std::size_t i = 0; i < negN.size(); ++i) negN[i] = -g.upper()[i];
  UpperCoords acc = negN;
  UpperCoords pw = negN;
  for (int k = 2; k < n; ++k) {
    pw = nil_mul(n, pw, negN);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pw[i];
  }
  return UniTri::from_upper(n, std::move(acc));
}

/// g^-1 h^-1 g h.
inline UniTri comm(const UniTri& g, const UniTri& h) {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

inline UniTri u_pow(const UniTri& g, long long e) {
  UniTri base = e < 0 ? inv(g) : g;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  UniTri acc = UniTri::identity(g.n());
  while (k != 0) {
    if (k & 1ull) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

/// log(I + N) = sum_{k>=1} (-1)^{k+1} N^k / k; exact, exp(log g) = g.
inline NilVec log_of(const UniTri& g) {
  const int n = g.n();
  const UpperCoords& N = g.upper();
  UpperCoords acc = N;
  UpperCoords pw = N;
  for (int k = 2; k < n; ++k) {
    pw = nil_mul(n, pw, N);
    Rational c = Rational(k % 2 == 0 ? -1 : 1, k);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * pw[i];
  }
  NilVec v = NilVec::zero(n);
  for (std::size_t i = 0; i < acc.size(); ++i) v.coords[i] = std::move(acc[i]);
  return v;
}

/// exp(X) = sum_{k>=0} X^k / k!; exact, log(exp X) = X.
inline UniTri exp_of(const NilVec& x) {
  const int n = x.n;
  UpperCoords X(x.coords.begin(), x.coords.end());
  UpperCoords acc = X;
  UpperCoords pw = X;
  Integer fact = 1;
  for (int k = 2; k < n; ++k) {
    pw = nil_mul(n, pw, X);
    fact *= k;
    Rational c(Integer(1), fact);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * pw[i];
  }
  return UniTri::from_upper(n, std::move(acc));
}

/// Canonical byte key: injective on elements of a fixed n, equal
/// matrices give equal keys regardless of construction history.
inline void append_canonical_key(const UniTri& g, std::string& out) {
  out.push_back(static_cast<char>(g.n()));
  for (const auto& x : g.upper()) x.append_key_bytes(out);
}

inline std::string canonical_key(const UniTri& g) {
  std::string s;
  s.reserve(2 + 4 * g.upper().size());
  append_canonical_key(g, s);
  return s;
}

}  // namespace nilcover
