#pragma once

// Shared test utilities: a deterministic hand-rolled generator (stable
// across platforms, unlike std distributions) and small independent
// oracles implemented over boost rationals so they share no code path
// with the library arithmetic under test.

#include <cstdint>
#include <vector>

#include "nilcover/linalg.hpp"
#include "nilcover/rational.hpp"
#include "nilcover/unitri.hpp"

namespace testsupport {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() %
               static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline nilcover::Rational random_rational(Rng& rng, std::int64_t num_bound = 10,
                                          std::int64_t den_bound = 10) {
  return nilcover::Rational(rng.range(-num_bound, num_bound),
                            rng.range(1, den_bound));
}

inline nilcover::UniTri random_unitri(Rng& rng, int n,
                                      std::int64_t num_bound = 10,
                                      std::int64_t den_bound = 10) {
  nilcover::UpperCoords u(static_cast<std::size_t>(nilcover::coord_dim(n)));
  for (auto& x : u) x = random_rational(rng, num_bound, den_bound);
  return nilcover::UniTri::from_upper(n, std::move(u));
}

inline nilcover::UniTri random_int_unitri(Rng& rng, int n, std::int64_t bound) {
  nilcover::UpperCoords u(static_cast<std::size_t>(nilcover::coord_dim(n)));
  for (auto& x : u) x = nilcover::Rational(rng.range(-bound, bound));
  return nilcover::UniTri::from_upper(n, std::move(u));
}

inline nilcover::CoordVector random_coord_vector(Rng& rng, int n,
                                                 std::int64_t num_bound = 5,
                                                 std::int64_t den_bound = 3) {
  nilcover::CoordVector v(static_cast<std::size_t>(nilcover::coord_dim(n)));
  for (auto& x : v) x = random_rational(rng, num_bound, den_bound);
  return v;
}

// ---- independent full-matrix oracle over boost rationals ----

using OMat = std::vector<std::vector<nilcover::BigRat>>;

inline OMat to_oracle(const nilcover::UniTri& g) {
  const int n = g.n();
  OMat m(static_cast<std::size_t>(n),
         std::vector<nilcover::BigRat>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.entry(i, j).to_big();
  return m;
}

inline OMat oracle_mul(const OMat& a, const OMat& b) {
  const std::size_t n = a.size();
  OMat c(n, std::vector<nilcover::BigRat>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      nilcover::BigRat acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  return c;
}

/// Gauss-Jordan inverse; exact, throws on singular input.
inline OMat oracle_inv(OMat a) {
  const std::size_t n = a.size();
  OMat inv(n, std::vector<nilcover::BigRat>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("oracle_inv: singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    nilcover::BigRat d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      nilcover::BigRat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline bool oracle_equals(const OMat& m, const nilcover::UniTri& g) {
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != g.entry(i, j).to_big())
        return false;
  return true;
}

/// Solves x * rows = target exactly (row-vector convention) and reports
/// whether the system is consistent. Independent of the library RREF.
inline bool oracle_solvable(const std::vector<nilcover::CoordVector>& rows,
                            const nilcover::CoordVector& target) {
  if (rows.empty()) {
    for (const auto& t : target)
      if (!t.is_zero()) return false;
    return true;
  }
  const std::size_t m = target.size();
  const std::size_t k = rows.size();
  // Augmented system over columns: for each coordinate c, sum_i x_i rows[i][c] = target[c].
  std::vector<std::vector<nilcover::BigRat>> aug(
      m, std::vector<nilcover::BigRat>(k + 1, 0));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < k; ++i) aug[c][i] = rows[i][c].to_big();
    aug[c][k] = target[c].to_big();
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && aug[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[piv], aug[rank]);
    nilcover::BigRat d = aug[rank][col];
    for (std::size_t j = col; j <= k; ++j) aug[rank][j] /= d;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      nilcover::BigRat f = aug[r][col];
      for (std::size_t j = col; j <= k; ++j) aug[r][j] -= f * aug[rank][j];
    }
    ++rank;
  }
  for (std::size_t r = 0; r < m; ++r) {
    bool all_zero = true;
    for (std::size_t j = 0; j < k; ++j)
      if (aug[r][j] != 0) {
        all_zero = false;
        break;
      }
    if (all_zero && aug[r][k] != 0) return false;
  }
  return true;
}

}  // namespace testsupport
