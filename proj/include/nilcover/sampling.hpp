#pragma once

// Deterministic sampling helpers (splitmix64). Used by the self test and
// the acceptance suite; fixed constants keep streams identical across
// platforms and standard library versions.

#include <cstdint>
#include <vector>

#include "nilcover/subalgebra.hpp"
#include "nilcover/symset.hpp"
#include "nilcover/unitri.hpp"

namespace nilcover {

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline Rational sample_rational(SplitMix& rng, std::int64_t num_bound,
                                std::int64_t den_bound) {
  return Rational(rng.range(-num_bound, num_bound), rng.range(1, den_bound));
}

inline UniTri sample_unitri(SplitMix& rng, int n, std::int64_t num_bound = 10,
                            std::int64_t den_bound = 10) {
  UpperCoords u(static_cast<std::size_t>(coord_dim(n)));
  for (auto& x : u) x = sample_rational(rng, num_bound, den_bound);
  return UniTri::from_upper(n, std::move(u));
}

inline UniTri sample_int_unitri(SplitMix& rng, int n, std::int64_t bound) {
  UpperCoords u(static_cast<std::size_t>(coord_dim(n)));
  for (auto& x : u) x = Rational(rng.range(-bound, bound));
  return UniTri::from_upper(n, std::move(u));
}

inline CoordVector sample_coords(SplitMix& rng, int n, std::int64_t num_bound,
                                 std::int64_t den_bound) {
  CoordVector v(static_cast<std::size_t>(coord_dim(n)));
  for (auto& x : v) x = sample_rational(rng, num_bound, den_bound);
  return v;
}

/// Random symmetric subset of U_n(Z): draws raw elements from an integer
/// box and closes under inversion, with the identity included.
inline SymSet sample_symmetric_set(SplitMix& rng, int n, int raw_count,
                                   std::int64_t bound) {
  std::vector<UniTri> elems{UniTri::identity(n)};
  for (int i = 0; i < raw_count; ++i)
    elems.push_back(sample_int_unitri(rng, n, bound));
  std::size_t cnt = elems.size();
  for (std::size_t i = 1; i < cnt; ++i) elems.push_back(inv(elems[i]));
  return SymSet::from_elements(n, std::move(elems));
}

/// Random bracket-closed subspace: the closure of a few random vectors.
inline Subalgebra sample_subalgebra(SplitMix& rng, int n, int gens,
                                    std::int64_t num_bound = 2,
                                    std::int64_t den_bound = 2) {
  std::vector<NilVec> v;
  for (int i = 0; i < gens; ++i)
    v.push_back(NilVec{n, sample_coords(rng, n, num_bound, den_bound)});
  return lie_closure(n, v);
}

}  // namespace nilcover
