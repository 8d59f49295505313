#pragma once

// Instance generators for the test corpus: coordinate boxes in U_3 and
// U_n, central intervals, and word-metric balls. Coordinate boxes are
// not inverse-closed (in U_3 the inverse maps (a,b,c) to (-a,-b,ab-c)),
// so every generator returns the symmetrized set S union S^-1.

#include <cstdint>
#include <string>
#include <vector>

#include "nilcover/errors.hpp"
#include "nilcover/symset.hpp"
#include "nilcover/unitri.hpp"

namespace nilcover {

struct InstanceSpec {
  std::string kind;  // heisenberg_box | unitri_box | word_ball | central_interval | custom_file
  std::vector<long long> params;
  int n = 3;
  std::uint64_t seed = 0;  // reserved for randomized kinds
};

namespace detail {

inline void check_side(long long v) {
  if (v < 0) throw UsageError("generator: side lengths must be >= 0");
}

inline SymSet symmetrize(int n, std::vector<UniTri> elems) {
  std::size_t count = elems.size();
  for (std::size_t i = 0; i < count; ++i) elems.push_back(inv(elems[i]));
  return SymSet::from_elements(n, std::move(elems));
}

}  // namespace detail

/// Integer-entry box in U_n over the graded coordinates, symmetrized.
inline SymSet unitri_box(int n, const std::vector<long long>& sides) {
  check_ambient(n);
  if (static_cast<int>(sides.size()) != coord_dim(n))
    throw UsageError("unitri_box: expected " + std::to_string(coord_dim(n)) +
                     " side lengths, got " + std::to_string(sides.size()));
  for (long long s : sides) detail::check_side(s);
  std::vector<UniTri> elems;
  UpperCoords cur(static_cast<std::size_t>(coord_dim(n)), Rational(0));
  // Odometer over the box.
  std::vector<long long> val(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) val[i] = -sides[i];
  for (;;) {
    for (std::size_t i = 0; i < sides.size(); ++i) cur[i] = Rational(val[i]);
    elems.push_back(UniTri::from_upper(n, cur));
    std::size_t pos = 0;
    while (pos < sides.size() && val[pos] == sides[pos]) {
      val[pos] = -sides[pos];
      ++pos;
    }
    if (pos == sides.size()) break;
    ++val[pos];
  }
  return detail::symmetrize(n, std::move(elems));
}

/// Box in the Heisenberg group U_3: |(1,2)| <= L1, |(2,3)| <= L2,
/// |(1,3)| <= L3, symmetrized.
inline SymSet heisenberg_box(long long L1, long long L2, long long L3) {
  return unitri_box(3, {L1, L2, L3});
}

/// {z^c : |c| <= L} for the central generator z = I + E_{1,n}.
inline SymSet central_interval(int n, long long L) {
  check_ambient(n);
  detail::check_side(L);
  std::vector<UniTri> elems;
  for (long long c = -L; c <= L; ++c)
    elems.push_back(UniTri::elementary(n, 0, n - 1, Rational(c)));
  return SymSet::from_elements(n, std::move(elems));
}

/// Ball of radius r in the word metric of the elementary generators
/// {I +- E_{i,i+1}}, by breadth-first search. Symmetric, contains id.
inline SymSet word_ball(int n, long long r, const SetLimits& limits = {}) {
  check_ambient(n);
  detail::check_side(r);
  std::vector<UniTri> gens;
  for (int i = 0; i + 1 < n; ++i) {
    gens.push_back(UniTri::elementary(n, i, i + 1, Rational(1)));
    gens.push_back(UniTri::elementary(n, i, i + 1, Rational(-1)));
  }
  detail::KeyedAccum<UniTri> seen;
  std::string key;
  UniTri id = UniTri::identity(n);
  key.clear();
  append_canonical_key(id, key);
  seen.insert(key, id);
  std::vector<UniTri> frontier{id};
  for (long long depth = 0; depth < r; ++depth) {
    std::vector<UniTri> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        UniTri t = mul(g, s);
        key.clear();
        append_canonical_key(t, key);
        bool inserted = false;
        seen.insert(key, t, &inserted);
        if (inserted) {
          next.push_back(std::move(t));
          if (seen.size() > limits.max_elements)
            throw CapExceeded("word_ball: exceeds element cap", "elements",
                              seen.size(), limits.max_elements, {});
        }
      }
    frontier = std::move(next);
  }
  std::vector<UniTri> elems;
  elems.reserve(seen.size());
  for (std::size_t i = 0; i < seen.size(); ++i) elems.push_back(seen.payload(i));
  return SymSet::from_distinct(n, std::move(elems));
}

/// Builds a corpus instance from its spec. custom_file is resolved by
/// the CLI layer, which owns file IO.
inline SymSet build_instance(const InstanceSpec& spec, const SetLimits& limits = {}) {
  auto want = [&](std::size_t k) {
    if (spec.params.size() != k)
      throw UsageError("instance '" + spec.kind + "': expected " +
                       std::to_string(k) + " parameters");
  };
  if (spec.kind == "heisenberg_box") {
    want(3);
    return heisenberg_box(spec.params[0], spec.params[1], spec.params[2]);
  }
  if (spec.kind == "unitri_box") {
    return unitri_box(spec.n, spec.params);
  }
  if (spec.kind == "word_ball") {
    want(1);
    return word_ball(spec.n, spec.params[0], limits);
  }
  if (spec.kind == "central_interval") {
    want(1);
    return central_interval(spec.n, spec.params[0]);
  }
  throw UsageError("unknown instance kind '" + spec.kind + "'");
}

}  // namespace nilcover
