#pragma once

// Closed connected subgroups of U_n(R), represented by bracket-closed
// rational subspaces of the Lie algebra in canonical RREF form. exp
// restricted to such a subspace is a bijection onto the corresponding
// subgroup, which is the standing identification used throughout.

#include <string>
#include <utility>
#include <vector>

#include "nilcover/errors.hpp"
#include "nilcover/linalg.hpp"
#include "nilcover/unitri.hpp"

namespace nilcover {

/// Raised when the coset canonicalization sweep fails to converge within
/// its bound; callers fall back to pairwise coset grouping.
struct CanonSweepLimit : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct Subalgebra {
  Subspace space;

  int n() const { return space.ambient_n; }
  int dim() const { return space.dim(); }

  friend bool operator==(const Subalgebra& a, const Subalgebra& b) {
    return a.space == b.space;
  }
  friend bool operator!=(const Subalgebra& a, const Subalgebra& b) {
    return !(a == b);
  }
};

inline bool bracket_closed(const Subspace& s) {
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j) {
      NilVec b = nil_bracket(NilVec{s.ambient_n, s.basis[i]},
                             NilVec{s.ambient_n, s.basis[j]});
      if (!member(s, b.coords)) return false;
    }
  return true;
}

inline Subalgebra make_subalgebra(Subspace s, bool verify = true) {
  if (verify && !bracket_closed(s))
    throw InvariantViolation("subspace is not bracket-closed");
  return Subalgebra{std::move(s)};
}

inline Subalgebra zero_subalgebra(int n) { return Subalgebra{zero_subspace(n)}; }
inline Subalgebra full_subalgebra(int n) { return Subalgebra{full_subspace(n)}; }

/// The current pair (G_k, H_k): h must be an ideal in g.
struct QuotientCtx {
  Subalgebra g;
  Subalgebra h;
};

inline bool is_ideal(const QuotientCtx& ctx) {
  if (!subspace_leq(ctx.h.space, ctx.g.space))
    throw DimensionMismatch("is_ideal: h is not contained in g");
  for (const auto& b : ctx.g.space.basis)
    for (const auto& c : ctx.h.space.basis) {
      NilVec br = nil_bracket(NilVec{ctx.g.n(), b}, NilVec{ctx.h.n(), c});
      if (!member(ctx.h.space, br.coords)) return false;
    }
  return true;
}

inline void validate_ctx(const QuotientCtx& ctx) {
  if (ctx.g.n() != ctx.h.n())
    throw DimensionMismatch("quotient context: ambient mismatch");
  if (!subspace_leq(ctx.h.space, ctx.g.space))
    throw InvariantViolation("quotient context: h not contained in g");
  if (!is_ideal(ctx))
    throw InvariantViolation("quotient context: h is not an ideal in g");
}

/// Smallest bracket-closed subspace containing the generators, by span
/// saturation: adjoin brackets of basis pairs until the dimension stops
/// growing. Terminates within coord_dim(n) rounds.
inline Subalgebra lie_closure(int n, const std::vector<NilVec>& gens) {
  check_ambient(n);
  std::vector<CoordVector> rows;
  for (const auto& g : gens) {
    if (g.n != n) throw DimensionMismatch("lie_closure: ambient mismatch");
    rows.push_back(g.coords);
  }
  Subspace span = rref(n, std::move(rows));
  for (;;) {
    std::vector<CoordVector> add;
    for (std::size_t i = 0; i < span.basis.size(); ++i)
      for (std::size_t j = i + 1; j < span.basis.size(); ++j) {
        NilVec b = nil_bracket(NilVec{n, span.basis[i]}, NilVec{n, span.basis[j]});
        if (!member(span, b.coords)) add.push_back(std::move(b.coords));
      }
    if (add.empty()) break;
    std::vector<CoordVector> next = span.basis;
    next.insert(next.end(), add.begin(), add.end());
    span = rref(n, std::move(next));
  }
  return Subalgebra{std::move(span)};
}

/// True iff g lies in the closed connected subgroup exp(S).
inline bool contains_elt(const Subalgebra& S, const UniTri& g) {
  if (S.n() != g.n()) throw DimensionMismatch("contains_elt: size mismatch");
  return member(S.space, log_of(g).coords);
}

/// Same left coset of exp(h): x^-1 y in exp(h).
inline bool coset_equal(const Subalgebra& h, const UniTri& x, const UniTri& y) {
  return contains_elt(h, mul(inv(x), y));
}

/// The new H_{k+1} = h + Q log(gamma). Valid because h is an ideal of g
/// and log(gamma) lies in g; bracket closure and the dimension increment
/// are re-verified rather than assumed.
inline Subalgebra extend_by(const QuotientCtx& ctx, const NilVec& log_gamma) {
  if (log_gamma.n != ctx.g.n())
    throw DimensionMismatch("extend_by: ambient mismatch");
  if (!member(ctx.g.space, log_gamma.coords))
    throw InvariantViolation("extend_by: log(gamma) lies outside g");
  if (member(ctx.h.space, log_gamma.coords))
    throw InvariantViolation("extend_by: log(gamma) already lies in h");
  std::vector<CoordVector> rows = ctx.h.space.basis;
  rows.push_back(log_gamma.coords);
  Subspace ext = rref(ctx.g.n(), std::move(rows));
  if (ext.dim() != ctx.h.dim() + 1)
    throw InvariantViolation("extend_by: dimension did not increase by one");
  if (!bracket_closed(ext))
    throw InvariantViolation("extend_by: extension is not bracket-closed");
  return Subalgebra{std::move(ext)};
}

/// The new G_{k+1}: {X in g : [X, log gamma] in h}, i.e. the preimage of
/// the centralizer of gamma in the quotient g/h. Bracket-closed between
/// h and g; verified.
inline Subalgebra centralizer_preimage(const QuotientCtx& ctx,
                                       const NilVec& log_gamma) {
  if (log_gamma.n != ctx.g.n())
    throw DimensionMismatch("centralizer_preimage: ambient mismatch");
  if (!member(ctx.g.space, log_gamma.coords))
    throw InvariantViolation("centralizer_preimage: log(gamma) outside g");
  const int n = ctx.g.n();
  const int m = coord_dim(n);
  // Map v -> (reduction of [v, log gamma] modulo h), as rows.
  std::vector<CoordVector> cols;
  cols.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    NilVec br = nil_bracket(NilVec::basis(n, k), log_gamma);
    cols.push_back(reduce_against(ctx.h.space, std::move(br.coords)));
  }
  std::vector<CoordVector> rows(static_cast<std::size_t>(m),
                                CoordVector(static_cast<std::size_t>(m)));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < m; ++k)
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
          cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
  Subspace ker = kernel_in(rows, ctx.g.space);
  Subalgebra out{std::move(ker)};
  if (!subspace_leq(ctx.h.space, out.space))
    throw InvariantViolation("centralizer_preimage: result does not contain h");
  if (!member(out.space, log_gamma.coords))
    throw InvariantViolation("centralizer_preimage: result misses log(gamma)");
  if (!bracket_closed(out.space))
    throw InvariantViolation("centralizer_preimage: result not bracket-closed");
  return out;
}

/// Lower central series of the quotient g/h, returned as pullbacks:
/// c_1 = g, c_{i+1} = [g, c_i] + h, decreasing and stabilizing at h.
inline std::vector<Subalgebra> lower_central_series(const QuotientCtx& ctx) {
  validate_ctx(ctx);
  const int n = ctx.g.n();
  std::vector<Subalgebra> series{ctx.g};
  for (;;) {
    const Subspace& last = series.back().space;
    std::vector<CoordVector> rows = ctx.h.space.basis;
    for (const auto& b : ctx.g.space.basis)
      for (const auto& c : last.basis)
        rows.push_back(nil_bracket(NilVec{n, b}, NilVec{n, c}).coords);
    Subspace next = rref(n, std::move(rows));
    if (next == last) break;
    if (!subspace_leq(next, last))
      throw InvariantViolation("lower central series failed to decrease");
    series.push_back(Subalgebra{std::move(next)});
    if (static_cast<int>(series.size()) > coord_dim(n) + 1)
      throw InvariantViolation("lower central series failed to stabilize");
  }
  if (series.back().space != ctx.h.space)
    throw InvariantViolation("lower central series did not stabilize at h");
  return series;
}

/// Canonical representative of the coset g exp(h). One ascending sweep
/// over h's pivots zeroes all pivot coordinates of log(g), because
/// bracket corrections only touch strictly deeper graded coordinates;
/// the sweep is re-checked and repeated up to n-1 times regardless.
inline UniTri canon_coset(const Subalgebra& h, const UniTri& g) {
  if (h.n() != g.n()) throw DimensionMismatch("canon_coset: size mismatch");
  if (h.dim() == 0) return g;
  const std::vector<int> piv = h.space.pivots();
  UniTri cur = g;
  for (int attempt = 0; attempt < g.n() - 1; ++attempt) {
    for (std::size_t j = 0; j < piv.size(); ++j) {
      Rational c = log_of(cur).coords[static_cast<std::size_t>(piv[j])];
      if (c.is_zero()) continue;
      NilVec step{h.n(), vec_scale(-c, h.space.basis[j])};
      cur = mul(cur, exp_of(step));
    }
    bool clean = true;
    NilVec l = log_of(cur);
    for (int p : piv)
      if (!l.coords[static_cast<std::size_t>(p)].is_zero()) {
        clean = false;
        break;
      }
    if (clean) return cur;
  }
  throw CanonSweepLimit("canon_coset: sweep did not converge");
}

}  // namespace nilcover
