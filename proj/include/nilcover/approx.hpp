#pragma once

// Doubling statistics and certification of the K-approximate-subgroup
// property: a certificate is a symmetric X inside A^3 with A.A inside
// X.A and |X| <= K. The certifier is a greedy cover (canonical scan
// order, so certificates are reproducible); it makes no minimality
// claim, K is whatever the greedy achieves. The subgroup-and-quotient
// counting rules are exposed as runnable clause checks.

#include <string>
#include <vector>

#include "nilcover/rational.hpp"
#include "nilcover/subalgebra.hpp"
#include "nilcover/symset.hpp"

namespace nilcover {

struct ApproxCert {
  Rational K;
  SymSet X;
};

struct ClauseReport {
  std::string clause;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

inline bool all_pass(const std::vector<ClauseReport>& reports) {
  for (const auto& r : reports)
    if (!r.skipped && !r.pass) return false;
  return true;
}

/// Exact |A^2| / |A|.
inline Rational doubling(const SymSet& A, const SetLimits& limits = {}) {
  if (A.empty()) throw Error("doubling: empty set");
  if (!A.is_symmetric()) throw InvariantViolation("doubling: set not symmetric");
  SymSet sq = power(A, 2, limits);
  return Rational(static_cast<std::int64_t>(sq.size()),
                  static_cast<std::int64_t>(A.size()));
}

/// Greedy certificate: scan A^2 in canonical order, adding each still
/// uncovered t to T and marking the translate tA covered; then
/// X = T union T^-1. Every point is covered by its own translate since
/// id lies in A, so the scan always completes with A^2 inside T.A.
inline ApproxCert certify(const SymSet& A, const SetLimits& limits = {}) {
  if (!A.is_symmetric() || !A.has_identity())
    throw InvariantViolation("certify: set must be symmetric with identity");
  SymSet A2 = power(A, 2, limits);
  std::vector<bool> covered(A2.size(), false);
  std::vector<UniTri> chosen;
  std::string key;
  for (std::size_t i = 0; i < A2.size(); ++i) {
    if (covered[i]) continue;
    const UniTri& t = A2[i];
    chosen.push_back(t);
    for (const auto& a : A.elements()) {
      UniTri ta = mul(t, a);
      key.clear();
      append_canonical_key(ta, key);
      // Translates may leave A^2; only the part inside matters.
      // Mark by position lookup.
      std::size_t lo = 0, hi = A2.size();
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (A2.key(mid) < key)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (lo < A2.size() && A2.key(lo) == key) covered[lo] = true;
    }
  }
  std::size_t picked = chosen.size();
  for (std::size_t i = 0; i < picked; ++i) chosen.push_back(inv(chosen[i]));
  SymSet X = SymSet::from_elements(A.n(), std::move(chosen));
  return ApproxCert{Rational(static_cast<std::int64_t>(X.size())), std::move(X)};
}

/// Direct check of the three certificate clauses, exactly.
inline bool verify_cert(const SymSet& A, const ApproxCert& cert,
                        const SetLimits& limits = {}) {
  if (cert.X.n() != A.n()) return false;
  if (!cert.X.is_symmetric()) return false;
  if (Rational(static_cast<std::int64_t>(cert.X.size())) > cert.K) return false;
  SymSet A3 = power(A, 3, limits);
  for (const auto& x : cert.X.elements())
    if (!A3.contains(x)) return false;
  SymSet XA = product(cert.X, A, limits);
  SymSet A2 = power(A, 2, limits);
  for (const auto& g : A2.elements())
    if (!XA.contains(g)) return false;
  return true;
}

namespace detail {

inline std::string isize(std::size_t v) { return std::to_string(v); }

}  // namespace detail

/// Clause checks for a certified pair (A, cert) against a closed
/// connected subgroup H:
///   (i)  |A| <= |A^2 cap H| * |A H / H| <= |A^3|
///   (ii) |A^k cap H| <= K^{k-1} |A^2 cap H| for k = 1..kmax
///   (iii) the image of X under the quotient map certifies the image of
///         A at the same K (requires H normal in the full group; the
///         clause is reported as skipped otherwise).
inline std::vector<ClauseReport> check_calculus(const SymSet& A,
                                                const ApproxCert& cert,
                                                const Subalgebra& H, int kmax,
                                                const SetLimits& limits = {}) {
  if (A.n() != H.n()) throw DimensionMismatch("check_calculus: size mismatch");
  std::vector<ClauseReport> out;
  SymSet A2 = power(A, 2, limits);
  SymSet A3 = power(A, 3, limits);
  SymSet A2H = intersect_subgroup(A2, H);
  CosetSet AmodH = quotient_mod(A, H);

  std::size_t mid = A2H.size() * AmodH.size();
  out.push_back({"i-lower", detail::isize(A.size()), detail::isize(mid),
                 A.size() <= mid});
  out.push_back({"i-upper", detail::isize(mid), detail::isize(A3.size()),
                 mid <= A3.size()});

  SymSet Ak = A;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) Ak = product(Ak, A, limits);
    std::size_t lhs = intersect_subgroup(Ak, H).size();
    Rational rhs = rpow(cert.K, static_cast<unsigned>(k - 1)) *
                   Rational(static_cast<std::int64_t>(A2H.size()));
    out.push_back({"ii-k" + std::to_string(k), detail::isize(lhs), rhs.str(),
                   Rational(static_cast<std::int64_t>(lhs)) <= rhs});
  }

  ClauseReport quot;
  quot.clause = "iii-quotient-cert";
  if (!is_ideal(QuotientCtx{full_subalgebra(A.n()), H})) {
    quot.skipped = true;
    quot.note = "H is not normal in the full group; no quotient group";
  } else {
    CosetSet Xq = quotient_mod(cert.X, H);
    bool ok = cs_is_symmetric(Xq);
    ok = ok && Rational(static_cast<std::int64_t>(Xq.size())) <= cert.K;
    CosetSet Aq3 = cs_power(AmodH, 3, limits);
    for (std::size_t i = 0; ok && i < Xq.size(); ++i)
      ok = Aq3.contains_key(Xq.key(i));
    CosetProduct XqAq = cs_product(Xq, AmodH, limits);
    CosetProduct Aq2 = cs_product(AmodH, AmodH, limits);
    for (std::size_t i = 0; ok && i < Aq2.set.size(); ++i)
      ok = XqAq.set.contains_key(Aq2.set.key(i));
    quot.lhs = detail::isize(Xq.size());
    quot.rhs = cert.K.str();
    quot.pass = ok;
  }
  out.push_back(std::move(quot));
  return out;
}

}  // namespace nilcover
