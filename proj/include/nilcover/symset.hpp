#pragma once

// Finite symmetric subsets of U_n(Q) and their coset images: exact
// product sets, powers, subgroup intersections and quotients. Product
// enumeration is the hot path of the whole library; elements are
// deduplicated through a flat open-addressing index over canonical key
// bytes, the left factor is partitioned across threads, and results are
// canonicalized by sorting on key bytes so the outcome is byte-identical
// regardless of the parallel schedule.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "nilcover/errors.hpp"
#include "nilcover/subalgebra.hpp"
#include "nilcover/unitri.hpp"

namespace nilcover {

struct SetLimits {
  std::size_t max_elements = 10'000'000;     // cap on any one result set
  std::size_t max_pairs = 2'000'000'000;     // cap on products evaluated
  unsigned threads = 0;                      // 0 = hardware concurrency
};

namespace detail {

inline std::uint64_t fnv1a(const char* p, std::size_t len) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(p[i]);
    h *= 1099511628211ull;
  }
  return h;
}

/// Dedup accumulator: canonical key bytes in one arena, open-addressing
/// slot table, payload per distinct key.
template <class Payload>
class KeyedAccum {
 public:
  KeyedAccum() : slots_(1u << 10, kEmpty) {}

  std::size_t size() const { return spans_.size(); }

  std::string_view key(std::size_t i) const {
    return {arena_.data() + spans_[i].first, spans_[i].second};
  }
  const Payload& payload(std::size_t i) const { return payloads_[i]; }
  Payload& payload(std::size_t i) { return payloads_[i]; }

  /// Returns the index of the key; inserts the payload if new.
  /// `inserted` reports whether a new entry was created.
  std::size_t insert(std::string_view key, Payload payload, bool* inserted = nullptr) {
    std::uint64_t h = fnv1a(key.data(), key.size());
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = h & mask;
    while (slots_[pos] != kEmpty) {
      std::uint32_t idx = slots_[pos];
      if (hashes_[idx] == h && this->key(idx) == key) {
        if (inserted) *inserted = false;
        return idx;
      }
      pos = (pos + 1) & mask;
    }
    if ((spans_.size() + 1) * 10 >= slots_.size() * 7) {
      grow();
      return insert(key, std::move(payload), inserted);
    }
    std::uint32_t idx = static_cast<std::uint32_t>(spans_.size());
    slots_[pos] = idx;
    hashes_.push_back(h);
    spans_.emplace_back(static_cast<std::uint32_t>(arena_.size()),
                        static_cast<std::uint32_t>(key.size()));
    arena_.append(key.data(), key.size());
    payloads_.push_back(std::move(payload));
    if (inserted) *inserted = true;
    return idx;
  }

  bool contains(std::string_view key) const {
    std::uint64_t h = fnv1a(key.data(), key.size());
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = h & mask;
    while (slots_[pos] != kEmpty) {
      std::uint32_t idx = slots_[pos];
      if (hashes_[idx] == h && this->key(idx) == key) return true;
      pos = (pos + 1) & mask;
    }
    return false;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  void grow() {
    std::vector<std::uint32_t> ns(slots_.size() * 2, kEmpty);
    std::size_t mask = ns.size() - 1;
    for (std::uint32_t idx = 0; idx < spans_.size(); ++idx) {
      std::size_t pos = hashes_[idx] & mask;
      while (ns[pos] != kEmpty) pos = (pos + 1) & mask;
      ns[pos] = idx;
    }
    slots_.swap(ns);
  }

  std::string arena_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans_;
  std::vector<std::uint64_t> hashes_;
  std::vector<Payload> payloads_;
  std::vector<std::uint32_t> slots_;
};

/// Runs fn(chunk_index, begin, end) over [0, count) split into contiguous
/// chunks, one per worker. Exceptions are rethrown from the lowest chunk
/// index so failures are schedule-independent.
template <class Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned t = threads == 0 ? hw : threads;
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(count, 1)));
  if (t <= 1) {
    fn(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errs(t);
  std::vector<std::thread> pool;
  std::size_t per = (count + t - 1) / t;
  for (unsigned w = 0; w < t; ++w) {
    std::size_t b = std::min(count, w * per);
    std::size_t e = std::min(count, b + per);
    pool.emplace_back([&, w, b, e] {
      try {
        fn(w, b, e);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

/// A finite deduplicated subset of U_n(Q), stored in canonical key order.
class SymSet {
 public:
  SymSet() = default;

  static SymSet from_elements(int n, std::vector<UniTri> elems) {
    check_ambient(n);
    detail::KeyedAccum<std::uint32_t> acc;
    std::string key;
    std::vector<UniTri> kept;
    for (auto& g : elems) {
      if (g.n() != n) throw DimensionMismatch("SymSet: element size mismatch");
      key.clear();
      append_canonical_key(g, key);
      bool inserted = false;
      acc.insert(key, 0, &inserted);
      if (inserted) kept.push_back(std::move(g));
    }
    return from_distinct(n, std::move(kept));
  }

  int n() const { return n_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<UniTri>& elements() const { return elems_; }
  const UniTri& operator[](std::size_t i) const { return elems_[i]; }

  std::string_view key(std::size_t i) const {
    return {keys_.data() + key_off_[i], key_off_[i + 1] - key_off_[i]};
  }

  bool contains_key(std::string_view k) const {
    auto it = lower_bound_key(k);
    return it < size() && key(it) == k;
  }
  bool contains(const UniTri& g) const { return contains_key(canonical_key(g)); }

  bool has_identity() const {
    return !elems_.empty() && contains(UniTri::identity(n_));
  }

  /// Recomputed from the elements, never trusted from construction.
  bool is_symmetric() const {
    int s = symmetric_.load(std::memory_order_relaxed);
    if (s < 0) {
      bool ok = has_identity();
      if (ok)
        for (const auto& g : elems_)
          if (!contains(inv(g))) {
            ok = false;
            break;
          }
      s = ok ? 1 : 0;
      symmetric_.store(s, std::memory_order_relaxed);
    }
    return s == 1;
  }

  SymSet(const SymSet& o)
      : n_(o.n_), elems_(o.elems_), keys_(o.keys_), key_off_(o.key_off_),
        symmetric_(o.symmetric_.load(std::memory_order_relaxed)) {}
  SymSet& operator=(const SymSet& o) {
    if (this != &o) {
      n_ = o.n_;
      elems_ = o.elems_;
      keys_ = o.keys_;
      key_off_ = o.key_off_;
      symmetric_.store(o.symmetric_.load(std::memory_order_relaxed));
    }
    return *this;
  }
  SymSet(SymSet&& o) noexcept
      : n_(o.n_), elems_(std::move(o.elems_)), keys_(std::move(o.keys_)),
        key_off_(std::move(o.key_off_)),
        symmetric_(o.symmetric_.load(std::memory_order_relaxed)) {}
  SymSet& operator=(SymSet&& o) noexcept {
    n_ = o.n_;
    elems_ = std::move(o.elems_);
    keys_ = std::move(o.keys_);
    key_off_ = std::move(o.key_off_);
    symmetric_.store(o.symmetric_.load(std::memory_order_relaxed));
    return *this;
  }

  /// Assembles a set from elements known to be distinct; sorts by key.
  static SymSet from_distinct(int n, std::vector<UniTri> elems) {
    SymSet s;
    s.n_ = n;
    std::vector<std::string> keys(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      keys[i] = canonical_key(elems[i]);
    std::vector<std::uint32_t> order(elems.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    s.elems_.reserve(elems.size());
    s.key_off_.assign(1, 0);
    s.key_off_.reserve(elems.size() + 1);
    for (std::uint32_t idx : order) {
      s.elems_.push_back(std::move(elems[idx]));
      s.keys_ += keys[idx];
      s.key_off_.push_back(static_cast<std::uint32_t>(s.keys_.size()));
    }
    return s;
  }

 private:
  std::size_t lower_bound_key(std::string_view k) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (key(mid) < k)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  int n_ = 0;
  std::vector<UniTri> elems_;
  std::string keys_;
  std::vector<std::uint32_t> key_off_{0};
  mutable std::atomic<int> symmetric_{-1};
};

/// Exact product set {ab : a in A, b in B}.
inline SymSet product(const SymSet& A, const SymSet& B,
                      const SetLimits& limits = {}) {
  if (A.n() != B.n()) throw DimensionMismatch("product: size mismatch");
  const std::size_t pairs = A.size() * B.size();
  if (pairs > limits.max_pairs)
    throw CapExceeded("product: pair count " + std::to_string(pairs) +
                          " exceeds cap " + std::to_string(limits.max_pairs),
                      "pairs", pairs, limits.max_pairs,
                      {A.size(), B.size()});
  using Accum = detail::KeyedAccum<UniTri>;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned nw = limits.threads == 0 ? hw : limits.threads;
  std::vector<Accum> locals(std::max(1u, nw));
  detail::parallel_chunks(A.size(), nw, [&](unsigned w, std::size_t b, std::size_t e) {
    Accum& acc = locals[w];
    std::string key;
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < B.size(); ++j) {
        UniTri z = mul(A[i], B[j]);
        key.clear();
        append_canonical_key(z, key);
        acc.insert(key, std::move(z));
        if (acc.size() > limits.max_elements)
          throw CapExceeded("product: result exceeds element cap",
                            "elements", acc.size(), limits.max_elements,
                            {A.size(), B.size()});
      }
    }
  });
  detail::KeyedAccum<std::uint32_t> merged;
  std::vector<UniTri> elems;
  for (auto& acc : locals) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
      bool inserted = false;
      merged.insert(acc.key(i), 0, &inserted);
      if (inserted) elems.push_back(std::move(acc.payload(i)));
      if (elems.size() > limits.max_elements)
        throw CapExceeded("product: result exceeds element cap", "elements",
                          elems.size(), limits.max_elements,
                          {A.size(), B.size()});
    }
  }
  return SymSet::from_distinct(A.n(), std::move(elems));
}

/// A^k by iterated left-to-right products. Requires A symmetric.
inline SymSet power(const SymSet& A, int k, const SetLimits& limits = {}) {
  if (k < 1) throw Error("power: exponent must be >= 1");
  if (!A.is_symmetric())
    throw InvariantViolation("power: set is not symmetric");
  SymSet acc = A;
  std::vector<std::size_t> partial{A.size()};
  for (int i = 2; i <= k; ++i) {
    try {
      acc = product(acc, A, limits);
    } catch (CapExceeded& e) {
      e.partial_cardinalities = partial;
      throw;
    }
    partial.push_back(acc.size());
  }
  return acc;
}

/// {a in A : a lies in exp(S)}.
inline SymSet intersect_subgroup(const SymSet& A, const Subalgebra& S) {
  if (A.n() != S.n())
    throw DimensionMismatch("intersect_subgroup: size mismatch");
  std::vector<UniTri> kept;
  for (const auto& g : A.elements())
    if (member(S.space, log_of(g).coords)) kept.push_back(g);
  return SymSet::from_distinct(A.n(), std::move(kept));
}

/// Canonical representatives of {a exp(h) : a in A}, with one witness
/// element of A recorded per coset (the canonically smallest one).
class CosetSet {
 public:
  CosetSet() = default;
  CosetSet(Subalgebra h, std::vector<UniTri> reps, std::vector<UniTri> witnesses,
           bool fallback)
      : h_(std::move(h)), fallback_(fallback) {
    assemble(std::move(reps), std::move(witnesses));
  }

  const Subalgebra& h() const { return h_; }
  int n() const { return h_.n(); }
  std::size_t size() const { return reps_.size(); }
  const std::vector<UniTri>& reps() const { return reps_; }
  const UniTri& rep(std::size_t i) const { return reps_[i]; }
  const UniTri& witness(std::size_t i) const { return witnesses_[i]; }
  bool used_pairwise_fallback() const { return fallback_; }

  std::string_view key(std::size_t i) const {
    return {keys_.data() + key_off_[i], key_off_[i + 1] - key_off_[i]};
  }
  bool contains_key(std::string_view k) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (key(mid) < k)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo < size() && key(lo) == k;
  }

  bool is_trivial() const {
    return size() == 1 && reps_[0].is_identity();
  }

 private:
  void assemble(std::vector<UniTri> reps, std::vector<UniTri> wit) {
    std::vector<std::string> keys(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      keys[i] = canonical_key(reps[i]);
    std::vector<std::uint32_t> order(reps.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    key_off_.assign(1, 0);
    for (std::uint32_t idx : order) {
      reps_.push_back(std::move(reps[idx]));
      witnesses_.push_back(std::move(wit[idx]));
      keys_ += keys[idx];
      key_off_.push_back(static_cast<std::uint32_t>(keys_.size()));
    }
  }

  Subalgebra h_;
  std::vector<UniTri> reps_;
  std::vector<UniTri> witnesses_;
  std::string keys_;
  std::vector<std::uint32_t> key_off_{0};
  bool fallback_ = false;
};

/// Pairwise coset grouping: x ~ y iff x^-1 y in exp(h); the class
/// representative is its canonically smallest member. Quadratic; used as
/// the fallback when the canonicalization sweep fails to converge, and
/// directly by tests as an independent route.
inline CosetSet quotient_mod_pairwise(const SymSet& A, const Subalgebra& h) {
  if (A.n() != h.n()) throw DimensionMismatch("quotient_mod: size mismatch");
  std::vector<UniTri> reps, wit;
  std::vector<bool> grouped(A.size(), false);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (grouped[i]) continue;
    for (std::size_t j = i + 1; j < A.size(); ++j)
      if (!grouped[j] && coset_equal(h, A[i], A[j])) grouped[j] = true;
    reps.push_back(A[i]);
    wit.push_back(A[i]);
  }
  return CosetSet(h, std::move(reps), std::move(wit), true);
}

/// Quotient of A modulo exp(h). Falls back to pairwise coset grouping if
/// the canonicalization sweep ever fails to converge (and flags it).
inline CosetSet quotient_mod(const SymSet& A, const Subalgebra& h) {
  if (A.n() != h.n()) throw DimensionMismatch("quotient_mod: size mismatch");
  detail::KeyedAccum<std::uint32_t> seen;
  std::vector<UniTri> reps, wit;
  std::string key;
  for (const auto& a : A.elements()) {
    UniTri r;
    try {
      r = canon_coset(h, a);
    } catch (const CanonSweepLimit&) {
      return quotient_mod_pairwise(A, h);
    }
    key.clear();
    append_canonical_key(r, key);
    bool inserted = false;
    seen.insert(key, 0, &inserted);
    if (inserted) {
      reps.push_back(std::move(r));
      wit.push_back(a);  // A scanned in canonical order: first hit is minimal
    }
  }
  return CosetSet(h, std::move(reps), std::move(wit), false);
}

/// Product of two coset sets over the same modulus. Only meaningful when
/// every element involved lies in a common subgroup in which exp(h) is
/// normal; callers guarantee that. Witness pairs record, for each result
/// class, the factor indices of its first construction in canonical
/// iteration order (schedule-independent).
struct CosetProduct {
  CosetSet set;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> witness_pairs;
};

inline CosetProduct cs_product(const CosetSet& X, const CosetSet& Y,
                               const SetLimits& limits = {}) {
  if (X.n() != Y.n() || X.h() != Y.h())
    throw DimensionMismatch("cs_product: incompatible coset sets");
  const std::size_t pairs = X.size() * Y.size();
  if (pairs > limits.max_pairs)
    throw CapExceeded("cs_product: pair count exceeds cap", "pairs", pairs,
                      limits.max_pairs, {X.size(), Y.size()});
  struct Entry {
    UniTri rep;
    std::uint32_t xi, yi;
  };
  using Accum = detail::KeyedAccum<Entry>;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned nw = limits.threads == 0 ? hw : limits.threads;
  std::vector<Accum> locals(std::max(1u, nw));
  detail::parallel_chunks(X.size(), nw, [&](unsigned w, std::size_t b, std::size_t e) {
    Accum& acc = locals[w];
    std::string key;
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < Y.size(); ++j) {
        UniTri z = canon_coset(X.h(), mul(X.rep(i), Y.rep(j)));
        key.clear();
        append_canonical_key(z, key);
        acc.insert(key, Entry{std::move(z), static_cast<std::uint32_t>(i),
                              static_cast<std::uint32_t>(j)});
        if (acc.size() > limits.max_elements)
          throw CapExceeded("cs_product: result exceeds element cap",
                            "elements", acc.size(), limits.max_elements,
                            {X.size(), Y.size()});
      }
    }
  });
  // Chunks cover ascending index ranges; first-wins merge in chunk order
  // yields the globally (i, j)-lexicographic minimal witness pair.
  detail::KeyedAccum<std::uint32_t> merged;
  std::vector<Entry> entries;
  std::vector<std::string> keys;
  for (auto& acc : locals) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
      bool inserted = false;
      merged.insert(acc.key(i), 0, &inserted);
      if (inserted) {
        entries.push_back(std::move(acc.payload(i)));
        keys.emplace_back(acc.key(i));
        if (entries.size() > limits.max_elements)
          throw CapExceeded("cs_product: result exceeds element cap",
                            "elements", entries.size(), limits.max_elements,
                            {X.size(), Y.size()});
      }
    }
  }
  std::vector<std::uint32_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  std::vector<UniTri> reps, wit;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wpairs;
  reps.reserve(entries.size());
  for (std::uint32_t idx : order) {
    Entry& e = entries[idx];
    // Per-class witness element: product of the factor witnesses, so
    // lifts land in products of the original sets.
    wit.push_back(mul(X.witness(e.xi), Y.witness(e.yi)));
    wpairs.push_back({e.xi, e.yi});
    reps.push_back(std::move(e.rep));
  }
  // Inputs are pre-sorted with unique keys, so the constructor's sort is
  // the identity permutation and wpairs stays aligned.
  CosetSet out(X.h(), std::move(reps), std::move(wit), false);
  return CosetProduct{std::move(out), std::move(wpairs)};
}

inline CosetSet cs_power(const CosetSet& X, int k, const SetLimits& limits = {}) {
  if (k < 1) throw Error("cs_power: exponent must be >= 1");
  CosetSet acc = X;
  for (int i = 2; i <= k; ++i) acc = cs_product(acc, X, limits).set;
  return acc;
}

/// Whether the class of g (not necessarily canonical) belongs to S.
inline bool cs_contains_class(const CosetSet& S, const UniTri& g) {
  return S.contains_key(canonical_key(canon_coset(S.h(), g)));
}

/// Symmetry at class level: contains the identity class and the inverse
/// of each class.
inline bool cs_is_symmetric(const CosetSet& S) {
  if (!cs_contains_class(S, UniTri::identity(S.n()))) return false;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!cs_contains_class(S, inv(S.rep(i)))) return false;
  return true;
}

/// Classes of X whose representatives lie in exp(c); requires h <= c so
/// membership is class-invariant.
inline CosetSet cs_intersect(const CosetSet& X, const Subalgebra& c) {
  if (!subspace_leq(X.h().space, c.space))
    throw InvariantViolation("cs_intersect: c does not contain the modulus");
  std::vector<UniTri> reps, wit;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (contains_elt(c, X.rep(i))) {
      reps.push_back(X.rep(i));
      wit.push_back(X.witness(i));
    }
  return CosetSet(X.h(), std::move(reps), std::move(wit),
                  X.used_pairwise_fallback());
}

}  // namespace nilcover
