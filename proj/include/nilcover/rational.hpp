#pragma once

// Exact rational scalars. Values are kept in lowest terms with positive
// denominator at all times; zero is canonically 0/1.
//
// Representation: an int64 numerator/denominator pair covers the common
// case without heap traffic; values that leave the int64 range are
// promoted to an arbitrary-precision boxed value and demoted back as
// soon as they fit again, so the representation class is a function of
// the value alone. Canonical byte serialization therefore never depends
// on the history of a computation.

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "nilcover/errors.hpp"

namespace nilcover {

using Integer = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace detail {

using int128 = __int128;
using uint128 = unsigned __int128;

inline uint128 abs128(int128 v) {
  return v < 0 ? -static_cast<uint128>(v) : static_cast<uint128>(v);
}

inline uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Integer to_integer(int128 v) {
  bool neg = v < 0;
  uint128 m = abs128(v);
  Integer r = static_cast<std::uint64_t>(m >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(m);
  return neg ? -r : r;
}

}  // namespace detail

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v) {  // NOLINT: implicit by design
    if (v == std::numeric_limits<std::int64_t>::min()) {
      *this = make128(v, 1);
    } else {
      num_ = v;
    }
  }
  Rational(long long v) : Rational(static_cast<std::int64_t>(v)) {}  // NOLINT
  Rational(int v) : num_(v) {}                                       // NOLINT
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error("Rational: zero denominator");
    *this = make128(n, d);
  }
  Rational(const Integer& n, const Integer& d) {
    if (d == 0) throw Error("Rational: zero denominator");
    assign_big(BigRat(n, d));
  }
  explicit Rational(BigRat v) { assign_big(std::move(v)); }

  Rational(const Rational& o)
      : num_(o.num_),
        den_(o.den_),
        big_(o.big_ ? std::make_unique<BigRat>(*o.big_) : nullptr) {}
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<BigRat>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(Rational&&) noexcept = default;

  bool is_big() const { return big_ != nullptr; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const {
    return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
  }
  int sign() const {
    if (big_) return big_->sign();
    return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1);
  }

  Integer numerator() const {
    return big_ ? Integer(boost::multiprecision::numerator(*big_))
                : Integer(num_);
  }
  Integer denominator() const {
    return big_ ? Integer(boost::multiprecision::denominator(*big_))
                : Integer(den_);
  }
  BigRat to_big() const { return big_ ? *big_ : BigRat(num_, den_); }

  friend Rational operator-(const Rational& a) {
    if (a.big_) return Rational(BigRat(-*a.big_));
    Rational r;
    r.num_ = -a.num_;  // INT64_MIN never stored, negation stays in range
    r.den_ = a.den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      detail::int128 n = static_cast<detail::int128>(a.num_) * b.den_ +
                         static_cast<detail::int128>(b.num_) * a.den_;
      detail::int128 d = static_cast<detail::int128>(a.den_) * b.den_;
      return make128(n, d);
    }
    return Rational(BigRat(a.to_big() + b.to_big()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      detail::int128 n = static_cast<detail::int128>(a.num_) * b.num_;
      detail::int128 d = static_cast<detail::int128>(a.den_) * b.den_;
      return make128(n, d);
    }
    return Rational(BigRat(a.to_big() * b.to_big()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error("Rational: division by zero");
    if (!a.big_ && !b.big_) {
      detail::int128 n = static_cast<detail::int128>(a.num_) * b.den_;
      detail::int128 d = static_cast<detail::int128>(a.den_) * b.num_;
      if (d < 0) {
        n = -n;
        d = -d;
      }
      return make128(n, d);
    }
    return Rational(BigRat(a.to_big() / b.to_big()));
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
      if (!a.big_ || !b.big_) return false;  // representation is canonical
      return *a.big_ == *b.big_;
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      return static_cast<detail::int128>(a.num_) * b.den_ <
             static_cast<detail::int128>(b.num_) * a.den_;
    }
    return a.to_big() < b.to_big();
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  /// Renders "p/q", or just "p" for integers.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) {
      s += '/';
      s += denominator().str();
    }
    return s;
  }

  /// Parses the str() format. Accepts an optional leading minus on the
  /// numerator only; the denominator must be a positive integer.
  static Rational from_string(std::string_view s) {
    auto fail = [&] { throw ParseError("bad rational: '" + std::string(s) + "'"); };
    if (s.empty()) fail();
    std::size_t slash = s.find('/');
    std::string_view ns = s.substr(0, slash);
    std::string_view ds =
        slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    auto parse_int = [&](std::string_view t, bool allow_sign) {
      if (t.empty()) fail();
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-')) i = 1;
      if (i == t.size()) fail();
      for (std::size_t j = i; j < t.size(); ++j)
        if (t[j] < '0' || t[j] > '9') fail();
      return Integer(std::string(t));
    };
    Integer n = parse_int(ns, true);
    Integer d = parse_int(ds, false);
    if (d <= 0) fail();
    return Rational(n, d);
  }

  /// Appends the canonical byte encoding: sign byte (0 zero / 1 positive /
  /// 2 negative), then length-prefixed little-endian magnitudes of the
  /// numerator and denominator. Equal values yield equal bytes.
  void append_key_bytes(std::string& out) const {
    if (is_zero()) {
      out.push_back('\0');
      return;
    }
    out.push_back(sign() > 0 ? '\1' : '\2');
    if (!big_) {
      append_u64(out, static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_));
      append_u64(out, static_cast<std::uint64_t>(den_));
    } else {
      append_magnitude(out, boost::multiprecision::numerator(*big_));
      append_magnitude(out, boost::multiprecision::denominator(*big_));
    }
  }

 private:
  static constexpr std::int64_t kMaxSmall =
      std::numeric_limits<std::int64_t>::max();

  static Rational make128(detail::int128 n, detail::int128 d) {
    // pre: d != 0
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    detail::uint128 g =
        detail::gcd128(detail::abs128(n), static_cast<detail::uint128>(d));
    n /= static_cast<detail::int128>(g);
    d /= static_cast<detail::int128>(g);
    Rational r;
    if (detail::abs128(n) <= static_cast<detail::uint128>(kMaxSmall) &&
        static_cast<detail::uint128>(d) <=
            static_cast<detail::uint128>(kMaxSmall)) {
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
    } else {
      r.big_ = std::make_unique<BigRat>(detail::to_integer(n),
                                        detail::to_integer(d));
    }
    return r;
  }

  void assign_big(BigRat v) {
    const Integer& n = boost::multiprecision::numerator(v);
    const Integer& d = boost::multiprecision::denominator(v);
    if (n >= -kMaxSmall && n <= kMaxSmall && d <= kMaxSmall) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_unique<BigRat>(std::move(v));
    }
  }

  static void append_u64(std::string& out, std::uint64_t v) {
    // pre: v != 0
    char buf[8];
    int len = 0;
    while (v != 0) {
      buf[len++] = static_cast<char>(v & 0xff);
      v >>= 8;
    }
    out.push_back(static_cast<char>(len));
    out.append(buf, static_cast<std::size_t>(len));
  }

  static void append_magnitude(std::string& out, const Integer& v) {
    std::string mag;
    boost::multiprecision::export_bits(v, std::back_inserter(mag), 8,
                                       /*msv_first=*/false);
    if (mag.size() < 255) {
      out.push_back(static_cast<char>(mag.size()));
    } else {
      out.push_back(static_cast<char>(255));
      std::uint32_t s = static_cast<std::uint32_t>(mag.size());
      for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((s >> (8 * i)) & 0xff));
    }
    out += mag;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<BigRat> big_;
};

/// b^e for non-negative integer exponents.
inline Integer ipow(const Integer& b, unsigned e) {
  Integer r = 1, x = b;
  while (e != 0) {
    if (e & 1u) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline Rational rpow(const Rational& b, unsigned e) {
  return Rational(ipow(b.numerator(), e), ipow(b.denominator(), e));
}

}  // namespace nilcover
