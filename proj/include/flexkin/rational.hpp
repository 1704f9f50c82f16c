#ifndef FLEXKIN_RATIONAL_HPP
#define FLEXKIN_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flexkin/error.hpp"

namespace flexkin {

/// Exact rational number in lowest terms (denominator > 0, zero is 0/1).
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(long n, long d) {
    if (d == 0) throw UsageError("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw UsageError("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Exact conversion of a binary double (every finite double is a dyadic rational).
  static Rational from_double(double x) {
    Rational r;
    r.v_ = mpq_class(x);
    return r;
  }

  /// Parses "n", "n/d", or a decimal literal such as "-1.25" or "3e-2", exactly.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }
  long double to_long_double() const;

  /// "n" for integers, otherwise "n/d".
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

namespace detail {
// Unqualified call so ADL picks the right overload inside class templates that have an is_zero member.
template <class T>
bool zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

inline Rational pow(const Rational& base, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

inline long double Rational::to_long_double() const {
  // Split into integer part and remainder so large numerators keep precision.
  mpz_class n = v_.get_num();
  mpz_class d = v_.get_den();
  mpz_class q = n / d;
  mpz_class r = n - q * d;
  long double out = static_cast<long double>(q.get_d());
  // Scale the remainder to 64 extra bits.
  mpz_class scaled = (r << 64) / d;
  out += static_cast<long double>(scaled.get_d()) / 18446744073709551616.0L;
  return out;
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw UsageError("cannot parse rational from \"" + std::string(text) + "\"");
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class n, d;
    if (n.set_str(s.substr(0, slash), 10) != 0) return fail();
    std::string ds = s.substr(slash + 1);
    if (ds.empty() || ds[0] == '-' || ds[0] == '+') return fail();
    if (d.set_str(ds, 10) != 0) return fail();
    if (d == 0) throw UsageError("zero denominator in \"" + s + "\"");
    return Rational(n, d);
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool any_digit = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    digits.push_back(s[pos++]);
    any_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits.push_back(s[pos++]);
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string ex = s.substr(pos);
    if (ex.empty()) return fail();
    try {
      std::size_t used = 0;
      long e = std::stol(ex, &used);
      if (used != ex.size()) return fail();
      if (e > 4096 || e < -4096) return fail();
      scale += e;
    } catch (const std::exception&) {
      return fail();
    }
    pos = s.size();
  }
  if (pos != s.size()) return fail();
  mpz_class n(digits, 10);
  if (negative) n = -n;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  return scale >= 0 ? Rational(mpz_class(n * p10)) : Rational(n, p10);
}

}  // namespace flexkin

#endif  // FLEXKIN_RATIONAL_HPP
