#include "jetgeo/rational.hpp"

#include <limits>

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = make(n, d);
}

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw EvaluationSingularity("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (!fits(n) || !fits(d)) throw ArithmeticOverflow("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational Rational::operator-() const {
  return make(-static_cast<__int128>(num_), den_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    __int128 s = static_cast<__int128>(num_) + o.num_;
    if (!fits(s)) throw ArithmeticOverflow("rational overflow");
    num_ = static_cast<std::int64_t>(s);
    return *this;
  }
  *this = make(static_cast<__int128>(num_) * o.den_ +
                   static_cast<__int128>(o.num_) * den_,
               static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = make(static_cast<__int128>(num_) * o.num_,
               static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  *this = make(static_cast<__int128>(num_) * o.den_,
               static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

Rational Rational::pow(int k) const {
  Rational base = k < 0 ? Rational(1) / *this : *this;
  unsigned e = k < 0 ? static_cast<unsigned>(-k) : static_cast<unsigned>(k);
  Rational out(1);
  while (e > 0) {
    if (e & 1U) out *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return out;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_decimal(const std::string& text) {
  __int128 n = 0;
  __int128 d = 1;
  bool frac = false;
  for (char c : text) {
    if (c == '.') {
      if (frac) throw MalformedExpression("bad number '" + text + "'");
      frac = true;
      continue;
    }
    if (c < '0' || c > '9') throw MalformedExpression("bad number '" + text + "'");
    n = n * 10 + (c - '0');
    if (frac) d *= 10;
    if (n > std::numeric_limits<std::int64_t>::max() ||
        d > std::numeric_limits<std::int64_t>::max())
      throw MalformedExpression("number literal too long '" + text + "'");
  }
  return make(n, d);
}

}  // namespace jetgeo
