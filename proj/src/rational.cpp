#include "wittenlab/rational.hpp"

#include <climits>
#include <ostream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

BigInt to_big(std::int64_t v) {
  BigInt out;
  // mpz_class has no int64 constructor on every platform; go through a string
  // only for values outside the long range.
  if (v >= static_cast<std::int64_t>(LONG_MIN) && v <= static_cast<std::int64_t>(LONG_MAX)) {
    out = static_cast<long>(v);
  } else {
    out.set_str(std::to_string(v), 10);
  }
  return out;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(to_big(value)) {}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw PreconditionError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(to_big(numerator), to_big(denominator)) {}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw InputError("malformed rational literal '" + s + "'");
    std::size_t start = 0;
    if (allow_sign && part[0] == '-') start = 1;
    if (start == part.size()) throw InputError("malformed rational literal '" + s + "'");
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw InputError("malformed rational literal '" + s + "'");
    }
    return BigInt(part, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(s, true));
  const BigInt num = parse_int(s.substr(0, slash), true);
  const BigInt den = parse_int(s.substr(slash + 1), false);
  if (den == 0) throw InputError("zero denominator in '" + s + "'");
  return Rational(num, den);
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw PreconditionError("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::power_of_two(std::int64_t exponent) {
  BigInt p;
  const auto magnitude = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, magnitude);
  return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

Rational Rational::factorial(unsigned n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace wittenlab
