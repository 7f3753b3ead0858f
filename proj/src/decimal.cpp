#include "rkg/decimal.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rkg/errors.hpp"

namespace rkg {

namespace {

Rational pow10(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
  return e >= 0 ? Rational(p) : make_rational(1, p);
}

// floor(log10(x)) for x > 0.
long decimal_exponent(const Rational& x) {
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 10));
  while (x >= pow10(e + 1)) ++e;
  while (x < pow10(e)) --e;
  return e;
}

// Sign of (frac - 1/2) for 0 <= frac < 1.
int cmp_half(const Rational& frac) {
  const BigInt twice = 2 * frac.get_num();
  return cmp(twice, frac.get_den());
}

BigInt round_half_even(const Rational& y) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  const Rational frac = y - Rational(fl);
  const int side = cmp_half(frac);
  if (side > 0 || (side == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
  return fl;
}

}  // namespace

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 1) throw UsageError("decimal rendering needs at least one digit");
  if (value == 0) return "0";

  const bool negative = value < 0;
  const Rational x = abs(value);
  long e = decimal_exponent(x);
  BigInt mantissa = round_half_even(x * pow10(digits - 1 - e));

  BigInt limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  if (mantissa == limit) {
    mantissa /= 10;
    ++e;
  }

  std::string m = mantissa.get_str();  // exactly `digits` characters
  std::string out = negative ? "-" : "";

  const auto strip = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };

  if (e < -4 || e >= digits) {
    std::string body = strip(m.substr(0, 1) + "." + m.substr(1));
    char expo[24];
    std::snprintf(expo, sizeof expo, "e%c%02ld", e < 0 ? '-' : '+', std::labs(e));
    return out + body + expo;
  }
  if (e >= 0) {
    const auto int_len = static_cast<std::size_t>(e + 1);
    return out + strip(m.substr(0, int_len) + "." + m.substr(int_len));
  }
  return out + strip("0." + std::string(static_cast<std::size_t>(-e - 1), '0') + m);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace rkg
