#include "treefactor/rational.hpp"

#include "treefactor/error.hpp"

namespace treefactor {

std::string to_fraction_string(const Rational &r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_fraction(const std::string &text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw ValidationError("malformed fraction: '" + text + "'");
  if (r.get_den() == 0)
    throw ValidationError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Rational rational_power(unsigned long base, long exponent) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), base,
                static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0)
    return Rational(p);
  return Rational(BigInt(1), p);
}

namespace {

std::optional<long> exact_log_int(BigInt v, unsigned long base) {
  long k = 0;
  while (v > 1) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), base) == 0)
      return std::nullopt;
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), base);
    ++k;
  }
  if (v != 1)
    return std::nullopt;
  return k;
}

} // namespace

std::optional<long> exact_log(const Rational &r, unsigned long base) {
  if (r <= 0 || base < 2)
    return std::nullopt;
  if (r.get_den() == 1)
    return exact_log_int(r.get_num(), base);
  if (r.get_num() != 1)
    return std::nullopt;
  auto k = exact_log_int(r.get_den(), base);
  if (!k)
    return std::nullopt;
  return -*k;
}

} // namespace treefactor
