#include "cubicspray/scalar.hpp"

#include <cctype>

#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray {

const char* backend_name(Backend b) { return b == Backend::Rational ? "rational" : "complex"; }

Complex to_complex(const Rational& v) { return Complex(v.get_d(), 0.0); }

Vec<Complex> to_complex(const Vec<Rational>& v) {
  Vec<Complex> r;
  r.reserve(v.size());
  for (const auto& e : v) r.push_back(to_complex(e));
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) fail(ErrorKind::Input, "malformed number '" + std::string(s) + "'");
  mpz_class z(std::string(body), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorKind::Input, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) fail(ErrorKind::Input, "malformed denominator in '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) fail(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = parse_integer(text.substr(e + 1)).get_si();
    if (exponent > 4096 || exponent < -4096) fail(ErrorKind::Input, "exponent out of range");
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(ErrorKind::Input, "malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) fail(ErrorKind::Input, "malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// ---------------------------------------------------------------------------

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

long Rng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(next() % span);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Vec<Complex> Rng::complex_vector(std::size_t n) {
  Vec<Complex> v(n);
  for (auto& e : v) e = complex_normal();
  return v;
}

Vec<Rational> Rng::integer_vector(std::size_t n, long lo, long hi) {
  Vec<Rational> v(n);
  for (auto& e : v) e = Rational(integer(lo, hi));
  return v;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  r.next();
  return r.next();
}

}  // namespace cubicspray
