#include "spectral_tetris/exact_numeric.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

namespace mp = boost::multiprecision;
using HighFloat = mp::number<mp::cpp_bin_float<120>>;

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

bool all_digits(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

HighFloat high(const Rational& value) {
  return HighFloat(mp::numerator(value)) / HighFloat(mp::denominator(value));
}

HighFloat high(const RadicalScalar& value) {
  HighFloat sum = 0;
  for (const auto& term : value.terms()) sum += high(term.coefficient) * mp::sqrt(HighFloat(term.radicand));
  return sum;
}

// Trial division bound keeps reduction of pathological inputs from hanging.
constexpr unsigned long kTrialDivisionLimit = 5'000'000UL;

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = trim(text.substr(0, slash));
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) {
    fail(ErrorKind::ParseError, "not an exact rational (expected p/q or an integer): '" +
                                    std::string(original) + "'");
  }
  const BigInt n{std::string(num)};
  const BigInt d{std::string(den)};
  if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(original) + "'");
  Rational value(n, d);
  return negative ? Rational(-value) : value;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> values;
  if (trim(text).empty()) return values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::string to_string(const Rational& value) {
  std::ostringstream out;
  out << mp::numerator(value);
  if (mp::denominator(value) != 1) out << '/' << mp::denominator(value);
  return out.str();
}

double to_double(const Rational& value) { return static_cast<double>(high(value)); }

std::pair<BigInt, BigInt> split_square(const BigInt& n) {
  if (n < 0) fail(ErrorKind::DomainError, "cannot take the square root of a negative integer");
  if (n == 0) return {BigInt(0), BigInt(0)};
  BigInt rest = n;
  BigInt square = 1;
  BigInt free_part = 1;
  auto strip = [&](unsigned long p) {
    unsigned exponent = 0;
    while (rest % p == 0) {
      rest /= p;
      ++exponent;
    }
    for (unsigned i = 0; i < exponent / 2; ++i) square *= p;
    if (exponent % 2 == 1) free_part *= p;
  };
  strip(2);
  unsigned long p = 3;
  for (; BigInt(p) * p * p <= rest; p += 2) {
    if (p > kTrialDivisionLimit) fail(ErrorKind::DomainError, "radicand too large to reduce exactly");
    strip(p);
  }
  // Every prime factor left in rest exceeds the cube root of rest, so rest is
  // 1, a prime, a product of two distinct primes, or the square of a prime.
  if (rest > 1) {
    const BigInt root = mp::sqrt(rest);
    if (root * root == rest) {
      square *= root;
    } else {
      free_part *= rest;
    }
  }
  return {square, free_part};
}

RadicalScalar::RadicalScalar(const Rational& value) {
  if (value != 0) terms_.push_back({value, BigInt(1)});
}

RadicalScalar RadicalScalar::from_terms(const std::vector<Term>& terms) {
  RadicalScalar result;
  for (const auto& term : terms) result += radical_normalize(term.coefficient, Rational(term.radicand));
  return result;
}

bool RadicalScalar::is_rational() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().radicand == 1);
}

std::optional<Rational> RadicalScalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (is_rational()) return terms_.front().coefficient;
  return std::nullopt;
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar negated = *this;
  for (auto& term : negated.terms_) term.coefficient = -term.coefficient;
  return negated;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& other) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->radicand < b->radicand)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->radicand < a->radicand) {
      merged.push_back(*b++);
    } else {
      Rational sum = a->coefficient + b->coefficient;
      if (sum != 0) merged.push_back({sum, a->radicand});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& other) { return *this += -other; }

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar product;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      // Both radicands are squarefree, so after dividing out their gcd the
      // cofactors are coprime and their product is again squarefree.
      const BigInt g = mp::gcd(x.radicand, y.radicand);
      RadicalScalar piece;
      piece.terms_.push_back({x.coefficient * y.coefficient * Rational(g), (x.radicand / g) * (y.radicand / g)});
      product += piece;
    }
  }
  return product;
}

int RadicalScalar::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return terms_.front().coefficient > 0 ? 1 : -1;
  const HighFloat value = high(*this);
  return value > 0 ? 1 : -1;
}

double RadicalScalar::to_double() const { return static_cast<double>(high(*this)); }

std::string RadicalScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& term : terms_) {
    Rational c = term.coefficient;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (term.radicand == 1) {
      out << spectral_tetris::to_string(c);
      continue;
    }
    if (c == -1) {
      out << '-';
    } else if (c != 1) {
      out << spectral_tetris::to_string(c) << '*';
    }
    out << "sqrt(" << term.radicand << ')';
  }
  return out.str();
}

RadicalScalar radical_normalize(const Rational& coefficient, const Rational& radicand) {
  if (radicand < 0) fail(ErrorKind::DomainError, "negative radicand " + to_string(radicand));
  if (coefficient == 0 || radicand == 0) return RadicalScalar();
  const BigInt& q = mp::denominator(radicand);
  const auto [square, free_part] = split_square(mp::numerator(radicand) * q);
  RadicalScalar result;
  result.terms_.push_back({coefficient * Rational(square, q), free_part});
  return result;
}

RadicalScalar radical_combine(const RadicalScalar& a, const RadicalScalar& b, CombineOp op) {
  return op == CombineOp::Add ? a + b : a * b;
}

double to_float(const RadicalScalar& value) { return value.to_double(); }

std::complex<double> ComplexRadicalEntry::to_complex() const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(root_exponent) / static_cast<double>(root_order);
  return std::polar(modulus.to_double(), angle);
}

ComplexRadicalEntry make_complex_entry(const RadicalScalar& modulus, long long exponent, std::uint32_t order) {
  if (order == 0) fail(ErrorKind::DomainError, "root of unity order must be positive");
  if (modulus.sign() <= 0) fail(ErrorKind::DomainError, "complex entry modulus must be positive");
  long long reduced = exponent % static_cast<long long>(order);
  if (reduced < 0) reduced += order;
  return {modulus, static_cast<std::uint32_t>(reduced), order};
}

bool entry_is_zero(const MatrixEntry& entry) {
  if (const auto* real = std::get_if<RadicalScalar>(&entry)) return real->is_zero();
  return std::get<ComplexRadicalEntry>(entry).modulus.is_zero();
}

bool entry_is_complex(const MatrixEntry& entry) { return std::holds_alternative<ComplexRadicalEntry>(entry); }

std::complex<double> entry_to_complex(const MatrixEntry& entry) {
  if (const auto* real = std::get_if<RadicalScalar>(&entry)) return {real->to_double(), 0.0};
  return std::get<ComplexRadicalEntry>(entry).to_complex();
}

RadicalScalar entry_modulus_squared(const MatrixEntry& entry) {
  if (const auto* real = std::get_if<RadicalScalar>(&entry)) return *real * *real;
  const auto& modulus = std::get<ComplexRadicalEntry>(entry).modulus;
  return modulus * modulus;
}

std::string entry_to_string(const MatrixEntry& entry) {
  if (const auto* real = std::get_if<RadicalScalar>(&entry)) return real->to_string();
  const auto& c = std::get<ComplexRadicalEntry>(entry);
  std::string text = c.modulus.to_string();
  if (c.root_exponent != 0) {
    text += "*w" + std::to_string(c.root_order) + "^" + std::to_string(c.root_exponent);
  }
  return text;
}

}  // namespace spectral_tetris
