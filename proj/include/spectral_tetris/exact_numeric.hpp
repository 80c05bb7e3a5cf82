#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace spectral_tetris {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", "-p/q" or a plain integer. Decimal and exponent notation is
// rejected with ErrorKind::ParseError so that no float ever enters the exact
// pipeline.
Rational parse_rational(std::string_view text);

// Comma separated list of rationals, whitespace tolerant.
std::vector<Rational> parse_rational_list(std::string_view text);

std::string to_string(const Rational& value);

// Exact double nearest to the rational (ties resolved by the high precision
// intermediate).
double to_double(const Rational& value);

// s such that n = s * s * t with t squarefree; returns {s, t}.
std::pair<BigInt, BigInt> split_square(const BigInt& n);

// Finite sum of c_i * sqrt(r_i) with distinct squarefree radicands r_i >= 1
// and nonzero rational coefficients, kept sorted by radicand. The empty sum is
// zero. Because squarefree radicals are linearly independent over the
// rationals, this representation is canonical and == is exact equality.
class RadicalScalar {
 public:
  struct Term {
    Rational coefficient;
    BigInt radicand;
    friend bool operator==(const Term&, const Term&) = default;
  };

  RadicalScalar() = default;
  explicit RadicalScalar(const Rational& value);
  static RadicalScalar integer(long value) { return RadicalScalar(Rational(value)); }

  // Builds the canonical form from arbitrary (coefficient, radicand) pairs with
  // nonnegative integer radicands that need not be squarefree.
  static RadicalScalar from_terms(const std::vector<Term>& terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept;
  std::optional<Rational> as_rational() const;

  RadicalScalar operator-() const;
  RadicalScalar& operator+=(const RadicalScalar& other);
  RadicalScalar& operator-=(const RadicalScalar& other);
  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend bool operator==(const RadicalScalar&, const RadicalScalar&) = default;

  // Sign of the represented real number. Single-term values are decided
  // exactly; multi-term values use a 100 digit evaluation.
  int sign() const;

  double to_double() const;
  std::string to_string() const;

 private:
  friend RadicalScalar radical_normalize(const Rational& coefficient, const Rational& radicand);
  std::vector<Term> terms_;
};

// coefficient * sqrt(radicand) for a nonnegative rational radicand, reduced to
// the canonical squarefree form. sqrt(p/q) becomes (1/q) sqrt(p q).
RadicalScalar radical_normalize(const Rational& coefficient, const Rational& radicand);

inline RadicalScalar sqrt_of(const Rational& radicand) {
  return radical_normalize(Rational(1), radicand);
}

enum class CombineOp { Add, Multiply };
RadicalScalar radical_combine(const RadicalScalar& a, const RadicalScalar& b, CombineOp op);

double to_float(const RadicalScalar& value);

// modulus * exp(2 pi i * root_exponent / root_order).
struct ComplexRadicalEntry {
  RadicalScalar modulus;
  std::uint32_t root_exponent = 0;
  std::uint32_t root_order = 1;

  std::complex<double> to_complex() const;
  friend bool operator==(const ComplexRadicalEntry&, const ComplexRadicalEntry&) = default;
};

// Reduces the exponent modulo the order. A nonpositive modulus is rejected.
ComplexRadicalEntry make_complex_entry(const RadicalScalar& modulus, long long exponent,
                                       std::uint32_t order);

using MatrixEntry = std::variant<RadicalScalar, ComplexRadicalEntry>;

bool entry_is_zero(const MatrixEntry& entry);
bool entry_is_complex(const MatrixEntry& entry);
std::complex<double> entry_to_complex(const MatrixEntry& entry);
// |entry|^2; exact for real entries and for complex ones alike.
RadicalScalar entry_modulus_squared(const MatrixEntry& entry);
std::string entry_to_string(const MatrixEntry& entry);

}  // namespace spectral_tetris
