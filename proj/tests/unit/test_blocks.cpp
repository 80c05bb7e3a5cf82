#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "spectral_tetris/blocks.hpp"
#include "spectral_tetris/errors.hpp"
#include "support.hpp"

using namespace spectral_tetris;
using st_test::cell;

namespace {

const RadicalScalar& real(const MatrixEntry& e) { return std::get<RadicalScalar>(e); }

RadicalScalar row_product(const Block& b, std::size_t r1, std::size_t r2) {
  RadicalScalar s;
  for (std::size_t c = 0; c < b.cols; ++c) s += real(b.at(r1, c)) * real(b.at(r2, c));
  return s;
}

RadicalScalar column_norm(const Block& b, std::size_t c) {
  RadicalScalar s;
  for (std::size_t r = 0; r < b.rows; ++r) s += entry_modulus_squared(b.at(r, c));
  return s;
}

RadicalScalar row_weight(const Block& b, std::size_t r) {
  RadicalScalar s;
  for (std::size_t c = 0; c < b.cols; ++c) s += entry_modulus_squared(b.at(r, c));
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("unit norm tile") {
  const Block b = block_a(Rational(3, 4));
  REQUIRE(b.rows == 2);
  REQUIRE(b.cols == 2);
  CHECK(real(b.at(0, 0)) == cell("s3/8"));
  CHECK(real(b.at(0, 1)) == cell("s3/8"));
  CHECK(real(b.at(1, 0)) == cell("s5/8"));
  CHECK(real(b.at(1, 1)) == cell("-s5/8"));
  CHECK(b.first_row_weight == Rational(3, 4));
  CHECK(row_product(b, 0, 1).is_zero());
  CHECK(column_norm(b, 0) == RadicalScalar(Rational(1)));
  CHECK(column_norm(b, 1) == RadicalScalar(Rational(1)));
  CHECK(row_weight(b, 0) == RadicalScalar(Rational(3, 4)));
  CHECK(row_weight(b, 1) == RadicalScalar(Rational(5, 4)));
}

TEST_CASE("unit norm tile domain") {
  CHECK_NOTHROW(block_a(Rational(2)));
  const Block top = block_a(Rational(2));
  CHECK(entry_is_zero(top.at(1, 0)));
  CHECK(entry_is_zero(block_a(Rational(0)).at(0, 0)));
  CHECK(kind_of([] { block_a(Rational(5, 2)); }) == ErrorKind::BlockDomain);
  CHECK(kind_of([] { block_a(Rational(-1, 2)); }) == ErrorKind::BlockDomain);
}

TEST_CASE("rational exact invariants of the unit tile over a grid") {
  for (int num = 1; num < 24; ++num) {
    const Rational x(num, 12);
    const Block b = block_a(x);
    CHECK(row_product(b, 0, 1).is_zero());
    CHECK(column_norm(b, 0) == RadicalScalar(Rational(1)));
    CHECK(row_weight(b, 0) == RadicalScalar(x));
  }
}

TEST_CASE("prescribed norm tile") {
  const Block b = block_a_hat(Rational(1), Rational(4), Rational(3));
  CHECK(real(b.at(0, 0)) == cell("s2/5"));
  CHECK(real(b.at(0, 1)) == cell("s3/5"));
  CHECK(real(b.at(1, 0)) == cell("s18/5"));
  CHECK(real(b.at(1, 1)) == cell("-s12/5"));
  CHECK(row_product(b, 0, 1).is_zero());
  CHECK(column_norm(b, 0) == RadicalScalar(Rational(4)));
  CHECK(column_norm(b, 1) == RadicalScalar(Rational(3)));
  CHECK(row_weight(b, 1) == RadicalScalar(Rational(6)));

  // both norms below x is the other admissible configuration
  const Block low = block_a_hat(Rational(3, 2), Rational(1), Rational(1));
  CHECK(row_product(low, 0, 1).is_zero());
  CHECK(row_weight(low, 0) == RadicalScalar(Rational(3, 2)));
  CHECK(row_weight(low, 1) == RadicalScalar(Rational(1, 2)));

  // symmetric edge case a1 = a2 = x
  const Block edge = block_a_hat(Rational(1), Rational(1), Rational(1));
  CHECK(row_product(edge, 0, 1).is_zero());
  CHECK(row_weight(edge, 0) == RadicalScalar(Rational(1)));
  CHECK(column_norm(edge, 0) == RadicalScalar(Rational(1)));
}

TEST_CASE("prescribed norm tile rejects straddling norms") {
  CHECK(kind_of([] { block_a_hat(Rational(2), Rational(3), Rational(1)); }) == ErrorKind::NoSuchBlock);
  CHECK(kind_of([] { block_a_hat(Rational(5), Rational(2), Rational(2)); }) == ErrorKind::NoSuchBlock);
  CHECK(kind_of([] { block_a_hat(Rational(0), Rational(2), Rational(2)); }) == ErrorKind::NoSuchBlock);
}

TEST_CASE("prescribed norm tiles over random admissible inputs") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(1, 20);
  int built = 0;
  for (int i = 0; i < 400; ++i) {
    const Rational x(d(rng), 4), a1(d(rng), 4), a2(d(rng), 4);
    const bool ok = a1 + a2 >= x && ((a1 >= x && a2 >= x) || (a1 <= x && a2 <= x));
    if (!ok) {
      CHECK_THROWS_AS(block_a_hat(x, a1, a2), Error);
      continue;
    }
    const Block b = block_a_hat(x, a1, a2);
    CHECK(row_product(b, 0, 1).is_zero());
    CHECK(column_norm(b, 0) == RadicalScalar(a1));
    CHECK(column_norm(b, 1) == RadicalScalar(a2));
    CHECK(row_weight(b, 0) == RadicalScalar(x));
    ++built;
  }
  CHECK(built > 50);
}

TEST_CASE("Fourier tiles") {
  struct Case {
    std::size_t j;
    Rational x;
  };
  for (const Case& c : {Case{3, Rational(1, 2)}, Case{2, Rational(5, 4)}, Case{4, Rational(3, 2)}, Case{5, Rational(1)}}) {
    CAPTURE(c.j);
    const Rational t = dft_trailing_weight(c.j, c.x);
    const Block b = dft_block(c.j, c.x, t);
    REQUIRE(b.rows == c.j);
    REQUIRE(b.cols == c.j);
    for (std::size_t col = 0; col < c.j; ++col) CHECK(column_norm(b, col) == RadicalScalar(Rational(1)));
    CHECK(row_weight(b, 0) == RadicalScalar(c.x));
    for (std::size_t r = 1; r < c.j; ++r) CHECK(row_weight(b, r) == RadicalScalar(t));
    for (std::size_t r1 = 0; r1 < c.j; ++r1) {
      for (std::size_t r2 = r1 + 1; r2 < c.j; ++r2) {
        std::complex<double> s = 0;
        for (std::size_t col = 0; col < c.j; ++col)
          s += entry_to_complex(b.at(r1, col)) * std::conj(entry_to_complex(b.at(r2, col)));
        CHECK(std::abs(s) < 1e-14);
      }
    }
  }
  CHECK(dft_trailing_weight(2, Rational(5, 4)) == Rational(3, 4));
  CHECK(dft_trailing_weight(3, Rational(1, 2)) == Rational(5, 4));
}
