#include "spectral_tetris/blocks.hpp"

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

Block block_a(const Rational& x) {
  if (x < 0 || x > 2) fail(ErrorKind::BlockDomain, "block A(x) needs 0 <= x <= 2, got x = " + to_string(x));
  const RadicalScalar top = sqrt_of(x / 2);
  const RadicalScalar bottom = sqrt_of(1 - x / 2);
  return Block{2, 2, {top, top, bottom, -bottom}, x};
}

Block block_a_hat(const Rational& x, const Rational& a1_sq, const Rational& a2_sq) {
  const bool both_above = a1_sq >= x && a2_sq >= x;
  const bool both_below = a1_sq <= x && a2_sq <= x;
  if (!(x > 0 && a1_sq + a2_sq >= x && (both_above || both_below))) {
    fail(ErrorKind::NoSuchBlock, "no 2x2 block with row weight " + to_string(x) + " and squared norms " +
                                     to_string(a1_sq) + ", " + to_string(a2_sq));
  }
  const Rational y = a1_sq + a2_sq - x;
  if (2 * x == a1_sq + a2_sq) {
    // Here the conditions force a1_sq == a2_sq == x.
    const RadicalScalar h = sqrt_of(x / 2);
    return Block{2, 2, {h, h, h, -h}, x};
  }
  const Rational d = x - y;
  return Block{2,
               2,
               {sqrt_of(x * (a1_sq - y) / d), sqrt_of(x * (x - a1_sq) / d), sqrt_of(y * (x - a1_sq) / d),
                -sqrt_of(y * (a1_sq - y) / d)},
               x};
}

Block dft_block(std::size_t j, const Rational& x, const Rational& trailing_row_weight) {
  if (j < 2) fail(ErrorKind::BlockDomain, "Fourier block needs size at least 2");
  const Rational size(static_cast<long long>(j));
  if (!(x > 0 && x < size)) {
    fail(ErrorKind::BlockDomain, "Fourier block first row weight must lie in (0, " + std::to_string(j) + ")");
  }
  if (trailing_row_weight != dft_trailing_weight(j, x)) {
    fail(ErrorKind::BlockDomain, "trailing row weight must equal (J - x)/(J - 1) = " +
                                     to_string(dft_trailing_weight(j, x)));
  }
  Block block{j, j, {}, x};
  block.entries.reserve(j * j);
  const RadicalScalar head = sqrt_of(x / size);
  const RadicalScalar tail = sqrt_of(trailing_row_weight / size);
  for (std::size_t r = 0; r < j; ++r) {
    for (std::size_t c = 0; c < j; ++c) {
      const auto exponent = static_cast<long long>((r * c) % j);
      if (r == 0) {
        block.entries.emplace_back(head);
      } else if (exponent == 0) {
        block.entries.emplace_back(tail);
      } else {
        block.entries.emplace_back(make_complex_entry(tail, exponent, static_cast<std::uint32_t>(j)));
      }
    }
  }
  return block;
}

}  // namespace spectral_tetris
