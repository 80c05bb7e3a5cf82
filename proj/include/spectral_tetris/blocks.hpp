#pragma once

#include <cstddef>
#include <vector>

#include "spectral_tetris/exact_numeric.hpp"

namespace spectral_tetris {

// Small dense tile placed into a synthesis matrix. Entries are row-major.
struct Block {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<MatrixEntry> entries;
  // Squared weight the block contributes to its first row.
  Rational first_row_weight = 0;

  const MatrixEntry& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// 2x2 unit norm tile [[sqrt(x/2), sqrt(x/2)], [sqrt(1-x/2), -sqrt(1-x/2)]],
// defined for 0 <= x <= 2 (BlockDomain otherwise).
Block block_a(const Rational& x);

// 2x2 tile with column norms a1_sq, a2_sq putting weight x on the first row and
// a1_sq + a2_sq - x on the second. Raises NoSuchBlock unless
// a1_sq + a2_sq >= x > 0 and both squared norms sit on the same side of x.
Block block_a_hat(const Rational& x, const Rational& a1_sq, const Rational& a2_sq);

// J x J scaled Fourier tile: row 0 carries total weight x spread evenly,
// rows 1..J-1 each carry trailing_row_weight = (J - x)/(J - 1). Columns are
// unit norm and rows are mutually orthogonal.
Block dft_block(std::size_t j, const Rational& x, const Rational& trailing_row_weight);

inline Rational dft_trailing_weight(std::size_t j, const Rational& x) {
  return (Rational(static_cast<long long>(j)) - x) / Rational(static_cast<long long>(j) - 1);
}

}  // namespace spectral_tetris
