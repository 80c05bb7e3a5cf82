#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "spectral_tetris/blocks.hpp"
#include "spectral_tetris/exact_numeric.hpp"

namespace spectral_tetris {

// Sparse column-major M x N matrix whose columns are the frame vectors written
// in the eigenbasis of the frame operator. Zero entries are never stored.
class SynthesisMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, MatrixEntry>>;

  static constexpr std::string_view basis_note = "columns expressed in the frame operator eigenbasis";

  SynthesisMatrix() = default;
  SynthesisMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  MatrixEntry at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, MatrixEntry value);
  void place_block(const Block& block, std::size_t row0, std::size_t col0);

  const Column& column(std::size_t col) const { return columns_.at(col); }
  std::vector<std::size_t> support(std::size_t col) const;

  std::size_t nonzero_count() const;
  bool is_complex() const;

  SynthesisMatrix permute_rows(const std::vector<std::size_t>& new_row_of_old) const;
  SynthesisMatrix scaled(const RadicalScalar& factor) const;
  SynthesisMatrix select_columns(const std::vector<std::size_t>& cols) const;
  static SynthesisMatrix hstack(const SynthesisMatrix& left, const SynthesisMatrix& right);

  // Real dense view; complex entries raise NotApplicable.
  Eigen::MatrixXd to_dense() const;
  Eigen::MatrixXcd to_dense_complex() const;

  friend bool operator==(const SynthesisMatrix&, const SynthesisMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

}  // namespace spectral_tetris
