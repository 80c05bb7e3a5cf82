#include "spectral_tetris/synthesis_matrix.hpp"

#include <algorithm>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

SynthesisMatrix::SynthesisMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

MatrixEntry SynthesisMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols()) fail(ErrorKind::OutOfRange, "matrix index out of range");
  const auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& entry, std::size_t r) { return entry.first < r; });
  if (it != column.end() && it->first == row) return it->second;
  return RadicalScalar();
}

void SynthesisMatrix::set(std::size_t row, std::size_t col, MatrixEntry value) {
  if (row >= rows_ || col >= cols()) fail(ErrorKind::OutOfRange, "matrix index out of range");
  auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& entry, std::size_t r) { return entry.first < r; });
  const bool present = it != column.end() && it->first == row;
  if (entry_is_zero(value)) {
    if (present) column.erase(it);
  } else if (present) {
    it->second = std::move(value);
  } else {
    column.insert(it, {row, std::move(value)});
  }
}

void SynthesisMatrix::place_block(const Block& block, std::size_t row0, std::size_t col0) {
  if (row0 + block.rows > rows_ || col0 + block.cols > cols()) {
    fail(ErrorKind::OutOfRange, "block does not fit inside the matrix");
  }
  for (std::size_t r = 0; r < block.rows; ++r) {
    for (std::size_t c = 0; c < block.cols; ++c) set(row0 + r, col0 + c, block.at(r, c));
  }
}

std::vector<std::size_t> SynthesisMatrix::support(std::size_t col) const {
  std::vector<std::size_t> rows;
  for (const auto& [r, value] : column(col)) rows.push_back(r);
  return rows;
}

std::size_t SynthesisMatrix::nonzero_count() const {
  std::size_t count = 0;
  for (const auto& column : columns_) count += column.size();
  return count;
}

bool SynthesisMatrix::is_complex() const {
  for (const auto& column : columns_) {
    for (const auto& [r, value] : column) {
      if (entry_is_complex(value)) return true;
    }
  }
  return false;
}

SynthesisMatrix SynthesisMatrix::permute_rows(const std::vector<std::size_t>& new_row_of_old) const {
  if (new_row_of_old.size() != rows_) fail(ErrorKind::InvalidArgument, "row permutation length mismatch");
  SynthesisMatrix result(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, value] : columns_[c]) result.set(new_row_of_old[r], c, value);
  }
  return result;
}

SynthesisMatrix SynthesisMatrix::scaled(const RadicalScalar& factor) const {
  if (factor.sign() <= 0) fail(ErrorKind::DomainError, "scale factor must be positive");
  SynthesisMatrix result(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, value] : columns_[c]) {
      if (const auto* real = std::get_if<RadicalScalar>(&value)) {
        result.set(r, c, *real * factor);
      } else {
        ComplexRadicalEntry entry = std::get<ComplexRadicalEntry>(value);
        entry.modulus = entry.modulus * factor;
        result.set(r, c, entry);
      }
    }
  }
  return result;
}

SynthesisMatrix SynthesisMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  SynthesisMatrix result(rows_, cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) result.columns_[i] = column(cols[i]);
  return result;
}

SynthesisMatrix SynthesisMatrix::hstack(const SynthesisMatrix& left, const SynthesisMatrix& right) {
  if (left.rows_ != right.rows_) fail(ErrorKind::InvalidArgument, "row counts differ");
  SynthesisMatrix result = left;
  result.columns_.insert(result.columns_.end(), right.columns_.begin(), right.columns_.end());
  return result;
}

Eigen::MatrixXd SynthesisMatrix::to_dense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols()));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, value] : columns_[c]) {
      const auto* real = std::get_if<RadicalScalar>(&value);
      if (real == nullptr) fail(ErrorKind::NotApplicable, "matrix has complex entries");
      dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = real->to_double();
    }
  }
  return dense;
}

Eigen::MatrixXcd SynthesisMatrix::to_dense_complex() const {
  Eigen::MatrixXcd dense =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols()));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, value] : columns_[c]) {
      dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry_to_complex(value);
    }
  }
  return dense;
}

}  // namespace spectral_tetris
