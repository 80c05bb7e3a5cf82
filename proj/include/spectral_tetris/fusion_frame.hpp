#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "spectral_tetris/synthesis_matrix.hpp"

namespace spectral_tetris {

// Weighted fusion frame given by a generating frame whose columns are split
// into groups; group i spans subspace W_i and carries weight sqrt(weights_sq[i]).
struct FusionFrame {
  std::size_t m = 0;
  std::vector<Rational> weights_sq;
  std::vector<std::size_t> dims;
  SynthesisMatrix generator;
  // Zero-based column indices per subspace, each list ascending.
  std::vector<std::vector<std::size_t>> partition;

  std::size_t subspace_count() const noexcept { return partition.size(); }
  friend bool operator==(const FusionFrame&, const FusionFrame&) = default;
};

// Same shape with a floating point generator, produced by orthogonal
// completion. Weights stay exact.
struct NumericFusionFrame {
  std::size_t m = 0;
  std::vector<Rational> weights_sq;
  std::vector<std::size_t> dims;
  Eigen::MatrixXd generator;
  std::vector<std::vector<std::size_t>> partition;
};

}  // namespace spectral_tetris
