#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "spectral_tetris/fusion_frame.hpp"
#include "spectral_tetris/sequences.hpp"
#include "spectral_tetris/synthesis_matrix.hpp"

namespace spectral_tetris {

// S = F F^*. Exact for real radical matrices; complex input only gets the
// floating point version.
struct FrameOperator {
  std::size_t dim = 0;
  bool exact = true;
  std::vector<RadicalScalar> entries;  // row-major, empty when !exact
  Eigen::MatrixXcd numeric;

  const RadicalScalar& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

FrameOperator frame_operator(const SynthesisMatrix& matrix);

struct VerificationReport {
  bool is_frame = false;
  bool rows_orthogonal = false;
  // Exact sums; left empty on the floating point path.
  std::vector<RadicalScalar> row_square_sums;
  std::vector<RadicalScalar> column_square_norms;
  std::vector<double> row_square_sums_numeric;
  std::vector<double> column_square_norms_numeric;
  // Rows orthogonal and all row square sums equal.
  bool is_tight = false;
  std::optional<RadicalScalar> tight_bound;
  std::optional<double> tight_bound_numeric;
  std::size_t nonzero_count = 0;
  std::optional<std::size_t> optimal_sparsity_bound;
  std::size_t orthogonality_distance = 0;
  bool exact = true;
  std::optional<bool> spectrum_matches;
  std::optional<bool> norms_match;
};

VerificationReport verify_frame(const SynthesisMatrix& matrix, const std::optional<Spectrum>& expected_spectrum = {},
                                const std::optional<NormSequence>& expected_norms = {});

VerificationReport verify_numeric(const Eigen::MatrixXd& matrix, double tolerance = 1e-10);

// N + 2(M - mu), the fewest nonzero entries any frame with this spectrum and
// N vectors can have.
std::size_t sparsity_lower_bound(const Spectrum& spectrum, std::size_t n);

struct SparsityReport {
  std::size_t count = 0;
  std::size_t bound = 0;
  bool optimal = false;
};

// The spectrum must match the row square sums (SpectrumMismatch otherwise).
SparsityReport sparsity_report(const SynthesisMatrix& matrix, const Spectrum& spectrum);

// Smallest d >= 1 such that columns whose indices differ by at least d are
// orthogonal. Columns never orthogonal give d = N.
std::size_t orthogonality_distance(const SynthesisMatrix& matrix);

struct FusionVerificationReport {
  VerificationReport generator;
  bool partition_valid = false;
  std::vector<bool> subspace_orthogonal;
  std::vector<bool> weights_match;
  bool dims_match = false;
  // Every group is an orthogonal family of vectors of norm^2 w_i^2 and the
  // generator spans the space.
  bool is_fusion_frame = false;
  bool is_tight = false;
  std::optional<RadicalScalar> tight_bound;
  // Optimal fusion frame bounds: smallest and largest row square sum of a
  // generator with orthogonal rows.
  std::optional<Rational> lower_bound;
  std::optional<Rational> upper_bound;
  std::optional<bool> spectrum_matches;
};

FusionVerificationReport verify_fusion(const FusionFrame& frame, const std::optional<Spectrum>& expected_spectrum = {});

}  // namespace spectral_tetris
