#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "spectral_tetris/sequences.hpp"
#include "spectral_tetris/synthesis_matrix.hpp"

namespace spectral_tetris {

// Unit norm tight frame of n vectors in dimension m with frame bound n/m.
// Raises Infeasible, citing the violated criterion, when no such frame comes
// out of the tetris loop.
SynthesisMatrix construct_untf(std::size_t m, std::size_t n);

// Same target built from Fourier tiles so that the 2x2 restriction of the real
// loop does not apply. Raises DftPathStuck with the placement trace when the
// greedy tiling cannot finish.
SynthesisMatrix construct_untf_dft(std::size_t m, std::size_t n);

// Unit norm frame with the given spectrum, processed in the order given.
SynthesisMatrix sfr(const Spectrum& spectrum, std::size_t n);

// Prescribed squared norms and spectrum, both in the order given. Raises
// NotSTReady naming the step where the loop breaks down.
SynthesisMatrix pnstc(const NormSequence& norms, const Spectrum& spectrum);

struct SwapRecord {
  // Zero-based positions exchanged in the working norm order.
  std::size_t first = 0;
  std::size_t second = 0;
  friend bool operator==(const SwapRecord&, const SwapRecord&) = default;
};

struct ReorderedFrame {
  SynthesisMatrix matrix;
  std::vector<SwapRecord> swaps;
  NormSequence final_order;
};

// Variant of pnstc that exchanges neighbouring norms whenever a 2x2 tile
// cannot be formed and the next norm fits as a singleton. Raises
// ReorderFailed if no exchange rescues the step.
ReorderedFrame pnstc_str(const NormSequence& norms, const Spectrum& spectrum);

// Applies a swap log to an ordering.
NormSequence apply_swaps(const NormSequence& norms, const std::vector<SwapRecord>& swaps);

// Frame with n vectors of equal norm and the given spectrum. Rows stay in the
// order of the requested spectrum even when the tiling needs another order.
SynthesisMatrix equal_norm_frame(const Spectrum& spectrum, std::size_t n);

// Orthonormal completion of a Parseval frame: returns the (n - m) x n matrix
// whose stack under the input is orthogonal. Raises NotParseval when the rows
// are not orthonormal within tolerance.
Eigen::MatrixXd naimark_complement(const Eigen::MatrixXd& parseval, double tolerance = 1e-10);
Eigen::MatrixXd naimark_complement(const SynthesisMatrix& parseval, double tolerance = 1e-10);

}  // namespace spectral_tetris
