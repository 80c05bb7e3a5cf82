#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spectral_tetris/fusion_frame.hpp"
#include "spectral_tetris/sequences.hpp"
#include "spectral_tetris/synthesis_matrix.hpp"

namespace spectral_tetris {

// Column groups, each ascending, ordered by their smallest member.
using ChainPartition = std::vector<std::vector<std::size_t>>;

// Splits the given columns into maximal chains: connected components of the
// relation "supports intersect".
ChainPartition maximal_chains(const SynthesisMatrix& matrix, const std::vector<std::size_t>& columns);

// Round-robin index rule W_i = span{f_{i + jD} : 0 <= j < k}.
std::vector<std::vector<std::size_t>> sffr_grouping(std::size_t d, std::size_t k);

// Unit weight fusion frame of d subspaces of dimension k from the unit norm
// frame for the spectrum. Requires d >= lambda_1 >= ... >= lambda_M >= 2 and
// sum = k d; raises Infeasible if a group fails to be orthogonal.
FusionFrame sffr(const Spectrum& spectrum, std::size_t d, std::size_t k);

// Reference fusion frame: first-fit packing of the unit norm tetris frame into
// t support-disjoint groups, t being the largest row support.
FusionFrame rff(const Spectrum& spectrum, std::size_t n);

struct UffOptions {
  // When false the exchange loop runs even if the reference dimensions do not
  // majorize the target, and fails only if it gets stuck.
  bool require_majorization = true;
};

struct UffResult {
  FusionFrame frame;
  // Sum over i of | |W_i| - d_i | before each exchange and after the last one.
  std::vector<std::size_t> deficit_trace;
};

// Unit weight fusion frame with the prescribed non-increasing dimensions,
// obtained by exchanging vectors between reference groups.
UffResult uff(const Spectrum& spectrum, const std::vector<std::size_t>& dims, const UffOptions& options = {});

// For n >= 2m: a tight unit weight tetris fusion frame with these dimensions
// exists iff the flat-spectrum reference dimensions majorize them.
bool tight_uff_feasible(std::size_t m, std::size_t n, const std::vector<std::size_t>& dims);

// Weighted fusion frame with the given squared weights, dimensions and
// spectrum. Orderings of the repeated weights are searched starting from the
// round-robin arrangement, and so are orderings of the spectrum; rows are
// returned in the order requested.
FusionFrame weighted_fusion(const std::vector<Rational>& weights_sq, const std::vector<std::size_t>& dims,
                            const Spectrum& spectrum, std::size_t budget = default_search_budget());

struct TightExtension {
  Rational bound;
  std::size_t total_subspaces = 0;
  Spectrum residual_spectrum;
  FusionFrame complement;
  FusionFrame combined;
  std::string construction;
};

// Smallest integer bound A admitting an extension of an equidimensional unit
// weight fusion frame to an A-tight one, together with the added subspaces.
TightExtension extend_to_tight(const FusionFrame& frame, const Spectrum& spectrum, std::size_t scan_limit = 1'000'000);

struct SpatialComplementBounds {
  bool feasible = false;
  Rational lower;
  Rational upper;
};

// Bounds of {(W_i^perp, w_i)} for a fusion frame with bounds a <= b.
SpatialComplementBounds spatial_complement_bounds(const FusionFrame& frame, const Rational& a, const Rational& b);

// Orthogonal completion of a Parseval fusion frame with all weights in (0, 1).
NumericFusionFrame naimark_complement_fusion(const FusionFrame& frame);

}  // namespace spectral_tetris
