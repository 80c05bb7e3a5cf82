#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spectral_tetris/exact_numeric.hpp"

namespace spectral_tetris {

// Target eigenvalues of a frame operator. Positive, order significant.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<Rational> values);
  static Spectrum flat(std::size_t count, const Rational& value);

  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational sum() const;
  Spectrum permuted(const std::vector<std::size_t>& order) const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<Rational> values_;
};

// Squared frame vector norms. Positive, order significant.
class NormSequence {
 public:
  NormSequence() = default;
  explicit NormSequence(std::vector<Rational> squared_norms);
  static NormSequence ones(std::size_t count);

  const std::vector<Rational>& squared() const noexcept { return squared_; }
  std::size_t size() const noexcept { return squared_.size(); }
  const Rational& operator[](std::size_t i) const { return squared_[i]; }
  Rational sum() const;
  NormSequence permuted(const std::vector<std::size_t>& order) const;

  friend bool operator==(const NormSequence&, const NormSequence&) = default;

 private:
  std::vector<Rational> squared_;
};

// Permutations are given as "position i takes original index order[i]".
// partition holds n_1 < ... < n_M = N.
struct STReadyCertificate {
  std::vector<std::size_t> norm_order;
  std::vector<std::size_t> eigen_order;
  std::vector<std::size_t> partition;
};

struct SfrPlan {
  std::vector<std::size_t> eigen_order;
  std::vector<std::size_t> partition;
};

struct BlockNumber {
  std::size_t mu = 0;
  // Blockwise ordering that realises mu integral partial sums.
  std::vector<std::size_t> order;
  bool heuristic = false;
};

// Default cap on explored search states, overridden by the environment
// variable SPECTRAL_TETRIS_SEARCH_BUDGET.
std::size_t default_search_budget();

bool majorizes(const std::vector<Rational>& dominating, const std::vector<Rational>& dominated);

// Checks a candidate partition against the ready definition for the sequences
// in the order given. A malformed partition raises InvalidPartition.
bool st_ready_check(const NormSequence& norms, const Spectrum& spectrum,
                    const std::vector<std::size_t>& partition);

// Searches orderings of both sequences for one that is ready. Returns nullopt
// when none exists and raises SearchBudgetExceeded if the cap is hit first.
std::optional<STReadyCertificate> st_ready_search(const NormSequence& norms, const Spectrum& spectrum,
                                                  std::size_t budget = default_search_budget());

// Maximum over orderings of the number of integral partial sums. Exhaustive
// for up to eight eigenvalues; larger inputs use an exact residue grouping
// when it is small enough and a greedy grouping otherwise (flagged).
BlockNumber maximal_block_number(const Spectrum& spectrum);

namespace detail {
std::size_t block_number_exhaustive(const std::vector<Rational>& values, std::vector<std::size_t>* order);
std::optional<std::size_t> block_number_by_residues(const std::vector<Rational>& values,
                                                    std::vector<std::size_t>* order,
                                                    std::size_t state_cap);
std::size_t block_number_greedy(const std::vector<Rational>& values, std::vector<std::size_t>* order);
}  // namespace detail

// Whether a unit norm tight frame of n vectors in dimension m can be built by
// the spectral tetris loop. n < m raises Underdetermined.
bool untf_feasible(std::size_t m, std::size_t n);

// Human readable reason when untf_feasible is false, empty otherwise.
std::string untf_infeasibility_reason(std::size_t m, std::size_t n);

// Floor criterion for m < n < 2m; raises OutOfRange outside that window.
bool untf_floor_condition(std::size_t m, std::size_t n);

// Ordering and partition under which the unit norm construction succeeds, if
// any. The sum must equal n (SumMismatch otherwise).
std::optional<SfrPlan> sfr_feasible(const Spectrum& spectrum, std::size_t n);

bool pnstc_sufficient(const NormSequence& norms, const Spectrum& spectrum);
bool tight_sufficient(const NormSequence& norms, std::size_t m);

}  // namespace spectral_tetris
