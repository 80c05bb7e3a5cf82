#include "spectral_tetris/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "spectral_tetris/construct.hpp"
#include "spectral_tetris/errors.hpp"
#include "spectral_tetris/verify.hpp"

namespace spectral_tetris {

namespace mp = boost::multiprecision;

namespace {

bool supports_meet(const SynthesisMatrix& matrix, std::size_t a, std::size_t b) {
  const auto& x = matrix.column(a);
  const auto& y = matrix.column(b);
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (i->first == j->first) return true;
    if (i->first < j->first) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

RadicalScalar inner(const SynthesisMatrix& matrix, std::size_t a, std::size_t b) {
  RadicalScalar sum;
  for (const auto& [r, x] : matrix.column(a)) {
    const MatrixEntry y = matrix.at(r, b);
    sum += std::get<RadicalScalar>(x) * std::get<RadicalScalar>(y);
  }
  return sum;
}

FusionFrame unit_fusion(const SynthesisMatrix& generator, std::vector<std::vector<std::size_t>> groups) {
  FusionFrame frame;
  frame.m = generator.rows();
  frame.generator = generator;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    frame.dims.push_back(g.size());
    frame.weights_sq.push_back(Rational(1));
  }
  frame.partition = std::move(groups);
  return frame;
}

std::size_t deficit(const std::vector<std::vector<std::size_t>>& w, const std::vector<std::size_t>& dims) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t have = w[i].size();
    total += have > dims[i] ? have - dims[i] : dims[i] - have;
  }
  return total;
}

}  // namespace

ChainPartition maximal_chains(const SynthesisMatrix& matrix, const std::vector<std::size_t>& columns) {
  std::vector<std::size_t> parent(columns.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < columns.size(); ++a) {
    for (std::size_t b = a + 1; b < columns.size(); ++b) {
      if (supports_meet(matrix, columns[a], columns[b])) parent[find(a)] = find(b);
    }
  }
  std::vector<std::vector<std::size_t>> groups(columns.size());
  for (std::size_t a = 0; a < columns.size(); ++a) groups[find(a)].push_back(columns[a]);
  ChainPartition chains;
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    chains.push_back(std::move(g));
  }
  std::sort(chains.begin(), chains.end());
  return chains;
}

std::vector<std::vector<std::size_t>> sffr_grouping(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> groups(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) groups[i].push_back(i + j * d);
  }
  return groups;
}

FusionFrame sffr(const Spectrum& spectrum, std::size_t d, std::size_t k) {
  if (d == 0 || k == 0) fail(ErrorKind::DomainError, "need at least one subspace of positive dimension");
  const auto& lambda = spectrum.values();
  if (!std::is_sorted(lambda.begin(), lambda.end(), std::greater<>())) {
    fail(ErrorKind::Infeasible, "eigenvalues must be non-increasing");
  }
  if (lambda.front() > Rational(static_cast<long long>(d))) {
    fail(ErrorKind::Infeasible, "largest eigenvalue " + to_string(lambda.front()) + " exceeds the subspace count " +
                                    std::to_string(d));
  }
  if (lambda.back() < 2) fail(ErrorKind::Infeasible, "smallest eigenvalue " + to_string(lambda.back()) + " is below 2");
  if (spectrum.sum() != Rational(static_cast<long long>(k * d))) {
    fail(ErrorKind::Infeasible, "eigenvalues sum to " + to_string(spectrum.sum()) + " instead of k*D = " +
                                    std::to_string(k * d));
  }
  const SynthesisMatrix frame = sfr(spectrum, k * d);
  const auto groups = sffr_grouping(d, k);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        if (!inner(frame, groups[i][a], groups[i][b]).is_zero()) {
          fail(ErrorKind::Infeasible, "subspace " + std::to_string(i + 1) + ": vectors " +
                                          std::to_string(groups[i][a] + 1) + " and " + std::to_string(groups[i][b] + 1) +
                                          " are not orthogonal");
        }
      }
    }
  }
  return unit_fusion(frame, groups);
}

FusionFrame rff(const Spectrum& spectrum, std::size_t n) {
  if (spectrum.sum() != Rational(static_cast<long long>(n))) {
    fail(ErrorKind::SumMismatch, "eigenvalues sum to " + to_string(spectrum.sum()) + " instead of " + std::to_string(n));
  }
  const SynthesisMatrix frame = pnstc(NormSequence::ones(n), spectrum);
  std::vector<std::size_t> row_support(frame.rows(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r : frame.support(c)) ++row_support[r];
  }
  const std::size_t t = *std::max_element(row_support.begin(), row_support.end());
  std::vector<std::vector<std::size_t>> buckets(t);
  for (std::size_t c = 0; c < n; ++c) {
    bool placed = false;
    for (auto& bucket : buckets) {
      const bool disjoint = std::none_of(bucket.begin(), bucket.end(), [&](std::size_t o) { return supports_meet(frame, o, c); });
      if (disjoint) {
        bucket.push_back(c);
        placed = true;
        break;
      }
    }
    if (!placed) fail(ErrorKind::Internal, "first-fit packing ran out of groups");
  }
  return unit_fusion(frame, buckets);
}

UffResult uff(const Spectrum& spectrum, const std::vector<std::size_t>& dims, const UffOptions& options) {
  if (dims.empty() || std::find(dims.begin(), dims.end(), 0) != dims.end()) {
    fail(ErrorKind::DomainError, "dimensions must be positive");
  }
  if (!std::is_sorted(dims.begin(), dims.end(), std::greater<>())) {
    fail(ErrorKind::DomainError, "dimensions must be non-increasing");
  }
  const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  const FusionFrame reference = rff(spectrum, n);
  const SynthesisMatrix& frame = reference.generator;

  if (options.require_majorization) {
    std::vector<Rational> have;
    std::vector<Rational> want;
    for (std::size_t s : reference.dims) have.emplace_back(static_cast<long long>(s));
    for (std::size_t s : dims) want.emplace_back(static_cast<long long>(s));
    if (!majorizes(have, want)) {
      fail(ErrorKind::Infeasible, "reference dimensions do not majorize the requested dimensions");
    }
  }

  const std::size_t groups = std::max(dims.size(), reference.partition.size());
  std::vector<std::vector<std::size_t>> w = reference.partition;
  w.resize(groups);
  std::vector<std::size_t> target = dims;
  target.resize(groups, 0);

  UffResult result;
  result.deficit_trace.push_back(deficit(w, target));
  while (result.deficit_trace.back() != 0) {
    std::size_t m = groups;
    for (std::size_t j = groups; j-- > 0;) {
      if (w[j].size() != target[j]) {
        m = j;
        break;
      }
    }
    std::size_t k = groups;
    for (std::size_t j = m; j-- > 0;) {
      if (w[j].size() > target[j]) {
        k = j;
        break;
      }
    }
    if (k == groups) fail(ErrorKind::Infeasible, "no earlier group has a surplus for group " + std::to_string(m + 1));

    // Case 1: a surplus vector that is support-disjoint from all of W_m. The
    // highest such index is taken.
    std::optional<std::size_t> mover;
    for (auto it = w[k].rbegin(); it != w[k].rend(); ++it) {
      const bool free = std::none_of(w[m].begin(), w[m].end(), [&](std::size_t o) { return supports_meet(frame, o, *it); });
      if (free) {
        mover = *it;
        break;
      }
    }
    if (mover) {
      w[k].erase(std::find(w[k].begin(), w[k].end(), *mover));
      w[m].push_back(*mover);
    } else {
      // Case 2: exchange a chain with one more member from W_k than from W_m.
      std::vector<std::size_t> both = w[k];
      both.insert(both.end(), w[m].begin(), w[m].end());
      const std::set<std::size_t> in_k(w[k].begin(), w[k].end());
      const auto chains = maximal_chains(frame, both);
      const std::vector<std::size_t>* picked = nullptr;
      for (auto it = chains.rbegin(); it != chains.rend(); ++it) {
        const auto from_k = static_cast<std::size_t>(std::count_if(it->begin(), it->end(), [&](std::size_t c) { return in_k.count(c) != 0; }));
        if (from_k == it->size() - from_k + 1) {
          picked = &*it;
          break;
        }
      }
      if (picked == nullptr) {
        fail(ErrorKind::Infeasible, "no exchangeable chain between groups " + std::to_string(k + 1) + " and " +
                                        std::to_string(m + 1));
      }
      std::vector<std::size_t> new_k;
      std::vector<std::size_t> new_m;
      const std::set<std::size_t> chain(picked->begin(), picked->end());
      for (std::size_t c : w[k]) (chain.count(c) ? new_m : new_k).push_back(c);
      for (std::size_t c : w[m]) (chain.count(c) ? new_k : new_m).push_back(c);
      w[k] = std::move(new_k);
      w[m] = std::move(new_m);
    }
    const std::size_t now = deficit(w, target);
    if (now >= result.deficit_trace.back()) {
      // Under majorization every exchange shrinks the deficit, so a stall can
      // only mean the unchecked input was out of reach.
      if (options.require_majorization) fail(ErrorKind::Internal, "exchange step did not reduce the dimension deficit");
      fail(ErrorKind::Infeasible, "exchange loop stalled at deficit " + std::to_string(now) + " between groups " +
                                      std::to_string(k + 1) + " and " + std::to_string(m + 1));
    }
    result.deficit_trace.push_back(now);
  }
  w.resize(dims.size());
  result.frame = unit_fusion(frame, w);
  return result;
}

bool tight_uff_feasible(std::size_t m, std::size_t n, const std::vector<std::size_t>& dims) {
  if (m == 0 || n < 2 * m) fail(ErrorKind::OutOfRange, "criterion applies only when n >= 2m");
  if (std::accumulate(dims.begin(), dims.end(), std::size_t{0}) != n) {
    fail(ErrorKind::SumMismatch, "dimensions must sum to the number of vectors");
  }
  const FusionFrame reference =
      rff(Spectrum::flat(m, Rational(static_cast<long long>(n), static_cast<long long>(m))), n);
  std::vector<Rational> have;
  std::vector<Rational> want;
  for (std::size_t s : reference.dims) have.emplace_back(static_cast<long long>(s));
  for (std::size_t s : dims) want.emplace_back(static_cast<long long>(s));
  return majorizes(have, want);
}

namespace {

class WeightedSearch {
 public:
  WeightedSearch(const std::vector<Rational>& weights_sq, const std::vector<std::size_t>& dims,
                 const std::vector<Rational>& lambda, std::size_t& visited, std::size_t budget)
      : w_(weights_sq), left_(dims), remaining_(lambda), visited_(visited), budget_(budget) {
    n_ = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    for (std::size_t round = 0; preferred_.size() < n_; ++round) {
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (round < dims[i]) preferred_.push_back(i);
      }
    }
    matrix_ = SynthesisMatrix(lambda.size(), n_);
    label_.assign(n_, 0);
  }

  bool run() { return step(0, 0); }
  const SynthesisMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& labels() const { return label_; }

 private:
  std::vector<std::size_t> candidates(std::size_t pos) const {
    std::vector<std::size_t> order;
    if (pos < preferred_.size() && left_[preferred_[pos]] > 0) order.push_back(preferred_[pos]);
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (left_[i] > 0 && (order.empty() || order.front() != i)) order.push_back(i);
    }
    return order;
  }

  bool orthogonal_to_group(std::size_t col, std::size_t label) const {
    for (std::size_t other = 0; other < col; ++other) {
      if (label_[other] != label || !supports_meet(matrix_, other, col)) continue;
      if (!inner(matrix_, other, col).is_zero()) return false;
    }
    return true;
  }

  void clear_column(std::size_t col) {
    for (std::size_t r : matrix_.support(col)) matrix_.set(r, col, RadicalScalar());
  }

  bool step(std::size_t pos, std::size_t row) {
    if (++visited_ > budget_) {
      fail(ErrorKind::SearchBudgetExceeded, "weighted fusion search exceeded " + std::to_string(budget_) + " states");
    }
    while (row < remaining_.size() && remaining_[row] == 0) ++row;
    if (pos == n_) return row == remaining_.size();
    if (row == remaining_.size()) return false;
    const Rational x = remaining_[row];
    for (std::size_t label : candidates(pos)) {
      const Rational& a = w_[label];
      if (x >= a) {
        matrix_.set(row, pos, sqrt_of(a));
        label_[pos] = label;
        --left_[label];
        remaining_[row] -= a;
        if (orthogonal_to_group(pos, label) && step(pos + 1, row)) return true;
        remaining_[row] += a;
        ++left_[label];
        clear_column(pos);
        continue;
      }
      if (row + 1 >= remaining_.size() || pos + 1 >= n_) continue;
      --left_[label];
      label_[pos] = label;
      for (std::size_t second : candidates(pos + 1)) {
        const Rational& b = w_[second];
        const Rational spill = a + b - x;
        if (b < x || remaining_[row + 1] < spill) continue;
        matrix_.place_block(block_a_hat(x, a, b), row, pos);
        label_[pos + 1] = second;
        --left_[second];
        remaining_[row] = 0;
        remaining_[row + 1] -= spill;
        if (orthogonal_to_group(pos, label) && orthogonal_to_group(pos + 1, second) && step(pos + 2, row + 1)) {
          return true;
        }
        remaining_[row + 1] += spill;
        remaining_[row] = x;
        ++left_[second];
        clear_column(pos);
        clear_column(pos + 1);
      }
      ++left_[label];
    }
    return false;
  }

  std::vector<Rational> w_;
  std::vector<std::size_t> left_;
  std::vector<Rational> remaining_;
  std::size_t& visited_;
  std::size_t budget_;
  std::size_t n_ = 0;
  std::vector<std::size_t> preferred_;
  SynthesisMatrix matrix_;
  std::vector<std::size_t> label_;
};

}  // namespace

FusionFrame weighted_fusion(const std::vector<Rational>& weights_sq, const std::vector<std::size_t>& dims,
                            const Spectrum& spectrum, std::size_t budget) {
  if (weights_sq.size() != dims.size() || dims.empty()) {
    fail(ErrorKind::DomainError, "need one dimension per weight");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (weights_sq[i] <= 0 || dims[i] == 0) fail(ErrorKind::DomainError, "weights and dimensions must be positive");
    total += weights_sq[i] * Rational(static_cast<long long>(dims[i]));
  }
  if (total != spectrum.sum()) {
    fail(ErrorKind::Infeasible, "sum of d_i w_i^2 is " + to_string(total) + " but eigenvalues sum to " +
                                    to_string(spectrum.sum()));
  }

  std::vector<std::size_t> eigen_order(spectrum.size());
  std::iota(eigen_order.begin(), eigen_order.end(), 0);
  std::vector<std::size_t> sorted = eigen_order;
  std::sort(sorted.begin(), sorted.end(), [&](auto a, auto b) { return spectrum[a] < spectrum[b]; });
  std::set<std::vector<Rational>> tried;
  std::size_t visited = 0;

  auto attempt = [&](const std::vector<std::size_t>& order) -> std::optional<FusionFrame> {
    std::vector<Rational> lambda;
    for (std::size_t i : order) lambda.push_back(spectrum[i]);
    if (!tried.insert(lambda).second) return std::nullopt;
    WeightedSearch search(weights_sq, dims, lambda, visited, budget);
    if (!search.run()) return std::nullopt;
    FusionFrame frame;
    frame.m = spectrum.size();
    frame.weights_sq = weights_sq;
    frame.dims = dims;
    frame.generator = search.matrix().permute_rows(order);
    frame.partition.assign(dims.size(), {});
    for (std::size_t c = 0; c < search.labels().size(); ++c) frame.partition[search.labels()[c]].push_back(c);
    return frame;
  };

  if (auto frame = attempt(eigen_order)) return *frame;
  std::vector<std::size_t> order = sorted;
  do {
    if (auto frame = attempt(order)) return *frame;
  } while (std::next_permutation(order.begin(), order.end()));
  fail(ErrorKind::Infeasible, "no ordering of weights and eigenvalues yields orthogonal subspaces");
}

TightExtension extend_to_tight(const FusionFrame& frame, const Spectrum& spectrum, std::size_t scan_limit) {
  const std::size_t m = spectrum.size();
  const std::size_t d = frame.subspace_count();
  if (d == 0) fail(ErrorKind::DomainError, "fusion frame has no subspaces");
  const std::size_t k = frame.dims.front();
  if (std::any_of(frame.dims.begin(), frame.dims.end(), [&](std::size_t x) { return x != k; }) || k >= m) {
    fail(ErrorKind::DomainError, "all subspaces must share one dimension k < M");
  }
  const auto& lambda = spectrum.values();
  if (!std::is_sorted(lambda.begin(), lambda.end(), std::greater<>()) || lambda.back() < 2 ||
      lambda.front() > Rational(static_cast<long long>(d))) {
    fail(ErrorKind::DomainError, "eigenvalues must satisfy D >= lambda_1 >= ... >= lambda_M >= 2");
  }
  if (!std::all_of(frame.weights_sq.begin(), frame.weights_sq.end(), [](const Rational& w) { return w == 1; })) {
    fail(ErrorKind::DomainError, "extension is defined for unit weights");
  }
  const FusionVerificationReport report = verify_fusion(frame, spectrum);
  if (!report.is_fusion_frame) {
    fail(ErrorKind::DomainError, "input is not a fusion frame: some group is not an orthogonal family");
  }
  if (!report.spectrum_matches.value_or(false)) {
    fail(ErrorKind::SpectrumMismatch, "fusion frame operator does not have the stated spectrum");
  }

  const Rational floor_start = lambda.front() + 2;
  BigInt start = mp::numerator(floor_start) / mp::denominator(floor_start);
  if (Rational(start) < floor_start) ++start;
  for (std::size_t step = 0; step < scan_limit; ++step) {
    const BigInt a = start + step;
    const BigInt am = a * m;
    if (am % k != 0) continue;
    const BigInt n0 = am / k;
    if (n0 <= d) continue;
    if (Rational(a) > lambda.back() + Rational(n0) - Rational(static_cast<long long>(d + 3))) continue;

    TightExtension ext;
    ext.bound = Rational(a);
    ext.total_subspaces = static_cast<std::size_t>(n0);
    std::vector<Rational> residual;
    for (const auto& l : lambda) residual.push_back(Rational(a) - l);
    ext.residual_spectrum = Spectrum(residual);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return residual[x] > residual[y]; });
    std::vector<Rational> sorted_residual;
    for (std::size_t i : order) sorted_residual.push_back(residual[i]);
    FusionFrame complement = sffr(Spectrum(sorted_residual), ext.total_subspaces - d, k);
    complement.generator = complement.generator.permute_rows(order);
    ext.complement = complement;

    FusionFrame combined = frame;
    const std::size_t offset = frame.generator.cols();
    combined.generator = SynthesisMatrix::hstack(frame.generator, complement.generator);
    for (std::size_t i = 0; i < complement.subspace_count(); ++i) {
      std::vector<std::size_t> shifted;
      for (std::size_t c : complement.partition[i]) shifted.push_back(c + offset);
      combined.partition.push_back(shifted);
      combined.dims.push_back(complement.dims[i]);
      combined.weights_sq.push_back(complement.weights_sq[i]);
    }
    ext.combined = std::move(combined);
    ext.construction = "residual spectrum A - lambda completed by the round-robin subspace construction";
    return ext;
  }
  fail(ErrorKind::NoExtension, "no admissible bound within " + std::to_string(scan_limit) + " candidates");
}

SpatialComplementBounds spatial_complement_bounds(const FusionFrame& frame, const Rational& a, const Rational& b) {
  if (a <= 0 || b < a) fail(ErrorKind::DomainError, "fusion frame bounds must satisfy 0 < A <= B");
  const Rational total = std::accumulate(frame.weights_sq.begin(), frame.weights_sq.end(), Rational(0));
  SpatialComplementBounds bounds;
  bounds.feasible = b < total;
  bounds.lower = total - b;
  bounds.upper = total - a;
  return bounds;
}

NumericFusionFrame naimark_complement_fusion(const FusionFrame& frame) {
  for (const auto& w : frame.weights_sq) {
    if (!(w > 0 && w < 1)) fail(ErrorKind::NotApplicable, "every weight must lie strictly between 0 and 1");
  }
  const FusionVerificationReport report = verify_fusion(frame);
  if (!report.is_fusion_frame) fail(ErrorKind::NotApplicable, "input is not a valid fusion frame");
  if (!report.is_tight || report.tight_bound != RadicalScalar(Rational(1))) {
    fail(ErrorKind::NotApplicable, "fusion frame is not Parseval");
  }
  NumericFusionFrame result;
  const Eigen::MatrixXd complement = naimark_complement(frame.generator);
  result.m = static_cast<std::size_t>(complement.rows());
  result.generator = complement;
  result.dims = frame.dims;
  result.partition = frame.partition;
  for (const auto& w : frame.weights_sq) result.weights_sq.push_back(1 - w);
  return result;
}

}  // namespace spectral_tetris
