#include "spectral_tetris/sequences.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

namespace mp = boost::multiprecision;

namespace {

constexpr std::size_t kDefaultBudget = 10'000'000;

bool is_integral(const Rational& r) { return mp::denominator(r) == 1; }

BigInt floor_of(const Rational& r) {
  BigInt q = mp::numerator(r) / mp::denominator(r);
  if (r < 0 && Rational(q) != r) --q;
  return q;
}

Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

template <class T>
std::vector<T> permute(const std::vector<T>& values, const std::vector<std::size_t>& order) {
  if (order.size() != values.size()) fail(ErrorKind::InvalidArgument, "permutation length mismatch");
  std::vector<T> result;
  result.reserve(values.size());
  std::vector<bool> seen(values.size(), false);
  for (std::size_t i : order) {
    if (i >= values.size() || seen[i]) fail(ErrorKind::InvalidArgument, "not a permutation");
    seen[i] = true;
    result.push_back(values[i]);
  }
  return result;
}

// Groups equal values into classes. classes[i] is the class id of values[i];
// members[c] lists the original indices in increasing order.
struct ValueClasses {
  std::vector<Rational> distinct;
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> members;

  explicit ValueClasses(const std::vector<Rational>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    class_of.resize(values.size());
    for (std::size_t i : idx) {
      if (distinct.empty() || distinct.back() != values[i]) {
        distinct.push_back(values[i]);
        members.emplace_back();
      }
      class_of[i] = distinct.size() - 1;
      members.back().push_back(i);
    }
    for (auto& m : members) std::sort(m.begin(), m.end());
  }

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c;
    for (const auto& m : members) c.push_back(m.size());
    return c;
  }

  // Turns a sequence of class ids into original indices, consuming each
  // class's members in increasing order.
  std::vector<std::size_t> to_indices(const std::vector<std::size_t>& class_sequence) const {
    std::vector<std::size_t> used(members.size(), 0);
    std::vector<std::size_t> order;
    for (std::size_t c : class_sequence) order.push_back(members[c][used[c]++]);
    return order;
  }
};

// Visits every distinct arrangement of a multiset of class ids in
// lexicographic order; the visitor returns true to stop.
bool for_each_arrangement(std::vector<std::size_t> sequence,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::sort(sequence.begin(), sequence.end());
  do {
    if (visit(sequence)) return true;
  } while (std::next_permutation(sequence.begin(), sequence.end()));
  return false;
}

std::vector<std::size_t> class_sequence_in_input_order(const ValueClasses& classes) {
  return classes.class_of;
}

}  // namespace

Spectrum::Spectrum(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) fail(ErrorKind::DomainError, "spectrum must be nonempty");
  for (const auto& v : values_) {
    if (v <= 0) fail(ErrorKind::DomainError, "eigenvalues must be positive, got " + to_string(v));
  }
}

Spectrum Spectrum::flat(std::size_t count, const Rational& value) {
  return Spectrum(std::vector<Rational>(count, value));
}

Rational Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), Rational(0)); }

Spectrum Spectrum::permuted(const std::vector<std::size_t>& order) const {
  return Spectrum(permute(values_, order));
}

NormSequence::NormSequence(std::vector<Rational> squared_norms) : squared_(std::move(squared_norms)) {
  if (squared_.empty()) fail(ErrorKind::DomainError, "norm sequence must be nonempty");
  for (const auto& v : squared_) {
    if (v <= 0) fail(ErrorKind::DomainError, "squared norms must be positive, got " + to_string(v));
  }
}

NormSequence NormSequence::ones(std::size_t count) {
  return NormSequence(std::vector<Rational>(count, Rational(1)));
}

Rational NormSequence::sum() const { return std::accumulate(squared_.begin(), squared_.end(), Rational(0)); }

NormSequence NormSequence::permuted(const std::vector<std::size_t>& order) const {
  return NormSequence(permute(squared_, order));
}

std::size_t default_search_budget() {
  if (const char* env = std::getenv("SPECTRAL_TETRIS_SEARCH_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultBudget;
}

bool majorizes(const std::vector<Rational>& dominating, const std::vector<Rational>& dominated) {
  std::vector<Rational> a = dominating;
  std::vector<Rational> b = dominated;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  const std::size_t len = std::max(a.size(), b.size());
  a.resize(len, Rational(0));
  b.resize(len, Rational(0));
  Rational sa = 0;
  Rational sb = 0;
  for (std::size_t i = 0; i < len; ++i) {
    sa += a[i];
    sb += b[i];
    if (sa < sb) return false;
  }
  return sa == sb;
}

bool st_ready_check(const NormSequence& norms, const Spectrum& spectrum,
                    const std::vector<std::size_t>& partition) {
  const std::size_t n = norms.size();
  const std::size_t m = spectrum.size();
  if (partition.size() != m) fail(ErrorKind::InvalidPartition, "partition must have one entry per eigenvalue");
  for (std::size_t k = 0; k < m; ++k) {
    if (partition[k] > n) fail(ErrorKind::InvalidPartition, "partition entry exceeds the number of vectors");
    if (k > 0 && partition[k] <= partition[k - 1]) {
      fail(ErrorKind::InvalidPartition, "partition must be strictly increasing");
    }
  }
  if (partition.back() != n) fail(ErrorKind::InvalidPartition, "partition must end at the number of vectors");
  if (norms.sum() != spectrum.sum()) return false;

  std::vector<Rational> a_prefix(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) a_prefix[j + 1] = a_prefix[j] + norms[j];
  Rational lambda_prefix = 0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    lambda_prefix += spectrum[k];
    const std::size_t nk = partition[k];
    if (!(a_prefix[nk] <= lambda_prefix && lambda_prefix < a_prefix[nk + 1])) return false;
    if (a_prefix[nk] < lambda_prefix) {
      if (partition[k + 1] - nk < 2) return false;
      if (norms[nk + 1] < lambda_prefix - a_prefix[nk]) return false;
    }
  }
  return true;
}

namespace {

class ReadySearch {
 public:
  ReadySearch(const ValueClasses& classes, std::vector<Rational> lambda_prefix, std::size_t n,
              std::size_t& visited, std::size_t budget)
      : classes_(classes), lambda_(std::move(lambda_prefix)), n_(n), visited_(visited), budget_(budget) {
    remaining_ = classes_.counts();
  }

  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> run() {
    State start;
    if (dfs(start)) return std::make_pair(classes_.to_indices(chosen_), resolved_);
    return std::nullopt;
  }

 private:
  struct State {
    std::size_t j = 0;
    Rational a_prefix = 0;
    std::size_t resolved = 0;
    long long last_n = -1;
    bool last_gap = false;
    std::size_t pending_pos = 0;
    Rational pending_min = 0;
    std::size_t last_class = static_cast<std::size_t>(-1);
  };

  std::string key(const State& s) const {
    std::string k;
    for (std::size_t c : remaining_) k += std::to_string(c) + ',';
    k += '|' + std::to_string(s.last_class) + '|' + std::to_string(s.resolved) + '|' +
         std::to_string(std::min<long long>(static_cast<long long>(s.j) - s.last_n, 3)) + '|' +
         (s.last_gap ? '1' : '0') + '|' + std::to_string(s.pending_pos > s.j ? s.pending_pos - s.j : 0);
    return k;
  }

  bool dfs(const State& s) {
    if (++visited_ > budget_) {
      fail(ErrorKind::SearchBudgetExceeded,
           "ready search exceeded " + std::to_string(budget_) + " states");
    }
    const std::size_t m = lambda_.size();
    if (s.j == n_) {
      if (s.resolved + 1 != m) return false;
      const long long nm = static_cast<long long>(n_);
      if (nm <= s.last_n) return false;
      if (s.last_gap && nm - s.last_n < 2) return false;
      resolved_.push_back(n_);
      return true;
    }
    const std::string memo_key = key(s);
    if (failed_.count(memo_key) != 0) return false;

    for (std::size_t c = 0; c < remaining_.size(); ++c) {
      if (remaining_[c] == 0) continue;
      const Rational& value = classes_.distinct[c];
      State next = s;
      next.j = s.j + 1;
      next.a_prefix = s.a_prefix + value;
      next.last_class = c;
      if (s.pending_pos == next.j && value < s.pending_min) continue;
      const std::size_t resolved_before = resolved_.size();
      bool ok = true;
      while (ok && next.resolved + 1 < m && next.a_prefix >= lambda_[next.resolved]) {
        const Rational& target = lambda_[next.resolved];
        const bool gap = next.a_prefix != target;
        const long long nk = gap ? static_cast<long long>(s.j) : static_cast<long long>(next.j);
        if (nk <= next.last_n) ok = false;
        if (next.last_gap && nk - next.last_n < 2) ok = false;
        if (!ok) break;
        if (gap) {
          next.pending_pos = next.j + 1;
          next.pending_min = target - s.a_prefix;
        }
        next.last_n = nk;
        next.last_gap = gap;
        resolved_.push_back(static_cast<std::size_t>(nk));
        ++next.resolved;
      }
      if (ok) {
        --remaining_[c];
        chosen_.push_back(c);
        if (dfs(next)) return true;
        chosen_.pop_back();
        ++remaining_[c];
      }
      resolved_.resize(resolved_before);
    }
    failed_.insert(memo_key);
    return false;
  }

  const ValueClasses& classes_;
  std::vector<Rational> lambda_;
  std::size_t n_;
  std::size_t& visited_;
  std::size_t budget_;
  std::vector<std::size_t> remaining_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> resolved_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

std::optional<STReadyCertificate> st_ready_search(const NormSequence& norms, const Spectrum& spectrum,
                                                  std::size_t budget) {
  if (norms.sum() != spectrum.sum()) return std::nullopt;
  const ValueClasses norm_classes(norms.squared());
  const ValueClasses eigen_classes(spectrum.values());
  std::size_t visited = 0;
  std::optional<STReadyCertificate> found;
  auto try_order = [&](const std::vector<std::size_t>& eigen_class_sequence) {
    const auto eigen_order = eigen_classes.to_indices(eigen_class_sequence);
    std::vector<Rational> prefix;
    Rational running = 0;
    for (std::size_t i : eigen_order) prefix.push_back(running += spectrum[i]);
    ReadySearch search(norm_classes, prefix, norms.size(), visited, budget);
    if (auto result = search.run()) {
      found = STReadyCertificate{result->first, eigen_order, result->second};
      return true;
    }
    return false;
  };
  // The input order is tried first so that already ordered data keeps its
  // row layout.
  if (try_order(class_sequence_in_input_order(eigen_classes))) return found;
  for_each_arrangement(eigen_classes.class_of, try_order);
  return found;
}

namespace detail {

std::size_t block_number_exhaustive(const std::vector<Rational>& values, std::vector<std::size_t>* order) {
  const ValueClasses classes(values);
  std::size_t best = 0;
  std::vector<std::size_t> best_sequence = classes.class_of;
  bool first = true;
  for_each_arrangement(classes.class_of, [&](const std::vector<std::size_t>& seq) {
    std::size_t count = 0;
    Rational running = 0;
    for (std::size_t c : seq) {
      running += classes.distinct[c];
      if (is_integral(running)) ++count;
    }
    if (first || count > best) {
      best = count;
      best_sequence = seq;
      first = false;
    }
    return false;
  });
  if (order != nullptr) *order = classes.to_indices(best_sequence);
  return best;
}

std::optional<std::size_t> block_number_by_residues(const std::vector<Rational>& values,
                                                    std::vector<std::size_t>* order,
                                                    std::size_t state_cap) {
  std::vector<std::size_t> integral;
  std::vector<Rational> residues;
  std::map<Rational, std::vector<std::size_t>> by_residue;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rational r = frac_of(values[i]);
    if (r == 0) {
      integral.push_back(i);
    } else {
      by_residue[r].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> members;
  for (auto& [r, idx] : by_residue) {
    residues.push_back(r);
    members.push_back(idx);
  }
  std::size_t states = 1;
  for (const auto& m : members) {
    states *= m.size() + 1;
    if (states > state_cap) return std::nullopt;
  }

  const std::size_t classes = residues.size();
  // best[counts] = (groups, chosen sub-multiset) for the remaining counts.
  std::map<std::vector<std::size_t>, std::pair<std::size_t, std::vector<std::size_t>>> memo;
  std::function<std::size_t(const std::vector<std::size_t>&)> solve = [&](const std::vector<std::size_t>& left) {
    if (auto it = memo.find(left); it != memo.end()) return it->second.first;
    std::size_t best = 0;
    std::vector<std::size_t> best_take;
    std::vector<std::size_t> take(classes, 0);
    // Enumerate every nonempty sub-multiset with an integral residue sum.
    while (true) {
      std::size_t c = 0;
      while (c < classes && take[c] == left[c]) take[c++] = 0;
      if (c == classes) break;
      ++take[c];
      Rational sum = 0;
      for (std::size_t i = 0; i < classes; ++i) sum += residues[i] * take[i];
      if (!is_integral(sum)) continue;
      std::vector<std::size_t> rest = left;
      for (std::size_t i = 0; i < classes; ++i) rest[i] -= take[i];
      const std::size_t value = 1 + solve(rest);
      if (value > best) {
        best = value;
        best_take = take;
      }
    }
    memo[left] = {best, best_take};
    return best;
  };
  std::vector<std::size_t> all;
  for (const auto& m : members) all.push_back(m.size());
  const std::size_t groups = solve(all);

  if (order != nullptr) {
    order->assign(integral.begin(), integral.end());
    std::vector<std::size_t> used(classes, 0);
    std::vector<std::size_t> left = all;
    while (true) {
      const auto& entry = memo[left];
      if (entry.first == 0) break;
      for (std::size_t i = 0; i < classes; ++i) {
        for (std::size_t t = 0; t < entry.second[i]; ++t) order->push_back(members[i][used[i]++]);
        left[i] -= entry.second[i];
      }
    }
    for (std::size_t i = 0; i < classes; ++i) {
      while (used[i] < members[i].size()) order->push_back(members[i][used[i]++]);
    }
  }
  return integral.size() + groups;
}

std::size_t block_number_greedy(const std::vector<Rational>& values, std::vector<std::size_t>* order) {
  std::vector<std::size_t> result;
  std::vector<std::size_t> fractional;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (is_integral(values[i])) {
      result.push_back(i);
    } else {
      fractional.push_back(i);
    }
  }
  std::size_t blocks = result.size();
  auto integral_sum = [&](std::initializer_list<std::size_t> picks) {
    Rational s = 0;
    for (std::size_t p : picks) s += values[fractional[p]];
    return is_integral(s);
  };
  bool progress = true;
  while (progress && !fractional.empty()) {
    progress = false;
    const std::size_t f = fractional.size();
    std::vector<std::size_t> pick;
    for (std::size_t a = 0; a < f && pick.empty(); ++a) {
      for (std::size_t b = a + 1; b < f && pick.empty(); ++b) {
        if (integral_sum({a, b})) pick = {a, b};
      }
    }
    for (std::size_t a = 0; a < f && pick.empty(); ++a) {
      for (std::size_t b = a + 1; b < f && pick.empty(); ++b) {
        for (std::size_t c = b + 1; c < f && pick.empty(); ++c) {
          if (integral_sum({a, b, c})) pick = {a, b, c};
        }
      }
    }
    if (pick.empty()) break;
    Rational rest = 0;
    for (std::size_t i = 0; i < f; ++i) rest += values[fractional[i]];
    for (std::size_t p : pick) result.push_back(fractional[p]);
    for (auto it = pick.rbegin(); it != pick.rend(); ++it) fractional.erase(fractional.begin() + *it);
    ++blocks;
    progress = true;
  }
  Rational rest = 0;
  for (std::size_t i : fractional) {
    result.push_back(i);
    rest += values[i];
  }
  if (!fractional.empty() && is_integral(rest)) ++blocks;
  if (order != nullptr) *order = result;
  return blocks;
}

}  // namespace detail

BlockNumber maximal_block_number(const Spectrum& spectrum) {
  BlockNumber result;
  const auto& values = spectrum.values();
  if (values.size() <= 8) {
    result.mu = detail::block_number_exhaustive(values, &result.order);
    return result;
  }
  if (auto mu = detail::block_number_by_residues(values, &result.order, 4096)) {
    result.mu = *mu;
    return result;
  }
  result.mu = detail::block_number_greedy(values, &result.order);
  result.heuristic = true;
  return result;
}

bool untf_feasible(std::size_t m, std::size_t n) {
  if (m == 0) fail(ErrorKind::DomainError, "dimension must be positive");
  if (n < m) {
    fail(ErrorKind::Underdetermined,
         std::to_string(n) + " vectors cannot span dimension " + std::to_string(m));
  }
  const Rational lambda(n, m);
  if (lambda >= 2) return true;
  // (2L-1)/L is always in lowest terms, so compare against the reduced form.
  return mp::numerator(lambda) == 2 * mp::denominator(lambda) - 1;
}

std::string untf_infeasibility_reason(std::size_t m, std::size_t n) {
  if (untf_feasible(m, n)) return {};
  const std::string lambda = to_string(Rational(n, m));
  return "lambda = " + lambda + " < 2 and " + lambda + " ≠ (2L−1)/L for every positive integer L";
}

bool untf_floor_condition(std::size_t m, std::size_t n) {
  if (!(m < n && n < 2 * m)) {
    fail(ErrorKind::OutOfRange, "floor criterion applies only when m < n < 2m");
  }
  const Rational lambda(n, m);
  for (std::size_t k = 1; k < m; ++k) {
    const Rational k_lambda = lambda * k;
    if (is_integral(k_lambda)) continue;
    if (Rational(floor_of(k_lambda)) > lambda * (k + 1) - 2) return false;
  }
  return true;
}

std::optional<SfrPlan> sfr_feasible(const Spectrum& spectrum, std::size_t n) {
  if (spectrum.sum() != Rational(n)) {
    fail(ErrorKind::SumMismatch, "eigenvalues sum to " + to_string(spectrum.sum()) + ", expected " +
                                     std::to_string(n));
  }
  const ValueClasses classes(spectrum.values());
  const std::size_t m = spectrum.size();
  std::optional<SfrPlan> plan;
  std::size_t visited = 0;
  const std::size_t budget = default_search_budget();
  auto try_order = [&](const std::vector<std::size_t>& seq) {
    if (++visited > budget) fail(ErrorKind::SearchBudgetExceeded, "eigenvalue ordering search exceeded its budget");
    const auto order = classes.to_indices(seq);
    std::vector<std::size_t> partition;
    Rational running = 0;
    bool previous_gap = false;
    for (std::size_t k = 0; k < m; ++k) {
      running += spectrum[order[k]];
      const std::size_t nk = k + 1 == m ? n : static_cast<std::size_t>(floor_of(running));
      if (!partition.empty()) {
        if (nk <= partition.back()) return false;
        if (previous_gap && nk - partition.back() < 2) return false;
      }
      previous_gap = Rational(nk) != running;
      partition.push_back(nk);
    }
    plan = SfrPlan{order, partition};
    return true;
  };
  if (try_order(class_sequence_in_input_order(classes))) return plan;
  for_each_arrangement(classes.class_of, try_order);
  return plan;
}

bool pnstc_sufficient(const NormSequence& norms, const Spectrum& spectrum) {
  if (norms.sum() != spectrum.sum()) return false;
  std::vector<Rational> a = norms.squared();
  std::vector<Rational> lambda = spectrum.values();
  std::sort(a.begin(), a.end());
  std::sort(lambda.begin(), lambda.end());
  const std::size_t n = a.size();
  const std::size_t m = lambda.size();
  for (std::size_t l = 0; l < m; ++l) {
    // One-based indices N-2L and N-2L-1 must both exist.
    if (n < 2 * l + 2) return false;
    if (a[n - 2 * l - 1] + a[n - 2 * l - 2] > lambda[m - l - 1]) return false;
  }
  return true;
}

bool tight_sufficient(const NormSequence& norms, std::size_t m) {
  if (m == 0) fail(ErrorKind::DomainError, "dimension must be positive");
  std::vector<Rational> a = norms.squared();
  std::sort(a.begin(), a.end(), std::greater<>());
  const Rational top = a[0] + (a.size() > 1 ? a[1] : Rational(0));
  return top <= norms.sum() / m;
}

}  // namespace spectral_tetris
