#pragma once

// Test-side helpers. The oracles here deliberately avoid the library's own
// search code so that agreement between the two is meaningful.

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_tetris/exact_numeric.hpp"
#include "spectral_tetris/synthesis_matrix.hpp"

namespace st_test {

using spectral_tetris::Rational;
using spectral_tetris::RadicalScalar;
using spectral_tetris::SynthesisMatrix;

// Cell notation: "0", an integer or p/q, "sP/Q" for sqrt(P/Q), optional
// leading '-'. Rows are separated by ';' or newlines, cells by whitespace.
inline RadicalScalar cell(const std::string& token) {
  std::string t = token;
  bool negative = false;
  if (!t.empty() && t[0] == '-') {
    negative = true;
    t = t.substr(1);
  }
  RadicalScalar value;
  if (!t.empty() && t[0] == 's') {
    value = spectral_tetris::sqrt_of(spectral_tetris::parse_rational(t.substr(1)));
  } else {
    value = RadicalScalar(spectral_tetris::parse_rational(t));
  }
  return negative ? -value : value;
}

inline SynthesisMatrix matrix(const std::string& text) {
  std::vector<std::vector<RadicalScalar>> rows;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ';', '\n');
  std::istringstream lines(normalized);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::vector<RadicalScalar> row;
    std::string token;
    while (cells >> token) row.push_back(cell(token));
    if (!row.empty()) rows.push_back(row);
  }
  SynthesisMatrix result(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != result.cols()) throw std::runtime_error("ragged matrix literal");
    for (std::size_t c = 0; c < rows[r].size(); ++c) result.set(r, c, rows[r][c]);
  }
  return result;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(ST_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::vector<Rational> rationals(std::initializer_list<const char*> items) {
  std::vector<Rational> values;
  for (const char* item : items) values.push_back(spectral_tetris::parse_rational(item));
  return values;
}

inline std::vector<Rational> repeat(const Rational& value, std::size_t count) {
  return std::vector<Rational>(count, value);
}

// Literal reading of the ready definition for one fixed ordering and one
// candidate partition. Inputs are integers after a common rescaling.
inline bool definition_holds(const std::vector<long long>& a, const std::vector<long long>& lambda,
                             const std::vector<std::size_t>& partition) {
  const std::size_t n = a.size();
  const std::size_t m = lambda.size();
  if (partition.size() != m || partition.back() != n) return false;
  for (std::size_t k = 1; k < m; ++k) {
    if (partition[k] <= partition[k - 1]) return false;
  }
  auto a_sum = [&](std::size_t upto) {
    long long s = 0;
    for (std::size_t i = 0; i < upto && i < n; ++i) s += a[i];
    return s;
  };
  if (a_sum(n) != std::accumulate(lambda.begin(), lambda.end(), 0LL)) return false;
  for (std::size_t k = 1; k < m; ++k) {
    const std::size_t nk = partition[k - 1];
    const long long l_sum = std::accumulate(lambda.begin(), lambda.begin() + static_cast<long>(k), 0LL);
    if (nk + 1 > n) return false;
    const long long left = a_sum(nk);
    const long long right = a_sum(nk + 1);
    if (!(left <= l_sum && l_sum < right)) return false;
    if (left < l_sum) {
      if (partition[k] - nk < 2) return false;
      if (nk + 2 > n) return false;
      if (a[nk + 1] < l_sum - left) return false;
    }
  }
  return true;
}

inline std::vector<long long> rescale(const std::vector<Rational>& values, const spectral_tetris::BigInt& scale) {
  std::vector<long long> out;
  for (const auto& v : values) {
    const Rational scaled = v * Rational(scale);
    out.push_back(static_cast<long long>(boost::multiprecision::numerator(scaled)));
  }
  return out;
}

// Every ordering of both sequences against every partition.
inline bool brute_force_ready(const std::vector<Rational>& a_in, const std::vector<Rational>& lambda_in) {
  spectral_tetris::BigInt scale = 1;
  for (const auto* list : {&a_in, &lambda_in}) {
    for (const auto& v : *list) {
      const spectral_tetris::BigInt d = boost::multiprecision::denominator(v);
      scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
  }
  std::vector<long long> a = rescale(a_in, scale);
  std::vector<long long> lambda = rescale(lambda_in, scale);
  std::sort(a.begin(), a.end());
  std::sort(lambda.begin(), lambda.end());
  const std::size_t n = a.size();
  const std::size_t m = lambda.size();
  std::vector<std::size_t> pick(m - 1);
  do {
    std::vector<long long> aa = a;
    do {
      std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t slot, std::size_t from) -> bool {
        if (slot == m - 1) {
          std::vector<std::size_t> partition = pick;
          partition.push_back(n);
          return definition_holds(aa, lambda, partition);
        }
        for (std::size_t v = from; v < n; ++v) {
          pick[slot] = v;
          if (choose(slot + 1, v + 1)) return true;
        }
        return false;
      };
      if (choose(0, 0)) return true;
    } while (std::next_permutation(aa.begin(), aa.end()));
  } while (std::next_permutation(lambda.begin(), lambda.end()));
  return false;
}

// Maximum count of integral partial sums over all orderings.
inline std::size_t brute_force_mu(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  std::size_t best = 0;
  do {
    Rational s = 0;
    std::size_t count = 0;
    for (const auto& v : values) {
      s += v;
      if (boost::multiprecision::denominator(s) == 1) ++count;
    }
    best = std::max(best, count);
  } while (std::next_permutation(values.begin(), values.end()));
  return best;
}

// Column inner product computed entry by entry through the public accessor.
inline RadicalScalar column_dot(const SynthesisMatrix& s, std::size_t a, std::size_t b) {
  RadicalScalar sum;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    sum += std::get<RadicalScalar>(s.at(r, a)) * std::get<RadicalScalar>(s.at(r, b));
  }
  return sum;
}

inline RadicalScalar row_dot(const SynthesisMatrix& s, std::size_t a, std::size_t b) {
  RadicalScalar sum;
  for (std::size_t c = 0; c < s.cols(); ++c) {
    sum += std::get<RadicalScalar>(s.at(a, c)) * std::get<RadicalScalar>(s.at(b, c));
  }
  return sum;
}

// Independent exact check: rows orthogonal with the given square sums and
// columns with the given squared norms.
inline bool frame_ok(const SynthesisMatrix& s, const std::vector<Rational>& lambda, const std::vector<Rational>& norms) {
  if (s.rows() != lambda.size() || s.cols() != norms.size()) return false;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (row_dot(s, i, i) != RadicalScalar(lambda[i])) return false;
    for (std::size_t j = i + 1; j < s.rows(); ++j) {
      if (!row_dot(s, i, j).is_zero()) return false;
    }
  }
  for (std::size_t c = 0; c < s.cols(); ++c) {
    if (column_dot(s, c, c) != RadicalScalar(norms[c])) return false;
  }
  return true;
}

inline std::vector<std::vector<std::size_t>> one_based(const std::vector<std::vector<std::size_t>>& groups) {
  auto copy = groups;
  for (auto& g : copy) {
    for (auto& c : g) ++c;
  }
  return copy;
}

}  // namespace st_test
