#include "spectral_tetris/construct.hpp"

#include <Eigen/Dense>
#include <numeric>
#include <sstream>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

namespace {

std::string row_label(std::size_t m) { return "row " + std::to_string(m + 1); }
std::string vector_label(std::size_t n) { return "vector " + std::to_string(n + 1); }

// Shared tetris loop for prescribed norms. When swaps is non-null the
// neighbour exchange rule is active and failures become ReorderFailed.
SynthesisMatrix run_tetris(std::vector<Rational> a, const Spectrum& spectrum, std::vector<SwapRecord>* swaps,
                           std::vector<Rational>* final_order) {
  const std::size_t n_total = a.size();
  const std::size_t m_total = spectrum.size();
  const ErrorKind failure = swaps != nullptr ? ErrorKind::ReorderFailed : ErrorKind::NotSTReady;
  const Rational norm_sum = std::accumulate(a.begin(), a.end(), Rational(0));
  if (norm_sum != spectrum.sum()) {
    fail(failure, "squared norms sum to " + to_string(norm_sum) + " but eigenvalues sum to " +
                      to_string(spectrum.sum()));
  }
  std::vector<Rational> remaining = spectrum.values();
  SynthesisMatrix result(m_total, n_total);
  std::size_t n = 0;
  for (std::size_t m = 0; m < m_total; ++m) {
    while (remaining[m] != 0) {
      if (n >= n_total) {
        fail(failure, row_label(m) + " still needs weight " + to_string(remaining[m]) + " after every vector is placed");
      }
      if (remaining[m] >= a[n]) {
        result.set(m, n, sqrt_of(a[n]));
        remaining[m] -= a[n];
        ++n;
        continue;
      }
      std::string problem;
      const Rational x = remaining[m];
      if (m + 1 >= m_total) {
        problem = vector_label(n) + " with squared norm " + to_string(a[n]) + " exceeds the remaining weight " +
                  to_string(x) + " of the last row";
      } else if (n + 1 >= n_total) {
        problem = row_label(m) + " needs a 2x2 block but only " + vector_label(n) + " is left";
      } else {
        const Rational spill = a[n] + a[n + 1] - x;
        const bool lemma = a[n + 1] >= x;
        if (!lemma) {
          problem = "no 2x2 block at " + row_label(m) + " for " + vector_label(n) + " and " + vector_label(n + 1) +
                    ": squared norms " + to_string(a[n]) + ", " + to_string(a[n + 1]) + " straddle " + to_string(x);
        } else if (remaining[m + 1] < spill) {
          problem = "2x2 block at " + row_label(m) + " spills " + to_string(spill) + " into " + row_label(m + 1) +
                    " which has only " + to_string(remaining[m + 1]) + " left";
        } else {
          result.place_block(block_a_hat(x, a[n], a[n + 1]), m, n);
          remaining[m + 1] -= spill;
          remaining[m] = 0;
          n += 2;
          continue;
        }
      }
      if (swaps != nullptr && n + 1 < n_total && x > a[n + 1]) {
        std::swap(a[n], a[n + 1]);
        swaps->push_back({n, n + 1});
        continue;
      }
      fail(failure, problem);
    }
  }
  if (n != n_total) fail(failure, std::to_string(n_total - n) + " vectors left over after the last row");
  if (final_order != nullptr) *final_order = a;
  return result;
}

}  // namespace

SynthesisMatrix pnstc(const NormSequence& norms, const Spectrum& spectrum) {
  return run_tetris(norms.squared(), spectrum, nullptr, nullptr);
}

ReorderedFrame pnstc_str(const NormSequence& norms, const Spectrum& spectrum) {
  std::vector<SwapRecord> swaps;
  std::vector<Rational> order;
  SynthesisMatrix matrix = run_tetris(norms.squared(), spectrum, &swaps, &order);
  return {std::move(matrix), std::move(swaps), NormSequence(order)};
}

NormSequence apply_swaps(const NormSequence& norms, const std::vector<SwapRecord>& swaps) {
  std::vector<Rational> a = norms.squared();
  for (const auto& s : swaps) {
    if (s.first >= a.size() || s.second >= a.size()) fail(ErrorKind::OutOfRange, "swap position out of range");
    std::swap(a[s.first], a[s.second]);
  }
  return NormSequence(a);
}

SynthesisMatrix sfr(const Spectrum& spectrum, std::size_t n) {
  if (spectrum.sum() != Rational(n)) {
    fail(ErrorKind::Infeasible, "eigenvalues sum to " + to_string(spectrum.sum()) + " instead of " + std::to_string(n));
  }
  const std::size_t m_total = spectrum.size();
  std::vector<Rational> remaining = spectrum.values();
  SynthesisMatrix result(m_total, n);
  std::size_t col = 0;
  for (std::size_t m = 0; m < m_total; ++m) {
    while (remaining[m] > 0) {
      if (remaining[m] >= 1) {
        if (col >= n) fail(ErrorKind::Infeasible, "ran out of vectors at " + row_label(m));
        result.set(m, col++, RadicalScalar::integer(1));
        remaining[m] -= 1;
        continue;
      }
      const Rational x = remaining[m];
      if (m + 1 >= m_total || col + 2 > n) {
        fail(ErrorKind::Infeasible, row_label(m) + " ends with weight " + to_string(x) + " < 1 and no row below");
      }
      if (remaining[m + 1] < 2 - x) {
        fail(ErrorKind::Infeasible, "block at " + row_label(m) + " spills " + to_string(2 - x) + " into " +
                                        row_label(m + 1) + " which has only " + to_string(remaining[m + 1]));
      }
      result.place_block(block_a(x), m, col);
      col += 2;
      remaining[m + 1] -= 2 - x;
      remaining[m] = 0;
    }
  }
  if (col != n) fail(ErrorKind::Infeasible, "not every vector was placed");
  return result;
}

SynthesisMatrix construct_untf(std::size_t m, std::size_t n) {
  if (!untf_feasible(m, n)) fail(ErrorKind::Infeasible, untf_infeasibility_reason(m, n));
  try {
    return pnstc(NormSequence::ones(n), Spectrum::flat(m, Rational(static_cast<long long>(n), static_cast<long long>(m))));
  } catch (const Error& e) {
    fail(ErrorKind::Internal, std::string("feasible parameters failed to tile: ") + e.what());
  }
}

SynthesisMatrix construct_untf_dft(std::size_t m, std::size_t n) {
  if (m == 0) fail(ErrorKind::DomainError, "dimension must be positive");
  if (n < m) fail(ErrorKind::Underdetermined, std::to_string(n) + " vectors cannot span dimension " + std::to_string(m));
  const Rational lambda(static_cast<long long>(n), static_cast<long long>(m));
  std::vector<Rational> remaining(m, lambda);
  SynthesisMatrix result(m, n);
  std::vector<std::string> trace;
  auto stuck = [&](const std::string& why) {
    std::ostringstream out;
    out << why << "; trace:";
    for (const auto& step : trace) out << ' ' << step << ';';
    fail(ErrorKind::DftPathStuck, out.str());
  };
  std::size_t col = 0;
  for (std::size_t row = 0; row < m; ++row) {
    while (remaining[row] > 0) {
      const Rational r = remaining[row];
      // A singleton is safe when what it leaves is either nothing or at
      // least one full vector's worth.
      if (r == 1 || r >= 2) {
        if (col >= n) stuck("no vectors left for " + row_label(row));
        result.set(row, col++, RadicalScalar::integer(1));
        remaining[row] -= 1;
        trace.push_back(row_label(row) + " singleton");
        continue;
      }
      std::size_t chosen = 0;
      for (std::size_t j = 2; row + j <= m && col + j <= n; ++j) {
        const Rational spill = dft_trailing_weight(j, r);
        bool fits = true;
        for (std::size_t i = 1; i < j && fits; ++i) fits = remaining[row + i] >= spill;
        if (fits) {
          chosen = j;
          break;
        }
      }
      if (chosen == 0) stuck(row_label(row) + " has weight " + to_string(r) + " and no Fourier block fits below it");
      const Rational spill = dft_trailing_weight(chosen, r);
      result.place_block(dft_block(chosen, r, spill), row, col);
      trace.push_back(row_label(row) + " " + std::to_string(chosen) + "x" + std::to_string(chosen) + " block x=" +
                      to_string(r));
      col += chosen;
      remaining[row] = 0;
      for (std::size_t i = 1; i < chosen; ++i) remaining[row + i] -= spill;
    }
  }
  if (col != n) stuck(std::to_string(n - col) + " vectors left over");
  return result;
}

SynthesisMatrix equal_norm_frame(const Spectrum& spectrum, std::size_t n) {
  if (n == 0) fail(ErrorKind::DomainError, "need at least one vector");
  const NormSequence norms = NormSequence(std::vector<Rational>(n, spectrum.sum() / Rational(static_cast<long long>(n))));
  try {
    return pnstc(norms, spectrum);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSTReady) throw;
  }
  const auto certificate = st_ready_search(norms, spectrum);
  if (!certificate) {
    fail(ErrorKind::Infeasible, "no ordering of the spectrum admits an equal norm tiling with " + std::to_string(n) +
                                    " vectors");
  }
  const SynthesisMatrix tiled = pnstc(norms, spectrum.permuted(certificate->eigen_order));
  return tiled.permute_rows(certificate->eigen_order);
}

Eigen::MatrixXd naimark_complement(const Eigen::MatrixXd& parseval, double tolerance) {
  const Eigen::Index m = parseval.rows();
  const Eigen::Index n = parseval.cols();
  if (m > n) fail(ErrorKind::NotParseval, "a Parseval frame needs at least as many vectors as dimensions");
  const double defect = (parseval * parseval.transpose() - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (m > 0 && !(defect <= tolerance)) {
    std::ostringstream out;
    out << "rows are not orthonormal (max deviation " << defect << ")";
    fail(ErrorKind::NotParseval, out.str());
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(parseval.transpose());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - m).transpose();
}

Eigen::MatrixXd naimark_complement(const SynthesisMatrix& parseval, double tolerance) {
  if (parseval.is_complex()) fail(ErrorKind::NotApplicable, "complex frames have no real orthogonal completion");
  return naimark_complement(parseval.to_dense(), tolerance);
}

}  // namespace spectral_tetris
