#include "spectral_tetris/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

namespace {

constexpr double kComplexTolerance = 1e-11;

RadicalScalar real_product(const MatrixEntry& a, const MatrixEntry& b) {
  return std::get<RadicalScalar>(a) * std::get<RadicalScalar>(b);
}

RadicalScalar exact_inner(const SynthesisMatrix::Column& x, const SynthesisMatrix::Column& y) {
  RadicalScalar sum;
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += real_product(a->second, b->second);
      ++a;
      ++b;
    }
  }
  return sum;
}

std::complex<double> numeric_inner(const SynthesisMatrix::Column& x, const SynthesisMatrix::Column& y) {
  std::complex<double> sum = 0;
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += entry_to_complex(a->second) * std::conj(entry_to_complex(b->second));
      ++a;
      ++b;
    }
  }
  return sum;
}

bool columns_orthogonal(const SynthesisMatrix& matrix, std::size_t i, std::size_t j, bool complex) {
  if (complex) return std::abs(numeric_inner(matrix.column(i), matrix.column(j))) <= kComplexTolerance;
  return exact_inner(matrix.column(i), matrix.column(j)).is_zero();
}

template <class Dense>
bool full_row_rank(const Dense& dense) {
  if (dense.rows() == 0) return true;
  if (dense.cols() < dense.rows()) return false;
  Eigen::JacobiSVD<Dense> svd(dense);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 1e-10 * std::max(1.0, static_cast<double>(s(0)));
}

}  // namespace

FrameOperator frame_operator(const SynthesisMatrix& matrix) {
  FrameOperator op;
  op.dim = matrix.rows();
  const auto d = static_cast<Eigen::Index>(op.dim);
  if (matrix.is_complex()) {
    op.exact = false;
    const Eigen::MatrixXcd dense = matrix.to_dense_complex();
    op.numeric = dense * dense.adjoint();
    return op;
  }
  op.entries.assign(op.dim * op.dim, RadicalScalar());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    const auto& column = matrix.column(c);
    for (const auto& [i, x] : column) {
      for (const auto& [j, y] : column) op.entries[i * op.dim + j] += real_product(x, y);
    }
  }
  op.numeric = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < op.dim; ++i) {
    for (std::size_t j = 0; j < op.dim; ++j) {
      op.numeric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = op.at(i, j).to_double();
    }
  }
  return op;
}

std::size_t orthogonality_distance(const SynthesisMatrix& matrix) {
  const std::size_t n = matrix.cols();
  if (n == 0) return 0;
  const bool complex = matrix.is_complex();
  std::vector<std::vector<std::size_t>> by_row(matrix.rows());
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& [r, value] : matrix.column(c)) by_row[r].push_back(c);
  }
  std::size_t widest = 0;
  std::map<std::pair<std::size_t, std::size_t>, bool> checked;
  for (const auto& cols : by_row) {
    for (std::size_t a = 0; a < cols.size(); ++a) {
      for (std::size_t b = a + 1; b < cols.size(); ++b) {
        const std::size_t gap = cols[b] - cols[a];
        if (gap <= widest) continue;
        auto key = std::make_pair(cols[a], cols[b]);
        if (checked.count(key) != 0) continue;
        checked[key] = true;
        if (!columns_orthogonal(matrix, cols[a], cols[b], complex)) widest = gap;
      }
    }
  }
  return widest + 1;
}

std::size_t sparsity_lower_bound(const Spectrum& spectrum, std::size_t n) {
  const std::size_t mu = maximal_block_number(spectrum).mu;
  return n + 2 * (spectrum.size() - mu);
}

VerificationReport verify_frame(const SynthesisMatrix& matrix, const std::optional<Spectrum>& expected_spectrum,
                                const std::optional<NormSequence>& expected_norms) {
  VerificationReport report;
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  const FrameOperator op = frame_operator(matrix);
  report.exact = op.exact;
  report.nonzero_count = matrix.nonzero_count();

  for (std::size_t c = 0; c < n; ++c) {
    RadicalScalar norm;
    for (const auto& [r, value] : matrix.column(c)) norm += entry_modulus_squared(value);
    report.column_square_norms_numeric.push_back(norm.to_double());
    if (op.exact) report.column_square_norms.push_back(norm);
  }

  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    report.row_square_sums_numeric.push_back(op.numeric(k, k).real());
    scale = std::max(scale, std::abs(op.numeric(k, k)));
    if (op.exact) report.row_square_sums.push_back(op.at(i, i));
  }
  const double tolerance = kComplexTolerance * scale;

  report.rows_orthogonal = true;
  for (std::size_t i = 0; i < m && report.rows_orthogonal; ++i) {
    for (std::size_t j = i + 1; j < m && report.rows_orthogonal; ++j) {
      report.rows_orthogonal = op.exact ? op.at(i, j).is_zero()
                                        : std::abs(op.numeric(static_cast<Eigen::Index>(i),
                                                              static_cast<Eigen::Index>(j))) <= tolerance;
    }
  }

  if (report.rows_orthogonal) {
    report.is_frame = true;
    for (std::size_t i = 0; i < m; ++i) {
      const bool positive = op.exact ? report.row_square_sums[i].sign() > 0
                                     : report.row_square_sums_numeric[i] > tolerance;
      report.is_frame = report.is_frame && positive;
    }
  } else {
    report.is_frame = op.exact ? full_row_rank(matrix.to_dense()) : full_row_rank(matrix.to_dense_complex());
  }

  if (report.rows_orthogonal && m > 0) {
    bool equal = true;
    for (std::size_t i = 1; i < m; ++i) {
      equal = equal && (op.exact ? report.row_square_sums[i] == report.row_square_sums[0]
                                 : std::abs(report.row_square_sums_numeric[i] - report.row_square_sums_numeric[0]) <=
                                       tolerance);
    }
    report.is_tight = equal;
    if (equal) {
      report.tight_bound_numeric = report.row_square_sums_numeric[0];
      if (op.exact) report.tight_bound = report.row_square_sums[0];
    }
  }

  std::optional<Spectrum> bound_spectrum = expected_spectrum;
  if (!bound_spectrum && op.exact && report.rows_orthogonal && report.is_frame && m > 0) {
    std::vector<Rational> values;
    for (const auto& s : report.row_square_sums) {
      if (auto r = s.as_rational()) values.push_back(*r);
    }
    if (values.size() == m) bound_spectrum = Spectrum(values);
  }
  if (bound_spectrum && bound_spectrum->size() == m) {
    report.optimal_sparsity_bound = sparsity_lower_bound(*bound_spectrum, n);
  }
  report.orthogonality_distance = orthogonality_distance(matrix);

  if (expected_spectrum) {
    bool match = expected_spectrum->size() == m && report.rows_orthogonal;
    for (std::size_t i = 0; match && i < m; ++i) {
      match = op.exact ? report.row_square_sums[i] == RadicalScalar((*expected_spectrum)[i])
                       : std::abs(report.row_square_sums_numeric[i] - to_double((*expected_spectrum)[i])) <= tolerance;
    }
    report.spectrum_matches = match;
  }
  if (expected_norms) {
    bool match = expected_norms->size() == n;
    for (std::size_t c = 0; match && c < n; ++c) {
      match = op.exact ? report.column_square_norms[c] == RadicalScalar((*expected_norms)[c])
                       : std::abs(report.column_square_norms_numeric[c] - to_double((*expected_norms)[c])) <=
                             tolerance;
    }
    report.norms_match = match;
  }
  return report;
}

VerificationReport verify_numeric(const Eigen::MatrixXd& matrix, double tolerance) {
  VerificationReport report;
  report.exact = false;
  const Eigen::Index m = matrix.rows();
  const Eigen::Index n = matrix.cols();
  const Eigen::MatrixXd gram = matrix * matrix.transpose();
  for (Eigen::Index i = 0; i < m; ++i) report.row_square_sums_numeric.push_back(gram(i, i));
  for (Eigen::Index c = 0; c < n; ++c) report.column_square_norms_numeric.push_back(matrix.col(c).squaredNorm());
  report.rows_orthogonal = true;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) report.rows_orthogonal = report.rows_orthogonal && std::abs(gram(i, j)) <= tolerance;
  }
  report.is_frame = full_row_rank(matrix);
  if (report.rows_orthogonal && m > 0) {
    report.is_tight = true;
    for (Eigen::Index i = 1; i < m; ++i) report.is_tight = report.is_tight && std::abs(gram(i, i) - gram(0, 0)) <= tolerance;
    if (report.is_tight) report.tight_bound_numeric = gram(0, 0);
  }
  for (Eigen::Index c = 0; c < n; ++c) report.nonzero_count += static_cast<std::size_t>((matrix.col(c).array().abs() > tolerance).count());
  std::size_t widest = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (std::abs(matrix.col(a).dot(matrix.col(b))) > tolerance) widest = std::max<std::size_t>(widest, static_cast<std::size_t>(b - a));
    }
  }
  report.orthogonality_distance = n == 0 ? 0 : widest + 1;
  return report;
}

SparsityReport sparsity_report(const SynthesisMatrix& matrix, const Spectrum& spectrum) {
  const VerificationReport report = verify_frame(matrix, spectrum);
  if (!report.spectrum_matches.value_or(false)) {
    fail(ErrorKind::SpectrumMismatch, "the matrix does not have the requested spectrum");
  }
  SparsityReport sparsity;
  sparsity.count = report.nonzero_count;
  sparsity.bound = sparsity_lower_bound(spectrum, matrix.cols());
  sparsity.optimal = sparsity.count == sparsity.bound;
  return sparsity;
}

FusionVerificationReport verify_fusion(const FusionFrame& frame, const std::optional<Spectrum>& expected_spectrum) {
  FusionVerificationReport report;
  const SynthesisMatrix& g = frame.generator;
  report.generator = verify_frame(g, expected_spectrum);
  report.spectrum_matches = report.generator.spectrum_matches;
  const std::size_t d = frame.partition.size();
  const bool complex = g.is_complex();

  report.partition_valid = frame.weights_sq.size() == d && frame.dims.size() == d && frame.m == g.rows();
  std::vector<int> owner(g.cols(), -1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t c : frame.partition[i]) {
      if (c >= g.cols() || owner[c] != -1) {
        report.partition_valid = false;
        continue;
      }
      owner[c] = static_cast<int>(i);
    }
  }
  report.partition_valid = report.partition_valid && std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; });

  report.dims_match = frame.dims.size() == d;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& group = frame.partition[i];
    bool orthogonal = true;
    for (std::size_t a = 0; a < group.size() && orthogonal; ++a) {
      for (std::size_t b = a + 1; b < group.size() && orthogonal; ++b) {
        if (group[a] < g.cols() && group[b] < g.cols()) orthogonal = columns_orthogonal(g, group[a], group[b], complex);
      }
    }
    bool weights = i < frame.weights_sq.size();
    for (std::size_t c : group) {
      if (!weights || c >= g.cols()) {
        weights = false;
        break;
      }
      if (complex) {
        weights = std::abs(report.generator.column_square_norms_numeric[c] - to_double(frame.weights_sq[i])) <= 1e-11;
      } else {
        weights = report.generator.column_square_norms[c] == RadicalScalar(frame.weights_sq[i]);
      }
    }
    report.subspace_orthogonal.push_back(orthogonal);
    report.weights_match.push_back(weights);
    // Orthogonal nonzero vectors are independent, so the count is the dimension.
    report.dims_match = report.dims_match && i < frame.dims.size() && group.size() == frame.dims[i] && orthogonal;
  }
  report.is_fusion_frame = report.partition_valid && report.dims_match && report.generator.is_frame &&
                           std::all_of(report.subspace_orthogonal.begin(), report.subspace_orthogonal.end(), [](bool b) { return b; }) &&
                           std::all_of(report.weights_match.begin(), report.weights_match.end(), [](bool b) { return b; });
  report.is_tight = report.is_fusion_frame && report.generator.is_tight;
  if (report.is_tight) report.tight_bound = report.generator.tight_bound;
  if (report.is_fusion_frame && report.generator.exact) {
    for (const auto& sum : report.generator.row_square_sums) {
      const auto value = sum.as_rational();
      if (!value) continue;
      if (!report.lower_bound || *value < *report.lower_bound) report.lower_bound = *value;
      if (!report.upper_bound || *value > *report.upper_bound) report.upper_bound = *value;
    }
  }
  return report;
}

}  // namespace spectral_tetris
