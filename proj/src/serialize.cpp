#include "spectral_tetris/serialize.hpp"

#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "spectral_tetris/errors.hpp"

namespace spectral_tetris {

namespace mp = boost::multiprecision;
using json = nlohmann::ordered_json;

namespace {

json bigint_to_json(const BigInt& value) {
  if (value >= std::numeric_limits<long long>::min() && value <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(value);
  }
  return value.str();
}

BigInt bigint_from_json(const json& value, const char* field) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return BigInt(value.get<unsigned long long>());
    return BigInt(value.get<long long>());
  }
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    const Rational r = parse_rational(text);
    if (mp::denominator(r) != 1) fail(ErrorKind::ParseError, std::string("field '") + field + "' must be an integer");
    return mp::numerator(r);
  }
  fail(ErrorKind::ParseError, std::string("field '") + field + "' must be an integer");
}

std::size_t index_from_json(const json& obj, const char* field) {
  if (!obj.contains(field)) fail(ErrorKind::ParseError, std::string("missing field '") + field + "'");
  const json& value = obj.at(field);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(ErrorKind::ParseError, std::string("field '") + field + "' must be a nonnegative integer");
  }
  return value.get<std::size_t>();
}

json radical_to_json(const RadicalScalar& value) {
  json terms = json::array();
  for (const auto& t : value.terms()) {
    terms.push_back({{"num", bigint_to_json(mp::numerator(t.coefficient))},
                     {"den", bigint_to_json(mp::denominator(t.coefficient))},
                     {"rad", bigint_to_json(t.radicand)}});
  }
  return terms;
}

RadicalScalar radical_from_json(const json& terms) {
  if (!terms.is_array()) fail(ErrorKind::ParseError, "'terms' must be an array");
  std::vector<RadicalScalar::Term> parts;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("num") || !t.contains("den") || !t.contains("rad")) {
      fail(ErrorKind::ParseError, "each term needs num, den and rad");
    }
    const BigInt den = bigint_from_json(t.at("den"), "den");
    const BigInt rad = bigint_from_json(t.at("rad"), "rad");
    if (den <= 0) fail(ErrorKind::ParseError, "term denominator must be positive");
    if (rad < 0) fail(ErrorKind::ParseError, "radicand must be nonnegative");
    parts.push_back({Rational(bigint_from_json(t.at("num"), "num"), den), rad});
  }
  return RadicalScalar::from_terms(parts);
}

std::string complex_cell(const std::complex<double>& value) {
  std::string text = format_double(value.real());
  const double im = value.imag();
  text += (im < 0 || (im == 0 && std::signbit(im))) ? "" : "+";
  text += format_double(im) + "i";
  return text;
}

json shape_header(std::size_t m, std::size_t n, bool complex) {
  return json{{"m", m}, {"n", n}, {"complex", complex}};
}

void read_partition(const json& doc, std::vector<std::vector<std::size_t>>& partition, std::vector<Rational>& weights) {
  if (!doc.contains("partition") || !doc.at("partition").is_array()) {
    fail(ErrorKind::ParseError, "fusion frame needs a 'partition' array");
  }
  if (!doc.contains("weights_sq") || !doc.at("weights_sq").is_array()) {
    fail(ErrorKind::ParseError, "fusion frame needs a 'weights_sq' array");
  }
  for (const auto& group : doc.at("partition")) {
    if (!group.is_array()) fail(ErrorKind::ParseError, "partition groups must be arrays");
    std::vector<std::size_t> cols;
    for (const auto& c : group) {
      if (!c.is_number_integer() || c.get<long long>() < 0) fail(ErrorKind::ParseError, "column indices must be nonnegative integers");
      cols.push_back(c.get<std::size_t>());
    }
    partition.push_back(std::move(cols));
  }
  for (const auto& w : doc.at("weights_sq")) weights.push_back(rational_from_json(w));
  if (weights.size() != partition.size()) fail(ErrorKind::ParseError, "one weight is needed per subspace");
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

json rational_to_json(const Rational& value) {
  return json{{"num", bigint_to_json(mp::numerator(value))}, {"den", bigint_to_json(mp::denominator(value))}};
}

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(bigint_from_json(value, "value"));
  if (value.is_object() && value.contains("num") && value.contains("den")) {
    const BigInt den = bigint_from_json(value.at("den"), "den");
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator");
    return Rational(bigint_from_json(value.at("num"), "num"), den);
  }
  fail(ErrorKind::ParseError, "expected an exact rational");
}

json matrix_to_json(const SynthesisMatrix& matrix) {
  json doc = shape_header(matrix.rows(), matrix.cols(), matrix.is_complex());
  json entries = json::array();
  // Row-major listing keeps files diffable against printed matrices.
  std::vector<std::vector<std::pair<std::size_t, const MatrixEntry*>>> by_row(matrix.rows());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    for (const auto& [r, value] : matrix.column(c)) by_row[r].push_back({c, &value});
  }
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (const auto& [c, value] : by_row[r]) {
      json entry{{"row", r}, {"col", c}};
      if (const auto* real = std::get_if<RadicalScalar>(value)) {
        entry["terms"] = radical_to_json(*real);
      } else {
        const auto& z = std::get<ComplexRadicalEntry>(*value);
        entry["terms"] = radical_to_json(z.modulus);
        entry["omega_num"] = z.root_exponent;
        entry["omega_den"] = z.root_order;
      }
      entries.push_back(std::move(entry));
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

SynthesisMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::ParseError, "matrix document must be a JSON object");
  if (doc.value("numeric", false)) fail(ErrorKind::ParseError, "document holds a floating point matrix");
  const std::size_t m = index_from_json(doc, "m");
  const std::size_t n = index_from_json(doc, "n");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) fail(ErrorKind::ParseError, "missing 'entries' array");
  SynthesisMatrix matrix(m, n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : doc.at("entries")) {
    if (!e.is_object()) fail(ErrorKind::ParseError, "entries must be objects");
    const std::size_t row = index_from_json(e, "row");
    const std::size_t col = index_from_json(e, "col");
    if (row >= m || col >= n) fail(ErrorKind::ParseError, "entry index outside the declared shape");
    if (!seen.insert({row, col}).second) fail(ErrorKind::ParseError, "duplicate entry");
    if (!e.contains("terms")) fail(ErrorKind::ParseError, "entry without 'terms'");
    const RadicalScalar modulus = radical_from_json(e.at("terms"));
    const bool has_num = e.contains("omega_num");
    const bool has_den = e.contains("omega_den");
    if (has_num != has_den) fail(ErrorKind::ParseError, "omega_num and omega_den must appear together");
    if (has_num) {
      const long long num = bigint_from_json(e.at("omega_num"), "omega_num").convert_to<long long>();
      const long long den = bigint_from_json(e.at("omega_den"), "omega_den").convert_to<long long>();
      if (den <= 0) fail(ErrorKind::ParseError, "omega_den must be positive");
      if (num % den == 0) {
        matrix.set(row, col, modulus);
      } else {
        matrix.set(row, col, make_complex_entry(modulus, num, static_cast<std::uint32_t>(den)));
      }
    } else {
      matrix.set(row, col, modulus);
    }
  }
  return matrix;
}

json fusion_to_json(const FusionFrame& frame) {
  json doc = matrix_to_json(frame.generator);
  doc["partition"] = frame.partition;
  json weights = json::array();
  for (const auto& w : frame.weights_sq) weights.push_back(rational_to_json(w));
  doc["weights_sq"] = std::move(weights);
  return doc;
}

FusionFrame fusion_from_json(const json& doc) {
  FusionFrame frame;
  frame.generator = matrix_from_json(doc);
  frame.m = frame.generator.rows();
  read_partition(doc, frame.partition, frame.weights_sq);
  for (const auto& g : frame.partition) frame.dims.push_back(g.size());
  return frame;
}

json numeric_to_json(const Eigen::MatrixXd& matrix) {
  json doc = shape_header(static_cast<std::size_t>(matrix.rows()), static_cast<std::size_t>(matrix.cols()), false);
  doc["numeric"] = true;
  json entries = json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (matrix(r, c) != 0.0) entries.push_back({{"row", r}, {"col", c}, {"value", matrix(r, c)}});
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

json numeric_fusion_to_json(const NumericFusionFrame& frame) {
  json doc = numeric_to_json(frame.generator);
  doc["partition"] = frame.partition;
  json weights = json::array();
  for (const auto& w : frame.weights_sq) weights.push_back(rational_to_json(w));
  doc["weights_sq"] = std::move(weights);
  return doc;
}

Eigen::MatrixXd numeric_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::ParseError, "matrix document must be a JSON object");
  if (!doc.value("numeric", false)) return matrix_from_json(doc).to_dense();
  const std::size_t m = index_from_json(doc, "m");
  const std::size_t n = index_from_json(doc, "n");
  Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (const auto& e : doc.at("entries")) {
    const std::size_t row = index_from_json(e, "row");
    const std::size_t col = index_from_json(e, "col");
    if (row >= m || col >= n) fail(ErrorKind::ParseError, "entry index outside the declared shape");
    if (!e.contains("value") || !e.at("value").is_number()) fail(ErrorKind::ParseError, "numeric entry needs a value");
    matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = e.at("value").get<double>();
  }
  return matrix;
}

json report_to_json(const VerificationReport& report) {
  auto exact_list = [](const std::vector<RadicalScalar>& values) {
    json list = json::array();
    for (const auto& v : values) list.push_back(v.to_string());
    return list;
  };
  json doc{{"is_frame", report.is_frame},
           {"rows_orthogonal", report.rows_orthogonal},
           {"is_tight", report.is_tight},
           {"nonzero_count", report.nonzero_count},
           {"orthogonality_distance", report.orthogonality_distance},
           {"exact", report.exact}};
  if (report.exact) {
    doc["row_square_sums"] = exact_list(report.row_square_sums);
    doc["column_square_norms"] = exact_list(report.column_square_norms);
  } else {
    doc["row_square_sums"] = report.row_square_sums_numeric;
    doc["column_square_norms"] = report.column_square_norms_numeric;
  }
  if (report.tight_bound) {
    doc["tight_bound"] = report.tight_bound->to_string();
  } else if (report.tight_bound_numeric) {
    doc["tight_bound"] = *report.tight_bound_numeric;
  } else {
    doc["tight_bound"] = nullptr;
  }
  doc["optimal_sparsity_bound"] = report.optimal_sparsity_bound ? json(*report.optimal_sparsity_bound) : json(nullptr);
  if (report.spectrum_matches) doc["spectrum_matches"] = *report.spectrum_matches;
  if (report.norms_match) doc["norms_match"] = *report.norms_match;
  return doc;
}

json fusion_report_to_json(const FusionVerificationReport& report) {
  json doc = report_to_json(report.generator);
  doc["partition_valid"] = report.partition_valid;
  doc["subspace_orthogonal"] = report.subspace_orthogonal;
  doc["weights_match"] = report.weights_match;
  doc["dims_match"] = report.dims_match;
  doc["is_fusion_frame"] = report.is_fusion_frame;
  doc["fusion_tight"] = report.is_tight;
  doc["fusion_tight_bound"] = report.tight_bound ? json(report.tight_bound->to_string()) : json(nullptr);
  doc["fusion_lower_bound"] = report.lower_bound ? json(to_string(*report.lower_bound)) : json(nullptr);
  doc["fusion_upper_bound"] = report.upper_bound ? json(to_string(*report.upper_bound)) : json(nullptr);
  return doc;
}

std::string matrix_to_csv(const SynthesisMatrix& matrix) {
  std::ostringstream out;
  const bool complex = matrix.is_complex();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      const MatrixEntry value = matrix.at(r, c);
      if (complex) {
        out << complex_cell(entry_to_complex(value));
      } else {
        out << format_double(std::get<RadicalScalar>(value).to_double());
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string numeric_to_csv(const Eigen::MatrixXd& matrix) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(matrix(r, c));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace spectral_tetris
