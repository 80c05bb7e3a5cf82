#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <json.hpp>

#include "spectral_tetris/fusion_frame.hpp"
#include "spectral_tetris/synthesis_matrix.hpp"
#include "spectral_tetris/verify.hpp"

namespace spectral_tetris {

// Exact interchange format:
// {"m","n","complex","entries":[{"row","col","terms":[{"num","den","rad"}],
//   "omega_num"?,"omega_den"?}]}
// with zero-based indices and zero entries omitted. Fusion frames add
// "partition" and "weights_sq". Integers too wide for 64 bits are written as
// decimal strings.
nlohmann::ordered_json matrix_to_json(const SynthesisMatrix& matrix);
SynthesisMatrix matrix_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json fusion_to_json(const FusionFrame& frame);
FusionFrame fusion_from_json(const nlohmann::ordered_json& doc);

// Floating point matrices (orthogonal completions) carry "numeric": true and a
// "value" per entry instead of exact terms.
nlohmann::ordered_json numeric_to_json(const Eigen::MatrixXd& matrix);
nlohmann::ordered_json numeric_fusion_to_json(const NumericFusionFrame& frame);
Eigen::MatrixXd numeric_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::ordered_json& value);

nlohmann::ordered_json report_to_json(const VerificationReport& report);
nlohmann::ordered_json fusion_report_to_json(const FusionVerificationReport& report);

// Dense M x N grid, one matrix row per line, 17 significant digits. Complex
// cells are written as "re+imi".
std::string matrix_to_csv(const SynthesisMatrix& matrix);
std::string numeric_to_csv(const Eigen::MatrixXd& matrix);

std::string format_double(double value);

}  // namespace spectral_tetris
