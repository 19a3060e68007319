#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace specbasis {

/// Shortest decimal text that parses back to exactly `value` (at most 17
/// significant digits). Non-finite values print as "inf", "-inf" or "nan".
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// `vertex_id,value` rows with a header line.
std::string format_field_csv(const Eigen::VectorXd& values);
Eigen::VectorXd parse_field_csv(const std::string& text);
Eigen::VectorXd read_field_csv(const std::filesystem::path& path);

/// Dense matrix as CSV, one row per line, no header.
std::string format_matrix_csv(const Eigen::MatrixXd& m);

/// Plain PGM (P2): values mapped affinely from [min, max] to [0, 255].
std::string format_pgm(const Eigen::MatrixXd& m);

/// Blue-to-red ramp over the value range of `values`.
std::vector<std::array<std::uint8_t, 3>> color_ramp(const Eigen::VectorXd& values);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace specbasis
