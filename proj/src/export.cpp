#include "specbasis/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "specbasis/errors.hpp"

namespace specbasis {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_field_csv(const Eigen::VectorXd& values) {
  std::string out = "vertex_id,value\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

Eigen::VectorXd parse_field_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<long, double>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("vertex_id", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("field CSV line " + std::to_string(line_no) + ": missing comma");
    long id = 0;
    double v = 0.0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, id);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
    if (r1.ec != std::errc() || r2.ec != std::errc())
      throw ParseError("field CSV line " + std::to_string(line_no) + ": bad number");
    rows.emplace_back(id, v);
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != static_cast<long>(i)) throw ParseError("field CSV vertex ids must be 0..n-1 in order");
    values[static_cast<Eigen::Index>(i)] = rows[i].second;
  }
  return values;
}

Eigen::VectorXd read_field_csv(const std::filesystem::path& path) {
  return parse_field_csv(read_text_file(path));
}

std::string format_matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_pgm(const Eigen::MatrixXd& m) {
  const double lo = m.size() ? m.minCoeff() : 0.0;
  const double hi = m.size() ? m.maxCoeff() : 0.0;
  const double span = hi - lo;
  std::string out = "P2\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n255\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      int g = span > 0 ? static_cast<int>(std::lround(255.0 * (m(i, j) - lo) / span)) : 0;
      g = std::clamp(g, 0, 255);
      if (j) out += ' ';
      out += std::to_string(g);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::array<std::uint8_t, 3>> color_ramp(const Eigen::VectorXd& values) {
  std::vector<std::array<std::uint8_t, 3>> colors(values.size());
  if (values.size() == 0) return colors;
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double s = hi > lo ? (values[i] - lo) / (hi - lo) : 0.0;
    const auto red = static_cast<std::uint8_t>(std::lround(255.0 * s));
    const auto blue = static_cast<std::uint8_t>(255 - red);
    colors[i] = {red, 0, blue};
  }
  return colors;
}

}  // namespace specbasis
