#include "imexstab/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef IMEXSTAB_VERSION
#define IMEXSTAB_VERSION "0.0.0"
#endif

namespace imexstab::io {

std::string tool_version() { return IMEXSTAB_VERSION; }

std::string format_sci17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char ch : raw) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  os << "# tool: imexstab " << tool_version() << "\n";
  os << "# command: " << meta.command << "\n";
  for (const auto& [key, value] : meta.config) os << "# " << key << ": " << value << "\n";
  os << "# generated_at: " << timestamp_utc() << "\n";

  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << csv_field(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
}

nlohmann::json meta_json(const OutputMeta& meta) {
  nlohmann::json j;
  j["tool"] = "imexstab";
  j["version"] = tool_version();
  j["command"] = meta.command;
  j["config"] = nlohmann::json::object();
  for (const auto& [key, value] : meta.config) j["config"][key] = value;
  j["generated_at"] = timestamp_utc();
  return j;
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::invalid_argument("matrix file must start with 'rows cols': " + path);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j)))
        throw std::invalid_argument("matrix file truncated: " + path);
  return m;
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write matrix file: " + path);
  out << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << format_sci17(m(i, j));
    out << "\n";
  }
}

}  // namespace imexstab::io
