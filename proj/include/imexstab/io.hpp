#pragma once

#include <Eigen/Dense>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace imexstab::io {

/// Scientific notation with 17 significant digits.
std::string format_sci17(double value);

/// RFC-4180 field quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_field(const std::string& raw);

/// Resolved run configuration echoed into every output file.
struct OutputMeta {
  std::string command;
  std::map<std::string, std::string> config;  // ordered for determinism
};

/// Comment-style header lines ("# key: value") carrying tool version,
/// command, resolved configuration and a generation timestamp, followed by
/// the column header and the data rows.
void write_csv(std::ostream& os, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

/// Metadata object mirrored into JSON outputs.
nlohmann::json meta_json(const OutputMeta& meta);

std::string tool_version();

/// Plain-text dense matrix: first line "rows cols", then one whitespace-
/// separated row per line.
Eigen::MatrixXd read_matrix(const std::string& path);
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace imexstab::io
