#include "superset_cli/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "superset/errors.hpp"

namespace superset::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DataError("row " + std::to_string(row) + ", column '" + column + "': '" + cell +
                    "' is not a finite number");
  }
  return value;
}

}  // namespace

IngestedData ingest_text(const std::string& text, const IngestOptions& options,
                         const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw DataError(source + ": no header row");
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  header = split(line, delim);

  std::string schema = header == kDiabetesColumns ? "diabetes" : "generic";
  std::string response = options.response;
  if (response.empty()) {
    if (schema != "diabetes") {
      throw DataError(source + ": response column must be given for non-diabetes files");
    }
    response = "Y";
  }
  const auto resp_it = std::find(header.begin(), header.end(), response);
  if (resp_it == header.end()) {
    throw DataError(source + ": response column '" + response + "' not found in header");
  }
  const auto resp_col = static_cast<std::size_t>(resp_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != resp_col) names.push_back(header[c]);
  }

  std::vector<double> ys;
  std::vector<std::vector<double>> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, delim);
    if (cells.size() != header.size()) {
      throw DataError(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                      " cells, header has " + std::to_string(header.size()));
    }
    std::vector<double> xs;
    xs.reserve(names.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], row, header[c]);
      if (c == resp_col) {
        ys.push_back(v);
      } else {
        xs.push_back(v);
      }
    }
    rows.push_back(std::move(xs));
  }

  Eigen::VectorXd y(static_cast<Eigen::Index>(ys.size()));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < ys.size(); ++i) {
    double v = ys[i];
    if (options.log_base != LogBase::kNone) {
      if (!(v > 0.0)) {
        throw DataError(source + ": response " + std::to_string(v) + " at data row " +
                        std::to_string(i + 1) + " cannot be log-transformed");
      }
      v = options.log_base == LogBase::kTen ? std::log10(v) : std::log(v);
    }
    y(static_cast<Eigen::Index>(i)) = v;
    for (std::size_t c = 0; c < names.size(); ++c) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    }
  }
  return IngestedData{Dataset(std::move(y), std::move(x), std::move(names)), source, schema};
}

IngestedData ingest(const std::string& path, const IngestOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open data file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return ingest_text(buf.str(), options, path);
}

}  // namespace superset::cli
