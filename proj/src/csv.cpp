#include "sortclust/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

namespace sortclust {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::optional<std::vector<double>> parse_row(std::string_view line) {
  std::vector<double> values;
  for (;;) {
    const auto comma = line.find(',');
    const auto value = parse_double(line.substr(0, comma));
    if (!value) return std::nullopt;
    values.push_back(*value);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return values;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return in;
}

}  // namespace

CsvData read_csv(std::istream& in, const CsvOptions& options) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  CsvData out;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && options.header) continue;
    const auto text = trim(line);
    if (text.empty()) continue;
    auto row = parse_row(text);
    if (row && cols >= 0 && static_cast<Index>(row->size()) != cols) row.reset();
    if (!row) {
      if (options.drop_bad_rows) {
        ++out.dropped_rows;
        continue;
      }
      throw InputError("malformed row at line " + std::to_string(line_no));
    }
    if (cols < 0) cols = static_cast<Index>(row->size());
    values.insert(values.end(), row->begin(), row->end());
    ++rows;
  }
  if (rows == 0) throw InputError("no data rows");
  out.points = Eigen::Map<const RowMatrix<double>>(values.data(), rows, cols);
  return out;
}

CsvData read_csv(const std::filesystem::path& path, const CsvOptions& options) {
  auto in = open_input(path);
  return read_csv(in, options);
}

void write_csv(std::ostream& out, const Matrix<double>& points, bool header) {
  if (header) {
    for (Index j = 0; j < points.cols(); ++j) out << (j ? "," : "") << 'f' << j;
    out << '\n';
  }
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < points.cols(); ++j) out << (j ? "," : "") << points(i, j);
    out << '\n';
  }
}

LabelVector read_labels(std::istream& in) {
  LabelVector labels;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw InputError("malformed label at line " + std::to_string(line_no));
    labels.push_back(value);
  }
  if (labels.empty()) throw InputError("no labels");
  return labels;
}

LabelVector read_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_labels(in);
}

void write_labels(std::ostream& out, const LabelVector& labels) {
  for (int label : labels) out << label << '\n';
}

}  // namespace sortclust
