#pragma once

// Numeric CSV and label-file I/O.

#include "sortclust/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace sortclust {

struct CsvOptions {
  bool header = false;         ///< skip the first line
  bool drop_bad_rows = false;  ///< skip malformed rows instead of failing
};

struct CsvData {
  Matrix<double> points;
  Index dropped_rows = 0;
};

/// Comma-separated numeric rows; blank lines are ignored. A row that does not
/// parse, has a non-finite value or a different column count than the first
/// data row raises InputError naming its line, unless drop_bad_rows is set.
CsvData read_csv(std::istream& in, const CsvOptions& options = {});
CsvData read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

void write_csv(std::ostream& out, const Matrix<double>& points, bool header = false);

/// One integer label per line; blank lines are ignored, an empty file is an error.
LabelVector read_labels(std::istream& in);
LabelVector read_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out, const LabelVector& labels);

}  // namespace sortclust
