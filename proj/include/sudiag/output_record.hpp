#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sudiag/matrix_core.hpp"

namespace sudiag {

inline constexpr std::string_view kSchemaVersion = "1";

using ParamValue = std::variant<std::int64_t, double, std::string>;

/// Tabular result of one CLI command.
///
/// CSV layout: `# key=value` metadata lines (schema_version and command
/// first, then parameters in insertion order), a header row, then data rows.
/// Numbers use 17 significant digits. JSON layout: a single object with
/// schema_version, command, parameters, columns and rows.
struct OutputRecord {
  std::string schema_version{kSchemaVersion};
  std::string command;
  std::vector<std::pair<std::string, ParamValue>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void set(std::string key, ParamValue value);
  const ParamValue* find(std::string_view key) const;
  std::optional<double> number(std::string_view key) const;
  std::optional<std::size_t> column(std::string_view name) const;
};

enum class Format { Csv, Json };

std::string format_double(double x);

void write_csv(std::ostream& out, const OutputRecord& record);
void write_json(std::ostream& out, const OutputRecord& record);
void write_record(std::ostream& out, const OutputRecord& record, Format format);

/// Parsers for the two layouts. Throw std::runtime_error on malformed input.
OutputRecord read_csv(std::istream& in);
OutputRecord read_json(std::istream& in);

/// Matrix stored as rows with columns re_0, im_0, re_1, im_1, ...
CMatrix matrix_from_record(const OutputRecord& record);
void append_matrix(OutputRecord& record, const CMatrix& m);

}  // namespace sudiag
