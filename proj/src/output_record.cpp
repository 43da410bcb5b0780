#include "sudiag/output_record.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sudiag {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string render(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  errno = 0;
  const long long value = std::strtoll(s.c_str(), nullptr, 10);
  if (errno != 0) return false;
  out = value;
  return true;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

ParamValue parse_value(const std::string& s) {
  std::int64_t i;
  if (parse_int(s, i)) return i;
  double d;
  if (parse_double(s, d)) return d;
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

void OutputRecord::set(std::string key, ParamValue value) {
  for (auto& [k, v] : parameters) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  parameters.emplace_back(std::move(key), std::move(value));
}

const ParamValue* OutputRecord::find(std::string_view key) const {
  for (const auto& [k, v] : parameters)
    if (k == key) return &v;
  return nullptr;
}

std::optional<double> OutputRecord::number(std::string_view key) const {
  const ParamValue* v = find(key);
  if (v == nullptr) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(v)) return *d;
  return std::nullopt;
}

std::optional<std::size_t> OutputRecord::column(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  return std::nullopt;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const OutputRecord& record) {
  out << "# schema_version=" << record.schema_version << '\n';
  out << "# command=" << record.command << '\n';
  for (const auto& [key, value] : record.parameters) out << "# " << key << '=' << render(value) << '\n';
  for (std::size_t k = 0; k < record.columns.size(); ++k) {
    if (k) out << ',';
    out << record.columns[k];
  }
  out << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      out << format_double(row[k]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const OutputRecord& record) {
  ordered_json doc;
  doc["schema_version"] = record.schema_version;
  doc["command"] = record.command;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : record.parameters) {
    std::visit([&](const auto& v) { params[key] = v; }, value);
  }
  doc["parameters"] = std::move(params);
  doc["columns"] = record.columns;
  doc["rows"] = record.rows;
  out << doc.dump(2) << '\n';
}

void write_record(std::ostream& out, const OutputRecord& record, Format format) {
  if (format == Format::Csv) write_csv(out, record); else write_json(out, record);
}

OutputRecord read_csv(std::istream& in) {
  OutputRecord record;
  record.schema_version.clear();
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::runtime_error("csv: malformed metadata line: " + line);
      std::string key = line.substr(2, eq - 2);
      std::string value = line.substr(eq + 1);
      if (key == "schema_version") record.schema_version = value;
      else if (key == "command") record.command = value;
      else record.parameters.emplace_back(std::move(key), parse_value(value));
      continue;
    }
    if (!have_header) {
      record.columns = split(line, ',');
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split(line, ',')) {
      double x;
      if (!parse_double(cell, x)) throw std::runtime_error("csv: not a number: '" + cell + "'");
      row.push_back(x);
    }
    if (row.size() != record.columns.size()) throw std::runtime_error("csv: ragged row");
    record.rows.push_back(std::move(row));
  }
  if (record.schema_version.empty()) throw std::runtime_error("csv: missing schema_version");
  if (!have_header) throw std::runtime_error("csv: missing header row");
  return record;
}

OutputRecord read_json(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
  if (!doc.contains("schema_version")) throw std::runtime_error("json: missing schema_version");
  OutputRecord record;
  try {
    record.schema_version = doc.at("schema_version").get<std::string>();
    record.command = doc.at("command").get<std::string>();
    for (const auto& [key, value] : doc.at("parameters").items()) {
      if (value.is_number_integer()) record.parameters.emplace_back(key, value.get<std::int64_t>());
      else if (value.is_number()) record.parameters.emplace_back(key, value.get<double>());
      else record.parameters.emplace_back(key, value.get<std::string>());
    }
    record.columns = doc.at("columns").get<std::vector<std::string>>();
    record.rows = doc.at("rows").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
  return record;
}

void append_matrix(OutputRecord& record, const CMatrix& m) {
  record.columns.clear();
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    record.columns.push_back("re_" + std::to_string(k));
    record.columns.push_back("im_" + std::to_string(k));
  }
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    std::vector<double> row;
    row.reserve(2 * m.cols());
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(m(j, k).real());
      row.push_back(m(j, k).imag());
    }
    record.rows.push_back(std::move(row));
  }
}

CMatrix matrix_from_record(const OutputRecord& record) {
  const std::size_t n = record.rows.size();
  if (n == 0 || record.columns.size() != 2 * n) {
    throw std::runtime_error("record does not hold a square matrix");
  }
  CMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto re = record.column("re_" + std::to_string(k));
    const auto im = record.column("im_" + std::to_string(k));
    if (!re || !im) throw std::runtime_error("record is missing matrix column " + std::to_string(k));
    for (std::size_t j = 0; j < n; ++j) m(j, k) = Complex{record.rows[j][*re], record.rows[j][*im]};
  }
  return m;
}

}  // namespace sudiag
