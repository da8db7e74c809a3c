#include "exprgg/table_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "exprgg/format.hpp"

namespace exprgg {

namespace {

// Row fields rendered as text, in column order; empty string = blank.
std::array<std::string, kTableColumns.size()> render(const ResultRow& r) {
  auto f = [](const std::optional<double>& x) { return x ? detail::fmt17(*x) : std::string(); };
  auto u = [](const auto& x) { return x ? std::to_string(*x) : std::string(); };
  auto b = [](const std::optional<bool>& x) {
    return x ? std::string(*x ? "true" : "false") : std::string();
  };
  return {to_string(r.experiment),
          std::to_string(r.n),
          std::to_string(r.d),
          detail::fmt17(r.lambda),
          r.family,
          f(r.param1),
          f(r.param2),
          std::to_string(r.replication),
          std::to_string(r.seed),
          f(r.y_n),
          u(r.epsilon_n),
          u(r.min_degree),
          u(r.max_degree),
          f(r.min_ratio),
          f(r.max_ratio),
          f(r.p_y),
          f(r.gap),
          b(r.contained),
          b(r.has_edge)};
}

enum class Kind { Str, UInt, Float, Bool };

constexpr std::array<Kind, kTableColumns.size()> kColumnKinds = {
    Kind::Str,   Kind::UInt,  Kind::UInt,  Kind::Float, Kind::Str,  Kind::Float, Kind::Float,
    Kind::UInt,  Kind::UInt,  Kind::Float, Kind::UInt,  Kind::UInt, Kind::UInt,  Kind::Float,
    Kind::Float, Kind::Float, Kind::Float, Kind::Bool,  Kind::Bool};

ResultRow parse_fields(const std::array<std::string, kTableColumns.size()>& v) {
  auto opt_f = [](const std::string& s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
  };
  auto opt_u64 = [](const std::string& s) -> std::optional<std::uint64_t> {
    if (s.empty()) return std::nullopt;
    return std::stoull(s);
  };
  auto opt_u32 = [&](const std::string& s) -> std::optional<std::uint32_t> {
    if (auto x = opt_u64(s)) return static_cast<std::uint32_t>(*x);
    return std::nullopt;
  };
  auto opt_b = [](const std::string& s) -> std::optional<bool> {
    if (s.empty()) return std::nullopt;
    if (s == "true") return true;
    if (s == "false") return false;
    throw ValidationError("table: bad boolean '" + s + "'");
  };
  ResultRow r;
  try {
    r.experiment = parse_experiment_kind(v[0]);
    r.n = std::stoull(v[1]);
    r.d = std::stoull(v[2]);
    r.lambda = std::stod(v[3]);
    r.family = v[4];
    r.param1 = opt_f(v[5]);
    r.param2 = opt_f(v[6]);
    r.replication = std::stoull(v[7]);
    r.seed = std::stoull(v[8]);
    r.y_n = opt_f(v[9]);
    r.epsilon_n = opt_u64(v[10]);
    r.min_degree = opt_u32(v[11]);
    r.max_degree = opt_u32(v[12]);
    r.min_ratio = opt_f(v[13]);
    r.max_ratio = opt_f(v[14]);
    r.p_y = opt_f(v[15]);
    r.gap = opt_f(v[16]);
    r.contained = opt_b(v[17]);
    r.has_edge = opt_b(v[18]);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(std::string("table: malformed field: ") + e.what());
  }
  return r;
}

}  // namespace

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

const char* to_string(TableFormat format) { return format == TableFormat::Csv ? "csv" : "json"; }

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (std::size_t c = 0; c < kTableColumns.size(); ++c) out << (c ? "," : "") << kTableColumns[c];
  out << '\n';
  for (const auto& row : rows) {
    const auto fields = render(row);
    for (std::size_t c = 0; c < fields.size(); ++c) out << (c ? "," : "") << fields[c];
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  // Hand-written so floats keep exactly 17 significant digits.
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto fields = render(rows[i]);
    out << "  {";
    for (std::size_t c = 0; c < fields.size(); ++c) {
      out << (c ? ", " : "") << '"' << kTableColumns[c] << "\": ";
      if (fields[c].empty() && kColumnKinds[c] != Kind::Str) out << "null";
      else if (kColumnKinds[c] == Kind::Str) out << nlohmann::json(fields[c]).dump();
      else out << fields[c];
    }
    out << '}' << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

void write_table(std::ostream& out, const std::vector<ResultRow>& rows, TableFormat format) {
  if (format == TableFormat::Csv) write_csv(out, rows);
  else write_json(out, rows);
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: missing header");
  std::string expected;
  for (std::size_t c = 0; c < kTableColumns.size(); ++c)
    expected += (c ? "," : "") + std::string(kTableColumns[c]);
  if (line != expected) throw ValidationError("csv: unexpected header '" + line + "'");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string, kTableColumns.size()> fields;
    std::size_t c = 0, start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      if (c >= fields.size()) throw ValidationError("csv: too many fields");
      fields[c++] = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (c != fields.size()) throw ValidationError("csv: expected 19 fields, got " + std::to_string(c));
    rows.push_back(parse_fields(fields));
  }
  return rows;
}

std::vector<ResultRow> read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json table: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("json table: expected an array");
  std::vector<ResultRow> rows;
  for (const auto& obj : j) {
    std::array<std::string, kTableColumns.size()> fields;
    for (std::size_t c = 0; c < kTableColumns.size(); ++c) {
      const auto key = std::string(kTableColumns[c]);
      if (!obj.contains(key)) throw ValidationError("json table: missing field '" + key + "'");
      const auto& v = obj.at(key);
      if (v.is_null()) continue;
      if (v.is_string()) fields[c] = v.get<std::string>();
      else if (v.is_boolean()) fields[c] = v.get<bool>() ? "true" : "false";
      else if (v.is_number_unsigned()) fields[c] = std::to_string(v.get<std::uint64_t>());
      else if (v.is_number_integer()) fields[c] = std::to_string(v.get<std::int64_t>());
      else fields[c] = detail::fmt17(v.get<double>());
    }
    rows.push_back(parse_fields(fields));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit(const std::vector<ResultRow>& rows, TableFormat format, const std::string& path) {
  if (rows.empty()) throw ValidationError("emit: table is empty");
  std::ostringstream buf;
  write_table(buf, rows, format);
  write_text_file(path, buf.str());
}

}  // namespace exprgg
