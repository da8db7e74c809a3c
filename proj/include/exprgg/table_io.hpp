#pragma once

// Result tables as CSV or JSON. Both formats carry the same columns, in this
// order:
//
//   experiment,n,d,lambda,family,param1,param2,replication,seed,y_n,
//   epsilon_n,min_degree,max_degree,min_ratio,max_ratio,p_y,gap,
//   contained,has_edge
//
// Floats are written with 17 significant digits; fields that do not apply
// are blank in CSV and null in JSON.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "exprgg/experiments.hpp"

namespace exprgg {

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(const std::string& name);
const char* to_string(TableFormat format);

inline constexpr std::array<std::string_view, 19> kTableColumns = {
    "experiment", "n",         "d",          "lambda",     "family",     "param1", "param2",
    "replication", "seed",     "y_n",        "epsilon_n",  "min_degree", "max_degree",
    "min_ratio",  "max_ratio", "p_y",        "gap",        "contained",  "has_edge"};

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);
void write_table(std::ostream& out, const std::vector<ResultRow>& rows, TableFormat format);

std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_json(std::istream& in);

/// Writes a nonempty table to `path`. Throws ValidationError for an empty
/// table and IoError (naming the path) when the file cannot be written.
void emit(const std::vector<ResultRow>& rows, TableFormat format, const std::string& path);

/// Writes `content` to `path`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace exprgg
