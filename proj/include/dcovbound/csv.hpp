#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dcovbound/core.hpp"

namespace dcovbound {

/// Column role assignment plus dialect for a delimited text dataset.
struct DatasetFile {
  std::string path;
  std::vector<std::string> x_cols;  // indices ("0") or header names
  std::vector<std::string> y_cols;
  bool header = false;
  char delimiter = ',';
};

/// Parsed delimited text; fields are kept as raw strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Splits text into rows of fields. Blank lines are skipped, a trailing '\r'
/// is dropped, and no quoting is recognised. Throws ParseError (1-based
/// line, 0-based field) when a row's field count differs from the first row.
CsvTable parse_csv(std::istream& in, char delimiter, bool header);

/// Strict, locale-independent parse of one full field ('.' decimal point,
/// optional exponent). Surrounding blanks are ignored. "nan" and "inf" parse
/// and are rejected later by sample validation.
bool parse_real(const std::string& field, double& out);

/// Resolves a column list (indices or header names) against the table.
std::vector<std::size_t> resolve_columns(const CsvTable& t, const std::vector<std::string>& cols);

/// Extracts X and Y from the table. Throws ParseError for unknown columns
/// or non-numeric cells (cell = source line, column index), InvalidRoles
/// when the role sets are empty or overlap, EmptySample / NonFiniteEntry
/// from sample validation.
std::pair<SampleMatrix, SampleMatrix> load_pair(const CsvTable& t, const DatasetFile& spec);

std::pair<SampleMatrix, SampleMatrix> load_pair(const DatasetFile& spec);

/// Writes one row per observation with 17 significant digits.
void write_csv(std::ostream& out, const SampleMatrix& s, char delimiter = ',');

/// Splits "0,2,name" on commas.
std::vector<std::string> split_list(const std::string& s);

}  // namespace dcovbound
