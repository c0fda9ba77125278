#include "dcovbound/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dcovbound {

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& f : split_fields(s, ',')) {
    auto t = trim(f);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

CsvTable parse_csv(std::istream& in, char delimiter, bool header) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_fields(line, delimiter);
    if (first) {
      width = fields.size();
      first = false;
      if (header) {
        for (auto& f : fields) t.header.push_back(trim(f));
        continue;
      }
    } else if (fields.size() != width) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << width << " fields, found " << fields.size();
      throw Error(ErrorKind::ParseError, os.str(), CellRef{line_no, std::min(width, fields.size())});
    }
    t.rows.push_back(std::move(fields));
    t.line_numbers.push_back(line_no);
  }
  return t;
}

bool parse_real(const std::string& field, double& out) {
  const std::string s = trim(field);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::size_t> resolve_columns(const CsvTable& t, const std::vector<std::string>& cols) {
  const std::size_t width = !t.header.empty() ? t.header.size()
                            : t.rows.empty()  ? 0
                                              : t.rows.front().size();
  std::vector<std::size_t> out;
  for (const auto& c : cols) {
    if (!t.header.empty()) {
      const auto it = std::find(t.header.begin(), t.header.end(), c);
      if (it != t.header.end()) {
        out.push_back(static_cast<std::size_t>(it - t.header.begin()));
        continue;
      }
    }
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), idx);
    if (ec != std::errc{} || ptr != c.data() + c.size() || idx >= width) {
      throw Error(ErrorKind::ParseError, "unknown column '" + c + "'");
    }
    out.push_back(idx);
  }
  return out;
}

namespace {

SampleMatrix extract(const CsvTable& t, const std::vector<std::size_t>& cols) {
  std::vector<double> data;
  data.reserve(t.rows.size() * cols.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c : cols) {
      double v = 0.0;
      if (!parse_real(t.rows[r][c], v)) {
        std::ostringstream os;
        os << "line " << t.line_numbers[r] << ", column " << c << ": cannot parse '"
           << t.rows[r][c] << "' as a number";
        throw Error(ErrorKind::ParseError, os.str(), CellRef{t.line_numbers[r], c});
      }
      data.push_back(v);
    }
  }
  try {
    return validate_sample(t.rows.size(), cols.size(), std::move(data));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonFiniteEntry || !e.cell()) throw;
    const std::size_t line = t.line_numbers[e.cell()->row];
    const std::size_t col = cols[e.cell()->col];
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": non-finite value '"
       << trim(t.rows[e.cell()->row][col]) << "'";
    throw Error(ErrorKind::NonFiniteEntry, os.str(), CellRef{line, col});
  }
}

}  // namespace

std::pair<SampleMatrix, SampleMatrix> load_pair(const CsvTable& t, const DatasetFile& spec) {
  if (spec.x_cols.empty() || spec.y_cols.empty())
    throw Error(ErrorKind::InvalidRoles, "both X and Y need at least one column");
  const auto xc = resolve_columns(t, spec.x_cols);
  const auto yc = resolve_columns(t, spec.y_cols);
  const std::set<std::size_t> xs(xc.begin(), xc.end());
  for (std::size_t c : yc)
    if (xs.contains(c))
      throw Error(ErrorKind::InvalidRoles, "column " + std::to_string(c) + " is in both X and Y");
  if (t.rows.empty()) throw Error(ErrorKind::EmptySample, "dataset has no data rows");
  return {extract(t, xc), extract(t, yc)};
}

std::pair<SampleMatrix, SampleMatrix> load_pair(const DatasetFile& spec) {
  std::ifstream in(spec.path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + spec.path + "'");
  return load_pair(parse_csv(in, spec.delimiter, spec.header), spec);
}

void write_csv(std::ostream& out, const SampleMatrix& s, char delimiter) {
  char buf[32];
  for (std::size_t k = 0; k < s.rows(); ++k) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      if (j > 0) out << delimiter;
      std::snprintf(buf, sizeof buf, "%.17g", s(k, j));
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace dcovbound
