#include "dmoc/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dmoc {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double* out) {
  const char* p = s.c_str();
  char* end = nullptr;
  *out = std::strtod(p, &end);
  if (end == p) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return true;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      table.comments.push_back(line);
      continue;
    }
    auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size(); ++k)
      if (!parse_double(fields[k], &row[k])) {
        numeric = false;
        break;
      }
    if (!numeric && first_data_line) {
      table.header = fields;
      first_data_line = false;
      continue;
    }
    first_data_line = false;
    if (numeric) table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& c : comments) out << "# " << c << "\n";
  if (!header.empty()) {
    for (std::size_t k = 0; k < header.size(); ++k)
      out << (k ? "," : "") << header[k];
    out << "\n";
  }
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << format_double(row[k]);
    out << "\n";
  }
}

PointSet load_point_set(const std::filesystem::path& path, Metric metric) {
  auto table = read_csv(path);
  if (table.rows.empty())
    throw std::runtime_error("no points in " + path.string());
  const std::size_t dim = table.rows.front().size();
  std::vector<double> coords;
  coords.reserve(table.rows.size() * dim);
  for (const auto& row : table.rows) {
    if (row.size() != dim)
      throw std::runtime_error("ragged rows in " + path.string());
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointSet(std::move(coords), dim, std::move(metric));
}

void save_point_set(const std::filesystem::path& path, const PointSet& ps) {
  std::vector<std::vector<double>> rows(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto p = ps.point(i);
    rows[i].assign(p.begin(), p.end());
  }
  write_csv(path, {}, rows);
}

LabeledDataset load_timeseries(const std::filesystem::path& path,
                               std::size_t* skipped_rows) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> times, values;
  std::size_t skipped = 0;
  std::string line;
  bool first_line = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    auto fields = split_fields(line);
    double t = 0.0, v = 0.0;
    if (fields.size() >= 2 && parse_double(fields[0], &t) &&
        parse_double(fields[1], &v) && std::isfinite(t) && std::isfinite(v)) {
      times.push_back(t);
      values.push_back(v);
    } else if (!first_line) {  // a leading non-numeric line is the header
      ++skipped;
    }
    first_line = false;
  }
  if (skipped_rows) *skipped_rows = skipped;
  if (times.empty())
    throw std::runtime_error("no valid rows in " + path.string());
  return LabeledDataset(PointSet::from_1d(std::move(times)),
                        PointSet::from_1d(std::move(values)));
}

}  // namespace dmoc
