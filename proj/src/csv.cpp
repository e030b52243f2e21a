#include "kpo/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kpo {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const char* first = cell.data();
  if (!cell.empty() && cell.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size())
    throw DataError("csv line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw DataError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) + " cells");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
    rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw DataError("csv: missing header");
  if (rows.empty()) throw DataError("csv: no data rows");
  t.values = points_from_rows(rows);
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_csv(in);
}

PointSet point_set_from_table(const CsvTable& table) {
  const auto cols = table.values.cols();
  if (!table.header.empty() && table.header.back() == "weight") {
    if (cols < 2) throw DataError("csv: weight column without coordinates");
    std::vector<double> w(static_cast<std::size_t>(table.values.rows()));
    for (Eigen::Index r = 0; r < table.values.rows(); ++r) w[static_cast<std::size_t>(r)] = table.values(r, cols - 1);
    try {
      return PointSet(table.values.leftCols(cols - 1), DiscreteMeasure(std::move(w)));
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("csv: ") + e.what());
    }
  }
  return PointSet(table.values);
}

PointSet read_point_set_file(const std::filesystem::path& path) { return point_set_from_table(read_csv_file(path)); }

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Points& values) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) os << (c ? "," : "") << format_double(values(r, c));
    os << '\n';
  }
}

void write_ranking(std::ostream& os, const PoRanking& ranking, const std::vector<std::size_t>* fronts) {
  const auto labels = ranking.class_labels();
  os << "index,po,class" << (fronts ? ",front" : "") << '\n';
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    os << i << ',' << format_double(ranking.po[i]) << ',' << labels[i];
    if (fronts) os << ',' << (*fronts)[i];
    os << '\n';
  }
}

}  // namespace kpo
