#pragma once

#include "kpo/posort.hpp"
#include "kpo/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace kpo {

struct CsvTable {
  std::vector<std::string> header;
  Points values;
};

/// Header row followed by numeric rows. Throws DataError on an empty table,
/// ragged rows or unparsable cells.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::filesystem::path& path);

/// Columns are coordinates; a trailing column named `weight` becomes the
/// measure, otherwise the counting measure is used.
PointSet point_set_from_table(const CsvTable& table);
PointSet read_point_set_file(const std::filesystem::path& path);

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Points& values);

/// `index,po,class[,front]`, one row per item in index order.
void write_ranking(std::ostream& os, const PoRanking& ranking, const std::vector<std::size_t>* fronts = nullptr);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace kpo
