#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dmoc/point_set.hpp"

namespace dmoc {

// Minimal CSV helpers. Doubles are written with 17 significant digits so
// that round trips are lossless for IEEE 754 binary64.

std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;       // empty if the file had none
  std::vector<std::string> comments;     // lines starting with '#'
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comments = {});

// one point per row, columns = coordinates; optional header is skipped
PointSet load_point_set(const std::filesystem::path& path, Metric metric);

void save_point_set(const std::filesystem::path& path, const PointSet& ps);

// two-column (time, value) CSV -> 1-D sites and values with absolute
// difference metrics; rows with non-numeric entries are skipped and counted
LabeledDataset load_timeseries(const std::filesystem::path& path,
                               std::size_t* skipped_rows = nullptr);

}  // namespace dmoc
