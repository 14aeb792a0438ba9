#pragma once

#include <string>
#include <vector>

#include "cpdmd/linalg.hpp"

namespace cpdmd::io {

// Stream CSV: mandatory header row naming the p columns, then one
// observation per row; comma separator, '.' decimal point, LF endings.
// Returns a p x T matrix (column t-1 = observation t). Parse failures name
// the offending 1-based line.
RealMatrix read_stream_csv(const std::string& path);

// Column names of a stream CSV's header row.
std::vector<std::string> read_csv_header(const std::string& path);

void write_stream_csv(const std::string& path, const RealMatrix& x,
                      const std::vector<std::string>& columns);

// Shortest representation that round-trips a double; integral values keep
// one decimal ("3.0") so CSV cells stay visibly floating point.
std::string format_double(double v);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

}  // namespace cpdmd::io
