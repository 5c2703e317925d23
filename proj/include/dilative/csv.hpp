#pragma once

#include <iosfwd>
#include <string>

#include "dilative/core_model.hpp"

namespace dilative {

/// CSV contract: header "t,x", one row per grid point, 17 significant digits
/// (lossless double round-trip), LF line endings.
void write_sample_path_csv(const SamplePath& path, std::ostream& os);
void write_sample_path_csv(const SamplePath& path, const std::string& filename);

SamplePath read_sample_path_csv(std::istream& is);
SamplePath read_sample_path_csv_file(const std::string& filename);

/// Full-precision decimal rendering used by the CSV writer.
std::string format_double(double x);

} // namespace dilative
