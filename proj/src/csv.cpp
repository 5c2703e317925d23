#include "dilative/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dilative {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_sample_path_csv(const SamplePath& path, std::ostream& os) {
    os << "t,x\n";
    for (std::size_t i = 0; i < path.size(); ++i)
        os << format_double(path.times[i]) << ',' << format_double(path.values[i]) << '\n';
}

void write_sample_path_csv(const SamplePath& path, const std::string& filename) {
    std::ofstream os(filename, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + filename);
    write_sample_path_csv(path, os);
    if (!os) throw std::runtime_error("write failed: " + filename);
}

SamplePath read_sample_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,x", 0) != 0)
        throw std::runtime_error("sample path CSV must start with header 't,x'");
    SamplePath path;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed CSV row at line " + std::to_string(lineno));
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        const double x = std::strtod(line.c_str() + comma + 1, &end);
        path.times.push_back(t);
        path.values.push_back(x);
    }
    const auto violations = path.validate();
    if (!violations.empty())
        throw std::runtime_error("invalid sample path CSV: " + violations.front());
    return path;
}

SamplePath read_sample_path_csv_file(const std::string& filename) {
    std::ifstream is(filename, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + filename);
    return read_sample_path_csv(is);
}

} // namespace dilative
