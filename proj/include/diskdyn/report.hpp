#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace diskdyn {

/// Round-trip-exact decimal rendering of a double (17 significant digits,
/// '.' separator, C locale).
std::string format_double(double v);

/// CSV writer: UTF-8, header row, rows in the order they are appended.
/// Output bytes depend only on the appended data.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

    /// Convenience: formats doubles with format_double.
    void row_values(const std::vector<double>& fields);

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace diskdyn
