#include "diskdyn/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace diskdyn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) {
        throw std::logic_error("CsvWriter: field count does not match the header");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
}

void CsvWriter::row_values(const std::vector<double>& fields) {
    std::vector<std::string> s;
    s.reserve(fields.size());
    for (double v : fields) s.push_back(format_double(v));
    row(s);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
}

} // namespace diskdyn
