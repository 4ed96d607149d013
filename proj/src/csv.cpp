#include "decolab/csv.hpp"

#include "decolab/errors.hpp"

#include <cstdio>

namespace decolab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& file) : out_(file) {
    if (!out_) {
        throw IoError("cannot open output file: " + file.string());
    }
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    std::size_t i = 0;
    for (double v : values) {
        if (i++) out_ << ',';
        out_ << format_double(v);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

} // namespace decolab
