// csv.hpp — Deterministic CSV emission: '#' metadata lines, one header row,
// then data rows formatted with %.17g.

#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace decolab {

std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& file);

    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(std::initializer_list<double> values);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
};

} // namespace decolab
