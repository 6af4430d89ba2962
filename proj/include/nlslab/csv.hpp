#pragma once

#include <string>
#include <vector>

namespace nlslab {

// 17 significant digits, so parsing the text gives back the same double
std::string format_number(double v);
double parse_number(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    size_t column(const std::string& name) const; // throws when absent
};

std::string to_csv(const CsvTable& t);
CsvTable from_csv(const std::string& text);
void write_csv(const CsvTable& t, const std::string& path);
CsvTable read_csv(const std::string& path);

} // namespace nlslab
