#include "nlslab/csv.hpp"

#include "nlslab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nlslab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw PreconditionError("not a number: '" + s + "'");
    return v;
}

void CsvTable::add(std::vector<std::string> row) {
    require(row.size() == header.size(), "csv row width differs from the header");
    rows.push_back(std::move(row));
}

size_t CsvTable::column(const std::string& name) const {
    for (size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return k;
    throw PreconditionError("csv has no column '" + name + "'");
}

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit_row(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << quote(cells[k]);
    os << '\n';
}

std::vector<std::vector<std::string>> split_records(const std::string& text) {
    std::vector<std::vector<std::string>> recs;
    std::vector<std::string> cur;
    std::string cell;
    bool quoted = false, any = false;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            cur.push_back(cell);
            cell.clear();
            any = true;
        } else if (c == '\n') {
            cur.push_back(cell);
            recs.push_back(cur);
            cur.clear();
            cell.clear();
            any = false;
        } else if (c != '\r') {
            cell += c;
            any = true;
        }
    }
    if (any) {
        cur.push_back(cell);
        recs.push_back(cur);
    }
    return recs;
}

} // namespace

std::string to_csv(const CsvTable& t) {
    std::ostringstream os;
    emit_row(os, t.header);
    for (const auto& r : t.rows) emit_row(os, r);
    return os.str();
}

CsvTable from_csv(const std::string& text) {
    auto recs = split_records(text);
    require(!recs.empty(), "csv text has no header");
    CsvTable t;
    t.header = recs.front();
    for (size_t k = 1; k < recs.size(); ++k) t.add(recs[k]);
    return t;
}

void write_csv(const CsvTable& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << to_csv(t);
    if (!f) throw IoError("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return from_csv(os.str());
}

} // namespace nlslab
