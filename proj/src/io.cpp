#include "cpdmd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cpdmd/errors.hpp"

namespace cpdmd::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

double parse_cell(const std::string& cell, std::size_t lineno) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "line " << lineno << ": non-numeric cell '" << cell << "'";
        throw ParseError(msg.str());
    }
    return v;
}

}  // namespace

std::vector<std::string> read_csv_header(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0].empty()) throw ParseError("empty file: " + path);
    return split_fields(lines[0]);
}

RealMatrix read_stream_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0].empty()) throw ParseError("empty file: " + path);
    const auto header = split_fields(lines[0]);
    const Index p = static_cast<Index>(header.size());

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() && i + 1 == lines.size()) break;  // trailing newline
        const auto fields = split_fields(lines[i]);
        if (static_cast<Index>(fields.size()) != p) {
            std::ostringstream msg;
            msg << "line " << i + 1 << ": expected " << p << " fields, got " << fields.size();
            throw ParseError(msg.str());
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f, i + 1));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no observations in file: " + path);

    RealMatrix x(p, static_cast<Index>(rows.size()));
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (Index c = 0; c < p; ++c) x(c, static_cast<Index>(t)) = rows[t][static_cast<std::size_t>(c)];
    return x;
}

void write_stream_csv(const std::string& path, const RealMatrix& x,
                      const std::vector<std::string>& columns) {
    if (static_cast<Index>(columns.size()) != x.rows())
        throw Error("write_stream_csv: column-name count does not match dimension");
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << '\n';
    for (Index t = 0; t < x.cols(); ++t) {
        for (Index c = 0; c < x.rows(); ++c) out << (c ? "," : "") << format_double(x(c, t));
        out << '\n';
    }
    write_text(path, out.str());
}

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("0123456789") != std::string::npos)
        s += ".0";
    return s;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace cpdmd::io
