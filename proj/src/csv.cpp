#include "vecuq/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vecuq/error.hpp"

namespace vecuq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

long CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<long>(i);
    return -1;
}

CsvTable parse_csv(const std::string& text, const std::string& source_name) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    CsvTable table;

    auto where = [&](std::size_t n) { return source_name + ":" + std::to_string(n) + ": "; };

    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (blank(line)) continue;
        for (auto field : split(line)) {
            if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
                field = field.substr(1, field.size() - 2);
            if (field.empty()) fail(ErrorKind::Format, where(line_no) + "empty column name in header");
            table.header.emplace_back(field);
        }
        have_header = true;
        break;
    }
    if (!have_header) fail(ErrorKind::Format, source_name + ": missing header row");
    // A header made only of numbers is almost certainly a data row.
    bool all_numeric = true;
    for (const auto& h : table.header) {
        double tmp = 0.0;
        const auto res = std::from_chars(h.data(), h.data() + h.size(), tmp);
        all_numeric = all_numeric && res.ec == std::errc() && res.ptr == h.data() + h.size();
    }
    if (all_numeric) fail(ErrorKind::Format, where(line_no) + "missing header row (first row is numeric)");

    const std::size_t cols = table.header.size();
    std::vector<double> data;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split(line);
        if (fields.size() != cols)
            fail(ErrorKind::Format, where(line_no) + "expected " + std::to_string(cols) + " fields, found " +
                                        std::to_string(fields.size()));
        for (std::size_t c = 0; c < cols; ++c) {
            std::string_view f = fields[c];
            if (!f.empty() && f.front() == '+') f.remove_prefix(1);
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size())
                fail(ErrorKind::Format, where(line_no) + "column '" + table.header[c] + "' is not a number: '" +
                                            std::string(fields[c]) + "'");
            data.push_back(v);
        }
        ++rows;
    }
    table.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (rows > 0) std::copy(data.begin(), data.end(), table.values.data());
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.string());
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<std::string>& header, const Matrix& values) {
    require(static_cast<Eigen::Index>(header.size()) == values.cols(), "CSV header does not match column count");
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            if (c) out += ',';
            out += format_double(values(r, c));
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& values) {
    const std::string text = to_csv(header, values);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) fail(ErrorKind::Io, "error while writing '" + path.string() + "'");
}

}  // namespace vecuq
