#include "qmb/runner/csv.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "qmb/error.hpp"

namespace qmb::runner {

namespace {

std::string quoted(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += quoted(cells[i]);
    }
    out += '\n';
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    require(cells.size() == header_.size(), ErrorKind::shape, "CSV row width differs from header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    append_line(out, header_);
    for (const auto& r : rows_) append_line(out, r);
    for (const auto& f : footer_) out += "# " + f + '\n';
    return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::config, "cannot write " + tmp.string());
        out << content;
        out.flush();
        require(static_cast<bool>(out), ErrorKind::config, "failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::config, "cannot move output into place at " + path.string());
    }
}

}  // namespace qmb::runner
