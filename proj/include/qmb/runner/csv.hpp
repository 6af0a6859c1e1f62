#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qmb::runner {

// 17 significant digits, "%.17g".
std::string format_double(double v);

// Header row, data rows, then `# ` footer lines.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    void add_footer(std::string line) { footer_.push_back(std::move(line)); }

    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> footer_;
};

// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace qmb::runner
