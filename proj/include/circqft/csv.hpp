#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace circqft {

// 17 significant digits, shortest round-trip form not required.
std::string format_number(double x);

// Comma-separated table: '#'-prefixed comment lines first, then one header
// row, then numeric rows.
class CsvWriter {
public:
    // Throws std::ios_base::failure when the file cannot be created.
    explicit CsvWriter(const std::string& path);

    // Each line of `text` becomes its own "# " comment line.
    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

}  // namespace circqft
