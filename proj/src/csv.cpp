#include "circqft/csv.hpp"

#include <fmt/format.h>

#include <sstream>
#include <stdexcept>

namespace circqft {

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw std::ios_base::failure("cannot write '" + path + "'");
}

void CsvWriter::comment(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out_ << "# " << line << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (columns_ && values.size() != columns_)
        throw std::logic_error("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
    if (!out_) throw std::ios_base::failure("write failed on '" + path_ + "'");
}

}  // namespace circqft
