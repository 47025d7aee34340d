// io.hpp - tabular results and their CSV / JSON encodings.
//
// Doubles are written with 17 significant digits; NaN, infinities and empty
// cells become an empty CSV field or JSON null.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace strobe {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

inline Cell cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& name);

std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// Writes to `path`, or to stdout when path is empty or "-". Throws
// std::runtime_error naming the path on IO failure.
void emit(const Table& table, OutputFormat format, const std::string& path);

}  // namespace strobe
