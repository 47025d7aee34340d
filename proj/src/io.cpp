#include "strobe/io.hpp"

#include "strobe/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace strobe {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("Table::add_row: expected " + std::to_string(columns.size()) + " cells, got " +
                                    std::to_string(row.size()));
    rows.push_back(std::move(row));
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format \"" + name + "\" (expected csv or json)");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : "";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string quoted = "\"";
                for (char ch : v) {
                    if (ch == '"') quoted += '"';
                    quoted += ch;
                }
                return quoted + "\"";
            }
        },
        c);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out + "\"";
}

std::string json_value(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "null";
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : "null";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return json_string(v);
            }
        },
        c);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << csv_field(table.columns[j]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_field(row[j]);
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    out << '[';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << (i ? ",\n " : "\n ") << '{';
        for (std::size_t j = 0; j < table.columns.size(); ++j)
            out << (j ? ", " : "") << json_string(table.columns[j]) << ": " << json_value(table.rows[i][j]);
        out << '}';
    }
    out << (table.rows.empty() ? "]\n" : "\n]\n");
}

std::string to_csv(const Table& table) {
    std::ostringstream s;
    write_csv(table, s);
    return s.str();
}

std::string to_json(const Table& table) {
    std::ostringstream s;
    write_json(table, s);
    return s.str();
}

void emit(const Table& table, OutputFormat format, const std::string& path) {
    const std::string text = format == OutputFormat::Csv ? to_csv(table) : to_json(table);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    file << text;
    file.close();
    if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace strobe
