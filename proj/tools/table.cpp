#include "table.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "bosongap/error.hpp"

namespace bosongap::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ComputationError("table row width does not match header");
    rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ValidationError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return std::stod(format_number(*d));
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

}  // namespace

void write_table(const Table& table, Format format, std::ostream& os) {
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
        return;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace bosongap::cli
