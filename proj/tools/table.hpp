#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace bosongap::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

// Twelve significant digits, "%.12g".
std::string format_number(double x);

void write_table(const Table& table, Format format, std::ostream& os);

}  // namespace bosongap::cli
