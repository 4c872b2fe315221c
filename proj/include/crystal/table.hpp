#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace crystal {

/// Rectangular result table. Cells are JSON scalars; doubles print with
/// %.17g so output round-trips exactly.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::json>> rows;

    void add(std::vector<nlohmann::json> row);
};

void write_csv(const Table& table, std::ostream& out);

/// Array of objects keyed by the header.
void write_json(const Table& table, std::ostream& out);

std::string format_cell(const nlohmann::json& cell);

}  // namespace crystal
