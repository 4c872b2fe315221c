#include "crystal/table.hpp"

#include <cstdio>
#include <stdexcept>

namespace crystal {

void Table::add(std::vector<nlohmann::json> row)
{
    if (row.size() != header.size()) throw std::logic_error("table row width differs from header");
    rows.push_back(std::move(row));
}

std::string format_cell(const nlohmann::json& cell)
{
    if (cell.is_string()) {
        const auto& s = cell.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    if (cell.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", cell.get<double>());
        return buf;
    }
    if (cell.is_null()) return "";
    return cell.dump();
}

void write_csv(const Table& table, std::ostream& out)
{
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = nlohmann::ordered_json::parse(row[i].dump());
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace crystal
