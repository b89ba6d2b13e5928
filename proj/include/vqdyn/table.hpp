#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace vqdyn {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Doubles are emitted with 12 significant digits.
inline std::string format_significant(double v, int digits = 12) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

inline std::string cell_to_string(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_significant(*d);
    return std::get<std::string>(c);
}

/// Column-named rows of typed cells; the common currency between the
/// experiment drivers, the CSV/JSON writers and the re-check loader.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column_index(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw std::invalid_argument("Table: no column named '" + std::string(name) + "'");
    }

    bool has_column(std::string_view name) const {
        for (const auto& c : columns)
            if (c == name) return true;
        return false;
    }

    double number_at(std::size_t row, std::size_t col) const {
        const Cell& c = rows.at(row).at(col);
        if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
        if (const auto* d = std::get_if<double>(&c)) return *d;
        throw std::invalid_argument("Table: cell is not numeric");
    }

    std::string to_csv() const {
        std::ostringstream out;
        const auto emit_field = [&](const std::string& s) {
            if (s.find_first_of(",\"\n") != std::string::npos) {
                out << '"';
                for (char ch : s) {
                    if (ch == '"') out << '"';
                    out << ch;
                }
                out << '"';
            } else {
                out << s;
            }
        };
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            emit_field(columns[i]);
        }
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                emit_field(cell_to_string(row[i]));
            }
            out << '\n';
        }
        return out.str();
    }

    nlohmann::json to_json(const nlohmann::json& config_echo) const {
        nlohmann::json rows_json = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const Cell& c = row[i];
                if (const auto* v = std::get_if<std::int64_t>(&c))
                    obj[columns[i]] = *v;
                else if (const auto* d = std::get_if<double>(&c))
                    obj[columns[i]] = *d;
                else
                    obj[columns[i]] = std::get<std::string>(c);
            }
            rows_json.push_back(std::move(obj));
        }
        return nlohmann::json{{"config", config_echo}, {"rows", std::move(rows_json)}};
    }

    static Table from_csv(const std::string& text) {
        Table t;
        std::size_t pos = 0;
        bool header = true;
        while (pos < text.size()) {
            std::vector<std::string> fields;
            std::string field;
            bool quoted = false;
            for (;; ++pos) {
                if (pos >= text.size()) break;
                const char ch = text[pos];
                if (quoted) {
                    if (ch == '"') {
                        if (pos + 1 < text.size() && text[pos + 1] == '"') {
                            field += '"';
                            ++pos;
                        } else {
                            quoted = false;
                        }
                    } else {
                        field += ch;
                    }
                } else if (ch == '"') {
                    quoted = true;
                } else if (ch == ',') {
                    fields.push_back(std::move(field));
                    field.clear();
                } else if (ch == '\n') {
                    ++pos;
                    break;
                } else if (ch != '\r') {
                    field += ch;
                }
            }
            fields.push_back(std::move(field));
            if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
            if (header) {
                t.columns = std::move(fields);
                header = false;
                continue;
            }
            std::vector<Cell> row;
            row.reserve(fields.size());
            for (auto& f : fields) {
                try {
                    std::size_t used = 0;
                    const double d = std::stod(f, &used);
                    if (used == f.size()) {
                        row.emplace_back(d);
                        continue;
                    }
                } catch (...) {
                }
                row.emplace_back(std::move(f));
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    static Table from_json(const nlohmann::json& j, nlohmann::json* config_out = nullptr) {
        if (!j.contains("rows") || !j["rows"].is_array())
            throw std::invalid_argument("Table::from_json: missing rows array");
        if (config_out && j.contains("config")) *config_out = j["config"];
        Table t;
        for (const auto& obj : j["rows"]) {
            if (t.columns.empty())
                for (auto it = obj.begin(); it != obj.end(); ++it) t.columns.push_back(it.key());
            std::vector<Cell> row;
            for (const auto& col : t.columns) {
                const auto& v = obj.at(col);
                if (v.is_number_integer())
                    row.emplace_back(v.get<std::int64_t>());
                else if (v.is_number())
                    row.emplace_back(v.get<double>());
                else
                    row.emplace_back(v.get<std::string>());
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }
};

}  // namespace vqdyn
