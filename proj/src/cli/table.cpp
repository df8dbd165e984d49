#include "susy/cli.hpp"
#include "susy/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace susy::cli {

void ResultTable::set(const std::string& key, const std::string& value)
{
    for (auto& kv : metadata)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    metadata.emplace_back(key, value);
}

std::optional<std::string> ResultTable::get(const std::string& key) const
{
    for (const auto& kv : metadata)
        if (kv.first == key) return kv.second;
    return std::nullopt;
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string to_csv(const ResultTable& t)
{
    std::ostringstream os;
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const ResultTable& t, bool include_runtime)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    if (include_runtime) meta["runtime_seconds"] = t.runtime_seconds;
    j["metadata"] = meta;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (double v : row) {
            if (std::isfinite(v))
                r.push_back(v);
            else
                r.push_back(format_double(v));
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(1) + "\n";
}

ResultTable read_csv(const std::string& text)
{
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto p = line.find(": ");
            if (p != std::string::npos && p > 2) t.set(line.substr(2, p - 2), line.substr(p + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header) {
            t.columns = cells;
            header = true;
            continue;
        }
        if (cells.size() != t.columns.size()) throw ArgumentError("table: ragged row");
        std::vector<double> row;
        for (const auto& c : cells) {
            double v = 0.0;
            if (c == "nan")
                v = std::nan("");
            else if (c == "inf" || c == "-inf")
                v = c[0] == '-' ? -INFINITY : INFINITY;
            else {
                const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
                if (r.ec != std::errc()) throw ArgumentError("table: malformed number '" + c + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (auto v = t.get("nx")) t.nx = std::stoi(*v);
    if (auto v = t.get("ny")) t.ny = std::stoi(*v);
    return t;
}

} // namespace susy::cli
