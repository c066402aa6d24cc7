#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "vecdep/cli.hpp"
#include "vecdep/error.hpp"

namespace vecdep::cli {

using nlohmann::json;

namespace {

// Splits one record; returns false on an unterminated quote.
bool split_record(std::string_view line, std::vector<std::string>& fields) {
    fields.clear();
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return !quoted;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Table parse_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    Table table;
    std::vector<std::string> fields;
    std::vector<double> values;
    std::size_t row = 0;
    std::size_t rows = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (!split_record(line, fields)) throw DataError("row " + std::to_string(row) + ": unterminated quote");
        if (table.header.empty()) {
            std::set<std::string> seen;
            for (auto& f : fields) {
                std::string name(trim(f));
                if (name.empty()) throw DataError("header has an empty column name");
                if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
                table.header.push_back(std::move(name));
            }
            continue;
        }
        const std::size_t d = table.header.size();
        if (fields.size() > d)
            throw DataError("row " + std::to_string(row) + ": " + std::to_string(fields.size()) +
                            " cells but the header has " + std::to_string(d));
        for (std::size_t j = 0; j < d; ++j) {
            const std::string_view cell = j < fields.size() ? trim(fields[j]) : std::string_view{};
            if (cell.empty())
                throw DataError("row " + std::to_string(row) + ", column '" + table.header[j] + "': missing value");
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
                throw DataError("row " + std::to_string(row) + ", column '" + table.header[j] +
                                "': not a finite number: '" + std::string(cell) + "'");
            values.push_back(v);
        }
        ++rows;
    }
    if (table.header.empty()) throw DataError("empty CSV input");
    table.values = Matrix(rows, table.header.size(), std::move(values));
    return table;
}

Table read_csv(const std::string& path) { return parse_csv(read_file(path)); }

GroupsConfig parse_groups(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("groups configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_array())
        throw InvalidArgument("groups configuration needs a \"groups\" array");
    GroupsConfig cfg;
    for (const auto& g : doc["groups"]) {
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string() || !g.contains("columns") ||
            !g["columns"].is_array())
            throw InvalidArgument("each group needs a string \"name\" and a \"columns\" array");
        GroupsConfig::Entry e;
        e.name = g["name"].get<std::string>();
        for (const auto& c : g["columns"]) {
            if (!c.is_string()) throw InvalidArgument("group '" + e.name + "': column names must be strings");
            e.columns.push_back(c.get<std::string>());
        }
        cfg.groups.push_back(std::move(e));
    }
    return cfg;
}

GroupsConfig load_groups(const std::string& json_or_path) {
    const auto first = json_or_path.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && json_or_path[first] == '{') return parse_groups(json_or_path);
    std::ifstream in(json_or_path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open groups configuration '" + json_or_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_groups(ss.str());
}

std::string to_json(const GroupsConfig& config) {
    nlohmann::ordered_json groups = nlohmann::ordered_json::array();
    for (const auto& g : config.groups) {
        nlohmann::ordered_json entry;
        entry["name"] = g.name;
        entry["columns"] = g.columns;
        groups.push_back(entry);
    }
    nlohmann::ordered_json doc;
    doc["groups"] = groups;
    return doc.dump(2) + "\n";
}

GroupedData make_grouped(Table table, const GroupsConfig& config) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < table.header.size(); ++j) index.emplace(table.header[j], j);
    std::vector<Group> groups;
    for (const auto& e : config.groups) {
        Group g;
        g.name = e.name;
        for (const auto& c : e.columns) {
            const auto it = index.find(c);
            if (it == index.end()) throw DataError("group '" + e.name + "': no column named '" + c + "'");
            g.columns.push_back(it->second);
        }
        groups.push_back(std::move(g));
    }
    try {
        return GroupedData(std::move(table.values), std::move(groups));
    } catch (const InvalidArgument& e) {
        throw DataError(e.what());
    }
}

GroupedData ingest_csv(const std::string& path, const GroupsConfig& config) {
    return make_grouped(read_csv(path), config);
}

namespace {

DistanceMetric parse_metric(const std::string& name, double order) {
    if (name == "euclidean") return DistanceMetric::euclidean();
    if (name == "manhattan") return DistanceMetric::manhattan();
    if (name == "canberra") return DistanceMetric::canberra();
    if (name == "minkowski") return DistanceMetric::minkowski(order);
    throw InvalidArgument("unknown distance metric '" + name + "'");
}

KernelFamily parse_kernel(const std::string& name) {
    if (name == "linear") return KernelFamily::linear;
    if (name == "polynomial") return KernelFamily::polynomial;
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "von-mises" || name == "von_mises") return KernelFamily::von_mises;
    throw InvalidArgument("unknown kernel '" + name + "'");
}

template <class T>
T get_as(const json& params, const char* key) {
    try {
        return params.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("collapse parameter '") + key + "' has the wrong type");
    }
}

}  // namespace

CollapseSpec parse_collapse(const std::string& kind, const std::string& params_json) {
    CollapseSpec spec;
    spec.kind = parse_collapse_kind(kind);
    if (params_json.empty()) return spec;
    json params;
    try {
        params = json::parse(params_json);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("collapse parameters are not valid JSON: ") + e.what());
    }
    if (!params.is_object()) throw InvalidArgument("collapse parameters must be a JSON object");
    static const std::set<std::string> known = {"weights", "m",      "direction", "metric", "order",
                                                "kernel",  "degree", "sigma",     "kappa",  "rank_margins"};
    for (const auto& [key, value] : params.items())
        if (!known.count(key)) throw InvalidArgument("unknown collapse parameter '" + key + "'");

    if (params.contains("weights")) spec.weights = get_as<std::vector<double>>(params, "weights");
    if (params.contains("m")) spec.m = get_as<std::size_t>(params, "m");
    if (params.contains("direction")) {
        const auto d = get_as<std::string>(params, "direction");
        if (d == "largest")
            spec.direction = ExtremeDirection::largest;
        else if (d == "smallest")
            spec.direction = ExtremeDirection::smallest;
        else
            throw InvalidArgument("direction must be 'largest' or 'smallest'");
    }
    const double order = params.contains("order") ? get_as<double>(params, "order") : 3.0;
    if (params.contains("metric")) spec.metric = parse_metric(get_as<std::string>(params, "metric"), order);
    else if (params.contains("order")) spec.metric = DistanceMetric::minkowski(order);
    if (params.contains("kernel")) spec.kernel.family = parse_kernel(get_as<std::string>(params, "kernel"));
    if (params.contains("degree")) spec.kernel.degree = get_as<int>(params, "degree");
    if (params.contains("sigma")) spec.kernel.sigma = get_as<double>(params, "sigma");
    if (params.contains("kappa")) spec.kernel.kappa = get_as<std::vector<double>>(params, "kappa");
    if (params.contains("rank_margins")) spec.rank_margins = get_as<bool>(params, "rank_margins");
    return spec;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace vecdep::cli
