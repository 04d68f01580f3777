#include "cli_input.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace modehunt::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& token, double& out) {
    const std::string t = trim(token);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && errno != ERANGE;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InputError("JSON input must be an array of numbers");
    std::vector<double> values;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) throw InputError("JSON element " + std::to_string(i) + " is not a number");
        values.push_back(doc[i].get<double>());
    }
    return values;
}

std::vector<double> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool seen_data = false;
    std::size_t width = 0;
    std::vector<double> ts, values;
    std::vector<std::size_t> lines;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() > 2) fail_at(line_no, "expected one value or a t,value pair");
        std::vector<double> parsed(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) numeric = numeric && parse_double(fields[i], parsed[i]);
        if (!numeric) {
            if (!seen_data) {
                seen_data = true;  // header line
                width = fields.size();
                continue;
            }
            fail_at(line_no, "not a number: '" + line + "'");
        }
        if (width != 0 && fields.size() != width) fail_at(line_no, "inconsistent column count");
        width = fields.size();
        seen_data = true;
        for (double v : parsed) {
            if (!std::isfinite(v)) fail_at(line_no, "non-finite value");
        }
        if (width == 2) ts.push_back(parsed[0]);
        values.push_back(parsed.back());
        lines.push_back(line_no);
    }

    if (!ts.empty()) {
        const double n = static_cast<double>(values.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (std::abs(ts[i] - static_cast<double>(i) / n) > 1e-9) {
                fail_at(lines[i], "t must equal i/n on the equidistant grid");
            }
        }
    }
    return values;
}

}  // namespace

std::vector<double> parse_series(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<double> values = first != std::string::npos && text[first] == '[' ? parse_json(text) : parse_csv(text);
    if (values.empty()) throw InputError("input holds no values");
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError("input holds a non-finite value");
    }
    return values;
}

std::vector<double> read_series(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) throw InputError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return parse_series(text);
}

}  // namespace modehunt::cli
