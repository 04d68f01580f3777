#include "modehunt/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace modehunt {
namespace {

void dump(std::ostringstream& out, const nlohmann::json& v, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case nlohmann::json::value_t::number_float:
            out << format_number(v.get<double>());
            return;
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out << "[]";
                return;
            }
            out << '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out << ',';
                first = false;
                newline(depth + 1);
                dump(out, e, indent, depth + 1);
            }
            newline(depth);
            out << ']';
            return;
        }
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out << "{}";
                return;
            }
            out << '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out << ',';
                first = false;
                newline(depth + 1);
                out << nlohmann::json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                dump(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out << '}';
            return;
        }
        default:
            out << v.dump();
    }
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    // Keep a float marker so readers do not collapse integral values to ints.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string dump_json(const nlohmann::json& value, int indent) {
    std::ostringstream out;
    dump(out, value, indent, 0);
    return out.str();
}

nlohmann::json report_to_json(const ExperimentReport& report, bool include_timings) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json metrics = nlohmann::json::object();
        for (const auto& [k, v] : r.metrics) metrics[k] = number_or_null(v);
        nlohmann::json se = nlohmann::json::object();
        for (const auto& [k, v] : r.se) se[k] = v ? number_or_null(*v) : nlohmann::json(nullptr);
        records.push_back({{"experiment", r.experiment},
                           {"label", r.label},
                           {"n", r.n},
                           {"reps", r.reps},
                           {"seed", r.seed},
                           {"metrics", std::move(metrics)},
                           {"se", std::move(se)},
                           {"wall_ms", include_timings ? nlohmann::json(r.wall_ms) : nlohmann::json(nullptr)}});
    }
    return {{"schema", kSchemaVersion}, {"experiment", report.experiment}, {"records", std::move(records)}};
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "experiment,label,n,replication,metric,value\n";
    for (const auto& r : report.records) {
        for (const auto& [metric, values] : r.per_rep) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                const std::string v = std::isfinite(values[i]) ? format_number(values[i]) : "nan";
                out << r.experiment << ',' << r.label << ',' << r.n << ',' << i << ',' << metric << ',' << v << '\n';
            }
        }
    }
}

}  // namespace modehunt
