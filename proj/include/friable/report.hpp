#pragma once
// Prediction-vs-exact report rows and their CSV / JSON-lines emission.

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

namespace friable {

inline constexpr int kReportSchema = 1;
inline constexpr double kRelErrFloor = 1e-30;

enum class Severity { Hard, Soft, Report };

inline const char* to_string(Severity s) {
    switch (s) {
        case Severity::Hard: return "hard";
        case Severity::Soft: return "soft";
        default: return "report";
    }
}

struct PredictionReport {
    std::string command;
    std::map<std::string, double> params;  // x, y, theta, q, eta, T, N, nudged ...
    double exact = 0;
    double predicted = 0;
    Severity severity = Severity::Report;

    double abs_err() const { return std::abs(exact - predicted); }
    double rel_err() const {
        return abs_err() / std::max(std::abs(exact), kRelErrFloor);
    }
};

// Fixed, gnuplot-ready column order; absent params are empty fields.
inline const char* kCsvColumns[] = {"x", "y", "theta", "q", "eta", "T", "N", "nudged"};

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void emit_csv_header(std::ostream& os) {
    os << "schema,command";
    for (const char* c : kCsvColumns) os << ',' << c;
    os << ",exact,predicted,abs_err,rel_err,severity\n";
}

inline void emit_csv(std::ostream& os, const PredictionReport& r) {
    os << kReportSchema << ',' << r.command;
    for (const char* c : kCsvColumns) {
        os << ',';
        auto it = r.params.find(c);
        if (it != r.params.end()) os << format_g17(it->second);
    }
    os << ',' << format_g17(r.exact) << ',' << format_g17(r.predicted) << ','
       << format_g17(r.abs_err()) << ',' << format_g17(r.rel_err()) << ','
       << to_string(r.severity) << '\n';
}

inline void emit_json(std::ostream& os, const PredictionReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = r.command;
    nlohmann::ordered_json params;
    // keep the CSV column order so the two emissions line up field by field
    for (const char* c : kCsvColumns) {
        auto it = r.params.find(c);
        if (it != r.params.end()) params[c] = format_g17(it->second);
    }
    j["params"] = params;
    j["exact"] = format_g17(r.exact);
    j["predicted"] = format_g17(r.predicted);
    j["abs_err"] = format_g17(r.abs_err());
    j["rel_err"] = format_g17(r.rel_err());
    j["severity"] = to_string(r.severity);
    os << j.dump() << '\n';
}

}  // namespace friable
