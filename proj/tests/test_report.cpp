#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "friable/report.hpp"

using namespace friable;

TEST_CASE("csv and json emissions agree digit for digit") {
    PredictionReport r;
    r.command = "psi";
    r.params["x"] = 1e6 * (1 + 1e-9);
    r.params["y"] = 100;
    r.exact = 246561.0;
    r.predicted = 240914.8372618341;
    r.severity = Severity::Soft;

    std::ostringstream csv;
    emit_csv_header(csv);
    emit_csv(csv, r);
    std::ostringstream js;
    emit_json(js, r);

    auto j = nlohmann::json::parse(js.str());
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["command"] == "psi");
    CHECK(j["severity"] == "soft");

    // the CSV row, split on commas
    std::string line = csv.str();
    line = line.substr(line.find('\n') + 1);
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    // schema,command,x,y,theta,q,eta,T,N,nudged,exact,predicted,abs_err,rel_err,severity
    REQUIRE(fields.size() == 15);
    CHECK(fields[2] == std::string(j["params"]["x"]));
    CHECK(fields[3] == std::string(j["params"]["y"]));
    CHECK(fields[4].empty());
    CHECK(fields[10] == std::string(j["exact"]));
    CHECK(fields[11] == std::string(j["predicted"]));

    // 17 significant digits round-trip exactly
    CHECK(std::stod(std::string(j["params"]["x"])) == r.params["x"]);
    CHECK(std::stod(fields[11]) == r.predicted);
    CHECK(std::stod(fields[12]) == r.abs_err());
    CHECK(std::stod(fields[13]) == r.rel_err());
}

TEST_CASE("relative error floor avoids division by zero") {
    PredictionReport r;
    r.exact = 0;
    r.predicted = 0;
    CHECK(r.rel_err() == 0);
    r.predicted = 1e-20;
    CHECK(std::isfinite(r.rel_err()));
}
