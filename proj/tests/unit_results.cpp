#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "vanetcast/plot.hpp"
#include "vanetcast/results.hpp"

using namespace vanetcast;

namespace {

ResultRow sample_row(double pm, Method method = Method::simulation) {
    ResultRow row;
    row.method = method;
    row.model = ConnectionModel::unit_disk(250.0);
    row.rho = 0.05;
    row.road_length = 3000.0;
    row.pm = pm;
    row.trials = 5000;
    row.p_succ = 0.8123;
    row.std_error = 0.0055172;
    row.ci_low = 0.8014862;
    row.ci_high = 0.8231138;
    row.seed = 42;
    row.runtime_s = 1.234;
    return row;
}

}  // namespace

TEST_CASE("csv header is pinned", "[results]") {
    CHECK(kCsvHeader ==
          "method,model,r,alpha,sigma,rho,L,pm,trials,p_succ,stderr,ci_low,ci_high,seed,"
          "runtime_s");
    const std::string csv = to_csv({sample_row(0.1)});
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("unit disk rows leave alpha and sigma empty", "[results]") {
    const std::string csv = to_csv({sample_row(0.1)});
    CHECK(csv.find("simulation,unit_disk,250,,,0.05,3000,0.1,5000,") != std::string::npos);
    ResultRow ln = sample_row(0.1);
    ln.model = ConnectionModel::log_normal(250.0, 2.0, 4.0);
    CHECK(to_csv({ln}).find("simulation,log_normal,250,2,4,0.05,") != std::string::npos);
}

TEST_CASE("csv round-trips through the parser", "[results]") {
    ResultRow a = sample_row(0.1);
    ResultRow b = sample_row(0.2, Method::analytic);
    b.model = ConnectionModel::log_normal(250.0, 2.0, 4.0);
    b.has_runtime = false;
    const auto rows = parse_csv(to_csv({a, b}));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].method == Method::simulation);
    CHECK(rows[0].pm == a.pm);
    CHECK(rows[0].p_succ == a.p_succ);
    CHECK(rows[0].trials == a.trials);
    CHECK(rows[0].has_runtime);
    CHECK(rows[1].model.kind == ConnectionModel::Kind::log_normal);
    CHECK(rows[1].model.shadowing_stddev == 4.0);
    CHECK_FALSE(rows[1].has_runtime);
    CHECK(to_csv(rows) == to_csv({a, b}));  // byte-stable re-emission
}

TEST_CASE("csv parser rejects malformed input", "[results]") {
    CHECK_THROWS_AS(parse_csv(""), ParseError);
    CHECK_THROWS_AS(parse_csv("bogus,header\n"), ParseError);
    const std::string csv = to_csv({sample_row(0.1)});
    CHECK_THROWS_AS(parse_csv(csv + "short,row\n"), ParseError);
    std::string tainted = csv;
    tainted.replace(tainted.find("unit_disk,250,,"), 15, "unit_disk,250,9,"), 0;
    CHECK_THROWS_AS(parse_csv(tainted), ParseError);
}

TEST_CASE("json mirrors the csv fields one to one", "[results]") {
    ResultRow row = sample_row(0.15);
    row.has_runtime = false;
    const std::string json = to_json({row});
    CHECK(json.find("\"method\": \"simulation\"") != std::string::npos);
    CHECK(json.find("\"model\": \"unit_disk\"") != std::string::npos);
    CHECK(json.find("\"alpha\": null") != std::string::npos);
    CHECK(json.find("\"sigma\": null") != std::string::npos);
    CHECK(json.find("\"pm\": 0.15") != std::string::npos);
    CHECK(json.find("\"p_succ\": 0.8123") != std::string::npos);
    CHECK(json.find("\"stderr\": 0.0055172") != std::string::npos);
    CHECK(json.find("\"runtime_s\": null") != std::string::npos);
    CHECK(to_json({row}) == json);
}

TEST_CASE("plots are deterministic with one marker per point", "[results]") {
    const ResultRow row = sample_row(0.1);
    AxesSpec axes;
    const std::string svg = emit_plot({row}, axes);
    CHECK(svg == emit_plot({row}, axes));

    std::size_t markers = 0;
    for (std::size_t at = svg.find("<circle"); at != std::string::npos;
         at = svg.find("<circle", at + 1))
        ++markers;
    CHECK(markers == 1);
    CHECK(svg.find("<polyline") == std::string::npos);  // no line through one point
}

TEST_CASE("each series gets a polyline and a legend entry", "[results]") {
    std::vector<ResultRow> rows;
    for (const double pm : {0.05, 0.1, 0.15}) rows.push_back(sample_row(pm));
    for (const double pm : {0.05, 0.1, 0.15}) {
        ResultRow r = sample_row(pm);
        r.model = ConnectionModel::log_normal(250.0, 2.0, 4.0);
        r.p_succ += 0.01;
        rows.push_back(r);
    }
    const std::string svg = emit_plot(rows, AxesSpec{});
    std::size_t polylines = 0;
    for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
         at = svg.find("<polyline", at + 1))
        ++polylines;
    CHECK(polylines == 2);
    CHECK(svg.find("unit_disk(r=250)") != std::string::npos);
    CHECK(svg.find("log_normal(r=250,a=2,s=4)") != std::string::npos);
}

TEST_CASE("incompatible axes are rejected", "[results]") {
    CHECK_THROWS_AS(emit_plot({}, AxesSpec{}), InputError);
    // an L sweep plotted against pm collapses onto one x value
    std::vector<ResultRow> rows;
    for (const double L : {2000.0, 3000.0}) {
        ResultRow r = sample_row(0.1);
        r.road_length = L;
        rows.push_back(r);
    }
    CHECK_THROWS_AS(emit_plot(rows, AxesSpec{}), InputError);
    AxesSpec by_length;
    by_length.x_param = "L";
    CHECK_NOTHROW(emit_plot(rows, by_length));
    AxesSpec bad;
    bad.x_param = "sigma";
    CHECK_THROWS_AS(emit_plot(rows, bad), InputError);
}
