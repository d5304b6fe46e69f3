#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "incistat/plot.hpp"
#include "incistat/table.hpp"

using namespace incistat;
using report::TableDoc;

namespace {

struct DataBounds {
    double xmin, xmax, ymin, ymax;
};

DataBounds parse_bounds(const std::string& svg) {
    const auto pos = svg.find("<!-- data-bounds ");
    REQUIRE(pos != std::string::npos);
    std::istringstream in(svg.substr(pos + 17));
    DataBounds b{};
    in >> b.xmin >> b.xmax >> b.ymin >> b.ymax;
    return b;
}

}  // namespace

TEST_CASE("star thresholds are exact at the boundaries") {
    CHECK(report::significance_stars(0.05) == "");
    CHECK(report::significance_stars(0.049999) == "*");
    CHECK(report::significance_stars(0.01) == "*");
    CHECK(report::significance_stars(0.009999) == "**");
    CHECK(report::significance_stars(0.001) == "**");
    CHECK(report::significance_stars(0.0009999) == "***");
    CHECK(report::significance_stars(0.5) == "");
}

TEST_CASE("p-value formatting") {
    CHECK(report::format_p(1e-20) == "< 2.2e-16 ***");
    CHECK(report::format_p(2.2e-16) != "< 2.2e-16 ***");  // boundary is strict
    CHECK(report::format_p(0.0106411) == "0.01064 *");
    CHECK(report::format_p(0.140725) == "0.1407");
    CHECK(report::format_p(0.001769) == "0.001769 **");
}

TEST_CASE("render_table is byte-deterministic and shape-faithful") {
    TableDoc doc;
    doc.title = "T";
    doc.headers = {"a", "b"};
    doc.rows = {{"1", "x"}, {"2", "y,z"}};
    const std::string md1 = report::render_table(doc, report::TableFormat::Markdown);
    const std::string md2 = report::render_table(doc, report::TableFormat::Markdown);
    CHECK(md1 == md2);
    CHECK(md1.find("| a | b |") != std::string::npos);

    const std::string csv = report::render_table(doc, report::TableFormat::Csv);
    CHECK(csv == "a,b\n1,x\n2,\"y,z\"\n");

    TableDoc single;
    single.headers = {"only"};
    single.rows = {{"cell"}};
    const std::string tiny = report::render_table(single, report::TableFormat::Markdown);
    CHECK(tiny.find("| cell |") != std::string::npos);
}

TEST_CASE("bin_density places points per the edge rules") {
    report::Bounds b{0.0, 2.0, 0.0, 2.0};  // lat 0..2, lon 0..2
    std::vector<clean::AnalysisRecord> records(1, fixtures::base_record(0));
    records[0].latitude = 1.0;
    records[0].longitude = 1.0;  // center: on the interior edge of a 2x2 grid
    auto grid = report::bin_density(records, b, 2, 2);
    CHECK(grid.at(1, 1) == 1);  // higher-index cell
    CHECK(grid.total_in_bounds() == 1);

    records[0].latitude = 2.0;
    records[0].longitude = 2.0;  // max corner stays in bounds
    grid = report::bin_density(records, b, 2, 2);
    CHECK(grid.at(1, 1) == 1);
    CHECK(grid.out_of_bounds == 0);

    records[0].latitude = 2.5;
    grid = report::bin_density(records, b, 2, 2);
    CHECK(grid.out_of_bounds == 1);
    CHECK(grid.total_in_bounds() == 0);

    CHECK_THROWS_AS(report::bin_density(records, report::Bounds{5, 5, 0, 1}, 2, 2), DataError);
    CHECK_THROWS_AS(report::bin_density(records, b, 0, 2), DataError);
}

TEST_CASE("bin_density conserves the in-bounds count") {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> lat(20.0, 55.0);
    std::uniform_real_distribution<double> lon(-130.0, -60.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<clean::AnalysisRecord> records;
        size_t in_bounds = 0;
        const report::Bounds b{};
        for (int i = 0; i < 200; ++i) {
            auto r = fixtures::base_record(i);
            r.latitude = lat(gen);
            r.longitude = lon(gen);
            if (r.latitude >= b.lat_min && r.latitude <= b.lat_max && r.longitude >= b.lon_min &&
                r.longitude <= b.lon_max)
                ++in_bounds;
            records.push_back(std::move(r));
        }
        const size_t nx = 1 + gen() % 70;
        const size_t ny = 1 + gen() % 40;
        const auto grid = report::bin_density(records, b, nx, ny);
        CHECK(grid.total_in_bounds() == in_bounds);
        CHECK(grid.total_in_bounds() + grid.out_of_bounds == records.size());
    }
}

TEST_CASE("histogram: single value spans one bar") {
    const auto svg = report::plot_histogram(std::vector<double>{17.0}, 1.0, "h");
    CHECK(svg.find("<rect") != std::string::npos);
    // exactly one data bar beside the background and frame rects
    size_t bars = 0;
    for (size_t pos = svg.find("fill=\"#4878a8\""); pos != std::string::npos;
         pos = svg.find("fill=\"#4878a8\"", pos + 1))
        ++bars;
    CHECK(bars == 1);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(report::plot_histogram(std::vector<double>{}, 1.0, "h"), DataError);
}

TEST_CASE("rendered fit curve passes within 1 px of noiseless data points") {
    const double a = 22.49, b = 1.855e-5, c = 0.2872;
    std::vector<std::pair<double, double>> pts;
    for (int t = 0; t <= 57; ++t) pts.push_back({t, a + b * std::exp(c * t)});
    model::TrendFit fit;
    fit.kind = model::TrendFit::Kind::Exponential;
    fit.a = a;
    fit.b = b;
    fit.c = c;
    const std::vector<model::TrendFit> fits = {fit};
    const auto svg = report::plot_scatter_with_fits(pts, fits, "t");
    const auto bounds = parse_bounds(svg);

    // every data circle lies within 1 px of the curve in pixel space
    size_t checked = 0;
    for (size_t pos = svg.find("<circle cx=\""); pos != std::string::npos;
         pos = svg.find("<circle cx=\"", pos + 1)) {
        double cx = 0.0, cy = 0.0;
        REQUIRE(std::sscanf(svg.c_str() + pos, "<circle cx=\"%lf\" cy=\"%lf\"", &cx, &cy) == 2);
        // invert the x mapping, evaluate the fit, re-map to pixels
        const double span = bounds.xmax - bounds.xmin;
        const double t = bounds.xmin + (cx - report::kMarginLeft) /
                                           (report::kPlotWidth - report::kMarginLeft -
                                            report::kMarginRight) * span;
        const double expected_py =
            report::pixel_y(model::predict_trend(fit, t), bounds.ymin, bounds.ymax);
        CHECK(std::fabs(cy - expected_py) <= 1.0);
        ++checked;
    }
    CHECK(checked == pts.size());
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("rendering identical inputs yields identical bytes") {
    auto records = fixtures::random_records(5150, 120);
    const auto grid = report::bin_density(records, report::Bounds{}, 30, 20);
    CHECK(report::plot_density(grid, "d") == report::plot_density(grid, "d"));

    std::vector<double> ages;
    for (const auto& r : records) ages.push_back(r.shooter_age);
    CHECK(report::plot_histogram(ages, 1.0, "h") == report::plot_histogram(ages, 1.0, "h"));
}

TEST_CASE("coefficient plot draws the zero line and straddling intervals") {
    const std::vector<std::string> names = {"alpha", "beta"};
    const std::vector<double> est = {2.0, -0.1};
    const std::vector<double> se = {0.2, 0.3};  // beta's interval crosses zero
    const auto spec = report::coef_plot_spec(names, est, se);
    CHECK(spec.coefficients[1].interval_low < 0.0);
    CHECK(spec.coefficients[1].interval_high > 0.0);
    for (const auto& c : spec.coefficients) {
        CHECK(c.interval_low <= c.estimate);
        CHECK(c.estimate <= c.interval_high);
    }

    const auto svg = report::plot_coefficients(spec, "coef");
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // zero line
    const auto bounds = parse_bounds(svg);

    // the zero line's pixel x sits between beta's interval endpoints
    const double zx = report::pixel_x(0.0, bounds.xmin, bounds.xmax);
    const double lo = report::pixel_x(spec.coefficients[1].interval_low, bounds.xmin, bounds.xmax);
    const double hi =
        report::pixel_x(spec.coefficients[1].interval_high, bounds.xmin, bounds.xmax);
    CHECK(lo < zx);
    CHECK(zx < hi);
}
