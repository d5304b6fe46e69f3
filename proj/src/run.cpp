#include "incistat/run.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "incistat/clean.hpp"
#include "incistat/csv.hpp"
#include "incistat/density.hpp"
#include "incistat/eliminate.hpp"
#include "incistat/ingest.hpp"
#include "incistat/manifest.hpp"
#include "incistat/plot.hpp"
#include "incistat/synth.hpp"
#include "incistat/table.hpp"

namespace incistat::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
    std::string incidents_path, shooters_path, weapons_path, victims_path;
    std::string clean_table_path;
    std::string counts_path;
    std::string out_dir = ".";
    std::string era_text = "all";
    std::string formula;
    std::string format_text = "md";
    double alpha = 0.05;
    uint64_t seed = 42;
    double fixed_theta = 0.0;  // 0 means "estimate"
    bool eliminate = false;

    // synth settings
    size_t synth_n = 800;
    double synth_theta = 1.5;
    std::string synth_beta = "0.5,0.8,-0.3";
    double mess_rate = 0.05;
    int year_min = 1966;
    int year_max = 2023;

    clean::Era era() const {
        const auto e = clean::parse_era(era_text);
        if (!e) throw DataError("unknown era '" + era_text + "'");
        return *e;
    }
    report::TableFormat format() const {
        if (format_text == "md") return report::TableFormat::Markdown;
        if (format_text == "csv") return report::TableFormat::Csv;
        throw DataError("unknown table format '" + format_text + "'");
    }
    std::string extension() const { return format_text == "md" ? ".md" : ".csv"; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Buffers every output; nothing reaches disk until flush().
class OutputSet {
  public:
    explicit OutputSet(std::string dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    void add_table(const RunConfig& config, const std::string& name,
                   const report::TableDoc& doc) {
        add(name + config.extension(), report::render_table(doc, config.format()));
    }

    void flush(report::Manifest& manifest) {
        fs::create_directories(dir_);
        for (const auto& [name, content] : files_) manifest.add_file(name, content);
        for (const auto& [name, content] : files_) {
            std::ofstream out(fs::path(dir_) / name, std::ios::binary);
            if (!out) throw DataError("cannot write output file '" + name + "'");
            out << content;
        }
        std::ofstream mf(fs::path(dir_) / "manifest.txt", std::ios::binary);
        mf << manifest.render();
    }

  private:
    std::string dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

struct LoadedData {
    std::vector<clean::AnalysisRecord> records;          // era-filtered
    std::vector<clean::AnalysisRecord> all_records;      // before the era split
    std::vector<ingest::Diagnostic> diagnostics;
    std::vector<ingest::RawShooter> raw_shooters;        // only for 4-table input
    bool from_tables = false;
};

void note_counts(report::Manifest& manifest, const char* key, size_t parsed, size_t total) {
    manifest.add(std::string("rows.parsed.") + key, std::to_string(parsed));
    manifest.add(std::string("rows.input.") + key, std::to_string(total));
}

LoadedData load_records(const RunConfig& config, report::Manifest& manifest) {
    LoadedData data;
    if (!config.clean_table_path.empty()) {
        manifest.add("input.clean_table", config.clean_table_path);
        data.all_records = clean::read_analysis_csv(read_file(config.clean_table_path));
    } else if (!config.incidents_path.empty()) {
        data.from_tables = true;
        manifest.add("input.incidents", config.incidents_path);
        manifest.add("input.shooters", config.shooters_path);
        manifest.add("input.weapons", config.weapons_path);
        manifest.add("input.victims", config.victims_path);

        const auto incidents = ingest::parse_incidents(read_file(config.incidents_path));
        const auto shooters = ingest::parse_shooters(read_file(config.shooters_path));
        const auto weapons = ingest::parse_weapons(read_file(config.weapons_path));
        const auto victims = ingest::parse_victims(read_file(config.victims_path));
        note_counts(manifest, "incidents", incidents.rows.size(), incidents.data_row_count);
        note_counts(manifest, "shooters", shooters.rows.size(), shooters.data_row_count);
        note_counts(manifest, "weapons", weapons.rows.size(), weapons.data_row_count);
        note_counts(manifest, "victims", victims.rows.size(), victims.data_row_count);

        auto join = ingest::join_by_incident(incidents.rows, shooters.rows, weapons.rows,
                                             victims.rows);
        manifest.add("rows.joined", std::to_string(join.incidents.size()));
        auto cleaned = clean::build_analysis_table(join);
        data.all_records = std::move(cleaned.records);
        data.raw_shooters = shooters.rows;

        for (const auto& source :
             {incidents.diagnostics, shooters.diagnostics, weapons.diagnostics,
              victims.diagnostics, join.diagnostics, cleaned.diagnostics})
            data.diagnostics.insert(data.diagnostics.end(), source.begin(), source.end());
    } else {
        throw DataError("no input: pass --clean-table or the four table files");
    }
    data.records = clean::split_era(data.all_records, config.era());
    manifest.add("rows.cleaned", std::to_string(data.all_records.size()));
    manifest.add("rows.era", std::to_string(data.records.size()));
    manifest.add("diagnostics", std::to_string(data.diagnostics.size()));
    return data;
}

std::string diagnostics_text(const std::vector<ingest::Diagnostic>& diagnostics) {
    std::string out = "table,row,column,reason\n";
    for (const auto& d : diagnostics) out += d.to_line() + "\n";
    return out;
}

/// label,count CSV (the bundled monthly fixture format).
std::pair<std::vector<std::string>, std::vector<double>> read_counts(const std::string& path) {
    const auto table = csv::parse(read_file(path));
    if (table.header.size() < 2) throw SchemaError("counts file: need label,count columns");
    std::vector<std::string> labels;
    std::vector<double> counts;
    for (const auto& row : table.rows) {
        if (row.size() < 2) continue;
        const auto v = parse_real(row[1]);
        if (!v) throw DataError("counts file: bad count '" + row[1] + "'");
        labels.push_back(trim(row[0]));
        counts.push_back(*v);
    }
    if (counts.empty()) throw DataError("counts file: no rows");
    return {labels, counts};
}

std::vector<std::pair<double, double>> yearly_counts(
    std::span<const clean::AnalysisRecord> records) {
    if (records.empty()) throw DataError("no records for the yearly trend");
    std::map<int, double> by_year;
    int lo = records[0].year, hi = records[0].year;
    for (const auto& r : records) {
        ++by_year[r.year];
        lo = std::min(lo, r.year);
        hi = std::max(hi, r.year);
    }
    std::vector<std::pair<double, double>> points;
    for (int year = lo; year <= hi; ++year)
        points.push_back({static_cast<double>(year - lo), by_year[year]});
    return points;
}

int first_year(std::span<const clean::AnalysisRecord> records) {
    int lo = records.empty() ? 0 : records[0].year;
    for (const auto& r : records) lo = std::min(lo, r.year);
    return lo;
}

std::string output_name(const RunConfig& config, const std::string& command,
                        const std::string& label) {
    return command + "-" + config.era_text + "-" + label;
}

const std::vector<std::string> kKnownColumns = model::analysis_column_names();

// ---- subcommand bodies ----

void run_synth(const RunConfig& config, OutputSet& out, report::Manifest& manifest) {
    synth::SynthSpec spec;
    spec.n_incidents = config.synth_n;
    spec.theta = config.synth_theta;
    spec.mess_rate = config.mess_rate;
    spec.year_min = config.year_min;
    spec.year_max = config.year_max;
    spec.beta.clear();
    std::stringstream ss(config.synth_beta);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto v = parse_real(token);
        if (!v) throw DataError("synth: bad beta component '" + token + "'");
        spec.beta.push_back(*v);
    }
    manifest.add("synth.n", std::to_string(spec.n_incidents));
    manifest.add("synth.theta", format_double(spec.theta));
    manifest.add("synth.beta", config.synth_beta);
    manifest.add("synth.mess_rate", format_double(spec.mess_rate));

    const auto tables = synth::generate_synthetic(spec, config.seed);
    out.add("incidents.csv", tables.incidents);
    out.add("shooters.csv", tables.shooters);
    out.add("weapons.csv", tables.weapons);
    out.add("victims.csv", tables.victims);
}

void run_ingest(const RunConfig& config, OutputSet& out, report::Manifest& manifest) {
    // Parse and join only; no cleaning rules run here.
    if (config.incidents_path.empty())
        throw DataError("ingest: pass the four table files");
    manifest.add("input.incidents", config.incidents_path);
    manifest.add("input.shooters", config.shooters_path);
    manifest.add("input.weapons", config.weapons_path);
    manifest.add("input.victims", config.victims_path);

    const auto incidents = ingest::parse_incidents(read_file(config.incidents_path));
    const auto shooters = ingest::parse_shooters(read_file(config.shooters_path));
    const auto weapons = ingest::parse_weapons(read_file(config.weapons_path));
    const auto victims = ingest::parse_victims(read_file(config.victims_path));
    note_counts(manifest, "incidents", incidents.rows.size(), incidents.data_row_count);
    note_counts(manifest, "shooters", shooters.rows.size(), shooters.data_row_count);
    note_counts(manifest, "weapons", weapons.rows.size(), weapons.data_row_count);
    note_counts(manifest, "victims", victims.rows.size(), victims.data_row_count);

    const auto join =
        ingest::join_by_incident(incidents.rows, shooters.rows, weapons.rows, victims.rows);
    manifest.add("rows.joined", std::to_string(join.incidents.size()));

    std::vector<ingest::Diagnostic> diagnostics;
    for (const auto& source : {incidents.diagnostics, shooters.diagnostics, weapons.diagnostics,
                               victims.diagnostics, join.diagnostics})
        diagnostics.insert(diagnostics.end(), source.begin(), source.end());
    manifest.add("diagnostics", std::to_string(diagnostics.size()));
    out.add(output_name(config, "ingest", "diagnostics") + ".txt",
            diagnostics_text(diagnostics));
}

void run_clean(const RunConfig& config, OutputSet& out, report::Manifest& manifest) {
    const auto data = load_records(config, manifest);
    out.add(output_name(config, "clean", "analysis") + ".csv",
            clean::write_analysis_csv(data.records));
    out.add(output_name(config, "clean", "diagnostics") + ".txt",
            diagnostics_text(data.diagnostics));
}

void run_describe(const RunConfig& config, OutputSet& out, report::Manifest& manifest) {
    if (!config.counts_path.empty()) {
        manifest.add("input.counts", config.counts_path);
        const auto [labels, counts] = read_counts(config.counts_path);
        out.add_table(config, output_name(config, "describe", "counts"),
                      report::descriptives_doc(stats::describe(counts), "Count Summary"));
        return;
    }
    const auto data = load_records(config, manifest);
    if (data.records.empty()) throw DataError("describe: no records after the era split");

    auto numeric_column = [&](const std::string& name) {
        std::vector<double> values;
        size_t missing = 0;
        for (const auto& r : data.records) {
            if (const auto v = model::numeric_value(r, name))
                values.push_back(*v);
            else
                ++missing;
        }
        return std::make_pair(values, missing);
    };
    for (const std::string name : {"Casualties", "Killed", "Wounded", "Shots_Fired"}) {
        const auto [values, missing] = numeric_column(name);
        if (values.empty()) continue;
        out.add_table(config, output_name(config, "describe", name),
                      report::descriptives_doc(stats::describe(values, missing),
                                               "Summary Statistics for " + name));
    }

    // Shooter-age summaries stay on raw numeric values when the source
    // tables are available; the analysis table only has imputed ages.
    if (data.from_tables) {
        std::vector<double> raw_ages;
        size_t missing = 0;
        for (const auto& s : data.raw_shooters) {
            const auto v = parse_integer(s.age_raw);
            if (v && *v >= 3 && *v <= 100)
                raw_ages.push_back(static_cast<double>(*v));
            else
                ++missing;
        }
        if (!raw_ages.empty())
            out.add_table(config, output_name(config, "describe", "Shooter_Age_raw"),
                          report::descriptives_doc(stats::describe(raw_ages, missing),
                                                   "Summary Statistics for Age (raw)"));
    }
    {
        const auto [values, missing] = numeric_column("Shooter_Age");
        out.add_table(config, output_name(config, "describe", "Shooter_Age"),
                      report::descriptives_doc(stats::describe(values, missing),
                                               "Summary Statistics for Age (imputed)"));
    }

    for (const std::string name :
         {"Shooter_Gender", "Race", "Weapon_Type", "Targets", "Location_Type", "Bullied",
          "Gang_Related", "During_Classes", "Accomplice", "Hostages", "Shooter_Killed"}) {
        std::map<std::string, size_t> freq;
        size_t total = 0;
        for (const auto& r : data.records) {
            if (const auto v = model::categorical_value(r, name)) {
                ++freq[*v];
                ++total;
            }
        }
        if (freq.empty()) continue;
        std::vector<std::pair<std::string, size_t>> rows(freq.begin(), freq.end());
        out.add_table(config, output_name(config, "describe", name),
                      report::frequency_doc(rows, total, name + " Breakdown"));
    }

    // monthly incident counts
    std::vector<double> monthly(12, 0.0);
    for (const auto& r : data.records) monthly[static_cast<size_t>(r.month - 1)] += 1.0;
    static const std::vector<std::string> kMonths = {
        "January", "February", "March",     "April",   "May",      "June",
        "July",    "August",   "September", "October", "November", "December"};
    report::TableDoc monthly_doc;
    monthly_doc.title = "Incidents Per Month";
    monthly_doc.headers = {"Month", "Occurrences"};
    for (size_t m = 0; m < 12; ++m)
        monthly_doc.rows.push_back({kMonths[m], report::format_value(monthly[m])});
    out.add_table(config, output_name(config, "describe", "monthly"), monthly_doc);
    out.add_table(config, output_name(config, "describe", "monthly-summary"),
                  report::descriptives_doc(stats::describe(monthly), "Monthly Count Summary"));
}

/// Casualty counts for the targeted (x) and untargeted (y) events.
std::pair<std::vector<double>, std::vector<double>> targeted_split(
    std::span<const clean::AnalysisRecord> records) {
    std::vector<double> x, y;
    for (const auto& r : records) {
        if (!r.targets) continue;
        const bool targeted = *r.targets == ingest::TargetsKind::VictimsTargeted ||
                              *r.targets == ingest::TargetsKind::Both;
        (targeted ? x : y).push_back(static_cast<double>(r.casualties));
    }
    return {x, y};
}

/// Casualties grouped by merged weapon type (skipping "no data").
std::pair<std::vector<std::vector<double>>, std::vector<std::string>> weapon_groups(
    std::span<const clean::AnalysisRecord> records) {
    std::map<std::string, std::vector<double>> groups;
    for (const auto& r : records) {
        if (r.weapon_type == clean::WeaponKind::NoData) continue;
        groups[std::string(clean::weapon_label(r.weapon_type))].push_back(
            static_cast<double>(r.casualties));
    }
    std::vector<std::vector<double>> values;
    std::vector<std::string> labels;
    for (auto& [label, data] : groups) {
        labels.push_back(label);
        values.push_back(std::move(data));
    }
    return {values, labels};
}

void run_test(const RunConfig& config, const std::string& which, OutputSet& out,
              report::Manifest& manifest) {
    manifest.add("test", which);
    if (which == "chisq") {
        std::vector<std::string> labels;
        std::vector<double> counts;
        if (!config.counts_path.empty()) {
            manifest.add("input.counts", config.counts_path);
            std::tie(labels, counts) = read_counts(config.counts_path);
        } else {
            const auto data = load_records(config, manifest);
            static const char* kMonths[] = {"January", "February", "March",     "April",
                                            "May",     "June",     "July",      "August",
                                            "September", "October", "November", "December"};
            counts.assign(12, 0.0);
            for (const auto& r : data.records) counts[static_cast<size_t>(r.month - 1)] += 1.0;
            labels.assign(kMonths, kMonths + 12);
        }
        const auto gof = stats::chi_square_gof(counts, labels);
        out.add_table(config, output_name(config, "test", "chisq"),
                      report::gof_doc(gof, "Statistical Significance of Counts"));
        return;
    }

    const auto data = load_records(config, manifest);
    if (which == "shapiro") {
        std::vector<double> ages;
        for (const auto& r : data.records) ages.push_back(r.shooter_age);
        const auto result = stats::shapiro_wilk(ages);
        out.add_table(config, output_name(config, "test", "shapiro"),
                      report::normality_doc(result, "Normality Test Results for Shooter Ages"));
    } else if (which == "welch") {
        const auto [x, y] = targeted_split(data.records);
        const auto result = stats::welch_t(x, y);
        out.add_table(config, output_name(config, "test", "welch"),
                      report::welch_doc(result, "T-Test: Casualties, Targeted vs Untargeted"));
    } else if (which == "kw") {
        const auto [groups, labels] = weapon_groups(data.records);
        const auto result = stats::kruskal_wallis(groups);
        out.add_table(config, output_name(config, "test", "kw"),
                      report::rank_test_doc(result, "Kruskal-Wallis: Casualties by Weapon Type"));
    } else if (which == "dunn") {
        const auto [groups, labels] = weapon_groups(data.records);
        const auto rows = stats::dunn_posthoc(groups, labels);
        out.add_table(config, output_name(config, "test", "dunn"),
                      report::posthoc_doc(rows, "Dunn Post-hoc: Casualties by Weapon Type"));
    } else {
        throw CLI::ValidationError("test", "unknown test '" + which + "'");
    }
}

int run_fit(const RunConfig& config, const std::string& which, OutputSet& out,
            report::Manifest& manifest) {
    manifest.add("fit", which);
    const auto data = load_records(config, manifest);

    if (which == "trend") {
        const auto points = yearly_counts(data.records);
        const auto linear = model::fit_trend(points, model::TrendFit::Kind::Linear);
        const auto exponential = model::fit_trend(points, model::TrendFit::Kind::Exponential);
        const int year0 = first_year(data.records);
        auto doc = report::trend_doc(linear, exponential, year0, "Incidents Per Year: Trend Fits");
        const double next_t = points.back().first + 1.0;
        doc.rows.push_back({"prediction",
                            "year " + std::to_string(year0 + static_cast<int>(next_t)) +
                                " (exponential)",
                            report::format_value(model::predict_trend(exponential, next_t))});
        out.add_table(config, output_name(config, "fit", "trend"), doc);
        const std::vector<model::TrendFit> fits = {linear, exponential};
        out.add(output_name(config, "fit", "trend") + ".svg",
                report::plot_scatter_with_fits(points, fits, "Incidents per year"));
        manifest.add("trend.iterations", std::to_string(exponential.iterations));
        return kExitOk;
    }

    std::string formula_text = config.formula;
    if (formula_text.empty())
        formula_text = which == "nb" ? "Casualty_Present ~ Shooter_Age + Targets"
                                     : "Casualties ~ Shooter_Gender + Weapon_Type + Targets + "
                                       "Accomplice + Bullied + Shots_Fired";
    manifest.add("formula", formula_text);
    auto formula = model::parse_formula(formula_text, kKnownColumns);

    if (config.eliminate) {
        const auto kind = which == "nb" ? model::FitKind::NegBin : model::FitKind::Ols;
        const auto result = model::eliminate_insignificant(
            data.records, formula, config.alpha, kind,
            config.fixed_theta > 0.0 ? std::optional<double>(config.fixed_theta)
                                     : std::nullopt);
        report::TableDoc audit;
        audit.title = "Eliminated Terms (alpha = " + report::format_value(config.alpha) + ")";
        audit.headers = {"Step", "Dropped Term", "p-value"};
        for (const auto& entry : result.trail)
            audit.rows.push_back({std::to_string(entry.step), entry.term,
                                  report::format_p(entry.p, false)});
        out.add_table(config, output_name(config, "fit", which + "-elimination"), audit);
        formula = result.formula;
        manifest.add("formula.final", model::render_formula(formula));
    }

    const auto design = model::encode_design(data.records, formula);
    manifest.add("rows.design", std::to_string(design.x.rows()));
    manifest.add("rows.excluded", std::to_string(design.excluded_rows));
    for (const auto& dropped : design.dropped_terms) manifest.add("term.dropped", dropped);
    for (const auto& factor : design.level_maps) {
        std::string levels = "reference:" + factor.levels.front();
        for (size_t i = 1; i < factor.levels.size(); ++i) levels += "," + factor.levels[i];
        manifest.add("levels." + factor.column, levels);
    }

    if (which == "ols") {
        const auto table = model::anova_type1(design);
        out.add_table(config, output_name(config, "fit", "ols-anova"),
                      report::anova_table_doc(table, "ANOVA Table"));
        const auto fit = model::ols_fit(design.x, design.y, design.column_names);
        out.add_table(config, output_name(config, "fit", "ols-coefficients"),
                      report::coefficients_doc(fit, "Linear Model Coefficients"));
        if (design.x.cols() >= 3)
            out.add_table(config, output_name(config, "fit", "ols-vif"),
                          report::vif_doc(model::vif(design.x, design.column_names),
                                          "Variance Inflation Factors"));
    } else if (which == "nb") {
        const std::optional<double> fixed =
            config.fixed_theta > 0.0 ? std::optional<double>(config.fixed_theta) : std::nullopt;
        const auto table = model::anova_deviance(design, fixed);
        out.add_table(config, output_name(config, "fit", "nb-anova"),
                      report::anova_table_doc(table, "Analysis of Deviance Table"));
        const auto fit = model::nb_fit(design.x, design.y, fixed, design.column_names);
        out.add_table(config, output_name(config, "fit", "nb-coefficients"),
                      report::nb_coefficients_doc(fit, "Negative Binomial Coefficients"));
        manifest.add("nb.converged", fit.converged ? "yes" : "no");
        manifest.add("nb.theta", format_double(fit.theta));
        if (!fit.converged) {
            // The tables still go out, flagged; the exit status reports it.
            std::cerr << "warning: " << fit.warning << "\n";
            return kExitConvergence;
        }
    } else {
        throw CLI::ValidationError("fit", "unknown fit '" + which + "'");
    }
    return kExitOk;
}

void run_report(const RunConfig& config, OutputSet& out, report::Manifest& manifest) {
    const auto data = load_records(config, manifest);
    if (data.records.empty()) throw DataError("report: no records after the era split");

    std::vector<double> ages;
    for (const auto& r : data.records) ages.push_back(r.shooter_age);
    out.add(output_name(config, "report", "age-histogram") + ".svg",
            report::plot_histogram(ages, 1.0, "Histogram of Shooter Ages"));

    const auto points = yearly_counts(data.records);
    if (points.size() >= 4) {
        const auto linear = model::fit_trend(points, model::TrendFit::Kind::Linear);
        const auto exponential = model::fit_trend(points, model::TrendFit::Kind::Exponential);
        const std::vector<model::TrendFit> fits = {linear, exponential};
        out.add(output_name(config, "report", "yearly-scatter") + ".svg",
                report::plot_scatter_with_fits(points, fits, "Incidents per year"));
    }

    const std::string formula_text =
        config.formula.empty() ? "Casualties ~ Targets + Weapon_Type + Shots_Fired"
                               : config.formula;
    manifest.add("formula", formula_text);
    const auto design =
        model::encode_design(data.records, model::parse_formula(formula_text, kKnownColumns));
    const auto fit = model::ols_fit(design.x, design.y, design.column_names);
    std::vector<double> estimates(fit.beta.data(), fit.beta.data() + fit.beta.size());
    std::vector<double> errors(fit.standard_errors.data(),
                               fit.standard_errors.data() + fit.standard_errors.size());
    out.add(output_name(config, "report", "coefficients") + ".svg",
            report::plot_coefficients(
                report::coef_plot_spec(design.column_names, estimates, errors),
                "Coefficient Estimates"));

    const auto grid = report::bin_density(data.records, report::Bounds{}, 60, 30);
    manifest.add("density.out_of_bounds", std::to_string(grid.out_of_bounds));
    out.add(output_name(config, "report", "density") + ".svg",
            report::plot_density(grid, "Incident Density"));
}

}  // namespace

int run(const std::vector<std::string>& args) {
    RunConfig config;
    CLI::App app{"incistat: incident-data statistics pipeline"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_inputs = true) {
        cmd->add_option("--out", config.out_dir, "output directory");
        cmd->add_option("--era", config.era_text, "all | pre2018 | post2018");
        cmd->add_option("--format", config.format_text, "table format: md | csv");
        cmd->add_option("--seed", config.seed, "random seed, recorded in the manifest");
        if (with_inputs) {
            cmd->add_option("--incidents", config.incidents_path, "incidents table CSV");
            cmd->add_option("--shooters", config.shooters_path, "shooters table CSV");
            cmd->add_option("--weapons", config.weapons_path, "weapons table CSV");
            cmd->add_option("--victims", config.victims_path, "victims table CSV");
            cmd->add_option("--clean-table", config.clean_table_path,
                            "previously cleaned analysis CSV");
        }
    };

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic four-table dataset");
    add_common(synth_cmd, false);
    synth_cmd->add_option("--n", config.synth_n, "number of incidents");
    synth_cmd->add_option("--theta", config.synth_theta, "dispersion of the casualty counts");
    synth_cmd->add_option("--beta", config.synth_beta,
                          "comma-separated intercept,targeted,age coefficients");
    synth_cmd->add_option("--mess-rate", config.mess_rate,
                          "rate of deliberate imperfections");
    synth_cmd->add_option("--year-min", config.year_min, "first year");
    synth_cmd->add_option("--year-max", config.year_max, "last year");

    auto* ingest_cmd = app.add_subcommand("ingest", "parse and join the four tables");
    add_common(ingest_cmd);
    auto* clean_cmd = app.add_subcommand("clean", "emit the cleaned analysis table");
    add_common(clean_cmd);

    auto* describe_cmd = app.add_subcommand("describe", "descriptive statistics tables");
    add_common(describe_cmd);
    describe_cmd->add_option("--counts", config.counts_path, "label,count CSV fixture");

    auto* test_cmd = app.add_subcommand("test", "hypothesis tests");
    add_common(test_cmd);
    test_cmd->add_option("--counts", config.counts_path, "label,count CSV fixture (chisq)");
    std::string test_which;
    test_cmd->add_option("kind", test_which, "chisq | shapiro | welch | kw | dunn")
        ->required();

    auto* fit_cmd = app.add_subcommand("fit", "regression and trend models");
    add_common(fit_cmd);
    std::string fit_which;
    fit_cmd->add_option("kind", fit_which, "ols | nb | trend")->required();
    fit_cmd->add_option("--formula", config.formula, "model formula");
    fit_cmd->add_option("--alpha", config.alpha, "elimination threshold")
        ->check(CLI::Range(1e-9, 1.0));
    fit_cmd->add_flag("--eliminate", config.eliminate, "drop insignificant terms iteratively");
    fit_cmd->add_option("--fixed-theta", config.fixed_theta,
                        "hold the NB dispersion fixed instead of estimating it");

    auto* report_cmd = app.add_subcommand("report", "figures (SVG)");
    add_common(report_cmd);
    report_cmd->add_option("--formula", config.formula, "formula for the coefficient plot");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    report::Manifest manifest;
    OutputSet out(config.out_dir);
    int status = kExitOk;
    try {
        const std::string command = app.get_subcommands().front()->get_name();
        manifest.add("command", command);
        manifest.add("era", config.era_text);
        manifest.add("seed", std::to_string(config.seed));
        manifest.add("alpha", format_double(config.alpha));
        manifest.add("format", config.format_text);

        if (command == "synth")
            run_synth(config, out, manifest);
        else if (command == "ingest")
            run_ingest(config, out, manifest);
        else if (command == "clean")
            run_clean(config, out, manifest);
        else if (command == "describe")
            run_describe(config, out, manifest);
        else if (command == "test")
            run_test(config, test_which, out, manifest);
        else if (command == "fit")
            status = run_fit(config, fit_which, out, manifest);
        else if (command == "report")
            run_report(config, out, manifest);

        out.flush(manifest);
        return status;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {  // filesystem errors and the like
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace incistat::cli
