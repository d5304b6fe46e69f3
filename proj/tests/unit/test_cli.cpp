#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "incistat/run.hpp"

using namespace incistat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

int run_cli(std::initializer_list<std::string> args) {
    return cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"definitely-not-a-command"}) == cli::kExitUsage);
    CHECK(run_cli({}) == cli::kExitUsage);
    CHECK(run_cli({"fit"}) == cli::kExitUsage);  // missing kind
}

TEST_CASE("fit on an empty cleaned table is a data error with no partial files") {
    TempDir dir("incistat_cli_empty");
    const auto table = dir.sub("empty.csv");
    {
        std::ofstream out(table);
        out << "Incident_ID,Year,Month,Latitude,Longitude,Killed,Wounded,Casualties,"
               "Shots_Fired,Shooter_Age,Shooter_Gender,Race,Weapon_Type,Targets,"
               "During_Classes,Accomplice,Hostages,Shooter_Killed,Gang_Related,Bullied,"
               "Domestic_Violence,Location_Type\n";
    }
    const auto out_dir = dir.sub("out");
    CHECK(run_cli({"fit", "ols", "--clean-table", table, "--out", out_dir,
                   "--formula", "Casualties ~ Targets"}) == cli::kExitData);
    CHECK(!fs::exists(fs::path(out_dir) / "manifest.txt"));
    CHECK(!fs::exists(fs::path(out_dir) / "fit-all-ols-anova.md"));
}

TEST_CASE("missing input file is a data error") {
    TempDir dir("incistat_cli_missing");
    CHECK(run_cli({"describe", "--clean-table", dir.sub("nope.csv"),
                   "--out", dir.sub("out")}) == cli::kExitData);
}

TEST_CASE("synth then clean round-trips through the analysis csv") {
    TempDir dir("incistat_cli_roundtrip");
    const auto data = dir.sub("data");
    REQUIRE(run_cli({"synth", "--out", data, "--n", "300", "--seed", "5", "--mess-rate",
                     "0.05"}) == cli::kExitOk);
    const auto clean_dir = dir.sub("clean");
    REQUIRE(run_cli({"clean", "--incidents", data + "/incidents.csv", "--shooters",
                     data + "/shooters.csv", "--weapons", data + "/weapons.csv", "--victims",
                     data + "/victims.csv", "--out", clean_dir}) == cli::kExitOk);

    // re-cleaning the cleaned table is the identity
    const auto again = dir.sub("again");
    REQUIRE(run_cli({"clean", "--clean-table", clean_dir + "/clean-all-analysis.csv", "--out",
                     again}) == cli::kExitOk);
    CHECK(slurp(fs::path(clean_dir) / "clean-all-analysis.csv") ==
          slurp(fs::path(again) / "clean-all-analysis.csv"));
}

TEST_CASE("end-to-end determinism: identical inputs, config, and seed give identical bytes") {
    TempDir dir("incistat_cli_determinism");
    // one shared input set, every stage run twice into separate out dirs
    const auto data = dir.sub("data");
    REQUIRE(run_cli({"synth", "--out", data, "--n", "250", "--seed", "77", "--mess-rate",
                     "0.1"}) == cli::kExitOk);
    const auto data2 = dir.sub("data2");
    REQUIRE(run_cli({"synth", "--out", data2, "--n", "250", "--seed", "77", "--mess-rate",
                     "0.1"}) == cli::kExitOk);
    CHECK(slurp(fs::path(data) / "incidents.csv") == slurp(fs::path(data2) / "incidents.csv"));
    CHECK(slurp(fs::path(data) / "manifest.txt") == slurp(fs::path(data2) / "manifest.txt"));

    for (const char* round : {"a", "b"}) {
        const auto clean_dir = dir.sub(std::string("clean_") + round);
        REQUIRE(run_cli({"clean", "--incidents", data + "/incidents.csv", "--shooters",
                         data + "/shooters.csv", "--weapons", data + "/weapons.csv",
                         "--victims", data + "/victims.csv", "--out", clean_dir,
                         "--era", "pre2018"}) == cli::kExitOk);
        const auto fit_dir = dir.sub(std::string("fit_") + round);
        REQUIRE(run_cli({"fit", "ols", "--era", "pre2018", "--clean-table",
                         clean_dir + "/clean-pre2018-analysis.csv", "--out", fit_dir,
                         "--formula", "Casualties ~ Targets + Shooter_Age"}) == cli::kExitOk);
    }
    for (const char* name : {"clean-pre2018-analysis.csv", "manifest.txt"}) {
        CHECK(slurp(fs::path(dir.sub("clean_a")) / name) ==
              slurp(fs::path(dir.sub("clean_b")) / name));
    }
    // the two fit runs read byte-identical tables from different paths, so
    // everything except the recorded input path must match
    CHECK(slurp(fs::path(dir.sub("fit_a")) / "fit-pre2018-ols-anova.md") ==
          slurp(fs::path(dir.sub("fit_b")) / "fit-pre2018-ols-anova.md"));
    CHECK(slurp(fs::path(dir.sub("fit_a")) / "fit-pre2018-ols-coefficients.md") ==
          slurp(fs::path(dir.sub("fit_b")) / "fit-pre2018-ols-coefficients.md"));
}

TEST_CASE("describe and test chisq reproduce the bundled fixture values") {
    TempDir dir("incistat_cli_fixture");
    const std::string fixture = std::string(ACCEPTANCE_DATA_DIR) + "/monthly_counts.csv";

    const auto desc = dir.sub("desc");
    REQUIRE(run_cli({"describe", "--counts", fixture, "--out", desc}) == cli::kExitOk);
    const auto summary = slurp(fs::path(desc) / "describe-all-counts.md");
    CHECK(summary.find("| Mean | 214.7 |") != std::string::npos);
    CHECK(summary.find("| Median | 217 |") != std::string::npos);
    CHECK(summary.find("| Standard Deviation | 79.59 |") != std::string::npos);

    const auto chisq = dir.sub("chisq");
    REQUIRE(run_cli({"test", "chisq", "--counts", fixture, "--out", chisq}) == cli::kExitOk);
    const auto table = slurp(fs::path(chisq) / "test-all-chisq.md");
    CHECK(table.find("chi-square = 324.6, df = 11, p < 2.2e-16") != std::string::npos);
    CHECK(table.find("| July | 70 | 214.7 | -9.874 | Lower |") != std::string::npos);
}

TEST_CASE("a dispersion-bound NB fit still writes its tables but exits 4") {
    TempDir dir("incistat_cli_nbbound");
    const auto data = dir.sub("data");
    REQUIRE(run_cli({"synth", "--out", data, "--n", "400", "--seed", "9"}) == cli::kExitOk);
    const auto clean_dir = dir.sub("clean");
    REQUIRE(run_cli({"clean", "--incidents", data + "/incidents.csv", "--shooters",
                     data + "/shooters.csv", "--weapons", data + "/weapons.csv", "--victims",
                     data + "/victims.csv", "--out", clean_dir}) == cli::kExitOk);

    // A 0/1 response is under-dispersed, so the theta search hits its bound.
    const auto nb = dir.sub("nb");
    CHECK(run_cli({"fit", "nb", "--clean-table", clean_dir + "/clean-all-analysis.csv",
                   "--out", nb, "--formula", "Casualty_Present ~ Targets"}) ==
          cli::kExitConvergence);
    CHECK(fs::exists(fs::path(nb) / "fit-all-nb-anova.md"));
    const auto manifest = slurp(fs::path(nb) / "manifest.txt");
    CHECK(manifest.find("nb.converged=no") != std::string::npos);

    // holding theta fixed reproduces the workflow cleanly
    const auto nb_fixed = dir.sub("nb_fixed");
    CHECK(run_cli({"fit", "nb", "--clean-table", clean_dir + "/clean-all-analysis.csv",
                   "--out", nb_fixed, "--formula", "Casualty_Present ~ Targets",
                   "--fixed-theta", "1.0"}) == cli::kExitOk);
}

TEST_CASE("the full test battery runs from the CLI on a synthetic table") {
    TempDir dir("incistat_cli_battery");
    const auto data = dir.sub("data");
    REQUIRE(run_cli({"synth", "--out", data, "--n", "500", "--seed", "17"}) == cli::kExitOk);
    const auto clean_dir = dir.sub("clean");
    REQUIRE(run_cli({"clean", "--incidents", data + "/incidents.csv", "--shooters",
                     data + "/shooters.csv", "--weapons", data + "/weapons.csv", "--victims",
                     data + "/victims.csv", "--out", clean_dir}) == cli::kExitOk);
    const auto table = clean_dir + "/clean-all-analysis.csv";

    for (const std::string kind : {"shapiro", "welch", "kw", "dunn"}) {
        const auto out = dir.sub("t_" + kind);
        REQUIRE(run_cli({"test", kind, "--clean-table", table, "--out", out}) == cli::kExitOk);
        CHECK(fs::exists(fs::path(out) / ("test-all-" + kind + ".md")));
        CHECK(fs::exists(fs::path(out) / "manifest.txt"));
    }

    // chisq from records (monthly counts computed from the table itself)
    const auto chisq = dir.sub("t_chisq");
    REQUIRE(run_cli({"test", "chisq", "--clean-table", table, "--out", chisq}) == cli::kExitOk);
    const auto text = slurp(fs::path(chisq) / "test-all-chisq.md");
    CHECK(text.find("| January |") != std::string::npos);

    // the fit manifest documents reference levels for every factor used
    const auto ols = dir.sub("ols");
    REQUIRE(run_cli({"fit", "ols", "--clean-table", table, "--out", ols, "--formula",
                     "Casualties ~ Targets + Bullied"}) == cli::kExitOk);
    const auto manifest = slurp(fs::path(ols) / "manifest.txt");
    CHECK(manifest.find("levels.Targets=reference:both") != std::string::npos);
    CHECK(manifest.find("levels.Bullied=reference:No") != std::string::npos);
}

TEST_CASE("era splitting partitions the cleaned output") {
    TempDir dir("incistat_cli_era");
    const auto data = dir.sub("data");
    REQUIRE(run_cli({"synth", "--out", data, "--n", "240", "--seed", "31"}) == cli::kExitOk);
    std::map<std::string, size_t> rows;
    for (const std::string era : {"all", "pre2018", "post2018"}) {
        const auto out = dir.sub("clean_" + era);
        REQUIRE(run_cli({"clean", "--incidents", data + "/incidents.csv", "--shooters",
                         data + "/shooters.csv", "--weapons", data + "/weapons.csv",
                         "--victims", data + "/victims.csv", "--out", out, "--era", era}) ==
                cli::kExitOk);
        const auto text = slurp(fs::path(out) / ("clean-" + era + "-analysis.csv"));
        rows[era] = static_cast<size_t>(std::count(text.begin(), text.end(), '\n')) - 1;
    }
    CHECK(rows["pre2018"] + rows["post2018"] == rows["all"]);
    CHECK(rows["post2018"] > 0);
}
