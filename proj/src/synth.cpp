#include "incistat/synth.hpp"

#include <cmath>
#include <cstdio>

#include "incistat/rng.hpp"

namespace incistat::synth {

namespace {

void check_prevalence(const std::vector<double>& p, const char* what) {
    double sum = 0.0;
    for (const double v : p) {
        if (v < 0.0) throw DataError(std::string("synth: negative prevalence in ") + what);
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw DataError(std::string("synth: ") + what + " prevalences must sum to 1");
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

const char* kAffiliations[] = {"Student",    "No Relation", "Former Student",
                               "Nonstudent", "Parent",      "Relative"};

}  // namespace

void SynthSpec::validate() const {
    if (n_incidents == 0) throw DataError("synth: n_incidents must be positive");
    if (year_min > year_max) throw DataError("synth: empty year range");
    if (beta.size() != 3) throw DataError("synth: beta must have 3 components");
    if (theta <= 0.0) throw DataError("synth: theta must be positive");
    if (mess_rate < 0.0 || mess_rate > 1.0) throw DataError("synth: mess_rate outside [0,1]");
    check_prevalence(weapon_prevalence, "weapon");
    check_prevalence(targets_prevalence, "targets");
    check_prevalence(gender_prevalence, "gender");
    check_prevalence(race_prevalence, "race");
}

SynthTables generate_synthetic(const SynthSpec& spec, uint64_t seed) {
    spec.validate();
    Rng rng(seed);

    SynthTables out;
    out.incidents =
        "Incident_ID,Date,Latitude,Longitude,Killed,Wounded,Shots_Fired,During_Classes,"
        "Accomplice,Hostages,Shooter_Killed,Gang_Related,Targets,Location_Type\n";
    out.shooters = "Incident_ID,Age,Gender,Race,Affiliation,Bullied,Domestic_Violence\n";
    out.weapons = "Incident_ID,Weapon_Type\n";
    out.victims = "Incident_ID,Injury,Gender,Affiliation,Age_Class,Race\n";

    static const char* kTargetLabels[] = {"victims targeted", "random shooting", "both",
                                          "neither"};
    static const char* kGenderLabels[] = {"Male", "Female", ""};
    static const char* kRaceLabels[] = {"Black", "White", "Hispanic", "Asian", "Other", ""};
    static const char* kLocations[] = {"Inside", "Outside", "Off Campus", "School Bus",
                                       "Both Inside/Outside"};
    static const double kLocationPrev[] = {0.2999, 0.6067, 0.0284, 0.0518, 0.0132};
    // weapon rows per merged category; empty set means "no data"
    static const std::vector<std::vector<const char*>> kWeaponRows = {
        {"Handgun"},           {"Handgun", "Handgun"}, {"Rifle"}, {"Rifle", "Rifle"},
        {"Shotgun"},           {"Other"},              {"Unknown"},
        {"Handgun", "Rifle"},  {}};

    auto yes_no = [&](double p_yes, double p_missing) -> std::string {
        if (rng.bernoulli(p_missing)) return "";
        return rng.bernoulli(p_yes) ? "Yes" : "No";
    };

    for (size_t i = 0; i < spec.n_incidents; ++i) {
        char id[24];
        std::snprintf(id, sizeof(id), "INC-%05zu", i + 1);

        // Yearly volume ramps up sharply near the end of the range, like the
        // production data: a flat base plus a recent surge.
        int year;
        const int span = spec.year_max - spec.year_min + 1;
        if (span > 8 && rng.bernoulli(0.45)) {
            year = spec.year_max - 5 + static_cast<int>(rng.uniform_index(6));
        } else {
            year = spec.year_min + static_cast<int>(rng.uniform_index(
                                       static_cast<uint64_t>(span)));
        }
        const int month = 1 + static_cast<int>(rng.uniform_index(12));
        const int day = 1 + static_cast<int>(rng.uniform_index(28));
        const double lat = rng.uniform(24.5, 49.5);
        const double lon = rng.uniform(-124.5, -66.5);

        const size_t target_idx = rng.categorical(spec.targets_prevalence);
        const bool targeted = target_idx == 0;
        const size_t weapon_idx = rng.categorical(spec.weapon_prevalence);
        const bool accomplice = rng.bernoulli(0.224);
        const size_t n_shooters = accomplice ? 2 : 1;

        // shooter ages drive the regression covariate
        double age_sum = 0.0;
        std::vector<int> ages;
        for (size_t s = 0; s < n_shooters; ++s) {
            const double raw = 20.0 + 8.0 * rng.normal();
            const int age = static_cast<int>(std::clamp(std::round(raw), 5.0, 60.0));
            ages.push_back(age);
            age_sum += age;
        }
        const double mean_age = age_sum / static_cast<double>(n_shooters);

        const double mu = std::exp(spec.beta[0] + spec.beta[1] * (targeted ? 1.0 : 0.0) +
                                   spec.beta[2] * (mean_age - 20.0) / 10.0);
        const int casualties = rng.neg_binomial(mu, spec.theta);
        const int killed = rng.binomial(casualties, 0.21);
        const int wounded = casualties - killed;
        const bool shots_missing = rng.bernoulli(0.10);
        const int shots = casualties + rng.poisson(3.0);

        char date[16];
        std::snprintf(date, sizeof(date), "%04d-%02d-%02d", year, month, day);
        out.incidents += std::string(id) + "," + date + "," + coord(lat) + "," + coord(lon) +
                         "," + std::to_string(killed) + "," + std::to_string(wounded) + "," +
                         (shots_missing ? "" : std::to_string(shots)) + "," +
                         yes_no(0.616, 0.05) + "," + (accomplice ? "Yes" : "No") + "," +
                         yes_no(0.024, 0.05) + "," + yes_no(0.099, 0.05) + "," +
                         yes_no(0.136, 0.05) + "," + kTargetLabels[target_idx] + "," +
                         kLocations[rng.categorical(kLocationPrev)] + "\n";

        // mess-rate: occasionally duplicate the incident row verbatim
        if (spec.mess_rate > 0.0 && rng.bernoulli(spec.mess_rate * 0.1)) {
            const size_t header_end = out.incidents.find('\n');
            const size_t last_line = out.incidents.rfind('\n', out.incidents.size() - 2);
            out.incidents += out.incidents.substr(last_line + 1);
            (void)header_end;
        }

        for (size_t s = 0; s < n_shooters; ++s) {
            std::string age_text = std::to_string(ages[s]);
            if (spec.mess_rate > 0.0 && rng.bernoulli(spec.mess_rate)) {
                if (rng.bernoulli(0.5)) {
                    age_text = "";
                } else {
                    age_text = ages[s] <= 12 ? "child" : (ages[s] <= 17 ? "teen" : "adult");
                }
            }
            out.shooters += std::string(id) + "," + age_text + "," +
                            kGenderLabels[rng.categorical(spec.gender_prevalence)] + "," +
                            kRaceLabels[rng.categorical(spec.race_prevalence)] + "," +
                            kAffiliations[rng.uniform_index(6)] + "," + yes_no(0.046, 0.15) +
                            "," + yes_no(0.052, 0.15) + "\n";
        }

        for (const char* weapon : kWeaponRows[weapon_idx])
            out.weapons += std::string(id) + "," + weapon + "\n";

        static const double kVictimGender[] = {0.7594, 0.2406};
        static const char* kVictimGenderLabels[] = {"Male", "Female"};
        static const double kVictimAge[] = {0.5402, 0.3371, 0.1218};
        static const char* kVictimAgeLabels[] = {"Teen", "Adult", "Child"};
        static const double kVictimRace[] = {0.5029, 0.3596, 0.1053, 0.0263, 0.0059};
        static const char* kVictimRaceLabels[] = {"Black", "White", "Hispanic", "Asian",
                                                  "Unknown"};
        auto victim_row = [&](const char* injury) {
            out.victims += std::string(id) + "," + injury + "," +
                           kVictimGenderLabels[rng.categorical(kVictimGender)] + "," +
                           kAffiliations[rng.uniform_index(6)] + "," +
                           kVictimAgeLabels[rng.categorical(kVictimAge)] + "," +
                           kVictimRaceLabels[rng.categorical(kVictimRace)] + "\n";
        };
        for (int v = 0; v < killed; ++v) victim_row("Fatal");
        for (int v = 0; v < wounded; ++v) victim_row("Wounded");
        if (casualties == 0 && rng.bernoulli(0.2)) victim_row("None");
    }
    return out;
}

}  // namespace incistat::synth
