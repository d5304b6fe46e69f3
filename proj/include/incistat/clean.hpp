#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incistat/ingest.hpp"

namespace incistat::clean {

enum class TriState { Yes, No, Missing };

enum class Gender { Male, Female, Multiple, Unknown };

enum class RaceKind { Black, White, Hispanic, Asian, Other, Multiple, Missing };

enum class WeaponKind {
    Handgun,
    MultipleHandguns,
    Rifle,
    MultipleRifles,
    Shotgun,
    Other,
    Unknown,
    MultipleUnknown,
    NoData
};

enum class Era { All, Pre2018, Post2018 };  // Pre2018: year <= 2017

struct AnalysisRecord {
    std::string id;
    int year = 0;
    int month = 0;
    double latitude = 0.0;
    double longitude = 0.0;
    int killed = 0;
    int wounded = 0;
    int casualties = 0;  // killed + wounded
    std::optional<int> shots_fired;
    double shooter_age = 0.0;  // imputed; fractional after averaging
    Gender shooter_gender = Gender::Unknown;
    RaceKind race = RaceKind::Missing;
    WeaponKind weapon_type = WeaponKind::NoData;
    std::optional<ingest::TargetsKind> targets;
    TriState during_classes = TriState::Missing;
    TriState accomplice = TriState::Missing;
    TriState hostages = TriState::Missing;
    TriState shooter_killed = TriState::Missing;
    TriState gang_related = TriState::Missing;
    TriState bullied = TriState::Missing;
    TriState domestic_violence = TriState::Missing;
    std::optional<ingest::LocationKind> location_type;
};

/// Stratum medians over the numeric-age subset. Strata: child (<= 12),
/// teen (13-17), adult (>= 18); a stratum with no numeric ages falls back to
/// the overall median.
struct AgeImputationPolicy {
    double overall_median = 0.0;
    double child_median = 0.0;
    double teen_median = 0.0;
    double adult_median = 0.0;
};

/// Throws DataError when no numeric ages exist at all ("cannot impute").
AgeImputationPolicy compute_age_policy(std::span<const ingest::RawShooter> shooters);

struct ImputedAge {
    double years = 0.0;
    bool diagnosed = false;  // unrecognized text treated as blank
};

/// One shooter's age: numeric values pass through, blanks get the overall
/// median, "child"/"teen"/"adult" get their stratum median. Numeric ages
/// outside [3, 100] and unrecognized text count as blank with a diagnostic.
ImputedAge impute_age(std::string_view age_raw, const AgeImputationPolicy& policy);

Gender merge_gender(std::span<const std::string> genders_raw);
RaceKind merge_race(std::span<const std::string> races_raw);
WeaponKind merge_weapon(std::span<const std::string> weapon_classes_raw);

struct CleanResult {
    std::vector<AnalysisRecord> records;  // ordered by (year, month, id)
    std::vector<ingest::Diagnostic> diagnostics;
    AgeImputationPolicy age_policy;
};

CleanResult build_analysis_table(const ingest::JoinResult& joined);

std::vector<AnalysisRecord> split_era(std::span<const AnalysisRecord> records, Era era);

// Labels used in the analysis CSV and as factor levels.
std::string_view tri_label(TriState t);
std::string_view gender_label(Gender g);
std::string_view race_label(RaceKind r);
std::string_view weapon_label(WeaponKind w);
std::string_view era_label(Era e);
std::optional<Era> parse_era(std::string_view text);

/// Fixed-column CSV emitted by the cleaning step and consumed by every
/// downstream command. write/read round-trip bit-exactly.
std::string write_analysis_csv(std::span<const AnalysisRecord> records);
std::vector<AnalysisRecord> read_analysis_csv(std::string_view csv_text);

}  // namespace incistat::clean
