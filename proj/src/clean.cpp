#include "incistat/clean.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "incistat/csv.hpp"

namespace incistat::clean {

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::optional<int> numeric_age(std::string_view raw) {
    const auto v = parse_integer(raw);
    if (!v || *v < 3 || *v > 100) return std::nullopt;
    return static_cast<int>(*v);
}

TriState tri_from(std::optional<bool> v) {
    if (!v) return TriState::Missing;
    return *v ? TriState::Yes : TriState::No;
}

/// Shooter-level yes/no flags merged across shooters: any yes wins, then any
/// no; otherwise missing.
TriState tri_from_any(std::span<const std::optional<bool>> values) {
    bool saw_no = false;
    for (const auto& v : values) {
        if (v && *v) return TriState::Yes;
        if (v && !*v) saw_no = true;
    }
    return saw_no ? TriState::No : TriState::Missing;
}

}  // namespace

AgeImputationPolicy compute_age_policy(std::span<const ingest::RawShooter> shooters) {
    std::vector<double> all, child, teen, adult;
    for (const auto& s : shooters) {
        const auto age = numeric_age(s.age_raw);
        if (!age) continue;
        all.push_back(*age);
        if (*age <= 12)
            child.push_back(*age);
        else if (*age <= 17)
            teen.push_back(*age);
        else
            adult.push_back(*age);
    }
    if (all.empty()) throw DataError("compute_age_policy: no numeric ages, cannot impute");

    AgeImputationPolicy policy;
    policy.overall_median = median_of(all);
    policy.child_median = child.empty() ? policy.overall_median : median_of(std::move(child));
    policy.teen_median = teen.empty() ? policy.overall_median : median_of(std::move(teen));
    policy.adult_median = adult.empty() ? policy.overall_median : median_of(std::move(adult));
    return policy;
}

ImputedAge impute_age(std::string_view age_raw, const AgeImputationPolicy& policy) {
    const std::string t = norm_text(age_raw);
    if (const auto age = numeric_age(t)) return {static_cast<double>(*age), false};
    if (t == "child") return {policy.child_median, false};
    if (t == "teen") return {policy.teen_median, false};
    if (t == "adult") return {policy.adult_median, false};
    if (ingest::is_missing_token(t)) return {policy.overall_median, false};
    // Anything else (including out-of-range numbers) behaves like a blank.
    return {policy.overall_median, true};
}

Gender merge_gender(std::span<const std::string> genders_raw) {
    bool saw_male = false, saw_female = false, saw_other = false;
    for (const auto& raw : genders_raw) {
        const std::string t = norm_text(raw);
        if (ingest::is_missing_token(t)) continue;
        if (t == "male" || t == "m")
            saw_male = true;
        else if (t == "female" || t == "f")
            saw_female = true;
        else
            saw_other = true;  // a recorded gender outside the two main labels
    }
    const int known = int(saw_male) + int(saw_female) + int(saw_other);
    if (known == 0) return Gender::Unknown;
    if (known > 1) return Gender::Multiple;
    if (saw_male) return Gender::Male;
    if (saw_female) return Gender::Female;
    return Gender::Unknown;  // only unmapped labels; nothing representable
}

RaceKind merge_race(std::span<const std::string> races_raw) {
    std::set<RaceKind> seen;
    for (const auto& raw : races_raw) {
        const std::string t = norm_text(raw);
        if (ingest::is_missing_token(t)) continue;
        if (t == "black")
            seen.insert(RaceKind::Black);
        else if (t == "white")
            seen.insert(RaceKind::White);
        else if (t == "hispanic" || t == "latino" || t == "latina")
            seen.insert(RaceKind::Hispanic);
        else if (t == "asian")
            seen.insert(RaceKind::Asian);
        else
            seen.insert(RaceKind::Other);
    }
    if (seen.empty()) return RaceKind::Missing;
    if (seen.size() > 1) return RaceKind::Multiple;
    return *seen.begin();
}

WeaponKind merge_weapon(std::span<const std::string> weapon_classes_raw) {
    enum class Class { Handgun, Rifle, Shotgun, Other, Unknown };
    std::vector<Class> classes;
    for (const auto& raw : weapon_classes_raw) {
        const std::string t = norm_text(raw);
        if (ingest::is_missing_token(t))
            classes.push_back(Class::Unknown);  // blank class still counts as a weapon row
        else if (t == "handgun" || t == "pistol" || t == "revolver")
            classes.push_back(Class::Handgun);
        else if (t == "rifle")
            classes.push_back(Class::Rifle);
        else if (t == "shotgun")
            classes.push_back(Class::Shotgun);
        else
            classes.push_back(Class::Other);  // includes explicit "other"
    }
    if (classes.empty()) return WeaponKind::NoData;
    if (classes.size() == 1) {
        switch (classes.front()) {
            case Class::Handgun: return WeaponKind::Handgun;
            case Class::Rifle: return WeaponKind::Rifle;
            case Class::Shotgun: return WeaponKind::Shotgun;
            case Class::Other: return WeaponKind::Other;
            case Class::Unknown: return WeaponKind::Unknown;
        }
    }
    const bool uniform =
        std::all_of(classes.begin(), classes.end(), [&](Class c) { return c == classes.front(); });
    if (uniform && classes.front() == Class::Handgun) return WeaponKind::MultipleHandguns;
    if (uniform && classes.front() == Class::Rifle) return WeaponKind::MultipleRifles;
    // Mixed classes, repeated unknowns, and classes without a dedicated
    // multiple-category all fold into "multiple unknown".
    return WeaponKind::MultipleUnknown;
}

CleanResult build_analysis_table(const ingest::JoinResult& joined) {
    CleanResult out;

    std::vector<ingest::RawShooter> all_shooters;
    for (const auto& j : joined.incidents)
        all_shooters.insert(all_shooters.end(), j.shooters.begin(), j.shooters.end());
    out.age_policy = compute_age_policy(all_shooters);

    for (const auto& j : joined.incidents) {
        const auto& inc = j.incident;
        if (!is_valid_date(inc.date)) {
            out.diagnostics.push_back(
                {"incidents", 0, "Date", "record '" + inc.id + "' has no parseable date"});
            continue;
        }
        AnalysisRecord rec;
        rec.id = inc.id;
        rec.year = inc.date.year;
        rec.month = inc.date.month;
        rec.latitude = inc.latitude;
        rec.longitude = inc.longitude;
        rec.killed = inc.killed;
        rec.wounded = inc.wounded;
        rec.casualties = inc.killed + inc.wounded;
        rec.shots_fired = inc.shots_fired;

        if (j.shooters.empty()) {
            rec.shooter_age = out.age_policy.overall_median;
        } else {
            double age_sum = 0.0;
            for (const auto& s : j.shooters) {
                const auto imputed = impute_age(s.age_raw, out.age_policy);
                if (imputed.diagnosed)
                    out.diagnostics.push_back({"shooters", 0, "Age",
                                               "incident '" + inc.id +
                                                   "': unrecognized age text '" + s.age_raw +
                                                   "' treated as blank"});
                age_sum += imputed.years;
            }
            rec.shooter_age = age_sum / static_cast<double>(j.shooters.size());
        }

        std::vector<std::string> genders, races;
        std::vector<std::optional<bool>> bullied, dv;
        for (const auto& s : j.shooters) {
            genders.push_back(s.gender_raw);
            races.push_back(s.race_raw);
            bullied.push_back(s.bullied);
            dv.push_back(s.domestic_violence);
        }
        rec.shooter_gender = merge_gender(genders);
        rec.race = merge_race(races);

        std::vector<std::string> weapon_classes;
        for (const auto& w : j.weapons) weapon_classes.push_back(w.weapon_class);
        rec.weapon_type = merge_weapon(weapon_classes);

        rec.targets = inc.targets;
        rec.location_type = inc.location_type;
        rec.during_classes = tri_from(inc.during_classes);
        rec.accomplice = tri_from(inc.accomplice);
        rec.hostages = tri_from(inc.hostages);
        rec.shooter_killed = tri_from(inc.shooter_killed);
        rec.gang_related = tri_from(inc.gang_related);
        rec.bullied = tri_from_any(bullied);
        rec.domestic_violence = tri_from_any(dv);

        out.records.push_back(std::move(rec));
    }

    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.year, a.month, a.id) < std::tie(b.year, b.month, b.id);
    });
    return out;
}

std::vector<AnalysisRecord> split_era(std::span<const AnalysisRecord> records, Era era) {
    std::vector<AnalysisRecord> out;
    for (const auto& r : records) {
        const bool keep = era == Era::All || (era == Era::Pre2018 && r.year <= 2017) ||
                          (era == Era::Post2018 && r.year >= 2018);
        if (keep) out.push_back(r);
    }
    return out;
}

std::string_view tri_label(TriState t) {
    switch (t) {
        case TriState::Yes: return "Yes";
        case TriState::No: return "No";
        case TriState::Missing: return "NA";
    }
    return "?";
}

std::string_view gender_label(Gender g) {
    switch (g) {
        case Gender::Male: return "male";
        case Gender::Female: return "female";
        case Gender::Multiple: return "multiple";
        case Gender::Unknown: return "unknown";
    }
    return "?";
}

std::string_view race_label(RaceKind r) {
    switch (r) {
        case RaceKind::Black: return "black";
        case RaceKind::White: return "white";
        case RaceKind::Hispanic: return "hispanic";
        case RaceKind::Asian: return "asian";
        case RaceKind::Other: return "other";
        case RaceKind::Multiple: return "multiple";
        case RaceKind::Missing: return "NA";
    }
    return "?";
}

std::string_view weapon_label(WeaponKind w) {
    switch (w) {
        case WeaponKind::Handgun: return "handgun";
        case WeaponKind::MultipleHandguns: return "multiple handguns";
        case WeaponKind::Rifle: return "rifle";
        case WeaponKind::MultipleRifles: return "multiple rifles";
        case WeaponKind::Shotgun: return "shotgun";
        case WeaponKind::Other: return "other";
        case WeaponKind::Unknown: return "unknown";
        case WeaponKind::MultipleUnknown: return "multiple unknown";
        case WeaponKind::NoData: return "no data";
    }
    return "?";
}

std::string_view era_label(Era e) {
    switch (e) {
        case Era::All: return "all";
        case Era::Pre2018: return "pre2018";
        case Era::Post2018: return "post2018";
    }
    return "?";
}

std::optional<Era> parse_era(std::string_view text) {
    const std::string t = norm_text(text);
    if (t == "all") return Era::All;
    if (t == "pre2018" || t == "pre-2018" || t == "pre") return Era::Pre2018;
    if (t == "post2018" || t == "post-2018" || t == "post") return Era::Post2018;
    return std::nullopt;
}

namespace {

constexpr const char* kAnalysisHeader =
    "Incident_ID,Year,Month,Latitude,Longitude,Killed,Wounded,Casualties,Shots_Fired,"
    "Shooter_Age,Shooter_Gender,Race,Weapon_Type,Targets,During_Classes,Accomplice,Hostages,"
    "Shooter_Killed,Gang_Related,Bullied,Domestic_Violence,Location_Type";

template <typename Enum, typename LabelFn, size_t N>
std::optional<Enum> enum_from_label(std::string_view text, const Enum (&all)[N], LabelFn label) {
    for (const auto e : all) {
        if (norm_text(label(e)) == norm_text(text)) return e;
    }
    return std::nullopt;
}

}  // namespace

std::string write_analysis_csv(std::span<const AnalysisRecord> records) {
    std::string out = kAnalysisHeader;
    out.push_back('\n');
    for (const auto& r : records) {
        std::vector<std::string> fields;
        fields.push_back(r.id);
        fields.push_back(std::to_string(r.year));
        fields.push_back(std::to_string(r.month));
        fields.push_back(format_double(r.latitude));
        fields.push_back(format_double(r.longitude));
        fields.push_back(std::to_string(r.killed));
        fields.push_back(std::to_string(r.wounded));
        fields.push_back(std::to_string(r.casualties));
        fields.push_back(r.shots_fired ? std::to_string(*r.shots_fired) : "NA");
        fields.push_back(format_double(r.shooter_age));
        fields.push_back(std::string(gender_label(r.shooter_gender)));
        fields.push_back(std::string(race_label(r.race)));
        fields.push_back(std::string(weapon_label(r.weapon_type)));
        fields.push_back(r.targets ? std::string(ingest::targets_label(*r.targets)) : "NA");
        fields.push_back(std::string(tri_label(r.during_classes)));
        fields.push_back(std::string(tri_label(r.accomplice)));
        fields.push_back(std::string(tri_label(r.hostages)));
        fields.push_back(std::string(tri_label(r.shooter_killed)));
        fields.push_back(std::string(tri_label(r.gang_related)));
        fields.push_back(std::string(tri_label(r.bullied)));
        fields.push_back(std::string(tri_label(r.domestic_violence)));
        fields.push_back(r.location_type ? std::string(ingest::location_label(*r.location_type))
                                         : "NA");
        out += csv::write_row(fields);
    }
    return out;
}

std::vector<AnalysisRecord> read_analysis_csv(std::string_view csv_text) {
    const auto table = csv::parse(csv_text);
    const auto expected = csv::parse(std::string(kAnalysisHeader) + "\n").header;
    if (table.header.size() != expected.size())
        throw SchemaError("analysis table: unexpected column count");
    for (size_t i = 0; i < expected.size(); ++i) {
        if (norm_text(table.header[i]) != norm_text(expected[i]))
            throw SchemaError("analysis table: expected column '" + expected[i] + "', found '" +
                              table.header[i] + "'");
    }

    static constexpr TriState kTris[] = {TriState::Yes, TriState::No, TriState::Missing};
    static constexpr Gender kGenders[] = {Gender::Male, Gender::Female, Gender::Multiple,
                                          Gender::Unknown};
    static constexpr RaceKind kRaces[] = {RaceKind::Black, RaceKind::White,  RaceKind::Hispanic,
                                          RaceKind::Asian, RaceKind::Other,  RaceKind::Multiple,
                                          RaceKind::Missing};
    static constexpr WeaponKind kWeapons[] = {
        WeaponKind::Handgun, WeaponKind::MultipleHandguns, WeaponKind::Rifle,
        WeaponKind::MultipleRifles, WeaponKind::Shotgun, WeaponKind::Other,
        WeaponKind::Unknown, WeaponKind::MultipleUnknown, WeaponKind::NoData};
    static constexpr ingest::TargetsKind kTargets[] = {
        ingest::TargetsKind::VictimsTargeted, ingest::TargetsKind::RandomShooting,
        ingest::TargetsKind::Both, ingest::TargetsKind::Neither};
    static constexpr ingest::LocationKind kLocations[] = {
        ingest::LocationKind::Inside, ingest::LocationKind::Outside,
        ingest::LocationKind::BothInsideOutside, ingest::LocationKind::OffCampus,
        ingest::LocationKind::SchoolBus};

    std::vector<AnalysisRecord> out;
    size_t row_number = 1;
    for (const auto& row : table.rows) {
        ++row_number;
        if (row.size() != expected.size())
            throw DataError("analysis table: row " + std::to_string(row_number) +
                            " has wrong field count");
        auto at = [&](size_t i) { return trim(row[i]); };
        auto require_int = [&](size_t i, const char* what) {
            const auto v = parse_integer(at(i));
            if (!v) throw DataError("analysis table: bad " + std::string(what));
            return static_cast<int>(*v);
        };
        AnalysisRecord r;
        r.id = at(0);
        r.year = require_int(1, "Year");
        r.month = require_int(2, "Month");
        const auto lat = parse_real(at(3));
        const auto lon = parse_real(at(4));
        if (!lat || !lon) throw DataError("analysis table: bad coordinates");
        r.latitude = *lat;
        r.longitude = *lon;
        r.killed = require_int(5, "Killed");
        r.wounded = require_int(6, "Wounded");
        r.casualties = require_int(7, "Casualties");
        if (r.casualties != r.killed + r.wounded)
            throw DataError("analysis table: casualties != killed + wounded for '" + r.id + "'");
        if (at(8) != "NA") r.shots_fired = require_int(8, "Shots_Fired");
        const auto age = parse_real(at(9));
        if (!age) throw DataError("analysis table: bad Shooter_Age");
        r.shooter_age = *age;

        const auto gender = enum_from_label(at(10), kGenders, gender_label);
        const auto race = enum_from_label(at(11), kRaces, race_label);
        const auto weapon = enum_from_label(at(12), kWeapons, weapon_label);
        if (!gender || !race || !weapon)
            throw DataError("analysis table: unrecognized category in row " +
                            std::to_string(row_number));
        r.shooter_gender = *gender;
        r.race = *race;
        r.weapon_type = *weapon;

        if (at(13) != "NA") {
            const auto targets = enum_from_label(at(13), kTargets, ingest::targets_label);
            if (!targets) throw DataError("analysis table: unrecognized Targets value");
            r.targets = targets;
        }
        auto tri_at = [&](size_t i) {
            const auto t = enum_from_label(at(i), kTris, tri_label);
            if (!t) throw DataError("analysis table: unrecognized yes/no value");
            return *t;
        };
        r.during_classes = tri_at(14);
        r.accomplice = tri_at(15);
        r.hostages = tri_at(16);
        r.shooter_killed = tri_at(17);
        r.gang_related = tri_at(18);
        r.bullied = tri_at(19);
        r.domestic_violence = tri_at(20);
        if (at(21) != "NA") {
            const auto loc = enum_from_label(at(21), kLocations, ingest::location_label);
            if (!loc) throw DataError("analysis table: unrecognized Location_Type value");
            r.location_type = loc;
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace incistat::clean
