#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incistat/common.hpp"

namespace incistat::ingest {

enum class TableKind { Incidents, Shooters, Weapons, Victims };

std::string_view table_name(TableKind kind);

/// One anomaly: the offending table, 1-based data-row number, column name and
/// a human-readable reason. Parsing never drops a row silently.
struct Diagnostic {
    std::string table;
    size_t row = 0;  // 0 when the anomaly is not tied to a single row
    std::string column;
    std::string reason;

    std::string to_line() const;
};

enum class TargetsKind { VictimsTargeted, RandomShooting, Both, Neither };
enum class LocationKind { Inside, Outside, BothInsideOutside, OffCampus, SchoolBus };
enum class InjuryKind { Fatal, Wounded, None, NonGunshot };

struct RawIncident {
    std::string id;
    Date date;
    double latitude = 0.0;
    double longitude = 0.0;
    int killed = 0;
    int wounded = 0;
    std::optional<int> shots_fired;
    std::optional<bool> during_classes, accomplice, hostages, shooter_killed, gang_related;
    std::optional<TargetsKind> targets;
    std::optional<LocationKind> location_type;
};

struct RawShooter {
    std::string incident;
    std::string age_raw;     // number, "child", "teen", "adult", or blank
    std::string gender_raw;  // free text
    std::string race_raw;    // free text
    std::string affiliation;
    std::optional<bool> bullied, domestic_violence;
};

struct RawWeapon {
    std::string incident;
    std::string weapon_class;  // free text; blank is treated as unknown later
};

struct RawVictim {
    std::string incident;
    InjuryKind injury = InjuryKind::None;
    std::string gender, affiliation, age_class, race;
};

template <typename Row>
struct ParseResult {
    std::vector<Row> rows;
    std::vector<Diagnostic> diagnostics;
    size_t data_row_count = 0;  // rows.size() + excluded rows
};

/// Header matching is case-insensitive after trimming; spaces and
/// underscores are interchangeable. A missing mandatory column throws
/// SchemaError; a malformed mandatory field excludes the row with a
/// diagnostic; an unrecognizable optional field keeps the row and records a
/// diagnostic for the value.
ParseResult<RawIncident> parse_incidents(std::string_view csv_text);
ParseResult<RawShooter> parse_shooters(std::string_view csv_text);
ParseResult<RawWeapon> parse_weapons(std::string_view csv_text);
ParseResult<RawVictim> parse_victims(std::string_view csv_text);

struct JoinedIncident {
    RawIncident incident;
    std::vector<RawShooter> shooters;
    std::vector<RawWeapon> weapons;
    std::vector<RawVictim> victims;
};

struct JoinResult {
    std::vector<JoinedIncident> incidents;  // ordered by first appearance
    std::vector<Diagnostic> diagnostics;    // duplicates and orphans
};

/// Groups child rows under their incident. Duplicate incident ids keep the
/// first occurrence; orphan child rows are excluded. Both become diagnostics.
JoinResult join_by_incident(const std::vector<RawIncident>& incidents,
                            const std::vector<RawShooter>& shooters,
                            const std::vector<RawWeapon>& weapons,
                            const std::vector<RawVictim>& victims);

// Shared token parsing, also used by the cleaning rules.
bool is_missing_token(std::string_view normalized);
std::optional<TargetsKind> parse_targets(std::string_view text);
std::optional<LocationKind> parse_location(std::string_view text);
std::string_view targets_label(TargetsKind t);
std::string_view location_label(LocationKind l);
std::string_view injury_label(InjuryKind i);

}  // namespace incistat::ingest
