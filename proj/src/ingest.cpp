#include "incistat/ingest.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "incistat/csv.hpp"

namespace incistat::ingest {

std::string_view table_name(TableKind kind) {
    switch (kind) {
        case TableKind::Incidents: return "incidents";
        case TableKind::Shooters: return "shooters";
        case TableKind::Weapons: return "weapons";
        case TableKind::Victims: return "victims";
    }
    return "?";
}

std::string Diagnostic::to_line() const {
    std::string out = table;
    out += ",";
    out += row ? std::to_string(row) : std::string("-");
    out += ",";
    out += column.empty() ? "-" : column;
    out += ",";
    out += reason;
    return out;
}

bool is_missing_token(std::string_view normalized) {
    return normalized.empty() || normalized == "na" || normalized == "n/a" ||
           normalized == "null" || normalized == "none" || normalized == "unknown" ||
           normalized == "?";
}

std::optional<TargetsKind> parse_targets(std::string_view text) {
    const std::string t = norm_text(text);
    if (t == "victims targeted" || t == "targeted") return TargetsKind::VictimsTargeted;
    if (t == "random shooting" || t == "random") return TargetsKind::RandomShooting;
    if (t == "both") return TargetsKind::Both;
    if (t == "neither") return TargetsKind::Neither;
    return std::nullopt;
}

std::optional<LocationKind> parse_location(std::string_view text) {
    const std::string t = norm_text(text);
    if (t == "inside") return LocationKind::Inside;
    if (t == "outside") return LocationKind::Outside;
    if (t == "both inside/outside" || t == "both inside / outside" || t == "both")
        return LocationKind::BothInsideOutside;
    if (t == "off campus" || t == "off-campus") return LocationKind::OffCampus;
    if (t == "school bus" || t == "bus") return LocationKind::SchoolBus;
    return std::nullopt;
}

std::string_view targets_label(TargetsKind t) {
    switch (t) {
        case TargetsKind::VictimsTargeted: return "victims targeted";
        case TargetsKind::RandomShooting: return "random shooting";
        case TargetsKind::Both: return "both";
        case TargetsKind::Neither: return "neither";
    }
    return "?";
}

std::string_view location_label(LocationKind l) {
    switch (l) {
        case LocationKind::Inside: return "Inside";
        case LocationKind::Outside: return "Outside";
        case LocationKind::BothInsideOutside: return "Both Inside/Outside";
        case LocationKind::OffCampus: return "Off Campus";
        case LocationKind::SchoolBus: return "School Bus";
    }
    return "?";
}

std::string_view injury_label(InjuryKind i) {
    switch (i) {
        case InjuryKind::Fatal: return "Fatal";
        case InjuryKind::Wounded: return "Wounded";
        case InjuryKind::None: return "None";
        case InjuryKind::NonGunshot: return "Non-gunshot";
    }
    return "?";
}

namespace {

std::string norm_header(std::string_view name) {
    std::string t = norm_text(name);
    std::replace(t.begin(), t.end(), ' ', '_');
    return t;
}

class RowReader {
  public:
    RowReader(const csv::Table& table, TableKind kind)
        : table_(table), kind_(kind) {
        for (size_t i = 0; i < table.header.size(); ++i) {
            by_name_.emplace(norm_header(table.header[i]), i);
        }
    }

    /// Index of a column, trying each alias in order. Throws SchemaError when
    /// mandatory and absent.
    std::optional<size_t> column(std::initializer_list<std::string_view> aliases,
                                 bool mandatory) const {
        for (const auto alias : aliases) {
            const auto it = by_name_.find(std::string(alias));
            if (it != by_name_.end()) return it->second;
        }
        if (mandatory)
            throw SchemaError(std::string(table_name(kind_)) +
                              ": missing mandatory column '" + std::string(*aliases.begin()) +
                              "'");
        return std::nullopt;
    }

    std::string field(size_t row, std::optional<size_t> col) const {
        if (!col || *col >= table_.rows[row].size()) return {};
        return trim(table_.rows[row][*col]);
    }

    size_t row_count() const { return table_.rows.size(); }
    std::string header_name(std::optional<size_t> col) const {
        return col ? table_.header[*col] : std::string("-");
    }

  private:
    const csv::Table& table_;
    TableKind kind_;
    std::unordered_map<std::string, size_t> by_name_;
};

struct FieldContext {
    std::vector<Diagnostic>* diagnostics;
    TableKind kind;
    size_t row;  // 1-based
    bool row_ok = true;

    void value_issue(std::string column, std::string reason) {
        diagnostics->push_back(
            {std::string(table_name(kind)), row, std::move(column), std::move(reason)});
    }
    void row_issue(std::string column, std::string reason) {
        value_issue(std::move(column), std::move(reason));
        row_ok = false;
    }
};

std::optional<bool> read_yes_no(FieldContext& ctx, const std::string& raw,
                                const std::string& column) {
    const std::string t = norm_text(raw);
    if (is_missing_token(t)) return std::nullopt;
    if (t == "yes" || t == "y") return true;
    if (t == "no" || t == "n") return false;
    ctx.value_issue(column, "unrecognized yes/no value '" + raw + "'");
    return std::nullopt;
}

std::optional<int> read_count(FieldContext& ctx, const std::string& raw,
                              const std::string& column, bool mandatory) {
    if (raw.empty() || is_missing_token(norm_text(raw))) {
        if (mandatory) ctx.row_issue(column, "missing required count");
        return std::nullopt;
    }
    const auto v = parse_integer(raw);
    if (!v || *v < 0) {
        if (mandatory)
            ctx.row_issue(column, "not a non-negative integer: '" + raw + "'");
        else
            ctx.value_issue(column, "not a non-negative integer: '" + raw + "'");
        return std::nullopt;
    }
    return static_cast<int>(*v);
}

}  // namespace

ParseResult<RawIncident> parse_incidents(std::string_view csv_text) {
    const auto table = csv::parse(csv_text);
    const RowReader reader(table, TableKind::Incidents);

    const auto id_col = reader.column({"incident_id", "id"}, true);
    const auto date_col = reader.column({"date"}, true);
    const auto lat_col = reader.column({"latitude", "lat"}, true);
    const auto lon_col = reader.column({"longitude", "long", "lon"}, true);
    const auto killed_col = reader.column({"killed"}, true);
    const auto wounded_col = reader.column({"wounded"}, true);
    const auto shots_col = reader.column({"shots_fired", "shots"}, false);
    const auto classes_col = reader.column({"during_classes"}, false);
    const auto accomplice_col = reader.column({"accomplice"}, false);
    const auto hostages_col = reader.column({"hostages"}, false);
    const auto killed_shooter_col = reader.column({"shooter_killed"}, false);
    const auto gang_col = reader.column({"gang_related"}, false);
    const auto targets_col = reader.column({"targets"}, false);
    const auto location_col = reader.column({"location_type", "location"}, false);

    ParseResult<RawIncident> out;
    out.data_row_count = reader.row_count();
    for (size_t r = 0; r < reader.row_count(); ++r) {
        FieldContext ctx{&out.diagnostics, TableKind::Incidents, r + 1};
        RawIncident inc;

        inc.id = reader.field(r, id_col);
        if (inc.id.empty()) ctx.row_issue("Incident_ID", "empty incident id");

        const std::string date_raw = reader.field(r, date_col);
        if (const auto date = parse_date(date_raw)) {
            inc.date = *date;
        } else {
            ctx.row_issue("Date", "unparseable date '" + date_raw + "'");
        }

        const auto lat = parse_real(reader.field(r, lat_col));
        if (!lat || *lat < -90.0 || *lat > 90.0)
            ctx.row_issue("Latitude", "latitude outside [-90, 90]");
        else
            inc.latitude = *lat;
        const auto lon = parse_real(reader.field(r, lon_col));
        if (!lon || *lon < -180.0 || *lon > 180.0)
            ctx.row_issue("Longitude", "longitude outside [-180, 180]");
        else
            inc.longitude = *lon;

        if (const auto v = read_count(ctx, reader.field(r, killed_col), "Killed", true))
            inc.killed = *v;
        if (const auto v = read_count(ctx, reader.field(r, wounded_col), "Wounded", true))
            inc.wounded = *v;
        inc.shots_fired = read_count(ctx, reader.field(r, shots_col), "Shots_Fired", false);

        inc.during_classes = read_yes_no(ctx, reader.field(r, classes_col), "During_Classes");
        inc.accomplice = read_yes_no(ctx, reader.field(r, accomplice_col), "Accomplice");
        inc.hostages = read_yes_no(ctx, reader.field(r, hostages_col), "Hostages");
        inc.shooter_killed =
            read_yes_no(ctx, reader.field(r, killed_shooter_col), "Shooter_Killed");
        inc.gang_related = read_yes_no(ctx, reader.field(r, gang_col), "Gang_Related");

        const std::string targets_raw = reader.field(r, targets_col);
        if (!is_missing_token(norm_text(targets_raw))) {
            inc.targets = parse_targets(targets_raw);
            if (!inc.targets)
                ctx.value_issue("Targets", "unrecognized targets value '" + targets_raw + "'");
        }
        const std::string location_raw = reader.field(r, location_col);
        if (!is_missing_token(norm_text(location_raw))) {
            inc.location_type = parse_location(location_raw);
            if (!inc.location_type)
                ctx.value_issue("Location_Type",
                                "unrecognized location value '" + location_raw + "'");
        }

        if (ctx.row_ok) out.rows.push_back(std::move(inc));
    }
    return out;
}

ParseResult<RawShooter> parse_shooters(std::string_view csv_text) {
    const auto table = csv::parse(csv_text);
    const RowReader reader(table, TableKind::Shooters);

    const auto id_col = reader.column({"incident_id", "id"}, true);
    const auto age_col = reader.column({"age", "shooter_age"}, false);
    const auto gender_col = reader.column({"gender", "shooter_gender"}, false);
    const auto race_col = reader.column({"race", "shooter_race"}, false);
    const auto affiliation_col = reader.column({"affiliation", "school_affiliation"}, false);
    const auto bullied_col = reader.column({"bullied"}, false);
    const auto dv_col = reader.column({"domestic_violence"}, false);

    ParseResult<RawShooter> out;
    out.data_row_count = reader.row_count();
    for (size_t r = 0; r < reader.row_count(); ++r) {
        FieldContext ctx{&out.diagnostics, TableKind::Shooters, r + 1};
        RawShooter s;
        s.incident = reader.field(r, id_col);
        if (s.incident.empty()) ctx.row_issue("Incident_ID", "empty incident id");
        s.age_raw = reader.field(r, age_col);
        s.gender_raw = reader.field(r, gender_col);
        s.race_raw = reader.field(r, race_col);
        s.affiliation = reader.field(r, affiliation_col);
        s.bullied = read_yes_no(ctx, reader.field(r, bullied_col), "Bullied");
        s.domestic_violence = read_yes_no(ctx, reader.field(r, dv_col), "Domestic_Violence");
        if (ctx.row_ok) out.rows.push_back(std::move(s));
    }
    return out;
}

ParseResult<RawWeapon> parse_weapons(std::string_view csv_text) {
    const auto table = csv::parse(csv_text);
    const RowReader reader(table, TableKind::Weapons);

    const auto id_col = reader.column({"incident_id", "id"}, true);
    const auto class_col = reader.column({"weapon_type", "weapon_class", "weapon"}, false);

    ParseResult<RawWeapon> out;
    out.data_row_count = reader.row_count();
    for (size_t r = 0; r < reader.row_count(); ++r) {
        FieldContext ctx{&out.diagnostics, TableKind::Weapons, r + 1};
        RawWeapon w;
        w.incident = reader.field(r, id_col);
        if (w.incident.empty()) ctx.row_issue("Incident_ID", "empty incident id");
        w.weapon_class = reader.field(r, class_col);
        if (ctx.row_ok) out.rows.push_back(std::move(w));
    }
    return out;
}

ParseResult<RawVictim> parse_victims(std::string_view csv_text) {
    const auto table = csv::parse(csv_text);
    const RowReader reader(table, TableKind::Victims);

    const auto id_col = reader.column({"incident_id", "id"}, true);
    const auto injury_col = reader.column({"injury"}, true);
    const auto gender_col = reader.column({"gender"}, false);
    const auto affiliation_col = reader.column({"affiliation", "school_affiliation"}, false);
    const auto age_col = reader.column({"age_class", "age"}, false);
    const auto race_col = reader.column({"race"}, false);

    ParseResult<RawVictim> out;
    out.data_row_count = reader.row_count();
    for (size_t r = 0; r < reader.row_count(); ++r) {
        FieldContext ctx{&out.diagnostics, TableKind::Victims, r + 1};
        RawVictim v;
        v.incident = reader.field(r, id_col);
        if (v.incident.empty()) ctx.row_issue("Incident_ID", "empty incident id");

        const std::string injury_raw = reader.field(r, injury_col);
        const std::string injury = norm_text(injury_raw);
        if (injury == "fatal")
            v.injury = InjuryKind::Fatal;
        else if (injury == "wounded")
            v.injury = InjuryKind::Wounded;
        else if (injury == "none")
            v.injury = InjuryKind::None;
        else if (injury == "non-gunshot" || injury == "non gunshot" || injury == "nongunshot")
            v.injury = InjuryKind::NonGunshot;
        else
            ctx.row_issue("Injury", "unrecognized injury category '" + injury_raw + "'");

        v.gender = reader.field(r, gender_col);
        v.affiliation = reader.field(r, affiliation_col);
        v.age_class = reader.field(r, age_col);
        v.race = reader.field(r, race_col);
        if (ctx.row_ok) out.rows.push_back(std::move(v));
    }
    return out;
}

JoinResult join_by_incident(const std::vector<RawIncident>& incidents,
                            const std::vector<RawShooter>& shooters,
                            const std::vector<RawWeapon>& weapons,
                            const std::vector<RawVictim>& victims) {
    JoinResult out;
    std::unordered_map<std::string, size_t> index;
    out.incidents.reserve(incidents.size());
    for (size_t i = 0; i < incidents.size(); ++i) {
        const auto [it, inserted] = index.emplace(incidents[i].id, out.incidents.size());
        if (!inserted) {
            out.diagnostics.push_back({"incidents", i + 1, "Incident_ID",
                                       "duplicate incident id '" + incidents[i].id +
                                           "' (first occurrence kept)"});
            continue;
        }
        out.incidents.push_back({incidents[i], {}, {}, {}});
    }

    auto attach = [&](const auto& rows, const char* table, auto member) {
        size_t row_number = 0;
        for (const auto& row : rows) {
            ++row_number;
            const auto it = index.find(row.incident);
            if (it == index.end()) {
                out.diagnostics.push_back({table, row_number, "Incident_ID",
                                           "orphan row: no incident with id '" + row.incident +
                                               "'"});
                continue;
            }
            (out.incidents[it->second].*member).push_back(row);
        }
    };
    attach(shooters, "shooters", &JoinedIncident::shooters);
    attach(weapons, "weapons", &JoinedIncident::weapons);
    attach(victims, "victims", &JoinedIncident::victims);
    return out;
}

}  // namespace incistat::ingest
