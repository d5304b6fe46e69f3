#include "incistat/design.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace incistat::model {

namespace {

const std::vector<ColumnInfo>& columns_registry() {
    static const std::vector<ColumnInfo> registry = {
        {"Year", ColumnType::Numeric},
        {"Month", ColumnType::Numeric},
        {"Latitude", ColumnType::Numeric},
        {"Longitude", ColumnType::Numeric},
        {"Killed", ColumnType::Numeric},
        {"Wounded", ColumnType::Numeric},
        {"Casualties", ColumnType::Numeric},
        {"Casualty_Present", ColumnType::Numeric},
        {"Shots_Fired", ColumnType::Numeric},
        {"Shooter_Age", ColumnType::Numeric},
        {"Shooter_Gender", ColumnType::Categorical},
        {"Race", ColumnType::Categorical},
        {"Weapon_Type", ColumnType::Categorical},
        {"Targets", ColumnType::Categorical},
        {"During_Classes", ColumnType::Categorical},
        {"Accomplice", ColumnType::Categorical},
        {"Hostages", ColumnType::Categorical},
        {"Shooter_Killed", ColumnType::Categorical},
        {"Gang_Related", ColumnType::Categorical},
        {"Bullied", ColumnType::Categorical},
        {"Domestic_Violence", ColumnType::Categorical},
        {"Location_Type", ColumnType::Categorical},
    };
    return registry;
}

std::optional<std::string> tri_level(clean::TriState t) {
    switch (t) {
        case clean::TriState::Yes: return "Yes";
        case clean::TriState::No: return "No";
        case clean::TriState::Missing: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::span<const ColumnInfo> analysis_columns() { return columns_registry(); }

std::vector<std::string> analysis_column_names() {
    std::vector<std::string> names;
    for (const auto& c : columns_registry()) names.push_back(c.name);
    return names;
}

std::optional<ColumnType> column_type(const std::string& name) {
    for (const auto& c : columns_registry())
        if (c.name == name) return c.type;
    return std::nullopt;
}

std::optional<double> numeric_value(const clean::AnalysisRecord& r, const std::string& column) {
    if (column == "Year") return static_cast<double>(r.year);
    if (column == "Month") return static_cast<double>(r.month);
    if (column == "Latitude") return r.latitude;
    if (column == "Longitude") return r.longitude;
    if (column == "Killed") return static_cast<double>(r.killed);
    if (column == "Wounded") return static_cast<double>(r.wounded);
    if (column == "Casualties") return static_cast<double>(r.casualties);
    if (column == "Casualty_Present") return r.casualties > 0 ? 1.0 : 0.0;
    if (column == "Shots_Fired") {
        if (!r.shots_fired) return std::nullopt;
        return static_cast<double>(*r.shots_fired);
    }
    if (column == "Shooter_Age") return r.shooter_age;
    throw DataError("numeric_value: unknown numeric column '" + column + "'");
}

std::optional<std::string> categorical_value(const clean::AnalysisRecord& r,
                                             const std::string& column) {
    if (column == "Shooter_Gender") return std::string(clean::gender_label(r.shooter_gender));
    if (column == "Race") {
        if (r.race == clean::RaceKind::Missing) return std::nullopt;
        return std::string(clean::race_label(r.race));
    }
    if (column == "Weapon_Type") {
        if (r.weapon_type == clean::WeaponKind::NoData) return std::nullopt;
        return std::string(clean::weapon_label(r.weapon_type));
    }
    if (column == "Targets") {
        if (!r.targets) return std::nullopt;
        return std::string(ingest::targets_label(*r.targets));
    }
    if (column == "Location_Type") {
        if (!r.location_type) return std::nullopt;
        return std::string(ingest::location_label(*r.location_type));
    }
    if (column == "During_Classes") return tri_level(r.during_classes);
    if (column == "Accomplice") return tri_level(r.accomplice);
    if (column == "Hostages") return tri_level(r.hostages);
    if (column == "Shooter_Killed") return tri_level(r.shooter_killed);
    if (column == "Gang_Related") return tri_level(r.gang_related);
    if (column == "Bullied") return tri_level(r.bullied);
    if (column == "Domestic_Violence") return tri_level(r.domestic_violence);
    throw DataError("categorical_value: unknown categorical column '" + column + "'");
}

size_t DesignMatrix::term_df(size_t term_index) const {
    return columns_of_term(term_index).size();
}

std::vector<size_t> DesignMatrix::columns_of_term(size_t term_index) const {
    std::vector<size_t> cols;
    for (size_t j = 0; j < term_of_column.size(); ++j)
        if (term_of_column[j] == static_cast<int>(term_index)) cols.push_back(j);
    return cols;
}

DesignMatrix encode_design(std::span<const clean::AnalysisRecord> records,
                           const Formula& formula) {
    std::set<std::string> used;
    used.insert(formula.response);
    for (const auto& term : formula.terms)
        for (const auto& c : term.components) used.insert(c);
    for (const auto& name : used) {
        if (!column_type(name)) throw DataError("encode_design: unknown column '" + name + "'");
    }
    if (column_type(formula.response) != ColumnType::Numeric)
        throw DataError("encode_design: response '" + formula.response + "' must be numeric");

    // Complete cases over every used column.
    std::vector<size_t> rows;
    for (size_t i = 0; i < records.size(); ++i) {
        bool complete = true;
        for (const auto& name : used) {
            if (*column_type(name) == ColumnType::Numeric) {
                if (!numeric_value(records[i], name)) complete = false;
            } else if (!categorical_value(records[i], name)) {
                complete = false;
            }
            if (!complete) break;
        }
        if (complete) rows.push_back(i);
    }

    DesignMatrix design;
    design.excluded_rows = records.size() - rows.size();
    if (rows.empty()) throw DataError("encode_design: no complete rows for this formula");

    // Observed levels per categorical column among retained rows.
    std::map<std::string, std::vector<std::string>> levels;
    std::set<std::string> degenerate;  // < 2 distinct observed values
    for (const auto& name : used) {
        if (name == formula.response) continue;
        if (*column_type(name) == ColumnType::Categorical) {
            std::set<std::string> seen;
            for (const size_t i : rows) seen.insert(*categorical_value(records[i], name));
            if (seen.size() < 2) degenerate.insert(name);
            levels[name] = std::vector<std::string>(seen.begin(), seen.end());
        } else {
            std::set<double> seen;
            for (const size_t i : rows) seen.insert(*numeric_value(records[i], name));
            if (seen.size() < 2) degenerate.insert(name);
        }
    }

    const size_t n = rows.size();
    design.x.resize(static_cast<Eigen::Index>(n), 1);
    design.x.col(0).setOnes();
    design.column_names.push_back("(Intercept)");
    design.term_of_column.push_back(-1);

    // One encoded block per component: a numeric column, or the L-1 dummy
    // columns of a factor against its reference level.
    auto component_block = [&](const std::string& name)
        -> std::pair<std::vector<Eigen::VectorXd>, std::vector<std::string>> {
        std::vector<Eigen::VectorXd> cols;
        std::vector<std::string> names;
        if (*column_type(name) == ColumnType::Numeric) {
            Eigen::VectorXd col(n);
            for (size_t k = 0; k < n; ++k) col[static_cast<Eigen::Index>(k)] =
                *numeric_value(records[rows[k]], name);
            cols.push_back(std::move(col));
            names.push_back(name);
        } else {
            const auto& lv = levels[name];
            for (size_t li = 1; li < lv.size(); ++li) {
                Eigen::VectorXd col(n);
                for (size_t k = 0; k < n; ++k)
                    col[static_cast<Eigen::Index>(k)] =
                        *categorical_value(records[rows[k]], name) == lv[li] ? 1.0 : 0.0;
                cols.push_back(std::move(col));
                names.push_back(name + "=" + lv[li]);
            }
        }
        return {std::move(cols), std::move(names)};
    };

    for (const auto& term : formula.terms) {
        bool dropped = false;
        for (const auto& c : term.components) {
            if (degenerate.count(c)) {
                design.dropped_terms.push_back(term.name() +
                                               ": component '" + c +
                                               "' has fewer than 2 observed values");
                dropped = true;
                break;
            }
        }
        if (dropped) continue;

        std::vector<Eigen::VectorXd> cols = {Eigen::VectorXd::Ones(n)};
        std::vector<std::string> names = {""};
        for (const auto& component : term.components) {
            auto [block, block_names] = component_block(component);
            std::vector<Eigen::VectorXd> next_cols;
            std::vector<std::string> next_names;
            for (size_t a = 0; a < cols.size(); ++a) {
                for (size_t b = 0; b < block.size(); ++b) {
                    next_cols.push_back(cols[a].cwiseProduct(block[b]));
                    next_names.push_back(names[a].empty() ? block_names[b]
                                                          : names[a] + ":" + block_names[b]);
                }
            }
            cols = std::move(next_cols);
            names = std::move(next_names);
        }

        const int term_index = static_cast<int>(design.terms.size());
        size_t kept = 0;
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].cwiseAbs().maxCoeff() == 0.0) {
                ++design.dropped_columns;  // unobserved level combination
                continue;
            }
            design.x.conservativeResize(Eigen::NoChange, design.x.cols() + 1);
            design.x.col(design.x.cols() - 1) = cols[j];
            design.column_names.push_back(names[j]);
            design.term_of_column.push_back(term_index);
            ++kept;
        }
        if (kept == 0) {
            design.dropped_terms.push_back(term.name() + ": no observed combinations");
            continue;
        }
        design.terms.push_back(term);
    }
    if (design.terms.empty()) throw DataError("encode_design: empty design, no terms survive");

    design.y.resize(static_cast<Eigen::Index>(n));
    for (size_t k = 0; k < n; ++k)
        design.y[static_cast<Eigen::Index>(k)] = *numeric_value(records[rows[k]], formula.response);
    for (const size_t i : rows) design.row_ids.push_back(records[i].id);
    for (auto& [name, lv] : levels) {
        if (!degenerate.count(name)) design.level_maps.push_back({name, lv});
    }
    return design;
}

}  // namespace incistat::model
