#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incistat/clean.hpp"
#include "incistat/formula.hpp"

namespace incistat::model {

enum class ColumnType { Numeric, Categorical };

struct ColumnInfo {
    std::string name;
    ColumnType type;
};

/// Columns addressable from model formulas. `Casualty_Present` is the 0/1
/// casualty indicator derived from `Casualties`.
std::span<const ColumnInfo> analysis_columns();
std::vector<std::string> analysis_column_names();
std::optional<ColumnType> column_type(const std::string& name);

/// Numeric cell value; nullopt when missing (e.g. Shots_Fired).
std::optional<double> numeric_value(const clean::AnalysisRecord& record,
                                    const std::string& column);
/// Factor level label; nullopt when the record is missing that factor.
/// Gender "unknown" is an observed level, not a missing value; weapon
/// "no data", race/targets/location "NA" and yes/no "NA" are missing.
std::optional<std::string> categorical_value(const clean::AnalysisRecord& record,
                                             const std::string& column);

struct FactorLevels {
    std::string column;
    std::vector<std::string> levels;  // observed levels, reference level first
};

struct DesignMatrix {
    Eigen::MatrixXd x;                      // n x p, intercept in column 0
    Eigen::VectorXd y;                      // response
    std::vector<std::string> column_names;  // "(Intercept)", "Targets=both", ...
    std::vector<int> term_of_column;        // -1 for the intercept
    std::vector<Term> terms;                // survivors, in formula order
    std::vector<std::string> row_ids;       // retained record ids
    size_t excluded_rows = 0;               // complete-case exclusions
    std::vector<FactorLevels> level_maps;
    std::vector<std::string> dropped_terms;  // "<term>: <reason>"
    size_t dropped_columns = 0;              // all-zero interaction products

    size_t term_df(size_t term_index) const;
    std::vector<size_t> columns_of_term(size_t term_index) const;
};

/// Treatment coding against the lexicographically smallest observed level.
/// Rows with a missing value in any used column are excluded (complete-case).
/// Interactions are elementwise products of the component columns; all-zero
/// product columns (unobserved level combinations) are dropped. A term whose
/// component has fewer than two observed values is dropped with a diagnostic.
/// Throws DataError when no rows or no terms survive.
DesignMatrix encode_design(std::span<const clean::AnalysisRecord> records,
                           const Formula& formula);

}  // namespace incistat::model
