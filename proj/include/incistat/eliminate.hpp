#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incistat/negbin.hpp"

namespace incistat::model {

enum class FitKind { Ols, NegBin };

struct AuditEntry {
    int step = 0;
    std::string term;
    double p = 0.0;
};

struct EliminationResult {
    Formula formula;                // surviving terms, original order
    std::vector<AuditEntry> trail;  // every dropped term with its p-value
};

/// Backward elimination. Each round refits the current model and tests every
/// droppable term by removing it alone (F test for OLS, chi-square deviance
/// test for the negative binomial, rows held fixed within the round); the
/// highest-p term with p > alpha is dropped. A term is droppable only while
/// no remaining interaction strictly contains it. Stops when everything
/// droppable is significant or a single term remains.
EliminationResult eliminate_insignificant(std::span<const clean::AnalysisRecord> records,
                                          const Formula& formula, double alpha,
                                          FitKind kind = FitKind::Ols,
                                          std::optional<double> fixed_theta = std::nullopt);

}  // namespace incistat::model
