#pragma once

#include <span>
#include <string>
#include <vector>

#include "incistat/common.hpp"

namespace incistat::model {

class FormulaError : public DataError {
  public:
    FormulaError(const std::string& message, size_t position)
        : DataError(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    size_t position() const { return position_; }

  private:
    size_t position_;
};

/// A main effect holds one column name; an interaction holds two or more.
struct Term {
    std::vector<std::string> components;

    bool is_interaction() const { return components.size() > 1; }
    std::string name() const;

    /// Set comparison: a:b and b:a are the same term.
    bool same_as(const Term& other) const;
    /// True when every component of `other` also occurs in this term and
    /// this term is strictly larger (a is contained in a:b).
    bool strictly_contains(const Term& other) const;
};

struct Formula {
    std::string response;
    std::vector<Term> terms;  // order preserved exactly as written
};

/// Grammar: response "~" term ("+" term)*; term = name (":" name)* or a
/// "*" chain, where a*b expands to a + b + a:b (left-to-right, mains first,
/// then pairs, then higher orders). Unknown columns, dangling operators and
/// duplicate terms raise FormulaError with a position.
Formula parse_formula(const std::string& text, std::span<const std::string> known_columns);

/// Canonical text form; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& formula);

}  // namespace incistat::model
