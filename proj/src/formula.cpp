#include "incistat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace incistat::model {

std::string Term::name() const {
    std::string out;
    for (size_t i = 0; i < components.size(); ++i) {
        if (i) out.push_back(':');
        out += components[i];
    }
    return out;
}

bool Term::same_as(const Term& other) const {
    if (components.size() != other.components.size()) return false;
    std::set<std::string> a(components.begin(), components.end());
    std::set<std::string> b(other.components.begin(), other.components.end());
    return a == b;
}

bool Term::strictly_contains(const Term& other) const {
    if (components.size() <= other.components.size()) return false;
    const std::set<std::string> mine(components.begin(), components.end());
    return std::all_of(other.components.begin(), other.components.end(),
                       [&](const std::string& c) { return mine.count(c) > 0; });
}

namespace {

struct Token {
    enum class Kind { Name, Tilde, Plus, Colon, Star, End };
    Kind kind = Kind::End;
    std::string text;
    size_t position = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ >= text_.size()) return {Token::Kind::End, "", pos_};
        const size_t start = pos_;
        const char ch = text_[pos_];
        switch (ch) {
            case '~': ++pos_; return {Token::Kind::Tilde, "~", start};
            case '+': ++pos_; return {Token::Kind::Plus, "+", start};
            case ':': ++pos_; return {Token::Kind::Colon, ":", start};
            case '*': ++pos_; return {Token::Kind::Star, "*", start};
            default: break;
        }
        if (!std::isalpha(static_cast<unsigned char>(ch)) && ch != '_')
            throw FormulaError(std::string("unexpected character '") + ch + "'", start);
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')
                ++pos_;
            else
                break;
        }
        return {Token::Kind::Name, text_.substr(start, pos_ - start), start};
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;
};

void require_known(const std::string& name, std::span<const std::string> known, size_t pos) {
    if (std::find(known.begin(), known.end(), name) == known.end())
        throw FormulaError("unknown column '" + name + "'", pos);
}

// All non-empty subsets of the star chain, ordered by size then
// left-to-right combination order, e.g. a*b*c -> a, b, c, a:b, a:c, b:c, a:b:c.
std::vector<Term> expand_star(const std::vector<std::string>& names) {
    std::vector<Term> out;
    const size_t n = names.size();
    for (size_t size = 1; size <= n; ++size) {
        std::vector<size_t> idx(size);
        // iterate combinations in lexicographic index order
        for (size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            Term t;
            for (const size_t i : idx) t.components.push_back(names[i]);
            out.push_back(std::move(t));
            // advance
            size_t k = size;
            while (k > 0) {
                --k;
                if (idx[k] + (size - k) < n) {
                    ++idx[k];
                    for (size_t j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                    k = size + 1;
                    break;
                }
            }
            if (k != size + 1) break;
        }
    }
    return out;
}

}  // namespace

Formula parse_formula(const std::string& text, std::span<const std::string> known_columns) {
    if (trim(text).empty()) throw FormulaError("empty formula", 0);
    Lexer lexer(text);

    Token tok = lexer.next();
    if (tok.kind != Token::Kind::Name)
        throw FormulaError("expected response column before '~'", tok.position);
    require_known(tok.text, known_columns, tok.position);
    Formula formula;
    formula.response = tok.text;

    tok = lexer.next();
    if (tok.kind != Token::Kind::Tilde) throw FormulaError("expected '~'", tok.position);

    auto add_term = [&](Term term, size_t pos) {
        for (const auto& existing : formula.terms) {
            if (existing.same_as(term))
                throw FormulaError("duplicate term '" + term.name() + "'", pos);
        }
        formula.terms.push_back(std::move(term));
    };

    while (true) {
        tok = lexer.next();
        if (tok.kind != Token::Kind::Name)
            throw FormulaError("expected column name", tok.position);
        const size_t term_pos = tok.position;
        std::vector<std::string> chain = {tok.text};
        require_known(tok.text, known_columns, tok.position);

        Token::Kind op = Token::Kind::End;
        while (true) {
            tok = lexer.next();
            if (tok.kind == Token::Kind::Colon || tok.kind == Token::Kind::Star) {
                if (op != Token::Kind::End && tok.kind != op)
                    throw FormulaError("cannot mix ':' and '*' within one term", tok.position);
                op = tok.kind;
                const Token name = lexer.next();
                if (name.kind != Token::Kind::Name)
                    throw FormulaError("dangling operator", tok.position);
                require_known(name.text, known_columns, name.position);
                if (std::find(chain.begin(), chain.end(), name.text) != chain.end())
                    throw FormulaError("column '" + name.text + "' repeated within a term",
                                       name.position);
                chain.push_back(name.text);
                continue;
            }
            break;
        }

        if (op == Token::Kind::Star) {
            for (auto& term : expand_star(chain)) add_term(std::move(term), term_pos);
        } else {
            add_term(Term{std::move(chain)}, term_pos);
        }

        if (tok.kind == Token::Kind::End) break;
        if (tok.kind != Token::Kind::Plus)
            throw FormulaError("expected '+' between terms", tok.position);
    }
    if (formula.terms.empty()) throw FormulaError("formula has no terms", text.size());
    return formula;
}

std::string render_formula(const Formula& formula) {
    std::string out = formula.response + " ~ ";
    for (size_t i = 0; i < formula.terms.size(); ++i) {
        if (i) out += " + ";
        out += formula.terms[i].name();
    }
    return out;
}

}  // namespace incistat::model
