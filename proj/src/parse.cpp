#include "symtower/parse.hpp"

#include <cctype>
#include <charconv>

#include "symtower/errors.hpp"

namespace symtower {

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    /// 1-based column of the next token.
    int column() {
        skip_ws();
        return static_cast<int>(pos_) + 1;
    }

    [[noreturn]] void fail(const std::string& message) {
        throw CalcError(ErrorKind::ParseError, message + " at column " + std::to_string(column()), column());
    }

    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("expected an integer");
        }
        std::int64_t value = 0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{}) {
            pos_ = start;
            fail("integer out of range");
        }
        return value;
    }

    bool looks_like_integer() {
        skip_ws();
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    }

    /// Integer of any size, folded mod m digit by digit; the sign survives.
    std::int64_t integer_mod(std::int64_t m) {
        skip_ws();
        std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        std::size_t digits = pos_;
        std::int64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = (value * 10 + (text_[pos_] - '0')) % m;
            ++pos_;
        }
        if (pos_ == digits) {
            pos_ = start;
            fail("expected an integer");
        }
        return negative ? -value : value;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                ++pos_;
        }
        if (pos_ == start) fail("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ElementClass parse_factor(Scanner& sc, const TowerPtr& tower) {
    if (sc.looks_like_integer()) {
        int col = sc.column();
        std::int64_t value = sc.integer();
        if (value == 1) return ElementClass::one(tower);
        if (value == -1) return minus_one_class(tower);
        throw CalcError(ErrorKind::ParseError,
                        "only the literals 1 and -1 denote element classes, got " + std::to_string(value) +
                            " at column " + std::to_string(col),
                        col);
    }
    int col = sc.column();
    std::string name = sc.identifier();
    auto index = tower->generator_index(name);
    if (!index)
        throw CalcError(ErrorKind::UnknownGenerator,
                        "'" + name + "' is not a generator of the declared tower (column " +
                            std::to_string(col) + ")",
                        col);
    std::int64_t exp = 1;
    if (sc.consume('^')) exp = sc.integer_mod(tower->m);
    return ElementClass::generator(tower, *index).pow(exp);
}

ElementClass parse_element_body(Scanner& sc, const TowerPtr& tower) {
    ElementClass acc = parse_factor(sc, tower);
    while (sc.consume('*')) acc = acc.mul(parse_factor(sc, tower));
    return acc;
}

std::vector<ElementClass> parse_symbol_body(Scanner& sc, const TowerPtr& tower) {
    sc.expect('(');
    std::vector<ElementClass> entries;
    entries.push_back(parse_element_body(sc, tower));
    while (sc.consume(',')) entries.push_back(parse_element_body(sc, tower));
    sc.expect(')');
    return entries;
}

}  // namespace

ElementClass parse_element(std::string_view text, const TowerPtr& tower) {
    Scanner sc(text);
    ElementClass cls = parse_element_body(sc, tower);
    if (!sc.at_end()) sc.fail("trailing input");
    return cls;
}

SymbolSum parse_symbol_expr(std::string_view text, const TowerPtr& tower) {
    Scanner sc(text);
    {
        // "0" denotes the empty sum.
        Scanner probe(text);
        if (probe.looks_like_integer()) {
            Scanner probe2(text);
            if (probe2.integer() == 0 && probe2.at_end()) return SymbolSum(tower, 0);
        }
    }

    struct Parsed {
        std::int64_t coeff;
        std::vector<ElementClass> entries;
    };
    std::vector<Parsed> parsed;

    bool negative = false;
    for (;;) {
        std::int64_t coeff = negative ? -1 : 1;
        if (sc.looks_like_integer()) {
            coeff *= sc.integer();
            sc.expect('*');
        }
        parsed.push_back({coeff, parse_symbol_body(sc, tower)});
        if (sc.at_end()) break;
        if (sc.consume('+'))
            negative = false;
        else if (sc.consume('-'))
            negative = true;
        else
            sc.fail("expected '+', '-' or end of input");
    }

    int degree = static_cast<int>(parsed.front().entries.size());
    for (const auto& p : parsed)
        if (static_cast<int>(p.entries.size()) != degree)
            raise(ErrorKind::ArityMismatch, "all symbols in a sum must have the same number of slots");
    SymbolSum sum(tower, degree);
    for (auto& p : parsed) sum.add_term(p.coeff, std::move(p.entries));
    return sum;
}

std::string serialize(const ElementClass& cls) {
    std::string out;
    auto append = [&out](const std::string& name, std::int64_t exp) {
        if (exp == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (exp != 1) out += "^" + std::to_string(exp);
    };
    append("c", cls.base_exp());
    for (int s = 0; s < static_cast<int>(cls.unif_exps().size()); ++s)
        append(cls.tower()->uniformizers[static_cast<std::size_t>(s)], cls.unif_exp(s));
    return out.empty() ? "1" : out;
}

std::string serialize(const SymbolSum& sum) {
    if (sum.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [coeff, entries] : sum.terms()) {
        std::int64_t c = coeff;
        if (!first) {
            out += c < 0 ? " - " : " + ";
            c = c < 0 ? -c : c;
        }
        first = false;
        if (c != 1) out += std::to_string(c) + "*";
        out += "(";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) out += ", ";
            out += serialize(entries[i]);
        }
        out += ")";
    }
    return out;
}

}  // namespace symtower
