#include "tensorkit/index_notation.hpp"

#include <cctype>
#include <map>

namespace tk {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Expression expression() {
        Expression e;
        skip_ws();
        long long sign = accept('-') ? -1 : (accept('+'), 1);
        e.terms.push_back(term(sign));
        skip_ws();
        while (peek() == '+' || peek() == '-') {
            sign = get() == '-' ? -1 : 1;
            e.terms.push_back(term(sign));
            skip_ws();
        }
        return e;
    }

    Equation equation() {
        Equation eq;
        eq.lhs = expression();
        if (!accept('=')) fail("expected '=' in equation");
        eq.rhs = expression();
        return eq;
    }

    void expect_end(const char* what) {
        skip_ws();
        if (pos_ < text_.size()) fail(std::string("trailing input after ") + what);
    }

  private:
    Term term(long long sign) {
        Term t;
        skip_ws();
        if (is_digit(peek())) t.coefficient = rational();
        t.coefficient *= sign;
        skip_ws();
        if (!is_alpha(peek())) fail("expected a tensor factor");
        while (is_alpha(peek())) {
            t.factors.push_back(factor());
            skip_ws();
            if (accept('*')) skip_ws();
        }
        return t;
    }

    Rational rational() {
        long long num = integer();
        if (accept('/')) {
            long long den = integer();
            if (den == 0) fail("zero denominator");
            return {num, den};
        }
        return {num, 1};
    }

    long long integer() {
        if (!is_digit(peek())) fail("expected an integer");
        long long v = 0;
        while (is_digit(peek())) v = v * 10 + (get() - '0');
        return v;
    }

    TensorFactor factor() {
        TensorFactor f;
        f.name += get();
        while (is_alnum(peek())) f.name += get();
        while (peek() == '^' || peek() == '_') {
            Variance pos = get() == '^' ? Variance::contra : Variance::co;
            index_block(f, pos);
        }
        f.is_derivative = (f.name == "pd");
        if (f.is_derivative && f.indices.size() != 1)
            fail("'pd' must carry exactly one index");
        return f;
    }

    void index_block(TensorFactor& f, Variance pos) {
        skip_ws();
        if (accept('{')) {
            skip_ws();
            if (!is_alpha(peek())) fail("expected index letters");
            while (is_alpha(peek())) f.indices.emplace_back(get(), pos);
            skip_ws();
            if (!accept('}')) fail("expected '}'");
            return;
        }
        if (!is_alpha(peek())) fail("expected an index letter or '{'");
        f.indices.emplace_back(get(), pos);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }
    static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
    static bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
    static bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

Expression parse_expression(const std::string& text) {
    Parser p(text);
    Expression e = p.expression();
    p.expect_end("expression");
    return e;
}

Equation parse_equation(const std::string& text) {
    Parser p(text);
    Equation e = p.equation();
    p.expect_end("equation");
    return e;
}

namespace {

// symbol -> occurrences, plus first-appearance order
struct Occurrences {
    std::map<char, std::vector<IndexOccurrence>> by_symbol;
    std::vector<char> order;
};

Occurrences collect(const Term& term) {
    Occurrences occ;
    for (int f = 0; f < static_cast<int>(term.factors.size()); ++f) {
        const auto& idx = term.factors[f].indices;
        for (int s = 0; s < static_cast<int>(idx.size()); ++s) {
            auto [it, fresh] = occ.by_symbol.try_emplace(idx[s].first);
            if (fresh) occ.order.push_back(idx[s].first);
            it->second.push_back({idx[s].first, idx[s].second, f, s});
        }
    }
    return occ;
}

} // namespace

TermIndexInfo classify_indices(const Term& term) {
    TermIndexInfo info;
    Occurrences occ = collect(term);
    for (char sym : occ.order) {
        const auto& v = occ.by_symbol[sym];
        if (v.size() == 1)
            info.free.push_back(v[0]);
        else if (v.size() == 2)
            info.dummies.push_back({sym, v[0], v[1]});
        else
            throw ShapeError(std::string("index '") + sym + "' occurs " +
                             std::to_string(v.size()) + " times in one term");
    }
    return info;
}

namespace {

ValidationReport validate_terms(const std::vector<const Term*>& terms, Mode mode) {
    ValidationReport rep;
    std::vector<TermIndexInfo> infos(terms.size());

    for (int ti = 0; ti < static_cast<int>(terms.size()); ++ti) {
        Occurrences occ = collect(*terms[ti]);
        for (char sym : occ.order) {
            const auto& v = occ.by_symbol[sym];
            if (v.size() == 1) {
                infos[ti].free.push_back(v[0]);
            } else if (v.size() == 2) {
                infos[ti].dummies.push_back({sym, v[0], v[1]});
                if (mode == Mode::strict && v[0].position == v[1].position) {
                    rep.ok = false;
                    rep.diagnostics.push_back(
                        {"dummy-variance", ti,
                         std::string("dummy index '") + sym +
                             "' repeats in the same position; one upper and one lower required"});
                }
            } else {
                rep.ok = false;
                rep.diagnostics.push_back({"index-count", ti,
                                           std::string("index '") + sym + "' occurs " +
                                               std::to_string(v.size()) + " times in one term"});
            }
        }
    }

    // every term must carry the same free indices
    const auto& ref = infos[0].free;
    for (int ti = 1; ti < static_cast<int>(terms.size()); ++ti) {
        auto symbols = [](const std::vector<IndexOccurrence>& v) {
            std::set<char> s;
            for (const auto& o : v) s.insert(o.symbol);
            return s;
        };
        std::set<char> a = symbols(ref), b = symbols(infos[ti].free);
        if (a != b) {
            rep.ok = false;
            rep.diagnostics.push_back({"free-set", ti, "free indices differ between terms"});
            continue;
        }
        if (mode == Mode::strict) {
            for (const auto& o : infos[ti].free) {
                for (const auto& r : ref) {
                    if (r.symbol == o.symbol && r.position != o.position) {
                        rep.ok = false;
                        rep.diagnostics.push_back(
                            {"free-variance", ti,
                             std::string("free index '") + o.symbol +
                                 "' changes position between terms"});
                    }
                }
            }
        }
    }

    rep.free_indices = infos[0].free;
    for (auto& info : infos) rep.dummy_pairs.push_back(std::move(info.dummies));
    return rep;
}

} // namespace

ValidationReport validate(const Expression& expr, Mode mode) {
    if (expr.terms.empty()) throw ShapeError("validate: empty expression");
    std::vector<const Term*> terms;
    for (const auto& t : expr.terms) terms.push_back(&t);
    return validate_terms(terms, mode);
}

ValidationReport validate(const Equation& eq, Mode mode) {
    if (eq.lhs.terms.empty() || eq.rhs.terms.empty())
        throw ShapeError("validate: empty equation side");
    std::vector<const Term*> terms;
    for (const auto& t : eq.lhs.terms) terms.push_back(&t);
    for (const auto& t : eq.rhs.terms) terms.push_back(&t);
    return validate_terms(terms, mode);
}

Term rename_dummies(const Term& term, const std::set<char>& reserved) {
    Occurrences occ = collect(term);

    std::set<char> in_use(reserved);
    for (char sym : occ.order) in_use.insert(sym);

    Term out = term;
    for (char sym : occ.order) {
        if (occ.by_symbol[sym].size() != 2) continue;
        // the pair's own letter is a legal choice, so renaming is idempotent
        if (!reserved.count(sym)) in_use.erase(sym);
        char fresh = 0;
        for (char c = 'a'; c <= 'z'; ++c)
            if (!in_use.count(c)) {
                fresh = c;
                break;
            }
        if (fresh == 0) throw ShapeError("rename_dummies: alphabet exhausted");
        in_use.insert(fresh);
        for (const auto& o : occ.by_symbol[sym])
            out.factors[o.factor].indices[o.slot].first = fresh;
    }
    return out;
}

std::string render(const TensorFactor& f) {
    std::string s = f.name;
    std::size_t i = 0;
    while (i < f.indices.size()) {
        Variance pos = f.indices[i].second;
        std::string letters;
        while (i < f.indices.size() && f.indices[i].second == pos) letters += f.indices[i++].first;
        s += (pos == Variance::contra) ? '^' : '_';
        if (letters.size() == 1)
            s += letters;  // braces only where they carry information
        else
            s += '{' + letters + '}';
    }
    return s;
}

namespace {

// |coefficient| and factors; the sign is the term separator's business
std::string render_unsigned(const Term& t) {
    Rational c = t.coefficient >= Rational(0) ? t.coefficient : -t.coefficient;
    std::string s;
    if (c != Rational(1)) {
        s = std::to_string(c.numerator());
        if (c.denominator() != 1) s += "/" + std::to_string(c.denominator());
        s += ' ';
    }
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        if (i) s += ' ';
        s += render(t.factors[i]);
    }
    return s;
}

} // namespace

std::string render(const Term& t) {
    return (t.coefficient < Rational(0) ? "-" : "") + render_unsigned(t);
}

std::string render(const Expression& e) {
    std::string s;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        bool neg = e.terms[i].coefficient < Rational(0);
        if (i == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += render_unsigned(e.terms[i]);
    }
    return s;
}

std::string render(const Equation& e) { return render(e.lhs) + " = " + render(e.rhs); }

} // namespace tk
