#pragma once

// Polynomial text format.
//
//   # comment line
//   vars u0, u1, w1;          (optional; fixes the variable order)
//   q1 = (63-259*I7)/32*u0^4*w1^2 - w1;
//
// Expressions accept + - * ^ and parentheses; division only by constants.
// I7 denotes i*sqrt(7). Serialization is canonical: terms in ring order,
// one statement per line, so parse->serialize is a fixed point.

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dolgachev/poly/poly.hpp"

namespace dolgachev {

namespace text_detail {

enum class Tok { num, ident, plus, minus, star, slash, caret, lpar, rpar, end };

struct Token {
    Tok kind;
    std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::num, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::ident, s.substr(i, j - i)});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            case '(': k = Tok::lpar; break;
            case ')': k = Tok::rpar; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c)});
        ++i;
    }
    out.push_back({Tok::end, ""});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, RingPtr R) : t_(std::move(toks)), R_(std::move(R)) {}

    Poly<QI7> parse_all() {
        Poly<QI7> p = expr();
        if (peek() != Tok::end) throw ParseError("trailing input near '" + t_[i_].text + "'");
        return p;
    }

private:
    Tok peek() const { return t_[i_].kind; }
    const Token& next() { return t_[i_++]; }
    void expect(Tok k, const char* what) {
        if (peek() != k) throw ParseError(std::string("expected ") + what + " near '" + t_[i_].text + "'");
        ++i_;
    }
    Poly<QI7> constant(const QuadElem& c) const { return Poly<QI7>::constant(R_, QI7{}, c); }

    Poly<QI7> expr() {
        Poly<QI7> acc(R_, QI7{});
        bool neg = false;
        if (peek() == Tok::plus || peek() == Tok::minus) neg = next().kind == Tok::minus;
        acc = term();
        if (neg) acc = -acc;
        while (peek() == Tok::plus || peek() == Tok::minus) {
            bool sub = next().kind == Tok::minus;
            Poly<QI7> t = term();
            acc = sub ? acc - t : acc + t;
        }
        return acc;
    }
    Poly<QI7> term() {
        Poly<QI7> acc = factor();
        while (peek() == Tok::star || peek() == Tok::slash) {
            bool div = next().kind == Tok::slash;
            Poly<QI7> f = factor();
            if (div) {
                if (!f.is_constant() || f.is_zero()) throw ParseError("division by a non-constant or zero");
                acc = acc.scale(f.lc().inverse());
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }
    Poly<QI7> factor() {
        Poly<QI7> base = atom();
        if (peek() == Tok::caret) {
            ++i_;
            if (peek() != Tok::num) throw ParseError("exponent must be a non-negative integer");
            unsigned long e = std::stoul(next().text);
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }
    Poly<QI7> atom() {
        const Token& tk = next();
        switch (tk.kind) {
            case Tok::num: return constant(QuadElem(Rational(int_from_string(tk.text))));
            case Tok::ident:
                if (tk.text == "I7") return constant(QuadElem::omega());
                if (R_->index(tk.text) < 0) throw ParseError("unknown variable '" + tk.text + "'");
                return Poly<QI7>::variable(R_, QI7{}, R_->require(tk.text));
            case Tok::lpar: {
                Poly<QI7> e = expr();
                expect(Tok::rpar, "')'");
                return e;
            }
            case Tok::minus: return -factor();
            default: throw ParseError("unexpected '" + tk.text + "'");
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    RingPtr R_;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
    return true;
}

}  // namespace text_detail

inline Poly<QI7> parse_poly(const std::string& s, const RingPtr& R) {
    return text_detail::Parser(text_detail::tokenize(s), R).parse_all();
}

// Coefficient text with its sign split off: returns {negative, magnitude}.
inline std::pair<bool, std::string> coeff_text(const QuadElem& c) {
    bool neg = c.a < 0 || (c.a == 0 && c.b < 0);
    return {neg, to_string(neg ? -c : c)};
}
inline std::pair<bool, std::string> coeff_text(const Rational& c) { return {c < 0, to_string(Rational(abs(c)))}; }

template <class D>
std::string format_poly(const Poly<D>& f) {
    if (f.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : f.terms()) {
        auto [neg, mag] = coeff_text(t.c);
        if (first) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        first = false;
        if (t.m.is_one()) s += mag;
        else if (mag == "1") s += monomial_str(t.m, *f.ring());
        else s += mag + "*" + monomial_str(t.m, *f.ring());
    }
    return s;
}

inline std::string format_poly(const Poly<Fp>& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (auto& t : f.terms()) {
        if (!s.empty()) s += " + ";
        if (t.m.is_one()) s += std::to_string(t.c);
        else if (t.c == 1) s += monomial_str(t.m, *f.ring());
        else s += std::to_string(t.c) + "*" + monomial_str(t.m, *f.ring());
    }
    return s;
}

struct PolyDocument {
    struct Comment { std::string text; };  // full line including '#'
    struct Blank {};
    struct Assign {
        std::string name;
        Poly<QI7> value;
    };
    using Entry = std::variant<Comment, Blank, Assign>;

    RingPtr ring;
    bool vars_declared = false;
    std::vector<Entry> entries;

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (auto& e : entries)
            if (auto* a = std::get_if<Assign>(&e)) out.push_back(a->name);
        return out;
    }
    bool has(const std::string& name) const {
        for (auto& e : entries)
            if (auto* a = std::get_if<Assign>(&e); a && a->name == name) return true;
        return false;
    }
    const Poly<QI7>& get(const std::string& name) const {
        for (auto& e : entries)
            if (auto* a = std::get_if<Assign>(&e); a && a->name == name) return a->value;
        throw DatasetError("no statement named '" + name + "'");
    }
    // Statements whose name starts with prefix, in file order.
    std::vector<std::pair<std::string, Poly<QI7>>> with_prefix(const std::string& prefix) const {
        std::vector<std::pair<std::string, Poly<QI7>>> out;
        for (auto& e : entries)
            if (auto* a = std::get_if<Assign>(&e); a && a->name.rfind(prefix, 0) == 0) out.emplace_back(a->name, a->value);
        return out;
    }
};

inline PolyDocument parse_document(const std::string& text) {
    using namespace text_detail;
    struct Raw {
        std::size_t entry;
        std::string name, rhs;
    };
    PolyDocument doc;
    std::vector<Raw> raws;
    std::vector<std::string> declared;
    std::string buffer;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto flush = [&](const std::string& stmt) {
        std::string s = trim(stmt);
        if (s.rfind("vars", 0) == 0 && (s.size() == 4 || std::isspace(static_cast<unsigned char>(s[4])))) {
            if (doc.vars_declared) throw ParseError("duplicate vars statement");
            std::string rest = s.substr(4);
            for (char& c : rest)
                if (c == ',') c = ' ';
            std::istringstream vs(rest);
            std::string v;
            while (vs >> v) declared.push_back(v);
            doc.vars_declared = true;
            return;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'name = expr;'");
        std::string name = trim(s.substr(0, eq));
        if (!valid_name(name)) throw ParseError("line " + std::to_string(lineno) + ": bad statement name '" + name + "'");
        raws.push_back({doc.entries.size(), name, s.substr(eq + 1)});
        doc.entries.emplace_back(PolyDocument::Blank{});  // placeholder, filled below
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(buffer).empty()) {
            std::string tl = trim(line);
            if (tl.empty()) {
                doc.entries.emplace_back(PolyDocument::Blank{});
                continue;
            }
            if (tl[0] == '#') {
                doc.entries.emplace_back(PolyDocument::Comment{line});
                continue;
            }
        }
        auto hash = line.find('#');
        buffer += (hash == std::string::npos ? line : line.substr(0, hash)) + "\n";
        std::size_t semi;
        while ((semi = buffer.find(';')) != std::string::npos) {
            flush(buffer.substr(0, semi));
            buffer.erase(0, semi + 1);
        }
    }
    if (!trim(buffer).empty()) throw ParseError("unterminated statement at end of input");

    std::vector<std::string> vars = declared;
    if (!doc.vars_declared) {
        std::set<std::string> seen;
        for (auto& r : raws)
            for (auto& tk : tokenize(r.rhs))
                if (tk.kind == Tok::ident && tk.text != "I7" && seen.insert(tk.text).second) vars.push_back(tk.text);
    }
    doc.ring = make_ring(vars);
    for (auto& r : raws) {
        try {
            doc.entries[r.entry] = PolyDocument::Assign{r.name, parse_poly(r.rhs, doc.ring)};
        } catch (const ParseError& e) {
            throw ParseError("in statement '" + r.name + "': " + e.what());
        }
    }
    return doc;
}

inline std::string serialize_document(const PolyDocument& doc) {
    std::string out;
    bool vars_written = false;
    auto write_vars = [&] {
        if (!doc.vars_declared || vars_written) return;
        out += "vars ";
        for (std::size_t i = 0; i < doc.ring->nvars(); ++i) out += (i ? ", " : "") + doc.ring->name(i);
        out += ";\n";
        vars_written = true;
    };
    for (auto& e : doc.entries) {
        if (auto* c = std::get_if<PolyDocument::Comment>(&e)) {
            out += c->text + "\n";
        } else if (std::holds_alternative<PolyDocument::Blank>(e)) {
            out += "\n";
        } else {
            write_vars();
            auto& a = std::get<PolyDocument::Assign>(e);
            out += a.name + " = " + format_poly(a.value) + ";\n";
        }
    }
    write_vars();
    return out;
}

}  // namespace dolgachev
