#pragma once

// Exact checks along rational curves and the weight balance of cover functions.

#include <map>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/poly/ops.hpp"
#include "dolgachev/poly/text.hpp"

namespace dolgachev {

inline const std::vector<std::string>& ambient_names() {
    static const std::vector<std::string> names{"u0", "u1", "w1", "w2", "w3", "w4", "w5", "w6"};
    return names;
}

inline std::vector<Bidegree> ambient_weights(const WeightTable& W = WeightTable::standard()) {
    std::vector<Bidegree> out;
    for (auto& n : ambient_names()) out.push_back(W.at(n));
    return out;
}

// Coordinates u0(t), u1(t), w1(t)..w6(t) over Q(i sqrt7).
struct CurveParam {
    std::string name;
    RingPtr ring;
    std::map<std::string, Poly<QI7>> coords;

    const Poly<QI7>& at(const std::string& v) const { return coords.at(v); }
};

inline CurveParam load_curve(const PolyDocument& doc, std::string name = "") {
    if (doc.ring->nvars() != 1) throw DatasetError("curve documents have exactly one variable");
    CurveParam c{std::move(name), doc.ring, {}};
    for (auto& v : ambient_names()) c.coords.emplace(v, doc.get(v));
    return c;
}

inline Poly<QI7> restrict_to_curve(const Poly<QI7>& f, const CurveParam& c) { return substitute(f, c.coords, c.ring); }

struct CurveCheck {
    bool pass = true;
    std::vector<std::string> failing;  // names of forms with a nonzero restriction
    std::string witness;               // first nonzero residual
};

// Every named form restricts to the zero polynomial in t.
inline CurveCheck check_forms_vanish(const std::vector<std::pair<std::string, Poly<QI7>>>& forms, const CurveParam& c) {
    CurveCheck out;
    for (auto& [name, f] : forms) {
        Poly<QI7> r = restrict_to_curve(f, c);
        if (r.is_zero()) continue;
        out.pass = false;
        out.failing.push_back(name);
        if (out.witness.empty()) out.witness = name + " = " + format_poly(r);
    }
    return out;
}

inline CurveCheck verify_on_surface(const std::vector<Poly<QI7>>& quadrics, const CurveParam& c) {
    std::vector<std::pair<std::string, Poly<QI7>>> named;
    for (std::size_t i = 0; i < quadrics.size(); ++i) named.emplace_back("q" + std::to_string(i + 1), quadrics[i]);
    return check_forms_vanish(named, c);
}

inline CurveCheck verify_section_form(const std::string& name, const Poly<QI7>& form, const CurveParam& c) {
    return check_forms_vanish({{name, form}}, c);
}

// Cover functions: products of named factors with exponents, numerator over denominator.
struct CoverFactor {
    std::string name;
    Poly<QI7> f;
    unsigned exp = 1;
};

struct CoverFunction {
    std::vector<CoverFactor> num, den;
};

inline unsigned exponent_value(const Poly<QI7>& e, const std::string& name) {
    if (!e.is_constant() || e.is_zero() || !e.lc().is_rational()) throw DatasetError(name + ": exponent must be a positive integer");
    const Rational& r = e.lc().a;
    if (r.get_den() != 1 || r <= 0 || r > 1000) throw DatasetError(name + ": exponent must be a positive integer");
    return static_cast<unsigned>(r.get_num().get_ui());
}

inline CoverFunction load_cover_function(const PolyDocument& doc) {
    CoverFunction cf;
    for (auto [prefix, side] : {std::pair{"num.", &cf.num}, std::pair{"den.", &cf.den}})
        for (auto& [key, f] : doc.with_prefix(prefix)) {
            if (key.size() > 4 && key.compare(key.size() - 4, 4, ".exp") == 0) continue;
            std::string ek = key + ".exp";
            side->push_back({key.substr(4), f, doc.has(ek) ? exponent_value(doc.get(ek), ek) : 1u});
        }
    if (cf.num.empty() || cf.den.empty()) throw DatasetError("cover function needs numerator and denominator factors");
    return cf;
}

struct CoverCheck {
    Bidegree num_total{0, 0}, den_total{0, 0};
    bool balanced = false;
    std::vector<std::string> failures;  // inhomogeneous factors or curves not contained
    bool pass() const { return balanced && failures.empty(); }
};

// Balanced bidegrees make the quotient a function on the surface; factors with a
// known curve are also checked to vanish on it.
inline CoverCheck verify_cover_function(const CoverFunction& cf, const std::map<std::string, const CurveParam*>& curves = {},
                                        const WeightTable& W = WeightTable::standard()) {
    CoverCheck out;
    auto total = [&](const std::vector<CoverFactor>& fs, Bidegree& acc) {
        for (auto& f : fs) {
            auto b = f.f.is_zero() ? std::nullopt : try_bidegree(f.f, W);
            if (!b) {
                out.failures.push_back(f.name + ": not bihomogeneous");
                continue;
            }
            acc.first += static_cast<int>(f.exp) * b->first;
            acc.second += static_cast<int>(f.exp) * b->second;
        }
    };
    total(cf.num, out.num_total);
    total(cf.den, out.den_total);
    out.balanced = out.failures.empty() && out.num_total == out.den_total;
    for (auto& f : cf.num) {
        auto it = curves.find(f.name);
        if (it == curves.end()) continue;
        if (!restrict_to_curve(f.f, *it->second).is_zero()) out.failures.push_back(f.name + ": does not vanish on " + it->second->name);
    }
    return out;
}

}  // namespace dolgachev
