#pragma once

// The order-3 birational map: structure, application to curves and points,
// equality of ambient points up to the torus scaling, and sampled checks.

#include <random>

#include "dolgachev/geomverify/fiber.hpp"
#include "dolgachev/geomverify/surface.hpp"

namespace dolgachev {

// Coordinate i of the image is num[i] / den[i]; ambient order u0, u1, w1..w6.
template <class D>
struct BirationalMap {
    std::vector<Poly<D>> num, den;
};

inline BirationalMap<QI7> load_birational_map(const PolyDocument& doc) {
    BirationalMap<QI7> s;
    for (auto& v : ambient_names()) {
        s.num.push_back(doc.get(v + ".num"));
        s.den.push_back(doc.get(v + ".den"));
    }
    return s;
}

template <class D>
BirationalMap<D> coerce_map(const BirationalMap<QI7>& s, const D& d, Branch br = Branch::plus) {
    BirationalMap<D> out;
    for (auto& f : s.num) out.num.push_back(coerce_poly(f, d, br));
    for (auto& f : s.den) out.den.push_back(coerce_poly(f, d, br));
    return out;
}

inline Poly<QI7> discriminant_form(const RingPtr& R) {
    QI7 K;
    auto u0 = Poly<QI7>::variable(R, K, "u0"), u1 = Poly<QI7>::variable(R, K, "u1");
    return u0.pow(3) - u1.pow(2);
}

struct MapStructure {
    bool fixes_base = true;       // u0, u1 map to themselves
    bool denominators_ok = true;  // den = c (u0^3 - u1^2)^k
    bool shift_ok = true;         // num/den has bidegree (1, b + shift) on w of bidegree (1, b)
    std::vector<unsigned> disc_power;
    std::vector<QuadElem> den_const;
    std::vector<std::string> failures;

    bool pass() const { return fixes_base && denominators_ok && shift_ok; }
};

inline MapStructure check_map_structure(const BirationalMap<QI7>& s, int shift = 2,
                                        const WeightTable& W = WeightTable::standard()) {
    MapStructure st;
    const RingPtr& R = s.num.at(0).ring();
    Poly<QI7> disc = discriminant_form(R);
    auto names = ambient_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = s.num[i];
        const auto& d = s.den[i];
        if (i < 2) {
            bool ok = n == Poly<QI7>::variable(R, QI7{}, names[i]) && d == n.one_like();
            if (!ok) st.failures.push_back(names[i] + " is not fixed");
            st.fixes_base = st.fixes_base && ok;
            st.disc_power.push_back(0);
            st.den_const.push_back(QuadElem(1));
            continue;
        }
        std::optional<Bidegree> od, on;
        if (!d.is_zero()) od = try_bidegree(d, W);
        if (!n.is_zero()) on = try_bidegree(n, W);
        const bool hd = od.has_value(), hn = on.has_value();
        const Bidegree db = od.value_or(Bidegree{-1, -1}), nb = on.value_or(Bidegree{-1, -1});
        unsigned k = hd && db.first == 0 && db.second % 6 == 0 ? static_cast<unsigned>(db.second / 6) : 0;
        Poly<QI7> dk = disc.pow(k);
        QuadElem c = hd ? d.lc() * dk.lc().inverse() : QuadElem(0);
        if (!hd || d != dk.scale(c)) {
            st.denominators_ok = false;
            st.failures.push_back(names[i] + ".den is not a constant times a power of u0^3 - u1^2");
        }
        st.disc_power.push_back(k);
        st.den_const.push_back(c);
        Bidegree want{W.at(names[i]).first, W.at(names[i]).second + shift};
        if (!hn || !hd || Bidegree{nb.first - db.first, nb.second - db.second} != want) {
            st.shift_ok = false;
            st.failures.push_back(names[i] + ": image bidegree differs from " + to_string(want));
        }
    }
    return st;
}

// Image of a curve; the w coordinates are rescaled by the common power of
// u0^3 - u1^2 (the first torus factor), leaving polynomials in t.
inline CurveParam apply_map(const BirationalMap<QI7>& s, const MapStructure& st, const CurveParam& c, std::string name) {
    if (!st.denominators_ok || !st.fixes_base) throw std::invalid_argument("map structure check failed");
    Poly<QI7> disc = restrict_to_curve(discriminant_form(s.num[0].ring()), c);
    if (disc.is_zero()) throw IndeterminacyLocus("u0^3 = u1^2 along " + c.name);
    unsigned K = *std::max_element(st.disc_power.begin(), st.disc_power.end());
    CurveParam out{std::move(name), c.ring, {}};
    auto names = ambient_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        Poly<QI7> v = restrict_to_curve(s.num[i], c).scale(st.den_const[i].inverse());
        if (i >= 2 && K > st.disc_power[i]) v = v * disc.pow(K - st.disc_power[i]);
        out.coords.emplace(names[i], std::move(v));
    }
    return out;
}

template <class D>
std::vector<typename D::Elem> apply_map_at(const BirationalMap<D>& s, const std::vector<typename D::Elem>& pt) {
    const D& d = s.num.at(0).dom();
    std::vector<typename D::Elem> out;
    for (std::size_t i = 0; i < s.num.size(); ++i) {
        auto dv = evaluate(s.den[i], pt);
        if (d.is_zero(dv)) throw IndeterminacyLocus("denominator of coordinate " + std::to_string(i + 1) + " vanishes");
        out.push_back(d.mul(evaluate(s.num[i], pt), d.inv(dv)));
    }
    return out;
}

namespace ambient_detail {

inline void exponent_vectors(std::size_t n, unsigned max_deg, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> e(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == n) {
            if (left < max_deg) out.push_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, max_deg);
}

}  // namespace ambient_detail

// x ~ y under the torus scaling: equal zero patterns and m1(x) m2(y) = m2(x) m1(y)
// for every pair of monomials of equal bidegree and degree <= max_deg.
template <class D>
bool ambient_equal(const D& d, const std::vector<typename D::Elem>& x, const std::vector<typename D::Elem>& y,
                   const std::vector<Bidegree>& w, unsigned max_deg = 4) {
    using E = typename D::Elem;
    const std::size_t n = x.size();
    if (y.size() != n || w.size() != n) throw std::invalid_argument("ambient points of different arity");
    for (std::size_t i = 0; i < n; ++i)
        if (d.is_zero(x[i]) != d.is_zero(y[i])) return false;
    std::vector<std::vector<unsigned>> exps;
    ambient_detail::exponent_vectors(n, max_deg, exps);
    std::map<Bidegree, std::vector<std::pair<E, E>>> groups;
    for (auto& e : exps) {
        Bidegree b{0, 0};
        E vx = d.one(), vy = d.one();
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned k = 0; k < e[i]; ++k) {
                b.first += w[i].first, b.second += w[i].second;
                vx = d.mul(vx, x[i]), vy = d.mul(vy, y[i]);
            }
        groups[b].emplace_back(vx, vy);
    }
    for (auto& [b, vals] : groups)
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                if (!d.eq(d.mul(vals[i].first, vals[j].second), d.mul(vals[j].first, vals[i].second))) return false;
    return true;
}

// Rational points of the surface: random fibers off u0^3 = u1^2, each cut by up
// to `hyperplanes` random hyperplanes until a rational point appears.
inline std::vector<std::vector<std::uint64_t>> sample_surface_points(const QuadricSystem<Fp>& sys, std::size_t count,
                                                                     std::uint64_t seed = 17, unsigned hyperplanes = 20) {
    const Fp& F = sys.dom;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t fibers = 0; out.size() < count && fibers < 20 * count; ++fibers) {
        std::uint64_t a = 1 + rng() % (F.p - 1), b = 1 + rng() % (F.p - 1);
        if (F.mul(a, F.mul(a, a)) == F.mul(b, b)) continue;
        auto fiber = fiber_ideal(sys, a, b);
        const RingPtr& W = fiber[0].ring();
        for (unsigned h = 0; h < hyperplanes; ++h) {
            Poly<Fp> ell(W, F);
            for (std::size_t i = 0; i < 6; ++i) ell += Poly<Fp>::variable(W, F, i).scale(rng() % F.p);
            if (ell.is_zero()) continue;
            auto gens = fiber;
            gens.push_back(ell);
            std::optional<ZeroDimSolution> sol;
            try {
                sol = solve_projective(gens, SolveOptions{rng()});
            } catch (const NotZeroDim&) {
                continue;
            }
            if (sol->rational.empty()) continue;
            std::vector<std::uint64_t> pt{a, b};
            pt.insert(pt.end(), sol->rational[0].coords.begin(), sol->rational[0].coords.end());
            out.push_back(std::move(pt));
            break;
        }
    }
    return out;
}

inline std::string point_str(const std::vector<std::uint64_t>& pt) {
    std::string s = "[";
    for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? "," : "") + std::to_string(pt[i]);
    return s + "]";
}

struct MapSampleReport {
    std::size_t sampled = 0, image_on_surface = 0, order_three = 0;
    std::vector<std::string> failures;
    bool pass() const { return sampled > 0 && image_on_surface == sampled && order_three == sampled; }
};

// s(P) satisfies the quadrics and s(s(s(P))) ~ P, for each sample P.
inline MapSampleReport check_map_on_samples(const QuadricSystem<Fp>& sys, const BirationalMap<Fp>& s,
                                            const std::vector<std::vector<std::uint64_t>>& pts) {
    MapSampleReport r;
    auto w = ambient_weights();
    for (auto& p : pts) {
        ++r.sampled;
        try {
            auto q1 = apply_map_at(s, p);
            bool on = true;
            for (auto& q : sys.q) on = on && evaluate(q, q1) == 0;
            if (on) ++r.image_on_surface;
            else r.failures.push_back(point_str(p) + ": image off the surface");
            auto q3 = apply_map_at(s, apply_map_at(s, q1));
            if (ambient_equal(sys.dom, q3, p, w)) ++r.order_three;
            else r.failures.push_back(point_str(p) + ": third iterate is " + point_str(q3));
        } catch (const IndeterminacyLocus& e) {
            r.failures.push_back(point_str(p) + ": " + e.what());
        }
    }
    return r;
}

struct CycleStep {
    std::string curve;
    std::vector<std::string> vanishing;  // which of the marker forms vanish identically
};

struct CycleReport {
    std::vector<CycleStep> steps;  // start, s(start), ..., s^iterations(start)
    bool exactly_one = false;
    bool three_cycle = false;
    std::string order() const {
        std::string s;
        for (auto& st : steps) s += (s.empty() ? "" : " -> ") + (st.vanishing.size() == 1 ? st.vanishing[0] : std::string("?"));
        return s;
    }
};

// Follows a curve under the map and records which marker form cuts out each image.
inline CycleReport map_cycle(const BirationalMap<QI7>& s, const MapStructure& st, const CurveParam& start,
                             const std::vector<std::pair<std::string, Poly<QI7>>>& markers, unsigned iterations = 3) {
    CycleReport r;
    CurveParam c = start;
    for (unsigned k = 0; k <= iterations; ++k) {
        if (k) c = apply_map(s, st, c, "s^" + std::to_string(k) + "(" + start.name + ")");
        CycleStep step{c.name, {}};
        for (auto& [name, f] : markers)
            if (restrict_to_curve(f, c).is_zero()) step.vanishing.push_back(name);
        r.steps.push_back(std::move(step));
    }
    r.exactly_one = std::all_of(r.steps.begin(), r.steps.end(), [](auto& x) { return x.vanishing.size() == 1; });
    if (r.exactly_one && iterations >= 3) {
        auto id = [&](unsigned k) { return r.steps[k].vanishing[0]; };
        r.three_cycle = id(0) != id(1) && id(1) != id(2) && id(0) != id(2) && id(3) == id(0);
    }
    return r;
}

}  // namespace dolgachev
