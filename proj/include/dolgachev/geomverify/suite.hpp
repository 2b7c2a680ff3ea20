#pragma once

// The full verification run over one shipped surface.

#include "dolgachev/geomverify/sigma.hpp"
#include "dolgachev/report.hpp"

namespace dolgachev {

struct SurfaceSuiteConfig {
    std::string dataset = "Y0_C20";
    std::uint64_t p = 79;
    Branch branch = Branch::plus;
    std::vector<std::uint64_t> extra_primes{107, 113};  // further primes for the sampled map checks
    std::size_t samples = 30;
    unsigned random_fibers = 5;
    std::uint64_t seed = 17;
};

// What each surface ships with; empty fields mean the check does not apply.
struct SurfaceData {
    std::vector<std::pair<std::string, std::string>> curves;        // dataset id, short name
    std::vector<std::tuple<std::string, std::string, std::string>> forms;  // dataset id, statement, curve that it cuts out
    std::string map;
    std::string cover;
    std::map<std::string, std::string> cover_curves;  // factor name -> curve name
    bool special_exact = false;                        // (node, worse, worse) rather than >= 2 worse
};

inline SurfaceData surface_data(const std::string& id) {
    if (id == "Y0_C20")
        return {{{"S2_PARAM", "S2"}, {"S1_PARAM", "S1"}},
                {{"F18", "f18", "S2"}, {"F110", "f110", "S1"}},
                "SIGMA3",
                "G7_C20",
                {{"f18", "S2"}, {"f110", "S1"}},
                true};
    if (id == "Y0_KEUM") return {{}, {}, "", "G7_KEUM", {}, false};
    throw ConfigError("no surface suite for dataset " + id);
}

inline std::vector<std::string> surface_dataset_ids(const std::string& id) {
    SurfaceData sd = surface_data(id);
    std::vector<std::string> ids{id};
    for (auto& [d, n] : sd.curves) ids.push_back(d);
    for (auto& f : sd.forms) ids.push_back(std::get<0>(f));
    if (!sd.map.empty()) ids.push_back(sd.map);
    if (!sd.cover.empty()) ids.push_back(sd.cover);
    return ids;
}

inline nlohmann::json fiber_points_json(const FiberSingularities& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& p : s.rational)
        arr.push_back({{"w", p.w}, {"kind", to_string(p.cls.kind)}, {"quad_rank", p.cls.quad_rank}});
    for (auto& p : s.quadratic) {
        nlohmann::json w = nlohmann::json::array();
        for (auto& c : p.w) w.push_back({c.a, c.b});
        arr.push_back({{"w", w}, {"kind", to_string(p.cls.kind)}, {"quad_rank", p.cls.quad_rank}, {"field", "F_p^2"}});
    }
    return arr;
}

inline Report verify_surface(const Manifest& M, const SurfaceSuiteConfig& cfg) {
    SurfaceData sd = surface_data(cfg.dataset);
    Report rep;
    PolyDocument doc = M.document(cfg.dataset);
    auto qs = load_quadric_system(doc, QI7{});
    auto sys = load_quadric_system(doc, Fp(cfg.p), cfg.branch);
    WeightTable W = WeightTable::standard();

    rep.run("bidegrees", [&](CheckResult& c) {
        c.detail = nlohmann::json::object();
        for (int i = 1; i <= 9; ++i) {
            std::string n = "q" + std::to_string(i);
            auto b = try_bidegree(doc.get(n), W);
            c.detail[n] = b ? to_string(*b) : "inhomogeneous";
        }
        auto bad = audit_bidegrees(doc, M.entry(cfg.dataset));
        if (!bad.empty()) c.witness = bad[0];
        return bad.empty();
    });

    std::map<std::string, CurveParam> curves;
    for (auto& [id, name] : sd.curves) {
        curves.emplace(name, load_curve(M.document(id), name));
        rep.run("on_surface." + name, [&, name = name](CheckResult& c) {
            auto r = verify_on_surface(qs.q, curves.at(name));
            c.witness = r.witness;
            return r.pass;
        });
    }
    std::vector<std::pair<std::string, Poly<QI7>>> markers;
    if (!sd.forms.empty()) markers.emplace_back("w1", Poly<QI7>::variable(doc.ring, QI7{}, "w1"));
    for (auto& [id, stmt, curve] : sd.forms) {
        Poly<QI7> f = M.document(id).get(stmt);
        markers.emplace_back(stmt, change_ring(f, doc.ring));
        for (auto& [name, cp] : curves) {
            bool own = name == curve;
            rep.run("section." + stmt + "." + name, [&, own](CheckResult& c) {
                auto r = verify_section_form(stmt, f, cp);
                c.detail = {{"expected", own ? "vanishes" : "does not vanish"}};
                if (r.pass != own) c.witness = own ? r.witness : stmt + " vanishes on " + name;
                return r.pass == own;
            });
        }
    }

    if (!sd.map.empty()) {
        auto s = load_birational_map(M.document(sd.map));
        MapStructure st;
        rep.run("map.structure", [&](CheckResult& c) {
            st = check_map_structure(s);
            c.detail = {{"fixes_base", st.fixes_base}, {"denominators", st.denominators_ok}, {"bidegree_shift", st.shift_ok},
                        {"discriminant_powers", st.disc_power}};
            if (!st.failures.empty()) c.witness = st.failures[0];
            return st.pass();
        });
        for (auto& [name, cp] : curves) {
            rep.run("map.image_on_surface." + name, [&](CheckResult& c) {
                auto r = verify_on_surface(qs.q, apply_map(s, st, cp, "s(" + name + ")"));
                c.witness = r.witness;
                return r.pass;
            });
            rep.run("map.cycle." + name, [&](CheckResult& c) {
                auto r = map_cycle(s, st, cp, markers);
                c.detail = {{"order", r.order()}, {"exactly_one", r.exactly_one}};
                return r.exactly_one && r.three_cycle;
            });
        }
        std::vector<std::uint64_t> primes{cfg.p};
        for (auto q : cfg.extra_primes)
            if (q != cfg.p) primes.push_back(q);
        for (auto q : primes)
            rep.run("map.samples.p" + std::to_string(q) + "." + to_string(cfg.branch), [&](CheckResult& c) {
                auto sq = q == cfg.p ? sys : load_quadric_system(doc, Fp(q), cfg.branch);
                auto pts = sample_surface_points(sq, cfg.samples, cfg.seed + q);
                auto r = check_map_on_samples(sq, coerce_map(s, Fp(q), cfg.branch), pts);
                c.detail = {{"sampled", r.sampled}, {"image_on_surface", r.image_on_surface}, {"order_three", r.order_three}};
                if (!r.failures.empty()) c.witness = r.failures[0];
                else if (pts.size() < cfg.samples) c.witness = "only " + std::to_string(pts.size()) + " points sampled";
                return r.pass() && pts.size() == cfg.samples;
            });
    }

    rep.run("fiber.hilbert_polynomial", [&](CheckResult& c) {
        std::mt19937_64 rng(cfg.seed);
        const Fp& F = sys.dom;
        c.detail = nlohmann::json::array();
        bool ok = true;
        for (unsigned k = 0; k < cfg.random_fibers;) {
            std::uint64_t a = 1 + rng() % (F.p - 1), b = 1 + rng() % (F.p - 1);
            if (F.mul(a, F.mul(a, a)) == F.mul(b, b)) continue;
            std::string hp = fiber_hilbert_polynomial(sys, a, b).str();
            c.detail.push_back({{"u0", a}, {"u1", b}, {"hilbert_polynomial", hp}});
            if (hp != "6T" && ok) c.witness = "(" + std::to_string(a) + "," + std::to_string(b) + "): " + hp;
            ok = ok && hp == "6T";
            ++k;
        }
        return ok;
    });
    rep.run("fiber.special", [&](CheckResult& c) {
        auto s = fiber_singular_points(sys, 1, 1, cfg.seed);
        std::size_t nodes = s.count(PointKind::node), worse = s.count(PointKind::worse);
        c.detail = {{"u0", 1}, {"u1", 1}, {"points", fiber_points_json(s)}, {"nodes", nodes}, {"worse", worse},
                    {"unresolved", s.unresolved}};
        bool ok = s.unresolved == 0 && s.count() == 3 && (sd.special_exact ? nodes == 1 && worse == 2 : worse >= 2);
        if (!ok) c.witness = std::to_string(s.count()) + " singular points, " + std::to_string(worse) + " worse than nodal";
        return ok;
    });

    if (!sd.cover.empty())
        rep.run("cover." + sd.cover, [&](CheckResult& c) {
            std::map<std::string, const CurveParam*> link;
            for (auto& [factor, curve] : sd.cover_curves) link[factor] = &curves.at(curve);
            auto r = verify_cover_function(load_cover_function(M.document(sd.cover)), link, W);
            c.detail = {{"numerator", to_string(r.num_total)}, {"denominator", to_string(r.den_total)}};
            if (!r.failures.empty()) c.witness = r.failures[0];
            return r.pass();
        });
    return rep;
}

}  // namespace dolgachev
