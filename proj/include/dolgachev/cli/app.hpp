#pragma once

// Subcommands, provenance headers and exit codes of the dolgachev tool.
// stdout carries the JSON report; a one-line-per-check summary goes to stderr.

#include <csignal>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dolgachev/families/quadric.hpp"
#include "dolgachev/families/series.hpp"
#include "dolgachev/geomverify/suite.hpp"
#include "dolgachev/lift/hensel.hpp"
#include "dolgachev/recog/recognize.hpp"
#include "dolgachev/report.hpp"
#include "dolgachev/search/net.hpp"

namespace dolgachev::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kPass = 0, kFail = 1, kConfig = 2 };

struct Env {
    Env(std::ostream& o, std::ostream& e) : out(o), err(e) {}
    std::ostream& out;
    std::ostream& err;
    std::string data_dir = dolgachev::data_dir();
    std::uint64_t seed = 17;
    bool timings = false;
    std::string out_path;
    std::optional<Manifest> loaded;

    const Manifest& manifest() {
        if (!loaded) loaded = Manifest::load(data_dir);
        return *loaded;
    }
};

inline json provenance(Env& env, const std::string& command, json config, const std::vector<std::string>& datasets) {
    config["seed"] = env.seed;
    json ds = json::object();
    for (auto& id : datasets) ds[id] = env.manifest().entry(id).sha256;
    return {{"tool", "dolgachev"},    {"version", kVersion}, {"command", command},  {"config", config},
            {"config_hash", sha256_hex(config.dump())}, {"datasets", ds}, {"seed", env.seed}};
}

inline int emit(Env& env, const std::string& command, const json& config, const std::vector<std::string>& datasets,
                const Report& rep, json results, bool print_json = true) {
    json doc{{"provenance", provenance(env, command, config, datasets)},
             {"status", rep.pass() ? "pass" : "fail"},
             {"checks", rep.to_json(env.timings)},
             {"results", std::move(results)}};
    std::string text = doc.dump(2) + "\n";
    if (print_json) env.out << text;
    if (!env.out_path.empty()) write_file_atomic(env.out_path, text);
    for (auto& c : rep.checks())
        env.err << (c.pass ? "pass  " : "FAIL  ") << c.name << (c.witness.empty() ? "" : "  " + c.witness) << "\n";
    return rep.pass() ? kPass : kFail;
}

inline std::vector<Bidegree> parse_bidegrees(const std::string& s) {
    std::vector<Bidegree> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto c = item.find(',');
        if (c == std::string::npos) throw ConfigError("bidegree '" + item + "' is not of the form a,b");
        try {
            out.emplace_back(std::stoi(item.substr(0, c)), std::stoi(item.substr(c + 1)));
        } catch (const std::logic_error&) {
            throw ConfigError("bidegree '" + item + "' is not of the form a,b");
        }
    }
    return out;
}

inline Integer parse_integer(const std::string& s, const std::string& what) {
    try {
        return int_from_string(s);
    } catch (const std::exception&) {
        throw ConfigError(what + " is not an integer: " + s);
    }
}

// A polynomial named by dataset (and statement) or given inline with its variables.
struct PolySource {
    std::string dataset, name, poly, vars = "x";

    void add_options(CLI::App* c) {
        c->add_option("--dataset", dataset, "dataset id from the manifest");
        c->add_option("--name", name, "statement within the dataset");
        c->add_option("--poly", poly, "polynomial text");
        c->add_option("--vars", vars, "variables of --poly, comma separated");
    }
    json to_json() const { return {{"dataset", dataset}, {"name", name}, {"poly", poly}, {"vars", vars}}; }
    std::vector<std::string> datasets() const { return dataset.empty() ? std::vector<std::string>{} : std::vector{dataset}; }

    PolyDocument document(Env& env) const {
        if (dataset.empty() == poly.empty()) throw ConfigError("give exactly one of --dataset and --poly");
        if (!dataset.empty()) return env.manifest().document(dataset);
        return parse_document("vars " + vars + ";\nf = " + poly + ";\n");
    }
    Poly<QI7> load(Env& env) const {
        PolyDocument doc = document(env);
        if (!name.empty()) return doc.get(name);
        auto names = doc.names();
        if (names.size() != 1) throw ConfigError("dataset has several statements; choose one with --name");
        return doc.get(names[0]);
    }
};

inline SearchSpace load_space(const std::string& path) {
    try {
        return SearchSpace::from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// ---- subcommands ----

inline int cmd_fmt(Env& env, const std::string& input, const std::string& output) {
    std::string text = serialize_document(parse_document(read_file(input)));
    if (output.empty()) env.out << text;
    else write_file_atomic(output, text);
    return kPass;
}

struct FamilyOpts {
    std::vector<std::uint64_t> primes{79, 101, 1009};
    unsigned samples = 20;
};

inline int cmd_verify_family(Env& env, const FamilyOpts& o) {
    const std::string id = "NINE_PARAM_FAMILY";
    PolyDocument fam = env.manifest().document(id);
    Report rep;
    rep.run("bidegrees", [&](CheckResult& c) {
        c.detail = json::object();
        for (int i = 1; i <= 9; ++i) {
            std::string n = "q" + std::to_string(i);
            auto b = try_bidegree(fam.get(n), WeightTable::standard());
            c.detail[n] = b ? to_string(*b) : "inhomogeneous";
        }
        auto bad = audit_bidegrees(fam, env.manifest().entry(id));
        if (!bad.empty()) c.witness = bad[0];
        return bad.empty();
    });
    for (auto p : o.primes) {
        Fp F(p);
        std::mt19937_64 rng(env.seed + p);
        auto params = [&] {
            std::vector<std::uint64_t> d(9);
            for (auto& x : d) x = 1 + rng() % (p - 1);
            return d;
        };
        rep.run("associativity.p" + std::to_string(p), [&](CheckResult& c) {
            unsigned ok = 0;
            for (unsigned k = 0; k < o.samples; ++k) {
                auto d = params();
                if (check_associativity(instantiate_nine_param(fam, F, d)).pass()) ++ok;
                else if (c.witness.empty()) c.witness = "d = " + json(d).dump();
            }
            c.detail = {{"samples", o.samples}, {"passed", ok}};
            return ok == o.samples;
        });
        rep.run("perturbation.p" + std::to_string(p), [&](CheckResult& c) {
            auto sys = instantiate_nine_param(fam, F, params());
            auto u0 = Poly<Fp>::variable(sys.ring, F, "u0"), u1 = Poly<Fp>::variable(sys.ring, F, "u1"),
                 v1 = Poly<Fp>::variable(sys.ring, F, "v1");
            sys.q[0] += u0 * u1 * u1 * v1 * v1;
            auto r = check_associativity(sys);
            c.detail = {{"perturbed", "q1 += u0*u1^2*v1^2"}, {"failing_triples", r.failing_triples.size()}};
            return !r.pass();
        });
    }
    json cfg{{"primes", o.primes}, {"samples", o.samples}};
    return emit(env, "verify-family", cfg, {id}, rep, json::object());
}

struct SeriesOpts {
    std::string gens = "0,0;1,4;1,4;1,5;1,5;2,9";
    std::string base = "0,2;0,3;1,0;1,3";
    int max_a = 20, max_b = 6;
    std::string at = "6,0;4,1;0,1";
};

inline int cmd_series(Env& env, const SeriesOpts& o) {
    auto gens = parse_bidegrees(o.gens), base = parse_bidegrees(o.base), at = parse_bidegrees(o.at);
    if (o.max_a < 0 || o.max_b < 0) throw ConfigError("bounds must be non-negative");
    Report rep;
    json results;
    rep.run("series.closed_form_matches_count", [&](CheckResult& c) {
        auto gs = graded_series(gens, base, o.max_a, o.max_b);
        results["closed_form"] = gs.closed_form;
        results["counts"] = gs.counts;
        json spot = json::object();
        for (auto& [a, b] : at)
            if (a <= o.max_a && b <= o.max_b) spot[to_string(Bidegree{a, b})] = gs.at(a, b);
        results["values"] = spot;
        c.detail = {{"max", to_string(Bidegree{o.max_a, o.max_b})}};
        return gs.counts == gs.expansion;
    });
    json cfg{{"gens", o.gens}, {"base", o.base}, {"max_a", o.max_a}, {"max_b", o.max_b}, {"at", o.at}};
    return emit(env, "series", cfg, {}, rep, results);
}

struct RootsOpts {
    PolySource src;
    std::uint64_t p = 79;
    std::string branch = "plus";
    bool plain = false;
};

inline int cmd_roots(Env& env, const RootsOpts& o) {
    Poly<QI7> f = o.src.load(env);
    Fp F(o.p);
    Branch br = parse_branch(o.branch);
    auto coeffs = dense_univariate(reduce_mod_p(f, F, br));
    Report rep;
    json results{{"p", o.p}};
    std::vector<std::uint64_t> simple;
    rep.run("roots.verified", [&](CheckResult& c) {
        auto rs = roots_mod_p(coeffs, o.p, env.seed);
        json arr = json::array();
        bool ok = true;
        for (auto [r, m] : rs) {
            arr.push_back({{"root", r}, {"multiplicity", m}});
            if (m == 1) simple.push_back(r);
            std::uint64_t v = 0;  // Horner re-check
            for (std::size_t i = coeffs.size(); i-- > 0;) v = F.add(F.mul(v, r), coeffs[i]);
            if (v != 0) {
                ok = false;
                c.witness = "f(" + std::to_string(r) + ") != 0";
            }
        }
        results["roots"] = arr;
        results["simple_roots"] = simple;
        return ok;
    });
    json cfg = o.src.to_json();
    cfg["p"] = o.p;
    cfg["branch"] = o.branch;
    int rc = emit(env, "roots", cfg, o.src.datasets(), rep, results, !o.plain);
    if (o.plain) {
        for (std::size_t i = 0; i < simple.size(); ++i) env.out << (i ? " " : "") << simple[i];
        env.out << "\n";
    }
    return rc;
}

struct LiftOpts {
    PolySource src;
    std::uint64_t p = 79;
    std::optional<std::uint64_t> root;
    std::vector<std::uint64_t> start;
    std::vector<std::string> names;  // system statements
    unsigned prec = 101;
    std::string branch = "plus";
    std::string residue_out;
};

inline int cmd_lift(Env& env, const LiftOpts& o) {
    if (o.root.has_value() == !o.start.empty()) throw ConfigError("give exactly one of --root and --start");
    if (o.prec == 0) throw ConfigError("--prec must be positive");
    Branch br = parse_branch(o.branch);
    Fp(o.p);  // validates the range
    if (!is_probable_prime(o.p)) throw ConfigError("--p must be prime");
    Report rep;
    json results{{"p", o.p}, {"K", o.prec}};
    std::vector<std::string> names;
    std::vector<PadicApprox> xs;
    if (o.root) {
        Poly<QI7> f = o.src.load(env);
        if (f.ring()->nvars() != 1) throw ConfigError("--root needs a univariate polynomial; use --start for systems");
        names = {f.ring()->name(0)};
        rep.run("lift.univariate", [&](CheckResult& c) {
            auto r = hensel_univariate(f, *o.root, o.p, o.prec, br);
            xs = {r.root};
            results["root"] = *o.root;
            results["residue"] = to_string(r.root.value());
            results["steps"] = r.steps;
            ModPoly F(f, o.p, o.prec, br);  // re-check at full precision
            bool ok = F({r.root.value()}, r.root.modulus()) == 0;
            c.detail = {{"residual_zero", ok}};
            return ok;
        });
    } else {
        PolyDocument doc = o.src.document(env);
        LiftProblem pr;
        for (auto& n : o.names.empty() ? doc.names() : o.names) pr.system.push_back(doc.get(n));
        pr.start = o.start;
        pr.p = o.p;
        pr.K = o.prec;
        pr.branch = br;
        names = doc.ring->names();
        rep.run("lift.system", [&](CheckResult& c) {
            auto r = hensel_system(pr);
            xs = r.solution;
            json vals = json::array();
            for (auto& x : xs) vals.push_back(to_string(x.value()));
            results["residues"] = vals;
            results["pivots"] = r.pivots;
            results["certificate"] = r.certificate.to_json();
            c.detail = {{"residual_zero", r.certificate.residual_zero}};
            return r.certificate.residual_zero;
        });
    }
    json cfg = o.src.to_json();
    cfg.update({{"p", o.p}, {"prec", o.prec}, {"branch", o.branch}, {"start", o.start}, {"names", o.names},
                {"residue_out", o.residue_out}});
    if (o.root) cfg["root"] = *o.root;
    if (!o.residue_out.empty() && !xs.empty()) {
        json prov = provenance(env, "lift", cfg, o.src.datasets());
        write_file_atomic(o.residue_out, "# dolgachev " + std::string(kVersion) + " lift, config_hash " +
                                             prov["config_hash"].get<std::string>() + "\n" + format_residues(names, xs));
    }
    return emit(env, "lift", cfg, o.src.datasets(), rep, results);
}

struct RecognizeOpts {
    std::string residue_file, name, value, var = "x", height = "1000000000000", branch = "plus";
    std::uint64_t p = 79;
    unsigned prec = 101, deg = 12;
    bool quadratic = false;
    PolySource compare;
};

// "# mod p^K" header and "<var>_lift = value;" statements written by lift.
inline std::tuple<Integer, std::uint64_t, unsigned, std::string> read_residue_file(const std::string& path,
                                                                                 const std::string& name) {
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::optional<std::pair<std::uint64_t, unsigned>> mod;
    while (std::getline(in, line))
        if (line.rfind("# mod ", 0) == 0) {
            auto caret = line.find('^');
            if (caret == std::string::npos) break;
            mod = {std::stoull(line.substr(6, caret - 6)), static_cast<unsigned>(std::stoul(line.substr(caret + 1)))};
            break;
        }
    if (!mod) throw ConfigError(path + ": no '# mod p^K' header");
    PolyDocument doc = parse_document(text);
    std::string key = name;
    if (key.empty())
        for (auto& n : doc.names())
            if (n.size() > 5 && n.compare(n.size() - 5, 5, "_lift") == 0) {
                key = n;
                break;
            }
    if (key.empty()) throw ConfigError(path + ": no '<var>_lift' statement");
    const Poly<QI7>& v = doc.get(key);
    if (!v.is_constant() || (!v.is_zero() && (!v.lc().is_rational() || v.lc().a.get_den() != 1)))
        throw ConfigError(path + ": " + key + " is not an integer");
    Integer val = v.is_zero() ? Integer(0) : Integer(v.lc().a.get_num());
    return {val, mod->first, mod->second, key.substr(0, key.size() - 5)};
}

inline IntPoly int_poly_of(const Poly<QI7>& f) {
    if (f.ring()->nvars() != 1) throw ConfigError("comparison polynomial must be univariate");
    IntPoly g(f.is_zero() ? 0 : f.degree_in(0) + 1, Integer(0));
    for (auto& t : f.terms()) {
        if (!t.c.is_rational() || t.c.a.get_den() != 1) throw ConfigError("comparison polynomial needs integer coefficients");
        g[t.m.e[0]] = t.c.a.get_num();
    }
    return normalize_int_poly(g);
}

inline int cmd_recognize(Env& env, const RecognizeOpts& o) {
    Integer value;
    std::uint64_t p = o.p;
    unsigned K = o.prec;
    std::string var = o.var;
    if (!o.residue_file.empty()) std::tie(value, p, K, var) = read_residue_file(o.residue_file, o.name);
    else if (!o.value.empty()) value = parse_integer(o.value, "--value");
    else throw ConfigError("give --residue or --value");
    if (o.var != "x" && !o.residue_file.empty()) var = o.var;
    Integer H = parse_integer(o.height, "--height");
    PadicApprox x(value, p, K);
    Branch br = parse_branch(o.branch);
    Report rep;
    json results{{"p", p}, {"K", K}, {"residue", to_string(x.value())}};
    std::optional<IntPoly> found;
    if (o.quadratic) {
        rep.run("recognize.quadratic", [&](CheckResult& c) {
            auto q = recognize_quadratic(x, br, H);
            results["value"] = to_string(q.value);
            results["tie"] = q.tie;
            bool ok = embed_quad(q.value, p, K, br) == x;
            c.detail = {{"reembedded", ok}};
            return ok;
        });
    } else {
        rep.run("recognize.minpoly", [&](CheckResult& c) {
            auto r = minpoly_from_padic(x, o.deg, H);
            found = r.poly;
            json coeffs = json::array();
            for (auto& a : r.poly) coeffs.push_back(to_string(a));
            results["polynomial"] = format_int_poly(r.poly, var);
            results["coefficients_ascending"] = coeffs;
            results["degree"] = r.poly.size() - 1;
            results["lll_bound_ok"] = r.lll_bound_ok;
            results["tie"] = r.tie;
            bool ok = eval_mod(r.poly, x.value(), x.modulus()) == 0;
            c.detail = {{"verified_mod_p^K", ok}};
            return ok;
        });
        if (!o.compare.dataset.empty() || !o.compare.poly.empty())
            rep.run("recognize.matches_reference", [&](CheckResult& c) {
                IntPoly want = int_poly_of(o.compare.load(env));
                bool ok = found && *found == want;
                if (!ok) c.witness = "reference " + format_int_poly(want, var);
                return ok;
            });
    }
    json cfg{{"residue", o.residue_file}, {"name", o.name}, {"value", o.value}, {"p", p},     {"prec", K},
             {"deg", o.deg},           {"height", o.height}, {"quadratic", o.quadratic}, {"branch", o.branch},
             {"compare", o.compare.to_json()}};
    return emit(env, "recognize", cfg, o.compare.datasets(), rep, results);
}

struct FiberOpts {
    std::string dataset = "Y0_C20", branch = "plus";
    std::uint64_t p = 79, u0 = 1, u1 = 1;
};

inline int cmd_fiber_sing(Env& env, const FiberOpts& o) {
    auto sys = load_quadric_system(env.manifest().document(o.dataset), Fp(o.p), parse_branch(o.branch));
    Report rep;
    json results;
    rep.run("fiber.singular_points", [&](CheckResult& c) {
        auto s = fiber_singular_points(sys, o.u0, o.u1, env.seed);
        results = {{"points", fiber_points_json(s)},
                   {"count", s.count()},
                   {"nodes", s.count(PointKind::node)},
                   {"worse", s.count(PointKind::worse)},
                   {"candidates", s.candidates},
                   {"unresolved", s.unresolved}};
        if (s.unresolved) c.witness = std::to_string(s.unresolved) + " candidates of residue degree > 2";
        return s.unresolved == 0;
    });
    json cfg{{"dataset", o.dataset}, {"p", o.p}, {"branch", o.branch}, {"u0", o.u0}, {"u1", o.u1}};
    return emit(env, "fiber-sing", cfg, {o.dataset}, rep, results);
}

struct SurfaceOpts {
    std::string dataset = "Y0_C20", branch = "plus";
    std::uint64_t p = 79;
    std::vector<std::uint64_t> extra_primes{107, 113};
    std::size_t samples = 30;
    unsigned fibers = 5;
};

inline int cmd_verify_surface(Env& env, const SurfaceOpts& o) {
    SurfaceSuiteConfig cfg;
    cfg.dataset = o.dataset;
    cfg.p = o.p;
    cfg.branch = parse_branch(o.branch);
    cfg.extra_primes = o.extra_primes;
    cfg.samples = o.samples;
    cfg.random_fibers = o.fibers;
    cfg.seed = env.seed;
    auto ids = surface_dataset_ids(o.dataset);
    Report rep = verify_surface(env.manifest(), cfg);
    std::size_t passed = 0;
    for (auto& c : rep.checks()) passed += c.pass;
    json c{{"dataset", o.dataset}, {"p", o.p},           {"branch", o.branch},
           {"extra_primes", o.extra_primes}, {"samples", o.samples}, {"fibers", o.fibers}};
    return emit(env, "verify-surface", c, ids, rep, {{"checks_passed", passed}, {"checks_total", rep.checks().size()}});
}

inline json scan_results(const SearchSpace& s, const ScanResult& r) {
    json hits = json::array();
    for (auto& h : r.hits) hits.push_back(h.to_json());
    return {{"space_hash", s.hash()},
            {"hits", hits},
            {"hit_count", r.hits.size()},
            {"shards_total", r.shards_total},
            {"shards_done", r.shards_done},
            {"progress", r.shards_total ? double(r.shards_done) / double(r.shards_total) : 1.0}};
}

struct ScanOpts {
    std::string config, checkpoint;
    std::uint64_t shards = 8;
    unsigned threads = 1;
};

inline int cmd_scan(Env& env, const ScanOpts& o) {
    SearchSpace s = load_space(o.config);
    ScanResult r;
    Report rep;
    rep.run("scan.complete", [&](CheckResult&) {
        r = scan(s, ScanOptions{o.shards, o.threads, o.checkpoint});
        return r.shards_done == r.shards_total;
    });
    json results = scan_results(s, r);
    results["evaluated"] = r.evaluated;
    json cfg{{"space", s.to_json()}, {"shards", o.shards}, {"threads", o.threads}, {"checkpoint", o.checkpoint}};
    return emit(env, "scan", cfg, {}, rep, results);
}

struct ServeOpts {
    std::string config, host = "127.0.0.1", port_file, checkpoint;
    std::uint16_t port = 0;
    std::uint64_t shards = 8;
    double shard_timeout = 30;
};

inline int cmd_serve(Env& env, const ServeOpts& o) {
    SearchSpace s = load_space(o.config);
    CoordinatorOptions co;
    co.host = o.host;
    co.port = o.port;
    co.shards = o.shards;
    co.shard_timeout_s = o.shard_timeout;
    co.checkpoint = o.checkpoint;
    co.log = &env.err;
    Coordinator coord(s, co);
    if (!o.port_file.empty()) write_file_atomic(o.port_file, std::to_string(coord.port()) + "\n");
    env.err << "listening on " << o.host << ":" << coord.port() << std::endl;
    ScanResult r;
    Report rep;
    rep.run("serve.complete", [&](CheckResult&) {
        r = coord.run();
        return r.shards_done == r.shards_total;
    });
    json results = scan_results(s, r);
    const auto& st = coord.stats();
    results["stats"] = {{"reassigned_eof", st.reassigned_eof},
                        {"reassigned_timeout", st.reassigned_timeout},
                        {"duplicate_results", st.duplicate_results},
                        {"version_rejects", st.version_rejects}};
    json cfg{{"space", s.to_json()}, {"shards", o.shards}, {"shard_timeout", o.shard_timeout}, {"checkpoint", o.checkpoint}};
    return emit(env, "serve", cfg, {}, rep, results);
}

struct WorkOpts {
    std::string config, endpoint;
    unsigned crash_after_receive = 0;  // 0: never
    double connect_timeout = 10;
};

inline std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& e) {
    auto c = e.rfind(':');
    if (c == std::string::npos || c == 0) throw ConfigError("endpoint must be host:port, got '" + e + "'");
    try {
        unsigned long port = std::stoul(e.substr(c + 1));
        if (port == 0 || port > 65535) throw std::out_of_range("port");
        return {e.substr(0, c), static_cast<std::uint16_t>(port)};
    } catch (const std::logic_error&) {
        throw ConfigError("bad port in endpoint '" + e + "'");
    }
}

inline int cmd_work(Env& env, const WorkOpts& o) {
    SearchSpace s = load_space(o.config);
    std::string ep = o.endpoint;
    if (ep.empty())
        if (const char* v = std::getenv("DOLGACHEV_COORDINATOR"); v && *v) ep = v;
    if (ep.empty()) throw ConfigError("no coordinator: pass --endpoint or set DOLGACHEV_COORDINATOR");
    auto [host, port] = parse_endpoint(ep);
    WorkerOptions wo;
    wo.host = host;
    wo.port = port;
    wo.connect_timeout_s = o.connect_timeout;
    wo.log = &env.err;
    unsigned received = 0;
    if (o.crash_after_receive)
        wo.on_receive = [&](const Shard&) {
            if (++received == o.crash_after_receive) std::raise(SIGKILL);
        };
    WorkerStats st;
    Report rep;
    rep.run("work.finished", [&](CheckResult&) {
        st = run_worker(s, wo);
        return true;
    });
    json cfg{{"space", s.to_json()}, {"endpoint", ep}};
    return emit(env, "work", cfg, {}, rep, {{"shards", st.shards}, {"hits", st.hits}});
}

// Without input: a header-only report. With a report or checkpoint: a text summary
// (or its JSON form with --json).
inline int cmd_report(Env& env, const std::string& input, bool as_json) {
    Report rep;
    if (input.empty()) return emit(env, "report", json::object(), {}, rep, json::object());
    json j;
    try {
        j = json::parse(read_file(input));
    } catch (const json::exception& e) {
        throw ConfigError(input + ": " + e.what());
    }
    json summary;
    std::ostringstream text;
    if (j.contains("completed_shards")) {
        Checkpoint cp = Checkpoint::from_json(j);
        double pct = cp.shards_total ? 100.0 * double(cp.completed.size()) / double(cp.shards_total) : 0.0;
        summary = {{"kind", "checkpoint"},
                   {"space_hash", cp.space_hash},
                   {"completed", cp.completed.size()},
                   {"total", cp.shards_total},
                   {"progress_percent", pct},
                   {"hits", cp.hits.size()}};
        text << "checkpoint " << cp.space_hash.substr(0, 12) << ": " << cp.completed.size() << "/" << cp.shards_total
             << " shards (" << pct << "%), " << cp.hits.size() << " hits\n";
    } else if (j.contains("provenance")) {
        const json& pv = j["provenance"];
        std::size_t pass = 0, total = 0;
        text << pv.value("command", "?") << "  status " << j.value("status", "?") << "  config "
             << pv.value("config_hash", "").substr(0, 12) << "\n";
        for (auto& c : j.value("checks", json::array())) {
            ++total;
            pass += c.value("status", "") == "pass";
            text << "  " << c.value("status", "?") << "  " << c.value("name", "?");
            if (c.contains("witness")) text << "  " << c["witness"].get<std::string>();
            text << "\n";
        }
        if (j.contains("results") && j["results"].contains("stats")) text << "  stats " << j["results"]["stats"].dump() << "\n";
        summary = {{"kind", "report"}, {"command", pv.value("command", "")}, {"status", j.value("status", "")},
                   {"checks_passed", pass}, {"checks_total", total}};
    } else {
        throw ConfigError(input + ": neither a report nor a checkpoint");
    }
    if (as_json) return emit(env, "report", {{"input", input}}, {}, rep, summary);
    env.out << text.str();
    return kPass;
}

// ---- entry point ----

inline const CLI::Validator& prime_validator() {
    static const CLI::Validator v(
        [](std::string& s) -> std::string {
            std::uint64_t p = 0;
            try {
                p = std::stoull(s);
            } catch (const std::exception&) {
                return "not an integer: " + s;
            }
            return is_probable_prime(p) ? "" : s + " is not prime";
        },
        "PRIME");
    return v;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Env env{out, err};
    CLI::App app{"Verification and search pipeline for bigraded quadric surfaces", "dolgachev"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--data-dir", env.data_dir, "dataset directory (default: $DOLGACHEV_DATA_DIR or the build-time path)");
    app.add_option("--seed", env.seed, "seed for randomized subroutines");
    app.add_option("--out", env.out_path, "also write the JSON report to this file");
    app.add_flag("--timings", env.timings, "include per-check seconds (makes output run-dependent)");

    std::string fmt_in, fmt_out;
    auto* fmt = app.add_subcommand("fmt", "rewrite a polynomial document in canonical form");
    fmt->add_option("input", fmt_in)->required();
    fmt->add_option("-o,--output", fmt_out);

    FamilyOpts fam;
    auto* vf = app.add_subcommand("verify-family", "bidegrees and associativity of the nine-parameter family");
    vf->add_option("--primes", fam.primes)->delimiter(',')->check(prime_validator());
    vf->add_option("--samples", fam.samples);

    SeriesOpts ser;
    auto* se = app.add_subcommand("series", "bigraded Hilbert series of a free module and its closed form");
    se->add_option("--gens", ser.gens, "generator bidegrees a,b;...");
    se->add_option("--base", ser.base, "base ring weights a,b;...");
    se->add_option("--max-a", ser.max_a);
    se->add_option("--max-b", ser.max_b);
    se->add_option("--at", ser.at, "coefficients to report, (t-degree,s-degree);...");

    RootsOpts ro;
    auto* rt = app.add_subcommand("roots", "roots of a univariate polynomial mod p");
    ro.src.add_options(rt);
    rt->add_option("--p", ro.p)->check(prime_validator());
    rt->add_option("--branch", ro.branch);
    rt->add_flag("--plain", ro.plain, "print the simple roots only");

    LiftOpts lo;
    auto* lf = app.add_subcommand("lift", "Hensel lifting to mod p^K");
    lo.src.add_options(lf);
    lf->add_option("--p", lo.p)->check(prime_validator());
    lf->add_option("--root", lo.root, "root mod p of a univariate polynomial");
    lf->add_option("--start", lo.start, "solution mod p of a system")->delimiter(',');
    lf->add_option("--names", lo.names, "system statements (default: all)")->delimiter(',');
    lf->add_option("--prec", lo.prec, "precision K");
    lf->add_option("--branch", lo.branch);
    lf->add_option("--residue-out", lo.residue_out, "write the lifted residues to this file");

    RecognizeOpts rc;
    auto* rg = app.add_subcommand("recognize", "recover an algebraic number from a p-adic residue");
    rg->add_option("--residue", rc.residue_file, "file written by lift --residue-out");
    rg->add_option("--name", rc.name, "statement in the residue file");
    rg->add_option("--value", rc.value, "residue given directly");
    rg->add_option("--p", rc.p)->check(prime_validator());
    rg->add_option("--prec", rc.prec);
    rg->add_option("--var", rc.var);
    rg->add_option("--deg", rc.deg);
    rg->add_option("--height", rc.height);
    rg->add_flag("--quadratic", rc.quadratic, "recognize an element (a + b*I7)/c");
    rg->add_option("--branch", rc.branch);
    rg->add_option("--compare-dataset", rc.compare.dataset, "reference polynomial to compare with");
    rg->add_option("--compare-name", rc.compare.name);

    FiberOpts fo;
    auto* fs = app.add_subcommand("fiber-sing", "singular points of the surface on one fiber");
    fs->add_option("--dataset", fo.dataset);
    fs->add_option("--p", fo.p)->check(prime_validator());
    fs->add_option("--branch", fo.branch);
    fs->add_option("--u0", fo.u0);
    fs->add_option("--u1", fo.u1);

    SurfaceOpts so;
    auto* vs = app.add_subcommand("verify-surface", "full verification of a shipped surface");
    vs->add_option("--dataset", so.dataset);
    vs->add_option("--p", so.p)->check(prime_validator());
    vs->add_option("--branch", so.branch);
    vs->add_option("--extra-primes", so.extra_primes)->delimiter(',')->check(prime_validator());
    vs->add_option("--samples", so.samples);
    vs->add_option("--fibers", so.fibers);

    ScanOpts sc;
    auto* sn = app.add_subcommand("scan", "sharded local scan of a search space");
    sn->add_option("--config", sc.config, "search space JSON")->required();
    sn->add_option("--shards", sc.shards);
    sn->add_option("--threads", sc.threads);
    sn->add_option("--checkpoint", sc.checkpoint);

    ServeOpts sv;
    auto* srv = app.add_subcommand("serve", "coordinate a distributed scan over TCP");
    srv->add_option("--config", sv.config)->required();
    srv->add_option("--host", sv.host);
    srv->add_option("--port", sv.port, "0 picks a free port");
    srv->add_option("--port-file", sv.port_file, "write the bound port here");
    srv->add_option("--shards", sv.shards);
    srv->add_option("--shard-timeout", sv.shard_timeout, "seconds before a silent shard is reassigned");
    srv->add_option("--checkpoint", sv.checkpoint);

    WorkOpts wk;
    auto* wrk = app.add_subcommand("work", "scan shards handed out by a coordinator");
    wrk->add_option("--config", wk.config)->required();
    wrk->add_option("--endpoint", wk.endpoint, "host:port (default: $DOLGACHEV_COORDINATOR)");
    wrk->add_option("--connect-timeout", wk.connect_timeout);
    wrk->add_option("--crash-after-receive", wk.crash_after_receive, "kill this process on receiving the n-th shard");

    std::string rp_in;
    bool rp_json = false;
    auto* rpt = app.add_subcommand("report", "summarize a report or checkpoint");
    rpt->add_option("--input", rp_in);
    rpt->add_flag("--json", rp_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kConfig;
    }
    try {
        if (*fmt) return cmd_fmt(env, fmt_in, fmt_out);
        if (*vf) return cmd_verify_family(env, fam);
        if (*se) return cmd_series(env, ser);
        if (*rt) return cmd_roots(env, ro);
        if (*lf) return cmd_lift(env, lo);
        if (*rg) return cmd_recognize(env, rc);
        if (*fs) return cmd_fiber_sing(env, fo);
        if (*vs) return cmd_verify_surface(env, so);
        if (*sn) return cmd_scan(env, sc);
        if (*srv) return cmd_serve(env, sv);
        if (*wrk) return cmd_work(env, wk);
        if (*rpt) return cmd_report(env, rp_in, rp_json);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kConfig;
    } catch (const DatasetError& e) {
        err << e.what() << "\n";
        return kConfig;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kConfig;
    } catch (const UnknownPredicate& e) {
        err << e.what() << "\n";
        return kConfig;
    } catch (const VersionMismatch& e) {
        err << e.what() << "\n";
        return kConfig;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kFail;
    }
    return kConfig;
}

}  // namespace dolgachev::cli
