#pragma once

// Parameter scans over boxes in F_p^n: data-driven predicates, lexicographic
// shards, a thread pool and shard-granular checkpoints.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/families/quadric.hpp"
#include "dolgachev/grobner/linalg.hpp"
#include "dolgachev/grobner/upoly.hpp"
#include "dolgachev/search/fastpoly.hpp"

namespace dolgachev {

using json = nlohmann::json;
using Tuple = std::vector<std::uint64_t>;

// Roots in F_p with multiplicities, ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> roots_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p,
                                                                   std::uint64_t seed = 1) {
    Fp F(p);
    UPolyRing<Fp> U(F);
    auto g = f;
    U.trim(g);
    if (g.empty()) throw std::invalid_argument("roots of the zero polynomial");
    auto r = U.roots(g, seed);
    std::sort(r.begin(), r.end());
    return r;
}

inline std::vector<std::uint64_t> dense_univariate(const Poly<Fp>& f) {
    if (f.ring()->nvars() != 1) throw std::invalid_argument("univariate polynomial expected");
    std::vector<std::uint64_t> out(f.is_zero() ? 0 : f.degree_in(0) + 1, 0);
    for (auto& t : f.terms()) out[t.m.e[0]] = t.c;
    return out;
}

struct SearchSpace {
    std::uint64_t p = 2;
    std::vector<std::string> vars;
    Tuple lo, hi;  // inclusive bounds per coordinate
    std::vector<std::string> constraints;
    std::string predicate = "none";
    json predicate_params = json::object();
    Branch branch = Branch::plus;

    json to_json() const {
        return json{{"p", p},
                    {"vars", vars},
                    {"lo", lo},
                    {"hi", hi},
                    {"constraints", constraints},
                    {"predicate", predicate},
                    {"predicate_params", predicate_params},
                    {"branch", to_string(branch)}};
    }
    static SearchSpace from_json(const json& j) {
        SearchSpace s;
        s.p = j.at("p");
        s.vars = j.at("vars").get<std::vector<std::string>>();
        s.lo = j.contains("lo") ? j["lo"].get<Tuple>() : Tuple(s.vars.size(), 0);
        s.hi = j.contains("hi") ? j["hi"].get<Tuple>() : Tuple(s.vars.size(), s.p - 1);
        if (j.contains("constraints")) s.constraints = j["constraints"].get<std::vector<std::string>>();
        s.predicate = j.value("predicate", "none");
        s.predicate_params = j.value("predicate_params", json::object());
        s.branch = parse_branch(j.value("branch", "plus"));
        s.validate();
        return s;
    }
    void validate() const {
        if (p >= (1ULL << 31) || !is_probable_prime(p)) throw ConfigError("p must be a prime below 2^31");
        if (vars.empty() || lo.size() != vars.size() || hi.size() != vars.size())
            throw ConfigError("vars, lo and hi must have equal nonzero length");
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (lo[i] > hi[i] || hi[i] >= p) throw ConfigError("bad range for " + vars[i]);
    }
    std::string hash() const { return sha256_hex(to_json().dump()); }

    std::uint64_t size() const {
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) n *= hi[i] - lo[i] + 1;
        return n;
    }
    // Lexicographic rank (first coordinate most significant).
    Tuple unrank(std::uint64_t k) const {
        Tuple t(vars.size());
        for (std::size_t i = vars.size(); i-- > 0;) {
            std::uint64_t w = hi[i] - lo[i] + 1;
            t[i] = lo[i] + k % w;
            k /= w;
        }
        return t;
    }
    std::uint64_t rank(const Tuple& t) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) k = k * (hi[i] - lo[i] + 1) + (t[i] - lo[i]);
        return k;
    }
    RingPtr ring() const { return make_ring(vars); }
};

// A slab of the leading coordinate: a contiguous run in lexicographic order.
struct Shard {
    std::uint64_t id = 0;
    Tuple lo, hi;
    std::uint64_t begin = 0, end = 0;  // rank range [begin, end)

    json to_json(std::uint64_t p) const { return {{"type", "shard"}, {"id", id}, {"p", p}, {"lo", lo}, {"hi", hi}}; }
};

inline Shard shard_from_box(const SearchSpace& s, std::uint64_t id, const Tuple& lo, const Tuple& hi) {
    if (lo.size() != s.vars.size() || hi.size() != s.vars.size()) throw ConfigError("shard arity mismatch");
    for (std::size_t i = 1; i < lo.size(); ++i)
        if (lo[i] != s.lo[i] || hi[i] != s.hi[i]) throw ConfigError("shard must span trailing coordinates");
    if (lo[0] < s.lo[0] || hi[0] > s.hi[0] || lo[0] > hi[0]) throw ConfigError("shard outside space");
    return {id, lo, hi, s.rank(lo), s.rank(hi) + 1};
}

// Up to count shards, capped by the width of the leading coordinate.
inline std::vector<Shard> make_shards(const SearchSpace& s, std::uint64_t count) {
    std::uint64_t w = s.hi[0] - s.lo[0] + 1;
    count = std::max<std::uint64_t>(1, std::min(count, w));
    std::vector<Shard> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        Tuple lo = s.lo, hi = s.hi;
        lo[0] = s.lo[0] + w * i / count;
        hi[0] = s.lo[0] + w * (i + 1) / count - 1;
        out.push_back(shard_from_box(s, i, lo, hi));
    }
    return out;
}

struct SearchHit {
    Tuple tuple;
    json diagnostics = json::object();
    std::uint64_t shard = 0;

    json to_json() const { return {{"tuple", tuple}, {"diag", diagnostics}, {"shard", shard}}; }
    static SearchHit from_json(const json& j) {
        return {j.at("tuple").get<Tuple>(), j.value("diag", json::object()), j.value("shard", std::uint64_t(0))};
    }
    bool operator<(const SearchHit& o) const { return tuple < o.tuple; }
    bool operator==(const SearchHit& o) const { return tuple == o.tuple && diagnostics == o.diagnostics; }
};

struct PredicateResult {
    bool hit = false;
    json diag = json::object();
};

class Predicate {
public:
    virtual ~Predicate() = default;
    virtual PredicateResult operator()(const Tuple& t) const = 0;
};

namespace scan_detail {

inline Poly<Fp> parse_fp(const std::string& text, const RingPtr& R, const SearchSpace& s) {
    return coerce_poly(parse_poly(text, R), Fp(s.p), s.branch);
}

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Shared machinery for predicates evaluated at a point given by formulas in the search variables.
class PointPredicate : public Predicate {
protected:
    PointPredicate(const SearchSpace& s, const json& params) : F_(s.p) {
        local_ = params.at("point_vars").get<std::vector<std::string>>();
        std::vector<std::string> names = s.vars;
        names.insert(names.end(), local_.begin(), local_.end());
        ext_ = make_ring(names);
        RingPtr R = s.ring();
        auto formulas = params.at("point").get<std::vector<std::string>>();
        if (formulas.size() != local_.size()) throw ConfigError("point formulas must match point_vars");
        for (auto& f : formulas) point_.emplace_back(parse_fp(f, R, s), iota(s.vars.size()));
        n_ = s.vars.size();
    }
    Tuple extend(const Tuple& t) const {
        Tuple x = t;
        for (auto& f : point_) x.push_back(f(t));
        return x;
    }
    FastPoly compile(const Poly<Fp>& f) const { return FastPoly(f, iota(ext_->nvars())); }
    json point_json(const Tuple& x) const { return Tuple(x.begin() + static_cast<long>(n_), x.end()); }

    Fp F_;
    RingPtr ext_;
    std::vector<std::string> local_;
    std::vector<FastPoly> point_;
    std::size_t n_ = 0;
};

// Equations vanish at the point and the Jacobian in the point variables has rank <= max_rank.
class RankDrop : public PointPredicate {
public:
    RankDrop(const SearchSpace& s, const json& params) : PointPredicate(s, params) {
        max_rank_ = params.at("max_rank");
        for (auto& e : params.at("system")) {
            Poly<Fp> f = parse_fp(e.get<std::string>(), ext_, s);
            eqs_.push_back(compile(f));
            std::vector<FastPoly> row;
            for (auto& v : local_) row.push_back(compile(derivative(f, v)));
            jac_.push_back(std::move(row));
        }
    }
    PredicateResult operator()(const Tuple& t) const override {
        Tuple x = extend(t);
        for (auto& e : eqs_)
            if (e(x) != 0) return {};
        Matrix<Fp> M;
        for (auto& row : jac_) {
            std::vector<std::uint64_t> r;
            for (auto& e : row) r.push_back(e(x));
            M.push_back(std::move(r));
        }
        long rk = static_cast<long>(rank(F_, M));
        if (rk > max_rank_) return {};
        return {true, {{"point", point_json(x)}, {"jacobian_rank", rk}}};
    }

private:
    long max_rank_ = 0;
    std::vector<FastPoly> eqs_;
    std::vector<std::vector<FastPoly>> jac_;
};

// Hypersurface f vanishes with zero gradient at the point and its Hessian is not of full rank.
class WorseThanNode : public PointPredicate {
public:
    WorseThanNode(const SearchSpace& s, const json& params) : PointPredicate(s, params) {
        Poly<Fp> f = parse_fp(params.at("poly").get<std::string>(), ext_, s);
        f_ = compile(f);
        for (auto& v : local_) {
            Poly<Fp> dv = derivative(f, v);
            grad_.push_back(compile(dv));
            std::vector<FastPoly> row;
            for (auto& w : local_) row.push_back(compile(derivative(dv, w)));
            hess_.push_back(std::move(row));
        }
    }
    PredicateResult operator()(const Tuple& t) const override {
        Tuple x = extend(t);
        if (f_(x) != 0) return {};
        for (auto& g : grad_)
            if (g(x) != 0) return {};
        Matrix<Fp> H;
        for (auto& row : hess_) {
            std::vector<std::uint64_t> r;
            for (auto& e : row) r.push_back(e(x));
            H.push_back(std::move(r));
        }
        std::size_t rk = rank(F_, H);
        if (rk == local_.size()) return {};
        return {true, {{"point", point_json(x)}, {"hessian_rank", rk}}};
    }

private:
    FastPoly f_;
    std::vector<FastPoly> grad_;
    std::vector<std::vector<FastPoly>> hess_;
};

class Always : public Predicate {
public:
    PredicateResult operator()(const Tuple&) const override { return {true, json::object()}; }
};

// Hit where the given polynomial does not vanish (e.g. the derivative, for simple roots).
class NonVanishing : public Predicate {
public:
    NonVanishing(const SearchSpace& s, const json& params)
        : f_(parse_fp(params.at("poly").get<std::string>(), s.ring(), s), iota(s.vars.size())) {}
    PredicateResult operator()(const Tuple& t) const override { return {f_(t) != 0, json::object()}; }

private:
    FastPoly f_;
};

}  // namespace scan_detail

inline const std::vector<std::string>& predicate_names() {
    static const std::vector<std::string> names{"none", "nonvanishing", "rank_drop", "worse_than_node"};
    return names;
}

inline std::unique_ptr<Predicate> make_predicate(const SearchSpace& s) {
    using namespace scan_detail;
    try {
        if (s.predicate == "none") return std::make_unique<Always>();
        if (s.predicate == "nonvanishing") return std::make_unique<NonVanishing>(s, s.predicate_params);
        if (s.predicate == "rank_drop") return std::make_unique<RankDrop>(s, s.predicate_params);
        if (s.predicate == "worse_than_node") return std::make_unique<WorseThanNode>(s, s.predicate_params);
    } catch (const json::exception& e) {
        throw ConfigError("predicate " + s.predicate + ": " + e.what());
    }
    throw UnknownPredicate(s.predicate);
}

// Per-thread compiled state: constraints and predicate.
class CompiledSpace {
public:
    explicit CompiledSpace(const SearchSpace& s) : space_(s), pred_(make_predicate(s)) {
        RingPtr R = s.ring();
        for (auto& c : s.constraints) cons_.emplace_back(scan_detail::parse_fp(c, R, s), scan_detail::iota(s.vars.size()));
    }
    bool constraints_hold(const Tuple& t) const {
        for (auto& c : cons_)
            if (c(t) != 0) return false;
        return true;
    }
    PredicateResult predicate(const Tuple& t) const { return (*pred_)(t); }
    const SearchSpace& space() const { return space_; }

private:
    SearchSpace space_;
    std::unique_ptr<Predicate> pred_;
    std::vector<FastPoly> cons_;
};

struct ShardResult {
    std::vector<SearchHit> hits;
    std::uint64_t evaluated = 0;
    std::uint64_t constraint_passes = 0;  // near misses = constraint_passes - hits
};

inline ShardResult scan_shard(const CompiledSpace& cs, const Shard& sh) {
    ShardResult r;
    Tuple t = cs.space().unrank(sh.begin);
    const SearchSpace& s = cs.space();
    for (std::uint64_t k = sh.begin; k < sh.end; ++k) {
        ++r.evaluated;
        if (cs.constraints_hold(t)) {
            ++r.constraint_passes;
            auto pr = cs.predicate(t);
            if (pr.hit) r.hits.push_back({t, pr.diag, sh.id});
        }
        // lexicographic increment
        for (std::size_t i = t.size(); i-- > 0;) {
            if (t[i] < s.hi[i]) {
                ++t[i];
                break;
            }
            t[i] = s.lo[i];
        }
    }
    return r;
}

struct ScanOptions {
    std::uint64_t shards = 1;
    unsigned threads = 1;
    std::string checkpoint;  // empty: none
};

struct ScanResult {
    std::vector<SearchHit> hits;  // sorted by tuple
    std::uint64_t evaluated = 0, constraint_passes = 0;
    std::uint64_t shards_total = 0, shards_done = 0;
};

struct Checkpoint {
    std::string space_hash;
    std::vector<std::uint64_t> completed;
    std::vector<SearchHit> hits;
    std::uint64_t shards_total = 0;

    json to_json() const {
        json h = json::array();
        for (auto& x : hits) h.push_back(x.to_json());
        return {{"space_hash", space_hash}, {"shards_total", shards_total}, {"completed_shards", completed}, {"hits", h}};
    }
    static Checkpoint from_json(const json& j) {
        Checkpoint c;
        c.space_hash = j.at("space_hash");
        c.shards_total = j.value("shards_total", std::uint64_t(0));
        c.completed = j.at("completed_shards").get<std::vector<std::uint64_t>>();
        for (auto& h : j.at("hits")) c.hits.push_back(SearchHit::from_json(h));
        return c;
    }
    void save(const std::string& path) const { write_file_atomic(path, to_json().dump(1) + "\n"); }
};

inline void sort_hits(std::vector<SearchHit>& hits) {
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end(), [](auto& a, auto& b) { return a.tuple == b.tuple; }), hits.end());
}

inline ScanResult scan(const SearchSpace& s, const ScanOptions& opt = {}) {
    s.validate();
    auto shards = make_shards(s, opt.shards);
    Checkpoint cp;
    cp.space_hash = s.hash();
    cp.shards_total = shards.size();
    std::set<std::uint64_t> done;
    if (!opt.checkpoint.empty() && std::filesystem::exists(opt.checkpoint)) {
        Checkpoint old = Checkpoint::from_json(json::parse(read_file(opt.checkpoint)));
        if (old.space_hash == cp.space_hash && old.shards_total == cp.shards_total) {
            cp = old;
            done.insert(cp.completed.begin(), cp.completed.end());
        }
    }
    ScanResult res;
    res.shards_total = shards.size();
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    auto worker = [&] {
        try {
            CompiledSpace cs(s);
            for (;;) {
                std::size_t i = next++;
                if (i >= shards.size()) return;
                if (done.count(shards[i].id)) continue;
                ShardResult r = scan_shard(cs, shards[i]);
                std::lock_guard<std::mutex> lk(mu);
                res.evaluated += r.evaluated;
                res.constraint_passes += r.constraint_passes;
                cp.hits.insert(cp.hits.end(), r.hits.begin(), r.hits.end());
                cp.completed.push_back(shards[i].id);
                if (!opt.checkpoint.empty()) cp.save(opt.checkpoint);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!err) err = std::current_exception();
        }
    };
    unsigned nt = std::max(1u, opt.threads);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    res.hits = cp.hits;
    sort_hits(res.hits);
    res.shards_done = cp.completed.size();
    return res;
}

}  // namespace dolgachev
