#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/search/net.hpp"

using namespace dolgachev;

namespace {

SearchSpace toy_space() {
    SearchSpace s;
    s.p = 5;
    s.vars = {"x", "y"};
    s.lo = {0, 0};
    s.hi = {4, 4};
    s.constraints = {"x^2 + y^2 + 1"};
    return s;
}

SearchSpace root_filter_space() {
    auto doc = Manifest::load().document("S2MINPOLY");
    const auto& f = doc.get("minpoly");
    SearchSpace s;
    s.p = 79;
    s.vars = {"s2"};
    s.lo = {0};
    s.hi = {78};
    s.constraints = {format_poly(f)};
    s.predicate = "nonvanishing";
    s.predicate_params = {{"poly", format_poly(derivative(f, "s2"))}};
    return s;
}

std::vector<Tuple> tuples(const ScanResult& r) {
    std::vector<Tuple> out;
    for (auto& h : r.hits) out.push_back(h.tuple);
    return out;
}

}  // namespace

TEST(Roots, SmallExamples) {
    auto r = roots_mod_p({1, 0, 1}, 5);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].first, 2u);
    EXPECT_EQ(r[1].first, 3u);
    auto q = roots_mod_p({7, 0, 1}, 79);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[0].first, 25u);
    EXPECT_EQ(q[1].first, 54u);
    auto d = roots_mod_p({1, 2, 1}, 7);  // (x+1)^2
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].second, 2u);
}

TEST(Roots, AgreesWithBruteForce) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint64_t p = std::vector<std::uint64_t>{7, 31, 79, 101}[trial % 4];
        std::vector<std::uint64_t> f(2 + rng() % 8);
        for (auto& c : f) c = rng() % p;
        f.back() = 1 + rng() % (p - 1);
        std::vector<std::uint64_t> brute;
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t acc = 0;
            for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
            if (!acc) brute.push_back(x);
        }
        std::vector<std::uint64_t> got;
        for (auto& [x, m] : roots_mod_p(f, p)) got.push_back(x);
        EXPECT_EQ(got, brute);
    }
}

TEST(FastPoly, MatchesEvaluate) {
    std::mt19937_64 rng(9);
    Fp F(79);
    RingPtr R = make_ring({"a", "b", "c"});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term<Fp>> ts;
        for (int k = 0; k < 6; ++k) {
            Monomial m;
            for (std::size_t i = 0; i < 3; ++i) m.e[i] = static_cast<std::uint8_t>(rng() % 5);
            m.deg = static_cast<std::uint16_t>(m.e[0] + m.e[1] + m.e[2]);
            ts.push_back({m, rng() % 79});
        }
        auto f = Poly<Fp>::from_terms(R, F, ts);
        FastPoly fp(f, {2, 0, 1});
        Tuple x{rng() % 79, rng() % 79, rng() % 79};
        EXPECT_EQ(fp(x), evaluate(f, std::vector<std::uint64_t>{x[2], x[0], x[1]}));
    }
}

TEST(SearchSpace, RankUnrankAndShards) {
    SearchSpace s;
    s.p = 7;
    s.vars = {"a", "b", "c"};
    s.lo = {1, 0, 2};
    s.hi = {5, 6, 3};
    EXPECT_EQ(s.size(), 5u * 7u * 2u);
    Tuple prev;
    for (std::uint64_t k = 0; k < s.size(); ++k) {
        Tuple t = s.unrank(k);
        EXPECT_EQ(s.rank(t), k);
        if (k) {
            EXPECT_LT(prev, t);
        }
        prev = t;
    }
    for (std::uint64_t n : {1, 2, 3, 5, 9}) {
        auto sh = make_shards(s, n);
        EXPECT_EQ(sh.front().begin, 0u);
        EXPECT_EQ(sh.back().end, s.size());
        for (std::size_t i = 1; i < sh.size(); ++i) EXPECT_EQ(sh[i].begin, sh[i - 1].end);
    }
    EXPECT_EQ(SearchSpace::from_json(s.to_json()).hash(), s.hash());
}

TEST(SearchSpace, Validation) {
    SearchSpace s = toy_space();
    s.p = 6;
    EXPECT_THROW(s.validate(), ConfigError);
    s = toy_space();
    s.predicate = "bogus";
    EXPECT_THROW(make_predicate(s), UnknownPredicate);
    s = toy_space();
    s.hi = {5, 4};
    EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Scan, ToyCircle) {
    auto r = scan(toy_space());
    EXPECT_EQ(tuples(r), (std::vector<Tuple>{{0, 2}, {0, 3}, {2, 0}, {3, 0}}));
    EXPECT_EQ(r.evaluated, 25u);
}

TEST(Scan, ShardedEqualsSingle) {
    for (auto s : {toy_space(), root_filter_space()}) {
        auto one = scan(s);
        for (std::uint64_t n : {2, 5}) {
            ScanOptions o;
            o.shards = n;
            o.threads = 2;
            auto many = scan(s, o);
            EXPECT_EQ(tuples(many), tuples(one));
        }
        std::vector<Tuple> concat;
        for (auto& sh : make_shards(s, 5)) {
            CompiledSpace cs(s);
            for (auto& h : scan_shard(cs, sh).hits) concat.push_back(h.tuple);
        }
        EXPECT_EQ(concat, tuples(one));
    }
}

TEST(Scan, RootFilterMod79) {
    EXPECT_EQ(tuples(scan(root_filter_space())), (std::vector<Tuple>{{14}, {15}, {19}, {44}, {58}, {72}}));
}

TEST(Scan, CheckpointResume) {
    auto dir = std::filesystem::temp_directory_path() / "dolgachev_ckpt_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "ck.json").string();
    std::filesystem::remove(path);
    SearchSpace s = toy_space();
    // A partial checkpoint with shard 0 complete and its hits recorded.
    auto shards = make_shards(s, 5);
    CompiledSpace cs(s);
    Checkpoint cp;
    cp.space_hash = s.hash();
    cp.shards_total = shards.size();
    cp.completed = {0};
    cp.hits = scan_shard(cs, shards[0]).hits;
    cp.save(path);
    ScanOptions o;
    o.shards = 5;
    o.checkpoint = path;
    auto r = scan(s, o);
    EXPECT_EQ(r.evaluated, 20u);  // shard 0 skipped
    EXPECT_EQ(tuples(r), tuples(scan(s)));
    auto saved = Checkpoint::from_json(json::parse(read_file(path)));
    EXPECT_EQ(saved.completed.size(), 5u);
    // A checkpoint for another space is ignored.
    SearchSpace t = s;
    t.constraints = {"x - y"};
    auto rt = scan(t, o);
    EXPECT_EQ(rt.evaluated, 25u);
    std::filesystem::remove_all(dir);
}

TEST(Predicates, RankDrop) {
    SearchSpace s;
    s.p = 11;
    s.vars = {"a"};
    s.lo = {0};
    s.hi = {10};
    s.predicate = "rank_drop";
    s.predicate_params = {{"point_vars", {"x", "y"}},
                          {"point", {"0", "0"}},
                          {"system", {"x^2 + y^2 + a*x", "x*y + a*y"}},
                          {"max_rank", 1}};
    auto r = scan(s);
    ASSERT_EQ(r.hits.size(), 1u);
    EXPECT_EQ(r.hits[0].tuple, Tuple{0});
    EXPECT_EQ(r.hits[0].diagnostics["jacobian_rank"], 0);
}

TEST(Predicates, WorseThanNode) {
    SearchSpace s;
    s.p = 13;
    s.vars = {"a", "b"};
    s.lo = {0, 0};
    s.hi = {12, 12};
    s.predicate = "worse_than_node";
    // singular at (b, 0) exactly; Hessian diag(2, 2a) degenerates at a = 0
    s.predicate_params = {{"point_vars", {"x", "y"}}, {"point", {"b", "0"}}, {"poly", "(x - b)^2 + a*y^2 + y^3"}};
    auto r = scan(s);
    ASSERT_EQ(r.hits.size(), 13u);
    for (auto& h : r.hits) {
        EXPECT_EQ(h.tuple[0], 0u);
        EXPECT_EQ(h.diagnostics["hessian_rank"], 1);
        EXPECT_EQ(h.diagnostics["point"][0], h.tuple[1]);
    }
}

namespace {

// Takes one shard and then stays silent (or hangs up) without answering.
int rogue_client(std::uint16_t port, const SearchSpace& s) {
    int fd = connect_to("127.0.0.1", port, 5);
    net_detail::send_line(fd, {{"type", "shard_request"}, {"version", s.hash()}});
    std::string buf;
    while (!net_detail::take_line(buf)) net_detail::fill(fd, buf);
    return fd;
}

ScanResult distributed(const SearchSpace& s, std::uint64_t shards, bool rogue_hangs_up, CoordinatorStats* stats) {
    CoordinatorOptions co;
    co.shards = shards;
    co.shard_timeout_s = 0.5;
    Coordinator c(s, co);
    ScanResult out;
    std::thread ct([&] { out = c.run(); });
    int rogue = rogue_client(c.port(), s);
    if (rogue_hangs_up) ::close(rogue);
    WorkerOptions wo;
    wo.port = c.port();
    std::thread w1([&] { run_worker(s, wo); }), w2([&] { run_worker(s, wo); });
    w1.join();
    w2.join();
    ct.join();
    if (!rogue_hangs_up) ::close(rogue);
    *stats = c.stats();
    return out;
}

}  // namespace

TEST(Distributed, WorkerLostMidShard) {
    for (auto s : {toy_space(), root_filter_space()}) {
        CoordinatorStats st;
        auto r = distributed(s, 5, true, &st);
        EXPECT_EQ(tuples(r), tuples(scan(s)));
        EXPECT_EQ(st.reassigned_eof, 1u);
    }
}

TEST(Distributed, SilentWorkerTimesOut) {
    CoordinatorStats st;
    auto r = distributed(toy_space(), 5, false, &st);
    EXPECT_EQ(tuples(r), tuples(scan(toy_space())));
    EXPECT_EQ(st.reassigned_timeout, 1u);
}

TEST(Distributed, VersionMismatch) {
    CoordinatorOptions co;
    co.shards = 2;
    Coordinator c(toy_space(), co);
    SearchSpace other = toy_space();
    other.constraints = {"x + y"};
    WorkerOptions wo;
    wo.port = c.port();
    std::exception_ptr err;
    std::thread w([&] {
        try {
            run_worker(other, wo);
        } catch (...) {
            err = std::current_exception();
        }
    });
    std::thread good([&] { run_worker(toy_space(), wo); });
    auto r = c.run();
    w.join();
    good.join();
    EXPECT_EQ(c.stats().version_rejects, 1u);
    ASSERT_TRUE(err);
    EXPECT_THROW(std::rethrow_exception(err), VersionMismatch);
    EXPECT_EQ(r.hits.size(), 4u);
}
