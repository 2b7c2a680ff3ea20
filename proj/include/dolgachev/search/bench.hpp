#pragma once

// Throughput of degree-12 constraint evaluation inside the scan loop.

#include <chrono>

#include "dolgachev/families/dataset.hpp"
#include "dolgachev/search/scan.hpp"

namespace dolgachev {

struct ThroughputReport {
    std::uint64_t evaluations = 0;
    double seconds = 0;
    double per_second = 0;
    std::uint64_t hits = 0;
};

// Single-threaded scan of F_p^3 (s2, s3, s4) constrained by the degree-12 polynomial in s2.
inline ThroughputReport bench_degree12_scan(const Poly<QI7>& minpoly, std::uint64_t p = 79, int repeats = 3) {
    SearchSpace s;
    s.p = p;
    s.vars = {"s2", "s3", "s4"};
    s.lo = {0, 0, 0};
    s.hi = {p - 1, p - 1, p - 1};
    s.constraints = {format_poly(minpoly)};
    CompiledSpace cs(s);
    Shard all = make_shards(s, 1)[0];
    ThroughputReport r;
    auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < repeats; ++k) {
        auto res = scan_shard(cs, all);
        r.evaluations += res.evaluated;
        r.hits = res.hits.size();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.per_second = r.evaluations / r.seconds;
    return r;
}

}  // namespace dolgachev
