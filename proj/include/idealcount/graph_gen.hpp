#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "idealcount/dag.hpp"
#include "idealcount/detail/engine.hpp"
#include "idealcount/errors.hpp"

namespace idealcount {
namespace gen {

// Sampling is pinned to mt19937_64 plus the explicit routines below, so a
// (n, seed) pair regenerates the same graph on every run.

inline double unit_open(std::mt19937_64& rng) {
    // in (0, 1], safe under log()
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double sample_exponential(std::mt19937_64& rng) { return -std::log(unit_open(rng)); }

// Gamma(shape 2, scale 1) as the sum of two unit exponentials.
inline double sample_gamma_2_1(std::mt19937_64& rng) {
    return sample_exponential(rng) + sample_exponential(rng);
}

// Poisson by inversion of the CDF; lambda stays small here.
inline std::uint32_t sample_poisson(std::mt19937_64& rng, double lambda) {
    double p = std::exp(-lambda);
    double cdf = p;
    double u = unit_open(rng);
    std::uint32_t k = 0;
    while (u > cdf && k < 4096) {
        ++k;
        p *= lambda / k;
        cdf += p;
    }
    return k;
}

struct GenStats {
    double lambda = 0;
    std::vector<std::uint32_t> proposed_in_degree;  // one per vertex, before min(k-1)
};

inline std::string padded_id(std::uint32_t i, std::uint32_t n) {
    std::string num = std::to_string(i);
    std::string width = std::to_string(n - 1);
    return "v" + std::string(width.size() - num.size(), '0') + num;
}

// Vertices are added sequentially; the k-th draws a proposed in-degree from
// Poisson(lambda) and becomes a child of min(proposed, k-1) earlier vertices
// chosen uniformly without replacement.  Lambda itself is drawn once per
// graph from Gamma(2, 1).  Edges always run earlier -> later, so the result
// is acyclic by construction.
inline Dag generate_random_dag(std::uint32_t n, std::uint64_t seed, GenStats* stats = nullptr) {
    if (n < 1) throw InvalidSize("graph size must be at least 1");
    std::mt19937_64 rng(seed);
    double lambda = sample_gamma_2_1(rng);
    if (stats) {
        stats->lambda = lambda;
        stats->proposed_in_degree.clear();
        stats->proposed_in_degree.reserve(n);
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) ids.push_back(padded_id(i, n));

    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::uint32_t> pool;
    for (std::uint32_t k = 0; k < n; ++k) {
        std::uint32_t proposed = sample_poisson(rng, lambda);
        if (stats) stats->proposed_in_degree.push_back(proposed);
        std::uint32_t take = std::min<std::uint32_t>(proposed, k);
        if (take == 0) continue;
        pool.resize(k);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::uint32_t j = 0; j < take; ++j) {
            std::uint32_t pick =
                j + static_cast<std::uint32_t>(detail::bounded(rng, pool.size() - j));
            std::swap(pool[j], pool[pick]);
            edges.emplace_back(ids[pool[j]], ids[k]);
        }
    }
    return Dag::from_edges(std::move(ids), edges);
}

enum class FixtureKind { Chain, Antichain, Diamond, Star, Overlap };

inline FixtureKind parse_fixture_kind(const std::string& name) {
    if (name == "chain") return FixtureKind::Chain;
    if (name == "antichain") return FixtureKind::Antichain;
    if (name == "diamond") return FixtureKind::Diamond;
    if (name == "star") return FixtureKind::Star;
    if (name == "overlap") return FixtureKind::Overlap;
    throw Error("unknown fixture: " + name);
}

// Deterministic named graphs used throughout the tests.
inline Dag fixture(FixtureKind kind, std::uint32_t n = 0) {
    switch (kind) {
        case FixtureKind::Chain: {
            if (n < 1) throw InvalidSize("chain needs n >= 1");
            std::vector<std::string> ids;
            std::vector<std::pair<std::string, std::string>> edges;
            for (std::uint32_t i = 0; i < n; ++i) ids.push_back(padded_id(i, n));
            for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(ids[i], ids[i + 1]);
            return Dag::from_edges(std::move(ids), edges);
        }
        case FixtureKind::Antichain: {
            if (n < 1) throw InvalidSize("antichain needs n >= 1");
            std::vector<std::string> ids;
            for (std::uint32_t i = 0; i < n; ++i) ids.push_back(padded_id(i, n));
            return Dag::from_edges(std::move(ids), {});
        }
        case FixtureKind::Diamond:
            return Dag::from_edges({"a", "b", "c", "d"},
                                   {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
        case FixtureKind::Star: {
            if (n < 2) throw InvalidSize("star needs n >= 2");
            std::vector<std::string> ids{"a"};
            std::vector<std::pair<std::string, std::string>> edges;
            for (std::uint32_t i = 1; i < n; ++i) {
                ids.push_back("b" + padded_id(i, n));
                edges.emplace_back("a", ids.back());
            }
            return Dag::from_edges(std::move(ids), edges);
        }
        case FixtureKind::Overlap:
            // 12-vertex decomposition testbed: u has ancestors {a,b} and
            // descendants {e,f}; the chain h-i-j and the edge k-l sit outside
            // both closures, and d reaches into e from the side.
            return Dag::from_edges(
                {"a", "b", "c", "d", "e", "f", "h", "i", "j", "k", "l", "u"},
                {{"a", "u"},
                 {"b", "u"},
                 {"u", "e"},
                 {"u", "f"},
                 {"c", "d"},
                 {"d", "e"},
                 {"c", "h"},
                 {"h", "i"},
                 {"i", "j"},
                 {"c", "k"},
                 {"k", "l"}});
    }
    throw Error("unreachable fixture kind");
}

inline Dag fixture(const std::string& kind, std::uint32_t n = 0) {
    return fixture(parse_fixture_kind(kind), n);
}

}  // namespace gen
}  // namespace idealcount
