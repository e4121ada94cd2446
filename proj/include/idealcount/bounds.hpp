#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "idealcount/counting.hpp"
#include "idealcount/dag.hpp"
#include "idealcount/detail/engine.hpp"
#include "idealcount/types.hpp"

namespace idealcount {

// max(2^leaves, 2^roots); each subset of leaves closes upward to a distinct
// consistent subgraph, and reversal gives the root-side twin.
inline Count lower_bound(const Dag& d) {
    auto s = d.stats();
    Count l = Count(1) << s.leaves;
    Count r = Count(1) << s.roots;
    return l > r ? l : r;
}

// Drop all but one uniformly chosen in-edge from every multi-parent vertex,
// leaving a forest whose exact count bounds the original from above; edge
// removal only loosens consistency constraints.
inline Dag random_forest_relaxation(const Dag& d, std::mt19937_64& rng) {
    std::vector<std::string> vertices = d.vertex_ids();
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v) {
        const auto& ps = d.parents(v);
        if (ps.size() <= 1) {
            for (auto p : ps) edges.emplace_back(d.id_of(p), d.id_of(v));
        } else {
            auto keep = ps[detail::bounded(rng, ps.size())];
            edges.emplace_back(d.id_of(keep), d.id_of(v));
        }
    }
    return Dag::from_edges(std::move(vertices), edges);
}

inline Count upper_bound_forest(const Dag& d, std::mt19937_64& rng) {
    return cforest(random_forest_relaxation(d, rng));
}

inline Count upper_bound_forest(const Dag& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return upper_bound_forest(d, rng);
}

// Minimum over k independent forest samples; each is a valid upper bound, so
// the minimum is too.
inline Count upper_bound_forest_trials(const Dag& d, std::uint64_t seed, unsigned trials) {
    Count best;
    bool have = false;
    for (unsigned t = 0; t < trials; ++t) {
        Count c = upper_bound_forest(d, seed + t);
        if (!have || c < best) {
            best = c;
            have = true;
        }
    }
    return have ? best : Count(1);
}

}  // namespace idealcount
