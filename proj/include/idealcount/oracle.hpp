#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "idealcount/dag.hpp"
#include "idealcount/errors.hpp"
#include "idealcount/types.hpp"

namespace idealcount {
namespace oracle {

inline constexpr std::size_t kMaxVertices = 25;

namespace detail {

inline void guard_size(const Dag& d) {
    if (d.vertex_count() > kMaxVertices)
        throw TooLarge("brute force limited to " + std::to_string(kMaxVertices) +
                       " vertices, got " + std::to_string(d.vertex_count()));
}

// Parent sets as single words; valid because of the size guard.
inline std::vector<std::uint64_t> parent_masks(const Dag& d) {
    std::vector<std::uint64_t> pm(d.vertex_count(), 0);
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
        for (std::uint32_t p : d.parents(v)) pm[v] |= std::uint64_t{1} << p;
    return pm;
}

}  // namespace detail

// All ancestor-closed subsets, sorted by size then lexicographically by
// identifier sequence.  Walks topological prefixes, extending a subset only
// while parent-closure holds, so the work is proportional to the output.
inline std::vector<std::vector<std::string>> brute_force_enumerate(const Dag& d) {
    detail::guard_size(d);
    auto order = d.topological_order();
    auto pm = detail::parent_masks(d);

    std::vector<std::uint64_t> sets;
    std::vector<std::pair<std::size_t, std::uint64_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, s] = stack.back();
        stack.pop_back();
        if (i == order.size()) {
            sets.push_back(s);
            continue;
        }
        std::uint32_t v = order[i];
        if ((pm[v] & s) == pm[v])  // all parents present: v may be included
            stack.push_back({i + 1, s | (std::uint64_t{1} << v)});
        stack.push_back({i + 1, s});
    }

    std::vector<std::vector<std::string>> out;
    out.reserve(sets.size());
    for (std::uint64_t s : sets) {
        std::vector<std::string> ids;
        for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
            if ((s >> v) & 1) ids.push_back(d.id_of(v));
        out.push_back(std::move(ids));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Count-only variant; never materializes the sets.
inline Count brute_force_count(const Dag& d) {
    detail::guard_size(d);
    auto order = d.topological_order();
    auto pm = detail::parent_masks(d);

    std::uint64_t count = 0;
    // Iterative DFS over (prefix position, chosen set).
    std::vector<std::pair<std::size_t, std::uint64_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, s] = stack.back();
        stack.pop_back();
        while (i < order.size()) {
            std::uint32_t v = order[i];
            ++i;
            if ((pm[v] & s) == pm[v]) stack.push_back({i, s | (std::uint64_t{1} << v)});
        }
        ++count;
    }
    return Count(count);
}

// The dumbest possible cross-check: test every one of the 2^n subsets.  Kept
// deliberately independent of the prefix enumeration above.
inline Count brute_force_count_all_subsets(const Dag& d) {
    detail::guard_size(d);
    auto pm = detail::parent_masks(d);
    const std::uint32_t n = static_cast<std::uint32_t>(d.vertex_count());
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (std::uint32_t v = 0; v < n && ok; ++v)
            if (((s >> v) & 1) && (pm[v] & s) != pm[v]) ok = false;
        if (ok) ++count;
    }
    return Count(count);
}

}  // namespace oracle
}  // namespace idealcount
