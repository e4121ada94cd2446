#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "idealcount/dag.hpp"
#include "idealcount/detail/engine.hpp"
#include "idealcount/errors.hpp"
#include "idealcount/types.hpp"

namespace idealcount {

// Select a pivot vertex for decomposition.  All ties break uniformly at
// random from the supplied generator, so a fixed seed is fully deterministic.
inline std::string select_pivot(const Dag& d, PivotStrategy strategy, std::mt19937_64& rng) {
    if (d.empty()) throw EmptyGraph("cannot pick a pivot in an empty graph");
    return detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        std::uint32_t v = engine.select_pivot(B::full(d.vertex_count()), false, strategy, rng);
        return d.id_of(v);
    });
}

// Sum of e - n + r over the two candidate subproblems O[-D+(u)] and
// O[-A+(u)], each clamped at zero.
inline long long bound_score(const Dag& d, const std::string& u) {
    std::uint32_t ui = d.index_of(u);
    return detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        return engine.bound_score(ui, B::full(d.vertex_count()), false);
    });
}

// Leaf-to-root unit flow per vertex, in exact rationals.
inline std::map<std::string, Rational> bottleneck_flows(const Dag& d) {
    std::map<std::string, Rational> out;
    if (d.empty()) return out;
    detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        auto flows = engine.bottleneck_flows(B::full(d.vertex_count()), false);
        for (std::uint32_t v = 0; v < d.vertex_count(); ++v) out[d.id_of(v)] = flows[v];
        return 0;
    });
    return out;
}

// flow(v) / |D(v)| for vertices with descendants; leaves score zero.
inline std::map<std::string, Rational> bottleneck_scores(const Dag& d) {
    std::map<std::string, Rational> out;
    if (d.empty()) return out;
    detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        B full = B::full(d.vertex_count());
        auto flows = engine.bottleneck_flows(full, false);
        auto dcounts = engine.descendant_counts(full, false);
        for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
            out[d.id_of(v)] = dcounts[v] == 0 ? Rational(0) : flows[v] / Rational(dcounts[v]);
        return 0;
    });
    return out;
}

}  // namespace idealcount
