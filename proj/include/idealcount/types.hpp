#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "idealcount/errors.hpp"

namespace idealcount {

// Subgraph tallies are exact; real ontologies exceed 10^1000.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Pivot-selection strategies.
enum class PivotStrategy {
    Random,            // uniform over vertices
    RandomMultiParent, // uniform over multi-parent vertices
    MaxDegree,         // argmax in-degree + out-degree, ties random
    MinBound,          // argmin of bound_score, ties random
    Bottleneck,        // argmax flow / descendant-count ratio, ties random
};

inline const char* to_string(PivotStrategy s) {
    switch (s) {
        case PivotStrategy::Random: return "random";
        case PivotStrategy::RandomMultiParent: return "mpv";
        case PivotStrategy::MaxDegree: return "degree";
        case PivotStrategy::MinBound: return "bound";
        case PivotStrategy::Bottleneck: return "bottleneck";
    }
    return "?";
}

inline PivotStrategy parse_pivot_strategy(const std::string& name) {
    if (name == "random") return PivotStrategy::Random;
    if (name == "mpv") return PivotStrategy::RandomMultiParent;
    if (name == "degree") return PivotStrategy::MaxDegree;
    if (name == "bound") return PivotStrategy::MinBound;
    if (name == "bottleneck") return PivotStrategy::Bottleneck;
    throw Error("unknown pivot strategy: " + name +
                " (expected random|mpv|degree|bound|bottleneck)");
}

// Module toggles for the counting engine.  Any combination is legal; the
// count never depends on them, only the run statistics do.
struct CounterConfig {
    PivotStrategy pivot_strategy = PivotStrategy::MaxDegree;
    bool enable_pruning = true;
    bool enable_hashing = true;
    bool enable_reversal = true;
    std::uint64_t rng_seed = 0;

    static CounterConfig none(PivotStrategy s = PivotStrategy::MaxDegree,
                              std::uint64_t seed = 0) {
        return {s, false, false, false, seed};
    }
    static CounterConfig all(PivotStrategy s = PivotStrategy::MaxDegree,
                             std::uint64_t seed = 0) {
        return {s, true, true, true, seed};
    }
};

struct CountReport {
    Count count;
    std::uint64_t recursive_calls = 0;  // number of engine invocations
    std::uint64_t memo_hits = 0;
    std::uint64_t memo_entries = 0;
    std::uint64_t reversals = 0;
    std::uint64_t prunes = 0;
    std::chrono::duration<double, std::milli> wall_time{0};
};

// Per-vertex subtotal multipliers carried by pruned branching vertices.
// Defaults to 1 for every vertex not explicitly set.
class PhiMap {
public:
    PhiMap() = default;

    const Count& get(const std::string& v) const {
        auto it = values_.find(v);
        return it == values_.end() ? one_ : it->second;
    }
    void set(const std::string& v, Count value) {
        if (value == 1)
            values_.erase(v);
        else
            values_[v] = std::move(value);
    }
    bool all_ones() const { return values_.empty(); }
    const std::map<std::string, Count>& nontrivial() const { return values_; }

private:
    std::map<std::string, Count> values_;
    inline static const Count one_{1};
};

}  // namespace idealcount
