#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idealcount/bounds.hpp"
#include "idealcount/counting.hpp"
#include "idealcount/dag.hpp"
#include "idealcount/ontology.hpp"
#include "idealcount/types.hpp"

namespace idealcount {

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9E3779B97F4A7C15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace detail

// log2 of an exact count, from its bit length plus a mantissa correction.
// The count itself is never converted to floating point as a whole.
inline double log2_count(const Count& c) {
    if (c <= 0) throw Error("log2 of a non-positive count");
    if (c == 1) return 0.0;
    unsigned msb = boost::multiprecision::msb(c);
    if (msb <= 62) return std::log2(c.convert_to<double>());
    unsigned shift = msb - 62;
    Count top = c >> shift;
    return static_cast<double>(shift) + std::log2(top.convert_to<double>());
}

// ---- level-wise profiles (truncated ontologies) ------------------------------

struct LevelEntry {
    GraphStats stats;
    std::optional<Count> exact;  // absent on timeout
    bool timed_out = false;
    Count lower;
    Count upper;
};

struct LevelRow {
    int level = 0;
    LevelEntry full;
    std::optional<LevelEntry> used;
};

struct LevelProfile {
    std::vector<LevelRow> rows;
};

struct ProfileOptions {
    int max_level = -1;                   // -1: up to the deepest level
    std::chrono::milliseconds budget{0};  // 0: no per-level time budget
    CounterConfig config;
    unsigned upper_bound_trials = 1;
    std::uint64_t seed = 0;
};

namespace detail {

inline LevelEntry profile_entry(const Dag& truncated, const ProfileOptions& opt, int level) {
    LevelEntry e;
    e.stats = truncated.stats();
    e.lower = lower_bound(truncated);
    e.upper = upper_bound_forest_trials(truncated, mix_seed(opt.seed, level),
                                        opt.upper_bound_trials);
    if (opt.budget.count() > 0) {
        auto rep = cdag_with_deadline(truncated, opt.config, opt.budget);
        if (rep)
            e.exact = rep->count;
        else
            e.timed_out = true;
    } else {
        e.exact = cdag(truncated, opt.config).count;
    }
    return e;
}

}  // namespace detail

// Counts, bounds and stats per level-truncated ontology; with a corpus the
// used sub-ontology gets its own column.  Timeouts are data, not errors.
inline LevelProfile levelwise_profile(const Dag& d, const AnnotationCorpus* corpus,
                                      const ProfileOptions& opt = {}) {
    LevelProfile profile;
    auto levels = d.levels_by_index();
    int deepest = 0;
    for (int l : levels) deepest = std::max(deepest, l);
    int max_level = opt.max_level >= 0 ? std::min(opt.max_level, deepest) : deepest;

    std::optional<Dag> used;
    if (corpus) used = used_subontology(d, *corpus);

    for (int level = 0; level <= max_level; ++level) {
        LevelRow row;
        row.level = level;
        row.full = detail::profile_entry(truncate_to_level(d, level), opt, level);
        if (used) row.used = detail::profile_entry(truncate_to_level(*used, level), opt, level);
        profile.rows.push_back(std::move(row));
    }
    return profile;
}

// ---- entropy of observed annotation spaces ----------------------------------------

// Entropy in bits of the empirical distribution of level-truncated
// annotations.  Each entity's (propagated) term set is intersected with the
// level-L vertex set; identical sets are one outcome, including the empty set.
inline double observed_entropy(const AnnotationCorpus& corpus, const Dag& d, int level) {
    auto lv = d.levels_by_index();
    std::map<std::string, std::size_t> groups;
    std::size_t total = 0;
    for (const auto& [entity, terms] : corpus.entity_terms) {
        std::vector<std::string> kept;
        for (const auto& t : terms) {
            auto idx = d.try_index(t);
            if (idx && lv[*idx] <= level) kept.push_back(t);
        }
        std::sort(kept.begin(), kept.end());
        std::string key;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (i) key += ',';
            key += kept[i];
        }
        ++groups[key];
        ++total;
    }
    if (total == 0) return 0.0;
    double h = 0.0;
    for (const auto& [_, c] : groups) {
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h < 0 ? 0.0 : h;
}

// log2 of the number of consistent subgraphs: the entropy of a uniform
// distribution over all of them.
inline double max_entropy(const Dag& truncated, const CounterConfig& cfg = {}) {
    return log2_count(cdag(truncated, cfg).count);
}

struct EntropyRow {
    int level = 0;
    double observed_bits = 0;
    std::optional<double> max_bits;  // absent when the exact count timed out
    std::optional<double> ratio;
    double est_ratio = 0;  // mean of the two bound-derived ratios
    double est_lo = 0;     // observed / log2(upper)
    double est_hi = 0;     // observed / log2(lower)
};

// Per-level entropy ratios; the bound-derived interval brackets the
// exact ratio whenever both are available.
inline std::vector<EntropyRow> entropy_ratio_profile(const AnnotationCorpus& corpus,
                                                     const Dag& d,
                                                     const ProfileOptions& opt = {}) {
    std::vector<EntropyRow> rows;
    auto levels = d.levels_by_index();
    int deepest = 0;
    for (int l : levels) deepest = std::max(deepest, l);
    int max_level = opt.max_level >= 0 ? std::min(opt.max_level, deepest) : deepest;

    for (int level = 0; level <= max_level; ++level) {
        Dag truncated = truncate_to_level(d, level);
        EntropyRow row;
        row.level = level;
        row.observed_bits = observed_entropy(corpus, d, level);

        LevelEntry entry = detail::profile_entry(truncated, opt, level);
        if (entry.exact) {
            row.max_bits = log2_count(*entry.exact);
            row.ratio = *row.max_bits > 0 ? row.observed_bits / *row.max_bits : 0.0;
        }
        double lo_bits = log2_count(entry.upper);
        double hi_bits = log2_count(entry.lower);
        row.est_lo = lo_bits > 0 ? row.observed_bits / lo_bits : 0.0;
        row.est_hi = hi_bits > 0 ? row.observed_bits / hi_bits : 0.0;
        row.est_ratio = (row.est_lo + row.est_hi) / 2.0;
        rows.push_back(row);
    }
    return rows;
}

// ---- module-by-strategy benchmark grid ------------------------------------------------

// Rows of the benchmark grid: the basic algorithm, then cumulative module
// additions.
enum class ModuleRow { Basic, Prune, PruneHash, Full };

inline const char* to_string(ModuleRow r) {
    switch (r) {
        case ModuleRow::Basic: return "basic";
        case ModuleRow::Prune: return "prune";
        case ModuleRow::PruneHash: return "prune+hash";
        case ModuleRow::Full: return "prune+hash+reverse";
    }
    return "?";
}

inline ModuleRow parse_module_row(const std::string& name) {
    if (name == "basic" || name == "none") return ModuleRow::Basic;
    if (name == "prune") return ModuleRow::Prune;
    if (name == "prune+hash" || name == "prune-hash") return ModuleRow::PruneHash;
    if (name == "prune+hash+reverse" || name == "full") return ModuleRow::Full;
    throw Error("unknown module row: " + name +
                " (expected basic|prune|prune+hash|prune+hash+reverse)");
}

inline CounterConfig module_row_config(ModuleRow row, PivotStrategy s, std::uint64_t seed) {
    switch (row) {
        case ModuleRow::Basic: return {s, false, false, false, seed};
        case ModuleRow::Prune: return {s, true, false, false, seed};
        case ModuleRow::PruneHash: return {s, true, true, false, seed};
        case ModuleRow::Full: return {s, true, true, true, seed};
    }
    return {};
}

struct BenchRecord {
    PivotStrategy strategy = PivotStrategy::Random;
    ModuleRow row = ModuleRow::Basic;
    std::string graph_set;
    std::size_t graphs = 0;
    std::size_t completed = 0;
    std::size_t timeouts = 0;
    double mean_wall_ms = 0;          // over completed graphs
    double mean_recursive_calls = 0;  // over completed graphs
};

struct BenchOptions {
    std::vector<PivotStrategy> strategies{PivotStrategy::Random, PivotStrategy::RandomMultiParent,
                                          PivotStrategy::MinBound, PivotStrategy::MaxDegree,
                                          PivotStrategy::Bottleneck};
    std::vector<ModuleRow> rows{ModuleRow::Basic, ModuleRow::Prune, ModuleRow::PruneHash,
                                ModuleRow::Full};
    std::chrono::milliseconds timeout{0};  // 0: none
    std::uint64_t seed = 0;
    std::string graph_set;
};

// Run the whole grid.  Every completed cell of a graph must agree on its
// count; disagreement is a correctness bug and aborts with the offending
// graph serialized.  The Basic row runs the plain pivot algorithm; the other
// rows run the full engine with the respective modules enabled.
inline std::vector<BenchRecord> benchmark(const std::vector<Dag>& graphs,
                                          const BenchOptions& opt = {}) {
    struct CellAccum {
        double wall_ms = 0;
        double calls = 0;
        std::size_t completed = 0;
        std::size_t timeouts = 0;
    };
    std::vector<CellAccum> cells(opt.strategies.size() * opt.rows.size());

    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Dag& d = graphs[gi];
        std::uint64_t graph_seed = detail::mix_seed(opt.seed, gi);
        std::optional<Count> reference;
        for (std::size_t si = 0; si < opt.strategies.size(); ++si) {
            for (std::size_t ri = 0; ri < opt.rows.size(); ++ri) {
                CellAccum& cell = cells[si * opt.rows.size() + ri];
                std::optional<CountReport> rep;
                PivotStrategy strat = opt.strategies[si];
                if (opt.rows[ri] == ModuleRow::Basic) {
                    rep = opt.timeout.count() > 0
                              ? cdag_basic_with_deadline(d, strat, graph_seed, opt.timeout)
                              : std::optional<CountReport>(cdag_basic(d, strat, graph_seed));
                } else {
                    CounterConfig cfg = module_row_config(opt.rows[ri], strat, graph_seed);
                    rep = opt.timeout.count() > 0
                              ? cdag_with_deadline(d, cfg, opt.timeout)
                              : std::optional<CountReport>(cdag(d, cfg));
                }
                if (!rep) {
                    ++cell.timeouts;
                    continue;
                }
                if (reference && rep->count != *reference)
                    throw CountMismatch(
                        "count disagreement between benchmark cells on graph " +
                            std::to_string(gi),
                        to_edge_list(d));
                if (!reference) reference = rep->count;
                ++cell.completed;
                cell.wall_ms += rep->wall_time.count();
                cell.calls += static_cast<double>(rep->recursive_calls);
            }
        }
    }

    std::vector<BenchRecord> records;
    for (std::size_t si = 0; si < opt.strategies.size(); ++si) {
        for (std::size_t ri = 0; ri < opt.rows.size(); ++ri) {
            const CellAccum& cell = cells[si * opt.rows.size() + ri];
            BenchRecord rec;
            rec.strategy = opt.strategies[si];
            rec.row = opt.rows[ri];
            rec.graph_set = opt.graph_set;
            rec.graphs = graphs.size();
            rec.completed = cell.completed;
            rec.timeouts = cell.timeouts;
            if (cell.completed > 0) {
                rec.mean_wall_ms = cell.wall_ms / static_cast<double>(cell.completed);
                rec.mean_recursive_calls = cell.calls / static_cast<double>(cell.completed);
            }
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace idealcount
