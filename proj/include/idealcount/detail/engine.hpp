#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idealcount/bitset.hpp"
#include "idealcount/dag.hpp"
#include "idealcount/errors.hpp"
#include "idealcount/types.hpp"

namespace idealcount {
namespace detail {

// Deterministic bounded draw (Lemire multiply-shift).  The tiny modulo bias
// is irrelevant here; what matters is that the mapping is fully specified.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Sparse per-vertex phi values with their pruned-branch key provenance.
struct PhiEntry {
    std::uint32_t v;
    Count value;
    std::string prov;  // concatenation of "(branch key)" wraps
};

struct PhiState {
    std::vector<PhiEntry> entries;  // sorted by vertex index

    const PhiEntry* find(std::uint32_t v) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const PhiEntry& e, std::uint32_t x) { return e.v < x; });
        if (it == entries.end() || it->v != v) return nullptr;
        return &*it;
    }

    const Count& value_of(std::uint32_t v) const {
        static const Count one{1};
        const PhiEntry* e = find(v);
        return e ? e->value : one;
    }

    void multiply(std::uint32_t v, const Count& c, const std::string& wrap) {
        auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const PhiEntry& e, std::uint32_t x) { return e.v < x; });
        if (it != entries.end() && it->v == v) {
            it->value *= c;
            it->prov += wrap;
        } else {
            entries.insert(it, PhiEntry{v, c, wrap});
        }
    }
};

// The counting engine.  One instance runs one top-level count over a fixed
// Dag; subproblems are "active vertex set + orientation" views onto it, so no
// graph copies happen during recursion.  Bits is the vertex-set type chosen
// by the dispatcher below from the vertex count.
template <class Bits>
class Engine {
public:
    struct Stats {
        std::uint64_t calls = 0;
        std::uint64_t memo_hits = 0;
        std::uint64_t reversals = 0;
        std::uint64_t prunes = 0;
    };

    Engine(const Dag& g, CounterConfig cfg,
           std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt)
        : g_(g),
          n_(static_cast<std::uint32_t>(g.vertex_count())),
          cfg_(cfg),
          rng_(cfg.rng_seed),
          deadline_(deadline) {
        tree_prod_.resize(n_);
        order_scratch_.reserve(n_);
        level_scratch_.resize(n_);
        indeg_scratch_.resize(n_);
    }

    const Stats& stats() const { return st_; }
    std::size_t memo_entries() const { return memo_.size(); }
    std::uint64_t tree_visits() const { return tree_visits_; }
    std::mt19937_64& rng() { return rng_; }

    // Full-counter entry point: memoization, reversal, component split,
    // pruning, pivot decomposition.
    Count run(const PhiState& phi = {}) {
        return eval(Bits::full(n_), false, phi);
    }

    // Plain-decomposition entry point: no pruning, hashing, reversal or
    // component handling beyond the forest fast path.
    Count run_basic() {
        return eval_basic(Bits::full(n_));
    }

    // ---- subproblem primitives ------------------------------------------------

    const std::vector<std::uint32_t>& up(std::uint32_t v, bool rev) const {
        return rev ? g_.children(v) : g_.parents(v);
    }
    const std::vector<std::uint32_t>& down(std::uint32_t v, bool rev) const {
        return rev ? g_.parents(v) : g_.children(v);
    }

    // number of active parents, capped at `cap` for early exit
    std::uint32_t parent_count(std::uint32_t v, const Bits& mask, bool rev,
                               std::uint32_t cap = ~0u) const {
        std::uint32_t c = 0;
        for (std::uint32_t p : up(v, rev)) {
            if (mask.test(p) && ++c >= cap) break;
        }
        return c;
    }
    std::uint32_t child_count(std::uint32_t v, const Bits& mask, bool rev,
                              std::uint32_t cap = ~0u) const {
        std::uint32_t c = 0;
        for (std::uint32_t w : down(v, rev)) {
            if (mask.test(w) && ++c >= cap) break;
        }
        return c;
    }

    // multi-parent counts in the current orientation and its reverse
    std::pair<std::size_t, std::size_t> mpv_counts(const Bits& mask, bool rev) const {
        std::size_t cur = 0, flip = 0;
        for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
            if (parent_count(static_cast<std::uint32_t>(v), mask, rev, 2) >= 2) ++cur;
            if (child_count(static_cast<std::uint32_t>(v), mask, rev, 2) >= 2) ++flip;
        }
        return {cur, flip};
    }

    bool is_forest(const Bits& mask, bool rev) const {
        for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1))
            if (parent_count(static_cast<std::uint32_t>(v), mask, rev, 2) >= 2) return false;
        return true;
    }

    // weakly connected component of seed within universe
    Bits component_of(std::uint32_t seed, const Bits& universe) const {
        Bits comp = Bits::zeros(n_);
        bfs_stack_.clear();
        bfs_stack_.push_back(seed);
        comp.set(seed);
        while (!bfs_stack_.empty()) {
            std::uint32_t v = bfs_stack_.back();
            bfs_stack_.pop_back();
            for (std::uint32_t w : g_.parents(v))
                if (universe.test(w) && !comp.test(w)) {
                    comp.set(w);
                    bfs_stack_.push_back(w);
                }
            for (std::uint32_t w : g_.children(v))
                if (universe.test(w) && !comp.test(w)) {
                    comp.set(w);
                    bfs_stack_.push_back(w);
                }
        }
        return comp;
    }

    // strict descendants of u within universe (current orientation)
    Bits descendants_of(std::uint32_t u, const Bits& universe, bool rev) const {
        return reach(u, universe, rev, /*downward=*/true);
    }
    Bits ancestors_of(std::uint32_t u, const Bits& universe, bool rev) const {
        return reach(u, universe, rev, /*downward=*/false);
    }

    // ---- rooted-tree counting: value(v) = phi(v) + prod of child values ----

    // mask must form a tree in the current orientation when restricted to the
    // vertices reachable from root.  Visits every vertex exactly once.
    Count tree_value(std::uint32_t root, const Bits& mask, bool rev, const PhiState& phi) {
        tree_stack_.clear();
        tree_stack_.push_back({root, 0});
        tree_prod_[root] = 1;
        ++tree_visits_;
        Count result;
        while (!tree_stack_.empty()) {
            auto& [v, cursor] = tree_stack_.back();
            const auto& kids = down(v, rev);
            std::uint32_t child = n_;
            while (cursor < kids.size()) {
                std::uint32_t c = kids[cursor++];
                if (mask.test(c)) {
                    child = c;
                    break;
                }
            }
            if (child != n_) {
                tree_prod_[child] = 1;
                tree_stack_.push_back({child, 0});
                ++tree_visits_;
                continue;
            }
            Count val = phi.value_of(v) + tree_prod_[v];
            tree_stack_.pop_back();
            if (tree_stack_.empty()) {
                result = std::move(val);
            } else {
                tree_prod_[tree_stack_.back().first] *= val;
            }
        }
        return result;
    }

    // product of tree counts over every root in the active forest
    Count forest_value(const Bits& mask, bool rev, const PhiState& phi) {
        Count total = 1;
        for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
            if (parent_count(static_cast<std::uint32_t>(v), mask, rev, 1) == 0)
                total *= tree_value(static_cast<std::uint32_t>(v), mask, rev, phi);
        }
        return total;
    }

    // ---- branching components (single-entry descendant sets) --------------------

    // Topological order of the component in the current orientation; fills
    // level_scratch_ with longest-path-from-root depths for its members.
    const std::vector<std::uint32_t>& topo_order(const Bits& comp, bool rev) {
        order_scratch_.clear();
        for (std::size_t v = comp.first(); v != Bits::npos; v = next_in(comp, v + 1)) {
            auto vi = static_cast<std::uint32_t>(v);
            indeg_scratch_[vi] = parent_count(vi, comp, rev);
            level_scratch_[vi] = 0;
            if (indeg_scratch_[vi] == 0) order_scratch_.push_back(vi);
        }
        for (std::size_t i = 0; i < order_scratch_.size(); ++i) {
            std::uint32_t v = order_scratch_[i];
            for (std::uint32_t c : down(v, rev)) {
                if (!comp.test(c)) continue;
                level_scratch_[c] = std::max(level_scratch_[c], level_scratch_[v] + 1);
                if (--indeg_scratch_[c] == 0) order_scratch_.push_back(c);
            }
        }
        return order_scratch_;
    }

    // All branching vertices of comp, deepest first.  A vertex u qualifies
    // when it has descendants and no edge enters D(u) from outside D+(u);
    // equivalently no edge (x,y) has u in A(y) - A+(x), which is what the
    // per-edge invalidation below accumulates.
    std::vector<std::uint32_t> find_branching(const Bits& comp, bool rev) {
        // n per-vertex ancestor masks; allocated on first use since only the
        // pruning module needs them
        if (anc_scratch_.empty()) anc_scratch_.assign(n_, Bits::zeros(n_));
        const auto& order = topo_order(comp, rev);
        Bits invalid = Bits::zeros(n_);
        for (std::uint32_t y : order) {
            anc_scratch_[y].clear_all();
            for (std::uint32_t x : up(y, rev)) {
                if (!comp.test(x)) continue;
                anc_scratch_[y] |= anc_scratch_[x];
                anc_scratch_[y].set(x);
            }
        }
        Bits tmp = Bits::zeros(n_);
        for (std::uint32_t y : order) {
            for (std::uint32_t x : up(y, rev)) {
                if (!comp.test(x)) continue;
                tmp = anc_scratch_[y];
                tmp.subtract(anc_scratch_[x]);
                tmp.reset(x);
                invalid |= tmp;
            }
        }
        std::vector<std::uint32_t> out;
        for (std::uint32_t v : order) {
            if (invalid.test(v)) continue;
            if (child_count(v, comp, rev, 1) > 0) out.push_back(v);
        }
        std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (level_scratch_[a] != level_scratch_[b]) return level_scratch_[a] > level_scratch_[b];
            return a < b;
        });
        return out;
    }

    // ---- pivot selection ----------------------------------------------------------

    std::uint32_t select_pivot(const Bits& mask, bool rev, PivotStrategy strategy,
                               std::mt19937_64& rng) {
        switch (strategy) {
            case PivotStrategy::Random: {
                std::size_t total = mask.count();
                if (total == 0) throw EmptyGraph("cannot pick a pivot in an empty graph");
                std::uint64_t k = bounded(rng, total);
                std::size_t v = mask.first();
                while (k--) v = next_in(mask, v + 1);
                return static_cast<std::uint32_t>(v);
            }
            case PivotStrategy::RandomMultiParent: {
                std::uint32_t pick = n_;
                std::uint64_t seen = 0;
                for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
                    auto vi = static_cast<std::uint32_t>(v);
                    if (parent_count(vi, mask, rev, 2) >= 2) {
                        ++seen;
                        if (bounded(rng, seen) == 0) pick = vi;
                    }
                }
                if (pick == n_)
                    throw NoMultiParentVertex("graph has no multi-parent vertex");
                return pick;
            }
            case PivotStrategy::MaxDegree: {
                std::uint32_t pick = n_;
                std::size_t best = 0;
                std::uint64_t ties = 0;
                for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
                    auto vi = static_cast<std::uint32_t>(v);
                    std::size_t deg = parent_count(vi, mask, rev) + child_count(vi, mask, rev);
                    if (pick == n_ || deg > best) {
                        pick = vi;
                        best = deg;
                        ties = 1;
                    } else if (deg == best) {
                        ++ties;
                        if (bounded(rng, ties) == 0) pick = vi;
                    }
                }
                if (pick == n_) throw EmptyGraph("cannot pick a pivot in an empty graph");
                return pick;
            }
            case PivotStrategy::MinBound: {
                std::uint32_t pick = n_;
                long long best = 0;
                std::uint64_t ties = 0;
                for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
                    auto vi = static_cast<std::uint32_t>(v);
                    long long score = bound_score(vi, mask, rev);
                    if (pick == n_ || score < best) {
                        pick = vi;
                        best = score;
                        ties = 1;
                    } else if (score == best) {
                        ++ties;
                        if (bounded(rng, ties) == 0) pick = vi;
                    }
                }
                if (pick == n_) throw EmptyGraph("cannot pick a pivot in an empty graph");
                return pick;
            }
            case PivotStrategy::Bottleneck: {
                auto flows = bottleneck_flows(mask, rev);
                auto dcounts = descendant_counts(mask, rev);
                std::uint32_t pick = n_;
                Rational best = 0;
                std::uint64_t ties = 0;
                for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
                    auto vi = static_cast<std::uint32_t>(v);
                    Rational score = dcounts[vi] == 0
                                         ? Rational(0)
                                         : flows[vi] / Rational(dcounts[vi]);
                    if (pick == n_ || score > best) {
                        pick = vi;
                        best = score;
                        ties = 1;
                    } else if (score == best) {
                        ++ties;
                        if (bounded(rng, ties) == 0) pick = vi;
                    }
                }
                if (pick == n_) throw EmptyGraph("cannot pick a pivot in an empty graph");
                return pick;
            }
        }
        throw Error("unreachable pivot strategy");
    }

    // e - n + r summed over the two candidate subproblems of pivoting at u,
    // each term clamped at zero.
    long long bound_score(std::uint32_t u, const Bits& mask, bool rev) {
        Bits descp = descendants_of(u, mask, rev);
        descp.set(u);
        Bits rest = mask;
        rest.subtract(descp);
        long long s = std::max(0LL, e_n_r(rest, rev));
        Bits ancp = ancestors_of(u, mask, rev);
        ancp.set(u);
        rest = mask;
        rest.subtract(ancp);
        s += std::max(0LL, e_n_r(rest, rev));
        return s;
    }

    // Unit leaf-to-root flow: every vertex injects one unit and passes its
    // accumulated flow to its parents in equal exact-rational shares.
    std::vector<Rational> bottleneck_flows(const Bits& mask, bool rev) {
        const auto& order = topo_order(mask, rev);
        std::vector<Rational> flow(n_, Rational(0));
        for (std::size_t i = order.size(); i-- > 0;) {
            std::uint32_t v = order[i];
            Rational f = 1;
            for (std::uint32_t c : down(v, rev)) {
                if (!mask.test(c)) continue;
                f += flow[c] / Rational(parent_count(c, mask, rev));
            }
            flow[v] = std::move(f);
        }
        return flow;
    }

    // |D(v)| for every active vertex, via reverse-topological mask unions.
    std::vector<std::size_t> descendant_counts(const Bits& mask, bool rev) {
        const auto& order = topo_order(mask, rev);
        std::vector<Bits> desc(n_, Bits::zeros(n_));
        std::vector<std::size_t> out(n_, 0);
        for (std::size_t i = order.size(); i-- > 0;) {
            std::uint32_t v = order[i];
            for (std::uint32_t c : down(v, rev)) {
                if (!mask.test(c)) continue;
                desc[v] |= desc[c];
                desc[v].set(c);
            }
            out[v] = desc[v].count();
        }
        return out;
    }

    // ---- memo keys (sorted IDs; pruned branches in parentheses) ----------------

    std::string make_key(const Bits& mask, const PhiState& phi) const {
        std::string key;
        auto entry_it = phi.entries.begin();
        bool first = true;
        for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
            if (!first) key += ',';
            first = false;
            key += g_.id_of(static_cast<std::uint32_t>(v));
            while (entry_it != phi.entries.end() && entry_it->v < v) ++entry_it;
            if (entry_it != phi.entries.end() && entry_it->v == v) key += entry_it->prov;
        }
        return key;
    }

    // ---- the full counter ------------------------------------------------------

    Count eval(const Bits& active, bool rev, const PhiState& phi) {
        ++st_.calls;
        check_deadline();
        if (active.none()) return Count(1);

        std::string key;
        if (cfg_.enable_hashing) {
            key = make_key(active, phi);
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                ++st_.memo_hits;
                return it->second;
            }
        }

        if (cfg_.enable_reversal) {
            auto [cur, flip] = mpv_counts(active, rev);
            if (flip < cur) {
                rev = !rev;
                ++st_.reversals;
            }
        }

        Count total = 1;
        Bits remaining = active;
        while (remaining.any()) {
            Bits comp = component_of(static_cast<std::uint32_t>(remaining.first()), remaining);
            total *= eval_component(comp, rev, phi);
            remaining.subtract(comp);
        }

        if (cfg_.enable_hashing) memo_.emplace(std::move(key), total);
        return total;
    }

    // ---- plain pivot decomposition -----------------------------------------------

    Count eval_basic(const Bits& active) {
        ++st_.calls;
        check_deadline();
        if (is_forest(active, false)) return forest_value(active, false, empty_phi_);

        std::uint32_t u = select_pivot(active, false, cfg_.pivot_strategy, rng_);
        Bits descp = descendants_of(u, active, false);
        descp.set(u);
        Bits ancp = ancestors_of(u, active, false);
        ancp.set(u);

        Bits without_desc = active;
        without_desc.subtract(descp);
        Bits without_anc = active;
        without_anc.subtract(ancp);
        return eval_basic(without_desc) + eval_basic(without_anc);
    }

private:
    const Dag& g_;
    std::uint32_t n_;
    CounterConfig cfg_;
    std::mt19937_64 rng_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    Stats st_;
    std::uint64_t tree_visits_ = 0;
    std::unordered_map<std::string, Count> memo_;
    PhiState empty_phi_;

    // scratch reused across calls (all uses complete before recursing)
    std::vector<Count> tree_prod_;
    std::vector<Bits> anc_scratch_;
    mutable std::vector<std::uint32_t> bfs_stack_;
    std::vector<std::pair<std::uint32_t, std::size_t>> tree_stack_;
    std::vector<std::uint32_t> order_scratch_;
    std::vector<std::uint32_t> level_scratch_;
    std::vector<std::uint32_t> indeg_scratch_;

    static std::size_t next_in(const Bits& mask, std::size_t from) {
        return mask.next(from);
    }

    void check_deadline() {
        if (!deadline_) return;
        if ((st_.calls & 1023) != 0) return;
        if (std::chrono::steady_clock::now() > *deadline_) throw DeadlineExpired();
    }

    Bits reach(std::uint32_t u, const Bits& universe, bool rev, bool downward) const {
        Bits out = Bits::zeros(n_);
        bfs_stack_.clear();
        bfs_stack_.push_back(u);
        while (!bfs_stack_.empty()) {
            std::uint32_t v = bfs_stack_.back();
            bfs_stack_.pop_back();
            const auto& adj = downward ? down(v, rev) : up(v, rev);
            for (std::uint32_t w : adj) {
                if (universe.test(w) && !out.test(w)) {
                    out.set(w);
                    bfs_stack_.push_back(w);
                }
            }
        }
        out.reset(u);  // strict
        return out;
    }

    long long e_n_r(const Bits& mask, bool rev) const {
        long long n = 0, e = 0, r = 0;
        for (std::size_t v = mask.first(); v != Bits::npos; v = next_in(mask, v + 1)) {
            ++n;
            std::uint32_t pc = parent_count(static_cast<std::uint32_t>(v), mask, rev);
            e += pc;
            if (pc == 0) ++r;
        }
        return e - n + r;
    }

    Count eval_component(const Bits& comp, bool rev, const PhiState& phi_in) {
        std::uint32_t root;
        if (component_is_tree(comp, rev, &root)) return tree_value(root, comp, rev, phi_in);

        Bits stem = comp;
        PhiState phi = phi_in;
        if (cfg_.enable_pruning) {
            auto branching = find_branching(stem, rev);
            for (std::uint32_t u : branching) {
                if (!stem.test(u)) continue;
                // A root whose phi already carries a pruned component must be
                // resolved by the root-pivot rule, not pruned again.
                if (parent_count(u, stem, rev, 1) == 0 && phi.value_of(u) != 1) continue;
                Bits branch = descendants_of(u, stem, rev);
                if (branch.none()) continue;
                Count sub = eval(branch, rev, phi);
                ++st_.prunes;
                std::string wrap;
                if (cfg_.enable_hashing) wrap = "(" + make_key(branch, phi) + ")";
                phi.multiply(u, sub, wrap);
                stem.subtract(branch);
            }
            if (component_is_tree(stem, rev, &root)) return tree_value(root, stem, rev, phi);
        }

        std::uint32_t u = select_pivot(stem, rev, cfg_.pivot_strategy, rng_);
        Bits descp = descendants_of(u, stem, rev);
        descp.set(u);
        Bits ancp = ancestors_of(u, stem, rev);
        ancp.set(u);

        Bits without_desc = stem;
        without_desc.subtract(descp);
        Bits without_anc = stem;
        without_anc.subtract(ancp);

        const Count phi_u = phi.value_of(u);
        if (parent_count(u, stem, rev, 1) == 0) {
            // root pivot: phi counts the subgraphs that omit the root
            Count with_u = eval(without_anc, rev, phi);
            Count without_u = eval(without_desc, rev, phi);
            return with_u + phi_u * without_u;
        }
        Count without_u = eval(without_desc, rev, phi);
        Count with_u = eval(without_anc, rev, phi);
        return without_u + phi_u * with_u;
    }

    // comp is weakly connected; it is a rooted tree iff no member has two
    // active parents.  Reports the unique root.
    bool component_is_tree(const Bits& comp, bool rev, std::uint32_t* root) const {
        std::uint32_t r = n_;
        for (std::size_t v = comp.first(); v != Bits::npos; v = next_in(comp, v + 1)) {
            auto vi = static_cast<std::uint32_t>(v);
            std::uint32_t pc = parent_count(vi, comp, rev, 2);
            if (pc >= 2) return false;
            if (pc == 0) r = vi;
        }
        *root = r;
        return true;
    }
};

// Pick the cheapest set representation for a given vertex count.
template <class F>
auto dispatch_bits(std::size_t n, F&& f) {
    if (n <= 64) return f(std::type_identity<FixedBits<1>>{});
    if (n <= 128) return f(std::type_identity<FixedBits<2>>{});
    if (n <= 256) return f(std::type_identity<FixedBits<4>>{});
    if (n <= 512) return f(std::type_identity<FixedBits<8>>{});
    return f(std::type_identity<DynBits>{});
}

}  // namespace detail
}  // namespace idealcount
