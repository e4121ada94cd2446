#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pthread.h>

#include "idealcount/dag.hpp"
#include "idealcount/detail/engine.hpp"
#include "idealcount/errors.hpp"
#include "idealcount/types.hpp"

namespace idealcount {

namespace detail {

// Real ontologies reach ~30k vertices; the engine recursion can get that
// deep, so large inputs run on a thread with an explicitly sized stack.
template <class F>
void run_with_large_stack(F&& f) {
    using Fn = std::remove_reference_t<F>;
    struct Ctx {
        Fn* f;
        std::exception_ptr ep;
    } ctx{&f, nullptr};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, std::size_t{512} * 1024 * 1024);
    auto trampoline = [](void* p) -> void* {
        auto* c = static_cast<Ctx*>(p);
        try {
            (*c->f)();
        } catch (...) {
            c->ep = std::current_exception();
        }
        return nullptr;
    };
    pthread_t tid;
    int rc = pthread_create(&tid, &attr, +trampoline, &ctx);
    pthread_attr_destroy(&attr);
    if (rc != 0) {
        f();  // fall back to the caller's stack
        return;
    }
    pthread_join(tid, nullptr);
    if (ctx.ep) std::rethrow_exception(ctx.ep);
}

inline PhiState to_phi_state(const Dag& d, const PhiMap& phi) {
    PhiState st;
    for (const auto& [id, value] : phi.nontrivial()) {
        auto idx = d.try_index(id);
        if (!idx) continue;  // entries for absent vertices are inert
        st.entries.push_back(PhiEntry{*idx, value, ""});
    }
    std::sort(st.entries.begin(), st.entries.end(),
              [](const PhiEntry& a, const PhiEntry& b) { return a.v < b.v; });
    return st;
}

template <class Body>
CountReport timed_report(Body&& body) {
    auto t0 = std::chrono::steady_clock::now();
    CountReport rep = body();
    rep.wall_time = std::chrono::steady_clock::now() - t0;
    return rep;
}

inline CountReport run_cdag(const Dag& d, const CounterConfig& cfg, const PhiMap& phi,
                            std::optional<std::chrono::steady_clock::time_point> deadline) {
    return timed_report([&] {
        CountReport rep;
        auto body = [&] {
            dispatch_bits(d.vertex_count(), [&](auto tag) {
                using Bits = typename decltype(tag)::type;
                Engine<Bits> engine(d, cfg, deadline);
                rep.count = engine.run(to_phi_state(d, phi));
                rep.recursive_calls = engine.stats().calls;
                rep.memo_hits = engine.stats().memo_hits;
                rep.memo_entries = engine.memo_entries();
                rep.reversals = engine.stats().reversals;
                rep.prunes = engine.stats().prunes;
                return 0;
            });
        };
        if (d.vertex_count() > 2048)
            run_with_large_stack(body);
        else
            body();
        return rep;
    });
}

}  // namespace detail

// --- rooted trees and forests ---------------------------------------------------

// Count of consistent subgraphs of a rooted tree (empty tree counts one, the
// empty subgraph).  `visits`, when given, receives the number of vertices the
// traversal touched; it touches each exactly once.
inline Count ctree(const Dag& d, const PhiMap& phi = {}, std::uint64_t* visits = nullptr) {
    if (!d.is_forest()) throw NotATree("graph has a multi-parent vertex");
    if (d.vertex_count() > 0 && d.stats().roots != 1)
        throw NotATree("tree must have exactly one root");
    if (visits) *visits = 0;
    if (d.empty()) return Count(1);

    return detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        std::uint32_t root = 0;
        for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
            if (d.parents(v).empty()) root = v;
        Count c = engine.tree_value(root, B::full(d.vertex_count()), false,
                                    detail::to_phi_state(d, phi));
        if (visits) *visits = engine.tree_visits();
        return c;
    });
}

// Product of tree counts over each rooted tree of a forest.
inline Count cforest(const Dag& d, const PhiMap& phi = {}, std::uint64_t* visits = nullptr) {
    if (!d.is_forest()) throw NotAForest("graph has a multi-parent vertex");
    if (visits) *visits = 0;
    if (d.empty()) return Count(1);
    return detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        Count c = engine.forest_value(B::full(d.vertex_count()), false,
                                      detail::to_phi_state(d, phi));
        if (visits) *visits = engine.tree_visits();
        return c;
    });
}

// --- pivot decomposition -------------------------------------------------------

namespace detail {

inline CountReport run_cdag_basic(const Dag& d, PivotStrategy strategy, std::uint64_t seed,
                                  std::optional<std::chrono::steady_clock::time_point> deadline) {
    return timed_report([&] {
        CountReport rep;
        auto body = [&] {
            dispatch_bits(d.vertex_count(), [&](auto tag) {
                using B = typename decltype(tag)::type;
                CounterConfig cfg = CounterConfig::none(strategy, seed);
                Engine<B> engine(d, cfg, deadline);
                rep.count = engine.run_basic();
                rep.recursive_calls = engine.stats().calls;
                return 0;
            });
        };
        if (d.vertex_count() > 2048)
            run_with_large_stack(body);
        else
            body();
        return rep;
    });
}

}  // namespace detail

// Plain pivot decomposition with a forest fast path and none of the
// optimization modules.
inline CountReport cdag_basic(const Dag& d, PivotStrategy strategy = PivotStrategy::MaxDegree,
                              std::uint64_t seed = 0) {
    return detail::run_cdag_basic(d, strategy, seed, std::nullopt);
}

inline std::optional<CountReport> cdag_basic_with_deadline(const Dag& d, PivotStrategy strategy,
                                                           std::uint64_t seed,
                                                           std::chrono::milliseconds budget) {
    try {
        return detail::run_cdag_basic(d, strategy, seed,
                                      std::chrono::steady_clock::now() + budget);
    } catch (const DeadlineExpired&) {
        return std::nullopt;
    }
}

// The full counter; pruning, hashing and reversal switchable through the config.
inline CountReport cdag(const Dag& d, const CounterConfig& cfg = {}) {
    return detail::run_cdag(d, cfg, PhiMap{}, std::nullopt);
}

// As cdag, but gives up once the budget elapses.
inline std::optional<CountReport> cdag_with_deadline(const Dag& d, const CounterConfig& cfg,
                                                     std::chrono::milliseconds budget) {
    try {
        return detail::run_cdag(d, cfg, PhiMap{},
                                std::chrono::steady_clock::now() + budget);
    } catch (const DeadlineExpired&) {
        return std::nullopt;
    }
}

// Phi-aware count used by prune_branch and tests.
inline Count cdag_with_phi(const Dag& d, const PhiMap& phi, const CounterConfig& cfg = {}) {
    return detail::run_cdag(d, cfg, phi, std::nullopt).count;
}

// --- branching components ----------------------------------------------------------

// All branching vertices, deepest first.
inline std::vector<std::string> find_branching_vertices(const Dag& d) {
    if (d.empty()) return {};
    return detail::dispatch_bits(d.vertex_count(), [&](auto tag) {
        using B = typename decltype(tag)::type;
        detail::Engine<B> engine(d, CounterConfig{});
        std::vector<std::string> out;
        B full = B::full(d.vertex_count());
        B remaining = full;
        while (remaining.any()) {
            B comp = engine.component_of(static_cast<std::uint32_t>(remaining.first()), remaining);
            for (std::uint32_t v : engine.find_branching(comp, false)) out.push_back(d.id_of(v));
            remaining.subtract(comp);
        }
        return out;
    });
}

// Prune the branching component below u: returns the stem graph (u becomes a
// leaf) and the phi map with u's value multiplied by the branch count.
inline std::pair<Dag, PhiMap> prune_branch(const Dag& d, const PhiMap& phi, const std::string& u,
                                           const CounterConfig& cfg = {}) {
    std::uint32_t ui = d.index_of(u);
    auto desc = d.descendant_indices(ui, false);
    if (desc.empty()) throw NotBranching("vertex " + u + " has no descendants");

    std::vector<bool> in_branch(d.vertex_count(), false);
    for (auto v : desc) in_branch[v] = true;
    for (auto w : desc)
        for (auto p : d.parents(w))
            if (!in_branch[p] && p != ui)
                throw NotBranching("edge " + d.id_of(p) + " -> " + d.id_of(w) +
                                   " enters the descendant set of " + u);

    Dag branch = d.induced_by_mask(in_branch);
    PhiMap branch_phi;
    for (auto v : desc) {
        const Count& val = phi.get(d.id_of(v));
        if (val != 1) branch_phi.set(d.id_of(v), val);
    }
    Count sub = cdag_with_phi(branch, branch_phi, cfg);

    std::vector<bool> keep(d.vertex_count(), true);
    for (auto v : desc) keep[v] = false;
    Dag stem = d.induced_by_mask(keep);
    PhiMap out_phi;
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v) {
        if (!keep[v]) continue;
        const Count& val = phi.get(d.id_of(v));
        if (val != 1) out_phi.set(d.id_of(v), val);
    }
    out_phi.set(u, phi.get(u) * sub);
    return {std::move(stem), std::move(out_phi)};
}

// --- canonical keys (sorted IDs, pruned-branch keys in parentheses) -------------------

inline std::string canonical_key(const Dag& d,
                                 const std::map<std::string, std::string>& provenance = {}) {
    std::string key;
    bool first = true;
    for (const auto& id : d.vertex_ids()) {
        if (!first) key += ',';
        first = false;
        key += id;
        auto it = provenance.find(id);
        if (it != provenance.end()) key += "(" + it->second + ")";
    }
    return key;
}

}  // namespace idealcount
