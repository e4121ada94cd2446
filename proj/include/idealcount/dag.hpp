#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idealcount/errors.hpp"

namespace idealcount {

// Aggregate structural counts of a graph.  `bound` is e - n + r: zero exactly
// on forests and an upper bound on the number of multi-parent vertices.
struct GraphStats {
    std::size_t n = 0;             // vertices
    std::size_t e = 0;             // edges
    std::size_t leaves = 0;        // no outgoing edges
    std::size_t roots = 0;         // no incoming edges
    std::size_t multi_parent = 0;  // vertices with >= 2 parents
    long long bound = 0;           // e - n + r
};

// Immutable directed acyclic graph over string vertex identifiers.
//
// Identifiers are strings at the API boundary and dense indices internally.
// Vertices are stored sorted lexicographically, so index order coincides with
// the canonical identifier order; that makes tie-breaking and key
// construction deterministic.  Edges run parent -> child (general ->
// specific).  Construction validates acyclicity, so everything downstream may
// assume it.
class Dag {
public:
    Dag() = default;

    static Dag from_edges(std::vector<std::string> vertices,
                          const std::vector<std::pair<std::string, std::string>>& edges) {
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

        Dag d;
        d.ids_ = std::move(vertices);
        const std::size_t n = d.ids_.size();
        d.parents_.assign(n, {});
        d.children_.assign(n, {});

        std::vector<std::pair<std::uint32_t, std::uint32_t>> idx_edges;
        idx_edges.reserve(edges.size());
        for (const auto& [u, v] : edges) {
            auto ui = d.try_index(u);
            auto vi = d.try_index(v);
            if (!ui || !vi)
                throw UnknownEndpoint("edge endpoint not declared as a vertex: " +
                                      (!ui ? u : v));
            if (*ui == *vi) throw SelfLoop("self-loop on vertex " + u);
            idx_edges.emplace_back(*ui, *vi);
        }
        std::sort(idx_edges.begin(), idx_edges.end());
        for (std::size_t i = 1; i < idx_edges.size(); ++i)
            if (idx_edges[i] == idx_edges[i - 1])
                throw DuplicateEdge("duplicate edge " + d.ids_[idx_edges[i].first] +
                                    " -> " + d.ids_[idx_edges[i].second]);

        for (auto [u, v] : idx_edges) {
            d.children_[u].push_back(v);
            d.parents_[v].push_back(u);
        }
        for (auto& p : d.parents_) std::sort(p.begin(), p.end());
        d.edge_count_ = idx_edges.size();

        d.check_acyclic();
        return d;
    }

    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    bool empty() const { return ids_.empty(); }

    const std::vector<std::string>& vertex_ids() const { return ids_; }
    const std::string& id_of(std::uint32_t v) const { return ids_[v]; }

    std::optional<std::uint32_t> try_index(std::string_view id) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        if (it == ids_.end() || *it != id) return std::nullopt;
        return static_cast<std::uint32_t>(it - ids_.begin());
    }

    std::uint32_t index_of(std::string_view id) const {
        auto i = try_index(id);
        if (!i) throw UnknownVertex("unknown vertex: " + std::string(id));
        return *i;
    }

    const std::vector<std::uint32_t>& parents(std::uint32_t v) const { return parents_[v]; }
    const std::vector<std::uint32_t>& children(std::uint32_t v) const { return children_[v]; }

    // -- reachability ---------------------------------------------------------

    std::vector<std::uint32_t> ancestor_indices(std::uint32_t v, bool extended = false) const {
        return closure(v, parents_, extended);
    }
    std::vector<std::uint32_t> descendant_indices(std::uint32_t v, bool extended = false) const {
        return closure(v, children_, extended);
    }

    std::vector<std::string> ancestors(std::string_view v, bool extended = false) const {
        return to_ids(ancestor_indices(index_of(v), extended));
    }
    std::vector<std::string> descendants(std::string_view v, bool extended = false) const {
        return to_ids(descendant_indices(index_of(v), extended));
    }

    // -- induced subgraphs ----------------------------------------------------

    Dag induced_by_mask(const std::vector<bool>& keep) const {
        Dag d;
        std::vector<std::uint32_t> remap(ids_.size(), 0);
        for (std::uint32_t v = 0; v < ids_.size(); ++v) {
            if (keep[v]) {
                remap[v] = static_cast<std::uint32_t>(d.ids_.size());
                d.ids_.push_back(ids_[v]);
            }
        }
        const std::size_t m = d.ids_.size();
        d.parents_.assign(m, {});
        d.children_.assign(m, {});
        d.edge_count_ = 0;
        for (std::uint32_t v = 0; v < ids_.size(); ++v) {
            if (!keep[v]) continue;
            for (std::uint32_t c : children_[v]) {
                if (!keep[c]) continue;
                d.children_[remap[v]].push_back(remap[c]);
                d.parents_[remap[c]].push_back(remap[v]);
                ++d.edge_count_;
            }
        }
        for (auto& p : d.parents_) std::sort(p.begin(), p.end());
        return d;  // subgraph of a DAG, no revalidation needed
    }

    Dag induced_subgraph(const std::vector<std::string>& keep) const {
        std::vector<bool> mask(ids_.size(), false);
        for (const auto& id : keep) mask[index_of(id)] = true;
        return induced_by_mask(mask);
    }

    Dag induced_without(const std::vector<std::string>& drop) const {
        std::vector<bool> mask(ids_.size(), true);
        for (const auto& id : drop) mask[index_of(id)] = false;
        return induced_by_mask(mask);
    }

    // -- reversal ---------------------------------------------------------------

    Dag reversed() const {
        Dag d;
        d.ids_ = ids_;
        d.parents_ = children_;
        d.children_ = parents_;
        d.edge_count_ = edge_count_;
        return d;
    }

    // -- weak connectivity -------------------------------------------------------

    // Partition into weakly connected induced subgraphs, ordered by their
    // smallest vertex identifier.
    std::vector<Dag> connected_components() const {
        std::vector<Dag> out;
        for (const auto& mask : component_masks()) out.push_back(induced_by_mask(mask));
        return out;
    }

    std::vector<std::vector<bool>> component_masks() const {
        std::vector<std::vector<bool>> out;
        std::vector<bool> seen(ids_.size(), false);
        for (std::uint32_t s = 0; s < ids_.size(); ++s) {
            if (seen[s]) continue;
            std::vector<bool> mask(ids_.size(), false);
            std::vector<std::uint32_t> stack{s};
            seen[s] = true;
            mask[s] = true;
            while (!stack.empty()) {
                std::uint32_t v = stack.back();
                stack.pop_back();
                auto push = [&](std::uint32_t w) {
                    if (!seen[w]) {
                        seen[w] = true;
                        mask[w] = true;
                        stack.push_back(w);
                    }
                };
                for (std::uint32_t w : parents_[v]) push(w);
                for (std::uint32_t w : children_[v]) push(w);
            }
            out.push_back(std::move(mask));
        }
        return out;  // seeds scanned in index order, so components are already
                     // ordered by smallest identifier
    }

    // -- consistency ----------------------------------------------------------------

    // True iff s is ancestor-closed: every parent of a member is a member.
    bool is_consistent(const std::vector<std::string>& s) const {
        std::vector<bool> in(ids_.size(), false);
        for (const auto& id : s) in[index_of(id)] = true;
        for (std::uint32_t v = 0; v < ids_.size(); ++v) {
            if (!in[v]) continue;
            for (std::uint32_t p : parents_[v])
                if (!in[p]) return false;
        }
        return true;
    }

    // -- levels -----------------------------------------------------------------------

    // Length of the longest path from a root; roots are level 0.
    std::vector<int> levels_by_index() const {
        std::vector<int> level(ids_.size(), 0);
        for (std::uint32_t v : topological_order()) {
            for (std::uint32_t p : parents_[v]) level[v] = std::max(level[v], level[p] + 1);
        }
        return level;
    }

    std::map<std::string, int> levels() const {
        std::map<std::string, int> out;
        auto lv = levels_by_index();
        for (std::uint32_t v = 0; v < ids_.size(); ++v) out[ids_[v]] = lv[v];
        return out;
    }

    std::vector<std::uint32_t> topological_order() const {
        std::vector<std::uint32_t> indeg(ids_.size(), 0);
        std::vector<std::uint32_t> order;
        order.reserve(ids_.size());
        for (std::uint32_t v = 0; v < ids_.size(); ++v)
            indeg[v] = static_cast<std::uint32_t>(parents_[v].size());
        for (std::uint32_t v = 0; v < ids_.size(); ++v)
            if (indeg[v] == 0) order.push_back(v);
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::uint32_t c : children_[order[i]])
                if (--indeg[c] == 0) order.push_back(c);
        }
        return order;  // complete because the graph is acyclic
    }

    // -- stats ---------------------------------------------------------------------------

    GraphStats stats() const {
        GraphStats s;
        s.n = ids_.size();
        s.e = edge_count_;
        for (std::uint32_t v = 0; v < ids_.size(); ++v) {
            if (children_[v].empty()) ++s.leaves;
            if (parents_[v].empty()) ++s.roots;
            if (parents_[v].size() >= 2) ++s.multi_parent;
        }
        s.bound = static_cast<long long>(s.e) - static_cast<long long>(s.n) +
                  static_cast<long long>(s.roots);
        return s;
    }

    // Every vertex has at most one parent.  The empty graph counts as a forest.
    bool is_forest() const {
        for (const auto& p : parents_)
            if (p.size() >= 2) return false;
        return true;
    }

    bool operator==(const Dag& o) const {
        return ids_ == o.ids_ && parents_ == o.parents_;
    }

private:
    std::vector<std::string> ids_;  // sorted
    std::vector<std::vector<std::uint32_t>> parents_;
    std::vector<std::vector<std::uint32_t>> children_;
    std::size_t edge_count_ = 0;

    std::vector<std::uint32_t> closure(std::uint32_t v,
                                       const std::vector<std::vector<std::uint32_t>>& adj,
                                       bool extended) const {
        std::vector<bool> seen(ids_.size(), false);
        std::vector<std::uint32_t> stack{v}, out;
        seen[v] = true;
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj[x]) {
                if (!seen[w]) {
                    seen[w] = true;
                    out.push_back(w);
                    stack.push_back(w);
                }
            }
        }
        if (extended) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::string> to_ids(const std::vector<std::uint32_t>& idx) const {
        std::vector<std::string> out;
        out.reserve(idx.size());
        for (auto v : idx) out.push_back(ids_[v]);
        return out;
    }

    void check_acyclic() const {
        auto order = topological_order();
        if (order.size() == ids_.size()) return;

        // Extract a witness cycle from the leftover vertices: every leftover
        // has at least one leftover parent, so walking parents must revisit.
        std::vector<bool> left(ids_.size(), true);
        for (std::uint32_t v : order) left[v] = false;
        std::uint32_t start = 0;
        while (!left[start]) ++start;

        std::vector<std::uint32_t> path;
        std::vector<int> pos(ids_.size(), -1);
        std::uint32_t cur = start;
        while (pos[cur] < 0) {
            pos[cur] = static_cast<int>(path.size());
            path.push_back(cur);
            for (std::uint32_t p : parents_[cur]) {
                if (left[p]) {
                    cur = p;
                    break;
                }
            }
        }
        std::vector<std::string> cycle;
        for (std::size_t i = path.size(); i-- > static_cast<std::size_t>(pos[cur]);)
            cycle.push_back(ids_[path[i]]);  // parent walk reversed = edge direction
        cycle.push_back(cycle.front());
        std::string msg = "cycle detected: ";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) msg += " -> ";
            msg += cycle[i];
        }
        throw CycleDetected(msg, cycle);
    }
};

// --- edge-list text format ------------------------------------------------------
//
// One edge per line, `u<TAB>v` meaning u -> v; a line with a single token
// declares an isolated vertex; `#` starts a comment line.

inline Dag parse_edge_list(std::string_view text) {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != '\t' && line[j] != ' ') ++j;
            if (j > i) tokens.emplace_back(line.substr(i, j - i));
            i = j;
        }
        if (tokens.size() == 1) {
            vertices.push_back(tokens[0]);
        } else if (tokens.size() == 2) {
            vertices.push_back(tokens[0]);
            vertices.push_back(tokens[1]);
            edges.emplace_back(tokens[0], tokens[1]);
        } else if (!tokens.empty()) {
            throw MalformedInput("expected `u<TAB>v` or a bare vertex", line_no);
        }
    }
    return Dag::from_edges(std::move(vertices), edges);
}

inline std::string to_edge_list(const Dag& d) {
    std::ostringstream out;
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
        if (d.parents(v).empty() && d.children(v).empty()) out << d.id_of(v) << "\n";
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v)
        for (std::uint32_t c : d.children(v)) out << d.id_of(v) << "\t" << d.id_of(c) << "\n";
    return out.str();
}

}  // namespace idealcount
