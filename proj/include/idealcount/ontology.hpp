#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idealcount/dag.hpp"
#include "idealcount/errors.hpp"

namespace idealcount {

struct OntologyTerm {
    std::string id;
    std::string name;
    std::string ns;
    bool obsolete = false;
};

// Mapping from entity identifiers (proteins, genes) to term-identifier sets.
struct AnnotationCorpus {
    std::map<std::string, std::set<std::string>> entity_terms;
    std::string provenance;
    std::size_t rows_skipped = 0;   // malformed rows
    std::size_t rows_dropped = 0;   // filtered (evidence, NOT qualifier)
    std::size_t terms_dropped = 0;  // unresolved term ids (set by propagate)
    std::vector<std::string> warnings;

    void warn(const std::string& msg) {
        if (warnings.size() < 20) warnings.push_back(msg);
    }
};

struct Ontology {
    Dag dag;
    std::map<std::string, OntologyTerm> terms;      // non-obsolete, by primary id
    std::map<std::string, std::string> alt_ids;     // alt id -> primary id
    std::size_t obsolete_terms = 0;
    std::size_t dangling_edges = 0;                 // dropped with a warning tally
    std::size_t ignored_relationship_edges = 0;     // non-transitive relations
    std::map<std::string, std::size_t> namespace_counts;

    // Resolve through alt_ids; empty optional when unknown.
    std::optional<std::string> resolve(const std::string& id) const {
        if (terms.count(id)) return id;
        auto it = alt_ids.find(id);
        if (it != alt_ids.end() && terms.count(it->second)) return it->second;
        return std::nullopt;
    }
};

namespace obo_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// OBO values may carry a trailing `! comment`.
inline std::string_view strip_comment(std::string_view s) {
    auto pos = s.find(" ! ");
    if (pos != std::string_view::npos) s = s.substr(0, pos);
    if (!s.empty() && s.back() == '!') s.remove_suffix(1);
    return trim(s);
}

}  // namespace obo_detail

inline const std::set<std::string> kDefaultRelations = {"is_a", "part_of"};

// Parse OBO 1.2-style stanza text into a Dag plus term metadata.
//
// Only [Term] stanzas contribute; obsolete terms and their edges are dropped.
// `is_a: X` and `relationship: <rel> X` lines with rel in `relations` produce
// an edge X -> term (general to specific).  Non-transitive relations are
// ignored.  Edges referencing unknown or obsolete terms are dropped and
// tallied rather than failing the parse; a cycle, however, is a hard error.
inline Ontology parse_obo(std::string_view text,
                          const std::set<std::string>& relations = kDefaultRelations,
                          const std::string& namespace_filter = "") {
    using obo_detail::strip_comment;
    using obo_detail::trim;

    struct RawTerm {
        OntologyTerm term;
        std::vector<std::string> alt_ids;
        std::vector<std::string> parent_refs;  // already relation-filtered
        std::size_t ignored_edges = 0;
        std::size_t line = 0;
    };
    std::vector<RawTerm> raw;
    bool in_term = false;
    bool in_other_stanza = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[Term]") {
                in_term = true;
                in_other_stanza = false;
                raw.emplace_back();
                raw.back().line = line_no;
            } else {
                in_term = false;
                in_other_stanza = true;
            }
            continue;
        }
        if (!in_term) {
            (void)in_other_stanza;  // header and foreign stanzas are skipped
            continue;
        }

        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw MalformedStanza("expected `tag: value`", line_no);
        std::string tag(trim(line.substr(0, colon)));
        std::string_view value = trim(line.substr(colon + 1));
        RawTerm& t = raw.back();

        if (tag == "id") {
            t.term.id = std::string(strip_comment(value));
            if (t.term.id.empty()) throw MalformedStanza("empty term id", line_no);
        } else if (tag == "name") {
            t.term.name = std::string(value);
        } else if (tag == "namespace") {
            t.term.ns = std::string(strip_comment(value));
        } else if (tag == "is_obsolete") {
            t.term.obsolete = strip_comment(value) == "true";
        } else if (tag == "alt_id") {
            t.alt_ids.emplace_back(strip_comment(value));
        } else if (tag == "is_a") {
            std::string ref(strip_comment(value));
            if (ref.empty()) throw MalformedStanza("is_a without a target", line_no);
            if (relations.count("is_a"))
                t.parent_refs.push_back(std::move(ref));
            else
                ++t.ignored_edges;
        } else if (tag == "relationship") {
            std::string v(strip_comment(value));
            auto sp = v.find(' ');
            if (sp == std::string::npos)
                throw MalformedStanza("relationship needs `<type> <target>`", line_no);
            std::string rel = v.substr(0, sp);
            std::string ref(trim(std::string_view(v).substr(sp + 1)));
            if (ref.empty()) throw MalformedStanza("relationship without a target", line_no);
            if (relations.count(rel))
                t.parent_refs.push_back(std::move(ref));
            else
                ++t.ignored_edges;
        }
        // every other tag is ignored on purpose
    }

    Ontology out;
    for (auto& t : raw) {
        if (t.term.id.empty())
            throw MalformedStanza("[Term] stanza without an id", t.line);
        if (t.term.obsolete) {
            ++out.obsolete_terms;
            continue;
        }
        if (!namespace_filter.empty() && t.term.ns != namespace_filter) continue;
        for (auto& a : t.alt_ids) out.alt_ids.emplace(a, t.term.id);
        ++out.namespace_counts[t.term.ns];
        out.terms.emplace(t.term.id, t.term);
    }

    std::vector<std::string> vertices;
    std::set<std::pair<std::string, std::string>> edge_set;  // collapse duplicates
    vertices.reserve(out.terms.size());
    for (const auto& [id, _] : out.terms) vertices.push_back(id);
    for (auto& t : raw) {
        if (t.term.obsolete || !out.terms.count(t.term.id)) continue;
        out.ignored_relationship_edges += t.ignored_edges;
        for (auto& ref : t.parent_refs) {
            auto resolved = out.resolve(ref);
            if (!resolved) {
                ++out.dangling_edges;
                continue;
            }
            if (*resolved == t.term.id) continue;  // self-reference, drop
            edge_set.emplace(*resolved, t.term.id);
        }
    }
    std::vector<std::pair<std::string, std::string>> edges(edge_set.begin(), edge_set.end());
    out.dag = Dag::from_edges(std::move(vertices), edges);  // surfaces CycleDetected
    return out;
}

// Experimental GO evidence codes plus "traceable author statement" and
// "inferred by curator".
inline const std::set<std::string> kDefaultEvidenceCodes = {"EXP", "IDA", "IPI", "IMP",
                                                            "IGI", "IEP", "TAS", "IC"};

// Parse GAF 2.x rows: entity from column 2, term from column 5, evidence from
// column 7; rows with a NOT qualifier (column 4) are dropped.
inline AnnotationCorpus parse_gaf(std::string_view text,
                                  const std::set<std::string>& evidence_codes =
                                      kDefaultEvidenceCodes) {
    AnnotationCorpus corpus;
    corpus.provenance = "gaf";
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '!') continue;

        std::vector<std::string_view> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 15) {
            ++corpus.rows_skipped;  // malformed row: tallied and skipped
            corpus.warn("malformed GAF row at line " + std::to_string(line_no) + ": " +
                        std::to_string(cols.size()) + " columns");
            continue;
        }
        std::string_view qualifier = cols[3];
        std::string_view term = cols[4];
        std::string_view evidence = cols[6];
        if (qualifier.find("NOT") != std::string_view::npos) {
            ++corpus.rows_dropped;
            continue;
        }
        if (!evidence_codes.count(std::string(evidence))) {
            ++corpus.rows_dropped;
            continue;
        }
        if (cols[1].empty() || term.empty()) {
            ++corpus.rows_skipped;
            continue;
        }
        corpus.entity_terms[std::string(cols[1])].insert(std::string(term));
    }
    return corpus;
}

// Generic entity -> term TSV (HPO gene-phenotype exports, toy fixtures).
// Columns are zero-based.  `#` lines are comments; rows whose term column
// does not look like an identifier (no ':') are tallied and skipped, which
// also absorbs header rows.
inline AnnotationCorpus parse_gene_tsv(std::string_view text, std::size_t gene_column,
                                       std::size_t term_column) {
    AnnotationCorpus corpus;
    corpus.provenance = "tsv";
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (cols.size() <= std::max(gene_column, term_column)) {
            ++corpus.rows_skipped;
            corpus.warn("malformed TSV row at line " + std::to_string(line_no));
            continue;
        }
        std::string_view gene = cols[gene_column];
        std::string_view term = cols[term_column];
        if (gene.empty() || term.find(':') == std::string_view::npos) {
            ++corpus.rows_skipped;
            corpus.warn("skipped non-data TSV row at line " + std::to_string(line_no));
            continue;
        }
        corpus.entity_terms[std::string(gene)].insert(std::string(term));
    }
    return corpus;
}

// Replace every entity's term set with the union of extended ancestors of its
// terms.  Unknown term ids are dropped and tallied.  Idempotent.
inline AnnotationCorpus propagate(const AnnotationCorpus& corpus, const Dag& d) {
    AnnotationCorpus out;
    out.provenance = corpus.provenance + "+propagated";
    out.rows_skipped = corpus.rows_skipped;
    out.rows_dropped = corpus.rows_dropped;
    out.terms_dropped = corpus.terms_dropped;
    for (const auto& [entity, terms] : corpus.entity_terms) {
        std::set<std::string> closed;
        for (const auto& t : terms) {
            auto idx = d.try_index(t);
            if (!idx) {
                ++out.terms_dropped;
                continue;
            }
            for (auto a : d.ancestor_indices(*idx, true)) closed.insert(d.id_of(a));
        }
        out.entity_terms[entity] = std::move(closed);
    }
    return out;
}

// Variant that resolves ids through an ontology's alt-id table first.
inline AnnotationCorpus propagate(const AnnotationCorpus& corpus, const Ontology& onto) {
    AnnotationCorpus resolved = corpus;
    resolved.entity_terms.clear();
    for (const auto& [entity, terms] : corpus.entity_terms) {
        auto& dst = resolved.entity_terms[entity];
        for (const auto& t : terms) {
            auto r = onto.resolve(t);
            if (r)
                dst.insert(*r);
            else
                dst.insert(t);  // leave unresolved; propagate() tallies it
        }
    }
    return propagate(resolved, onto.dag);
}

// Induced subgraph on vertices with level <= L.  Ancestor-closed by
// construction, hence itself a valid ontology.
inline Dag truncate_to_level(const Dag& d, int max_level) {
    auto lv = d.levels_by_index();
    std::vector<bool> keep(d.vertex_count(), false);
    for (std::uint32_t v = 0; v < d.vertex_count(); ++v) keep[v] = lv[v] <= max_level;
    return d.induced_by_mask(keep);
}

// Induced subgraph on the union of all entities' term sets.  With a
// propagated corpus the union is ancestor-closed.
inline Dag used_subontology(const Dag& d, const AnnotationCorpus& corpus) {
    std::vector<bool> keep(d.vertex_count(), false);
    for (const auto& [_, terms] : corpus.entity_terms)
        for (const auto& t : terms) {
            auto idx = d.try_index(t);
            if (idx) keep[*idx] = true;
        }
    return d.induced_by_mask(keep);
}

}  // namespace idealcount
