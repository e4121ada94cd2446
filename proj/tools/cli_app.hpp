#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "idealcount/analysis.hpp"
#include "idealcount/bounds.hpp"
#include "idealcount/counting.hpp"
#include "idealcount/dag.hpp"
#include "idealcount/graph_gen.hpp"
#include "idealcount/ontology.hpp"
#include "idealcount/oracle.hpp"
#include "idealcount/pivot.hpp"

namespace idealcount {
namespace cli {

using Json = nlohmann::ordered_json;

inline std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::set<std::string> split_set(const std::string& csv) {
    std::set<std::string> out;
    std::string cur;
    std::istringstream ss(csv);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.insert(cur);
    return out;
}

inline std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(csv);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

inline unsigned worker_cap() {
    if (const char* env = std::getenv("IDEALCOUNT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// ---- shared option blocks -----------------------------------------------------

struct InputOptions {
    std::string path;
    std::string format;  // "", "edges", "obo"
    std::string ns;
    std::string relations = "is_a,part_of";
    std::string root_term;  // restrict an ontology to one root's closure

    // filled by load() when the input is an ontology, for alt-id resolution
    mutable std::optional<Ontology> parsed;

    bool is_obo() const {
        if (!format.empty()) return format == "obo";
        return ends_with(path, ".obo");
    }

    void attach(CLI::App* cmd, bool with_obo_opts = true) {
        cmd->add_option("--input,-i", path, "edge-list or OBO file ('-' for stdin)")->required();
        cmd->add_option("--format", format, "input format: edges|obo (default: by extension)")
            ->check(CLI::IsMember({"edges", "obo"}));
        if (with_obo_opts) {
            cmd->add_option("--namespace", ns, "keep only OBO terms of this namespace");
            cmd->add_option("--relations", relations,
                            "comma-separated transitive relations (default is_a,part_of)");
            cmd->add_option("--root-term", root_term,
                            "restrict the ontology to this term and its descendants");
        }
    }

    Dag load(Json* info = nullptr) const {
        std::string text = read_input(path);
        if (!is_obo()) {
            Dag d = parse_edge_list(text);
            if (info) (*info)["format"] = "edges";
            return d;
        }
        parsed = parse_obo(text, split_set(relations), ns);
        Dag d = parsed->dag;
        if (!root_term.empty()) {
            auto keep = d.descendants(root_term, true);
            d = d.induced_subgraph(keep);
        }
        if (info) {
            (*info)["format"] = "obo";
            (*info)["obsolete_terms"] = parsed->obsolete_terms;
            (*info)["dangling_edges"] = parsed->dangling_edges;
        }
        return d;
    }

    Ontology load_ontology() const {
        return parse_obo(read_input(path), split_set(relations), ns);
    }
};

struct EngineOptions {
    std::string pivot = "degree";
    bool no_prune = false;
    bool no_hash = false;
    bool no_reverse = false;
    std::uint64_t seed = 0;
    long long timeout_ms = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--pivot", pivot, "pivot strategy: random|mpv|degree|bound|bottleneck");
        cmd->add_flag("--no-prune", no_prune, "disable branching-component pruning");
        cmd->add_flag("--no-hash", no_hash, "disable memoization");
        cmd->add_flag("--no-reverse", no_reverse, "disable graph reversal");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--timeout", timeout_ms, "per-count budget in milliseconds (0: none)");
    }

    CounterConfig config() const {
        return {parse_pivot_strategy(pivot), !no_prune, !no_hash, !no_reverse, seed};
    }
};

struct CorpusOptions {
    std::string path;
    std::string format;  // "", "gaf", "tsv"
    std::string evidence;
    std::size_t gene_column = 0;
    std::size_t term_column = 1;
    std::string used_mode = "propagated";

    void attach(CLI::App* cmd, bool required = false) {
        auto* o = cmd->add_option("--annotations", path, "GAF or gene-term TSV file");
        if (required) o->required();
        cmd->add_option("--annotations-format", format, "gaf|tsv (default: by extension)")
            ->check(CLI::IsMember({"gaf", "tsv"}));
        cmd->add_option("--evidence", evidence,
                        "comma-separated GAF evidence codes (default EXP,IDA,IPI,IMP,IGI,IEP,TAS,IC)");
        cmd->add_option("--gene-column", gene_column, "entity column for TSV input (0-based)");
        cmd->add_option("--term-column", term_column, "term column for TSV input (0-based)");
        cmd->add_option("--used-mode", used_mode, "direct|propagated term usage for filtering")
            ->check(CLI::IsMember({"direct", "propagated"}));
    }

    bool given() const { return !path.empty(); }

    AnnotationCorpus load(const std::optional<Ontology>& onto = std::nullopt) const {
        std::string text = read_input(path);
        bool gaf = format.empty() ? ends_with(path, ".gaf") : format == "gaf";
        AnnotationCorpus c = gaf ? parse_gaf(text, evidence.empty() ? kDefaultEvidenceCodes
                                                                    : split_set(evidence))
                                 : parse_gene_tsv(text, gene_column, term_column);
        if (!onto) return c;
        // map alt ids onto primary ids; unknown ids stay and are tallied later
        AnnotationCorpus resolved = c;
        resolved.entity_terms.clear();
        for (const auto& [entity, terms] : c.entity_terms) {
            auto& dst = resolved.entity_terms[entity];
            for (const auto& t : terms) {
                auto r = onto->resolve(t);
                dst.insert(r ? *r : t);
            }
        }
        return resolved;
    }

    // Corpus as used for filtering/entropy: propagated unless direct mode.
    AnnotationCorpus load_for(const Dag& d, const std::optional<Ontology>& onto) const {
        AnnotationCorpus c = load(onto);
        if (used_mode == "propagated") return propagate(c, d);
        return c;
    }
};

// ---- JSON helpers ------------------------------------------------------------------

inline Json report_json(const CountReport& rep) {
    Json j;
    j["count"] = rep.count.str();
    j["recursive_calls"] = rep.recursive_calls;
    j["memo_hits"] = rep.memo_hits;
    j["memo_entries"] = rep.memo_entries;
    j["reversals"] = rep.reversals;
    j["prunes"] = rep.prunes;
    j["wall_time_ms"] = rep.wall_time.count();
    return j;
}

inline Json level_entry_json(const LevelEntry& e) {
    Json j;
    j["n"] = e.stats.n;
    j["e"] = e.stats.e;
    j["leaves"] = e.stats.leaves;
    j["roots"] = e.stats.roots;
    j["multi_parent"] = e.stats.multi_parent;
    j["count"] = e.exact ? Json(e.exact->str()) : Json(nullptr);
    j["timed_out"] = e.timed_out;
    j["lower"] = e.lower.str();
    j["upper"] = e.upper.str();
    return j;
}

// ---- subcommand bodies ------------------------------------------------------------

inline int cmd_count(const InputOptions& in, const EngineOptions& eng, const CorpusOptions& corpus,
                     int level, bool used, std::ostream& out) {
    Json j;
    j["input"] = in.path;
    Dag d = in.load(&j);

    if (used) {
        if (!corpus.given()) throw Error("--used requires --annotations");
        d = used_subontology(d, corpus.load_for(d, in.parsed));
    }
    if (level >= 0) d = truncate_to_level(d, level);

    auto s = d.stats();
    j["n"] = s.n;
    j["e"] = s.e;
    j["config"] = {{"pivot", eng.pivot},
                   {"pruning", !eng.no_prune},
                   {"hashing", !eng.no_hash},
                   {"reversal", !eng.no_reverse},
                   {"seed", eng.seed}};

    if (eng.timeout_ms > 0) {
        auto rep = cdag_with_deadline(d, eng.config(), std::chrono::milliseconds(eng.timeout_ms));
        if (!rep) {
            j["count"] = nullptr;
            j["timed_out"] = true;
            out << j.dump(2) << "\n";
            return 0;
        }
        j.update(report_json(*rep));
        j["timed_out"] = false;
    } else {
        j.update(report_json(cdag(d, eng.config())));
        j["timed_out"] = false;
    }
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_oracle(const InputOptions& in, bool enumerate, bool all_subsets,
                      std::ostream& out) {
    Dag d = in.load();
    Json j;
    j["input"] = in.path;
    j["n"] = d.vertex_count();
    if (all_subsets)
        j["count"] = oracle::brute_force_count_all_subsets(d).str();
    else
        j["count"] = oracle::brute_force_count(d).str();
    if (enumerate) {
        Json sets = Json::array();
        for (const auto& s : oracle::brute_force_enumerate(d)) sets.push_back(s);
        j["sets"] = std::move(sets);
    }
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_bounds(const InputOptions& in, unsigned trials, std::uint64_t seed,
                      std::ostream& out) {
    Dag d = in.load();
    Count lower = lower_bound(d);

    // trials are independent; fan out up to the worker cap and take the min
    unsigned workers = std::min<unsigned>(worker_cap(), std::max(1u, trials));
    Count upper;
    if (workers <= 1 || trials <= 1) {
        upper = upper_bound_forest_trials(d, seed, std::max(1u, trials));
    } else {
        std::vector<std::future<Count>> futs;
        for (unsigned t = 0; t < trials; ++t)
            futs.push_back(std::async(std::launch::async | std::launch::deferred,
                                      [&d, seed, t] { return upper_bound_forest(d, seed + t); }));
        bool have = false;
        for (auto& f : futs) {
            Count c = f.get();
            if (!have || c < upper) {
                upper = c;
                have = true;
            }
        }
    }

    Json j;
    j["input"] = in.path;
    j["lower"] = lower.str();
    j["upper"] = upper.str();
    j["trials"] = std::max(1u, trials);
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_gen(std::uint32_t n, std::uint32_t count, std::uint64_t seed,
                   const std::string& out_dir, std::ostream& out) {
    Json files = Json::array();
    for (std::uint32_t i = 0; i < count; ++i) {
        Dag d = gen::generate_random_dag(n, detail::mix_seed(seed, i));
        std::string name = "dag_n" + std::to_string(n) + "_s" + std::to_string(seed) + "_" +
                           std::to_string(i) + ".edges";
        std::string path = out_dir.empty() ? name : out_dir + "/" + name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path);
        f << "# generated dag: n=" << n << " seed=" << seed << " index=" << i << "\n";
        f << to_edge_list(d);
        files.push_back(path);
    }
    Json j;
    j["n"] = n;
    j["count"] = count;
    j["seed"] = seed;
    j["files"] = std::move(files);
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_bench(std::uint32_t n, std::uint32_t graphs, std::uint64_t seed,
                     const std::string& strategies, const std::string& configs,
                     long long timeout_ms, bool csv, std::ostream& out) {
    BenchOptions opt;
    opt.seed = seed;
    opt.timeout = std::chrono::milliseconds(timeout_ms);
    opt.graph_set = "n=" + std::to_string(n) + ",graphs=" + std::to_string(graphs) +
                    ",seed=" + std::to_string(seed);
    if (!strategies.empty()) {
        opt.strategies.clear();
        for (const auto& s : split_list(strategies)) opt.strategies.push_back(parse_pivot_strategy(s));
    }
    if (!configs.empty()) {
        opt.rows.clear();
        for (const auto& r : split_list(configs)) opt.rows.push_back(parse_module_row(r));
    }

    std::vector<Dag> set;
    set.reserve(graphs);
    for (std::uint32_t i = 0; i < graphs; ++i)
        set.push_back(gen::generate_random_dag(n, detail::mix_seed(seed, i)));

    auto records = benchmark(set, opt);

    if (csv) {
        out << "strategy,config,graphs,completed,timeouts,mean_recursive_calls,mean_wall_ms\n";
        for (const auto& r : records)
            out << to_string(r.strategy) << "," << to_string(r.row) << "," << r.graphs << ","
                << r.completed << "," << r.timeouts << "," << r.mean_recursive_calls << ","
                << r.mean_wall_ms << "\n";
        return 0;
    }
    Json j;
    j["graph_set"] = opt.graph_set;
    Json recs = Json::array();
    for (const auto& r : records) {
        Json rec;
        rec["strategy"] = to_string(r.strategy);
        rec["config"] = to_string(r.row);
        rec["graphs"] = r.graphs;
        rec["completed"] = r.completed;
        rec["timeouts"] = r.timeouts;
        rec["mean_recursive_calls"] = r.mean_recursive_calls;
        rec["mean_wall_ms"] = r.mean_wall_ms;
        recs.push_back(std::move(rec));
    }
    j["records"] = std::move(recs);
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_levels(const InputOptions& in, const EngineOptions& eng,
                      const CorpusOptions& corpus, int max_level, long long budget_ms,
                      unsigned trials, bool csv, bool plot_data, std::ostream& out) {
    Dag d = in.load();
    std::optional<AnnotationCorpus> c;
    if (corpus.given()) c = corpus.load_for(d, in.parsed);

    ProfileOptions opt;
    opt.max_level = max_level;
    opt.budget = std::chrono::milliseconds(budget_ms);
    opt.config = eng.config();
    opt.upper_bound_trials = std::max(1u, trials);
    opt.seed = eng.seed;

    LevelProfile profile = levelwise_profile(d, c ? &*c : nullptr, opt);

    if (csv || plot_data) {
        out << "level,n,e,count,lower,upper,used_n,used_count,used_lower,used_upper\n";
        for (const auto& row : profile.rows) {
            out << row.level << "," << row.full.stats.n << "," << row.full.stats.e << ","
                << (row.full.exact ? row.full.exact->str() : "") << "," << row.full.lower.str()
                << "," << row.full.upper.str() << ",";
            if (row.used) {
                out << row.used->stats.n << ","
                    << (row.used->exact ? row.used->exact->str() : "") << ","
                    << row.used->lower.str() << "," << row.used->upper.str();
            } else {
                out << ",,,";
            }
            out << "\n";
        }
        return 0;
    }

    Json rows = Json::array();
    for (const auto& row : profile.rows) {
        Json r;
        r["level"] = row.level;
        r["full"] = level_entry_json(row.full);
        r["used"] = row.used ? level_entry_json(*row.used) : Json(nullptr);
        rows.push_back(std::move(r));
    }
    Json j;
    j["input"] = in.path;
    j["levels"] = std::move(rows);
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_entropy(const InputOptions& in, const EngineOptions& eng,
                       const CorpusOptions& corpus, int max_level, long long budget_ms,
                       unsigned trials, bool csv, std::ostream& out) {
    Dag d = in.load();
    AnnotationCorpus c = propagate(corpus.load(in.parsed), d);  // entropy always needs closure

    ProfileOptions opt;
    opt.max_level = max_level;
    opt.budget = std::chrono::milliseconds(budget_ms);
    opt.config = eng.config();
    opt.upper_bound_trials = std::max(1u, trials);
    opt.seed = eng.seed;

    auto rows = entropy_ratio_profile(c, d, opt);
    if (csv) {
        out << "level,observed_bits,max_bits,ratio,est_ratio,est_lo,est_hi\n";
        for (const auto& r : rows) {
            out << r.level << "," << r.observed_bits << ","
                << (r.max_bits ? std::to_string(*r.max_bits) : "") << ","
                << (r.ratio ? std::to_string(*r.ratio) : "") << "," << r.est_ratio << ","
                << r.est_lo << "," << r.est_hi << "\n";
        }
        return 0;
    }
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["level"] = r.level;
        row["observed_bits"] = r.observed_bits;
        row["max_bits"] = r.max_bits ? Json(*r.max_bits) : Json(nullptr);
        row["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
        row["est_ratio"] = r.est_ratio;
        row["est_lo"] = r.est_lo;
        row["est_hi"] = r.est_hi;
        arr.push_back(std::move(row));
    }
    Json j;
    j["input"] = in.path;
    j["entities"] = c.entity_terms.size();
    j["rows"] = std::move(arr);
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_obo_stats(const InputOptions& in, std::ostream& out) {
    Ontology onto = in.load_ontology();
    auto s = onto.dag.stats();
    Json j;
    j["input"] = in.path;
    j["terms"] = onto.terms.size();
    j["edges"] = s.e;
    j["roots"] = s.roots;
    j["leaves"] = s.leaves;
    j["multi_parent"] = s.multi_parent;
    j["obsolete_terms"] = onto.obsolete_terms;
    j["dangling_edges"] = onto.dangling_edges;
    j["ignored_relationship_edges"] = onto.ignored_relationship_edges;
    j["alt_ids"] = onto.alt_ids.size();
    Json ns;
    for (const auto& [name, count] : onto.namespace_counts) ns[name.empty() ? "(none)" : name] = count;
    j["namespaces"] = std::move(ns);
    out << j.dump(2) << "\n";
    return 0;
}

// ---- entry point ----------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"exact counting of consistent (ancestor-closed) subgraphs of DAGs"};
    app.require_subcommand(1);

    // count
    auto* count_cmd = app.add_subcommand("count", "count consistent subgraphs");
    InputOptions count_in;
    EngineOptions count_eng;
    CorpusOptions count_corpus;
    int count_level = -1;
    bool count_used = false;
    count_in.attach(count_cmd);
    count_eng.attach(count_cmd);
    count_corpus.attach(count_cmd);
    count_cmd->add_option("--level", count_level, "truncate to this annotation level first");
    count_cmd->add_flag("--used", count_used, "restrict to terms used by the annotation corpus");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force count/enumeration (small graphs)");
    InputOptions oracle_in;
    bool oracle_enum = false, oracle_all = false;
    oracle_in.attach(oracle_cmd);
    oracle_cmd->add_flag("--enumerate", oracle_enum, "list the consistent subgraphs");
    oracle_cmd->add_flag("--all-subsets", oracle_all, "check all 2^n subsets instead");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "lower/upper bounds on the count");
    InputOptions bounds_in;
    unsigned bounds_trials = 1;
    std::uint64_t bounds_seed = 0;
    bounds_in.attach(bounds_cmd);
    bounds_cmd->add_option("--trials", bounds_trials, "forest samples; the minimum is reported");
    bounds_cmd->add_option("--seed", bounds_seed, "random seed");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate random DAG edge-list files");
    std::uint32_t gen_n = 25, gen_count = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_out_dir = ".";
    gen_cmd->add_option("--n", gen_n, "vertices per graph")->required();
    gen_cmd->add_option("--count", gen_count, "number of graphs");
    gen_cmd->add_option("--seed", gen_seed, "corpus seed");
    gen_cmd->add_option("--out-dir", gen_out_dir, "output directory");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "module-by-strategy benchmark grid");
    std::uint32_t bench_n = 25, bench_graphs = 100;
    std::uint64_t bench_seed = 0;
    std::string bench_strategies, bench_configs;
    long long bench_timeout = 0;
    bool bench_csv = false;
    bench_cmd->add_option("--n", bench_n, "vertices per graph");
    bench_cmd->add_option("--graphs", bench_graphs, "graphs per cell");
    bench_cmd->add_option("--seed", bench_seed, "corpus seed");
    bench_cmd->add_option("--strategies", bench_strategies,
                          "subset of random,mpv,bound,degree,bottleneck");
    bench_cmd->add_option("--configs", bench_configs,
                          "subset of basic,prune,prune+hash,prune+hash+reverse");
    bench_cmd->add_option("--timeout", bench_timeout, "per-graph budget in ms (0: none)");
    bench_cmd->add_flag("--csv", bench_csv, "emit CSV instead of JSON");

    // levels
    auto* levels_cmd = app.add_subcommand("levels", "level-wise counting profile");
    InputOptions levels_in;
    EngineOptions levels_eng;
    CorpusOptions levels_corpus;
    int levels_max = -1;
    long long levels_budget = 0;
    unsigned levels_trials = 1;
    bool levels_csv = false, levels_plot = false;
    levels_in.attach(levels_cmd);
    levels_eng.attach(levels_cmd);
    levels_corpus.attach(levels_cmd);
    levels_cmd->add_option("--max-level", levels_max, "deepest level to profile");
    levels_cmd->add_option("--budget", levels_budget, "per-level counting budget in ms (0: none)");
    levels_cmd->add_option("--trials", levels_trials, "forest samples for the upper bound");
    levels_cmd->add_flag("--csv", levels_csv, "emit CSV instead of JSON");
    levels_cmd->add_flag("--plot-data", levels_plot, "emit per-level rows for external plotting");

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy-ratio profile of annotations");
    InputOptions entropy_in;
    EngineOptions entropy_eng;
    CorpusOptions entropy_corpus;
    int entropy_max = -1;
    long long entropy_budget = 0;
    unsigned entropy_trials = 1;
    bool entropy_csv = false;
    entropy_in.attach(entropy_cmd);
    entropy_eng.attach(entropy_cmd);
    entropy_corpus.attach(entropy_cmd, /*required=*/true);
    entropy_cmd->add_option("--max-level", entropy_max, "deepest level to profile");
    entropy_cmd->add_option("--budget", entropy_budget, "per-level counting budget in ms");
    entropy_cmd->add_option("--trials", entropy_trials, "forest samples for the upper bound");
    entropy_cmd->add_flag("--csv", entropy_csv, "emit CSV instead of JSON");

    // obo-stats
    auto* obo_cmd = app.add_subcommand("obo-stats", "term/edge/namespace tallies of an OBO file");
    InputOptions obo_in;
    obo_in.attach(obo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*count_cmd)
            return cmd_count(count_in, count_eng, count_corpus, count_level, count_used, out);
        if (*oracle_cmd) return cmd_oracle(oracle_in, oracle_enum, oracle_all, out);
        if (*bounds_cmd) return cmd_bounds(bounds_in, bounds_trials, bounds_seed, out);
        if (*gen_cmd) return cmd_gen(gen_n, gen_count, gen_seed, gen_out_dir, out);
        if (*bench_cmd)
            return cmd_bench(bench_n, bench_graphs, bench_seed, bench_strategies, bench_configs,
                             bench_timeout, bench_csv, out);
        if (*levels_cmd)
            return cmd_levels(levels_in, levels_eng, levels_corpus, levels_max, levels_budget,
                              levels_trials, levels_csv, levels_plot, out);
        if (*entropy_cmd)
            return cmd_entropy(entropy_in, entropy_eng, entropy_corpus, entropy_max,
                               entropy_budget, entropy_trials, entropy_csv, out);
        if (*obo_cmd) return cmd_obo_stats(obo_in, out);
    } catch (const CountMismatch& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        err << e.graph_edge_list;
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace cli
}  // namespace idealcount
