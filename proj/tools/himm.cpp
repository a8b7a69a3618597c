#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "himm/divisions.hpp"
#include "himm/engine.hpp"
#include "himm/io.hpp"
#include "himm/isomorphism.hpp"
#include "himm/transforms.hpp"

using namespace himm;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kYes = 0, kNo = 1, kError = 2, kUnknown = 3 };

struct RunConfig {
    std::string method = "pipeline";
    std::optional<std::uint64_t> M;
    std::optional<std::uint64_t> L;
    std::string mode = "pin";
    std::string divisions = "full";
    std::uint64_t budget = 0;
    double timeout = 0;
    unsigned threads = 1;
    std::string witness;
};

int exit_for(Answer a) {
    switch (a) {
        case Answer::Yes: return kYes;
        case Answer::No: return kNo;
        case Answer::Unknown: return kUnknown;
    }
    return kError;
}

void add_run_options(CLI::App* cmd, RunConfig& cfg, bool with_method) {
    if (with_method)
        cmd->add_option("--method", cfg.method, "pipeline, oracle or both")
            ->check(CLI::IsMember({"pipeline", "oracle", "both"}));
    cmd->add_option("--M", cfg.M, "duplicate count override");
    cmd->add_option("--L", cfg.L, "clique size override (literal mode)");
    cmd->add_option("--mode", cfg.mode, "pin or literal")->check(CLI::IsMember({"pin", "literal"}));
    cmd->add_option("--divisions", cfg.divisions, "full or star")->check(CLI::IsMember({"full", "star"}));
    cmd->add_option("--budget", cfg.budget, "expansion limit per embedding test (0 = none; default $HIMM_BUDGET)");
    cmd->add_option("--timeout", cfg.timeout, "wall-clock limit in seconds (0 = none)");
    cmd->add_option("--threads", cfg.threads, "worker threads for division members");
    cmd->add_option("--witness", cfg.witness, "write the witness JSON here on yes");
}

EngineOptions engine_options(const RunConfig& cfg) {
    EngineOptions o;
    o.M = cfg.M;
    o.L = cfg.L;
    o.mode = cfg.mode == "literal" ? DensifyMode::Literal : DensifyMode::Pin;
    o.divisions = cfg.divisions == "star" ? DivisionMode::StarOnly : DivisionMode::Full;
    o.limits.max_expansions = cfg.budget;
    if (cfg.timeout > 0)
        o.limits.deadline = std::chrono::steady_clock::now() +
                            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(cfg.timeout));
    o.threads = std::max(1u, cfg.threads);
    return o;
}

bool disagree(Answer a, Answer b) {
    return (a == Answer::Yes && b == Answer::No) || (a == Answer::No && b == Answer::Yes);
}

int report(const Decision& d, const RunConfig& cfg, bool dual) {
    std::cout << decision_json(d);
    if (d.answer == Answer::Yes && !cfg.witness.empty()) {
        if (dual && d.dual_witness) {
            write_file(cfg.witness, dual_witness_json(*d.dual_witness));
        } else if (d.witness) {
            write_file(cfg.witness, witness_json(*d.witness));
        }
    }
    return exit_for(d.answer);
}

int run_both(const Decision& p, const Decision& o, const RunConfig& cfg, bool dual) {
    if (disagree(p.answer, o.answer)) {
        std::cerr << "methods disagree: pipeline=" << to_string(p.answer) << " oracle=" << to_string(o.answer) << "\n";
        return kError;
    }
    json j = json::object();
    Answer a = p.answer != Answer::Unknown ? p.answer : o.answer;
    j["answer"] = std::string(to_string(a));
    j["pipeline"] = json::parse(decision_json(p));
    j["oracle"] = json::parse(decision_json(o));
    std::cout << j.dump() << "\n";
    const Decision& w = p.answer == Answer::Yes ? p : o;
    if (a == Answer::Yes && !cfg.witness.empty()) {
        if (dual && w.dual_witness) {
            write_file(cfg.witness, dual_witness_json(*w.dual_witness));
        } else if (w.witness) {
            write_file(cfg.witness, witness_json(*w.witness));
        }
    }
    return exit_for(a);
}

int cmd_check(const std::string& hf, const std::string& gf, const RunConfig& cfg) {
    Hypergraph h = parse_hypergraph(read_file(hf));
    Hypergraph g = parse_hypergraph(read_file(gf));
    EngineOptions opts = engine_options(cfg);
    if (cfg.method == "oracle") return report(immersion_oracle(h, g, opts.limits), cfg, false);
    if (cfg.method == "pipeline") return report(decide_immersion(h, g, opts), cfg, false);
    Decision p = decide_immersion(h, g, opts);
    Decision o = immersion_oracle(h, g, opts.limits);
    return run_both(p, o, cfg, false);
}

int cmd_dual(const std::string& xf, const std::string& yf, const RunConfig& cfg) {
    Hypergraph x = parse_hypergraph(read_file(xf));
    Hypergraph y = parse_hypergraph(read_file(yf));
    EngineOptions opts = engine_options(cfg);
    if (cfg.method == "oracle") return report(decide_dual_immersion(x, y, opts, Method::Oracle), cfg, true);
    if (cfg.method == "pipeline") return report(decide_dual_immersion(x, y, opts, Method::Pipeline), cfg, true);
    Decision p = decide_dual_immersion(x, y, opts, Method::Pipeline);
    Decision o = decide_dual_immersion(x, y, opts, Method::Oracle);
    return run_both(p, o, cfg, true);
}

int cmd_divisions(const std::string& hf, bool count_only, bool star_only, const std::string& out_dir,
                  std::size_t max_edge) {
    Hypergraph h = parse_hypergraph(read_file(hf));
    DivisionCaps caps;
    caps.max_edge_size = max_edge;
    DivisionSet ds = division_set(h, star_only ? DivisionMode::StarOnly : DivisionMode::Full, caps);
    if (count_only) {
        std::cout << ds.members.size() << "\n";
        return 0;
    }
    std::filesystem::path dir(out_dir);
    for (std::size_t i = 0; i < ds.members.size(); ++i) {
        const DivisionPattern& m = ds.members[i];
        std::string stem = "member-" + std::to_string(i);
        write_file(dir / (stem + ".json"), hypergraph_json(realize_division(h, m.choice)));
        write_file(dir / (stem + ".dot"), to_dot(m.graph, "D" + std::to_string(i)));
    }
    std::cout << ds.members.size() << "\n";
    return 0;
}

struct TransformFlags {
    bool factor = false;
    std::optional<std::uint64_t> m_factor;
    std::optional<std::uint64_t> densify;
    std::optional<std::uint64_t> M;
    bool dual = false;
    std::string out;
    std::string dot;
};

int cmd_transform(const std::string& gf, const TransformFlags& f) {
    Hypergraph g = parse_hypergraph(read_file(gf));
    int chosen = int(f.factor) + int(f.m_factor.has_value()) + int(f.densify.has_value()) + int(f.dual);
    if (chosen != 1) throw Error(ErrorCode::InvalidArgument, "choose exactly one of --factor, --m-factor, --densify, --dual");
    const std::uint64_t nv = g.vertex_count();
    const std::uint64_t ne = g.edge_count();
    std::string text;
    std::optional<LabeledGraph> lg;
    if (f.dual) {
        TransposeResult t = transpose(g);
        text = hypergraph_json(t.graph);
        std::cerr << "transpose: vertices=" << t.graph.vertex_count() << " (|E(G)|=" << ne << ") edges="
                  << t.graph.edge_count() << " (|V(G)|-isolated=" << nv - t.dropped.size() << ")";
        if (!t.dropped.empty()) std::cerr << " dropped isolated vertices=" << t.dropped.size();
        std::cerr << "\n";
    } else if (f.factor) {
        lg = factor_graph(g);
        std::cerr << "factor graph: nodes=" << lg->node_count() << " expected |V|+|E|=" << nv + ne
                  << " links=" << lg->link_count() << " expected incidences=" << g.incidence_count() << "\n";
    } else if (f.m_factor) {
        const std::uint64_t M = *f.m_factor;
        if (M == 0) throw Error(ErrorCode::InvalidArgument, "M must be positive");
        lg = m_factor_graph(g, M);
        std::cerr << "m-factor graph: nodes=" << lg->node_count() << " expected M|V|+|E|=" << M * nv + ne
                  << " links=" << lg->link_count() << " expected M*incidences=" << M * g.incidence_count() << "\n";
    } else {
        const std::uint64_t L = *f.densify;
        const std::uint64_t M = f.M.value_or(1);
        if (L < 1 || M == 0) throw Error(ErrorCode::InvalidArgument, "need L >= 1 and M >= 1");
        LabeledGraph base = m_factor_graph(g, M);
        lg = densify(base, first_duplicates(base), L);
        std::cerr << "densified graph: nodes=" << lg->node_count() << " expected M|V|+|E|+(L-1)|V|="
                  << M * nv + ne + (L - 1) * nv << "\n";
    }
    if (lg) text = labeled_graph_json(*lg);
    if (f.out.empty()) {
        std::cout << text;
    } else {
        write_file(f.out, text);
    }
    if (!f.dot.empty()) {
        if (!lg) lg = factor_graph(transpose(g).graph);
        write_file(f.dot, to_dot(*lg));
    }
    return 0;
}

int cmd_verify(const std::string& hf, const std::string& gf, const std::string& wf) {
    Hypergraph h = parse_hypergraph(read_file(hf));
    Hypergraph g = parse_hypergraph(read_file(gf));
    ImmersionWitness w = parse_witness(read_file(wf));
    VerificationReport r = verify_immersion(h, g, w);
    if (!r.ok) {
        for (const auto& v : r.violations) std::cout << v << "\n";
        return kNo;
    }
    json j = json::object();
    j["ok"] = true;
    if (w.replay) {
        Hypergraph fin = apply_sequence(g, *w.replay);
        auto iso = find_isomorphism(h, fin);
        if (!iso) {
            std::cout << "replay result is not isomorphic to H\n";
            return kNo;
        }
        json vm = json::object();
        json em = json::object();
        for (std::size_t i = 0; i < iso->vertex_map.size(); ++i)
            vm[h.vertex(static_cast<int>(i))] = fin.vertex(iso->vertex_map[i]);
        for (std::size_t i = 0; i < iso->edge_map.size(); ++i)
            em[h.edge(static_cast<int>(i)).id] = fin.edge(iso->edge_map[i]).id;
        j["replaySteps"] = w.replay->size();
        j["isomorphism"] = {{"vertices", vm}, {"edges", em}};
    }
    std::cout << j.dump() << "\n";
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypergraph immersion toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* b = std::getenv("HIMM_BUDGET")) {
        try {
            cfg.budget = std::stoull(b);
        } catch (const std::exception&) {
            std::cerr << "HIMM_BUDGET is not a number: " << b << "\n";
            return kError;
        }
    }
    std::string hf, gf, wf;

    auto* check = app.add_subcommand("check", "decide whether H is immersed in G");
    check->add_option("H", hf, "H hypergraph JSON")->required();
    check->add_option("G", gf, "G hypergraph JSON")->required();
    add_run_options(check, cfg, true);

    auto* oracle = app.add_subcommand("oracle", "decide by direct search over the definition");
    oracle->add_option("H", hf)->required();
    oracle->add_option("G", gf)->required();
    oracle->add_option("--budget", cfg.budget, "expansion limit (0 = none)");
    oracle->add_option("--timeout", cfg.timeout, "wall-clock limit in seconds");
    oracle->add_option("--witness", cfg.witness, "write the witness JSON here on yes");

    bool count_only = false, star_only = false;
    std::string out_dir = "divisions";
    std::size_t max_edge = DivisionCaps{}.max_edge_size;
    auto* divs = app.add_subcommand("divisions", "enumerate the division set of H");
    divs->add_option("H", hf)->required();
    divs->add_flag("--count-only", count_only, "print only the number of members");
    divs->add_flag("--star-only", star_only, "restrict to the all-star division");
    divs->add_option("--out-dir", out_dir, "directory for member-<i>.json / .dot");
    divs->add_option("--max-edge", max_edge, "largest hyperedge size accepted");

    TransformFlags tf;
    auto* trans = app.add_subcommand("transform", "build factor graphs, densified graphs or the transpose");
    trans->add_option("G", gf)->required();
    trans->add_flag("--factor", tf.factor);
    trans->add_option("--m-factor", tf.m_factor, "M-generalised factor graph");
    trans->add_option("--densify", tf.densify, "L-clique densification of the M-factor graph");
    trans->add_option("--M", tf.M, "duplicate count used with --densify (default 1)");
    trans->add_flag("--dual", tf.dual, "transpose");
    trans->add_option("-o,--out", tf.out, "output file (default stdout)");
    trans->add_option("--dot", tf.dot, "also write Graphviz output here");

    auto* dual = app.add_subcommand("dual", "decide whether X is dual-immersed in Y");
    dual->add_option("X", hf)->required();
    dual->add_option("Y", gf)->required();
    add_run_options(dual, cfg, true);

    auto* verify = app.add_subcommand("verify", "check a witness against the definition");
    verify->add_option("H", hf)->required();
    verify->add_option("G", gf)->required();
    verify->add_option("witness", wf)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*check) return cmd_check(hf, gf, cfg);
        if (*oracle) {
            cfg.method = "oracle";
            return cmd_check(hf, gf, cfg);
        }
        if (*divs) return cmd_divisions(hf, count_only, star_only, out_dir, max_edge);
        if (*trans) return cmd_transform(gf, tf);
        if (*dual) return cmd_dual(hf, gf, cfg);
        if (*verify) return cmd_verify(hf, gf, wf);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
