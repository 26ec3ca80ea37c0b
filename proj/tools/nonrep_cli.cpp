// Command-line front end: input generation, colouring strategies with
// in-process verification, certificate replay/reconstruction, and the
// numeric analysis commands.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nonrep/bounds.hpp"
#include "nonrep/engine.hpp"
#include "nonrep/graph.hpp"
#include "nonrep/io.hpp"
#include "nonrep/pathwidth.hpp"
#include "nonrep/probabilistic.hpp"
#include "nonrep/strategies.hpp"
#include "nonrep/verify.hpp"

using namespace nonrep;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NONREP_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

Graph load_graph(const std::string& path) {
    std::istringstream is(slurp(path));
    return read_graph(is);
}

Graph base_from_spec(const std::string& spec) {
    if (spec == "k2") return complete_graph(2);
    if (spec == "k3") return complete_graph(3);
    if (spec == "k4") return complete_graph(4);
    if (spec == "k5") return complete_graph(5);
    if (spec == "k1_3") return star_graph(3);
    if (spec == "petersen") return petersen_graph();
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        std::string arg = spec.substr(colon + 1);
        if (kind == "path") return path_graph(std::stoi(arg));
        if (kind == "cycle") return cycle_graph(std::stoi(arg));
        if (kind == "star") return star_graph(std::stoi(arg));
        if (kind == "file") return load_graph(arg);
    }
    throw InputError("unknown base graph spec: " + spec);
}

struct ColourOptions {
    std::string strategy;
    std::string graph_file, lists_file, pd_file, meta_file, out_file, dump_file;
    std::uint64_t seed = 0;
    long max_steps = 100000;
    int max_retries = 100;
    long constant_c = 0;  // 0: keep the metadata value
    int list_size = 0;
    bool random_lists_flag = false;
    int list_pool = 0;
    std::string format = "json";
};

SubdividedGraph load_subdivision(const ColourOptions& opt) {
    SubdividedGraph sg = subdivision_from_json(json::parse(slurp(opt.meta_file)));
    if (opt.constant_c > 0 && opt.constant_c != sg.constant_c) {
        std::vector<int> counts;
        for (const auto& p : sg.edge_paths) counts.push_back(static_cast<int>(p.size()));
        sg = subdivide(sg.base, counts, opt.constant_c);
    }
    return sg;
}

ListAssignment resolve_lists(const ColourOptions& opt, int n, int default_size) {
    if (!opt.lists_file.empty()) {
        json j = json::parse(slurp(opt.lists_file));
        return lists_from_json(j, n);
    }
    int size = opt.list_size > 0 ? opt.list_size : default_size;
    if (opt.random_lists_flag) {
        int pool = opt.list_pool > 0 ? opt.list_pool : 2 * size;
        std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
        return random_lists(n, size, pool, rng);
    }
    return ListAssignment::uniform(n, size);
}

struct RunReport {
    std::string strategy;
    std::uint64_t seed = 0;
    long steps = -1;
    int retries = -1;
    int colours_used = 0;
    int width = -1;
    bool success = false;
    bool verified = false;
    std::string dyck;

    json to_json() const {
        json j;
        j["strategy"] = strategy;
        j["success"] = success;
        j["verified"] = verified;
        j["colours_used"] = colours_used;
        if (steps >= 0) j["steps"] = steps;
        if (retries >= 0) j["retries"] = retries;
        if (width >= 0) j["width"] = width;
        if (steps >= 0 || retries >= 0) j["seed"] = seed;
        if (!dyck.empty()) j["dyck"] = dyck;
        return j;
    }

    void print(const std::string& format) const {
        if (format == "json") {
            std::cout << to_json().dump(2) << "\n";
            return;
        }
        std::cout << "strategy: " << strategy << "\n"
                  << "success: " << (success ? "yes" : "no") << "\n"
                  << "verified: " << (verified ? "yes" : "no") << "\n"
                  << "colours used: " << colours_used << "\n";
        if (steps >= 0) std::cout << "steps: " << steps << "\n";
        if (retries >= 0) std::cout << "retries: " << retries << "\n";
        if (width >= 0) std::cout << "width: " << width << "\n";
        if (steps >= 0 || retries >= 0) std::cout << "seed: " << seed << "\n";
        if (!dyck.empty()) std::cout << "dyck: " << dyck << "\n";
    }
};

int count_colours_used(const Colouring& c) {
    std::vector<int> used;
    for (int x : c)
        if (x != 0) used.push_back(x);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return static_cast<int>(used.size());
}

void dump_certificate(const std::string& path, const RunResult& run) {
    json j;
    j["record"] = record_to_json(run.record);
    j["trace"] = trace_to_json(run.trace);
    if (!run.record.empty()) j["dyck"] = dyck_of_record(run.record).str();
    j["inputs"] = run.inputs;
    spit(path, j.dump(2) + "\n");
}

int cmd_colour(const ColourOptions& opt) {
    RunReport report;
    report.strategy = opt.strategy;
    report.seed = opt.seed;
    Colouring colouring;
    Graph host;

    if (opt.strategy == "degree") {
        host = load_graph(opt.graph_file);
        int delta = host.max_degree();
        int def = delta >= 2 ? static_cast<int>(list_size_for_degree(delta)) : delta + 1;
        auto lists = resolve_lists(opt, host.vertex_count(), def);
        auto res = colour_bounded_degree(host, lists, opt.seed, opt.max_steps);
        colouring = res.colouring;
        report.steps = res.run.steps;
        report.colours_used = res.colours_used;
        if (!res.run.record.empty()) report.dyck = dyck_of_record(res.run.record).str();
        if (!opt.dump_file.empty()) dump_certificate(opt.dump_file, res.run);
        report.success = true;
        report.verified = is_nonrepetitive(host, colouring).ok;
    } else if (opt.strategy == "subdivision") {
        SubdividedGraph sg = load_subdivision(opt);
        host = sg.graph;
        auto lists = resolve_lists(opt, host.vertex_count(), 5);
        auto res = colour_subdivision(sg, lists, opt.seed, opt.max_steps);
        colouring = res.colouring;
        report.steps = res.run.steps;
        report.colours_used = res.colours_used;
        if (!res.run.record.empty()) report.dyck = dyck_of_record(res.run.record).str();
        if (!opt.dump_file.empty()) dump_certificate(opt.dump_file, res.run);
        report.success = true;
        report.verified = is_nonrepetitive(host, colouring).ok;
    } else if (opt.strategy == "pathwidth" || opt.strategy == "star") {
        host = load_graph(opt.graph_file);
        std::istringstream ps(slurp(opt.pd_file));
        PathDecomposition pd = read_pd(ps);
        if (opt.strategy == "pathwidth") {
            auto res = colour_pathwidth(host, pd);
            colouring = res.colouring;
            report.width = res.width;
            report.colours_used = res.colours_used;
            report.success = true;
            report.verified = is_nonrepetitive(host, colouring).ok;
        } else {
            auto res = star_colour_pathwidth(host, pd);
            colouring = res.colouring;
            report.width = res.width;
            report.colours_used = res.colours_used;
            report.success = true;
            report.verified = verify_star(host, colouring).ok;
        }
    } else if (opt.strategy == "lll-subdivision") {
        SubdividedGraph sg = load_subdivision(opt);
        host = sg.graph;
        auto lists = resolve_lists(opt, host.vertex_count(), 23);
        long min_div = -1;
        for (const auto& path : sg.edge_paths)
            min_div = min_div < 0 ? static_cast<long>(path.size())
                                  : std::min(min_div, static_cast<long>(path.size()));
        auto res = lll_colour_subdivision(sg, lists, opt.seed, opt.max_retries, min_div);
        colouring = res.colouring;
        report.retries = res.retries;
        report.colours_used = count_colours_used(colouring);
        report.success = true;
        report.verified = is_nonrepetitive(host, colouring).ok;
    } else if (opt.strategy == "caterpillar") {
        host = load_graph(opt.graph_file);
        auto lists = resolve_lists(opt, host.vertex_count(), 148);
        auto res = colour_caterpillar(host, lists, opt.seed, opt.max_retries);
        colouring = res.colouring;
        report.retries = res.retries;
        report.colours_used = count_colours_used(colouring);
        report.success = true;
        report.verified = is_nonrepetitive(host, colouring).ok;
    } else {
        throw InputError("unknown strategy: " + opt.strategy);
    }

    if (!opt.out_file.empty()) spit(opt.out_file, colouring_to_json(colouring).dump(2) + "\n");
    report.print(opt.format);
    return report.success && report.verified ? 0 : 1;
}

PriorityFunction priority_for(const std::string& meta_file, std::optional<SubdividedGraph>& sg_holder) {
    if (meta_file.empty()) return lexicographic_priority();
    sg_holder = subdivision_from_json(json::parse(slurp(meta_file)));
    return subdivision_priority(*sg_holder);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonrepetitive graph colouring toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate graphs, decompositions and words");
    gen->require_subcommand(1);

    long thue_n = 20;
    std::string thue_out;
    auto* gen_thue = gen->add_subcommand("thue", "square-free ternary word");
    gen_thue->add_option("--n", thue_n, "prefix length")->required();
    gen_thue->add_option("--out", thue_out, "output file (default stdout)");

    std::string sub_base = "k2", sub_out = "subdivision";
    long sub_c = 100000;
    int sub_count = 0;
    auto* gen_sub = gen->add_subcommand("subdivision", "subdivide a base graph");
    gen_sub->add_option("--base", sub_base, "k2|k3|k4|k5|k1_3|petersen|path:N|cycle:N|star:N|file:PATH");
    gen_sub->add_option("--constant-c", sub_c, "radius constant");
    gen_sub->add_option("--count", sub_count, "uniform division count override");
    gen_sub->add_option("--out", sub_out, "output prefix");

    int cat_spine = 8, cat_leaves = 2;
    std::uint64_t cat_seed = default_seed();
    std::string cat_out;
    auto* gen_cat = gen->add_subcommand("caterpillar", "random caterpillar");
    gen_cat->add_option("--spine", cat_spine, "spine length");
    gen_cat->add_option("--max-leaves", cat_leaves, "max leaves per spine vertex");
    gen_cat->add_option("--seed", cat_seed, "random seed");
    gen_cat->add_option("--out", cat_out, "output file (default stdout)");

    int pw_k = 2, pw_n = 14, pw_edges = 60;
    std::uint64_t pw_seed = default_seed();
    std::string pw_out = "randompw";
    auto* gen_pw = gen->add_subcommand("random-pw", "random bounded-pathwidth instance");
    gen_pw->add_option("--k", pw_k, "target width bound");
    gen_pw->add_option("--n", pw_n, "vertex count");
    gen_pw->add_option("--seed", pw_seed, "random seed");
    gen_pw->add_option("--edge-percent", pw_edges, "edge probability in percent");
    gen_pw->add_option("--out", pw_out, "output prefix");

    // ---- colour ----
    ColourOptions copt;
    copt.seed = default_seed();
    auto* colour = app.add_subcommand("colour", "run a colouring strategy with verification");
    colour->add_option("--strategy", copt.strategy, "degree|subdivision|pathwidth|star|lll-subdivision|caterpillar")
        ->required();
    colour->add_option("--graph", copt.graph_file, "graph file");
    colour->add_option("--lists", copt.lists_file, "list assignment JSON");
    colour->add_option("--pd", copt.pd_file, "path decomposition file");
    colour->add_option("--meta", copt.meta_file, "subdivision metadata JSON");
    colour->add_option("--seed", copt.seed, "random seed");
    colour->add_option("--max-steps", copt.max_steps, "engine step cap");
    colour->add_option("--max-retries", copt.max_retries, "retry cap");
    colour->add_option("--constant-c", copt.constant_c, "override the metadata radius constant");
    colour->add_option("--list-size", copt.list_size, "generated list size");
    colour->add_flag("--random-lists", copt.random_lists_flag, "sample distinct per-vertex lists");
    colour->add_option("--list-pool", copt.list_pool, "colour pool for sampled lists");
    colour->add_option("--format", copt.format, "json|text");
    colour->add_option("--out", copt.out_file, "write the colouring JSON here");
    colour->add_option("--dump-record", copt.dump_file, "write record/trace/dyck JSON here");

    // ---- verify ----
    std::string ver_graph, ver_col;
    bool ver_star = false;
    auto* verify_cmd = app.add_subcommand("verify", "check a colouring file");
    verify_cmd->add_option("--graph", ver_graph)->required();
    verify_cmd->add_option("--colouring", ver_col)->required();
    verify_cmd->add_flag("--star", ver_star, "check the star property instead");

    // ---- replay ----
    std::string rp_graph, rp_lists, rp_vector, rp_pre, rp_meta, rp_out;
    auto* replay = app.add_subcommand("replay", "run the engine on an explicit input vector");
    replay->add_option("--graph", rp_graph, "graph file (omit when --meta is given)");
    replay->add_option("--lists", rp_lists)->required();
    replay->add_option("--vector", rp_vector)->required();
    replay->add_option("--pre", rp_pre, "precolouring JSON");
    replay->add_option("--meta", rp_meta, "subdivision metadata (switches to its priority)");
    replay->add_option("--out", rp_out, "output file (default stdout)");

    // ---- reconstruct ----
    std::string rc_graph, rc_lists, rc_col, rc_record, rc_pre, rc_meta, rc_out;
    auto* reconstruct = app.add_subcommand("reconstruct", "recover the input vector from (colouring, record)");
    reconstruct->add_option("--graph", rc_graph, "graph file (omit when --meta is given)");
    reconstruct->add_option("--lists", rc_lists)->required();
    reconstruct->add_option("--colouring", rc_col)->required();
    reconstruct->add_option("--record", rc_record)->required();
    reconstruct->add_option("--pre", rc_pre, "precolouring JSON");
    reconstruct->add_option("--meta", rc_meta, "subdivision metadata (switches to its priority)");
    reconstruct->add_option("--out", rc_out, "output file (default stdout)");

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "numeric and enumerative bounds");
    analyze->require_subcommand(1);
    int an_delta = 2, an_t = 8, an_q = 6;
    long an_c = 6, an_T = 10, an_n = 20;
    long an_eps_num = 1, an_eps_den = 1;
    std::string an_preset = "subdivision", an_format = "json";
    analyze->add_option("--format", an_format, "json|text|csv")->capture_default_str();
    auto* an_ell = analyze->add_subcommand("ell", "list size for a maximum degree");
    an_ell->add_option("delta", an_delta)->required();
    auto* an_growth = analyze->add_subcommand("growth", "characteristic root and growth rate");
    an_growth->add_option("delta", an_delta)->required();
    auto* an_coeffs = analyze->add_subcommand("coeffs", "series coefficients of B");
    an_coeffs->add_option("delta", an_delta)->required();
    an_coeffs->add_option("T", an_T)->required();
    auto* an_dyck = analyze->add_subcommand("dyck", "special Dyck word count");
    an_dyck->add_option("t", an_t)->required();
    auto* an_spread = analyze->add_subcommand("spread", "c-spread sequence count");
    an_spread->add_option("q", an_q)->required();
    an_spread->add_option("c", an_c)->required();
    an_spread->add_option("eps-num", an_eps_num, "hypothesis epsilon numerator");
    an_spread->add_option("eps-den", an_eps_den, "hypothesis epsilon denominator");
    auto* an_thue = analyze->add_subcommand("thue", "square-free word prefix");
    an_thue->add_option("n", an_n)->required();
    auto* an_lll = analyze->add_subcommand("lll", "closed-form local lemma presets");
    an_lll->add_option("--preset", an_preset, "subdivision|caterpillar");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_thue->parsed()) {
            auto w = thue_word(thue_n);
            std::string s;
            for (long i = 0; i < thue_n; ++i) s.push_back(static_cast<char>('0' + w[static_cast<std::size_t>(i)]));
            s.push_back('\n');
            if (thue_out.empty()) std::cout << s;
            else spit(thue_out, s);
            return 0;
        }
        if (gen_sub->parsed()) {
            Graph base = base_from_spec(sub_base);
            SubdividedGraph sg = sub_count > 0 ? subdivide_uniform(base, sub_count, sub_c)
                                               : subdivide_required(base, sub_c);
            std::ostringstream gs;
            write_graph(gs, sg.graph);
            spit(sub_out + ".graph.txt", gs.str());
            spit(sub_out + ".meta.json", subdivision_to_json(sg).dump(2) + "\n");
            std::cout << "wrote " << sub_out << ".graph.txt and " << sub_out << ".meta.json ("
                      << sg.graph.vertex_count() << " vertices)\n";
            return 0;
        }
        if (gen_cat->parsed()) {
            Graph g = random_caterpillar(cat_spine, cat_leaves, cat_seed);
            std::ostringstream gs;
            write_graph(gs, g);
            if (cat_out.empty()) std::cout << gs.str();
            else spit(cat_out, gs.str());
            return 0;
        }
        if (gen_pw->parsed()) {
            auto [g, pd] = random_pathwidth_instance(pw_k, pw_n, pw_edges, pw_seed);
            std::ostringstream gs, ps;
            write_graph(gs, g);
            write_pd(ps, pd);
            spit(pw_out + ".graph.txt", gs.str());
            spit(pw_out + ".pd.txt", ps.str());
            std::cout << "wrote " << pw_out << ".graph.txt and " << pw_out << ".pd.txt (width "
                      << validate_pd(g, pd) << ")\n";
            return 0;
        }
        if (colour->parsed()) return cmd_colour(copt);
        if (verify_cmd->parsed()) {
            Graph g = load_graph(ver_graph);
            Colouring c = colouring_from_json(json::parse(slurp(ver_col)), g.vertex_count());
            VerifyResult r = ver_star ? verify_star(g, c) : is_nonrepetitive(g, c);
            json j;
            j["ok"] = r.ok;
            if (r.witness) j["witness"] = *r.witness;
            std::cout << j.dump(2) << "\n";
            return r.ok ? 0 : 1;
        }
        if (replay->parsed()) {
            std::optional<SubdividedGraph> sg;
            PriorityFunction f = priority_for(rp_meta, sg);
            Graph g = sg ? sg->graph : load_graph(rp_graph);
            auto lists = lists_from_json(json::parse(slurp(rp_lists)), g.vertex_count());
            std::istringstream vs(slurp(rp_vector));
            auto vec = read_vector(vs);
            Colouring pre(static_cast<std::size_t>(g.vertex_count()), 0);
            if (!rp_pre.empty()) pre = colouring_from_json(json::parse(slurp(rp_pre)), g.vertex_count());
            auto res = run(g, lists, f, pre, vec);
            json j;
            j["success"] = res.success;
            j["colouring"] = colouring_to_json(res.colouring);
            j["record"] = record_to_json(res.record);
            j["trace"] = trace_to_json(res.trace);
            if (!res.record.empty()) j["dyck"] = dyck_of_record(res.record).str();
            if (rp_out.empty()) std::cout << j.dump(2) << "\n";
            else spit(rp_out, j.dump(2) + "\n");
            return 0;
        }
        if (reconstruct->parsed()) {
            std::optional<SubdividedGraph> sg;
            PriorityFunction f = priority_for(rc_meta, sg);
            Graph g = sg ? sg->graph : load_graph(rc_graph);
            auto lists = lists_from_json(json::parse(slurp(rc_lists)), g.vertex_count());
            Colouring final_phi = colouring_from_json(json::parse(slurp(rc_col)), g.vertex_count());
            Record rec = record_from_json(json::parse(slurp(rc_record)));
            Colouring pre(static_cast<std::size_t>(g.vertex_count()), 0);
            if (!rc_pre.empty()) pre = colouring_from_json(json::parse(slurp(rc_pre)), g.vertex_count());
            auto vec = reconstruct_input(g, lists, f, pre, final_phi, rec);
            std::ostringstream os;
            for (std::size_t i = 0; i < vec.size(); ++i) os << (i ? " " : "") << vec[i];
            os << "\n";
            if (rc_out.empty()) std::cout << os.str();
            else spit(rc_out, os.str());
            return 0;
        }
        if (analyze->parsed()) {
            json j;
            if (an_ell->parsed()) {
                j["delta"] = an_delta;
                j["list_size"] = list_size_for_degree(an_delta);
            } else if (an_growth->parsed()) {
                auto root = characteristic_root(an_delta);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", root.tau);
                j["tau"] = std::string(buf);
                std::snprintf(buf, sizeof buf, "%.12g", root.rho);
                j["rho"] = std::string(buf);
                std::snprintf(buf, sizeof buf, "%.12g", growth_rate(an_delta));
                j["growth_rate"] = std::string(buf);
                j["delta"] = an_delta;
            } else if (an_coeffs->parsed()) {
                auto b = series_B(an_delta, static_cast<int>(an_T));
                if (an_format == "csv") {
                    for (long t = 1; t <= an_T; ++t) {
                        char buf[64];
                        std::snprintf(buf, sizeof buf, "%.12g", b[static_cast<std::size_t>(t)]);
                        std::cout << t << "," << buf << "\n";
                    }
                    return 0;
                }
                j["delta"] = an_delta;
                json arr = json::array();
                for (long t = 1; t <= an_T; ++t) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.12g", b[static_cast<std::size_t>(t)]);
                    arr.push_back(std::string(buf));
                }
                j["coefficients"] = std::move(arr);
            } else if (an_dyck->parsed()) {
                j["t"] = an_t;
                j["special_dyck_words"] = count_special_dyck(an_t).str();
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6g", std::pow(3.992, an_t + 1));
                j["bound"] = std::string(buf);
            } else if (an_spread->parsed()) {
                j["q"] = an_q;
                j["c"] = an_c;
                j["count"] = count_c_spread(an_q, an_c).str();
                j["recurrence_bound"] = spread_recurrence_bound(an_q, an_c);
                SpreadParams params{an_c, Rat(an_eps_num, an_eps_den)};
                j["hypotheses_hold"] = params.hypotheses_hold();
                j["eps"] = std::to_string(an_eps_num) + "/" + std::to_string(an_eps_den);
            } else if (an_thue->parsed()) {
                auto w = thue_word(an_n);
                std::string s;
                for (long i = 0; i < an_n; ++i) s.push_back(static_cast<char>('0' + w[static_cast<std::size_t>(i)]));
                j["n"] = an_n;
                j["word"] = s;
            } else if (an_lll->parsed()) {
                LLLPresetReport rep = an_preset == "caterpillar" ? lll_preset_caterpillar() : lll_preset_subdivision();
                j["preset"] = rep.name;
                j["bound_lo"] = rep.bound_lo.str();
                j["bound_hi"] = rep.bound_hi.str();
                j["threshold"] = rep.threshold.str();
                j["holds"] = rep.holds;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", rep.approx());
                j["approx"] = std::string(buf);
            }
            if (an_format == "text") {
                for (auto it = j.begin(); it != j.end(); ++it)
                    std::cout << it.key() << ": " << it.value().dump() << "\n";
            } else {
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
