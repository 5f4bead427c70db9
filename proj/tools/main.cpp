#include "buneman/check.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

using namespace buneman;

namespace {

struct Common {
    std::string input;
    bool verify = false;
    std::string strategy = "incremental";
    int max_splits = 24;
    unsigned seed = 20260814;
};

void add_common(CLI::App* cmd, Common& c, bool need_input) {
    CLI::Option* in = cmd->add_option("input", c.input, "split file");
    if (need_input) in->required();
    cmd->add_flag("--verify", c.verify, "enable assertion postconditions");
    cmd->add_option("--strategy", c.strategy, "enumeration strategy")
        ->check(CLI::IsMember({"brute", "incremental"}));
    cmd->add_option("--max-splits", c.max_splits, "split-count cap for brute enumeration");
    cmd->add_option("--seed", c.seed, "seed for sampled checks");
}

EnumerationOptions enum_opts(const Common& c) {
    EnumerationOptions opts;
    opts.strategy = c.strategy == "brute" ? Strategy::brute : Strategy::incremental;
    opts.max_splits = c.max_splits;
    opts.verify = c.verify;
    return opts;
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorCode::syntax_error, "cannot write '" + path + "'");
    out << text;
}

std::string split_list(const SplitSystem& sys, const std::vector<int>& splits) {
    std::string out;
    for (std::size_t i = 0; i < splits.size(); ++i) {
        if (i) out += ' ';
        out += "S" + std::to_string(splits[i]) + sys.split_repr(splits[i]);
    }
    return out;
}

std::string id_list(const char* prefix, const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ' ';
        out += prefix + std::to_string(ids[i]);
    }
    return out;
}

std::string element_list(const GroundSet& ground, const std::vector<int>& elements) {
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ' ';
        out += ground.label(elements[i]);
    }
    return out;
}

int cmd_graph(const Common& c, const std::string& dot, const std::string& json) {
    SystemPtr sys = load_split_file(c.input);
    BunemanGraph g = BunemanGraph::enumerate(sys, enum_opts(c));
    std::printf("elements: %d\nsplits: %d\nvertices: %d\nedges: %d\n", sys->ground_size(),
                sys->size(), g.vertex_count(), g.edge_count());
    if (!dot.empty()) write_output(dot, to_dot(g));
    if (!json.empty()) write_output(json, to_json(g));
    return 0;
}

int cmd_cuts(const Common& c) {
    SystemPtr sys = load_split_file(c.input);
    BunemanGraph g = BunemanGraph::enumerate(sys, enum_opts(c));
    const GroundSet& ground = sys->ground();
    int cuts = 0;
    std::string body;
    for (int v = 0; v < g.vertex_count(); ++v) {
        CutAnalysis ca = is_cut_vertex(g, v, c.verify);
        if (!ca.is_cut) continue;
        ++cuts;
        body += "v" + std::to_string(v) + "  sides=" + g.sides(v).to_string() + "\n";
        body += "  sigma_phi: " + split_list(*sys, ca.sigma_phi) + "\n";
        body += "  verdicts: removal=" + std::to_string(ca.verdicts[0]) +
                " min-image-graph=" + std::to_string(ca.verdicts[1]) +
                " component-meets=" + std::to_string(ca.verdicts[2]) +
                " sigma-graph=" + std::to_string(ca.verdicts[3]) +
                " element-graph=" + std::to_string(ca.verdicts[4]) +
                " vertex-graph=" + std::to_string(ca.verdicts[5]) + "\n";
        if (ca.witness_sigma_phi)
            body += "  split bipartition (min-image): " +
                    split_list(*sys, ca.witness_sigma_phi->first) + " | " +
                    split_list(*sys, ca.witness_sigma_phi->second) + "\n";
        if (ca.witness_sigma)
            body += "  split bipartition: " + split_list(*sys, ca.witness_sigma->first) +
                    " | " + split_list(*sys, ca.witness_sigma->second) + "\n";
        if (ca.witness_x)
            body += "  element bipartition: " + element_list(ground, ca.witness_x->first) +
                    " | " + element_list(ground, ca.witness_x->second) + "\n";
        if (ca.witness_v)
            body += "  vertex bipartition: " + id_list("v", ca.witness_v->first) + " | " +
                    id_list("v", ca.witness_v->second) + "\n";
    }
    std::printf("cut vertices: %d of %d\n%s", cuts, g.vertex_count(), body.c_str());
    return 0;
}

int cmd_blocks(const Common& c) {
    SystemPtr sys = load_split_file(c.input);
    BunemanGraph g = BunemanGraph::enumerate(sys, enum_opts(c));
    BlockDecomposition dec = all_blocks(g, c.verify);
    std::printf("incompatibility components: %zu\nblocks: %zu\n",
                dec.gamma.component_ids.size(), dec.blocks.size());
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const Block& blk = dec.blocks[i];
        std::printf("b%zu  component=%d  splits: %s\n    %zu vertices: %s\n", i,
                    blk.component_id, split_list(*sys, blk.splits).c_str(),
                    blk.vertices.size(), id_list("v", blk.vertices).c_str());
    }
    std::printf("cut vertices: %s\n", id_list("v", dec.cut_vertices).c_str());
    const auto& ids = dec.gamma.component_ids;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            BlockMeet meet = blocks_intersect(g, dec.gamma, ids[i], ids[j], c.verify);
            if (meet.meet)
                std::printf("b%zu ∩ b%zu = v%d\n", i, j, meet.vertex);
        }
    return 0;
}

int cmd_tree(const Common& c, const std::string& out) {
    SystemPtr sys = load_split_file(c.input);
    BunemanGraph g = BunemanGraph::enumerate(sys, enum_opts(c));
    BlockCutTree t = block_cut_tree(g, all_blocks(g, c.verify), c.verify);
    write_output(out, to_dot(t));
    return 0;
}

int cmd_xtree(const Common& c, const std::string& out) {
    SystemPtr sys = load_split_file(c.input);
    BunemanGraph g = BunemanGraph::enumerate(sys, enum_opts(c));
    BlockCutTree t = block_cut_tree(g, all_blocks(g, c.verify), c.verify);
    XTree x = reduce_to_xtree(t, c.verify);
    write_output(out, to_newick(x) + "\n");
    return 0;
}

int print_report(const CheckReport& report) {
    for (const auto& it : report.items)
        std::printf("%-32s %8lld  %s%s\n", it.name.c_str(), it.cases,
                    it.passed ? "pass" : "FAIL  ", it.detail.c_str());
    if (!report.all_passed()) {
        std::printf("result: FAIL\n");
        return 4;
    }
    std::printf("result: pass (%lld systems)\n", report.systems);
    return 0;
}

int cmd_check(const Common& c, int random_count, int max_n, int max_m) {
    CheckOptions opts;
    opts.seed = c.seed;
    opts.deep = true;  // check always runs the assertion postconditions
    opts.max_n = max_n;
    opts.max_m = max_m;
    int rc = 0;
    if (!c.input.empty()) {
        SystemPtr sys = load_split_file(c.input);
        std::printf("== %s ==\n", c.input.c_str());
        rc = print_report(run_checks(sys, opts));
    }
    if (random_count > 0) {
        opts.systems = random_count;
        std::printf("== random sweep (%d systems, n<=%d, m<=%d, seed %u) ==\n", random_count,
                    opts.max_n, opts.max_m, opts.seed);
        int rc2 = print_report(run_random_checks(opts));
        rc = rc ? rc : rc2;
    }
    if (c.input.empty() && random_count <= 0)
        fail(ErrorCode::check_failure, "nothing to check: give a file and/or --random N");
    return rc;
}

int cmd_bench(const Common& c, int m) {
    SystemPtr sys;
    if (!c.input.empty()) {
        sys = load_split_file(c.input);
    } else {
        std::mt19937 rng(c.seed);
        sys = random_system(rng, 8, m);
        std::printf("generated system: n=8 m=%d seed=%u\n", sys->size(), c.seed);
    }
    auto time_one = [&](Strategy strategy) {
        EnumerationOptions opts = enum_opts(c);
        opts.strategy = strategy;
        auto start = std::chrono::steady_clock::now();
        BunemanGraph g = BunemanGraph::enumerate(sys, opts);
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        return std::pair<double, int>(ms, g.vertex_count());
    };
    auto [inc_ms, inc_v] = time_one(Strategy::incremental);
    std::printf("incremental: %9.3f ms  (%d vertices)\n", inc_ms, inc_v);
    if (sys->size() <= c.max_splits) {
        auto [brute_ms, brute_v] = time_one(Strategy::brute);
        std::printf("brute:       %9.3f ms  (%d vertices)\n", brute_ms, brute_v);
        if (brute_v != inc_v) fail(ErrorCode::check_failure, "strategies disagree on |V|");
    } else {
        std::printf("brute:       skipped (m > --max-splits)\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buneman graphs: construction, cut vertices, blocks, block-cut trees"};
    app.require_subcommand(1);
    int rc = 0;

    Common graph_c;
    std::string graph_dot, graph_json;
    CLI::App* graph = app.add_subcommand("graph", "enumerate B(Σ) and report its size");
    add_common(graph, graph_c, true);
    graph->add_option("--dot", graph_dot, "write DOT to a file ('-' for stdout)");
    graph->add_option("--json", graph_json, "write adjacency JSON to a file ('-' for stdout)");
    graph->callback([&] { rc = cmd_graph(graph_c, graph_dot, graph_json); });

    Common cuts_c;
    CLI::App* cuts = app.add_subcommand("cuts", "list cut vertices with verdicts and witnesses");
    add_common(cuts, cuts_c, true);
    cuts->callback([&] { rc = cmd_cuts(cuts_c); });

    Common blocks_c;
    CLI::App* blocks = app.add_subcommand("blocks", "list blocks and their intersections");
    add_common(blocks, blocks_c, true);
    blocks->callback([&] { rc = cmd_blocks(blocks_c); });

    Common tree_c;
    std::string tree_out = "-";
    CLI::App* tree = app.add_subcommand("tree", "emit the block-cut tree as DOT");
    add_common(tree, tree_c, true);
    tree->add_option("--out", tree_out, "output file ('-' for stdout)");
    tree->callback([&] { rc = cmd_tree(tree_c, tree_out); });

    Common xtree_c;
    std::string xtree_out = "-";
    CLI::App* xtree = app.add_subcommand("xtree", "emit the reduced X-tree as Newick");
    add_common(xtree, xtree_c, true);
    xtree->add_option("--out", xtree_out, "output file ('-' for stdout)");
    xtree->callback([&] { rc = cmd_xtree(xtree_c, xtree_out); });

    Common check_c;
    int check_random = 0, check_max_n = 7, check_max_m = 6;
    CLI::App* check = app.add_subcommand("check", "run the invariant suite");
    add_common(check, check_c, false);
    check->add_option("--random", check_random, "also sweep N random systems");
    check->add_option("--max-n", check_max_n, "ground-set cap for random systems");
    check->add_option("--max-m", check_max_m, "split-count cap for random systems");
    check->callback([&] { rc = cmd_check(check_c, check_random, check_max_n, check_max_m); });

    Common bench_c;
    int bench_m = 12;
    CLI::App* bench = app.add_subcommand("bench", "time brute vs incremental enumeration");
    add_common(bench, bench_c, false);
    bench->add_option("-m,--splits", bench_m, "split count for the generated system");
    bench->callback([&] { rc = cmd_bench(bench_c, bench_m); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.code()) {
            case ErrorCode::syntax_error:
            case ErrorCode::unknown_element:
            case ErrorCode::improper_split:
            case ErrorCode::duplicate_split:
            case ErrorCode::empty_ground_set:
            case ErrorCode::ground_set_mismatch:
                return 2;
            case ErrorCode::cap_exceeded:
                return 3;
            default:
                return 4;
        }
    }
    return rc;
}
