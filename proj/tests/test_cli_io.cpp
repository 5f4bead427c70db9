#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buneman/check.hpp"
#include "fixtures.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

using namespace buneman;

namespace {

ErrorCode parse_code(const char* text) {
    std::istringstream in(text);
    try {
        parse_split_file(in);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal_inconsistency;
}

std::string parse_message(const char* text) {
    std::istringstream in(text);
    try {
        parse_split_file(in);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(BUNEMAN_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fixture_path() { return std::string(BUNEMAN_DATA_DIR) + "/sigma8.splits"; }

// minimal Newick reader used to confirm the writer round-trips; a childless
// unlabeled root of degree two is a rooting artifact and gets suppressed
struct NewickReader {
    const GroundSet& ground;
    std::string text;
    std::size_t pos = 0;
    std::vector<XTreeNode> nodes;
    std::vector<std::pair<int, int>> edges;

    explicit NewickReader(const GroundSet& g, std::string s)
        : ground(g), text(std::move(s)) {}

    std::vector<int> read_labels() {
        std::string word;
        while (pos < text.size() && text[pos] != ',' && text[pos] != ')' &&
               text[pos] != '(' && text[pos] != ';')
            word += text[pos++];
        std::vector<int> out;
        std::string part;
        std::istringstream split(word);
        while (std::getline(split, part, '+'))
            if (!part.empty()) out.push_back(ground.index_of(part));
        std::sort(out.begin(), out.end());
        return out;
    }

    int read_subtree() {
        std::vector<int> kids;
        if (pos < text.size() && text[pos] == '(') {
            ++pos; // (
            kids.push_back(read_subtree());
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                kids.push_back(read_subtree());
            }
            REQUIRE(pos < text.size());
            REQUIRE(text[pos] == ')');
            ++pos;
        }
        int id = static_cast<int>(nodes.size());
        nodes.push_back({read_labels(), -1});
        for (int k : kids) edges.emplace_back(std::min(id, k), std::max(id, k));
        return id;
    }

    XTree tree(SystemPtr sys) {
        int root = read_subtree();
        REQUIRE(pos < text.size());
        REQUIRE(text[pos] == ';');
        XTree x;
        x.system = std::move(sys);
        int degree = 0;
        for (auto [a, b] : edges) degree += (a == root) + (b == root);
        if (nodes[static_cast<std::size_t>(root)].labels.empty() && degree == 2) {
            std::vector<int> ends;
            std::vector<std::pair<int, int>> kept;
            for (auto [a, b] : edges) {
                if (a == root)
                    ends.push_back(b);
                else if (b == root)
                    ends.push_back(a);
                else
                    kept.push_back({a, b});
            }
            kept.emplace_back(std::min(ends[0], ends[1]), std::max(ends[0], ends[1]));
            edges = std::move(kept);
            nodes.erase(nodes.begin() + root); // root is always last
        }
        x.nodes = nodes;
        x.edges = edges;
        std::sort(x.edges.begin(), x.edges.end());
        x.adj.assign(x.nodes.size(), {});
        for (auto [a, b] : x.edges) {
            x.adj[static_cast<std::size_t>(a)].push_back(b);
            x.adj[static_cast<std::size_t>(b)].push_back(a);
        }
        return x;
    }
};

XTree reparse(const XTree& x) {
    NewickReader reader(x.system->ground(), to_newick(x));
    return reader.tree(x.system);
}

} // namespace

TEST_CASE("the fixture file parses to nine splits on eight elements") {
    SystemPtr sys = load_split_file(fixture_path());
    CHECK(sys->size() == 9);
    CHECK(sys->ground_size() == 8);
    CHECK(sys->split_repr(3) == "{1,2,3,5}");
    // formatting and reparsing is the identity on the formatted text
    std::istringstream in(format_split_file(*sys));
    SystemPtr again = parse_split_file(in);
    CHECK(*sys == *again);
    CHECK(format_split_file(*sys) == format_split_file(*again));
}

TEST_CASE("parse errors carry codes and line numbers") {
    CHECK(parse_code("1 2\n") == ErrorCode::syntax_error);
    CHECK(parse_code("elements: a b c\na q\n") == ErrorCode::unknown_element);
    CHECK(parse_code("elements: a b c\na b c\n") == ErrorCode::improper_split);
    CHECK(parse_code("elements: a b c\na\nb c\n") == ErrorCode::duplicate_split);
    CHECK(parse_code("elements: a b c\n") == ErrorCode::improper_split);
    CHECK(parse_code("elements: a\n") == ErrorCode::empty_ground_set);
    CHECK(parse_code("") == ErrorCode::syntax_error);
    CHECK(parse_message("elements: a b c\na q\n").find("line 2") != std::string::npos);
    CHECK(parse_message("elements: a b c\na\nb c\n").find("line 3") != std::string::npos);
    CHECK(parse_code("# comments\n\nelements: a b\n  a  \n") ==
          ErrorCode::internal_inconsistency); // parses fine: comments, blanks, spaces
    try {
        load_split_file("/nonexistent/no.splits");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::syntax_error);
    }
}

TEST_CASE("graph exports are deterministic and well formed") {
    SystemPtr sys = load_split_file(fixture_path());
    BunemanGraph g = BunemanGraph::enumerate(sys);

    std::string dot = to_dot(g);
    CHECK(dot.rfind("graph buneman {", 0) == 0);
    CHECK(dot.find("v0 [label=\"v0: 1\"];") != std::string::npos);
    CHECK(dot.find("[type=") != std::string::npos);
    CHECK(dot == to_dot(g));

    nlohmann::json parsed = nlohmann::json::parse(to_json(g));
    CHECK(parsed["vertices"].size() == 16);
    CHECK(parsed["edges"].size() == 22);
    CHECK(parsed["vertices"][0]["sides"] == "000000000");
    CHECK(parsed["vertices"][0]["labels"] == nlohmann::json::array({"1"}));
    CHECK(parsed["edges"][0].contains("type"));

    BlockCutTree t = block_cut_tree(g, all_blocks(g));
    std::string tdot = to_dot(t);
    CHECK(tdot.rfind("graph blockcut {", 0) == 0);
    CHECK(tdot.find("shape=box") != std::string::npos);
    CHECK(tdot.find("fillcolor=black") != std::string::npos);

    // a tiny graph, spelled out in full
    SystemPtr two = system_of({"1", "2"}, {{0}});
    BunemanGraph g2 = BunemanGraph::enumerate(two);
    CHECK(to_dot(g2) ==
          "graph buneman {\n"
          "  v0 [label=\"v0: 1\"];\n"
          "  v1 [label=\"v1: 2\"];\n"
          "  v0 -- v1 [type=0];\n"
          "}\n");
}

TEST_CASE("newick output") {
    SystemPtr sys = load_split_file(fixture_path());
    BunemanGraph g = BunemanGraph::enumerate(sys);
    XTree x = reduce_to_xtree(block_cut_tree(g, all_blocks(g)));
    CHECK(to_newick(x) == "(1,(2,3,(4,5,(6,7,8))));");

    std::istringstream one("elements: 1 2 3 4 5\n4 5\n");
    SystemPtr s1 = parse_split_file(one);
    BunemanGraph g1 = BunemanGraph::enumerate(s1);
    XTree x1 = reduce_to_xtree(block_cut_tree(g1, all_blocks(g1)));
    CHECK(to_newick(x1) == "(1+2+3,4+5);");
}

TEST_CASE("newick text reparses to an isomorphic tree") {
    SystemPtr sys = load_split_file(fixture_path());
    BunemanGraph g = BunemanGraph::enumerate(sys);
    XTree x = reduce_to_xtree(block_cut_tree(g, all_blocks(g)));
    CHECK(xtree_isomorphic(x, reparse(x)));

    std::mt19937 rng(409);
    for (int round = 0; round < 25; ++round) {
        SystemPtr s = random_fixture_system(rng, 4 + round % 4, 2 + round % 5);
        BunemanGraph gr = BunemanGraph::enumerate(s);
        XTree xr = reduce_to_xtree(block_cut_tree(gr, all_blocks(gr)), true);
        CHECK(xtree_isomorphic(xr, reparse(xr)));
    }
}

TEST_CASE("the built-in check suite accepts the fixture") {
    SystemPtr sys = load_split_file(fixture_path());
    CheckReport rep = run_checks(sys);
    for (const auto& it : rep.items) {
        INFO(it.name, ": ", it.detail);
        CHECK(it.passed);
    }
    CHECK(rep.all_passed());
    CHECK(rep.items.size() >= 10);
}

TEST_CASE("the random sweep runs every item clean") {
    CheckOptions opts;
    opts.systems = 25;
    CheckReport sweep = run_random_checks(opts);
    for (const auto& it : sweep.items) {
        INFO(it.name, ": ", it.detail);
        CHECK(it.passed);
        CHECK(it.cases > 0);
    }
    CHECK(sweep.all_passed());
    CHECK(sweep.systems == 25);
}

TEST_CASE("system generators are deterministic in the seed") {
    std::mt19937 r1(7), r2(7);
    SystemPtr a = random_system(r1, 6, 5);
    SystemPtr b = random_system(r2, 6, 5);
    CHECK(format_split_file(*a) == format_split_file(*b));
    std::mt19937 r3(7), r4(7);
    CHECK(format_split_file(*random_compatible_system(r3, 6, 5)) ==
          format_split_file(*random_compatible_system(r4, 6, 5)));
}

TEST_CASE("cli: graph prints the counts") {
    CliResult r = run_cli("graph " + fixture_path());
    CHECK(r.status == 0);
    CHECK(r.out.find("vertices: 16") != std::string::npos);
    CHECK(r.out.find("edges: 22") != std::string::npos);

    CliResult dot = run_cli("graph " + fixture_path() + " --dot -");
    CHECK(dot.status == 0);
    CHECK(dot.out.find("graph buneman {") != std::string::npos);
}

TEST_CASE("cli: cuts shows the minimal sets and witness bipartitions") {
    CliResult r = run_cli("cuts " + fixture_path() + " --verify");
    CHECK(r.status == 0);
    CHECK(r.out.find("cut vertices: 4 of 16") != std::string::npos);
    CHECK(r.out.find("sigma_phi: S3{1,2,3,5} S4{4,5} S5{1,2,3,4} S6{6,7} S7{7,8}") !=
          std::string::npos);
    CHECK(r.out.find("S3{1,2,3,5} S4{4,5} S5{1,2,3,4} | S6{6,7} S7{7,8}") !=
          std::string::npos);
    CHECK(r.out.find("element bipartition: 1 2 3 4 5 | 6 7 8") != std::string::npos);
}

TEST_CASE("cli: blocks lists the decomposition and the meets") {
    CliResult r = run_cli("blocks " + fixture_path());
    CHECK(r.status == 0);
    CHECK(r.out.find("blocks: 5") != std::string::npos);
    CHECK(r.out.find("cut vertices: v3 v4 v9 v10") != std::string::npos);
    CHECK(r.out.find("b2 ∩ b3 = v9") != std::string::npos);
}

TEST_CASE("cli: tree and xtree emit the serialized trees") {
    CliResult tree = run_cli("tree " + fixture_path());
    CHECK(tree.status == 0);
    CHECK(tree.out.rfind("graph blockcut {", 0) == 0);
    CliResult xtree = run_cli("xtree " + fixture_path());
    CHECK(xtree.status == 0);
    CHECK(xtree.out == "(1,(2,3,(4,5,(6,7,8))));\n");
}

TEST_CASE("cli: check passes on the fixture and small sweeps") {
    CliResult r = run_cli("check " + fixture_path() + " --random 5");
    CHECK(r.status == 0);
    CHECK(r.out.find("result: pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli: bench reports both strategies") {
    CliResult r = run_cli("bench --seed 7 -m 10");
    CHECK(r.status == 0);
    CHECK(r.out.find("incremental:") != std::string::npos);
    CHECK(r.out.find("brute:") != std::string::npos);
}

TEST_CASE("cli: exit codes separate usage, parse, cap and check failures") {
    CHECK(run_cli("").status == 1);
    CHECK(run_cli("graph").status == 1);
    CHECK(run_cli("frobnicate x").status == 1);
    CHECK(run_cli("graph /nonexistent.splits").status == 2);
    CHECK(run_cli("graph " + fixture_path() + " --strategy brute --max-splits 3").status ==
          3);
    CHECK(run_cli("check").status == 4);
    CHECK(run_cli("--help").status == 0);
}
