#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buneman/trees.hpp"
#include "fixtures.hpp"

#include <functional>
#include <queue>
#include <random>

using namespace buneman;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal_inconsistency;
}

const char* kSigma8Canon = "((((()6,()7,()8),()4,()5),()2,()3))1";

// splits induced by deleting each tree edge, as canonical part bitsets
std::vector<Bitset> induced_splits(const XTree& x) {
    const int n = x.system->ground_size();
    std::vector<Bitset> out;
    for (std::size_t e = 0; e < x.edges.size(); ++e) {
        auto [a, b] = x.edges[e];
        // collect labels reachable from a without crossing the edge
        std::vector<bool> seen(static_cast<std::size_t>(x.node_count()), false);
        std::queue<int> q;
        q.push(a);
        seen[static_cast<std::size_t>(a)] = true;
        Bitset part(static_cast<std::size_t>(n));
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int lab : x.nodes[static_cast<std::size_t>(u)].labels)
                part.set(static_cast<std::size_t>(lab));
            for (int w : x.adj[static_cast<std::size_t>(u)]) {
                if ((u == a && w == b) || seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = true;
                q.push(w);
            }
        }
        out.push_back(part.test(0) ? part : ~part);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("block-cut tree of sigma8") {
    SystemPtr sys = sigma8();
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BlockDecomposition dec = all_blocks(g, true);
    BlockCutTree t = block_cut_tree(g, dec, true);

    CHECK(t.node_count() == 21);
    CHECK(t.edges.size() == 20);
    CHECK(t.block_count == 5);
    CHECK(t.vertex_count == 16);
    std::vector<int> block_degrees;
    for (int i = 0; i < t.block_count; ++i) block_degrees.push_back(t.degree(i));
    CHECK(block_degrees == std::vector<int>{4, 2, 8, 4, 2});

    int cut_nodes = 0;
    for (int u = 0; u < t.node_count(); ++u)
        if (t.cut[static_cast<std::size_t>(u)]) ++cut_nodes;
    CHECK(cut_nodes == 4);
    // cut vertex-nodes have degree >= 2, all others degree 1
    for (int v = 0; v < t.vertex_count; ++v) {
        int node = t.vertex_node(v);
        CHECK(t.is_block_node(node) == false);
        CHECK(t.graph_vertex(node) == v);
        CHECK((t.degree(node) >= 2) == t.cut[static_cast<std::size_t>(node)]);
    }
    CHECK(t.labels[static_cast<std::size_t>(t.vertex_node(g.label_vertex(0)))] ==
          std::vector<int>{0});
    CHECK(t.block_splits[2] == std::vector<int>{3, 4, 5});
}

TEST_CASE("a decomposition from another graph is rejected") {
    SystemPtr sys = sigma8();
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BunemanGraph h = BunemanGraph::enumerate(sigma8_prime());
    BlockDecomposition other = all_blocks(h);
    CHECK(code_of([&] { block_cut_tree(g, other); }) == ErrorCode::system_mismatch);
    CHECK(code_of([&] { leaf_label_bijection_test(g, other); }) ==
          ErrorCode::system_mismatch);
}

TEST_CASE("reduction of sigma8 gives the eleven-node tree") {
    SystemPtr sys = sigma8();
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BlockCutTree t = block_cut_tree(g, all_blocks(g, true), true);
    XTree x = reduce_to_xtree(t, true);
    CHECK(x.node_count() == 11);
    CHECK(x.edges.size() == 10);
    CHECK(!x.beyond_recipe);
    CHECK(xtree_canonical(x) == kSigma8Canon);
    // origins point back into the block-cut tree
    for (const XTreeNode& node : x.nodes) {
        CHECK(node.origin >= 0);
        CHECK(node.origin < t.node_count());
    }
}

TEST_CASE("triple degree bound holds with labels rescuing bridge chains") {
    SystemPtr sys = sigma8();
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BlockCutTree t = block_cut_tree(g, all_blocks(g, true), true);
    TripleDegreeReport report = triple_degree_check(t);
    CHECK(report.triples == 4);
    CHECK(report.label_rescued == 0);
    CHECK(report.ok());

    // a path of two bridges: the middle vertex is a labeled cut vertex and
    // every degree in its triple is 2
    SystemPtr path = system_of(numbered_labels(3), {{0}, {0, 1}});
    BunemanGraph gp = BunemanGraph::enumerate(path);
    BlockCutTree tp = block_cut_tree(gp, all_blocks(gp, true), true);
    TripleDegreeReport rp = triple_degree_check(tp);
    CHECK(rp.triples == 1);
    CHECK(rp.label_rescued == 1);
    CHECK(rp.ok());
    XTree xp = reduce_to_xtree(tp, true);
    CHECK(xp.node_count() == 3);
    CHECK(xtree_canonical(xp) == "((()3)2)1");
}

TEST_CASE("sim classes group elements by their split profile") {
    SystemPtr sys = sigma8();
    CHECK(sim_classes(sys, {6, 7}) ==
          std::vector<std::vector<int>>{{0, 1, 2, 3, 4}, {5}, {6}, {7}});
    CHECK(sim_classes(sys, {3, 4, 5}) ==
          std::vector<std::vector<int>>{{0, 1, 2}, {3}, {4}, {5, 6, 7}});
    CHECK(sim_classes(sys, {8}) ==
          std::vector<std::vector<int>>{{0, 1, 2, 3, 5, 6, 7}, {4}});
    // the surviving block-node degrees equal their class counts
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BlockCutTree t = block_cut_tree(g, all_blocks(g), false);
    XTree x = reduce_to_xtree(t, true);
    for (int u = 0; u < x.node_count(); ++u) {
        int origin = x.nodes[static_cast<std::size_t>(u)].origin;
        if (!t.is_block_node(origin)) continue;
        CHECK(x.degree(u) ==
              static_cast<int>(
                  sim_classes(sys, t.block_splits[static_cast<std::size_t>(origin)]).size()));
    }
}

TEST_CASE("leaf labeling criterion") {
    SystemPtr sys = sigma8();
    BunemanGraph g = BunemanGraph::enumerate(sys);
    BlockDecomposition dec = all_blocks(g, true);
    CHECK(leaf_label_bijection_test(g, dec, true));
    CHECK(!buneman_tree_criterion(g, true));

    // a single split on three elements leaves two labels on one node
    SystemPtr shared = system_of(numbered_labels(3), {{0}});
    BunemanGraph gs = BunemanGraph::enumerate(shared);
    CHECK(!leaf_label_bijection_test(gs, all_blocks(gs, true), true));

    // all trivial splits on three elements: a star, bijective
    SystemPtr star = system_of(numbered_labels(3), {{0}, {1}, {2}});
    BunemanGraph gt = BunemanGraph::enumerate(star);
    BlockDecomposition dect = all_blocks(gt, true);
    CHECK(leaf_label_bijection_test(gt, dect, true));
    XTree xt = reduce_to_xtree(block_cut_tree(gt, dect, true), true);
    CHECK(xtree_canonical(xt) == "((()2,()3))1");
}

TEST_CASE("compatible systems reduce to trees carrying exactly their splits") {
    SystemPtr prime = sigma8_prime();
    BunemanGraph g = BunemanGraph::enumerate(prime);
    CHECK(buneman_tree_criterion(g, true));
    CHECK(g.edge_count() == g.vertex_count() - 1);
    BlockCutTree t = block_cut_tree(g, all_blocks(g, true), true);
    XTree x = reduce_to_xtree(t, true);
    CHECK(xtree_canonical(x) == kSigma8Canon);

    std::vector<Bitset> expect;
    for (int s = 0; s < prime->size(); ++s) expect.push_back(prime->split(s).part_a);
    std::sort(expect.begin(), expect.end());
    CHECK(induced_splits(x) == expect);

    // the incompatible sigma8 reduces to the same shape
    BunemanGraph g8 = BunemanGraph::enumerate(sigma8());
    XTree x8 = reduce_to_xtree(block_cut_tree(g8, all_blocks(g8), false), true);
    CHECK(xtree_isomorphic(x, x8));
}

TEST_CASE("one split, two labeled endpoints") {
    SystemPtr two = system_of({"1", "2"}, {{0}});
    BunemanGraph g = BunemanGraph::enumerate(two);
    BlockDecomposition dec = all_blocks(g, true);
    XTree x = reduce_to_xtree(block_cut_tree(g, dec, true), true);
    CHECK(x.node_count() == 2);
    CHECK(x.edges.size() == 1);
    CHECK(x.nodes[0].labels.size() == 1);
    CHECK(x.nodes[1].labels.size() == 1);
    CHECK(leaf_label_bijection_test(g, dec, true));
}

TEST_CASE("canonical forms distinguish non-isomorphic trees") {
    SystemPtr star = system_of(numbered_labels(3), {{0}, {1}, {2}});
    SystemPtr path = system_of(numbered_labels(3), {{0}, {0, 1}});
    auto xtree_of = [](const SystemPtr& sys) {
        BunemanGraph g = BunemanGraph::enumerate(sys);
        return reduce_to_xtree(block_cut_tree(g, all_blocks(g), false), true);
    };
    XTree a = xtree_of(star), b = xtree_of(path);
    CHECK(!xtree_isomorphic(a, b));
    CHECK(xtree_isomorphic(a, a));
    // label permutations that preserve shape keep the canonical form only
    // when the minimal element stays in place
    SystemPtr path2 = system_of(numbered_labels(3), {{0}, {0, 2}});
    XTree c = xtree_of(path2);
    CHECK(xtree_canonical(c) == "((()2)3)1");
    CHECK(!xtree_isomorphic(b, c));
}

TEST_CASE("a tree with no labels anywhere cannot be reduced") {
    BlockCutTree t;
    t.system = sigma8();
    t.block_count = 1;
    t.vertex_count = 2;
    t.edges = {{0, 1}, {0, 2}};
    t.adj = {{1, 2}, {0}, {0}};
    t.labels.assign(3, {});
    t.cut.assign(3, false);
    t.block_splits = {{0}};
    CHECK(code_of([&] { reduce_to_xtree(t); }) == ErrorCode::degenerate_tree);
}

TEST_CASE("random systems reduce cleanly") {
    std::mt19937 rng(408);
    for (int round = 0; round < 40; ++round) {
        SystemPtr sys = random_fixture_system(rng, 4 + round % 4, 2 + round % 5);
        BunemanGraph g = BunemanGraph::enumerate(sys);
        BlockDecomposition dec = all_blocks(g, true);
        BlockCutTree t = block_cut_tree(g, dec, true);
        XTree x = reduce_to_xtree(t, true);
        CHECK(!x.beyond_recipe);
        CHECK(triple_degree_check(t).ok());
        leaf_label_bijection_test(g, dec, true);
        buneman_tree_criterion(g, true);
        std::string canon = xtree_canonical(x);
        CHECK(!canon.empty());
        CHECK(canon.front() == '(');
        // edges ascending and consistent with adjacency
        for (auto [a, b] : x.edges) CHECK(a < b);
        int degree_sum = 0;
        for (int u = 0; u < x.node_count(); ++u) degree_sum += x.degree(u);
        CHECK(degree_sum == 2 * static_cast<int>(x.edges.size()));
    }
}
