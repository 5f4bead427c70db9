#include "buneman/trees.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace buneman {

namespace {

void check(bool ok, const char* what) {
    if (!ok) fail(ErrorCode::internal_inconsistency, what);
}

void check_tree_shape(const BlockCutTree& t) {
    const int n = t.node_count();
    check(static_cast<int>(t.edges.size()) == n - 1, "block-cut tree: |edges| != |nodes| - 1");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : t.adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    check(reached == n, "block-cut tree: not connected");
}

// Deletes unlabeled leaves and suppresses unlabeled degree-2 nodes until
// nothing changes. Nodes without recipe_leaf set are not expected to become
// leaves; deleting one reports through *beyond. Returns true if any node was
// removed.
bool reduce_fixpoint(std::vector<std::set<int>>& adj, std::vector<char>& alive,
                     const std::vector<std::vector<int>>& labels,
                     const std::vector<char>& recipe_leaf, bool* beyond) {
    const int n = static_cast<int>(adj.size());
    bool any = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            auto& nu = adj[static_cast<std::size_t>(u)];
            if (!alive[static_cast<std::size_t>(u)] ||
                !labels[static_cast<std::size_t>(u)].empty())
                continue;
            if (nu.size() <= 1) {
                if (beyond && !recipe_leaf[static_cast<std::size_t>(u)]) *beyond = true;
                for (int w : nu) adj[static_cast<std::size_t>(w)].erase(u);
            } else if (nu.size() == 2) {
                int a = *nu.begin(), b = *std::next(nu.begin());
                adj[static_cast<std::size_t>(a)].erase(u);
                adj[static_cast<std::size_t>(b)].erase(u);
                adj[static_cast<std::size_t>(a)].insert(b);
                adj[static_cast<std::size_t>(b)].insert(a);
            } else {
                continue;
            }
            alive[static_cast<std::size_t>(u)] = 0;
            nu.clear();
            changed = any = true;
        }
    }
    return any;
}

std::string canon_rec(const XTree& t, int u, int parent) {
    std::vector<std::string> kids;
    for (int w : t.adj[static_cast<std::size_t>(u)])
        if (w != parent) kids.push_back(canon_rec(t, w, u));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) s += ',';
        s += kids[i];
    }
    s += ')';
    const auto& labels = t.nodes[static_cast<std::size_t>(u)].labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += '+';
        s += t.system->ground().label(labels[i]);
    }
    return s;
}

} // namespace

BlockCutTree block_cut_tree(const BunemanGraph& g, const BlockDecomposition& dec, bool verify) {
    const int b = static_cast<int>(dec.blocks.size());
    const int v = g.vertex_count();
    if (static_cast<int>(dec.blocks_of_vertex.size()) != v ||
        dec.gamma.split_count != g.system()->size())
        fail(ErrorCode::system_mismatch, "decomposition does not belong to this graph");

    BlockCutTree t;
    t.system = g.system();
    t.block_count = b;
    t.vertex_count = v;
    t.adj.assign(static_cast<std::size_t>(t.node_count()), {});
    t.labels.assign(static_cast<std::size_t>(t.node_count()), {});
    t.cut.assign(static_cast<std::size_t>(t.node_count()), false);
    t.block_splits.reserve(static_cast<std::size_t>(b));

    for (int i = 0; i < b; ++i) {
        t.block_splits.push_back(dec.blocks[static_cast<std::size_t>(i)].splits);
        for (int u : dec.blocks[static_cast<std::size_t>(i)].vertices) {
            int node = t.vertex_node(u);
            t.edges.push_back({i, node});
            t.adj[static_cast<std::size_t>(i)].push_back(node);
            t.adj[static_cast<std::size_t>(node)].push_back(i);
        }
    }
    for (int x = 0; x < g.system()->ground_size(); ++x)
        t.labels[static_cast<std::size_t>(t.vertex_node(g.label_vertex(x)))].push_back(x);
    for (int u : dec.cut_vertices) t.cut[static_cast<std::size_t>(t.vertex_node(u))] = true;

    check_tree_shape(t);

    if (verify) {
        for (int i = 0; i < b; ++i)
            check(t.degree(i) ==
                      static_cast<int>(dec.blocks[static_cast<std::size_t>(i)].vertices.size()),
                  "block-node degree != block size");
        for (int u = 0; u < v; ++u) {
            int node = t.vertex_node(u);
            check(t.degree(node) ==
                      static_cast<int>(dec.blocks_of_vertex[static_cast<std::size_t>(u)].size()),
                  "vertex-node degree != number of containing blocks");
            // the degree also counts the incompatibility components meeting Σ^(φ)
            check(t.degree(node) == gamma_phi_sigma_min(g, u).component_count,
                  "vertex-node degree != |π_φ(Σ^(φ))|");
            // alternate edge description: {Σ0, φ} is an edge iff Σ^(φ) ∩ Σ0 ≠ ∅
            for (int i = 0; i < b; ++i) {
                const Block& blk = dec.blocks[static_cast<std::size_t>(i)];
                bool meets = false;
                for (int s : g.min_image(u))
                    if (blk.member_mask.test(s)) {
                        meets = true;
                        break;
                    }
                bool edge = std::binary_search(blk.vertices.begin(), blk.vertices.end(), u);
                check(meets == edge, "alternate edge description mismatch");
            }
        }
    }
    return t;
}

XTree reduce_to_xtree(const BlockCutTree& t, bool verify) {
    const int n = t.node_count();
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [a, b] : t.edges) {
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    }
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<char> recipe(static_cast<std::size_t>(n), 0);
    for (int u = t.block_count; u < n; ++u)
        if (!t.cut[static_cast<std::size_t>(u)] && t.labels[static_cast<std::size_t>(u)].empty())
            recipe[static_cast<std::size_t>(u)] = 1;

    bool beyond = false;
    reduce_fixpoint(adj, alive, t.labels, recipe, &beyond);

    XTree x;
    x.system = t.system;
    x.beyond_recipe = beyond;
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u)
        if (alive[static_cast<std::size_t>(u)]) {
            index[static_cast<std::size_t>(u)] = x.node_count();
            x.nodes.push_back({t.labels[static_cast<std::size_t>(u)], u});
        }
    if (x.nodes.empty()) fail(ErrorCode::degenerate_tree, "reduction removed every node");

    for (int u = 0; u < n; ++u)
        for (int w : adj[static_cast<std::size_t>(u)])
            if (u < w)
                x.edges.push_back(
                    {index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(w)]});
    std::sort(x.edges.begin(), x.edges.end());
    x.adj.assign(x.nodes.size(), {});
    for (const auto& [a, b] : x.edges) {
        x.adj[static_cast<std::size_t>(a)].push_back(b);
        x.adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nb : x.adj) std::sort(nb.begin(), nb.end());

    // proper-X-tree shape, always on: unlabeled nodes have degree >= 3 and the
    // labels partition the ground set
    int labeled_elements = 0;
    for (int u = 0; u < x.node_count(); ++u) {
        const auto& node = x.nodes[static_cast<std::size_t>(u)];
        if (node.labels.empty())
            check(x.degree(u) >= 3, "reduced tree keeps an unlabeled node of degree < 3");
        labeled_elements += static_cast<int>(node.labels.size());
    }
    check(labeled_elements == t.system->ground_size(),
          "reduced tree labels do not cover the ground set once each");

    if (verify) {
        // reducing again must change nothing
        std::vector<std::set<int>> adj2(x.nodes.size());
        for (const auto& [a, b] : x.edges) {
            adj2[static_cast<std::size_t>(a)].insert(b);
            adj2[static_cast<std::size_t>(b)].insert(a);
        }
        std::vector<char> alive2(x.nodes.size(), 1);
        std::vector<char> recipe2(x.nodes.size(), 1);
        std::vector<std::vector<int>> labels2;
        labels2.reserve(x.nodes.size());
        for (const auto& node : x.nodes) labels2.push_back(node.labels);
        check(!reduce_fixpoint(adj2, alive2, labels2, recipe2, nullptr),
              "reduction is not idempotent");
        // surviving multi-split blocks: degree = number of ~_{Σ0} classes
        for (int u = 0; u < x.node_count(); ++u) {
            int origin = x.nodes[static_cast<std::size_t>(u)].origin;
            if (!t.is_block_node(origin)) continue;
            const auto& splits = t.block_splits[static_cast<std::size_t>(origin)];
            check(splits.size() >= 2, "singleton block survived the reduction");
            check(x.degree(u) == static_cast<int>(sim_classes(t.system, splits).size()),
                  "surviving block degree != number of ~ classes");
        }
    }
    return x;
}

std::vector<std::vector<int>> sim_classes(const SystemPtr& sys, const std::vector<int>& splits) {
    const int n = sys->ground_size();
    for (int s : splits)
        check(s >= 0 && s < sys->size(), "sim_classes: split index out of range");
    std::map<std::vector<char>, std::vector<int>> groups;
    for (int x = 0; x < n; ++x) {
        std::vector<char> key;
        key.reserve(splits.size());
        for (int s : splits) key.push_back(sys->split(s).part_a.test(x) ? 1 : 0);
        groups[key].push_back(x);
    }
    std::vector<std::vector<int>> classes;
    classes.reserve(groups.size());
    for (auto& [key, members] : groups) classes.push_back(std::move(members));
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

bool leaf_label_bijection_test(const BunemanGraph& g, const BlockDecomposition& dec, bool verify) {
    const int n = g.system()->ground_size();
    if (static_cast<int>(dec.blocks_of_vertex.size()) != g.vertex_count())
        fail(ErrorCode::system_mismatch, "decomposition does not belong to this graph");
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
        int v = g.label_vertex(x);
        // φ_x must avoid cut(Σ) and carry no second label
        if (dec.blocks_of_vertex[static_cast<std::size_t>(v)].size() >= 2 ||
            g.labels_at(v).size() != 1)
            ok = false;
    }
    if (verify) {
        XTree x = reduce_to_xtree(block_cut_tree(g, dec));
        bool bijective = true;
        int leaves = 0;
        for (int u = 0; u < x.node_count(); ++u) {
            const auto& labels = x.nodes[static_cast<std::size_t>(u)].labels;
            if (x.degree(u) <= 1) {
                ++leaves;
                if (labels.size() != 1) bijective = false;
            } else if (!labels.empty()) {
                bijective = false;
            }
        }
        if (leaves != n) bijective = false;
        check(ok == bijective, "bijection criterion disagrees with leaf inspection");
    }
    return ok;
}

bool buneman_tree_criterion(const BunemanGraph& g, bool verify) {
    const SplitSystem& sys = *g.system();
    bool compatible = true;
    for (int i = 0; i < sys.size() && compatible; ++i)
        for (int j = i + 1; j < sys.size(); ++j)
            if (!is_compatible(sys.split(i), sys.split(j))) {
                compatible = false;
                break;
            }
    if (verify)
        check(compatible == (g.edge_count() == g.vertex_count() - 1),
              "compatibility criterion disagrees with acyclicity");
    return compatible;
}

TripleDegreeReport triple_degree_check(const BlockCutTree& t) {
    TripleDegreeReport report;
    for (int v = 0; v < t.vertex_count; ++v) {
        int node = t.vertex_node(v);
        const auto& blocks = t.adj[static_cast<std::size_t>(node)];
        if (blocks.size() < 2) continue;
        bool labeled = !t.labels[static_cast<std::size_t>(node)].empty();
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j) {
                ++report.triples;
                if (t.degree(blocks[i]) >= 3 || t.degree(blocks[j]) >= 3 ||
                    t.degree(node) >= 3)
                    continue;
                if (labeled)
                    ++report.label_rescued;
                else
                    report.violations.push_back({node, blocks[i], blocks[j]});
            }
    }
    return report;
}

std::string xtree_canonical(const XTree& t) {
    int root = -1;
    for (int u = 0; u < t.node_count() && root < 0; ++u) {
        const auto& labels = t.nodes[static_cast<std::size_t>(u)].labels;
        if (!labels.empty() && labels.front() == 0) root = u;
    }
    check(root >= 0, "no node carries the minimal element");
    return canon_rec(t, root, -1);
}

bool xtree_isomorphic(const XTree& a, const XTree& b) {
    return xtree_canonical(a) == xtree_canonical(b);
}

} // namespace buneman
