#pragma once

#include "buneman/cut_blocks.hpp"

#include <array>
#include <string>

namespace buneman {

// Block-cut incidence tree: one node per block of the decomposition plus one
// node per graph vertex, with an edge {block, vertex} whenever the vertex
// belongs to the block. Nodes 0 .. block_count-1 are the block-nodes (in
// decomposition order); node block_count + v stands for graph vertex v.
struct BlockCutTree {
    SystemPtr system;
    int block_count = 0;
    int vertex_count = 0;                    // graph vertices
    std::vector<std::pair<int, int>> edges;  // {block-node, vertex-node}
    std::vector<std::vector<int>> adj;       // node -> ascending neighbours
    std::vector<std::vector<int>> labels;    // node -> elements x with φ_x there
    std::vector<bool> cut;                   // true on cut-vertex nodes
    std::vector<std::vector<int>> block_splits;  // block-node -> its Σ0 members

    int node_count() const { return block_count + vertex_count; }
    bool is_block_node(int node) const { return node >= 0 && node < block_count; }
    int vertex_node(int v) const { return block_count + v; }
    int graph_vertex(int node) const { return node - block_count; }
    int degree(int node) const { return static_cast<int>(adj.at(node).size()); }
};

// Builds T(Σ) from a full decomposition (dec must come from all_blocks(g)).
// Tree shape (connected, |E| = |nodes|-1) is always checked; verify
// additionally asserts the alternate edge description (edge {Σ0, φ} iff
// Σ^(φ) ∩ Σ0 ≠ ∅) and both degree formulas.
BlockCutTree block_cut_tree(const BunemanGraph& g, const BlockDecomposition& dec,
                            bool verify = false);

struct XTreeNode {
    std::vector<int> labels;  // elements, ascending; empty on unlabeled nodes
    int origin = -1;          // surviving node's id in the source BlockCutTree
};

// Reduced X-tree: every unlabeled node has degree >= 3, every element labels
// exactly one node.
struct XTree {
    SystemPtr system;
    std::vector<XTreeNode> nodes;
    std::vector<std::pair<int, int>> edges;  // a < b, ascending
    std::vector<std::vector<int>> adj;
    // True if the reduction had to delete an unlabeled leaf that was not a
    // plain (non-cut, unlabeled) vertex-node. Cannot fire for trees built
    // from a Buneman graph; kept as a safety valve for the fixpoint.
    bool beyond_recipe = false;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int degree(int node) const { return static_cast<int>(adj.at(node).size()); }
};

// Deletes unlabeled non-cut vertex-nodes (always leaves), then suppresses
// unlabeled degree-2 nodes, iterated to a fixpoint. Labeled nodes are never
// removed. Throws DegenerateTree if nothing survives (assertion only).
XTree reduce_to_xtree(const BlockCutTree& t, bool verify = false);

// Equivalence classes of x ~ y iff every listed split puts x and y on the
// same side. Classes are ascending and ordered by minimal element. For a
// component Σ0 with |Σ0| >= 2 the class count equals deg_{T_Σ}(B(Σ0)).
std::vector<std::vector<int>> sim_classes(const SystemPtr& sys, const std::vector<int>& splits);

// True iff no φ_x is a cut vertex and no two elements share a vertex; under
// verify, asserted equal to "x ↦ φ_x is a bijection onto the leaves of T_Σ".
bool leaf_label_bijection_test(const BunemanGraph& g, const BlockDecomposition& dec,
                               bool verify = false);

// Pairwise compatibility of the split system; equivalent to B(Σ) being a
// tree, which verify asserts via |E| = |V| - 1.
bool buneman_tree_criterion(const BunemanGraph& g, bool verify = false);

struct TripleDegreeReport {
    long long triples = 0;  // (cut vertex, block pair) combinations inspected
    // Triples where max(deg B1, deg B2, deg φ) < 3 but φ carries a label. The
    // label keeps φ in the reduced tree, so the guarantee behind the degree
    // bound (one of the three nodes survives into T_Σ) still holds.
    long long label_rescued = 0;
    // {vertex-node, block-node, block-node}: all three degrees < 3 and φ
    // unlabeled, so none of the nodes would survive. Never expected.
    std::vector<std::array<int, 3>> violations;

    bool ok() const { return violations.empty(); }
};

// For every cut vertex φ and distinct blocks B1, B2 containing it, either
// max(deg B1, deg B2, deg φ) >= 3 or φ is labeled; equivalently one of the
// three T(Σ) nodes is also a node of T_Σ. Violations are never expected.
TripleDegreeReport triple_degree_check(const BlockCutTree& t);

// Label-anchored canonical form: rooted at the node carrying the minimal
// element, children ordered by canonical string. Two X-trees are isomorphic
// as labeled trees iff their forms are equal.
std::string xtree_canonical(const XTree& t);
bool xtree_isomorphic(const XTree& a, const XTree& b);

} // namespace buneman
