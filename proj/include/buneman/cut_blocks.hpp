#pragma once

#include "buneman/graph.hpp"
#include "buneman/relations.hpp"

#include <array>
#include <optional>

namespace buneman {

// A graph over an arbitrary id universe (split indices, elements or vertex
// indices) together with its connected components, numbered by minimal id.
struct LabeledGraph {
    std::vector<int> ids;                    // ascending universe members
    std::vector<std::pair<int, int>> edges;  // positions into ids, a < b
    std::vector<int> component_of;           // position -> component ordinal
    int component_count = 0;

    std::vector<std::vector<int>> component_ids() const; // members grouped, by ordinal
};

// X^(φ) = {x : φ_x ≠ φ}
std::vector<int> x_phi(const BunemanGraph& g, int v);

// Γ_φ(Σ): edge {S,S'} iff φ(S) ∪ φ(S') ≠ X
LabeledGraph gamma_phi_sigma(const BunemanGraph& g, int v);
// Γ_φ(Σ^(φ)): edge iff incompatible (equals Γ_φ(Σ) induced on Σ^(φ))
LabeledGraph gamma_phi_sigma_min(const BunemanGraph& g, int v, bool verify = false);
// Γ_φ(X^(φ)): edge {x1,x2} iff some split has x1, x2 both outside φ(S)
LabeledGraph gamma_phi_x(const BunemanGraph& g, int v, bool verify = false);
// Γ_φ(V^(φ)): edge {ψ1,ψ2} iff some split has ψ1(S) = ψ2(S) ≠ φ(S)
LabeledGraph gamma_phi_v(const BunemanGraph& g, int v, bool verify = false);

// Δ_min(ψ|φ): splits of Δ(φ,ψ) whose ψ-image is inclusion-minimal in ψ[Δ]
std::vector<int> delta_min(const VertexMap& psi, const VertexMap& phi);

struct Bipartition {
    std::vector<int> first;  // contains the minimal id
    std::vector<int> second;
};

struct CutAnalysis {
    int vertex = -1;
    std::vector<int> sigma_phi;
    std::vector<int> x_phi;
    // (i) B(Σ)−φ disconnected, (ii) Γ_φ(Σ^(φ)), (iii) Σ^(φ) meets ≥2
    // components of Γ(Σ), (iv) Γ_φ(Σ), (v) Γ_φ(X^(φ)), (vi) Γ_φ(V^(φ))
    std::array<bool, 6> verdicts{};
    bool is_cut = false;
    std::optional<Bipartition> witness_sigma_phi; // (ii)
    std::optional<Bipartition> witness_sigma;     // (iv)
    std::optional<Bipartition> witness_x;         // (v)
    std::optional<Bipartition> witness_v;         // (vi)
};

// Evaluates all six characterizations; they must agree.
CutAnalysis is_cut_vertex(const BunemanGraph& g, int v, bool verify = false);

struct CorrespondenceRow {
    std::vector<int> sigma_phi_part; // component of Γ_φ(Σ^(φ))
    std::vector<int> sigma_part;     // partner component of Γ_φ(Σ)
    std::vector<int> x_part;         // partner component of Γ_φ(X^(φ))
    std::vector<int> v_part;         // partner component of Γ_φ(V^(φ))
};

// Aligned component table; rows ordered by minimal split of sigma_phi_part.
// With verify set, rebuilds the diagram through the generic relation
// machinery (R^(φ) with α the inclusion, β the labeling) and asserts the
// correspondence facts.
std::vector<CorrespondenceRow> component_correspondences(const BunemanGraph& g, int v,
                                                         bool verify = false);

struct Block {
    int component_id = -1;
    std::vector<int> splits;    // members of Σ0
    std::vector<int> vertices;  // B(Σ0) as ascending host-graph indices
    Bitset member_mask;         // bit s = 1 iff s ∈ Σ0
    Bitset frame_sides;         // forced side A(S↘Σ0) for s ∉ Σ0; zero on Σ0
};

Block block_of(const BunemanGraph& g, const IncompatibilityGraph& gamma, int component_id,
               bool verify = false);

// Gate φ_{Σ0}: φ on Σ0, frame off Σ0; returns host vertex index.
int gate(const BunemanGraph& g, const IncompatibilityGraph& gamma, int v, int component_id,
         bool verify = false);

// φ_{Σ0|Σ1}: A(S↘Σ1) on Σ0, A(S↘Σ0) elsewhere.
int inter_block_gate(const BunemanGraph& g, const IncompatibilityGraph& gamma, int comp0,
                     int comp1, bool verify = false);

struct BlockMeet {
    bool meet = false;
    int vertex = -1; // the unique shared vertex when meet
};

BlockMeet blocks_intersect(const BunemanGraph& g, const IncompatibilityGraph& gamma, int comp0,
                           int comp1, bool verify = false);

struct BlockDecomposition {
    IncompatibilityGraph gamma;
    std::vector<Block> blocks;                      // ascending component id
    std::vector<int> cut_vertices;                  // ascending vertex indices
    std::vector<std::vector<int>> blocks_of_vertex; // vertex -> block positions
};

BlockDecomposition all_blocks(const BunemanGraph& g, bool verify = false);

// ψ, ψ' are separated by some cut vertex iff Δ(ψ,ψ') meets at least two
// components of Γ(Σ).
bool separation_test(const BunemanGraph& g, const IncompatibilityGraph& gamma, int v1, int v2,
                     bool verify = false);

} // namespace buneman
