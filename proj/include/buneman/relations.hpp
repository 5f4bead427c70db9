#pragma once

#include "buneman/errors.hpp"

#include <utility>
#include <vector>

namespace buneman {

// A binary relation R ⊆ U × V with U, V index ranges.
struct BiRelation {
    int u_size = 0;
    int v_size = 0;
    std::vector<std::pair<int, int>> pairs;
};

// Γ(R|U): edge {u1,u2} iff they share some v. Returns edges with u1 < u2.
std::vector<std::pair<int, int>> project_u(const BiRelation& r);
// Γ(R|V): symmetric.
std::vector<std::pair<int, int>> project_v(const BiRelation& r);

// Component labels for Γ(R), Γ(R|U), Γ(R|V). All three labelings use one
// aligned numbering 0..count-1, ordered by the minimal U-member of the
// Γ(R)-component, so the component bijections are the identity on labels.
struct ComponentMap {
    int count = 0;
    std::vector<int> labels_u;
    std::vector<int> labels_v;
    std::vector<int> labels_r; // parallel to pairs
};

ComponentMap component_bijection(const BiRelation& r); // throws IsolatedVertex

// Lifted variant: given maps α: U' → U and β: V' → V satisfying (M1) and
// (M2), build R' = {(u',v') : (α u', β v') ∈ R}, R_α = {(u',v) : (α u', v) ∈ R},
// R_β = {(u,v') : (u, β v') ∈ R} and component maps for all of them, numbered
// consistently with the Γ(R) components (so every map in the diagram is the
// identity on labels).
struct LiftedComponentMap {
    int count = 0;
    BiRelation r_prime, r_alpha, r_beta;
    ComponentMap base;   // over R
    ComponentMap prime;  // over R'
    ComponentMap alpha;  // over R_α
    ComponentMap beta;   // over R_β
};

LiftedComponentMap lifted_bijection(const BiRelation& r, const std::vector<int>& alpha,
                                    const std::vector<int>& beta);

} // namespace buneman
