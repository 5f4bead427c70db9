#pragma once

#include "buneman/splits.hpp"

#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace buneman {

// A side-selection map: bit i = 1 iff φ(S_i) = part_b of split i. Always
// satisfies (BG1) by construction; is_vertex() decides (BG2).
class VertexMap {
public:
    VertexMap(SystemPtr system, Bitset sides);

    const SystemPtr& system() const { return sys_; }
    const Bitset& sides() const { return sides_; }
    bool side(int s) const { return sides_.test(static_cast<std::size_t>(s)); }
    const Bitset& image(int s) const { return sys_->split(s).side(side(s)); }
    bool is_vertex() const; // BG2: all pairwise images intersect (cached)

    bool operator==(const VertexMap& o) const;

private:
    SystemPtr sys_;
    Bitset sides_;
    mutable signed char vertex_cache_ = -1;
};

// φ_x: each split maps to the part containing x. Always a vertex.
VertexMap label_map(const SystemPtr& sys, int element);

void require_same_system(const VertexMap& a, const VertexMap& b);

enum class Strategy { brute, incremental };

struct EnumerationOptions {
    Strategy strategy = Strategy::incremental;
    int max_splits = 24;                  // cap on m for the brute strategy
    std::size_t max_vertices = 1u << 22;  // output cap for the incremental strategy
    bool verify = false;                  // cross-check invariants after building
};

class BunemanGraph {
public:
    static BunemanGraph enumerate(SystemPtr sys, const EnumerationOptions& opts = {});

    const SystemPtr& system() const { return sys_; }
    int vertex_count() const { return static_cast<int>(sides_.size()); }
    int edge_count() const { return edge_count_; }
    const Bitset& sides(int v) const { return sides_[static_cast<std::size_t>(v)]; }
    VertexMap vertex(int v) const { return {sys_, sides_[static_cast<std::size_t>(v)]}; }
    int find(const Bitset& sides) const; // -1 if absent
    int index_of(const VertexMap& phi) const;

    // Σ^(φ): splits with inclusion-minimal φ-image; also φ's flip directions.
    const std::vector<int>& min_image(int v) const {
        return min_image_[static_cast<std::size_t>(v)];
    }
    // (split type, neighbor index), ascending by type
    const std::vector<std::pair<int, int>>& neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    int label_vertex(int element) const {
        return label_vertex_[static_cast<std::size_t>(element)];
    }
    const std::vector<int>& labels_at(int v) const {
        return labels_at_[static_cast<std::size_t>(v)];
    }

    std::vector<std::tuple<int, int, int>> edges() const; // (u, v, type), u < v, sorted

private:
    SystemPtr sys_;
    std::vector<Bitset> sides_;
    std::unordered_map<Bitset, int, BitsetHash> index_;
    std::vector<std::vector<int>> min_image_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<int> label_vertex_;
    std::vector<std::vector<int>> labels_at_;
    int edge_count_ = 0;
};

Bitset delta(const VertexMap& a, const VertexMap& b);
int distance(const VertexMap& a, const VertexMap& b);

VertexMap flip(const VertexMap& phi, const Bitset& xi);
VertexMap flip(const VertexMap& phi, const std::vector<int>& xi);
VertexMap flip_one(const VertexMap& phi, int split);

std::vector<int> min_image(const VertexMap& phi);                      // throws NotAVertex
std::vector<std::pair<int, VertexMap>> neighbor_maps(const VertexMap& phi);

VertexMap median(const VertexMap& a, const VertexMap& b, const VertexMap& c);

// Number of geodesics between two vertices = number of linear extensions of
// the inclusion poset on the Δ-images.
std::uint64_t shortest_path_count(const VertexMap& a, const VertexMap& b, int cap = 10);

// True iff every geodesic from a to b passes through c. Primary computation
// is the forward inclusion criterion; with verify set, the printed negation
// criterion is evaluated as well and asserted complementary.
bool mandatory_vertex(const VertexMap& a, const VertexMap& b, const VertexMap& c,
                      bool verify = false);

// Vertex sets {φ : φ(S)=A} and {φ : φ(S)=B}; removing the type-S edges leaves
// exactly these two components.
std::pair<std::vector<int>, std::vector<int>> kappa_cutset(const BunemanGraph& g, int split,
                                                           bool verify = false);

struct Restriction {
    SystemPtr subsystem;
    BunemanGraph graph;         // B(Σ')
    std::vector<int> image_of;  // vertex of B(Σ) -> vertex of B(Σ'); surjective
    std::vector<int> split_map; // split of Σ' -> split of Σ
};

// res_{Σ→Σ'} for Σ' given by ascending split indices.
Restriction restrict(const BunemanGraph& g, const std::vector<int>& splits,
                     const EnumerationOptions& opts = {});

} // namespace buneman
