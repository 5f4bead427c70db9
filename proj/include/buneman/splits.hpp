#pragma once

#include "buneman/bitset.hpp"
#include "buneman/errors.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace buneman {

// Ground set X: sorted, duplicate-free element labels. Element indices refer
// to this sorted order everywhere.
class GroundSet {
public:
    explicit GroundSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    int index_of(const std::string& label) const; // throws UnknownElement

    bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
};

// An X-split {A, X−A}. Canonical orientation: part_a contains element 0.
struct Split {
    Bitset part_a;
    Bitset part_b;

    const Bitset& part_of(int element) const {
        return part_a.test(static_cast<std::size_t>(element)) ? part_a : part_b;
    }
    // side(false) = A, side(true) = B; matches the VertexMap bit convention
    const Bitset& side(bool b) const { return b ? part_b : part_a; }

    bool operator==(const Split& o) const { return part_a == o.part_a; }
};

class SplitSystem {
public:
    SplitSystem(GroundSet ground, const std::vector<Bitset>& raw_splits);

    const GroundSet& ground() const { return ground_; }
    int ground_size() const { return ground_.size(); }
    int size() const { return static_cast<int>(splits_.size()); }
    const Split& split(int i) const { return splits_[static_cast<std::size_t>(i)]; }
    const std::vector<Split>& splits() const { return splits_; }

    // Display form: the smaller part (part_a on ties), e.g. "{4,5}"
    std::string split_repr(int i) const;

    bool operator==(const SplitSystem& o) const;

private:
    GroundSet ground_;
    std::vector<Split> splits_;
};

using SystemPtr = std::shared_ptr<const SplitSystem>;

SystemPtr make_split_system(GroundSet ground, const std::vector<Bitset>& raw_splits);

// Compatibility: at least one of A∩A', A∩B', B∩A', B∩B' is empty.
bool is_compatible(const Split& s, const Split& t);

// For compatible s ≠ t: the unique part of s meeting both parts of t.
const Bitset& a_arrow(const Split& s, const Split& t);

struct IncompatibilityGraph {
    int split_count = 0;
    std::vector<std::pair<int, int>> edges;       // i < j, incompatible pairs
    std::vector<int> component_of;                // split -> component id
    std::vector<int> component_ids;               // ascending; id = minimal member
    std::vector<std::vector<int>> components;     // parallel to component_ids

    const std::vector<int>& component(int id) const; // throws UnknownComponent
    int component_index(int id) const;               // position in component_ids
};

IncompatibilityGraph incompatibility_graph(const SplitSystem& sys);

// A(S↘Σ0): the common a_arrow(S, S') over all S' in the component Σ0.
// With verify set, agreement across every member is asserted (fact 4.7).
const Bitset& a_arrow_component(const SplitSystem& sys, int split,
                                const std::vector<int>& component,
                                bool verify = false);

} // namespace buneman
