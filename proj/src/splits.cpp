#include "buneman/splits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace buneman {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (labels_.size() < 2)
        fail(ErrorCode::empty_ground_set,
             "ground set needs at least 2 elements, got " + std::to_string(labels_.size()));
    for (std::size_t i = 1; i < labels_.size(); ++i)
        if (labels_[i] == labels_[i - 1])
            fail(ErrorCode::unknown_element, "duplicate element label '" + labels_[i] + "'");
}

int GroundSet::index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label)
        fail(ErrorCode::unknown_element, "element '" + label + "' not in ground set");
    return static_cast<int>(it - labels_.begin());
}

SplitSystem::SplitSystem(GroundSet ground, const std::vector<Bitset>& raw_splits)
    : ground_(std::move(ground)) {
    const std::size_t n = static_cast<std::size_t>(ground_.size());
    std::set<Bitset> seen;
    for (std::size_t k = 0; k < raw_splits.size(); ++k) {
        const Bitset& raw = raw_splits[k];
        if (raw.size() != n)
            fail(ErrorCode::ground_set_mismatch,
                 "split " + std::to_string(k) + " has width " + std::to_string(raw.size()) +
                     ", ground set has " + std::to_string(n));
        Bitset comp = ~raw;
        if (raw.none() || comp.none())
            fail(ErrorCode::improper_split,
                 "split " + std::to_string(k) + " is empty or the full set");
        Split s;
        if (raw.test(0)) {
            s.part_a = raw;
            s.part_b = std::move(comp);
        } else {
            s.part_a = std::move(comp);
            s.part_b = raw;
        }
        if (!seen.insert(s.part_a).second)
            fail(ErrorCode::duplicate_split,
                 "split " + std::to_string(k) + " duplicates an earlier split");
        splits_.push_back(std::move(s));
    }
    if (splits_.empty())
        fail(ErrorCode::improper_split, "split system must contain at least one split");
}

std::string SplitSystem::split_repr(int i) const {
    const Split& s = split(i);
    const Bitset& shown =
        s.part_b.count() < s.part_a.count() ? s.part_b : s.part_a;
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : shown.indices()) {
        if (!first) os << ',';
        os << ground_.label(e);
        first = false;
    }
    os << '}';
    return os.str();
}

bool SplitSystem::operator==(const SplitSystem& o) const {
    if (!(ground_ == o.ground_) || splits_.size() != o.splits_.size()) return false;
    for (std::size_t i = 0; i < splits_.size(); ++i)
        if (!(splits_[i] == o.splits_[i])) return false;
    return true;
}

SystemPtr make_split_system(GroundSet ground, const std::vector<Bitset>& raw_splits) {
    return std::make_shared<const SplitSystem>(std::move(ground), raw_splits);
}

bool is_compatible(const Split& s, const Split& t) {
    if (s.part_a.size() != t.part_a.size())
        fail(ErrorCode::ground_set_mismatch, "splits over different ground sets");
    return !s.part_a.intersects(t.part_a) || !s.part_a.intersects(t.part_b) ||
           !s.part_b.intersects(t.part_a) || !s.part_b.intersects(t.part_b);
}

const Bitset& a_arrow(const Split& s, const Split& t) {
    if (s.part_a.size() != t.part_a.size())
        fail(ErrorCode::ground_set_mismatch, "splits over different ground sets");
    if (s == t) fail(ErrorCode::identical_splits, "A(S↘S') needs S ≠ S'");
    const bool aa = s.part_a.intersects(t.part_a);
    const bool ab = s.part_a.intersects(t.part_b);
    const bool ba = s.part_b.intersects(t.part_a);
    const bool bb = s.part_b.intersects(t.part_b);
    if (aa && ab && ba && bb)
        fail(ErrorCode::incompatible_pair, "A(S↘S') needs compatible splits");
    // For distinct compatible splits exactly one of the four intersections is
    // empty, so exactly one part of s meets both parts of t.
    if (aa && ab) return s.part_a;
    return s.part_b;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace

IncompatibilityGraph incompatibility_graph(const SplitSystem& sys) {
    IncompatibilityGraph g;
    g.split_count = sys.size();
    UnionFind uf(sys.size());
    for (int i = 0; i < sys.size(); ++i)
        for (int j = i + 1; j < sys.size(); ++j)
            if (!is_compatible(sys.split(i), sys.split(j))) {
                g.edges.emplace_back(i, j);
                uf.unite(i, j);
            }
    g.component_of.resize(static_cast<std::size_t>(sys.size()));
    for (int i = 0; i < sys.size(); ++i) g.component_of[static_cast<std::size_t>(i)] = uf.find(i);
    for (int i = 0; i < sys.size(); ++i) {
        int id = g.component_of[static_cast<std::size_t>(i)];
        if (id == i) {
            g.component_ids.push_back(id);
            g.components.emplace_back();
        }
        g.components[static_cast<std::size_t>(
                          std::lower_bound(g.component_ids.begin(), g.component_ids.end(), id) -
                          g.component_ids.begin())]
            .push_back(i);
    }
    return g;
}

int IncompatibilityGraph::component_index(int id) const {
    auto it = std::lower_bound(component_ids.begin(), component_ids.end(), id);
    if (it == component_ids.end() || *it != id)
        fail(ErrorCode::unknown_component, "no component with id " + std::to_string(id));
    return static_cast<int>(it - component_ids.begin());
}

const std::vector<int>& IncompatibilityGraph::component(int id) const {
    return components[static_cast<std::size_t>(component_index(id))];
}

const Bitset& a_arrow_component(const SplitSystem& sys, int split,
                                const std::vector<int>& component, bool verify) {
    if (component.empty())
        fail(ErrorCode::unknown_component, "empty component");
    for (int member : component)
        if (member == split)
            fail(ErrorCode::split_in_component,
                 "A(S↘Σ0) needs S outside Σ0, but split " + std::to_string(split) +
                     " is a member");
    const Bitset& result = a_arrow(sys.split(split), sys.split(component.front()));
    if (verify) {
        // fact (4.7): the arrow part is constant across the whole component
        for (std::size_t k = 1; k < component.size(); ++k)
            if (!(a_arrow(sys.split(split), sys.split(component[k])) == result))
                fail(ErrorCode::internal_inconsistency,
                     "A(S↘S') disagrees within one incompatibility component");
    }
    return result;
}

} // namespace buneman
