#include "buneman/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace buneman {

VertexMap::VertexMap(SystemPtr system, Bitset sides)
    : sys_(std::move(system)), sides_(std::move(sides)) {
    if (static_cast<int>(sides_.size()) != sys_->size())
        fail(ErrorCode::system_mismatch,
             "side bits (" + std::to_string(sides_.size()) + ") do not match split count (" +
                 std::to_string(sys_->size()) + ")");
}

bool VertexMap::is_vertex() const {
    if (vertex_cache_ < 0) {
        bool ok = true;
        const int m = sys_->size();
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m; ++j)
                if (!image(i).intersects(image(j))) {
                    ok = false;
                    break;
                }
        vertex_cache_ = ok ? 1 : 0;
    }
    return vertex_cache_ == 1;
}

bool VertexMap::operator==(const VertexMap& o) const {
    return sides_ == o.sides_ && (sys_ == o.sys_ || *sys_ == *o.sys_);
}

VertexMap label_map(const SystemPtr& sys, int element) {
    Bitset sides(static_cast<std::size_t>(sys->size()));
    for (int s = 0; s < sys->size(); ++s)
        if (sys->split(s).part_b.test(static_cast<std::size_t>(element)))
            sides.set(static_cast<std::size_t>(s));
    return {sys, std::move(sides)};
}

void require_same_system(const VertexMap& a, const VertexMap& b) {
    if (a.system() == b.system()) return;
    if (*a.system() == *b.system()) return;
    fail(ErrorCode::system_mismatch, "vertex maps over different split systems");
}

namespace {

// All side-assignments over the first `upto` splits whose chosen parts
// pairwise intersect, i.e. V of the prefix system. Extending never discards a
// valid prefix vertex (extension lemma), which keeps this output-sensitive.
std::vector<Bitset> incremental_enumerate(const SplitSystem& sys, std::size_t max_vertices) {
    const int m = sys.size();
    std::vector<Bitset> partials{Bitset(static_cast<std::size_t>(m))};
    for (int s = 0; s < m; ++s) {
        std::vector<Bitset> next;
        next.reserve(partials.size() * 2);
        for (const Bitset& p : partials) {
            bool extended = false;
            for (int bit = 0; bit < 2; ++bit) {
                const Bitset& part = sys.split(s).side(bit != 0);
                bool ok = true;
                for (int j = 0; j < s && ok; ++j)
                    ok = part.intersects(sys.split(j).side(p.test(static_cast<std::size_t>(j))));
                if (!ok) continue;
                Bitset q = p;
                if (bit) q.set(static_cast<std::size_t>(s));
                next.push_back(std::move(q));
                extended = true;
            }
            if (!extended)
                fail(ErrorCode::internal_inconsistency,
                     "prefix vertex admits no extension (extension lemma violated)");
        }
        if (next.size() > max_vertices)
            fail(ErrorCode::cap_exceeded,
                 "vertex count exceeds cap of " + std::to_string(max_vertices));
        partials = std::move(next);
    }
    return partials;
}

std::vector<Bitset> brute_enumerate(const SplitSystem& sys, int max_splits) {
    const int m = sys.size();
    if (m > max_splits || m > 63)
        fail(ErrorCode::cap_exceeded,
             "brute enumeration over " + std::to_string(m) + " splits exceeds cap of " +
                 std::to_string(std::min(max_splits, 63)));
    // pairwise emptiness table: empt[(i*m+j)*4 + (bi<<1|bj)]
    std::vector<char> empt(static_cast<std::size_t>(m) * static_cast<std::size_t>(m) * 4, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int bi = 0; bi < 2; ++bi)
                for (int bj = 0; bj < 2; ++bj)
                    empt[(static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                          static_cast<std::size_t>(j)) *
                             4 +
                         static_cast<std::size_t>((bi << 1) | bj)] =
                        !sys.split(i).side(bi != 0).intersects(sys.split(j).side(bj != 0));
    std::vector<Bitset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m; ++j)
                if (empt[(static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                          static_cast<std::size_t>(j)) *
                             4 +
                         static_cast<std::size_t>((((mask >> i) & 1) << 1) | ((mask >> j) & 1))]) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        Bitset b(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) b.set(static_cast<std::size_t>(i));
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace

BunemanGraph BunemanGraph::enumerate(SystemPtr sys, const EnumerationOptions& opts) {
    BunemanGraph g;
    g.sys_ = std::move(sys);
    const SplitSystem& system = *g.sys_;
    const int m = system.size();

    g.sides_ = opts.strategy == Strategy::brute
                   ? brute_enumerate(system, opts.max_splits)
                   : incremental_enumerate(system, opts.max_vertices);
    std::sort(g.sides_.begin(), g.sides_.end());
    g.index_.reserve(g.sides_.size() * 2);
    for (std::size_t v = 0; v < g.sides_.size(); ++v)
        g.index_.emplace(g.sides_[v], static_cast<int>(v));

    const int nv = g.vertex_count();
    g.min_image_.resize(static_cast<std::size_t>(nv));
    g.adj_.resize(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        const Bitset& sv = g.sides_[static_cast<std::size_t>(v)];
        auto image = [&](int s) -> const Bitset& {
            return system.split(s).side(sv.test(static_cast<std::size_t>(s)));
        };
        for (int s = 0; s < m; ++s) {
            bool minimal = true;
            for (int t = 0; t < m && minimal; ++t)
                if (t != s && image(t).is_proper_subset_of(image(s))) minimal = false;
            if (!minimal) continue;
            g.min_image_[static_cast<std::size_t>(v)].push_back(s);
            Bitset w = sv;
            w.flip(static_cast<std::size_t>(s));
            auto it = g.index_.find(w);
            if (it == g.index_.end())
                fail(ErrorCode::internal_inconsistency,
                     "flip along a minimal-image split left the vertex set");
            g.adj_[static_cast<std::size_t>(v)].emplace_back(s, it->second);
        }
    }
    long long deg_sum = 0;
    for (const auto& a : g.adj_) deg_sum += static_cast<long long>(a.size());
    g.edge_count_ = static_cast<int>(deg_sum / 2);

    g.label_vertex_.resize(static_cast<std::size_t>(system.ground_size()));
    g.labels_at_.resize(static_cast<std::size_t>(nv));
    for (int x = 0; x < system.ground_size(); ++x) {
        Bitset sides(static_cast<std::size_t>(m));
        for (int s = 0; s < m; ++s)
            if (system.split(s).part_b.test(static_cast<std::size_t>(x)))
                sides.set(static_cast<std::size_t>(s));
        auto it = g.index_.find(sides);
        if (it == g.index_.end())
            fail(ErrorCode::internal_inconsistency,
                 "labeling map phi_x is missing from the vertex set");
        g.label_vertex_[static_cast<std::size_t>(x)] = it->second;
        g.labels_at_[static_cast<std::size_t>(it->second)].push_back(x);
    }

    if (opts.verify) {
        // adjacency from flips must equal the pairwise |Δ| = 1 scan
        std::vector<std::pair<int, int>> scan;
        for (int u = 0; u < nv; ++u)
            for (int v = u + 1; v < nv; ++v)
                if ((g.sides_[static_cast<std::size_t>(u)] ^
                     g.sides_[static_cast<std::size_t>(v)])
                        .count() == 1)
                    scan.emplace_back(u, v);
        std::vector<std::pair<int, int>> built;
        for (int u = 0; u < nv; ++u)
            for (auto [s, v] : g.adj_[static_cast<std::size_t>(u)])
                if (u < v) built.emplace_back(u, v);
        std::sort(built.begin(), built.end());
        if (scan != built)
            fail(ErrorCode::internal_inconsistency,
                 "neighbor lists disagree with the pairwise difference scan");
        // connectivity
        std::vector<char> seen(static_cast<std::size_t>(nv), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [s, v] : g.adj_[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++reached;
                    q.push(v);
                }
        }
        if (reached != nv)
            fail(ErrorCode::internal_inconsistency, "Buneman graph is not connected");
        // the two strategies must agree whenever brute is feasible
        if (m <= std::min(opts.max_splits, 63)) {
            auto other = opts.strategy == Strategy::brute
                             ? incremental_enumerate(system, opts.max_vertices)
                             : brute_enumerate(system, opts.max_splits);
            std::sort(other.begin(), other.end());
            if (other != g.sides_)
                fail(ErrorCode::internal_inconsistency,
                     "brute and incremental enumeration disagree");
        }
    }
    return g;
}

int BunemanGraph::find(const Bitset& sides) const {
    auto it = index_.find(sides);
    return it == index_.end() ? -1 : it->second;
}

int BunemanGraph::index_of(const VertexMap& phi) const {
    if (!(phi.system() == sys_ || *phi.system() == *sys_))
        fail(ErrorCode::system_mismatch, "vertex map belongs to a different system");
    int v = find(phi.sides());
    if (v < 0) fail(ErrorCode::not_a_vertex, "map violates (BG2), not a vertex of B(Σ)");
    return v;
}

std::vector<std::tuple<int, int, int>> BunemanGraph::edges() const {
    std::vector<std::tuple<int, int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < vertex_count(); ++u)
        for (auto [s, v] : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v, s);
    std::sort(out.begin(), out.end());
    return out;
}

Bitset delta(const VertexMap& a, const VertexMap& b) {
    require_same_system(a, b);
    return a.sides() ^ b.sides();
}

int distance(const VertexMap& a, const VertexMap& b) {
    return static_cast<int>(delta(a, b).count());
}

VertexMap flip(const VertexMap& phi, const Bitset& xi) {
    return {phi.system(), phi.sides() ^ xi};
}

VertexMap flip(const VertexMap& phi, const std::vector<int>& xi) {
    return flip(phi, Bitset::from_indices(phi.sides().size(), xi));
}

VertexMap flip_one(const VertexMap& phi, int split) {
    Bitset s = phi.sides();
    s.flip(static_cast<std::size_t>(split));
    return {phi.system(), std::move(s)};
}

std::vector<int> min_image(const VertexMap& phi) {
    if (!phi.is_vertex()) fail(ErrorCode::not_a_vertex, "Σ^(φ) requires a (BG2) vertex");
    const int m = phi.system()->size();
    std::vector<int> out;
    for (int s = 0; s < m; ++s) {
        bool minimal = true;
        for (int t = 0; t < m && minimal; ++t)
            if (t != s && phi.image(t).is_proper_subset_of(phi.image(s))) minimal = false;
        if (minimal) out.push_back(s);
    }
    return out;
}

std::vector<std::pair<int, VertexMap>> neighbor_maps(const VertexMap& phi) {
    std::vector<std::pair<int, VertexMap>> out;
    for (int s : min_image(phi)) out.emplace_back(s, flip_one(phi, s));
    return out;
}

VertexMap median(const VertexMap& a, const VertexMap& b, const VertexMap& c) {
    require_same_system(a, b);
    require_same_system(a, c);
    const Bitset& x = a.sides();
    const Bitset& y = b.sides();
    const Bitset& z = c.sides();
    return {a.system(), (x & y) | (x & z) | (y & z)};
}

std::uint64_t shortest_path_count(const VertexMap& a, const VertexMap& b, int cap) {
    require_same_system(a, b);
    std::vector<int> d = delta(a, b).indices();
    const int k = static_cast<int>(d.size());
    if (k > cap || k > 20)
        fail(ErrorCode::cap_exceeded,
             "|Δ| = " + std::to_string(k) + " exceeds geodesic-count cap of " +
                 std::to_string(std::min(cap, 20)));
    // linear extensions of the inclusion poset on the a-images of Δ
    std::vector<std::uint32_t> above(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && a.image(d[static_cast<std::size_t>(i)])
                              .is_proper_subset_of(a.image(d[static_cast<std::size_t>(j)])))
                above[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
    std::vector<std::uint64_t> f(std::size_t{1} << k, 0);
    f[0] = 1;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        std::uint64_t total = 0;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1u) {
                // i removable last iff nothing above it remains in the mask
                if ((above[static_cast<std::size_t>(i)] & mask) == 0)
                    total += f[mask & ~(std::uint32_t{1} << i)];
            }
        f[mask] = total;
    }
    return f[(std::size_t{1} << k) - 1];
}

bool mandatory_vertex(const VertexMap& a, const VertexMap& b, const VertexMap& c, bool verify) {
    require_same_system(a, b);
    require_same_system(a, c);
    const Bitset d_ab = a.sides() ^ b.sides();
    const Bitset d_ac = a.sides() ^ c.sides();
    const Bitset d_cb = c.sides() ^ b.sides();

    bool on_all = (d_ab == (d_ac | d_cb)) && !(d_ac & d_cb).any();
    if (on_all) {
        for (int s : d_ac.indices()) {
            for (int t : d_cb.indices())
                if (!a.image(s).is_proper_subset_of(a.image(t))) {
                    on_all = false;
                    break;
                }
            if (!on_all) break;
        }
    }
    if (verify) {
        // negation criterion: a geodesic avoiding c exists iff some
        // S ∈ Δ(a,c), S' ∈ Δ(b,c) have c(S) ∪ c(S') ≠ X
        bool avoidable = false;
        const Bitset d_bc = b.sides() ^ c.sides();
        for (int s : d_ac.indices()) {
            for (int t : d_bc.indices())
                if ((~c.image(s)).intersects(~c.image(t))) {
                    avoidable = true;
                    break;
                }
            if (avoidable) break;
        }
        if (on_all == avoidable)
            fail(ErrorCode::internal_inconsistency,
                 "the two geodesic criteria are not complementary");
    }
    return on_all;
}

std::pair<std::vector<int>, std::vector<int>> kappa_cutset(const BunemanGraph& g, int split,
                                                           bool verify) {
    if (split < 0 || split >= g.system()->size())
        fail(ErrorCode::unknown_component, "split index " + std::to_string(split) +
                                               " out of range");
    std::pair<std::vector<int>, std::vector<int>> sides;
    for (int v = 0; v < g.vertex_count(); ++v)
        (g.sides(v).test(static_cast<std::size_t>(split)) ? sides.second : sides.first)
            .push_back(v);
    if (verify) {
        // BFS avoiding type-S edges must yield exactly the two side classes
        std::vector<int> comp(static_cast<std::size_t>(g.vertex_count()), -1);
        int ncomp = 0;
        for (int start = 0; start < g.vertex_count(); ++start) {
            if (comp[static_cast<std::size_t>(start)] != -1) continue;
            std::queue<int> q;
            q.push(start);
            comp[static_cast<std::size_t>(start)] = ncomp;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                for (auto [s, w] : g.neighbors(u))
                    if (s != split && comp[static_cast<std::size_t>(w)] == -1) {
                        comp[static_cast<std::size_t>(w)] = ncomp;
                        q.push(w);
                    }
            }
            ++ncomp;
        }
        bool ok = ncomp == 2 && !sides.first.empty() && !sides.second.empty();
        if (ok) {
            const int comp_a = comp[static_cast<std::size_t>(sides.first.front())];
            for (int v = 0; ok && v < g.vertex_count(); ++v) {
                const bool on_a = comp[static_cast<std::size_t>(v)] == comp_a;
                ok = on_a == !g.sides(v).test(static_cast<std::size_t>(split));
            }
        }
        if (ok) {
            // labeling maps land on their own side
            const Split& s = g.system()->split(split);
            for (int x = 0; x < g.system()->ground_size() && ok; ++x) {
                int v = g.label_vertex(x);
                ok = g.sides(v).test(static_cast<std::size_t>(split)) ==
                     s.part_b.test(static_cast<std::size_t>(x));
            }
        }
        if (!ok)
            fail(ErrorCode::internal_inconsistency,
                 "κ-cutset does not induce the expected two components");
    }
    return sides;
}

Restriction restrict(const BunemanGraph& g, const std::vector<int>& splits,
                     const EnumerationOptions& opts) {
    if (splits.empty()) fail(ErrorCode::empty_subset, "restriction needs at least one split");
    std::vector<int> sel = splits;
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    for (int s : sel)
        if (s < 0 || s >= g.system()->size())
            fail(ErrorCode::unknown_component,
                 "split index " + std::to_string(s) + " out of range");

    std::vector<Bitset> parts;
    parts.reserve(sel.size());
    for (int s : sel) parts.push_back(g.system()->split(s).part_a);
    Restriction r;
    r.subsystem = make_split_system(g.system()->ground(), parts);
    r.split_map = sel;
    r.graph = BunemanGraph::enumerate(r.subsystem, opts);

    r.image_of.resize(static_cast<std::size_t>(g.vertex_count()));
    std::vector<char> hit(static_cast<std::size_t>(r.graph.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        Bitset proj(sel.size());
        for (std::size_t k = 0; k < sel.size(); ++k)
            if (g.sides(v).test(static_cast<std::size_t>(sel[k]))) proj.set(k);
        int w = r.graph.find(proj);
        if (w < 0)
            fail(ErrorCode::internal_inconsistency,
                 "restriction of a vertex is not a vertex of the subsystem");
        r.image_of[static_cast<std::size_t>(v)] = w;
        hit[static_cast<std::size_t>(w)] = 1;
    }
    for (char h : hit)
        if (!h)
            fail(ErrorCode::internal_inconsistency,
                 "restriction map is not surjective (extension lemma violated)");
    return r;
}

} // namespace buneman
