#include "buneman/cut_blocks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace buneman {

namespace {

void check(bool ok, const char* what) {
    if (!ok) fail(ErrorCode::internal_inconsistency, what);
}

void require_vertex(const BunemanGraph& g, int v) {
    if (v < 0 || v >= g.vertex_count())
        fail(ErrorCode::not_a_vertex, "vertex index " + std::to_string(v) + " out of range");
}

int uf_find(std::vector<int>& parent, int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
        parent[static_cast<std::size_t>(a)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        a = parent[static_cast<std::size_t>(a)];
    }
    return a;
}

// ids must be ascending; edges are positions into ids with a < b. Components
// are numbered by their minimal id (= minimal position).
LabeledGraph make_labeled(std::vector<int> ids, std::vector<std::pair<int, int>> edges) {
    LabeledGraph g;
    const int k = static_cast<int>(ids.size());
    g.ids = std::move(ids);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);

    std::vector<int> parent(static_cast<std::size_t>(k));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& [a, b] : g.edges) {
        int ra = uf_find(parent, a), rb = uf_find(parent, b);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    g.component_of.assign(static_cast<std::size_t>(k), -1);
    std::vector<int> label(static_cast<std::size_t>(k), -1);
    for (int pos = 0; pos < k; ++pos) {
        int r = uf_find(parent, pos);
        if (label[static_cast<std::size_t>(r)] < 0)
            label[static_cast<std::size_t>(r)] = g.component_count++;
        g.component_of[static_cast<std::size_t>(pos)] = label[static_cast<std::size_t>(r)];
    }
    return g;
}

// Component-vs-rest witness; the component holding the minimal id comes first.
Bipartition component_vs_rest(const LabeledGraph& lg) {
    Bipartition w;
    for (std::size_t pos = 0; pos < lg.ids.size(); ++pos) {
        (lg.component_of[pos] == 0 ? w.first : w.second).push_back(lg.ids[pos]);
    }
    return w;
}

// Component structure of B(Σ) with one vertex removed.
std::pair<int, std::vector<int>> bfs_minus(const BunemanGraph& g, int removed) {
    const int nv = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(nv), -1);
    int count = 0;
    std::vector<int> queue;
    for (int start = 0; start < nv; ++start) {
        if (start == removed || comp[static_cast<std::size_t>(start)] >= 0) continue;
        comp[static_cast<std::size_t>(start)] = count;
        queue.assign(1, start);
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (const auto& [type, w] : g.neighbors(u)) {
                (void)type;
                if (w == removed || comp[static_cast<std::size_t>(w)] >= 0) continue;
                comp[static_cast<std::size_t>(w)] = count;
                queue.push_back(w);
            }
        }
        ++count;
    }
    return {count, std::move(comp)};
}

int dist(const BunemanGraph& g, int u, int w) {
    return static_cast<int>((g.sides(u) ^ g.sides(w)).count());
}

// The part of X missed by φ(S), i.e. the side φ did not select.
const Bitset& far_side(const BunemanGraph& g, int v, int s) {
    return g.system()->split(s).side(!g.sides(v).test(static_cast<std::size_t>(s)));
}

// φ has ≥ 2 blocks through it iff Σ^(φ) meets ≥ 2 components of Γ(Σ).
bool meets_two_components(const BunemanGraph& g, const IncompatibilityGraph& gamma, int v) {
    int first = -1;
    for (int s : g.min_image(v)) {
        int id = gamma.component_of[static_cast<std::size_t>(s)];
        if (first < 0) first = id;
        else if (id != first) return true;
    }
    return false;
}

struct Frame {
    Bitset member_mask;  // bit s = 1 iff s ∈ Σ0
    Bitset frame_sides;  // bit s = A(S↘Σ0) == part_b, for s ∉ Σ0
};

Frame make_frame(const SplitSystem& sys, const std::vector<int>& members, bool verify) {
    const int m = sys.size();
    Frame f{Bitset(static_cast<std::size_t>(m)), Bitset(static_cast<std::size_t>(m))};
    for (int s : members) f.member_mask.set(static_cast<std::size_t>(s));
    for (int s = 0; s < m; ++s) {
        if (f.member_mask.test(static_cast<std::size_t>(s))) continue;
        if (a_arrow_component(sys, s, members, verify) == sys.split(s).part_b)
            f.frame_sides.set(static_cast<std::size_t>(s));
    }
    return f;
}

// B(Σ0) by the frame filter: φ agrees with A(S↘Σ0) on every S ∉ Σ0.
bool in_block(const BunemanGraph& g, const Frame& f, int u) {
    return ((g.sides(u) ^ f.frame_sides) & ~f.member_mask).none();
}

std::vector<int> block_members(const BunemanGraph& g, const Frame& f) {
    std::vector<int> out;
    for (int u = 0; u < g.vertex_count(); ++u)
        if (in_block(g, f, u)) out.push_back(u);
    return out;
}

struct BiconnResult {
    std::vector<std::vector<int>> components;  // sorted vertex sets
    std::vector<char> articulation;
};

// Iterative lowpoint decomposition into biconnected components.
BiconnResult biconnected_components(const BunemanGraph& g) {
    const int n = g.vertex_count();
    BiconnResult r;
    r.articulation.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        parent(static_cast<std::size_t>(n), -1), root_children(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> estack;
    std::vector<std::pair<int, int>> frames;  // (vertex, next neighbor position)
    int timer = 0;
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] >= 0) continue;
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        frames.assign(1, {root, 0});
        while (!frames.empty()) {
            auto& [u, next] = frames.back();
            const auto& adj = g.neighbors(u);
            if (next < static_cast<int>(adj.size())) {
                int w = adj[static_cast<std::size_t>(next++)].second;
                if (disc[static_cast<std::size_t>(w)] < 0) {
                    estack.emplace_back(u, w);
                    parent[static_cast<std::size_t>(w)] = u;
                    if (u == root) ++root_children[static_cast<std::size_t>(root)];
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    frames.emplace_back(w, 0);
                } else if (w != parent[static_cast<std::size_t>(u)] &&
                           disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(u)]) {
                    estack.emplace_back(u, w);
                    low[static_cast<std::size_t>(u)] =
                        std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                int done = u;
                frames.pop_back();
                int p = parent[static_cast<std::size_t>(done)];
                if (p < 0) continue;
                low[static_cast<std::size_t>(p)] =
                    std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(done)]);
                if (low[static_cast<std::size_t>(done)] >= disc[static_cast<std::size_t>(p)]) {
                    if (p != root) r.articulation[static_cast<std::size_t>(p)] = 1;
                    std::set<int> comp;
                    std::pair<int, int> top;
                    do {
                        top = estack.back();
                        estack.pop_back();
                        comp.insert(top.first);
                        comp.insert(top.second);
                    } while (top != std::pair<int, int>{p, done});
                    r.components.emplace_back(comp.begin(), comp.end());
                }
            }
        }
        if (root_children[static_cast<std::size_t>(root)] > 1)
            r.articulation[static_cast<std::size_t>(root)] = 1;
    }
    return r;
}

}  // namespace

std::vector<std::vector<int>> LabeledGraph::component_ids() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(component_count));
    for (std::size_t pos = 0; pos < ids.size(); ++pos)
        out[static_cast<std::size_t>(component_of[pos])].push_back(ids[pos]);
    return out;
}

std::vector<int> x_phi(const BunemanGraph& g, int v) {
    require_vertex(g, v);
    std::vector<int> out;
    for (int x = 0; x < g.system()->ground_size(); ++x)
        if (g.label_vertex(x) != v) out.push_back(x);
    return out;
}

LabeledGraph gamma_phi_sigma(const BunemanGraph& g, int v) {
    require_vertex(g, v);
    const int m = g.system()->size();
    std::vector<int> ids(static_cast<std::size_t>(m));
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<std::pair<int, int>> edges;
    // φ(S) ∪ φ(S') ≠ X iff the two unselected sides intersect
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (far_side(g, v, i).intersects(far_side(g, v, j))) edges.emplace_back(i, j);
    return make_labeled(std::move(ids), std::move(edges));
}

LabeledGraph gamma_phi_sigma_min(const BunemanGraph& g, int v, bool verify) {
    require_vertex(g, v);
    const SplitSystem& sys = *g.system();
    const std::vector<int>& mins = g.min_image(v);
    const int k = static_cast<int>(mins.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!is_compatible(sys.split(mins[static_cast<std::size_t>(i)]),
                               sys.split(mins[static_cast<std::size_t>(j)])))
                edges.emplace_back(i, j);
    LabeledGraph lg = make_labeled(mins, std::move(edges));
    if (verify) {
        // on Σ^(φ), "unselected sides intersect" collapses to incompatibility
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                int si = mins[static_cast<std::size_t>(i)], sj = mins[static_cast<std::size_t>(j)];
                check(!is_compatible(sys.split(si), sys.split(sj)) ==
                          far_side(g, v, si).intersects(far_side(g, v, sj)),
                      "minimal-image incompatibility disagrees with the unselected-side test");
            }
        }
        // distinct host components restrict to distinct components here
        IncompatibilityGraph gamma = incompatibility_graph(sys);
        std::set<int> hit;
        for (const auto& group : lg.component_ids()) {
            int id = gamma.component_of[static_cast<std::size_t>(group.front())];
            for (int s : group)
                check(gamma.component_of[static_cast<std::size_t>(s)] == id,
                      "restricted component crosses host incompatibility components");
            check(hit.insert(id).second,
                  "two restricted components land in one host incompatibility component");
        }
    }
    return lg;
}

LabeledGraph gamma_phi_x(const BunemanGraph& g, int v, bool verify) {
    require_vertex(g, v);
    const int m = g.system()->size();
    std::vector<int> xs = x_phi(g, v);
    const int k = static_cast<int>(xs.size());
    std::vector<int> pos_of(static_cast<std::size_t>(g.system()->ground_size()), -1);
    for (int i = 0; i < k; ++i) pos_of[static_cast<std::size_t>(xs[static_cast<std::size_t>(i)])] = i;
    std::set<std::pair<int, int>> edges;
    std::vector<int> hits;
    for (int s = 0; s < m; ++s) {
        hits.clear();
        for (int x : far_side(g, v, s).indices()) {
            int p = pos_of[static_cast<std::size_t>(x)];
            if (p >= 0) hits.push_back(p);
        }
        for (std::size_t i = 0; i < hits.size(); ++i)
            for (std::size_t j = i + 1; j < hits.size(); ++j)
                edges.emplace(hits[i], hits[j]);
    }
    LabeledGraph lg = make_labeled(std::move(xs),
                                   std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
    if (verify) {
        // the three printed forms agree: shared unselected side, strictly
        // shorter route than via φ, and a witness already inside Σ^(φ)
        const Bitset& pv = g.sides(v);
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                Bitset di = g.sides(g.label_vertex(lg.ids[static_cast<std::size_t>(i)])) ^ pv;
                Bitset dj = g.sides(g.label_vertex(lg.ids[static_cast<std::size_t>(j)])) ^ pv;
                bool listed = edges.count({i, j}) > 0;
                check(listed == di.intersects(dj),
                      "element graph edge disagrees with the distance form");
                bool via_min = false;
                for (int s : g.min_image(v))
                    via_min = via_min || (di.test(static_cast<std::size_t>(s)) &&
                                          dj.test(static_cast<std::size_t>(s)));
                check(listed == via_min,
                      "element graph edge disagrees with the minimal-image witness form");
            }
        }
    }
    return lg;
}

LabeledGraph gamma_phi_v(const BunemanGraph& g, int v, bool verify) {
    require_vertex(g, v);
    const int nv = g.vertex_count();
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(nv) - 1);
    std::vector<Bitset> ds;
    for (int u = 0; u < nv; ++u) {
        if (u == v) continue;
        ids.push_back(u);
        ds.push_back(g.sides(u) ^ g.sides(v));
    }
    const int k = static_cast<int>(ids.size());
    std::vector<std::pair<int, int>> edges;
    // ψ1(S) = ψ2(S) ≠ φ(S) for some S means the two Δ(φ,·) sets overlap
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (ds[static_cast<std::size_t>(i)].intersects(ds[static_cast<std::size_t>(j)]))
                edges.emplace_back(i, j);
    LabeledGraph lg = make_labeled(std::move(ids), std::move(edges));
    if (verify) {
        // components must be exactly the components of B(Σ) − φ
        auto [count, comp] = bfs_minus(g, v);
        check(count == lg.component_count,
              "vertex graph component count differs from deleted-vertex search");
        std::vector<int> to_bfs(static_cast<std::size_t>(lg.component_count), -1);
        std::set<int> used;
        for (std::size_t pos = 0; pos < lg.ids.size(); ++pos) {
            int& slot = to_bfs[static_cast<std::size_t>(lg.component_of[pos])];
            int b = comp[static_cast<std::size_t>(lg.ids[pos])];
            if (slot < 0) {
                check(used.insert(b).second, "vertex graph components split a search component");
                slot = b;
            } else {
                check(slot == b, "vertex graph components merge two search components");
            }
        }
    }
    return lg;
}

std::vector<int> delta_min(const VertexMap& psi, const VertexMap& phi) {
    require_same_system(psi, phi);
    std::vector<int> d = (psi.sides() ^ phi.sides()).indices();
    std::vector<int> out;
    for (int s : d) {
        bool minimal = true;
        for (int t : d)
            if (t != s && psi.image(t).is_proper_subset_of(psi.image(s))) minimal = false;
        if (minimal) out.push_back(s);
    }
    return out;
}

CutAnalysis is_cut_vertex(const BunemanGraph& g, int v, bool verify) {
    require_vertex(g, v);
    CutAnalysis r;
    r.vertex = v;
    r.sigma_phi = g.min_image(v);
    r.x_phi = x_phi(g, v);

    r.verdicts[0] = bfs_minus(g, v).first >= 2;
    LabeledGraph gm = gamma_phi_sigma_min(g, v, verify);
    r.verdicts[1] = gm.component_count >= 2;
    IncompatibilityGraph gamma = incompatibility_graph(*g.system());
    r.verdicts[2] = meets_two_components(g, gamma, v);
    LabeledGraph gs = gamma_phi_sigma(g, v);
    r.verdicts[3] = gs.component_count >= 2;
    LabeledGraph gx = gamma_phi_x(g, v, verify);
    r.verdicts[4] = gx.component_count >= 2;
    LabeledGraph gv = gamma_phi_v(g, v, verify);
    r.verdicts[5] = gv.component_count >= 2;

    r.is_cut = r.verdicts[0];
    for (bool verdict : r.verdicts)
        check(verdict == r.is_cut, "cut-vertex characterizations disagree");
    if (r.is_cut) {
        r.witness_sigma_phi = component_vs_rest(gm);
        r.witness_sigma = component_vs_rest(gs);
        r.witness_x = component_vs_rest(gx);
        r.witness_v = component_vs_rest(gv);
    }
    return r;
}

namespace {

// Exhaustive restatement checks for one correspondence row.
void verify_row(const BunemanGraph& g, int v, const CorrespondenceRow& row,
                const std::vector<int>& mins) {
    const SplitSystem& sys = *g.system();
    const int m = sys.size();
    const int nv = g.vertex_count();
    const Bitset& pv = g.sides(v);
    Bitset s0p = Bitset::from_indices(static_cast<std::size_t>(m), row.sigma_phi_part);
    Bitset s0 = Bitset::from_indices(static_cast<std::size_t>(m), row.sigma_part);
    Bitset minset = Bitset::from_indices(static_cast<std::size_t>(m), mins);
    std::set<int> x0(row.x_part.begin(), row.x_part.end());
    std::set<int> v0(row.v_part.begin(), row.v_part.end());

    check(s0p.is_subset_of(s0), "minimal-image part escapes its split part");
    check(s0p == (s0 & minset), "minimal-image part is not the split part restricted");
    for (int s = 0; s < m; ++s) {
        bool member = false;
        for (int t : row.sigma_phi_part)
            member = member || far_side(g, v, s).intersects(far_side(g, v, t));
        check(member == s0.test(static_cast<std::size_t>(s)),
              "split part differs from the unselected-side closure of the minimal part");
    }

    // element column, both through Δ_min and through full Δ
    Bitset dmin_union(static_cast<std::size_t>(m));
    for (int x = 0; x < sys.ground_size(); ++x) {
        int lx = g.label_vertex(x);
        if (lx == v) continue;
        Bitset d = g.sides(lx) ^ pv;
        std::vector<int> dm = delta_min(g.vertex(v), g.vertex(lx));
        check(Bitset::from_indices(static_cast<std::size_t>(m), dm) == (d & minset),
              "minimal difference set differs from the Δ ∩ Σ^(φ) form");
        bool inside = x0.count(x) > 0;
        bool dm_subset = true, dm_meets = false;
        for (int s : dm) {
            dm_subset = dm_subset && s0p.test(static_cast<std::size_t>(s));
            dm_meets = dm_meets || s0p.test(static_cast<std::size_t>(s));
        }
        check(inside == dm_subset, "element column: Δ_min containment form fails");
        check(inside == dm_meets, "element column: Δ_min intersection form fails");
        check(inside == d.is_subset_of(s0), "element column: Δ containment form fails");
        check(inside == d.intersects(s0), "element column: Δ intersection form fails");
        if (inside)
            for (int s : dm) dmin_union.set(static_cast<std::size_t>(s));
    }
    check(dmin_union == s0p, "element column does not reconstruct the minimal part");

    // vertex column
    std::map<int, int> neighbor_of;  // split in Σ^(φ) -> φ^S
    for (const auto& [type, w] : g.neighbors(v)) neighbor_of[type] = w;
    Bitset delta_union(static_cast<std::size_t>(m)), dmin_v_union(static_cast<std::size_t>(m));
    for (int u = 0; u < nv; ++u) {
        if (u == v) continue;
        Bitset d = g.sides(u) ^ pv;
        Bitset dm = d & minset;
        bool inside = v0.count(u) > 0;
        check(inside == dm.is_subset_of(s0p), "vertex column: Δ_min containment form fails");
        check(inside == dm.intersects(s0p), "vertex column: Δ_min intersection form fails");
        check(inside == d.is_subset_of(s0), "vertex column: Δ containment form fails");
        check(inside == d.intersects(s0), "vertex column: Δ intersection form fails");
        if (inside) {
            delta_union |= d;
            dmin_v_union |= dm;
        }
    }
    check(delta_union == s0, "vertex column does not reconstruct the split part");
    check(dmin_v_union == s0p, "vertex column does not reconstruct the minimal part");
    for (int s : row.sigma_phi_part)
        check(v0.count(neighbor_of.at(s)) > 0, "flip neighbor escapes its vertex part");
    for (int s : mins)
        check((v0.count(neighbor_of.at(s)) > 0) == s0p.test(static_cast<std::size_t>(s)),
              "vertex part holds a flip neighbor of a foreign split");

    // element vs vertex column
    for (int u = 0; u < nv; ++u) {
        if (u == v) continue;
        Bitset d = g.sides(u) ^ pv;
        bool linked = false;
        for (int x : row.x_part)
            linked = linked || (g.sides(g.label_vertex(x)) ^ pv).intersects(d);
        check(linked == (v0.count(u) > 0), "element-to-vertex linking form fails");
    }
    for (int x = 0; x < sys.ground_size(); ++x) {
        int lx = g.label_vertex(x);
        check((lx != v && v0.count(lx) > 0) == (x0.count(x) > 0),
              "element part differs from the labels landing in the vertex part");
    }
}

// Rebuild the correspondence through the generic relation machinery and make
// sure both roads agree row by row.
void verify_against_relations(const BunemanGraph& g, int v,
                              const std::vector<CorrespondenceRow>& rows, const LabeledGraph& gm,
                              const LabeledGraph& gs, const LabeledGraph& gx,
                              const LabeledGraph& gv) {
    const int m = g.system()->size();
    BiRelation rel;
    rel.u_size = m;
    rel.v_size = static_cast<int>(gv.ids.size());
    for (std::size_t pos = 0; pos < gv.ids.size(); ++pos) {
        Bitset d = g.sides(gv.ids[pos]) ^ g.sides(v);
        for (int s : d.indices()) rel.pairs.emplace_back(s, static_cast<int>(pos));
    }
    std::vector<int> alpha = g.min_image(v);
    std::vector<int> beta;
    for (int x : gx.ids) {
        auto it = std::lower_bound(gv.ids.begin(), gv.ids.end(), g.label_vertex(x));
        check(it != gv.ids.end() && *it == g.label_vertex(x),
              "labeling vertex missing from the vertex universe");
        beta.push_back(static_cast<int>(it - gv.ids.begin()));
    }
    LiftedComponentMap lifted = lifted_bijection(rel, alpha, beta);
    check(lifted.count == static_cast<int>(rows.size()),
          "relation machinery finds a different component count");

    auto normalize = [](std::vector<std::pair<int, int>> e) {
        std::sort(e.begin(), e.end());
        return e;
    };
    check(normalize(project_u(rel)) == gs.edges, "shared-vertex projection differs from Γ_φ(Σ)");
    check(normalize(project_u(lifted.r_prime)) == gm.edges,
          "restricted projection differs from Γ_φ(Σ^(φ))");
    check(normalize(project_v(rel)) == gv.edges, "shared-split projection differs from Γ_φ(V^(φ))");
    check(normalize(project_v(lifted.r_prime)) == gx.edges,
          "restricted projection differs from Γ_φ(X^(φ))");

    // row ordering differs (minimal split of Σ0' vs of Σ0); match by content
    std::vector<int> row_of_label(static_cast<std::size_t>(lifted.count), -1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int lab = lifted.base.labels_u[static_cast<std::size_t>(rows[i].sigma_part.front())];
        check(row_of_label[static_cast<std::size_t>(lab)] < 0,
              "two rows map to one machinery component");
        row_of_label[static_cast<std::size_t>(lab)] = static_cast<int>(i);
    }
    auto expect_row = [&](int lab, std::size_t i, const char* what) {
        check(lab >= 0 && row_of_label[static_cast<std::size_t>(lab)] == static_cast<int>(i), what);
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CorrespondenceRow& row = rows[i];
        for (int s : row.sigma_part)
            expect_row(lifted.base.labels_u[static_cast<std::size_t>(s)], i,
                       "machinery split labels disagree with a row");
        for (int s : row.sigma_phi_part) {
            auto it = std::lower_bound(gm.ids.begin(), gm.ids.end(), s);
            expect_row(lifted.prime.labels_u[static_cast<std::size_t>(it - gm.ids.begin())], i,
                       "machinery minimal-split labels disagree with a row");
        }
        for (int x : row.x_part) {
            auto it = std::lower_bound(gx.ids.begin(), gx.ids.end(), x);
            expect_row(lifted.prime.labels_v[static_cast<std::size_t>(it - gx.ids.begin())], i,
                       "machinery element labels disagree with a row");
        }
        for (int u : row.v_part) {
            auto it = std::lower_bound(gv.ids.begin(), gv.ids.end(), u);
            expect_row(lifted.base.labels_v[static_cast<std::size_t>(it - gv.ids.begin())], i,
                       "machinery vertex labels disagree with a row");
        }
    }
}

}  // namespace

std::vector<CorrespondenceRow> component_correspondences(const BunemanGraph& g, int v,
                                                         bool verify) {
    require_vertex(g, v);
    LabeledGraph gm = gamma_phi_sigma_min(g, v, verify);
    LabeledGraph gs = gamma_phi_sigma(g, v);
    LabeledGraph gx = gamma_phi_x(g, v, verify);
    LabeledGraph gv = gamma_phi_v(g, v, verify);
    const int k = gm.component_count;
    check(gs.component_count == k && gx.component_count == k && gv.component_count == k,
          "the four graphs disagree on the component count");

    const int m = g.system()->size();
    std::vector<int> ord_of_split(static_cast<std::size_t>(m), -1);
    for (std::size_t pos = 0; pos < gm.ids.size(); ++pos)
        ord_of_split[static_cast<std::size_t>(gm.ids[pos])] = gm.component_of[pos];

    std::vector<CorrespondenceRow> rows(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> gm_groups = gm.component_ids();
    for (int ord = 0; ord < k; ++ord)
        rows[static_cast<std::size_t>(ord)].sigma_phi_part = gm_groups[static_cast<std::size_t>(ord)];

    // splits: Σ0 is the Γ_φ(Σ) component around any member of Σ0'
    std::vector<int> row_of(static_cast<std::size_t>(k), -1);
    for (int ord = 0; ord < k; ++ord) {
        int go = gs.component_of[static_cast<std::size_t>(gm_groups[static_cast<std::size_t>(ord)]
                                                              .front())];
        check(row_of[static_cast<std::size_t>(go)] < 0, "two rows share one split component");
        row_of[static_cast<std::size_t>(go)] = ord;
    }
    std::vector<std::vector<int>> gs_groups = gs.component_ids();
    for (int go = 0; go < k; ++go)
        rows[static_cast<std::size_t>(row_of[static_cast<std::size_t>(go)])].sigma_part =
            std::move(gs_groups[static_cast<std::size_t>(go)]);

    // elements and vertices: route a representative's Δ ∩ Σ^(φ) to its row
    auto row_via_delta = [&](int u, const char* what) {
        int row = -1;
        Bitset d = g.sides(u) ^ g.sides(v);
        for (int s : d.indices()) {
            int ord = ord_of_split[static_cast<std::size_t>(s)];
            if (ord < 0) continue;
            check(row < 0 || row == ord, what);
            row = ord;
        }
        check(row >= 0, what);
        return row;
    };
    std::vector<std::vector<int>> gx_groups = gx.component_ids();
    std::fill(row_of.begin(), row_of.end(), -1);
    for (int go = 0; go < k; ++go) {
        int x = gx_groups[static_cast<std::size_t>(go)].front();
        int row = row_via_delta(g.label_vertex(x), "element component routes to several rows");
        check(row_of[static_cast<std::size_t>(row)] < 0, "two element components share one row");
        row_of[static_cast<std::size_t>(row)] = go;
        rows[static_cast<std::size_t>(row)].x_part = std::move(gx_groups[static_cast<std::size_t>(go)]);
    }
    std::vector<std::vector<int>> gv_groups = gv.component_ids();
    std::fill(row_of.begin(), row_of.end(), -1);
    for (int go = 0; go < k; ++go) {
        int row = row_via_delta(gv_groups[static_cast<std::size_t>(go)].front(),
                                "vertex component routes to several rows");
        check(row_of[static_cast<std::size_t>(row)] < 0, "two vertex components share one row");
        row_of[static_cast<std::size_t>(row)] = go;
        rows[static_cast<std::size_t>(row)].v_part = std::move(gv_groups[static_cast<std::size_t>(go)]);
    }

    if (verify) {
        for (const CorrespondenceRow& row : rows) verify_row(g, v, row, g.min_image(v));
        verify_against_relations(g, v, rows, gm, gs, gx, gv);
    }
    return rows;
}

Block block_of(const BunemanGraph& g, const IncompatibilityGraph& gamma, int component_id,
               bool verify) {
    const std::vector<int>& members = gamma.component(component_id);
    const SystemPtr& sysp = g.system();
    if (gamma.split_count != sysp->size())
        fail(ErrorCode::system_mismatch, "incompatibility graph belongs to another system");
    Frame fr = make_frame(*sysp, members, verify);

    std::vector<Bitset> sub_parts;
    sub_parts.reserve(members.size());
    for (int s : members) sub_parts.push_back(sysp->split(s).part_a);
    SystemPtr sub = make_split_system(sysp->ground(), sub_parts);
    BunemanGraph bg = BunemanGraph::enumerate(sub);

    Block b;
    b.component_id = component_id;
    b.splits = members;
    b.member_mask = fr.member_mask;
    b.frame_sides = fr.frame_sides;
    std::vector<int> host_of(static_cast<std::size_t>(bg.vertex_count()));
    for (int w = 0; w < bg.vertex_count(); ++w) {
        Bitset host = fr.frame_sides;
        for (std::size_t p = 0; p < members.size(); ++p)
            if (bg.sides(w).test(p)) host.set(static_cast<std::size_t>(members[p]));
        int idx = g.find(host);
        if (idx < 0)
            fail(ErrorCode::internal_inconsistency,
                 "extended block vertex is missing from the host graph");
        host_of[static_cast<std::size_t>(w)] = idx;
        b.vertices.push_back(idx);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    check(std::adjacent_find(b.vertices.begin(), b.vertices.end()) == b.vertices.end(),
          "block extension is not injective");
    check(b.vertices.size() >= 2, "block has fewer than two vertices");

    if (verify) {
        for (int u = 0; u < g.vertex_count(); ++u) {
            bool member = std::binary_search(b.vertices.begin(), b.vertices.end(), u);
            check(in_block(g, fr, u) == member, "frame filter disagrees with block membership");
            bool meets = false;
            for (int s : g.min_image(u))
                meets = meets || fr.member_mask.test(static_cast<std::size_t>(s));
            check(meets == member, "minimal-image test disagrees with block membership");
            bool near = (g.sides(u) ^ g.sides(b.vertices.front())).is_subset_of(fr.member_mask);
            check(near == member, "anchored difference test disagrees with block membership");
        }
        // the extension is an isometry: host differences stay inside Σ0
        const int cap = std::min(bg.vertex_count(), 512);
        for (int i = 0; i < cap; ++i) {
            for (int j = i + 1; j < cap; ++j) {
                Bitset dh = g.sides(host_of[static_cast<std::size_t>(i)]) ^
                            g.sides(host_of[static_cast<std::size_t>(j)]);
                check(dh.is_subset_of(fr.member_mask), "host difference leaves the component");
                check(dh.count() == (bg.sides(i) ^ bg.sides(j)).count(),
                      "extension changes a distance");
            }
        }
    }
    return b;
}

int gate(const BunemanGraph& g, const IncompatibilityGraph& gamma, int v, int component_id,
         bool verify) {
    require_vertex(g, v);
    const std::vector<int>& members = gamma.component(component_id);
    Frame fr = make_frame(*g.system(), members, verify);
    Bitset sides = (g.sides(v) & fr.member_mask) | fr.frame_sides;
    int idx = g.find(sides);
    if (idx < 0) fail(ErrorCode::internal_inconsistency, "gate map is missing from the graph");
    if (verify) {
        std::vector<int> block = block_members(g, fr);
        check(std::binary_search(block.begin(), block.end(), idx), "gate lies outside its block");
        for (int psi : block)
            check(dist(g, v, psi) == dist(g, v, idx) + dist(g, idx, psi),
                  "gate misses the additive distance identity");
        for (int cand : block) {
            if (cand == idx) continue;
            bool additive = true;
            for (int psi : block)
                additive = additive && dist(g, v, psi) == dist(g, v, cand) + dist(g, cand, psi);
            check(!additive, "a second block member satisfies the gate identity");
        }
        if (!in_block(g, fr, v))
            check(meets_two_components(g, gamma, idx), "outside gate is not a cut vertex");
    }
    return idx;
}

int inter_block_gate(const BunemanGraph& g, const IncompatibilityGraph& gamma, int comp0,
                     int comp1, bool verify) {
    const std::vector<int>& members0 = gamma.component(comp0);
    const std::vector<int>& members1 = gamma.component(comp1);
    if (comp0 == comp1)
        fail(ErrorCode::same_component, "components " + std::to_string(comp0) + " coincide");
    const SplitSystem& sys = *g.system();
    Frame f0 = make_frame(sys, members0, verify);
    Bitset sides = f0.frame_sides;
    for (int s : members0)
        if (a_arrow_component(sys, s, members1, verify) == sys.split(s).part_b)
            sides.set(static_cast<std::size_t>(s));
    int idx = g.find(sides);
    if (idx < 0)
        fail(ErrorCode::internal_inconsistency, "inter-block gate is missing from the graph");
    if (verify) {
        check(in_block(g, f0, idx), "inter-block gate lies outside the target block");
        Frame f1 = make_frame(sys, members1, false);
        std::vector<int> b0 = block_members(g, f0);
        for (int phi : block_members(g, f1))
            for (int psi : b0)
                check(dist(g, phi, psi) == dist(g, phi, idx) + dist(g, idx, psi),
                      "inter-block gate misses the additive identity");
    }
    return idx;
}

BlockMeet blocks_intersect(const BunemanGraph& g, const IncompatibilityGraph& gamma, int comp0,
                           int comp1, bool verify) {
    const std::vector<int>& members0 = gamma.component(comp0);
    const std::vector<int>& members1 = gamma.component(comp1);
    if (comp0 == comp1)
        fail(ErrorCode::same_component, "components " + std::to_string(comp0) + " coincide");
    const SplitSystem& sys = *g.system();
    Bitset both(static_cast<std::size_t>(sys.size()));
    for (int s : members0) both.set(static_cast<std::size_t>(s));
    for (int s : members1) both.set(static_cast<std::size_t>(s));
    bool agree = true;
    for (int s = 0; s < sys.size() && (agree || verify); ++s) {
        if (both.test(static_cast<std::size_t>(s))) continue;
        agree = agree &&
                a_arrow_component(sys, s, members0, verify) ==
                    a_arrow_component(sys, s, members1, verify);
    }
    BlockMeet r;
    r.meet = agree;
    if (agree) r.vertex = inter_block_gate(g, gamma, comp0, comp1, verify);
    if (verify) {
        Frame f0 = make_frame(sys, members0, false);
        Frame f1 = make_frame(sys, members1, false);
        std::vector<int> common;
        for (int u = 0; u < g.vertex_count(); ++u)
            if (in_block(g, f0, u) && in_block(g, f1, u)) common.push_back(u);
        if (agree) {
            check(common.size() == 1 && common.front() == r.vertex,
                  "touching blocks share more or less than the gate");
            check(inter_block_gate(g, gamma, comp1, comp0, false) == r.vertex,
                  "the two inter-block gates differ");
            check(meets_two_components(g, gamma, r.vertex), "shared vertex is not a cut vertex");
        } else {
            check(common.empty(), "non-touching blocks share a vertex");
        }
    }
    return r;
}

BlockDecomposition all_blocks(const BunemanGraph& g, bool verify) {
    BlockDecomposition d;
    d.gamma = incompatibility_graph(*g.system());
    for (int id : d.gamma.component_ids) d.blocks.push_back(block_of(g, d.gamma, id, verify));
    d.blocks_of_vertex.resize(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t pos = 0; pos < d.blocks.size(); ++pos)
        for (int u : d.blocks[pos].vertices)
            d.blocks_of_vertex[static_cast<std::size_t>(u)].push_back(static_cast<int>(pos));
    for (int u = 0; u < g.vertex_count(); ++u) {
        check(!d.blocks_of_vertex[static_cast<std::size_t>(u)].empty(),
              "a vertex belongs to no block");
        if (d.blocks_of_vertex[static_cast<std::size_t>(u)].size() >= 2) d.cut_vertices.push_back(u);
    }
    if (verify) {
        BiconnResult bi = biconnected_components(g);
        std::set<std::vector<int>> ours, theirs;
        for (const Block& b : d.blocks) ours.insert(b.vertices);
        for (const std::vector<int>& c : bi.components) theirs.insert(c);
        check(ours == theirs, "blocks differ from the lowpoint decomposition");
        for (int u = 0; u < g.vertex_count(); ++u)
            check(bi.articulation[static_cast<std::size_t>(u)] ==
                      (d.blocks_of_vertex[static_cast<std::size_t>(u)].size() >= 2),
                  "cut vertices differ from the lowpoint articulation points");
    }
    return d;
}

bool separation_test(const BunemanGraph& g, const IncompatibilityGraph& gamma, int v1, int v2,
                     bool verify) {
    require_vertex(g, v1);
    require_vertex(g, v2);
    if (v1 == v2)
        fail(ErrorCode::identical_vertices, "vertex " + std::to_string(v1) + " given twice");
    Bitset d = g.sides(v1) ^ g.sides(v2);
    int first = -1;
    bool result = false;
    for (int s : d.indices()) {
        int id = gamma.component_of[static_cast<std::size_t>(s)];
        if (first < 0) first = id;
        else if (id != first) result = true;
    }
    if (verify) {
        bool oracle = false;
        for (int u = 0; u < g.vertex_count() && !oracle; ++u) {
            if (u == v1 || u == v2 || !meets_two_components(g, gamma, u)) continue;
            auto [count, comp] = bfs_minus(g, u);
            (void)count;
            oracle = comp[static_cast<std::size_t>(v1)] != comp[static_cast<std::size_t>(v2)];
        }
        check(oracle == result, "separation disagrees with the deleted-vertex search");
    }
    return result;
}

}  // namespace buneman
