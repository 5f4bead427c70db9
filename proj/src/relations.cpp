#include "buneman/relations.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace buneman {

namespace {

std::vector<std::pair<int, int>> project(const BiRelation& r, bool on_u) {
    const int n = on_u ? r.u_size : r.v_size;
    std::vector<std::vector<int>> of_other(static_cast<std::size_t>(on_u ? r.v_size : r.u_size));
    for (const auto& [u, v] : r.pairs)
        of_other[static_cast<std::size_t>(on_u ? v : u)].push_back(on_u ? u : v);
    std::set<std::pair<int, int>> edges;
    for (const auto& group : of_other)
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                int x = group[a], y = group[b];
                if (x == y) continue;
                edges.emplace(std::min(x, y), std::max(x, y));
            }
    (void)n;
    return {edges.begin(), edges.end()};
}

// BFS components of Γ(R) on U ⊔ V, numbered by minimal U-member.
ComponentMap components_of(const BiRelation& r) {
    std::vector<std::vector<int>> adj_u(static_cast<std::size_t>(r.u_size));
    std::vector<std::vector<int>> adj_v(static_cast<std::size_t>(r.v_size));
    for (const auto& [u, v] : r.pairs) {
        adj_u[static_cast<std::size_t>(u)].push_back(v);
        adj_v[static_cast<std::size_t>(v)].push_back(u);
    }
    for (int u = 0; u < r.u_size; ++u)
        if (adj_u[static_cast<std::size_t>(u)].empty())
            fail(ErrorCode::isolated_vertex, "u-vertex " + std::to_string(u) + " is isolated");
    for (int v = 0; v < r.v_size; ++v)
        if (adj_v[static_cast<std::size_t>(v)].empty())
            fail(ErrorCode::isolated_vertex, "v-vertex " + std::to_string(v) + " is isolated");

    ComponentMap cm;
    cm.labels_u.assign(static_cast<std::size_t>(r.u_size), -1);
    cm.labels_v.assign(static_cast<std::size_t>(r.v_size), -1);
    // Every component touches both sides (edges always cross), so scanning U
    // in ascending order visits each component at its minimal U-member.
    for (int start = 0; start < r.u_size; ++start) {
        if (cm.labels_u[static_cast<std::size_t>(start)] != -1) continue;
        const int label = cm.count++;
        std::queue<std::pair<bool, int>> q; // (is_u, index)
        cm.labels_u[static_cast<std::size_t>(start)] = label;
        q.emplace(true, start);
        while (!q.empty()) {
            auto [is_u, x] = q.front();
            q.pop();
            const auto& nbrs = is_u ? adj_u[static_cast<std::size_t>(x)]
                                    : adj_v[static_cast<std::size_t>(x)];
            auto& other_labels = is_u ? cm.labels_v : cm.labels_u;
            for (int y : nbrs)
                if (other_labels[static_cast<std::size_t>(y)] == -1) {
                    other_labels[static_cast<std::size_t>(y)] = label;
                    q.emplace(!is_u, y);
                }
        }
    }
    cm.labels_r.reserve(r.pairs.size());
    for (const auto& [u, v] : r.pairs)
        cm.labels_r.push_back(cm.labels_u[static_cast<std::size_t>(u)]);
    return cm;
}

// Renumber a raw component map through per-side translations into base
// labels, asserting the induced map on components is a well-defined bijection.
ComponentMap align(const BiRelation& rel, const ComponentMap& raw, int base_count,
                   const std::vector<int>& base_of_u, const std::vector<int>& base_of_v) {
    std::vector<int> to_base(static_cast<std::size_t>(raw.count), -1);
    auto record = [&](int raw_label, int base_label) {
        int& slot = to_base[static_cast<std::size_t>(raw_label)];
        if (slot == -1)
            slot = base_label;
        else if (slot != base_label)
            fail(ErrorCode::internal_inconsistency,
                 "lifted component maps into two base components");
    };
    for (int u = 0; u < rel.u_size; ++u)
        record(raw.labels_u[static_cast<std::size_t>(u)], base_of_u[static_cast<std::size_t>(u)]);
    for (int v = 0; v < rel.v_size; ++v)
        record(raw.labels_v[static_cast<std::size_t>(v)], base_of_v[static_cast<std::size_t>(v)]);
    if (raw.count != base_count)
        fail(ErrorCode::internal_inconsistency,
             "component counts differ: " + std::to_string(raw.count) + " vs " +
                 std::to_string(base_count));
    std::vector<bool> hit(static_cast<std::size_t>(base_count), false);
    for (int b : to_base) {
        if (b < 0 || hit[static_cast<std::size_t>(b)])
            fail(ErrorCode::internal_inconsistency, "component translation is not a bijection");
        hit[static_cast<std::size_t>(b)] = true;
    }
    ComponentMap out = raw;
    for (auto& l : out.labels_u) l = to_base[static_cast<std::size_t>(l)];
    for (auto& l : out.labels_v) l = to_base[static_cast<std::size_t>(l)];
    for (auto& l : out.labels_r) l = to_base[static_cast<std::size_t>(l)];
    return out;
}

} // namespace

std::vector<std::pair<int, int>> project_u(const BiRelation& r) { return project(r, true); }
std::vector<std::pair<int, int>> project_v(const BiRelation& r) { return project(r, false); }

ComponentMap component_bijection(const BiRelation& r) { return components_of(r); }

LiftedComponentMap lifted_bijection(const BiRelation& r, const std::vector<int>& alpha,
                                    const std::vector<int>& beta) {
    const int u_prime = static_cast<int>(alpha.size());
    const int v_prime = static_cast<int>(beta.size());

    std::vector<std::vector<bool>> has(static_cast<std::size_t>(r.u_size),
                                       std::vector<bool>(static_cast<std::size_t>(r.v_size), false));
    for (const auto& [u, v] : r.pairs) has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;

    // (M1): u1, u2 sharing a common v must share a common image point of β.
    for (int u1 = 0; u1 < r.u_size; ++u1)
        for (int u2 = u1; u2 < r.u_size; ++u2) {
            bool common = false;
            for (int v = 0; v < r.v_size && !common; ++v)
                common = has[static_cast<std::size_t>(u1)][static_cast<std::size_t>(v)] &&
                         has[static_cast<std::size_t>(u2)][static_cast<std::size_t>(v)];
            if (!common) continue;
            bool ok = false;
            for (int vp = 0; vp < v_prime && !ok; ++vp) {
                int bv = beta[static_cast<std::size_t>(vp)];
                ok = has[static_cast<std::size_t>(u1)][static_cast<std::size_t>(bv)] &&
                     has[static_cast<std::size_t>(u2)][static_cast<std::size_t>(bv)];
            }
            if (!ok)
                fail(ErrorCode::m1_violation,
                     "(M1) fails for u=" + std::to_string(u1) + ", u=" + std::to_string(u2));
        }
    // (M2): symmetric for v1, v2 against α.
    for (int v1 = 0; v1 < r.v_size; ++v1)
        for (int v2 = v1; v2 < r.v_size; ++v2) {
            bool common = false;
            for (int u = 0; u < r.u_size && !common; ++u)
                common = has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v1)] &&
                         has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v2)];
            if (!common) continue;
            bool ok = false;
            for (int up = 0; up < u_prime && !ok; ++up) {
                int au = alpha[static_cast<std::size_t>(up)];
                ok = has[static_cast<std::size_t>(au)][static_cast<std::size_t>(v1)] &&
                     has[static_cast<std::size_t>(au)][static_cast<std::size_t>(v2)];
            }
            if (!ok)
                fail(ErrorCode::m2_violation,
                     "(M2) fails for v=" + std::to_string(v1) + ", v=" + std::to_string(v2));
        }

    LiftedComponentMap out;
    out.base = components_of(r);
    out.count = out.base.count;

    out.r_prime.u_size = u_prime;
    out.r_prime.v_size = v_prime;
    for (int up = 0; up < u_prime; ++up)
        for (int vp = 0; vp < v_prime; ++vp)
            if (has[static_cast<std::size_t>(alpha[static_cast<std::size_t>(up)])]
                   [static_cast<std::size_t>(beta[static_cast<std::size_t>(vp)])])
                out.r_prime.pairs.emplace_back(up, vp);

    out.r_alpha.u_size = u_prime;
    out.r_alpha.v_size = r.v_size;
    for (int up = 0; up < u_prime; ++up)
        for (int v = 0; v < r.v_size; ++v)
            if (has[static_cast<std::size_t>(alpha[static_cast<std::size_t>(up)])]
                   [static_cast<std::size_t>(v)])
                out.r_alpha.pairs.emplace_back(up, v);

    out.r_beta.u_size = r.u_size;
    out.r_beta.v_size = v_prime;
    for (int u = 0; u < r.u_size; ++u)
        for (int vp = 0; vp < v_prime; ++vp)
            if (has[static_cast<std::size_t>(u)]
                   [static_cast<std::size_t>(beta[static_cast<std::size_t>(vp)])])
                out.r_beta.pairs.emplace_back(u, vp);

    std::vector<int> base_u_of_uprime(static_cast<std::size_t>(u_prime));
    for (int up = 0; up < u_prime; ++up)
        base_u_of_uprime[static_cast<std::size_t>(up)] =
            out.base.labels_u[static_cast<std::size_t>(alpha[static_cast<std::size_t>(up)])];
    std::vector<int> base_v_of_vprime(static_cast<std::size_t>(v_prime));
    for (int vp = 0; vp < v_prime; ++vp)
        base_v_of_vprime[static_cast<std::size_t>(vp)] =
            out.base.labels_v[static_cast<std::size_t>(beta[static_cast<std::size_t>(vp)])];

    out.prime = align(out.r_prime, components_of(out.r_prime), out.count, base_u_of_uprime,
                      base_v_of_vprime);
    out.alpha = align(out.r_alpha, components_of(out.r_alpha), out.count, base_u_of_uprime,
                      out.base.labels_v);
    out.beta = align(out.r_beta, components_of(out.r_beta), out.count, out.base.labels_u,
                     base_v_of_vprime);
    return out;
}

} // namespace buneman
