#include "buneman/check.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace buneman {

namespace {

CheckItem& item(CheckReport& report, const std::string& name) {
    for (auto& it : report.items)
        if (it.name == name) return it;
    report.items.push_back({name, 0, true, ""});
    return report.items.back();
}

void expect(CheckItem& it, bool cond, const std::string& msg) {
    if (!cond && it.passed) {
        it.passed = false;
        it.detail = msg;
    }
}

template <class F>
void run_item(CheckReport& report, const std::string& name, F&& fn) {
    CheckItem& it = item(report, name);
    try {
        fn(it);
    } catch (const std::exception& e) {
        if (it.passed) {
            it.passed = false;
            it.detail = e.what();
        }
    }
}

std::vector<int> bfs_dist(const BunemanGraph& g, int src) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::queue<int> queue;
    dist[static_cast<std::size_t>(src)] = 0;
    queue.push(src);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (const auto& [type, w] : g.neighbors(u))
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push(w);
            }
    }
    return dist;
}

// shortest-path count by dynamic programming over BFS layers
std::uint64_t bfs_path_count(const BunemanGraph& g, int a, int b) {
    std::vector<int> dist = bfs_dist(g, a);
    std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return dist[static_cast<std::size_t>(x)] < dist[static_cast<std::size_t>(y)];
    });
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(g.vertex_count()), 0);
    ways[static_cast<std::size_t>(a)] = 1;
    for (int u : order)
        for (const auto& [type, w] : g.neighbors(u))
            if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1)
                ways[static_cast<std::size_t>(w)] += ways[static_cast<std::size_t>(u)];
    return ways[static_cast<std::size_t>(b)];
}

// geodesics from a to b = permutations of Δ whose every prefix flip lands on
// a vertex; feasible for |Δ| <= 6
std::uint64_t permutation_path_count(const BunemanGraph& g, int a, int b) {
    std::vector<int> d = (g.sides(a) ^ g.sides(b)).indices();
    std::sort(d.begin(), d.end());
    std::uint64_t count = 0;
    do {
        Bitset sides = g.sides(a);
        bool valid = true;
        for (int s : d) {
            sides.flip(s);
            if (g.find(sides) < 0) {
                valid = false;
                break;
            }
        }
        if (valid) ++count;
    } while (std::next_permutation(d.begin(), d.end()));
    return count;
}

// removal oracle: does deleting v disconnect the graph?
bool removal_disconnects(const BunemanGraph& g, int v) {
    const int n = g.vertex_count();
    if (n <= 2) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(v)] = 1;
    int start = v == 0 ? 1 : 0;
    seen[static_cast<std::size_t>(start)] = 1;
    std::vector<int> stack{start};
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& [type, w] : g.neighbors(u))
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached != n - 1;
}

bool has_four_cycle(const BunemanGraph& g) {
    for (int u = 0; u < g.vertex_count(); ++u) {
        const auto& nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                Bitset corner = g.sides(u);
                corner.flip(nb[i].first);
                corner.flip(nb[j].first);
                if (g.find(corner) >= 0) return true;
            }
    }
    return false;
}

std::vector<std::string> numbered_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

Bitset random_subset(std::mt19937& rng, int n) {
    Bitset part(n);
    for (int e = 0; e < n; ++e)
        if (rng() & 1u) part.set(e);
    return part;
}

int rand_range(std::mt19937& rng, int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

} // namespace

SystemPtr random_system(std::mt19937& rng, int n, int m) {
    const long long distinct = (1LL << (n - 1)) - 1;
    m = static_cast<int>(std::min<long long>(m, distinct));
    m = std::max(m, 1);
    std::set<Bitset> seen;
    std::vector<Bitset> raw;
    int attempts = 200 * m + 1000;
    while (static_cast<int>(raw.size()) < m && attempts-- > 0) {
        Bitset part = random_subset(rng, n);
        if (part.none() || part.count() == static_cast<std::size_t>(n)) continue;
        Bitset canonical = part.test(0) ? part : ~part;
        if (!seen.insert(canonical).second) continue;
        raw.push_back(std::move(part));
    }
    if (raw.empty()) raw.push_back(Bitset::from_indices(n, {0}));
    return make_split_system(GroundSet(numbered_labels(n)), raw);
}

SystemPtr random_compatible_system(std::mt19937& rng, int n, int m) {
    // laminar family of parts avoiding element 0 = pairwise compatible splits
    m = std::min(m, 2 * (n - 1) - 1);
    m = std::max(m, 1);
    std::vector<Bitset> parts;
    auto laminar = [&](const Bitset& p) {
        for (const Bitset& q : parts) {
            if (p == q) return false;
            if (p.intersects(q) && !p.is_subset_of(q) && !q.is_subset_of(p)) return false;
        }
        return true;
    };
    int attempts = 200 * m + 1000;
    while (static_cast<int>(parts.size()) < m && attempts-- > 0) {
        Bitset p = random_subset(rng, n);
        p.reset(0);
        if (p.none()) continue;
        if (laminar(p)) parts.push_back(std::move(p));
    }
    for (int e = 1; e < n && static_cast<int>(parts.size()) < m; ++e) {
        Bitset p = Bitset::from_indices(n, {e});
        if (laminar(p)) parts.push_back(std::move(p));
    }
    return make_split_system(GroundSet(numbered_labels(n)), parts);
}

SystemPtr random_incompatible_system(std::mt19937& rng, int n, int m) {
    if (n < 4)
        fail(ErrorCode::empty_ground_set,
             "incompatible pairs need at least 4 elements, got " + std::to_string(n));
    for (int attempt = 0; attempt < 50; ++attempt) {
        SystemPtr sys = random_system(rng, n, std::max(m, 2));
        for (int i = 0; i < sys->size(); ++i)
            for (int j = i + 1; j < sys->size(); ++j)
                if (!is_compatible(sys->split(i), sys->split(j))) return sys;
    }
    // force the crossing pair {1,2} / {2,3}
    std::vector<Bitset> raw = {Bitset::from_indices(n, {0, 1}), Bitset::from_indices(n, {1, 2})};
    return make_split_system(GroundSet(numbered_labels(n)), raw);
}

CheckReport run_checks(const SystemPtr& sys, const CheckOptions& opts) {
    CheckReport report;
    report.systems = 1;
    std::mt19937 rng(opts.seed);
    const bool deep = opts.deep;
    const int cap = std::max(opts.sample_cap, 1);

    EnumerationOptions eopts;
    eopts.verify = deep;
    BunemanGraph g = BunemanGraph::enumerate(sys, eopts);
    const int nv = g.vertex_count();
    auto random_vertex = [&] { return static_cast<int>(rng() % static_cast<unsigned>(nv)); };

    run_item(report, "enumeration-equivalence", [&](CheckItem& it) {
        if (sys->size() > 12) return;
        EnumerationOptions brute = eopts;
        brute.strategy = Strategy::brute;
        BunemanGraph gb = BunemanGraph::enumerate(sys, brute);
        expect(it, gb.vertex_count() == nv, "strategies disagree on |V|");
        expect(it, gb.edge_count() == g.edge_count(), "strategies disagree on |E|");
        for (int v = 0; v < nv && it.passed; ++v)
            expect(it, gb.find(g.sides(v)) >= 0, "brute enumeration misses a vertex");
        ++it.cases;
    });

    run_item(report, "distances", [&](CheckItem& it) {
        std::vector<int> sources;
        if (nv <= cap)
            for (int v = 0; v < nv; ++v) sources.push_back(v);
        else
            for (int k = 0; k < cap; ++k) sources.push_back(random_vertex());
        for (int src : sources) {
            std::vector<int> dist = bfs_dist(g, src);
            for (int v = 0; v < nv; ++v) {
                expect(it, dist[static_cast<std::size_t>(v)] >= 0, "graph is not connected");
                expect(it,
                       dist[static_cast<std::size_t>(v)] ==
                           static_cast<int>((g.sides(src) ^ g.sides(v)).count()),
                       "BFS distance differs from XOR popcount");
            }
            ++it.cases;
        }
    });

    run_item(report, "medians", [&](CheckItem& it) {
        for (int k = 0; k < cap; ++k) {
            int a = random_vertex(), b = random_vertex(), c = random_vertex();
            VertexMap m = median(g.vertex(a), g.vertex(b), g.vertex(c));
            int mi = g.find(m.sides());
            expect(it, mi >= 0, "median is not a vertex");
            if (mi < 0) break;
            auto d = [&](int u, int w) {
                return static_cast<int>((g.sides(u) ^ g.sides(w)).count());
            };
            expect(it,
                   d(a, mi) + d(mi, b) == d(a, b) && d(a, mi) + d(mi, c) == d(a, c) &&
                       d(b, mi) + d(mi, c) == d(b, c),
                   "median is not between all three pairs");
            ++it.cases;
        }
    });

    run_item(report, "geodesic-counts", [&](CheckItem& it) {
        for (int k = 0; k < 4 * cap && it.cases < cap; ++k) {
            int a = random_vertex(), b = random_vertex();
            if ((g.sides(a) ^ g.sides(b)).count() > 6) continue;
            std::uint64_t lex = shortest_path_count(g.vertex(a), g.vertex(b), 6);
            expect(it, lex == permutation_path_count(g, a, b),
                   "linear-extension count differs from permutation walks");
            expect(it, lex == bfs_path_count(g, a, b),
                   "linear-extension count differs from layered BFS count");
            ++it.cases;
        }
    });

    run_item(report, "cut-vertices-six-way", [&](CheckItem& it) {
        std::vector<int> targets;
        if (nv <= 2048)
            for (int v = 0; v < nv; ++v) targets.push_back(v);
        else
            for (int k = 0; k < cap; ++k) targets.push_back(random_vertex());
        for (int v : targets) {
            CutAnalysis ca = is_cut_vertex(g, v, deep);  // asserts six-way agreement
            expect(it, ca.is_cut == removal_disconnects(g, v),
                   "cut verdict differs from the removal oracle");
            ++it.cases;
        }
    });

    BlockDecomposition dec = all_blocks(g, deep);
    run_item(report, "blocks", [&](CheckItem& it) {
        expect(it, dec.blocks.size() == dec.gamma.component_ids.size(),
               "block count differs from component count");
        std::set<int> covered;
        for (const Block& blk : dec.blocks)
            covered.insert(blk.vertices.begin(), blk.vertices.end());
        expect(it, static_cast<int>(covered.size()) == nv, "blocks do not cover the graph");
        it.cases += static_cast<long long>(dec.blocks.size());
    });

    run_item(report, "gates", [&](CheckItem& it) {
        for (int id : dec.gamma.component_ids) {
            int trials = std::min(nv, std::max(1, cap / 4));
            for (int k = 0; k < trials; ++k) {
                gate(g, dec.gamma, random_vertex(), id, deep);
                ++it.cases;
            }
        }
        const auto& ids = dec.gamma.component_ids;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                inter_block_gate(g, dec.gamma, ids[i], ids[j], deep);
                blocks_intersect(g, dec.gamma, ids[i], ids[j], deep);
                ++it.cases;
            }
    });

    run_item(report, "separation", [&](CheckItem& it) {
        for (int k = 0; k < cap; ++k) {
            int a = random_vertex(), b = random_vertex();
            if (a == b) continue;
            separation_test(g, dec.gamma, a, b, deep);
            ++it.cases;
        }
    });

    run_item(report, "component-correspondences", [&](CheckItem& it) {
        int done = 0;
        for (int v : dec.cut_vertices) {
            if (done >= cap) break;
            component_correspondences(g, v, deep);
            ++done;
            ++it.cases;
        }
    });

    run_item(report, "trees", [&](CheckItem& it) {
        BlockCutTree t = block_cut_tree(g, dec, deep);
        expect(it, triple_degree_check(t).ok(), "triple-degree violation");
        XTree x = reduce_to_xtree(t, deep);
        expect(it, !x.beyond_recipe, "reduction left the printed recipe");
        leaf_label_bijection_test(g, dec, deep);
        buneman_tree_criterion(g, deep);
        expect(it, !to_newick(x).empty(), "empty Newick output");
        it.cases += 5;
    });

    run_item(report, "split-file-round-trip", [&](CheckItem& it) {
        std::istringstream in(format_split_file(*sys));
        SystemPtr back = parse_split_file(in);
        expect(it, back->ground().labels() == sys->ground().labels(),
               "round trip changes the ground set");
        expect(it, back->size() == sys->size(), "round trip changes the split count");
        for (int i = 0; i < sys->size() && it.passed; ++i)
            expect(it, back->split(i).part_a == sys->split(i).part_a,
                   "round trip changes a split");
        ++it.cases;
    });

    return report;
}

CheckReport run_random_checks(const CheckOptions& opts) {
    CheckReport report;
    std::mt19937 rng(opts.seed);
    CheckOptions per = opts;
    for (int k = 0; k < opts.systems; ++k) {
        int n = rand_range(rng, opts.min_n, opts.max_n);
        int m = rand_range(rng, opts.min_m, opts.max_m);
        per.seed = rng();
        CheckReport one = run_checks(random_system(rng, n, m), per);
        ++report.systems;
        for (const auto& it : one.items) {
            CheckItem& merged = item(report, it.name);
            merged.cases += it.cases;
            if (!it.passed && merged.passed) {
                merged.passed = false;
                merged.detail = it.detail;
            }
        }
    }

    run_item(report, "compatible-implies-tree", [&](CheckItem& it) {
        for (int k = 0; k < opts.systems; ++k) {
            int n = rand_range(rng, std::max(3, opts.min_n), opts.max_n);
            int m = rand_range(rng, opts.min_m, opts.max_m);
            BunemanGraph g = BunemanGraph::enumerate(random_compatible_system(rng, n, m));
            expect(it, buneman_tree_criterion(g, opts.deep), "generated system not compatible");
            expect(it, g.edge_count() == g.vertex_count() - 1, "compatible system not a tree");
            ++it.cases;
        }
    });

    run_item(report, "incompatible-implies-cycle", [&](CheckItem& it) {
        for (int k = 0; k < opts.systems; ++k) {
            int n = rand_range(rng, std::max(4, opts.min_n), std::max(4, opts.max_n));
            int m = rand_range(rng, std::max(2, opts.min_m), opts.max_m);
            BunemanGraph g = BunemanGraph::enumerate(random_incompatible_system(rng, n, m));
            expect(it, !buneman_tree_criterion(g, opts.deep),
                   "generated system has no incompatible pair");
            expect(it, g.edge_count() >= g.vertex_count(), "incompatible system has no cycle");
            expect(it, has_four_cycle(g), "incompatible system has no 4-cycle");
            ++it.cases;
        }
    });

    return report;
}

} // namespace buneman
