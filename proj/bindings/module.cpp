#include "buneman/check.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace buneman;

namespace {

void check_vertex(const BunemanGraph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw py::index_error("vertex out of range");
}

void check_split(const SplitSystem& sys, int s) {
    if (s < 0 || s >= sys.size()) throw py::index_error("split out of range");
}

EnumerationOptions make_opts(const std::string& strategy, int max_splits,
                             std::size_t max_vertices, bool verify) {
    if (strategy != "brute" && strategy != "incremental")
        throw py::value_error("strategy must be 'brute' or 'incremental'");
    EnumerationOptions opts;
    opts.strategy = strategy == "brute" ? Strategy::brute : Strategy::incremental;
    opts.max_splits = max_splits;
    opts.max_vertices = max_vertices;
    opts.verify = verify;
    return opts;
}

SystemPtr system_from_parts(const std::vector<std::string>& labels,
                            const std::vector<std::vector<std::string>>& parts) {
    GroundSet ground(labels);
    std::vector<Bitset> raw;
    raw.reserve(parts.size());
    for (const auto& part : parts) {
        Bitset b(static_cast<std::size_t>(ground.size()));
        for (const auto& lab : part) b.set(static_cast<std::size_t>(ground.index_of(lab)));
        raw.push_back(std::move(b));
    }
    return make_split_system(std::move(ground), raw);
}

std::vector<std::string> part_labels(const SplitSystem& sys, int s, bool side_b) {
    check_split(sys, s);
    std::vector<std::string> out;
    for (int e : sys.split(s).side(side_b).indices()) out.push_back(sys.ground().label(e));
    return out;
}

py::object as_pair(const std::optional<Bipartition>& w) {
    if (!w) return py::none();
    return py::make_tuple(w->first, w->second);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Buneman graphs, their blocks and cut vertices, and derived trees";

    py::register_exception<Error>(m, "BunemanError");

    py::class_<SplitSystem, std::shared_ptr<SplitSystem>>(m, "SplitSystem")
        .def_property_readonly(
            "labels", [](const SplitSystem& s) { return s.ground().labels(); })
        .def("__len__", &SplitSystem::size)
        .def("split_repr", [](const SplitSystem& s, int i) {
            check_split(s, i);
            return s.split_repr(i);
        })
        .def("part", &part_labels, py::arg("split"), py::arg("side_b") = false,
             "element labels of one part of a split")
        .def("__eq__", [](const SplitSystem& a, const SplitSystem& b) { return a == b; })
        .def("__repr__", [](const SplitSystem& s) {
            std::ostringstream out;
            out << "SplitSystem(n=" << s.ground_size() << ", m=" << s.size() << ")";
            return out.str();
        });

    m.def("make_system", &system_from_parts, py::arg("labels"), py::arg("parts"),
          "build a split system; each split is given as one of its parts");
    m.def("parse_split_text", [](const std::string& text) {
        std::istringstream in(text);
        return parse_split_file(in);
    });
    m.def("load_split_file", &load_split_file, py::arg("path"));
    m.def("format_split_file", &format_split_file);

    py::class_<BunemanGraph>(m, "BunemanGraph")
        .def_property_readonly("system", &BunemanGraph::system)
        .def_property_readonly("vertex_count", &BunemanGraph::vertex_count)
        .def_property_readonly("edge_count", &BunemanGraph::edge_count)
        .def("sides",
             [](const BunemanGraph& g, int v) {
                 check_vertex(g, v);
                 return g.sides(v).to_string();
             })
        .def("min_image",
             [](const BunemanGraph& g, int v) {
                 check_vertex(g, v);
                 return g.min_image(v);
             })
        .def("neighbors",
             [](const BunemanGraph& g, int v) {
                 check_vertex(g, v);
                 return g.neighbors(v); // (split, vertex) pairs
             })
        .def("degree",
             [](const BunemanGraph& g, int v) {
                 check_vertex(g, v);
                 return g.degree(v);
             })
        .def("label_vertex",
             [](const BunemanGraph& g, int element) {
                 if (element < 0 || element >= g.system()->ground_size())
                     throw py::index_error("element out of range");
                 return g.label_vertex(element);
             })
        .def("labels_at",
             [](const BunemanGraph& g, int v) {
                 check_vertex(g, v);
                 return g.labels_at(v);
             })
        .def("edges", &BunemanGraph::edges, "(u, v, split) triples, sorted")
        .def("distance",
             [](const BunemanGraph& g, int u, int v) {
                 check_vertex(g, u);
                 check_vertex(g, v);
                 return distance(g.vertex(u), g.vertex(v));
             })
        .def("median",
             [](const BunemanGraph& g, int a, int b, int c) {
                 check_vertex(g, a);
                 check_vertex(g, b);
                 check_vertex(g, c);
                 return g.index_of(median(g.vertex(a), g.vertex(b), g.vertex(c)));
             })
        .def("shortest_path_count",
             [](const BunemanGraph& g, int u, int v, int cap) {
                 check_vertex(g, u);
                 check_vertex(g, v);
                 return shortest_path_count(g.vertex(u), g.vertex(v), cap);
             },
             py::arg("u"), py::arg("v"), py::arg("cap") = 10)
        .def("__repr__", [](const BunemanGraph& g) {
            std::ostringstream out;
            out << "BunemanGraph(vertices=" << g.vertex_count() << ", edges=" << g.edge_count()
                << ")";
            return out.str();
        });

    m.def(
        "buneman_graph",
        [](SystemPtr sys, const std::string& strategy, int max_splits, std::size_t max_vertices,
           bool verify) {
            return BunemanGraph::enumerate(std::move(sys),
                                           make_opts(strategy, max_splits, max_vertices, verify));
        },
        py::arg("system"), py::arg("strategy") = "incremental", py::arg("max_splits") = 24,
        py::arg("max_vertices") = std::size_t{1} << 22, py::arg("verify") = false);

    py::class_<CutAnalysis>(m, "CutAnalysis")
        .def_readonly("vertex", &CutAnalysis::vertex)
        .def_readonly("sigma_phi", &CutAnalysis::sigma_phi)
        .def_readonly("x_phi", &CutAnalysis::x_phi)
        .def_readonly("verdicts", &CutAnalysis::verdicts)
        .def_readonly("is_cut", &CutAnalysis::is_cut)
        .def_property_readonly(
            "witness_sigma_phi", [](const CutAnalysis& c) { return as_pair(c.witness_sigma_phi); })
        .def_property_readonly("witness_sigma",
                               [](const CutAnalysis& c) { return as_pair(c.witness_sigma); })
        .def_property_readonly("witness_x",
                               [](const CutAnalysis& c) { return as_pair(c.witness_x); })
        .def_property_readonly("witness_v",
                               [](const CutAnalysis& c) { return as_pair(c.witness_v); })
        .def("__bool__", [](const CutAnalysis& c) { return c.is_cut; });

    m.def(
        "is_cut_vertex",
        [](const BunemanGraph& g, int v, bool verify) {
            check_vertex(g, v);
            return is_cut_vertex(g, v, verify);
        },
        py::arg("graph"), py::arg("vertex"), py::arg("verify") = false);

    py::class_<Block>(m, "Block")
        .def_readonly("component_id", &Block::component_id)
        .def_readonly("splits", &Block::splits)
        .def_readonly("vertices", &Block::vertices);

    py::class_<BlockDecomposition>(m, "BlockDecomposition")
        .def_readonly("blocks", &BlockDecomposition::blocks)
        .def_readonly("cut_vertices", &BlockDecomposition::cut_vertices)
        .def_readonly("blocks_of_vertex", &BlockDecomposition::blocks_of_vertex)
        .def_property_readonly(
            "component_ids",
            [](const BlockDecomposition& d) { return d.gamma.component_ids; })
        .def_property_readonly(
            "components", [](const BlockDecomposition& d) { return d.gamma.components; });

    m.def(
        "all_blocks",
        [](const BunemanGraph& g, bool verify) { return all_blocks(g, verify); },
        py::arg("graph"), py::arg("verify") = false);

    m.def(
        "separation_test",
        [](const BunemanGraph& g, const BlockDecomposition& dec, int v1, int v2, bool verify) {
            check_vertex(g, v1);
            check_vertex(g, v2);
            return separation_test(g, dec.gamma, v1, v2, verify);
        },
        py::arg("graph"), py::arg("blocks"), py::arg("v1"), py::arg("v2"),
        py::arg("verify") = false, "whether some cut vertex separates v1 from v2");

    py::class_<BlockCutTree>(m, "BlockCutTree")
        .def_readonly("block_count", &BlockCutTree::block_count)
        .def_readonly("vertex_count", &BlockCutTree::vertex_count)
        .def_readonly("edges", &BlockCutTree::edges)
        .def_readonly("labels", &BlockCutTree::labels)
        .def_readonly("cut", &BlockCutTree::cut)
        .def_readonly("block_splits", &BlockCutTree::block_splits)
        .def_property_readonly("node_count", &BlockCutTree::node_count)
        .def("degree", [](const BlockCutTree& t, int n) {
            if (n < 0 || n >= t.node_count()) throw py::index_error("node out of range");
            return t.degree(n);
        });

    m.def(
        "block_cut_tree",
        [](const BunemanGraph& g, const BlockDecomposition& dec, bool verify) {
            return block_cut_tree(g, dec, verify);
        },
        py::arg("graph"), py::arg("blocks"), py::arg("verify") = false);

    py::class_<XTreeNode>(m, "XTreeNode")
        .def_readonly("labels", &XTreeNode::labels)
        .def_readonly("origin", &XTreeNode::origin);

    py::class_<XTree>(m, "XTree")
        .def_readonly("nodes", &XTree::nodes)
        .def_readonly("edges", &XTree::edges)
        .def_readonly("beyond_recipe", &XTree::beyond_recipe)
        .def_property_readonly("node_count", &XTree::node_count)
        .def("degree", [](const XTree& t, int n) {
            if (n < 0 || n >= t.node_count()) throw py::index_error("node out of range");
            return t.degree(n);
        });

    m.def(
        "reduce_to_xtree",
        [](const BlockCutTree& t, bool verify) { return reduce_to_xtree(t, verify); },
        py::arg("tree"), py::arg("verify") = false);
    m.def("sim_classes", &sim_classes, py::arg("system"), py::arg("splits"));
    m.def(
        "leaf_label_bijection_test",
        [](const BunemanGraph& g, const BlockDecomposition& dec, bool verify) {
            return leaf_label_bijection_test(g, dec, verify);
        },
        py::arg("graph"), py::arg("blocks"), py::arg("verify") = false);
    m.def(
        "buneman_tree_criterion",
        [](const BunemanGraph& g, bool verify) { return buneman_tree_criterion(g, verify); },
        py::arg("graph"), py::arg("verify") = false);
    m.def("xtree_canonical", &xtree_canonical);
    m.def("xtree_isomorphic", &xtree_isomorphic);

    m.def("to_dot", [](const BunemanGraph& g) { return to_dot(g); });
    m.def("to_dot", [](const BlockCutTree& t) { return to_dot(t); });
    m.def("to_json", [](const BunemanGraph& g) { return to_json(g); });
    m.def("to_newick", &to_newick);

    py::class_<CheckItem>(m, "CheckItem")
        .def_readonly("name", &CheckItem::name)
        .def_readonly("cases", &CheckItem::cases)
        .def_readonly("passed", &CheckItem::passed)
        .def_readonly("detail", &CheckItem::detail);

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("items", &CheckReport::items)
        .def_readonly("systems", &CheckReport::systems)
        .def("all_passed", &CheckReport::all_passed);

    m.def(
        "run_checks",
        [](SystemPtr sys, unsigned seed, int sample_cap, bool deep) {
            CheckOptions opts;
            opts.seed = seed;
            opts.sample_cap = sample_cap;
            opts.deep = deep;
            return run_checks(sys, opts);
        },
        py::arg("system"), py::arg("seed") = 20260814u, py::arg("sample_cap") = 64,
        py::arg("deep") = true);
    m.def(
        "run_random_checks",
        [](int systems, int min_n, int max_n, int min_m, int max_m, unsigned seed, int sample_cap,
           bool deep) {
            CheckOptions opts;
            opts.systems = systems;
            opts.min_n = min_n;
            opts.max_n = max_n;
            opts.min_m = min_m;
            opts.max_m = max_m;
            opts.seed = seed;
            opts.sample_cap = sample_cap;
            opts.deep = deep;
            return run_random_checks(opts);
        },
        py::arg("systems") = 100, py::arg("min_n") = 3, py::arg("max_n") = 7,
        py::arg("min_m") = 2, py::arg("max_m") = 6, py::arg("seed") = 20260814u,
        py::arg("sample_cap") = 64, py::arg("deep") = true);

    m.def(
        "random_system",
        [](unsigned seed, int n, int m, const std::string& kind) {
            std::mt19937 rng(seed);
            if (kind == "any") return random_system(rng, n, m);
            if (kind == "compatible") return random_compatible_system(rng, n, m);
            if (kind == "incompatible") return random_incompatible_system(rng, n, m);
            throw py::value_error("kind must be 'any', 'compatible' or 'incompatible'");
        },
        py::arg("seed"), py::arg("n"), py::arg("m"), py::arg("kind") = "any");
}
