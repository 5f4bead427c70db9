#include "buneman/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace buneman {

namespace {

// message without the "Code: " prefix that Error::what() carries
std::string bare_message(const Error& e) {
    std::string w = e.what();
    auto sep = w.find(": ");
    return sep == std::string::npos ? w : w.substr(sep + 2);
}

[[noreturn]] void fail_at(int line, const Error& e) {
    fail(e.code(), "line " + std::to_string(line) + ": " + bare_message(e));
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string join_labels(const GroundSet& ground, const std::vector<int>& elements,
                        char sep) {
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += sep;
        out += ground.label(elements[i]);
    }
    return out;
}

} // namespace

SystemPtr parse_split_file(std::istream& in) {
    std::optional<GroundSet> ground;
    std::vector<Bitset> raw;
    std::set<Bitset> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> tokens = tokenize(strip_comment(line));
        if (tokens.empty()) continue;
        if (!ground) {
            if (tokens.front() != "elements:")
                fail(ErrorCode::syntax_error,
                     "line " + std::to_string(lineno) + ": expected 'elements:' header");
            tokens.erase(tokens.begin());
            if (tokens.empty())
                fail(ErrorCode::empty_ground_set,
                     "line " + std::to_string(lineno) + ": no elements listed");
            try {
                ground.emplace(std::move(tokens));
            } catch (const Error& e) {
                fail_at(lineno, e);
            }
            continue;
        }
        Bitset part(ground->size());
        for (const std::string& tok : tokens) {
            try {
                part.set(ground->index_of(tok));
            } catch (const Error& e) {
                fail_at(lineno, e);
            }
        }
        if (part.count() == static_cast<std::size_t>(ground->size()))
            fail(ErrorCode::improper_split,
                 "line " + std::to_string(lineno) + ": the other part would be empty");
        Bitset canonical = part.test(0) ? part : ~part;
        if (!seen.insert(canonical).second)
            fail(ErrorCode::duplicate_split,
                 "line " + std::to_string(lineno) + ": duplicate of an earlier split");
        raw.push_back(std::move(part));
    }
    if (!ground) fail(ErrorCode::syntax_error, "missing 'elements:' header");
    if (raw.empty()) fail(ErrorCode::improper_split, "no splits listed");
    return make_split_system(std::move(*ground), raw);
}

SystemPtr load_split_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::syntax_error, "cannot open '" + path + "'");
    return parse_split_file(in);
}

std::string format_split_file(const SplitSystem& sys) {
    std::string out = "elements:";
    for (const std::string& label : sys.ground().labels()) out += " " + label;
    out += "\n";
    for (int i = 0; i < sys.size(); ++i)
        out += join_labels(sys.ground(), sys.split(i).part_b.indices(), ' ') + "\n";
    return out;
}

void save_split_file(const SplitSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::syntax_error, "cannot write '" + path + "'");
    out << format_split_file(sys);
}

std::string to_dot(const BunemanGraph& g) {
    std::ostringstream out;
    out << "graph buneman {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "  v" << v;
        if (!g.labels_at(v).empty())
            out << " [label=\"v" << v << ": "
                << join_labels(g.system()->ground(), g.labels_at(v), '+') << "\"]";
        out << ";\n";
    }
    for (const auto& [u, v, type] : g.edges())
        out << "  v" << u << " -- v" << v << " [type=" << type << "];\n";
    out << "}\n";
    return out.str();
}

std::string to_json(const BunemanGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        nlohmann::ordered_json entry;
        entry["id"] = v;
        entry["sides"] = g.sides(v).to_string();
        auto labels = nlohmann::ordered_json::array();
        for (int x : g.labels_at(v)) labels.push_back(g.system()->ground().label(x));
        entry["labels"] = std::move(labels);
        j["vertices"].push_back(std::move(entry));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v, type] : g.edges())
        j["edges"].push_back({{"u", u}, {"v", v}, {"type", type}});
    return j.dump(2) + "\n";
}

std::string to_dot(const BlockCutTree& t) {
    std::ostringstream out;
    const SplitSystem& sys = *t.system;
    out << "graph blockcut {\n";
    for (int b = 0; b < t.block_count; ++b) {
        out << "  b" << b << " [shape=box, label=\"b" << b << ":";
        for (int s : t.block_splits[static_cast<std::size_t>(b)])
            out << " " << sys.split_repr(s);
        out << "\"];\n";
    }
    for (int v = 0; v < t.vertex_count; ++v) {
        int node = t.vertex_node(v);
        out << "  v" << v
            << " [shape=circle, style=filled, fillcolor=black, fontcolor=white";
        if (!t.labels[static_cast<std::size_t>(node)].empty())
            out << ", label=\"v" << v << ": "
                << join_labels(sys.ground(), t.labels[static_cast<std::size_t>(node)], '+')
                << "\"";
        out << "];\n";
    }
    for (const auto& [b, node] : t.edges)
        out << "  b" << b << " -- v" << t.graph_vertex(node) << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

// minimal element anywhere in the subtree of u away from parent
int subtree_min(const XTree& t, int u, int parent) {
    int best = INT_MAX;
    const auto& labels = t.nodes[static_cast<std::size_t>(u)].labels;
    if (!labels.empty()) best = labels.front();
    for (int w : t.adj[static_cast<std::size_t>(u)])
        if (w != parent) best = std::min(best, subtree_min(t, w, u));
    return best;
}

std::string newick_rec(const XTree& t, int u, int parent) {
    std::vector<std::pair<int, int>> kids;  // (subtree min, child)
    for (int w : t.adj[static_cast<std::size_t>(u)])
        if (w != parent) kids.push_back({subtree_min(t, w, u), w});
    std::sort(kids.begin(), kids.end());
    std::string out;
    if (!kids.empty()) {
        out += '(';
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) out += ',';
            out += newick_rec(t, kids[i].second, u);
        }
        out += ')';
    }
    out += join_labels(t.system->ground(), t.nodes[static_cast<std::size_t>(u)].labels, '+');
    return out;
}

} // namespace

std::string to_newick(const XTree& t) {
    int root = -1;
    for (int u = 0; u < t.node_count() && root < 0; ++u) {
        const auto& labels = t.nodes[static_cast<std::size_t>(u)].labels;
        if (!labels.empty() && labels.front() == 0) root = u;
    }
    if (root < 0) fail(ErrorCode::internal_inconsistency, "no node carries the minimal element");
    const GroundSet& ground = t.system->ground();
    if (t.degree(root) == 1) {
        // hoist the labeled leaf so the edge to its neighbour reads unrooted
        std::string out = "(";
        out += join_labels(ground, t.nodes[static_cast<std::size_t>(root)].labels, '+');
        out += ',';
        out += newick_rec(t, t.adj[static_cast<std::size_t>(root)].front(), root);
        out += ");";
        return out;
    }
    return newick_rec(t, root, -1) + ";";
}

} // namespace buneman
