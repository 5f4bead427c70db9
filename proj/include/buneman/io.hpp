#pragma once

#include "buneman/trees.hpp"

#include <iosfwd>
#include <string>

namespace buneman {

// Split-file format: '#' starts a comment, blank lines are skipped, the first
// significant line is "elements: <space-separated labels>", and every further
// line lists the members of one part of a split (either part is accepted; the
// system is canonicalized on load). Parse errors carry the line number.
SystemPtr parse_split_file(std::istream& in);
SystemPtr load_split_file(const std::string& path);

// Emits the canonical form: the header plus, per split, the part that does
// not contain the first element. load ∘ save is the identity.
std::string format_split_file(const SplitSystem& sys);
void save_split_file(const SplitSystem& sys, const std::string& path);

// Graph as DOT: vertices v<index> (labeled ones annotated with their
// elements), edges with a type=<split> attribute. Deterministic ordering.
std::string to_dot(const BunemanGraph& g);

// {"vertices": [{"id", "sides", "labels"}], "edges": [{"u", "v", "type"}]};
// sides is the bit-string of the side selection (bit 0 first).
std::string to_json(const BunemanGraph& g);

// Block-cut tree as DOT: blocks as white boxes, graph vertices as black
// circles, labeled vertices annotated.
std::string to_dot(const BlockCutTree& t);

// Newick with internal labels; multi-element classes joined by '+', children
// ordered by the minimal element in their subtree. Rooted at the node
// carrying the minimal element; a labeled leaf root is hoisted so the output
// reads as an unrooted tree ("(1,...);" rather than "(...)1;").
std::string to_newick(const XTree& t);

} // namespace buneman
