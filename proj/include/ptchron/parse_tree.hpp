#pragma once

#include "ptchron/correspondence.hpp"
#include "ptchron/text.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ptchron {

/// Grammar type labels are interned; ids are stable per adapter.
using TypeId = uint16_t;

struct ParseNode {
    TypeId type = 0;
    CharRange range;
    int32_t parent = -1;            // index into Tree::nodes, -1 for root
    std::vector<int32_t> children;  // indices, left-to-right
    Text text;                      // leaves only
    bool is_leaf = false;
    bool is_transient = false;

    // bridging bookkeeping: the parsed-state node this one was copied from,
    // carried through copies of copies. -1 when the node has no past anchor.
    int32_t anchor_state = -1;
    uint32_t anchor_node = 0;
};

enum class TreeKind { Parsed, Bridging, Absent };

/// Parse tree or bridging parse tree for one state. Nodes are stored in
/// preorder; node 0 is the root. A node's uid is (state, preorder index).
struct Tree {
    size_t state = 0;
    TreeKind kind = TreeKind::Absent;
    std::vector<ParseNode> nodes;

    bool exists() const { return kind != TreeKind::Absent; }
    size_t size() const { return nodes.size(); }
};

/// Comment and whitespace spans, computable even for unparseable text.
struct SpanMap {
    std::vector<CharRange> comment_spans;     // include the delimiter
    std::vector<CharRange> whitespace_spans;  // outside comments and strings

    bool in_comment(uint32_t i) const;
    bool overlaps_comment(const CharRange& r) const;
};

/// Identifies one node instance across a session: (state, preorder index).
struct NodeRef {
    size_t state = 0;
    uint32_t node = 0;
    friend bool operator==(const NodeRef&, const NodeRef&) = default;
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

inline uint64_t node_uid(const NodeRef& r)
{
    return (static_cast<uint64_t>(r.state) << 32) | r.node;
}

/// Per-grammar metadata the analysis layers need: which node types are the
/// bodies of which construct categories, and which lineages carry meaning
/// of their own when counting nodes.
struct ConstructInfo {
    std::string name;                 // "if", "loop", "function", "call"
    std::vector<TypeId> node_types;   // construct node labels
    std::vector<TypeId> body_types;   // the container child holding the "inside"
};

struct GrammarTraits {
    std::vector<ConstructInfo> constructs;
    std::vector<TypeId> identifier_types;  // renaming detection
    // excluded from the semantic node-count policy:
    std::vector<TypeId> punctuation_types;
    std::vector<TypeId> container_types;
};

struct ParseOutcome {
    bool ok = false;
    Tree tree;  // valid only when ok
};

/// Contract every grammar implements: produce a full-coverage parse tree or
/// report the snapshot unparseable, plus a total comment/whitespace scanner.
class GrammarAdapter {
public:
    virtual ~GrammarAdapter() = default;
    virtual std::string name() const = 0;
    virtual ParseOutcome parse(const Text& text, size_t state) const = 0;
    virtual SpanMap scan_spans(const Text& text) const = 0;
    virtual const GrammarTraits& traits() const = 0;
    virtual std::string label(TypeId t) const = 0;
    virtual TypeId type_of(const std::string& label) const = 0;
};

/// "mini" (hand-verifiable reference language) or "python".
const GrammarAdapter* grammar_by_name(const std::string& name);

// --- tree utilities -------------------------------------------------------

/// The unique leaf whose range contains `index`, or -1. Descent prunes
/// subtrees with disjoint ranges.
int32_t leaf_at(const Tree& tree, uint32_t index);

/// Deepest node whose range contains `r`; the root always qualifies.
int32_t lowest_containing(const Tree& tree, const CharRange& r);

/// Structural invariants: parent ranges contain children, children are
/// disjoint and ordered, leaf texts match the snapshot.
bool validate_tree(const Tree& tree, const Text& snapshot, std::string* why = nullptr);

/// Sorted list of positions covered by (non-transient) leaves.
std::vector<uint32_t> leaf_covered_positions(const Tree& tree);

int tree_depth(const Tree& tree, int32_t node);

/// Path length in edges between two nodes of one tree.
int path_length(const Tree& tree, int32_t a, int32_t b);

std::string tree_to_json(const Tree& tree, const GrammarAdapter& g);

}  // namespace ptchron
