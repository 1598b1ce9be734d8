#include "ptchron/parse_tree.hpp"

#include "json.hpp"

#include <algorithm>

namespace ptchron {

bool SpanMap::in_comment(uint32_t i) const
{
    auto it = std::upper_bound(comment_spans.begin(), comment_spans.end(), i,
                               [](uint32_t v, const CharRange& r) { return v < r.lo; });
    if (it == comment_spans.begin())
        return false;
    --it;
    return it->contains(i);
}

bool SpanMap::overlaps_comment(const CharRange& r) const
{
    if (r.empty())
        return in_comment(r.lo);
    for (const CharRange& c : comment_spans) {
        if (c.lo >= r.hi)
            break;
        if (c.overlaps(r))
            return true;
    }
    return false;
}

int32_t leaf_at(const Tree& tree, uint32_t index)
{
    if (!tree.exists() || tree.nodes.empty())
        return -1;
    int32_t cur = 0;
    if (!tree.nodes[0].range.contains(index))
        return -1;
    while (true) {
        const ParseNode& n = tree.nodes[cur];
        if (n.is_leaf && n.children.empty())
            return cur;
        int32_t next = -1;
        for (int32_t c : n.children) {
            if (tree.nodes[c].range.contains(index)) {
                next = c;
                break;
            }
        }
        if (next < 0) {
            // position inside this node but under none of its children:
            // a leaf-with-children keeps its own text chars uncovered
            return n.is_leaf ? cur : -1;
        }
        cur = next;
    }
}

int32_t lowest_containing(const Tree& tree, const CharRange& r)
{
    if (!tree.exists() || tree.nodes.empty())
        return -1;
    if (!tree.nodes[0].range.contains(r))
        return -1;
    int32_t cur = 0;
    while (true) {
        int32_t next = -1;
        for (int32_t c : tree.nodes[cur].children) {
            if (tree.nodes[c].range.contains(r)) {
                next = c;
                break;
            }
            // children are ordered; once past r.lo nothing later can contain
            if (tree.nodes[c].range.lo > r.lo)
                break;
        }
        if (next < 0)
            return cur;
        cur = next;
    }
}

bool validate_tree(const Tree& tree, const Text& snapshot, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (!tree.exists())
        return fail("tree absent");
    if (tree.nodes.empty())
        return fail("no nodes");
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const ParseNode& n = tree.nodes[i];
        if (n.range.lo > n.range.hi)
            return fail("inverted range at node " + std::to_string(i));
        if (n.range.hi > snapshot.size())
            return fail("range past snapshot end at node " + std::to_string(i));
        uint32_t prev_hi = n.range.lo;
        for (int32_t c : n.children) {
            const ParseNode& ch = tree.nodes[c];
            if (ch.parent != static_cast<int32_t>(i))
                return fail("parent link broken at node " + std::to_string(c));
            if (!n.range.contains(ch.range))
                return fail("child range escapes parent at node " + std::to_string(c));
            if (ch.range.lo < prev_hi)
                return fail("children overlap or unordered at node " + std::to_string(c));
            prev_hi = ch.range.hi;
        }
        if (n.is_leaf && n.children.empty()) {
            if (n.text.size() != n.range.size())
                return fail("leaf text length mismatch at node " + std::to_string(i));
            if (snapshot.compare(n.range.lo, n.range.size(), n.text) != 0)
                return fail("leaf text disagrees with snapshot at node " + std::to_string(i));
        }
    }
    return true;
}

std::vector<uint32_t> leaf_covered_positions(const Tree& tree)
{
    std::vector<uint32_t> out;
    for (const ParseNode& n : tree.nodes) {
        if (n.is_leaf && n.children.empty() && !n.is_transient) {
            for (uint32_t i = n.range.lo; i < n.range.hi; ++i)
                out.push_back(i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int tree_depth(const Tree& tree, int32_t node)
{
    int d = 0;
    while (tree.nodes[node].parent >= 0) {
        node = tree.nodes[node].parent;
        ++d;
    }
    return d;
}

int path_length(const Tree& tree, int32_t a, int32_t b)
{
    if (a == b)
        return 0;
    int da = tree_depth(tree, a);
    int db = tree_depth(tree, b);
    int dist = 0;
    while (da > db) {
        a = tree.nodes[a].parent;
        --da;
        ++dist;
    }
    while (db > da) {
        b = tree.nodes[b].parent;
        --db;
        ++dist;
    }
    while (a != b) {
        a = tree.nodes[a].parent;
        b = tree.nodes[b].parent;
        dist += 2;
    }
    return dist;
}

namespace {

nlohmann::json node_to_json(const Tree& tree, const GrammarAdapter& g, int32_t idx)
{
    const ParseNode& n = tree.nodes[idx];
    nlohmann::json j;
    j["uid"] = node_uid(NodeRef{tree.state, static_cast<uint32_t>(idx)});
    j["type"] = g.label(n.type);
    j["start"] = n.range.lo;
    j["end"] = n.range.hi;
    if (n.is_transient)
        j["transient"] = true;
    auto kids = nlohmann::json::array();
    for (int32_t c : n.children)
        kids.push_back(node_to_json(tree, g, c));
    j["children"] = std::move(kids);
    return j;
}

}  // namespace

std::string tree_to_json(const Tree& tree, const GrammarAdapter& g)
{
    nlohmann::json j;
    j["state"] = tree.state;
    j["status"] = tree.kind == TreeKind::Parsed     ? "parsed"
                  : tree.kind == TreeKind::Bridging ? "bridging"
                                                    : "absent";
    if (tree.exists())
        j["root"] = node_to_json(tree, g, 0);
    return j.dump();
}

}  // namespace ptchron
