#include "ptchron/tracking.hpp"

#include <algorithm>
#include <cassert>

namespace ptchron {

namespace {

/// Candidate search of the node correspondence step: the deepest non-root
/// node whose range contains r. Subtrees with disjoint ranges are skipped.
/// Equal-range chains (unary wrappers) are tied apart by type label, then
/// leaf/internal class, then depth.
int32_t find_candidate(const Tree& tree, const CharRange& r, const ParseNode& child)
{
    if (tree.nodes.empty() || !tree.nodes[0].range.contains(r))
        return -1;
    // collect the root-to-deepest chain of containing nodes
    int32_t cur = 0;
    std::vector<int32_t> chain;
    while (true) {
        if (cur != 0)
            chain.push_back(cur);
        int32_t next = -1;
        for (int32_t c : tree.nodes[cur].children) {
            const CharRange& cr = tree.nodes[c].range;
            if (cr.lo > r.lo)
                break;  // ordered children: nothing further right can contain
            if (cr.contains(r)) {
                next = c;
                break;
            }
        }
        if (next < 0)
            break;
        cur = next;
    }
    if (chain.empty())
        return -1;
    int32_t deepest = chain.back();
    // nodes sharing the deepest node's exact range form the ambiguous tail
    std::vector<int32_t> ties;
    for (int32_t n : chain)
        if (tree.nodes[n].range == tree.nodes[deepest].range)
            ties.push_back(n);
    if (ties.size() == 1)
        return deepest;
    for (auto it = ties.rbegin(); it != ties.rend(); ++it)
        if (tree.nodes[*it].type == child.type)
            return *it;
    for (auto it = ties.rbegin(); it != ties.rend(); ++it)
        if (tree.nodes[*it].is_leaf == child.is_leaf)
            return *it;
    return deepest;
}

}  // namespace

std::optional<TemporalLink> find_temporal_parent(const std::vector<Tree>& trees,
                                                 const CorrespondenceChain& chain,
                                                 const std::vector<SpanMap>& spans,
                                                 const std::vector<Text>& snapshots,
                                                 size_t t, uint32_t node_idx)
{
    const Tree& tree = trees[t];
    const ParseNode& node = tree.nodes[node_idx];

    if (node.parent < 0) {
        // roots track root-to-root: the file is the same file
        for (size_t i = 1; i <= t; ++i) {
            if (trees[t - i].exists()) {
                TemporalLink link;
                link.child = {t, node_idx};
                link.parent = {t - i, 0};
                link.gap = static_cast<uint32_t>(i);
                return link;
            }
        }
        return std::nullopt;
    }
    if (node.range.empty())
        return std::nullopt;

    // Incremental images of the node's first and last surviving original
    // characters. The node stops corresponding the moment its leading
    // character turns out to have been created along the way; trailing
    // characters may shed, with the nearest older original character taking
    // over the end (the §4.1 backward scan).
    int64_t front_img = node.range.lo;
    int64_t back_img = node.range.hi - 1;
    uint32_t back_idx = node.range.hi - 1;
    bool via_comment = false;
    for (size_t i = 1; i <= t; ++i) {
        size_t target = t - i;
        front_img = chain.map_back1(static_cast<uint32_t>(front_img), target + 1);
        if (front_img < 0)
            return std::nullopt;  // leading character created at this step
        back_img = chain.map_back1(static_cast<uint32_t>(back_img), target + 1);
        while (back_img < 0) {
            if (back_idx == node.range.lo) {
                back_img = front_img;  // front survives, so lo is alive
                break;
            }
            --back_idx;
            back_img = chain.map_back(back_idx, t, target);
        }
        CharRange r{static_cast<uint32_t>(front_img), static_cast<uint32_t>(back_img) + 1};
        if (!trees[target].exists())
            continue;  // unparseable and unbridged; keep iterating
        // boundary whitespace carries no structural identity; trimming it
        // keeps containment meaningful when ranges grew across token gaps
        const Text& snap = snapshots[target];
        while (r.lo < r.hi && is_space_char(snap[r.lo]))
            ++r.lo;
        while (r.hi > r.lo && is_space_char(snap[r.hi - 1]))
            --r.hi;
        if (r.empty())
            continue;
        if (spans[target].overlaps_comment(r)) {
            // the characters exist but live in a comment here (§4.3);
            // a partial overlap counts as not found as well
            via_comment = true;
            continue;
        }
        int32_t m = find_candidate(trees[target], r, node);
        if (m >= 0) {
            TemporalLink link;
            link.child = {t, node_idx};
            link.parent = {target, static_cast<uint32_t>(m)};
            link.gap = static_cast<uint32_t>(i);
            link.via_comment = via_comment;
            return link;
        }
    }
    return std::nullopt;
}

const TemporalLink* TrackResult::parent_of(const NodeRef& n) const
{
    auto it = by_child_.find(n);
    return it == by_child_.end() ? nullptr : &links_[it->second];
}

uint32_t TrackResult::lineage_id(const NodeRef& n) const
{
    auto it = lineage_of_.find(n);
    return it == lineage_of_.end() ? UINT32_MAX : it->second;
}

std::optional<NodeRef> TrackResult::instance_at(uint32_t lineage_id, size_t state) const
{
    const Lineage& l = lineages_[lineage_id];
    auto it = std::lower_bound(l.instances.begin(), l.instances.end(), state,
                               [](const NodeRef& a, size_t s) { return a.state < s; });
    if (it != l.instances.end() && it->state == state)
        return *it;
    return std::nullopt;
}

TrackResult track_all(const std::vector<Tree>& trees, const CorrespondenceChain& chain,
                      const std::vector<SpanMap>& spans, const std::vector<Text>& snapshots)
{
    TrackResult res;
    for (size_t t = 0; t < trees.size(); ++t) {
        if (!trees[t].exists())
            continue;
        for (uint32_t idx = 0; idx < trees[t].nodes.size(); ++idx) {
            auto link = find_temporal_parent(trees, chain, spans, snapshots, t, idx);
            if (link) {
                res.by_child_[link->child] = res.links_.size();
                res.links_.push_back(*link);
            }
        }
    }

    // Lineages: a parent's lineage continues into the continuation child —
    // the linked child with the smallest state, then the leftmost chained
    // start, then the smallest preorder index. Other children begin new
    // lineages of their own.
    std::map<NodeRef, NodeRef> continuation;  // parent -> chosen child
    for (const TemporalLink& l : res.links_) {
        auto it = continuation.find(l.parent);
        if (it == continuation.end()) {
            continuation[l.parent] = l.child;
            continue;
        }
        const NodeRef& cur = it->second;
        if (l.child.state < cur.state
            || (l.child.state == cur.state && l.child.node < cur.node)) {
            it->second = l.child;
        }
    }

    for (size_t t = 0; t < trees.size(); ++t) {
        if (!trees[t].exists())
            continue;
        for (uint32_t idx = 0; idx < trees[t].nodes.size(); ++idx) {
            NodeRef me{t, idx};
            const TemporalLink* up = res.parent_of(me);
            if (up) {
                auto cont = continuation.find(up->parent);
                if (cont != continuation.end() && cont->second == me) {
                    uint32_t lid = res.lineage_of_.at(up->parent);
                    res.lineage_of_[me] = lid;
                    res.lineages_[lid].instances.push_back(me);
                    continue;
                }
            }
            uint32_t lid = static_cast<uint32_t>(res.lineages_.size());
            Lineage l;
            l.id = lid;
            l.instances.push_back(me);
            res.lineages_.push_back(std::move(l));
            res.lineage_of_[me] = lid;
        }
    }
    return res;
}

}  // namespace ptchron
