#include "ptchron/analysis.hpp"

#include <cassert>

namespace ptchron {

namespace {

#ifndef NDEBUG
/// Test-build check: a parsed tree's leaves cover exactly the characters
/// outside whitespace/comment spans.
bool full_leaf_coverage(const Tree& tree, const Text& snapshot, const SpanMap& spans)
{
    std::vector<bool> covered(snapshot.size(), false);
    for (uint32_t p : leaf_covered_positions(tree)) {
        if (covered[p])
            return false;  // two leaves share a position
        covered[p] = true;
    }
    for (uint32_t p = 0; p < snapshot.size(); ++p) {
        bool in_span = spans.in_comment(p);
        for (const CharRange& w : spans.whitespace_spans)
            if (w.contains(p))
                in_span = true;
        if (covered[p] == in_span)
            return false;
    }
    return true;
}
#endif

}  // namespace

std::optional<size_t> SessionAnalysis::final_tree_state() const
{
    for (size_t t = trees.size(); t-- > 0;) {
        if (trees[t].exists())
            return t;
    }
    return std::nullopt;
}

SessionAnalysis analyze_session(Session session, const GrammarAdapter& grammar)
{
    SessionAnalysis a;
    a.grammar = &grammar;

    Replay r = replay_session(session);
    a.replay_error = r.error;
    a.snapshots = std::move(r.snapshots);
    a.session = std::move(session);
    if (a.replay_error)
        return a;

    for (size_t t = 0; t < a.snapshots.size(); ++t) {
        a.chain.push_edit(a.session.events[t], a.snapshots[t].size());
        a.spans.push_back(grammar.scan_spans(a.snapshots[t]));
        ParseOutcome po = grammar.parse(a.snapshots[t], t);
        if (po.ok) {
            assert(validate_tree(po.tree, a.snapshots[t]));
            assert(full_leaf_coverage(po.tree, a.snapshots[t], a.spans[t]));
            a.trees.push_back(std::move(po.tree));
        } else {
            Tree absent;
            absent.state = t;
            a.trees.push_back(std::move(absent));
        }
    }

    TrackResult pass1 = track_all(a.trees, a.chain, a.spans, a.snapshots);
    a.bridge_outcomes =
        bridge_session(a.trees, a.chain, a.spans, a.snapshots, a.session.events, pass1);
    a.tracking = track_all(a.trees, a.chain, a.spans, a.snapshots);
    return a;
}

int32_t edited_leaf(const SessionAnalysis& a, size_t t)
{
    if (!a.trees[t].exists())
        return -1;
    const EditEvent& ev = a.session.events[t];
    if (ev.kind == EditKind::Insert) {
        for (size_t k = 0; k < ev.text.size(); ++k) {
            int32_t leaf = leaf_at(a.trees[t], static_cast<uint32_t>(ev.index + k));
            if (leaf >= 0)
                return leaf;
        }
        return -1;
    }
    int32_t leaf = leaf_at(a.trees[t], static_cast<uint32_t>(ev.index));
    if (leaf >= 0)
        return leaf;
    if (ev.index > 0)
        return leaf_at(a.trees[t], static_cast<uint32_t>(ev.index - 1));
    return -1;
}

}  // namespace ptchron
