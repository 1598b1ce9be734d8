#pragma once

#include "ptchron/bridging.hpp"
#include "ptchron/correspondence.hpp"
#include "ptchron/edit_log.hpp"
#include "ptchron/parse_tree.hpp"
#include "ptchron/tracking.hpp"

#include <optional>
#include <vector>

namespace ptchron {

/// Everything the metric and behavior layers consume for one session:
/// snapshots, correspondences, per-state trees (parsed or bridged), spans
/// and the final temporal links/lineages.
struct SessionAnalysis {
    Session session;
    std::vector<Text> snapshots;
    CorrespondenceChain chain;
    std::vector<SpanMap> spans;
    std::vector<Tree> trees;
    std::vector<BridgeOutcome> bridge_outcomes;
    TrackResult tracking;
    const GrammarAdapter* grammar = nullptr;
    std::optional<ReplayError> replay_error;

    size_t states() const { return snapshots.size(); }

    /// Last state that has a tree; nullopt when no state ever parsed.
    std::optional<size_t> final_tree_state() const;
};

/// Full single-session pipeline: replay, parse every state, track parsed
/// trees, bridge unparseable states, then track everything again so links
/// run through the bridges.
SessionAnalysis analyze_session(Session session, const GrammarAdapter& grammar);

/// Leaf the edit at state t touched in that state's tree, or -1 when the
/// edit landed in whitespace/comments or the state has no tree.
int32_t edited_leaf(const SessionAnalysis& a, size_t t);

}  // namespace ptchron
