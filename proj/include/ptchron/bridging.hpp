#pragma once

#include "ptchron/correspondence.hpp"
#include "ptchron/parse_tree.hpp"
#include "ptchron/tracking.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ptchron {

enum class BridgeStatus { Built, Failed };

struct BridgeOutcome {
    size_t state = 0;
    BridgeStatus status = BridgeStatus::Built;
    // enumerated causes; "chained" marks states unattempted because an
    // earlier state in the same unparseable stretch failed
    std::string failure_reason;
};

/// §5.1 pruning: returns a copy of the subtree rooted at `root` with every
/// character whose original index fails `surviving` removed. Ranges compact
/// down by the number of removed characters before them; nodes that end up
/// empty are dropped. Returns an empty vector when everything was pruned.
/// The copy's nodes are in preorder with parent links; node 0 is the root.
std::vector<ParseNode> prune_subtree(const Tree& tree, int32_t root,
                                     const std::function<bool(uint32_t)>& surviving);

/// Constructs bridging parse trees for every unparseable state, in place.
/// `pass1` must hold temporal links computed over the parsed trees only.
/// Returns one outcome per formerly-absent state.
std::vector<BridgeOutcome> bridge_session(std::vector<Tree>& trees,
                                          const CorrespondenceChain& chain,
                                          const std::vector<SpanMap>& spans,
                                          const std::vector<Text>& snapshots,
                                          const std::vector<EditEvent>& events,
                                          const TrackResult& pass1);

struct CoverageStats {
    double parseable_fraction = 0.0;
    double bridged_fraction = 0.0;
    double tree_fraction = 0.0;
    std::vector<std::pair<std::string, size_t>> failure_breakdown;
};

CoverageStats coverage_stats(const std::vector<Tree>& trees,
                             const std::vector<BridgeOutcome>& outcomes);

}  // namespace ptchron
