#pragma once

#include "ptchron/correspondence.hpp"
#include "ptchron/parse_tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ptchron {

/// Temporal parent edge: the node at an earlier state this node derives from.
struct TemporalLink {
    NodeRef child;
    NodeRef parent;
    uint32_t gap = 1;          // child.state - parent.state
    bool via_comment = false;  // search skipped a state whose chars sat in a comment
};

/// Maximal chain of temporally linked node instances: "the same node"
/// through time. Every node belongs to exactly one lineage.
struct Lineage {
    uint32_t id = 0;
    std::vector<NodeRef> instances;  // strictly increasing in state
    size_t first_state() const { return instances.front().state; }
    size_t last_state() const { return instances.back().state; }
};

class TrackResult {
public:
    /// link whose child is `n`, if any
    const TemporalLink* parent_of(const NodeRef& n) const;
    const std::vector<TemporalLink>& links() const { return links_; }

    uint32_t lineage_id(const NodeRef& n) const;  // UINT32_MAX if unknown
    const Lineage& lineage(uint32_t id) const { return lineages_[id]; }
    const std::vector<Lineage>& lineages() const { return lineages_; }

    /// The lineage's instance at exactly `state`, if present.
    std::optional<NodeRef> instance_at(uint32_t lineage_id, size_t state) const;

    friend TrackResult track_all(const std::vector<Tree>& trees,
                                 const CorrespondenceChain& chain,
                                 const std::vector<SpanMap>& spans,
                                 const std::vector<Text>& snapshots);

private:
    std::vector<TemporalLink> links_;
    std::map<NodeRef, size_t> by_child_;
    std::vector<Lineage> lineages_;
    std::map<NodeRef, uint32_t> lineage_of_;
};

/// Finds the temporal parent of node (t, idx): iterate i = 1, 2, ... mapping
/// the node's range back state by state; skip states without trees and
/// states where the chained characters sit in a comment; stop when the
/// range stops corresponding. Whitespace at the ends of the chained range
/// is ignored for containment. Roots always link root-to-root.
std::optional<TemporalLink> find_temporal_parent(const std::vector<Tree>& trees,
                                                 const CorrespondenceChain& chain,
                                                 const std::vector<SpanMap>& spans,
                                                 const std::vector<Text>& snapshots,
                                                 size_t t, uint32_t node_idx);

/// Runs find_temporal_parent for every node of every existing tree and
/// derives lineages.
TrackResult track_all(const std::vector<Tree>& trees, const CorrespondenceChain& chain,
                      const std::vector<SpanMap>& spans,
                      const std::vector<Text>& snapshots);

}  // namespace ptchron
