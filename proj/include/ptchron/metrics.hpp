#pragma once

#include "ptchron/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptchron {

/// Which lineages a deletion count includes. Semantic drops the root, pure
/// punctuation/keyword-marker leaves, container nodes (suites, argument
/// lists) and transient placeholders, leaving the nodes the paper's worked
/// example counts; All counts every lineage.
enum class CountPolicy { Semantic, All };

struct DeletionStats {
    size_t num_nodes = 0;
    size_t num_deleted = 0;
    std::optional<double> rate;  // absent when num_nodes == 0
};

struct ConstructDeletion {
    std::string construct;
    DeletionStats inside;
    DeletionStats outside;
};

DeletionStats node_deletion_rate(const SessionAnalysis& a,
                                 CountPolicy policy = CountPolicy::Semantic);

/// Rate over lineages with at least one instance inside (a body of) the
/// named construct category, or strictly outside all of them.
DeletionStats node_deletion_rate_scoped(const SessionAnalysis& a, const std::string& construct,
                                        bool inside, CountPolicy policy = CountPolicy::Semantic);

std::vector<ConstructDeletion> deletion_by_construct(const SessionAnalysis& a,
                                                     CountPolicy policy = CountPolicy::Semantic);

struct LifetimeRecord {
    uint32_t lineage_id = 0;
    size_t first_state = 0;
    size_t last_state = 0;
    size_t states_present = 0;
    double lifetime_fraction = 0.0;  // states_present / states-with-trees
};

std::vector<LifetimeRecord> node_lifetimes(const SessionAnalysis& a);

struct JumpRecord {
    size_t edit_state = 0;
    int distance = 0;
    bool skipped = false;  // whitespace/comment edit, or no previous-leaf image
};

struct ContextSwitchStats {
    std::optional<double> frequency;  // |S_threshold| / |S_1|; absent if S_1 empty
    size_t s1_count = 0;
    size_t s_threshold_count = 0;
    std::vector<JumpRecord> jumps;
};

ContextSwitchStats context_switch_frequency(const SessionAnalysis& a, int threshold = 5);

struct TreeSizePoint {
    size_t state = 0;
    std::optional<size_t> node_count;  // absent = failed bridge (gap)
    TreeKind kind = TreeKind::Absent;
};

std::vector<TreeSizePoint> tree_size_series(const SessionAnalysis& a);

struct CommentRestorationStats {
    size_t total_lineages = 0;
    size_t commented = 0;
    size_t restored = 0;
    std::optional<double> commented_fraction;
    std::optional<double> restored_fraction;  // of commented
};

CommentRestorationStats comment_restoration_stats(const SessionAnalysis& a);

/// True when some instance of the lineage sits inside a body container of
/// the construct category (e.g. an if-suite, a call's argument list).
bool lineage_inside_construct(const SessionAnalysis& a, const Lineage& lineage,
                              const ConstructInfo& construct);

bool lineage_counted(const SessionAnalysis& a, const Lineage& lineage, CountPolicy policy);

bool lineage_deleted(const SessionAnalysis& a, const Lineage& lineage);

}  // namespace ptchron
