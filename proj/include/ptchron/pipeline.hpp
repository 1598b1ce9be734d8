#pragma once

#include "ptchron/analysis.hpp"
#include "ptchron/behaviors.hpp"
#include "ptchron/metrics.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace ptchron {

struct RunConfig {
    std::string input_path;
    std::string output_dir;
    std::string grammar = "mini";
    size_t min_events = 300;
    double min_tree_coverage = 0.8;
    int jump_threshold = 5;
    int rename_gap = 20;
    size_t size_split = 3000;
    std::string format = "json";  // "json" or "csv"
    bool no_timestamp = false;
    std::optional<std::string> starter_path;  // applied to every session
    size_t jobs = 0;                          // 0 = hardware concurrency
    CountPolicy count_policy = CountPolicy::Semantic;
    BehaviorConfig behavior;
};

/// ingest -> filter -> per-session analysis -> reports. Returns the process
/// exit status: nonzero on unreadable input, config errors, or when no
/// session survives ingest.
int run_pipeline(const RunConfig& config, std::ostream& log);

/// Tidy per-observation CSV for one analyzed session.
/// kind: lifetimes | tree_size | jumps | ndr_by_construct.
/// Throws std::invalid_argument for unknown kinds.
std::string emit_plot_data(const SessionAnalysis& a, const std::string& kind,
                           const RunConfig& config, bool header = true);

/// `ptchron trees`: writes per-session tree dumps and temporal-link JSONL.
int run_tree_dump(const RunConfig& config, std::ostream& log);

/// `ptchron plotdata <kind>`: corpus-wide tidy CSV for one plot kind.
int run_plot_data(const RunConfig& config, const std::string& kind, std::ostream& log);

}  // namespace ptchron
