#include "ptchron/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"ptchron: parse-tree tracking through keystroke histories"};
    app.require_subcommand(1);

    ptchron::RunConfig cfg;
    std::string count_policy = "semantic";
    std::string plot_kind;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--grammar", cfg.grammar, "Grammar adapter: mini or python")
            ->check(CLI::IsMember({"mini", "python"}));
        cmd->add_option("--starter", cfg.starter_path,
                        "Starter-code file applied to every session");
        cmd->add_option("--min-events", cfg.min_events,
                        "Drop sessions with fewer events (inclusive keep)");
        cmd->add_option("--jobs", cfg.jobs, "Worker threads (0 = hardware)");
        cmd->add_option("input", cfg.input_path, "ProgSnap2-subset CSV")->required();
        cmd->add_option("outdir", cfg.output_dir, "Output directory")->required();
    };

    CLI::App* run = app.add_subcommand("run", "Full pipeline: analyze and write reports");
    run->add_option("--min-tree-coverage", cfg.min_tree_coverage,
                    "Drop sessions with trees for less than this fraction of states");
    run->add_option("--jump-threshold", cfg.jump_threshold, "Context-switch jump distance");
    run->add_option("--rename-gap", cfg.rename_gap,
                    "Consecutive other-node edits required before a rename");
    run->add_option("--size-split", cfg.size_split,
                    "Event count splitting short from medium files");
    run->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_flag("--no-timestamp", cfg.no_timestamp,
                  "Omit the generated-at line so outputs are byte-reproducible");
    run->add_option("--count-policy", count_policy, "Node counting: semantic or all")
        ->check(CLI::IsMember({"semantic", "all"}));
    run->add_option("--paste-min", cfg.behavior.paste_min, "Minimum insert size for a paste");
    add_common(run);

    CLI::App* trees = app.add_subcommand("trees", "Dump per-state trees and temporal links");
    add_common(trees);

    CLI::App* plot = app.add_subcommand("plotdata", "Emit tidy CSV for one plot kind");
    plot->add_option("kind", plot_kind,
                     "lifetimes | tree_size | jumps | ndr_by_construct")
        ->required();
    plot->add_option("--jump-threshold", cfg.jump_threshold, "Context-switch jump distance");
    add_common(plot);

    CLI11_PARSE(app, argc, argv);

    cfg.count_policy = count_policy == "all" ? ptchron::CountPolicy::All
                                             : ptchron::CountPolicy::Semantic;

    if (run->parsed())
        return ptchron::run_pipeline(cfg, std::cerr);
    if (trees->parsed())
        return ptchron::run_tree_dump(cfg, std::cerr);
    if (plot->parsed())
        return ptchron::run_plot_data(cfg, plot_kind, std::cerr);
    return 2;
}
