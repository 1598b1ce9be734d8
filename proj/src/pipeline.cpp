#include "ptchron/pipeline.hpp"

#include "ptchron/csv.hpp"

#include "json.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace ptchron {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sanitize(const std::string& s)
{
    std::string out;
    for (char c : s)
        out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                          ? c
                          : '_');
    return out;
}

std::string session_stem(const Session& s)
{
    return sanitize(s.subject_id) + "__" + sanitize(s.file_id);
}

json deletion_json(const DeletionStats& d)
{
    json j;
    j["num_nodes"] = d.num_nodes;
    j["num_deleted"] = d.num_deleted;
    if (d.rate)
        j["rate"] = *d.rate;
    else
        j["rate"] = nullptr;
    return j;
}

struct SessionReport {
    std::string stem;
    json body;
    SessionBehaviorCounts behavior_counts;
    bool excluded_low_coverage = false;
    double tree_fraction = 0.0;
    size_t events = 0;
    std::string replay_error;  // nonempty = corrupt log
};

SessionReport analyze_and_report(Session session, const GrammarAdapter& grammar,
                                 const RunConfig& cfg)
{
    SessionReport rep;
    rep.stem = session_stem(session);
    rep.events = session.events.size();

    SessionAnalysis a = analyze_session(std::move(session), grammar);
    if (a.replay_error) {
        rep.replay_error = a.replay_error->message;
        return rep;
    }

    CoverageStats cov = coverage_stats(a.trees, a.bridge_outcomes);
    rep.tree_fraction = cov.tree_fraction;
    rep.excluded_low_coverage = cov.tree_fraction < cfg.min_tree_coverage;

    json j;
    j["subject_id"] = a.session.subject_id;
    j["file_id"] = a.session.file_id;
    j["events"] = a.session.events.size();
    j["states"] = a.states();
    if (a.session.starter) {
        j["starter"] = {{"heuristic", a.session.starter->heuristic},
                        {"length", a.session.starter->text.size()}};
    } else {
        j["starter"] = nullptr;
    }

    json cj;
    cj["parseable_fraction"] = cov.parseable_fraction;
    cj["bridged_fraction"] = cov.bridged_fraction;
    cj["tree_fraction"] = cov.tree_fraction;
    json fails = json::object();
    for (const auto& [reason, count] : cov.failure_breakdown)
        fails[reason] = count;
    cj["failures"] = fails;
    j["coverage"] = cj;

    j["deletion"]["overall"] = deletion_json(node_deletion_rate(a, cfg.count_policy));
    json by_construct = json::array();
    for (const ConstructDeletion& cd : deletion_by_construct(a, cfg.count_policy)) {
        json cdj;
        cdj["construct"] = cd.construct;
        cdj["inside"] = deletion_json(cd.inside);
        cdj["outside"] = deletion_json(cd.outside);
        by_construct.push_back(cdj);
    }
    j["deletion"]["by_construct"] = by_construct;

    ContextSwitchStats cs = context_switch_frequency(a, cfg.jump_threshold);
    json csj;
    csj["threshold"] = cfg.jump_threshold;
    csj["s1"] = cs.s1_count;
    csj["s_threshold"] = cs.s_threshold_count;
    if (cs.frequency)
        csj["frequency"] = *cs.frequency;
    else
        csj["frequency"] = nullptr;
    j["context_switch"] = csj;

    json jumps = json::array();
    for (const JumpRecord& r : cs.jumps) {
        json rj;
        rj["state"] = r.edit_state;
        rj["skipped"] = r.skipped;
        if (!r.skipped)
            rj["distance"] = r.distance;
        jumps.push_back(rj);
    }
    j["jumps"] = jumps;

    CommentRestorationStats cr = comment_restoration_stats(a);
    json crj;
    crj["total_lineages"] = cr.total_lineages;
    crj["commented"] = cr.commented;
    crj["restored"] = cr.restored;
    crj["commented_fraction"] = cr.commented_fraction ? json(*cr.commented_fraction) : json();
    crj["restored_fraction"] = cr.restored_fraction ? json(*cr.restored_fraction) : json();
    j["comment_restoration"] = crj;

    json lifetimes = json::array();
    for (const LifetimeRecord& r : node_lifetimes(a)) {
        json rj;
        rj["lineage"] = r.lineage_id;
        rj["first_state"] = r.first_state;
        rj["last_state"] = r.last_state;
        rj["states_present"] = r.states_present;
        rj["fraction"] = r.lifetime_fraction;
        lifetimes.push_back(rj);
    }
    j["lifetimes"] = lifetimes;

    json sizes = json::array();
    for (const TreeSizePoint& p : tree_size_series(a)) {
        json pj;
        pj["state"] = p.state;
        pj["kind"] = p.kind == TreeKind::Parsed     ? "parsed"
                     : p.kind == TreeKind::Bridging ? "bridging"
                                                    : "absent";
        if (p.node_count)
            pj["nodes"] = *p.node_count;
        sizes.push_back(pj);
    }
    j["tree_size"] = sizes;

    BehaviorConfig bcfg = cfg.behavior;
    bcfg.rename_gap = cfg.rename_gap;
    std::vector<size_t> suppressed;
    std::vector<BehaviorEvent> events = detect_behaviors(a, bcfg, &suppressed);
    json evs = json::array();
    for (const BehaviorEvent& e : events) {
        json ej;
        ej["kind"] = behavior_name(e.kind);
        ej["state"] = e.state;
        ej["span"] = {e.span.lo, e.span.hi};
        if (!e.detail.empty())
            ej["detail"] = e.detail;
        if (!e.heuristic_flags.empty())
            ej["heuristic_flags"] = e.heuristic_flags;
        evs.push_back(ej);
        ++rep.behavior_counts.counts[e.kind];
    }
    j["behaviors"] = evs;
    j["starter_suppressed_pastes"] = suppressed;
    rep.behavior_counts.events = a.session.events.size();

    rep.body = std::move(j);
    return rep;
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string timestamp_line()
{
    auto now = std::chrono::system_clock::now();
    auto tt = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

struct IngestedCorpus {
    std::vector<Session> sessions;
    std::vector<ExcludedSession> excluded;
    std::vector<RowIssue> issues;
    bool ok = false;
};

IngestedCorpus load_corpus(const RunConfig& cfg, std::ostream& log)
{
    IngestedCorpus c;
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) {
        log << "error: cannot open input " << cfg.input_path << "\n";
        return c;
    }
    IngestResult ing = ingest_log(in);
    for (const std::string& err : ing.fatal_errors)
        log << "error: " << err << "\n";
    if (!ing.fatal_errors.empty() && ing.sessions.empty())
        return c;
    c.issues = ing.issues;

    std::optional<Text> starter;
    if (cfg.starter_path) {
        std::ifstream sf(*cfg.starter_path, std::ios::binary);
        if (!sf) {
            log << "error: cannot open starter file " << *cfg.starter_path << "\n";
            return c;
        }
        std::stringstream ss;
        ss << sf.rdbuf();
        starter = from_utf8(ss.str());
    }
    for (Session& s : ing.sessions)
        attach_starter(s, starter, cfg.behavior.paste_min);

    filter_by_event_count(ing.sessions, cfg.min_events, c.excluded);
    c.sessions = std::move(ing.sessions);
    c.ok = true;
    return c;
}

template <typename Fn>
void parallel_for(size_t n, size_t jobs, Fn&& fn)
{
    if (jobs == 0)
        jobs = std::max<size_t>(1, std::thread::hardware_concurrency());
    jobs = std::min(jobs, n == 0 ? size_t(1) : n);
    if (jobs <= 1) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                fn(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

}  // namespace

int run_pipeline(const RunConfig& cfg, std::ostream& log)
{
    const GrammarAdapter* grammar = grammar_by_name(cfg.grammar);
    if (!grammar) {
        log << "error: unknown grammar " << cfg.grammar << "\n";
        return 2;
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        log << "error: unknown format " << cfg.format << "\n";
        return 2;
    }
    if (cfg.min_tree_coverage < 0.0 || cfg.min_tree_coverage > 1.0) {
        log << "error: min-tree-coverage must be in [0,1]\n";
        return 2;
    }

    IngestedCorpus corpus = load_corpus(cfg, log);
    if (!corpus.ok)
        return 2;
    if (corpus.sessions.empty() && corpus.excluded.empty()) {
        log << "error: no sessions in input\n";
        return 1;
    }

    fs::create_directories(cfg.output_dir);

    std::vector<SessionReport> reports(corpus.sessions.size());
    parallel_for(corpus.sessions.size(), cfg.jobs, [&](size_t i) {
        reports[i] = analyze_and_report(std::move(corpus.sessions[i]), *grammar, cfg);
    });

    // coverage-phase filtering and exclusion accounting
    std::vector<ExcludedSession> excluded = corpus.excluded;
    std::vector<const SessionReport*> kept;
    for (const SessionReport& r : reports) {
        std::string subject = r.body.is_object() ? r.body.value("subject_id", "") : "";
        std::string file = r.body.is_object() ? r.body.value("file_id", "") : "";
        if (!r.replay_error.empty()) {
            excluded.push_back({subject, file, "corrupt-log", r.replay_error});
            continue;
        }
        if (r.excluded_low_coverage) {
            excluded.push_back({subject, file, "low-tree-coverage",
                                "tree_fraction=" + std::to_string(r.tree_fraction)});
            continue;
        }
        kept.push_back(&r);
    }

    std::vector<SessionBehaviorCounts> counts;
    for (const SessionReport* r : kept)
        counts.push_back(r->behavior_counts);
    std::vector<BehaviorSummaryRow> summary_rows = behavior_summary(counts, cfg.size_split);

    json summary;
    if (!cfg.no_timestamp)
        summary["generated_at"] = timestamp_line();
    summary["grammar"] = cfg.grammar;
    summary["sessions_ingested"] = reports.size() + corpus.excluded.size();
    summary["sessions_kept"] = kept.size();
    summary["sessions_excluded"] = excluded.size();
    summary["row_issues"] = corpus.issues.size();
    json braw = json::array();
    for (const BehaviorSummaryRow& row : summary_rows) {
        json rj;
        rj["behavior"] = behavior_name(row.kind);
        rj["short_files_with"] = row.short_files_with;
        rj["medium_files_with"] = row.medium_files_with;
        rj["short_fraction"] = row.short_fraction ? json(*row.short_fraction) : json();
        rj["medium_fraction"] = row.medium_fraction ? json(*row.medium_fraction) : json();
        rj["short_median"] = row.short_median ? json(*row.short_median) : json();
        rj["medium_median"] = row.medium_median ? json(*row.medium_median) : json();
        braw.push_back(rj);
    }
    summary["behavior_summary"] = braw;

    json exj = json::array();
    for (const ExcludedSession& e : excluded) {
        json ej;
        ej["subject_id"] = e.subject_id;
        ej["file_id"] = e.file_id;
        ej["reason"] = e.reason;
        ej["detail"] = e.detail;
        exj.push_back(ej);
    }
    json issues = json::array();
    for (const RowIssue& ri : corpus.issues) {
        json ij;
        ij["line"] = ri.line;
        ij["reason"] = ri.reason;
        ij["detail"] = ri.detail;
        issues.push_back(ij);
    }

    fs::path outdir(cfg.output_dir);
    if (cfg.format == "json") {
        for (const SessionReport* r : kept)
            write_file(outdir / (r->stem + ".json"), r->body.dump(2) + "\n");
        json manifest;
        manifest["excluded"] = exj;
        manifest["row_issues"] = issues;
        write_file(outdir / "exclusions.json", manifest.dump(2) + "\n");
        write_file(outdir / "summary.json", summary.dump(2) + "\n");
    } else {
        std::ostringstream sessions_csv;
        sessions_csv << "subject_id,file_id,events,states,parseable_fraction,"
                        "bridged_fraction,tree_fraction,deletion_rate,context_switch_"
                        "frequency,commented_fraction,restored_fraction\n";
        std::ostringstream lifetimes_csv, jumps_csv, sizes_csv, behaviors_csv, deletion_csv;
        lifetimes_csv << "subject_id,file_id,lineage,first_state,last_state,states_present,"
                         "fraction\n";
        jumps_csv << "subject_id,file_id,state,skipped,distance\n";
        sizes_csv << "subject_id,file_id,state,kind,nodes\n";
        behaviors_csv << "subject_id,file_id,kind,state,span_lo,span_hi,detail\n";
        deletion_csv << "subject_id,file_id,construct,side,num_nodes,num_deleted,rate\n";
        for (const SessionReport* r : kept) {
            const json& b = r->body;
            std::string sid = csv_quote(b["subject_id"].get<std::string>());
            std::string fid = csv_quote(b["file_id"].get<std::string>());
            auto num_or_empty = [](const json& v) {
                return v.is_null() ? std::string() : v.dump();
            };
            sessions_csv << sid << ',' << fid << ',' << b["events"] << ',' << b["states"]
                         << ',' << b["coverage"]["parseable_fraction"] << ','
                         << b["coverage"]["bridged_fraction"] << ','
                         << b["coverage"]["tree_fraction"] << ','
                         << num_or_empty(b["deletion"]["overall"]["rate"]) << ','
                         << num_or_empty(b["context_switch"]["frequency"]) << ','
                         << num_or_empty(b["comment_restoration"]["commented_fraction"])
                         << ','
                         << num_or_empty(b["comment_restoration"]["restored_fraction"])
                         << '\n';
            for (const json& lj : b["lifetimes"])
                lifetimes_csv << sid << ',' << fid << ',' << lj["lineage"] << ','
                              << lj["first_state"] << ',' << lj["last_state"] << ','
                              << lj["states_present"] << ',' << lj["fraction"] << '\n';
            for (const json& jj : b["jumps"]) {
                jumps_csv << sid << ',' << fid << ',' << jj["state"] << ','
                          << (jj["skipped"].get<bool>() ? 1 : 0) << ',';
                if (jj.contains("distance"))
                    jumps_csv << jj["distance"];
                jumps_csv << '\n';
            }
            for (const json& sj : b["tree_size"]) {
                sizes_csv << sid << ',' << fid << ',' << sj["state"] << ','
                          << sj["kind"].get<std::string>() << ',';
                if (sj.contains("nodes"))
                    sizes_csv << sj["nodes"];
                sizes_csv << '\n';
            }
            for (const json& ej : b["behaviors"]) {
                behaviors_csv << sid << ',' << fid << ','
                              << ej["kind"].get<std::string>() << ',' << ej["state"] << ','
                              << ej["span"][0] << ',' << ej["span"][1] << ','
                              << csv_quote(ej.value("detail", "")) << '\n';
            }
            deletion_csv << sid << ',' << fid << ",program,all,"
                         << b["deletion"]["overall"]["num_nodes"] << ','
                         << b["deletion"]["overall"]["num_deleted"] << ','
                         << num_or_empty(b["deletion"]["overall"]["rate"]) << '\n';
            for (const json& cj : b["deletion"]["by_construct"]) {
                for (const char* side : {"inside", "outside"})
                    deletion_csv << sid << ',' << fid << ','
                                 << cj["construct"].get<std::string>() << ',' << side << ','
                                 << cj[side]["num_nodes"] << ',' << cj[side]["num_deleted"]
                                 << ',' << num_or_empty(cj[side]["rate"]) << '\n';
            }
        }
        write_file(outdir / "sessions.csv", sessions_csv.str());
        write_file(outdir / "lifetimes.csv", lifetimes_csv.str());
        write_file(outdir / "jumps.csv", jumps_csv.str());
        write_file(outdir / "tree_size.csv", sizes_csv.str());
        write_file(outdir / "behaviors.csv", behaviors_csv.str());
        write_file(outdir / "deletion.csv", deletion_csv.str());
        std::ostringstream excl_csv;
        excl_csv << "subject_id,file_id,reason,detail\n";
        for (const ExcludedSession& e : excluded)
            excl_csv << csv_quote(e.subject_id) << ',' << csv_quote(e.file_id) << ','
                     << e.reason << ',' << csv_quote(e.detail) << '\n';
        write_file(outdir / "exclusions.csv", excl_csv.str());
        write_file(outdir / "summary.json", summary.dump(2) + "\n");
    }

    log << "kept " << kept.size() << " of " << (reports.size() + corpus.excluded.size())
        << " sessions; reports in " << cfg.output_dir << "\n";
    if (kept.empty()) {
        log << "error: no sessions survived filtering\n";
        return 1;
    }
    return 0;
}

std::string emit_plot_data(const SessionAnalysis& a, const std::string& kind,
                           const RunConfig& cfg, bool header)
{
    std::ostringstream out;
    std::string sid = csv_quote(a.session.subject_id);
    std::string fid = csv_quote(a.session.file_id);
    if (kind == "lifetimes") {
        if (header)
            out << "subject_id,file_id,lineage,fraction\n";
        for (const LifetimeRecord& r : node_lifetimes(a))
            out << sid << ',' << fid << ',' << r.lineage_id << ',' << r.lifetime_fraction
                << '\n';
    } else if (kind == "tree_size") {
        if (header)
            out << "subject_id,file_id,state,nodes\n";
        for (const TreeSizePoint& p : tree_size_series(a)) {
            out << sid << ',' << fid << ',' << p.state << ',';
            if (p.node_count)
                out << *p.node_count;
            out << '\n';
        }
    } else if (kind == "jumps") {
        if (header)
            out << "subject_id,file_id,state,distance\n";
        ContextSwitchStats cs = context_switch_frequency(a, cfg.jump_threshold);
        for (const JumpRecord& r : cs.jumps) {
            if (r.skipped)
                continue;
            out << sid << ',' << fid << ',' << r.edit_state << ',' << r.distance << '\n';
        }
    } else if (kind == "ndr_by_construct") {
        if (header)
            out << "subject_id,file_id,construct,side,num_nodes,num_deleted,rate\n";
        for (const ConstructDeletion& cd : deletion_by_construct(a, cfg.count_policy)) {
            for (bool inside : {true, false}) {
                const DeletionStats& d = inside ? cd.inside : cd.outside;
                out << sid << ',' << fid << ',' << cd.construct << ','
                    << (inside ? "inside" : "outside") << ',' << d.num_nodes << ','
                    << d.num_deleted << ',';
                if (d.rate)
                    out << *d.rate;
                out << '\n';
            }
        }
    } else {
        throw std::invalid_argument("unknown plot kind: " + kind);
    }
    return out.str();
}

int run_tree_dump(const RunConfig& cfg, std::ostream& log)
{
    const GrammarAdapter* grammar = grammar_by_name(cfg.grammar);
    if (!grammar) {
        log << "error: unknown grammar " << cfg.grammar << "\n";
        return 2;
    }
    IngestedCorpus corpus = load_corpus(cfg, log);
    if (!corpus.ok)
        return 2;
    if (corpus.sessions.empty()) {
        log << "error: no sessions in input\n";
        return 1;
    }
    fs::create_directories(cfg.output_dir);
    fs::path outdir(cfg.output_dir);
    for (Session& s : corpus.sessions) {
        std::string stem = session_stem(s);
        SessionAnalysis a = analyze_session(std::move(s), *grammar);
        if (a.replay_error) {
            log << "warning: skipping " << stem << ": " << a.replay_error->message << "\n";
            continue;
        }
        std::ostringstream trees;
        for (const Tree& t : a.trees)
            trees << tree_to_json(t, *grammar) << "\n";
        write_file(outdir / (stem + ".trees.jsonl"), trees.str());
        std::ostringstream links;
        for (const TemporalLink& l : a.tracking.links()) {
            json lj;
            lj["child_state"] = l.child.state;
            lj["child_uid"] = node_uid(l.child);
            lj["parent_state"] = l.parent.state;
            lj["parent_uid"] = node_uid(l.parent);
            lj["gap"] = l.gap;
            lj["via_comment"] = l.via_comment;
            links << lj.dump() << "\n";
        }
        write_file(outdir / (stem + ".links.jsonl"), links.str());
        std::ostringstream arrays;
        for (size_t t = 0; t < a.states(); ++t)
            arrays << json(a.chain.array_at(t).values).dump() << "\n";
        write_file(outdir / (stem + ".arrays.jsonl"), arrays.str());
    }
    log << "dumped " << corpus.sessions.size() << " sessions to " << cfg.output_dir << "\n";
    return 0;
}

int run_plot_data(const RunConfig& cfg, const std::string& kind, std::ostream& log)
{
    const GrammarAdapter* grammar = grammar_by_name(cfg.grammar);
    if (!grammar) {
        log << "error: unknown grammar " << cfg.grammar << "\n";
        return 2;
    }
    IngestedCorpus corpus = load_corpus(cfg, log);
    if (!corpus.ok)
        return 2;
    if (corpus.sessions.empty()) {
        log << "error: no sessions in input\n";
        return 1;
    }
    fs::create_directories(cfg.output_dir);
    std::ostringstream all;
    bool first = true;
    for (Session& s : corpus.sessions) {
        SessionAnalysis a = analyze_session(std::move(s), *grammar);
        if (a.replay_error)
            continue;
        try {
            all << emit_plot_data(a, kind, cfg, first);
        } catch (const std::invalid_argument& e) {
            log << "error: " << e.what() << "\n";
            return 2;
        }
        first = false;
    }
    write_file(fs::path(cfg.output_dir) / (kind + ".csv"), all.str());
    log << "wrote " << kind << ".csv\n";
    return 0;
}

}  // namespace ptchron
