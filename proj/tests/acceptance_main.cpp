// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Usage: acceptance [path-to-ptchron-binary]

#include "support/builders.hpp"
#include "support/oracle.hpp"
#include "support/progen.hpp"

#include "ptchron/analysis.hpp"
#include "ptchron/behaviors.hpp"
#include "ptchron/bridging.hpp"
#include "ptchron/csv.hpp"
#include "ptchron/lexer.hpp"
#include "ptchron/metrics.hpp"
#include "ptchron/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace ptchron;
using namespace ptchron::test;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "")
{
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass)
        ++g_failures;
}

CorrespondenceChain chain_of(const Session& s)
{
    CorrespondenceChain c;
    size_t len = 0;
    for (const EditEvent& ev : s.events) {
        len = ev.kind == EditKind::Insert ? len + ev.text.size() : len - ev.text.size();
        c.push_edit(ev, len);
    }
    return c;
}

// --- criterion 1: correspondence oracle equivalence ------------------------

void criterion1()
{
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    std::mt19937 rng(20250811);
    size_t scripts = 10000;
    size_t queries = 0;
    size_t mismatches = 0;

    for (size_t k = 0; k < scripts; ++k) {
        size_t len = 1 + rng() % 200;
        Session s = random_edit_script(rng, len, 4 + rng() % 4);
        CorrespondenceChain chain = chain_of(s);
        UidOracle oracle;
        for (const EditEvent& e : s.events)
            oracle.apply(e);

        for (int q = 0; q < 12; ++q) {
            size_t from = rng() % chain.states();
            if (chain.length_at(from) == 0)
                continue;
            size_t to = rng() % (from + 1);
            uint32_t lo = static_cast<uint32_t>(rng() % chain.length_at(from));
            uint32_t hi = lo + 1
                          + static_cast<uint32_t>(rng() % (chain.length_at(from) - lo));
            ++queries;
            auto got = chain_range(chain, {lo, hi}, from, to);
            auto want = oracle.chain_range({lo, hi}, from, to);
            if (got.has_value() != want.has_value() || (got && !(*got == *want)))
                ++mismatches;
            if (char_exists_at(chain, lo, from, to) != oracle.char_exists(lo, from, to))
                ++mismatches;
        }
    }
    double secs = std::chrono::duration<double>(clock::now() - start).count();
    std::ostringstream detail;
    detail << scripts << " scripts, " << queries << " range queries, " << mismatches
           << " mismatches, " << secs << " s";
    report(1, "chain_range equals the per-character-UID replay oracle",
           mismatches == 0 && secs < 60.0, detail.str());
}

// --- criterion 2: worked tracking examples ---------------------------------

int32_t find_node(const Tree& t, const GrammarAdapter& g, const std::string& label,
                  CharRange r)
{
    for (uint32_t i = 0; i < t.nodes.size(); ++i)
        if (g.label(t.nodes[i].type) == label && t.nodes[i].range == r)
            return static_cast<int32_t>(i);
    return -1;
}

int32_t find_by_label(const Tree& t, const GrammarAdapter& g, const std::string& label)
{
    for (uint32_t i = 0; i < t.nodes.size(); ++i)
        if (g.label(t.nodes[i].type) == label)
            return static_cast<int32_t>(i);
    return -1;
}

void criterion2()
{
    bool ok = true;
    std::string detail;

    {
        // range arithmetic of the worked figure: node [14,20) at t+1 chains
        // to [14,19) at t and links to the smallest containing node there
        SessionAnalysis a =
            analyze_steps({ins(0, U"print(qz)\nw = 'abc'"), ins(18, U"d")});
        const GrammarAdapter& g = *a.grammar;
        auto chained = chain_range(a.chain, {14, 20}, 1, 0);
        ok = ok && chained && *chained == CharRange{14, 19};
        int32_t s0 = find_node(a.trees[0], g, "string", {14, 19});
        int32_t s1 = find_node(a.trees[1], g, "string", {14, 20});
        const TemporalLink* l =
            s1 >= 0 ? a.tracking.parent_of({1, static_cast<uint32_t>(s1)}) : nullptr;
        bool this_ok = chained && s0 >= 0 && l
                       && l->parent == NodeRef{0, static_cast<uint32_t>(s0)};
        if (!this_ok)
            detail += "[range arithmetic] ";
        ok = ok && this_ok;
    }
    {
        // identifier -> call correspondence across differing type labels
        SessionAnalysis a = analyze_steps({ins(0, U"x = foo"), ins(7, U"()"), ins(9, U"\n")});
        const GrammarAdapter& g = *a.grammar;
        int32_t call = find_by_label(a.trees[1], g, "call");
        int32_t foo = find_node(a.trees[0], g, "identifier", {4, 7});
        const TemporalLink* l =
            call >= 0 ? a.tracking.parent_of({1, static_cast<uint32_t>(call)}) : nullptr;
        bool this_ok = foo >= 0 && l && l->parent == NodeRef{0, static_cast<uint32_t>(foo)};
        if (!this_ok)
            detail += "[identifier->call] ";
        ok = ok && this_ok;
    }
    {
        // identifier -> pass keyword transition
        SessionAnalysis a = analyze_steps({ins(0, U"pas"), ins(3, U"s"), ins(4, U"\n")});
        const GrammarAdapter& g = *a.grammar;
        int32_t pass_leaf = find_by_label(a.trees[1], g, "pass");
        int32_t id = find_by_label(a.trees[0], g, "identifier");
        const TemporalLink* l =
            pass_leaf >= 0 ? a.tracking.parent_of({1, static_cast<uint32_t>(pass_leaf)})
                           : nullptr;
        bool this_ok = id >= 0 && l && l->parent == NodeRef{0, static_cast<uint32_t>(id)};
        if (!this_ok)
            detail += "[identifier->pass] ";
        ok = ok && this_ok;
    }
    report(2, "worked tracking examples reproduce", ok, detail);
}

// --- criterion 3: comment round trip ----------------------------------------

void criterion3()
{
    std::mt19937 rng(333);
    size_t sessions = 1000;
    size_t bad_linkage = 0, false_links = 0, checked_nodes = 0;

    for (size_t k = 0; k < sessions; ++k) {
        // base program of simple one-line statements
        size_t n_stmts = 2 + rng() % 4;
        std::vector<Text> stmts;
        Text program;
        std::vector<size_t> line_starts;
        for (size_t i = 0; i < n_stmts; ++i) {
            Text s;
            s += static_cast<char32_t>(U'a' + (i % 26));
            s += static_cast<char32_t>(U'0' + (k + i) % 10);
            s += U" = ";
            s += from_utf8(std::to_string((k * 7 + i) % 90));
            line_starts.push_back(program.size());
            program += s + U"\n";
        }
        size_t target = rng() % n_stmts;
        size_t line_start = line_starts[target];
        size_t stmt_len = (target + 1 < n_stmts ? line_starts[target + 1] : program.size())
                          - line_start - 1;  // excluding the newline

        std::vector<Step> steps{ins(0, program)};
        auto filler = [&](size_t count) {
            for (size_t f = 0; f < count; ++f) {
                Text extra = Text(U"zz") + static_cast<char32_t>(U'0' + rng() % 10)
                             + U" = " + from_utf8(std::to_string(rng() % 50)) + U"\n";
                steps.push_back(ins(SIZE_MAX, extra));  // resolved to end below
            }
        };
        filler(rng() % 3);
        steps.push_back(ins(line_start, U"#"));
        size_t comment_state = steps.size() - 1;
        filler(1 + rng() % 3);
        steps.push_back(del(line_start, U"#"));
        size_t restore_state = steps.size() - 1;
        filler(rng() % 2);

        // resolve end-append fillers against the running length
        size_t len = 0;
        for (Step& st : steps) {
            if (st.index == SIZE_MAX)
                st.index = len;
            len = st.kind == EditKind::Insert ? len + st.text.size() : len - st.text.size();
        }

        SessionAnalysis a = analyze_steps(steps);
        if (a.replay_error) {
            ++bad_linkage;
            continue;
        }
        UidOracle oracle;
        for (const EditEvent& e : a.session.events)
            oracle.apply(e);

        // every statement node at the restore state must link via_comment
        // back to its pre-comment instance
        const Tree& rt = a.trees[restore_state];
        const Tree& pre = a.trees[comment_state - 1];
        CharRange stmt_range{static_cast<uint32_t>(line_start),
                             static_cast<uint32_t>(line_start + stmt_len)};
        for (uint32_t i = 1; i < rt.nodes.size(); ++i) {
            if (!stmt_range.contains(rt.nodes[i].range) || rt.nodes[i].range.empty())
                continue;
            ++checked_nodes;
            const TemporalLink* l = a.tracking.parent_of({restore_state, i});
            bool good = l && l->via_comment && l->parent.state == comment_state - 1;
            if (good) {
                // UID oracle: correct node, not an accidental one
                const ParseNode& child = rt.nodes[i];
                const ParseNode& parent = pre.nodes[l->parent.node];
                int64_t loc = oracle.locate(child.range.lo, restore_state, l->parent.state);
                good = loc >= 0 && parent.range.contains(static_cast<uint32_t>(loc))
                       && parent.range == child.range;
            }
            if (!good)
                ++bad_linkage;
        }
        // no unrelated node may carry a via_comment link
        for (const TemporalLink& l : a.tracking.links()) {
            if (!l.via_comment)
                continue;
            const ParseNode& child = a.trees[l.child.state].nodes[l.child.node];
            if (!stmt_range.contains(child.range))
                ++false_links;
        }
    }
    std::ostringstream detail;
    detail << sessions << " sessions, " << checked_nodes << " restored nodes, "
           << bad_linkage << " missing/incorrect links, " << false_links << " false links";
    report(3, "comment round-trip links 100% with zero false positives",
           bad_linkage == 0 && false_links == 0 && checked_nodes >= sessions,
           detail.str());
}

// --- criterion 4: pruning golden + randomized re-lex -----------------------

void criterion4()
{
    bool ok = true;
    std::string detail;

    // bit-exact numeric case: [10,16) loses index 13 and becomes [10,15)
    Tree t;
    t.state = 0;
    t.kind = TreeKind::Parsed;
    ParseNode root;
    root.type = 3;
    root.range = {10, 16};
    root.children = {1, 2};
    ParseNode left;
    left.type = 4;
    left.range = {10, 13};
    left.parent = 0;
    left.is_leaf = true;
    left.text = U"abc";
    ParseNode right;
    right.type = 4;
    right.range = {13, 16};
    right.parent = 0;
    right.is_leaf = true;
    right.text = U"def";
    t.nodes = {root, left, right};
    auto pruned = prune_subtree(t, 0, [](uint32_t i) { return i != 13; });
    if (pruned.size() != 3 || !(pruned[0].range == CharRange{10, 15})) {
        ok = false;
        detail += "[numeric golden] ";
    }

    // 1000 randomized prunes, re-lex verified
    const GrammarAdapter& g = *grammar_by_name("mini");
    std::mt19937 rng(444);
    ProgramGen gen(rng);
    size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Text prog = gen.program(4);
        ParseOutcome po = g.parse(prog, 0);
        if (!po.ok) {
            ++failures;
            continue;
        }
        std::vector<uint32_t> prunable;
        for (uint32_t i = 0; i < prog.size(); ++i)
            if (prog[i] != U'\'' && prog[i] != U'"' && prog[i] != U'#')
                prunable.push_back(i);
        std::set<uint32_t> removed;
        for (size_t r = 0, n = 1 + rng() % 6; r < n; ++r)
            removed.insert(prunable[rng() % prunable.size()]);
        auto surviving = [&](uint32_t i) { return !removed.count(i); };
        auto out = prune_subtree(po.tree, 0, surviving);
        Text kept;
        for (uint32_t i = 0; i < prog.size(); ++i)
            if (surviving(i))
                kept.push_back(prog[i]);
        LexOptions opt;
        opt.keywords = {U"if", U"for", U"def", U"in", U"pass"};
        Text lexed_chars, leaf_chars;
        for (const Token& tok : lex(kept, opt).tokens) {
            if (tok.kind == TokKind::Newline || tok.kind == TokKind::Indent
                || tok.kind == TokKind::Dedent || tok.kind == TokKind::End)
                continue;
            lexed_chars += tok.text;
        }
        bool good = true;
        for (const ParseNode& n : out) {
            if (n.is_leaf) {
                leaf_chars += n.text;
                if (n.range.hi > kept.size()
                    || kept.compare(n.range.lo, n.range.size(), n.text) != 0)
                    good = false;
            }
        }
        if (!good || leaf_chars != lexed_chars)
            ++failures;
    }
    if (failures) {
        ok = false;
        detail += "[" + std::to_string(failures) + " randomized failures] ";
    }
    report(4, "pruning golden bit-exact plus 1000 re-lex-verified prunes", ok, detail);
}

// --- criterion 5: bridging convergence --------------------------------------

void criterion5()
{
    std::mt19937 rng(555);
    ProgramGen gen(rng);
    size_t sessions = 220;
    size_t attempted = 0, built = 0;
    size_t invalid_bpts = 0;
    size_t convergence_checks = 0, convergence_failures = 0;
    const GrammarAdapter& g = *grammar_by_name("mini");

    for (size_t k = 0; k < sessions; ++k) {
        TypingSim sim;
        sim.rng = &rng;
        sim.typo_pct = static_cast<int>(2 + rng() % 5);
        sim.backtrack_pct = static_cast<int>(1 + rng() % 4);
        sim.type(gen.program(4));
        SessionAnalysis a = analyze_steps(sim.steps);
        if (a.replay_error)
            continue;
        UidOracle oracle;
        for (const EditEvent& e : a.session.events)
            oracle.apply(e);

        // collect the parsed-tree type inventory for type conservation
        std::set<TypeId> parsed_types;
        for (const Tree& tr : a.trees)
            if (tr.kind == TreeKind::Parsed)
                for (const ParseNode& n : tr.nodes)
                    parsed_types.insert(n.type);

        for (const BridgeOutcome& oc : a.bridge_outcomes) {
            if (oc.failure_reason == "chained")
                continue;
            ++attempted;
            if (oc.status == BridgeStatus::Built)
                ++built;
        }
        for (size_t t = 0; t < a.trees.size(); ++t) {
            const Tree& tr = a.trees[t];
            if (tr.kind != TreeKind::Bridging)
                continue;
            std::string why;
            if (!validate_tree(tr, a.snapshots[t], &why)) {
                ++invalid_bpts;
                continue;
            }
            SpanMap sm = g.scan_spans(a.snapshots[t]);
            for (uint32_t p : leaf_covered_positions(tr))
                if (sm.in_comment(p))
                    ++invalid_bpts;
            for (const ParseNode& n : tr.nodes)
                if (!n.is_transient && !parsed_types.count(n.type))
                    ++invalid_bpts;
        }

        // convergence: after every fully-bridged stretch, each leaf char of
        // the next parse that predates the stretch has a temporal chain
        // reaching past the stretch start
        for (size_t p = 1; p < a.trees.size(); ++p) {
            if (a.trees[p].kind != TreeKind::Parsed
                || a.trees[p - 1].kind != TreeKind::Bridging)
                continue;
            // find the stretch start (last parsed state before p)
            size_t t0 = p - 1;
            bool all_built = true;
            while (t0 > 0 && a.trees[t0].kind != TreeKind::Parsed) {
                if (!a.trees[t0].exists())
                    all_built = false;
                --t0;
            }
            if (!all_built || a.trees[t0].kind != TreeKind::Parsed)
                continue;
            for (const ParseNode& n : a.trees[p].nodes) {
                if (!n.is_leaf || !n.children.empty() || n.is_transient)
                    continue;
                int64_t at_t0 = oracle.locate(n.range.lo, p, t0);
                if (at_t0 < 0)
                    continue;  // character born during the stretch
                ++convergence_checks;
                NodeRef walk{p, 0};
                for (uint32_t i = 0; i < a.trees[p].nodes.size(); ++i)
                    if (&a.trees[p].nodes[i] == &n)
                        walk = {p, i};
                bool reached = false;
                while (const TemporalLink* up = a.tracking.parent_of(walk)) {
                    walk = up->parent;
                    if (walk.state <= t0) {
                        const ParseNode& anc = a.trees[walk.state].nodes[walk.node];
                        int64_t loc = oracle.locate(n.range.lo, p, walk.state);
                        reached = loc >= 0 && anc.range.contains(static_cast<uint32_t>(loc));
                        break;
                    }
                }
                if (!reached)
                    ++convergence_failures;
            }
        }
    }
    double success = attempted ? double(built) / double(attempted) : 0.0;
    std::ostringstream detail;
    detail << sessions << " sessions, " << attempted << " bridge attempts, "
           << built << " built (" << success * 100.0 << "%), " << invalid_bpts
           << " invalid BPTs, " << convergence_failures << "/" << convergence_checks
           << " convergence failures";
    report(5, "bridging structural soundness and cross-bridge convergence",
           invalid_bpts == 0 && convergence_failures == 0 && success >= 0.99
               && convergence_checks > 1000,
           detail.str());
}

// --- criterion 6: deletion-rate golden ---------------------------------------

void criterion6()
{
    SessionAnalysis a = analyze_steps({ins(0, U"print('s')"), del(6, U"'s'")});
    DeletionStats overall = node_deletion_rate(a);
    DeletionStats under = node_deletion_rate_scoped(a, "call", true);
    bool ok = overall.num_nodes == 3 && overall.num_deleted == 1 && overall.rate
              && std::abs(*overall.rate - 1.0 / 3.0) < 1e-12 && under.rate
              && *under.rate == 1.0;
    std::ostringstream detail;
    detail << overall.num_deleted << "/" << overall.num_nodes << " program-wide, "
           << (under.rate ? *under.rate : -1.0) << " under the call";
    report(6, "deletion-rate worked example (1/3 program-wide, 1.0 under the call)", ok,
           detail.str());
}

// --- criterion 7: context-switch definition ----------------------------------

void criterion7()
{
    bool ok = true;
    std::string detail;

    // session engineered to produce the jump multiset {0,1,3,5,7}
    std::vector<Step> steps{ins(0, U"aa = g( p( 2 ) , 9 )\nbb = h( 5 )\n"),
                            ins(1, U"a"),            // same leaf: 0
                            ins(28, U"h"),           // aa -> h: 5
                            ins(19, U"9"),           // h -> 9: 7
                            ins(10, U"p"),           // 9 -> p: 3
                            del(9, U"pp( 2 ) ,"),    // whitespace-flanked: skipped
                            ins(11, U"9")};          // fallback image -> 9-leaf: 1
    SessionAnalysis a = analyze_steps(steps);
    if (a.replay_error) {
        ok = false;
        detail = "replay error: " + a.replay_error->message;
    } else {
        ContextSwitchStats cs = context_switch_frequency(a, 5);
        std::multiset<int> got;
        for (const JumpRecord& j : cs.jumps)
            if (!j.skipped)
                got.insert(j.distance);
        std::multiset<int> want{0, 1, 3, 5, 7};
        if (got != want) {
            ok = false;
            detail += "multiset {";
            for (int d : got)
                detail += std::to_string(d) + " ";
            detail += "} ";
        }
        if (!cs.frequency || std::abs(*cs.frequency - 0.5) > 1e-12) {
            ok = false;
            detail += "[frequency not 0.5] ";
        }
    }

    // threshold monotonicity across 1..10 on 100 random sessions
    std::mt19937 rng(777);
    ProgramGen gen(rng);
    size_t violations = 0;
    for (int k = 0; k < 100; ++k) {
        TypingSim sim;
        sim.rng = &rng;
        sim.typo_pct = 3;
        sim.backtrack_pct = 2;
        sim.type(gen.program(4));
        SessionAnalysis s = analyze_steps(sim.steps);
        if (s.replay_error)
            continue;
        std::optional<double> prev;
        for (int thr = 1; thr <= 10; ++thr) {
            ContextSwitchStats cs = context_switch_frequency(s, thr);
            if (!cs.frequency)
                continue;
            if (prev && *cs.frequency > *prev + 1e-12)
                ++violations;
            prev = cs.frequency;
        }
    }
    if (violations) {
        ok = false;
        detail += "[" + std::to_string(violations) + " monotonicity violations]";
    }
    report(7, "context-switch fixture at 0.5 and threshold monotonicity", ok, detail);
}

// --- criterion 8: behavior-detector goldens ----------------------------------

struct Tally {
    std::map<BehaviorKind, size_t> counts;
    size_t suppressed = 0;
};

Tally run_detectors(const std::vector<Step>& steps, std::optional<Text> starter = {})
{
    Session s = make_session(steps);
    attach_starter(s, starter);
    SessionAnalysis a = analyze_session(std::move(s), *grammar_by_name("mini"));
    BehaviorConfig cfg;
    std::vector<size_t> suppressed;
    Tally t;
    for (const BehaviorEvent& e : detect_behaviors(a, cfg, &suppressed))
        ++t.counts[e.kind];
    t.suppressed = suppressed.size();
    return t;
}

void criterion8()
{
    bool ok = true;
    std::string detail;
    auto expect = [&](int session, const Tally& got,
                      std::map<BehaviorKind, size_t> want, size_t want_suppressed = 0) {
        for (auto& [kind, n] : want) {
            size_t have = got.counts.count(kind) ? got.counts.at(kind) : 0;
            if (have != n) {
                ok = false;
                detail += "[s" + std::to_string(session) + " " + behavior_name(kind)
                          + " got " + std::to_string(have) + " want " + std::to_string(n)
                          + "] ";
            }
        }
        size_t extras = 0;
        for (auto& [kind, n] : got.counts)
            if (!want.count(kind))
                extras += n;
        if (extras) {
            ok = false;
            detail += "[s" + std::to_string(session) + " has " + std::to_string(extras)
                      + " unexpected events] ";
        }
        if (got.suppressed != want_suppressed) {
            ok = false;
            detail += "[s" + std::to_string(session) + " suppressed "
                      + std::to_string(got.suppressed) + " want "
                      + std::to_string(want_suppressed) + "] ";
        }
    };

    // 1: two duplications of code written earlier
    expect(1,
           run_detectors({ins(0, U"alpha = compute(1)\n"), ins(19, U"compute(1)\n"),
                          ins(30, U"compute(1)\n")}),
           {{BehaviorKind::Duplication, 2}}, 1);  // opening paste = heuristic starter

    // 2: one exterior paste plus one starter paste (suppressed)
    expect(2,
           run_detectors({ins(0, U"print('the starter program')\n"),
                          ins(29, U"novel = body(99)\n")},
                         Text(U"print('the starter program')\n")),
           {{BehaviorKind::ExteriorPaste, 1}}, 1);

    // 3: a comment typed character by character, then fully deleted
    {
        std::vector<Step> steps = type_text(U"x = 1\n");
        steps = type_text(U"# note", steps, 6);
        for (int k = 5; k >= 0; --k)
            steps.push_back(del(6 + static_cast<size_t>(k),
                                Text(1, Text(U"# note")[static_cast<size_t>(k)])));
        expect(3, run_detectors(steps),
               {{BehaviorKind::Commenting, 1}, {BehaviorKind::DeletingComment, 1}});
    }

    // 4: comment out a statement, then uncomment it
    expect(4, run_detectors({ins(0, U"print(x)\ny = 1"), ins(0, U"#"), del(0, U"#")}),
           {{BehaviorKind::CommentingOut, 1}, {BehaviorKind::Uncommenting, 1}}, 1);

    // 5: cut a statement and paste it elsewhere
    expect(5,
           run_detectors({ins(0, U"first = 1000\nsecond = 2\n"), del(0, U"first = 1000"),
                          ins(10, U"first = 1000")}),
           {{BehaviorKind::Moving, 1}}, 1);

    // 6: one rename after 24 edits elsewhere
    {
        std::vector<Step> steps{ins(0, U"xq = 1\n")};
        steps = type_text(U"# aaaaaaaaaaaaaaaaaaaaaa", steps, 7);
        steps.push_back(ins(1, U"s"));
        expect(6, run_detectors(steps),
               {{BehaviorKind::Renaming, 1}, {BehaviorKind::Commenting, 1}}, 1);
    }

    // 7: identifier edited again after only 10 edits elsewhere: no rename
    {
        std::vector<Step> steps{ins(0, U"xq = 1\n")};
        steps = type_text(U"# aaaaaaaa", steps, 7);
        steps.push_back(ins(1, U"s"));
        expect(7, run_detectors(steps), {{BehaviorKind::Commenting, 1}}, 1);
    }

    // 8: duplication of an earlier line plus a separate comment
    {
        std::vector<Step> steps = type_text(U"v = w(1)\n");
        steps.push_back(ins(9, U"v = w(1)\n"));
        steps = type_text(U"# done", steps, 18);
        expect(8, run_detectors(steps),
               {{BehaviorKind::Duplication, 1}, {BehaviorKind::Commenting, 1}});
    }

    // 9: two statements commented out at different times, never restored
    expect(9,
           run_detectors({ins(0, U"a1 = 1\nb2 = 2\n"), ins(0, U"#"), ins(8, U"#")}),
           {{BehaviorKind::CommentingOut, 2}}, 1);

    // 10: plain typing, no behaviors at all
    expect(10, run_detectors(type_text(U"total = 0\n")), {});

    report(8, "behavior-detector goldens over a ten-session scripted corpus", ok, detail);
}

// --- criterion 9: end-to-end determinism and scale ---------------------------

void criterion9(const char* ptchron_bin)
{
    if (!ptchron_bin) {
        report(9, "end-to-end run", false, "path to ptchron binary not supplied");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "ptchron_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path input = dir / "corpus.csv";

    std::mt19937 rng(999);
    ProgramGen gen(rng);
    size_t total_events = 0;
    {
        std::vector<Session> corpus;
        for (int k = 0; k < 50; ++k) {
            TypingSim sim;
            sim.rng = &rng;
            sim.typo_pct = 3;
            sim.backtrack_pct = 2;
            Text prog;
            while (prog.size() < 1750)
                prog += gen.program(6);
            sim.type(prog);
            Session s = make_session(sim.steps, "s" + std::to_string(k % 9),
                                     "file" + std::to_string(k));
            total_events += s.events.size();
            corpus.push_back(std::move(s));
        }
        std::ofstream out(input, std::ios::binary);
        out << to_csv(corpus);
    }

    auto run_once = [&](const std::string& outdir) {
        std::string cmd = std::string(ptchron_bin) + " run --grammar mini --format json"
                          + " --no-timestamp --min-events 300 " + input.string() + " "
                          + (dir / outdir).string() + " 2>/dev/null";
        return std::system(cmd.c_str());
    };
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    int rc1 = run_once("out1");
    double secs = std::chrono::duration<double>(clock::now() - start).count();
    int rc2 = run_once("out2");

    bool identical = rc1 == 0 && rc2 == 0;
    size_t files = 0;
    if (identical) {
        for (const auto& entry : fs::directory_iterator(dir / "out1")) {
            ++files;
            fs::path other = dir / "out2" / entry.path().filename();
            std::ifstream f1(entry.path(), std::ios::binary);
            std::ifstream f2(other, std::ios::binary);
            std::stringstream s1, s2;
            s1 << f1.rdbuf();
            s2 << f2.rdbuf();
            if (!fs::exists(other) || s1.str() != s2.str()) {
                identical = false;
                break;
            }
        }
    }
    std::ostringstream detail;
    detail << total_events << " events, 50 sessions, first run " << secs << " s, "
           << files << " report files compared";
    report(9, "ptchron run under five minutes and byte-identical across runs",
           rc1 == 0 && rc2 == 0 && identical && secs < 300.0 && files >= 50,
           detail.str());
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv)
{
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(argc > 1 ? argv[1] : nullptr);

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
