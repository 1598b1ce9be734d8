#include "doctest.h"

#include "support/builders.hpp"

#include "ptchron/behaviors.hpp"

#include <set>

using namespace ptchron;
using namespace ptchron::test;

namespace {

size_t count_kind(const std::vector<BehaviorEvent>& evs, BehaviorKind k)
{
    size_t n = 0;
    for (const BehaviorEvent& e : evs)
        if (e.kind == k)
            ++n;
    return n;
}

}  // namespace

TEST_CASE("paste of previously written text is duplication")
{
    std::vector<Step> steps{ins(0, U"x = foo(1)\n"), ins(11, U"y = 2\n"),
                            ins(17, U"foo(1)\n")};
    SessionAnalysis a = analyze_steps(steps);
    PasteDetection pd = detect_pastes(a, BehaviorConfig{});
    // the two big inserts at states 0..2 are candidates; the last one
    // duplicates text present since state 0
    bool found = false;
    for (const BehaviorEvent& e : pd.events)
        if (e.kind == BehaviorKind::Duplication && e.state == 2)
            found = true;
    CHECK(found);
}

TEST_CASE("novel paste is exterior; starter pastes are suppressed")
{
    Session s = make_session({ins(0, U"print('starter line one')\n"),
                              ins(26, U"wholly novel code here\n")});
    attach_starter(s, Text(U"print('starter line one')\n"));
    SessionAnalysis a = analyze_session(s, *grammar_by_name("mini"));
    PasteDetection pd = detect_pastes(a, BehaviorConfig{});
    REQUIRE(pd.starter_suppressed.size() == 1);
    CHECK(pd.starter_suppressed[0] == 0);
    REQUIRE(pd.events.size() == 1);
    CHECK(pd.events[0].kind == BehaviorKind::ExteriorPaste);
    CHECK(pd.events[0].state == 1);
}

TEST_CASE("paste classification is exhaustive and exclusive")
{
    Session s = make_session({ins(0, U"print('starter line one')\n"),
                              ins(26, U"abcdefgh = 12345\n"),
                              del(27, U"bcdefgh = 1234"),
                              ins(28, U"bcdefgh = 1234")});
    attach_starter(s, Text(U"print('starter line one')\n"));
    SessionAnalysis a = analyze_session(s, *grammar_by_name("mini"));
    BehaviorConfig cfg;
    std::vector<size_t> consumed;
    auto moving = detect_moving(a, cfg, &consumed);
    PasteDetection pd = detect_pastes(a, cfg, consumed);
    std::set<size_t> classified(pd.starter_suppressed.begin(), pd.starter_suppressed.end());
    for (const BehaviorEvent& e : pd.events)
        classified.insert(e.state);
    for (size_t st : consumed)
        classified.insert(st);
    // every paste-sized insert lands in exactly one bucket
    size_t candidates = 0;
    for (size_t t = 0; t < a.states(); ++t) {
        const EditEvent& ev = a.session.events[t];
        if (ev.kind == EditKind::Insert && ev.text.size() >= cfg.paste_min
            && !normalize_ws(ev.text).empty())
            ++candidates;
    }
    CHECK(candidates == classified.size());
    CHECK(moving.size() == 1);
}

TEST_CASE("typing a comment is one commenting event")
{
    std::vector<Step> steps = type_text(U"x = 1\n");
    steps = type_text(U"# todo", steps, 6);
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_comment_ops(a);
    CHECK(count_kind(evs, BehaviorKind::Commenting) == 1);
    CHECK(count_kind(evs, BehaviorKind::CommentingOut) == 0);
}

TEST_CASE("comment out and back in: one commenting-out, one uncommenting")
{
    std::vector<Step> steps{ins(0, U"print(x)\ny = 1"), ins(0, U"#"), del(0, U"#")};
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_comment_ops(a);
    CHECK(count_kind(evs, BehaviorKind::CommentingOut) == 1);
    CHECK(count_kind(evs, BehaviorKind::Uncommenting) == 1);
    CHECK(count_kind(evs, BehaviorKind::Commenting) == 0);
    CHECK(count_kind(evs, BehaviorKind::DeletingComment) == 0);
    // events pair up on the same characters
    const BehaviorEvent* out = nullptr;
    const BehaviorEvent* back = nullptr;
    for (const BehaviorEvent& e : evs) {
        if (e.kind == BehaviorKind::CommentingOut)
            out = &e;
        if (e.kind == BehaviorKind::Uncommenting)
            back = &e;
    }
    CHECK(out->state == 1);
    CHECK(back->state == 2);
}

TEST_CASE("deleting a whole comment fires deleting-comment once")
{
    std::vector<Step> steps = type_text(U"x = 1\n");
    steps.push_back(ins(6, U"# old"));
    // backspace the comment char by char
    for (int k = 4; k >= 0; --k)
        steps.push_back(del(6 + static_cast<size_t>(k),
                            Text(1, Text(U"# old")[static_cast<size_t>(k)])));
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_comment_ops(a);
    CHECK(count_kind(evs, BehaviorKind::Commenting) == 1);
    CHECK(count_kind(evs, BehaviorKind::DeletingComment) == 1);
    CHECK(count_kind(evs, BehaviorKind::Uncommenting) == 0);
}

TEST_CASE("comment that survives to the end fires nothing extra")
{
    std::vector<Step> steps{ins(0, U"x = 1\n# keep\n")};
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_comment_ops(a);
    CHECK(count_kind(evs, BehaviorKind::Commenting) == 1);
    CHECK(count_kind(evs, BehaviorKind::DeletingComment) == 0);
}

TEST_CASE("renaming requires the twenty-edit gap")
{
    // identifier xq, then >= 20 edits elsewhere, then extend it
    std::vector<Step> steps{ins(0, U"xq = 1\n")};
    size_t base = 7;
    // 24 single-char edits building comment text on the second line
    steps = type_text(U"# aaaaaaaaaaaaaaaaaaaaaa", steps, base);
    steps.push_back(ins(1, U"s"));  // xq -> xsq
    SessionAnalysis a = analyze_steps(steps);
    BehaviorConfig cfg;
    auto evs = detect_renaming(a, cfg);
    REQUIRE(evs.size() == 1);
    CHECK(evs[0].state == a.states() - 1);
    CHECK(evs[0].detail == "xq -> xsq");

    // immediate correction: typing y right after x was created is no rename
    std::vector<Step> fresh{ins(0, U"x = 1\n"), ins(1, U"y")};
    SessionAnalysis b = analyze_steps(fresh);
    CHECK(detect_renaming(b, cfg).empty());
}

TEST_CASE("same identifier renamed twice with qualifying gaps gives two events")
{
    std::vector<Step> steps{ins(0, U"xq = 1\n")};
    steps = type_text(U"# aaaaaaaaaaaaaaaaaaaaaa", steps, 7);
    steps.push_back(ins(1, U"s"));  // rename 1: xq -> xsq
    size_t len_now = 7 + 24 + 1;
    steps = type_text(U"bbbbbbbbbbbbbbbbbbbbbb", steps, len_now);
    steps.push_back(ins(1, U"t"));  // rename 2: xsq -> xtsq
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_renaming(a, BehaviorConfig{});
    CHECK(evs.size() == 2);
}

TEST_CASE("moving detection and its exclusions")
{
    // cut a 12-char stretch and paste it elsewhere a few events later
    std::vector<Step> steps{ins(0, U"alpha = 1002\nbeta = 2\n"),
                            del(0, U"alpha = 1002"), ins(1, U"x"), del(1, U"x"),
                            ins(10, U"alpha = 1002")};
    SessionAnalysis a = analyze_steps(steps);
    auto evs = detect_moving(a, BehaviorConfig{});
    REQUIRE(evs.size() == 1);
    CHECK(evs[0].state == 4);

    // delete without matching re-insert: nothing
    std::vector<Step> no_move{ins(0, U"alpha = 1002\nbeta = 2\n"), del(0, U"alpha = 1002")};
    CHECK(detect_moving(analyze_steps(no_move), BehaviorConfig{}).empty());

    // re-insert at the same index is undo-like: nothing
    std::vector<Step> undo{ins(0, U"alpha = 1002\nbeta = 2\n"), del(0, U"alpha = 1002"),
                           ins(0, U"alpha = 1002")};
    CHECK(detect_moving(analyze_steps(undo), BehaviorConfig{}).empty());
}

TEST_CASE("behavior summary fractions and medians")
{
    std::vector<SessionBehaviorCounts> sessions(3);
    sessions[0].events = 100;  // short
    sessions[0].counts[BehaviorKind::Duplication] = 2;
    sessions[1].events = 100;  // short, no duplication
    sessions[2].events = 5000;  // medium
    sessions[2].counts[BehaviorKind::Duplication] = 4;

    auto rows = behavior_summary(sessions, 3000);
    const BehaviorSummaryRow* dup = nullptr;
    for (const auto& r : rows)
        if (r.kind == BehaviorKind::Duplication)
            dup = &r;
    REQUIRE(dup);
    REQUIRE(dup->short_fraction);
    CHECK(*dup->short_fraction == doctest::Approx(0.5));
    REQUIRE(dup->medium_fraction);
    CHECK(*dup->medium_fraction == doctest::Approx(1.0));
    REQUIRE(dup->short_median);
    CHECK(*dup->short_median == doctest::Approx(2.0));
    REQUIRE(dup->medium_median);
    CHECK(*dup->medium_median == doctest::Approx(4.0));

    // empty detection set: all fractions zero
    std::vector<SessionBehaviorCounts> none(2);
    none[0].events = none[1].events = 10;
    for (const auto& r : behavior_summary(none, 3000)) {
        REQUIRE(r.short_fraction);
        CHECK(*r.short_fraction == doctest::Approx(0.0));
    }
}

TEST_CASE("one file with two duplications")
{
    std::vector<SessionBehaviorCounts> sessions(1);
    sessions[0].events = 50;
    sessions[0].counts[BehaviorKind::Duplication] = 2;
    auto rows = behavior_summary(sessions, 3000);
    for (const auto& r : rows) {
        if (r.kind == BehaviorKind::Duplication) {
            CHECK(*r.short_fraction == doctest::Approx(1.0));
            CHECK(*r.short_median == doctest::Approx(2.0));
        }
    }
}
