#include "doctest.h"

#include "support/builders.hpp"

#include "ptchron/edit_log.hpp"

#include <sstream>

using namespace ptchron;
using namespace ptchron::test;

TEST_CASE("apply_edit basics")
{
    EditEvent e;
    e.kind = EditKind::Insert;
    e.index = 2;
    e.text = U"xy";
    auto r = apply_edit(U"abcd", e);
    REQUIRE(r);
    CHECK(*r == U"abxycd");

    e.kind = EditKind::Delete;
    e.index = 1;
    e.text = U"bc";
    r = apply_edit(U"abcde", e);
    REQUIRE(r);
    CHECK(*r == U"ade");

    e.kind = EditKind::Insert;
    e.index = 0;
    e.text = U"z";
    r = apply_edit(U"", e);
    REQUIRE(r);
    CHECK(*r == U"z");
}

TEST_CASE("apply_edit rejects bad edits")
{
    EditEvent e;
    e.kind = EditKind::Insert;
    e.index = 5;
    e.text = U"x";
    std::string err;
    CHECK_FALSE(apply_edit(U"ab", e, &err));

    e.kind = EditKind::Delete;
    e.index = 0;
    e.text = U"xx";
    CHECK_FALSE(apply_edit(U"ab", e, &err));
    CHECK(err.find("disagrees") != std::string::npos);
}

TEST_CASE("ingest two inserts then delete")
{
    std::vector<Session> fixture{make_session({ins(0, U"ab"), ins(1, U"c")})};
    std::istringstream in(to_csv(fixture));
    IngestResult res = ingest_log(in);
    REQUIRE(res.sessions.size() == 1);
    REQUIRE(res.issues.empty());
    Replay r = replay_session(res.sessions[0]);
    REQUIRE(r.ok());
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0] == U"ab");
    CHECK(r.snapshots[1] == U"acb");

    std::vector<Session> fixture2{
        make_session({ins(0, U"ab"), ins(1, U"c"), del(2, U"b")})};
    std::istringstream in2(to_csv(fixture2));
    IngestResult res2 = ingest_log(in2);
    REQUIRE(res2.sessions.size() == 1);
    Replay r2 = replay_session(res2.sessions[0]);
    REQUIRE(r2.ok());
    CHECK(r2.snapshots.back() == U"ac");
}

TEST_CASE("delete mismatch reports the event")
{
    Session bad = make_session({ins(0, U"ab"), del(0, U"zz")});
    Replay r = replay_session(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error->kind == ReplayErrorKind::DeleteMismatch);
    CHECK(r.error->event_index == 1);
}

TEST_CASE("duplicate order values are rejected")
{
    Session s = make_session({ins(0, U"a"), ins(1, U"b")});
    s.events[1].order = s.events[0].order;
    std::istringstream in(to_csv({s}));
    IngestResult res = ingest_log(in);
    CHECK(res.sessions.empty());
    REQUIRE(res.fatal_errors.size() == 1);
    CHECK(res.fatal_errors[0].find("non-monotonic") != std::string::npos);
}

TEST_CASE("rows sort by order and group by subject and file")
{
    Session a = make_session({ins(0, U"x"), ins(1, U"y")}, "s1", "f1");
    Session b = make_session({ins(0, U"q")}, "s1", "f2");
    // interleave and scramble row order
    std::vector<Session> both{a, b};
    std::string csv = to_csv(both);
    // move the header off, reverse data rows, re-add header
    auto nl = csv.find('\n');
    std::string header = csv.substr(0, nl + 1);
    std::string rows = csv.substr(nl + 1);
    std::vector<std::string> lines;
    std::istringstream rs(rows);
    for (std::string line; std::getline(rs, line);)
        lines.push_back(line);
    std::string scrambled = header;
    for (auto it = lines.rbegin(); it != lines.rend(); ++it)
        scrambled += *it + "\n";
    std::istringstream in(scrambled);
    IngestResult res = ingest_log(in);
    REQUIRE(res.sessions.size() == 2);
    CHECK(res.sessions[0].file_id == "f1");
    CHECK(res.sessions[0].events.size() == 2);
    CHECK(res.sessions[0].events[0].order < res.sessions[0].events[1].order);
}

TEST_CASE("malformed rows are reported with line numbers")
{
    std::string csv =
        "EventID,Order,SubjectID,CodeStateSection,EventType,SourceLocation,EditType,"
        "InsertText,DeleteText,ClientTimestamp\n"
        "e1,1,s,f,File.Edit,0,Insert,a,,\n"
        "e2,notanumber,s,f,File.Edit,1,Insert,b,,\n"
        "e3,2,s,f,File.Edit,x,Insert,b,,\n"
        "e4,3,s,f,Compile,0,Insert,b,,\n"
        "e5,4,s,f,File.Edit,1,Insert,,,\n";
    std::istringstream in(csv);
    IngestResult res = ingest_log(in);
    REQUIRE(res.sessions.size() == 1);
    CHECK(res.sessions[0].events.size() == 1);
    REQUIRE(res.issues.size() == 4);
    CHECK(res.issues[0].line == 3);
    CHECK(res.issues[0].reason == "bad-order");
    CHECK(res.issues[1].reason == "bad-index");
    CHECK(res.issues[2].reason == "unsupported-event-type");
    CHECK(res.issues[3].reason == "bad-edit-text");
}

TEST_CASE("quoted fields with embedded newlines and commas survive")
{
    Session s = make_session({ins(0, U"a,b\nc\"d")});
    std::istringstream in(to_csv({s}));
    IngestResult res = ingest_log(in);
    REQUIRE(res.sessions.size() == 1);
    CHECK(res.sessions[0].events[0].text == U"a,b\nc\"d");
}

TEST_CASE("filter by event count keeps the boundary")
{
    std::vector<Session> sessions;
    for (size_t n : {250, 300, 400}) {
        Session s = make_session(type_text(Text(n, U'a')), "s", "f" + std::to_string(n));
        sessions.push_back(std::move(s));
    }
    std::vector<ExcludedSession> excluded;
    filter_by_event_count(sessions, 300, excluded);
    REQUIRE(sessions.size() == 2);
    REQUIRE(excluded.size() == 1);
    CHECK(excluded[0].reason == "too-few-events");
    CHECK(excluded[0].file_id == "f250");
}

TEST_CASE("starter heuristics")
{
    Session s = make_session({ins(0, U"x"), ins(1, U"print(1)\nprint(2)\n")});
    attach_starter(s, std::nullopt);
    REQUIRE(s.starter);
    CHECK(s.starter->heuristic);
    CHECK(s.starter->text == U"print(1)\nprint(2)\n");

    Session s2 = make_session(type_text(U"abcdef"));
    attach_starter(s2, std::nullopt);
    CHECK_FALSE(s2.starter);  // single-character typing is not a paste

    Session s3 = make_session(type_text(U"ab"));
    attach_starter(s3, Text(U"starter"));
    REQUIRE(s3.starter);
    CHECK_FALSE(s3.starter->heuristic);
}

TEST_CASE("replay determinism and length bookkeeping")
{
    std::mt19937 rng(5);
    Session s = random_edit_script(rng, 80);
    Replay a = replay_session(s);
    Replay b = replay_session(s);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.snapshots == b.snapshots);
    size_t len = 0;
    for (size_t t = 0; t < s.events.size(); ++t) {
        len = s.events[t].kind == EditKind::Insert ? len + s.events[t].text.size()
                                                   : len - s.events[t].text.size();
        CHECK(a.snapshots[t].size() == len);
    }
}
