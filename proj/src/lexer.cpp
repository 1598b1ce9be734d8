#include "ptchron/lexer.hpp"

#include <algorithm>

namespace ptchron {

namespace {

enum class CharClass : uint8_t { Code, Ws, Comment };

bool is_ident_start(char32_t c)
{
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_' || c >= 0x80;
}

bool is_ident_cont(char32_t c)
{
    return is_ident_start(c) || (c >= U'0' && c <= U'9');
}

bool is_digit(char32_t c)
{
    return c >= U'0' && c <= U'9';
}

const char32_t* multi_ops[] = {U"**=", U"//=", U"==", U"!=", U"<=", U">=", U"//", U"**",
                               U"+=",  U"-=",  U"*=", U"/=", U"%=", U"->"};
const Text single_ops = U"+-*/%<>=()[]{},:.;@";

/// Scans a string body starting right after the opening quote(s).
/// Returns the position just past the closing quote(s); closed=false when
/// the line (or file, for triple quotes) ends first.
size_t scan_string_body(const Text& src, size_t i, char32_t quote, bool triple, bool raw,
                        bool& closed)
{
    const size_t n = src.size();
    closed = false;
    while (i < n) {
        char32_t c = src[i];
        if (c == U'\\' && i + 1 < n && (!raw || src[i + 1] == quote)) {
            i += 2;
            continue;
        }
        if (!triple && (c == U'\n' || c == U'\r'))
            return i;  // unterminated single-line string stops at the newline
        if (c == quote) {
            if (!triple) {
                closed = true;
                return i + 1;
            }
            if (i + 2 < n && src[i + 1] == quote && src[i + 2] == quote) {
                closed = true;
                return i + 3;
            }
        }
        ++i;
    }
    return n;
}

}  // namespace

std::vector<uint32_t> LexResult::token_positions() const
{
    std::vector<uint32_t> out;
    for (const Token& t : tokens) {
        if (t.kind == TokKind::Newline || t.kind == TokKind::Indent
            || t.kind == TokKind::Dedent || t.kind == TokKind::End)
            continue;
        for (uint32_t i = t.range.lo; i < t.range.hi; ++i)
            out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LexResult lex(const Text& src, const LexOptions& opt)
{
    LexResult res;
    const size_t n = src.size();
    std::vector<CharClass> cls(n, CharClass::Ws);

    auto is_keyword = [&](const Text& s) {
        return std::find(opt.keywords.begin(), opt.keywords.end(), s) != opt.keywords.end();
    };
    auto set_error = [&](const std::string& msg) {
        if (res.ok) {
            res.ok = false;
            res.error = msg;
        }
    };
    auto push_tok = [&](TokKind k, size_t lo, size_t hi) {
        Token t;
        t.kind = k;
        t.range = {static_cast<uint32_t>(lo), static_cast<uint32_t>(hi)};
        t.text = src.substr(lo, hi - lo);
        for (size_t i = lo; i < hi; ++i)
            cls[i] = CharClass::Code;
        res.tokens.push_back(std::move(t));
    };

    std::vector<int> indents{0};
    int bracket_depth = 0;
    bool at_line_start = true;
    bool line_has_content = false;
    size_t i = 0;

    auto emit_newline = [&](size_t pos) {
        Token t;
        t.kind = TokKind::Newline;
        t.range = {static_cast<uint32_t>(pos), static_cast<uint32_t>(pos)};
        res.tokens.push_back(t);
        line_has_content = false;
        at_line_start = true;
    };

    while (true) {
        if (i >= n) {
            if (line_has_content && bracket_depth == 0)
                emit_newline(n);
            break;
        }
        char32_t c = src[i];

        if (at_line_start && bracket_depth == 0) {
            size_t j = i;
            int width = 0;
            while (j < n && (src[j] == U' ' || src[j] == U'\t')) {
                width = src[j] == U'\t' ? (width / 8 + 1) * 8 : width + 1;
                ++j;
            }
            at_line_start = false;
            bool blank = j >= n || src[j] == U'\n' || src[j] == U'\r' || src[j] == U'#';
            if (!blank) {
                if (width > indents.back()) {
                    indents.push_back(width);
                    Token t;
                    t.kind = TokKind::Indent;
                    t.range = {static_cast<uint32_t>(i), static_cast<uint32_t>(j)};
                    res.tokens.push_back(t);
                } else {
                    while (width < indents.back()) {
                        indents.pop_back();
                        Token t;
                        t.kind = TokKind::Dedent;
                        t.range = {static_cast<uint32_t>(j), static_cast<uint32_t>(j)};
                        res.tokens.push_back(t);
                    }
                    if (width != indents.back())
                        set_error("inconsistent dedent");
                }
            }
            i = j;
            continue;
        }

        if (c == U'\n' || c == U'\r') {
            ++i;
            if (c == U'\r' && i < n && src[i] == U'\n')
                ++i;
            if (bracket_depth > 0)
                continue;  // implicit line joining
            if (line_has_content)
                emit_newline(i - 1);
            else
                at_line_start = true;
            continue;
        }
        if (c == U' ' || c == U'\t' || c == U'\f') {
            ++i;
            continue;
        }
        if (c == U'\\' && i + 1 < n && (src[i + 1] == U'\n' || src[i + 1] == U'\r')) {
            i += 2;  // explicit line joining; both characters stay whitespace
            if (i < n && src[i - 1] == U'\r' && src[i] == U'\n')
                ++i;
            continue;
        }

        if (c == U'#') {
            size_t j = i;
            while (j < n && src[j] != U'\n' && src[j] != U'\r')
                ++j;
            for (size_t k = i; k < j; ++k)
                cls[k] = CharClass::Comment;
            i = j;
            continue;
        }

        line_has_content = true;

        if (c == U'\'' || c == U'"') {
            char32_t quote = c;
            size_t start = i;
            bool triple = opt.triple_strings && i + 2 < n && src[i + 1] == quote
                          && src[i + 2] == quote;
            size_t body = i + (triple ? 3 : 1);
            bool closed = false;
            size_t end = scan_string_body(src, body, quote, triple, false, closed);
            if (!closed)
                set_error("unterminated string");
            push_tok(closed ? TokKind::String : TokKind::Error, start, end);
            i = end;
            continue;
        }

        if (is_ident_start(c)) {
            size_t j = i;
            while (j < n && is_ident_cont(src[j]))
                ++j;
            Text word = src.substr(i, j - i);
            if (opt.string_prefixes && word.size() <= 2 && j < n
                && (src[j] == U'\'' || src[j] == U'"')) {
                bool is_prefix = true;
                bool raw = false;
                for (char32_t ch : word) {
                    char32_t lo = (ch >= U'A' && ch <= U'Z') ? ch + 32 : ch;
                    if (lo == U'r')
                        raw = true;
                    else if (lo != U'b' && lo != U'f' && lo != U'u')
                        is_prefix = false;
                }
                if (is_prefix) {
                    char32_t quote = src[j];
                    bool triple = opt.triple_strings && j + 2 < n && src[j + 1] == quote
                                  && src[j + 2] == quote;
                    size_t body = j + (triple ? 3 : 1);
                    bool closed = false;
                    size_t end = scan_string_body(src, body, quote, triple, raw, closed);
                    if (!closed)
                        set_error("unterminated string");
                    push_tok(closed ? TokKind::String : TokKind::Error, i, end);
                    i = end;
                    continue;
                }
            }
            push_tok(is_keyword(word) ? TokKind::Keyword : TokKind::Identifier, i, j);
            i = j;
            continue;
        }

        if (is_digit(c) || (c == U'.' && i + 1 < n && is_digit(src[i + 1]))) {
            size_t j = i;
            if (src[j] == U'0' && j + 1 < n
                && (src[j + 1] == U'x' || src[j + 1] == U'X' || src[j + 1] == U'b'
                    || src[j + 1] == U'B' || src[j + 1] == U'o' || src[j + 1] == U'O')) {
                j += 2;
                while (j < n && is_ident_cont(src[j]))
                    ++j;
            } else {
                while (j < n && is_digit(src[j]))
                    ++j;
                if (j < n && src[j] == U'.') {
                    ++j;
                    while (j < n && is_digit(src[j]))
                        ++j;
                }
                if (j < n && (src[j] == U'e' || src[j] == U'E')) {
                    size_t k = j + 1;
                    if (k < n && (src[k] == U'+' || src[k] == U'-'))
                        ++k;
                    if (k < n && is_digit(src[k])) {
                        j = k + 1;
                        while (j < n && is_digit(src[j]))
                            ++j;
                    }
                }
            }
            push_tok(TokKind::Number, i, j);
            i = j;
            continue;
        }

        bool matched = false;
        for (const char32_t* op : multi_ops) {
            size_t len = std::char_traits<char32_t>::length(op);
            if (i + len <= n && src.compare(i, len, op) == 0) {
                push_tok(TokKind::Op, i, i + len);
                i += len;
                matched = true;
                break;
            }
        }
        if (matched)
            continue;
        if (single_ops.find(c) != Text::npos) {
            if (c == U'(' || c == U'[' || c == U'{')
                ++bracket_depth;
            if ((c == U')' || c == U']' || c == U'}') && bracket_depth > 0)
                --bracket_depth;
            push_tok(TokKind::Op, i, i + 1);
            ++i;
            continue;
        }

        set_error("unexpected character");
        push_tok(TokKind::Error, i, i + 1);
        ++i;
    }

    while (indents.size() > 1) {
        indents.pop_back();
        Token t;
        t.kind = TokKind::Dedent;
        t.range = {static_cast<uint32_t>(n), static_cast<uint32_t>(n)};
        res.tokens.push_back(t);
    }
    Token end;
    end.kind = TokKind::End;
    end.range = {static_cast<uint32_t>(n), static_cast<uint32_t>(n)};
    res.tokens.push_back(end);

    auto flush = [&](CharClass what, std::vector<CharRange>& out) {
        size_t k = 0;
        while (k < n) {
            if (cls[k] != what) {
                ++k;
                continue;
            }
            size_t start = k;
            while (k < n && cls[k] == what)
                ++k;
            out.push_back({static_cast<uint32_t>(start), static_cast<uint32_t>(k)});
        }
    };
    flush(CharClass::Comment, res.spans.comment_spans);
    flush(CharClass::Ws, res.spans.whitespace_spans);
    return res;
}

}  // namespace ptchron
