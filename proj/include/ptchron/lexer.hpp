#pragma once

#include "ptchron/parse_tree.hpp"
#include "ptchron/text.hpp"

#include <string>
#include <vector>

namespace ptchron {

enum class TokKind {
    Identifier,
    Number,
    String,
    Keyword,
    Op,
    Newline,  // logical line end
    Indent,
    Dedent,
    End,
    Error,
};

struct Token {
    TokKind kind = TokKind::End;
    CharRange range;
    Text text;
};

struct LexOptions {
    std::vector<Text> keywords;
    bool triple_strings = false;
    bool string_prefixes = false;  // r'...', f"..." etc.
};

struct LexResult {
    std::vector<Token> tokens;
    SpanMap spans;
    bool ok = true;          // false on unterminated string, bad indent, stray char
    std::string error;

    /// Positions covered by real tokens (identifier/number/string/kw/op).
    /// Complement of spans; used by leaf-coverage checks.
    std::vector<uint32_t> token_positions() const;
};

/// Tolerant scan: always yields the full token stream and spans; lexical
/// problems flag ok=false but classification still covers every character.
LexResult lex(const Text& src, const LexOptions& opt);

}  // namespace ptchron
