#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ptchron {

/// All internal text is UTF-32 so that edit offsets count code points,
/// matching what editor plugins report.
using Text = std::u32string;
using TextView = std::u32string_view;

std::string to_utf8(TextView s);
Text from_utf8(std::string_view s);

bool is_space_char(char32_t c);

/// Collapses runs of whitespace to a single space and trims the ends.
/// Used by behavior detectors that compare pasted text across snapshots.
Text normalize_ws(TextView s);

}  // namespace ptchron
