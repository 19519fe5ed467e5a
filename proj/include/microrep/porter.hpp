#pragma once

#include <string>

namespace microrep {

/// Classic Porter (1980) suffix-stripping stemmer, all five steps of the
/// original algorithm (not the later Porter2/Snowball revision). Expects a
/// lowercase token; words of length <= 2 are returned unchanged, matching
/// the reference ANSI C implementation.
std::string porter_stem(const std::string& word);

} // namespace microrep
