#pragma once

#include <cstdint>
#include <string>

#include "microrep/model.hpp"

namespace microrep {

// Versioned little-endian binary container (layout documented in the
// README): magic, version, arch tag, dimensions (V, D, H, max_len), flags,
// the vocabulary hash the model was trained against, then all weight
// matrices row-major as raw IEEE-754 doubles. Round-trips bit-exactly.
struct Checkpoint {
    ModelParams params;
    size_t max_len = 0;
    uint64_t vocab_hash = 0;
};

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);

// IoError if unreadable; ParseError on bad magic/version/arch or truncation.
Checkpoint load_checkpoint(const std::string& path);

} // namespace microrep
