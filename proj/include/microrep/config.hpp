#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "microrep/train.hpp"

namespace microrep {

// Flat `key = value` configuration text: one pair per line, blank lines
// skipped, lines whose first non-space character is '#' are comments.
// Duplicate keys and malformed lines raise ParseError naming the line.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text, const std::string& source);
ConfigMap load_config(const std::string& path);

// Full pipeline configuration. Every key has a default; unknown keys are
// rejected so typos cannot silently fall back to defaults.
struct RunConfig {
    TrainConfig train;
    std::string reviews_path;
    std::string glove_path;        // empty -> seeded random embeddings
    std::string stopwords_path;    // empty -> bundled data/stopwords.txt
    std::string pos_lexicon_path;  // empty -> bundled data/pos_lexicon.tsv
    std::string out_dir = "out";
    double train_ratio = 0.7;
    double val_ratio = 0.15;
    uint64_t min_freq = 1;
    size_t embedding_dim = 50;  // used only when no GloVe file is given
    bool pos_filter = true;
    bool stemming = true;
    bool timing = false;   // record wall-clock epoch_ms in the curve CSV
    bool percent = false;  // render reports as whole percents
};

RunConfig run_config_from_map(const ConfigMap& map);
RunConfig load_run_config(const std::string& path);

} // namespace microrep
