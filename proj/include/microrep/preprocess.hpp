#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "microrep/review.hpp"

namespace microrep {

// Coarse part-of-speech tags used by the bundled lexicon.
enum class PosTag { noun, adjective, verb, adverb, other };

PosTag pos_tag_from_string(const std::string& name);
const char* to_string(PosTag tag);

// Cleaned, ordered tokens for one review.
struct TokenSequence {
    std::vector<std::string> tokens;
    std::string source_id;
};

using StopwordList = std::unordered_set<std::string>;
using PosLexicon = std::unordered_map<std::string, std::set<PosTag>>;

struct PreprocessConfig {
    StopwordList stopword_list;
    PosLexicon pos_lexicon;
    bool pos_filter_enabled = true;
    bool stemming_enabled = true;
};

// Splits on Unicode whitespace and lowercases ASCII letters; runs of
// whitespace collapse, so no empty tokens are produced.
std::vector<std::string> tokenize(const std::string& text);

// Deletes every non-alphanumeric byte from each token (digits are kept);
// tokens that become empty are dropped.
std::vector<std::string> strip_specials(const std::vector<std::string>& tokens);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordList& stoplist);

// Keeps tokens tagged noun or adjective. Tokens absent from the lexicon are
// kept (open-world default), so rare domain terms survive.
std::vector<std::string> pos_filter(const std::vector<std::string>& tokens,
                                    const PosLexicon& lexicon);

// tokenize -> strip_specials -> remove_stopwords -> pos_filter (if enabled)
// -> porter_stem (if enabled). The result may be empty.
TokenSequence preprocess_pipeline(const ReviewRecord& record, const PreprocessConfig& config);

// Stopword file: one lowercase token per line, UTF-8, '#' starts a comment line.
StopwordList load_stopwords(const std::string& path);

// Lexicon file: lines of `word<TAB>tag[,tag...]`; tags from
// {noun,adjective,verb,adverb,other}. Repeated words merge their tag sets.
PosLexicon load_pos_lexicon(const std::string& path);

} // namespace microrep
