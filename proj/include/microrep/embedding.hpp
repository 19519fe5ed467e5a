#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "microrep/matrix.hpp"
#include "microrep/preprocess.hpp"
#include "microrep/review.hpp"

namespace microrep {

// Word-to-index dictionary. Index 0 is reserved for padding and index 1 for
// out-of-vocabulary words; real words occupy contiguous indices from 2.
class Vocabulary {
public:
    static constexpr size_t kPadIndex = 0;
    static constexpr size_t kOovIndex = 1;

    Vocabulary();

    size_t size() const { return index_to_word_.size(); }
    size_t index_of(const std::string& word) const;  // kOovIndex when absent
    const std::string& word_at(size_t index) const;
    uint64_t frequency_at(size_t index) const;
    bool contains(const std::string& word) const;

    // Appends a word with the next free index. Used by build_vocabulary.
    void add_word(const std::string& word, uint64_t frequency);

private:
    std::unordered_map<std::string, size_t> word_to_index_;
    std::vector<std::string> index_to_word_;
    std::vector<uint64_t> frequencies_;
};

// Fixed-length encoded review: vocabulary indices, trailing-padded.
struct PaddedSample {
    std::vector<size_t> indices;
    Sentiment label = Sentiment::positive;
    std::string source_id;
};

struct EmbeddingMatrix {
    Matrix values;  // V x D; row 0 (padding) all zeros
    size_t dim = 0;
    bool trainable = false;
};

// Words with frequency >= min_freq are indexed in descending frequency
// order, ties broken lexicographically.
Vocabulary build_vocabulary(const std::vector<TokenSequence>& corpus, uint64_t min_freq);

// Maps tokens to indices (unknown -> oov), keeps the first max_len on
// overflow, and appends pad indices up to max_len otherwise.
PaddedSample encode_and_pad(const TokenSequence& tokens, const Vocabulary& vocab,
                            size_t max_len);

using GloveMap = std::unordered_map<std::string, std::vector<double>>;

// GloVe text format: `word v1 v2 ... vD`, space-separated, one entry per
// line. Later duplicate words overwrite earlier ones.
GloveMap load_glove(const std::string& path, size_t dim);

// Row 0 is zero; rows found in `glove` are copied; the oov row and any
// vocabulary word missing from `glove` get i.i.d. uniform(-0.05, 0.05)
// entries from a PRNG seeded with (seed, row index).
EmbeddingMatrix build_embedding_matrix(const Vocabulary& vocab, const GloveMap& glove,
                                       size_t dim, uint64_t seed);

// Reproducibility dump: `index<TAB>word<TAB>frequency` lines. The reserved
// rows print as <pad> and <oov>.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);

// Inverse of save_vocabulary; ParseError (naming the line) on malformed
// rows, out-of-order indices, or missing sentinel rows.
Vocabulary load_vocabulary(const std::string& path);

// FNV-1a 64-bit hash over the dump representation; stored in checkpoints so
// a model is never evaluated against the wrong vocabulary.
uint64_t vocabulary_hash(const Vocabulary& vocab);

} // namespace microrep
