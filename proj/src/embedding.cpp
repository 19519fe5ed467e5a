#include "microrep/embedding.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>

#include "microrep/error.hpp"
#include "microrep/rng.hpp"

namespace microrep {

Vocabulary::Vocabulary() {
    index_to_word_ = {"<pad>", "<oov>"};
    frequencies_ = {0, 0};
    word_to_index_ = {{"<pad>", kPadIndex}, {"<oov>", kOovIndex}};
}

size_t Vocabulary::index_of(const std::string& word) const {
    const auto it = word_to_index_.find(word);
    return it == word_to_index_.end() ? kOovIndex : it->second;
}

const std::string& Vocabulary::word_at(size_t index) const {
    if (index >= index_to_word_.size())
        throw ArgumentError("vocabulary index out of range: " + std::to_string(index));
    return index_to_word_[index];
}

uint64_t Vocabulary::frequency_at(size_t index) const {
    if (index >= frequencies_.size())
        throw ArgumentError("vocabulary index out of range: " + std::to_string(index));
    return frequencies_[index];
}

bool Vocabulary::contains(const std::string& word) const {
    return word_to_index_.find(word) != word_to_index_.end();
}

void Vocabulary::add_word(const std::string& word, uint64_t frequency) {
    if (contains(word)) throw ArgumentError("duplicate vocabulary word: " + word);
    word_to_index_.emplace(word, index_to_word_.size());
    index_to_word_.push_back(word);
    frequencies_.push_back(frequency);
}

Vocabulary build_vocabulary(const std::vector<TokenSequence>& corpus, uint64_t min_freq) {
    std::map<std::string, uint64_t> counts;
    for (const auto& seq : corpus)
        for (const auto& token : seq.tokens) ++counts[token];

    std::vector<std::pair<std::string, uint64_t>> ranked;
    for (const auto& [word, count] : counts)
        if (count >= min_freq) ranked.emplace_back(word, count);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    for (const auto& [word, count] : ranked) vocab.add_word(word, count);
    return vocab;
}

PaddedSample encode_and_pad(const TokenSequence& tokens, const Vocabulary& vocab,
                            size_t max_len) {
    if (max_len == 0) throw ArgumentError("max_len must be >= 1");
    PaddedSample sample;
    sample.source_id = tokens.source_id;
    sample.indices.reserve(max_len);
    const size_t take = std::min(tokens.tokens.size(), max_len);
    for (size_t i = 0; i < take; ++i)
        sample.indices.push_back(vocab.index_of(tokens.tokens[i]));
    sample.indices.resize(max_len, Vocabulary::kPadIndex);
    return sample;
}

GloveMap load_glove(const std::string& path, size_t dim) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open GloVe file: " + path);
    GloveMap map;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t space = line.find(' ');
        if (space == std::string::npos || space == 0)
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": expected `word v1 ... vD`");
        const std::string word = line.substr(0, space);
        std::vector<double> vec;
        vec.reserve(dim);
        size_t pos = space;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            const char* begin = line.c_str() + pos;
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            if (end == begin || (*end != '\0' && *end != ' '))
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": non-numeric vector component");
            vec.push_back(value);
            pos = static_cast<size_t>(end - line.c_str());
        }
        if (vec.size() != dim)
            throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " components, found " +
                             std::to_string(vec.size()));
        map[word] = std::move(vec);
    }
    return map;
}

EmbeddingMatrix build_embedding_matrix(const Vocabulary& vocab, const GloveMap& glove,
                                       size_t dim, uint64_t seed) {
    if (dim == 0) throw ArgumentError("embedding dimension must be >= 1");
    EmbeddingMatrix embedding;
    embedding.dim = dim;
    embedding.values = Matrix(vocab.size(), dim);
    for (size_t i = 1; i < vocab.size(); ++i) {
        double* row = embedding.values.row(i);
        const GloveMap::const_iterator it =
            i == Vocabulary::kOovIndex ? glove.end() : glove.find(vocab.word_at(i));
        if (it != glove.end()) {
            if (it->second.size() != dim)
                throw ArgumentError("GloVe vector for '" + vocab.word_at(i) + "' has " +
                                    std::to_string(it->second.size()) +
                                    " components, expected " + std::to_string(dim));
            std::copy(it->second.begin(), it->second.end(), row);
        } else {
            SplitMix64 rng(mix_seed(seed, i));
            for (size_t d = 0; d < dim; ++d) row[d] = rng.next_double(-0.05, 0.05);
        }
    }
    return embedding;
}

namespace {

std::string vocabulary_dump(const Vocabulary& vocab) {
    std::string out;
    for (size_t i = 0; i < vocab.size(); ++i) {
        out += std::to_string(i);
        out += '\t';
        out += vocab.word_at(i);
        out += '\t';
        out += std::to_string(vocab.frequency_at(i));
        out += '\n';
    }
    return out;
}

} // namespace

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write vocabulary file: " + path);
    out << vocabulary_dump(vocab);
    if (!out) throw IoError("failed writing vocabulary file: " + path);
}

Vocabulary load_vocabulary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read vocabulary file: " + path);
    Vocabulary vocab;
    std::string line;
    size_t line_no = 0;
    const auto fail = [&](const std::string& what) {
        throw ParseError(path + ": line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != std::string::npos)
            fail("expected `index<TAB>word<TAB>frequency`");
        const std::string index_text = line.substr(0, tab1);
        const std::string word = line.substr(tab1 + 1, tab2 - tab1 - 1);
        const std::string freq_text = line.substr(tab2 + 1);
        char* end = nullptr;
        const uint64_t index = std::strtoull(index_text.c_str(), &end, 10);
        if (end == index_text.c_str() || *end != '\0') fail("bad index field");
        end = nullptr;
        const uint64_t freq = std::strtoull(freq_text.c_str(), &end, 10);
        if (end == freq_text.c_str() || *end != '\0') fail("bad frequency field");
        const size_t expected = line_no - 1;
        if (index != expected) fail("out-of-order index " + index_text);
        if (expected == Vocabulary::kPadIndex) {
            if (word != "<pad>") fail("row 0 must be <pad>");
        } else if (expected == Vocabulary::kOovIndex) {
            if (word != "<oov>") fail("row 1 must be <oov>");
        } else {
            vocab.add_word(word, freq);
        }
    }
    if (line_no < 2) throw ParseError(path + ": missing sentinel rows");
    return vocab;
}

uint64_t vocabulary_hash(const Vocabulary& vocab) {
    const std::string dump = vocabulary_dump(vocab);
    uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : dump) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

} // namespace microrep
