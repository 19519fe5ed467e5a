#include "microrep/preprocess.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>

#include "microrep/error.hpp"
#include "microrep/porter.hpp"

namespace microrep {

PosTag pos_tag_from_string(const std::string& name) {
    if (name == "noun") return PosTag::noun;
    if (name == "adjective") return PosTag::adjective;
    if (name == "verb") return PosTag::verb;
    if (name == "adverb") return PosTag::adverb;
    if (name == "other") return PosTag::other;
    throw ValidationError("unknown part-of-speech tag '" + name + "'");
}

const char* to_string(PosTag tag) {
    switch (tag) {
        case PosTag::noun: return "noun";
        case PosTag::adjective: return "adjective";
        case PosTag::verb: return "verb";
        case PosTag::adverb: return "adverb";
        case PosTag::other: return "other";
    }
    return "other";
}

namespace {

// Code points with the Unicode White_Space property.
bool is_unicode_space(uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes one UTF-8 code point at `i`, returning its length in bytes.
// Malformed bytes are treated as single-byte characters so tokenization
// never fails on dirty input.
uint32_t decode_utf8(const std::string& s, size_t i, size_t* len) {
    const auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        *len = 1;
        return b0;
    }
    size_t need = 0;
    uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { need = 1; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { need = 2; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { need = 3; cp = b0 & 0x07; }
    else { *len = 1; return b0; }
    for (size_t k = 1; k <= need; ++k) {
        if (i + k >= s.size() || (byte(i + k) & 0xC0) != 0x80) { *len = 1; return b0; }
        cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    *len = need + 1;
    return cp;
}

} // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    size_t i = 0;
    while (i < text.size()) {
        size_t len = 1;
        const uint32_t cp = decode_utf8(text, i, &len);
        if (is_unicode_space(cp)) {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else if (cp < 0x80) {
            current.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(text[i]))));
        } else {
            current.append(text, i, len);
        }
        i += len;
    }
    if (!current.empty()) tokens.push_back(current);
    return tokens;
}

std::vector<std::string> strip_specials(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        std::string cleaned;
        for (char c : token)
            if (std::isalnum(static_cast<unsigned char>(c))) cleaned.push_back(c);
        if (!cleaned.empty()) out.push_back(std::move(cleaned));
    }
    return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordList& stoplist) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens)
        if (stoplist.find(token) == stoplist.end()) out.push_back(token);
    return out;
}

std::vector<std::string> pos_filter(const std::vector<std::string>& tokens,
                                    const PosLexicon& lexicon) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        const auto it = lexicon.find(token);
        if (it == lexicon.end() || it->second.count(PosTag::noun) != 0 ||
            it->second.count(PosTag::adjective) != 0)
            out.push_back(token);
    }
    return out;
}

TokenSequence preprocess_pipeline(const ReviewRecord& record, const PreprocessConfig& config) {
    std::vector<std::string> tokens = strip_specials(tokenize(record.text));
    tokens = remove_stopwords(tokens, config.stopword_list);
    if (config.pos_filter_enabled) tokens = pos_filter(tokens, config.pos_lexicon);
    if (config.stemming_enabled)
        for (auto& token : tokens) token = porter_stem(token);
    return TokenSequence{std::move(tokens), record.id};
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

StopwordList load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    StopwordList list;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        for (char c : entry) {
            if (std::isspace(static_cast<unsigned char>(c)) ||
                std::isupper(static_cast<unsigned char>(c)))
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": stopword entries must be lowercase single tokens");
        }
        list.insert(entry);
    }
    return list;
}

PosLexicon load_pos_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open POS lexicon file: " + path);
    PosLexicon lexicon;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": expected `word<TAB>tag[,tag...]`");
        const std::string word = line.substr(0, tab);
        auto& tags = lexicon[word];
        size_t pos = tab + 1;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string name = trim(line.substr(pos, comma - pos));
            if (name.empty())
                throw ParseError(path + ": line " + std::to_string(line_no) + ": empty tag");
            try {
                tags.insert(pos_tag_from_string(name));
            } catch (const ValidationError&) {
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": unknown tag '" + name + "'");
            }
            pos = comma + 1;
        }
    }
    return lexicon;
}

} // namespace microrep
