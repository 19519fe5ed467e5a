#include "microrep/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "microrep/error.hpp"
#include "microrep/rng.hpp"

namespace microrep {

std::string to_string(Sentiment s) {
    return s == Sentiment::positive ? "positive" : "negative";
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::empty: return "empty";
        case RejectReason::mostly_usernames: return "mostly_usernames";
        case RejectReason::mostly_urls: return "mostly_urls";
    }
    return "unknown";
}

static Sentiment parse_label(const std::string& s, size_t line_no) {
    if (s == "positive") return Sentiment::positive;
    if (s == "negative") return Sentiment::negative;
    throw ValidationError("line " + std::to_string(line_no) + ": unknown label \"" + s +
                          "\" (expected \"positive\" or \"negative\")");
}

// ---------------------------------------------------------------------------
// JSONL

static std::vector<ReviewRecord> load_jsonl(std::istream& in, const std::string& path) {
    std::vector<ReviewRecord> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
        auto need = [&](const char* key) -> std::string {
            if (!j.contains(key) || !j[key].is_string())
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": missing or non-string \"" + key + "\"");
            return j[key].get<std::string>();
        };
        ReviewRecord r;
        r.id = need("id");
        r.provider = need("provider");
        r.text = need("text");
        if (j.contains("label") && !j["label"].is_null())
            r.label = parse_label(j["label"].get<std::string>(), line_no);
        if (j.contains("source") && !j["source"].is_null())
            r.source = j["source"].get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV, RFC-4180 quoting. Quoted fields may contain commas, escaped quotes
// ("") and line breaks; the reported line number is the row's first line.

static std::vector<std::vector<std::string>> parse_csv(const std::string& content,
                                                       const std::string& path,
                                                       std::vector<size_t>& row_lines) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    size_t line_no = 1, row_line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row_lines.push_back(row_line);
        row.clear();
        row_started = false;
    };

    for (size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (!row_started) {
            row_started = true;
            row_line = line_no;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty())
                throw ParseError(path + ": line " + std::to_string(line_no) +
                                 ": quote inside unquoted field");
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
            ++line_no;
        } else {
            field += c;
        }
    }
    if (in_quotes)
        throw ParseError(path + ": line " + std::to_string(row_line) + ": unterminated quote");
    if (row_started || !field.empty()) end_row();
    return rows;
}

static std::vector<ReviewRecord> load_csv(const std::string& content, const std::string& path) {
    std::vector<size_t> row_lines;
    auto rows = parse_csv(content, path, row_lines);
    if (rows.empty()) throw ParseError(path + ": missing CSV header");
    const std::vector<std::string> header = {"id", "provider", "text", "label", "source"};
    if (rows[0] != header)
        throw ParseError(path + ": line 1: expected header id,provider,text,label,source");
    std::vector<ReviewRecord> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& cells = rows[i];
        if (cells.size() == 1 && cells[0].empty()) continue; // trailing blank line
        if (cells.size() != 5)
            throw ParseError(path + ": line " + std::to_string(row_lines[i]) + ": expected 5 fields, got " +
                             std::to_string(cells.size()));
        ReviewRecord r;
        r.id = cells[0];
        r.provider = cells[1];
        r.text = cells[2];
        if (!cells[3].empty()) r.label = parse_label(cells[3], row_lines[i]);
        r.source = cells[4];
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ReviewRecord> load_reviews(const std::string& path, ReviewFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    if (format == ReviewFormat::jsonl) return load_jsonl(in, path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_csv(buf.str(), path);
}

void save_reviews_jsonl(const std::vector<ReviewRecord>& reviews, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : reviews) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["provider"] = r.provider;
        j["text"] = r.text;
        if (r.label) j["label"] = to_string(*r.label);
        if (!r.source.empty()) j["source"] = r.source;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Invalid-review filter

static std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> toks;
    std::istringstream iss(text);
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

static bool looks_like_url(const std::string& t) {
    return t.rfind("http://", 0) == 0 || t.rfind("https://", 0) == 0 || t.rfind("www.", 0) == 0;
}

FilterResult filter_invalid(const std::vector<ReviewRecord>& reviews) {
    FilterResult result;
    for (const auto& r : reviews) {
        const auto toks = whitespace_tokens(r.text);
        if (toks.empty()) {
            result.rejected.emplace_back(r, RejectReason::empty);
            continue;
        }
        size_t usernames = 0, urls = 0;
        for (const auto& t : toks) {
            if (t[0] == '@') ++usernames;
            else if (looks_like_url(t)) ++urls;
        }
        if (2 * usernames > toks.size()) {
            result.rejected.emplace_back(r, RejectReason::mostly_usernames);
        } else if (2 * urls > toks.size()) {
            result.rejected.emplace_back(r, RejectReason::mostly_urls);
        } else {
            result.valid.push_back(r);
        }
    }
    return result;
}

std::vector<ReviewRecord> dedup_exact_text(const std::vector<ReviewRecord>& reviews) {
    std::vector<ReviewRecord> out;
    std::unordered_set<std::string> seen;
    for (const auto& r : reviews) {
        if (seen.insert(r.text).second) out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Split

DatasetSplit split_dataset(const std::vector<ReviewRecord>& reviews, double train_ratio,
                           double val_ratio, uint64_t seed) {
    if (!(train_ratio > 0.0) || val_ratio < 0.0 || train_ratio + val_ratio >= 1.0)
        throw ArgumentError("split_dataset: ratios must satisfy train > 0, val >= 0, train+val < 1");
    for (const auto& r : reviews) {
        if (!r.label)
            throw ValidationError("split_dataset: unlabeled record \"" + r.id + "\"");
    }
    std::vector<ReviewRecord> shuffled = reviews;
    SplitMix64 rng(seed);
    shuffle(shuffled, rng);

    const size_t n = shuffled.size();
    const size_t n_train = static_cast<size_t>(std::floor(train_ratio * static_cast<double>(n)));
    const size_t n_val = static_cast<size_t>(std::floor(val_ratio * static_cast<double>(n)));

    DatasetSplit split;
    split.seed = seed;
    split.train.assign(shuffled.begin(), shuffled.begin() + n_train);
    split.validation.assign(shuffled.begin() + n_train, shuffled.begin() + n_train + n_val);
    split.test.assign(shuffled.begin() + n_train + n_val, shuffled.end());
    return split;
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

const std::vector<std::string> kPositiveLexicon = {
    "excellent", "great", "amazing", "reliable", "fast", "responsive", "stable",
    "intuitive", "secure", "scalable", "affordable", "robust", "seamless",
    "helpful", "impressive", "smooth", "flexible", "efficient", "consistent",
    "powerful", "solid", "fantastic", "wonderful", "superb",
};

const std::vector<std::string> kNegativeLexicon = {
    "terrible", "awful", "slow", "unreliable", "buggy", "confusing", "broken",
    "overpriced", "unstable", "clunky", "frustrating", "laggy", "horrible",
    "poor", "flaky", "insecure", "cumbersome", "inconsistent", "disappointing",
    "useless", "painful", "fragile", "opaque", "dreadful",
};

const std::vector<std::string> kFillerLexicon = {
    "service",  "api",        "dashboard", "deployment",    "cluster",
    "database", "storage",    "latency",   "endpoint",      "interface",
    "docs",     "pipeline",   "region",    "instance",      "account",
    "billing",  "console",    "metric",    "queue",         "workload",
    "platform", "the",        "a",         "of",            "for",
    "runtime",  "network",    "capacity",  "bandwidth",     "throughput",
    "uptime",   "release",    "support",   "team",          "setup",
};

} // namespace

const std::vector<std::string>& positive_lexicon() { return kPositiveLexicon; }
const std::vector<std::string>& negative_lexicon() { return kNegativeLexicon; }
const std::vector<std::string>& filler_lexicon() { return kFillerLexicon; }

static std::string synth_text(Sentiment label, size_t min_tokens, size_t max_tokens,
                              SplitMix64& rng) {
    const auto& own = label == Sentiment::positive ? kPositiveLexicon : kNegativeLexicon;
    const auto& other = label == Sentiment::positive ? kNegativeLexicon : kPositiveLexicon;

    const size_t len = min_tokens + rng.next_below(max_tokens - min_tokens + 1);
    const size_t n_opinion = std::max<size_t>(1, static_cast<size_t>(std::llround(0.4 * len)));
    // At most 40% of opinion tokens come from the opposite lexicon, so the
    // class lexicon keeps a >=60% share and the corpus stays separable.
    const size_t n_off = static_cast<size_t>(rng.next_double(0.0, 0.4) * n_opinion);

    std::vector<std::string> tokens;
    tokens.reserve(len);
    for (size_t i = 0; i < n_opinion - n_off; ++i)
        tokens.push_back(own[rng.next_below(own.size())]);
    for (size_t i = 0; i < n_off; ++i)
        tokens.push_back(other[rng.next_below(other.size())]);
    while (tokens.size() < len)
        tokens.push_back(kFillerLexicon[rng.next_below(kFillerLexicon.size())]);
    shuffle(tokens, rng);

    std::string text;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        text += tokens[i];
    }
    if (!text.empty()) {
        text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        text += '.';
    }
    return text;
}

std::vector<ReviewRecord> generate_synthetic_corpus(const CorpusSpec& spec) {
    if (spec.n_reviews == 0) throw ArgumentError("synthetic corpus: n_reviews must be positive");
    if (!(spec.positive_ratio > 0.0 && spec.positive_ratio < 1.0))
        throw ArgumentError("synthetic corpus: positive_ratio must lie in (0,1)");
    if (spec.min_tokens == 0 || spec.min_tokens > spec.max_tokens)
        throw ArgumentError("synthetic corpus: need 1 <= min_tokens <= max_tokens");
    if (spec.providers.empty())
        throw ArgumentError("synthetic corpus: provider list must not be empty");

    const size_t n_pos = static_cast<size_t>(
        std::llround(spec.positive_ratio * static_cast<double>(spec.n_reviews)));
    if (n_pos == 0 || n_pos == spec.n_reviews)
        throw ArgumentError("synthetic corpus: positive_ratio must yield at least one record per class");

    std::vector<Sentiment> labels(spec.n_reviews, Sentiment::negative);
    std::fill(labels.begin(), labels.begin() + n_pos, Sentiment::positive);
    SplitMix64 rng(spec.seed);
    shuffle(labels, rng);

    std::vector<ReviewRecord> out;
    out.reserve(spec.n_reviews);
    for (size_t i = 0; i < spec.n_reviews; ++i) {
        ReviewRecord r;
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "synth-%06zu", i + 1);
        r.id = idbuf;
        r.provider = spec.providers[rng.next_below(spec.providers.size())];
        r.label = labels[i];
        r.text = synth_text(labels[i], spec.min_tokens, spec.max_tokens, rng);
        r.source = "synthetic";
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace microrep
