#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace microrep {

/// Binary sentiment polarity. Project-wide class-index convention:
/// positive = class 0, negative = class 1.
enum class Sentiment : uint8_t { positive = 0, negative = 1 };

inline size_t class_index(Sentiment s) { return s == Sentiment::positive ? 0 : 1; }
inline Sentiment sentiment_from_index(size_t i) {
    return i == 0 ? Sentiment::positive : Sentiment::negative;
}

std::string to_string(Sentiment s);

/// One raw user review of a microservice provider.
struct ReviewRecord {
    std::string id;
    std::string provider;
    std::string text;
    std::optional<Sentiment> label;
    std::string source;
};

/// Train/validation/test partition of a labeled dataset.
struct DatasetSplit {
    std::vector<ReviewRecord> train;
    std::vector<ReviewRecord> validation;
    std::vector<ReviewRecord> test;
    uint64_t seed = 0;
};

/// Parameters of the seeded synthetic-corpus generator.
struct CorpusSpec {
    size_t n_reviews = 2000;
    double positive_ratio = 0.95;
    uint64_t seed = 1;
    size_t min_tokens = 8;
    size_t max_tokens = 30;
    std::vector<std::string> providers = {"api-hub", "cloudlet", "svc-mesh", "webmicro"};
};

} // namespace microrep
