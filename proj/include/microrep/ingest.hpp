#pragma once

#include <string>
#include <utility>
#include <vector>

#include "microrep/review.hpp"

namespace microrep {

enum class ReviewFormat { jsonl, csv };

/// Why filter_invalid rejected a review.
enum class RejectReason { empty, mostly_usernames, mostly_urls };

std::string to_string(RejectReason r);

struct FilterResult {
    std::vector<ReviewRecord> valid;
    std::vector<std::pair<ReviewRecord, RejectReason>> rejected;
};

/// Load reviews from a JSONL or CSV file (formats documented in the README).
/// Throws IoError if unreadable, ParseError (with line number) on malformed
/// rows, ValidationError on unknown label strings.
std::vector<ReviewRecord> load_reviews(const std::string& path, ReviewFormat format);

/// Write reviews in the JSONL format load_reviews accepts.
void save_reviews_jsonl(const std::vector<ReviewRecord>& reviews, const std::string& path);

/// Reject reviews that are empty, mostly tagged usernames, or mostly URLs.
/// A review is rejected when more than half of its whitespace tokens trigger
/// the username/URL pattern. Order is preserved in both outputs.
FilterResult filter_invalid(const std::vector<ReviewRecord>& reviews);

/// Drop exact-duplicate texts, keeping the first occurrence. Optional step;
/// the upstream dedup criterion is not part of the pipeline contract.
std::vector<ReviewRecord> dedup_exact_text(const std::vector<ReviewRecord>& reviews);

/// Seeded shuffle + ratio partition. train gets floor(n*train_ratio),
/// validation floor(n*val_ratio), the remainder goes to test. All records
/// must be labeled.
DatasetSplit split_dataset(const std::vector<ReviewRecord>& reviews, double train_ratio,
                           double val_ratio, uint64_t seed);

/// Deterministic synthetic review corpus: texts mix class-opinion words with
/// neutral filler so the two classes are learnably separable. The class
/// lexicon always contributes at least 60% of each text's opinion tokens.
std::vector<ReviewRecord> generate_synthetic_corpus(const CorpusSpec& spec);

/// Opinion lexicons used by the generator, exposed for tests and audits.
const std::vector<std::string>& positive_lexicon();
const std::vector<std::string>& negative_lexicon();
const std::vector<std::string>& filler_lexicon();

} // namespace microrep
