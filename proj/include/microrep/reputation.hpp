#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "microrep/embedding.hpp"
#include "microrep/metrics.hpp"
#include "microrep/model.hpp"
#include "microrep/preprocess.hpp"
#include "microrep/review.hpp"

namespace microrep {

struct ReputationReport {
    std::string provider;
    size_t positive_count = 0;
    size_t negative_count = 0;
    double nbr = 0.0;  // exact value in [-100, 100]
};

// 100 * (pos - neg) / (pos + neg); ArgumentError when both counts are zero.
double nbr(size_t positive_count, size_t negative_count);

// Report formatting: two decimals, truncated toward zero, so 2039/112
// prints as 89.58 and 2031/104 as 90.25.
std::string format_nbr(double value);

// Evaluation-mode score from correctly classified counts: TP as the
// positive tally, TN as the negative one.
double nbr_from_confusion(const ConfusionMatrix& cm);

struct ReputationOutcome {
    std::vector<ReputationReport> providers;  // lexicographic by provider name
    ReputationReport community;               // aggregate over all classified reviews
    std::vector<std::string> warnings;        // providers omitted: zero classifiable reviews
};

// Classify every review (validity filter -> preprocess -> encode -> predict)
// and tally PREDICTED labels per provider plus the "community" aggregate.
// Gold labels are never consulted. ValidationError when no review survives
// the validity filter.
ReputationOutcome score_providers(const std::vector<ReviewRecord>& reviews,
                                  const ModelParams& params, const Vocabulary& vocab,
                                  const PreprocessConfig& preprocess, size_t max_len,
                                  size_t batch_size = 64);

// JSON array of {provider, positive, negative, nbr}; community entry last.
std::string reputation_to_json(const ReputationOutcome& outcome);

// Fixed-width table, one row per provider plus community; warning lines last.
std::string render_reputation_table(const ReputationOutcome& outcome);

} // namespace microrep
