#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "microrep/review.hpp"

namespace microrep {

// Positive-class confusion counts: "positive" is the target class, so
// tp = gold positive predicted positive, fp = gold negative predicted
// positive, and so on.
struct ConfusionMatrix {
    size_t tp = 0;
    size_t tn = 0;
    size_t fp = 0;
    size_t fn = 0;

    size_t total() const { return tp + tn + fp + fn; }
};

ConfusionMatrix confusion_from_pairs(const std::vector<Sentiment>& preds,
                                     const std::vector<Sentiment>& golds);

// Swap the target-class role: the matrix for "negative as target".
ConfusionMatrix swap_roles(const ConfusionMatrix& cm);

struct BasicMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<std::string> flags;  // which 0/0 denominators were defined to 0
};

// accuracy=(tp+tn)/total, precision=tp/(tp+fp), recall=tp/(tp+fn),
// f1=2PR/(P+R); 0/0 denominators yield 0 and add a flag. All-zero
// matrix -> ArgumentError.
BasicMetrics compute_metrics(const ConfusionMatrix& cm);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    size_t support = 0;
};

struct AverageMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    ClassMetrics positive;
    ClassMetrics negative;
    double accuracy = 0.0;
    AverageMetrics macro;     // unweighted mean over the two classes
    AverageMetrics weighted;  // support-weighted mean over the two classes
    std::vector<std::string> flags;
};

// Per-class metrics with each class in turn as the target, plus macro and
// support-weighted averages. Lists must be nonempty and equal length.
MetricsReport per_class_report(const std::vector<Sentiment>& preds,
                               const std::vector<Sentiment>& golds);

// Round-half-even to two decimals ("0.925" -> "0.92"); `percent` prints
// 100x the value with no decimals.
std::string format_metric(double value, bool percent = false);

// Fixed-width classification table; byte-deterministic for equal reports.
std::string render_report(const MetricsReport& report, bool percent = false);

// JSON object with keys accuracy, per_class, weighted, macro, flags.
std::string report_to_json(const MetricsReport& report);

} // namespace microrep
