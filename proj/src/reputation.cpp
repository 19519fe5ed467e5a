#include "microrep/reputation.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "microrep/error.hpp"
#include "microrep/ingest.hpp"

namespace microrep {

double nbr(size_t positive_count, size_t negative_count) {
    if (positive_count + negative_count == 0)
        throw ArgumentError("nbr undefined: both counts are zero");
    const double pos = double(positive_count), neg = double(negative_count);
    return 100.0 * (pos - neg) / (pos + neg);
}

std::string format_nbr(double value) {
    const auto scaled = static_cast<long long>(std::trunc(value * 100.0));
    const long long mag = std::llabs(scaled);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", scaled < 0 ? "-" : "", mag / 100,
                  mag % 100);
    return buf;
}

double nbr_from_confusion(const ConfusionMatrix& cm) { return nbr(cm.tp, cm.tn); }

ReputationOutcome score_providers(const std::vector<ReviewRecord>& reviews,
                                  const ModelParams& params, const Vocabulary& vocab,
                                  const PreprocessConfig& preprocess, size_t max_len,
                                  size_t batch_size) {
    if (reviews.empty()) throw ArgumentError("score_providers: no reviews given");

    const FilterResult filtered = filter_invalid(reviews);
    if (filtered.valid.empty())
        throw ValidationError("score_providers: no review survived the validity filter");

    std::vector<PaddedSample> samples;
    samples.reserve(filtered.valid.size());
    for (const auto& record : filtered.valid)
        samples.push_back(
            encode_and_pad(preprocess_pipeline(record, preprocess), vocab, max_len));
    const std::vector<Prediction> predictions = predict(samples, params, batch_size);

    // std::map keeps provider order lexicographic and thus deterministic.
    std::map<std::string, std::pair<size_t, size_t>> counts;
    for (size_t i = 0; i < filtered.valid.size(); ++i) {
        auto& [pos, neg] = counts[filtered.valid[i].provider];
        (predictions[i].label == Sentiment::positive ? pos : neg)++;
    }

    ReputationOutcome outcome;
    for (const auto& [provider, tally] : counts) {
        ReputationReport report;
        report.provider = provider;
        report.positive_count = tally.first;
        report.negative_count = tally.second;
        report.nbr = nbr(tally.first, tally.second);
        outcome.providers.push_back(std::move(report));
        outcome.community.positive_count += tally.first;
        outcome.community.negative_count += tally.second;
    }
    outcome.community.provider = "community";
    outcome.community.nbr =
        nbr(outcome.community.positive_count, outcome.community.negative_count);

    // Providers whose every review was rejected get a warning, not a row.
    std::map<std::string, size_t> rejected_only;
    for (const auto& [record, reason] : filtered.rejected) {
        (void)reason;
        if (!counts.count(record.provider)) rejected_only[record.provider]++;
    }
    for (const auto& [provider, n] : rejected_only)
        outcome.warnings.push_back("provider '" + provider + "' omitted: " +
                                   std::to_string(n) + " review(s), none classifiable");
    return outcome;
}

namespace {

// The JSON nbr field carries the same two-decimal value the table prints.
double nbr_2dp(double value) { return std::trunc(value * 100.0) / 100.0; }

nlohmann::ordered_json report_json(const ReputationReport& r) {
    return {{"provider", r.provider},
            {"positive", r.positive_count},
            {"negative", r.negative_count},
            {"nbr", nbr_2dp(r.nbr)}};
}

std::string pad_left(const std::string& s, size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void render_row(std::ostringstream& out, const std::string& provider, const std::string& pos,
                const std::string& neg, const std::string& score) {
    out << pad_right(provider, 24) << pad_left(pos, 10) << pad_left(neg, 10)
        << pad_left(score, 10) << '\n';
}

} // namespace

std::string reputation_to_json(const ReputationOutcome& outcome) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& report : outcome.providers) arr.push_back(report_json(report));
    arr.push_back(report_json(outcome.community));
    return arr.dump(2) + "\n";
}

std::string render_reputation_table(const ReputationOutcome& outcome) {
    std::ostringstream out;
    render_row(out, "provider", "positive", "negative", "nbr");
    for (const auto& report : outcome.providers)
        render_row(out, report.provider, std::to_string(report.positive_count),
                   std::to_string(report.negative_count), format_nbr(report.nbr));
    render_row(out, outcome.community.provider,
               std::to_string(outcome.community.positive_count),
               std::to_string(outcome.community.negative_count),
               format_nbr(outcome.community.nbr));
    for (const auto& warning : outcome.warnings) out << "warning: " << warning << '\n';
    return out.str();
}

} // namespace microrep
