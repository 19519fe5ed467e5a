#include "microrep/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "microrep/error.hpp"

namespace microrep {

ConfusionMatrix confusion_from_pairs(const std::vector<Sentiment>& preds,
                                     const std::vector<Sentiment>& golds) {
    if (preds.size() != golds.size())
        throw ArgumentError("confusion_from_pairs: preds and golds differ in length");
    if (preds.empty()) throw ArgumentError("confusion_from_pairs: empty input");
    ConfusionMatrix cm;
    for (size_t i = 0; i < preds.size(); ++i) {
        const bool gold_pos = golds[i] == Sentiment::positive;
        const bool pred_pos = preds[i] == Sentiment::positive;
        if (gold_pos && pred_pos) ++cm.tp;
        else if (!gold_pos && !pred_pos) ++cm.tn;
        else if (!gold_pos && pred_pos) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

ConfusionMatrix swap_roles(const ConfusionMatrix& cm) {
    return {cm.tn, cm.tp, cm.fn, cm.fp};
}

namespace {

// 0/0 -> 0 with a note; a plain zero numerator over a nonzero denominator
// is an ordinary 0 and is not flagged.
double safe_ratio(size_t num, size_t den, const char* name,
                  std::vector<std::string>& flags) {
    if (den == 0) {
        flags.push_back(std::string(name) + " 0/0 defined as 0");
        return 0.0;
    }
    return double(num) / double(den);
}

double f1_from(double precision, double recall, const char* name,
               std::vector<std::string>& flags) {
    if (precision + recall == 0.0) {
        flags.push_back(std::string(name) + " 0/0 defined as 0");
        return 0.0;
    }
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace

BasicMetrics compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw ArgumentError("compute_metrics: all-zero confusion matrix");
    BasicMetrics m;
    m.accuracy = double(cm.tp + cm.tn) / double(cm.total());
    m.precision = safe_ratio(cm.tp, cm.tp + cm.fp, "precision", m.flags);
    m.recall = safe_ratio(cm.tp, cm.tp + cm.fn, "recall", m.flags);
    m.f1 = f1_from(m.precision, m.recall, "f1", m.flags);
    return m;
}

MetricsReport per_class_report(const std::vector<Sentiment>& preds,
                               const std::vector<Sentiment>& golds) {
    const ConfusionMatrix pos_cm = confusion_from_pairs(preds, golds);
    const ConfusionMatrix neg_cm = swap_roles(pos_cm);

    MetricsReport report;
    report.positive.support = pos_cm.tp + pos_cm.fn;
    report.negative.support = neg_cm.tp + neg_cm.fn;

    std::vector<std::string> pos_flags, neg_flags;
    report.positive.precision =
        safe_ratio(pos_cm.tp, pos_cm.tp + pos_cm.fp, "positive precision", pos_flags);
    report.positive.recall =
        safe_ratio(pos_cm.tp, pos_cm.tp + pos_cm.fn, "positive recall", pos_flags);
    report.positive.f1 =
        f1_from(report.positive.precision, report.positive.recall, "positive f1", pos_flags);
    report.negative.precision =
        safe_ratio(neg_cm.tp, neg_cm.tp + neg_cm.fp, "negative precision", neg_flags);
    report.negative.recall =
        safe_ratio(neg_cm.tp, neg_cm.tp + neg_cm.fn, "negative recall", neg_flags);
    report.negative.f1 =
        f1_from(report.negative.precision, report.negative.recall, "negative f1", neg_flags);
    report.flags = pos_flags;
    report.flags.insert(report.flags.end(), neg_flags.begin(), neg_flags.end());

    report.accuracy = double(pos_cm.tp + pos_cm.tn) / double(pos_cm.total());
    report.macro.precision = (report.positive.precision + report.negative.precision) / 2.0;
    report.macro.recall = (report.positive.recall + report.negative.recall) / 2.0;
    report.macro.f1 = (report.positive.f1 + report.negative.f1) / 2.0;

    const double total = double(report.positive.support + report.negative.support);
    const double wp = double(report.positive.support), wn = double(report.negative.support);
    report.weighted.precision =
        (wp * report.positive.precision + wn * report.negative.precision) / total;
    report.weighted.recall = (wp * report.positive.recall + wn * report.negative.recall) / total;
    report.weighted.f1 = (wp * report.positive.f1 + wn * report.negative.f1) / total;
    return report;
}

std::string format_metric(double value, bool percent) {
    // llrint under the default rounding mode is round-half-even.
    const long long scaled = std::llrint(value * 100.0);
    char buf[32];
    if (percent)
        std::snprintf(buf, sizeof buf, "%lld", scaled);
    else
        std::snprintf(buf, sizeof buf, "%lld.%02lld", scaled / 100, std::llabs(scaled % 100));
    return buf;
}

namespace {

std::string pad_left(const std::string& s, size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

void render_row(std::ostringstream& out, const std::string& label, const std::string& p,
                const std::string& r, const std::string& f1, const std::string& support) {
    out << pad_left(label, 12) << pad_left(p, 11) << pad_left(r, 10) << pad_left(f1, 10)
        << pad_left(support, 10) << '\n';
}

} // namespace

std::string render_report(const MetricsReport& report, bool percent) {
    const size_t total = report.positive.support + report.negative.support;
    std::ostringstream out;
    render_row(out, "", "precision", "recall", "f1", "support");
    out << '\n';
    render_row(out, "positive", format_metric(report.positive.precision, percent),
               format_metric(report.positive.recall, percent),
               format_metric(report.positive.f1, percent),
               std::to_string(report.positive.support));
    render_row(out, "negative", format_metric(report.negative.precision, percent),
               format_metric(report.negative.recall, percent),
               format_metric(report.negative.f1, percent),
               std::to_string(report.negative.support));
    out << '\n';
    render_row(out, "accuracy", "", "", format_metric(report.accuracy, percent),
               std::to_string(total));
    render_row(out, "macro avg", format_metric(report.macro.precision, percent),
               format_metric(report.macro.recall, percent),
               format_metric(report.macro.f1, percent), std::to_string(total));
    render_row(out, "weighted avg", format_metric(report.weighted.precision, percent),
               format_metric(report.weighted.recall, percent),
               format_metric(report.weighted.f1, percent), std::to_string(total));
    for (const auto& flag : report.flags) out << "note: " << flag << '\n';
    return out.str();
}

std::string report_to_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["accuracy"] = report.accuracy;
    j["per_class"]["positive"] = {{"precision", report.positive.precision},
                                  {"recall", report.positive.recall},
                                  {"f1", report.positive.f1},
                                  {"support", report.positive.support}};
    j["per_class"]["negative"] = {{"precision", report.negative.precision},
                                  {"recall", report.negative.recall},
                                  {"f1", report.negative.f1},
                                  {"support", report.negative.support}};
    j["weighted"] = {{"precision", report.weighted.precision},
                     {"recall", report.weighted.recall},
                     {"f1", report.weighted.f1}};
    j["macro"] = {{"precision", report.macro.precision},
                  {"recall", report.macro.recall},
                  {"f1", report.macro.f1}};
    j["flags"] = report.flags;
    return j.dump(2) + "\n";
}

} // namespace microrep
