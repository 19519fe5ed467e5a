#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "microrep/error.hpp"
#include "microrep/metrics.hpp"
#include "microrep/rng.hpp"

using namespace microrep;

namespace {

std::vector<Sentiment> to_labels(const std::vector<int>& v) {
    std::vector<Sentiment> out;
    for (int x : v) out.push_back(x == 0 ? Sentiment::positive : Sentiment::negative);
    return out;
}

// Independent recount, written directly from the metric definitions.
struct Brute {
    size_t tp = 0, tn = 0, fp = 0, fn = 0;
    Brute(const std::vector<Sentiment>& preds, const std::vector<Sentiment>& golds,
          Sentiment target) {
        for (size_t i = 0; i < preds.size(); ++i) {
            bool p = preds[i] == target, g = golds[i] == target;
            if (p && g) ++tp;
            else if (p && !g) ++fp;
            else if (!p && g) ++fn;
            else ++tn;
        }
    }
    double precision() const { return tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp); }
    double recall() const { return tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn); }
    double f1() const {
        double p = precision(), r = recall();
        return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    }
    double accuracy() const { return double(tp + tn) / double(tp + tn + fp + fn); }
};

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("confusion_from_pairs tallies the positive class") {
    auto preds = to_labels({0, 0, 1, 0, 1});
    auto golds = to_labels({0, 1, 1, 0, 0});
    ConfusionMatrix cm = confusion_from_pairs(preds, golds);
    CHECK(cm.tp == 2);
    CHECK(cm.fp == 1);
    CHECK(cm.fn == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.total() == 5);

    CHECK_THROWS_AS((void)confusion_from_pairs(preds, to_labels({0})), ArgumentError);
    CHECK_THROWS_AS((void)confusion_from_pairs({}, {}), ArgumentError);
}

TEST_CASE("swap_roles exchanges the target class") {
    ConfusionMatrix cm{8, 6, 2, 4};
    ConfusionMatrix sw = swap_roles(cm);
    CHECK(sw.tp == 6);
    CHECK(sw.tn == 8);
    CHECK(sw.fp == 4);
    CHECK(sw.fn == 2);
}

TEST_CASE("perfect classifier scores all ones") {
    BasicMetrics m = compute_metrics(ConfusionMatrix{5, 5, 0, 0});
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
    CHECK(m.flags.empty());
}

TEST_CASE("worked confusion matrix") {
    // TP=8, FP=2, FN=4, TN=6.
    BasicMetrics m = compute_metrics(ConfusionMatrix{8, 6, 2, 4});
    CHECK(m.accuracy == doctest::Approx(0.70).epsilon(1e-12));
    CHECK(m.precision == doctest::Approx(0.80).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.f1 == doctest::Approx(8.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("zero denominators are defined to zero and flagged") {
    // no positive predictions: tp=0, fp=0
    BasicMetrics m = compute_metrics(ConfusionMatrix{0, 6, 0, 4});
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK_FALSE(m.flags.empty());

    CHECK_THROWS_AS((void)compute_metrics(ConfusionMatrix{0, 0, 0, 0}), ArgumentError);
}

TEST_CASE("accuracy survives role swapping, precision and recall do not") {
    ConfusionMatrix cm{8, 6, 2, 4};
    BasicMetrics a = compute_metrics(cm);
    BasicMetrics b = compute_metrics(swap_roles(cm));
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.precision != b.precision);  // 0.8 vs 0.6
    CHECK(a.recall != b.recall);        // 2/3 vs 0.75
}

TEST_CASE("perfectly predicted report is all ones with supports") {
    auto golds = to_labels({0, 0, 0, 1, 1});
    MetricsReport r = per_class_report(golds, golds);
    CHECK(r.accuracy == 1.0);
    CHECK(r.positive.precision == 1.0);
    CHECK(r.positive.recall == 1.0);
    CHECK(r.positive.f1 == 1.0);
    CHECK(r.positive.support == 3);
    CHECK(r.negative.support == 2);
    CHECK(r.macro.f1 == 1.0);
    CHECK(r.weighted.f1 == 1.0);
}

TEST_CASE("all-positive predictor on seven and three") {
    auto preds = to_labels({0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto golds = to_labels({0, 0, 0, 0, 0, 0, 0, 1, 1, 1});
    MetricsReport r = per_class_report(preds, golds);
    CHECK(r.positive.recall == 1.0);
    CHECK(r.negative.recall == 0.0);
    CHECK(r.accuracy == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(r.weighted.recall - 0.7) < 1e-12);
    CHECK(r.positive.support == 7);
    CHECK(r.negative.support == 3);
    CHECK_FALSE(r.flags.empty());  // negative precision is 0/0
}

TEST_CASE("report matches a brute-force recount on random vectors") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 1 + rng.next_below(50);
        std::vector<Sentiment> preds, golds;
        for (size_t i = 0; i < n; ++i) {
            preds.push_back(rng.next_below(2) == 0 ? Sentiment::positive : Sentiment::negative);
            golds.push_back(rng.next_below(2) == 0 ? Sentiment::positive : Sentiment::negative);
        }
        Brute pos(preds, golds, Sentiment::positive);
        Brute neg(preds, golds, Sentiment::negative);

        ConfusionMatrix cm = confusion_from_pairs(preds, golds);
        CHECK(cm.tp == pos.tp);
        CHECK(cm.fp == pos.fp);
        CHECK(cm.fn == pos.fn);
        CHECK(cm.tn == pos.tn);

        MetricsReport r = per_class_report(preds, golds);
        CHECK(r.positive.precision == pos.precision());
        CHECK(r.positive.recall == pos.recall());
        CHECK(r.positive.f1 == pos.f1());
        CHECK(r.negative.precision == neg.precision());
        CHECK(r.negative.recall == neg.recall());
        CHECK(r.negative.f1 == neg.f1());
        CHECK(r.accuracy == pos.accuracy());
        CHECK(r.positive.support == pos.tp + pos.fn);
        CHECK(r.negative.support == neg.tp + neg.fn);

        double sp = double(r.positive.support), sn = double(r.negative.support);
        CHECK(std::abs(r.weighted.f1 - (sp * r.positive.f1 + sn * r.negative.f1) / (sp + sn)) <
              1e-12);
        CHECK(std::abs(r.macro.precision -
                       (r.positive.precision + r.negative.precision) / 2.0) < 1e-12);
    }
}

TEST_CASE("f1 is the harmonic mean of precision and recall") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        ConfusionMatrix cm{rng.next_below(20) + 1, rng.next_below(20), rng.next_below(20),
                           rng.next_below(20)};
        BasicMetrics m = compute_metrics(cm);
        if (m.precision + m.recall == 0.0) continue;
        CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
        CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
        if (m.precision == m.recall) CHECK(std::abs(m.f1 - m.precision) < 1e-12);
    }
}

TEST_CASE("single-class gold weighted average equals that class's metrics") {
    auto preds = to_labels({0, 1, 0, 0});
    auto golds = to_labels({0, 0, 0, 0});
    MetricsReport r = per_class_report(preds, golds);
    CHECK(r.negative.support == 0);
    CHECK(r.weighted.precision == r.positive.precision);
    CHECK(r.weighted.recall == r.positive.recall);
    CHECK(r.weighted.f1 == r.positive.f1);
}

TEST_CASE("format_metric rounds half to even at two decimals") {
    CHECK(format_metric(1.0) == "1.00");
    CHECK(format_metric(0.0) == "0.00");
    CHECK(format_metric(0.125) == "0.12");  // 12.5 -> 12 (even)
    CHECK(format_metric(0.375) == "0.38");  // 37.5 -> 38 (even)
    CHECK(format_metric(0.925) == "0.92");
    CHECK(format_metric(2.0 / 3.0) == "0.67");
    CHECK(format_metric(0.7) == "0.70");
}

TEST_CASE("format_metric percent mode prints whole percents") {
    CHECK(format_metric(0.91, true) == "91");
    CHECK(format_metric(1.0, true) == "100");
    CHECK(format_metric(0.0, true) == "0");
    CHECK(format_metric(0.675, true) == "68");
}

TEST_CASE("rendered report is deterministic with fixed-width cells") {
    auto golds = to_labels({0, 0, 0, 1, 1});
    MetricsReport r = per_class_report(golds, golds);
    std::string a = render_report(r);
    std::string b = render_report(r);
    CHECK(a == b);
    CHECK(a.find("positive") != std::string::npos);
    CHECK(a.find("negative") != std::string::npos);
    CHECK(a.find("accuracy") != std::string::npos);
    CHECK(a.find("macro avg") != std::string::npos);
    CHECK(a.find("weighted avg") != std::string::npos);
    CHECK(a.find("1.00") != std::string::npos);
    CHECK(a.find("0.9") == std::string::npos);  // every cell is exactly 1.00
}

TEST_CASE("report notes flagged zero denominators") {
    auto preds = to_labels({1, 1, 1});
    auto golds = to_labels({1, 1, 1});
    MetricsReport r = per_class_report(preds, golds);
    std::string text = render_report(r);
    CHECK(text.find("note:") != std::string::npos);
}

TEST_CASE("json report carries every block") {
    auto preds = to_labels({0, 1, 0, 0, 1});
    auto golds = to_labels({0, 0, 0, 1, 1});
    MetricsReport r = per_class_report(preds, golds);
    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["accuracy"].get<double>() == r.accuracy);
    CHECK(j["per_class"]["positive"]["precision"].get<double>() == r.positive.precision);
    CHECK(j["per_class"]["positive"]["support"].get<size_t>() == r.positive.support);
    CHECK(j["per_class"]["negative"]["recall"].get<double>() == r.negative.recall);
    CHECK(j["weighted"]["f1"].get<double>() == r.weighted.f1);
    CHECK(j["macro"]["precision"].get<double>() == r.macro.precision);
    CHECK(j["flags"].is_array());
}

} // TEST_SUITE
