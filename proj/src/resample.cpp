#include "microrep/resample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "microrep/error.hpp"
#include "microrep/rng.hpp"

namespace microrep {

EmbeddedSample embed_sample(const PaddedSample& sample, const EmbeddingMatrix& embedding) {
    const size_t dim = embedding.dim;
    EmbeddedSample out;
    out.matrix = Matrix(sample.indices.size(), dim);
    for (size_t t = 0; t < sample.indices.size(); ++t) {
        const size_t idx = sample.indices[t];
        if (idx >= embedding.values.rows())
            throw ArgumentError("embed_sample: vocabulary index out of range");
        std::copy(embedding.values.row(idx), embedding.values.row(idx) + dim,
                  out.matrix.row(t));
    }
    out.label = sample.label;
    out.id = sample.source_id;
    return out;
}

namespace {

// (minority class, counts) with validation that both classes are present.
std::pair<size_t, size_t> class_counts(const std::vector<PaddedSample>& samples) {
    size_t pos = 0, neg = 0;
    for (const auto& s : samples) (s.label == Sentiment::positive ? pos : neg)++;
    if (pos == 0 || neg == 0)
        throw ValidationError("resampling requires both classes in the input");
    return {pos, neg};
}

} // namespace

std::vector<PaddedSample> random_oversample(const std::vector<PaddedSample>& samples,
                                            uint64_t seed) {
    const auto [pos, neg] = class_counts(samples);
    const Sentiment minority = pos < neg ? Sentiment::positive : Sentiment::negative;
    const size_t n_minority = std::min(pos, neg);
    const size_t n_needed = std::max(pos, neg) - n_minority;

    std::vector<size_t> minority_at;
    minority_at.reserve(n_minority);
    for (size_t i = 0; i < samples.size(); ++i)
        if (samples[i].label == minority) minority_at.push_back(i);

    std::vector<PaddedSample> out = samples;
    out.reserve(samples.size() + n_needed);
    SplitMix64 rng(seed);
    for (size_t d = 0; d < n_needed; ++d)
        out.push_back(samples[minority_at[rng.next_below(n_minority)]]);
    return out;
}

std::vector<PaddedSample> random_undersample(const std::vector<PaddedSample>& samples,
                                             uint64_t seed) {
    const auto [pos, neg] = class_counts(samples);
    const Sentiment majority = pos >= neg ? Sentiment::positive : Sentiment::negative;
    const size_t n_keep = std::min(pos, neg);

    std::vector<size_t> majority_at;
    for (size_t i = 0; i < samples.size(); ++i)
        if (samples[i].label == majority) majority_at.push_back(i);

    // Partial Fisher-Yates selects without replacement; survivors then
    // return to input order.
    SplitMix64 rng(seed);
    for (size_t i = 0; i < n_keep; ++i) {
        const size_t j = i + rng.next_below(majority_at.size() - i);
        std::swap(majority_at[i], majority_at[j]);
    }
    std::vector<bool> keep(samples.size(), false);
    for (size_t i = 0; i < samples.size(); ++i)
        if (samples[i].label != majority) keep[i] = true;
    for (size_t i = 0; i < n_keep; ++i) keep[majority_at[i]] = true;

    std::vector<PaddedSample> out;
    out.reserve(2 * n_keep);
    for (size_t i = 0; i < samples.size(); ++i)
        if (keep[i]) out.push_back(samples[i]);
    return out;
}

std::vector<PaddedSample> balanced_resample(const std::vector<PaddedSample>& samples,
                                            size_t n_per_class, uint64_t seed) {
    if (n_per_class == 0) throw ArgumentError("n_per_class must be >= 1");
    class_counts(samples);  // both classes required

    std::vector<PaddedSample> out;
    out.reserve(2 * n_per_class);
    SplitMix64 rng(seed);
    for (const Sentiment cls : {Sentiment::positive, Sentiment::negative}) {
        std::vector<size_t> at;
        for (size_t i = 0; i < samples.size(); ++i)
            if (samples[i].label == cls) at.push_back(i);
        if (at.size() <= n_per_class) {
            for (const size_t i : at) out.push_back(samples[i]);
            for (size_t d = at.size(); d < n_per_class; ++d)
                out.push_back(samples[at[rng.next_below(at.size())]]);
        } else {
            for (size_t i = 0; i < n_per_class; ++i) {
                const size_t j = i + rng.next_below(at.size() - i);
                std::swap(at[i], at[j]);
            }
            std::sort(at.begin(), at.begin() + long(n_per_class));
            for (size_t i = 0; i < n_per_class; ++i) out.push_back(samples[at[i]]);
        }
    }
    return out;
}

namespace {

double squared_distance(const Matrix& a, const Matrix& b) {
    double total = 0.0;
    for (size_t n = 0; n < a.size(); ++n) {
        const double d = a.values()[n] - b.values()[n];
        total += d * d;
    }
    return total;
}

// Indices of the k nearest candidates to `center` (self excluded by the
// caller's candidate list); ties by (distance, id, index).
std::vector<size_t> nearest(const std::vector<EmbeddedSample>& pool,
                            const std::vector<size_t>& candidates, const Matrix& center,
                            size_t k) {
    struct Entry {
        double dist;
        const std::string* id;
        size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(candidates.size());
    for (const size_t i : candidates)
        entries.push_back({squared_distance(pool[i].matrix, center), &pool[i].id, i});
    const auto cmp = [](const Entry& a, const Entry& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (*a.id != *b.id) return *a.id < *b.id;
        return a.index < b.index;
    };
    std::partial_sort(entries.begin(), entries.begin() + long(std::min(k, entries.size())),
                      entries.end(), cmp);
    std::vector<size_t> out;
    out.reserve(std::min(k, entries.size()));
    for (size_t i = 0; i < std::min(k, entries.size()); ++i) out.push_back(entries[i].index);
    return out;
}

EmbeddedSample interpolate(const EmbeddedSample& a, const EmbeddedSample& b, double delta,
                           const std::string& id) {
    EmbeddedSample s;
    s.matrix = a.matrix;
    for (size_t n = 0; n < s.matrix.size(); ++n)
        s.matrix.values()[n] += delta * (b.matrix.values()[n] - a.matrix.values()[n]);
    s.label = a.label;
    s.synthetic = true;
    s.parent_ids = {a.id, b.id};
    s.delta = delta;
    s.id = id;
    return s;
}

} // namespace

std::vector<EmbeddedSample> smote(const std::vector<EmbeddedSample>& minority, size_t k,
                                  size_t n_synthetic, uint64_t seed,
                                  const double* forced_delta) {
    if (minority.size() < 2) throw ArgumentError("smote: need at least 2 minority samples");
    if (k < 1 || k > minority.size() - 1)
        throw ArgumentError("smote: k must be in [1, |minority|-1]");
    for (const auto& s : minority) {
        if (s.label != minority[0].label)
            throw ValidationError("smote: minority set mixes classes");
        if (!s.matrix.same_shape(minority[0].matrix))
            throw ArgumentError("smote: embedded shapes disagree");
    }

    // Neighbor lists are fixed per minority point, so compute them once.
    std::vector<size_t> all(minority.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<size_t>> neighbors(minority.size());
    for (size_t i = 0; i < minority.size(); ++i) {
        std::vector<size_t> candidates;
        candidates.reserve(all.size() - 1);
        for (const size_t j : all)
            if (j != i) candidates.push_back(j);
        neighbors[i] = nearest(minority, candidates, minority[i].matrix, k);
    }

    SplitMix64 rng(seed);
    std::vector<EmbeddedSample> out;
    out.reserve(n_synthetic);
    for (size_t s = 0; s < n_synthetic; ++s) {
        const size_t i = s % minority.size();
        const size_t nn = neighbors[i][rng.next_below(neighbors[i].size())];
        const double delta = forced_delta ? *forced_delta : rng.next_double();
        out.push_back(interpolate(minority[i], minority[nn], delta,
                                  "smote-" + std::to_string(s)));
    }
    return out;
}

std::vector<EmbeddedSample> adasyn(const std::vector<EmbeddedSample>& all_samples, size_t k,
                                   double beta, uint64_t seed) {
    if (beta <= 0.0 || beta > 1.0) throw ArgumentError("adasyn: beta must be in (0, 1]");
    size_t pos = 0, neg = 0;
    for (const auto& s : all_samples) (s.label == Sentiment::positive ? pos : neg)++;
    if (pos == 0 || neg == 0)
        throw ValidationError("adasyn: both classes must be present");
    const Sentiment minority_cls = pos < neg ? Sentiment::positive : Sentiment::negative;
    const size_t n_min = std::min(pos, neg), n_maj = std::max(pos, neg);
    if (n_min < 2) throw ArgumentError("adasyn: need at least 2 minority samples");
    if (k < 1 || k > all_samples.size() - 1)
        throw ArgumentError("adasyn: k must be in [1, N-1]");

    std::vector<size_t> minority_at, everyone(all_samples.size());
    for (size_t i = 0; i < all_samples.size(); ++i) {
        everyone[i] = i;
        if (all_samples[i].label == minority_cls) minority_at.push_back(i);
    }

    // r_i: majority share among the k nearest neighbors in the full dataset.
    std::vector<double> r(minority_at.size());
    double r_sum = 0.0;
    for (size_t m = 0; m < minority_at.size(); ++m) {
        const size_t i = minority_at[m];
        std::vector<size_t> candidates;
        candidates.reserve(everyone.size() - 1);
        for (const size_t j : everyone)
            if (j != i) candidates.push_back(j);
        const auto knn = nearest(all_samples, candidates, all_samples[i].matrix, k);
        size_t majority_hits = 0;
        for (const size_t j : knn)
            if (all_samples[j].label != minority_cls) ++majority_hits;
        r[m] = double(majority_hits) / double(k);
        r_sum += r[m];
    }

    const auto g_total = static_cast<size_t>(std::llround(beta * double(n_maj - n_min)));
    std::vector<size_t> g(minority_at.size());
    for (size_t m = 0; m < minority_at.size(); ++m) {
        const double r_hat = r_sum > 0.0 ? r[m] / r_sum : 1.0 / double(minority_at.size());
        g[m] = static_cast<size_t>(std::llround(r_hat * double(g_total)));
    }

    // Interpolation partners come from the minority set itself.
    const size_t k_pool = std::min(k, n_min - 1);
    std::vector<std::vector<size_t>> neighbors(minority_at.size());
    for (size_t m = 0; m < minority_at.size(); ++m) {
        std::vector<size_t> candidates;
        for (const size_t j : minority_at)
            if (j != minority_at[m]) candidates.push_back(j);
        neighbors[m] =
            nearest(all_samples, candidates, all_samples[minority_at[m]].matrix, k_pool);
    }

    SplitMix64 rng(seed);
    std::vector<EmbeddedSample> out;
    size_t counter = 0;
    for (size_t m = 0; m < minority_at.size(); ++m) {
        for (size_t s = 0; s < g[m]; ++s) {
            const size_t nn = neighbors[m][rng.next_below(neighbors[m].size())];
            const double delta = rng.next_double();
            out.push_back(interpolate(all_samples[minority_at[m]], all_samples[nn], delta,
                                      "adasyn-" + std::to_string(counter++)));
        }
    }
    return out;
}

void save_synthetic_audit(const std::vector<EmbeddedSample>& samples,
                          const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write audit file: " + path);
    out << "synthetic_id,parent_a,parent_b,delta\n";
    for (const auto& s : samples) {
        if (!s.synthetic) continue;
        const std::string a = s.parent_ids.empty() ? "" : s.parent_ids[0];
        const std::string b = s.parent_ids.size() > 1 ? s.parent_ids[1] : "";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", s.delta);
        out << s.id << ',' << a << ',' << b << ',' << buf << '\n';
    }
    if (!out) throw IoError("failed writing audit file: " + path);
}

} // namespace microrep
