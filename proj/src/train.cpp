#include "microrep/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "microrep/error.hpp"
#include "microrep/resample.hpp"
#include "microrep/rng.hpp"

namespace microrep {

Resampling resampling_from_string(const std::string& name) {
    if (name == "none") return Resampling::none;
    if (name == "oversample") return Resampling::oversample;
    if (name == "undersample") return Resampling::undersample;
    if (name == "smote") return Resampling::smote;
    if (name == "adasyn") return Resampling::adasyn;
    throw ValidationError("unknown resampling strategy: " + name);
}

const char* to_string(Resampling r) {
    switch (r) {
        case Resampling::none: return "none";
        case Resampling::oversample: return "oversample";
        case Resampling::undersample: return "undersample";
        case Resampling::smote: return "smote";
        case Resampling::adasyn: return "adasyn";
    }
    throw ContractError("unreachable resampling value");
}

void validate(const TrainConfig& config) {
    if (config.epochs < 1) throw ArgumentError("epochs must be >= 1");
    if (config.batch_size < 1) throw ArgumentError("batch_size must be >= 1");
    if (config.adam.lr <= 0.0) throw ArgumentError("lr must be > 0");
    if (config.max_len < 1) throw ArgumentError("max_len must be >= 1");
    if (config.hidden_size < 1) throw ArgumentError("hidden_size must be >= 1");
    if (config.knn_k < 1) throw ArgumentError("knn_k must be >= 1");
}

void save_curve_csv(const LearningCurve& curve, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write curve file: " + path);
    out << "epoch,train_loss,val_loss,epoch_ms\n";
    char buf[160];
    for (const auto& r : curve.records) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.epoch, r.train_loss,
                      r.val_loss, r.epoch_ms);
        out << buf;
    }
    if (!out) throw IoError("failed writing curve file: " + path);
}

namespace {

std::pair<size_t, size_t> count_classes(const std::vector<PaddedSample>& samples) {
    size_t pos = 0, neg = 0;
    for (const auto& s : samples) (s.label == Sentiment::positive ? pos : neg)++;
    return {pos, neg};
}

std::vector<Matrix*> trainable_params(ModelParams& p) {
    std::vector<Matrix*> out;
    for (auto& w : p.W) out.push_back(&w);
    for (auto& u : p.U) out.push_back(&u);
    for (auto& b : p.b) out.push_back(&b);
    out.push_back(&p.W_y);
    out.push_back(&p.b_y);
    if (p.embedding.trainable) out.push_back(&p.embedding.values);
    return out;
}

std::vector<const Matrix*> grad_ptrs(const ModelGrads& g, bool with_embedding) {
    std::vector<const Matrix*> out;
    for (const auto& w : g.W) out.push_back(&w);
    for (const auto& u : g.U) out.push_back(&u);
    for (const auto& b : g.b) out.push_back(&b);
    out.push_back(&g.W_y);
    out.push_back(&g.b_y);
    if (with_embedding) {
        if (!g.has_embedding)
            throw ContractError("embedding marked trainable but backward produced no gradient");
        out.push_back(&g.embedding);
    }
    return out;
}

void check_finite(double loss, size_t epoch, size_t batch_index) {
    if (!std::isfinite(loss))
        throw NumericalError("non-finite training loss at epoch " + std::to_string(epoch) +
                             ", batch " + std::to_string(batch_index));
}

// Mean cross-entropy over a whole sample list, chunked so peak memory stays
// bounded. Per-row arithmetic is independent of chunk composition, so the
// result is bit-stable for any chunk size.
double dataset_loss(const ModelParams& params, const std::vector<PaddedSample>& samples,
                    size_t chunk) {
    if (samples.empty()) return 0.0;
    double total = 0.0;
    for (size_t start = 0; start < samples.size(); start += chunk) {
        const size_t n = std::min(chunk, samples.size() - start);
        const std::vector<PaddedSample> part(samples.begin() + long(start),
                                             samples.begin() + long(start + n));
        const ForwardCache cache = forward(part, params);
        std::vector<size_t> labels(n);
        for (size_t i = 0; i < n; ++i) labels[i] = class_index(part[i].label);
        total += mean_cross_entropy(cache.probs, labels) * double(n);
    }
    return total / double(samples.size());
}

} // namespace

TrainResult train(const std::vector<PaddedSample>& train_set,
                  const std::vector<PaddedSample>& val_set, const EmbeddingMatrix& embedding,
                  const TrainConfig& config, bool record_timing, std::ostream* log) {
    validate(config);
    if (train_set.empty()) throw ArgumentError("training set is empty");

    const auto [pos0, neg0] = count_classes(train_set);
    if (config.resampling == Resampling::none && (pos0 == 0 || neg0 == 0))
        throw ValidationError("single-class training set and resampling=none");
    const bool embedded_mode =
        config.resampling == Resampling::smote || config.resampling == Resampling::adasyn;
    if (embedded_mode && config.fine_tune_embeddings)
        throw ValidationError(
            "smote/adasyn train on embedded sequences; fine_tune_embeddings is unavailable");

    EmbeddingMatrix emb = embedding;
    emb.trainable = config.fine_tune_embeddings;

    // Resampling touches only the training set; validation stays as given.
    std::vector<PaddedSample> discrete;        // none / oversample / undersample
    std::vector<EmbeddedSample> in_embedded;   // smote / adasyn: originals + synthetics
    const uint64_t resample_seed = mix_seed(config.seed, kResampleStream);
    switch (config.resampling) {
        case Resampling::none: discrete = train_set; break;
        case Resampling::oversample: discrete = random_oversample(train_set, resample_seed); break;
        case Resampling::undersample:
            discrete = random_undersample(train_set, resample_seed);
            break;
        case Resampling::smote: {
            if (pos0 == 0 || neg0 == 0)
                throw ValidationError("smote requires both classes in the training set");
            const Sentiment minority_cls =
                pos0 < neg0 ? Sentiment::positive : Sentiment::negative;
            const size_t n_min = std::min(pos0, neg0), n_maj = std::max(pos0, neg0);
            if (n_min < 2) throw ValidationError("smote needs at least 2 minority samples");
            std::vector<EmbeddedSample> minority;
            for (const auto& s : train_set) {
                in_embedded.push_back(embed_sample(s, emb));
                if (s.label == minority_cls) minority.push_back(in_embedded.back());
            }
            const size_t k = std::min(config.knn_k, n_min - 1);
            for (auto& s : smote(minority, k, n_maj - n_min, resample_seed))
                in_embedded.push_back(std::move(s));
            break;
        }
        case Resampling::adasyn: {
            if (pos0 == 0 || neg0 == 0)
                throw ValidationError("adasyn requires both classes in the training set");
            if (std::min(pos0, neg0) < 2)
                throw ValidationError("adasyn needs at least 2 minority samples");
            for (const auto& s : train_set) in_embedded.push_back(embed_sample(s, emb));
            const size_t k = std::min(config.knn_k, train_set.size() - 1);
            for (auto& s : adasyn(in_embedded, k, config.adasyn_beta, resample_seed))
                in_embedded.push_back(std::move(s));
            break;
        }
    }

    size_t n_train = embedded_mode ? in_embedded.size() : discrete.size();
    if (log) {
        size_t pos = 0, neg = 0;
        if (embedded_mode) {
            for (const auto& s : in_embedded)
                (s.label == Sentiment::positive ? pos : neg)++;
        } else {
            std::tie(pos, neg) = count_classes(discrete);
        }
        *log << "train set after resampling (" << to_string(config.resampling)
             << "): " << n_train << " samples, " << pos << " positive / " << neg
             << " negative\n";
    }

    ModelParams params = init_params(config.arch, emb, config.hidden_size,
                                     mix_seed(config.seed, kInitStream), config.mask_stop);
    std::vector<Matrix*> learned = trainable_params(params);
    std::vector<const Matrix*> learned_view(learned.begin(), learned.end());
    AdamState adam = AdamState::like(learned_view);

    TrainResult result;
    constexpr size_t kEvalChunk = 256;
    std::vector<size_t> order(n_train);
    std::iota(order.begin(), order.end(), size_t{0});

    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();
        SplitMix64 shuffle_rng(mix_seed(config.seed, epoch));
        shuffle(order, shuffle_rng);

        double loss_sum = 0.0;
        size_t batch_index = 0;
        for (size_t start = 0; start < n_train; start += config.batch_size, ++batch_index) {
            const size_t n = std::min(config.batch_size, n_train - start);
            std::vector<size_t> labels(n);
            ForwardCache cache;
            if (embedded_mode) {
                std::vector<const Matrix*> seqs(n);
                for (size_t i = 0; i < n; ++i) {
                    const EmbeddedSample& s = in_embedded[order[start + i]];
                    seqs[i] = &s.matrix;
                    labels[i] = class_index(s.label);
                }
                cache = forward_embedded(seqs, params);
            } else {
                std::vector<PaddedSample> chunk(n);
                for (size_t i = 0; i < n; ++i) {
                    chunk[i] = discrete[order[start + i]];
                    labels[i] = class_index(chunk[i].label);
                }
                cache = forward(chunk, params);
            }
            const double loss = mean_cross_entropy(cache.probs, labels);
            check_finite(loss, epoch + 1, batch_index);
            const ModelGrads grads = backward(cache, labels, params);
            adam_step(learned, grad_ptrs(grads, params.embedding.trainable), adam,
                      config.adam);
            ++result.optimizer_steps;
            loss_sum += loss * double(n);
        }

        EpochRecord record;
        record.epoch = epoch + 1;
        record.train_loss = loss_sum / double(n_train);
        record.val_loss = dataset_loss(params, val_set, kEvalChunk);
        check_finite(record.train_loss, epoch + 1, batch_index);
        if (record_timing) {
            const auto elapsed = std::chrono::steady_clock::now() - started;
            record.epoch_ms =
                std::chrono::duration<double, std::milli>(elapsed).count();
        }
        result.curve.records.push_back(record);
        if (log) {
            char line[160];
            std::snprintf(line, sizeof line, "epoch %zu/%zu train_loss=%.6f val_loss=%.6f\n",
                          record.epoch, config.epochs, record.train_loss, record.val_loss);
            *log << line;
        }
    }

    result.params = std::move(params);
    return result;
}

ConfusionMatrix evaluate(const ModelParams& params, const std::vector<PaddedSample>& samples,
                         size_t batch_size) {
    if (samples.empty()) throw ArgumentError("evaluate: empty sample list");
    const std::vector<Prediction> preds = predict(samples, params, batch_size);
    ConfusionMatrix cm;
    for (size_t i = 0; i < samples.size(); ++i) {
        const bool gold_pos = samples[i].label == Sentiment::positive;
        const bool pred_pos = preds[i].label == Sentiment::positive;
        if (gold_pos && pred_pos) ++cm.tp;
        else if (!gold_pos && !pred_pos) ++cm.tn;
        else if (!gold_pos && pred_pos) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

} // namespace microrep
