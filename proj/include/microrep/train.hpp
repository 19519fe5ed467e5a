#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "microrep/embedding.hpp"
#include "microrep/metrics.hpp"
#include "microrep/model.hpp"
#include "microrep/numeric.hpp"

namespace microrep {

// Seed streams. Per-epoch shuffling is pinned to mix_seed(seed, epoch), so
// every other consumer derives from indices far above any epoch count.
inline constexpr uint64_t kInitStream = 1ULL << 32;
inline constexpr uint64_t kResampleStream = (1ULL << 32) + 1;
inline constexpr uint64_t kEmbedStream = (1ULL << 32) + 2;
inline constexpr uint64_t kSplitStream = (1ULL << 32) + 3;

enum class Resampling { none, oversample, undersample, smote, adasyn };

Resampling resampling_from_string(const std::string& name);
const char* to_string(Resampling r);

struct TrainConfig {
    size_t epochs = 20;
    AdamConfig adam;
    size_t batch_size = 32;
    uint64_t seed = 0;
    size_t max_len = 50;
    size_t hidden_size = 128;
    Arch arch = Arch::lstm;
    Resampling resampling = Resampling::none;
    // Unmasked is the documented default: the recurrence runs across trailing
    // pad steps (zero inputs). mask_stop freezes h/c at the first pad instead.
    bool mask_stop = false;
    bool fine_tune_embeddings = false;
    size_t knn_k = 5;         // neighbor count for smote / adasyn
    double adasyn_beta = 1.0;
};

// epochs >= 1, batch_size >= 1, lr > 0; violations -> ArgumentError.
void validate(const TrainConfig& config);

struct EpochRecord {
    size_t epoch = 0;  // 1-based in records and CSV
    double train_loss = 0.0;
    double val_loss = 0.0;
    double epoch_ms = 0.0;
};

struct LearningCurve {
    std::vector<EpochRecord> records;
};

// CSV with header `epoch,train_loss,val_loss,epoch_ms`, one row per epoch.
void save_curve_csv(const LearningCurve& curve, const std::string& path);

struct TrainResult {
    ModelParams params;
    LearningCurve curve;
    size_t optimizer_steps = 0;
};

// Full training loop: resample the training set per config (never the
// validation set), then per epoch reshuffle with mix_seed(seed, epoch) and
// run forward -> backward -> adam over mini-batches. Records mean training
// loss and whole-validation loss per epoch; no early stopping. An empty
// validation set records val_loss 0. Wall-clock epoch_ms stays 0 unless
// record_timing is set, keeping curve files byte-reproducible by default.
// smote/adasyn train in embedded-sequence space, which is incompatible with
// fine_tune_embeddings (synthetics have no vocabulary rows) -> ValidationError.
// A non-finite loss aborts with NumericalError naming the epoch and batch.
TrainResult train(const std::vector<PaddedSample>& train_set,
                  const std::vector<PaddedSample>& val_set, const EmbeddingMatrix& embedding,
                  const TrainConfig& config, bool record_timing = false,
                  std::ostream* log = nullptr);

// Predict every sample and tally the positive-class confusion matrix
// (positive = class index 0). Empty input -> ArgumentError.
ConfusionMatrix evaluate(const ModelParams& params, const std::vector<PaddedSample>& samples,
                         size_t batch_size = 64);

} // namespace microrep
