#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "microrep/embedding.hpp"
#include "microrep/matrix.hpp"
#include "microrep/review.hpp"

namespace microrep {

// One review in embedded-sequence space: the padded sequence as a
// max_len x D real matrix. SMOTE/ADASYN interpolate here (flattened for
// neighbor distances) because discrete index sequences admit no midpoints.
struct EmbeddedSample {
    Matrix matrix;
    Sentiment label = Sentiment::positive;
    bool synthetic = false;
    std::vector<std::string> parent_ids;  // the two real parents of a synthetic
    double delta = 0.0;                   // recorded interpolation factor
    std::string id;
};

EmbeddedSample embed_sample(const PaddedSample& sample, const EmbeddingMatrix& embedding);

// Duplicates minority samples (seeded, with replacement) until class counts
// are equal. Output order: all originals in input order, then duplicates.
std::vector<PaddedSample> random_oversample(const std::vector<PaddedSample>& samples,
                                            uint64_t seed);

// Subsamples the majority class (seeded, without replacement) down to the
// minority count; survivors keep their input order.
std::vector<PaddedSample> random_undersample(const std::vector<PaddedSample>& samples,
                                             uint64_t seed);

// Seeded draw of exactly n_per_class samples of each class: classes below
// the target keep all originals and add draws with replacement; classes
// above it are subsampled without replacement. Used by the balanced-test
// evaluation protocol only.
std::vector<PaddedSample> balanced_resample(const std::vector<PaddedSample>& samples,
                                            size_t n_per_class, uint64_t seed);

// Classic SMOTE over a single-class minority set: synthetic s = x_i +
// delta * (x_nn - x_i) with x_i cycled in order, x_nn drawn among the k
// Euclidean-nearest minority neighbors (distance ties broken by id), and
// delta ~ uniform[0,1]. Returns exactly n_synthetic new samples carrying
// parent ids and delta. `forced_delta` pins delta for geometry tests.
std::vector<EmbeddedSample> smote(const std::vector<EmbeddedSample>& minority, size_t k,
                                  size_t n_synthetic, uint64_t seed,
                                  const double* forced_delta = nullptr);

// ADASYN: density-adaptive allocation. r_i = majority share among the k
// nearest neighbors of minority point i in the FULL dataset; g_i =
// round(r_hat_i * G) synthetics per point, G = round(beta * (N_maj -
// N_min)), uniform allocation when every r_i is zero. Interpolation runs
// among minority neighbors (pool capped at N_min - 1), so N_min >= 2.
std::vector<EmbeddedSample> adasyn(const std::vector<EmbeddedSample>& all_samples, size_t k,
                                   double beta, uint64_t seed);

// Audit dump for geometry verification: `synthetic_id,parent_a,parent_b,delta`.
void save_synthetic_audit(const std::vector<EmbeddedSample>& samples, const std::string& path);

} // namespace microrep
