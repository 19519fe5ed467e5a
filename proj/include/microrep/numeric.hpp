#pragma once

#include <cstdint>
#include <vector>

#include "microrep/matrix.hpp"

namespace microrep {

/// Guard added inside the log of the cross-entropy loss. Documented so
/// reported loss values are reproducible to the last bit.
inline constexpr double kCrossEntropyEpsilon = 1e-12;

/// Numerically stable softmax (max subtraction). Output sums to 1 within
/// 1e-12 and preserves the argmax. Throws ArgumentError on empty input.
std::vector<double> softmax(const std::vector<double>& v);

/// Row-wise softmax over a matrix of logits.
Matrix softmax_rows(const Matrix& logits);

/// -ln(probs[true_class] + eps). Throws ArgumentError if the index is out
/// of range.
double cross_entropy(const std::vector<double>& probs, size_t true_class);

/// Glorot/Xavier uniform init: i.i.d. uniform(-L, L), L = sqrt(6/(rows+cols)),
/// deterministic per seed.
Matrix glorot_uniform(size_t rows, size_t cols, uint64_t seed);

struct AdamConfig {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// First/second moment estimates plus the shared step counter for one
/// group of parameter tensors.
struct AdamState {
    std::vector<Matrix> m;
    std::vector<Matrix> v;
    uint64_t t = 0;

    static AdamState like(const std::vector<const Matrix*>& params);
};

/// One Adam update with bias correction over a parameter group. Mutates
/// params and state in place; params/grads/state shapes must agree.
void adam_step(std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
               AdamState& state, const AdamConfig& cfg);

} // namespace microrep
