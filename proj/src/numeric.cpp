#include "microrep/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "microrep/error.hpp"
#include "microrep/rng.hpp"

namespace microrep {

std::vector<double> softmax(const std::vector<double>& v) {
    if (v.empty()) throw ArgumentError("softmax: empty input");
    const double mx = *std::max_element(v.begin(), v.end());
    std::vector<double> out(v.size());
    double sum = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = std::exp(v[i] - mx);
        sum += out[i];
    }
    for (double& x : out) x /= sum;
    return out;
}

Matrix softmax_rows(const Matrix& logits) {
    Matrix out(logits.rows(), logits.cols());
    for (size_t i = 0; i < logits.rows(); ++i) {
        const double* in = logits.row(i);
        double* o = out.row(i);
        const double mx = *std::max_element(in, in + logits.cols());
        double sum = 0.0;
        for (size_t j = 0; j < logits.cols(); ++j) {
            o[j] = std::exp(in[j] - mx);
            sum += o[j];
        }
        for (size_t j = 0; j < logits.cols(); ++j) o[j] /= sum;
    }
    return out;
}

double cross_entropy(const std::vector<double>& probs, size_t true_class) {
    if (true_class >= probs.size())
        throw ArgumentError("cross_entropy: class index " + std::to_string(true_class) +
                            " out of range for " + std::to_string(probs.size()) + " classes");
    return -std::log(probs[true_class] + kCrossEntropyEpsilon);
}

Matrix glorot_uniform(size_t rows, size_t cols, uint64_t seed) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    SplitMix64 rng(seed);
    Matrix out(rows, cols);
    for (double& v : out.values()) v = rng.next_double(-limit, limit);
    return out;
}

AdamState AdamState::like(const std::vector<const Matrix*>& params) {
    AdamState st;
    st.m.reserve(params.size());
    st.v.reserve(params.size());
    for (const Matrix* p : params) {
        st.m.emplace_back(p->rows(), p->cols());
        st.v.emplace_back(p->rows(), p->cols());
    }
    return st;
}

void adam_step(std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
               AdamState& state, const AdamConfig& cfg) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw ArgumentError("adam_step: parameter/gradient/state group sizes differ");
    state.t += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    for (size_t i = 0; i < params.size(); ++i) {
        Matrix& p = *params[i];
        const Matrix& g = *grads[i];
        if (!p.same_shape(g) || !p.same_shape(state.m[i]))
            throw ArgumentError("adam_step: shape mismatch in parameter group " + std::to_string(i));
        double* __restrict pv = p.data();
        const double* __restrict gv = g.data();
        double* __restrict mv = state.m[i].data();
        double* __restrict vv = state.v[i].data();
        for (size_t j = 0; j < p.size(); ++j) {
            mv[j] = cfg.beta1 * mv[j] + (1.0 - cfg.beta1) * gv[j];
            vv[j] = cfg.beta2 * vv[j] + (1.0 - cfg.beta2) * gv[j] * gv[j];
            const double mhat = mv[j] / bc1;
            const double vhat = vv[j] / bc2;
            pv[j] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
        }
    }
}

} // namespace microrep
