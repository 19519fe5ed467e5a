#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "microrep/embedding.hpp"
#include "microrep/matrix.hpp"
#include "microrep/review.hpp"

namespace microrep {

enum class Arch { lstm, rnn, gru };

Arch arch_from_string(const std::string& name);
const char* to_string(Arch arch);

/// Gates per architecture: LSTM i,f,o,g; GRU z,r,candidate; RNN one.
size_t gate_count(Arch arch);

/// All weights for one recurrent classifier. Gate-indexed weight groups
/// (order as above): W[k] is H x D, U[k] is H x H, b[k] is 1 x H. The dense
/// head maps the final hidden state to two class logits.
struct ModelParams {
    Arch arch = Arch::lstm;
    size_t input_dim = 0;    // D
    size_t hidden_size = 0;  // H
    EmbeddingMatrix embedding;
    bool mask_stop = false;  // freeze h (and c) after the last non-pad token

    std::vector<Matrix> W;
    std::vector<Matrix> U;
    std::vector<Matrix> b;
    Matrix W_y;  // 2 x H
    Matrix b_y;  // 1 x 2
};

/// Glorot-initialized parameters: one seed stream per matrix, biases zero
/// except the LSTM forget gate (1.0, aiding early gradient flow).
ModelParams init_params(Arch arch, const EmbeddingMatrix& embedding, size_t hidden_size,
                        uint64_t seed, bool mask_stop = false);

/// Zero-valued parameters with the given shapes; used by cell-level tests.
ModelParams zero_params(Arch arch, const EmbeddingMatrix& embedding, size_t hidden_size);

/// Gradients with the same layout as ModelParams. The embedding gradient is
/// only produced when the embedding is trainable (row 0 forced to zero).
struct ModelGrads {
    std::vector<Matrix> W, U, b;
    Matrix W_y, b_y;
    Matrix embedding;
    bool has_embedding = false;
};

/// Everything backward() needs from one forward pass. Per-timestep matrices
/// are B x H; h/c have T+1 entries with h[0] = c[0] = 0.
struct ForwardCache {
    Arch arch = Arch::lstm;
    size_t batch = 0, steps = 0, input_dim = 0, hidden = 0;
    Matrix x;                         // (T*B) x D embedded inputs, timestep-major
    std::vector<Matrix> h, c;         // hidden / cell states
    std::vector<std::vector<Matrix>> gates;  // gates[k][t], gate order as in params
    Matrix probs;                     // B x 2
    std::vector<size_t> flat_indices; // (T*B) vocab indices; empty on the embedded path
    std::vector<size_t> seq_len;      // per-sample non-pad length (T on the embedded path)
    const ModelParams* source = nullptr;  // staleness check for backward()
};

/// Embeds the batch (pad rows contribute zero vectors), runs the recurrent
/// cell over all max_len steps from h_0 = c_0 = 0, and applies the dense
/// head + softmax to the final hidden state.
ForwardCache forward(const std::vector<PaddedSample>& batch, const ModelParams& params);

/// Pre-embedded path (used for SMOTE/ADASYN synthetics): each sequence is a
/// max_len x D matrix that bypasses the embedding lookup.
ForwardCache forward_embedded(const std::vector<const Matrix*>& sequences,
                              const ModelParams& params);

/// Backpropagation through time over the whole cached pass; gradients of the
/// MEAN cross-entropy over the batch.
ModelGrads backward(const ForwardCache& cache, const std::vector<size_t>& labels,
                    const ModelParams& params);

double mean_cross_entropy(const Matrix& probs, const std::vector<size_t>& labels);

struct Prediction {
    Sentiment label = Sentiment::positive;
    double confidence = 0.0;
};

/// Argmax of the class probabilities; ties break toward positive (index 0).
std::vector<Prediction> predict(const std::vector<PaddedSample>& samples,
                                const ModelParams& params, size_t batch_size = 64);

/// Central finite differences over every trainable scalar; returns
/// max |g_a - g_n| / max(|g_a|, |g_n|, 1e-8). Intended for small models.
/// `corrupt_first_gate` deliberately zeroes one analytic weight group so the
/// harness itself can be shown to catch wrong gradients.
double gradient_check(ModelParams& params, const std::vector<PaddedSample>& batch,
                      double eps, bool corrupt_first_gate = false);

// Single-vector cell evaluations, used as oracles against the batched path.

struct LstmCellResult {
    std::vector<double> h, c, i, f, o, g;
};
LstmCellResult lstm_cell_forward(const std::vector<double>& x,
                                 const std::vector<double>& h_prev,
                                 const std::vector<double>& c_prev,
                                 const ModelParams& params);

struct GruCellResult {
    std::vector<double> h, z, r, candidate;
};
GruCellResult gru_cell_forward(const std::vector<double>& x,
                               const std::vector<double>& h_prev,
                               const ModelParams& params);

std::vector<double> rnn_cell_forward(const std::vector<double>& x,
                                     const std::vector<double>& h_prev,
                                     const ModelParams& params);

} // namespace microrep
