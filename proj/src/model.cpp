#include "microrep/model.hpp"

#include <algorithm>
#include <cmath>

#include "microrep/error.hpp"
#include "microrep/numeric.hpp"
#include "microrep/rng.hpp"

namespace microrep {

Arch arch_from_string(const std::string& name) {
    if (name == "lstm") return Arch::lstm;
    if (name == "rnn") return Arch::rnn;
    if (name == "gru") return Arch::gru;
    throw ArgumentError("unknown architecture '" + name + "' (expected lstm, rnn or gru)");
}

const char* to_string(Arch arch) {
    switch (arch) {
        case Arch::lstm: return "lstm";
        case Arch::rnn: return "rnn";
        case Arch::gru: return "gru";
    }
    return "lstm";
}

size_t gate_count(Arch arch) {
    switch (arch) {
        case Arch::lstm: return 4;  // i, f, o, g
        case Arch::gru: return 3;   // z, r, candidate
        case Arch::rnn: return 1;
    }
    return 1;
}

namespace {

constexpr size_t kForgetGate = 1;  // LSTM gate order i, f, o, g

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

void add_bias(Matrix& m, const Matrix& bias) {
    for (size_t r = 0; r < m.rows(); ++r) {
        double* row = m.row(r);
        const double* b = bias.row(0);
        for (size_t j = 0; j < m.cols(); ++j) row[j] += b[j];
    }
}

void apply_sigmoid(Matrix& m) {
    for (double& v : m.values()) v = sigmoid(v);
}

void apply_tanh(Matrix& m) {
    for (double& v : m.values()) v = std::tanh(v);
}

// Copies the B x H block for timestep t out of a (T*B) x H matrix.
void load_block(const Matrix& full, size_t t, size_t batch, Matrix& out) {
    std::copy(full.row(t * batch), full.row(t * batch) + batch * out.cols(), out.data());
}

void store_block(const Matrix& part, size_t t, size_t batch, Matrix& full) {
    std::copy(part.data(), part.data() + batch * part.cols(), full.row(t * batch));
}

void validate_params(const ModelParams& params) {
    const size_t gates = gate_count(params.arch);
    if (params.W.size() != gates || params.U.size() != gates || params.b.size() != gates)
        throw ArgumentError("parameter group count does not match architecture");
    for (size_t k = 0; k < gates; ++k) {
        if (params.W[k].rows() != params.hidden_size || params.W[k].cols() != params.input_dim ||
            params.U[k].rows() != params.hidden_size || params.U[k].cols() != params.hidden_size ||
            params.b[k].rows() != 1 || params.b[k].cols() != params.hidden_size)
            throw ArgumentError("weight shapes inconsistent with hidden/input size");
    }
    if (params.W_y.rows() != 2 || params.W_y.cols() != params.hidden_size ||
        params.b_y.rows() != 1 || params.b_y.cols() != 2)
        throw ArgumentError("dense head shapes inconsistent");
    if (params.embedding.values.cols() != params.input_dim)
        throw ArgumentError("embedding dimension does not match input_dim");
}

// Shared driver once the (T*B) x D input block is assembled.
ForwardCache run_forward(Matrix x, std::vector<size_t> flat_indices,
                         std::vector<size_t> seq_len, size_t batch,
                         const ModelParams& params) {
    validate_params(params);
    const size_t steps = x.rows() / batch;
    const size_t hidden = params.hidden_size;
    const size_t gates = gate_count(params.arch);

    ForwardCache cache;
    cache.arch = params.arch;
    cache.batch = batch;
    cache.steps = steps;
    cache.input_dim = params.input_dim;
    cache.hidden = hidden;
    cache.x = std::move(x);
    cache.flat_indices = std::move(flat_indices);
    cache.seq_len = std::move(seq_len);
    cache.source = &params;

    std::vector<Matrix> w_t, u_t;
    w_t.reserve(gates);
    u_t.reserve(gates);
    for (size_t k = 0; k < gates; ++k) {
        w_t.push_back(transpose(params.W[k]));
        u_t.push_back(transpose(params.U[k]));
    }

    // Input projections for every timestep in one GEMM per gate.
    std::vector<Matrix> proj;
    proj.reserve(gates);
    for (size_t k = 0; k < gates; ++k) proj.push_back(matmul(cache.x, w_t[k]));

    cache.h.assign(steps + 1, Matrix(batch, hidden));
    if (params.arch == Arch::lstm) cache.c.assign(steps + 1, Matrix(batch, hidden));
    cache.gates.assign(gates, {});
    for (auto& g : cache.gates) g.reserve(steps);

    const bool masked = params.mask_stop;
    Matrix pre(batch, hidden);

    for (size_t t = 0; t < steps; ++t) {
        const Matrix& h_prev = cache.h[t];
        switch (params.arch) {
            case Arch::lstm: {
                std::vector<Matrix> acts(4);
                for (size_t k = 0; k < 4; ++k) {
                    load_block(proj[k], t, batch, pre);
                    matmul_acc(h_prev, u_t[k], pre);
                    add_bias(pre, params.b[k]);
                    if (k < 3) apply_sigmoid(pre); else apply_tanh(pre);
                    acts[k] = pre;
                }
                const Matrix& c_prev = cache.c[t];
                Matrix& c_t = cache.c[t + 1];
                Matrix& h_t = cache.h[t + 1];
                for (size_t n = 0; n < batch * hidden; ++n) {
                    c_t.values()[n] = acts[1].values()[n] * c_prev.values()[n] +
                                      acts[0].values()[n] * acts[3].values()[n];
                    h_t.values()[n] = acts[2].values()[n] * std::tanh(c_t.values()[n]);
                }
                if (masked) {
                    for (size_t bi = 0; bi < batch; ++bi)
                        if (t >= cache.seq_len[bi]) {
                            std::copy(h_prev.row(bi), h_prev.row(bi) + hidden, h_t.row(bi));
                            std::copy(c_prev.row(bi), c_prev.row(bi) + hidden, c_t.row(bi));
                        }
                }
                for (size_t k = 0; k < 4; ++k) cache.gates[k].push_back(std::move(acts[k]));
                break;
            }
            case Arch::gru: {
                Matrix z(batch, hidden), r(batch, hidden), cand(batch, hidden);
                load_block(proj[0], t, batch, z);
                matmul_acc(h_prev, u_t[0], z);
                add_bias(z, params.b[0]);
                apply_sigmoid(z);
                load_block(proj[1], t, batch, r);
                matmul_acc(h_prev, u_t[1], r);
                add_bias(r, params.b[1]);
                apply_sigmoid(r);
                Matrix gated(batch, hidden);
                for (size_t n = 0; n < batch * hidden; ++n)
                    gated.values()[n] = r.values()[n] * h_prev.values()[n];
                load_block(proj[2], t, batch, cand);
                matmul_acc(gated, u_t[2], cand);
                add_bias(cand, params.b[2]);
                apply_tanh(cand);
                Matrix& h_t = cache.h[t + 1];
                for (size_t n = 0; n < batch * hidden; ++n)
                    h_t.values()[n] = (1.0 - z.values()[n]) * h_prev.values()[n] +
                                      z.values()[n] * cand.values()[n];
                if (masked) {
                    for (size_t bi = 0; bi < batch; ++bi)
                        if (t >= cache.seq_len[bi])
                            std::copy(h_prev.row(bi), h_prev.row(bi) + hidden, h_t.row(bi));
                }
                cache.gates[0].push_back(std::move(z));
                cache.gates[1].push_back(std::move(r));
                cache.gates[2].push_back(std::move(cand));
                break;
            }
            case Arch::rnn: {
                Matrix& h_t = cache.h[t + 1];
                load_block(proj[0], t, batch, pre);
                matmul_acc(h_prev, u_t[0], pre);
                add_bias(pre, params.b[0]);
                apply_tanh(pre);
                h_t = pre;
                if (masked) {
                    for (size_t bi = 0; bi < batch; ++bi)
                        if (t >= cache.seq_len[bi])
                            std::copy(h_prev.row(bi), h_prev.row(bi) + hidden, h_t.row(bi));
                }
                cache.gates[0].push_back(h_t);
                break;
            }
        }
    }

    Matrix logits = matmul_nt(cache.h[steps], params.W_y);
    add_bias(logits, params.b_y);
    cache.probs = softmax_rows(logits);
    if (!cache.probs.all_finite())
        throw NumericalError("non-finite class probabilities in forward pass (batch size " +
                             std::to_string(batch) + ", " + std::to_string(steps) + " steps)");
    return cache;
}

} // namespace

ModelParams init_params(Arch arch, const EmbeddingMatrix& embedding, size_t hidden_size,
                        uint64_t seed, bool mask_stop) {
    if (hidden_size == 0) throw ArgumentError("hidden_size must be >= 1");
    if (embedding.dim == 0 || embedding.values.rows() < 2)
        throw ArgumentError("embedding matrix must cover pad and oov rows");

    ModelParams p;
    p.arch = arch;
    p.input_dim = embedding.dim;
    p.hidden_size = hidden_size;
    p.embedding = embedding;
    p.mask_stop = mask_stop;

    const size_t gates = gate_count(arch);
    uint64_t stream = 0;
    for (size_t k = 0; k < gates; ++k)
        p.W.push_back(glorot_uniform(hidden_size, p.input_dim, mix_seed(seed, stream++)));
    for (size_t k = 0; k < gates; ++k)
        p.U.push_back(glorot_uniform(hidden_size, hidden_size, mix_seed(seed, stream++)));
    for (size_t k = 0; k < gates; ++k) {
        const double fill = arch == Arch::lstm && k == kForgetGate ? 1.0 : 0.0;
        p.b.emplace_back(1, hidden_size, fill);
    }
    p.W_y = glorot_uniform(2, hidden_size, mix_seed(seed, stream++));
    p.b_y = Matrix(1, 2);
    return p;
}

ModelParams zero_params(Arch arch, const EmbeddingMatrix& embedding, size_t hidden_size) {
    ModelParams p = init_params(arch, embedding, hidden_size, 0);
    for (auto& m : p.W) m.fill(0.0);
    for (auto& m : p.U) m.fill(0.0);
    for (auto& m : p.b) m.fill(0.0);
    p.W_y.fill(0.0);
    p.b_y.fill(0.0);
    return p;
}

ForwardCache forward(const std::vector<PaddedSample>& batch, const ModelParams& params) {
    if (batch.empty()) throw ArgumentError("forward: empty batch");
    const size_t steps = batch[0].indices.size();
    if (steps == 0) throw ArgumentError("forward: zero-length samples");
    const size_t n = batch.size();
    const size_t vocab_rows = params.embedding.values.rows();
    const size_t dim = params.input_dim;

    Matrix x(steps * n, dim);
    std::vector<size_t> flat(steps * n);
    std::vector<size_t> seq_len(n, 0);
    for (size_t bi = 0; bi < n; ++bi) {
        const auto& idx = batch[bi].indices;
        if (idx.size() != steps)
            throw ArgumentError("forward: samples have differing lengths");
        for (size_t t = 0; t < steps; ++t) {
            if (idx[t] >= vocab_rows)
                throw ArgumentError("forward: vocabulary index " + std::to_string(idx[t]) +
                                    " out of range at sample " + std::to_string(bi) +
                                    ", position " + std::to_string(t));
            flat[t * n + bi] = idx[t];
            std::copy(params.embedding.values.row(idx[t]),
                      params.embedding.values.row(idx[t]) + dim, x.row(t * n + bi));
            if (idx[t] != Vocabulary::kPadIndex) seq_len[bi] = t + 1;
        }
    }
    return run_forward(std::move(x), std::move(flat), std::move(seq_len), n, params);
}

ForwardCache forward_embedded(const std::vector<const Matrix*>& sequences,
                              const ModelParams& params) {
    if (sequences.empty()) throw ArgumentError("forward_embedded: empty batch");
    const size_t steps = sequences[0]->rows();
    const size_t dim = params.input_dim;
    if (steps == 0) throw ArgumentError("forward_embedded: zero-length sequences");
    const size_t n = sequences.size();

    Matrix x(steps * n, dim);
    for (size_t bi = 0; bi < n; ++bi) {
        const Matrix& seq = *sequences[bi];
        if (seq.rows() != steps || seq.cols() != dim)
            throw ArgumentError("forward_embedded: sequence shape mismatch");
        for (size_t t = 0; t < steps; ++t)
            std::copy(seq.row(t), seq.row(t) + dim, x.row(t * n + bi));
    }
    // Pre-embedded sequences carry no pad markers; every step counts.
    return run_forward(std::move(x), {}, std::vector<size_t>(n, steps), n, params);
}

ModelGrads backward(const ForwardCache& cache, const std::vector<size_t>& labels,
                    const ModelParams& params) {
    if (cache.source != &params || cache.arch != params.arch ||
        cache.hidden != params.hidden_size || cache.input_dim != params.input_dim)
        throw ContractError("backward: cache does not belong to these parameters");
    if (cache.probs.rows() != cache.batch)
        throw ContractError("backward: cache missing a completed forward pass");
    const size_t batch = cache.batch;
    if (labels.size() != batch) throw ArgumentError("backward: labels/batch size mismatch");
    for (const size_t label : labels)
        if (label >= 2) throw ArgumentError("backward: class label out of range");

    const size_t steps = cache.steps;
    const size_t hidden = cache.hidden;
    const size_t gates = gate_count(params.arch);
    const bool masked = params.mask_stop;

    ModelGrads grads;
    grads.W.assign(gates, Matrix());
    grads.U.assign(gates, Matrix());
    grads.b.assign(gates, Matrix());

    // Mean cross-entropy + softmax composite: dlogits = (probs - onehot) / B.
    Matrix dy(batch, 2);
    for (size_t bi = 0; bi < batch; ++bi) {
        dy(bi, 0) = (cache.probs(bi, 0) - (labels[bi] == 0 ? 1.0 : 0.0)) / double(batch);
        dy(bi, 1) = (cache.probs(bi, 1) - (labels[bi] == 1 ? 1.0 : 0.0)) / double(batch);
    }
    grads.W_y = matmul_tn(dy, cache.h[steps]);
    grads.b_y = column_sums(dy);

    Matrix dh = matmul(dy, params.W_y);
    Matrix dc(batch, hidden);

    // Per-gate pre-activation deltas for all timesteps, packed (T*B) x H so
    // the weight gradients reduce to one GEMM per gate at the end.
    std::vector<Matrix> dpre_all(gates, Matrix(steps * batch, hidden));
    Matrix h_prev_all(steps * batch, hidden);
    Matrix gated_all;  // GRU candidate input r (*) h_prev
    if (params.arch == Arch::gru) gated_all = Matrix(steps * batch, hidden);

    std::vector<Matrix> dpre(gates, Matrix(batch, hidden));
    Matrix dh_prev(batch, hidden), dc_prev(batch, hidden);

    for (size_t t = steps; t-- > 0;) {
        const Matrix& h_prev = cache.h[t];
        store_block(h_prev, t, batch, h_prev_all);

        switch (params.arch) {
            case Arch::lstm: {
                const Matrix& gi = cache.gates[0][t];
                const Matrix& gf = cache.gates[1][t];
                const Matrix& go = cache.gates[2][t];
                const Matrix& gg = cache.gates[3][t];
                const Matrix& c_prev = cache.c[t];
                const Matrix& c_t = cache.c[t + 1];
                for (size_t n = 0; n < batch * hidden; ++n) {
                    const double tc = std::tanh(c_t.values()[n]);
                    const double i = gi.values()[n], f = gf.values()[n];
                    const double o = go.values()[n], g = gg.values()[n];
                    const double dht = dh.values()[n];
                    const double dct = dc.values()[n] + dht * o * (1.0 - tc * tc);
                    dpre[0].values()[n] = dct * g * i * (1.0 - i);
                    dpre[1].values()[n] = dct * c_prev.values()[n] * f * (1.0 - f);
                    dpre[2].values()[n] = dht * tc * o * (1.0 - o);
                    dpre[3].values()[n] = dct * i * (1.0 - g * g);
                    dc_prev.values()[n] = dct * f;
                }
                break;
            }
            case Arch::gru: {
                const Matrix& z = cache.gates[0][t];
                const Matrix& r = cache.gates[1][t];
                const Matrix& cand = cache.gates[2][t];
                for (size_t n = 0; n < batch * hidden; ++n) {
                    const double zv = z.values()[n], cv = cand.values()[n];
                    const double dht = dh.values()[n];
                    dpre[0].values()[n] = dht * (cv - h_prev.values()[n]) * zv * (1.0 - zv);
                    dpre[2].values()[n] = dht * zv * (1.0 - cv * cv);
                }
                // ds = d(candidate pre) * U_cand, then split into r and h_prev parts
                Matrix ds = matmul(dpre[2], params.U[2]);
                for (size_t n = 0; n < batch * hidden; ++n) {
                    const double rv = r.values()[n];
                    dpre[1].values()[n] =
                        ds.values()[n] * h_prev.values()[n] * rv * (1.0 - rv);
                    dc_prev.values()[n] = ds.values()[n] * r.values()[n];  // h_prev share
                    gated_all.values()[(t * batch * hidden) + n] =
                        rv * h_prev.values()[n];
                }
                break;
            }
            case Arch::rnn: {
                const Matrix& h_t = cache.h[t + 1];
                for (size_t n = 0; n < batch * hidden; ++n) {
                    const double hv = h_t.values()[n];
                    dpre[0].values()[n] = dh.values()[n] * (1.0 - hv * hv);
                }
                break;
            }
        }

        if (masked) {
            for (size_t bi = 0; bi < batch; ++bi)
                if (t >= cache.seq_len[bi])
                    for (size_t k = 0; k < gates; ++k)
                        std::fill(dpre[k].row(bi), dpre[k].row(bi) + hidden, 0.0);
        }

        for (size_t k = 0; k < gates; ++k) store_block(dpre[k], t, batch, dpre_all[k]);

        // dh_prev = sum_k dpre_k * U_k (+ direct paths per architecture)
        dh_prev.fill(0.0);
        if (params.arch == Arch::gru) {
            matmul_acc(dpre[0], params.U[0], dh_prev);
            matmul_acc(dpre[1], params.U[1], dh_prev);
            const Matrix& z = cache.gates[0][t];
            for (size_t n = 0; n < batch * hidden; ++n)
                dh_prev.values()[n] +=
                    dh.values()[n] * (1.0 - z.values()[n]) + dc_prev.values()[n];
        } else {
            for (size_t k = 0; k < gates; ++k) matmul_acc(dpre[k], params.U[k], dh_prev);
        }

        if (masked) {
            for (size_t bi = 0; bi < batch; ++bi)
                if (t >= cache.seq_len[bi]) {
                    std::copy(dh.row(bi), dh.row(bi) + hidden, dh_prev.row(bi));
                    if (params.arch == Arch::lstm) {
                        const double* src = dc.row(bi);
                        std::copy(src, src + hidden, dc_prev.row(bi));
                    }
                }
        }

        dh = dh_prev;
        if (params.arch == Arch::lstm) dc = dc_prev;
    }

    for (size_t k = 0; k < gates; ++k) {
        grads.W[k] = matmul_tn(dpre_all[k], cache.x);
        const Matrix& recurrent_input =
            params.arch == Arch::gru && k == 2 ? gated_all : h_prev_all;
        grads.U[k] = matmul_tn(dpre_all[k], recurrent_input);
        grads.b[k] = column_sums(dpre_all[k]);
    }

    if (!cache.flat_indices.empty() && params.embedding.trainable) {
        Matrix dx(steps * batch, cache.input_dim);
        for (size_t k = 0; k < gates; ++k) matmul_acc(dpre_all[k], params.W[k], dx);
        grads.embedding = Matrix(params.embedding.values.rows(), cache.input_dim);
        for (size_t rr = 0; rr < steps * batch; ++rr) {
            double* dst = grads.embedding.row(cache.flat_indices[rr]);
            const double* src = dx.row(rr);
            for (size_t d = 0; d < cache.input_dim; ++d) dst[d] += src[d];
        }
        std::fill(grads.embedding.row(0), grads.embedding.row(0) + cache.input_dim, 0.0);
        grads.has_embedding = true;
    }
    return grads;
}

double mean_cross_entropy(const Matrix& probs, const std::vector<size_t>& labels) {
    if (probs.rows() != labels.size() || probs.rows() == 0)
        throw ArgumentError("mean_cross_entropy: probs/labels size mismatch");
    double total = 0.0;
    for (size_t bi = 0; bi < probs.rows(); ++bi) {
        if (labels[bi] >= probs.cols())
            throw ArgumentError("mean_cross_entropy: label out of range");
        total += -std::log(probs(bi, labels[bi]) + kCrossEntropyEpsilon);
    }
    return total / double(probs.rows());
}

std::vector<Prediction> predict(const std::vector<PaddedSample>& samples,
                                const ModelParams& params, size_t batch_size) {
    if (batch_size == 0) throw ArgumentError("predict: batch_size must be >= 1");
    std::vector<Prediction> out;
    out.reserve(samples.size());
    for (size_t begin = 0; begin < samples.size(); begin += batch_size) {
        const size_t end = std::min(samples.size(), begin + batch_size);
        const std::vector<PaddedSample> chunk(samples.begin() + long(begin),
                                              samples.begin() + long(end));
        const ForwardCache cache = forward(chunk, params);
        for (size_t bi = 0; bi < chunk.size(); ++bi) {
            // strict > keeps ties on index 0 = positive
            const size_t cls = cache.probs(bi, 1) > cache.probs(bi, 0) ? 1 : 0;
            out.push_back({sentiment_from_index(cls), cache.probs(bi, cls)});
        }
    }
    return out;
}

namespace {

double batch_loss(const std::vector<PaddedSample>& batch, const ModelParams& params,
                  const std::vector<size_t>& labels) {
    return mean_cross_entropy(forward(batch, params).probs, labels);
}

} // namespace

double gradient_check(ModelParams& params, const std::vector<PaddedSample>& batch,
                      double eps, bool corrupt_first_gate) {
    if (batch.empty()) throw ArgumentError("gradient_check: empty batch");
    if (eps <= 0.0) throw ArgumentError("gradient_check: eps must be positive");
    std::vector<size_t> labels;
    labels.reserve(batch.size());
    for (const auto& sample : batch) labels.push_back(class_index(sample.label));

    ModelGrads grads;
    {
        const ForwardCache cache = forward(batch, params);
        grads = backward(cache, labels, params);
    }
    if (corrupt_first_gate) grads.W[0].fill(0.0);

    std::vector<std::pair<Matrix*, const Matrix*>> groups;
    for (size_t k = 0; k < params.W.size(); ++k) {
        groups.emplace_back(&params.W[k], &grads.W[k]);
        groups.emplace_back(&params.U[k], &grads.U[k]);
        groups.emplace_back(&params.b[k], &grads.b[k]);
    }
    groups.emplace_back(&params.W_y, &grads.W_y);
    groups.emplace_back(&params.b_y, &grads.b_y);

    double worst = 0.0;
    const auto probe = [&](double* theta, double analytic) {
        const double saved = *theta;
        *theta = saved + eps;
        const double up = batch_loss(batch, params, labels);
        *theta = saved - eps;
        const double down = batch_loss(batch, params, labels);
        *theta = saved;
        const double numeric = (up - down) / (2.0 * eps);
        const double rel = std::abs(analytic - numeric) /
                           std::max({std::abs(analytic), std::abs(numeric), 1e-8});
        worst = std::max(worst, rel);
    };

    for (auto& [param, grad] : groups)
        for (size_t n = 0; n < param->size(); ++n)
            probe(&param->values()[n], grad->values()[n]);

    if (params.embedding.trainable && grads.has_embedding) {
        // Row 0 stays frozen (its analytic gradient is pinned to zero), so
        // only rows >= 1 are probed.
        Matrix& emb = params.embedding.values;
        for (size_t r = 1; r < emb.rows(); ++r)
            for (size_t d = 0; d < emb.cols(); ++d)
                probe(&emb(r, d), grads.embedding(r, d));
    }
    return worst;
}

LstmCellResult lstm_cell_forward(const std::vector<double>& x,
                                 const std::vector<double>& h_prev,
                                 const std::vector<double>& c_prev,
                                 const ModelParams& params) {
    validate_params(params);
    if (params.arch != Arch::lstm) throw ArgumentError("lstm_cell_forward: wrong arch");
    const size_t hidden = params.hidden_size;
    if (x.size() != params.input_dim || h_prev.size() != hidden || c_prev.size() != hidden)
        throw ArgumentError("lstm_cell_forward: vector sizes disagree with params");

    // Accumulation order mirrors the batched kernels exactly: input term
    // first, then the recurrent term, then the bias.
    const auto pre = [&](size_t k, size_t j) {
        double acc = 0.0;
        for (size_t d = 0; d < params.input_dim; ++d) acc += params.W[k](j, d) * x[d];
        for (size_t m = 0; m < hidden; ++m) acc += params.U[k](j, m) * h_prev[m];
        return acc + params.b[k](0, j);
    };

    LstmCellResult res;
    res.i.resize(hidden);
    res.f.resize(hidden);
    res.o.resize(hidden);
    res.g.resize(hidden);
    res.c.resize(hidden);
    res.h.resize(hidden);
    for (size_t j = 0; j < hidden; ++j) {
        res.i[j] = sigmoid(pre(0, j));
        res.f[j] = sigmoid(pre(1, j));
        res.o[j] = sigmoid(pre(2, j));
        res.g[j] = std::tanh(pre(3, j));
        res.c[j] = res.f[j] * c_prev[j] + res.i[j] * res.g[j];
        res.h[j] = res.o[j] * std::tanh(res.c[j]);
    }
    return res;
}

GruCellResult gru_cell_forward(const std::vector<double>& x,
                               const std::vector<double>& h_prev,
                               const ModelParams& params) {
    validate_params(params);
    if (params.arch != Arch::gru) throw ArgumentError("gru_cell_forward: wrong arch");
    const size_t hidden = params.hidden_size;
    if (x.size() != params.input_dim || h_prev.size() != hidden)
        throw ArgumentError("gru_cell_forward: vector sizes disagree with params");

    const auto pre = [&](size_t k, size_t j, const std::vector<double>& rec) {
        double acc = 0.0;
        for (size_t d = 0; d < params.input_dim; ++d) acc += params.W[k](j, d) * x[d];
        for (size_t m = 0; m < hidden; ++m) acc += params.U[k](j, m) * rec[m];
        return acc + params.b[k](0, j);
    };

    GruCellResult res;
    res.z.resize(hidden);
    res.r.resize(hidden);
    res.candidate.resize(hidden);
    res.h.resize(hidden);
    for (size_t j = 0; j < hidden; ++j) {
        res.z[j] = sigmoid(pre(0, j, h_prev));
        res.r[j] = sigmoid(pre(1, j, h_prev));
    }
    std::vector<double> gated(hidden);
    for (size_t j = 0; j < hidden; ++j) gated[j] = res.r[j] * h_prev[j];
    for (size_t j = 0; j < hidden; ++j) {
        res.candidate[j] = std::tanh(pre(2, j, gated));
        res.h[j] = (1.0 - res.z[j]) * h_prev[j] + res.z[j] * res.candidate[j];
    }
    return res;
}

std::vector<double> rnn_cell_forward(const std::vector<double>& x,
                                     const std::vector<double>& h_prev,
                                     const ModelParams& params) {
    validate_params(params);
    if (params.arch != Arch::rnn) throw ArgumentError("rnn_cell_forward: wrong arch");
    const size_t hidden = params.hidden_size;
    if (x.size() != params.input_dim || h_prev.size() != hidden)
        throw ArgumentError("rnn_cell_forward: vector sizes disagree with params");

    std::vector<double> h(hidden);
    for (size_t j = 0; j < hidden; ++j) {
        double acc = 0.0;
        for (size_t d = 0; d < params.input_dim; ++d) acc += params.W[0](j, d) * x[d];
        for (size_t m = 0; m < hidden; ++m) acc += params.U[0](j, m) * h_prev[m];
        h[j] = std::tanh(acc + params.b[0](0, j));
    }
    return h;
}

} // namespace microrep
