#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "microrep/error.hpp"
#include "microrep/model.hpp"
#include "microrep/rng.hpp"

using namespace microrep;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Embedding rows at word-vector scale; row 0 stays zero.
EmbeddingMatrix make_embedding(size_t v, size_t d, uint64_t seed, double scale = 0.8,
                               bool trainable = false) {
    EmbeddingMatrix e;
    e.values = Matrix(v, d);
    e.dim = d;
    e.trainable = trainable;
    for (size_t r = 1; r < v; ++r) {
        SplitMix64 rng(mix_seed(seed, r));
        for (size_t c = 0; c < d; ++c) e.values(r, c) = rng.next_double(-scale, scale);
    }
    return e;
}

PaddedSample sample_of(std::vector<size_t> indices, Sentiment label, std::string id = "s") {
    PaddedSample s;
    s.indices = std::move(indices);
    s.label = label;
    s.source_id = std::move(id);
    return s;
}

// Set every weight and bias of a zero-params model to the same scalar.
void fill_params(ModelParams& p, double v) {
    for (auto& m : p.W) m.fill(v);
    for (auto& m : p.U) m.fill(v);
    for (auto& m : p.b) m.fill(v);
}

std::vector<PaddedSample> small_batch(const EmbeddingMatrix& emb, size_t max_len,
                                      uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<PaddedSample> batch;
    const size_t lens[] = {max_len, 3, 4, max_len};
    for (size_t i = 0; i < 4; ++i) {
        std::vector<size_t> idx(max_len, 0);
        for (size_t t = 0; t < lens[i]; ++t)
            idx[t] = 1 + rng.next_below(emb.values.rows() - 1);
        batch.push_back(sample_of(std::move(idx),
                                  i % 2 ? Sentiment::negative : Sentiment::positive,
                                  "b" + std::to_string(i)));
    }
    return batch;
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("arch names round-trip") {
    CHECK(arch_from_string("lstm") == Arch::lstm);
    CHECK(arch_from_string("rnn") == Arch::rnn);
    CHECK(arch_from_string("gru") == Arch::gru);
    CHECK(std::string(to_string(Arch::gru)) == "gru");
    CHECK_THROWS_AS((void)arch_from_string("cnn"), ArgumentError);
    CHECK(gate_count(Arch::lstm) == 4);
    CHECK(gate_count(Arch::gru) == 3);
    CHECK(gate_count(Arch::rnn) == 1);
}

TEST_CASE("lstm cell with all-zero parameters") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = zero_params(Arch::lstm, emb, 4);
    std::vector<double> x{0.3, -0.2, 0.9};
    std::vector<double> h_prev{0.1, -0.4, 0.2, 0.05};
    std::vector<double> c_prev{0.5, -1.0, 0.25, 0.0};

    LstmCellResult r = lstm_cell_forward(x, h_prev, c_prev, p);
    for (size_t j = 0; j < 4; ++j) {
        CHECK(r.i[j] == 0.5);
        CHECK(r.f[j] == 0.5);
        CHECK(r.o[j] == 0.5);
        CHECK(r.g[j] == 0.0);
        CHECK(r.c[j] == 0.5 * c_prev[j]);
        CHECK(std::abs(r.h[j] - 0.5 * std::tanh(0.5 * c_prev[j])) < 1e-15);
    }
}

TEST_CASE("lstm cell with forget bias one and zero inputs stays at rest") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = zero_params(Arch::lstm, emb, 4);
    p.b[1].fill(1.0);  // forget gate bias
    std::vector<double> zero3(3, 0.0), zero4(4, 0.0);
    LstmCellResult r = lstm_cell_forward(zero3, zero4, zero4, p);
    for (size_t j = 0; j < 4; ++j) {
        CHECK(r.c[j] == 0.0);
        CHECK(r.h[j] == 0.0);
        CHECK(r.f[j] == sigmoid(1.0));
    }
}

TEST_CASE("one-dimensional lstm scalar trace") {
    EmbeddingMatrix emb = make_embedding(3, 1, 1);
    ModelParams p = zero_params(Arch::lstm, emb, 1);
    fill_params(p, 0.1);
    const double x = 1.0, h_prev = 0.2, c_prev = 0.3;
    const double pre = 0.1 * x + 0.1 * h_prev + 0.1;
    const double i = sigmoid(pre), f = sigmoid(pre), o = sigmoid(pre);
    const double g = std::tanh(pre);
    const double c = f * c_prev + i * g;
    const double h = o * std::tanh(c);

    LstmCellResult r = lstm_cell_forward({x}, {h_prev}, {c_prev}, p);
    CHECK(std::abs(r.i[0] - i) < 1e-12);
    CHECK(std::abs(r.f[0] - f) < 1e-12);
    CHECK(std::abs(r.o[0] - o) < 1e-12);
    CHECK(std::abs(r.g[0] - g) < 1e-12);
    CHECK(std::abs(r.c[0] - c) < 1e-12);
    CHECK(std::abs(r.h[0] - h) < 1e-12);
}

TEST_CASE("rnn cell zero weights and scalar trace") {
    EmbeddingMatrix emb = make_embedding(3, 1, 1);
    ModelParams p = zero_params(Arch::rnn, emb, 1);
    std::vector<double> h0 = rnn_cell_forward({0.7}, {0.4}, p);
    CHECK(h0[0] == 0.0);

    fill_params(p, 0.1);
    std::vector<double> h1 = rnn_cell_forward({1.0}, {0.2}, p);
    CHECK(std::abs(h1[0] - std::tanh(0.1 * 1.0 + 0.1 * 0.2 + 0.1)) < 1e-12);
}

TEST_CASE("gru cell zero weights halves the previous hidden state") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = zero_params(Arch::gru, emb, 4);
    std::vector<double> x{0.3, -0.2, 0.9};
    std::vector<double> h_prev{0.4, -0.8, 0.12, 1.0};
    GruCellResult r = gru_cell_forward(x, h_prev, p);
    for (size_t j = 0; j < 4; ++j) {
        CHECK(r.z[j] == 0.5);
        CHECK(r.r[j] == 0.5);
        CHECK(r.candidate[j] == 0.0);
        CHECK(std::abs(r.h[j] - 0.5 * h_prev[j]) < 1e-15);
    }
}

TEST_CASE("one-dimensional gru scalar trace") {
    EmbeddingMatrix emb = make_embedding(3, 1, 1);
    ModelParams p = zero_params(Arch::gru, emb, 1);
    fill_params(p, 0.1);
    const double x = 1.0, h_prev = 0.2;
    const double z = sigmoid(0.1 * x + 0.1 * h_prev + 0.1);
    const double r = sigmoid(0.1 * x + 0.1 * h_prev + 0.1);
    const double cand = std::tanh(0.1 * x + 0.1 * (r * h_prev) + 0.1);
    const double h = (1.0 - z) * h_prev + z * cand;

    GruCellResult got = gru_cell_forward({x}, {h_prev}, p);
    CHECK(std::abs(got.z[0] - z) < 1e-12);
    CHECK(std::abs(got.r[0] - r) < 1e-12);
    CHECK(std::abs(got.candidate[0] - cand) < 1e-12);
    CHECK(std::abs(got.h[0] - h) < 1e-12);
}

TEST_CASE("cell shape mismatches are rejected") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = zero_params(Arch::lstm, emb, 4);
    std::vector<double> bad_x{0.1, 0.2};  // D is 3
    std::vector<double> h(4, 0.0), c(4, 0.0);
    CHECK_THROWS_AS((void)lstm_cell_forward(bad_x, h, c, p), ArgumentError);
    std::vector<double> bad_h(3, 0.0);
    CHECK_THROWS_AS((void)lstm_cell_forward({0.1, 0.2, 0.3}, bad_h, c, p), ArgumentError);
}

TEST_CASE("forward on an all-pad sample with zero parameters is uniform") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = zero_params(Arch::lstm, emb, 4);
    ForwardCache cache = forward({sample_of({0, 0, 0, 0, 0}, Sentiment::positive)}, p);
    REQUIRE(cache.probs.rows() == 1);
    CHECK(cache.probs(0, 0) == 0.5);
    CHECK(cache.probs(0, 1) == 0.5);
}

TEST_CASE("batched rows equal the single-sample forward bit for bit") {
    for (Arch arch : {Arch::lstm, Arch::rnn, Arch::gru}) {
        CAPTURE(to_string(arch));
        EmbeddingMatrix emb = make_embedding(12, 5, 3);
        ModelParams p = init_params(arch, emb, 6, 17);
        auto batch = small_batch(emb, 5, 99);
        ForwardCache all = forward(batch, p);
        for (size_t i = 0; i < batch.size(); ++i) {
            ForwardCache one = forward({batch[i]}, p);
            CHECK(one.probs(0, 0) == all.probs(i, 0));
            CHECK(one.probs(0, 1) == all.probs(i, 1));
        }
    }
}

TEST_CASE("batched lstm forward matches the cell-by-cell composition") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::lstm, emb, 6, 17);
    PaddedSample s = sample_of({4, 9, 2, 11, 7}, Sentiment::positive);

    std::vector<double> h(6, 0.0), c(6, 0.0);
    for (size_t idx : s.indices) {
        std::vector<double> x(5);
        for (size_t d = 0; d < 5; ++d) x[d] = emb.values(idx, d);
        LstmCellResult r = lstm_cell_forward(x, h, c, p);
        h = r.h;
        c = r.c;
    }
    ForwardCache cache = forward({s}, p);
    const Matrix& h_T = cache.h.back();
    for (size_t j = 0; j < 6; ++j) CHECK(std::abs(h_T(0, j) - h[j]) < 1e-12);
}

TEST_CASE("forward purity: identical calls give identical bits") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::gru, emb, 6, 23);
    auto batch = small_batch(emb, 5, 7);
    ForwardCache a = forward(batch, p);
    ForwardCache b = forward(batch, p);
    for (size_t i = 0; i < batch.size(); ++i)
        for (size_t k = 0; k < 2; ++k) CHECK(a.probs(i, k) == b.probs(i, k));
}

TEST_CASE("forward rows are probability distributions") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::lstm, emb, 6, 31);
    ForwardCache cache = forward(small_batch(emb, 5, 8), p);
    for (size_t i = 0; i < cache.probs.rows(); ++i) {
        double sum = cache.probs(i, 0) + cache.probs(i, 1);
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(cache.probs(i, 0) > 0.0);
        CHECK(cache.probs(i, 0) < 1.0);
    }
}

TEST_CASE("forward rejects out-of-range indices and empty batches") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = init_params(Arch::lstm, emb, 4, 5);
    CHECK_THROWS_AS((void)forward({sample_of({99, 0, 0}, Sentiment::positive)}, p),
                    ArgumentError);
    CHECK_THROWS_AS((void)forward({}, p), ArgumentError);
}

TEST_CASE("mask_stop makes trailing padding irrelevant") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams masked = init_params(Arch::lstm, emb, 6, 41, /*mask_stop=*/true);
    PaddedSample short_pad = sample_of({4, 9, 2, 0, 0}, Sentiment::positive);
    PaddedSample long_pad = sample_of({4, 9, 2, 0, 0, 0, 0, 0}, Sentiment::positive);
    ForwardCache a = forward({short_pad}, masked);
    ForwardCache b = forward({long_pad}, masked);
    CHECK(a.probs(0, 0) == b.probs(0, 0));
    CHECK(a.probs(0, 1) == b.probs(0, 1));

    // Without the flag the recurrence keeps running on zero inputs, so the
    // biases keep mutating the state and the two paddings disagree.
    ModelParams unmasked = init_params(Arch::lstm, emb, 6, 41, /*mask_stop=*/false);
    ForwardCache c = forward({short_pad}, unmasked);
    ForwardCache d = forward({long_pad}, unmasked);
    CHECK(c.probs(0, 0) != d.probs(0, 0));
}

TEST_CASE("dense head gradient is probs minus one-hot outer final hidden state") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::lstm, emb, 6, 53);
    PaddedSample s = sample_of({4, 9, 2, 11, 7}, Sentiment::negative);
    ForwardCache cache = forward({s}, p);
    ModelGrads grads = backward(cache, {1}, p);

    const Matrix& h_T = cache.h.back();
    for (size_t cls = 0; cls < 2; ++cls) {
        double delta = cache.probs(0, cls) - (cls == 1 ? 1.0 : 0.0);
        CHECK(std::abs(grads.b_y(0, cls) - delta) < 1e-15);
        for (size_t j = 0; j < 6; ++j)
            CHECK(std::abs(grads.W_y(cls, j) - delta * h_T(0, j)) < 1e-15);
    }
}

TEST_CASE("all-pad batch under mask_stop leaves only the dense bias gradient") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p = init_params(Arch::lstm, emb, 4, 61, /*mask_stop=*/true);
    ForwardCache cache = forward({sample_of({0, 0, 0}, Sentiment::positive)}, p);
    ModelGrads grads = backward(cache, {0}, p);

    for (const auto& g : grads.W)
        for (size_t i = 0; i < g.size(); ++i) CHECK(g.data()[i] == 0.0);
    for (const auto& g : grads.U)
        for (size_t i = 0; i < g.size(); ++i) CHECK(g.data()[i] == 0.0);
    for (const auto& g : grads.b)
        for (size_t i = 0; i < g.size(); ++i) CHECK(g.data()[i] == 0.0);
    for (size_t i = 0; i < grads.W_y.size(); ++i) CHECK(grads.W_y.data()[i] == 0.0);
    CHECK(grads.b_y(0, 0) != 0.0);
    CHECK(grads.b_y(0, 1) != 0.0);
}

TEST_CASE("backward rejects a cache from different parameters") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams p1 = init_params(Arch::lstm, emb, 4, 1);
    ModelParams p2 = init_params(Arch::lstm, emb, 4, 2);
    ForwardCache cache = forward({sample_of({2, 3, 0}, Sentiment::positive)}, p1);
    CHECK_THROWS_AS((void)backward(cache, {0}, p2), ContractError);
    CHECK_THROWS_AS((void)backward(cache, {0, 1}, p1), ArgumentError);  // label count
}

TEST_CASE("gradient check passes for every architecture") {
    for (Arch arch : {Arch::lstm, Arch::rnn, Arch::gru}) {
        CAPTURE(to_string(arch));
        EmbeddingMatrix emb = make_embedding(20, 8, 0, 0.8, /*trainable=*/true);
        ModelParams p = init_params(arch, emb, 6, 0, /*mask_stop=*/true);
        auto batch = small_batch(emb, 5, 1234);
        double err = gradient_check(p, batch, 1e-5);
        CAPTURE(err);
        CHECK(err < 1e-4);
    }
}

TEST_CASE("gradient check catches a corrupted gradient") {
    EmbeddingMatrix emb = make_embedding(20, 8, 0, 0.8, /*trainable=*/true);
    ModelParams p = init_params(Arch::lstm, emb, 6, 0, /*mask_stop=*/true);
    auto batch = small_batch(emb, 5, 1234);
    double err = gradient_check(p, batch, 1e-5, /*corrupt_first_gate=*/true);
    CHECK(err > 1e-2);
}

TEST_CASE("embedding gradients exist only when trainable, with row 0 frozen") {
    EmbeddingMatrix frozen = make_embedding(8, 3, 2, 0.8, /*trainable=*/false);
    ModelParams p = init_params(Arch::lstm, frozen, 4, 3);
    ForwardCache cache = forward({sample_of({2, 5, 0}, Sentiment::positive)}, p);
    ModelGrads g = backward(cache, {0}, p);
    CHECK_FALSE(g.has_embedding);

    EmbeddingMatrix trainable = make_embedding(8, 3, 2, 0.8, /*trainable=*/true);
    ModelParams q = init_params(Arch::lstm, trainable, 4, 3);
    ForwardCache cache2 = forward({sample_of({2, 5, 0}, Sentiment::positive)}, q);
    ModelGrads g2 = backward(cache2, {0}, q);
    REQUIRE(g2.has_embedding);
    for (size_t d = 0; d < 3; ++d) CHECK(g2.embedding(0, d) == 0.0);
    bool any_nonzero = false;
    for (size_t d = 0; d < 3; ++d) any_nonzero = any_nonzero || g2.embedding(2, d) != 0.0;
    CHECK(any_nonzero);
}

TEST_CASE("pre-embedded forward agrees with the lookup path") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::lstm, emb, 6, 71);
    PaddedSample s = sample_of({4, 9, 2, 0, 0}, Sentiment::positive);

    Matrix seq(5, 5);
    for (size_t t = 0; t < 5; ++t)
        for (size_t d = 0; d < 5; ++d) seq(t, d) = emb.values(s.indices[t], d);
    ForwardCache discrete = forward({s}, p);
    ForwardCache embedded = forward_embedded({&seq}, p);
    CHECK(discrete.probs(0, 0) == embedded.probs(0, 0));
    CHECK(discrete.probs(0, 1) == embedded.probs(0, 1));
}

TEST_CASE("predict breaks exact ties toward positive and keeps order") {
    EmbeddingMatrix emb = make_embedding(6, 3, 1);
    ModelParams zero = zero_params(Arch::lstm, emb, 4);
    std::vector<PaddedSample> batch{sample_of({2, 3, 0}, Sentiment::negative, "first"),
                                    sample_of({4, 0, 0}, Sentiment::positive, "second")};
    auto preds = predict(batch, zero);
    REQUIRE(preds.size() == 2);
    for (const auto& pr : preds) {
        CHECK(pr.label == Sentiment::positive);
        CHECK(pr.confidence == 0.5);
    }
}

TEST_CASE("predict matches forward argmax and is batch-size invariant") {
    EmbeddingMatrix emb = make_embedding(12, 5, 3);
    ModelParams p = init_params(Arch::gru, emb, 6, 83);
    std::vector<PaddedSample> samples;
    SplitMix64 rng(5);
    for (int i = 0; i < 9; ++i) {
        std::vector<size_t> idx(5);
        for (auto& v : idx) v = rng.next_below(12);
        samples.push_back(sample_of(std::move(idx), Sentiment::positive));
    }
    auto big = predict(samples, p, 64);
    auto tiny = predict(samples, p, 2);
    REQUIRE(big.size() == samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        CHECK(big[i].label == tiny[i].label);
        CHECK(big[i].confidence == tiny[i].confidence);
        ForwardCache one = forward({samples[i]}, p);
        size_t amax = one.probs(0, 0) >= one.probs(0, 1) ? 0 : 1;
        CHECK(class_index(big[i].label) == amax);
        CHECK(big[i].confidence == one.probs(0, amax));
    }
}

TEST_CASE("mean_cross_entropy averages per-sample losses") {
    Matrix probs(2, 2);
    probs(0, 0) = 1.0; probs(0, 1) = 0.0;
    probs(1, 0) = 0.5; probs(1, 1) = 0.5;
    double loss = mean_cross_entropy(probs, {0, 1});
    double expect = (-std::log(1.0 + 1e-12) - std::log(0.5 + 1e-12)) / 2.0;
    CHECK(std::abs(loss - expect) < 1e-15);
}

} // TEST_SUITE
