#include <doctest.h>

#include <cmath>
#include <vector>

#include "microrep/error.hpp"
#include "microrep/numeric.hpp"
#include "microrep/rng.hpp"

using namespace microrep;

TEST_SUITE("numeric") {

TEST_CASE("softmax of equal logits is uniform") {
    std::vector<double> p = softmax({0.0, 0.0});
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);
}

TEST_CASE("softmax survives huge logits via max subtraction") {
    std::vector<double> p = softmax({1000.0, 1000.0});
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);
    std::vector<double> q = softmax({1e4, 1e4 - 5.0});
    CHECK(std::isfinite(q[0]));
    CHECK(q[0] > q[1]);
}

TEST_CASE("softmax closed-form ratio") {
    std::vector<double> p = softmax({std::log(1.0), std::log(3.0)});
    CHECK(std::abs(p[0] - 0.25) < 1e-15);
    CHECK(std::abs(p[1] - 0.75) < 1e-15);
}

TEST_CASE("softmax sums to one, preserves argmax, rejects empty input") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(5);
        for (double& x : v) x = rng.next_double(-8.0, 8.0);
        std::vector<double> p = softmax(v);
        double sum = 0.0;
        size_t amax_v = 0, amax_p = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            sum += p[i];
            CHECK(p[i] > 0.0);
            CHECK(p[i] < 1.0);
            if (v[i] > v[amax_v]) amax_v = i;
            if (p[i] > p[amax_p]) amax_p = i;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(amax_v == amax_p);
    }
    CHECK_THROWS_AS((void)softmax({}), ArgumentError);
}

TEST_CASE("softmax shift invariance") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(4), shifted(4);
        double c = rng.next_double(-50.0, 50.0);
        for (size_t i = 0; i < 4; ++i) {
            v[i] = rng.next_double(-5.0, 5.0);
            shifted[i] = v[i] + c;
        }
        std::vector<double> p = softmax(v), q = softmax(shifted);
        for (size_t i = 0; i < 4; ++i) CHECK(std::abs(p[i] - q[i]) < 1e-12);
    }
}

TEST_CASE("softmax_rows matches the vector form per row") {
    Matrix logits(3, 4);
    SplitMix64 rng(8);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 4; ++j) logits(i, j) = rng.next_double(-3.0, 3.0);
    Matrix probs = softmax_rows(logits);
    for (size_t i = 0; i < 3; ++i) {
        std::vector<double> row(logits.row(i), logits.row(i) + 4);
        std::vector<double> expect = softmax(row);
        for (size_t j = 0; j < 4; ++j) CHECK(probs(i, j) == expect[j]);
    }
}

TEST_CASE("cross entropy closed forms") {
    CHECK(cross_entropy({1.0, 0.0}, 0) == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(std::abs(cross_entropy({0.5, 0.5}, 0) - std::log(2.0)) < 1e-11);
    CHECK(std::abs(cross_entropy({0.5, 0.5}, 1) - std::log(2.0)) < 1e-11);
    CHECK(std::abs(cross_entropy({0.25, 0.75}, 1) - std::log(4.0 / 3.0)) < 1e-11);
    CHECK(cross_entropy({0.25, 0.75}, 0) >= 0.0);
    CHECK_THROWS_AS((void)cross_entropy({0.5, 0.5}, 2), ArgumentError);
}

TEST_CASE("cross entropy epsilon guard keeps ln(0) finite") {
    double loss = cross_entropy({0.0, 1.0}, 0);
    CHECK(std::isfinite(loss));
    CHECK(loss == -std::log(kCrossEntropyEpsilon));
}

TEST_CASE("softmax + cross-entropy gradient equals probs minus one-hot") {
    // Central finite differences on the composite loss, relative error < 1e-6.
    SplitMix64 rng(13);
    const double eps = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> z(5);
        for (double& x : z) x = rng.next_double(-3.0, 3.0);
        size_t cls = rng.next_below(5);
        std::vector<double> probs = softmax(z);
        for (size_t i = 0; i < z.size(); ++i) {
            double analytic = probs[i] - (i == cls ? 1.0 : 0.0);
            std::vector<double> plus = z, minus = z;
            plus[i] += eps;
            minus[i] -= eps;
            double numeric =
                (cross_entropy(softmax(plus), cls) - cross_entropy(softmax(minus), cls)) /
                (2.0 * eps);
            double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
            CHECK(std::abs(analytic - numeric) / denom < 1e-6);
        }
    }
}

TEST_CASE("glorot uniform bound and determinism") {
    // L = sqrt(6/(2+4)) = 1.
    Matrix a = glorot_uniform(2, 4, 99);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.data()[i] >= -1.0);
        CHECK(a.data()[i] <= 1.0);
    }
    Matrix b = glorot_uniform(2, 4, 99);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a.data()[i] == b.data()[i]);
    Matrix c = glorot_uniform(2, 4, 100);
    bool any_diff = false;
    for (size_t i = 0; i < a.size(); ++i) any_diff = any_diff || a.data()[i] != c.data()[i];
    CHECK(any_diff);
}

TEST_CASE("glorot uniform sample mean is near zero") {
    Matrix m = glorot_uniform(100, 100, 7);
    double mean = 0.0;
    for (size_t i = 0; i < m.size(); ++i) mean += m.data()[i];
    mean /= static_cast<double>(m.size());
    CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("adam zero gradient is a fixed point") {
    Matrix theta(2, 3, 0.75);
    Matrix zero(2, 3, 0.0);
    std::vector<Matrix*> params{&theta};
    std::vector<const Matrix*> grads{&zero};
    AdamState state = AdamState::like({&theta});
    CHECK(state.t == 0);
    adam_step(params, grads, state, AdamConfig{});
    CHECK(state.t == 1);
    for (size_t i = 0; i < theta.size(); ++i) CHECK(theta.data()[i] == 0.75);
}

TEST_CASE("adam first step moves by about lr") {
    // Scalar g=1: bias-corrected m-hat/sqrt(v-hat) = 1, so the step is
    // lr/(1+eps-ish) = 0.001 up to ~1e-7.
    Matrix theta(1, 1, 0.0);
    Matrix g(1, 1, 1.0);
    std::vector<Matrix*> params{&theta};
    std::vector<const Matrix*> grads{&g};
    AdamState state = AdamState::like({&theta});
    adam_step(params, grads, state, AdamConfig{});
    CHECK(std::abs(theta(0, 0) + 0.001) < 1e-7);
}

TEST_CASE("adam constant gradient steps by exactly lr over eps-correction") {
    // With constant g, m-hat = g and v-hat = g^2 at every t, so each update
    // has magnitude lr/(1+eps) independent of t.
    Matrix theta(1, 1, 0.0);
    Matrix g(1, 1, 1.0);
    std::vector<Matrix*> params{&theta};
    std::vector<const Matrix*> grads{&g};
    AdamState state = AdamState::like({&theta});
    AdamConfig cfg;
    double prev = 0.0;
    for (int t = 1; t <= 100; ++t) {
        adam_step(params, grads, state, cfg);
        double step = prev - theta(0, 0);
        CHECK(std::abs(step - cfg.lr) < 1e-10);
        prev = theta(0, 0);
    }
    CHECK(state.t == 100);
}

TEST_CASE("adam with lr zero leaves parameters bit-identical") {
    SplitMix64 rng(21);
    Matrix theta(3, 3);
    Matrix g(3, 3);
    for (size_t i = 0; i < theta.size(); ++i) {
        theta.data()[i] = rng.next_double(-2.0, 2.0);
        g.data()[i] = rng.next_double(-2.0, 2.0);
    }
    Matrix before = theta;
    std::vector<Matrix*> params{&theta};
    std::vector<const Matrix*> grads{&g};
    AdamState state = AdamState::like({&theta});
    AdamConfig cfg;
    cfg.lr = 0.0;
    adam_step(params, grads, state, cfg);
    for (size_t i = 0; i < theta.size(); ++i) CHECK(theta.data()[i] == before.data()[i]);
}

TEST_CASE("adam group determinism and shape checks") {
    Matrix a1(2, 2, 0.5), a2(2, 2, 0.5);
    Matrix g1(2, 2, 0.25);
    std::vector<Matrix*> p1{&a1}, p2{&a2};
    std::vector<const Matrix*> gs{&g1};
    AdamState s1 = AdamState::like({&a1}), s2 = AdamState::like({&a2});
    for (int i = 0; i < 5; ++i) {
        adam_step(p1, gs, s1, AdamConfig{});
        adam_step(p2, gs, s2, AdamConfig{});
    }
    for (size_t i = 0; i < a1.size(); ++i) CHECK(a1.data()[i] == a2.data()[i]);

    Matrix wrong(3, 2, 0.0);
    std::vector<const Matrix*> bad{&wrong};
    CHECK_THROWS_AS(adam_step(p1, bad, s1, AdamConfig{}), ArgumentError);
    std::vector<const Matrix*> empty;
    CHECK_THROWS_AS(adam_step(p1, empty, s1, AdamConfig{}), ArgumentError);
}

} // TEST_SUITE
