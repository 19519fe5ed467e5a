#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "microrep/error.hpp"
#include "microrep/matrix.hpp"
#include "microrep/rng.hpp"

using namespace microrep;

namespace {

Matrix random_matrix(size_t r, size_t c, uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = rng.next_double(-1.0, 1.0);
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    REQUIRE(a.same_shape(b));
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

} // namespace

TEST_SUITE("matrix") {

TEST_CASE("matmul against a hand-computed product") {
    Matrix a(2, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
    Matrix b(3, 2);
    b(0, 0) = 7;  b(0, 1) = 8;
    b(1, 0) = 9;  b(1, 1) = 10;
    b(2, 0) = 11; b(2, 1) = 12;

    Matrix c = matmul(a, b);
    REQUIRE(c.rows() == 2);
    REQUIRE(c.cols() == 2);
    CHECK(c(0, 0) == 58.0);
    CHECK(c(0, 1) == 64.0);
    CHECK(c(1, 0) == 139.0);
    CHECK(c(1, 1) == 154.0);
}

TEST_CASE("identity is neutral") {
    Matrix a = random_matrix(4, 4, 7);
    Matrix id(4, 4);
    for (size_t i = 0; i < 4; ++i) id(i, i) = 1.0;
    CHECK(max_abs_diff(matmul(a, id), a) == 0.0);
    CHECK(max_abs_diff(matmul(id, a), a) == 0.0);
}

TEST_CASE("associativity on random 5x5 instances") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Matrix a = random_matrix(5, 5, seed * 3 + 1);
        Matrix b = random_matrix(5, 5, seed * 3 + 2);
        Matrix c = random_matrix(5, 5, seed * 3 + 3);
        CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-9);
    }
}

TEST_CASE("matmul_acc accumulates on top of existing values") {
    // Small integers: every partial sum is exact, so accumulation order
    // cannot matter and the comparison can be exact.
    Matrix a(2, 3), b(3, 2), base(2, 2);
    for (size_t i = 0; i < a.size(); ++i) a.data()[i] = double(i + 1);       // 1..6
    for (size_t i = 0; i < b.size(); ++i) b.data()[i] = double(2 * i + 1);   // 1,3,..,11
    for (size_t i = 0; i < base.size(); ++i) base.data()[i] = double(i) - 2.0;
    Matrix out = base;
    matmul_acc(a, b, out);
    Matrix prod = matmul(a, b);
    for (size_t i = 0; i < out.rows(); ++i)
        for (size_t j = 0; j < out.cols(); ++j)
            CHECK(out(i, j) == base(i, j) + prod(i, j));

    // Random values: the in-place accumulation may round differently from
    // base + (a b), so only a tiny drift is allowed.
    Matrix ra = random_matrix(3, 4, 1);
    Matrix rb = random_matrix(4, 2, 2);
    Matrix rbase = random_matrix(3, 2, 3);
    Matrix racc = rbase;
    matmul_acc(ra, rb, racc);
    Matrix rprod = matmul(ra, rb);
    for (size_t i = 0; i < racc.rows(); ++i)
        for (size_t j = 0; j < racc.cols(); ++j)
            CHECK(racc(i, j) == doctest::Approx(rbase(i, j) + rprod(i, j)).epsilon(1e-12));
}

TEST_CASE("matmul_nt equals multiplying by the explicit transpose") {
    Matrix a = random_matrix(3, 5, 11);
    Matrix b = random_matrix(4, 5, 12);  // b^T is 5x4
    CHECK(max_abs_diff(matmul_nt(a, b), matmul(a, transpose(b))) == 0.0);
}

TEST_CASE("matmul_tn equals multiplying the explicit transpose") {
    Matrix a = random_matrix(6, 3, 21);  // a^T is 3x6
    Matrix b = random_matrix(6, 4, 22);
    CHECK(max_abs_diff(matmul_tn(a, b), matmul(transpose(a), b)) < 1e-12);
}

TEST_CASE("transpose is an involution") {
    Matrix a = random_matrix(4, 7, 31);
    Matrix t = transpose(a);
    REQUIRE(t.rows() == 7);
    REQUIRE(t.cols() == 4);
    CHECK(t(2, 3) == a(3, 2));
    CHECK(max_abs_diff(transpose(t), a) == 0.0);
}

TEST_CASE("column_sums adds down each column") {
    Matrix a(3, 2);
    a(0, 0) = 1; a(0, 1) = 10;
    a(1, 0) = 2; a(1, 1) = 20;
    a(2, 0) = 3; a(2, 1) = 30;
    Matrix s = column_sums(a);
    REQUIRE(s.rows() == 1);
    REQUIRE(s.cols() == 2);
    CHECK(s(0, 0) == 6.0);
    CHECK(s(0, 1) == 60.0);
}

TEST_CASE("shape mismatches are rejected") {
    Matrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS((void)matmul(a, b), ArgumentError);
    Matrix c(4, 2);
    Matrix out(2, 2);
    CHECK_THROWS_AS(matmul_acc(a, c, out), ArgumentError);
}

TEST_CASE("all_finite flags NaN and infinity") {
    Matrix a(2, 2, 1.0);
    CHECK(a.all_finite());
    a(1, 1) = std::nan("");
    CHECK_FALSE(a.all_finite());
    a(1, 1) = 1e308 * 10;
    CHECK_FALSE(a.all_finite());
}

} // TEST_SUITE
