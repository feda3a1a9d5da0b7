#include "doctest.h"
#include "helpers.hpp"

#include "dg/exactlin.hpp"

using namespace dg;

TEST_CASE("rational arithmetic is exact and canonical") {
    Rat a(2, 4);
    CHECK(a.str() == "1/2");
    CHECK((a * Rat(2)).str() == "1");
    Rat b(-3, 6);
    CHECK(b.str() == "-1/2");
    CHECK((a + b).is_zero());
    Rat c(7, -14);
    CHECK(c.str() == "-1/2");  // positive denominator
    CHECK((Rat(3, 7) * Rat(7, 3)).is_one());
    CHECK(Rat::parse("22/7") == Rat(22, 7));
    CHECK(Rat::parse(Rat(-12, 9).str()) == Rat(-4, 3));
}

TEST_CASE("prime field arithmetic binds moduli and inverts") {
    Fp a(3, 7), b(5, 7);
    CHECK((a + b).residue() == 1);
    CHECK((a * b).residue() == 1);
    CHECK((a - b).residue() == 5);
    CHECK((a / b).residue() == 2);  // 3 * 5^{-1} = 3 * 3 = 2 mod 7
    CHECK(a.str() == "3 mod 7");
    Fp unbound(2);
    CHECK((a * unbound).residue() == 6);
    CHECK((Fp(1) / Fp(2, 11)).residue() == 6);
    CHECK(Fp::parse("3/5", 7).residue() == 2);
    CHECK_THROWS(Fp(1, 7) + Fp(1, 11));
}

TEST_CASE("rank on the stated examples") {
    CHECK(rank(identity<Rat>(2)) == 2);
    CHECK(rank(zeros<Rat>(3, 4)) == 0);
    Mat<Rat> m = zeros<Rat>(2, 2);
    m(0, 0) = Rat(1);
    m(0, 1) = Rat(2);
    m(1, 0) = Rat(2);
    m(1, 1) = Rat(4);
    CHECK(rank(m) == 1);  // hand elimination: second row is twice the first
}

TEST_CASE("kernel bases on the stated examples") {
    CHECK(kernel_basis(identity<Rat>(3)).cols() == 0);
    Mat<Rat> z = zeros<Rat>(2, 3);
    Mat<Rat> k = kernel_basis(z);
    CHECK(k.cols() == 3);
    CHECK(k == identity<Rat>(3));
    Mat<Rat> m = zeros<Rat>(2, 2);
    m(0, 0) = Rat(1);
    m(0, 1) = Rat(2);
    m(1, 0) = Rat(2);
    m(1, 1) = Rat(4);
    Mat<Rat> km = kernel_basis(m);
    REQUIRE(km.cols() == 1);
    // proportional to (2, -1): kernel vector has x0 = -2 x1
    CHECK(km(0, 0) * Rat(-1) == km(1, 0) * Rat(2));
    CHECK(is_zero_mat(Mat<Rat>(m * km)));
}

TEST_CASE("solve: particular solutions and inconsistency") {
    Vec<Rat> rhs = Vec<Rat>::Constant(2, Rat(0));
    rhs(0) = Rat(1);
    auto s = solve<Rat>(identity<Rat>(2), rhs);
    REQUIRE(s.has_value());
    CHECK((*s)(0) == Rat(1));
    CHECK((*s)(1) == Rat(0));

    Mat<Rat> row = zeros<Rat>(1, 2);
    row(0, 0) = Rat(1);
    row(0, 1) = Rat(1);
    Vec<Rat> two = Vec<Rat>::Constant(1, Rat(2));
    auto s2 = solve<Rat>(row, two);
    REQUIRE(s2.has_value());
    CHECK((*s2)(0) + (*s2)(1) == Rat(2));
    CHECK((*s2)(0) == Rat(2));  // deterministic pivot: free variable set to zero

    Mat<Rat> col = zeros<Rat>(2, 1);
    col(0, 0) = Rat(1);
    col(1, 0) = Rat(1);
    Vec<Rat> bad = Vec<Rat>::Constant(2, Rat(0));
    bad(1) = Rat(1);
    CHECK_FALSE(solve<Rat>(col, bad).has_value());

    CHECK_THROWS(solve<Rat>(col, Vec<Rat>::Constant(3, Rat(0))));
}

TEST_CASE("complement_basis follows the non-pivot-coordinate rule") {
    Mat<Rat> sub = zeros<Rat>(2, 1);
    sub(0, 0) = Rat(1);
    Mat<Rat> c = complement_basis<Rat>(sub, 2);
    REQUIRE(c.cols() == 1);
    CHECK(c(0, 0) == Rat(0));
    CHECK(c(1, 0) == Rat(1));

    Mat<Rat> empty = zeros<Rat>(2, 0);
    CHECK(complement_basis<Rat>(empty, 2) == identity<Rat>(2));

    Mat<Rat> diag = zeros<Rat>(2, 1);
    diag(0, 0) = Rat(1);
    diag(1, 0) = Rat(1);
    Mat<Rat> c2 = complement_basis<Rat>(diag, 2);
    REQUIRE(c2.cols() == 1);
    CHECK(c2(0, 0) == Rat(0));
    CHECK(c2(1, 0) == Rat(1));

    Mat<Rat> dep = zeros<Rat>(2, 2);
    dep(0, 0) = Rat(1);
    dep(0, 1) = Rat(2);
    CHECK_THROWS(complement_basis<Rat>(dep, 2));
}

TEST_CASE("rank-nullity and exact solve on random matrices, both fields") {
    dgtest::Rng rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        int r = rng.uniform(1, 6), c = rng.uniform(1, 6);
        Mat<Rat> m = dgtest::random_matrix<Rat>(rng, r, c);
        CHECK(rank(m) + kernel_basis(m).cols() == c);
        Vec<Rat> x = dgtest::random_matrix<Rat>(rng, c, 1).col(0);
        Vec<Rat> rhs = m * x;
        auto s = solve<Rat>(m, rhs);
        REQUIRE(s.has_value());
        CHECK(Vec<Rat>(m * *s) == rhs);
    }
    for (int trial = 0; trial < 25; ++trial) {
        int r = rng.uniform(1, 6), c = rng.uniform(1, 6);
        Mat<Fp> m = zeros<Fp>(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m(i, j) = Fp(rng.uniform(0, 4), 5);
        CHECK(rank(m) + kernel_basis(m).cols() == c);
    }
}

TEST_CASE("rank is invariant under row permutation") {
    dgtest::Rng rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        int r = rng.uniform(2, 6), c = rng.uniform(1, 6);
        Mat<Rat> m = dgtest::random_matrix<Rat>(rng, r, c);
        int base = rank(m);
        for (int s = 0; s < 4; ++s) {
            int i = rng.uniform(0, r - 1), j = rng.uniform(0, r - 1);
            m.row(i).swap(m.row(j));
            CHECK(rank(m) == base);
        }
    }
}

TEST_CASE("graded maps compose degreewise") {
    GradedSpace s;
    s.set_dim(0, 2);
    s.set_dim(1, 1);
    GradedMap<Rat> f(s, s, 1);
    Mat<Rat> b = zeros<Rat>(1, 2);
    b(0, 0) = Rat(1);
    f.set_block(0, b);
    GradedMap<Rat> sq = f.compose_after(f);
    CHECK(sq.is_zero());
    GradedMap<Rat> id = GradedMap<Rat>::identity_on(s);
    CHECK(id.compose_after(f) == f);
    CHECK(f.compose_after(id) == f);
}
