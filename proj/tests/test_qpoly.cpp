#include "doctest.h"
#include "oracles.hpp"
#include "qnspace/qpoly.hpp"

using namespace qns;
using testutil::cst;
using testutil::gen;

TEST_CASE("monomial products pick up the exchange factor") {
    // x * y stays put; y * x moves one generator past the other.
    auto xy = mono_mul(Multidegree{1, 0}, Multidegree{0, 1});
    CHECK(xy.q_power == 0);
    CHECK(xy.degree == Multidegree{1, 1});

    auto yx = mono_mul(Multidegree{0, 1}, Multidegree{1, 0});
    CHECK(yx.q_power == 1);
    CHECK(yx.degree == Multidegree{1, 1});

    auto y2x = mono_mul(Multidegree{0, 2}, Multidegree{1, 0});
    CHECK(y2x.q_power == 2);

    // inverse generators flip the sign of the factor
    auto inv = mono_mul(Multidegree{0, 1}, Multidegree{-1, 0});
    CHECK(inv.q_power == -1);
    CHECK(inv.degree == Multidegree{-1, 1});
}

TEST_CASE("closed form matches the one-swap-at-a-time oracle") {
    testutil::Rng rng(101);
    for (int i = 0; i < 300; ++i) {
        const int dim = rng.pick(1, 3);
        const auto a = testutil::random_degree(rng, dim, -3, 3);
        const auto b = testutil::random_degree(rng, dim, -3, 3);
        const auto got = mono_mul(a, b);
        const auto want = testutil::oracle_mono_mul(a, b);
        CHECK(got.q_power == want.q_power);
        CHECK(got.degree == want.degree);
    }
}

TEST_CASE("the coordinate relation itself") {
    const QPoly x = gen(2, 0), y = gen(2, 1);
    CHECK(y * x == QPoly::constant(2, QScalar::q()) * (x * y));
}

TEST_CASE("ring laws hold exactly") {
    testutil::Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        const int dim = rng.pick(1, 3);
        QPoly f = testutil::random_poly(rng, dim);
        QPoly g = testutil::random_poly(rng, dim);
        QPoly h = testutil::random_poly(rng, dim);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f + (-f) == QPoly(dim));
    }
}

TEST_CASE("monomials invert; sums do not") {
    const QPoly x = gen(2, 0), y = gen(2, 1);
    QPoly m = cst(2, Rational(3, 2)) * x * y * y;
    CHECK(m.is_invertible_monomial());
    CHECK(m * m.inverted() == QPoly::one(2));
    CHECK(m.inverted() * m == QPoly::one(2));

    QPoly xy = x * y;
    CHECK(xy * xy.inverted() == QPoly::one(2));

    CHECK_FALSE((x + y).is_invertible_monomial());
    CHECK_THROWS_AS((x + y).inverted(), Error);
    CHECK_THROWS_AS(QPoly(2).inverted(), Error);
}

TEST_CASE("negative powers multiply out exactly") {
    testutil::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const int dim = rng.pick(1, 3);
        QPoly m = QPoly::monomial(dim, testutil::random_degree(rng, dim, -3, 3),
                                  QScalar::term(rng.pick(-2, 2), rng.rational(-4, 4)));
        CHECK(m * m.inverted() == QPoly::one(dim));
        CHECK(m.pow(3) * m.pow(-3) == QPoly::one(dim));
        CHECK(m.pow(0) == QPoly::one(dim));
    }
}

TEST_CASE("substitution with identity images is the identity") {
    testutil::Rng rng(41);
    std::vector<QPoly> images{gen(2, 0), gen(2, 1)};
    for (int i = 0; i < 50; ++i) {
        QPoly f = testutil::random_poly(rng, 2);
        CHECK(f.substitute(images) == f);
    }
}

TEST_CASE("substitution respects products for relation-preserving images") {
    testutil::Rng rng(43);
    std::vector<QPoly> diag{cst(2, Rational(2)) * gen(2, 0),
                            cst(2, Rational(-1, 3)) * gen(2, 1)};
    for (int i = 0; i < 50; ++i) {
        QPoly f = testutil::random_poly(rng, 2);
        QPoly g = testutil::random_poly(rng, 2);
        CHECK((f * g).substitute(diag) == f.substitute(diag) * g.substitute(diag));
    }
}

TEST_CASE("substituting a non-invertible image into a negative power fails") {
    QPoly f = gen(2, 0).pow(-1);
    std::vector<QPoly> images{gen(2, 0) + gen(2, 1), gen(2, 1)};
    CHECK_THROWS_AS(f.substitute(images), Error);
    try {
        f.substitute(images);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_invertible_image);
    }
}

TEST_CASE("classical evaluation and poles") {
    const QPoly x = gen(2, 0), y = gen(2, 1);
    QPoly f = QPoly::constant(2, QScalar::q()) * x * y;  // q·xy
    const double p[2] = {2.0, 3.0};
    CHECK(f.eval(p, 1.0) == 6.0);
    CHECK(f.eval(p, 0.5) == 3.0);

    QPoly inv = x.pow(-1);
    const double origin[2] = {0.0, 5.0};
    CHECK_THROWS_AS(inv.eval(origin, 1.0), Error);

    // positive power of a zero coordinate is just zero, not a pole
    CHECK((x * y).eval(origin, 1.0) == 0.0);
}

TEST_CASE("exact evaluation is multiplicative at q = 1") {
    testutil::Rng rng(53);
    const Rational one(1);
    for (int i = 0; i < 100; ++i) {
        const int dim = rng.pick(1, 3);
        QPoly f = testutil::random_poly(rng, dim);
        QPoly g = testutil::random_poly(rng, dim);
        std::vector<Rational> p;
        for (int k = 0; k < dim; ++k) p.push_back(rng.rational(-5, 5));  // never zero
        CHECK((f * g).eval_exact(p, one) == f.eval_exact(p, one) * g.eval_exact(p, one));
    }
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(gen(2, 0) * gen(3, 0), Error);
    CHECK_THROWS_AS(gen(2, 0) + gen(3, 0), Error);
    const double p[3] = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(gen(2, 0).eval(p, 1.0), Error);
}
