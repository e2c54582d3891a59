#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qnspace/cpoly.hpp"
#include "qnspace/linalg.hpp"
#include "qnspace/vector_field.hpp"

using namespace qns;
using testutil::cst;
using testutil::gen;

TEST_CASE("validation pins the exchange defect exactly") {
    const auto report = validate_field(testutil::swap_field());
    CHECK_FALSE(report.strict_ok);
    const QPoly expected =
        QPoly::monomial(2, Multidegree{1, 1}, QScalar(1) - QScalar::term(2, 1));
    CHECK(report.residuals.at({0, 1}) == expected);

    CHECK(validate_field(VectorField::identity(2)).strict_ok);
    CHECK(validate_field(VectorField::identity(4)).strict_ok);
    CHECK(validate_field(testutil::diagonal_field(Rational(2), Rational(-5, 7))).strict_ok);
}

TEST_CASE("monomial fields are valid exactly when the exponent matrix is unimodular") {
    testutil::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
        CHECK(validate_field(testutil::random_valid_field(rng)).strict_ok);
    }
    // determinant 2: x ↦ x², y ↦ y  (residual picks up unequal factors)
    VectorField bad{2, {gen(2, 0) * gen(2, 0), gen(2, 1)}};
    CHECK_FALSE(validate_field(bad).strict_ok);
}

TEST_CASE("field application is substitution") {
    const auto E = testutil::swap_field();
    CHECK(apply_field(E, gen(2, 0)) == gen(2, 1));
    CHECK(apply_field(E, QPoly::one(2)) == QPoly::one(2));
    // xy ↦ yx = q·xy
    CHECK(apply_field(E, gen(2, 0) * gen(2, 1)) ==
          QPoly::constant(2, QScalar::q()) * gen(2, 0) * gen(2, 1));
}

TEST_CASE("strict mode refuses relation-breaking fields") {
    const auto E = testutil::swap_field();
    CHECK_THROWS_AS(apply_field(E, gen(2, 0), /*strict=*/true), Error);
    CHECK_NOTHROW(apply_field(VectorField::identity(2), gen(2, 0), /*strict=*/true));
}

TEST_CASE("composition on generator images") {
    const auto E = testutil::swap_field();
    const auto EE = compose(E, E);
    CHECK(EE.images[0] == gen(2, 0));
    CHECK(EE.images[1] == gen(2, 1));

    const auto id = VectorField::identity(2);
    testutil::Rng rng(83);
    for (int i = 0; i < 20; ++i) {
        const auto X = testutil::random_valid_field(rng);
        CHECK(compose(X, id).images[0] == X.images[0]);
        CHECK(compose(id, X).images[1] == X.images[1]);
    }

    // coefficients ride along linearly
    VectorField Y{2, {gen(2, 0), QPoly::constant(2, QScalar::q()) * gen(2, 1)}};
    const auto EY = compose(E, Y);
    CHECK(EY.images[0] == gen(2, 1));
    CHECK(EY.images[1] == QPoly::constant(2, QScalar::q()) * gen(2, 0));
}

TEST_CASE("commutator action on probes") {
    const auto E = testutil::swap_field();
    const auto id = VectorField::identity(2);
    VectorField Y{2, {gen(2, 0), QPoly::constant(2, QScalar::q()) * gen(2, 1)}};

    CHECK(bracket_apply(E, id, gen(2, 0)).is_zero());
    const QPoly expected =
        QPoly::monomial(2, Multidegree{0, 1}, QScalar(1) - QScalar::q());
    CHECK(bracket_apply(E, Y, gen(2, 0)) == expected);  // (1 - q)·y
    CHECK(bracket_apply(E, Y, QPoly::one(2)).is_zero());
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi on valid fields") {
    testutil::Rng rng(97);
    for (int i = 0; i < 60; ++i) {
        const auto X = testutil::random_valid_field(rng);
        const auto Y = testutil::random_valid_field(rng);
        const auto Z = testutil::random_valid_field(rng);
        const QPoly f = testutil::random_monomial_probe(rng);

        CHECK(bracket_apply(X, Y, f) == -bracket_apply(Y, X, f));

        const QPoly jacobi =
            (apply_field(X, bracket_apply(Y, Z, f)) - bracket_apply(Y, Z, apply_field(X, f))) +
            (apply_field(Y, bracket_apply(Z, X, f)) - bracket_apply(Z, X, apply_field(Y, f))) +
            (apply_field(Z, bracket_apply(X, Y, f)) - bracket_apply(X, Y, apply_field(Z, f)));
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("product-rule residual vanishes on the three desk cases") {
    const auto E = testutil::swap_field();
    const auto id = VectorField::identity(2);
    const auto x = gen(2, 0);

    CHECK(leibniz_residual(E, id, id, x).is_zero());

    const auto D1 = testutil::diagonal_field(Rational(2), Rational(3));
    const auto D2 = testutil::diagonal_field(Rational(-1, 2), Rational(5));
    const auto D3 = testutil::diagonal_field(Rational(7), Rational(-1, 3));
    CHECK(leibniz_residual(D1, D2, D3, x).is_zero());

    CHECK(leibniz_residual(E, E, E, x).is_zero());
}

TEST_CASE("classicalization forgets ordering and evaluates coefficients") {
    const QPoly qxy = QPoly::constant(2, QScalar::q()) * gen(2, 0) * gen(2, 1);
    CPoly t1t2 = CPoly::monomial(2, Multidegree{1, 1}, 1.0);
    CHECK(classicalize(qxy, 1.0) == t1t2);

    const QPoly defect =
        QPoly::monomial(2, Multidegree{1, 1}, QScalar(1) - QScalar::term(2, 1));
    CHECK(classicalize(defect, 1.0).is_zero());
    CHECK(classicalize(defect, 0.5) == CPoly::monomial(2, Multidegree{1, 1}, 0.75));
}

namespace {

// Coefficient-wise distance over the union of the two term sets.
double coeff_distance(const CPoly& a, const CPoly& b) {
    auto diff = a.terms();
    for (const auto& [deg, c] : b.terms()) diff[deg] -= c;
    double out = 0.0;
    for (const auto& [deg, c] : diff) out = std::max(out, std::abs(c));
    return out;
}

double coeff_scale(const CPoly& a) {
    double out = 1.0;
    for (const auto& [deg, c] : a.terms()) out = std::max(out, std::abs(c));
    return out;
}

}  // namespace

TEST_CASE("classicalization is linear, and multiplicative at q = 1") {
    testutil::Rng rng(113);
    for (int i = 0; i < 50; ++i) {
        const QPoly f = testutil::random_poly(rng, 2);
        const QPoly g = testutil::random_poly(rng, 2);
        // Both identities are exact over the rationals; after the coefficients
        // become doubles the two sides round differently, so compare termwise.
        for (double q0 : {1.0, 0.5}) {
            const CPoly sum = classicalize(f + g, q0);
            CHECK(coeff_distance(sum, classicalize(f, q0) + classicalize(g, q0)) <=
                  1e-12 * coeff_scale(sum));
        }
        const CPoly lhs = classicalize(f * g, 1.0);
        const CPoly rhs = classicalize(f, 1.0) * classicalize(g, 1.0);
        CHECK(coeff_distance(lhs, rhs) <= 1e-12 * coeff_scale(lhs));
    }
}

TEST_CASE("jacobian desk values") {
    const auto F = classicalize(testutil::swap_field(), 1.0);
    const double p[2] = {0.3, -0.8};
    const Matrix j = jacobian(F, p);
    CHECK(j[0][0] == 0.0);
    CHECK(j[0][1] == 1.0);
    CHECK(j[1][0] == 1.0);
    CHECK(j[1][1] == 0.0);

    // F = (t1², t1·t2) at (1,2)
    std::vector<CPoly> G{CPoly::monomial(2, Multidegree{2, 0}, 1.0),
                         CPoly::monomial(2, Multidegree{1, 1}, 1.0)};
    const double p2[2] = {1.0, 2.0};
    const Matrix j2 = jacobian(G, p2);
    CHECK(j2[0][0] == 2.0);
    CHECK(j2[0][1] == 0.0);
    CHECK(j2[1][0] == 2.0);
    CHECK(j2[1][1] == 1.0);
}

TEST_CASE("formal jacobian matches central differences") {
    testutil::Rng rng(127);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<CPoly> F;
        for (int i = 0; i < 2; ++i) {
            F.push_back(classicalize(testutil::random_poly(rng, 2, 3, /*laurent=*/false), 0.5));
        }
        std::vector<double> p{rng.real(0.5, 2.0), rng.real(0.5, 2.0)};
        const Matrix j = jacobian(F, p);
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) {
                std::vector<double> hi = p, lo = p;
                hi[k] += h;
                lo[k] -= h;
                const double fd = (F[i].eval(hi) - F[i].eval(lo)) / (2 * h);
                CHECK(j[i][k] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("pole-aware evaluation of classical polynomials") {
    CPoly inv = CPoly::monomial(1, Multidegree{-1}, 1.0);
    std::vector<double> zero{0.0};
    CHECK_THROWS_AS(inv.eval(zero), Error);
    std::vector<double> two{2.0};
    CHECK(inv.eval(two) == 0.5);
}

TEST_CASE("linear solves and eigenvalues") {
    Matrix a{{2.0, 1.0}, {1.0, 3.0}};
    const auto x = solve_linear(a, {5.0, 10.0});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(3.0));

    Matrix singular{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(solve_linear(singular, {1.0, 1.0}), Error);

    const auto saddle = eigenvalues(Matrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(saddle[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(saddle[1].real() == doctest::Approx(1.0).epsilon(1e-12));

    const auto rotation = eigenvalues(Matrix{{0.0, 1.0}, {-1.0, 0.0}});
    CHECK(rotation[0].real() == 0.0);
    CHECK(rotation[0].imag() == doctest::Approx(-1.0));
    CHECK(rotation[1].imag() == doctest::Approx(1.0));
}

TEST_CASE("characteristic polynomial route agrees with known spectra") {
    // distinct real spectrum {1, 2, 3}
    Matrix a{{2.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, 3.0}};
    const auto coeffs = characteristic_polynomial(a);
    // λ³ − 6λ² + 11λ − 6
    CHECK(coeffs[0] == doctest::Approx(1.0));
    CHECK(coeffs[1] == doctest::Approx(-6.0));
    CHECK(coeffs[2] == doctest::Approx(11.0));
    CHECK(coeffs[3] == doctest::Approx(-6.0));

    const auto eig = eigenvalues(a);
    CHECK(eig[0].real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eig[1].real() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(eig[2].real() == doctest::Approx(3.0).epsilon(1e-9));
    for (const auto& ev : eig) CHECK(std::abs(ev.imag()) < 1e-9);
}
