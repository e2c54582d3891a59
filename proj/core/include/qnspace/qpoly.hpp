#pragma once

#include <map>
#include <span>

#include "qnspace/errors.hpp"
#include "qnspace/multidegree.hpp"
#include "qnspace/qscalar.hpp"

namespace qns {

/// Result of normal-ordering a product of two monomials:
///   x^A * x^B = q^q_power * x^degree.
struct MonoProd {
    long long q_power;
    Multidegree degree;
};

/// Normal-orders x^A * x^B under the relations x_j x_i = q x_i x_j (i < j).
/// Closed form: q_power = sum over i < j of A[j] * B[i], degree = A + B.
/// Valid for negative exponents as well. Throws DimensionMismatch.
MonoProd mono_mul(const Multidegree& a, const Multidegree& b);

/// Element of quantum n-space in normal order: a finite sum of terms
/// c_I * x_1^{I_1} ... x_n^{I_n} with QScalar coefficients c_I.
///
/// Canonical form: no stored coefficient is zero; every multidegree has
/// length dim. Values are immutable in spirit: all operations return new
/// polynomials.
class QPoly {
public:
    using Terms = std::map<Multidegree, QScalar>;

    explicit QPoly(int dim);

    static QPoly constant(int dim, const QScalar& c);
    static QPoly one(int dim) { return constant(dim, QScalar::one()); }
    /// Generator x_{index+1} (zero-based index; prints as x1..xn).
    static QPoly generator(int dim, int index);
    static QPoly monomial(int dim, const Multidegree& degree, const QScalar& c);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    /// Coefficient of x^I (zero when absent).
    QScalar coeff(const Multidegree& degree) const;

    QPoly operator-() const;
    QPoly& operator+=(const QPoly& rhs);
    QPoly& operator-=(const QPoly& rhs);

    friend QPoly operator+(QPoly lhs, const QPoly& rhs) { return lhs += rhs; }
    friend QPoly operator-(QPoly lhs, const QPoly& rhs) { return lhs -= rhs; }
    /// Noncommutative product; q^k factors from reordering fold into the
    /// coefficients.
    friend QPoly operator*(const QPoly& lhs, const QPoly& rhs);
    friend QPoly operator*(const QScalar& c, const QPoly& f);

    bool operator==(const QPoly& rhs) const { return dim_ == rhs.dim_ && terms_ == rhs.terms_; }

    /// True when the element is a single monomial c q^k x^J, i.e. has a
    /// two-sided inverse in the Laurent algebra.
    bool is_invertible_monomial() const;

    /// Inverse of an invertible monomial. Throws NotInvertible otherwise.
    QPoly inverted() const;

    /// f^k; negative k requires an invertible monomial.
    QPoly pow(int k) const;

    /// Classical evaluation: coefficients at q = q0, generators at the
    /// coordinates of p. PoleAtZero when p_i = 0 meets a negative exponent
    /// (or q0 = 0 meets a q-pole).
    double eval(std::span<const double> p, double q0) const;

    /// Exact variant; multiplicative at q0 = 1.
    Rational eval_exact(std::span<const Rational> p, const Rational& q0) const;

    /// Extends the generator assignment x_i -> images[i] to the whole
    /// element: x^I maps to the ordered product images[0]^{I_0} ... and
    /// coefficients pass through unchanged. Generators occurring with a
    /// negative exponent must have invertible images (NotInvertibleImage).
    QPoly substitute(std::span<const QPoly> images) const;

    void add_term(const Multidegree& degree, const QScalar& c);

private:
    int dim_;
    Terms terms_;
};

enum class PolyOp { add, sub, mul };

QPoly poly_op(const QPoly& f, const QPoly& g, PolyOp op);

}  // namespace qns
