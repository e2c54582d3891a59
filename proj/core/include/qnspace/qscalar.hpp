#pragma once

#include <map>
#include <utility>

#include "qnspace/errors.hpp"
#include "qnspace/rational.hpp"

namespace qns {

/// Laurent polynomial in the deformation parameter q with exact rational
/// coefficients: sum of c_k * q^k over a finite set of integer exponents k.
///
/// Canonical form: no stored coefficient is zero; the zero element has an
/// empty term map. All operations preserve canonical form.
class QScalar {
public:
    using Terms = std::map<int, Rational>;

    QScalar() = default;  // zero
    QScalar(int c) { set_term(0, Rational(c)); }
    QScalar(const Rational& c) { set_term(0, c); }

    /// c * q^k
    static QScalar term(int exponent, const Rational& c = Rational(1)) {
        QScalar s;
        s.set_term(exponent, c);
        return s;
    }
    static QScalar q(int exponent = 1) { return term(exponent); }
    static QScalar one() { return QScalar(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    /// Coefficient of q^k (zero when absent).
    Rational coeff(int exponent) const;

    int min_exponent() const;  // requires nonzero
    int max_exponent() const;  // requires nonzero

    bool is_monomial() const { return terms_.size() == 1; }
    /// The single (exponent, coefficient) pair; requires is_monomial().
    std::pair<int, Rational> monomial() const;

    QScalar operator-() const;
    QScalar& operator+=(const QScalar& rhs);
    QScalar& operator-=(const QScalar& rhs);
    QScalar& operator*=(const QScalar& rhs);

    friend QScalar operator+(QScalar lhs, const QScalar& rhs) { return lhs += rhs; }
    friend QScalar operator-(QScalar lhs, const QScalar& rhs) { return lhs -= rhs; }
    friend QScalar operator*(const QScalar& lhs, const QScalar& rhs);

    bool operator==(const QScalar& rhs) const { return terms_ == rhs.terms_; }

    /// Numeric evaluation at q = q0. PoleAtZero when q0 = 0 and a negative
    /// exponent is present (positive exponents contribute nothing at 0).
    double eval(double q0) const;

    /// Exact evaluation at a rational q0; same pole rule.
    Rational eval_exact(const Rational& q0) const;

    /// Multiplicative inverse; defined only for single-term elements.
    /// Throws NotInvertible otherwise (a multi-term Laurent polynomial has
    /// no Laurent-polynomial inverse).
    QScalar inverted() const;

    /// Adds c * q^k and re-canonicalizes that term.
    void add_term(int exponent, const Rational& c);

private:
    void set_term(int exponent, const Rational& c) {
        if (c != 0) terms_[exponent] = c;
    }

    Terms terms_;
};

enum class RingOp { add, sub, mul };

/// Dispatch form mirroring the three ring operations.
QScalar scalar_ring_op(const QScalar& a, const QScalar& b, RingOp op);

}  // namespace qns
