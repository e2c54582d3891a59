#pragma once

#include <map>
#include <span>
#include <vector>

#include "qnspace/errors.hpp"
#include "qnspace/multidegree.hpp"
#include "qnspace/qpoly.hpp"

namespace qns {

/// Commutative Laurent polynomial in the classical coordinates t_1..t_n with
/// double coefficients; the image of a quantum-space element after its
/// coefficients have been evaluated at a fixed q. No zero coefficient is
/// stored.
class CPoly {
public:
    using Terms = std::map<Multidegree, double>;

    explicit CPoly(int dim);

    static CPoly constant(int dim, double c);
    static CPoly generator(int dim, int index);
    static CPoly monomial(int dim, const Multidegree& degree, double c);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    CPoly operator-() const;
    CPoly& operator+=(const CPoly& rhs);
    CPoly& operator-=(const CPoly& rhs);

    friend CPoly operator+(CPoly lhs, const CPoly& rhs) { return lhs += rhs; }
    friend CPoly operator-(CPoly lhs, const CPoly& rhs) { return lhs -= rhs; }
    friend CPoly operator*(const CPoly& lhs, const CPoly& rhs);

    bool operator==(const CPoly& rhs) const { return dim_ == rhs.dim_ && terms_ == rhs.terms_; }

    /// PoleAtZero when a coordinate is zero and occurs with a negative
    /// exponent.
    double eval(std::span<const double> p) const;

    /// Formal partial derivative with respect to t_{axis+1}.
    CPoly partial(int axis) const;

    void add_term(const Multidegree& degree, double c);

private:
    int dim_;
    Terms terms_;
};

/// Evaluates the coefficients of f at q = q0 and forgets the ordering,
/// yielding a classical polynomial in commuting coordinates.
CPoly classicalize(const QPoly& f, double q0);

using Matrix = std::vector<std::vector<double>>;

/// Jacobian of the map F: R^n -> R^n at p; entry (i, j) is dF_i/dt_j via
/// formal differentiation. PoleAtZero when p meets a pole of a partial.
Matrix jacobian(std::span<const CPoly> f, std::span<const double> p);

}  // namespace qns
