#include "qnspace/cpoly.hpp"

#include <cmath>
#include <cstdlib>

namespace qns {
namespace {

constexpr double kDropTol = 0.0;  // exact zero only; coefficients are formal

double powi(double base, int e) {
    if (e < 0) {
        if (base == 0.0) {
            throw Error(Errc::pole_at_zero, "coordinate is zero with negative exponent");
        }
        return 1.0 / powi(base, -e);
    }
    double acc = 1.0;
    double b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace

CPoly::CPoly(int dim) : dim_(dim) {}

CPoly CPoly::constant(int dim, double c) {
    CPoly f(dim);
    f.add_term(Multidegree(dim), c);
    return f;
}

CPoly CPoly::generator(int dim, int index) {
    Multidegree d(dim);
    d[index] = 1;
    return monomial(dim, d, 1.0);
}

CPoly CPoly::monomial(int dim, const Multidegree& degree, double c) {
    CPoly f(dim);
    f.add_term(degree, c);
    return f;
}

void CPoly::add_term(const Multidegree& degree, double c) {
    if (degree.dim() != dim_) {
        throw Error(Errc::dimension_mismatch, "term degree has wrong dimension");
    }
    auto it = terms_.find(degree);
    if (it == terms_.end()) {
        if (c != kDropTol) terms_.emplace(degree, c);
        return;
    }
    it->second += c;
    if (it->second == kDropTol) terms_.erase(it);
}

CPoly CPoly::operator-() const {
    CPoly out(dim_);
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, -c);
    return out;
}

CPoly& CPoly::operator+=(const CPoly& rhs) {
    if (dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "mixed dimensions in +");
    for (const auto& [d, c] : rhs.terms_) add_term(d, c);
    return *this;
}

CPoly& CPoly::operator-=(const CPoly& rhs) {
    if (dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "mixed dimensions in -");
    for (const auto& [d, c] : rhs.terms_) add_term(d, -c);
    return *this;
}

CPoly operator*(const CPoly& lhs, const CPoly& rhs) {
    if (lhs.dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "mixed dimensions in *");
    CPoly out(lhs.dim_);
    for (const auto& [da, ca] : lhs.terms_) {
        for (const auto& [db, cb] : rhs.terms_) {
            out.add_term(da + db, ca * cb);
        }
    }
    return out;
}

double CPoly::eval(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim_) {
        throw Error(Errc::dimension_mismatch, "evaluation point has wrong dimension");
    }
    double acc = 0.0;
    for (const auto& [d, c] : terms_) {
        double term = c;
        for (int i = 0; i < dim_; ++i) {
            if (d[i] == 0) continue;
            term *= powi(p[i], d[i]);
        }
        acc += term;
    }
    return acc;
}

CPoly CPoly::partial(int axis) const {
    CPoly out(dim_);
    for (const auto& [d, c] : terms_) {
        if (d[axis] == 0) continue;
        Multidegree dd = d;
        dd[axis] -= 1;
        out.add_term(dd, c * d[axis]);
    }
    return out;
}

CPoly classicalize(const QPoly& f, double q0) {
    CPoly out(f.dim());
    for (const auto& [d, c] : f.terms()) {
        out.add_term(d, c.eval(q0));
    }
    return out;
}

Matrix jacobian(std::span<const CPoly> f, std::span<const double> p) {
    const int n = static_cast<int>(f.size());
    Matrix j(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            j[i][k] = f[i].partial(k).eval(p);
        }
    }
    return j;
}

}  // namespace qns
