#include "qnspace/qpoly.hpp"

#include <cmath>

namespace qns {

namespace {

void require_same_dim(int a, int b) {
    if (a != b) {
        throw Error(Errc::dimension_mismatch,
                    "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
    }
}

}  // namespace

MonoProd mono_mul(const Multidegree& a, const Multidegree& b) {
    require_same_dim(a.dim(), b.dim());
    long long k = 0;
    // Each factor x_i^{B_i} moves left past every x_j^{A_j} with j > i,
    // picking up q^{A_j * B_i} per pair.
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = i + 1; j < a.dim(); ++j) {
            k += static_cast<long long>(a[j]) * static_cast<long long>(b[i]);
        }
    }
    return {k, a + b};
}

QPoly::QPoly(int dim) : dim_(dim) {
    if (dim < 1) throw Error(Errc::dimension_mismatch, "dimension must be >= 1");
}

QPoly QPoly::constant(int dim, const QScalar& c) {
    QPoly f(dim);
    f.add_term(Multidegree(dim), c);
    return f;
}

QPoly QPoly::generator(int dim, int index) {
    if (index < 0 || index >= dim) {
        throw Error(Errc::unknown_generator,
                    "generator x" + std::to_string(index + 1) + " out of range for dimension " +
                        std::to_string(dim));
    }
    Multidegree d(dim);
    d[index] = 1;
    return monomial(dim, d, QScalar::one());
}

QPoly QPoly::monomial(int dim, const Multidegree& degree, const QScalar& c) {
    QPoly f(dim);
    require_same_dim(dim, degree.dim());
    f.add_term(degree, c);
    return f;
}

QScalar QPoly::coeff(const Multidegree& degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? QScalar() : it->second;
}

void QPoly::add_term(const Multidegree& degree, const QScalar& c) {
    require_same_dim(dim_, degree.dim());
    if (c.is_zero()) return;
    auto it = terms_.find(degree);
    if (it == terms_.end()) {
        terms_.emplace(degree, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

QPoly QPoly::operator-() const {
    QPoly out(dim_);
    for (const auto& [d, c] : terms_) out.terms_.emplace(d, -c);
    return out;
}

QPoly& QPoly::operator+=(const QPoly& rhs) {
    require_same_dim(dim_, rhs.dim_);
    for (const auto& [d, c] : rhs.terms_) add_term(d, c);
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& rhs) {
    require_same_dim(dim_, rhs.dim_);
    for (const auto& [d, c] : rhs.terms_) add_term(d, -c);
    return *this;
}

QPoly operator*(const QPoly& lhs, const QPoly& rhs) {
    require_same_dim(lhs.dim_, rhs.dim_);
    QPoly out(lhs.dim_);
    for (const auto& [da, ca] : lhs.terms_) {
        for (const auto& [db, cb] : rhs.terms_) {
            MonoProd prod = mono_mul(da, db);
            out.add_term(prod.degree,
                         ca * cb * QScalar::q(static_cast<int>(prod.q_power)));
        }
    }
    return out;
}

QPoly operator*(const QScalar& c, const QPoly& f) {
    QPoly out(f.dim_);
    for (const auto& [d, fc] : f.terms_) out.add_term(d, c * fc);
    return out;
}

bool QPoly::is_invertible_monomial() const {
    return terms_.size() == 1 && terms_.begin()->second.is_monomial();
}

QPoly QPoly::inverted() const {
    if (!is_invertible_monomial()) {
        throw Error(Errc::not_invertible,
                    "only single-term monomials with single-term coefficients are invertible");
    }
    const auto& [degree, c] = *terms_.begin();
    // x^J * x^{-J} = q^{-s} with s = sum_{i<j} J_j J_i, so the inverse of
    // c x^J is c^{-1} q^{s} x^{-J}.
    long long s = 0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            s += static_cast<long long>(degree[j]) * static_cast<long long>(degree[i]);
        }
    }
    return monomial(dim_, -degree, c.inverted() * QScalar::q(static_cast<int>(s)));
}

QPoly QPoly::pow(int k) const {
    if (k < 0) return inverted().pow(-k);
    QPoly acc = one(dim_);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

double QPoly::eval(std::span<const double> p, double q0) const {
    if (static_cast<int>(p.size()) != dim_) {
        throw Error(Errc::dimension_mismatch, "point has wrong dimension");
    }
    double sum = 0.0;
    for (const auto& [d, c] : terms_) {
        double prod = c.eval(q0);
        for (int i = 0; i < dim_; ++i) {
            if (d[i] == 0) continue;
            if (p[static_cast<std::size_t>(i)] == 0.0) {
                if (d[i] < 0) {
                    throw Error(Errc::pole_at_zero,
                                "coordinate " + std::to_string(i + 1) +
                                    " is zero but occurs with a negative exponent");
                }
                prod = 0.0;
                break;
            }
            prod *= std::pow(p[static_cast<std::size_t>(i)], static_cast<double>(d[i]));
        }
        sum += prod;
    }
    return sum;
}

Rational QPoly::eval_exact(std::span<const Rational> p, const Rational& q0) const {
    if (static_cast<int>(p.size()) != dim_) {
        throw Error(Errc::dimension_mismatch, "point has wrong dimension");
    }
    Rational sum(0);
    for (const auto& [d, c] : terms_) {
        Rational prod = c.eval_exact(q0);
        for (int i = 0; i < dim_; ++i) {
            if (d[i] == 0) continue;
            if (p[static_cast<std::size_t>(i)] == 0) {
                if (d[i] < 0) {
                    throw Error(Errc::pole_at_zero,
                                "coordinate " + std::to_string(i + 1) +
                                    " is zero but occurs with a negative exponent");
                }
                prod = 0;
                break;
            }
            prod *= rational_pow(p[static_cast<std::size_t>(i)], d[i]);
        }
        sum += prod;
    }
    return sum;
}

QPoly QPoly::substitute(std::span<const QPoly> images) const {
    if (static_cast<int>(images.size()) != dim_) {
        throw Error(Errc::dimension_mismatch, "need one image per generator");
    }
    for (const QPoly& img : images) require_same_dim(dim_, img.dim());

    QPoly out(dim_);
    for (const auto& [d, c] : terms_) {
        QPoly acc = constant(dim_, c);
        for (int i = 0; i < dim_; ++i) {
            if (d[i] == 0) continue;
            const QPoly& img = images[static_cast<std::size_t>(i)];
            if (d[i] < 0 && !img.is_invertible_monomial()) {
                throw Error(Errc::not_invertible_image,
                            "generator x" + std::to_string(i + 1) +
                                " occurs with a negative exponent but its image is not an "
                                "invertible monomial");
            }
            acc = acc * img.pow(d[i]);
        }
        out += acc;
    }
    return out;
}

QPoly poly_op(const QPoly& f, const QPoly& g, PolyOp op) {
    switch (op) {
        case PolyOp::add: return f + g;
        case PolyOp::sub: return f - g;
        case PolyOp::mul: return f * g;
    }
    throw std::invalid_argument("bad PolyOp");
}

}  // namespace qns
