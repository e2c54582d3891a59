#include "qnspace/vector_field.hpp"

namespace qns {
namespace {

void check_same_dim(const VectorField& a, const VectorField& b) {
    if (a.dim != b.dim) {
        throw Error(Errc::dimension_mismatch, "fields have different dimensions");
    }
}

void check_strict(const VectorField& X) {
    if (!validate_field(X).strict_ok) {
        throw Error(Errc::not_a_homomorphism,
                    "field does not preserve the commutation relation");
    }
}

}  // namespace

VectorField VectorField::identity(int dim) {
    VectorField X;
    X.dim = dim;
    X.images.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) X.images.push_back(QPoly::generator(dim, i));
    return X;
}

ValidationReport validate_field(const VectorField& X) {
    ValidationReport report;
    for (int i = 0; i < X.dim; ++i) {
        for (int j = i + 1; j < X.dim; ++j) {
            QPoly r = X.images[j] * X.images[i] -
                      QPoly::constant(X.dim, QScalar::q()) * X.images[i] * X.images[j];
            if (!r.is_zero()) report.strict_ok = false;
            report.residuals.emplace(std::pair{i, j}, std::move(r));
        }
    }
    return report;
}

QPoly apply_field(const VectorField& X, const QPoly& f, bool strict) {
    if (X.dim != f.dim()) {
        throw Error(Errc::dimension_mismatch, "field and argument have different dimensions");
    }
    if (strict) check_strict(X);
    return f.substitute(X.images);
}

VectorField compose(const VectorField& X, const VectorField& Y, bool strict) {
    check_same_dim(X, Y);
    VectorField out;
    out.dim = X.dim;
    out.images.reserve(Y.images.size());
    for (const QPoly& g : Y.images) out.images.push_back(apply_field(X, g, strict));
    return out;
}

QPoly bracket_apply(const VectorField& X, const VectorField& Y, const QPoly& f, bool strict) {
    check_same_dim(X, Y);
    return apply_field(X, apply_field(Y, f, strict), strict) -
           apply_field(Y, apply_field(X, f, strict), strict);
}

QPoly leibniz_residual(const VectorField& X, const VectorField& Y, const VectorField& Z,
                       const QPoly& f) {
    check_same_dim(X, Y);
    check_same_dim(X, Z);
    const QPoly xf = apply_field(X, f);
    const QPoly yf = apply_field(Y, f);
    const QPoly zf = apply_field(Z, f);

    // [X, YZ](f) with (YZ)(g) = Y(g)·Z(g).
    QPoly lhs = apply_field(X, yf * zf) - apply_field(Y, xf) * apply_field(Z, xf);
    // ([X,Y]Z)(f) + (Y[X,Z])(f).
    QPoly rhs = (apply_field(X, yf) - apply_field(Y, xf)) * zf +
                yf * (apply_field(X, zf) - apply_field(Z, xf));
    return lhs - rhs;
}

std::vector<CPoly> classicalize(const VectorField& X, double q0) {
    std::vector<CPoly> out;
    out.reserve(X.images.size());
    for (const QPoly& g : X.images) out.push_back(classicalize(g, q0));
    return out;
}

}  // namespace qns
