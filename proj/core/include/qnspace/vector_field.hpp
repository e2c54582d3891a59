#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qnspace/cpoly.hpp"
#include "qnspace/qpoly.hpp"

namespace qns {

/// A vector field on quantum n-space, given by the images of the generators.
/// The action on arbitrary elements is basis-wise substitution (apply_field),
/// which is well-defined whether or not the images respect the commutation
/// relation; validate_field reports how far they are from doing so.
struct VectorField {
    int dim = 0;
    std::vector<QPoly> images;

    static VectorField identity(int dim);
};

/// Exact homomorphism defect per generator pair: for i < j the residual is
/// X(x_j)·X(x_i) − q·X(x_i)·X(x_j), which is zero iff X preserves the
/// relation x_j x_i = q x_i x_j.
struct ValidationReport {
    bool strict_ok = true;
    std::map<std::pair<int, int>, QPoly> residuals;
};

ValidationReport validate_field(const VectorField& X);

/// Image of f under the generator substitution defined by X. With strict set,
/// refuses fields whose validation residuals are nonzero (NotAHomomorphism).
QPoly apply_field(const VectorField& X, const QPoly& f, bool strict = false);

/// (X∘Y).images[i] = X(Y(x_i)).
VectorField compose(const VectorField& X, const VectorField& Y, bool strict = false);

/// [X,Y] acting on f: X(Y(f)) − Y(X(f)). The commutator is kept as an
/// operator; it need not have a generator-image presentation of its own.
QPoly bracket_apply(const VectorField& X, const VectorField& Y, const QPoly& f,
                    bool strict = false);

/// Defect of the product rule [X,YZ] = [X,Y]Z + Y[X,Z] at f, where a product
/// of operators acts by (AB)(g) = A(g)·B(g). Zero for every desk-checked
/// case; computed exactly so a nonzero value is meaningful.
QPoly leibniz_residual(const VectorField& X, const VectorField& Y, const VectorField& Z,
                       const QPoly& f);

/// Componentwise classicalization of the images at q = q0.
std::vector<CPoly> classicalize(const VectorField& X, double q0);

}  // namespace qns
