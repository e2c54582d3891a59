#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnspace/qpoly.hpp"

namespace qns {

/// Parses an algebra expression into canonical normal-ordered form.
///
/// Grammar (juxtaposition is multiplication, noncommutative, left
/// associative):
///   expr      := ["+"|"-"] term (("+"|"-") term)*
///   term      := factor ("*"? factor)*
///   factor    := base ("^" signed_int)?
///   base      := "q" | generator | rational | "(" expr ")"
///   generator := "x" int | "x" | "y"     (bare aliases only when dim <= 2)
///   rational  := int ("/" int)?
///
/// Monomials written out of normal order (e.g. "y*x") are reordered with the
/// correct power of q. Errors: SyntaxError with position, UnknownGenerator.
QPoly parse_expr(std::string_view text, int dim);

/// Canonical text for a coefficient, terms by ascending q-exponent,
/// e.g. "1/2*q^-1 + 3 + 2*q^2".
std::string print_scalar(const QScalar& s);

/// Canonical text for an algebra element, terms by ascending lexicographic
/// multidegree. Generators print as x1..xn, or as x, y when dim = 2.
/// parse_expr(print_canonical(f), f.dim()) == f exactly.
std::string print_canonical(const QPoly& f);

/// A system instance as read from a system-definition file: dimension,
/// deformation parameter, one generator image per generator, and an
/// optional initial point. A second image set (keys Y[i]) may be present
/// for bracket computations.
struct SystemDef {
    int dim = 0;
    bool q_symbolic = true;
    Rational q_value = Rational(1);  // meaningful when !q_symbolic; in (0,1]
    std::vector<QPoly> field_images;
    std::optional<std::vector<QPoly>> second_images;
    std::optional<std::vector<double>> initial_point;
    std::string notes;

    /// Numeric q for simulation: the file value when numeric, else fallback.
    double q_or(double fallback) const { return q_symbolic ? fallback : to_double(q_value); }
};

/// Parses the line-oriented "key = value" system format. Keys: dim, q
/// ("symbolic" or a number in (0,1]), X[i], optional Y[i], optional point
/// (comma-separated reals), optional notes; '#' starts a comment line.
/// Errors: SyntaxError, MissingField, BadQValue.
SystemDef parse_system(std::string_view text);

/// parse_system over a file's contents. Throws IoError when unreadable.
SystemDef load_system(const std::filesystem::path& path);

}  // namespace qns
