#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qnspace/cpoly.hpp"
#include "qnspace/vector_field.hpp"

namespace qns {

enum class Method { tangent, euler, rk4 };

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

/// h > 0; horizon ≥ 0 (zero yields only the initial sample); q0 ∈ (0,1].
struct IntegratorConfig {
    Method method = Method::rk4;
    double step = 0.01;
    double horizon = 1.0;
    double q0 = 1.0;
};

/// Numeric curve on a fixed grid. times are strictly increasing starting at
/// 0; points[0] is the requested initial point, exactly.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    double q0 = 1.0;
    Method method = Method::rk4;
    double step = 0.0;

    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    const std::vector<double>& endpoint() const { return points.back(); }
};

/// Affine curve t ↦ P + t·F̂(P) with the field classicalized at q0 and
/// frozen at the initial point.
Trajectory tangent_trajectory(const VectorField& X, std::span<const double> P, double q0,
                              double horizon, double step);

/// Fixed-step integration of ẋ = F̂(x). Euler and classic four-stage
/// Runge–Kutta march the state; tangent reuses the frozen affine curve.
/// PoleEncountered / NonFiniteState carry the failing time; any coordinate
/// beyond 1e12 in magnitude counts as non-finite.
Trajectory integrate(const VectorField& X, std::span<const double> P,
                     const IntegratorConfig& cfg);

/// Same integration on an already classicalized right-hand side; cfg.q0 is
/// recorded on the result but not otherwise used.
Trajectory integrate_classical(std::span<const CPoly> F, std::span<const double> P,
                               const IntegratorConfig& cfg);

/// Max over interior samples of ∞-norm(central difference − F̂(point)):
/// how well the curve satisfies its own equation. Needs ≥ 3 samples.
double residual_defect(const Trajectory& traj, const VectorField& X);

struct SampledSeries {
    std::vector<double> times;
    std::vector<double> values;
};

/// Central finite differences of t ↦ f evaluated along the trajectory
/// (interior samples only).
SampledSeries rate_of_change(const Trajectory& traj, const QPoly& f);

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct EquilibriaResult {
    std::vector<std::vector<double>> points;  // deduplicated, sorted lexicographically
    std::vector<double> residuals;            // ∞-norm of F̂ at each point
    int skipped_seeds = 0;                    // singular Jacobian or no convergence
};

/// Newton searches from a uniform grid of cell-center seeds; keeps converged
/// roots (residual ∞-norm < 1e−10) inside the box, deduplicated within 1e−8.
/// Seeds that hit a singular Jacobian are skipped, not fatal.
EquilibriaResult equilibria(const VectorField& X, double q0, const Box& box,
                            int seeds_per_axis);

struct SweepRow {
    double q0 = 0.0;
    std::vector<double> endpoint;
    double dist_to_qmin = 0.0;      // sup-norm distance to the smallest-q0 trajectory
    double dist_to_classical = 0.0; // same, to the q0 = 1 trajectory
    double dist_to_limit = 0.0;     // same, to the q → 0 limit system; NaN when absent
};

struct SweepTable {
    std::vector<SweepRow> rows;
    bool limit_ok = true;     // false when a coefficient has a pole at q = 0
    std::string limit_note;   // cause, when limit_ok is false
};

/// Integrates the field at each q0 in q_list (descending, in (0,1]) and
/// compares each trajectory against three references: the smallest q0, the
/// classical q0 = 1, and the q → 0 limit system obtained by evaluating every
/// coefficient at q = 0 (skipped, with a note, when that hits a pole).
SweepTable quantum_limit_sweep(const VectorField& X, std::span<const double> P,
                               std::span<const double> q_list, const IntegratorConfig& cfg);

/// Header "t,x1,...,xn", one row per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Header "q0,x1,...,xn,dist_to_qmin,dist_to_classical,dist_to_limit"; the
/// last column is empty when the limit system is unavailable.
void write_sweep_csv(std::ostream& out, const SweepTable& table, int dim);

}  // namespace qns
