#include "qnspace/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qnspace/linalg.hpp"

namespace qns {
namespace {

constexpr double kDivergenceBound = 1e12;
constexpr double kNewtonTol = 1e-10;
constexpr double kDedupeTol = 1e-8;

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be positive");
    if (!(cfg.horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
    if (!(cfg.q0 > 0.0 && cfg.q0 <= 1.0)) throw std::invalid_argument("q0 must lie in (0,1]");
}

/// 0, h, 2h, ..., plus a shortened final step when the horizon is not a
/// multiple of h.
std::vector<double> time_grid(double horizon, double h) {
    const auto full = static_cast<long long>(std::floor(horizon / h + 1e-9));
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(full) + 2);
    for (long long k = 0; k <= full; ++k) times.push_back(static_cast<double>(k) * h);
    if (horizon - times.back() > 1e-9 * std::max(1.0, horizon)) times.push_back(horizon);
    return times;
}

std::vector<double> eval_rhs(std::span<const CPoly> F, std::span<const double> x, double t) {
    std::vector<double> out(F.size());
    try {
        for (std::size_t i = 0; i < F.size(); ++i) out[i] = F[i].eval(x);
    } catch (const Error& e) {
        if (e.code() == Errc::pole_at_zero) {
            throw IntegrationError(Errc::pole_encountered, t, "field has a pole here");
        }
        throw;
    }
    return out;
}

void check_finite(std::span<const double> x, double t) {
    for (double v : x) {
        if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) {
            throw IntegrationError(Errc::non_finite_state, t, "state left the finite range");
        }
    }
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double inf_dist(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Sup over the common sample range of pointwise ∞-norm distances.
double sup_dist(const Trajectory& a, const Trajectory& b) {
    const std::size_t n = std::min(a.points.size(), b.points.size());
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, inf_dist(a.points[k], b.points[k]));
    return m;
}

void format_row(std::ostream& out, std::span<const double> values) {
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        std::snprintf(buf, sizeof buf, "%.17g", values[i]);
        out << buf;
    }
    out << '\n';
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::tangent: return "tangent";
        case Method::euler: return "euler";
        case Method::rk4: return "rk4";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "tangent") return Method::tangent;
    if (name == "euler") return Method::euler;
    if (name == "rk4") return Method::rk4;
    return std::nullopt;
}

Trajectory tangent_trajectory(const VectorField& X, std::span<const double> P, double q0,
                              double horizon, double step) {
    IntegratorConfig cfg{Method::tangent, step, horizon, q0};
    return integrate(X, P, cfg);
}

Trajectory integrate(const VectorField& X, std::span<const double> P,
                     const IntegratorConfig& cfg) {
    if (static_cast<int>(P.size()) != X.dim) {
        throw Error(Errc::dimension_mismatch, "initial point has wrong dimension");
    }
    const std::vector<CPoly> F = classicalize(X, cfg.q0);
    return integrate_classical(F, P, cfg);
}

Trajectory integrate_classical(std::span<const CPoly> F, std::span<const double> P,
                               const IntegratorConfig& cfg) {
    validate_config(cfg);
    const std::size_t n = F.size();
    if (P.size() != n) throw Error(Errc::dimension_mismatch, "point/field size mismatch");

    Trajectory traj;
    traj.q0 = cfg.q0;
    traj.method = cfg.method;
    traj.step = cfg.step;
    traj.times = time_grid(cfg.horizon, cfg.step);
    traj.points.reserve(traj.times.size());
    traj.points.emplace_back(P.begin(), P.end());
    check_finite(traj.points[0], 0.0);

    if (cfg.method == Method::tangent) {
        // Velocity frozen at the initial point: exact affine curve.
        const std::vector<double> v = eval_rhs(F, P, 0.0);
        for (std::size_t k = 1; k < traj.times.size(); ++k) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = P[i] + traj.times[k] * v[i];
            check_finite(x, traj.times[k]);
            traj.points.push_back(std::move(x));
        }
        return traj;
    }

    std::vector<double> x(P.begin(), P.end());
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double t = traj.times[k - 1];
        const double h = traj.times[k] - traj.times[k - 1];
        if (cfg.method == Method::euler) {
            const std::vector<double> k1 = eval_rhs(F, x, t);
            for (std::size_t i = 0; i < n; ++i) x[i] += h * k1[i];
        } else {
            const std::vector<double> k1 = eval_rhs(F, x, t);
            std::vector<double> tmp(n);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
            const std::vector<double> k2 = eval_rhs(F, tmp, t + 0.5 * h);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
            const std::vector<double> k3 = eval_rhs(F, tmp, t + 0.5 * h);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
            const std::vector<double> k4 = eval_rhs(F, tmp, t + h);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        check_finite(x, traj.times[k]);
        traj.points.push_back(x);
    }
    return traj;
}

double residual_defect(const Trajectory& traj, const VectorField& X) {
    if (traj.points.size() < 3) {
        throw std::invalid_argument("residual_defect needs at least 3 samples");
    }
    const std::vector<CPoly> F = classicalize(X, traj.q0);
    double defect = 0.0;
    for (std::size_t k = 1; k + 1 < traj.points.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k - 1];
        const std::vector<double> rhs = eval_rhs(F, traj.points[k], traj.times[k]);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            const double deriv = (traj.points[k + 1][i] - traj.points[k - 1][i]) / dt;
            defect = std::max(defect, std::abs(deriv - rhs[i]));
        }
    }
    return defect;
}

SampledSeries rate_of_change(const Trajectory& traj, const QPoly& f) {
    if (traj.points.size() < 3) {
        throw std::invalid_argument("rate_of_change needs at least 3 samples");
    }
    std::vector<double> sampled(traj.points.size());
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
        sampled[k] = f.eval(traj.points[k], traj.q0);
    }
    SampledSeries series;
    series.times.reserve(traj.points.size() - 2);
    series.values.reserve(traj.points.size() - 2);
    for (std::size_t k = 1; k + 1 < traj.points.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k - 1];
        series.times.push_back(traj.times[k]);
        series.values.push_back((sampled[k + 1] - sampled[k - 1]) / dt);
    }
    return series;
}

EquilibriaResult equilibria(const VectorField& X, double q0, const Box& box,
                            int seeds_per_axis) {
    const int n = X.dim;
    if (static_cast<int>(box.lo.size()) != n || static_cast<int>(box.hi.size()) != n) {
        throw Error(Errc::dimension_mismatch, "box has wrong dimension");
    }
    for (int i = 0; i < n; ++i) {
        if (!(box.lo[i] < box.hi[i])) throw std::invalid_argument("box must be non-degenerate");
    }
    if (seeds_per_axis < 1) throw std::invalid_argument("seeds_per_axis must be >= 1");

    const std::vector<CPoly> F = classicalize(X, q0);
    EquilibriaResult result;

    std::vector<int> odo(n, 0);
    while (true) {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) {
            const double span = box.hi[i] - box.lo[i];
            x[i] = box.lo[i] + (odo[i] + 0.5) * span / seeds_per_axis;
        }

        bool converged = false;
        for (int iter = 0; iter < 60; ++iter) {
            std::vector<double> r(n);
            std::vector<double> dx;
            try {
                for (int i = 0; i < n; ++i) r[i] = F[i].eval(x);
                if (inf_norm(r) < kNewtonTol) {
                    converged = true;
                    break;
                }
                for (double& v : r) v = -v;
                dx = solve_linear(jacobian(F, x), std::move(r));
            } catch (const Error&) {
                break;  // pole or singular Jacobian: skip this seed
            }
            for (int i = 0; i < n; ++i) x[i] += dx[i];
            if (inf_norm(x) > 1e8) break;
        }
        if (converged) {
            bool inside = true;
            for (int i = 0; i < n; ++i) {
                if (x[i] < box.lo[i] - 1e-9 || x[i] > box.hi[i] + 1e-9) inside = false;
            }
            bool fresh = true;
            for (const auto& p : result.points) {
                if (inf_dist(p, x) < kDedupeTol) fresh = false;
            }
            if (inside && fresh) {
                std::vector<double> r(n);
                for (int i = 0; i < n; ++i) r[i] = F[i].eval(x);
                result.points.push_back(x);
                result.residuals.push_back(inf_norm(r));
            }
        } else {
            ++result.skipped_seeds;
        }

        int axis = 0;
        while (axis < n && ++odo[axis] == seeds_per_axis) odo[axis++] = 0;
        if (axis == n) break;
    }

    // Deterministic order; re-pair residuals after the sort.
    std::vector<std::size_t> order(result.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.points[a] < result.points[b];
    });
    EquilibriaResult sorted;
    sorted.skipped_seeds = result.skipped_seeds;
    for (std::size_t i : order) {
        sorted.points.push_back(std::move(result.points[i]));
        sorted.residuals.push_back(result.residuals[i]);
    }
    return sorted;
}

SweepTable quantum_limit_sweep(const VectorField& X, std::span<const double> P,
                               std::span<const double> q_list, const IntegratorConfig& cfg) {
    if (q_list.empty()) throw std::invalid_argument("q_list must be non-empty");
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        if (!(q_list[i] > 0.0 && q_list[i] <= 1.0)) {
            throw Error(Errc::bad_q_value, "sweep q values must lie in (0,1]");
        }
        if (i && !(q_list[i] < q_list[i - 1])) {
            throw Error(Errc::bad_q_value, "sweep q values must descend");
        }
    }

    SweepTable table;
    std::vector<Trajectory> trajs;
    trajs.reserve(q_list.size());
    for (double q0 : q_list) {
        IntegratorConfig c = cfg;
        c.q0 = q0;
        trajs.push_back(integrate(X, P, c));
    }

    IntegratorConfig classical_cfg = cfg;
    classical_cfg.q0 = 1.0;
    const Trajectory classical = integrate(X, P, classical_cfg);

    std::optional<Trajectory> limit;
    try {
        // Coefficientwise q → 0 limit: positive powers of q vanish, negative
        // powers are poles.
        std::vector<CPoly> limit_field;
        limit_field.reserve(X.images.size());
        for (const QPoly& g : X.images) limit_field.push_back(classicalize(g, 0.0));
        limit = integrate_classical(limit_field, P, classical_cfg);
    } catch (const Error& e) {
        table.limit_ok = false;
        table.limit_note = e.what();
    }

    const Trajectory& qmin = trajs.back();
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        SweepRow row;
        row.q0 = q_list[i];
        row.endpoint = trajs[i].endpoint();
        row.dist_to_qmin = sup_dist(trajs[i], qmin);
        row.dist_to_classical = sup_dist(trajs[i], classical);
        row.dist_to_limit =
            limit ? sup_dist(trajs[i], *limit) : std::numeric_limits<double>::quiet_NaN();
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << 't';
    for (int i = 1; i <= traj.dim(); ++i) out << ",x" << i;
    out << '\n';
    std::vector<double> row(static_cast<std::size_t>(traj.dim()) + 1);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        row[0] = traj.times[k];
        std::copy(traj.points[k].begin(), traj.points[k].end(), row.begin() + 1);
        format_row(out, row);
    }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table, int dim) {
    out << "q0";
    for (int i = 1; i <= dim; ++i) out << ",x" << i;
    out << ",dist_to_qmin,dist_to_classical,dist_to_limit\n";
    char buf[32];
    for (const SweepRow& row : table.rows) {
        std::vector<double> values;
        values.push_back(row.q0);
        values.insert(values.end(), row.endpoint.begin(), row.endpoint.end());
        values.push_back(row.dist_to_qmin);
        values.push_back(row.dist_to_classical);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out << buf;
        }
        out << ',';
        if (!std::isnan(row.dist_to_limit)) {
            std::snprintf(buf, sizeof buf, "%.17g", row.dist_to_limit);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace qns
