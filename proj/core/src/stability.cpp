#include "qnspace/stability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "qnspace/linalg.hpp"
#include "qnspace/parse.hpp"

namespace qns {
namespace {

constexpr double kEquilibriumTol = 1e-8;
constexpr double kRealPartTol = 1e-9;

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// [0,1) from the top 53 bits; avoids the unspecified behaviour of the
/// standard distributions so streams are identical across platforms.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate_query(const StabilityQuery& query) {
    if (query.epsilons.empty()) throw std::invalid_argument("epsilons must be non-empty");
    double prev = std::numeric_limits<double>::infinity();
    for (double e : query.epsilons) {
        if (!(e > 0.0)) throw std::invalid_argument("epsilons must be positive");
        if (e > prev) throw std::invalid_argument("epsilons must be sorted descending");
        prev = e;
    }
    if (!(query.delta_min > 0.0) || query.delta_min >= query.epsilons.back()) {
        throw std::invalid_argument("delta_min must lie in (0, min epsilon)");
    }
    if (query.samples < 8) throw std::invalid_argument("samples must be >= 8");
    if (!(query.horizon > query.t0)) throw std::invalid_argument("horizon must exceed t0");
    if (!(query.step > 0.0)) throw std::invalid_argument("step must be positive");
    if (!(query.q0 > 0.0 && query.q0 <= 1.0)) throw std::invalid_argument("q0 must lie in (0,1]");
}

bool is_coordinate_swap(const VectorField& X) {
    return X.dim == 2 && X.images.size() == 2 && X.images[0] == QPoly::generator(2, 1) &&
           X.images[1] == QPoly::generator(2, 0);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

const char* stability_class_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::asymptotically_stable: return "asymptotically-stable";
        case StabilityClass::unstable: return "unstable";
        case StabilityClass::marginal: return "marginal";
    }
    return "?";
}

std::vector<std::vector<double>> perturbation_directions(int dim, int samples,
                                                         std::uint64_t seed) {
    std::vector<std::vector<double>> dirs;
    if (dim <= 4) {
        for (unsigned mask = 0; mask < (1u << dim); ++mask) {
            std::vector<double> d(dim);
            for (int i = 0; i < dim; ++i) d[i] = (mask >> i & 1u) ? 1.0 : -1.0;
            dirs.push_back(std::move(d));
        }
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(dirs.size()) < samples) {
        std::vector<double> d(dim);
        for (int i = 0; i < dim; ++i) d[i] = 2.0 * unit_double(rng) - 1.0;
        const double norm = inf_norm(d);
        if (norm < 1e-3) continue;
        for (double& v : d) v /= norm;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

StabilityReport probe_stability(const VectorField& X, std::span<const double> P0,
                                const StabilityQuery& query) {
    validate_query(query);
    if (static_cast<int>(P0.size()) != X.dim) {
        throw Error(Errc::dimension_mismatch, "reference point has wrong dimension");
    }

    IntegratorConfig cfg;
    cfg.method = query.method;
    cfg.step = query.step;
    cfg.horizon = query.horizon - query.t0;
    cfg.q0 = query.q0;

    Trajectory reference;
    try {
        reference = integrate(X, P0, cfg);
    } catch (const IntegrationError& e) {
        throw Error(Errc::reference_diverged,
                    std::string("reference solution failed: ") + e.what());
    }

    const auto directions = perturbation_directions(X.dim, query.samples, query.seed);

    // One δ-ball test against one ε-tube. Directions are shared across all
    // calls, so passing at ε implies passing at any larger ε.
    auto check = [&](double delta, double epsilon) -> std::optional<Witness> {
        for (const auto& dir : directions) {
            std::vector<double> start(P0.begin(), P0.end());
            std::vector<double> offset(X.dim);
            for (int i = 0; i < X.dim; ++i) {
                offset[i] = delta * dir[i];
                start[i] += offset[i];
            }
            Trajectory beta;
            try {
                beta = integrate(X, start, cfg);
            } catch (const IntegrationError& e) {
                // The perturbed solution ceased to exist inside the horizon:
                // certainly not confined to the tube.
                Witness w;
                w.perturbation = offset;
                w.delta = delta;
                w.time = query.t0 + e.time();
                w.coordinate = -1;
                return w;
            }
            for (std::size_t k = 1; k < beta.points.size(); ++k) {
                for (int i = 0; i < X.dim; ++i) {
                    if (std::abs(beta.points[k][i] - reference.points[k][i]) >= epsilon) {
                        Witness w;
                        w.perturbation = offset;
                        w.delta = delta;
                        w.time = query.t0 + beta.times[k];
                        w.coordinate = i;
                        return w;
                    }
                }
            }
        }
        return std::nullopt;
    };

    StabilityReport report;
    report.system_hash = system_hash(X);
    report.q0 = query.q0;
    report.t0 = query.t0;
    report.horizon = query.horizon;
    report.samples = query.samples;
    report.seed = query.seed;

    bool any_witness = false;
    for (double epsilon : query.epsilons) {
        EpsilonOutcome outcome;
        outcome.epsilon = epsilon;

        auto floor_witness = check(query.delta_min, epsilon);
        report.traces.push_back({epsilon, query.delta_min, !floor_witness.has_value()});
        if (floor_witness) {
            outcome.witness = std::move(floor_witness);
            any_witness = true;
            report.outcomes.push_back(std::move(outcome));
            continue;
        }

        double lo = query.delta_min;
        double hi = epsilon;
        if (!check(epsilon, epsilon)) {
            report.traces.push_back({epsilon, epsilon, true});
            lo = epsilon;
        } else {
            report.traces.push_back({epsilon, epsilon, false});
            while (hi - lo > query.delta_min) {
                const double mid = 0.5 * (lo + hi);
                const bool pass = !check(mid, epsilon);
                report.traces.push_back({epsilon, mid, pass});
                if (pass) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        outcome.delta_estimate = lo;
        report.outcomes.push_back(std::move(outcome));
    }

    std::vector<CPoly> F = classicalize(X, query.q0);
    std::vector<double> v(X.dim);
    for (int i = 0; i < X.dim; ++i) v[i] = F[i].eval(P0);
    if (inf_norm(v) < kEquilibriumTol) {
        report.linearization = classify_equilibrium(X, P0, query.q0);
    }

    const bool reported_unstable =
        any_witness ||
        (report.linearization && report.linearization->cls == StabilityClass::unstable);
    if (is_coordinate_swap(X) && reported_unstable) {
        report.discrepancy_notes.push_back(
            "coordinate-swap system: the closed-form family (c*exp(-t), -c*exp(-t)) decays to "
            "the origin, yet the linearization there has eigenvalues +1 and -1 and generic "
            "perturbations grow like exp(t); the probe reports instability even though the "
            "decaying family alone would suggest the opposite.");
    }
    return report;
}

Linearization classify_equilibrium(const VectorField& X, std::span<const double> p, double q0) {
    const std::vector<CPoly> F = classicalize(X, q0);
    std::vector<double> v(X.dim);
    for (int i = 0; i < X.dim; ++i) v[i] = F[i].eval(p);
    if (inf_norm(v) >= kEquilibriumTol) {
        throw Error(Errc::not_an_equilibrium, "field does not vanish at the point");
    }
    Linearization lin;
    lin.eigenvalues = eigenvalues(jacobian(F, p));
    bool any_positive = false;
    bool all_negative = true;
    for (const auto& ev : lin.eigenvalues) {
        if (ev.real() > kRealPartTol) any_positive = true;
        if (!(ev.real() < -kRealPartTol)) all_negative = false;
    }
    lin.cls = any_positive ? StabilityClass::unstable
              : all_negative ? StabilityClass::asymptotically_stable
                             : StabilityClass::marginal;
    return lin;
}

std::string system_hash(const VectorField& X) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix("dim=" + std::to_string(X.dim) + ";");
    for (const QPoly& g : X.images) mix(print_canonical(g) + ";");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string stability_report_json(const StabilityReport& report) {
    using nlohmann::json;
    json j;
    j["system_hash"] = report.system_hash;
    j["q0"] = report.q0;
    j["t0"] = report.t0;
    j["horizon"] = report.horizon;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["empirical"] = "empirical (" + std::to_string(report.samples) + " samples, horizon " +
                     format_double(report.horizon) + ")";

    json epsilons = json::array();
    json outcomes = json::array();
    for (const EpsilonOutcome& o : report.outcomes) {
        epsilons.push_back(o.epsilon);
        json entry;
        entry["epsilon"] = o.epsilon;
        if (o.delta_estimate) {
            entry["delta_estimate"] = *o.delta_estimate;
        } else {
            json w;
            w["perturbation"] = o.witness->perturbation;
            w["delta"] = o.witness->delta;
            w["time"] = o.witness->time;
            w["coordinate"] = o.witness->coordinate;
            entry["witness"] = w;
        }
        outcomes.push_back(entry);
    }
    j["epsilons"] = epsilons;
    j["outcomes"] = outcomes;

    if (report.linearization) {
        json evs = json::array();
        for (const auto& ev : report.linearization->eigenvalues) {
            evs.push_back(json{{"re", ev.real()}, {"im", ev.imag()}});
        }
        j["eigenvalues"] = evs;
        j["class"] = stability_class_name(report.linearization->cls);
    } else {
        j["eigenvalues"] = nullptr;
        j["class"] = nullptr;
    }
    j["discrepancy_notes"] = report.discrepancy_notes;
    return j.dump(2);
}

}  // namespace qns
