#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnspace/simulate.hpp"
#include "qnspace/vector_field.hpp"

namespace qns {

enum class StabilityClass { asymptotically_stable, unstable, marginal };

const char* stability_class_name(StabilityClass c);

/// Probe parameters. epsilons must be positive and sorted descending;
/// delta_min is both the smallest δ tried and the bisection resolution and
/// must stay below the smallest ε; samples ≥ 8.
struct StabilityQuery {
    std::vector<double> epsilons;
    double t0 = 0.0;
    double horizon = 5.0;
    int samples = 16;
    double delta_min = 1e-3;
    double q0 = 1.0;
    Method method = Method::rk4;
    double step = 0.01;
    std::uint64_t seed = 42;
};

/// A perturbation whose solution left the ε-tube, with the first violating
/// sample. Re-integrating from point + perturbation reproduces it.
struct Witness {
    std::vector<double> perturbation;  // initial offset, ∞-norm = delta
    double delta = 0.0;
    double time = 0.0;                 // first sampled t with a violation
    int coordinate = 0;                // violating coordinate (0-based)
};

struct EpsilonOutcome {
    double epsilon = 0.0;
    std::optional<double> delta_estimate;  // largest passing δ, at resolution
    std::optional<Witness> witness;        // set when δ = delta_min already fails
};

/// One bisection decision; kept so monotonicity of the pass set is checkable
/// after the fact.
struct ProbeTrace {
    double epsilon = 0.0;
    double delta = 0.0;
    bool passed = false;
};

struct Linearization {
    std::vector<std::complex<double>> eigenvalues;
    StabilityClass cls = StabilityClass::marginal;
};

struct StabilityReport {
    std::string system_hash;
    double q0 = 1.0;
    double t0 = 0.0;
    double horizon = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<EpsilonOutcome> outcomes;
    std::optional<Linearization> linearization;  // only when P0 is an equilibrium
    std::vector<std::string> discrepancy_notes;
    std::vector<ProbeTrace> traces;
};

/// The m perturbation directions used by a probe: all 2^dim sign corners of
/// the unit ∞-ball (dim ≤ 4), then random directions of ∞-norm one from a
/// deterministic generator. Directions are drawn once per probe so the same
/// δ-ball is tested against every ε.
std::vector<std::vector<double>> perturbation_directions(int dim, int samples,
                                                         std::uint64_t seed);

/// Empirical ε–δ probe around the solution through P0: for each ε, bisect
/// δ ∈ [delta_min, ε] on "every perturbed solution stays within ε of the
/// reference, per coordinate, at every sampled t > t0". A perturbed solution
/// that fails to integrate counts as leaving the tube at the failure time.
/// ReferenceDiverged if the reference itself cannot be integrated.
StabilityReport probe_stability(const VectorField& X, std::span<const double> P0,
                                const StabilityQuery& query);

/// Eigenvalues of the Jacobian of the classicalized field at p, plus the
/// standard sign-based class. NotAnEquilibrium if F̂(p) has ∞-norm ≥ 1e−8.
Linearization classify_equilibrium(const VectorField& X, std::span<const double> p, double q0);

/// FNV-1a over the dimension and canonical images; stable across runs.
std::string system_hash(const VectorField& X);

/// Deterministic JSON rendering (sorted keys, 2-space indent).
std::string stability_report_json(const StabilityReport& report);

}  // namespace qns
