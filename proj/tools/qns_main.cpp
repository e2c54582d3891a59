// qns: command-line front end for the quantum n-space toolkit.
//
// Exit codes: 0 success, 1 I/O or missing input, 2 validation or parse
// failure, 3 numerical failure (pole, divergence, singular Jacobian).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnspace/parse.hpp"
#include "qnspace/qpoly.hpp"
#include "qnspace/simulate.hpp"
#include "qnspace/stability.hpp"
#include "qnspace/vector_field.hpp"
#include "qnspace/version.hpp"

namespace {

using nlohmann::json;
using namespace qns;

struct CommonOpts {
    std::string out_path;
    std::string format;  // per-command default when empty
    std::uint64_t seed = 42;
};

/// Replaces q by a fixed rational in every coefficient, exactly.
QPoly at_q(const QPoly& f, const Rational& q0) {
    QPoly out(f.dim());
    for (const auto& [degree, coeff] : f.terms()) {
        out.add_term(degree, QScalar(coeff.eval_exact(q0)));
    }
    return out;
}

/// "symbolic" or an exact rational in (0,1].
struct QMode {
    bool symbolic = true;
    Rational value = 1;
};

QMode parse_q_flag(const std::string& text) {
    QMode mode;
    if (text.empty() || text == "symbolic") return mode;
    mode.symbolic = false;
    mode.value = parse_rational(text);
    if (mode.value <= 0 || mode.value > 1) {
        throw Error(Errc::bad_q_value, "q must lie in (0,1]");
    }
    return mode;
}

VectorField field_of(const SystemDef& sys) {
    return VectorField{sys.dim, sys.field_images};
}

std::vector<double> require_point(const SystemDef& sys) {
    if (!sys.initial_point) {
        throw Error(Errc::missing_field, "system file does not set 'point'");
    }
    return *sys.initial_point;
}

/// Effective numeric q: flag wins over the file; symbolic falls back to 1.
double resolve_q0(const SystemDef& sys, const std::string& q_flag) {
    if (!q_flag.empty()) {
        const QMode mode = parse_q_flag(q_flag);
        if (!mode.symbolic) return to_double(mode.value);
        return 1.0;
    }
    return sys.q_or(1.0);
}

void write_output(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open output file: " + opts.out_path);
    out << payload;
    if (!out.good()) throw Error(Errc::io_error, "failed writing: " + opts.out_path);
}

/// Sidecar recording the fully resolved run: re-running it must reproduce
/// the output byte for byte.
void write_manifest(const CommonOpts& opts, const std::string& command,
                    const std::string& input, const std::string& format, const json& config) {
    if (opts.out_path.empty()) return;
    json manifest;
    manifest["command"] = command;
    manifest["input"] = input;
    manifest["version"] = kVersion;
    manifest["seed"] = opts.seed;
    manifest["format"] = format;
    manifest["config"] = config;
    std::ofstream out(opts.out_path + ".manifest.json", std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open manifest beside: " + opts.out_path);
    out << manifest.dump(2) << '\n';
}

std::string format_or(const CommonOpts& opts, const char* fallback) {
    return opts.format.empty() ? fallback : opts.format;
}

json trajectory_json(const Trajectory& traj) {
    json j;
    j["method"] = method_name(traj.method);
    j["q0"] = traj.q0;
    j["step"] = traj.step;
    j["times"] = traj.times;
    j["points"] = traj.points;
    return j;
}

// ---- subcommand bodies ----------------------------------------------------

int run_normalize(const std::string& expr, int dim, const std::string& q_flag,
                  const CommonOpts& opts) {
    QPoly f = parse_expr(expr, dim);
    const QMode mode = parse_q_flag(q_flag);
    if (!mode.symbolic) f = at_q(f, mode.value);
    const std::string fmt = format_or(opts, "text");
    std::string payload;
    if (fmt == "json") {
        json j;
        j["canonical"] = print_canonical(f);
        j["dim"] = dim;
        payload = j.dump(2) + "\n";
    } else if (fmt == "text") {
        payload = print_canonical(f) + "\n";
    } else {
        throw std::invalid_argument("normalize supports --format text|json");
    }
    write_output(opts, payload);
    write_manifest(opts, "normalize", expr, fmt, json{{"dim", dim}, {"q", q_flag}});
    return 0;
}

int run_bracket(const std::string& path, const std::string& probe, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    if (!sys.second_images) {
        throw Error(Errc::missing_field, "bracket needs a second field: Y[1..n]");
    }
    const VectorField X = field_of(sys);
    const VectorField Y{sys.dim, *sys.second_images};
    const QPoly f = parse_expr(probe, sys.dim);
    const QPoly result = bracket_apply(X, Y, f);
    const std::string fmt = format_or(opts, "text");
    std::string payload;
    if (fmt == "json") {
        json j;
        j["bracket"] = print_canonical(result);
        j["probe"] = print_canonical(f);
        payload = j.dump(2) + "\n";
    } else if (fmt == "text") {
        payload = print_canonical(result) + "\n";
    } else {
        throw std::invalid_argument("bracket supports --format text|json");
    }
    write_output(opts, payload);
    write_manifest(opts, "bracket", path, fmt, json{{"probe", probe}});
    return 0;
}

int run_validate(const std::string& path, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    const ValidationReport report = validate_field(field_of(sys));
    const std::string fmt = format_or(opts, "text");
    std::string payload;
    if (fmt == "json") {
        json j;
        j["strict_ok"] = report.strict_ok;
        json residuals = json::object();
        for (const auto& [pair, poly] : report.residuals) {
            const std::string key =
                "(" + std::to_string(pair.first + 1) + "," + std::to_string(pair.second + 1) + ")";
            residuals[key] = print_canonical(poly);
        }
        j["residuals"] = residuals;
        payload = j.dump(2) + "\n";
    } else if (fmt == "text") {
        std::ostringstream os;
        os << "strict_ok: " << (report.strict_ok ? "true" : "false") << "\n";
        for (const auto& [pair, poly] : report.residuals) {
            os << "residual[" << pair.first + 1 << "," << pair.second + 1
               << "]: " << print_canonical(poly) << "\n";
        }
        payload = os.str();
    } else {
        throw std::invalid_argument("validate supports --format text|json");
    }
    write_output(opts, payload);
    write_manifest(opts, "validate", path, fmt, json::object());
    return 0;
}

int run_simulate(const std::string& path, const std::string& method, double step, double horizon,
                 const std::string& q_flag, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    const auto m = method_from_name(method);
    if (!m) throw std::invalid_argument("unknown method: " + method);
    IntegratorConfig cfg;
    cfg.method = *m;
    cfg.step = step;
    cfg.horizon = horizon;
    cfg.q0 = resolve_q0(sys, q_flag);
    const Trajectory traj = integrate(field_of(sys), require_point(sys), cfg);

    const std::string fmt = format_or(opts, "csv");
    std::string payload;
    if (fmt == "csv") {
        std::ostringstream os;
        write_trajectory_csv(os, traj);
        payload = os.str();
    } else if (fmt == "json") {
        payload = trajectory_json(traj).dump(2) + "\n";
    } else {
        throw std::invalid_argument("simulate supports --format csv|json");
    }
    write_output(opts, payload);
    write_manifest(opts, "simulate", path, fmt,
                   json{{"method", method_name(cfg.method)},
                        {"step", cfg.step},
                        {"horizon", cfg.horizon},
                        {"q0", cfg.q0}});
    return 0;
}

int run_equilibria(const std::string& path, std::vector<double> box_values, int seeds,
                   const std::string& q_flag, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    Box box;
    if (box_values.empty()) box_values = {-2.0, 2.0};
    if (box_values.size() == 2) {
        for (int i = 0; i < sys.dim; ++i) {
            box.lo.push_back(box_values[0]);
            box.hi.push_back(box_values[1]);
        }
    } else if (box_values.size() == 2 * static_cast<std::size_t>(sys.dim)) {
        for (int i = 0; i < sys.dim; ++i) {
            box.lo.push_back(box_values[2 * i]);
            box.hi.push_back(box_values[2 * i + 1]);
        }
    } else {
        throw Error(Errc::dimension_mismatch, "--box needs 2 or 2*dim values");
    }
    const double q0 = resolve_q0(sys, q_flag);
    const EquilibriaResult result = equilibria(field_of(sys), q0, box, seeds);

    const std::string fmt = format_or(opts, "csv");
    std::string payload;
    if (fmt == "csv") {
        std::ostringstream os;
        for (int i = 1; i <= sys.dim; ++i) os << (i > 1 ? "," : "") << 'x' << i;
        os << ",residual\n";
        char buf[32];
        for (std::size_t k = 0; k < result.points.size(); ++k) {
            for (double v : result.points[k]) {
                std::snprintf(buf, sizeof buf, "%.17g", v);
                os << buf << ',';
            }
            std::snprintf(buf, sizeof buf, "%.17g", result.residuals[k]);
            os << buf << '\n';
        }
        payload = os.str();
    } else if (fmt == "json") {
        json j;
        j["points"] = result.points;
        j["residuals"] = result.residuals;
        j["skipped_seeds"] = result.skipped_seeds;
        payload = j.dump(2) + "\n";
    } else if (fmt == "text") {
        std::ostringstream os;
        if (result.points.empty()) os << "no equilibria in box\n";
        for (std::size_t k = 0; k < result.points.size(); ++k) {
            os << "(";
            for (std::size_t i = 0; i < result.points[k].size(); ++i) {
                os << (i ? ", " : "") << result.points[k][i];
            }
            os << ")  residual " << result.residuals[k] << "\n";
        }
        payload = os.str();
    } else {
        throw std::invalid_argument("equilibria supports --format csv|json|text");
    }
    write_output(opts, payload);
    write_manifest(opts, "equilibria", path, fmt,
                   json{{"box", box_values}, {"seeds", seeds}, {"q0", q0}});
    return 0;
}

int run_stability(const std::string& path, std::vector<double> epsilons, double t0,
                  double horizon, int samples, double delta_min, const std::string& method,
                  double step, const std::string& q_flag, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    const auto m = method_from_name(method);
    if (!m) throw std::invalid_argument("unknown method: " + method);
    StabilityQuery query;
    query.epsilons = std::move(epsilons);
    query.t0 = t0;
    query.horizon = horizon;
    query.samples = samples;
    query.delta_min = delta_min;
    query.q0 = resolve_q0(sys, q_flag);
    query.method = *m;
    query.step = step;
    query.seed = opts.seed;
    const StabilityReport report = probe_stability(field_of(sys), require_point(sys), query);

    const std::string fmt = format_or(opts, "json");
    std::string payload;
    if (fmt == "json") {
        payload = stability_report_json(report) + "\n";
    } else if (fmt == "text") {
        std::ostringstream os;
        for (const EpsilonOutcome& o : report.outcomes) {
            os << "epsilon " << o.epsilon << ": ";
            if (o.delta_estimate) {
                os << "delta " << *o.delta_estimate << "\n";
            } else {
                os << "unstable witness at t=" << o.witness->time << "\n";
            }
        }
        if (report.linearization) {
            os << "class: " << stability_class_name(report.linearization->cls) << "\n";
        }
        for (const std::string& note : report.discrepancy_notes) os << "note: " << note << "\n";
        payload = os.str();
    } else {
        throw std::invalid_argument("stability supports --format json|text");
    }
    write_output(opts, payload);
    write_manifest(opts, "stability", path, fmt,
                   json{{"epsilons", query.epsilons},
                        {"t0", query.t0},
                        {"horizon", query.horizon},
                        {"samples", query.samples},
                        {"delta_min", query.delta_min},
                        {"method", method_name(query.method)},
                        {"step", query.step},
                        {"q0", query.q0}});
    return 0;
}

int run_limit(const std::string& path, std::vector<double> q_list, const std::string& method,
              double step, double horizon, const CommonOpts& opts) {
    const SystemDef sys = load_system(path);
    const auto m = method_from_name(method);
    if (!m) throw std::invalid_argument("unknown method: " + method);
    IntegratorConfig cfg;
    cfg.method = *m;
    cfg.step = step;
    cfg.horizon = horizon;
    const SweepTable table =
        quantum_limit_sweep(field_of(sys), require_point(sys), q_list, cfg);

    const std::string fmt = format_or(opts, "csv");
    std::string payload;
    if (fmt == "csv") {
        std::ostringstream os;
        write_sweep_csv(os, table, sys.dim);
        payload = os.str();
    } else if (fmt == "json") {
        json rows = json::array();
        for (const SweepRow& row : table.rows) {
            json r;
            r["q0"] = row.q0;
            r["endpoint"] = row.endpoint;
            r["dist_to_qmin"] = row.dist_to_qmin;
            r["dist_to_classical"] = row.dist_to_classical;
            if (std::isnan(row.dist_to_limit)) {
                r["dist_to_limit"] = nullptr;
            } else {
                r["dist_to_limit"] = row.dist_to_limit;
            }
            rows.push_back(r);
        }
        json j;
        j["rows"] = rows;
        j["limit_ok"] = table.limit_ok;
        j["limit_note"] = table.limit_note;
        payload = j.dump(2) + "\n";
    } else {
        throw std::invalid_argument("limit supports --format csv|json");
    }
    if (!table.limit_ok) {
        std::cerr << "limit system unavailable: " << table.limit_note << "\n";
    }
    write_output(opts, payload);
    write_manifest(opts, "limit", path, fmt,
                   json{{"q_list", q_list},
                        {"method", method_name(cfg.method)},
                        {"step", cfg.step},
                        {"horizon", cfg.horizon}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum n-space toolkit"};
    app.set_help_flag("--help", "print help");  // keep --h free for the step size
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonOpts opts;
    std::string q_flag;
    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--out", opts.out_path, "write output to this file (plus .manifest.json)");
        cmd->add_option("--format", opts.format, "output format: csv, json or text");
        cmd->add_option("--seed", opts.seed, "seed for randomized probing");
        cmd->add_option("--q", q_flag, "q value: 'symbolic' or a rational in (0,1]");
    };

    // normalize
    std::string expr;
    int dim = 2;
    auto* normalize = app.add_subcommand("normalize", "normal-order an expression");
    normalize->add_option("expr", expr, "expression to normalize")->required();
    normalize->add_option("--dim", dim, "number of generators")->check(CLI::PositiveNumber);
    add_common(normalize);

    // bracket
    std::string file;
    std::string probe = "x1";
    auto* bracket = app.add_subcommand("bracket", "apply the commutator of two fields");
    bracket->add_option("file", file, "system file with X and Y fields")->required();
    bracket->add_option("--probe", probe, "expression the bracket acts on");
    add_common(bracket);

    // validate
    auto* validate = app.add_subcommand("validate", "check the field against the relation");
    validate->add_option("file", file, "system file")->required();
    add_common(validate);

    // simulate
    std::string method = "rk4";
    double step = 0.01;
    double horizon = 1.0;
    auto* simulate = app.add_subcommand("simulate", "integrate the induced classical system");
    simulate->add_option("file", file, "system file")->required();
    simulate->add_option("--method", method, "tangent, euler or rk4");
    simulate->add_option("--h", step, "step size")->check(CLI::PositiveNumber);
    simulate->add_option("--T", horizon, "time horizon")->check(CLI::NonNegativeNumber);
    add_common(simulate);

    // equilibria
    std::vector<double> box_values;
    int seeds = 8;
    auto* equil = app.add_subcommand("equilibria", "Newton search for zeros of the field");
    equil->add_option("file", file, "system file")->required();
    equil->add_option("--box", box_values, "lo,hi (all axes) or lo1,hi1,...,lon,hin")
        ->delimiter(',');
    equil->add_option("--seeds", seeds, "seeds per axis")->check(CLI::PositiveNumber);
    add_common(equil);

    // stability
    std::vector<double> epsilons{0.1, 0.01};
    double t0 = 0.0;
    double s_horizon = 5.0;
    int samples = 16;
    double delta_min = 1e-3;
    std::string s_method = "rk4";
    double s_step = 0.01;
    auto* stability = app.add_subcommand("stability", "empirical epsilon-delta probe");
    stability->add_option("file", file, "system file")->required();
    stability->add_option("--epsilons", epsilons, "tube radii, descending")->delimiter(',');
    stability->add_option("--t0", t0, "start of the comparison window");
    stability->add_option("--T", s_horizon, "time horizon");
    stability->add_option("--samples", samples, "perturbation directions per delta");
    stability->add_option("--delta-min", delta_min, "smallest delta / bisection resolution");
    stability->add_option("--method", s_method, "tangent, euler or rk4");
    stability->add_option("--h", s_step, "step size")->check(CLI::PositiveNumber);
    add_common(stability);

    // limit
    std::vector<double> q_list{0.5, 0.25, 0.1, 0.01};
    std::string l_method = "rk4";
    double l_step = 0.001;
    double l_horizon = 1.0;
    auto* limit = app.add_subcommand("limit", "sweep q toward the quantum limit");
    limit->add_option("file", file, "system file (q symbolic)")->required();
    limit->add_option("--q-list", q_list, "descending q values in (0,1]")->delimiter(',');
    limit->add_option("--method", l_method, "tangent, euler or rk4");
    limit->add_option("--h", l_step, "step size")->check(CLI::PositiveNumber);
    limit->add_option("--T", l_horizon, "time horizon")->check(CLI::NonNegativeNumber);
    add_common(limit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version land here with Success.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (normalize->parsed()) return run_normalize(expr, dim, q_flag, opts);
        if (bracket->parsed()) return run_bracket(file, probe, opts);
        if (validate->parsed()) return run_validate(file, opts);
        if (simulate->parsed()) return run_simulate(file, method, step, horizon, q_flag, opts);
        if (equil->parsed()) return run_equilibria(file, box_values, seeds, q_flag, opts);
        if (stability->parsed()) {
            return run_stability(file, epsilons, t0, s_horizon, samples, delta_min, s_method,
                                 s_step, q_flag, opts);
        }
        if (limit->parsed()) return run_limit(file, q_list, l_method, l_step, l_horizon, opts);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        if (e.code() == Errc::io_error) return 1;
        return is_numerical(e.code()) ? 3 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
