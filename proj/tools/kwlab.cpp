// kwlab: command-line front end of the verification lab.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kwlab/energy.hpp"
#include "kwlab/error.hpp"
#include "kwlab/halfspace.hpp"
#include "kwlab/he.hpp"
#include "kwlab/reduced.hpp"
#include "kwlab/suites.hpp"

using namespace kwlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Globals {
    std::uint64_t seed = 42;
    std::vector<std::string> tol;
    std::string out;
    bool json = false;
    std::string tail = "truncate";
    double y_max = 30;
    int panels = 24;
};

Tolerances parse_tolerances(const std::vector<std::string>& items) {
    Tolerances t;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects ID=VALUE, got '" + item + "'");
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw UsageError("--tol value is not a number in '" + item + "'");
        }
        t.set(item.substr(0, eq), v);
    }
    return t;
}

QuadratureSpec quadrature(const Globals& g) {
    QuadratureSpec q;
    q.y_max = g.y_max;
    q.panels = g.panels;
    q.tail_mode = parse_tail_mode(g.tail);
    try {
        q.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return q;
}

InvariantField invariant_model(const std::string& name) {
    if (name == "he") return he_field();
    if (name == "he-alt") return he_alt_field();
    throw UsageError("unknown invariant model '" + name + "' (he, he-alt)");
}

FlatModelField flat_model(const std::string& name) {
    if (name == "nahm-pole") return nahm_pole_model();
    if (name == "nahm-singular") return nahm_singular_model();
    if (name == "nahm-singular-printed") return nahm_singular_printed_model();
    if (name == "nahm-pole-perturbed") return perturbed_nahm_pole_model();
    throw UsageError("unknown flat model '" + name + "'");
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    write_atomic(path, text);
}

std::string fmt(long double x) {
    std::ostringstream s;
    s << std::setprecision(17) << static_cast<double>(x);
    return s.str();
}

void print_table(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) {
        std::cout << std::left << std::setw(5) << to_string(r.status) << ' ' << std::setw(46) << r.check_id << ' '
                  << std::setprecision(6) << r.computed;
        if (r.expected) std::cout << " vs " << *r.expected << " (tol " << r.tolerance << ")";
        if (!r.note.empty() && r.status == Status::Fail) std::cout << "  " << r.note;
        std::cout << '\n';
    }
}

std::string sweep_csv(const GeometryConventions& conv, const QuadratureSpec& q, const IdentityOptions& opt) {
    std::ostringstream s;
    // bulk-boundary rows: lhs, rhs, gap; c0-limit rows: volume, phi_f, combined.
    s << "identity,eps,first,second,third\n";
    const InvariantField he = he_field();
    std::vector<Real> eps = {0.2L, 0.1L, 0.05L, 0.02L, 0.01L};
    for (const auto& row : identity_sweep(Identity::BulkBoundary, conv, he, eps, q))
        s << "bulk-boundary," << fmt(row.eps) << ',' << fmt(row.lhs) << ',' << fmt(row.rhs) << ',' << fmt(row.gap) << '\n';
    for (const auto& row : identity_sweep(Identity::C0Limit, conv, he, opt.eps_sequence, q))
        s << "c0-limit," << fmt(row.eps) << ',' << fmt(row.lhs) << ',' << fmt(row.rhs) << ',' << fmt(row.gap) << '\n';
    return s.str();
}

// ---------------------------------------------------------------------------
// plot data

std::string profiles_csv() {
    std::ostringstream s;
    s << "y,a,b,y_times_b,a_alt\n";
    for (Real y : log_grid(1e-3L, 30, 400))
        s << fmt(y) << ',' << fmt(he_a(y)) << ',' << fmt(he_b(y)) << ',' << fmt(y * he_b(y)) << ',' << fmt(he_alt_a(y))
          << '\n';
    return s.str();
}

std::string integrands_csv(const QuadratureSpec& q) {
    const GeometryConventions g = kGoldenConventions;
    const InvariantField he = he_field();
    auto f_sq = [&](Real y) { return densities(g, he, y).f_sq; };
    // Same margin as the energy.ch_envelope check.
    const Real k = 1.5L * envelope_constant(f_sq, 4, 1, 5, 200);
    std::ostringstream s;
    s << "y,ym,nabla_bar,completed,ricci,phi_sq,ch_second,envelope\n";
    for (Real y : log_grid(1e-3L, q.y_max, 400)) {
        const Densities d = densities(g, he, y);
        s << fmt(y) << ',' << fmt(d.f_sq) << ',' << fmt(d.nabla_bar_sq) << ',' << fmt(d.completed_sq) << ','
          << fmt(d.ricci) << ',' << fmt(d.phi_sq) << ',' << fmt(d.ch_second_sq) << ',' << fmt(k * std::exp(-4 * y))
          << '\n';
    }
    return s.str();
}

std::string eps_sweep_csv(const QuadratureSpec& q) {
    std::ostringstream s;
    s << "eps,volume,phi_f,cubic,combined\n";
    for (Real eps : log_grid(1e-4L, 0.5L, 25)) {
        const EpsSample e = eps_sample(kGoldenConventions, he_field(), eps, q);
        s << fmt(eps) << ',' << fmt(e.volume.value) << ',' << fmt(e.boundary.phi_f) << ',' << fmt(e.boundary.cubic)
          << ',' << fmt(e.combined) << '\n';
    }
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kapustin-Witten verification lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "configuration file (TOML/INI, one section per command)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Globals g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--tol", g.tol, "tolerance override ID=VALUE (repeatable)");
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_flag("--json", g.json, "print JSON instead of a table");
    app.add_option("--ymax", g.y_max, "end of the uniform quadrature segment")->capture_default_str();
    app.add_option("--panels", g.panels, "quadrature panels per segment")->capture_default_str();
    app.add_option("--tail", g.tail, "tail treatment: truncate or exp-sinh")->capture_default_str();

    SuiteConfig sc;
    std::string sweep_path;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", sc.suite, "algebra, models, decomposition, energy, solver or all")->capture_default_str();
    verify->add_option("--n", sc.decomp_samples, "decomposition samples")->capture_default_str();
    verify->add_option("--perturbations", sc.perturbations, "synthetic perturbations")->capture_default_str();
    verify->add_option("--points", sc.points, "half-space sample points")->capture_default_str();
    verify->add_option("--sweep-csv", sweep_path, "write identity sweeps to this CSV");

    std::string model = "he";
    double eps = 0.05;
    auto* energy = app.add_subcommand("energy", "energy report of an invariant model");
    energy->add_option("--model", model, "he or he-alt")->capture_default_str();
    energy->add_option("--eps", eps, "slice of the bulk-boundary identity")->capture_default_str();

    ShootOptions so;
    double y0 = 0.1, y_report = 8, param_lo = -1, param_hi = 0;
    std::string profile_path;
    auto* solve = app.add_subcommand("solve", "shoot for the decaying solution of the reduced system");
    solve->add_option("--y0", y0, "start of integration (series below)")->capture_default_str();
    solve->add_option("--y-report", y_report, "end of the reported profile")->capture_default_str();
    solve->add_option("--param-lo", param_lo, "lower end of the free-coefficient bracket")->capture_default_str();
    solve->add_option("--param-hi", param_hi, "upper end of the free-coefficient bracket")->capture_default_str();
    solve->add_option("--profile-csv", profile_path, "write the profile as y,a,b");

    std::string rmodel = "he", points_path;
    int rpoints = 1000;
    auto* residual = app.add_subcommand("residual", "KW residual of a model");
    residual->add_option("--model", rmodel, "he, he-alt, nahm-pole, nahm-singular, nahm-singular-printed, nahm-pole-perturbed")
        ->capture_default_str();
    residual->add_option("--points", rpoints, "seeded points for flat models")->capture_default_str();
    residual->add_option("--points-csv", points_path, "read x1,x2,x3,y points instead");

    std::string target;
    auto* plot = app.add_subcommand("plotdata", "CSV series for plots");
    plot->add_option("target", target, "profiles, integrands or eps-sweep")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const Tolerances tol = parse_tolerances(g.tol);
        const QuadratureSpec q = quadrature(g);

        if (*verify) {
            sc.seed = g.seed;
            sc.tol = tol;
            sc.quad = q;
            const auto reports = run_suite(sc);
            if (g.json || !g.out.empty()) {
                nlohmann::ordered_json j = to_json(reports, sc.suite);
                j["seed"] = g.seed;
                emit(g.out, j.dump(2) + "\n");
            }
            if (!g.json) print_table(reports);
            if (!sweep_path.empty()) write_atomic(sweep_path, sweep_csv(kGoldenConventions, q, sc.identities));
            return all_passed(reports) ? kExitPass : kExitFail;
        }
        if (*energy) {
            IdentityOptions opt;
            opt.eps = eps;
            if (!(eps > 0)) throw UsageError("--eps must be positive");
            const EnergyReport r = energy_report(kGoldenConventions, invariant_model(model), q, opt, tol);
            const bool ok = all_passed(r.checks);
            if (g.json || !g.out.empty()) emit(g.out, r.to_json().dump(2) + "\n");
            if (!g.json) {
                for (const auto& e : r.entries)
                    std::cout << std::left << std::setw(26) << e.name << ' ' << std::setprecision(12)
                              << static_cast<double>(e.value) << "  +- " << std::setprecision(2)
                              << static_cast<double>(e.error_estimate) << '\n';
                print_table(r.checks);
            }
            return ok ? kExitPass : kExitFail;
        }
        if (*solve) {
            so.y0 = y0;
            so.y_report = y_report;
            so.param_lo = param_lo;
            so.param_hi = param_hi;
            const ReducedSystem sys = derive_reduced_system(kGoldenConventions);
            const ShootResult r = shoot_for_decay(sys, so);
            if (!profile_path.empty()) {
                std::ostringstream s;
                write_profile_csv(s, r.profile);
                write_atomic(profile_path, s.str());
            }
            nlohmann::ordered_json j = r.log_json();
            j["system"] = sys.describe();
            if (g.json || !g.out.empty()) emit(g.out, j.dump(2) + "\n");
            if (!g.json) {
                std::cout << sys.describe() << "\nparameter " << fmt(r.parameter) << " after " << r.trace.size()
                          << " trials\n";
            }
            return kExitPass;
        }
        if (*residual) {
            std::ostringstream s;
            if (rmodel == "he" || rmodel == "he-alt") {
                const InvariantField f = invariant_model(rmodel);
                s << "y,residual\n";
                for (Real y : log_grid(1e-3L, 30, 300))
                    s << fmt(y) << ',' << fmt(kw_residual(kGoldenConventions, f, y).norm()) << '\n';
            } else {
                std::vector<HalfspacePoint> pts;
                if (!points_path.empty()) {
                    std::ifstream in(points_path);
                    if (!in) throw IoError("cannot read " + points_path);
                    pts = read_points_csv(in);
                } else {
                    pts = sample_points(g.seed, rpoints);
                }
                write_residual_csv(s, flat_model(rmodel), pts);
            }
            emit(g.out, s.str());
            return kExitPass;
        }
        if (*plot) {
            if (target == "profiles") emit(g.out, profiles_csv());
            else if (target == "integrands") emit(g.out, integrands_csv(q));
            else if (target == "eps-sweep") emit(g.out, eps_sweep_csv(q));
            else throw UsageError("unknown plot target '" + target + "' (profiles, integrands, eps-sweep)");
            return kExitPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
