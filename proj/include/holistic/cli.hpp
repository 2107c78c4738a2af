#pragma once

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holistic/closed_form.hpp"
#include "holistic/coefficients.hpp"
#include "holistic/equivalent_pde.hpp"
#include "holistic/iterative.hpp"
#include "holistic/json_io.hpp"
#include "holistic/pde_grammar.hpp"
#include "holistic/reports.hpp"
#include "holistic/simulate.hpp"

namespace holistic::cli {

// Exit codes: 0 success, 2 bad command line, 3 malformed PDE spec,
// 4 unsupported PDE class, 5 file I/O failure, 1 anything else.
enum ExitCode {
    exit_ok = 0,
    exit_other = 1,
    exit_usage = 2,
    exit_bad_spec = 3,
    exit_unsupported = 4,
    exit_io = 5,
};

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

/// "a:b:step" or a single value.
inline std::vector<double> parse_range(const std::string& s) {
    std::vector<double> out;
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(s));
        return out;
    }
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("range needs a:b:step");
    const double a = std::stod(s.substr(0, c1));
    const double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(s.substr(c2 + 1));
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    for (double z = a; z <= b + 1e-12; z += step) out.push_back(z);
    return out;
}

inline int thread_cap() {
    const char* env = std::getenv("HOLISTIC_FD_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

/// Deterministic parallel map: results land in input order regardless of the
/// number of workers.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& xs, F&& f) {
    using R = decltype(f(xs[0]));
    std::vector<R> out(xs.size());
    const int workers = std::min<int>(thread_cap(), (int)xs.size() > 0 ? (int)xs.size() : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
        return out;
    }
    std::vector<std::future<void>> jobs;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < xs.size(); i = next++) out[i] = f(xs[i]);
        }));
    for (auto& j : jobs) j.get();
    return out;
}

/// Model builder shared by the subcommands. gamma order 1 keeps only the
/// decoupled neutral mode u_j itself, so the model degenerates to the
/// constant terms and the field to v = u_j.
inline HolisticModel derive_model(const PdeSpec& spec, int gamma_order, int eps_order) {
    if (gamma_order != 1) return construct_iterative(spec, gamma_order, eps_order);
    if (!spec.has_derivative_form())
        throw UnsupportedPdeError("derive: needs the PDE in derivative form");
    ModelSeries model(1, eps_order);
    model.set(0, 0, Stencil::identity() * spec.constant_coeff());
    if (eps_order >= 2) {
        const auto it = spec.eps_derivatives().find(0);
        if (it != spec.eps_derivatives().end())
            model.set(0, 1, Stencil::identity() * it->second);
    }
    FieldExpansion field(1, eps_order);
    field.add_term({0, 0, XiPoly(Rational(1)), Stencil::identity()});
    return {std::move(field), std::move(model), 0};
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(std::vector<std::string> args) {
    CLI::App app{"holistic finite difference models: derivation, analysis, simulation"};
    app.require_subcommand(1);
    // --h is the grid spacing, so help lives on the long flag only
    app.set_help_flag("--help", "print usage");

    std::string pde_text = "ut = -eps*ux + uxx";
    int gamma_order = 2;
    int eps_order = 10;
    std::string out_path;
    std::string out_report;
    std::string format = "csv";

    auto add_pde_flags = [&](CLI::App* cmd, bool with_orders = true) {
        cmd->set_help_flag("--help", "print usage");
        cmd->add_option("--pde", pde_text, "PDE, e.g. \"ut = -eps*ux + uxx\"");
        if (with_orders) {
            cmd->add_option("--gamma", gamma_order, "truncation order in gamma");
            cmd->add_option("--eps-order", eps_order, "truncation order in eps");
        }
    };

    // derive
    auto* derive = app.add_subcommand("derive", "derive the holistic model for a PDE");
    add_pde_flags(derive);
    derive->add_option("--out", out_path, "model JSON output path");
    derive->add_option("--report", out_report, "human-readable report path");

    // equivalent
    int max_h_order = 6;
    auto* equiv = app.add_subcommand("equivalent", "equivalent PDE of the derived model");
    add_pde_flags(equiv);
    equiv->add_option("--max-h", max_h_order, "highest h power kept");
    equiv->add_option("--out", out_path, "CSV output path");
    equiv->add_option("--format", format, "out format: csv|text")
        ->check(CLI::IsMember({"csv", "text"}));

    // coefficients
    std::string which = "nu1";
    std::string z_range = "0:8:0.25";
    int shanks_iters = 3;
    int coeff_eps_order = 14;  // the sweep wants enough terms to accelerate
    auto* coeffs = app.add_subcommand("coefficients",
                                      "coefficient functions nu1/nu2/kappa2 of eps*h");
    add_pde_flags(coeffs, /*with_orders=*/false);
    coeffs->add_option("--eps-order", coeff_eps_order, "truncation order in eps");
    coeffs->add_option("--which", which, "nu1|nu2|kappa2")
        ->check(CLI::IsMember({"nu1", "nu2", "kappa2"}));
    coeffs->add_option("--z", z_range, "z sweep a:b:step (z = eps*h)");
    coeffs->add_option("--shanks", shanks_iters, "Shanks iterations");
    coeffs->add_option("--out", out_path, "CSV output path");

    // simulate
    double sim_eps = 1.0, sim_h = 0.1, sim_T = 1.0, sim_dt = 0.0, sim_gamma = 1.0;
    int sim_samples = 10;
    std::string traj_path, moments_path;
    auto* sim = app.add_subcommand("simulate", "point-release run of the derived model");
    add_pde_flags(sim);
    sim->add_option("--eps", sim_eps, "advection coefficient eps");
    sim->add_option("--h", sim_h, "grid spacing")->check(CLI::PositiveNumber);
    sim->add_option("--T", sim_T, "final time")->check(CLI::PositiveNumber);
    sim->add_option("--dt", sim_dt, "time step (0: automatic)");
    sim->add_option("--gamma-value", sim_gamma, "coupling parameter value substituted");
    sim->add_option("--samples", sim_samples, "number of sample times");
    sim->add_option("--trajectory", traj_path, "trajectory CSV path");
    sim->add_option("--moments", moments_path, "moments CSV path");

    // stability
    std::string param_range = "0.5:1.5:0.05";
    int theta_samples = 512;
    double stab_h = 1.0;
    auto* stab = app.add_subcommand("stability", "max symbol growth over a parameter sweep");
    add_pde_flags(stab);
    stab->add_option("--eps-range", param_range, "eps sweep a:b:step");
    stab->add_option("--h", stab_h, "grid spacing")->check(CLI::PositiveNumber);
    stab->add_option("--theta-samples", theta_samples, "Fourier samples")
        ->check(CLI::Range(64, 1 << 20));
    stab->add_option("--out", out_path, "CSV output path");

    // CLI11 wants argv-style reversed vector
    std::vector<const char*> argv;
    argv.push_back("holistic_fd");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        const PdeSpec spec = parse_pde(pde_text);

        if (derive->parsed()) {
            const HolisticModel hm = detail::derive_model(spec, gamma_order, eps_order);
            const std::string json = model_to_json(hm.model).dump(2) + "\n";
            std::ostringstream report;
            model_report(report, hm.model);
            if (!out_path.empty()) detail::write_file(out_path, json);
            else std::cout << json;
            if (!out_report.empty()) detail::write_file(out_report, report.str());
            else std::cout << report.str();
            return exit_ok;
        }

        if (equiv->parsed()) {
            const HolisticModel hm = detail::derive_model(spec, gamma_order, eps_order);
            const DiffOpSeries d = equivalent_pde(hm.model, max_h_order);
            std::ostringstream os;
            if (format == "text") equivalent_pde_text(os, d);
            else equivalent_pde_csv(os, d);
            if (!out_path.empty()) detail::write_file(out_path, os.str());
            else std::cout << os.str();
            return exit_ok;
        }

        if (coeffs->parsed()) {
            const HolisticModel hm =
                detail::derive_model(spec, which == "nu1" ? 2 : 3, coeff_eps_order);
            const ExtractedCoefficients ex = extract_coefficients(hm.model, pde_text);
            const CoeffSeries& cs = which == "nu1" ? ex.nu1
                                  : which == "nu2" ? ex.nu2
                                                   : ex.kappa2;
            const std::vector<double> zs = detail::parse_range(z_range);
            std::ostringstream os;
            coefficients_csv(os, cs, zs, shanks_iters);
            if (!out_path.empty()) detail::write_file(out_path, os.str());
            else std::cout << os.str();
            std::cout << "note: the asymptote column is the conjectured large-z form\n";
            return exit_ok;
        }

        if (sim->parsed()) {
            const HolisticModel hm = detail::derive_model(spec, gamma_order, eps_order);
            const MomentReport mr = point_release_moments(hm.model, sim_gamma, sim_eps, sim_h,
                                                          sim_T, sim_dt, sim_samples);
            std::ostringstream mos;
            moments_csv(mos, mr);
            if (!moments_path.empty()) detail::write_file(moments_path, mos.str());
            else std::cout << mos.str();
            if (!traj_path.empty()) {
                // rerun for the full trajectory with the same deterministic setup
                const GridState init =
                    point_release_state(hm.model, sim_gamma, sim_eps, sim_h, sim_T);
                IntegrateOptions opt;
                opt.dt = sim_dt;
                opt.sample_count = sim_samples;
                const Trajectory traj =
                    integrate(hm.model, sim_gamma, sim_eps, init, sim_T, opt);
                std::ostringstream tos;
                trajectory_csv(tos, traj);
                detail::write_file(traj_path, tos.str());
            }
            if (mr.wrap_contaminated)
                std::cerr << "warning: boundary wrap mass exceeded 1e-12; moments flagged\n";
            return exit_ok;
        }

        if (stab->parsed()) {
            const HolisticModel hm = detail::derive_model(spec, gamma_order, eps_order);
            const std::vector<double> eps_values = detail::parse_range(param_range);
            const std::vector<double> growth = detail::parallel_map(
                eps_values, [&](double e) {
                    return stability_max_growth(hm.model, 1.0, e, stab_h, theta_samples);
                });
            std::vector<std::pair<double, double>> rows;
            for (std::size_t i = 0; i < eps_values.size(); ++i)
                rows.push_back({eps_values[i], growth[i]});
            std::ostringstream os;
            stability_csv(os, rows);
            if (!out_path.empty()) detail::write_file(out_path, os.str());
            else std::cout << os.str();
            return exit_ok;
        }

        std::cerr << "error: usage: no subcommand\n";
        return exit_usage;
    } catch (const PdeParseError& e) {
        std::cerr << "error: bad-spec: " << e.what() << "\n";
        return exit_bad_spec;
    } catch (const UnsupportedPdeError& e) {
        std::cerr << "error: unsupported: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const ExtractionError& e) {
        std::cerr << "error: unsupported: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const ConstructionError& e) {
        std::cerr << "error: unsupported: " << e.what() << "\n";
        return exit_unsupported;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return exit_other;
    }
}

}  // namespace holistic::cli
