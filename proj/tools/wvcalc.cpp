// wvcalc: weak-value uncertainty reports, Bloch-sphere sweeps, seeded property
// verification, and Fisher/Cramer-Rao estimation for problem files.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wvcalc/wvcalc.hpp"

namespace {

void write_output(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wvcalc::ParseError("cannot open output file: " + path);
    out << text;
}

std::string render(const wvcalc::ojson& doc, const std::string& format) {
    if (format == "csv") return wvcalc::csv_flatten(doc);
    return doc.dump(2) + "\n";
}

wvcalc::ProblemFile load_with_overrides(const std::string& path, std::optional<double> t0,
                                        std::optional<double> hbar) {
    wvcalc::ProblemFile p = wvcalc::load_problem(path);
    if (t0) p.t0 = *t0;
    if (hbar) {
        if (!(*hbar > 0.0)) throw wvcalc::ValidationError("hbar", "must be positive");
        p.hbar = *hbar;
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-value uncertainty calculus for finite-dimensional pure states"};
    app.require_subcommand(1);

    std::string format_json = "json", format_csv = "csv";
    std::string output = "-";

    // report
    auto* rep = app.add_subcommand("report", "evaluate every inequality, identity and "
                                             "estimation bound for one problem file");
    std::string rep_input;
    std::string rep_format = "json", rep_output = "-";
    double rep_tol = wvcalc::defaults::saturation_tol;
    std::optional<double> rep_t0, rep_hbar;
    rep->add_option("problem", rep_input, "problem file (JSON)")->required();
    rep->add_option("--format", rep_format)->check(CLI::IsMember({"json", "csv"}));
    rep->add_option("--output", rep_output, "output path, '-' for stdout");
    rep->add_option("--tol", rep_tol, "saturation tolerance (relative)");
    rep->add_option("--t0", rep_t0, "override the problem's t0");
    rep->add_option("--hbar", rep_hbar, "override the problem's hbar");

    // qubit-sweep
    auto* sweep = app.add_subcommand("qubit-sweep", "Bloch-sphere sweep of the sigma_x/sigma_z "
                                                    "example against its closed forms");
    std::size_t theta_steps = 25, phi_steps = 25;
    std::string sweep_format = "csv", sweep_output = "-";
    sweep->add_option("--theta-steps", theta_steps)->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    sweep->add_option("--phi-steps", phi_steps)->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--output", sweep_output);

    // random-verify
    auto* verify = app.add_subcommand("random-verify", "run the identity/inequality property "
                                                       "suites over seeded random instances");
    std::vector<std::size_t> dims{2, 4, 8};
    std::size_t trials = 500;
    std::uint64_t verify_seed = 42;
    std::optional<double> verify_tol;
    std::string verify_format = "json", verify_output = "-";
    verify->add_option("--dims", dims, "dimensions, e.g. --dims 2,4,8")->delimiter(',');
    verify->add_option("--trials", trials, "instances per dimension");
    verify->add_option("--seed", verify_seed);
    verify->add_option("--tol", verify_tol, "override every property tolerance");
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--output", verify_output);

    // estimate
    auto* est = app.add_subcommand("estimate", "build the optimal estimator and validate the "
                                               "Cramer-Rao bound by Monte Carlo");
    std::string est_input;
    std::size_t samples = 100000;
    std::uint64_t est_seed = 1;
    std::string est_format = "json", est_output = "-";
    std::optional<double> est_t0, est_hbar;
    est->add_option("problem", est_input, "problem file (JSON)")->required();
    est->add_option("--samples", samples)->check(CLI::Range(std::size_t{1}, std::size_t{1000000000}));
    est->add_option("--seed", est_seed);
    est->add_option("--t0", est_t0, "override the problem's t0");
    est->add_option("--hbar", est_hbar, "override the problem's hbar");
    est->add_option("--format", est_format)->check(CLI::IsMember({"json", "csv"}));
    est->add_option("--output", est_output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : wvcalc::cli::exit_invalid_input;
    }

    try {
        if (*rep) {
            const wvcalc::ProblemFile p = load_with_overrides(rep_input, rep_t0, rep_hbar);
            const wvcalc::cli::CommandOutput r = wvcalc::cli::report(p, {rep_tol});
            write_output(render(r.doc, rep_format), rep_output);
            return r.exit_code;
        }
        if (*sweep) {
            const auto rows = wvcalc::cli::qubit_sweep({theta_steps, phi_steps, true});
            if (sweep_format == "csv")
                write_output(wvcalc::cli::sweep_csv(rows), sweep_output);
            else
                write_output(wvcalc::cli::sweep_json(rows).dump(2) + "\n", sweep_output);
            return wvcalc::cli::exit_ok;
        }
        if (*verify) {
            wvcalc::cli::RandomVerifyConfig cfg;
            cfg.dims = dims;
            cfg.trials_per_dim = trials;
            cfg.seed = verify_seed;
            cfg.tol_override = verify_tol;
            const wvcalc::cli::CommandOutput r = wvcalc::cli::random_verify(cfg);
            write_output(render(r.doc, verify_format), verify_output);
            return r.exit_code;
        }
        if (*est) {
            const wvcalc::ProblemFile p = load_with_overrides(est_input, est_t0, est_hbar);
            const wvcalc::cli::CommandOutput r = wvcalc::cli::estimate(p, {samples, est_seed});
            write_output(render(r.doc, est_format), est_output);
            return r.exit_code;
        }
    } catch (const wvcalc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_invalid_input;
    } catch (const wvcalc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_invalid_input;
    } catch (const wvcalc::DegenerateSpectrum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_degenerate;
    } catch (const wvcalc::ZeroOverlap& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_degenerate;
    } catch (const wvcalc::VanishingFisher& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_degenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wvcalc::cli::exit_invalid_input;
    }
    return wvcalc::cli::exit_ok;
}
