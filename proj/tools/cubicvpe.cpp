// Command-line front end: one verb per engine plus the table and figure data.
//
// Exit codes: 0 success, 2 usage error, 3 convergence failure, 4 tolerance
// miss, 1 anything else (e.g. an unreadable data file).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubicvpe/errors.hpp"
#include "cubicvpe/report.hpp"

namespace {

namespace rep = cubicvpe::report;

constexpr int kUsage = 2;
constexpr int kConvergence = 3;
constexpr int kTolerance = 4;

struct Common {
    std::optional<std::string> levels;
    std::optional<std::string> lambdas;
    std::optional<int> order;
    std::string format = "csv";
    std::optional<std::string> out;
    std::optional<double> tol;
};

int emit(const rep::Report& r, const Common& c)
{
    std::ofstream file;
    if (c.out) {
        file.open(*c.out);
        if (!file) {
            std::cerr << "cannot write " << *c.out << '\n';
            return 1;
        }
    }
    std::ostream& os = c.out ? static_cast<std::ostream&>(file) : std::cout;
    if (c.format == "json") {
        rep::write_json(os, r.table);
    } else {
        rep::write_csv(os, r.table);
    }
    os.flush();
    if (r.convergence_failures > 0) {
        std::cerr << r.convergence_failures << " row(s) did not converge\n";
        return kConvergence;
    }
    if (r.tolerance_misses > 0) {
        std::cerr << r.tolerance_misses << " row(s) missed their tolerance\n";
        return kTolerance;
    }
    return 0;
}

std::vector<int> levels_or(const Common& c, std::vector<int> fallback)
{
    return c.levels ? rep::parse_levels(*c.levels) : fallback;
}

std::vector<double> grid_or(const Common& c, std::vector<double> fallback)
{
    return c.lambdas ? rep::parse_lambda_grid(*c.lambdas) : fallback;
}

std::vector<double> required_grid(const Common& c, const char* verb)
{
    if (!c.lambdas) {
        throw cubicvpe::ContractViolation(std::string(verb) + " needs --lambda");
    }
    return rep::parse_lambda_grid(*c.lambdas);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Resonances of the cubic anharmonic oscillator: perturbation series, variational resummation, "
                 "WKB rates and complex-rotation eigenvalues."};
    app.set_config("--config", "", "key = value file with default option values");
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--n", c.levels, "quantum numbers: '0', '0,4' or '0:4'");
    app.add_option("--lambda", c.lambdas, "coupling: '1', '0.1,1,10' or 'start:stop:count'");
    app.add_option("--order", c.order, "RS order J, VPE order N, WKB order m (per verb)");
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--tol", c.tol, "tolerance (Newton for vpe, CCR for ccr, relative for table1/table2)");

    auto* rs = app.add_subcommand("rs", "exact perturbation coefficients E_0..E_J");

    auto* vpe = app.add_subcommand("vpe", "variational perturbation expansion");
    std::string seeding = "first-order";
    double vpe_omega = 1.0;
    vpe->add_option("--seeding", seeding, "grid seeding")->check(CLI::IsMember({"first-order", "previous"}));
    vpe->add_option("--omega", vpe_omega, "harmonic frequency")->check(CLI::PositiveNumber);

    auto* wkb = app.add_subcommand("wkb", "WKB tunneling rate with k_m corrections");
    std::optional<int> variational;
    double wkb_omega = 1.0;
    wkb->add_option("--variational", variational, "add variationally improved rows, trial and expansion order N");
    wkb->add_option("--omega", wkb_omega, "harmonic frequency")->check(CLI::PositiveNumber);

    auto* ccr = app.add_subcommand("ccr", "complex coordinate rotation eigenvalues");
    cubicvpe::CcrConfig ccr_config;
    double basis_scale = 0.0;
    ccr->add_option("--theta", ccr_config.theta, "rotation angle (rad)");
    ccr->add_option("--basis", ccr_config.basis_size, "starting basis size M");
    ccr->add_option("--max-basis", ccr_config.max_basis, "cap for M doubling");
    ccr->add_option("--basis-scale", basis_scale, "oscillator frequency of the basis (default adaptive)");
    ccr->add_option("--omega", ccr_config.omega, "harmonic frequency")->check(CLI::PositiveNumber);

    auto* t1 = app.add_subcommand("table1", "reference cells: CCR and 7th-order VPE side by side");
    auto* t2 = app.add_subcommand("table2", "strong-coupling coefficients kappa (--lambda sets the ladder)");
    auto* f1 = app.add_subcommand("fig1", "ground-state Im E at VPE orders 1,3,5,7 and CCR");
    auto* f2 = app.add_subcommand("fig2", "Im E / eps_WKB for CCR, VPE, WKB and VPE-WKB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (rs->parsed()) {
            return emit(rep::rs_listing(levels_or(c, {0}), c.order.value_or(8)), c);
        }
        if (vpe->parsed()) {
            rep::VpeRequest q;
            q.levels = levels_or(c, {0});
            q.lambdas = required_grid(c, "vpe");
            q.order = c.order.value_or(7);
            q.omega = vpe_omega;
            q.sweep.seeding = seeding == "previous" ? cubicvpe::Seeding::PreviousPoint : cubicvpe::Seeding::FirstOrder;
            if (c.tol) {
                q.sweep.newton.tol = *c.tol;
            }
            return emit(rep::vpe_rows(q), c);
        }
        if (wkb->parsed()) {
            rep::WkbRequest q;
            q.levels = levels_or(c, {0});
            q.lambdas = required_grid(c, "wkb");
            q.order = c.order.value_or(1);
            q.variational_order = variational;
            q.omega = wkb_omega;
            return emit(rep::wkb_rows(q), c);
        }
        if (ccr->parsed()) {
            if (basis_scale > 0.0) {
                ccr_config.basis_scale = basis_scale;
            }
            if (c.tol) {
                ccr_config.tolerance = *c.tol;
            }
            return emit(rep::ccr_rows(levels_or(c, {0}), required_grid(c, "ccr"), ccr_config), c);
        }
        if (t1->parsed()) {
            const std::vector<double> filter = c.lambdas ? rep::parse_lambda_grid(*c.lambdas) : std::vector<double>{};
            const std::vector<int> levels = c.levels ? rep::parse_levels(*c.levels) : std::vector<int>{};
            return emit(rep::table1(filter, levels, c.tol.value_or(1e-3)), c);
        }
        if (t2->parsed()) {
            return emit(rep::table2(levels_or(c, {0, 1, 2, 3, 4}), c.order.value_or(11),
                                    grid_or(c, rep::default_kappa_ladder()), c.tol.value_or(1e-3)),
                        c);
        }
        if (f1->parsed()) {
            return emit(rep::fig1(grid_or(c, rep::default_fig1_grid()), {1, 3, 5, 7}), c);
        }
        if (f2->parsed()) {
            return emit(rep::fig2(levels_or(c, {0, 1, 2, 3, 4}), grid_or(c, rep::default_fig2_grid()),
                                  c.order.value_or(7)),
                        c);
        }
    } catch (const cubicvpe::ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const cubicvpe::DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const cubicvpe::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const cubicvpe::SingularExpansion& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
