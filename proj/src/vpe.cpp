#include "cubicvpe/vpe.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace cubicvpe {

namespace {

// Omega^5 - Omega + c has a double positive root at 5^{-1/4} when
// c = (4/5) 5^{-1/4}.
const double kDoubleRoot = std::pow(5.0, -0.25);
const double kCriticalConstant = 0.8 * kDoubleRoot;

double real_branch_root(double c)
{
    double lo = kDoubleRoot;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        (mid * mid * mid * mid * mid - mid + c > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

complex complex_branch_root(double c)
{
    // Past the coalescence the quintic has no positive root; the branch is the
    // unique complex pair with positive real part (no root can cross the
    // imaginary axis for c != 0).
    Eigen::Matrix<complex, 5, 5> companion = Eigen::Matrix<complex, 5, 5>::Zero();
    for (int i = 1; i < 5; ++i) {
        companion(i, i - 1) = 1.0;
    }
    companion(0, 4) = -c;
    companion(3, 4) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix<complex, 5, 5>> solver(companion, false);
    complex best{0.0, 0.0};
    for (int i = 0; i < 5; ++i) {
        const complex r = solver.eigenvalues()(i);
        if (r.real() > best.real() && r.imag() > 0.0) {
            best = r;
        }
    }
    for (int it = 0; it < 8; ++it) {
        const complex r4 = best * best * best * best;
        best -= (r4 * best - best + c) / (5.0 * r4 - 1.0);
    }
    return best;
}

struct GradientHessian {
    Jet2 jet;
    complex d_omega;
    complex d_x0;
    double residual;
    double curvature;
};

GradientHessian analyse(const Jet2& jet, const TrialPoint& trial)
{
    using D = Direction;
    const complex ew = jet.partial(D::OmegaSquared);
    const complex ej = jet.partial(D::Current);
    const complex& om = trial.omega;
    const complex& x0 = trial.x0;
    const complex d_omega = 2.0 * om * (ew + x0 * ej);
    const complex d_x0 = om * om * ej;

    // Hessian in (Omega, x0) from the one in (Omega^2, j) via the Jacobian
    // d(w, j)/d(Omega, x0) = [[2 Omega, 0], [2 Omega x0, Omega^2]]; the
    // gradient-dependent terms are dropped (they vanish at stationarity).
    const Eigen::Matrix2cd hw{{jet.partial(D::OmegaSquared, D::OmegaSquared), jet.partial(D::OmegaSquared, D::Current)},
                              {jet.partial(D::OmegaSquared, D::Current), jet.partial(D::Current, D::Current)}};
    const Eigen::Matrix2cd jac{{2.0 * om, 0.0}, {2.0 * om * x0, om * om}};
    const Eigen::Matrix2cd h = jac.transpose() * hw * jac;
    return {jet, d_omega, d_x0, std::hypot(std::abs(d_omega), std::abs(d_x0)), h.norm()};
}

std::string describe(const TrialPoint& t)
{
    std::ostringstream os;
    os.precision(10);
    os << "Omega = " << t.omega << ", x0 = " << t.x0;
    return os.str();
}

double natural_scale(double lambda, double omega)
{
    return std::max(omega, std::pow(std::abs(lambda), 0.2));
}

std::string branch_tag(const VpeEnergyFunction& f, Seeding seeding)
{
    return "n" + std::to_string(f.quantum_number()) + "-N" + std::to_string(f.order()) +
           (seeding == Seeding::FirstOrder ? "-first-order" : "-continued");
}

double jump(const TrialPoint& a, const TrialPoint& b)
{
    return std::abs(a.omega - b.omega) + std::abs(a.x0 - b.x0);
}

} // namespace

complex vpe_energy_first_order(double lambda, const TrialPoint& trial, int n)
{
    if (trial.omega == 0.0) {
        throw DomainError("vpe_energy_first_order: Omega = 0");
    }
    const complex& om = trial.omega;
    const complex& x0 = trial.x0;
    const double level = n + 0.5;
    return level * ((1.0 + om * om) / (2.0 * om) - 3.0 * lambda * x0 / om) + 0.5 * x0 * x0 - lambda * x0 * x0 * x0;
}

double first_order_coalescence(int n)
{
    if (n < 0) {
        throw ContractViolation("quantum number must be non-negative");
    }
    return std::sqrt(kCriticalConstant / (36.0 * (n + 0.5)));
}

TrialPoint first_order_stationary(double lambda, int n, double omega)
{
    if (n < 0) {
        throw ContractViolation("quantum number must be non-negative");
    }
    if (lambda < 0.0) {
        throw ContractViolation("first_order_stationary: lambda must be non-negative");
    }
    if (!(omega > 0.0)) {
        throw ContractViolation("first_order_stationary: omega must be positive");
    }
    if (omega != 1.0) {
        return first_order_stationary(lambda / std::pow(omega, 2.5), n).rescaled(omega);
    }
    if (lambda == 0.0) {
        return {};
    }
    const double c = 36.0 * (n + 0.5) * lambda * lambda;
    TrialPoint t;
    if (c <= kCriticalConstant) {
        t.omega = real_branch_root(c);
    } else {
        t.omega = complex_branch_root(c);
    }
    t.x0 = (1.0 - t.omega * t.omega) / (6.0 * lambda);
    if (vpe_energy_first_order(lambda, t, n).imag() < 0.0) {
        t = t.conj();
    }
    return t;
}

VpeEnergyFunction::VpeEnergyFunction(const RsCoefficients& coeffs, int order)
    : n_(coeffs.n)
    , order_(order)
{
    if (order < 1) {
        throw ContractViolation("VPE order must be at least 1");
    }
    if (coeffs.max_order < order) {
        throw ContractViolation("VPE order " + std::to_string(order) + " needs coefficients through that order");
    }
    for (int j = 0; j <= order; j += 2) {
        even_.push_back(to_double(coeffs.coeffs[j]));
    }
}

complex VpeEnergyFunction::operator()(double lambda, const TrialPoint& trial, double omega) const
{
    return reexpanded<complex>(complex(lambda), trial.omega_squared(), trial.current(), omega * omega);
}

Jet2 VpeEnergyFunction::jet(double lambda, const TrialPoint& trial, double omega) const
{
    return jet_lift<2>(
        [&](const Jet2& w, const Jet2& j) { return reexpanded<Jet2>(Jet2::constant(lambda), w, j, omega * omega); },
        trial.omega_squared(), trial.current(), "reexpanded energy");
}

Stationarity stationarity(const VpeEnergyFunction& f, double lambda, const TrialPoint& trial, double omega)
{
    const auto g = analyse(f.jet(lambda, trial, omega), trial);
    return {g.jet.value(), g.d_omega, g.d_x0, g.residual, g.curvature};
}

OptimizationResult optimize_trial(const VpeEnergyFunction& f, double lambda, const TrialPoint& guess,
                                  const NewtonOptions& options)
{
    using D = Direction;
    if (f.order() % 2 == 0) {
        throw ContractViolation("stationarity is only defined for odd VPE orders");
    }
    const double runaway = 1e3 * natural_scale(lambda, options.omega);
    complex om = guess.omega;
    complex j = guess.current();
    TrialPoint trial = guess;
    for (int it = 0; it <= options.max_iterations; ++it) {
        const auto g = analyse(f.jet(lambda, trial, options.omega), trial);
        const complex energy = g.jet.value();
        if (!std::isfinite(g.residual) || !std::isfinite(std::abs(energy)) || std::abs(om) > runaway) {
            break;
        }
        if (g.residual <= options.tol * std::max(1.0, std::abs(energy))) {
            return {trial, energy, g.residual, {}, it, g.curvature};
        }
        if (it == options.max_iterations) {
            break;
        }
        // Newton in (Omega, j): E_Omega = 2 Omega E_w, E_j.
        const complex ew = g.jet.partial(D::OmegaSquared);
        const complex ej = g.jet.partial(D::Current);
        const complex hoo = 4.0 * om * om * g.jet.partial(D::OmegaSquared, D::OmegaSquared) + 2.0 * ew;
        const complex hoj = 2.0 * om * g.jet.partial(D::OmegaSquared, D::Current);
        const complex hjj = g.jet.partial(D::Current, D::Current);
        const complex go = 2.0 * om * ew;
        const complex det = hoo * hjj - hoj * hoj;
        const double scale = std::abs(hoo * hjj) + std::abs(hoj * hoj);
        if (det == 0.0 || std::abs(det) <= 1e-14 * scale) {
            throw DegenerateStationaryPoint("singular Hessian at " + describe(trial));
        }
        om -= (hjj * go - hoj * ej) / det;
        j -= (hoo * ej - hoj * go) / det;
        if (om == 0.0) {
            throw SingularExpansion("trial frequency");
        }
        trial = {om, j / (om * om)};
    }
    throw ConvergenceError("Newton did not converge within " + std::to_string(options.max_iterations) +
                           " iterations at lambda = " + std::to_string(lambda) + "; last iterate " + describe(trial));
}

std::vector<OptimizationResult> continuation_sweep(const VpeEnergyFunction& f, const std::vector<double>& lambda_grid,
                                                   const SweepOptions& options)
{
    if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end())) {
        throw ContractViolation("continuation_sweep: lambda grid must be ascending");
    }
    const int n = f.quantum_number();
    const std::string tag = branch_tag(f, options.seeding);
    const double omega = options.newton.omega;

    // Follows the branch from (a, from) to b, bisecting the step whenever
    // Newton fails or the optimum moves by more than the step bound.
    std::function<OptimizationResult(const OptimizationResult&, double, double, int)> advance =
        [&](const OptimizationResult& from, double a, double b, int depth) -> OptimizationResult {
        try {
            auto r = optimize_trial(f, b, from.trial, options.newton);
            if (jump(r.trial, from.trial) <= options.step_bound) {
                return r;
            }
        } catch (const ConvergenceError&) {
        } catch (const SingularExpansion&) {
        }
        if (depth >= options.max_refinements) {
            throw SweepError("branch lost between lambda = " + std::to_string(a) + " and " + std::to_string(b), a);
        }
        const double mid = 0.5 * (a + b);
        const auto half = advance(from, a, mid, depth + 1);
        return advance(half, mid, b, depth + 1);
    };

    // Below the sliding threshold the first-order seed is real while the
    // higher-order branch may be complex: anchor at the nearest lambda r^{+-k}
    // where the seed converges (above first) and walk the ladder back.
    auto from_anchor = [&](double lambda) -> OptimizationResult {
        constexpr double ratio = 1.05;
        constexpr int max_steps = 150;
        for (double step : {ratio, 1.0 / ratio}) {
            std::vector<double> ladder{lambda};
            for (int k = 0; k < max_steps; ++k) {
                const double next = ladder.back() * step;
                ladder.push_back(next);
                OptimizationResult r;
                try {
                    r = optimize_trial(f, next, first_order_stationary(next, n, omega), options.newton);
                } catch (const ConvergenceError&) {
                    continue;
                } catch (const SingularExpansion&) {
                    continue;
                }
                try {
                    for (std::size_t i = ladder.size() - 1; i-- > 0;) {
                        r = advance(r, ladder[i + 1], ladder[i], 0);
                    }
                    return r;
                } catch (const SweepError&) {
                    break;
                }
            }
        }
        throw SweepError("no first-order anchor connects to lambda = " + std::to_string(lambda), lambda);
    };

    std::vector<OptimizationResult> out;
    out.reserve(lambda_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        const double lambda = lambda_grid[i];
        OptimizationResult r;
        if (options.seeding == Seeding::FirstOrder || out.empty()) {
            try {
                r = optimize_trial(f, lambda, first_order_stationary(lambda, n, omega), options.newton);
            } catch (const ConvergenceError&) {
                r = from_anchor(lambda);
            } catch (const SingularExpansion&) {
                r = from_anchor(lambda);
            }
        } else {
            r = advance(out.back(), lambda_grid[i - 1], lambda, 0);
        }
        // E(conj trial) = conj E: report the member of the pair with Im E >= 0.
        if (r.energy.imag() < 0.0) {
            r.trial = r.trial.conj();
            r.energy = std::conj(r.energy);
        }
        r.branch_tag = tag;
        out.push_back(std::move(r));
    }
    return out;
}

OptimizationResult solve_vpe(const VpeEnergyFunction& f, double lambda, const SweepOptions& options)
{
    return continuation_sweep(f, {lambda}, options).front();
}

PlateauScan plateau_scan(const VpeEnergyFunction& f, double lambda, complex x0, const std::vector<complex>& omega_grid)
{
    if (omega_grid.empty()) {
        throw ContractViolation("plateau_scan: empty frequency grid");
    }
    PlateauScan scan;
    for (const complex& om : omega_grid) {
        const auto s = stationarity(f, lambda, {om, x0});
        scan.rows.push_back({om, s.energy, std::abs(s.d_omega)});
        if (scan.rows.back().abs_d_omega < scan.rows[scan.best].abs_d_omega) {
            scan.best = scan.rows.size() - 1;
        }
    }
    return scan;
}

std::vector<double> geometric_ladder(double start, double stop, int count)
{
    if (!(start > 0.0) || !(stop > start) || count < 2) {
        throw ContractViolation("geometric_ladder: need 0 < start < stop and at least two points");
    }
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        out[k] = start * std::pow(stop / start, double(k) / (count - 1));
    }
    out.back() = stop;
    return out;
}

StrongCouplingResult strong_coupling_kappa(const VpeEnergyFunction& f, const std::vector<double>& lambda_ladder,
                                           const KappaOptions& options)
{
    if (lambda_ladder.size() < 3 || !std::is_sorted(lambda_ladder.begin(), lambda_ladder.end()) ||
        !(lambda_ladder.front() > 0.0)) {
        throw ContractViolation("strong_coupling_kappa: need an ascending positive ladder of at least three points");
    }
    if (lambda_ladder.back() < 1e3 * lambda_ladder.front()) {
        throw ContractViolation("strong_coupling_kappa: ladder must span at least three decades");
    }

    StrongCouplingResult out;
    out.n = f.quantum_number();
    out.order = f.order();
    out.lambdas = lambda_ladder;

    SweepOptions first;
    first.newton = options.newton;
    OptimizationResult r = solve_vpe(f, lambda_ladder.front(), first);
    for (std::size_t k = 0; k < lambda_ladder.size(); ++k) {
        const double lambda = lambda_ladder[k];
        if (k > 0) {
            // Once the harmonic term is negligible, E is homogeneous under
            // lambda -> c^5 lambda with Omega -> c Omega, x0 -> x0 / c.
            const double c = std::pow(lambda / lambda_ladder[k - 1], 0.2);
            r = optimize_trial(f, lambda, {r.trial.omega * c, r.trial.x0 / c}, options.newton);
        }
        out.ratios.push_back(r.energy / std::pow(lambda, 0.4));
    }
    // E lambda^{-2/5} = kappa + c1 lambda^{-4/5} + ...
    for (std::size_t k = 0; k + 1 < lambda_ladder.size(); ++k) {
        const double h0 = std::pow(lambda_ladder[k], -0.8);
        const double h1 = std::pow(lambda_ladder[k + 1], -0.8);
        out.extrapolants.push_back((out.ratios[k + 1] * h0 - out.ratios[k] * h1) / (h0 - h1));
    }
    out.kappa = out.extrapolants.back();
    const std::size_t m = out.extrapolants.size();
    for (std::size_t a = m >= 3 ? m - 3 : 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            out.spread = std::max(out.spread, std::abs(out.extrapolants[a] - out.extrapolants[b]));
        }
    }
    out.spread /= std::abs(out.kappa);
    if (!(out.spread <= options.spread_bound)) {
        std::ostringstream os;
        os << "kappa ladder did not stabilise: relative spread " << out.spread << " exceeds " << options.spread_bound;
        throw ExtrapolationError(os.str());
    }
    return out;
}

} // namespace cubicvpe
