#pragma once

// Variational reexpansion of the Rayleigh-Schroedinger series for the cubic
// oscillator and the machinery to make the result stationary in the two
// complex trial parameters (Omega, x0).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cubicvpe/errors.hpp"
#include "cubicvpe/jet.hpp"
#include "cubicvpe/rs_perturbation.hpp"
#include "cubicvpe/series.hpp"

namespace cubicvpe {

using complex = std::complex<double>;

/// Trial oscillator: frequency Omega centred near x0. The source strength
/// j = Omega^2 x0 is derived, never stored.
struct TrialPoint {
    complex omega{1.0, 0.0};
    complex x0{0.0, 0.0};

    complex omega_squared() const { return omega * omega; }
    complex current() const { return omega * omega * x0; }

    /// Principal square root for Omega.
    static TrialPoint from_coordinates(complex omega_squared, complex current)
    {
        if (omega_squared == 0.0) {
            throw SingularExpansion("trial frequency");
        }
        return {std::sqrt(omega_squared), current / omega_squared};
    }

    TrialPoint conj() const { return {std::conj(omega), std::conj(x0)}; }

    /// The same point for the problem with harmonic frequency omega, given
    /// the point found at coupling lambda / omega^{5/2} and unit frequency.
    TrialPoint rescaled(double omega_scale) const { return {omega * omega_scale, x0 / std::sqrt(omega_scale)}; }
};

/// (n + 1/2)((1 + Omega^2)/(2 Omega) - 3 lambda x0 / Omega) + x0^2/2 - lambda x0^3.
complex vpe_energy_first_order(double lambda, const TrialPoint& trial, int n);

/// Stationary point of the first-order energy on the branch that starts at
/// (Omega, x0) = (1, 0) for lambda = 0: Omega solves
/// Omega^5 - Omega + 36 (n + 1/2) lambda^2 = 0 and x0 = (1 - Omega^2) / (6 lambda).
/// Beyond the coalescence of the two positive real roots the branch turns
/// complex; the member of the conjugate pair with Im E >= 0 is returned.
/// For omega != 1 the unit-frequency point is rescaled.
TrialPoint first_order_stationary(double lambda, int n, double omega = 1.0);

/// Coupling at which the real first-order branch for level n coalesces with
/// its partner root and the energy acquires an imaginary part.
double first_order_coalescence(int n);

/// E(lambda; Omega, x0) at order N: the exact energy of the shifted problem
/// -1/2 d^2 + w x^2/2 - j x - t x^3, re-expanded around the trial point. With
/// u counting powers of lambda,
///   E_N = sum_{m<=N} [u^m] E(w0 + u (omega^2 - w0), j0 (1 - u), lambda u),
/// which is the truncated action of exp(lambda a d/dOmega^2) exp(-lambda b d/dj)
/// followed by a -> (omega^2 - Omega^2)/lambda, b -> j/lambda.
class VpeEnergyFunction {
public:
    VpeEnergyFunction(const RsCoefficients& coeffs, int order);

    int quantum_number() const noexcept { return n_; }
    int order() const noexcept { return order_; }

    /// Generic evaluation at (lambda, Omega^2, j); S may be complex, a Jet, or a
    /// TruncatedSeries of either.
    template <class S>
    S reexpanded(const S& lambda, const S& w0, const S& j0, double omega_squared = 1.0) const;

    complex operator()(double lambda, const TrialPoint& trial, double omega = 1.0) const;

    /// Value with first and second partials in (Omega^2, j).
    Jet2 jet(double lambda, const TrialPoint& trial, double omega = 1.0) const;

private:
    int n_;
    int order_;
    std::vector<double> even_; // E_{2 nu}
};

struct OptimizationResult {
    TrialPoint trial;
    complex energy;
    double residual_norm = 0.0; // |(dE/dOmega, dE/dx0)|
    std::string branch_tag;
    int iterations = 0;
    /// Frobenius norm of the Hessian in (Omega, x0) at the stationary point;
    /// small values mark a flat plateau.
    double curvature = 0.0;
};

struct NewtonOptions {
    double tol = 1e-12;
    int max_iterations = 60;
    double omega = 1.0;
};

class DegenerateStationaryPoint : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Newton iteration on the stationarity conditions in the coordinates
/// (Omega, j), with exact derivatives from jets. Converged when
/// |(dE/dOmega, dE/dx0)| <= tol max(1, |E|). Throws ConvergenceError (with the
/// last iterate in the message) when that is not reached, or when the
/// iteration runs off to |Omega| far beyond the natural scale of the problem;
/// DegenerateStationaryPoint on a singular Hessian.
OptimizationResult optimize_trial(const VpeEnergyFunction& f, double lambda, const TrialPoint& guess,
                                  const NewtonOptions& options = {});

/// Residuals and curvature at an arbitrary point.
struct Stationarity {
    complex energy;
    complex d_omega;
    complex d_x0;
    double residual_norm;
    double curvature;
};
Stationarity stationarity(const VpeEnergyFunction& f, double lambda, const TrialPoint& trial, double omega = 1.0);

/// Grid-point seeding for continuation_sweep.
///  FirstOrder:    every point starts from first_order_stationary at its own
///                 lambda, i.e. from the first-order branch continued from
///                 (1, 0). Where Newton fails from that seed (below the
///                 sliding threshold the seed is real but the order-N branch
///                 need not be) the branch is continued from the nearest
///                 lambda * 1.05^k at which the seed converges, trying k > 0
///                 before k < 0, so results do not depend on the grid.
///  PreviousPoint: every point starts from the previous grid point's optimum.
enum class Seeding { FirstOrder, PreviousPoint };

struct SweepOptions {
    NewtonOptions newton{};
    Seeding seeding = Seeding::FirstOrder;
    double step_bound = 0.5; // |dOmega| + |dx0| per accepted step
    int max_refinements = 10; // bisection depth per grid interval
};

class SweepError : public ConvergenceError {
public:
    SweepError(const std::string& what, double last_good_lambda)
        : ConvergenceError(what)
        , last_good_(last_good_lambda)
    {
    }
    double last_good_lambda() const noexcept { return last_good_; }

private:
    double last_good_;
};

std::vector<OptimizationResult> continuation_sweep(const VpeEnergyFunction& f, const std::vector<double>& lambda_grid,
                                                   const SweepOptions& options = {});

/// Optimum at a single coupling with the default seeding of continuation_sweep.
OptimizationResult solve_vpe(const VpeEnergyFunction& f, double lambda, const SweepOptions& options = {});

struct PlateauRow {
    complex omega;
    complex energy;
    double abs_d_omega;
};

struct PlateauScan {
    std::vector<PlateauRow> rows;
    std::size_t best = 0; // index of the smallest |dE/dOmega|
};

PlateauScan plateau_scan(const VpeEnergyFunction& f, double lambda, complex x0, const std::vector<complex>& omega_grid);

struct KappaOptions {
    NewtonOptions newton{};
    double spread_bound = 1e-4; // relative spread of the last three extrapolants
};

struct StrongCouplingResult {
    int n = 0;
    int order = 0;
    complex kappa;
    std::vector<double> lambdas;
    std::vector<complex> ratios;      // E(lambda) lambda^{-2/5}
    std::vector<complex> extrapolants; // Richardson in lambda^{-4/5}, pairwise
    double spread = 0.0;
};

class ExtrapolationError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// kappa = lim E(lambda) lambda^{-2/5} from a geometric ladder spanning at
/// least three decades. The first rung is solved from its first-order seed,
/// later rungs from the previous optimum rescaled by (c^{1/5}, c^{-1/5}).
StrongCouplingResult strong_coupling_kappa(const VpeEnergyFunction& f, const std::vector<double>& lambda_ladder,
                                           const KappaOptions& options = {});

/// Geometric ladder of `count` points from `start` to `stop` inclusive.
std::vector<double> geometric_ladder(double start, double stop, int count);

// ---------------------------------------------------------------------------

template <class S>
S VpeEnergyFunction::reexpanded(const S& lambda, const S& w0, const S& j0, double omega_squared) const
{
    if (scalar_is_zero(w0)) {
        throw SingularExpansion("trial frequency");
    }
    using Series = TruncatedSeries<S>;
    const std::size_t order = static_cast<std::size_t>(order_);
    const S zero = w0 * 0.0;

    Series w(order, zero);
    Series j(order, zero);
    Series t(order, zero);
    w[0] = w0;
    w[1] = omega_squared - w0;
    j[0] = j0;
    j[1] = -j0;
    t[1] = lambda;

    // Curvature at the classical minimum xi of w x^2/2 - j x - t x^3 is
    // s = sqrt(w^2 - 12 j t); xi = 2 j / (w + s) is regular at t = 0. The
    // fractional powers are taken of s^2 / w0^2 (constant term one) and dressed
    // with Omega = sqrt(w0), Re Omega > 0, so no branch cut is crossed.
    const S omega = scalar_pow(w0, 0.5);
    const Series ratio = (w * w - j * t * 12.0) * scalar_reciprocal(w0 * w0);
    const Series quarter = series_pow(ratio, 0.25);
    const Series root4 = quarter * omega;
    const Series s = quarter * quarter * w0;
    const Series xi = (j * 2.0) / (w + s);
    const Series xi2 = xi * xi;
    const Series classical = w * xi2 * 0.5 - j * xi - t * xi2 * xi;

    // Fluctuation part: sqrt(s) sum_nu E_{2nu} (t^2 / s^{5/2})^nu.
    const Series u = t * t * series_pow(ratio, -1.25) * scalar_pow(omega, -5.0);
    Series acc(order, zero);
    for (std::size_t nu = even_.size(); nu-- > 0;) {
        acc = acc * u;
        acc[0] = acc[0] + even_[nu];
    }
    return (classical + root4 * acc).coefficient_sum();
}

} // namespace cubicvpe
