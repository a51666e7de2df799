#include <doctest.h>

#include <cmath>
#include <random>

#include "cubicvpe/jet.hpp"
#include "cubicvpe/rs_perturbation.hpp"
#include "cubicvpe/vpe.hpp"

using namespace cubicvpe;
using C = std::complex<double>;

namespace {

VpeEnergyFunction make(int n, int order) { return VpeEnergyFunction(rs_coefficients(n, 2 * order + 2), order); }

// First-order energy written out independently of the library.
C first_order_formula(double lambda, C omega, C x0, int n)
{
    const double h = n + 0.5;
    return h * ((1.0 + omega * omega) / (2.0 * omega) - 3.0 * lambda * x0 / omega) + x0 * x0 / 2.0 -
           lambda * x0 * x0 * x0;
}

} // namespace

TEST_CASE("at the unperturbed trial point the energy is the truncated RS series")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> lam(0.0, 0.3);
    for (int n : {0, 1, 3}) {
        for (int order : {1, 2, 3, 5, 7}) {
            const auto rs = rs_coefficients(n, order);
            const auto f = make(n, order);
            for (int k = 0; k < 5; ++k) {
                const double l = lam(rng);
                const C e = f(l, TrialPoint{});
                CHECK(std::abs(e - rs_partial_sum(rs, l)) <= 1e-12 * std::abs(e));
            }
        }
    }
}

TEST_CASE("order one reproduces the closed-form first-order energy")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {0, 2}) {
        const auto f = make(n, 1);
        for (int k = 0; k < 10; ++k) {
            const double l = 0.5 + 0.4 * u(rng);
            const TrialPoint t{C(1.2 + 0.5 * u(rng), 0.5 * u(rng)), C(0.3 * u(rng), 0.3 * u(rng))};
            const C expected = first_order_formula(l, t.omega, t.x0, n);
            CHECK(std::abs(f(l, t) - expected) <= 1e-12 * std::abs(expected));
            CHECK(std::abs(vpe_energy_first_order(l, t, n) - expected) <= 1e-12 * std::abs(expected));
        }
    }
}

TEST_CASE("first-order stationary point solves the quintic and coalesces where 5 Omega^4 = 1")
{
    for (int n : {0, 1, 4}) {
        const double c = 0.8 * std::pow(5.0, -0.25);
        const double lambda_star = std::sqrt(c / (36.0 * (n + 0.5)));
        CHECK(first_order_coalescence(n) == doctest::Approx(lambda_star).epsilon(1e-12));
        for (double scale : {0.5, 0.99, 1.01, 3.0}) {
            const double l = scale * lambda_star;
            const TrialPoint t = first_order_stationary(l, n);
            const C w = t.omega;
            CHECK(std::abs(std::pow(w, 5) - w + 36.0 * (n + 0.5) * l * l) < 1e-11);
            CHECK(std::abs(t.x0 - (1.0 - w * w) / (6.0 * l)) < 1e-11);
            const C e = first_order_formula(l, t.omega, t.x0, n);
            if (scale < 1.0) {
                CHECK(t.omega.imag() == 0.0);
                CHECK(e.imag() == 0.0);
            } else {
                CHECK(e.imag() > 0.0);
            }
        }
    }
}

TEST_CASE("Newton optimum is stationary and sits at the plateau minimum")
{
    const auto f = make(0, 7);
    const auto r = solve_vpe(f, 1.0);
    CHECK(r.residual_norm <= 1e-12 * std::max(1.0, std::abs(r.energy)));
    CHECK(r.energy.imag() > 0.0);
    const auto s = stationarity(f, 1.0, r.trial);
    CHECK(std::abs(s.energy - r.energy) < 1e-14);
    CHECK(s.residual_norm < 1e-11);

    std::vector<C> grid;
    for (int k = -10; k <= 10; ++k) {
        grid.push_back(r.trial.omega + C(0.01 * k, 0.0));
    }
    const auto scan = plateau_scan(f, 1.0, r.trial.x0, grid);
    REQUIRE(scan.rows.size() == grid.size());
    CHECK(scan.best == 10);
}

TEST_CASE("first-order plateau scan locates the real root at small coupling")
{
    const auto f = make(0, 1);
    const double l = 0.1;
    const TrialPoint t = first_order_stationary(l, 0);
    std::vector<C> grid;
    for (int k = -20; k <= 20; ++k) {
        grid.push_back(t.omega + C(0.002 * k, 0.0));
    }
    const auto scan = plateau_scan(f, l, t.x0, grid);
    CHECK(scan.best == 20);

    // Away from Omega = 1 the lambda = 0 energy is not stationary.
    const auto flat = plateau_scan(f, 0.0, C(0.0), {C(0.5), C(1.0), C(2.0)});
    CHECK(flat.rows[0].abs_d_omega > 0.1);
    CHECK(flat.rows[1].abs_d_omega < 1e-14);
    CHECK(flat.rows[2].abs_d_omega > 0.1);
}

TEST_CASE("grid seeding modes agree on a smooth stretch of the branch")
{
    const auto f = make(0, 5);
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) {
        grid.push_back(0.5 + 0.1 * k);
    }
    SweepOptions prev;
    prev.seeding = Seeding::PreviousPoint;
    const auto a = continuation_sweep(f, grid);
    const auto b = continuation_sweep(f, grid, prev);
    REQUIRE(a.size() == grid.size());
    REQUIRE(b.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(a[i].energy - b[i].energy) < 1e-10);
    }
}

TEST_CASE("result does not depend on grid neighbours")
{
    const auto f = make(0, 3);
    const auto alone = solve_vpe(f, 0.3);
    const auto swept = continuation_sweep(f, {0.05, 0.1, 0.2, 0.3});
    CHECK(std::abs(alone.energy - swept.back().energy) < 1e-10);
    CHECK(alone.energy.imag() > 0.0);
}

TEST_CASE("VPE obeys E(lambda; omega) = omega E(lambda / omega^{5/2}; 1)")
{
    const auto f = make(1, 5);
    for (double w : {0.5, 2.0}) {
        const double l = 0.8;
        SweepOptions o;
        o.newton.omega = w;
        const auto lhs = solve_vpe(f, l, o);
        const auto rhs = solve_vpe(f, l / std::pow(w, 2.5));
        CHECK(std::abs(lhs.energy - w * rhs.energy) <= 1e-8 * std::abs(lhs.energy));
        CHECK(std::abs(f(l, rhs.trial.rescaled(w), w) - w * rhs.energy) <= 1e-10 * std::abs(lhs.energy));
    }
}

TEST_CASE("lambda-series of the Omega and j derivatives vanish through order N")
{
    // Trial deviations scaled with the coupling, Omega^2 = 1 - lambda a and
    // j = lambda b, make the reexpansion agree with RS through lambda^N for
    // every (a, b); the jet carries d/da and d/db.
    using S = TruncatedSeries<Jet2>;
    const C a(1.7, 0.4), b(0.3, -0.2);
    for (int order : {1, 3, 5, 7}) {
        const auto f = make(0, order);
        const std::size_t k_max = order + 2;
        const S lam = S::variable(k_max, Jet2::constant(1.0), Jet2::constant(0.0));
        S w0 = S::constant(k_max, Jet2::constant(1.0), Jet2::constant(0.0));
        w0[1] = Jet2::variable(a, Direction::OmegaSquared) * -1.0;
        S j0(k_max, Jet2::constant(0.0));
        j0[1] = Jet2::variable(b, Direction::Current);
        const S e = f.reexpanded<S>(lam, w0, j0);
        const auto rs = rs_coefficients(0, k_max);
        double scale = 1.0;
        for (int k = 0; k <= order; ++k) {
            scale = std::max(scale, std::abs(to_double(rs.coeffs[k])));
        }
        for (int k = 0; k <= order; ++k) {
            CAPTURE(order);
            CAPTURE(k);
            CHECK(std::abs(e[k].value() - to_double(rs.coeffs[k])) <= 1e-12 * scale);
            CHECK(std::abs(e[k].partial(Direction::OmegaSquared)) <= 1e-12 * scale);
            CHECK(std::abs(e[k].partial(Direction::Current)) <= 1e-12 * scale);
        }
        // The first order past N does depend on the trial point.
        CHECK(std::abs(e[order + 1].partial(Direction::OmegaSquared)) +
                  std::abs(e[order + 1].partial(Direction::Current)) >
              1e-3);
    }
}

TEST_CASE("strong-coupling coefficient of the ground state")
{
    const auto r = strong_coupling_kappa(make(0, 11), geometric_ladder(10.0, 1e4, 7));
    CHECK(r.spread < 1e-4);
    CHECK(r.kappa.real() == doctest::Approx(0.61716).epsilon(1e-4));
    CHECK(r.kappa.imag() == doctest::Approx(0.44835).epsilon(1e-4));
    CHECK_THROWS_AS(strong_coupling_kappa(make(0, 3), {1.0, 2.0, 4.0}), ContractViolation);
}

TEST_CASE("geometric ladder and argument checks")
{
    const auto g = geometric_ladder(1.0, 1000.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g.front() == 1.0);
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g.back() == doctest::Approx(1000.0));
    CHECK_THROWS_AS(geometric_ladder(1.0, 10.0, 1), ContractViolation);
    CHECK_THROWS_AS(make(0, 3)(0.5, TrialPoint{C(0.0), C(0.0)}), SingularExpansion);
    CHECK_THROWS_AS(VpeEnergyFunction(rs_coefficients(0, 4), 9), ContractViolation);
}
