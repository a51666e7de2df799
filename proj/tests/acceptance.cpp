// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when all pass).

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubicvpe/ccr.hpp"
#include "cubicvpe/jet.hpp"
#include "cubicvpe/report.hpp"
#include "cubicvpe/rs_perturbation.hpp"
#include "cubicvpe/vpe.hpp"
#include "cubicvpe/wkb.hpp"

using namespace cubicvpe;
using C = std::complex<double>;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

VpeEnergyFunction make(int n, int order) { return VpeEnergyFunction(rs_coefficients(n, 2 * order + 2), order); }

double get(const report::Table& t, std::size_t row, const char* col)
{
    return std::get<double>(t.rows[row][t.column(col)]);
}

std::string cell_name(const report::Table& t, std::size_t row)
{
    return "(lambda=" + num(get(t, row, "lambda")) + ", n=" +
           std::to_string(std::get<long long>(t.rows[row][t.column("n")])) + ")";
}

Outcome criterion1(const report::Table& t1)
{
    Outcome o;
    double worst = 0.0;
    for (std::size_t r = 0; r < t1.rows.size(); ++r) {
        const double err = get(t1, r, "rel_err_CCR");
        worst = std::max(worst, err / get(t1, r, "tol_CCR"));
        o.require(err <= get(t1, r, "tol_CCR"), "CCR cell " + cell_name(t1, r) + " rel err " + num(err));
    }
    o.require(t1.rows.size() == 9, "expected nine cells");
    if (o.pass) {
        o.detail << "9/9 cells, worst err/tol " << num(worst);
    }
    return o;
}

Outcome criterion2(const report::Table& t1)
{
    Outcome o;
    double worst = 0.0, de = -1.0;
    for (std::size_t r = 0; r < t1.rows.size(); ++r) {
        const double err = get(t1, r, "rel_err_VPE");
        worst = std::max(worst, err);
        o.require(err <= 1e-3, "VPE cell " + cell_name(t1, r) + " rel err " + num(err));
        if (get(t1, r, "lambda") == 1.0 && std::get<long long>(t1.rows[r][t1.column("n")]) == 0) {
            de = get(t1, r, "abs_dE");
        }
    }
    o.require(de >= 0.0 && de <= 1e-4, "|E_VPE - E_CCR| at (1, 0) = " + num(de));
    if (o.pass) {
        o.detail << "worst VPE rel err " << num(worst) << ", |dE|(1,0) = " << num(de);
    }
    return o;
}

Outcome criterion3()
{
    Outcome o;
    const auto t = report::table2({0, 1, 2, 3, 4}, 11, report::default_kappa_ladder(), 1e-3).table;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double err = get(t, r, "rel_err");
        const long long n = std::get<long long>(t.rows[r][t.column("n")]);
        o.require(err <= 1e-3, "kappa_" + std::to_string(n) + " rel err " + num(err) + " (computed " +
                                   num(get(t, r, "re_kappa")) + (get(t, r, "im_kappa") >= 0 ? "+" : "") +
                                   num(get(t, r, "im_kappa")) + "i)");
    }
    if (o.pass) {
        o.detail << "n = 0..4 within 1e-3";
    }
    return o;
}

Outcome criterion4()
{
    Outcome o;
    const auto f = make(0, 1);
    std::ostringstream ratios;
    for (double l : {0.3, 1.0, 10.0, 100.0}) {
        const double vpe = solve_vpe(f, l).energy.imag();
        const double ccr = find_resonance(l, 0).energy.imag();
        const double q = std::abs(vpe - ccr) / std::abs(ccr);
        ratios << (ratios.tellp() > 0 ? ", " : "") << num(q);
        o.require(q <= 0.12, "lambda=" + num(l) + " relative Im error " + num(q));
    }
    if (o.pass) {
        o.detail << "relative Im errors " << ratios.str();
    }
    return o;
}

Outcome criterion5()
{
    Outcome o;
    for (int n = 0; n <= 4; ++n) {
        const auto fast = rs_coefficients(n, 16);
        const auto oracle = oracle_sum_over_states(n, 16);
        for (int j = 0; j <= 16; ++j) {
            o.require(fast.coeffs[j] == oracle.coeffs[j], "n=" + std::to_string(n) + " j=" + std::to_string(j));
            if (j % 2 == 1) {
                o.require(fast.coeffs[j] == 0, "odd order nonzero");
            }
        }
        o.require(fast.coeffs[2] == -Rational(11 + 30 * n + 30 * n * n, 8), "E_2 formula");
    }
    if (o.pass) {
        o.detail << "85 coefficients exact";
    }
    return o;
}

Outcome criterion6()
{
    Outcome o;
    // slope(lambda) = (Im E / eps_WKB - 1) / lambda^2 -> k_1(0) as lambda -> 0;
    // quadratic extrapolation in lambda^2 through the three points.
    const double ls[3] = {0.04, 0.05, 0.06};
    double x[3], s[3];
    for (int i = 0; i < 3; ++i) {
        const double im = find_resonance(ls[i], 0).energy.imag();
        x[i] = ls[i] * ls[i];
        s[i] = (im / eps_wkb(ls[i], 0) - 1.0) / x[i];
    }
    double k1 = 0.0;
    for (int i = 0; i < 3; ++i) {
        double w = 1.0;
        for (int k = 0; k < 3; ++k) {
            if (k != i) {
                w *= (0.0 - x[k]) / (x[i] - x[k]);
            }
        }
        k1 += w * s[i];
    }
    const double exact = -169.0 / 16.0;
    const double rel = std::abs(k1 - exact) / std::abs(exact);
    o.require(rel <= 0.05, "extrapolated slope " + num(k1) + " vs " + num(exact));

    const double ccr = find_resonance(0.05, 0).energy.imag();
    const auto w = im_energy_wkb(0.05, 0, 3);
    const double e1 = std::abs(w.partial_sums[1] - ccr);
    const double e2 = std::abs(w.partial_sums[2] - ccr);
    const double e3 = std::abs(w.partial_sums[3] - ccr);
    o.require(e2 < e1 && e3 < e2, "errors m=1,2,3: " + num(e1) + ", " + num(e2) + ", " + num(e3));
    if (o.pass) {
        o.detail << "slope " << num(k1) << " (" << num(100 * rel) << "% off); errors m=1,2,3 at 0.05: " << num(e1 / ccr)
                 << ", " << num(e2 / ccr) << ", " << num(e3 / ccr) << " relative";
    }
    return o;
}

Outcome criterion7()
{
    Outcome o;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> lam(0.0, 0.5);
    double worst = 0.0;
    for (int order : {1, 3, 5, 7}) {
        const auto f = make(0, order);
        const auto rs = rs_coefficients(0, order);
        for (int k = 0; k < 20; ++k) {
            const double l = lam(rng);
            const C a = f(l, TrialPoint{});
            const C b = rs_partial_sum(rs, l);
            const double err = std::abs(a - b) / std::abs(b);
            worst = std::max(worst, err);
            o.require(err <= 1e-10, "N=" + std::to_string(order) + " lambda=" + num(l) + " err " + num(err));
        }
    }

    // d/dOmega^2 and d/dj of the lambda-series with Omega^2 = 1 - lambda a,
    // j = lambda b held fixed in (a, b).
    using S = TruncatedSeries<Jet2>;
    const C a(0.8, -0.3), b(-0.45, 0.6);
    double worst_d = 0.0;
    for (int order : {1, 3, 5, 7}) {
        const auto f = make(0, order);
        const std::size_t k_max = order + 1;
        const S l = S::variable(k_max, Jet2::constant(1.0), Jet2::constant(0.0));
        S w0 = S::constant(k_max, Jet2::constant(1.0), Jet2::constant(0.0));
        w0[1] = Jet2::variable(a, Direction::OmegaSquared) * -1.0;
        S j0(k_max, Jet2::constant(0.0));
        j0[1] = Jet2::variable(b, Direction::Current);
        const S e = f.reexpanded<S>(l, w0, j0);
        const auto rs = rs_coefficients(0, k_max);
        double scale = 1.0;
        for (int k = 0; k <= order; ++k) {
            scale = std::max(scale, std::abs(to_double(rs.coeffs[k])));
        }
        for (int k = 0; k <= order; ++k) {
            const double d = (std::abs(e[k].partial(Direction::OmegaSquared)) +
                              std::abs(e[k].partial(Direction::Current))) /
                             scale;
            worst_d = std::max(worst_d, d);
            o.require(d <= 1e-10, "N=" + std::to_string(order) + " derivative coefficient k=" + std::to_string(k) +
                                      " = " + num(d));
        }
    }
    if (o.pass) {
        o.detail << "worst (1,0) err " << num(worst) << ", worst derivative coefficient " << num(worst_d);
    }
    return o;
}

Outcome criterion8()
{
    Outcome o;
    const auto f = make(0, 1);
    for (int k = 1; k <= 17; ++k) {
        const double l = 0.01 * k;
        const C e = solve_vpe(f, l).energy;
        o.require(e.imag() == 0.0, "lambda=" + num(l) + " Im E = " + num(e.imag()));
    }
    for (double l : {0.1725, 0.175, 0.18, 0.25}) {
        const C e = solve_vpe(f, l).energy;
        o.require(e.imag() > 0.0, "lambda=" + num(l) + " still real");
    }
    const double star = first_order_coalescence(0);
    o.require(std::abs(star - 0.172) < 1e-3, "onset " + num(star));
    if (o.pass) {
        o.detail << "real on 0.01..0.17, complex from " << num(star);
    }
    return o;
}

Outcome criterion9()
{
    Outcome o;
    const double l = 0.7;
    for (double w : {0.6, 1.8}) {
        const double ls = l / std::pow(w, 2.5);
        const std::string at = " at omega=" + num(w);

        const auto rs = rs_coefficients(1, 8);
        const C r1 = rs_partial_sum(rs, l, w), r2 = w * rs_partial_sum(rs, ls);
        o.require(std::abs(r1 - r2) <= 1e-8 * std::abs(r1), "RS" + at);

        SweepOptions so;
        so.newton.omega = w;
        const auto f = make(1, 7);
        const C v1 = solve_vpe(f, l, so).energy, v2 = w * solve_vpe(f, ls).energy;
        o.require(std::abs(v1 - v2) <= 1e-8 * std::abs(v1), "VPE" + at + ": " + num(std::abs(v1 - v2)));

        const double k1 = im_energy_wkb(0.2, 1, 3, w).value(), k2 = w * im_energy_wkb(0.2 / std::pow(w, 2.5), 1, 3).value();
        o.require(std::abs(k1 - k2) <= 1e-8 * std::abs(k1), "WKB" + at);

        CcrConfig cw;
        cw.omega = w;
        const C c1 = find_resonance(l, 1, cw).energy, c2 = w * find_resonance(ls, 1).energy;
        o.require(std::abs(c1 - c2) <= 1e-6 * std::abs(c1), "CCR" + at + ": " + num(std::abs(c1 - c2) / std::abs(c1)));
    }
    if (o.pass) {
        o.detail << "RS, VPE, WKB at 1e-8 and CCR at 1e-6 for omega = 0.6, 1.8";
    }
    return o;
}

} // namespace

int main()
{
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const auto t1 = report::table1({}, {}).table;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 complex-rotation reference cells", [&] { return criterion1(t1); }},
        {"2 seventh-order VPE reference cells", [&] { return criterion2(t1); }},
        {"3 strong-coupling kappa, n = 0..4, N = 11", criterion3},
        {"4 first-order Im E within 12% of CCR", criterion4},
        {"5 RS coefficients vs oracle", criterion5},
        {"6 WKB slope and k_m convergence", criterion6},
        {"7 reexpansion identities", criterion7},
        {"8 first-order branch onset", criterion8},
        {"9 frequency scaling", criterion9},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
