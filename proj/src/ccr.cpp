#include "cubicvpe/ccr.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cubicvpe {

namespace {

using cplx = std::complex<double>;

// Unvalidated: internal callers resize the basis (down to M/2 for the
// coarse comparison) and vary theta on an already checked configuration.
ComplexSymmetricMatrix assemble(double lambda, int dim, double theta, const CcrConfig& config)
{
    const double s = config.scale_for(lambda);
    const double w2 = config.omega * config.omega;
    const cplx kinetic = std::polar(1.0, -2.0 * theta);
    const cplx harmonic = w2 * std::polar(1.0, 2.0 * theta);
    const cplx cubic = -lambda * std::polar(1.0, 3.0 * theta);

    // x = (a + a^dagger)/sqrt(2s), p^2 = -(s/2)(a^dagger - a)^2:
    //   <i|p^2/2|i> = s(2i+1)/4,     <i|p^2/2|i+2> = -s sqrt((i+1)(i+2))/4
    //   <i|x^2/2|i> = (2i+1)/(4s),   <i|x^2/2|i+2> = sqrt((i+1)(i+2))/(4s)
    //   <i|x^3|i+1> = 3 (i+1)^{3/2} / (2s)^{3/2}
    //   <i|x^3|i+3> = sqrt((i+1)(i+2)(i+3)) / (2s)^{3/2}
    const double c3 = std::pow(2.0 * s, -1.5);
    ComplexSymmetricMatrix h(dim);
    for (int i = 0; i < dim; ++i) {
        const double a = i + 1.0;
        h.band(0, i) = kinetic * (s * (2 * i + 1) / 4.0) + harmonic * ((2 * i + 1) / (4.0 * s));
        if (i + 1 < dim) {
            h.band(1, i) = cubic * (3.0 * a * std::sqrt(a) * c3);
        }
        if (i + 2 < dim) {
            const double r = std::sqrt(a * (a + 1.0));
            h.band(2, i) = kinetic * (-s * r / 4.0) + harmonic * (r / (4.0 * s));
        }
        if (i + 3 < dim) {
            h.band(3, i) = cubic * (std::sqrt(a * (a + 1.0) * (a + 2.0)) * c3);
        }
    }
    return h;
}

std::vector<cplx> rotated_spectrum(double lambda, int basis_size, double theta, const CcrConfig& config)
{
    auto ev = eig_complex(assemble(lambda, basis_size, theta, config));
    for (auto& e : ev) {
        e = std::conj(e);
    }
    return ev;
}

struct Match {
    cplx value;
    double distance;
    double runner_up; // distance of the second-nearest eigenvalue
};

Match nearest(const std::vector<cplx>& ev, cplx target)
{
    Match m{ev.front(), std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (const cplx& e : ev) {
        const double d = std::abs(e - target);
        if (d < m.distance) {
            m.runner_up = m.distance;
            m.distance = d;
            m.value = e;
        } else if (d < m.runner_up) {
            m.runner_up = d;
        }
    }
    return m;
}

std::vector<cplx> closest(std::vector<cplx> ev, cplx target, std::size_t count)
{
    std::sort(ev.begin(), ev.end(), [&](cplx a, cplx b) { return std::abs(a - target) < std::abs(b - target); });
    ev.resize(std::min(count, ev.size()));
    return ev;
}

// Extended-precision band solver used when the width is far below the
// double-precision resolution of |E|.
namespace xp {

namespace bmp = boost::multiprecision;
using Real = bmp::cpp_bin_float_100;
using Complex = bmp::cpp_complex_100;

// Row i holds entries (i, i-3) .. (i, i+3) at offsets 0..6.
using Band = std::vector<std::array<Complex, 7>>;

Complex phase(const Real& angle)
{
    return {bmp::cos(angle), bmp::sin(angle)};
}

Band build(double lambda, int dim, double theta, const CcrConfig& config)
{
    const Real s = config.scale_for(lambda);
    const Real th = theta;
    const Real w = config.omega;
    const Complex kinetic = phase(-2 * th);
    const Complex harmonic = w * w * phase(2 * th);
    const Complex cubic = -Real(lambda) * phase(3 * th);
    const Real c3 = bmp::pow(2 * s, Real(-1.5));
    Band a(dim);
    auto set = [&](int i, int k, const Complex& v) {
        a[i][k - i + 3] = v;
        a[k][i - k + 3] = v;
    };
    for (int i = 0; i < dim; ++i) {
        const Real n = i + 1;
        set(i, i, kinetic * (s * (2 * i + 1) / 4) + harmonic * ((2 * i + 1) / (4 * s)));
        if (i + 1 < dim) {
            set(i, i + 1, cubic * (3 * n * bmp::sqrt(n) * c3));
        }
        if (i + 2 < dim) {
            const Real r = bmp::sqrt(n * (n + 1));
            set(i, i + 2, kinetic * (-s * r / 4) + harmonic * (r / (4 * s)));
        }
        if (i + 3 < dim) {
            set(i, i + 3, cubic * (bmp::sqrt(n * (n + 1) * (n + 2)) * c3));
        }
    }
    return a;
}

// (A - shift) x = b by band elimination without pivoting.
std::vector<Complex> solve(Band a, const Complex& shift, std::vector<Complex> x)
{
    const int dim = static_cast<int>(a.size());
    for (int i = 0; i < dim; ++i) {
        a[i][3] -= shift;
    }
    for (int i = 0; i < dim; ++i) {
        const Complex& pivot = a[i][3];
        if (pivot == Complex(0)) {
            throw ConvergenceError("extended-precision refinement hit a zero pivot");
        }
        for (int r = i + 1; r < std::min(dim, i + 4); ++r) {
            const Complex f = a[r][i - r + 3] / pivot;
            for (int c = i + 1; c < std::min(dim, i + 4); ++c) {
                a[r][c - r + 3] -= f * a[i][c - i + 3];
            }
            x[r] -= f * x[i];
        }
    }
    for (int i = dim - 1; i >= 0; --i) {
        for (int c = i + 1; c < std::min(dim, i + 4); ++c) {
            x[i] -= a[i][c - i + 3] * x[c];
        }
        x[i] /= a[i][3];
    }
    return x;
}

// Bilinear normalisation v^T v = 1 (the matrix is complex symmetric).
void normalise(std::vector<Complex>& v)
{
    Complex dot = 0;
    for (const auto& z : v) {
        dot += z * z;
    }
    const Complex norm = bmp::sqrt(dot);
    for (auto& z : v) {
        z /= norm;
    }
}

Complex rayleigh(const Band& a, const std::vector<Complex>& v)
{
    const int dim = static_cast<int>(a.size());
    Complex acc = 0;
    for (int i = 0; i < dim; ++i) {
        Complex row = 0;
        for (int k = std::max(0, i - 3); k < std::min(dim, i + 4); ++k) {
            row += a[i][k - i + 3] * v[k];
        }
        acc += v[i] * row;
    }
    return acc;
}

} // namespace xp

} // namespace

void CcrConfig::validate() const
{
    const double limit = std::numbers::pi / 5.0;
    auto angle_ok = [&](double t) { return t > 0.0 && t < limit; };
    if (!angle_ok(theta)) {
        throw ContractViolation("CCR: rotation angle must lie in (0, pi/5)");
    }
    for (double t : stability_window) {
        if (!angle_ok(t)) {
            throw ContractViolation("CCR: stability window angles must lie in (0, pi/5)");
        }
    }
    if (basis_size < 16 || max_basis < basis_size) {
        throw ContractViolation("CCR: need 16 <= basis_size <= max_basis");
    }
    if (max_extended_basis < basis_size) {
        throw ContractViolation("CCR: max_extended_basis must be at least basis_size");
    }
    if (basis_scale && !(*basis_scale > 0.0)) {
        throw ContractViolation("CCR: basis scale must be positive");
    }
    if (!(omega > 0.0) || !(tolerance > 0.0) || !(coarse_tolerance > 0.0) || !(imag_threshold >= 0.0) ||
        !(imag_tolerance > 0.0)) {
        throw ContractViolation("CCR: omega and tolerances must be positive");
    }
}

double CcrConfig::scale_for(double lambda) const
{
    if (basis_scale) {
        return *basis_scale;
    }
    const double g = std::abs(lambda) / std::pow(omega, 2.5);
    return omega * std::max(1.0, std::pow(g, 0.4));
}

double CcrConfig::tolerance_for(double lambda) const
{
    return std::abs(lambda) >= coarse_lambda ? coarse_tolerance : tolerance;
}

ComplexSymmetricMatrix::ComplexSymmetricMatrix(int dim)
    : dim_(dim)
{
    if (dim < 1) {
        throw ContractViolation("matrix dimension must be positive");
    }
    for (int d = 0; d <= bandwidth; ++d) {
        band_[d].assign(dim, cplx(0.0));
    }
}

cplx ComplexSymmetricMatrix::entry(int i, int k) const
{
    const int d = std::abs(i - k);
    if (i < 0 || k < 0 || i >= dim_ || k >= dim_) {
        throw ContractViolation("matrix index out of range");
    }
    return d > bandwidth ? cplx(0.0) : band_[d][std::min(i, k)];
}

Eigen::MatrixXcd ComplexSymmetricMatrix::to_dense() const
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int d = 0; d <= bandwidth; ++d) {
        for (int i = 0; i + d < dim_; ++i) {
            m(i, i + d) = band_[d][i];
            m(i + d, i) = band_[d][i];
        }
    }
    return m;
}

ComplexSymmetricMatrix build_rotated_hamiltonian(double lambda, const CcrConfig& config)
{
    config.validate();
    if (!std::isfinite(lambda)) {
        throw ContractViolation("CCR: coupling must be finite");
    }
    return assemble(lambda, config.basis_size, config.theta, config);
}

std::vector<cplx> eig_complex(const Eigen::MatrixXcd& m)
{
    if (!m.allFinite()) {
        throw ContractViolation("eig_complex: non-finite matrix entries");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "complex eigensolver did not converge within " << solver.getMaxIterations() * m.rows()
           << " QR iterations";
        throw ConvergenceError(os.str());
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<cplx> eig_complex(const ComplexSymmetricMatrix& m)
{
    return eig_complex(m.to_dense());
}

std::complex<double> refine_eigenvalue(double lambda, int basis_size, double theta, std::complex<double> shift,
                                       const CcrConfig& config)
{
    config.validate();
    if (basis_size < 4) {
        throw ContractViolation("refine_eigenvalue: basis too small");
    }
    using xp::Complex;
    const xp::Band a = xp::build(lambda, basis_size, theta, config);
    const Complex start(shift.real(), shift.imag());
    std::vector<Complex> v(basis_size, Complex(1));
    // A few fixed-shift steps lock onto the eigenvector; Rayleigh-quotient
    // steps then converge cubically.
    for (int k = 0; k < 3; ++k) {
        v = xp::solve(a, start, std::move(v));
        xp::normalise(v);
    }
    Complex e = xp::rayleigh(a, v);
    const xp::Real target = xp::Real(1e-90);
    for (int it = 0; it < 40; ++it) {
        v = xp::solve(a, e, std::move(v));
        xp::normalise(v);
        const Complex next = xp::rayleigh(a, v);
        const bool done = abs(next - e) <= target * abs(next);
        e = next;
        if (done) {
            const std::complex<double> value(static_cast<double>(e.real()), static_cast<double>(e.imag()));
            if (std::abs(value - shift) > 1e-6 * std::max(1.0, std::abs(shift))) {
                throw ConvergenceError("extended-precision refinement drifted to another eigenvalue");
            }
            return std::conj(value);
        }
    }
    throw ConvergenceError("extended-precision refinement did not converge in 40 iterations");
}

namespace {

// Both Re and Im stable: Re absolutely (tol), Im relative to itself.
void extended_refinement(ResonanceResult& out, double lambda, const CcrConfig& config)
{
    const double tol = config.tolerance_for(lambda);
    auto at = [&](int m, double theta, cplx near) { return refine_eigenvalue(lambda, m, theta, std::conj(near), config); };
    auto rel_im = [](cplx a, cplx b) {
        return std::abs(a.imag() - b.imag()) / std::max(std::abs(a.imag()), std::abs(b.imag()));
    };
    out.extended_precision = true;
    int m = out.basis_size;
    cplx coarse = at(m, config.theta, out.energy);
    for (;;) {
        const cplx fine = at(2 * m, config.theta, coarse);
        out.energy = fine;
        out.basis_size = 2 * m;
        out.basis_spread = std::abs(fine - coarse);
        double imag_spread = rel_im(fine, coarse);
        out.theta_spread = 0.0;
        std::vector<cplx> window{fine};
        for (double t : config.stability_window) {
            if (t != config.theta) {
                window.push_back(at(2 * m, t, fine));
            }
        }
        for (std::size_t a = 0; a < window.size(); ++a) {
            for (std::size_t b = a + 1; b < window.size(); ++b) {
                out.theta_spread = std::max(out.theta_spread, std::abs(window[a] - window[b]));
                imag_spread = std::max(imag_spread, rel_im(window[a], window[b]));
            }
        }
        out.imag_spread = imag_spread;
        out.converged = out.theta_spread <= tol && out.basis_spread <= tol && imag_spread <= config.imag_tolerance;
        if (out.converged || 4 * m > config.max_extended_basis) {
            return;
        }
        coarse = fine;
        m *= 2;
    }
}

} // namespace

ResonanceResult find_resonance(double lambda, int n, const CcrConfig& config)
{
    config.validate();
    if (n < 0) {
        throw ContractViolation("quantum number must be non-negative");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ContractViolation("find_resonance: lambda must be finite and non-negative");
    }
    const double omega = config.omega;
    const cplx unperturbed = (n + 0.5) * omega;
    ResonanceResult out;
    out.n = n;
    out.lambda = lambda;
    out.basis_size = config.basis_size;
    if (lambda == 0.0) {
        out.energy = unperturbed;
        out.converged = true;
        return out;
    }
    if (n + 8 > config.basis_size) {
        throw ContractViolation("find_resonance: basis too small for the requested level");
    }

    // Homotopy in the reduced coupling g = lambda / omega^{5/2} from a start
    // where the level is still within a few per cent of n + 1/2.
    const double unit = std::pow(omega, 2.5);
    const double target = lambda / unit;
    const int m0 = config.basis_size;
    double g = std::min(target, 0.01);
    cplx estimate = nearest(rotated_spectrum(g * unit, m0, config.theta, config), unperturbed).value;
    double g_prev = 0.0;
    cplx e_prev = unperturbed;
    double factor = 1.5;
    while (g < target) {
        const double next = std::min(target, g * factor);
        const auto ev = rotated_spectrum(next * unit, m0, config.theta, config);
        const cplx predicted = estimate + (estimate - e_prev) * ((next - g) / (g - g_prev));
        const Match m = nearest(ev, predicted);
        const bool small_move = std::abs(m.value - estimate) <= 0.1 * std::abs(estimate);
        const bool unambiguous = m.distance < 0.5 * m.runner_up;
        if (small_move && unambiguous) {
            g_prev = g;
            e_prev = estimate;
            g = next;
            estimate = m.value;
            factor = std::min(2.0, factor * 1.25);
            continue;
        }
        factor = std::sqrt(factor);
        if (factor < 1.0 + 1e-4) {
            std::ostringstream os;
            os << "lost track of level " << n << " near lambda = " << g * unit;
            throw ResonanceIdentificationError(os.str(), closest(ev, predicted, 5));
        }
    }

    // Refinement: M doubling until the theta window and the basis agree.
    const double tol = config.tolerance_for(lambda);
    auto level_at = [&](int m, double theta, cplx guess) {
        return nearest(rotated_spectrum(lambda, m, theta, config), guess).value;
    };
    int m = config.basis_size;
    cplx coarse = level_at(std::max(8, m / 2), config.theta, estimate);
    std::vector<cplx> window_values;
    for (;;) {
        const auto main_spectrum = rotated_spectrum(lambda, m, config.theta, config);
        const Match main = nearest(main_spectrum, estimate);
        window_values.assign(1, main.value);
        for (double t : config.stability_window) {
            if (t != config.theta) {
                window_values.push_back(level_at(m, t, main.value));
            }
        }
        out.energy = main.value;
        out.basis_size = m;
        out.basis_spread = std::abs(main.value - coarse);
        out.theta_spread = 0.0;
        for (std::size_t a = 0; a < window_values.size(); ++a) {
            for (std::size_t b = a + 1; b < window_values.size(); ++b) {
                out.theta_spread = std::max(out.theta_spread, std::abs(window_values[a] - window_values[b]));
            }
        }
        out.converged = out.theta_spread <= tol && out.basis_spread <= tol;
        if (out.converged || 2 * m > config.max_basis) {
            // A theta-dependent "level" at the cap is a rotated continuum
            // state, not a resonance.
            if (!out.converged && out.theta_spread > 1e-3 * std::abs(out.energy)) {
                std::ostringstream os;
                os << "no theta-stable eigenvalue for level " << n << " at lambda = " << lambda
                   << " (theta spread " << out.theta_spread << ")";
                throw ResonanceIdentificationError(os.str(), closest(main_spectrum, estimate, 5));
            }
            if (std::abs(out.energy.imag()) < config.imag_threshold * std::abs(out.energy)) {
                extended_refinement(out, lambda, config);
            }
            return out;
        }
        coarse = main.value;
        estimate = main.value;
        m *= 2;
    }
}

std::vector<ResonanceResult> resonance_sweep(const std::vector<double>& lambda_grid, const std::vector<int>& levels,
                                             const CcrConfig& config)
{
    if (lambda_grid.empty() || levels.empty()) {
        throw ContractViolation("resonance_sweep: empty grid");
    }
    std::vector<ResonanceResult> rows;
    for (int n : levels) {
        for (double lambda : lambda_grid) {
            rows.push_back(find_resonance(lambda, n, config));
        }
    }
    return rows;
}

} // namespace cubicvpe
