#pragma once

// Complex coordinate rotation: x -> x e^{i theta} turns the resonances of
// -1/2 d^2 + omega^2 x^2 / 2 - lambda x^3 into isolated, theta-independent
// eigenvalues of a complex symmetric matrix in a harmonic-oscillator basis.
//
// Sign convention: the rotated spectrum has the resonances at Im E < 0 for
// theta > 0. Everything this module returns is conjugated to Im E >= 0.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cubicvpe/errors.hpp"

namespace cubicvpe {

struct CcrConfig {
    double theta = 0.35;
    int basis_size = 64;  // starting M
    int max_basis = 512;  // cap for M doubling
    std::optional<double> basis_scale; // oscillator frequency of the basis; default below
    double omega = 1.0;   // harmonic frequency of the Hamiltonian
    std::vector<double> stability_window{0.3, 0.35, 0.4};
    double tolerance = 1e-8;        // on theta_spread and basis_spread
    double coarse_tolerance = 1e-4; // replaces tolerance from coarse_lambda on
    double coarse_lambda = 50.0;
    // Widths below imag_threshold |E| are invisible to a double-precision
    // diagonalisation; such levels are refined in extended precision until Im E
    // is stable to imag_tolerance (relative) over the theta window and M doubling.
    double imag_threshold = 1e-7;
    double imag_tolerance = 1e-6;
    int max_extended_basis = 4096;

    /// Throws ContractViolation unless 0 < theta < pi/5, M >= 16 and the
    /// scales are positive.
    void validate() const;

    /// basis_scale if set, else omega max(1, (lambda / omega^{5/2})^{2/5}).
    double scale_for(double lambda) const;
    double tolerance_for(double lambda) const;
};

/// Complex symmetric matrix with bandwidth 3, stored by diagonals:
/// band(d, i) = entry(i, i + d), d = 0..3.
class ComplexSymmetricMatrix {
public:
    explicit ComplexSymmetricMatrix(int dim);

    int dim() const noexcept { return dim_; }
    static constexpr int bandwidth = 3;

    std::complex<double> entry(int i, int k) const;
    std::complex<double>& band(int d, int i) { return band_[d][i]; }
    const std::complex<double>& band(int d, int i) const { return band_[d][i]; }

    Eigen::MatrixXcd to_dense() const;

private:
    int dim_;
    std::vector<std::complex<double>> band_[bandwidth + 1];
};

/// e^{-2i theta} p^2/2 + omega^2 e^{2i theta} x^2/2 - lambda e^{3i theta} x^3 in
/// the first M states of the oscillator with frequency s = scale_for(lambda),
/// using the exact ladder-operator matrix elements.
ComplexSymmetricMatrix build_rotated_hamiltonian(double lambda, const CcrConfig& config);

/// All eigenvalues, unordered. Throws ConvergenceError if the QR iteration
/// fails.
std::vector<std::complex<double>> eig_complex(const ComplexSymmetricMatrix& m);
std::vector<std::complex<double>> eig_complex(const Eigen::MatrixXcd& m);

struct ResonanceResult {
    int n = 0;
    double lambda = 0.0;
    std::complex<double> energy;
    double theta_spread = 0.0;
    double basis_spread = 0.0;
    int basis_size = 0;
    bool converged = false;
    bool extended_precision = false;
    /// Relative spread of Im E over the window and M doubling; only set by the
    /// extended-precision stage.
    double imag_spread = 0.0;
};

class ResonanceIdentificationError : public ConvergenceError {
public:
    ResonanceIdentificationError(const std::string& what, std::vector<std::complex<double>> candidates)
        : ConvergenceError(what)
        , candidates_(std::move(candidates))
    {
    }
    const std::vector<std::complex<double>>& candidates() const noexcept { return candidates_; }

private:
    std::vector<std::complex<double>> candidates_;
};

/// The eigenvalue connected to n + 1/2 (times omega): tracked along a
/// geometric lambda-homotopy by nearest match with at most 10% relative motion
/// per step, then refined with M doubling and checked over the theta window.
ResonanceResult find_resonance(double lambda, int n, const CcrConfig& config = {});

/// Eigenvalue of the rotated matrix at (M, theta) nearest to `shift` (given
/// in the rotated convention, Im < 0), polished by Rayleigh-quotient inverse
/// iteration on the banded matrix in 100-digit arithmetic. Returned conjugated.
/// Throws ConvergenceError if the iteration stalls.
std::complex<double> refine_eigenvalue(double lambda, int basis_size, double theta, std::complex<double> shift,
                                            const CcrConfig& config = {});

/// One row per (lambda, n); rows that hit the basis cap unconverged are
/// returned with converged = false rather than thrown.
std::vector<ResonanceResult> resonance_sweep(const std::vector<double>& lambda_grid, const std::vector<int>& levels,
                                             const CcrConfig& config = {});

} // namespace cubicvpe
