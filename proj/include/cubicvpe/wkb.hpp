#pragma once

// Semiclassical tunneling rate of the cubic well and its systematic and
// variational corrections.

#include <array>
#include <complex>
#include <filesystem>
#include <optional>
#include <vector>

#include "cubicvpe/rational.hpp"
#include "cubicvpe/vpe.hpp"

namespace cubicvpe {

/// k_1(n) ... k_7(n): exact polynomials in the quantum number, k_m of degree 2m.
class WkbCorrectionTable {
public:
    static constexpr int kMaxOrder = 7;

    /// Reads the line-oriented table (`m p numerator denominator`, one
    /// monomial per line) and checks every k_m against its embedded SHA-256
    /// digest. Throws std::runtime_error on a missing file or digest mismatch.
    static WkbCorrectionTable load(const std::filesystem::path& path);

    /// Table shipped with the library. Looked up in $CUBICVPE_DATA_DIR, then
    /// in the install/build data directory; loaded and verified once.
    static const WkbCorrectionTable& standard();

    /// Coefficient of n^p in k_m.
    const Rational& coefficient(int m, int p) const;

    /// k_m(n), exact.
    Rational evaluate(int m, int n) const;

private:
    std::array<std::vector<Rational>, kMaxOrder> poly_;
};

/// Location used by WkbCorrectionTable::standard().
std::filesystem::path default_wkb_table_path();

/// (8^n omega / (sqrt(pi) n!)) (omega^5/lambda^2)^{n+1/2} exp(-2 omega^5 / (15 lambda^2)),
/// assembled in logarithms with extended precision. Returns exactly 0 and
/// sets *underflow when the result is below the smallest double.
double eps_wkb(double lambda, int n, double omega = 1.0, bool* underflow = nullptr);

/// Exact k_m(n) from the standard table; m outside 1..7 is a DomainError.
Rational k_coefficient(int m, int n);

struct WkbResult {
    int n = 0;
    double lambda = 0.0;
    int order = 0;
    double eps0 = 0.0;
    bool underflow = false;
    /// partial_sums[i] = eps0 (1 + sum_{l <= i} k_l (lambda^2/omega^5)^l)
    std::vector<double> partial_sums;
    std::optional<std::complex<double>> variationally_improved;

    double value() const { return partial_sums.back(); }
};

WkbResult im_energy_wkb(double lambda, int n, int m, double omega = 1.0);

/// Variational improvement: log eps_WKB is written for H_0 (harmonic scale
/// dressed to Omega (1 - 12 j lambda / Omega^4)^{1/4}) and reexpanded exactly
/// like the energy, Omega^2 -> Omega^2 + u (1 - Omega^2), j -> j (1 - u),
/// lambda -> lambda u, keeping u^{-2} .. u^{order}; the k_m correction factor
/// is reexpanded the same way through u^{max(order, 2m)}. Evaluated at the
/// trial point; equals im_energy_wkb(lambda, n, m).value() at (1, 0).
/// Throws SingularExpansion when Omega = 0 or 1 - 12 j lambda / Omega^4 = 0.
std::complex<double> variational_wkb(double lambda, int n, int m, const TrialPoint& trial, int order = 3);

} // namespace cubicvpe
