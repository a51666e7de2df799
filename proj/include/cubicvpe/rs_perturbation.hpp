#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "cubicvpe/rational.hpp"

namespace cubicvpe {

/// Exact perturbation coefficients E_j of the n-th level of
/// H = -1/2 d^2/dx^2 + 1/2 x^2 - lambda x^3, i.e. E(lambda) = sum_j E_j lambda^j
/// in units omega = 1. Odd orders vanish identically.
struct RsCoefficients {
    int n = 0;
    int max_order = 0;
    std::vector<Rational> coeffs; // index j = 0..max_order

    /// Even-order coefficients as doubles, index nu -> E_{2 nu}.
    std::vector<double> even_coefficients_as_double() const;

    friend bool operator==(const RsCoefficients&, const RsCoefficients&) = default;
};

/// Polynomial-ansatz recursion on psi = exp(-x^2/2) sum_m lambda^m P_m(x):
/// solves for the monomial coefficients of each P_m from the top degree down,
/// reading E_m off the x^n equation.
RsCoefficients rs_coefficients(int n, int max_order);

/// Independent route: textbook Rayleigh-Schroedinger recursion over
/// harmonic-oscillator states, with the exact integer matrix of (a + a^dagger)^3
/// in the unnormalized basis (a^dagger)^m |0>. Exact rationals throughout.
RsCoefficients oracle_sum_over_states(int n, int max_order);

/// omega * sum_j E_j (lambda / omega^{5/2})^j.
std::complex<double> rs_partial_sum(const RsCoefficients& coeffs, double lambda, double omega = 1.0);

/// Line-oriented text cache of coefficient tables. Each data line is
/// `n j numerator denominator` (decimal integers, reduced, denominator > 0);
/// blank lines and lines starting with '#' are ignored.
void write_coefficient_cache(const std::filesystem::path& path, const std::vector<RsCoefficients>& tables);
std::vector<RsCoefficients> read_coefficient_cache(const std::filesystem::path& path);

/// Memoizing provider of coefficient tables, optionally backed by a cache file.
/// A table of order J for level n is generated once and reused for every
/// request up to that order.
class CoefficientStore {
public:
    CoefficientStore() = default;
    explicit CoefficientStore(std::filesystem::path cache_file);

    RsCoefficients get(int n, int max_order);

    /// Writes every table held in memory to the cache file, if one is set.
    void flush() const;

private:
    std::optional<std::filesystem::path> cache_file_;
    std::map<int, RsCoefficients> tables_;
    mutable std::mutex mutex_;
};

} // namespace cubicvpe
