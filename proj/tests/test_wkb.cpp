#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "cubicvpe/ccr.hpp"
#include "cubicvpe/wkb.hpp"

using namespace cubicvpe;
namespace fs = std::filesystem;

namespace {

double eps_direct(double lambda, int n, double omega)
{
    const double g = std::pow(omega, 5) / (lambda * lambda);
    return std::pow(8.0, n) * omega / (std::sqrt(std::numbers::pi) * std::tgamma(n + 1.0)) * std::pow(g, n + 0.5) *
           std::exp(-2.0 * g / 15.0);
}

} // namespace

TEST_CASE("leading rate matches the closed form where it is representable")
{
    for (int n : {0, 1, 3}) {
        for (double l : {0.1, 0.2, 0.5, 1.0}) {
            for (double w : {1.0, 1.3}) {
                bool underflow = true;
                const double e = eps_wkb(l, n, w, &underflow);
                CHECK_FALSE(underflow);
                CHECK(e == doctest::Approx(eps_direct(l, n, w)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("tiny coupling underflows to an exact zero with a flag")
{
    bool underflow = false;
    CHECK(eps_wkb(0.004, 0, 1.0, &underflow) == 0.0);
    CHECK(underflow);
    // Deep in the tail but still normal: eps(0.05) ~ 7.8e-23.
    CHECK(eps_wkb(0.05, 0) == doctest::Approx(7.76394931e-23).epsilon(1e-8));
}

TEST_CASE("correction coefficients are exact and digest-checked")
{
    CHECK(k_coefficient(1, 0) == Rational(-169, 16));
    CHECK(k_coefficient(1, 1) == Rational(-853, 16));
    const auto& table = WkbCorrectionTable::standard();
    for (int m = 1; m <= WkbCorrectionTable::kMaxOrder; ++m) {
        Rational sum = 0;
        for (int p = 0; p <= 2 * m; ++p) {
            sum += table.coefficient(m, p);
        }
        CHECK(sum == table.evaluate(m, 1));
    }
    CHECK_THROWS_AS(k_coefficient(0, 0), DomainError);
    CHECK_THROWS_AS(k_coefficient(8, 0), DomainError);

    // A one-digit edit to the table must be caught.
    const fs::path dir = fs::temp_directory_path() / "cubicvpe_wkb_test";
    fs::create_directories(dir);
    std::ifstream in(default_wkb_table_path());
    REQUIRE(in);
    std::stringstream text;
    text << in.rdbuf();
    std::string s = text.str();
    const auto pos = s.find("-169");
    REQUIRE(pos != std::string::npos);
    s.replace(pos, 4, "-168");
    std::ofstream(dir / "tampered.txt") << s;
    CHECK_THROWS(WkbCorrectionTable::load(dir / "tampered.txt"));
    CHECK_THROWS(WkbCorrectionTable::load(dir / "missing.txt"));
    fs::remove_all(dir);
}

TEST_CASE("partial sums add k_l (lambda^2 / omega^5)^l")
{
    const double l = 0.1, w = 1.2;
    const auto r = im_energy_wkb(l, 1, 3, w);
    REQUIRE(r.partial_sums.size() == 4);
    const double g = l * l / std::pow(w, 5);
    double factor = 1.0;
    CHECK(r.partial_sums[0] == doctest::Approx(eps_wkb(l, 1, w)).epsilon(1e-14));
    for (int m = 1; m <= 3; ++m) {
        factor += to_double(k_coefficient(m, 1)) * std::pow(g, m);
        CHECK(r.partial_sums[m] == doctest::Approx(eps_wkb(l, 1, w) * factor).epsilon(1e-13));
    }
    CHECK(r.value() == r.partial_sums.back());
    CHECK_THROWS_AS(im_energy_wkb(0.0, 0, 1), DomainError);
    CHECK_THROWS_AS(im_energy_wkb(0.1, 0, 8), DomainError);
    CHECK_THROWS_AS(im_energy_wkb(0.1, -1, 1), ContractViolation);
}

TEST_CASE("variational form collapses to the plain rate at the unperturbed trial point")
{
    for (int n : {0, 2}) {
        for (int m : {0, 1, 3}) {
            for (int order : {1, 3, 5}) {
                const auto v = variational_wkb(0.1, n, m, TrialPoint{}, order);
                const double plain = im_energy_wkb(0.1, n, m).value();
                CHECK(std::abs(v - plain) <= 1e-12 * std::abs(plain));
            }
        }
    }
    CHECK_THROWS_AS(variational_wkb(0.1, 0, 1, TrialPoint{{0.0, 0.0}, {0.0, 0.0}}), SingularExpansion);
}

TEST_CASE("corrected rate approaches the complex-rotation width at weak coupling")
{
    const auto ccr = find_resonance(0.06, 0);
    const double exact = ccr.energy.imag();
    const double e1 = im_energy_wkb(0.06, 0, 1).value();
    const double e0 = eps_wkb(0.06, 0);
    CHECK(std::abs(e1 - exact) < 2e-3 * exact);
    CHECK(std::abs(e1 - exact) < 0.1 * std::abs(e0 - exact));
}
