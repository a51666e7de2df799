#include "cubicvpe/wkb.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "cubicvpe/errors.hpp"
#include "cubicvpe/series.hpp"

#ifndef CUBICVPE_DATA_DIR
#define CUBICVPE_DATA_DIR "data"
#endif

namespace cubicvpe {

namespace {

// SHA-256 of the canonical block "m p numerator denominator\n" for p = 0..2m.
constexpr std::array<const char*, WkbCorrectionTable::kMaxOrder> kDigests = {
    "88468f24eb1ad9be5af0ff7fe068439b090a7a08306fa7b9cb5ae84b98c2ceb2",
    "a01cf30b422826cab828e2b65df8c89ded6a9a1359e4658685c49a63f30cf1c3",
    "2ae1dea4104ca7ee99eea121fb2fb52f2beb5082c8ea76127c545cabfea59c33",
    "18b63f6e87ca774ebcdeb2bc1f79c3097ff55fdd9aeb2aa4b897068cb56ad379",
    "89a064ccdf339a7e76cf5e874a32084f163cc9d2832cb1abd3df2d2fe128997a",
    "8520d40c510bb156983a7e23ea6368f78dd9b72f62d1ac175c01a96909d6d8b5",
    "45bc7b6651351cf40faeaee0ed50b5ea561ecbaf31189ea1491eb5663f9bb137",
};

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return os.str();
}

void require_positive(double lambda, double omega, const char* what)
{
    if (!(lambda > 0.0)) {
        throw DomainError(std::string(what) + ": lambda must be positive");
    }
    if (!(omega > 0.0)) {
        throw DomainError(std::string(what) + ": omega must be positive");
    }
    if (!std::isfinite(lambda) || !std::isfinite(omega)) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
}

void require_level(int n)
{
    if (n < 0) {
        throw ContractViolation("quantum number must be non-negative");
    }
}

// log of 8^n / (sqrt(pi) n!)
long double log_prefactor(int n)
{
    return n * std::log(8.0L) - 0.5L * std::log(std::numbers::pi_v<long double>) - std::lgamma(n + 1.0L);
}

} // namespace

WkbCorrectionTable WkbCorrectionTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open WKB coefficient table: " + path.string());
    }
    WkbCorrectionTable t;
    std::array<std::string, kMaxOrder> canonical;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        int m = 0;
        int p = -1;
        std::string num;
        std::string den;
        std::string extra;
        if (!(fields >> m >> p >> num >> den) || (fields >> extra) || m < 1 || m > kMaxOrder || p < 0 || p > 2 * m) {
            throw std::runtime_error("malformed WKB table line " + std::to_string(line_no));
        }
        auto& poly = t.poly_[m - 1];
        if (p != static_cast<int>(poly.size())) {
            throw std::runtime_error("WKB table line " + std::to_string(line_no) + ": powers of n out of order");
        }
        poly.push_back(parse_rational(num + "/" + den));
        canonical[m - 1] += std::to_string(m) + ' ' + std::to_string(p) + ' ' + num + ' ' + den + '\n';
    }
    for (int m = 1; m <= kMaxOrder; ++m) {
        if (static_cast<int>(t.poly_[m - 1].size()) != 2 * m + 1) {
            throw std::runtime_error("WKB table: k_" + std::to_string(m) + " incomplete");
        }
        if (sha256_hex(canonical[m - 1]) != kDigests[m - 1]) {
            throw std::runtime_error("WKB table: digest mismatch for k_" + std::to_string(m));
        }
    }
    return t;
}

std::filesystem::path default_wkb_table_path()
{
    if (const char* dir = std::getenv("CUBICVPE_DATA_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / "wkb_coefficients.txt";
    }
    return std::filesystem::path(CUBICVPE_DATA_DIR) / "wkb_coefficients.txt";
}

const WkbCorrectionTable& WkbCorrectionTable::standard()
{
    static const WkbCorrectionTable table = load(default_wkb_table_path());
    return table;
}

const Rational& WkbCorrectionTable::coefficient(int m, int p) const
{
    if (m < 1 || m > kMaxOrder) {
        throw DomainError("WKB correction order must be in 1..7");
    }
    if (p < 0 || p > 2 * m) {
        throw DomainError("k_m has degree 2m");
    }
    return poly_[m - 1][p];
}

Rational WkbCorrectionTable::evaluate(int m, int n) const
{
    if (m < 1 || m > kMaxOrder) {
        throw DomainError("WKB correction order must be in 1..7");
    }
    Rational acc = 0;
    for (auto it = poly_[m - 1].rbegin(); it != poly_[m - 1].rend(); ++it) {
        acc = acc * n + *it;
    }
    return acc;
}

double eps_wkb(double lambda, int n, double omega, bool* underflow)
{
    require_positive(lambda, omega, "eps_wkb");
    require_level(n);
    const long double l2 = static_cast<long double>(lambda) * lambda;
    const long double w5 = std::pow(static_cast<long double>(omega), 5);
    const long double log_eps = log_prefactor(n) + std::log(static_cast<long double>(omega)) +
                                (n + 0.5L) * std::log(w5 / l2) - 2.0L * w5 / (15.0L * l2);
    const long double value = std::exp(log_eps);
    const bool under = !(value >= static_cast<long double>(std::numeric_limits<double>::denorm_min()));
    if (underflow != nullptr) {
        *underflow = under;
    }
    return under ? 0.0 : static_cast<double>(value);
}

Rational k_coefficient(int m, int n)
{
    if (m < 1 || m > WkbCorrectionTable::kMaxOrder) {
        throw DomainError("k_coefficient: order must be in 1..7");
    }
    require_level(n);
    return WkbCorrectionTable::standard().evaluate(m, n);
}

WkbResult im_energy_wkb(double lambda, int n, int m, double omega)
{
    require_positive(lambda, omega, "im_energy_wkb");
    require_level(n);
    if (m < 0 || m > WkbCorrectionTable::kMaxOrder) {
        throw DomainError("im_energy_wkb: order must be in 0..7");
    }
    WkbResult r;
    r.n = n;
    r.lambda = lambda;
    r.order = m;
    r.eps0 = eps_wkb(lambda, n, omega, &r.underflow);
    const double g = lambda * lambda / std::pow(omega, 5);
    double factor = 1.0;
    double power = 1.0;
    r.partial_sums.push_back(r.eps0);
    for (int i = 1; i <= m; ++i) {
        power *= g;
        factor += to_double(k_coefficient(i, n)) * power;
        r.partial_sums.push_back(r.eps0 * factor);
    }
    return r;
}

std::complex<double> variational_wkb(double lambda, int n, int m, const TrialPoint& trial, int order)
{
    require_positive(lambda, 1.0, "variational_wkb");
    require_level(n);
    if (m < 0 || m > WkbCorrectionTable::kMaxOrder) {
        throw DomainError("variational_wkb: order must be in 0..7");
    }
    if (order < 0) {
        throw ContractViolation("variational_wkb: expansion order must be non-negative");
    }
    using C = std::complex<double>;
    using Series = TruncatedSeries<C>;
    const C w0 = trial.omega_squared();
    const C j0 = trial.current();
    if (w0 == 0.0 || w0 * w0 == 12.0 * j0 * lambda) {
        throw SingularExpansion("wkb frequency");
    }

    // H_0 at u: Omega^2 -> w0 + u (1 - w0), j -> j0 (1 - u), lambda -> lambda u.
    // Its effective frequency is s^{1/2}, s^2 = w^2 - 12 j lambda u, carried as
    // Omega * ratio^{1/4} with ratio = s^2 / w0^2 = 1 + O(u).
    const std::size_t top = static_cast<std::size_t>(std::max(order + 2, 2 * m));
    auto polynomial = [&](C c0, C c1, C c2) {
        Series p(top);
        p[0] = c0;
        p[1] = c1;
        if (top >= 2) {
            p[2] = c2;
        }
        return p;
    };
    const C omega = std::sqrt(w0);
    const Series ratio = polynomial(1.0, 2.0 * (1.0 - w0) / w0 - 12.0 * j0 * lambda / (w0 * w0),
                                    (std::pow(1.0 - w0, 2) + 12.0 * j0 * lambda) / (w0 * w0));
    Series log1p(top);
    for (std::size_t k = 1; k <= top; ++k) {
        log1p[k] = (k % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(k);
    }
    const Series log_ratio = series_compose(log1p, ratio - 1.0);
    const Series w5 = series_pow(ratio, 1.25) * std::pow(omega, 5);

    // log eps for H_0 without its log u piece (zero at u = 1); the exponent
    // -2 s^{5/2} / (15 lambda^2 u^2) keeps its u^{-2}, u^{-1} terms, so the
    // numerator is summed through u^{order + 2}.
    const double l2 = lambda * lambda;
    C log_eps = static_cast<double>(log_prefactor(n)) - (2.0 * n + 1.0) * std::log(lambda) +
                (2.5 * n + 1.75) * std::log(w0);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(order); ++k) {
        log_eps += (2.5 * n + 1.75) * log_ratio[k] * 0.5;
    }
    for (std::size_t k = 0; k <= static_cast<std::size_t>(order) + 2; ++k) {
        log_eps -= 2.0 * w5[k] / (15.0 * l2);
    }

    // Correction factor 1 + sum_i k_i (lambda u)^{2i} / s^{5i/2}, kept through
    // u^{max(order, 2m)} so that (Omega, j) = (1, 0) is exact.
    const Series inv_w5 = series_pow(ratio, -1.25) * std::pow(omega, -5);
    Series g(top);
    g[2] = l2;
    const Series step = g * inv_w5;
    Series power = Series::constant(top, 1.0);
    Series factor = Series::constant(top, 1.0);
    for (int i = 1; i <= m; ++i) {
        power = power * step;
        factor += power * C(to_double(k_coefficient(i, n)));
    }
    C correction = 0.0;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max(order, 2 * m)); ++k) {
        correction += factor[k];
    }
    return std::exp(log_eps) * correction;
}

} // namespace cubicvpe
