#include "cubicvpe/rs_perturbation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "cubicvpe/errors.hpp"

namespace cubicvpe {

namespace {

void require_level_and_order(int n, int max_order, const char* what)
{
    if (n < 0 || max_order < 0) {
        throw ContractViolation(std::string(what) + ": quantum number and order must be non-negative");
    }
}

Rational at(const std::vector<Rational>& v, int k)
{
    return (k >= 0 && k < static_cast<int>(v.size())) ? v[k] : Rational(0);
}

} // namespace

std::vector<double> RsCoefficients::even_coefficients_as_double() const
{
    std::vector<double> out;
    for (int j = 0; j <= max_order; j += 2) {
        out.push_back(to_double(coeffs[j]));
    }
    return out;
}

RsCoefficients rs_coefficients(int n, int max_order)
{
    require_level_and_order(n, max_order, "rs_coefficients");

    // poly[m][k]: coefficient of lambda^m x^k in exp(x^2/2) psi. The x^n
    // coefficient is pinned to delta_{m0}; P_m has degree n + 3m.
    //   (k - n) B[m][k] = (k+1)(k+2)/2 B[m][k+2] + B[m-1][k-3] + sum_{l=1..m} E_l B[m-l][k]
    std::vector<std::vector<Rational>> poly(max_order + 1);
    std::vector<Rational> energy(max_order + 1);
    energy[0] = Rational(2 * n + 1, 2);

    poly[0].assign(n + 1, Rational(0));
    poly[0][n] = 1;
    for (int k = n - 2; k >= 0; k -= 2) {
        poly[0][k] = Rational((k + 1) * (k + 2)) * poly[0][k + 2] / Rational(2 * (k - n));
    }

    for (int m = 1; m <= max_order; ++m) {
        auto& cur = poly[m];
        cur.assign(n + 3 * m + 1, Rational(0));
        auto rhs = [&](int k) {
            Rational r = Rational((k + 1) * (k + 2), 2) * at(cur, k + 2) + at(poly[m - 1], k - 3);
            for (int l = 1; l < m; ++l) {
                r += energy[l] * at(poly[m - l], k);
            }
            return r;
        };
        for (int k = n + 3 * m; k > n; --k) {
            cur[k] = rhs(k) / Rational(k - n);
        }
        // x^n row: poly[0][n] = 1 and poly[l][n] = 0 for l >= 1.
        energy[m] = -rhs(n);
        for (int k = n - 1; k >= 0; --k) {
            cur[k] = (rhs(k) + energy[m] * poly[0][k]) / Rational(k - n);
        }
    }
    return RsCoefficients{n, max_order, std::move(energy)};
}

RsCoefficients oracle_sum_over_states(int n, int max_order)
{
    require_level_and_order(n, max_order, "oracle_sum_over_states");

    // Basis |m) = (a^dagger)^m |0>: a^dagger |m) = |m+1), a |m) = m |m-1>, so
    // X = a + a^dagger has integer matrix elements and x^3 = X^3 / (2 sqrt 2).
    // With mu = lambda / (2 sqrt 2) the perturbation is mu * V, V = -X^3, and
    // E_j = e_j / 8^{j/2} for even j (odd orders vanish).
    const int dim = n + 3 * max_order + 4;
    auto apply_x = [dim](const std::vector<Rational>& v) {
        std::vector<Rational> w(dim, Rational(0));
        for (int m = 0; m < dim; ++m) {
            if (v[m] == 0) {
                continue;
            }
            if (m > 0) {
                w[m - 1] += m * v[m];
            }
            if (m + 1 < dim) {
                w[m + 1] += v[m];
            }
        }
        return w;
    };
    auto apply_v = [&](const std::vector<Rational>& v) {
        auto w = apply_x(apply_x(apply_x(v)));
        for (auto& c : w) {
            c = -c;
        }
        return w;
    };

    std::vector<std::vector<Rational>> state(max_order + 1, std::vector<Rational>(dim, Rational(0)));
    state[0][n] = 1;
    std::vector<Rational> e(max_order + 1, Rational(0));
    e[0] = Rational(2 * n + 1, 2);

    for (int m = 1; m <= max_order; ++m) {
        const auto vpsi = apply_v(state[m - 1]);
        e[m] = vpsi[n];
        for (int i = 0; i < dim; ++i) {
            if (i == n) {
                continue;
            }
            Rational acc = vpsi[i];
            for (int l = 1; l <= m; ++l) {
                acc -= e[l] * state[m - l][i];
            }
            state[m][i] = acc / Rational(n - i);
        }
    }

    RsCoefficients out{n, max_order, std::vector<Rational>(max_order + 1, Rational(0))};
    Rational scale = 1;
    for (int j = 0; j <= max_order; ++j) {
        if (j % 2 == 0) {
            out.coeffs[j] = e[j] / scale;
            scale *= 8;
        } else if (e[j] != 0) {
            throw std::logic_error("odd-order Rayleigh-Schroedinger coefficient did not vanish");
        }
    }
    return out;
}

std::complex<double> rs_partial_sum(const RsCoefficients& coeffs, double lambda, double omega)
{
    if (!(omega > 0.0)) {
        throw ContractViolation("rs_partial_sum: omega must be positive");
    }
    const double g = lambda / std::pow(omega, 2.5);
    double acc = 0.0;
    for (int j = coeffs.max_order; j >= 0; --j) {
        acc = acc * g + to_double(coeffs.coeffs[j]);
    }
    return {omega * acc, 0.0};
}

void write_coefficient_cache(const std::filesystem::path& path, const std::vector<RsCoefficients>& tables)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open coefficient cache for writing: " + path.string());
    }
    out << "# cubicvpe rs-coefficients v1\n# n j numerator denominator\n";
    for (const auto& t : tables) {
        for (int j = 0; j <= t.max_order; ++j) {
            out << t.n << ' ' << j << ' ' << numerator_of(t.coeffs[j]).str() << ' '
                << denominator_of(t.coeffs[j]).str() << '\n';
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing coefficient cache: " + path.string());
    }
}

std::vector<RsCoefficients> read_coefficient_cache(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open coefficient cache: " + path.string());
    }
    std::map<int, std::map<int, Rational>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        int n = -1;
        int j = -1;
        std::string num;
        std::string den;
        std::string extra;
        if (!(fields >> n >> j >> num >> den) || (fields >> extra) || n < 0 || j < 0) {
            throw ContractViolation("malformed coefficient cache line " + std::to_string(line_no));
        }
        const Rational value = parse_rational(num + "/" + den);
        if (numerator_of(value).str() != num || denominator_of(value).str() != den) {
            throw ContractViolation("coefficient cache line " + std::to_string(line_no) + " is not in lowest terms");
        }
        if (!rows[n].emplace(j, value).second) {
            throw ContractViolation("duplicate coefficient cache entry at line " + std::to_string(line_no));
        }
    }
    std::vector<RsCoefficients> tables;
    for (auto& [n, by_order] : rows) {
        RsCoefficients t{n, static_cast<int>(by_order.size()) - 1, {}};
        int expected = 0;
        for (auto& [j, value] : by_order) {
            if (j != expected++) {
                throw ContractViolation("coefficient cache has a gap for n = " + std::to_string(n));
            }
            t.coeffs.push_back(value);
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

CoefficientStore::CoefficientStore(std::filesystem::path cache_file)
    : cache_file_(std::move(cache_file))
{
    if (std::filesystem::exists(*cache_file_)) {
        for (auto& t : read_coefficient_cache(*cache_file_)) {
            const int n = t.n;
            tables_.insert_or_assign(n, std::move(t));
        }
    }
}

RsCoefficients CoefficientStore::get(int n, int max_order)
{
    require_level_and_order(n, max_order, "CoefficientStore::get");
    std::lock_guard lock(mutex_);
    auto it = tables_.find(n);
    if (it == tables_.end() || it->second.max_order < max_order) {
        it = tables_.insert_or_assign(n, rs_coefficients(n, max_order)).first;
    }
    RsCoefficients out = it->second;
    out.coeffs.resize(max_order + 1);
    out.max_order = max_order;
    return out;
}

void CoefficientStore::flush() const
{
    std::lock_guard lock(mutex_);
    if (!cache_file_) {
        return;
    }
    std::vector<RsCoefficients> tables;
    for (const auto& [n, t] : tables_) {
        tables.push_back(t);
    }
    write_coefficient_cache(*cache_file_, tables);
}

} // namespace cubicvpe
