#pragma once

// Truncated power series in one expansion variable. The coefficient type is a
// template parameter: Rational for exact perturbation coefficients,
// std::complex<double> for numerics, Jet<...> when derivatives in the trial
// parameters ride along, or another TruncatedSeries for nested expansions.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cubicvpe/errors.hpp"
#include "cubicvpe/rational.hpp"

namespace cubicvpe {

// Scalar hooks. Types defined elsewhere in this namespace (Jet, TruncatedSeries)
// provide their own overloads, found by argument-dependent lookup.

inline bool scalar_is_zero(const Rational& r) { return r == 0; }
inline bool scalar_is_zero(const std::complex<double>& z) { return z == 0.0; }
inline bool scalar_is_zero(double x) { return x == 0.0; }

inline Rational scalar_reciprocal(const Rational& r) { return Rational(1) / r; }
inline std::complex<double> scalar_reciprocal(const std::complex<double>& z) { return 1.0 / z; }
inline double scalar_reciprocal(double x) { return 1.0 / x; }

/// Exact only for integer exponents or a unit base.
inline Rational scalar_pow(const Rational& base, const Rational& p)
{
    if (denominator_of(p) == 1) {
        const BigInt e = numerator_of(p);
        if (e < 0 && base == 0) {
            throw SingularExpansion("power");
        }
        Rational result = 1;
        const Rational factor = e < 0 ? Rational(1) / base : base;
        for (BigInt k = 0; k < boost::multiprecision::abs(e); ++k) {
            result *= factor;
        }
        return result;
    }
    if (base == 1) {
        return 1;
    }
    throw ContractViolation("non-integer power of " + to_string(base) + " is not rational");
}

inline std::complex<double> scalar_pow(const std::complex<double>& base, double p)
{
    if (p == 0.5) {
        return std::sqrt(base);
    }
    return std::pow(base, p);
}

inline double scalar_pow(double base, double p) { return std::pow(base, p); }

template <class T>
class TruncatedSeries {
public:
    using value_type = T;

    /// The zero series of the given order; `zero` supplies the additive identity.
    explicit TruncatedSeries(std::size_t order, const T& zero = T{})
        : coeffs_(order + 1, zero)
    {
    }

    explicit TruncatedSeries(std::vector<T> coeffs)
        : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw ContractViolation("truncated series needs at least one coefficient");
        }
    }

    static TruncatedSeries constant(std::size_t order, const T& value, const T& zero = T{})
    {
        TruncatedSeries s(order, zero);
        s.coeffs_[0] = value;
        return s;
    }

    /// The expansion variable itself, `x`.
    static TruncatedSeries variable(std::size_t order, const T& one = T(1), const T& zero = T{})
    {
        TruncatedSeries s(order, zero);
        if (order >= 1) {
            s.coeffs_[1] = one;
        }
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const T& operator[](std::size_t k) const { return coeffs_[k]; }
    T& operator[](std::size_t k) { return coeffs_[k]; }
    std::span<const T> coeffs() const noexcept { return coeffs_; }

    /// Horner evaluation at `x`.
    template <class X>
    T evaluate(const X& x) const
    {
        T acc = coeffs_.back();
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
            acc = acc * x + coeffs_[k];
        }
        return acc;
    }

    /// Sum of all coefficients (evaluation at x = 1).
    T coefficient_sum() const
    {
        T acc = coeffs_[0];
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            acc += coeffs_[k];
        }
        return acc;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& other)
    {
        require_same_order(*this, other, "series addition");
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] += other.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& other)
    {
        require_same_order(*this, other, "series subtraction");
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] -= other.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries operator-() const
    {
        TruncatedSeries r(*this);
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    // Scalar coefficient on either side acts on every coefficient (products)
    // or on the constant term (sums).
    friend TruncatedSeries operator*(TruncatedSeries a, const T& s)
    {
        for (auto& c : a.coeffs_) {
            c = c * s;
        }
        return a;
    }
    friend TruncatedSeries operator*(const T& s, const TruncatedSeries& a) { return a * s; }
    friend TruncatedSeries operator+(TruncatedSeries a, const T& s)
    {
        a.coeffs_[0] += s;
        return a;
    }
    friend TruncatedSeries operator+(const T& s, const TruncatedSeries& a) { return a + s; }
    friend TruncatedSeries operator-(TruncatedSeries a, const T& s)
    {
        a.coeffs_[0] -= s;
        return a;
    }
    friend TruncatedSeries operator-(const T& s, const TruncatedSeries& a) { return (-a) + s; }

    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator*(TruncatedSeries a, S s)
    {
        for (auto& c : a.coeffs_) {
            c = c * s;
        }
        return a;
    }
    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator*(S s, const TruncatedSeries& a)
    {
        return a * s;
    }
    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator+(TruncatedSeries a, S s)
    {
        a.coeffs_[0] = a.coeffs_[0] + s;
        return a;
    }
    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator+(S s, const TruncatedSeries& a)
    {
        return a + s;
    }
    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator-(TruncatedSeries a, S s)
    {
        a.coeffs_[0] = a.coeffs_[0] - s;
        return a;
    }
    template <class S>
        requires std::is_arithmetic_v<S>
    friend TruncatedSeries operator-(S s, const TruncatedSeries& a)
    {
        return (-a) + s;
    }

    TruncatedSeries& operator+=(const T& s)
    {
        coeffs_[0] += s;
        return *this;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    static void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* what)
    {
        if (a.order() != b.order()) {
            throw ContractViolation(std::string(what) + ": order mismatch (" + std::to_string(a.order()) +
                                    " vs " + std::to_string(b.order()) + ")");
        }
    }

private:
    std::vector<T> coeffs_;
};

template <class T>
struct is_truncated_series : std::false_type {};
template <class T>
struct is_truncated_series<TruncatedSeries<T>> : std::true_type {};

/// Cauchy product truncated at the common order.
template <class T>
TruncatedSeries<T> series_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b)
{
    TruncatedSeries<T>::require_same_order(a, b, "series_mul");
    std::vector<T> c;
    c.reserve(a.order() + 1);
    for (std::size_t k = 0; k <= a.order(); ++k) {
        T acc = a[0] * b[k];
        for (std::size_t i = 1; i <= k; ++i) {
            acc += a[i] * b[k - i];
        }
        c.push_back(std::move(acc));
    }
    return TruncatedSeries<T>(std::move(c));
}

template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b)
{
    return series_mul(a, b);
}

/// a / b by forward substitution; b must have a nonzero constant term.
template <class T>
TruncatedSeries<T> series_div(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b)
{
    TruncatedSeries<T>::require_same_order(a, b, "series_div");
    if (scalar_is_zero(b[0])) {
        throw SingularExpansion("series_div");
    }
    const T inv = scalar_reciprocal(b[0]);
    std::vector<T> q;
    q.reserve(a.order() + 1);
    for (std::size_t d = 0; d <= a.order(); ++d) {
        T acc = a[d];
        for (std::size_t k = 1; k <= d; ++k) {
            acc -= b[k] * q[d - k];
        }
        q.push_back(acc * inv);
    }
    return TruncatedSeries<T>(std::move(q));
}

template <class T>
TruncatedSeries<T> operator/(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b)
{
    return series_div(a, b);
}

/// a^p for a series with nonzero constant term, via the recurrence that
/// follows from a * (a^p)' = p * a' * a^p.
template <class T, class P>
TruncatedSeries<T> series_pow(const TruncatedSeries<T>& a, const P& p)
{
    if (scalar_is_zero(a[0])) {
        throw SingularExpansion("series_pow");
    }
    const T inv = scalar_reciprocal(a[0]);
    std::vector<T> g;
    g.reserve(a.order() + 1);
    g.push_back(scalar_pow(a[0], p));
    for (std::size_t d = 1; d <= a.order(); ++d) {
        T acc = a[1] * g[d - 1] * (p * P(1) - P(d - 1));
        for (std::size_t k = 2; k <= d; ++k) {
            acc += a[k] * g[d - k] * (p * P(k) - P(d - k));
        }
        g.push_back(acc * inv * (P(1) / P(d)));
    }
    return TruncatedSeries<T>(std::move(g));
}

/// outer(inner(x)) truncated at the common order; inner must vanish at x = 0.
template <class T>
TruncatedSeries<T> series_compose(const TruncatedSeries<T>& outer, const TruncatedSeries<T>& inner)
{
    if (!scalar_is_zero(inner[0])) {
        throw ContractViolation("series_compose: inner series has a nonzero constant term");
    }
    const std::size_t order = std::min(outer.order(), inner.order());
    std::vector<T> trimmed(inner.coeffs().begin(), inner.coeffs().begin() + order + 1);
    const TruncatedSeries<T> x(std::move(trimmed));
    TruncatedSeries<T> acc = TruncatedSeries<T>::constant(order, outer[order], inner[0]);
    for (std::size_t k = order; k-- > 0;) {
        acc = series_mul(acc, x);
        acc += outer[k];
    }
    return acc;
}

// Hooks so that a TruncatedSeries can itself serve as a coefficient type.

template <class T>
bool scalar_is_zero(const TruncatedSeries<T>& s)
{
    return scalar_is_zero(s[0]);
}

template <class T>
TruncatedSeries<T> scalar_reciprocal(const TruncatedSeries<T>& s)
{
    return series_div(TruncatedSeries<T>::constant(s.order(), s[0] * 0.0 + 1.0, s[0] * 0.0), s);
}

template <class T, class P>
TruncatedSeries<T> scalar_pow(const TruncatedSeries<T>& s, const P& p)
{
    return series_pow(s, p);
}

} // namespace cubicvpe
