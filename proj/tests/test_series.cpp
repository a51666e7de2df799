#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cubicvpe/jet.hpp"
#include "cubicvpe/rational.hpp"
#include "cubicvpe/series.hpp"

using namespace cubicvpe;
using C = std::complex<double>;
using RS = TruncatedSeries<Rational>;
using CS = TruncatedSeries<C>;

namespace {

Rational factorial(int k)
{
    Rational f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

RS exp_series(std::size_t order, int sign)
{
    RS s(order);
    for (std::size_t k = 0; k <= order; ++k) {
        s[k] = Rational((k % 2 == 1 && sign < 0) ? -1 : 1) / factorial(static_cast<int>(k));
    }
    return s;
}

// Generalised binomial coefficient C(p, k), computed from its product form.
Rational binomial(const Rational& p, int k)
{
    Rational c = 1;
    for (int i = 0; i < k; ++i) {
        c *= (p - i) / Rational(i + 1);
    }
    return c;
}

} // namespace

TEST_CASE("rational parse and print are inverse and normalise")
{
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("6/-4")) == "-3/2");
    CHECK(to_string(parse_rational("+10/5")) == "2");
    CHECK(to_string(make_rational(0, 7)) == "0");
    const std::string big = "-123456789012345678901234567891/1000000000000000000000";
    CHECK(to_string(parse_rational(big)) == big);
    CHECK_THROWS_AS(parse_rational("1/0"), ContractViolation);
    CHECK_THROWS_AS(parse_rational("1.5"), ContractViolation);
    CHECK_THROWS_AS(parse_rational("/3"), ContractViolation);
    CHECK(make_rational(3, -6) == Rational(-1, 2));
    CHECK_THROWS_AS(make_rational(1, 0), ContractViolation);
}

TEST_CASE("exp(x) exp(-x) = 1 exactly")
{
    const RS p = exp_series(12, 1) * exp_series(12, -1);
    CHECK(p[0] == 1);
    for (std::size_t k = 1; k <= 12; ++k) {
        CHECK(p[k] == 0);
    }
}

TEST_CASE("1 / (1 - x - x^2) by division and by composition gives Fibonacci numbers")
{
    const std::size_t order = 20;
    RS one = RS::constant(order, Rational(1));
    RS denom = one;
    denom[1] = -1;
    denom[2] = -1;
    const RS q = one / denom;

    RS geometric(order);
    for (std::size_t k = 0; k <= order; ++k) {
        geometric[k] = 1;
    }
    RS inner(order);
    inner[1] = 1;
    inner[2] = 1;
    const RS c = series_compose(geometric, inner);

    Rational a = 1, b = 1;
    for (std::size_t k = 0; k <= order; ++k) {
        CHECK(q[k] == a);
        CHECK(c[k] == a);
        const Rational next = a + b;
        a = b;
        b = next;
    }
}

TEST_CASE("series_pow of (1 + x) reproduces binomial coefficients")
{
    for (const Rational p : {Rational(1, 2), Rational(-5, 4), Rational(1, 4), Rational(3)}) {
        RS base = RS::constant(10, Rational(1));
        base[1] = 1;
        const RS s = series_pow(base, p);
        for (int k = 0; k <= 10; ++k) {
            CHECK(s[k] == binomial(p, k));
        }
    }
}

TEST_CASE("complex series_pow agrees with direct evaluation near the origin")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        CS a(16);
        a[0] = C(1.0 + 0.5 * u(rng), 0.5 * u(rng));
        a[1] = C(u(rng), u(rng));
        a[2] = C(u(rng), u(rng));
        const double p = -1.25 + 0.7 * trial / 3.0;
        const CS s = series_pow(a, p);
        const C x(0.01, -0.005);
        const C direct = std::pow(a.evaluate(x), p);
        CHECK(std::abs(s.evaluate(x) - direct) < 1e-12 * std::abs(direct));
    }
}

TEST_CASE("sum of a product equals product of sums for polynomials that fit")
{
    CS a(6), b(6);
    a[0] = C(1, 1);
    a[1] = 2.0;
    a[2] = C(0, -1);
    b[0] = 3.0;
    b[1] = C(-1, 0.5);
    b[3] = 0.25;
    CHECK(std::abs((a * b).coefficient_sum() - a.coefficient_sum() * b.coefficient_sum()) < 1e-14);
}

TEST_CASE("series precondition failures")
{
    RS a(3), b(4);
    CHECK_THROWS_AS(a + b, ContractViolation);
    CHECK_THROWS_AS(RS(std::vector<Rational>{}), ContractViolation);
    RS zero_head(3);
    zero_head[1] = 1;
    CHECK_THROWS_AS(series_pow(zero_head, Rational(1, 2)), SingularExpansion);
    CHECK_THROWS_AS(RS::constant(3, Rational(1)) / zero_head, SingularExpansion);
    CHECK_THROWS_AS(series_compose(zero_head, RS::constant(3, Rational(1))), ContractViolation);
}

TEST_CASE("jet partials match closed forms")
{
    // f = w^{3/2} j + 1/w + j^2
    const C w(1.3, 0.2), j(-0.4, 0.7);
    const auto f = jet_lift([](const Jet2& a, const Jet2& b) { return pow(a, 1.5) * b + reciprocal(a) + b * b; }, w,
                            j);
    const auto W = Direction::OmegaSquared;
    const auto J = Direction::Current;
    const double tol = 1e-13;
    CHECK(std::abs(f.value() - (std::pow(w, 1.5) * j + 1.0 / w + j * j)) < tol);
    CHECK(std::abs(f.partial(W) - (1.5 * std::sqrt(w) * j - 1.0 / (w * w))) < tol);
    CHECK(std::abs(f.partial(J) - (std::pow(w, 1.5) + 2.0 * j)) < tol);
    CHECK(std::abs(f.partial(W, W) - (0.75 / std::sqrt(w) * j + 2.0 / (w * w * w))) < tol);
    CHECK(std::abs(f.partial(W, J) - 1.5 * std::sqrt(w)) < tol);
    CHECK(std::abs(f.partial(J, J) - 2.0) < tol);
}

TEST_CASE("jet_lift tags a singular sub-expression")
{
    try {
        jet_lift([](const Jet2& a, const Jet2&) { return reciprocal(a); }, C(0.0), C(1.0), "probe");
        FAIL("expected SingularExpansion");
    } catch (const SingularExpansion& e) {
        CHECK(e.tag().rfind("probe", 0) == 0);
    }
}
