#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>

#include "cubicvpe/errors.hpp"

namespace cubicvpe {

/// The two tracked derivative directions of a trial point: the squared trial
/// frequency Omega^2 and the linear source strength j = Omega^2 x0.
enum class Direction : int { OmegaSquared = 0, Current = 1 };

/// Truncated bivariate Taylor expansion ("jet") of depth `Depth` in the two
/// directions above. Arithmetic obeys the Leibniz rule exactly up to the
/// stored depth, so partials are exact to rounding.
template <class T = std::complex<double>, int Depth = 2>
class Jet {
    static_assert(Depth >= 1, "derivative depth must be at least one");

public:
    static constexpr int depth = Depth;
    static constexpr int size = (Depth + 1) * (Depth + 2) / 2;

    Jet() { c_.fill(T{}); }

    static Jet constant(const T& value)
    {
        Jet j;
        j.c_[0] = value;
        return j;
    }

    /// The coordinate in direction `dir`, placed at `value`.
    static Jet variable(const T& value, Direction dir)
    {
        Jet j = constant(value);
        j.c_[dir == Direction::OmegaSquared ? index(1, 0) : index(0, 1)] = T(1);
        return j;
    }

    const T& value() const noexcept { return c_[0]; }

    /// Taylor coefficient of d_w^i d_j^k / (i! k!).
    const T& coefficient(int i, int k) const { return c_[index(i, k)]; }

    T partial(Direction dir) const
    {
        return dir == Direction::OmegaSquared ? c_[index(1, 0)] : c_[index(0, 1)];
    }

    T partial(Direction a, Direction b) const
    {
        static_assert(Depth >= 2, "second partials need depth >= 2");
        if (a != b) {
            return c_[index(1, 1)];
        }
        return T(2) * (a == Direction::OmegaSquared ? c_[index(2, 0)] : c_[index(0, 2)]);
    }

    Jet& operator+=(const Jet& o)
    {
        for (int k = 0; k < size; ++k) {
            c_[k] += o.c_[k];
        }
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        for (int k = 0; k < size; ++k) {
            c_[k] -= o.c_[k];
        }
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    Jet operator-() const
    {
        Jet r;
        for (int k = 0; k < size; ++k) {
            r.c_[k] = -c_[k];
        }
        return r;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (int da = 0; da <= Depth; ++da) {
            for (int ka = 0; ka <= da; ++ka) {
                const T& av = a.c_[index(da - ka, ka)];
                for (int db = 0; da + db <= Depth; ++db) {
                    for (int kb = 0; kb <= db; ++kb) {
                        r.c_[index(da - ka + db - kb, ka + kb)] += av * b.c_[index(db - kb, kb)];
                    }
                }
            }
        }
        return r;
    }

    friend Jet operator*(Jet a, const T& s)
    {
        for (auto& c : a.c_) {
            c *= s;
        }
        return a;
    }
    friend Jet operator*(const T& s, const Jet& a) { return a * s; }
    friend Jet operator*(Jet a, double s)
    {
        for (auto& c : a.c_) {
            c *= s;
        }
        return a;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }

    friend Jet operator+(Jet a, const T& s)
    {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator+(const T& s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, const T& s)
    {
        a.c_[0] -= s;
        return a;
    }
    friend Jet operator-(const T& s, const Jet& a) { return (-a) + s; }
    friend Jet operator+(Jet a, double s)
    {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s)
    {
        a.c_[0] -= s;
        return a;
    }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }

    /// f^p by Taylor composition around the value of f.
    friend Jet pow(const Jet& f, double p)
    {
        const T f0 = f.c_[0];
        if (f0 == T(0)) {
            throw SingularExpansion("power");
        }
        Jet delta = f;
        delta.c_[0] = T(0);
        const T inv = T(1) / f0;
        T base = p == 0.5 ? std::sqrt(f0) : std::pow(f0, p);
        Jet r = constant(base);
        Jet term = constant(T(1));
        double binom = 1.0;
        for (int k = 1; k <= Depth; ++k) {
            term = term * delta;
            binom *= (p - (k - 1)) / k;
            base *= inv;
            r += term * (base * binom);
        }
        return r;
    }

    friend Jet reciprocal(const Jet& f)
    {
        if (f.c_[0] == T(0)) {
            throw SingularExpansion("division");
        }
        return pow(f, -1.0);
    }

    friend Jet sqrt(const Jet& f) { return pow(f, 0.5); }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(const Jet& a, const T& s) { return a * (T(1) / s); }
    friend Jet operator/(const T& s, const Jet& b) { return reciprocal(b) * s; }

    friend bool scalar_is_zero(const Jet& j) { return j.c_[0] == T(0); }
    friend Jet scalar_reciprocal(const Jet& j) { return reciprocal(j); }
    friend Jet scalar_pow(const Jet& j, double p) { return pow(j, p); }

private:
    static constexpr int index(int i, int k)
    {
        const int d = i + k;
        return d * (d + 1) / 2 + k;
    }

    std::array<T, size> c_;
};

using Jet2 = Jet<std::complex<double>, 2>;

/// Evaluates `f` on jets seeded at (Omega^2, j) = (w, j), giving the value and
/// all mixed partials up to `Depth` without finite differencing. `f` must be
/// callable with two Jet arguments. A singular sub-expression surfaces as
/// SingularExpansion whose tag names the failing operation, prefixed by `tag`.
template <int Depth = 2, class F>
Jet<std::complex<double>, Depth> jet_lift(F&& f, std::complex<double> w, std::complex<double> j,
                                          const std::string& tag = "expression")
{
    using J = Jet<std::complex<double>, Depth>;
    try {
        return f(J::variable(w, Direction::OmegaSquared), J::variable(j, Direction::Current));
    } catch (const SingularExpansion& e) {
        throw SingularExpansion(tag + ": " + e.tag());
    }
}

} // namespace cubicvpe
