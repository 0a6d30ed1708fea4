#pragma once

// Truncated Laurent series over F_p: coefficient windows [lo, hi) with all
// arithmetic exact modulo t^hi.  A product whose result would carry a
// nonzero coefficient below the window throws WindowUnderflow; coefficients
// at or above hi are dropped (that is the model's truncation semantics).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringfe::lattice {

struct WindowUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    int p;
    int lo;
    int hi;
    int len() const { return hi - lo; }
    bool operator==(const Window&) const = default;
};

class Series {
public:
    Series() = default;
    Series(const Window& w) : w_(w), c_(w.len(), 0) {}

    static Series zero(const Window& w) { return Series(w); }
    static Series monomial(const Window& w, int exp, int coef = 1) {
        Series s(w);
        s.set(exp, coef);
        return s;
    }
    static Series constant(const Window& w, int coef) { return monomial(w, 0, coef); }

    const Window& window() const { return w_; }
    int coeff(int exp) const {
        if (exp < w_.lo || exp >= w_.hi) return 0;
        return c_[exp - w_.lo];
    }
    void set(int exp, int coef) {
        coef %= w_.p;
        if (coef < 0) coef += w_.p;
        if (exp >= w_.hi) return;  // truncated away
        if (exp < w_.lo) {
            if (coef != 0) throw WindowUnderflow("Series: coefficient below window");
            return;
        }
        c_[exp - w_.lo] = static_cast<std::uint8_t>(coef);
    }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }
    /// Smallest exponent with nonzero coefficient; INT_MAX when zero.
    int valuation() const {
        for (int i = 0; i < w_.len(); ++i)
            if (c_[i]) return w_.lo + i;
        return std::numeric_limits<int>::max();
    }

    Series operator+(const Series& o) const {
        Series r(w_);
        for (int i = 0; i < w_.len(); ++i)
            r.c_[i] = static_cast<std::uint8_t>((c_[i] + o.c_[i]) % w_.p);
        return r;
    }
    Series operator-(const Series& o) const {
        Series r(w_);
        for (int i = 0; i < w_.len(); ++i)
            r.c_[i] = static_cast<std::uint8_t>((c_[i] + w_.p - o.c_[i]) % w_.p);
        return r;
    }
    Series operator-() const {
        Series r(w_);
        for (int i = 0; i < w_.len(); ++i) r.c_[i] = static_cast<std::uint8_t>((w_.p - c_[i]) % w_.p);
        return r;
    }
    Series operator*(const Series& o) const {
        // accumulate over the doubled exponent range, then verify nothing
        // survived below the window (cancellation is legitimate)
        const int base = 2 * w_.lo;
        std::vector<int> acc(static_cast<std::size_t>(w_.hi - base), 0);
        for (int i = 0; i < w_.len(); ++i) {
            if (!c_[i]) continue;
            const int ei = w_.lo + i;
            for (int j = 0; j < w_.len(); ++j) {
                if (!o.c_[j]) continue;
                const int e = ei + w_.lo + j;
                if (e >= w_.hi) break;
                acc[e - base] = (acc[e - base] + c_[i] * o.c_[j]) % w_.p;
            }
        }
        Series r(w_);
        for (int e = base; e < w_.hi; ++e) {
            const int v = acc[e - base];
            if (e < w_.lo) {
                if (v != 0) throw WindowUnderflow("Series: product escapes window below");
            } else {
                r.c_[e - w_.lo] = static_cast<std::uint8_t>(v);
            }
        }
        return r;
    }
    Series scaled(int coef) const {
        coef %= w_.p;
        if (coef < 0) coef += w_.p;
        Series r(w_);
        for (int i = 0; i < w_.len(); ++i)
            r.c_[i] = static_cast<std::uint8_t>((c_[i] * coef) % w_.p);
        return r;
    }
    /// Multiply by t^d.
    Series shifted(int d) const {
        Series r(w_);
        for (int i = 0; i < w_.len(); ++i) {
            if (!c_[i]) continue;
            r.set(w_.lo + i + d, c_[i]);
        }
        return r;
    }

    /// Multiplicative inverse of a nonzero series (valuation may be nonzero;
    /// throws when the result cannot live in the window).
    Series inverse() const {
        const int v = valuation();
        if (v == std::numeric_limits<int>::max())
            throw std::domain_error("Series: inverse of zero");
        if (-v < w_.lo) throw WindowUnderflow("Series: inverse escapes window");
        const int L = w_.len();
        // unit part u, u[m] = coeff(v + m)
        std::vector<int> u(L, 0), inv(L, 0);
        for (int m = 0; m < L && v + m < w_.hi; ++m) u[m] = coeff(v + m);
        int u0i = 0;
        for (int x = 1; x < w_.p; ++x)
            if ((x * u[0]) % w_.p == 1) { u0i = x; break; }
        inv[0] = u0i;
        for (int m = 1; m < L; ++m) {
            int s = 0;
            for (int j = 1; j <= m; ++j) s = (s + u[j] * inv[m - j]) % w_.p;
            inv[m] = (u0i * (w_.p - s)) % w_.p;
        }
        Series r(w_);
        for (int m = 0; m < L; ++m) r.set(-v + m, inv[m]);
        return r;
    }

    bool operator==(const Series& o) const { return c_ == o.c_; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < w_.len(); ++i) {
            if (!c_[i]) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(int(c_[i])) + "*t^" + std::to_string(w_.lo + i);
        }
        return s.empty() ? "0" : s;
    }

    const std::vector<std::uint8_t>& raw() const { return c_; }

private:
    Window w_;
    std::vector<std::uint8_t> c_;
};

}  // namespace ringfe::lattice
