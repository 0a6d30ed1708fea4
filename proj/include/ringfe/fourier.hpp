#pragma once

// Complex function space on a finite ring and the self-dual discrete
// Fourier transform  F f(y) = N^{-1/2} sum_x f(x) nu(x y),  where x y is
// the ring product (taken literally in that order).  The kernel is dense
// O(N^2); the ring is noncommutative, so there is nothing faster to do.
//
// Summation order within each output index is the canonical element
// order, so results are bit-identical no matter how many workers run.

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rings.hpp"

namespace ringfe {

using RingFunction = std::vector<cplx>;

inline constexpr long long kDftOrderCap = 20000;

namespace fourier_detail {

template <FiniteRingType R>
void dft_rows_generic(const R& ring, const RingFunction& f, RingFunction& out, int y0, int y1) {
    const int n = static_cast<int>(ring.order());
    const auto& zeta = ring.zeta();
    for (int y = y0; y < y1; ++y) {
        cplx s = 0.0;
        for (int x = 0; x < n; ++x) s += f[x] * zeta[ring.nu_exponent_of_product(x, y)];
        out[y] = s;
    }
}

// Row-hoisted kernel: identical summation order, the field-table rows for
// the fixed y are fetched once.
inline void dft_rows(const HeisenbergRing& ring, const RingFunction& f, RingFunction& out,
                     int y0, int y1) {
    const Field& k2 = ring.k2();
    const int q2 = k2.size();
    const auto& chi = ring.chi_table();
    const auto& zeta = ring.zeta();
    for (int y = y0; y < y1; ++y) {
        const int* rowA = k2.mul_row(ring.gamma_of(y));            // alpha_x * gamma_y
        const int* rowB = k2.mul_row(ring.frob(ring.beta_of(y)));  // beta_x * beta_y^q
        const int* rowC = k2.mul_row(ring.alpha_of(y));            // gamma_x * alpha_y
        cplx s = 0.0;
        int x = 0;
        for (int a = 0; a < q2; ++a) {
            const int ta = rowA[a];
            for (int b = 0; b < q2; ++b) {
                const int* addrow = k2.add_row(k2.add(ta, rowB[b]));
                for (int c = 0; c < q2; ++c, ++x) s += f[x] * zeta[chi[addrow[rowC[c]]]];
            }
        }
        out[y] = s;
    }
}

inline void dft_rows(const LevelZeroRing& ring, const RingFunction& f, RingFunction& out,
                     int y0, int y1) {
    const Field& k2 = ring.k2();
    const Field& k = ring.k();
    const int q = k.size(), q2 = k2.size(), p = ring.p();
    const auto& nu = ring.nu_k();
    const auto& zeta = ring.zeta();
    std::vector<int> exp_k(q), exp_neg_tr(q2);
    for (int z = 0; z < q; ++z) exp_k[z] = nu.exponent(z);
    for (int w = 0; w < q2; ++w) exp_neg_tr[w] = nu.exponent(k.neg(k2.rel_trace(w)));
    for (int y = y0; y < y1; ++y) {
        const int m2 = ring.mat_of(y);
        const int* rowA = k.mul_row(ring.mat_a(m2));
        const int* rowB = k.mul_row(ring.mat_c(m2));  // b_x pairs with c_y
        const int* rowC = k.mul_row(ring.mat_b(m2));
        const int* rowD = k.mul_row(ring.mat_d(m2));
        const int* rowE = k2.mul_row(ring.ext_of(y));
        cplx s = 0.0;
        int x = 0;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                const int tab = k.add(rowA[a], rowB[b]);
                for (int c = 0; c < q; ++c) {
                    const int tabc = k.add(tab, rowC[c]);
                    for (int d = 0; d < q; ++d) {
                        const int e_tr = exp_k[k.add(tabc, rowD[d])];
                        for (int e = 0; e < q2; ++e, ++x) {
                            int ex = e_tr + exp_neg_tr[rowE[e]];
                            if (ex >= p) ex -= p;
                            s += f[x] * zeta[ex];
                        }
                    }
                }
            }
        out[y] = s;
    }
}

template <typename R>
concept HasFastDftRows = requires(const R r, const RingFunction& f, RingFunction& out) {
    dft_rows(r, f, out, 0, 0);
};

}  // namespace fourier_detail

/// The self-dual discrete Fourier transform.  `workers` parallelizes over
/// output indices only; the result is identical for any worker count.
template <FiniteRingType R>
RingFunction dft(const R& ring, const RingFunction& f, int workers = 1) {
    const long long n = ring.order();
    if (n > kDftOrderCap) throw std::length_error("dft: ring order above the dense-kernel cap");
    if (static_cast<long long>(f.size()) != n) throw std::invalid_argument("dft: length mismatch");
    RingFunction out(f.size());
    auto run = [&](int y0, int y1) {
        if constexpr (fourier_detail::HasFastDftRows<R>)
            fourier_detail::dft_rows(ring, f, out, y0, y1);
        else
            fourier_detail::dft_rows_generic(ring, f, out, y0, y1);
    };
    const int ni = static_cast<int>(n);
    if (workers <= 1) {
        run(0, ni);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (ni + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int y0 = w * chunk, y1 = std::min(ni, y0 + chunk);
            if (y0 >= y1) break;
            pool.emplace_back(run, y0, y1);
        }
        for (auto& t : pool) t.join();
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= scale;
    return out;
}

/// L_g f(y) = f(g^-1 y); g must be a unit.
template <FiniteRingType R>
RingFunction translate_left(const R& ring, int g, const RingFunction& f) {
    if (!ring.is_unit(g)) throw std::domain_error("translate_left: g is not a unit");
    const int n = static_cast<int>(ring.order());
    const int gi = ring.inverse(g);
    RingFunction out(n);
    for (int y = 0; y < n; ++y) out[y] = f[ring.mul(gi, y)];
    return out;
}

/// R_h f(y) = f(y h); h must be a unit.
template <FiniteRingType R>
RingFunction translate_right(const R& ring, int h, const RingFunction& f) {
    if (!ring.is_unit(h)) throw std::domain_error("translate_right: h is not a unit");
    const int n = static_cast<int>(ring.order());
    RingFunction out(n);
    for (int y = 0; y < n; ++y) out[y] = f[ring.mul(y, h)];
    return out;
}

/// y -> f(y^-1) on units, zero elsewhere.
template <FiniteRingType R>
RingFunction compose_inverse(const R& ring, const RingFunction& f) {
    const int n = static_cast<int>(ring.order());
    RingFunction out(n, cplx(0.0));
    for (int y = 0; y < n; ++y)
        if (ring.is_unit(y)) out[y] = f[ring.inverse(y)];
    return out;
}

template <FiniteRingType R>
double max_abs_off_units(const R& ring, const RingFunction& f) {
    double m = 0.0;
    for (int x = 0; x < static_cast<int>(ring.order()); ++x)
        if (!ring.is_unit(x)) m = std::max(m, std::abs(f[x]));
    return m;
}

inline double max_abs_diff(const RingFunction& a, const RingFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double sum_abs2(const RingFunction& f) {
    double s = 0.0;
    for (const auto& v : f) s += std::norm(v);
    return s;
}

inline RingFunction random_function(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    RingFunction f(n);
    for (auto& v : f) v = cplx(dist(rng), dist(rng));
    return f;
}

}  // namespace ringfe
