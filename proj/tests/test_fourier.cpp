#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ringfe/fourier.hpp"

using namespace ringfe;

static RamifiedRing make_ramified(int p, int f) {
    const Field& k = Field::get(p, f, 1);
    return RamifiedRing(k, AdditiveCharacter(k, 1));
}
static HeisenbergRing make_heisenberg(int p, int f) {
    const Field& k2 = Field::get(p, f, 2);
    return HeisenbergRing(k2, AdditiveCharacter(k2.base(), 1));
}
static LevelZeroRing make_level0(int p, int f) {
    const Field& k2 = Field::get(p, f, 2);
    return LevelZeroRing(k2, AdditiveCharacter(k2.base(), 1));
}

// reference transform: the definition, written independently of dft()
template <typename R>
static RingFunction dft_reference(const R& ring, const RingFunction& f) {
    const int n = static_cast<int>(ring.order());
    RingFunction out(n);
    for (int y = 0; y < n; ++y) {
        cplx s = 0.0;
        for (int x = 0; x < n; ++x) s += f[x] * ring.nu(ring.mul(x, y));
        out[y] = s / std::sqrt(static_cast<double>(n));
    }
    return out;
}

TEST_CASE("indicator of zero transforms to the constant N^{-1/2}") {
    auto check = [](const auto& ring) {
        const int n = static_cast<int>(ring.order());
        RingFunction f(n, cplx(0.0));
        f[ring.zero()] = 1.0;
        auto F = dft(ring, f);
        for (int y = 0; y < n; ++y)
            REQUIRE(std::abs(F[y] - cplx(1.0 / std::sqrt(double(n)), 0)) < 1e-12);
    };
    check(make_ramified(3, 1));
    check(make_heisenberg(2, 1));
    check(make_level0(2, 1));
}

TEST_CASE("constant function transforms to N^{1/2} times the indicator of zero") {
    auto check = [](const auto& ring) {
        const int n = static_cast<int>(ring.order());
        RingFunction f(n, cplx(1.0));
        auto F = dft(ring, f);
        for (int y = 0; y < n; ++y) {
            cplx expect = y == ring.zero() ? cplx(std::sqrt(double(n)), 0) : cplx(0.0);
            REQUIRE(std::abs(F[y] - expect) < 1e-9);
        }
    };
    check(make_ramified(3, 1));
    check(make_heisenberg(2, 1));
    check(make_heisenberg(3, 1));
    check(make_level0(2, 1));
}

TEST_CASE("dft twice gives f(-x), for random f on every ring, q <= 4") {
    std::mt19937_64 rng(7);
    auto check = [&rng](const auto& ring) {
        const int n = static_cast<int>(ring.order());
        auto f = random_function(n, rng);
        auto FF = dft(ring, dft(ring, f));
        for (int x = 0; x < n; ++x) REQUIRE(std::abs(FF[x] - f[ring.neg(x)]) < 1e-8);
    };
    check(make_ramified(2, 1));
    check(make_ramified(3, 1));
    check(make_ramified(2, 2));
    check(make_heisenberg(2, 1));
    check(make_heisenberg(3, 1));
    check(make_heisenberg(2, 2));
    check(make_level0(2, 1));
    check(make_level0(3, 1));
    check(make_level0(2, 2));
}

TEST_CASE("fast kernels agree with the reference transform") {
    std::mt19937_64 rng(8);
    auto check = [&rng](const auto& ring) {
        auto f = random_function(ring.order(), rng);
        auto a = dft(ring, f);
        auto b = dft_reference(ring, f);
        REQUIRE(max_abs_diff(a, b) < 1e-10);
    };
    check(make_heisenberg(2, 1));
    check(make_heisenberg(3, 1));
    check(make_level0(2, 1));
    check(make_level0(3, 1));
    check(make_ramified(3, 2));
}

TEST_CASE("dft is bit-identical for any worker count") {
    std::mt19937_64 rng(9);
    auto ring = make_heisenberg(3, 1);
    auto f = random_function(ring.order(), rng);
    auto a = dft(ring, f, 1);
    auto b = dft(ring, f, 2);
    auto c = dft(ring, f, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i] == b[i]);
        REQUIRE(a[i] == c[i]);
    }
}

TEST_CASE("translations: identity, composition, unit requirement") {
    auto ring = make_heisenberg(2, 1);
    std::mt19937_64 rng(10);
    auto f = random_function(ring.order(), rng);
    auto id = translate_left(ring, ring.one(), f);
    for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(id[i] == f[i]);

    auto units = ring.units();
    std::uniform_int_distribution<std::size_t> dist(0, units.size() - 1);
    for (int i = 0; i < 20; ++i) {
        int g = units[dist(rng)], h = units[dist(rng)];
        auto lhs = translate_left(ring, g, translate_left(ring, h, f));
        auto rhs = translate_left(ring, ring.mul(g, h), f);
        REQUIRE(max_abs_diff(lhs, rhs) == 0.0);
        // L and R commute
        auto lr = translate_left(ring, g, translate_right(ring, h, f));
        auto rl = translate_right(ring, h, translate_left(ring, g, f));
        REQUIRE(max_abs_diff(lr, rl) == 0.0);
    }
    CHECK_THROWS_AS(translate_left(ring, ring.zero(), f), std::domain_error);
    CHECK_THROWS_AS(translate_right(ring, ring.encode(0, 1, 1), f), std::domain_error);
}

TEST_CASE("exchange rules: dft(L_g f)(y) = dft(f)(y g) and dft(R_h f) = L_h dft(f)") {
    std::mt19937_64 rng(11);
    auto check = [&rng](const auto& ring) {
        const int n = static_cast<int>(ring.order());
        auto f = random_function(n, rng);
        auto F = dft(ring, f);
        auto units = ring.units();
        std::uniform_int_distribution<std::size_t> dist(0, units.size() - 1);
        for (int i = 0; i < 10; ++i) {
            int g = units[dist(rng)];
            auto lhs = dft(ring, translate_left(ring, g, f));
            auto rhs = translate_right(ring, g, F);
            REQUIRE(max_abs_diff(lhs, rhs) < 1e-9);
            int h = units[dist(rng)];
            auto lhs2 = dft(ring, translate_right(ring, h, f));
            auto rhs2 = translate_left(ring, h, F);
            REQUIRE(max_abs_diff(lhs2, rhs2) < 1e-9);
        }
    };
    check(make_ramified(2, 1));
    check(make_ramified(3, 1));
    check(make_heisenberg(2, 1));
    check(make_heisenberg(3, 1));
    check(make_level0(2, 1));
}

TEST_CASE("parseval and linearity, property-tested with random functions") {
    std::mt19937_64 rng(12);
    auto check = [&rng](const auto& ring) {
        const int n = static_cast<int>(ring.order());
        auto f = random_function(n, rng);
        auto g = random_function(n, rng);
        auto F = dft(ring, f);
        REQUIRE(std::abs(sum_abs2(F) - sum_abs2(f)) < 1e-8 * n);
        cplx a(0.3, -1.1), b(-0.7, 0.2);
        RingFunction comb(n);
        for (int i = 0; i < n; ++i) comb[i] = a * f[i] + b * g[i];
        auto Fc = dft(ring, comb);
        auto Fg = dft(ring, g);
        for (int i = 0; i < n; ++i) REQUIRE(std::abs(Fc[i] - (a * F[i] + b * Fg[i])) < 1e-9);
    };
    check(make_ramified(3, 1));
    check(make_heisenberg(2, 1));
    check(make_level0(2, 1));
}

TEST_CASE("dft rejects rings above the dense-kernel cap") {
    auto ring = make_heisenberg(2, 1);
    RingFunction wrong(3);
    CHECK_THROWS_AS(dft(ring, wrong), std::invalid_argument);

    // q = 7 gives a q^6 ring of order 117649, past the 2*10^4 cap
    auto big = make_level0(7, 1);
    RingFunction f(big.order(), cplx(0.0));
    CHECK_THROWS_AS(dft(big, f), std::length_error);
}
