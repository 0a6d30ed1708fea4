#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ringfe/rings.hpp"

using namespace ringfe;

static RamifiedRing make_ramified(int p, int f, int shift = 1) {
    const Field& k = Field::get(p, f, 1);
    return RamifiedRing(k, AdditiveCharacter(k, shift));
}
static HeisenbergRing make_heisenberg(int p, int f) {
    const Field& k2 = Field::get(p, f, 2);
    return HeisenbergRing(k2, AdditiveCharacter(k2.base(), 1));
}
static LevelZeroRing make_level0(int p, int f) {
    const Field& k2 = Field::get(p, f, 2);
    return LevelZeroRing(k2, AdditiveCharacter(k2.base(), 1));
}

TEST_CASE("ramified ring: inverse is (a^-1, -a^-2 b)") {
    auto R = make_ramified(3, 1);
    const Field& k = R.field();
    for (int a = 1; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            int x = R.encode(a, b);
            int xi = R.inverse(x);
            CHECK(R.mul(x, xi) == R.one());
            CHECK(R.a_of(xi) == k.inv(a));
            CHECK(R.b_of(xi) == k.neg(k.mul(k.inv(k.mul(a, a)), b)));
        }
}

TEST_CASE("heisenberg ring: [1,b,0][1,b',0] = [1, b+b', b b'^q]") {
    auto R = make_heisenberg(2, 1);
    const Field& k2 = R.k2();
    for (int b1 = 0; b1 < 4; ++b1)
        for (int b2 = 0; b2 < 4; ++b2) {
            int prod = R.mul(R.encode(1, b1, 0), R.encode(1, b2, 0));
            CHECK(prod == R.encode(1, k2.add(b1, b2), k2.mul(b1, k2.frobenius(b2))));
        }
}

TEST_CASE("heisenberg ring: alpha = 0 is never a unit") {
    auto R = make_heisenberg(2, 1);
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
            CHECK_FALSE(R.is_unit(R.encode(0, b, c)));
            CHECK_THROWS_AS(R.inverse(R.encode(0, b, c)), std::domain_error);
        }
}

TEST_CASE("unit counts: q(q-1), (q^2-1)q^4, |GL2| (q^2-1)") {
    CHECK(make_ramified(3, 1).units().size() == 6);
    CHECK(make_heisenberg(2, 1).units().size() == 48);
    CHECK(make_level0(2, 1).units().size() == 18);
    CHECK(make_heisenberg(3, 1).units().size() == 648);
}

template <typename R>
static void check_ring_axioms_exhaustive(const R& ring) {
    const int n = static_cast<int>(ring.order());
    for (int x = 0; x < n; ++x) {
        REQUIRE(ring.add(x, ring.zero()) == x);
        REQUIRE(ring.mul(x, ring.one()) == x);
        REQUIRE(ring.mul(ring.one(), x) == x);
        REQUIRE(ring.add(x, ring.neg(x)) == ring.zero());
        if (ring.is_unit(x)) {
            REQUIRE(ring.mul(x, ring.inverse(x)) == ring.one());
            REQUIRE(ring.mul(ring.inverse(x), x) == ring.one());
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                REQUIRE(ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z)));
                REQUIRE(ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z)));
                REQUIRE(ring.mul(ring.add(y, z), x) == ring.add(ring.mul(y, x), ring.mul(z, x)));
            }
}

template <typename R>
static void check_ring_axioms_sampled(const R& ring, int samples) {
    const long long n = ring.order();
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long long> dist(0, n - 1);
    for (int i = 0; i < samples; ++i) {
        int x = static_cast<int>(dist(rng)), y = static_cast<int>(dist(rng)),
            z = static_cast<int>(dist(rng));
        REQUIRE(ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z)));
        REQUIRE(ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z)));
        REQUIRE(ring.mul(ring.add(y, z), x) == ring.add(ring.mul(y, x), ring.mul(z, x)));
    }
}

TEST_CASE("ring axioms: exhaustive q=2, sampled q=3") {
    static_assert(FiniteRingType<RamifiedRing>);
    static_assert(FiniteRingType<HeisenbergRing>);
    static_assert(FiniteRingType<LevelZeroRing>);
    check_ring_axioms_exhaustive(make_ramified(2, 1));
    check_ring_axioms_exhaustive(make_heisenberg(2, 1));
    check_ring_axioms_exhaustive(make_level0(2, 1));
    check_ring_axioms_sampled(make_heisenberg(3, 1), 10000);
    check_ring_axioms_sampled(make_level0(3, 1), 10000);
    check_ring_axioms_sampled(make_ramified(3, 1), 10000);
}

TEST_CASE("heisenberg law matches literal 3x3 matrix multiplication") {
    auto R2 = make_heisenberg(2, 1);
    const long long n2 = R2.order();
    for (int x = 0; x < n2; ++x)
        for (int y = 0; y < n2; ++y) {
            Mat3 lhs = Mat3::pattern(R2, R2.mul(x, y));
            Mat3 rhs = Mat3::pattern(R2, x) * Mat3::pattern(R2, y);
            REQUIRE(lhs == rhs);
        }
    auto R3 = make_heisenberg(3, 1);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> dist(0, R3.order() - 1);
    for (int i = 0; i < 5000; ++i) {
        int x = static_cast<int>(dist(rng)), y = static_cast<int>(dist(rng));
        REQUIRE(Mat3::pattern(R3, R3.mul(x, y)) == (Mat3::pattern(R3, x) * Mat3::pattern(R3, y)));
    }
}

template <typename R>
static void check_nu_nondegenerate(const R& ring) {
    const long long n = ring.order();
    for (int x = 1; x < n; ++x) {
        bool found = false;
        for (int y = 0; y < n && !found; ++y)
            if (ring.nu_exponent_of_product(x, y) != 0) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("nu is a nondegenerate additive character (exhaustive q <= 4)") {
    check_nu_nondegenerate(make_ramified(2, 1));
    check_nu_nondegenerate(make_ramified(3, 1));
    check_nu_nondegenerate(make_heisenberg(2, 1));
    check_nu_nondegenerate(make_heisenberg(3, 1));
    check_nu_nondegenerate(make_heisenberg(2, 2));
    check_nu_nondegenerate(make_level0(2, 1));
    check_nu_nondegenerate(make_level0(3, 1));
}

TEST_CASE("nu(xy) = nu(yx) on all three rings (q = 2, 3 exhaustive)") {
    auto check = [](const auto& ring) {
        const long long n = ring.order();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                REQUIRE(ring.nu_exponent_of_product(x, y) == ring.nu_exponent_of_product(y, x));
    };
    check(make_ramified(3, 1));
    check(make_heisenberg(2, 1));
    check(make_level0(2, 1));
}

TEST_CASE("center of the heisenberg unit group is k^x U") {
    for (int p : {2, 3}) {
        auto R = make_heisenberg(p, 1);
        auto G = R.unit_group();
        auto Z = G.center();
        std::set<int> expected;
        for (int a : R.scalars())
            for (int u : R.subgroup_U()) expected.insert(R.mul(a, u));
        CHECK(std::set<int>(Z.begin(), Z.end()) == expected);
    }
}

TEST_CASE("sylow subgroup: U is its center, commutators land in U1") {
    for (int p : {2, 3}) {
        auto R = make_heisenberg(p, 1);
        auto H = R.sylow_H();
        EnumeratedGroup GH(
            H, [&R](int a, int b) { return R.mul(a, b); },
            [&R](int a) { return R.inverse(a); }, R.one());
        auto Z = GH.center();
        auto U = R.subgroup_U();
        CHECK(std::set<int>(Z.begin(), Z.end()) == std::set<int>(U.begin(), U.end()));
        auto U1 = R.subgroup_U1();
        std::set<int> u1set(U1.begin(), U1.end());
        for (int a : H)
            for (int b : H) {
                int comm = R.mul(R.mul(a, b), R.inverse(R.mul(b, a)));
                REQUIRE(u1set.count(comm) == 1);
            }
        CHECK(U.size() == static_cast<std::size_t>(R.q() * R.q()));
        CHECK(U1.size() == static_cast<std::size_t>(R.q()));
    }
}

TEST_CASE("every unit factors uniquely as torus * sylow") {
    for (int p : {2, 3}) {
        auto R = make_heisenberg(p, 1);
        auto T = R.torus();
        auto H = R.sylow_H();
        std::set<int> tset(T.begin(), T.end()), hset(H.begin(), H.end());
        auto units = R.units();
        for (int x : units) {
            auto [t, h] = R.torus_sylow_factor(x);
            REQUIRE(tset.count(t) == 1);
            REQUIRE(hset.count(h) == 1);
            REQUIRE(R.mul(t, h) == x);
        }
        // |T| * |H| = |units| makes the factorization a bijection
        CHECK(units.size() == T.size() * H.size());
    }
}

TEST_CASE("conjugacy classes of the unit group, q = 2") {
    auto R = make_heisenberg(2, 1);
    auto G = R.unit_group();
    auto classes = G.conjugacy_classes();
    long long total = 0;
    for (auto& cls : classes) total += static_cast<long long>(cls.size());
    CHECK(total == 48);

    const Field& k2 = R.k2();
    // central elements give singleton classes and vice versa
    std::set<int> central;
    for (int a : R.scalars())
        for (int u : R.subgroup_U()) central.insert(R.mul(a, u));
    for (auto& cls : classes) {
        if (cls.size() == 1) REQUIRE(central.count(cls[0]) == 1);
        int alpha = R.alpha_of(cls[0]);
        if (!k2.in_base(alpha)) {
            CHECK(cls.size() == 4);  // q^2
            bool has_tu = false;     // some member of the form [a,0,c] = [a,0,0][1,0,a^-1 c]
            for (int x : cls)
                if (R.beta_of(x) == 0) has_tu = true;
            CHECK(has_tu);
        }
    }
}

TEST_CASE("defect map: value on U, normalized additivity, kernel size") {
    for (int p : {2, 3}) {
        auto R = make_heisenberg(p, 1);
        const Field& k2 = R.k2();
        const Field& k = R.k();
        const int q = R.q();

        for (int c = 0; c < k2.size(); ++c)
            CHECK(R.defect(R.encode(1, 0, c)) == k2.rel_trace(c));

        auto units = R.units();
        for (int x : units)
            for (int y : units)
                REQUIRE(R.defect_normalized(R.mul(x, y)) ==
                        k.add(R.defect_normalized(x), R.defect_normalized(y)));

        auto R1 = R.form_kernel();
        CHECK(static_cast<long long>(R1.size()) ==
              static_cast<long long>(q * q - 1) * q * q * q);

        std::set<int> images;
        for (int x : units) images.insert(R.defect_normalized(x));
        CHECK(images.size() == static_cast<std::size_t>(q));  // delta-bar onto k
    }
}

TEST_CASE("hermitian form identity: M* Phi M = N(alpha) Phi + delta E33") {
    for (int p : {2, 3}) {
        auto R = make_heisenberg(p, 1);
        const Field& k2 = R.k2();
        Mat3 Phi = Mat3::hermitian_form(k2);
        auto units = R.units();
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<std::size_t> dist(0, units.size() - 1);
        const int samples = p == 2 ? static_cast<int>(units.size()) : 2000;
        for (int i = 0; i < samples; ++i) {
            int x = p == 2 ? units[i] : units[dist(rng)];
            Mat3 M = Mat3::pattern(R, x);
            Mat3 lhs = M.star() * Phi * M;
            Mat3 rhs = Phi;
            int nrm = k2.embed(k2.rel_norm(R.alpha_of(x)));
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) rhs.e[r][c] = k2.mul(nrm, rhs.e[r][c]);
            rhs.e[2][2] = k2.add(rhs.e[2][2], k2.embed(R.defect(x)));
            REQUIRE(lhs == rhs);
        }
        // zero-defect units scale the form exactly
        for (int x : R.form_kernel()) {
            Mat3 M = Mat3::pattern(R, x);
            Mat3 lhs = M.star() * Phi * M;
            Mat3 rhs = Phi;
            int nrm = k2.embed(k2.rel_norm(R.alpha_of(x)));
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) rhs.e[r][c] = k2.mul(nrm, rhs.e[r][c]);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("level-zero unit group has order |GL2(k)| * (q^2 - 1)") {
    auto R = make_level0(3, 1);
    CHECK(R.units().size() == static_cast<std::size_t>(48 * 8));
    CHECK(R.gl2_elements().size() == 48u);
}
