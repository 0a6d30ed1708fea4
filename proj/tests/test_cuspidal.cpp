#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "ringfe/cuspidal.hpp"
#include "ringfe/representation.hpp"

using namespace ringfe;

namespace {

LevelZeroRing make_level0(int p, int f) {
    const Field& k2 = Field::get(p, f, 2);
    return LevelZeroRing(k2, AdditiveCharacter(k2.base(), 1));
}

ClassFunction as_class_function(const EnumeratedGroup& G, const std::vector<cplx>& by_mat_id) {
    return ClassFunction::from(G, [&by_mat_id](int m) { return by_mat_id[m]; });
}

}  // namespace

TEST_CASE("cuspidal character at q=2 is the sign character of GL2(F2)") {
    auto R = make_level0(2, 1);
    MultiplicativeCharacter theta(R.k2(), 1);
    auto chi = cuspidal_character(R, theta);
    auto G = R.gl2_group();
    for (int m : G.elements()) {
        auto info = classify_gl2(R, m);
        double expect = info.type == Gl2ClassType::Unipotent ? -1.0 : 1.0;
        REQUIRE(std::abs(chi[m] - cplx(expect)) < 1e-12);
    }
}

TEST_CASE("cuspidal characters are constant on conjugacy classes") {
    auto R = make_level0(3, 1);
    auto G = R.gl2_group();
    auto classes = G.conjugacy_classes();
    for (int idx : regular_theta_indices(R.k2())) {
        auto chi = cuspidal_character(R, MultiplicativeCharacter(R.k2(), idx));
        for (auto& cls : classes)
            for (int m : cls) REQUIRE(std::abs(chi[m] - chi[cls[0]]) < 1e-10);
    }
}

TEST_CASE("cuspidal characters: chi(1) = q - 1 and <chi, chi> = 1 for all regular theta, q <= 5") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto R = make_level0(p, f);
        auto G = R.gl2_group();
        const int q = R.q();
        for (int idx : regular_theta_indices(R.k2())) {
            auto chi_vec = cuspidal_character(R, MultiplicativeCharacter(R.k2(), idx));
            REQUIRE(std::abs(chi_vec[R.encode_mat(1, 0, 0, 1)] - cplx(double(q - 1))) < 1e-10);
            auto chi = as_class_function(G, chi_vec);
            REQUIRE(std::abs(inner_product(chi, chi) - cplx(1.0)) < 1e-8);
        }
    }
}

TEST_CASE("cuspidal characters are Frobenius symmetric: chi_theta = chi_{theta^q}") {
    auto R = make_level0(3, 1);
    for (int idx : regular_theta_indices(R.k2())) {
        MultiplicativeCharacter theta(R.k2(), idx);
        auto a = cuspidal_character(R, theta);
        auto b = cuspidal_character(R, theta.frobenius_twist());
        for (std::size_t m = 0; m < a.size(); ++m) REQUIRE(std::abs(a[m] - b[m]) < 1e-10);
    }
}

TEST_CASE("cuspidal characters are orthogonal to every principal-series character") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {5, 1}}) {
        auto R = make_level0(p, f);
        auto G = R.gl2_group();
        const Field& k = R.k();
        std::vector<ClassFunction> ps;
        for (int c1 = 0; c1 < k.size() - 1; ++c1)
            for (int c2 = 0; c2 < k.size() - 1; ++c2)
                ps.push_back(as_class_function(
                    G, principal_series_character(R, MultiplicativeCharacter(k, c1),
                                                  MultiplicativeCharacter(k, c2))));
        for (int idx : regular_theta_indices(R.k2(), /*orbit_reps_only=*/true)) {
            auto chi = as_class_function(G, cuspidal_character(R, MultiplicativeCharacter(R.k2(), idx)));
            for (auto& pschi : ps) REQUIRE(std::abs(inner_product(chi, pschi)) < 1e-8);
        }
    }
}

TEST_CASE("cuspidal character rejects non-regular theta") {
    auto R = make_level0(3, 1);
    CHECK_THROWS_AS(cuspidal_character(R, MultiplicativeCharacter(R.k2(), 0)), std::invalid_argument);
    CHECK_THROWS_AS(cuspidal_character(R, MultiplicativeCharacter(R.k2(), R.q() + 1)),
                    std::invalid_argument);
}

// matrix-level oracle: the central idempotent of chi_theta in the regular
// representation is idempotent of rank (q-1)^2 and reproduces the character
TEST_CASE("central idempotent projection oracle, q = 2 and 3") {
    for (int p : {2, 3}) {
        auto R = make_level0(p, 1);
        auto G = R.gl2_group();
        const int n = G.size();
        const int q = R.q();
        auto chi = cuspidal_character(R, MultiplicativeCharacter(R.k2(), 1));

        auto perm = [&G, n](int g) {
            Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                int img = G.mul(g, G.element(j));
                P(G.position(img), j) = 1.0;
            }
            return P;
        };
        Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
        for (int g : G.elements()) E += std::conj(chi[g]) * perm(g);
        E *= cplx(double(q - 1)) / double(n);

        REQUIRE((E * E - E).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE(std::abs(E.trace() - cplx(double((q - 1) * (q - 1)))) < 1e-8);
        for (int g : {G.element(0), G.element(1), G.element(n / 2), G.element(n - 1)})
            REQUIRE(std::abs((E * perm(g)).trace() - cplx(double(q - 1)) * chi[g]) < 1e-8);
    }
}

TEST_CASE("level-zero character function: values and irreducibility on the product group") {
    for (int p : {2, 3}) {
        auto R = make_level0(p, 1);
        const int q = R.q();
        MultiplicativeCharacter theta(R.k2(), 1);
        auto f = level_zero_character_function(R, theta);

        CHECK(std::abs(f[R.one()] - cplx(double(q - 1))) < 1e-10);
        // central (z, z), z in k^x: (q-1) theta(z) theta(z)^-1 = q - 1
        for (int z = 1; z < q; ++z) {
            int x = R.encode(R.encode_mat(z, 0, 0, z), R.k2().embed(z));
            CHECK(std::abs(f[x] - cplx(double(q - 1))) < 1e-10);
        }
        auto units = R.unit_group();
        auto chi = ClassFunction::from(units, [&f](int x) { return f[x]; });
        CHECK(std::abs(inner_product(chi, chi) - cplx(1.0)) < 1e-8);
    }
}

TEST_CASE("k2 component transform of theta^-1 is q^-1 tau(theta^-1, nu^-1) theta") {
    for (int p : {2, 3}) {
        auto R = make_level0(p, 1);
        const Field& k2 = R.k2();
        for (int idx : regular_theta_indices(k2)) {
            MultiplicativeCharacter theta(k2, idx);
            auto ti = theta.inverse();
            std::vector<cplx> f(k2.size(), cplx(0.0));
            for (int x = 1; x < k2.size(); ++x) f[x] = ti(x);
            auto F = k2_component_transform(R, f);
            cplx tau = gauss_sum(ti, R.nu_k().inverse());
            for (int y = 0; y < k2.size(); ++y) {
                cplx expect = y == 0 ? cplx(0.0) : tau / double(R.q()) * theta(y);
                REQUIRE(std::abs(F[y] - expect) < 1e-9);
            }
        }
    }
}

TEST_CASE("gl2 component transform: -tau(theta,nu) f(y^-1) on GL2, zero off GL2") {
    for (int p : {2, 3}) {
        auto R = make_level0(p, 1);
        const Field& k = R.k();
        const int q = k.size();
        const long long nmat = static_cast<long long>(q) * q * q * q;
        for (int idx : regular_theta_indices(R.k2())) {
            MultiplicativeCharacter theta(R.k2(), idx);
            auto f = cuspidal_character(R, theta);
            auto F = gl2_component_transform(R, f);
            cplx tau = gauss_sum(theta, R.nu_k());
            for (int y = 0; y < nmat; ++y) {
                cplx expect =
                    R.mat_det(y) == 0 ? cplx(0.0) : -tau * f[R.mat_inverse(y)];
                REQUIRE(std::abs(F[y] - expect) < 1e-9);
            }
        }
    }
}
