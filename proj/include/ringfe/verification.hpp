#pragma once

// The functional-equation check suites.  Each check builds the relevant
// character f, forms the test set {f} together with sampled two-sided
// translates L_g R_h f, and verifies both halves of
//
//     F f  supported on units,   F f(y) = eps * f(y^-1),
//
// with eps = +1 in the ramified case and -1 in the unramified and
// level-zero cases.  Failures carry a witness (the worst y and both
// sides).  Check results aggregate into a JSON report; runs are
// deterministic given the seed.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspidal.hpp"
#include "fourier.hpp"
#include "report.hpp"
#include "weil.hpp"

namespace ringfe {

struct FeOptions {
    int translate_samples = 20;
    std::uint64_t seed = 0;
    int workers = 1;
    double tolerance = 1e-9;  // base per-point tolerance; cases scale it as documented
    bool corrupt_sign = false;  // negative control: flips one character value
};

namespace verify_detail {

/// Support-and-match core shared by the three cases.
template <FiniteRingType R>
CheckResult fe_core(const std::string& name, json params, const R& ring, const RingFunction& f0,
                    double epsilon, double support_tol, double match_tol, const FeOptions& opt) {
    Timer timer;
    CheckResult res;
    res.name = name;
    res.params = std::move(params);

    RingFunction f = f0;
    if (opt.corrupt_sign) {
        for (int x = 0; x < static_cast<int>(ring.order()); ++x)
            if (ring.is_unit(x) && x != ring.one()) {
                f[x] = -f[x];
                break;
            }
    }

    std::mt19937_64 rng(opt.seed ^ fnv1a(name + res.params.dump()));
    auto units = ring.units();
    std::uniform_int_distribution<std::size_t> dist(0, units.size() - 1);

    double worst = 0.0;
    std::optional<json> witness;
    for (int t = 0; t <= opt.translate_samples; ++t) {
        RingFunction ft = f;
        int g = ring.one(), h = ring.one();
        if (t > 0) {
            g = units[dist(rng)];
            h = units[dist(rng)];
            ft = translate_left(ring, g, translate_right(ring, h, f));
        }
        auto F = dft(ring, ft, opt.workers);
        auto finv = compose_inverse(ring, ft);
        for (int y = 0; y < static_cast<int>(ring.order()); ++y) {
            const bool unit = ring.is_unit(y);
            const cplx rhs = unit ? epsilon * finv[y] : cplx(0.0);
            const double err = std::abs(F[y] - rhs);
            const double tol = unit ? match_tol : support_tol;
            worst = std::max(worst, err);
            if (err > tol && !witness) {
                witness = json{{"translate", json::array({g, h})},
                               {"y", y},
                               {"transform", cplx_json(F[y])},
                               {"expected", cplx_json(rhs)},
                               {"where", unit ? "match" : "support"}};
            }
        }
    }
    res.max_abs_error = worst;
    res.pass = !witness.has_value();
    res.witness = std::move(witness);
    res.elapsed_ms = timer.ms();
    return res;
}

}  // namespace verify_detail

namespace verify {

/// eps = +1 case on k[X]/(X^2), for one nontrivial Psi.
inline CheckResult ramified_fe(int p, int f, int psi_shift, const FeOptions& opt = {}) {
    const Field& k = Field::get(p, f, 1);
    RamifiedRing ring(k, AdditiveCharacter(k, psi_shift));
    auto rho = ramified_rho_function(ring);
    json params{{"case", "ramified"}, {"p", p},          {"f", f},
                {"q", k.size()},      {"psi_shift", psi_shift}, {"epsilon", 1}};
    return verify_detail::fe_core("ramified_fe", std::move(params), ring, rho, +1.0,
                                  /*support_tol=*/1e-10, /*match_tol=*/opt.tolerance, opt);
}

/// eps = -1 case on the Heisenberg ring, for one admissible psi parameter b.
/// Tolerances scale with sqrt(N) = q^3 as the sums grow.
inline CheckResult unramified_fe(int p, int f, int b, const FeOptions& opt = {}) {
    const Field& k2 = Field::get(p, f, 2);
    HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
    WeilRepresentation rho(ring, b);
    auto chr = rho.character_function();
    const double q3 = std::sqrt(static_cast<double>(ring.order()));
    json params{{"case", "unramified"}, {"p", p},     {"f", f},
                {"q", ring.q()},        {"psi_b", b}, {"epsilon", -1},
                {"dim", rho.dim()}};
    auto res = verify_detail::fe_core("unramified_fe", std::move(params), ring, chr, -1.0,
                                      /*support_tol=*/1e-8 * q3, /*match_tol=*/1e-8 * q3, opt);

    // the mechanism behind the support statement: a nontrivial u in U fixes
    // every non-unit under left multiplication
    if (res.pass) {
        const int q2 = k2.size();
        bool mech = true;
        for (int beta = 0; beta < q2 && mech; ++beta)
            for (int c = 0; c < q2 && mech; ++c) {
                const int y = ring.encode(0, beta, c);
                bool fixed_by_nontrivial = false;
                for (int u : ring.subgroup_U())
                    if (u != ring.one() && ring.mul(u, y) == y) { fixed_by_nontrivial = true; break; }
                if (!fixed_by_nontrivial) mech = false;
            }
        if (!mech) {
            res.pass = false;
            res.witness = json{{"where", "nonunit_fixing"}};
        }
    }
    return res;
}

/// eps = -1 case on M_2(k) x k2, for one regular theta.
inline CheckResult level0_fe(int p, int f, int theta_index, const FeOptions& opt = {}) {
    const Field& k2 = Field::get(p, f, 2);
    LevelZeroRing ring(k2, AdditiveCharacter(k2.base(), 1));
    MultiplicativeCharacter theta(k2, theta_index);
    auto chr = level_zero_character_function(ring, theta);
    const double q3 = std::sqrt(static_cast<double>(ring.order()));
    json params{{"case", "level0"}, {"p", p},
                {"f", f},           {"q", ring.q()},
                {"theta", theta_index}, {"epsilon", -1}};
    return verify_detail::fe_core("level0_fe", std::move(params), ring, chr, -1.0,
                                  /*support_tol=*/1e-8 * q3, /*match_tol=*/1e-8 * q3, opt);
}

/// The M_2(k)-factor identity  F1 f(y) = -tau(theta, nu) f(y^-1)  with the
/// q^-1-normalized component transform, plus the product bookkeeping that
/// recovers eps = -1 for the full ring.
inline CheckResult gl2_component(int p, int f, int theta_index, const FeOptions& opt = {}) {
    verify_detail::Timer timer;
    const Field& k2 = Field::get(p, f, 2);
    LevelZeroRing ring(k2, AdditiveCharacter(k2.base(), 1));
    MultiplicativeCharacter theta(k2, theta_index);
    const Field& k = ring.k();
    const int q = k.size();
    const long long nmat = static_cast<long long>(q) * q * q * q;

    CheckResult res;
    res.name = "gl2_component";
    res.params = json{{"case", "level0"}, {"p", p}, {"f", f}, {"q", q}, {"theta", theta_index}};

    auto f0 = cuspidal_character(ring, theta);
    if (opt.corrupt_sign) {
        for (int m = 0; m < nmat; ++m)
            if (ring.mat_det(m) != 0 && m != ring.encode_mat(1, 0, 0, 1) && std::abs(f0[m]) > 1e-12) {
                f0[m] = -f0[m];
                break;
            }
    }
    const cplx tau = gauss_sum(theta, ring.nu_k());

    std::mt19937_64 rng(opt.seed ^ verify_detail::fnv1a("gl2_component" + res.params.dump()));
    auto gl2 = ring.gl2_elements();
    std::uniform_int_distribution<std::size_t> dist(0, gl2.size() - 1);

    double worst = 0.0;
    std::optional<json> witness;
    for (int t = 0; t <= opt.translate_samples; ++t) {
        std::vector<cplx> ft = f0;
        int g = 0, h = 0;
        if (t > 0) {
            g = gl2[dist(rng)];
            h = gl2[dist(rng)];
            const int gi = ring.mat_inverse(g);
            std::vector<cplx> tmp(nmat);
            for (int y = 0; y < nmat; ++y) tmp[y] = f0[ring.mat_mul(ring.mat_mul(gi, y), h)];
            ft = std::move(tmp);
        }
        auto F = gl2_component_transform(ring, ft);
        for (int y = 0; y < nmat; ++y) {
            const bool unit = ring.mat_det(y) != 0;
            const cplx rhs = unit ? -tau * ft[ring.mat_inverse(y)] : cplx(0.0);
            const double err = std::abs(F[y] - rhs);
            worst = std::max(worst, err);
            if (err > opt.tolerance && !witness)
                witness = json{{"translate", json::array({g, h})},
                               {"y", y},
                               {"transform", verify_detail::cplx_json(F[y])},
                               {"expected", verify_detail::cplx_json(rhs)},
                               {"where", unit ? "match" : "support"}};
        }
    }

    // bookkeeping: the two component constants compose to eps = -1
    //   full transform = q^-3 Sigma1 Sigma2, Sigma1 = -q tau f1(inv),
    //   Sigma2 = tau' f2(inv), and tau tau' = q^2
    const cplx tau2 = gauss_sum(theta.inverse(), ring.nu_k().inverse());
    const cplx eps = (-static_cast<double>(q) * tau) * tau2 / cplx(q * q * q);
    const double book_err = std::abs(eps - cplx(-1.0));
    worst = std::max(worst, book_err);
    if (book_err > opt.tolerance && !witness)
        witness = json{{"where", "bookkeeping"}, {"eps", verify_detail::cplx_json(eps)}};

    res.max_abs_error = worst;
    res.pass = !witness.has_value();
    res.witness = std::move(witness);
    res.elapsed_ms = timer.ms();
    return res;
}

/// Three independent computations of F f(1) for f the Weil character:
/// (a) the transform at 1, (b) the conjugacy-class sum over classes with
/// eigenvalues outside k, (c) the closed double sum over T \ k^x and U.
/// All must equal -q; the class census is checked along the way.
inline CheckResult trace_reduction(int p, int f, int b, const FeOptions& opt = {}) {
    verify_detail::Timer timer;
    const Field& k2 = Field::get(p, f, 2);
    HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
    const int q = ring.q();

    CheckResult res;
    res.name = "trace_reduction";
    res.params = json{{"case", "unramified"}, {"p", p}, {"f", f}, {"q", q}, {"psi_b", b}};

    WeilRepresentation rho(ring, b);
    auto chr = rho.character_function();

    // (a) transform evaluated at 1
    auto F = dft(ring, chr, opt.workers);
    const cplx route_a = F[ring.one()];

    // (b) conjugacy-class sum, classes with alpha outside k only; the
    // dropped classes cancel along U^1-orbits, which is checked directly
    auto G = ring.unit_group();
    auto classes = G.conjugacy_classes();
    const double n3 = std::sqrt(static_cast<double>(ring.order()));
    cplx route_b = 0.0;
    bool census_ok = true;
    auto psi = psi_character(ring, b);
    for (auto& cls : classes) {
        const int rep = cls[0];
        if (k2.in_base(ring.alpha_of(rep))) continue;
        route_b += static_cast<double>(cls.size()) * rho.trace(rep) * ring.nu(rep);
        if (cls.size() != static_cast<std::size_t>(q) * q) census_ok = false;
        // representative of the form t u: some member with beta = 0
        bool found_tu = false;
        for (int x : cls)
            if (ring.beta_of(x) == 0) {
                found_tu = true;
                const int u = ring.encode(1, 0, k2.mul(k2.inv(ring.alpha_of(x)), ring.gamma_of(x)));
                if (std::abs(rho.trace(x) + psi(u)) > 1e-8) census_ok = false;  // value -psi(u)
                break;
            }
        if (!found_tu) census_ok = false;
    }
    route_b /= n3;
    cplx dropped = 0.0;
    for (int x : G.elements())
        if (k2.in_base(ring.alpha_of(x))) dropped += rho.trace(x) * ring.nu(x);
    dropped /= n3;

    // (c) closed form -(1/q) sum_{t in T \ k^x} sum_{u in U} psi(u) nu(t u)
    cplx route_c = 0.0;
    for (int t : ring.torus()) {
        if (k2.in_base(ring.alpha_of(t))) continue;
        for (int u : ring.subgroup_U()) route_c += psi(u) * ring.nu(ring.mul(t, u));
    }
    route_c /= -static_cast<double>(q);

    const cplx target(-static_cast<double>(q), 0.0);
    double worst = std::max({std::abs(route_a - target), std::abs(route_b - target),
                             std::abs(route_c - target), std::abs(dropped)});
    res.max_abs_error = worst;
    res.pass = worst < opt.tolerance && census_ok;
    if (!res.pass)
        res.witness = json{{"route_a", verify_detail::cplx_json(route_a)},
                           {"route_b", verify_detail::cplx_json(route_b)},
                           {"route_c", verify_detail::cplx_json(route_c)},
                           {"dropped_classes_sum", verify_detail::cplx_json(dropped)},
                           {"census_ok", census_ok}};
    res.elapsed_ms = timer.ms();
    return res;
}

/// Restriction of the Weil representation to the torus: multiplicity one
/// on each character trivial on k^x and nontrivial on T, zero elsewhere.
inline CheckResult torus_multiplicity(int p, int f, int b, const FeOptions& opt = {}) {
    (void)opt;  // the 1e-8 integrality residual is part of the contract, not tunable
    verify_detail::Timer timer;
    const Field& k2 = Field::get(p, f, 2);
    HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
    const int q = ring.q();
    const int torder = k2.size() - 1;

    CheckResult res;
    res.name = "torus_multiplicity";
    res.params = json{{"case", "unramified"}, {"p", p}, {"f", f}, {"q", q}, {"psi_b", b}};

    WeilRepresentation rho(ring, b);
    std::vector<int> torus_in_power_order;
    for (int m = 0; m < torder; ++m)
        torus_in_power_order.push_back(ring.encode(k2.pow(k2.generator(), m), 0, 0));
    auto mult = cyclic_restriction_multiplicities(
        torus_in_power_order, [&rho](int t) { return rho.trace(t); });

    double worst = 0.0;
    bool ok = true;
    int ones = 0;
    for (int j = 0; j < torder; ++j) {
        // character j is trivial on k^x iff (q-1) | j; nontrivial iff j != 0
        const int expected = (j != 0 && j % (q - 1) == 0) ? 1 : 0;
        const double resid = std::abs(mult[j] - cplx(expected));
        worst = std::max(worst, resid);
        if (resid > 1e-8) ok = false;
        if (expected == 1) ++ones;
    }
    res.max_abs_error = worst;
    res.pass = ok && ones == q;
    if (res.pass) {
        json m = json::array();
        for (auto& v : mult) m.push_back(static_cast<int>(std::lround(v.real())));
        res.params["multiplicities"] = m;
    } else {
        json m = json::array();
        for (auto& v : mult) m.push_back(verify_detail::cplx_json(v));
        res.witness = json{{"multiplicities", m}};
    }
    res.elapsed_ms = timer.ms();
    return res;
}

}  // namespace verify

// ---------------------------------------------------------------------------
// suite orchestration

struct SuiteConfig {
    std::string suite_case = "all";  // ramified | unramified | level0 | lattice | all
    std::vector<std::pair<int, int>> grid;  // (p, f) pairs; resolved by default_grid when empty
    bool grid_explicit = false;             // true when the user pinned p/f
    bool extended = false;
    FeOptions fe;
    int jobs = 1;
    bool corrupt_sign = false;  // negative-control mode

    json to_json() const {
        json g = json::array();
        for (auto& [p, f] : grid) g.push_back(json::array({p, f}));
        return json{{"case", suite_case},        {"grid", g},
                    {"extended", extended},      {"translate_samples", fe.translate_samples},
                    {"tolerance", fe.tolerance}, {"jobs", jobs},
                    {"corrupt_sign", corrupt_sign}};
    }
};

/// The default parameter grids: small-field sweeps for the q^6 rings, the
/// full list of prime powers up to 9 for the ramified case.
inline std::vector<std::pair<int, int>> default_grid(const std::string& suite_case, bool extended) {
    if (suite_case == "ramified")
        return {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
    if (suite_case == "unramified" || suite_case == "level0") {
        std::vector<std::pair<int, int>> g{{2, 1}, {3, 1}};
        if (extended) {
            g.push_back({2, 2});
            g.push_back({5, 1});
        }
        return g;
    }
    if (suite_case == "lattice") return {{2, 1}, {3, 1}};
    return {};
}

struct Report {
    SuiteConfig config;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    json to_json(bool include_timings = false) const {
        json j;
        j["suite"] = "verify";
        j["params"] = config.to_json();
        j["seed"] = config.fe.seed;
        j["tolerance"] = config.fe.tolerance;
        json cs = json::array();
        for (auto& c : checks) cs.push_back(check_to_json(c, include_timings));
        j["checks"] = cs;
        return j;
    }
};

}  // namespace ringfe
