// Acceptance gate: one line per criterion, exit 0 only when every
// criterion holds at its stated tolerance and within its runtime budget.
//
//   1  ramified functional equation, eps = +1, q in {2,3,4,5,7,8,9}
//   2  unramified functional equation, eps = -1, q in {2,3} all psi
//      and q in {4,5} one psi
//   3  level-zero functional equation, eps = -1, with the exact
//      GL2-factor identity for q in {2,3}
//   4  Gauss-sum pair identity and |tau| = q for every regular theta, q <= 9
//   5  torus restriction multiplicities, q in {2,3}, all psi
//   6  trace reduction: three routes agree at -q; conjugacy census
//   7  dimension bookkeeping and uniqueness of the Heisenberg irrep
//   8  lattice-model lemma suite (exact), p in {2,3}
//   9  negative controls fail loudly
//
// --fast skips the q in {4,5} sweeps of criteria 2 and 3.

#include <chrono>
#include <cstring>
#include <iostream>

#include "ringfe/suite.hpp"

using namespace ringfe;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string what)
        : number_(number), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}

    void record(bool ok, const std::string& detail = "") {
        ok_ = ok_ && ok;
        if (!ok && detail_.empty()) detail_ = detail;
    }
    void budget(double seconds) { budget_ = seconds; }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        bool ok = ok_;
        std::string note = detail_;
        if (budget_ > 0 && secs > budget_) {
            ok = false;
            note = "runtime " + std::to_string(secs) + " s over budget " +
                   std::to_string(budget_) + " s";
        }
        if (!ok) ++failures;
        std::printf("criterion %d: %s  %-52s (%.2f s)%s%s\n", number_, ok ? "PASS" : "FAIL",
                    what_.c_str(), secs, note.empty() ? "" : "  -- ", note.c_str());
        std::fflush(stdout);
    }

private:
    int number_;
    std::string what_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    double budget_ = 0;
    std::string detail_;
};

std::string describe(const CheckResult& c) { return c.name + " " + c.params.dump(); }

}  // namespace

int main(int argc, char** argv) {
    bool fast = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--fast") == 0) fast = true;

    // 1: ramified, every nontrivial Psi, support < 1e-10 and match < 1e-9,
    //    under one second per q
    {
        Criterion crit(1, "ramified FE, eps=+1, q in {2..9}, all Psi, 20 translates");
        for (auto [p, f] : default_grid("ramified", false)) {
            const auto t0 = std::chrono::steady_clock::now();
            const Field& k = Field::get(p, f, 1);
            for (int shift = 1; shift < k.size(); ++shift) {
                FeOptions opt;
                auto res = verify::ramified_fe(p, f, shift, opt);
                crit.record(res.pass, describe(res));
            }
            const double per_q =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            crit.record(per_q < 1.0, "q=" + std::to_string(k.size()) + " runtime " +
                                         std::to_string(per_q) + " s over the 1 s budget");
        }
    }

    // 2: unramified, all psi for q in {2,3} (5 s budget), one psi for q in
    //    {4,5} (3 minute budget for the dense q=5 transforms)
    {
        Criterion crit(2, fast ? "unramified FE, eps=-1, q in {2,3}, all psi (fast mode)"
                               : "unramified FE, eps=-1, q in {2,3} all psi; q in {4,5} one psi");
        {
            const auto t0 = std::chrono::steady_clock::now();
            for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
                const Field& k2 = Field::get(p, f, 2);
                HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
                for (int b : admissible_psi_params(ring)) {
                    auto res = verify::unramified_fe(p, f, b, {});
                    crit.record(res.pass, describe(res));
                }
            }
            const double small_q =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            crit.record(small_q < 5.0, "q <= 3 runtime over the 5 s budget");
        }
        if (!fast) {
            crit.budget(185.0);
            for (auto [p, f] : {std::pair{2, 2}, {5, 1}}) {
                const Field& k2 = Field::get(p, f, 2);
                HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
                auto res = verify::unramified_fe(p, f, admissible_psi_params(ring).front(), {});
                crit.record(res.pass, describe(res));
            }
        }
    }

    // 3: level zero, all regular theta for q in {2,3} plus the exact
    //    GL2-factor identity; one theta for q in {4,5}
    {
        Criterion crit(3, fast ? "level-zero FE and GL2 factor, q in {2,3} (fast mode)"
                               : "level-zero FE, q in {2,3} all theta + GL2 factor; q in {4,5}");
        for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
            const Field& k2 = Field::get(p, f, 2);
            for (int idx : regular_theta_indices(k2)) {
                auto res = verify::level0_fe(p, f, idx, {});
                crit.record(res.pass, describe(res));
                auto gl2 = verify::gl2_component(p, f, idx, {});
                crit.record(gl2.pass && gl2.max_abs_error < 1e-9, describe(gl2));
            }
        }
        if (!fast) {
            for (auto [p, f] : {std::pair{2, 2}, {5, 1}}) {
                const Field& k2 = Field::get(p, f, 2);
                auto res = verify::level0_fe(p, f, regular_theta_indices(k2).front(), {});
                crit.record(res.pass, describe(res));
            }
        }
    }

    // 4: Gauss sums
    {
        Criterion crit(4, "gauss pair identity tau tau' = q^2 and |tau| = q, q <= 9");
        crit.budget(1.0);
        for (auto [p, f] : default_grid("ramified", false)) {
            const Field& k2 = Field::get(p, f, 2);
            const Field& k = k2.base();
            const double q = k.size();
            for (int shift = 1; shift < k.size(); ++shift) {
                AdditiveCharacter nu(k, shift);
                for (int m = 0; m < k2.size() - 1; ++m) {
                    MultiplicativeCharacter theta(k2, m);
                    if (!is_regular_by_index(theta)) continue;
                    const cplx tau = gauss_sum(theta, nu);
                    const cplx prod = tau * gauss_sum(theta.inverse(), nu.inverse());
                    crit.record(std::abs(prod - cplx(q * q, 0)) < 1e-9,
                                "pair product off at q=" + std::to_string(k.size()));
                    crit.record(std::abs(std::abs(tau) - q) < 1e-9,
                                "|tau| off at q=" + std::to_string(k.size()));
                }
            }
        }
    }

    // 5: torus multiplicities
    {
        Criterion crit(5, "torus multiplicities: one on the q twisted characters, else zero");
        for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
            const Field& k2 = Field::get(p, f, 2);
            HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
            for (int b : admissible_psi_params(ring)) {
                auto res = verify::torus_multiplicity(p, f, b, {});
                crit.record(res.pass, describe(res));
            }
        }
    }

    // 6: trace reduction and the conjugacy census
    {
        Criterion crit(6, "trace reduction: three routes equal -q; classes of size q^2");
        for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
            const Field& k2 = Field::get(p, f, 2);
            HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
            for (int b : admissible_psi_params(ring)) {
                auto res = verify::trace_reduction(p, f, b, {});
                crit.record(res.pass, describe(res));
            }
        }
    }

    // 7: dimension bookkeeping and uniqueness
    {
        Criterion crit(7, "dim rho = q, sum = q^2(q-1), irreducibility, uniqueness");
        for (auto [p, f] : {std::pair{2, 1}, {3, 1}}) {
            const Field& k2 = Field::get(p, f, 2);
            HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
            const int q = ring.q();
            auto units = ring.unit_group();
            long long total = 0;
            for (int b : admissible_psi_params(ring)) {
                WeilRepresentation rho(ring, b);
                crit.record(rho.dim() == q, "dimension mismatch");
                total += rho.dim();
                auto chi = character_of(rho.to_representation(units));
                crit.record(std::abs(inner_product(chi, chi) - cplx(1.0)) < 1e-8,
                            "character not irreducible");
            }
            crit.record(total == static_cast<long long>(q) * q * (q - 1), "dimension sum");

            // uniqueness: two polarizations and two extension branches
            EnumeratedGroup H(ring.sylow_H(), [&ring](int a, int b) { return ring.mul(a, b); },
                              [&ring](int a) { return ring.inverse(a); }, ring.one());
            const int b0 = admissible_psi_params(ring).front();
            auto c0 = character_of(heisenberg_irrep(ring, H, b0, {1, 0}));
            auto c1 = character_of(heisenberg_irrep(ring, H, b0, {1, 1}));
            auto c2 = character_of(heisenberg_irrep(ring, H, b0, {k2.generator(), 0}));
            for (int g : H.elements()) {
                crit.record(std::abs(c0(g) - c1(g)) < 1e-8, "extension changed the character");
                crit.record(std::abs(c0(g) - c2(g)) < 1e-8, "polarization changed the character");
            }
        }
    }

    // 8: the lattice suite, exact
    {
        Criterion crit(8, "lattice lemmas: duality, tables, linking order, quotient isos");
        crit.budget(10.0);
        for (int p : {2, 3}) {
            for (int n : {1, 3})
                for (auto& c : lattice::run_lattice_checks({p, 2, n, 0}))
                    crit.record(c.pass, describe(c));
            for (int n : {1, 2, 3})
                for (auto& c : lattice::run_lattice_checks({p, 1, n, 0}))
                    crit.record(c.pass, describe(c));
            for (auto& c : lattice::run_lattice_checks({p, 1, 0, 0}))
                crit.record(c.pass, describe(c));
        }
    }

    // 9: negative controls
    {
        Criterion crit(9, "negative controls: corrupted rho fails; bad parameters throw");
        FeOptions corrupt;
        corrupt.corrupt_sign = true;
        corrupt.translate_samples = 2;
        auto a = verify::ramified_fe(3, 1, 1, corrupt);
        crit.record(!a.pass && a.witness.has_value(), "corrupted ramified check passed silently");
        auto b = verify::unramified_fe(2, 1, 2, corrupt);
        crit.record(!b.pass && b.witness.has_value(), "corrupted unramified check passed silently");
        auto c = verify::level0_fe(2, 1, 1, corrupt);
        crit.record(!c.pass && c.witness.has_value(), "corrupted level0 check passed silently");

        bool threw = false;
        try {
            verify::level0_fe(3, 1, 4, {});  // theta with index q+1 factors through the norm
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        crit.record(threw, "non-regular theta did not raise the documented error");
        threw = false;
        try {
            verify::unramified_fe(2, 1, 1, {});  // b = 1 lies in k: psi trivial on U^1
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        crit.record(threw, "psi trivial on U^1 did not raise the documented error");
    }

    std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                      : "acceptance: FAILURES present");
    return failures == 0 ? 0 : 1;
}
