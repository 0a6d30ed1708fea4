#pragma once

// Suite orchestration: resolves the parameter grid for a case, validates it
// up front (invalid configurations never partially execute), runs the
// checks on a small worker pool, and assembles the JSON report.  Execution
// order never affects results: every check seeds its own generator from the
// global seed and its parameters.

#include <atomic>
#include <functional>
#include <thread>

#include "lattice/checks.hpp"
#include "verification.hpp"

namespace ringfe {

inline void validate_case_entry(const std::string& suite_case, int p, int f) {
    if (!is_prime(p) || p > 13)
        throw std::invalid_argument("p must be prime with 2 <= p <= 13");
    if (f < 1) throw std::invalid_argument("f must be positive");
    long long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    if (suite_case == "ramified") {
        if (q * q > kDftOrderCap)
            throw std::invalid_argument("size cap: the ramified ring q^2 exceeds the dense transform cap");
        return;
    }
    if (suite_case == "unramified" || suite_case == "level0") {
        if (q * q > 256)
            throw std::invalid_argument("size cap: q^2 = " + std::to_string(q * q) +
                                        " exceeds the 256-element cap for the quadratic tower");
        if (q * q * q * q * q * q > kDftOrderCap)
            throw std::invalid_argument("size cap: the q^6 ring exceeds the dense transform cap (q <= 5)");
        return;
    }
    if (suite_case == "lattice") {
        if (f != 1) throw std::invalid_argument("the lattice model runs over prime residue fields (f = 1)");
        return;
    }
    throw std::invalid_argument("unknown case: " + suite_case);
}

namespace suite_detail {

using Task = std::function<std::vector<CheckResult>()>;

inline void add_fe_tasks(std::vector<Task>& tasks, const SuiteConfig& cfg,
                         const std::string& kase, int p, int f,
                         const std::optional<int>& only_param) {
    FeOptions opt = cfg.fe;
    opt.corrupt_sign = cfg.corrupt_sign;
    const Field& k = Field::get(p, f, 1);
    const int q = k.size();

    if (kase == "ramified") {
        std::vector<int> shifts;
        if (only_param)
            shifts.push_back(*only_param);
        else
            for (int s = 1; s < q; ++s) shifts.push_back(s);
        for (int s : shifts)
            tasks.push_back([=] { return std::vector<CheckResult>{verify::ramified_fe(p, f, s, opt)}; });
        return;
    }

    if (kase == "unramified") {
        const Field& k2 = Field::get(p, f, 2);
        HeisenbergRing ring(k2, AdditiveCharacter(k2.base(), 1));
        std::vector<int> bs = admissible_psi_params(ring);
        if (only_param)
            bs = {*only_param};
        else if (q > 3)
            bs.resize(1);  // the big rings run a single psi
        for (int b : bs) {
            tasks.push_back(
                [=] { return std::vector<CheckResult>{verify::unramified_fe(p, f, b, opt)}; });
            if (q <= 3) {
                tasks.push_back(
                    [=] { return std::vector<CheckResult>{verify::trace_reduction(p, f, b, opt)}; });
                tasks.push_back([=] {
                    return std::vector<CheckResult>{verify::torus_multiplicity(p, f, b, opt)};
                });
            }
        }
        return;
    }

    if (kase == "level0") {
        const Field& k2 = Field::get(p, f, 2);
        std::vector<int> thetas = regular_theta_indices(k2);
        if (only_param) {
            MultiplicativeCharacter theta(k2, *only_param);
            if (!is_regular(theta))
                throw std::invalid_argument("theta index " + std::to_string(*only_param) +
                                            " is not regular (it factors through the norm)");
            thetas = {*only_param};
        } else if (q > 3) {
            thetas.resize(1);
        }
        for (int t : thetas) {
            tasks.push_back(
                [=] { return std::vector<CheckResult>{verify::level0_fe(p, f, t, opt)}; });
            if (q <= 3)
                tasks.push_back(
                    [=] { return std::vector<CheckResult>{verify::gl2_component(p, f, t, opt)}; });
        }
        return;
    }
}

inline void add_lattice_tasks(std::vector<Task>& tasks, int p, std::optional<int> e_sel,
                              std::optional<int> n_sel) {
    std::vector<lattice::LatticeParams> grid;
    if (e_sel && n_sel) {
        grid.push_back({p, *e_sel, *n_sel, 0});
    } else {
        for (int n : {1, 3}) grid.push_back({p, 2, n, 0});
        for (int n : {1, 2, 3}) grid.push_back({p, 1, n, 0});
        grid.push_back({p, 1, 0, 0});  // level zero
    }
    for (auto par : grid)
        tasks.push_back([par] { return lattice::run_lattice_checks(par); });
}

}  // namespace suite_detail

struct SuiteSelection {
    std::optional<int> psi_shift;    // ramified twist
    std::optional<int> psi_b;        // unramified parameter
    std::optional<int> theta_index;  // level-zero parameter
    std::optional<int> lattice_e;
    std::optional<int> lattice_n;
};

inline Report run_suite(const SuiteConfig& cfg, const SuiteSelection& sel = {}) {
    const std::vector<std::string> cases =
        cfg.suite_case == "all"
            ? std::vector<std::string>{"ramified", "unramified", "level0", "lattice"}
            : std::vector<std::string>{cfg.suite_case};

    // resolve and validate the whole grid before running anything
    std::vector<suite_detail::Task> tasks;
    for (const auto& kase : cases) {
        std::vector<std::pair<int, int>> grid =
            cfg.grid_explicit ? cfg.grid : default_grid(kase, cfg.extended);
        for (auto [p, f] : grid) {
            if (kase == "lattice" && cfg.suite_case == "all" && f != 1) continue;
            validate_case_entry(kase, p, f);
            if (kase == "lattice") {
                if (sel.lattice_e && *sel.lattice_e == 2 && sel.lattice_n && *sel.lattice_n % 2 == 0)
                    throw std::invalid_argument("ramified strata need odd n");
                suite_detail::add_lattice_tasks(tasks, p, sel.lattice_e, sel.lattice_n);
            } else {
                std::optional<int> only;
                if (kase == "ramified") only = sel.psi_shift;
                if (kase == "unramified") only = sel.psi_b;
                if (kase == "level0") only = sel.theta_index;
                suite_detail::add_fe_tasks(tasks, cfg, kase, p, f, only);
            }
        }
    }

    std::vector<std::vector<CheckResult>> results(tasks.size());
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mtx;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    results[i] = tasks[i]();
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int wkr = 0; wkr < jobs; ++wkr) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    Report rep;
    rep.config = cfg;
    for (auto& rs : results)
        for (auto& c : rs) rep.checks.push_back(std::move(c));
    return rep;
}

}  // namespace ringfe
