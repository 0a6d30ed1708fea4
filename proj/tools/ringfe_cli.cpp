// Command-line front end.
//
//   ringfe verify --case all --p 2 --f 1        run the check suites
//   ringfe tables gauss --p 2 --f 1             Gauss-sum table (CSV/human)
//   ringfe tables character --p 3 --f 1         cuspidal character table
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
// validation error.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "ringfe/cuspidal.hpp"
#include "ringfe/suite.hpp"

namespace {

using namespace ringfe;

struct CliOptions {
    std::string suite_case = "all";
    int p = 0;
    int f = 1;
    int lattice_n = -1;
    int lattice_e = 0;
    int theta = -1;
    int psi_b = -1;
    int psi_shift = -1;
    int translates = 20;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string output;
    std::string format = "human";
    bool extended = false;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    bool timings = false;
    bool corrupt_sign = false;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::string csv_report(const Report& rep) {
    std::ostringstream os;
    os << "name,case,p,f,q,parameter,status,max_abs_error\n";
    for (const auto& c : rep.checks) {
        auto field = [&c](const char* key) {
            return c.params.contains(key) ? c.params[key].dump() : std::string();
        };
        std::string parameter;
        for (const char* key : {"psi_shift", "psi_b", "theta", "n"})
            if (c.params.contains(key)) parameter = c.params[key].dump();
        os << c.name << "," << (c.params.contains("case") ? c.params["case"].get<std::string>() : "lattice")
           << "," << field("p") << "," << field("f") << "," << field("q") << "," << parameter << ","
           << (c.pass ? "pass" : "fail") << "," << std::setprecision(12) << c.max_abs_error
           << "\n";
    }
    return os.str();
}

std::string human_report(const Report& rep, bool timings) {
    std::ostringstream os;
    os << "case " << rep.config.suite_case << ", seed " << rep.config.fe.seed << ", "
       << rep.checks.size() << " checks\n";
    for (const auto& c : rep.checks) {
        os << (c.pass ? "  pass  " : "  FAIL  ") << std::left << std::setw(28) << c.name;
        json p = c.params;
        p.erase("case");
        os << " " << p.dump();
        os << "  max_err " << std::scientific << std::setprecision(2) << c.max_abs_error;
        if (timings) os << "  (" << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms)";
        if (!c.pass && c.witness) os << "\n        witness: " << c.witness->dump();
        os << "\n";
    }
    int failed = 0;
    for (const auto& c : rep.checks)
        if (!c.pass) ++failed;
    os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) FAILED") << "\n";
    return os.str();
}

int cmd_verify(const CliOptions& opt) {
    SuiteConfig cfg;
    cfg.suite_case = opt.suite_case;
    if (opt.p != 0) {
        cfg.grid = {{opt.p, opt.f}};
        cfg.grid_explicit = true;
    }
    cfg.extended = opt.extended;
    cfg.fe.translate_samples = opt.translates;
    cfg.fe.seed = opt.seed;
    cfg.fe.tolerance = opt.tolerance;
    cfg.jobs = std::max(1, opt.jobs);
    cfg.corrupt_sign = opt.corrupt_sign;

    SuiteSelection sel;
    if (opt.psi_shift >= 0) sel.psi_shift = opt.psi_shift;
    if (opt.psi_b >= 0) sel.psi_b = opt.psi_b;
    if (opt.theta >= 0) sel.theta_index = opt.theta;
    if (opt.lattice_e > 0) sel.lattice_e = opt.lattice_e;
    if (opt.lattice_n >= 0) sel.lattice_n = opt.lattice_n;

    Report rep = run_suite(cfg, sel);

    if (opt.format == "json") {
        write_text(opt.output, rep.to_json(opt.timings).dump(2) + "\n");
    } else if (opt.format == "csv") {
        write_text(opt.output, csv_report(rep));
    } else {
        if (!opt.output.empty())  // a file target still gets the JSON report
            write_text(opt.output, rep.to_json(opt.timings).dump(2) + "\n");
        std::cout << human_report(rep, opt.timings);
    }
    return rep.all_pass() ? 0 : 1;
}

std::string format_complex(cplx z) {
    auto chop = [](double v) { return std::abs(v) < 1e-9 ? 0.0 : v; };
    std::ostringstream os;
    os << std::setprecision(6) << chop(z.real()) << (chop(z.imag()) < 0 ? "-" : "+")
       << std::abs(chop(z.imag())) << "i";
    return os.str();
}

int cmd_tables_gauss(const CliOptions& opt) {
    std::vector<std::pair<int, int>> grid;
    if (opt.p != 0)
        grid = {{opt.p, opt.f}};
    else
        grid = default_grid("ramified", false);  // the prime powers up to 9

    const int shift = opt.psi_shift >= 0 ? opt.psi_shift : 1;
    std::ostringstream csv;
    csv << "q,theta_index,nu_shift,re,im,abs,regular,pair_product_re,pair_product_im\n";
    for (auto [p, f] : grid) {
        const Field& k2 = Field::get(p, f, 2);
        const Field& k = k2.base();
        if (shift <= 0 || shift >= k.size())
            throw std::invalid_argument("nu shift must be a nonzero element of k");
        AdditiveCharacter nu(k, shift);
        for (int m = 0; m < k2.size() - 1; ++m) {
            MultiplicativeCharacter theta(k2, m);
            const cplx tau = gauss_sum(theta, nu);
            const cplx prod = tau * gauss_sum(theta.inverse(), nu.inverse());
            csv << k.size() << "," << m << "," << shift << "," << std::setprecision(12)
                << tau.real() << "," << tau.imag() << "," << std::abs(tau) << ","
                << (is_regular(theta) ? 1 : 0) << "," << prod.real() << "," << prod.imag()
                << "\n";
        }
    }
    if (opt.format == "human") {
        std::cout << "gauss sums tau(theta, nu), pair product tau * tau(theta^-1, nu^-1)\n";
        std::cout << csv.str();
    } else {
        write_text(opt.output, csv.str());
    }
    return 0;
}

int cmd_tables_character(const CliOptions& opt) {
    const int p = opt.p == 0 ? 2 : opt.p;
    const Field& k2 = Field::get(p, opt.f, 2);
    LevelZeroRing ring(k2, AdditiveCharacter(k2.base(), 1));
    auto G = ring.gl2_group();
    auto classes = G.conjugacy_classes();
    auto thetas = regular_theta_indices(k2, /*orbit_reps_only=*/true);

    std::vector<std::vector<cplx>> chi;
    for (int t : thetas) chi.push_back(cuspidal_character(ring, MultiplicativeCharacter(k2, t)));

    std::ostringstream csv;
    csv << "class_rep,class_size,type";
    for (int t : thetas) csv << ",theta_" << t << "_re,theta_" << t << "_im";
    csv << "\n";
    auto type_name = [](Gl2ClassType t) {
        switch (t) {
            case Gl2ClassType::Central: return "central";
            case Gl2ClassType::Unipotent: return "unipotent";
            case Gl2ClassType::Split: return "split";
            default: return "elliptic";
        }
    };
    for (const auto& cls : classes) {
        const int rep = cls[0];
        csv << rep << "," << cls.size() << "," << type_name(classify_gl2(ring, rep).type);
        for (std::size_t i = 0; i < thetas.size(); ++i)
            csv << "," << std::setprecision(12) << chi[i][rep].real() << ","
                << chi[i][rep].imag();
        csv << "\n";
    }

    if (opt.format == "human") {
        std::cout << "cuspidal characters of GL2(F_" << k2.base_size() << "), regular theta up to Frobenius\n";
        std::ostringstream os;
        os << std::left << std::setw(10) << "class" << std::setw(6) << "size" << std::setw(11)
           << "type";
        for (int t : thetas) os << std::setw(18) << ("theta_" + std::to_string(t));
        os << "\n";
        for (const auto& cls : classes) {
            const int rep = cls[0];
            os << std::left << std::setw(10) << rep << std::setw(6) << cls.size() << std::setw(11)
               << type_name(classify_gl2(ring, rep).type);
            for (std::size_t i = 0; i < thetas.size(); ++i)
                os << std::setw(18) << format_complex(chi[i][rep]);
            os << "\n";
        }
        std::cout << os.str();
    } else {
        write_text(opt.output, csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-ring Fourier functional equation checks and tables"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_common = [&opt](CLI::App* cmd, std::vector<std::string> formats) {
        cmd->add_option("--p", opt.p, "residue characteristic (prime)");
        cmd->add_option("--f", opt.f, "extension degree, q = p^f")->default_val(1);
        cmd->add_option("--output,-o", opt.output, "output file (default stdout)");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember(formats));
    };

    auto* verify = app.add_subcommand("verify", "run a check suite and emit a report");
    add_common(verify, {"human", "json", "csv"});
    verify->add_option("--case", opt.suite_case, "ramified | unramified | level0 | lattice | all")
        ->check(CLI::IsMember({"ramified", "unramified", "level0", "lattice", "all"}));
    verify->add_option("--n", opt.lattice_n, "stratum level for the lattice case");
    verify->add_option("--e", opt.lattice_e, "ramification degree for the lattice case")
        ->check(CLI::IsMember({1, 2}));
    verify->add_option("--theta", opt.theta, "single multiplicative character index (level0)");
    verify->add_option("--psi-b", opt.psi_b, "single psi parameter id (unramified)");
    verify->add_option("--shift", opt.psi_shift, "single additive twist (ramified), or nu shift");
    verify->add_option("--translates", opt.translates, "random two-sided translates per check")
        ->default_val(20);
    verify->add_option("--seed", opt.seed, "sampling seed recorded in the report")->default_val(0);
    verify->add_option("--tolerance", opt.tolerance, "base per-point tolerance")
        ->default_val(1e-9);
    verify->add_flag("--extended", opt.extended, "include the q = 4, 5 sweeps (minutes, not seconds)");
    verify->add_option("--jobs", opt.jobs, "worker threads (default: cores)");
    verify->add_flag("--timings", opt.timings,
                     "include real elapsed times in reports (breaks byte-for-byte reproducibility)");
    verify->add_flag("--corrupt-sign", opt.corrupt_sign,
                     "negative control: flip one character value and expect failures")
        ->group("");  // hidden

    auto* tables = app.add_subcommand("tables", "emit Gauss-sum or character tables");
    tables->require_subcommand(1);
    auto* gauss = tables->add_subcommand("gauss", "Gauss sums over the quadratic extension");
    add_common(gauss, {"human", "csv"});
    gauss->add_option("--shift", opt.psi_shift, "additive character twist (default 1)");
    auto* character = tables->add_subcommand("character", "cuspidal character table of GL2");
    add_common(character, {"human", "csv"});

    // environment override for the tolerance, the one documented variable
    if (const char* env = std::getenv("RINGFE_TOLERANCE")) opt.tolerance = std::atof(env);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(opt);
        if (gauss->parsed()) return cmd_tables_gauss(opt);
        if (character->parsed()) return cmd_tables_character(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
