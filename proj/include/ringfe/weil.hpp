#pragma once

// The q-dimensional representation rho of the Heisenberg ring's unit group
// R^x = T . H:  the unique irreducible representation V of the Sylow
// subgroup H over a character psi of the central subgroup U (nontrivial on
// U^1), extended to R^x by a normalized intertwiner W for the torus T.
//
//   psi_b([1,0,c]) = nu_k(Tr(b c)),  admissible exactly when b lies
//   outside k (equivalently psi_b is nontrivial on U^1).
//
// V is induced from any character extension of psi_b to a maximal abelian
// subgroup {[1, e t, c] : t in k}; the result is independent of the choice
// up to character equality, which the tests exercise.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fourier.hpp"
#include "representation.hpp"
#include "rings.hpp"

namespace ringfe {

/// All b with psi_b admissible: b in k2 \ k, in enumeration order (q^2 - q of them).
inline std::vector<int> admissible_psi_params(const HeisenbergRing& R) {
    std::vector<int> out;
    for (int b = 0; b < R.k2().size(); ++b)
        if (!R.k2().in_base(b)) out.push_back(b);
    return out;
}

/// psi_b as a function on U-element ids.
inline std::function<cplx(int)> psi_character(const HeisenbergRing& R, int b) {
    const Field& k2 = R.k2();
    const auto& nu = R.nu_k();
    auto zeta = root_of_unity_table(R.p());
    return [&R, &k2, &nu, b, zeta](int u) {
        return zeta[nu.exponent(k2.rel_trace(k2.mul(b, R.gamma_of(u))))];
    };
}

namespace weil_detail {

/// Extend a character chi of a subgroup U <= A (A abelian, elements shared
/// ids) to all of A.  Works one cyclic step at a time: adjoin the first
/// element a not yet covered, pick the branch-th m-th root of chi(a^m)
/// where m = [<K,a> : K], extend multiplicatively.  branch = 0 is the
/// canonical choice; other branches give the other extensions.
inline std::map<int, cplx> extend_character(const EnumeratedGroup& A, const std::vector<int>& U,
                                            const std::function<cplx(int)>& chi, int branch) {
    std::map<int, cplx> values;
    for (int u : U) values[u] = chi(u);
    if (!values.count(A.identity())) throw std::invalid_argument("extend_character: U lacks identity");
    while (static_cast<int>(values.size()) < A.size()) {
        int a = -1;
        for (int cand : A.elements())
            if (!values.count(cand)) { a = cand; break; }
        // order of a over the current subgroup
        int m = 1, pw = a;
        while (!values.count(pw)) {
            pw = A.mul(pw, a);
            ++m;
        }
        const cplx base = values.at(pw);  // chi(a^m)
        const double ang = (std::arg(base) + 2.0 * std::numbers::pi * branch) / m;
        const cplx xi = std::polar(1.0, ang);
        std::map<int, cplx> next = values;
        cplx xj = 1.0;
        int aj = A.identity();
        for (int j = 1; j < m; ++j) {
            xj *= xi;
            aj = A.mul(aj, a);
            for (const auto& [k, v] : values) next[A.mul(aj, k)] = xj * v;
        }
        values.swap(next);
    }
    return values;
}

}  // namespace weil_detail

struct SvnOptions {
    int polarization_direction = 1;  // e in k2^x: the maximal abelian subgroup {[1, e t, c]}
    int extension_branch = 0;        // which root branch the character extension takes
};

/// The unique irreducible representation of the Sylow subgroup H over
/// psi_b, realized on the coset space of a maximal abelian subgroup.
/// Throws std::invalid_argument when psi_b is trivial on U^1 (b in k):
/// the Heisenberg commutator pairing degenerates and no q-dimensional
/// representation over psi exists.
inline Representation heisenberg_irrep(const HeisenbergRing& R, const EnumeratedGroup& H, int b,
                                       SvnOptions opt = {}) {
    if (R.k2().in_base(b))
        throw std::invalid_argument(
            "heisenberg_irrep: psi is trivial on U^1 (parameter b lies in k); "
            "no admissible representation exists");
    auto mul = [&R](int x, int y) { return R.mul(x, y); };
    auto inv = [&R](int x) { return R.inverse(x); };
    EnumeratedGroup A(R.polarization(opt.polarization_direction), mul, inv, R.one());
    auto psi = psi_character(R, b);
    auto ext = weil_detail::extend_character(A, R.subgroup_U(), psi, opt.extension_branch);
    Representation chi_ext = one_dimensional(A, [&ext](int g) { return ext.at(g); });
    return induce(H, A, chi_ext);
}

/// rho on R^x in factorized form: rho(t0^m h) = W^m V(h) with t0 the
/// canonical torus generator.  Matrices are generated on demand; only the
/// H-table and the q^2 - 1 powers of W are stored.
class WeilRepresentation {
public:
    WeilRepresentation(const HeisenbergRing& R, int b, SvnOptions opt = {})
        : R_(&R),
          b_(b),
          H_(R.sylow_H(), [&R](int x, int y) { return R.mul(x, y); },
             [&R](int x) { return R.inverse(x); }, R.one()),
          V_(heisenberg_irrep(R, H_, b, opt)) {
        build_intertwiner();
    }

    const HeisenbergRing& ring() const { return *R_; }
    int b() const { return b_; }
    int dim() const { return V_.dim(); }
    const EnumeratedGroup& sylow_group() const { return H_; }
    const Representation& sylow_restriction() const { return V_; }
    const Matrix& intertwiner() const { return Wpow_[1]; }

    Matrix matrix(int unit) const {
        auto [t, h] = R_->torus_sylow_factor(unit);
        const int m = R_->k2().dlog(R_->alpha_of(t));
        return Wpow_[m] * V_(h);
    }
    cplx trace(int unit) const {
        auto [t, h] = R_->torus_sylow_factor(unit);
        const int m = R_->k2().dlog(R_->alpha_of(t));
        const Matrix& Vh = V_(h);
        const Matrix& Wm = Wpow_[m];
        cplx s = 0.0;
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) s += Wm(i, j) * Vh(j, i);
        return s;
    }

    /// The character as a function on the whole ring, zero off units.
    RingFunction character_function() const {
        RingFunction f(R_->order(), cplx(0.0));
        for (int a = 1; a < R_->k2().size(); ++a)
            for (int beta = 0; beta < R_->k2().size(); ++beta)
                for (int c = 0; c < R_->k2().size(); ++c) {
                    int x = R_->encode(a, beta, c);
                    f[x] = trace(x);
                }
        return f;
    }

    /// Full table on the unit group; only for small rings.
    Representation to_representation(const EnumeratedGroup& units) const {
        if (units.size() > 1000)
            throw std::length_error("WeilRepresentation: full tables only kept up to 10^3 elements");
        std::vector<Matrix> mats;
        mats.reserve(units.size());
        for (int u : units.elements()) mats.push_back(matrix(u));
        return {units, std::move(mats)};
    }

private:
    void build_intertwiner() {
        const Field& k2 = R_->k2();
        const int q = R_->q();
        const int d = V_.dim();
        const int t0 = R_->encode(k2.generator(), 0, 0);
        const int t0i = R_->inverse(t0);

        // F_p-basis of k2 gives generators [1,e,0], [1,0,e] of H
        std::vector<int> gens;
        for (int i = 0, pi = 1; i < R_->k2().base().f(); ++i, pi *= R_->p()) {
            gens.push_back(R_->encode(1, pi, 0));
            gens.push_back(R_->encode(1, 0, pi));
            gens.push_back(R_->encode(1, pi * R_->k2().base_size(), 0));
            gens.push_back(R_->encode(1, 0, pi * R_->k2().base_size()));
        }

        // solve W V(h) = V(t0 h t0^-1) W as a null-space problem
        const int nunk = d * d;
        Matrix A = Matrix::Zero(static_cast<int>(gens.size()) * nunk, nunk);
        int row = 0;
        for (int g : gens) {
            const Matrix& Vg = V_(g);
            const Matrix& Vc = V_(R_->mul(R_->mul(t0, g), t0i));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j, ++row)
                    for (int r = 0; r < d; ++r)
                        for (int s = 0; s < d; ++s) {
                            cplx coef = 0.0;
                            if (r == i) coef += Vg(s, j);
                            if (s == j) coef -= Vc(i, r);
                            A(row, r * d + s) = coef;
                        }
        }
        Eigen::FullPivLU<Matrix> lu(A);
        lu.setThreshold(1e-8);
        Matrix kernel = lu.kernel();
        if (lu.rank() != nunk - 1 || kernel.cols() != 1)
            throw std::runtime_error(
                "WeilRepresentation: intertwiner space is not one-dimensional");
        Matrix W0(d, d);
        for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) W0(r, s) = kernel(r * d + s, 0);

        // normalize: eigenvalues of W must be exactly the q nontrivial
        // (q+1)-th roots of unity, so det W = (-1)^q and scalars are pinned
        // up to a q-th root of unity; exactly one candidate satisfies
        // W^{q+1} = 1 with trace -1 at the intermediate powers.
        const cplx det0 = W0.determinant();
        if (std::abs(det0) < 1e-12)
            throw std::runtime_error("WeilRepresentation: singular intertwiner");
        const cplx target = (q % 2 == 0) ? cplx(1.0) : cplx(-1.0);
        const cplx ratio = target / det0;
        const cplx c0 = std::polar(std::pow(std::abs(ratio), 1.0 / q), std::arg(ratio) / q);
        int accepted = 0;
        Matrix Wbest;
        for (int j = 0; j < q; ++j) {
            const cplx c = c0 * std::polar(1.0, 2.0 * std::numbers::pi * j / q);
            Matrix W = c * W0;
            Matrix P = W;
            bool ok = true;
            for (int m = 1; m <= q; ++m) {
                if (std::abs(P.trace() - cplx(-1.0)) > 1e-8) { ok = false; break; }
                P = P * W;
            }
            if (ok && (P - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-8) {
                ++accepted;
                Wbest = W;
            }
        }
        if (accepted != 1)
            throw std::runtime_error(
                accepted == 0
                    ? "WeilRepresentation: no scalar normalizes the intertwiner"
                    : "WeilRepresentation: normalization ambiguous; refusing to guess");

        const int torder = k2.size() - 1;
        Wpow_.assign(torder, Matrix::Identity(d, d));
        for (int m = 1; m < torder; ++m) Wpow_[m] = Wpow_[m - 1] * Wbest;
    }

    const HeisenbergRing* R_;
    int b_;
    EnumeratedGroup H_;
    Representation V_;
    std::vector<Matrix> Wpow_;
};

/// rho(a, b) = Psi(a^-1 b) on the units of k[X]/(X^2): one-dimensional,
/// multiplicative, trivial on k^x.
inline std::function<cplx(int)> ramified_rho(const RamifiedRing& R) {
    auto zeta = root_of_unity_table(R.p());
    return [&R, zeta](int x) {
        if (!R.is_unit(x)) throw std::domain_error("ramified_rho: not a unit");
        const Field& k = R.field();
        return zeta[R.psi().exponent(k.mul(k.inv(R.a_of(x)), R.b_of(x)))];
    };
}

/// The same character as a function on the whole ring, zero off units.
inline RingFunction ramified_rho_function(const RamifiedRing& R) {
    auto rho = ramified_rho(R);
    RingFunction f(R.order(), cplx(0.0));
    for (int x = 0; x < static_cast<int>(R.order()); ++x)
        if (R.is_unit(x)) f[x] = rho(x);
    return f;
}

}  // namespace ringfe
