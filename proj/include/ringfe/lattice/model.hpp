#pragma once

// The window model of the order-theoretic layer: F = F_p((t)), a separable
// quadratic extension E of ramification degree e, the algebras A1 = M_2(F)
// and A2 = B (quaternion), the chain orders, the complements C_i of E, the
// modules V^m = p_E^{floor} c, the linking order
//
//   L = Delta(O_E) + p_E^n x p_E^n + V^n x V^n,
//   L^o = Delta(p_E) + p_E^{n+1} x p_E^{n+1} + V^{n+1} x V^{n+1},
//
// and its annihilator duality with respect to nu(x1, x2) = nu_E(s1 x1 - s2 x2),
// where nu_E vanishes on p_E^{n+1} but not on p_E^n.  Everything is exact
// F_p linear algebra on a coefficient window.
//
// Internal window: [-(n+2)-4, N+4); every claim is compared after
// restriction to [-(n+2), N), and the whole computation is certified
// stable by rebuilding at N+2 and comparing the restrictions.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>

#include "../report.hpp"
#include "../rings.hpp"
#include "algebra.hpp"
#include "fpspan.hpp"
#include "laurent.hpp"

namespace ringfe::lattice {

struct LatticeParams {
    int p = 2;
    int e = 1;  // ramification degree of E/F
    int n = 1;  // stratum level; must be odd when e = 2, and 0 only for the level-zero order
    int N = 0;  // report window top; defaults to 2n + 6
};

struct PairElem {
    AlgebraSide::Elem a1, a2;
};

class LatticeWorld {
public:
    static constexpr int kBottomSlack = 4;
    static constexpr int kTopSlack = 4;

    explicit LatticeWorld(LatticeParams par) : par_(par) {
        if (!is_prime(par.p)) throw std::invalid_argument("LatticeWorld: p must be prime");
        if (par.e == 2 && par.n % 2 == 0)
            throw std::invalid_argument("LatticeWorld: ramified strata need odd n");
        if (par.n < 0) throw std::invalid_argument("LatticeWorld: n must be >= 0");
        if (par_.N == 0) par_.N = 2 * par_.n + 6;
        if (par_.N < 2 * par_.n + 6)
            throw std::invalid_argument("LatticeWorld: window top must be at least 2n + 6");
        cmp_lo_ = -(par_.n + 2);
        w_ = Window{par_.p, cmp_lo_ - kBottomSlack, par_.N + kTopSlack};
        E_ = std::make_unique<QuadExt>(w_, par_.p, par_.e);
        side_[0] = std::make_unique<AlgebraSide>(AlgebraSide::Kind::MatrixAlgebra, *E_);
        side_[1] = std::make_unique<AlgebraSide>(AlgebraSide::Kind::Quaternion, *E_);
        build_geometry();
    }

    const LatticeParams& params() const { return par_; }
    const Window& window() const { return w_; }
    const QuadExt& ext() const { return *E_; }
    const AlgebraSide& side(int i) const { return *side_[i]; }
    int L() const { return w_.len(); }

    // -- flat pair coordinates ------------------------------------------
    int pair_dim() const { return 8 * L(); }
    FpVec flatten(const PairElem& x) const {
        FpVec v = side_[0]->flatten(x.a1);
        FpVec v2 = side_[1]->flatten(x.a2);
        v.insert(v.end(), v2.begin(), v2.end());
        return v;
    }
    PairElem unflatten(const FpVec& v) const {
        FpVec v1(v.begin(), v.begin() + 4 * L());
        FpVec v2(v.begin() + 4 * L(), v.end());
        return {side_[0]->unflatten(v1), side_[1]->unflatten(v2)};
    }
    PairElem pair_mul(const PairElem& x, const PairElem& y) const {
        return {side_[0]->mul(x.a1, y.a1), side_[1]->mul(x.a2, y.a2)};
    }
    PairElem pair_add(const PairElem& x, const PairElem& y) const {
        return {side_[0]->add(x.a1, y.a1), side_[1]->add(x.a2, y.a2)};
    }
    PairElem diag(const ExtElem& x) const { return {side_[0]->embed(x), side_[1]->embed(x)}; }
    PairElem pair_one() const { return {side_[0]->one(), side_[1]->one()}; }

    // -- module builders -------------------------------------------------
    /// F_p-span of t^j g for j >= 0 (an O_F-module window).
    FpSpan o_span_side(int i, const std::vector<AlgebraSide::Elem>& gens) const {
        FpSpan s(par_.p, 4 * L());
        for (const auto& g : gens) add_shifts_side(s, i, g, 0);
        return s;
    }
    /// F_p-span of all representable t^j g (an F-subspace window).
    FpSpan f_span_side(int i, const std::vector<AlgebraSide::Elem>& gens) const {
        FpSpan s(par_.p, 4 * L());
        for (const auto& g : gens) add_shifts_side(s, i, g, std::numeric_limits<int>::min());
        return s;
    }
    FpSpan o_span_pair(const std::vector<PairElem>& gens) const {
        FpSpan s(par_.p, pair_dim());
        for (const auto& g : gens) add_shifts_pair(s, g, 0);
        return s;
    }
    FpSpan f_span_pair(const std::vector<PairElem>& gens) const {
        FpSpan s(par_.p, pair_dim());
        for (const auto& g : gens) add_shifts_pair(s, g, std::numeric_limits<int>::min());
        return s;
    }
    /// Left/right lift of a one-sided module into the pair space.
    FpSpan into_pair(int i, const FpSpan& m) const {
        FpSpan s(par_.p, pair_dim());
        for (const auto& row : m.basis()) {
            FpVec v(pair_dim(), 0);
            std::copy(row.begin(), row.end(), v.begin() + (i == 0 ? 0 : 4 * L()));
            s.insert(std::move(v));
        }
        return s;
    }

    /// Span of pairwise products of the two bases (the window form of the
    /// product module).
    FpSpan module_product_side(int i, const FpSpan& a, const FpSpan& b) const {
        FpSpan s(par_.p, 4 * L());
        for (const auto& ra : a.basis())
            for (const auto& rb : b.basis())
                s.insert(side_[i]->flatten(
                    side_[i]->mul(side_[i]->unflatten(ra), side_[i]->unflatten(rb))));
        return s;
    }
    FpSpan module_product_pair(const FpSpan& a, const FpSpan& b) const {
        FpSpan s(par_.p, pair_dim());
        for (const auto& ra : a.basis())
            for (const auto& rb : b.basis())
                s.insert(flatten(pair_mul(unflatten(ra), unflatten(rb))));
        return s;
    }

    /// Restriction of a span to the comparison window [-(n+2), top);
    /// top defaults to this world's N, but a smaller top lets two worlds
    /// of different sizes be compared over a common range.
    FpSpan restrict_side(const FpSpan& s, int top = 0) const { return restrict_blocks(s, 4, top); }
    FpSpan restrict_pair(const FpSpan& s, int top = 0) const { return restrict_blocks(s, 8, top); }

    // -- the nu functionals ----------------------------------------------
    /// Exponent functional on E: reads the residue data at the stratum level.
    int lam_E(const ExtElem& x, int level) const {
        if (par_.e == 1) {
            const Field& k2 = Field::get(par_.p, 1, 2);
            const int id = x.a.coeff(level) + par_.p * x.b.coeff(level);
            return k2.rel_trace(id);
        }
        return x.b.coeff((level - 1) / 2);  // level odd in the ramified case
    }
    int lam_side(int i, const AlgebraSide::Elem& x) const {
        return lam_E(side_[i]->project(x), par_.n);
    }
    int lam_pair(const PairElem& x) const {
        return ((lam_side(0, x.a1) - lam_side(1, x.a2)) % par_.p + par_.p) % par_.p;
    }

    /// lam of t^s * (basis_i basis_j) on one side: since the projection is
    /// E-linear it is a shifted coefficient read of the projected basis
    /// product, precomputed once.
    int lam_of_basis_product(int side, int i, int j, int s) const {
        const ExtElem& pr = proj_table_[side][i][j];
        if (par_.e == 1) {
            const int pos = par_.n - s;
            const Field& k2 = Field::get(par_.p, 1, 2);
            return k2.rel_trace(pr.a.coeff(pos) + par_.p * pr.b.coeff(pos));
        }
        return pr.b.coeff((par_.n - 1) / 2 - s);
    }

    /// Annihilator of W (single side) with respect to nu_E of s_i.
    FpSpan annihilator_side(int i, const FpSpan& W) const {
        std::vector<FpVec> rows;
        const int D = 4 * L();
        for (const auto& rw : W.basis()) {
            FpVec row(D, 0);
            for (int c = 0; c < D; ++c) {
                const int bi = c / L(), ec = w_.lo + c % L();
                int acc = 0;
                for (int d = 0; d < D; ++d) {
                    if (!rw[d]) continue;
                    const int bj = d / L(), ed = w_.lo + d % L();
                    acc += rw[d] * lam_of_basis_product(i, bi, bj, ec + ed);
                }
                row[c] = static_cast<std::uint8_t>(acc % par_.p);
            }
            rows.push_back(std::move(row));
        }
        return FpSpan::kernel(par_.p, D, rows);
    }
    /// Annihilator of W (pair module) with respect to nu = nu_E(s1 - s2).
    FpSpan annihilator_pair(const FpSpan& W) const {
        std::vector<FpVec> rows;
        const int D = pair_dim();
        const int half = 4 * L();
        for (const auto& rw : W.basis()) {
            FpVec row(D, 0);
            for (int c = 0; c < D; ++c) {
                const int side = c < half ? 0 : 1;
                const int cc = c % half;
                const int bi = cc / L(), ec = w_.lo + cc % L();
                int acc = 0;
                for (int d = side * half; d < (side + 1) * half; ++d) {
                    if (!rw[d]) continue;
                    const int dd = d % half;
                    const int bj = dd / L(), ed = w_.lo + dd % L();
                    acc += rw[d] * lam_of_basis_product(side, bi, bj, ec + ed);
                }
                acc %= par_.p;
                if (side == 1) acc = (par_.p - acc) % par_.p;
                row[c] = static_cast<std::uint8_t>(acc);
            }
            rows.push_back(std::move(row));
        }
        return FpSpan::kernel(par_.p, D, rows);
    }

    // -- geometry exposed to the checks ----------------------------------
    const FpSpan& E_span(int i) const { return *Espan_[i]; }
    const FpSpan& C_span(int i) const { return *Cspan_[i]; }
    const FpSpan& chain_order(int i) const { return *chain_[i]; }
    const FpSpan& c_module(int i) const { return *cmod_[i]; }

    /// p_E^m as a window O_F-module inside side i.
    FpSpan pE_span(int i, int m) const {
        return o_span_side(i, {side_[i]->embed(E_->uniformizer_pow(m)),
                               side_[i]->embed(E_->mul(E_->uniformizer_pow(m), gen2_))});
    }
    /// V^m = p_E^{j} c with j = floor(m/2) on the quaternion side of an
    /// unramified extension and floor((m+1)/2) in all other cases.
    FpSpan V_span(int i, int m) const {
        const int j = (par_.e == 1 && i == 1) ? m / 2 : (m + 1) / 2;
        return module_product_side(i, pE_span(i, j), *cmod_[i]);
    }
    FpSpan pair_pE(int m) const {
        FpSpan s = into_pair(0, pE_span(0, m));
        return s.sum(into_pair(1, pE_span(1, m)));
    }
    FpSpan pair_pE_mixed(int m1, int m2) const {
        FpSpan s = into_pair(0, pE_span(0, m1));
        return s.sum(into_pair(1, pE_span(1, m2)));
    }
    FpSpan pair_V(int m) const {
        FpSpan s = into_pair(0, V_span(0, m));
        return s.sum(into_pair(1, V_span(1, m)));
    }
    FpSpan diag_span_O() const {
        return o_span_pair({diag(E_->one()), diag(gen2_)});
    }
    FpSpan diag_span_E() const {
        return f_span_pair({diag(E_->one()), diag(gen2_)});
    }
    FpSpan diag_span_p() const {
        return o_span_pair({diag(E_->uniformizer()), diag(E_->mul(E_->uniformizer(), gen2_))});
    }

    FpSpan linking_order() const {
        return diag_span_O().sum(pair_pE(par_.n)).sum(pair_V(par_.n));
    }
    FpSpan linking_ideal() const {
        return diag_span_p().sum(pair_pE(par_.n + 1)).sum(pair_V(par_.n + 1));
    }
    /// The level-zero order M_2(O_F) x O_B and its double-sided ideal.
    FpSpan level0_order() const {
        return into_pair(0, *chain_[0]).sum(into_pair(1, *chain_[1]));
    }
    FpSpan level0_ideal() const {
        // Jacobson radicals: t M_2(O_F) and pi_B O_B
        FpSpan tA(par_.p, 4 * L());
        for (const auto& r : chain_[0]->basis())
            tA.insert(side_[0]->flatten(
                side_[0]->scal(Series::monomial(w_, 1), side_[0]->unflatten(r))));
        FpSpan piB(par_.p, 4 * L());
        AlgebraSide::Elem pi = side_[1]->zero();
        pi[2] = Series::constant(w_, 1);
        for (const auto& r : chain_[1]->basis())
            piB.insert(side_[1]->flatten(side_[1]->mul(pi, side_[1]->unflatten(r))));
        return into_pair(0, tA).sum(into_pair(1, piB));
    }

    const ExtElem& stratum_alpha() const { return alpha_; }
    const ExtElem& ext_generator() const { return gen2_; }

private:
    void build_geometry() {
        gen2_ = E_->u();
        // alpha: valuation exactly -n, with regular reduction when e = 1
        alpha_ = par_.e == 1 ? E_->from(Series::zero(w_), Series::monomial(w_, -par_.n))
                             : E_->uniformizer_pow(-par_.n);

        for (int i = 0; i < 2; ++i) {
            Espan_[i] = std::make_optional<FpSpan>(
                f_span_side(i, {side_[i]->one(), side_[i]->embedded_u()}));
            // C = kernel of x -> (tr(x), tr(u x)), coefficientwise
            std::vector<FpVec> rows;
            const int D = 4 * L();
            for (int which = 0; which < 2; ++which) {
                const auto probe = which == 0 ? side_[i]->one() : side_[i]->embedded_u();
                std::vector<Series> tr_of_basis(D, Series::zero(w_));
                for (int c = 0; c < D; ++c) {
                    FpVec ev(D, 0);
                    ev[c] = 1;
                    tr_of_basis[c] = side_[i]->trace(side_[i]->mul(probe, side_[i]->unflatten(ev)));
                }
                for (int exp = w_.lo; exp < w_.hi; ++exp) {
                    FpVec row(D, 0);
                    bool nonzero = false;
                    for (int c = 0; c < D; ++c) {
                        row[c] = static_cast<std::uint8_t>(tr_of_basis[c].coeff(exp));
                        nonzero |= row[c] != 0;
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
            Cspan_[i] = std::make_optional<FpSpan>(FpSpan::kernel(par_.p, D, rows));
        }

        // chain orders: the M_2 side stabilizes the lattice chain {p_E^j},
        // the quaternion side is the maximal order O_B
        chain_[0] = std::make_optional<FpSpan>(build_chain_order_m2());
        {
            std::vector<AlgebraSide::Elem> gens;
            for (int b = 0; b < 4; ++b) {
                auto g = side_[1]->zero();
                g[b] = Series::constant(w_, 1);
                gens.push_back(g);
            }
            chain_[1] = std::make_optional<FpSpan>(o_span_side(1, gens));
        }
        for (int i = 0; i < 2; ++i)
            cmod_[i] = std::make_optional<FpSpan>(chain_[i]->intersect(*Cspan_[i]));

        // projections of the 16 basis products per side, for the lam reads
        for (int sd = 0; sd < 2; ++sd)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    auto ei = side_[sd]->zero();
                    auto ej = side_[sd]->zero();
                    ei[i] = Series::constant(w_, 1);
                    ej[j] = Series::constant(w_, 1);
                    proj_table_[sd][i][j] = side_[sd]->project(side_[sd]->mul(ei, ej));
                }
    }

    /// Stabilizer of the lattice chain inside M_2(F), computed as the joint
    /// kernel of "m g reduces to zero modulo the lattice span" over the
    /// lattice generators g of each chain member.
    FpSpan build_chain_order_m2() {
        const int D = 4 * L();
        const int vecdim = 2 * L();  // column vectors over the window
        // lattice chain on E = F^2 in the coordinates of (1, u):
        //   O_E   = <(1,0), (0,1)>          p_E = <pi * those>
        auto vec_span = [this, vecdim](const std::vector<ExtElem>& gens) {
            FpSpan s(par_.p, vecdim);
            for (const auto& g : gens)
                for (int j = 0; j < w_.len(); ++j) {
                    ExtElem sh{g.a.shifted(j), g.b.shifted(j)};
                    FpVec v;
                    v.reserve(vecdim);
                    for (auto c : sh.a.raw()) v.push_back(c);
                    for (auto c : sh.b.raw()) v.push_back(c);
                    s.insert(std::move(v));
                }
            return s;
        };
        std::vector<std::pair<FpSpan, std::vector<ExtElem>>> chain_members;
        std::vector<ExtElem> g0 = {E_->one(), gen2_};
        chain_members.emplace_back(vec_span(g0), g0);
        if (par_.e == 2) {
            std::vector<ExtElem> g1 = {E_->uniformizer(), E_->mul(E_->uniformizer(), gen2_)};
            chain_members.emplace_back(vec_span(g1), g1);
        }

        std::vector<FpVec> rows;
        for (auto& [lat, gens] : chain_members) {
            for (const auto& g : gens) {
                // column action: m acts on (x0, x1) as the 2x2 matrix (e11 e12; e21 e22)
                std::vector<FpVec> reduced(D);
                for (int c = 0; c < D; ++c) {
                    FpVec ev(D, 0);
                    ev[c] = 1;
                    const auto m = side_[0]->unflatten(ev);
                    ExtElem img{m[0] * g.a + m[1] * g.b, m[2] * g.a + m[3] * g.b};
                    FpVec v;
                    v.reserve(2 * L());
                    for (auto cc : img.a.raw()) v.push_back(cc);
                    for (auto cc : img.b.raw()) v.push_back(cc);
                    lat.reduce(v);
                    reduced[c] = std::move(v);
                }
                for (int o = 0; o < vecdim; ++o) {
                    FpVec row(D, 0);
                    bool nonzero = false;
                    for (int c = 0; c < D; ++c) {
                        row[c] = reduced[c][o];
                        nonzero |= row[c] != 0;
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
        return FpSpan::kernel(par_.p, D, rows);
    }

    void add_shifts_side(FpSpan& s, int i, const AlgebraSide::Elem& g, int min_shift) const {
        int v = std::numeric_limits<int>::max();
        for (int b = 0; b < 4; ++b) v = std::min(v, g[b].valuation());
        if (v == std::numeric_limits<int>::max()) return;
        const int from = std::max(min_shift, w_.lo - v);
        for (int j = from; j < w_.hi - v; ++j) {
            AlgebraSide::Elem sh;
            for (int b = 0; b < 4; ++b) sh[b] = g[b].shifted(j);
            s.insert(side_[i]->flatten(sh));
        }
    }
    void add_shifts_pair(FpSpan& s, const PairElem& g, int min_shift) const {
        int v = std::numeric_limits<int>::max();
        for (int b = 0; b < 4; ++b)
            v = std::min({v, g.a1[b].valuation(), g.a2[b].valuation()});
        if (v == std::numeric_limits<int>::max()) return;
        const int from = std::max(min_shift, w_.lo - v);
        for (int j = from; j < w_.hi - v; ++j) {
            PairElem sh;
            for (int b = 0; b < 4; ++b) {
                sh.a1[b] = g.a1[b].shifted(j);
                sh.a2[b] = g.a2[b].shifted(j);
            }
            s.insert(flatten(sh));
        }
    }

    FpSpan restrict_blocks(const FpSpan& s, int blocks, int top) const {
        if (top == 0) top = par_.N;
        const int Lfull = L();
        const int from = cmp_lo_ - w_.lo;          // offset of the compare window
        const int Lcmp = top - cmp_lo_;
        FpSpan r(par_.p, blocks * Lcmp);
        for (const auto& row : s.basis()) {
            FpVec v;
            v.reserve(blocks * Lcmp);
            for (int b = 0; b < blocks; ++b)
                v.insert(v.end(), row.begin() + b * Lfull + from,
                         row.begin() + b * Lfull + from + Lcmp);
            r.insert(std::move(v));
        }
        return r;
    }

    LatticeParams par_;
    int cmp_lo_ = 0;
    Window w_{};
    std::unique_ptr<QuadExt> E_;
    std::unique_ptr<AlgebraSide> side_[2];
    ExtElem gen2_, alpha_;
    std::optional<FpSpan> Espan_[2], Cspan_[2], chain_[2], cmod_[2];
    ExtElem proj_table_[2][4][4];
};

}  // namespace ringfe::lattice
