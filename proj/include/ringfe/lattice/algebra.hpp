#pragma once

// The quadratic extension E of F = F_p((t)) and the two four-dimensional
// F-algebras it embeds into: M_2(F) (via the regular representation on the
// basis {1, u} of O_E) and the quaternion algebra B = E0 + E0 pi with
// pi^2 = t, pi x = x^sigma pi (E0 the unramified quadratic extension).
//
// E itself is F[u]/(u^2 + c1 u + c0):
//   unramified            the canonical quadratic over F_p (constants)
//   ramified, p odd       u^2 = t
//   ramified, p = 2       u^2 + t u + t = 0   (u^2 = t is inseparable in
//                         characteristic 2, so an Eisenstein polynomial
//                         with nonzero trace is used instead; sigma(u) = u + t)
//
// Every element is a coordinate vector of window series; the trace pairing,
// the projection s_A : A -> E along C = E-perp, and the complement C are
// computed from Gram matrices, exactly.

#include <array>
#include <stdexcept>

#include "../finite_field.hpp"
#include "fpspan.hpp"
#include "laurent.hpp"

namespace ringfe::lattice {

struct ExtElem {
    Series a, b;  // a + b u
};

class QuadExt {
public:
    QuadExt(const Window& w, int p, int e) : w_(w), p_(p), e_(e) {
        if (e != 1 && e != 2) throw std::invalid_argument("QuadExt: e must be 1 or 2");
        const auto& quad = Field::get(p, 1, 2).defining_polynomial();  // canonical x^2 + c1 x + c0
        if (e == 1) {
            c0_ = Series::constant(w, quad[0]);
            c1_ = Series::constant(w, quad[1]);
        } else if (p != 2) {
            c0_ = -Series::monomial(w, 1);  // u^2 = t
            c1_ = Series::zero(w);
        } else {
            c0_ = Series::monomial(w, 1);  // u^2 + t u + t = 0
            c1_ = Series::monomial(w, 1);
        }
    }

    const Window& window() const { return w_; }
    int e() const { return e_; }
    const Series& c0() const { return c0_; }
    const Series& c1() const { return c1_; }

    ExtElem zero() const { return {Series::zero(w_), Series::zero(w_)}; }
    ExtElem one() const { return {Series::constant(w_, 1), Series::zero(w_)}; }
    ExtElem u() const { return {Series::zero(w_), Series::constant(w_, 1)}; }
    ExtElem from(const Series& a, const Series& b) const { return {a, b}; }

    ExtElem add(const ExtElem& x, const ExtElem& y) const { return {x.a + y.a, x.b + y.b}; }
    ExtElem sub(const ExtElem& x, const ExtElem& y) const { return {x.a - y.a, x.b - y.b}; }
    ExtElem neg(const ExtElem& x) const { return {-x.a, -x.b}; }
    ExtElem mul(const ExtElem& x, const ExtElem& y) const {
        // (a + bu)(c + du) = ac + bd u^2 + (ad + bc) u,  u^2 = -c0 - c1 u
        const Series bd = x.b * y.b;
        return {x.a * y.a - bd * c0_, x.a * y.b + x.b * y.a - bd * c1_};
    }
    ExtElem sigma(const ExtElem& x) const {
        // sigma(u) = -c1 - u
        return {x.a - x.b * c1_, -x.b};
    }
    Series trace(const ExtElem& x) const { return x.a + x.a - x.b * c1_; }
    Series norm(const ExtElem& x) const {
        ExtElem n = mul(x, sigma(x));
        if (!n.b.is_zero()) throw std::logic_error("QuadExt: norm escaped the base field");
        return n.a;
    }
    ExtElem inverse(const ExtElem& x) const {
        const Series ninv = norm(x).inverse();
        ExtElem s = sigma(x);
        return {s.a * ninv, s.b * ninv};
    }
    ExtElem pow(const ExtElem& x, int m) const {
        ExtElem base = m < 0 ? inverse(x) : x;
        int e = m < 0 ? -m : m;
        ExtElem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    bool is_zero(const ExtElem& x) const { return x.a.is_zero() && x.b.is_zero(); }

    /// Valuation in E (normalized so a uniformizer has valuation 1).
    int valuation(const ExtElem& x) const {
        const int va = x.a.valuation(), vb = x.b.valuation();
        if (e_ == 1) return std::min(va, vb);
        const int from_a = va == std::numeric_limits<int>::max() ? va : 2 * va;
        const int from_b = vb == std::numeric_limits<int>::max() ? vb : 2 * vb + 1;
        return std::min(from_a, from_b);
    }
    ExtElem uniformizer() const {
        return e_ == 1 ? ExtElem{Series::monomial(w_, 1), Series::zero(w_)} : u();
    }
    ExtElem uniformizer_pow(int m) const { return pow(uniformizer(), m); }

private:
    Window w_;
    int p_, e_;
    Series c0_, c1_;
};

/// One factor of the product algebra: M_2(F) or the quaternion algebra,
/// together with the chosen embedding of E and the trace-pairing geometry.
class AlgebraSide {
public:
    using Elem = std::array<Series, 4>;
    enum class Kind { MatrixAlgebra, Quaternion };

    AlgebraSide(Kind kind, const QuadExt& E) : kind_(kind), E_(&E), w_(E.window()) {
        build_table();
        build_embedding();
        build_gram();
    }

    Kind kind() const { return kind_; }
    const Window& window() const { return w_; }
    const QuadExt& ext() const { return *E_; }

    Elem zero() const { return {Series::zero(w_), Series::zero(w_), Series::zero(w_), Series::zero(w_)}; }
    Elem one() const { return one_; }

    Elem add(const Elem& x, const Elem& y) const {
        return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
    }
    Elem sub(const Elem& x, const Elem& y) const {
        return {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]};
    }
    Elem neg(const Elem& x) const { return {-x[0], -x[1], -x[2], -x[3]}; }
    Elem scal(const Series& s, const Elem& x) const {
        return {s * x[0], s * x[1], s * x[2], s * x[3]};
    }
    Elem mul(const Elem& x, const Elem& y) const {
        Elem r = zero();
        for (int i = 0; i < 4; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < 4; ++j) {
                if (y[j].is_zero()) continue;
                const Series c = x[i] * y[j];
                for (int k = 0; k < 4; ++k)
                    if (!table_[i][j][k].is_zero()) r[k] = r[k] + c * table_[i][j][k];
            }
        }
        return r;
    }
    Series trace(const Elem& x) const {
        Series s = Series::zero(w_);
        for (int i = 0; i < 4; ++i)
            if (!trace_basis_[i].is_zero()) s = s + x[i] * trace_basis_[i];
        return s;
    }
    bool is_zero(const Elem& x) const {
        return x[0].is_zero() && x[1].is_zero() && x[2].is_zero() && x[3].is_zero();
    }

    Elem embed(const ExtElem& x) const {
        return add(scal(x.a, emb_one_), scal(x.b, emb_u_));
    }
    const Elem& embedded_u() const { return emb_u_; }

    /// s_A: solve the 2x2 Gram system for the E-component of x.
    ExtElem project(const Elem& x) const {
        const Series t0 = trace(mul(emb_one_, x));
        const Series t1 = trace(mul(emb_u_, x));
        // (s0, s1) = G^-1 (t0, t1), G = [[g00, g01], [g10, g11]]
        const Series s0 = (g11_ * t0 - g01_ * t1) * det_inv_;
        const Series s1 = (g00_ * t1 - g10_ * t0) * det_inv_;
        return {s0, s1};
    }

    // flat F_p coordinates: coordinate (i, exp) at index i * L + (exp - lo)
    int flat_dim() const { return 4 * w_.len(); }
    FpVec flatten(const Elem& x) const {
        FpVec v;
        v.reserve(flat_dim());
        for (int i = 0; i < 4; ++i)
            for (auto c : x[i].raw()) v.push_back(c);
        return v;
    }
    Elem unflatten(const FpVec& v) const {
        Elem x = zero();
        const int L = w_.len();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < L; ++j)
                if (v[i * L + j]) x[i].set(w_.lo + j, v[i * L + j]);
        return x;
    }

private:
    void build_table() {
        for (auto& row : table_)
            for (auto& cell : row)
                cell = {Series::zero(w_), Series::zero(w_), Series::zero(w_), Series::zero(w_)};
        auto C = [this](int v) { return Series::constant(w_, v); };
        const Series t = Series::monomial(w_, 1);
        if (kind_ == Kind::MatrixAlgebra) {
            // basis: matrix units e11, e12, e21, e22 (row-major)
            auto idx = [](int r, int c) { return 2 * (r - 1) + (c - 1); };
            for (int r = 1; r <= 2; ++r)
                for (int c = 1; c <= 2; ++c)
                    for (int r2 = 1; r2 <= 2; ++r2)
                        for (int c2 = 1; c2 <= 2; ++c2)
                            if (c == r2) table_[idx(r, c)][idx(r2, c2)][idx(r, c2)] = C(1);
            trace_basis_ = {C(1), C(0), C(0), C(1)};
            one_ = {C(1), C(0), C(0), C(1)};
        } else {
            // basis: 1, s, pi, s pi with s^2 = -d0 - d1 s (canonical quadratic
            // over F_p) and pi^2 = t, pi x = x^sigma pi
            const auto& quad = Field::get(w_.p, 1, 2).defining_polynomial();
            const Series d0 = C(quad[0]), d1 = C(quad[1]);
            auto set = [this](int i, int j, std::array<Series, 4> val) { table_[i][j] = val; };
            const Series z = Series::zero(w_);
            for (int j = 0; j < 4; ++j) table_[0][j][j] = C(1);  // 1 * x
            for (int i = 1; i < 4; ++i) table_[i][0][i] = C(1);  // x * 1
            set(1, 1, {-d0, -d1, z, z});                         // s s
            set(1, 2, {z, z, z, C(1)});                          // s pi
            set(1, 3, {z, z, -d0, -d1});                         // s (s pi)
            set(2, 1, {z, z, -d1, -C(1)});                       // pi s = s^sigma pi
            set(2, 2, {t, z, z, z});                             // pi pi
            set(2, 3, {-d1 * t, -t, z, z});                      // pi (s pi) = t s^sigma
            set(3, 1, {z, z, d0, z});                            // (s pi) s = N(s) pi
            set(3, 2, {z, t, z, z});                             // (s pi) pi = t s
            set(3, 3, {d0 * t, z, z, z});                        // (s pi)(s pi) = N(s) t
            trace_basis_ = {C(2), -d1, z, z};
            one_ = {C(1), z, z, z};
        }
    }

    void build_embedding() {
        emb_one_ = one_;
        const Series c0 = E_->c0(), c1 = E_->c1();
        const Series z = Series::zero(w_);
        if (kind_ == Kind::MatrixAlgebra) {
            // regular representation on the basis (1, u) of E
            emb_u_ = {z, -c0, Series::constant(w_, 1), -c1};
        } else if (E_->e() == 1) {
            emb_u_ = {z, Series::constant(w_, 1), z, z};  // u = s
        } else if (w_.p != 2) {
            emb_u_ = {z, z, Series::constant(w_, 1), z};  // u = pi
        } else {
            // characteristic 2, ramified: find x + y pi with tr_{E0/F}(x) = t
            // and N(y) = 1 + t, so that (x + y pi)^2 + t (x + y pi) + t = 0
            const auto& quad = Field::get(2, 1, 2).defining_polynomial();
            const int d1 = quad[1];  // tr(s) = -d1 = d1 in characteristic 2
            if (d1 == 0) throw std::logic_error("AlgebraSide: residue quadratic has zero trace");
            const Series t = Series::monomial(w_, 1);
            QuadExt E0(w_, 2, 1);
            ExtElem x = E0.from(Series::zero(w_), t);  // t * s, trace = t
            // Hensel: y with N(y) = 1 + t, starting at y = 1
            const Series target = Series::constant(w_, 1) + t;
            ExtElem y = E0.one();
            for (int it = 0; it < w_.len() + 2; ++it) {
                const Series err = target - E0.norm(y);
                if (err.is_zero()) break;
                const Series c = err * E0.norm(y).inverse();
                ExtElem d = E0.from(Series::zero(w_), c);  // tr(c s) = c
                y = E0.mul(y, E0.add(E0.one(), d));
            }
            if (!(target - E0.norm(y)).is_zero())
                throw std::logic_error("AlgebraSide: norm equation did not converge");
            emb_u_ = {x.a, x.b, y.a, y.b};
        }
        // the embedding must satisfy the defining polynomial of E
        Elem lhs = add(add(mul(emb_u_, emb_u_), scal(c1, emb_u_)), scal(c0, one_));
        if (!is_zero(lhs)) throw std::logic_error("AlgebraSide: embedding violates the minimal polynomial");
    }

    void build_gram() {
        g00_ = trace(mul(emb_one_, emb_one_));
        g01_ = trace(mul(emb_one_, emb_u_));
        g10_ = trace(mul(emb_u_, emb_one_));
        g11_ = trace(mul(emb_u_, emb_u_));
        const Series det = g00_ * g11_ - g01_ * g10_;
        det_inv_ = det.inverse();  // throws when the pairing degenerates on E
    }

    Kind kind_;
    const QuadExt* E_;
    Window w_;
    std::array<std::array<std::array<Series, 4>, 4>, 4> table_;
    std::array<Series, 4> trace_basis_;
    Elem one_, emb_one_, emb_u_;
    Series g00_, g01_, g10_, g11_, det_inv_;
};

}  // namespace ringfe::lattice
