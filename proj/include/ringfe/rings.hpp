#pragma once

// The three finite quotient rings under study, each with its canonical
// additive character nu:
//
//   RamifiedRing   pairs (a,b) over F_q, (a1,b1)(a2,b2) = (a1a2, a1b2 + a2b1);
//                  isomorphic to k[X]/(X^2).  nu(a,b) = Psi(b).
//   HeisenbergRing triples [alpha,beta,gamma] over F_{q^2} multiplying like
//                  the 3x3 pattern  [[a, b, c], [0, a^q, b^q], [0, 0, a]];
//                  nu([a,b,c]) = nu_k(Tr(c)).
//   LevelZeroRing  M_2(F_q) x F_{q^2}, componentwise; nu(x,y) = nu_k(tr x - Tr y).
//
// Element ids enumerate coordinate vectors lexicographically (most
// significant coordinate first); id 0 is 0 and id of 1 is one().

#include <functional>
#include <stdexcept>
#include <vector>

#include "characters.hpp"
#include "finite_field.hpp"
#include "group.hpp"

namespace ringfe {

template <typename R>
concept FiniteRingType = requires(const R r, int x, int y) {
    { r.order() } -> std::convertible_to<long long>;
    { r.zero() } -> std::convertible_to<int>;
    { r.one() } -> std::convertible_to<int>;
    { r.add(x, y) } -> std::convertible_to<int>;
    { r.neg(x) } -> std::convertible_to<int>;
    { r.mul(x, y) } -> std::convertible_to<int>;
    { r.is_unit(x) } -> std::convertible_to<bool>;
    { r.inverse(x) } -> std::convertible_to<int>;
    { r.p() } -> std::convertible_to<int>;
    { r.nu_exponent(x) } -> std::convertible_to<int>;
    { r.nu_exponent_of_product(x, y) } -> std::convertible_to<int>;
};

namespace ring_detail {
inline void check_unit_group_cap(long long order) {
    if (order > 1000000) throw std::length_error("unit_group: ring order above 10^6 cap");
}
}  // namespace ring_detail

/// k[X]/(X^2) with the additive character reading the X-coordinate.
class RamifiedRing {
public:
    RamifiedRing(const Field& k, AdditiveCharacter psi) : k_(&k), psi_(std::move(psi)) {
        if (&psi_.field() != &k) throw std::invalid_argument("RamifiedRing: Psi must live on k");
        if (psi_.is_trivial()) throw std::invalid_argument("RamifiedRing: Psi must be nontrivial");
        q_ = k.size();
        zeta_ = root_of_unity_table(k.p());
    }

    const Field& field() const { return *k_; }
    const AdditiveCharacter& psi() const { return psi_; }
    long long order() const { return static_cast<long long>(q_) * q_; }
    int p() const { return k_->p(); }

    int encode(int a, int b) const { return b + q_ * a; }  // (a,b), a most significant
    int a_of(int x) const { return x / q_; }
    int b_of(int x) const { return x % q_; }

    int zero() const { return 0; }
    int one() const { return encode(1, 0); }
    int add(int x, int y) const {
        return encode(k_->add(a_of(x), a_of(y)), k_->add(b_of(x), b_of(y)));
    }
    int neg(int x) const { return encode(k_->neg(a_of(x)), k_->neg(b_of(x))); }
    int mul(int x, int y) const {
        const int a1 = a_of(x), b1 = b_of(x), a2 = a_of(y), b2 = b_of(y);
        return encode(k_->mul(a1, a2), k_->add(k_->mul(a1, b2), k_->mul(a2, b1)));
    }
    bool is_unit(int x) const { return a_of(x) != 0; }
    int inverse(int x) const {
        if (!is_unit(x)) throw std::domain_error("RamifiedRing: not a unit");
        const int a = a_of(x), b = b_of(x);
        const int ai = k_->inv(a);
        return encode(ai, k_->neg(k_->mul(k_->mul(ai, ai), b)));
    }

    int nu_exponent(int x) const { return psi_.exponent(b_of(x)); }
    cplx nu(int x) const { return zeta_[nu_exponent(x)]; }
    int nu_exponent_of_product(int x, int y) const {
        const int b = k_->add(k_->mul(a_of(x), b_of(y)), k_->mul(a_of(y), b_of(x)));
        return psi_.exponent(b);
    }
    const std::vector<cplx>& zeta() const { return zeta_; }

    std::vector<int> units() const {
        std::vector<int> u;
        for (int x = 0; x < order(); ++x)
            if (is_unit(x)) u.push_back(x);
        return u;
    }
    EnumeratedGroup unit_group() const {
        ring_detail::check_unit_group_cap(order());
        return {units(), [this](int a, int b) { return mul(a, b); },
                [this](int a) { return inverse(a); }, one()};
    }

private:
    const Field* k_;
    AdditiveCharacter psi_;
    int q_;
    std::vector<cplx> zeta_;
};

/// Triples over k2 = F_{q^2} under the triangular 3x3 matrix pattern.
class HeisenbergRing {
public:
    HeisenbergRing(const Field& k2, AdditiveCharacter nu_k) : k2_(&k2), nu_k_(std::move(nu_k)) {
        if (k2.degree() != 2) throw std::invalid_argument("HeisenbergRing: k2 must be a quadratic tower");
        if (&nu_k_.field() != &k2.base())
            throw std::invalid_argument("HeisenbergRing: nu must live on the base field k");
        if (nu_k_.is_trivial()) throw std::invalid_argument("HeisenbergRing: nu must be nontrivial");
        q2_ = k2.size();
        n_ = static_cast<long long>(q2_) * q2_ * q2_;
        zeta_ = root_of_unity_table(k2.p());
        // chi[e] = exponent of nu_k(Tr_{k2/k}(e)); the only place nu enters products
        chi_.resize(q2_);
        frob_.resize(q2_);
        for (int e = 0; e < q2_; ++e) {
            chi_[e] = nu_k_.exponent(k2.rel_trace(e));
            frob_[e] = k2.frobenius(e);
        }
    }

    const Field& k2() const { return *k2_; }
    const Field& k() const { return k2_->base(); }
    const AdditiveCharacter& nu_k() const { return nu_k_; }
    long long order() const { return n_; }
    int p() const { return k2_->p(); }
    int q() const { return k2_->base_size(); }

    int encode(int alpha, int beta, int gamma) const {
        return gamma + q2_ * (beta + q2_ * alpha);
    }
    int alpha_of(int x) const { return x / (q2_ * q2_); }
    int beta_of(int x) const { return (x / q2_) % q2_; }
    int gamma_of(int x) const { return x % q2_; }

    int zero() const { return 0; }
    int one() const { return encode(1, 0, 0); }
    int add(int x, int y) const {
        return encode(k2_->add(alpha_of(x), alpha_of(y)), k2_->add(beta_of(x), beta_of(y)),
                      k2_->add(gamma_of(x), gamma_of(y)));
    }
    int neg(int x) const {
        return encode(k2_->neg(alpha_of(x)), k2_->neg(beta_of(x)), k2_->neg(gamma_of(x)));
    }
    int mul(int x, int y) const {
        const int a1 = alpha_of(x), b1 = beta_of(x), c1 = gamma_of(x);
        const int a2 = alpha_of(y), b2 = beta_of(y), c2 = gamma_of(y);
        const int a = k2_->mul(a1, a2);
        const int b = k2_->add(k2_->mul(a1, b2), k2_->mul(b1, frob_[a2]));
        const int c = k2_->add(k2_->add(k2_->mul(a1, c2), k2_->mul(b1, frob_[b2])),
                               k2_->mul(c1, a2));
        return encode(a, b, c);
    }
    bool is_unit(int x) const { return alpha_of(x) != 0; }
    int inverse(int x) const {
        if (!is_unit(x)) throw std::domain_error("HeisenbergRing: not a unit");
        const int a = alpha_of(x), b = beta_of(x), c = gamma_of(x);
        const int ai = k2_->inv(a);
        const int bi = k2_->neg(k2_->mul(k2_->mul(ai, b), frob_[ai]));
        // a*ci + b*bi^q + c*ai = 0
        const int ci = k2_->neg(
            k2_->mul(ai, k2_->add(k2_->mul(b, frob_[bi]), k2_->mul(c, ai))));
        return encode(ai, bi, ci);
    }

    int nu_exponent(int x) const { return chi_[gamma_of(x)]; }
    cplx nu(int x) const { return zeta_[nu_exponent(x)]; }
    int nu_exponent_of_product(int x, int y) const {
        // gamma(xy) = a1*c2 + b1*b2^q + c1*a2
        const int g = k2_->add(
            k2_->add(k2_->mul(alpha_of(x), gamma_of(y)), k2_->mul(beta_of(x), frob_[beta_of(y)])),
            k2_->mul(gamma_of(x), alpha_of(y)));
        return chi_[g];
    }
    const std::vector<cplx>& zeta() const { return zeta_; }
    const std::vector<int>& chi_table() const { return chi_; }
    int frob(int e) const { return frob_[e]; }

    std::vector<int> units() const {
        std::vector<int> u;
        u.reserve(static_cast<std::size_t>(q2_ - 1) * q2_ * q2_);
        for (int a = 1; a < q2_; ++a)
            for (int b = 0; b < q2_; ++b)
                for (int c = 0; c < q2_; ++c) u.push_back(encode(a, b, c));
        return u;
    }
    EnumeratedGroup unit_group() const {
        ring_detail::check_unit_group_cap(order());
        return {units(), [this](int a, int b) { return mul(a, b); },
                [this](int a) { return inverse(a); }, one()};
    }

    // distinguished subgroups of the unit group
    std::vector<int> subgroup_U() const {  // [1,0,c]
        std::vector<int> v;
        for (int c = 0; c < q2_; ++c) v.push_back(encode(1, 0, c));
        return v;
    }
    std::vector<int> subgroup_U1() const {  // [1,0,c], Tr c = 0
        std::vector<int> v;
        for (int c = 0; c < q2_; ++c)
            if (k2_->rel_trace(c) == 0) v.push_back(encode(1, 0, c));
        return v;
    }
    std::vector<int> torus() const {  // [a,0,0], a != 0
        std::vector<int> v;
        for (int a = 1; a < q2_; ++a) v.push_back(encode(a, 0, 0));
        return v;
    }
    std::vector<int> scalars() const {  // [a,0,0], a in k^x
        std::vector<int> v;
        for (int a = 1; a < q(); ++a) v.push_back(encode(k2_->embed(a), 0, 0));
        return v;
    }
    std::vector<int> sylow_H() const {  // alpha = 1
        std::vector<int> v;
        v.reserve(static_cast<std::size_t>(q2_) * q2_);
        for (int b = 0; b < q2_; ++b)
            for (int c = 0; c < q2_; ++c) v.push_back(encode(1, b, c));
        return v;
    }
    /// Maximal abelian subgroup {[1, e*t, c] : t in k, c in k2} of the Sylow
    /// subgroup, one for each line e*k in k2 (e a unit).
    std::vector<int> polarization(int e) const {
        if (e == 0) throw std::invalid_argument("polarization: direction must be nonzero");
        std::vector<int> v;
        for (int t = 0; t < q(); ++t)
            for (int c = 0; c < q2_; ++c) v.push_back(encode(1, k2_->mul(e, k2_->embed(t)), c));
        return v;
    }

    /// Every unit factors uniquely as [a,0,0] * [1, a^-1 b, a^-1 c].
    std::pair<int, int> torus_sylow_factor(int x) const {
        if (!is_unit(x)) throw std::domain_error("torus_sylow_factor: not a unit");
        const int a = alpha_of(x);
        const int ai = k2_->inv(a);
        return {encode(a, 0, 0), encode(1, k2_->mul(ai, beta_of(x)), k2_->mul(ai, gamma_of(x)))};
    }

    /// delta([a,b,c]) = a c^q + a^q c - b^{q+1}, a k-element (returned as a
    /// base-field id).  Measures the failure of the unit to preserve the
    /// antidiagonal hermitian form.
    int defect(int x) const {
        if (!is_unit(x)) throw std::domain_error("defect: not a unit");
        const int a = alpha_of(x), b = beta_of(x), c = gamma_of(x);
        const int v = k2_->sub(k2_->add(k2_->mul(a, frob_[c]), k2_->mul(frob_[a], c)),
                               k2_->mul(b, frob_[b]));
        return k2_->to_base(v);
    }
    /// Norm-normalized defect delta(x) / N(alpha): additive in the sense
    /// defect_normalized(xy) = defect_normalized(x) + defect_normalized(y).
    int defect_normalized(int x) const {
        const Field& k = k2_->base();
        return k.mul(defect(x), k.inv(k2_->rel_norm(alpha_of(x))));
    }
    /// Units with defect zero (the form-preserving subgroup, cardinality (q^2-1) q^3).
    std::vector<int> form_kernel() const {
        std::vector<int> v;
        for (int x : units())
            if (defect(x) == 0) v.push_back(x);
        return v;
    }

private:
    const Field* k2_;
    AdditiveCharacter nu_k_;
    int q2_;
    long long n_;
    std::vector<cplx> zeta_;
    std::vector<int> chi_;
    std::vector<int> frob_;
};

/// M_2(k) x k2 with componentwise operations.
class LevelZeroRing {
public:
    LevelZeroRing(const Field& k2, AdditiveCharacter nu_k) : k2_(&k2), nu_k_(std::move(nu_k)) {
        if (k2.degree() != 2) throw std::invalid_argument("LevelZeroRing: k2 must be a quadratic tower");
        if (&nu_k_.field() != &k2.base())
            throw std::invalid_argument("LevelZeroRing: nu must live on the base field k");
        if (nu_k_.is_trivial()) throw std::invalid_argument("LevelZeroRing: nu must be nontrivial");
        q_ = k2.base_size();
        q2_ = k2.size();
        q4_ = static_cast<long long>(q_) * q_ * q_ * q_;
        n_ = q4_ * q2_;
        zeta_ = root_of_unity_table(k2.p());
    }

    const Field& k2() const { return *k2_; }
    const Field& k() const { return k2_->base(); }
    const AdditiveCharacter& nu_k() const { return nu_k_; }
    long long order() const { return n_; }
    int p() const { return k2_->p(); }
    int q() const { return q_; }

    // matrix [[a,b],[c,d]] over k: mat id = ((a*q + b)*q + c)*q + d
    int encode_mat(int a, int b, int c, int d) const { return ((a * q_ + b) * q_ + c) * q_ + d; }
    int mat_a(int m) const { return (m / (q_ * q_ * q_)) % q_; }
    int mat_b(int m) const { return (m / (q_ * q_)) % q_; }
    int mat_c(int m) const { return (m / q_) % q_; }
    int mat_d(int m) const { return m % q_; }
    int encode(int m, int y) const { return y + q2_ * m; }  // matrix most significant
    int mat_of(int x) const { return static_cast<int>(x / q2_); }
    int ext_of(int x) const { return static_cast<int>(x % q2_); }

    int mat_mul(int m1, int m2) const {
        const Field& k = k2_->base();
        const int a1 = mat_a(m1), b1 = mat_b(m1), c1 = mat_c(m1), d1 = mat_d(m1);
        const int a2 = mat_a(m2), b2 = mat_b(m2), c2 = mat_c(m2), d2 = mat_d(m2);
        return encode_mat(k.add(k.mul(a1, a2), k.mul(b1, c2)), k.add(k.mul(a1, b2), k.mul(b1, d2)),
                          k.add(k.mul(c1, a2), k.mul(d1, c2)), k.add(k.mul(c1, b2), k.mul(d1, d2)));
    }
    int mat_det(int m) const {
        const Field& k = k2_->base();
        return k.sub(k.mul(mat_a(m), mat_d(m)), k.mul(mat_b(m), mat_c(m)));
    }
    int mat_trace(int m) const { return k2_->base().add(mat_a(m), mat_d(m)); }
    int mat_inverse(int m) const {
        const Field& k = k2_->base();
        const int det = mat_det(m);
        if (det == 0) throw std::domain_error("LevelZeroRing: singular matrix");
        const int di = k.inv(det);
        return encode_mat(k.mul(di, mat_d(m)), k.mul(di, k.neg(mat_b(m))),
                          k.mul(di, k.neg(mat_c(m))), k.mul(di, mat_a(m)));
    }

    int zero() const { return 0; }
    int one() const { return encode(encode_mat(1, 0, 0, 1), 1); }
    int add(int x, int y) const {
        const Field& k = k2_->base();
        const int m1 = mat_of(x), m2 = mat_of(y);
        const int m = encode_mat(k.add(mat_a(m1), mat_a(m2)), k.add(mat_b(m1), mat_b(m2)),
                                 k.add(mat_c(m1), mat_c(m2)), k.add(mat_d(m1), mat_d(m2)));
        return encode(m, k2_->add(ext_of(x), ext_of(y)));
    }
    int neg(int x) const {
        const Field& k = k2_->base();
        const int m = mat_of(x);
        return encode(encode_mat(k.neg(mat_a(m)), k.neg(mat_b(m)), k.neg(mat_c(m)), k.neg(mat_d(m))),
                      k2_->neg(ext_of(x)));
    }
    int mul(int x, int y) const {
        return encode(mat_mul(mat_of(x), mat_of(y)), k2_->mul(ext_of(x), ext_of(y)));
    }
    bool is_unit(int x) const { return mat_det(mat_of(x)) != 0 && ext_of(x) != 0; }
    int inverse(int x) const {
        if (!is_unit(x)) throw std::domain_error("LevelZeroRing: not a unit");
        return encode(mat_inverse(mat_of(x)), k2_->inv(ext_of(x)));
    }

    int nu_exponent(int x) const {
        const Field& k = k2_->base();
        return nu_k_.exponent(k.sub(mat_trace(mat_of(x)), k2_->rel_trace(ext_of(x))));
    }
    cplx nu(int x) const { return zeta_[nu_exponent(x)]; }
    int nu_exponent_of_product(int x, int y) const {
        const Field& k = k2_->base();
        const int m1 = mat_of(x), m2 = mat_of(y);
        // tr(m1 m2) = a1 a2 + b1 c2 + c1 b2 + d1 d2
        const int tr = k.add(k.add(k.mul(mat_a(m1), mat_a(m2)), k.mul(mat_b(m1), mat_c(m2))),
                             k.add(k.mul(mat_c(m1), mat_b(m2)), k.mul(mat_d(m1), mat_d(m2))));
        return nu_k_.exponent(k.sub(tr, k2_->rel_trace(k2_->mul(ext_of(x), ext_of(y)))));
    }
    const std::vector<cplx>& zeta() const { return zeta_; }

    std::vector<int> units() const {
        std::vector<int> u;
        for (long long m = 0; m < q4_; ++m) {
            if (mat_det(static_cast<int>(m)) == 0) continue;
            for (int y = 1; y < q2_; ++y) u.push_back(encode(static_cast<int>(m), y));
        }
        return u;
    }
    EnumeratedGroup unit_group() const {
        ring_detail::check_unit_group_cap(order());
        return {units(), [this](int a, int b) { return mul(a, b); },
                [this](int a) { return inverse(a); }, one()};
    }
    std::vector<int> gl2_elements() const {
        std::vector<int> v;
        for (long long m = 0; m < q4_; ++m)
            if (mat_det(static_cast<int>(m)) != 0) v.push_back(static_cast<int>(m));
        return v;
    }
    EnumeratedGroup gl2_group() const {
        return {gl2_elements(), [this](int a, int b) { return mat_mul(a, b); },
                [this](int a) { return mat_inverse(a); }, encode_mat(1, 0, 0, 1)};
    }

private:
    const Field* k2_;
    AdditiveCharacter nu_k_;
    int q_, q2_;
    long long q4_, n_;
    std::vector<cplx> zeta_;
};

/// 3x3 matrices over a field, for cross-checking the Heisenberg pattern
/// against literal matrix multiplication and the hermitian-form identity.
struct Mat3 {
    const Field* F;
    int e[3][3];

    static Mat3 zero3(const Field& F) {
        Mat3 m{&F, {}};
        return m;
    }
    static Mat3 pattern(const HeisenbergRing& R, int x) {
        const Field& k2 = R.k2();
        Mat3 m = zero3(k2);
        const int a = R.alpha_of(x), b = R.beta_of(x), c = R.gamma_of(x);
        m.e[0][0] = a;
        m.e[0][1] = b;
        m.e[0][2] = c;
        m.e[1][1] = k2.frobenius(a);
        m.e[1][2] = k2.frobenius(b);
        m.e[2][2] = a;
        return m;
    }
    /// antidiagonal form diag-flip(1, -1, 1)
    static Mat3 hermitian_form(const Field& F) {
        Mat3 m = zero3(F);
        m.e[0][2] = 1;
        m.e[1][1] = F.neg(1);
        m.e[2][0] = 1;
        return m;
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r = zero3(*F);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int s = 0;
                for (int k = 0; k < 3; ++k) s = F->add(s, F->mul(e[i][k], o.e[k][j]));
                r.e[i][j] = s;
            }
        return r;
    }
    /// conjugate transpose (entrywise Frobenius)
    Mat3 star() const {
        Mat3 r = zero3(*F);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.e[j][i] = F->frobenius(e[i][j]);
        return r;
    }
    bool operator==(const Mat3& o) const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (e[i][j] != o.e[i][j]) return false;
        return true;
    }
};

}  // namespace ringfe
