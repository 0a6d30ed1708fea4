#pragma once

// Cuspidal characters of GL_2(F_q) attached to regular characters theta of
// F_{q^2}^x, handled entirely at the character level, plus the component
// Fourier transforms on M_2(F_q) and F_{q^2} used by the level-zero checks.
//
// Values on GL_2(k), by conjugacy type:
//   central aI                      (q-1) theta(a)
//   equal eigenvalues, noncentral   -theta(a)
//   distinct eigenvalues in k       0
//   eigenvalues alpha, alpha^q      -(theta(alpha) + theta(alpha^q))
// Only the elliptic value is taken as input; the rest are pinned by the
// orthogonality oracles in the tests (<chi,chi> = 1, chi(1) > 0, chi
// orthogonal to every principal-series character).

#include <complex>
#include <stdexcept>
#include <vector>

#include "characters.hpp"
#include "fourier.hpp"
#include "rings.hpp"

namespace ringfe {

enum class Gl2ClassType { Central, Unipotent, Split, Elliptic };

struct Gl2ClassInfo {
    Gl2ClassType type;
    int eig1 = 0;  // k-id for Central/Unipotent/Split; k2-id for Elliptic
    int eig2 = 0;  // second eigenvalue (k-id for Split, k2-id alpha^q for Elliptic)
};

/// Classify an invertible matrix id by the roots of its characteristic
/// polynomial x^2 - tr x + det.
inline Gl2ClassInfo classify_gl2(const LevelZeroRing& R, int m) {
    const Field& k = R.k();
    const Field& k2 = R.k2();
    const int tr = R.mat_trace(m);
    const int det = R.mat_det(m);
    if (det == 0) throw std::domain_error("classify_gl2: singular matrix");
    int root = -1;
    for (int x = 0; x < k.size(); ++x)
        if (k.add(k.sub(k.mul(x, x), k.mul(tr, x)), det) == 0) { root = x; break; }
    if (root >= 0) {
        const int other = k.sub(tr, root);
        if (other != root) {
            const int lo = std::min(root, other), hi = std::max(root, other);
            return {Gl2ClassType::Split, lo, hi};
        }
        const bool central = m == R.encode_mat(root, 0, 0, root);
        return {central ? Gl2ClassType::Central : Gl2ClassType::Unipotent, root, root};
    }
    for (int a = 0; a < k2.size(); ++a) {
        if (k2.in_base(a)) continue;
        if (k2.add(k2.sub(k2.mul(a, a), k2.mul(k2.embed(tr), a)), k2.embed(det)) == 0)
            return {Gl2ClassType::Elliptic, a, k2.frobenius(a)};
    }
    throw std::logic_error("classify_gl2: characteristic polynomial has no roots anywhere");
}

/// Character of the cuspidal representation attached to a regular theta,
/// as a vector over all matrix ids (zero at singular matrices).
inline std::vector<cplx> cuspidal_character(const LevelZeroRing& R,
                                            const MultiplicativeCharacter& theta) {
    if (&theta.field() != &R.k2())
        throw std::invalid_argument("cuspidal_character: theta must live on k2");
    if (!is_regular(theta))
        throw std::invalid_argument("cuspidal_character: theta is not regular (factors through the norm)");
    const Field& k2 = R.k2();
    const int q = R.q();
    const long long nmat = static_cast<long long>(q) * q * q * q;
    std::vector<cplx> chi(nmat, cplx(0.0));
    for (int m = 0; m < nmat; ++m) {
        if (R.mat_det(m) == 0) continue;
        const auto info = classify_gl2(R, m);
        switch (info.type) {
            case Gl2ClassType::Central:
                chi[m] = static_cast<double>(q - 1) * theta(k2.embed(info.eig1));
                break;
            case Gl2ClassType::Unipotent:
                chi[m] = -theta(k2.embed(info.eig1));
                break;
            case Gl2ClassType::Split:
                chi[m] = 0.0;
                break;
            case Gl2ClassType::Elliptic:
                chi[m] = -(theta(info.eig1) + theta(info.eig2));
                break;
        }
    }
    return chi;
}

/// Character of Ind_B^G(chi1 x chi2) from the Borel of upper-triangular
/// matrices, by the induced-character formula (brute force over G).
inline std::vector<cplx> principal_series_character(const LevelZeroRing& R,
                                                    const MultiplicativeCharacter& chi1,
                                                    const MultiplicativeCharacter& chi2) {
    const Field& k = R.k();
    const int q = k.size();
    const long long nmat = static_cast<long long>(q) * q * q * q;
    auto gl2 = R.gl2_elements();
    const double borel_order = static_cast<double>(q) * (q - 1) * (q - 1);
    std::vector<cplx> chi(nmat, cplx(0.0));
    for (int g : gl2) {
        cplx s = 0.0;
        for (int x : gl2) {
            const int y = R.mat_mul(R.mat_mul(x, g), R.mat_inverse(x));
            if (R.mat_c(y) == 0) s += chi1(R.mat_a(y)) * chi2(R.mat_d(y));
        }
        chi[g] = s / borel_order;
    }
    return chi;
}

/// Character of the level-zero representation on GL_2(k) x k2^x:
/// f(m, y) = chi_theta(m) * theta^-1(y), zero off units.
inline RingFunction level_zero_character_function(const LevelZeroRing& R,
                                                  const MultiplicativeCharacter& theta) {
    auto chi = cuspidal_character(R, theta);
    auto theta_inv = theta.inverse();
    RingFunction f(R.order(), cplx(0.0));
    for (long long x = 0; x < R.order(); ++x) {
        const int m = R.mat_of(static_cast<int>(x));
        const int y = R.ext_of(static_cast<int>(x));
        if (y == 0) continue;
        f[x] = chi[m] * theta_inv(y);
    }
    return f;
}

/// Component transform on M_2(k):  (c0/q) * sum_x f(x) nu(tr(x y)), where
/// the constant normalization q^-1 is pinned by the q=2 brute-force check
/// against  -tau(theta, nu) f(y^-1).
inline std::vector<cplx> gl2_component_transform(const LevelZeroRing& R,
                                                 const std::vector<cplx>& f) {
    const Field& k = R.k();
    const int q = k.size();
    const long long nmat = static_cast<long long>(q) * q * q * q;
    if (static_cast<long long>(f.size()) != nmat)
        throw std::invalid_argument("gl2_component_transform: length mismatch");
    const auto& nu = R.nu_k();
    auto zeta = root_of_unity_table(R.p());
    std::vector<cplx> out(nmat, cplx(0.0));
    for (int y = 0; y < nmat; ++y) {
        cplx s = 0.0;
        for (int x = 0; x < nmat; ++x) {
            // tr(x y) = a1 a2 + b1 c2 + c1 b2 + d1 d2
            const int tr = k.add(
                k.add(k.mul(R.mat_a(x), R.mat_a(y)), k.mul(R.mat_b(x), R.mat_c(y))),
                k.add(k.mul(R.mat_c(x), R.mat_b(y)), k.mul(R.mat_d(x), R.mat_d(y))));
            s += f[x] * zeta[nu.exponent(tr)];
        }
        out[y] = s / static_cast<double>(q);
    }
    return out;
}

/// Component transform on k2:  q^-1 sum_{x != 0} f(x) nu(-Tr(x y)).
inline std::vector<cplx> k2_component_transform(const LevelZeroRing& R,
                                                const std::vector<cplx>& f) {
    const Field& k2 = R.k2();
    const Field& k = R.k();
    if (static_cast<int>(f.size()) != k2.size())
        throw std::invalid_argument("k2_component_transform: length mismatch");
    const auto& nu = R.nu_k();
    auto zeta = root_of_unity_table(R.p());
    std::vector<cplx> out(k2.size(), cplx(0.0));
    for (int y = 0; y < k2.size(); ++y) {
        cplx s = 0.0;
        for (int x = 1; x < k2.size(); ++x)
            s += f[x] * zeta[nu.exponent(k.neg(k2.rel_trace(k2.mul(x, y))))];
        out[y] = s / static_cast<double>(k.size());
    }
    return out;
}

/// Regular character indices of k2^x, smallest Frobenius-orbit
/// representative first (index m with m <= q*m mod (q^2-1)).
inline std::vector<int> regular_theta_indices(const Field& k2, bool orbit_reps_only = false) {
    std::vector<int> out;
    const int order = k2.size() - 1;
    const int q = k2.base_size();
    for (int m = 0; m < order; ++m) {
        MultiplicativeCharacter theta(k2, m);
        if (!is_regular(theta)) continue;
        if (orbit_reps_only && (static_cast<long long>(m) * q) % order < m) continue;
        out.push_back(m);
    }
    return out;
}

}  // namespace ringfe
