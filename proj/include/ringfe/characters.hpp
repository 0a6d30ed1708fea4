#pragma once

// Additive and multiplicative characters of F_q and F_{q^2}, regularity
// testing, and Gauss sums.  Character values are complex doubles; every
// root of unity is evaluated from its exact angle, never by repeated
// multiplication.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "finite_field.hpp"

namespace ringfe {

using cplx = std::complex<double>;

/// exp(2*pi*i * j / m) for j = 0..m-1, each from its exact angle.
inline std::vector<cplx> root_of_unity_table(int m) {
    std::vector<cplx> t(m);
    for (int j = 0; j < m; ++j)
        t[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
    return t;
}

/// x -> zeta_p^{Tr_{K/F_p}(a*x)} on a field K, twisted by the shift a.
/// Nontrivial exactly when a != 0.
class AdditiveCharacter {
public:
    AdditiveCharacter(const Field& field, int shift)
        : field_(&field), shift_(shift), zeta_(root_of_unity_table(field.p())) {
        if (shift < 0 || shift >= field.size())
            throw std::invalid_argument("AdditiveCharacter: shift out of range");
    }

    const Field& field() const { return *field_; }
    int shift() const { return shift_; }
    bool is_trivial() const { return shift_ == 0; }

    /// Exponent of zeta_p, i.e. Tr(a*x) as an integer in [0, p).
    int exponent(int x) const { return field_->abs_trace(field_->mul(shift_, x)); }
    cplx operator()(int x) const { return zeta_[exponent(x)]; }

    AdditiveCharacter inverse() const { return {*field_, field_->neg(shift_)}; }

private:
    const Field* field_;
    int shift_;
    std::vector<cplx> zeta_;
};

/// generator^m -> zeta_{q^d-1}^{index*m}; value at 0 is 0.
/// index 0 is the trivial character.  A character is fully described by
/// (field, index), so it serializes as a single integer.
class MultiplicativeCharacter {
public:
    MultiplicativeCharacter(const Field& field, long long index)
        : field_(&field), order_(field.size() - 1), zeta_(root_of_unity_table(order_)) {
        index_ = static_cast<int>(((index % order_) + order_) % order_);
    }

    const Field& field() const { return *field_; }
    int index() const { return index_; }
    bool is_trivial() const { return index_ == 0; }

    cplx operator()(int x) const {
        if (x == 0) return {0.0, 0.0};
        return zeta_[static_cast<int>((static_cast<long long>(index_) * field_->dlog(x)) % order_)];
    }

    MultiplicativeCharacter inverse() const { return {*field_, -index_}; }
    /// theta^q, the Frobenius twist.
    MultiplicativeCharacter frobenius_twist() const {
        return {*field_, static_cast<long long>(index_) * field_->base_size()};
    }

private:
    const Field* field_;
    int order_;
    int index_;
    std::vector<cplx> zeta_;
};

/// True iff theta (a character of F_{q^2}^x) does not factor through the
/// norm map to F_q^x.  Decided by brute force over all q-1 candidate
/// characters chi of F_q^x; the arithmetic shortcut (q+1) | index is
/// is_regular_by_index below.
inline bool is_regular(const MultiplicativeCharacter& theta) {
    const Field& k2 = theta.field();
    if (k2.degree() != 2)
        throw std::invalid_argument("is_regular: character must live on the quadratic extension");
    const Field& k = k2.base();
    const int q = k.size();
    for (long long c = 0; c < q - 1; ++c) {
        MultiplicativeCharacter chi(k, c);
        bool matches = true;
        for (int x = 1; x < k2.size() && matches; ++x)
            if (std::abs(theta(x) - chi(k2.rel_norm(x))) > 1e-9) matches = false;
        if (matches) return false;
    }
    return true;
}

/// Shortcut form of the same predicate: theta factors through the norm
/// exactly when (q+1) divides its index.
inline bool is_regular_by_index(const MultiplicativeCharacter& theta) {
    if (theta.field().degree() != 2)
        throw std::invalid_argument("is_regular_by_index: character must live on the quadratic extension");
    return theta.index() % (theta.field().base_size() + 1) != 0;
}

/// Gauss sum sum_{a in F_{q^2}^x} theta(a) * nu(Tr_{F_{q^2}/F_q}(a)),
/// for theta on F_{q^2} and a nontrivial nu on F_q.
inline cplx gauss_sum(const MultiplicativeCharacter& theta, const AdditiveCharacter& nu) {
    const Field& k2 = theta.field();
    if (k2.degree() != 2) throw std::invalid_argument("gauss_sum: theta must live on the quadratic extension");
    if (&nu.field() != &k2.base()) throw std::invalid_argument("gauss_sum: nu must live on the base field");
    if (nu.is_trivial()) throw std::invalid_argument("gauss_sum: nu must be nontrivial");
    cplx s = 0.0;
    for (int a = 1; a < k2.size(); ++a) s += theta(a) * nu(k2.rel_trace(a));
    return s;
}

}  // namespace ringfe
