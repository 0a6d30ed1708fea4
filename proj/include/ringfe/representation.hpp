#pragma once

// Table-based representations of enumerated groups: induction, characters,
// inner products.  Matrices are dense complex; groups here are small
// (full tables only up to ~10^3 elements).

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "characters.hpp"
#include "group.hpp"

namespace ringfe {

using Matrix = Eigen::MatrixXcd;

class Representation {
public:
    Representation(const EnumeratedGroup& G, std::vector<Matrix> mats)
        : G_(&G), mats_(std::move(mats)) {
        if (static_cast<int>(mats_.size()) != G.size())
            throw std::invalid_argument("Representation: one matrix per group element required");
        dim_ = static_cast<int>(mats_.empty() ? 0 : mats_[0].rows());
        for (auto& m : mats_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw std::invalid_argument("Representation: inconsistent matrix sizes");
    }

    const EnumeratedGroup& group() const { return *G_; }
    int dim() const { return dim_; }
    const Matrix& operator()(int id) const {
        int pos = G_->position(id);
        if (pos < 0) throw std::domain_error("Representation: element not in group");
        return mats_[pos];
    }
    const Matrix& at_position(int pos) const { return mats_[pos]; }

    std::complex<double> trace(int id) const { return (*this)(id).trace(); }

    /// max |R(gh) - R(g)R(h)| over all pairs (exhaustive; use for |G| <= ~10^3).
    double homomorphism_defect() const {
        double worst = 0.0;
        for (int a : G_->elements())
            for (int b : G_->elements()) {
                double d = ((*this)(G_->mul(a, b)) - (*this)(a) * (*this)(b)).cwiseAbs().maxCoeff();
                worst = std::max(worst, d);
            }
        return worst;
    }

private:
    const EnumeratedGroup* G_;
    std::vector<Matrix> mats_;
    int dim_;
};

inline Representation one_dimensional(const EnumeratedGroup& G,
                                      const std::function<std::complex<double>(int)>& chi) {
    std::vector<Matrix> mats;
    mats.reserve(G.size());
    for (int g : G.elements()) {
        Matrix m(1, 1);
        m(0, 0) = chi(g);
        mats.push_back(m);
    }
    return {G, std::move(mats)};
}

/// Class function presented as one value per group element (constant on
/// conjugacy classes when it comes from a character).
class ClassFunction {
public:
    ClassFunction(const EnumeratedGroup& G, std::vector<std::complex<double>> values)
        : G_(&G), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != G.size())
            throw std::invalid_argument("ClassFunction: one value per element required");
    }
    static ClassFunction from(const EnumeratedGroup& G,
                              const std::function<std::complex<double>(int)>& f) {
        std::vector<std::complex<double>> v;
        v.reserve(G.size());
        for (int g : G.elements()) v.push_back(f(g));
        return {G, std::move(v)};
    }

    const EnumeratedGroup& group() const { return *G_; }
    std::complex<double> operator()(int id) const {
        int pos = G_->position(id);
        if (pos < 0) throw std::domain_error("ClassFunction: element not in group");
        return values_[pos];
    }
    std::complex<double> at_position(int pos) const { return values_[pos]; }
    const std::vector<std::complex<double>>& values() const { return values_; }

private:
    const EnumeratedGroup* G_;
    std::vector<std::complex<double>> values_;
};

inline ClassFunction character_of(const Representation& rho) {
    return ClassFunction::from(rho.group(), [&rho](int g) { return rho.trace(g); });
}

/// <f, g> = |G|^-1 sum f(x) conj(g(x)).  Equals 1 for an irreducible character.
inline std::complex<double> inner_product(const ClassFunction& a, const ClassFunction& b) {
    if (&a.group() != &b.group())
        throw std::invalid_argument("inner_product: class functions on different groups");
    std::complex<double> s = 0.0;
    for (int pos = 0; pos < a.group().size(); ++pos)
        s += a.at_position(pos) * std::conj(b.at_position(pos));
    return s / static_cast<double>(a.group().size());
}

/// Standard induced representation from a subgroup K (shared element ids)
/// on functions K\G -> V: block (i,j) of Ind(g) is sigma(r_i g r_j^-1)
/// when that element lies in K, zero otherwise.
inline Representation induce(const EnumeratedGroup& G, const EnumeratedGroup& K,
                             const Representation& sigma) {
    if (&sigma.group() != &K) throw std::invalid_argument("induce: sigma must live on K");
    for (int k : K.elements())
        if (!G.contains(k)) throw std::invalid_argument("induce: K is not a subgroup of G");
    if (G.size() % K.size() != 0) throw std::invalid_argument("induce: |K| does not divide |G|");
    const auto reps = G.right_coset_reps(K);
    const int m = static_cast<int>(reps.size());
    const int d = sigma.dim();
    if (static_cast<long long>(m) * d > 512)
        throw std::length_error("induce: index * dim above the 512 cap");

    std::vector<Matrix> mats;
    mats.reserve(G.size());
    for (int g : G.elements()) {
        Matrix M = Matrix::Zero(m * d, m * d);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                int t = G.mul(G.mul(reps[i], g), G.inv(reps[j]));
                if (K.contains(t)) M.block(i * d, j * d, d, d) = sigma(t);
            }
        mats.push_back(std::move(M));
    }
    return {G, std::move(mats)};
}

/// Multiplicity vector of the characters of a cyclic subgroup inside a
/// character chi restricted to it; chi_sub[j](t0^m) = zeta_|T|^{jm}.
inline std::vector<std::complex<double>> cyclic_restriction_multiplicities(
    const std::vector<int>& cyclic_elements_in_power_order,
    const std::function<std::complex<double>(int)>& chi) {
    const int n = static_cast<int>(cyclic_elements_in_power_order.size());
    std::vector<std::complex<double>> mult(n, 0.0);
    const auto zeta = root_of_unity_table(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (int m = 0; m < n; ++m)
            s += chi(cyclic_elements_in_power_order[m]) * std::conj(zeta[(j * m) % n]);
        mult[j] = s / static_cast<double>(n);
    }
    return mult;
}

}  // namespace ringfe
