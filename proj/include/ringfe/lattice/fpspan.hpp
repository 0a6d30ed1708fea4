#pragma once

// Subspaces of F_p^n in reduced row echelon form.  The RREF basis is the
// canonical form: two spans are equal exactly when their RREF matrices are
// identical.  Everything here is exact.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ringfe::lattice {

using FpVec = std::vector<std::uint8_t>;

inline int mod_inverse(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    throw std::domain_error("mod_inverse: not invertible");
}

/// An F_p-subspace presented by its reduced row echelon basis.
class FpSpan {
public:
    FpSpan(int p, int width) : p_(p), width_(width) {}

    int p() const { return p_; }
    int width() const { return width_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<FpVec>& basis() const { return rows_; }

    /// Reduce v against the current basis (in place); returns the index of
    /// the leading coordinate, or -1 when v reduces to zero.
    int reduce(FpVec& v) const {
        for (const auto& row : rows_) {
            int piv = pivot_of(row);
            if (v[piv]) {
                const int c = v[piv];
                for (int j = piv; j < width_; ++j)
                    v[j] = static_cast<std::uint8_t>((v[j] + (p_ - 1) * c % p_ * row[j]) % p_);
            }
        }
        for (int j = 0; j < width_; ++j)
            if (v[j]) return j;
        return -1;
    }

    bool contains(FpVec v) const { return reduce(v) < 0; }

    /// Insert a vector; returns true when it enlarged the span.
    bool insert(FpVec v) {
        if (static_cast<int>(v.size()) != width_) throw std::invalid_argument("FpSpan: width mismatch");
        for (auto& x : v) x = static_cast<std::uint8_t>(x % p_);
        int piv = reduce(v);
        if (piv < 0) return false;
        const int inv = mod_inverse(v[piv], p_);
        for (int j = piv; j < width_; ++j) v[j] = static_cast<std::uint8_t>((v[j] * inv) % p_);
        // back-substitute into existing rows, keep rows sorted by pivot
        for (auto& row : rows_) {
            if (row[piv]) {
                const int c = row[piv];
                for (int j = piv; j < width_; ++j)
                    row[j] = static_cast<std::uint8_t>((row[j] + (p_ - 1) * c % p_ * v[j]) % p_);
            }
        }
        auto it = rows_.begin();
        while (it != rows_.end() && pivot_of(*it) < piv) ++it;
        rows_.insert(it, std::move(v));
        return true;
    }
    void insert_all(const std::vector<FpVec>& vs) {
        for (const auto& v : vs) insert(v);
    }

    bool operator==(const FpSpan& o) const {
        return p_ == o.p_ && width_ == o.width_ && rows_ == o.rows_;
    }
    bool contains_span(const FpSpan& o) const {
        for (const auto& r : o.rows_)
            if (!contains(r)) return false;
        return true;
    }

    FpSpan sum(const FpSpan& o) const {
        FpSpan s = *this;
        s.insert_all(o.rows_);
        return s;
    }

    /// Zassenhaus intersection.
    FpSpan intersect(const FpSpan& o) const {
        FpSpan big(p_, 2 * width_);
        for (const auto& r : rows_) {
            FpVec v(2 * width_, 0);
            for (int j = 0; j < width_; ++j) v[j] = v[width_ + j] = r[j];
            big.insert(std::move(v));
        }
        for (const auto& r : o.rows_) {
            FpVec v(2 * width_, 0);
            for (int j = 0; j < width_; ++j) v[j] = r[j];
            big.insert(std::move(v));
        }
        FpSpan result(p_, width_);
        for (const auto& r : big.basis()) {
            bool left_zero = true;
            for (int j = 0; j < width_; ++j)
                if (r[j]) { left_zero = false; break; }
            if (left_zero) result.insert(FpVec(r.begin() + width_, r.end()));
        }
        return result;
    }

    /// Restriction: keep coordinates [from, to) only, re-echelonized.
    FpSpan restricted(int from, int to) const {
        FpSpan r(p_, to - from);
        for (const auto& row : rows_) r.insert(FpVec(row.begin() + from, row.begin() + to));
        return r;
    }

    /// Basis of {x : M x = 0} for the constraint rows in `constraints`
    /// (each of length width).
    static FpSpan kernel(int p, int width, const std::vector<FpVec>& constraints) {
        FpSpan rowspace(p, width);
        rowspace.insert_all(constraints);
        const auto& R = rowspace.basis();
        std::vector<int> pivots;
        std::vector<bool> is_pivot(width, false);
        for (const auto& r : R) {
            int piv = pivot_of(r);
            pivots.push_back(piv);
            is_pivot[piv] = true;
        }
        FpSpan ker(p, width);
        for (int free = 0; free < width; ++free) {
            if (is_pivot[free]) continue;
            FpVec v(width, 0);
            v[free] = 1;
            for (std::size_t i = 0; i < R.size(); ++i)
                v[pivots[i]] = static_cast<std::uint8_t>((p - R[i][free] % p) % p);
            ker.insert(std::move(v));
        }
        return ker;
    }

    static int pivot_of(const FpVec& row) {
        for (int j = 0; j < static_cast<int>(row.size()); ++j)
            if (row[j]) return j;
        throw std::logic_error("FpSpan: zero row in basis");
    }

private:
    int p_;
    int width_;
    std::vector<FpVec> rows_;  // RREF, sorted by pivot
};

/// Solve sum_i x_i rows[i] = target for independent rows; nullopt when the
/// target lies outside the span.
inline std::optional<FpVec> express_in_basis(int p, const std::vector<FpVec>& rows,
                                             const FpVec& target) {
    if (rows.empty()) return std::nullopt;
    const int width = static_cast<int>(rows[0].size());
    const int m = static_cast<int>(rows.size());
    // Gaussian elimination on the transposed system [rows^T | target]
    std::vector<std::vector<int>> M(width, std::vector<int>(m + 1, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < width; ++j) M[j][i] = rows[i][j] % p;
    for (int j = 0; j < width; ++j) M[j][m] = target[j] % p;

    std::vector<int> pivot_col_of_row(width, -1);
    int r = 0;
    for (int c = 0; c < m && r < width; ++c) {
        int pr = -1;
        for (int i = r; i < width; ++i)
            if (M[i][c]) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        const int inv = mod_inverse(M[r][c], p);
        for (int j = 0; j <= m; ++j) M[r][j] = M[r][j] * inv % p;
        for (int i = 0; i < width; ++i) {
            if (i == r || !M[i][c]) continue;
            const int f = M[i][c];
            for (int j = 0; j <= m; ++j) M[i][j] = (M[i][j] + (p - 1) * f % p * M[r][j]) % p;
        }
        pivot_col_of_row[r] = c;
        ++r;
    }
    FpVec x(m, 0);
    for (int i = 0; i < r; ++i) x[pivot_col_of_row[i]] = static_cast<std::uint8_t>(M[i][m]);
    for (int i = r; i < width; ++i)
        if (M[i][m]) return std::nullopt;
    // verify (cheap, and guards against dependent input rows)
    FpVec check(width, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < width; ++j)
            check[j] = static_cast<std::uint8_t>((check[j] + x[i] * rows[i][j]) % p);
    for (int j = 0; j < width; ++j)
        if (check[j] % p != target[j] % p) return std::nullopt;
    return x;
}

}  // namespace ringfe::lattice
