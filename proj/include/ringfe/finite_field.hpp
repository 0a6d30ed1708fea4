#pragma once

// Exact arithmetic in F_q (q = p^f) and its quadratic extension F_{q^2},
// built as a degree-2 tower over F_q.  All fields are tiny (q^2 <= 256),
// so every operation is a table lookup.  Element ids are the canonical
// enumeration: the id is the integer whose base-p (resp. base-q) digits
// are the coordinates of the element, least significant digit first.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ringfe {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// F_q or its quadratic extension, immutable after construction.
/// Obtain instances through Field::get(); they live for the whole process,
/// so elements may hold plain pointers.  Concurrent reads are safe.
class Field {
public:
    /// Interned lookup: Field::get(p, f, 1) is F_{p^f}; Field::get(p, f, 2)
    /// is F_{p^{2f}} presented as a quadratic extension of F_{p^f}.
    /// Throws std::invalid_argument for non-prime p or sizes above 256.
    static const Field& get(int p, int f, int degree = 1);

    int p() const { return p_; }
    int f() const { return f_; }
    int degree() const { return degree_; }
    int size() const { return size_; }
    /// Size of the field the tower is built over (= p^f; equals size() when degree==1).
    int base_size() const { return base_size_; }

    /// Monic defining polynomial, non-leading coefficients only,
    /// constant term first.  Coefficients are F_p values for degree 1
    /// and base-field element ids for degree 2.
    const std::vector<int>& defining_polynomial() const { return poly_; }

    // arithmetic on element ids
    int add(int a, int b) const { return add_[a * size_ + b]; }
    int sub(int a, int b) const { return add_[a * size_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * size_ + b]; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("Field::inv: zero is not invertible");
        return inv_[a];
    }
    int pow(int a, long long e) const;

    /// Row of the multiplication table: mul_row(a)[b] == a*b.
    const int* mul_row(int a) const { return mul_.data() + static_cast<std::size_t>(a) * size_; }
    const int* add_row(int a) const { return add_.data() + static_cast<std::size_t>(a) * size_; }

    /// x -> x^q where q = base_size().  Identity on degree-1 fields.
    int frobenius(int a) const { return frob_[a]; }

    /// Relative trace x + x^q down to the base field (degree-2 fields only).
    /// Returns a base-field element id.
    int rel_trace(int a) const {
        require_tower();
        return rel_trace_[a];
    }
    /// Relative norm x * x^q = x^{q+1} down to the base field.
    int rel_norm(int a) const {
        require_tower();
        return rel_norm_[a];
    }
    /// Base-field id -> id in this field (degree-2: the pair (a, 0)).
    int embed(int base_elt) const {
        require_tower();
        return base_elt;  // pairs are encoded low digit first
    }
    bool in_base(int a) const { return degree_ == 1 || a < base_size_; }
    /// For a in the base subfield of a degree-2 field, its base-field id.
    int to_base(int a) const {
        require_tower();
        if (a >= base_size_) throw std::domain_error("Field::to_base: element not in subfield");
        return a;
    }

    /// Cached primitive element (first id, in enumeration order, of
    /// multiplicative order size()-1).
    int generator() const { return generator_; }
    /// Discrete log with respect to generator(); a must be nonzero.
    int dlog(int a) const {
        if (a == 0) throw std::domain_error("Field::dlog: zero");
        return dlog_[a];
    }
    int multiplicative_order(int a) const;

    /// Absolute trace down to F_p, as an integer in [0, p).
    int abs_trace(int a) const { return abs_trace_[a]; }

    const Field& base() const {
        require_tower();
        return *base_;
    }
    const Field& quadratic_extension() const {
        if (degree_ != 1) throw std::logic_error("Field: already a quadratic extension");
        return get(p_, f_, 2);
    }

    /// Coordinates over the tower base (length = degree) or over F_p (degree 1, length f).
    std::vector<int> coordinates(int a) const;
    std::string to_string(int a) const;

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field(int p, int f, int degree);
    void require_tower() const {
        if (degree_ != 2) throw std::logic_error("Field: operation requires the quadratic tower");
    }
    void build_prime_power();  // degree 1
    void build_quadratic();    // degree 2 over base

    int p_, f_, degree_, size_, base_size_;
    const Field* base_ = nullptr;  // degree 2 only
    std::vector<int> poly_;
    std::vector<int> add_, mul_, neg_, inv_, frob_;
    std::vector<int> rel_trace_, rel_norm_;
    std::vector<int> abs_trace_, dlog_;
    int generator_ = 0;
};

namespace detail {

// Dense polynomial helpers over F_p, coefficient vectors constant-term first.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    // m is monic of degree dm (coefficient list of length dm+1)
    const int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            int& t = a[i - dm + j];
            t = ((t - c * m[j]) % p + p * p) % p;
        }
    }
    a.resize(dm);
    return a;
}

inline std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& m, int p) {
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(c), m, p);
}

// True iff "poly" (monic, constant-first, degree >= 1) has no monic divisor
// of degree in [1, deg/2].  Exhaustive trial division; fields here are tiny.
inline bool poly_irreducible(const std::vector<int>& poly, int p) {
    const int deg = static_cast<int>(poly.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long m = 0; m < count; ++m) {
            std::vector<int> div(d + 1, 0);
            long long mm = m;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<int>(mm % p);
                mm /= p;
            }
            div[d] = 1;
            std::vector<int> r = poly_mod(poly, div, p);
            bool zero = true;
            for (int c : r)
                if (c != 0) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace detail

inline Field::Field(int p, int f, int degree) : p_(p), f_(f), degree_(degree) {
    if (!is_prime(p) || p > 13) throw std::invalid_argument("Field: p must be prime, 2 <= p <= 13");
    if (f < 1 || (degree != 1 && degree != 2))
        throw std::invalid_argument("Field: need f >= 1 and degree in {1, 2}");
    long long bs = 1;
    for (int i = 0; i < f; ++i) bs *= p;
    long long sz = degree == 1 ? bs : bs * bs;
    if (sz > 256) throw std::invalid_argument("Field: size cap exceeded (q^degree <= 256)");
    base_size_ = static_cast<int>(bs);
    size_ = static_cast<int>(sz);
    if (degree == 1)
        build_prime_power();
    else
        build_quadratic();

    // generator = first element of full multiplicative order, then dlog table
    dlog_.assign(size_, -1);
    for (int g = 1; g < size_; ++g) {
        if (multiplicative_order(g) == size_ - 1) {
            generator_ = g;
            break;
        }
    }
    int x = 1;
    for (int e = 0; e < size_ - 1; ++e) {
        dlog_[x] = e;
        x = mul(x, generator_);
    }

    // absolute trace to F_p: sum of p-power Frobenius iterates
    abs_trace_.assign(size_, 0);
    const int iters = degree_ * f_;
    for (int a = 0; a < size_; ++a) {
        int acc = 0, t = a;
        for (int i = 0; i < iters; ++i) {
            acc = add(acc, t);
            t = pow(t, p_);
        }
        // acc lies in the prime subfield; its id is its F_p value
        if (acc >= p_) throw std::logic_error("Field: absolute trace not in F_p");
        abs_trace_[a] = acc;
    }
}

inline void Field::build_prime_power() {
    // canonical defining polynomial: first irreducible monic x^f + c_{f-1}x^{f-1} + ... + c_0
    // in lexicographic order on (c_{f-1}, ..., c_0)
    if (f_ == 1) {
        poly_ = {0};  // x - 0: unused, arithmetic is plain mod p
    } else {
        bool found = false;
        long long count = 1;
        for (int i = 0; i < f_; ++i) count *= p_;
        for (long long m = 0; m < count && !found; ++m) {
            std::vector<int> cand(f_ + 1, 0);
            long long mm = m;
            for (int i = f_ - 1; i >= 0; --i) {  // high coefficient = most significant
                cand[i] = static_cast<int>(mm % p_);
                mm /= p_;
            }
            cand[f_] = 1;
            if (detail::poly_irreducible(cand, p_)) {
                poly_.assign(cand.begin(), cand.end() - 1);
                found = true;
            }
        }
        if (!found) throw std::logic_error("Field: no irreducible polynomial found");
    }

    auto decode = [&](int id) {
        std::vector<int> c(f_, 0);
        for (int i = 0; i < f_; ++i) {
            c[i] = id % p_;
            id /= p_;
        }
        return c;
    };
    auto encode = [&](const std::vector<int>& c) {
        int id = 0;
        for (int i = f_ - 1; i >= 0; --i) id = id * p_ + (i < static_cast<int>(c.size()) ? c[i] : 0);
        return id;
    };
    std::vector<int> modulus = poly_;
    modulus.push_back(1);

    add_.assign(static_cast<std::size_t>(size_) * size_, 0);
    mul_.assign(static_cast<std::size_t>(size_) * size_, 0);
    neg_.assign(size_, 0);
    for (int a = 0; a < size_; ++a) {
        auto ca = decode(a);
        std::vector<int> cn(f_);
        for (int i = 0; i < f_; ++i) cn[i] = (p_ - ca[i]) % p_;
        neg_[a] = encode(cn);
        for (int b = 0; b < size_; ++b) {
            auto cb = decode(b);
            std::vector<int> cs(f_);
            for (int i = 0; i < f_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
            add_[static_cast<std::size_t>(a) * size_ + b] = encode(cs);
            auto cm = f_ == 1 ? std::vector<int>{(ca[0] * cb[0]) % p_}
                              : detail::poly_mul_mod(ca, cb, modulus, p_);
            mul_[static_cast<std::size_t>(a) * size_ + b] = encode(cm);
        }
    }
    inv_.assign(size_, 0);
    for (int a = 1; a < size_; ++a)
        for (int b = 1; b < size_; ++b)
            if (mul(a, b) == 1) {
                inv_[a] = b;
                break;
            }
    frob_.assign(size_, 0);
    for (int a = 0; a < size_; ++a) frob_[a] = a;  // x^q = x on F_q
}

inline void Field::build_quadratic() {
    base_ = &Field::get(p_, f_, 1);
    const Field& k = *base_;
    const int q = base_size_;

    // canonical quadratic over the base: first irreducible x^2 + c1 x + c0
    // in lexicographic order on (c1, c0), coefficients in base-field id order
    bool found = false;
    for (int c1 = 0; c1 < q && !found; ++c1) {
        for (int c0 = 0; c0 < q && !found; ++c0) {
            bool has_root = false;
            for (int x = 0; x < q; ++x) {
                int v = k.add(k.mul(x, x), k.add(k.mul(c1, x), c0));
                if (v == 0) { has_root = true; break; }
            }
            if (!has_root) {
                poly_ = {c0, c1};
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("Field: no irreducible quadratic over base");
    const int c0 = poly_[0], c1 = poly_[1];

    auto lo = [q](int id) { return id % q; };
    auto hi = [q](int id) { return id / q; };
    auto enc = [q](int a, int b) { return a + q * b; };

    add_.assign(static_cast<std::size_t>(size_) * size_, 0);
    mul_.assign(static_cast<std::size_t>(size_) * size_, 0);
    neg_.assign(size_, 0);
    for (int x = 0; x < size_; ++x) {
        const int a = lo(x), b = hi(x);
        neg_[x] = enc(k.neg(a), k.neg(b));
        for (int y = 0; y < size_; ++y) {
            const int c = lo(y), d = hi(y);
            add_[static_cast<std::size_t>(x) * size_ + y] = enc(k.add(a, c), k.add(b, d));
            // (a + bY)(c + dY) with Y^2 = -c1 Y - c0
            const int bd = k.mul(b, d);
            const int re = k.sub(k.mul(a, c), k.mul(bd, c0));
            const int im = k.sub(k.add(k.mul(a, d), k.mul(b, c)), k.mul(bd, c1));
            mul_[static_cast<std::size_t>(x) * size_ + y] = enc(re, im);
        }
    }
    inv_.assign(size_, 0);
    for (int a = 1; a < size_; ++a)
        for (int b = 1; b < size_; ++b)
            if (mul(a, b) == 1) {
                inv_[a] = b;
                break;
            }

    frob_.assign(size_, 0);
    rel_trace_.assign(size_, 0);
    rel_norm_.assign(size_, 0);
    for (int a = 0; a < size_; ++a) frob_[a] = pow(a, q);
    for (int a = 0; a < size_; ++a) {
        int tr = add(a, frob_[a]);
        int nm = mul(a, frob_[a]);
        if (hi(tr) != 0 || hi(nm) != 0)
            throw std::logic_error("Field: relative trace/norm escaped the base field");
        rel_trace_[a] = lo(tr);
        rel_norm_[a] = lo(nm);
    }
}

inline int Field::pow(int a, long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const int ord = size_ - 1;
    e %= ord;
    if (e < 0) e += ord;
    int r = 1, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

inline int Field::multiplicative_order(int a) const {
    if (a == 0) throw std::domain_error("Field::multiplicative_order: zero");
    int ord = 1, x = a;
    while (x != 1) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

inline std::vector<int> Field::coordinates(int a) const {
    if (degree_ == 2) return {a % base_size_, a / base_size_};
    std::vector<int> c(f_);
    for (int i = 0; i < f_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

inline std::string Field::to_string(int a) const {
    auto c = coordinates(a);
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

inline const Field& Field::get(int p, int f, int degree) {
    // recursive: constructing a degree-2 field pulls in its base
    static std::recursive_mutex mtx;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<Field>> registry;
    if (!is_prime(p) || p > 13) throw std::invalid_argument("Field: p must be prime, 2 <= p <= 13");
    std::lock_guard<std::recursive_mutex> lk(mtx);
    auto key = std::make_tuple(p, f, degree);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, f, degree))).first;
    return *it->second;
}

}  // namespace ringfe
