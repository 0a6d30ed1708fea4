#pragma once

// Enumerated finite groups: a list of element ids plus multiplication and
// inverse oracles.  Ids are ring-element ids (or any dense integers); the
// enumeration order is canonical and fixed at construction.

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ringfe {

class EnumeratedGroup {
public:
    using BinOp = std::function<int(int, int)>;
    using UnOp = std::function<int(int)>;

    EnumeratedGroup(std::vector<int> elements, BinOp mul, UnOp inv, int identity)
        : elems_(std::move(elements)), mul_(std::move(mul)), inv_(std::move(inv)), id_(identity) {
        pos_.reserve(elems_.size());
        for (int i = 0; i < static_cast<int>(elems_.size()); ++i) pos_[elems_[i]] = i;
        if (!pos_.count(id_)) throw std::invalid_argument("EnumeratedGroup: identity not in element list");
    }

    int size() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const { return elems_; }
    int element(int pos) const { return elems_[pos]; }
    int position(int id) const {
        auto it = pos_.find(id);
        return it == pos_.end() ? -1 : it->second;
    }
    bool contains(int id) const { return pos_.count(id) != 0; }
    int identity() const { return id_; }

    int mul(int a, int b) const { return mul_(a, b); }
    int inv(int a) const { return inv_(a); }
    int conjugate(int g, int x) const { return mul_(mul_(g, x), inv_(g)); }

    /// Partition into conjugacy classes.  Classes are ordered by their
    /// smallest member, each class sorted ascending; deterministic.
    std::vector<std::vector<int>> conjugacy_classes() const {
        std::vector<std::vector<int>> classes;
        std::unordered_map<int, bool> seen;
        for (int x : elems_) {
            if (seen[x]) continue;
            std::vector<int> cls;
            for (int g : elems_) {
                int y = conjugate(g, x);
                if (!seen[y]) {
                    seen[y] = true;
                    cls.push_back(y);
                }
            }
            std::sort(cls.begin(), cls.end());
            classes.push_back(std::move(cls));
        }
        return classes;
    }

    std::vector<int> center() const {
        std::vector<int> z;
        for (int x : elems_) {
            bool central = true;
            for (int g : elems_)
                if (mul_(x, g) != mul_(g, x)) { central = false; break; }
            if (central) z.push_back(x);
        }
        return z;
    }

    /// Right-coset representatives for a subgroup K (shared element ids):
    /// first-unseen order, so deterministic.  G = union of K*r.
    std::vector<int> right_coset_reps(const EnumeratedGroup& K) const {
        std::vector<int> reps;
        std::unordered_map<int, bool> covered;
        for (int g : elems_) {
            if (covered[g]) continue;
            reps.push_back(g);
            for (int k : K.elements()) covered[mul_(k, g)] = true;
        }
        return reps;
    }

private:
    std::vector<int> elems_;
    BinOp mul_;
    UnOp inv_;
    int id_;
    std::unordered_map<int, int> pos_;
};

}  // namespace ringfe
