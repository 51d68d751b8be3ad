#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace profdet {

/// A linear preorder over a finite carrier, stored as a rank per element.
///
/// x ≤ y iff rank(x) ≤ rank(y). Ranks are contiguous 0..k-1, so rank k is the
/// k-th equivalence class.
template <class T>
class LinearPreorder {
public:
    LinearPreorder() = default;

    LinearPreorder(std::vector<T> carrier, std::vector<std::size_t> ranks)
        : carrier_(std::move(carrier)), ranks_(std::move(ranks)) {
        if (carrier_.size() != ranks_.size()) throw std::invalid_argument("carrier and ranks differ in size");
        std::vector<bool> used;
        for (std::size_t r : ranks_) {
            if (r >= used.size()) used.resize(r + 1, false);
            used[r] = true;
        }
        if (std::find(used.begin(), used.end(), false) != used.end())
            throw std::invalid_argument("ranks must form a contiguous range from 0");
        class_count_ = used.size();
    }

    /// Ranks elements by a strictly ordered key; equal keys share a class.
    template <class KeyFn>
    static LinearPreorder by_key(std::vector<T> carrier, KeyFn key) {
        using Key = decltype(key(carrier.front()));
        std::vector<Key> keys;
        keys.reserve(carrier.size());
        for (const auto& x : carrier) keys.push_back(key(x));
        std::vector<Key> distinct = keys;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<std::size_t> ranks;
        ranks.reserve(keys.size());
        for (const auto& k : keys)
            ranks.push_back(static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin()));
        return LinearPreorder(std::move(carrier), std::move(ranks));
    }

    std::size_t size() const { return carrier_.size(); }
    std::size_t class_count() const { return class_count_; }
    const std::vector<T>& carrier() const { return carrier_; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }

    std::size_t rank_of(const T& x) const {
        auto it = std::find(carrier_.begin(), carrier_.end(), x);
        if (it == carrier_.end()) throw std::out_of_range("element not in carrier");
        return ranks_[static_cast<std::size_t>(it - carrier_.begin())];
    }

    bool contains(const T& x) const { return std::find(carrier_.begin(), carrier_.end(), x) != carrier_.end(); }
    bool leq(const T& x, const T& y) const { return rank_of(x) <= rank_of(y); }
    bool equivalent(const T& x, const T& y) const { return rank_of(x) == rank_of(y); }

    friend bool operator==(const LinearPreorder&, const LinearPreorder&) = default;

private:
    std::vector<T> carrier_;
    std::vector<std::size_t> ranks_;
    std::size_t class_count_ = 0;
};

/// Equivalence classes in increasing order; members keep carrier order.
template <class T>
std::vector<std::vector<T>> classes(const LinearPreorder<T>& p) {
    std::vector<std::vector<T>> out(p.class_count());
    for (std::size_t i = 0; i < p.size(); ++i) out[p.ranks()[i]].push_back(p.carrier()[i]);
    return out;
}

/// The ⟨≤,<⟩-minjection: every element of the k-th class of `src` maps to the
/// k-th element of `dst`, which must be sorted ascending.
template <class T, class U>
std::map<T, U> minjection(const LinearPreorder<T>& src, std::span<const U> dst) {
    if (src.class_count() > dst.size()) throw std::invalid_argument("more classes than target elements");
    std::map<T, U> out;
    for (std::size_t i = 0; i < src.size(); ++i) out.emplace(src.carrier()[i], dst[src.ranks()[i]]);
    return out;
}

/// The ≤-minimal class within `subset` (empty for an empty subset).
template <class T>
std::vector<T> min_class(const LinearPreorder<T>& p, std::span<const T> subset) {
    std::vector<T> out;
    std::size_t best = static_cast<std::size_t>(-1);
    for (const auto& x : subset) {
        std::size_t r = p.rank_of(x);
        if (r < best) {
            best = r;
            out.clear();
        }
        if (r == best) out.push_back(x);
    }
    return out;
}

/// A binary relation over class indices 0..n-1, stored in full (not reduced).
class ClassRelation {
public:
    ClassRelation() = default;
    explicit ClassRelation(std::size_t n) : n_(n), bits_(n * n, 0) {}

    static ClassRelation identity(std::size_t n) {
        ClassRelation r(n);
        for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
        return r;
    }
    static ClassRelation full(std::size_t n) {
        ClassRelation r(n);
        std::fill(r.bits_.begin(), r.bits_.end(), 1);
        return r;
    }

    std::size_t size() const { return n_; }
    bool contains(std::size_t a, std::size_t b) const { return bits_.at(a * n_ + b) != 0; }
    void insert(std::size_t a, std::size_t b) { bits_.at(a * n_ + b) = 1; }
    void erase(std::size_t a, std::size_t b) { bits_.at(a * n_ + b) = 0; }

    std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (contains(a, b)) out.emplace_back(a, b);
        return out;
    }

    bool is_reflexive() const {
        for (std::size_t a = 0; a < n_; ++a)
            if (!contains(a, a)) return false;
        return true;
    }
    bool is_antisymmetric() const {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a + 1; b < n_; ++b)
                if (contains(a, b) && contains(b, a)) return false;
        return true;
    }
    bool is_transitive() const {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                if (!contains(a, b)) continue;
                for (std::size_t c = 0; c < n_; ++c)
                    if (contains(b, c) && !contains(a, c)) return false;
            }
        return true;
    }
    bool is_partial_order() const { return is_reflexive() && is_antisymmetric() && is_transitive(); }
    /// Every pair (a, b) has a ≤ b in the class index order.
    bool within_index_order() const {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (contains(a, b)) return false;
        return true;
    }

    friend bool operator==(const ClassRelation&, const ClassRelation&) = default;
    friend auto operator<=>(const ClassRelation&, const ClassRelation&) = default;

private:
    std::size_t n_ = 0;
    std::vector<unsigned char> bits_;
};

}  // namespace profdet
