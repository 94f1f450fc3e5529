#pragma once

#include "gic/big_index.hpp"

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gic {

/// A permutation of [n], stored as its image table. Points are 1-based at the
/// API boundary (matching the usual [n] convention); storage is 0-based.
///
/// Composition convention: compose(g, h) applies g first, then h, i.e.
/// (g*h)(x) = h(g(x)).
class Perm {
public:
    Perm() = default;

    static Perm identity(int n) {
        Perm p;
        p.img_.resize(n);
        for (int i = 0; i < n; ++i) p.img_[i] = i;
        return p;
    }

    // images are 1-based: images[i] = p(i+1).
    static Perm from_images(const std::vector<int>& images) {
        const int n = static_cast<int>(images.size());
        Perm p;
        p.img_.resize(n);
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            int v = images[i];
            if (v < 1 || v > n || seen[v - 1])
                throw std::domain_error("image table is not a bijection on [n]");
            seen[v - 1] = 1;
            p.img_[i] = v - 1;
        }
        return p;
    }

    // Convenience: build from disjoint-or-not cycle notation, 1-based points.
    static Perm from_cycles(int n, std::initializer_list<std::initializer_list<int>> cycles) {
        Perm p = identity(n);
        for (const auto& cyc : cycles) {
            std::vector<int> c(cyc);
            for (std::size_t i = 0; i < c.size(); ++i) {
                int a = c[i], b = c[(i + 1) % c.size()];
                if (a < 1 || a > n) throw std::domain_error("cycle point out of range");
                p.img_[a - 1] = b - 1;
            }
        }
        // from_images re-validates bijectivity
        std::vector<int> imgs(n);
        for (int i = 0; i < n; ++i) imgs[i] = p.img_[i] + 1;
        return from_images(imgs);
    }

    int degree() const { return static_cast<int>(img_.size()); }

    /// p(i) for a 1-based point.
    int apply(int point) const {
        if (point < 1 || point > degree())
            throw std::domain_error("point out of range");
        return img_[point - 1] + 1;
    }

    int image0(int i) const { return img_[i]; }
    const std::vector<int>& images0() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Perm inverse() const {
        Perm q;
        q.img_.resize(img_.size());
        for (int i = 0; i < degree(); ++i) q.img_[img_[i]] = i;
        return q;
    }

    friend Perm compose(const Perm& g, const Perm& h) {
        if (g.degree() != h.degree())
            throw std::domain_error("compose: mismatched degrees");
        Perm r;
        r.img_.resize(g.img_.size());
        for (int i = 0; i < g.degree(); ++i) r.img_[i] = h.img_[g.img_[i]];
        return r;
    }

    Perm operator*(const Perm& h) const { return compose(*this, h); }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }

    // Lexicographic order on image sequences; this is THE canonical order.
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    std::string to_text() const {
        std::ostringstream os;
        for (int i = 0; i < degree(); ++i) {
            if (i) os << ' ';
            os << img_[i] + 1;
        }
        return os.str();
    }

    static Perm from_text(const std::string& line) {
        std::istringstream is(line);
        std::vector<int> images;
        int v;
        while (is >> v) images.push_back(v);
        if (images.empty()) throw std::domain_error("empty permutation line");
        return from_images(images);
    }

private:
    std::vector<int> img_;
};

inline Perm apply_first(const Perm& g, const Perm& h) { return compose(g, h); }

inline BigIndex factorial(int n) {
    BigIndex f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// 0-based rank of p under lexicographic order of image sequences.
inline BigIndex lehmer_rank(const Perm& p) {
    const int n = p.degree();
    BigIndex rank = 0;
    BigIndex f = factorial(n);
    for (int i = 0; i < n; ++i) {
        f /= (n - i);
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p.image0(j) < p.image0(i)) ++smaller;
        rank += f * smaller;
    }
    return rank;
}

/// Inverse of lehmer_rank: the k-th permutation of [n] in lexicographic
/// order, 0 <= k < n!.
inline Perm lehmer_unrank(BigIndex k, int n) {
    if (k < 0 || k >= factorial(n))
        throw std::out_of_range("lehmer_unrank: index out of range");
    std::vector<int> avail(n);
    for (int i = 0; i < n; ++i) avail[i] = i + 1;
    std::vector<int> images(n);
    BigIndex f = factorial(n);
    for (int i = 0; i < n; ++i) {
        f /= (n - i);
        BigIndex q = k / f;
        k -= q * f;
        int idx = q.convert_to<int>();
        images[i] = avail[idx];
        avail.erase(avail.begin() + idx);
    }
    return Perm::from_images(images);
}

}  // namespace gic
