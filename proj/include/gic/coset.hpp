#pragma once

#include "gic/perm.hpp"
#include "gic/perm_group.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gic {

namespace detail {

// Orbit of `p` under `gens` as a point list plus membership mask (0-based).
inline std::vector<int> plain_orbit(int degree, int p, const std::vector<Perm>& gens,
                                    std::vector<char>* mask_out = nullptr) {
    std::vector<char> mask(degree, 0);
    std::vector<int> pts{p};
    mask[p] = 1;
    for (std::size_t head = 0; head < pts.size(); ++head)
        for (const Perm& g : gens) {
            int w = g.image0(pts[head]);
            if (!mask[w]) {
                mask[w] = 1;
                pts.push_back(w);
            }
        }
    if (mask_out) *mask_out = std::move(mask);
    return pts;
}

}  // namespace detail

/// Lexicographically least element of the left coset pi * Gamma. Depends only
/// on the coset. Values are canonized position by position, descending
/// through point stabilizers of the already-fixed image values.
inline Perm canonical_rep(const Perm& pi, const PermGroup& gamma) {
    if (pi.degree() != gamma.degree())
        throw std::domain_error("canonical_rep: degree mismatch");
    const int n = pi.degree();
    Perm cur = pi;
    PermGroup g = gamma;
    for (int k = 1; k <= n; ++k) {
        if (g.generators().empty()) break;
        int p = cur.apply(k);
        auto orb = g.orbit(p);
        int m = orb.front();
        if (m != p) {
            auto t = g.transporter(p, m);
            cur = compose(cur, *t);
        }
        g = g.stabilizer(m);
    }
    return cur;
}

/// Lexicographically least element of the right coset {kappa * u : kappa in k}.
inline Perm lex_min_right_coset(const PermGroup& k, const Perm& u) {
    if (k.degree() != u.degree())
        throw std::domain_error("lex_min_right_coset: degree mismatch");
    const int n = u.degree();
    Perm left = Perm::identity(n);
    PermGroup kc = k;
    for (int p = 1; p <= n; ++p) {
        if (kc.generators().empty()) break;
        int base = left.apply(p);
        auto orb = kc.orbit(base);
        int best = orb.front();
        for (int x : orb)
            if (u.apply(x) < u.apply(best)) best = x;
        if (best != base) {
            auto d = kc.transporter(base, best);
            left = compose(left, *d);
        }
        kc = kc.stabilizer(best);
    }
    return compose(left, u);
}

/// Indexing of the left cosets of Gamma within H, for Gamma <= H <= S_n.
/// unrank(i) is the lexicographically (i+1)-th canonical coset representative;
/// rank is its inverse, constant on each coset. Ranks are 0-based.
///
/// The prefix-search walk needs, per level, the pointwise stabilizers of the
/// image values fixed so far in both groups. Those nodes are memoized by
/// stabilized-value set; the stabilizer orders come from orbit sizes, so no
/// chains are built during a walk.
class CosetIndexing {
public:
    CosetIndexing(PermGroup h, PermGroup gamma)
        : h_(std::move(h)), gamma_(std::move(gamma)) {
        if (h_.degree() != gamma_.degree())
            throw std::domain_error("CosetIndexing: degree mismatch");
        for (const Perm& g : gamma_.generators())
            if (!h_.contains(g))
                throw std::domain_error("CosetIndexing: Gamma is not a subgroup of H");
        horder_ = h_.order();
        gorder_ = gamma_.order();
        count_ = horder_ / gorder_;
    }

    const PermGroup& h() const { return h_; }
    const PermGroup& gamma() const { return gamma_; }
    const BigIndex& count() const { return count_; }

    Perm unrank(BigIndex i) const {
        if (i < 0 || i >= count_)
            throw std::out_of_range("coset_unrank: index out of range");
        const int n = h_.degree();
        Perm sigma = Perm::identity(n);
        std::lock_guard<std::mutex> lock(mu_);
        const Node* node = &root();
        std::vector<int> tset;
        for (int k = 1; k <= n; ++k) {
            int p = sigma.image0(k - 1);
            auto cand = candidates(*node, p);
            int chosen = -1;
            for (const auto& c : cand) {
                if (i < c.count) {
                    chosen = c.min_point;
                    break;
                }
                i -= c.count;
            }
            if (chosen < 0) throw std::logic_error("coset_unrank: count bookkeeping failed");
            if (chosen != p) {
                auto tau = detail_transporter(node->h.generators(), n, p, chosen);
                sigma = compose(sigma, tau);
            }
            node = &child(*node, tset, chosen);
        }
        return sigma;
    }

    BigIndex rank(const Perm& pi) const {
        if (pi.degree() != h_.degree())
            throw std::domain_error("coset_rank: degree mismatch");
        if (!h_.contains(pi)) throw std::domain_error("coset_rank: element not in H");
        const int n = h_.degree();
        Perm sigma = pi;
        BigIndex r = 0;
        std::lock_guard<std::mutex> lock(mu_);
        const Node* node = &root();
        std::vector<int> tset;
        for (int k = 1; k <= n; ++k) {
            int p = sigma.image0(k - 1);
            auto cand = candidates(*node, p);
            // The canonical value at this position is the min of p's
            // Gamma-orbit; all candidate mins below it contribute counts.
            std::vector<char> gmask;
            detail::plain_orbit(n, p, node->g.generators(), &gmask);
            int m = -1;
            for (const auto& c : cand) {
                if (gmask[c.min_point]) {
                    m = c.min_point;
                    break;
                }
                r += c.count;
            }
            if (m < 0) throw std::logic_error("coset_rank: count bookkeeping failed");
            if (m != p) {
                auto gam = detail_transporter(node->g.generators(), n, p, m);
                sigma = compose(sigma, gam);
            }
            node = &child(*node, tset, m);
        }
        return r;
    }

private:
    struct Node {
        PermGroup h;
        PermGroup g;
        BigIndex horder;
        BigIndex gorder;
    };

    struct Candidate {
        int min_point;   // 0-based
        BigIndex count;  // c_v = |H_v| / |Gamma_v|
    };

    const Node& root() const {
        auto it = cache_.find({});
        if (it == cache_.end())
            it = cache_.emplace(std::vector<int>{}, Node{h_, gamma_, horder_, gorder_}).first;
        return it->second;
    }

    // Gamma-orbit decomposition of the H-orbit of p, one candidate per
    // Gamma-orbit, in increasing order of orbit minimum.
    std::vector<Candidate> candidates(const Node& node, int p) const {
        const int n = h_.degree();
        std::vector<char> hmask;
        auto hpoints = detail::plain_orbit(n, p, node.h.generators(), &hmask);
        BigIndex h_orbit_size = static_cast<int>(hpoints.size());
        std::vector<Candidate> out;
        std::vector<char> assigned(n, 0);
        std::sort(hpoints.begin(), hpoints.end());
        for (int v : hpoints) {
            if (assigned[v]) continue;
            auto gpoints = detail::plain_orbit(n, v, node.g.generators());
            int mn = v;
            for (int w : gpoints) {
                assigned[w] = 1;
                if (w < mn) mn = w;
            }
            BigIndex num = node.horder * static_cast<int>(gpoints.size());
            BigIndex den = node.gorder * h_orbit_size;
            out.push_back({mn, num / den});
        }
        // hpoints sorted ascending makes orbit minima appear in order.
        return out;
    }

    const Node& child(const Node& node, std::vector<int>& tset, int v) const {
        tset.push_back(v);
        std::vector<int> key = tset;
        std::sort(key.begin(), key.end());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const int n = h_.degree();
        std::vector<char> hmask, gmask;
        auto horb = detail::plain_orbit(n, v, node.h.generators(), &hmask);
        auto gorb = detail::plain_orbit(n, v, node.g.generators(), &gmask);
        Node c{shrink(node.h, v), shrink(node.g, v),
               node.horder / static_cast<int>(horb.size()),
               node.gorder / static_cast<int>(gorb.size())};
        return cache_.emplace(std::move(key), std::move(c)).first->second;
    }

    static PermGroup shrink(const PermGroup& g, int v) {
        PermGroup s = g.stabilizer(v + 1);
        if (s.generators().size() > 8) s = s.reduced();
        return s;
    }

    static Perm detail_transporter(const std::vector<Perm>& gens, int n, int u, int v) {
        auto od = detail::orbit_with_transversal(n, u, gens);
        if (od.slot[v] < 0) throw std::logic_error("transporter: target not in orbit");
        return od.transversal[od.slot[v]];
    }

    PermGroup h_;
    PermGroup gamma_;
    BigIndex horder_;
    BigIndex gorder_;
    BigIndex count_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, Node> cache_;
};

inline Perm coset_unrank(const CosetIndexing& idx, const BigIndex& i) { return idx.unrank(i); }
inline BigIndex coset_rank(const CosetIndexing& idx, const Perm& pi) { return idx.rank(pi); }

/// Canonical generating list: identical for any two generator lists of the
/// same subgroup, and generates that subgroup. Walks the point stabilizer
/// tower; for every point i and every image j reachable from i, appends the
/// lex-least group element mapping i to j (identity elements are dropped).
inline std::vector<Perm> normal_form(const PermGroup& group) {
    const int n = group.degree();
    std::vector<Perm> out;
    PermGroup delta = group;
    for (int i = 1; i < n; ++i) {
        if (delta.generators().empty()) break;
        PermGroup next = delta.stabilizer(i);
        for (int j : delta.orbit(i)) {
            auto g0 = delta.transporter(i, j);
            Perm rep = lex_min_right_coset(next, *g0);
            if (!rep.is_identity()) out.push_back(std::move(rep));
        }
        delta = std::move(next);
    }
    return out;
}

inline std::vector<Perm> normal_form(const std::vector<Perm>& gens) {
    if (gens.empty())
        throw std::domain_error("normal_form: degree unknown for an empty list");
    return normal_form(PermGroup(gens.front().degree(), gens));
}

}  // namespace gic
