#pragma once

#include "gic/perm.hpp"
#include "gic/rng.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gic {

namespace detail {

// Orbit of `start` (0-based) under `gens`, BFS in generator order, together
// with transversal elements u_v satisfying u_v(start) = v.
struct OrbitData {
    std::vector<int> points;            // BFS order, points[0] == start
    std::vector<int> slot;              // point -> index in points, or -1
    std::vector<Perm> transversal;      // aligned with points
};

inline OrbitData orbit_with_transversal(int degree, int start,
                                        const std::vector<Perm>& gens) {
    OrbitData od;
    od.slot.assign(degree, -1);
    od.points.push_back(start);
    od.slot[start] = 0;
    od.transversal.push_back(Perm::identity(degree));
    for (std::size_t head = 0; head < od.points.size(); ++head) {
        int v = od.points[head];
        for (const Perm& g : gens) {
            int w = g.image0(v);
            if (od.slot[w] < 0) {
                od.slot[w] = static_cast<int>(od.points.size());
                od.points.push_back(w);
                od.transversal.push_back(compose(od.transversal[head], g));
            }
        }
    }
    return od;
}

// Deterministic Schreier-Sims chain with base points 1, 2, ..., n in order.
// Level k stabilizes the points 1..k pointwise below it.
struct StabChain {
    int degree = 0;
    struct Level {
        int base = 0;  // 0-based point
        std::vector<Perm> gens;
        OrbitData orbit;
    };
    std::vector<Level> levels;

    BigIndex order() const {
        BigIndex o = 1;
        for (const auto& lv : levels) o *= static_cast<int>(lv.orbit.points.size());
        return o;
    }

    bool contains(const Perm& p) const {
        Perm cur = p;
        for (const auto& lv : levels) {
            if (cur.is_identity()) return true;
            int v = cur.image0(lv.base);
            if (lv.orbit.slot[v] < 0) return false;
            cur = compose(cur, lv.orbit.transversal[lv.orbit.slot[v]].inverse());
        }
        return cur.is_identity();
    }

    static StabChain build(int degree, const std::vector<Perm>& gens) {
        StabChain c;
        c.degree = degree;
        c.levels.resize(degree);
        for (int k = 0; k < degree; ++k) c.levels[k].base = k;
        c.refresh_orbits();
        for (const Perm& g : gens) c.sift_in(g);
        // Close under Schreier generators. A level's group is generated by
        // everything stored at its level and below, so any change re-runs the
        // pass until nothing new sticks.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int k = 0; k < degree && !changed; ++k) {
                std::vector<Perm> level_gens = c.gens_from(k);
                OrbitData od = c.levels[k].orbit;  // copy: sift_in refreshes orbits
                for (std::size_t i = 0; i < od.points.size() && !changed; ++i)
                    for (const Perm& s : level_gens) {
                        int w = s.image0(od.points[i]);
                        Perm schreier = compose(compose(od.transversal[i], s),
                                                od.transversal[od.slot[w]].inverse());
                        if (c.sift_in(schreier)) {
                            changed = true;  // orbits changed; restart the pass
                            break;
                        }
                    }
            }
        }
        return c;
    }

private:
    std::vector<Perm> gens_from(int level) const {
        std::vector<Perm> out;
        for (int j = level; j < degree; ++j)
            out.insert(out.end(), levels[j].gens.begin(), levels[j].gens.end());
        return out;
    }

    void refresh_orbits() {
        for (int k = 0; k < degree; ++k)
            levels[k].orbit = orbit_with_transversal(degree, levels[k].base, gens_from(k));
    }

    // Strips p through the chain; a nontrivial residue is stored at the level
    // where it stuck. Returns true when the chain grew.
    bool sift_in(const Perm& p) {
        Perm cur = p;
        for (int k = 0; k < degree; ++k) {
            if (cur.is_identity()) return false;
            const auto& od = levels[k].orbit;
            int v = cur.image0(levels[k].base);
            if (od.slot[v] >= 0) {
                cur = compose(cur, od.transversal[od.slot[v]].inverse());
                continue;
            }
            levels[k].gens.push_back(cur);
            refresh_orbits();
            return true;
        }
        return false;
    }
};

}  // namespace detail

/// Random ordered subproduct g1^{r1} g2^{r2} ... gk^{rk} with uniform bits
/// r_i; always a member of the generated subgroup.
inline Perm random_subproduct(const std::vector<Perm>& list, Rng& rng) {
    if (list.empty()) throw std::domain_error("random_subproduct: empty list");
    Perm acc = Perm::identity(list.front().degree());
    for (const Perm& g : list)
        if (rng.next_bit()) acc = compose(acc, g);
    return acc;
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. Immutable once the chain is sealed; queries are then reentrant.
class PermGroup {
public:
    explicit PermGroup(int degree, std::vector<Perm> gens = {})
        : degree_(degree) {
        for (auto& g : gens) {
            if (g.degree() != degree) throw std::domain_error("generator degree mismatch");
            if (!g.is_identity()) gens_.push_back(std::move(g));
        }
    }

    static PermGroup trivial(int degree) { return PermGroup(degree); }

    static PermGroup symmetric(int degree) {
        std::vector<Perm> gens;
        if (degree >= 2) gens.push_back(Perm::from_cycles(degree, {{1, 2}}));
        if (degree >= 3) {
            std::vector<int> img(degree);
            for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree + 1;
            gens.push_back(Perm::from_images(img));
        }
        return PermGroup(degree, std::move(gens));
    }

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }

    BigIndex order() const { return chain().order(); }

    bool contains(const Perm& p) const {
        if (p.degree() != degree_) throw std::domain_error("contains: degree mismatch");
        return chain().contains(p);
    }

    /// Sorted orbit of a 1-based point.
    std::vector<int> orbit(int point) const {
        auto od = orbit_data(point);
        std::vector<int> out;
        out.reserve(od.points.size());
        for (int v : od.points) out.push_back(v + 1);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Some g in the group with g(u) = v, or nullopt iff v is not in the
    /// orbit of u. Points are 1-based.
    std::optional<Perm> transporter(int u, int v) const {
        check_point(u);
        check_point(v);
        auto od = orbit_data(u);
        int slot = od.slot[v - 1];
        if (slot < 0) return std::nullopt;
        return od.transversal[slot];
    }

    /// The point stabilizer G_v as a group (Schreier generators, reduced).
    PermGroup stabilizer(int v) const {
        check_point(v);
        if (gens_.empty()) return PermGroup(degree_);
        auto od = orbit_data(v);
        std::set<std::vector<int>> seen;
        std::vector<Perm> sgens;
        for (std::size_t i = 0; i < od.points.size(); ++i) {
            for (const Perm& g : gens_) {
                int w = g.image0(od.points[i]);
                Perm s = compose(compose(od.transversal[i], g),
                                 od.transversal[od.slot[w]].inverse());
                if (s.is_identity()) continue;
                if (seen.insert(s.images0()).second) sgens.push_back(std::move(s));
            }
        }
        return PermGroup(degree_, std::move(sgens));
    }

    /// Pointwise stabilizer of several 1-based points, in the given order.
    PermGroup pointwise_stabilizer(const std::vector<int>& points) const {
        PermGroup g = *this;
        for (int v : points) g = g.stabilizer(v);
        return g;
    }

    /// Drops generators that do not enlarge the generated subgroup. Keeps at
    /// most log2(order) generators.
    PermGroup reduced() const {
        std::vector<Perm> kept;
        for (const Perm& g : gens_) {
            if (detail::StabChain::build(degree_, kept).contains(g)) continue;
            kept.push_back(g);
        }
        // A second pass removes generators made redundant by later ones.
        for (std::size_t i = 0; i < kept.size();) {
            std::vector<Perm> rest;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) rest.push_back(kept[j]);
            if (detail::StabChain::build(degree_, rest).contains(kept[i]))
                kept = std::move(rest);
            else
                ++i;
        }
        return PermGroup(degree_, std::move(kept));
    }

    /// All elements, in chain order. Guarded: refuses beyond `limit`.
    std::vector<Perm> elements(std::size_t limit = 100000) const {
        const auto& c = chain();
        if (c.order() > BigIndex(static_cast<unsigned long long>(limit)))
            throw std::domain_error("elements: group too large to enumerate");
        std::vector<Perm> out{Perm::identity(degree_)};
        for (int k = degree_ - 1; k >= 0; --k) {
            std::vector<Perm> next;
            next.reserve(out.size() * c.levels[k].orbit.points.size());
            for (const Perm& u : c.levels[k].orbit.transversal)
                for (const Perm& tail : out) next.push_back(compose(tail, u));
            out = std::move(next);
        }
        return out;
    }

    const detail::StabChain& chain() const {
        std::call_once(*chain_once_, [this] {
            *chain_ = detail::StabChain::build(degree_, gens_);
        });
        return *chain_;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << degree_ << ' ' << gens_.size() << '\n';
        for (const Perm& g : gens_) os << g.to_text() << '\n';
        return os.str();
    }

    static PermGroup from_text(std::istream& is) {
        int n = 0, k = 0;
        if (!(is >> n >> k)) throw std::domain_error("generator list: bad header");
        std::string rest;
        std::getline(is, rest);
        std::vector<Perm> gens;
        for (int i = 0; i < k; ++i) {
            std::string line;
            if (!std::getline(is, line)) throw std::domain_error("generator list: truncated");
            Perm p = Perm::from_text(line);
            if (p.degree() != n) throw std::domain_error("generator list: degree mismatch");
            gens.push_back(std::move(p));
        }
        return PermGroup(n, std::move(gens));
    }

private:
    void check_point(int v) const {
        if (v < 1 || v > degree_) throw std::domain_error("point out of range");
    }

    detail::OrbitData orbit_data(int point) const {
        check_point(point);
        return detail::orbit_with_transversal(degree_, point - 1, gens_);
    }

    int degree_;
    std::vector<Perm> gens_;
    mutable std::shared_ptr<std::once_flag> chain_once_ = std::make_shared<std::once_flag>();
    mutable std::shared_ptr<detail::StabChain> chain_ = std::make_shared<detail::StabChain>();
};

/// Near-uniform sampling from a generated subgroup via Erdos-Renyi style
/// random subproducts. The list is drawn once at construction; each draw is
/// one subproduct of it. No exact uniformity factor is claimed; desk-scale
/// uniformity is validated empirically in the tests.
class NearUniformSampler {
public:
    NearUniformSampler(const PermGroup& g, Rng& rng) : degree_(g.degree()) {
        list_ = g.generators();
        if (list_.empty()) return;  // trivial group
        std::uint64_t lg = ceil_log2(g.order());
        std::size_t target = 4 * (lg + 1) * (lg + 1) + 2 * static_cast<std::size_t>(degree_);
        while (list_.size() < target)
            list_.push_back(random_subproduct(list_, rng));
    }

    Perm draw(Rng& rng) const {
        if (list_.empty()) return Perm::identity(degree_);
        return random_subproduct(list_, rng);
    }

private:
    int degree_;
    std::vector<Perm> list_;
};

/// One-shot near-uniform element.
inline Perm near_uniform_element(const PermGroup& g, Rng& rng) {
    NearUniformSampler s(g, rng);
    return s.draw(rng);
}

/// Exact uniform element of S_n through the Lehmer indexing.
inline Perm uniform_symmetric_element(int n, Rng& rng) {
    return lehmer_unrank(rng.below_big(factorial(n)), n);
}

}  // namespace gic
