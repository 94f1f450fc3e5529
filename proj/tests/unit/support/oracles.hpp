#pragma once

// Brute-force reference implementations used only by tests. Everything here
// enumerates; nothing is shared with the production paths it checks.

#include "gic/iso.hpp"
#include "gic/perm.hpp"
#include "gic/perm_group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using gic::Perm;

// All elements of <gens> by closure enumeration.
inline std::set<std::vector<int>> closure(int n, const std::vector<Perm>& gens) {
    std::set<std::vector<int>> seen;
    std::vector<Perm> frontier{Perm::identity(n)};
    seen.insert(frontier.front().images0());
    for (std::size_t head = 0; head < frontier.size(); ++head)
        for (const Perm& g : gens) {
            Perm next = compose(frontier[head], g);
            if (seen.insert(next.images0()).second) frontier.push_back(next);
        }
    return seen;
}

inline std::vector<Perm> closure_elements(int n, const std::vector<Perm>& gens) {
    std::vector<Perm> out;
    for (const auto& img : closure(n, gens)) {
        std::vector<int> one_based(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) one_based[i] = img[i] + 1;
        out.push_back(Perm::from_images(one_based));
    }
    return out;  // set iteration = lexicographic order
}

// All of S_n in lexicographic order of image sequences.
inline std::vector<Perm> symmetric_elements(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    std::vector<Perm> out;
    do {
        out.push_back(Perm::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Left coset pi*Gamma as an element set.
inline std::set<std::vector<int>> left_coset(const Perm& pi, const std::vector<Perm>& gamma_elems) {
    std::set<std::vector<int>> out;
    for (const Perm& g : gamma_elems) out.insert(compose(pi, g).images0());
    return out;
}

inline Perm lex_min_of(const std::set<std::vector<int>>& coset) {
    std::vector<int> one_based(coset.begin()->size());
    for (std::size_t i = 0; i < one_based.size(); ++i) one_based[i] = (*coset.begin())[i] + 1;
    return Perm::from_images(one_based);
}

// Partition of H's elements into left cosets of Gamma; returns the canonical
// (lex-least) representative of each coset, sorted.
inline std::vector<Perm> coset_reps(const std::vector<Perm>& h_elems,
                                    const std::vector<Perm>& gamma_elems) {
    std::set<std::vector<int>> reps;
    std::set<std::vector<int>> assigned;
    for (const Perm& pi : h_elems) {
        if (assigned.count(pi.images0())) continue;
        auto coset = left_coset(pi, gamma_elems);
        assigned.insert(coset.begin(), coset.end());
        reps.insert(*coset.begin());
    }
    std::vector<Perm> out;
    for (const auto& img : reps) {
        std::vector<int> one_based(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) one_based[i] = img[i] + 1;
        out.push_back(Perm::from_images(one_based));
    }
    return out;
}

// Orbit of a universe element under the full acting group, as invariants.
inline std::set<std::string> universe_orbit(const gic::UniverseElement& w) {
    gic::BigIndex order = gic::acting_group_order(w.kind, w.degree(), w.field());
    std::set<std::string> out;
    for (gic::BigIndex k = 0; k < order; ++k)
        out.insert(gic::complete_invariant(
            gic::act(gic::acting_element_by_index(w.kind, w.degree(), w.field(), k), w)));
    return out;
}

// Automorphisms of a universe element by exhaustive filtering.
inline std::vector<gic::GroupElement> universe_aut(const gic::UniverseElement& w) {
    gic::BigIndex order = gic::acting_group_order(w.kind, w.degree(), w.field());
    std::string target = gic::complete_invariant(w);
    std::vector<gic::GroupElement> out;
    for (gic::BigIndex k = 0; k < order; ++k) {
        gic::GroupElement h = gic::acting_element_by_index(w.kind, w.degree(), w.field(), k);
        if (gic::complete_invariant(gic::act(h, w)) == target) out.push_back(std::move(h));
    }
    return out;
}

}  // namespace oracle
