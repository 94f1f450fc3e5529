#include "gic/coset.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <set>

using namespace gic;

namespace {

PermGroup random_subgroup(int n, int gens, Rng& rng) {
    std::vector<Perm> g;
    for (int i = 0; i < gens; ++i) g.push_back(uniform_symmetric_element(n, rng));
    return PermGroup(n, std::move(g));
}

}  // namespace

TEST_CASE("canonical_rep trivial cases") {
    Perm pi = Perm::from_images({3, 1, 4, 2});
    CHECK(canonical_rep(pi, PermGroup::trivial(4)) == pi);
    CHECK(canonical_rep(pi, PermGroup::symmetric(4)) == Perm::identity(4));
}

TEST_CASE("canonical_rep equals brute-force lex-min over the coset, S_5") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        PermGroup gamma = random_subgroup(5, 2, rng);
        Perm pi = uniform_symmetric_element(5, rng);
        auto gamma_elems = oracle::closure_elements(5, gamma.generators());
        Perm expect = oracle::lex_min_of(oracle::left_coset(pi, gamma_elems));
        Perm got = canonical_rep(pi, gamma);
        CHECK(got == expect);
        // depends only on the coset
        Perm shifted = compose(pi, gamma_elems[trial % gamma_elems.size()]);
        CHECK(canonical_rep(shifted, gamma) == expect);
    }
}

TEST_CASE("coset indexing on S_3 mod <(1 2)>") {
    PermGroup h = PermGroup::symmetric(3);
    PermGroup gamma(3, {Perm::from_cycles(3, {{1, 2}})});
    CosetIndexing idx(h, gamma);
    CHECK(idx.count() == 3);
    CHECK(idx.unrank(0) == Perm::identity(3));
    std::vector<Perm> outs;
    for (int i = 0; i < 3; ++i) outs.push_back(idx.unrank(i));
    auto gamma_elems = oracle::closure_elements(3, gamma.generators());
    for (int i = 0; i < 3; ++i) {
        CHECK(outs[i] == oracle::lex_min_of(oracle::left_coset(outs[i], gamma_elems)));
        if (i > 0) CHECK(outs[i - 1] < outs[i]);
    }
    CHECK_THROWS_AS(idx.unrank(3), std::out_of_range);
}

TEST_CASE("subgroup validation") {
    PermGroup h(4, {Perm::from_cycles(4, {{1, 2, 3}})});
    PermGroup not_sub(4, {Perm::from_cycles(4, {{1, 4}})});
    CHECK_THROWS_AS(CosetIndexing(h, not_sub), std::domain_error);
}

TEST_CASE("rank of the identity is 0 and ranking requires membership in H") {
    PermGroup h(4, {Perm::from_cycles(4, {{1, 2, 3}})});
    CosetIndexing idx(h, PermGroup::trivial(4));
    CHECK(idx.rank(Perm::identity(4)) == 0);
    CHECK_THROWS_AS(idx.rank(Perm::from_cycles(4, {{1, 2}})), std::domain_error);
}

TEST_CASE("full bijectivity for random subgroup pairs in S_4") {
    Rng rng(20240518);
    int pairs_checked = 0;
    for (int trial = 0; trial < 220; ++trial) {
        PermGroup h = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        PermGroup b = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        // make gamma <= h by intersecting elementwise (closure oracle)
        auto h_set = oracle::closure(4, h.generators());
        auto b_set = oracle::closure(4, b.generators());
        std::vector<Perm> inter;
        for (const auto& img : h_set)
            if (b_set.count(img)) {
                std::vector<int> one(img.size());
                for (std::size_t i = 0; i < img.size(); ++i) one[i] = img[i] + 1;
                inter.push_back(Perm::from_images(one));
            }
        PermGroup gamma(4, inter);
        CosetIndexing idx(h, gamma);

        auto h_elems = oracle::closure_elements(4, h.generators());
        auto gamma_elems = oracle::closure_elements(4, gamma.generators());
        auto reps = oracle::coset_reps(h_elems, gamma_elems);
        REQUIRE(idx.count() == BigIndex(reps.size()));

        std::set<std::vector<int>> seen;
        for (BigIndex i = 0; i < idx.count(); ++i) {
            Perm s = idx.unrank(i);
            CHECK(s == reps[static_cast<std::size_t>(i.convert_to<long long>())]);
            CHECK(seen.insert(s.images0()).second);
            CHECK(idx.rank(s) == i);
            CHECK(canonical_rep(s, gamma) == s);
        }
        // rank is constant on cosets and round-trips through unrank
        for (const Perm& pi : h_elems) {
            BigIndex r = idx.rank(pi);
            CHECK(idx.unrank(r) == canonical_rep(pi, gamma));
        }
        ++pairs_checked;
    }
    CHECK(pairs_checked == 220);
}

TEST_CASE("rank is invariant under right multiplication by Gamma, S_5") {
    Rng rng(77);
    PermGroup h = PermGroup::symmetric(5);
    PermGroup gamma(5, {Perm::from_cycles(5, {{1, 2}, {3, 4}}), Perm::from_cycles(5, {{2, 3}})});
    CosetIndexing idx(h, gamma);
    auto gamma_elems = oracle::closure_elements(5, gamma.generators());
    for (int trial = 0; trial < 100; ++trial) {
        Perm pi = uniform_symmetric_element(5, rng);
        Perm g = gamma_elems[rng.below(gamma_elems.size())];
        CHECK(idx.rank(pi) == idx.rank(compose(pi, g)));
    }
}

TEST_CASE("normal form basics") {
    CHECK(normal_form(PermGroup::trivial(4)).empty());
    std::vector<Perm> l0{Perm::from_cycles(3, {{1, 2}}), Perm::from_cycles(3, {{1, 3}})};
    std::vector<Perm> l1{Perm::from_cycles(3, {{1, 2}}), Perm::from_cycles(3, {{1, 2, 3}})};
    CHECK(normal_form(l0) == normal_form(l1));
    CHECK_THROWS_AS(normal_form(std::vector<Perm>{}), std::domain_error);
}

TEST_CASE("normal form is a complete invariant on S_4 subgroups") {
    Rng rng(4242);
    for (int trial = 0; trial < 120; ++trial) {
        PermGroup g = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        auto elems = oracle::closure_elements(4, g.generators());
        // a different generating list drawn from the same subgroup
        std::vector<Perm> alt;
        for (int i = 0; i < 4; ++i) alt.push_back(elems[rng.below(elems.size())]);
        PermGroup g2(4, alt);
        if (g2.order() == g.order())
            CHECK(normal_form(g) == normal_form(g2));
        else
            CHECK(normal_form(g2) != normal_form(g));  // proper subgroup
    }

    // different subgroups get different normal forms
    for (int trial = 0; trial < 100; ++trial) {
        PermGroup a = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        PermGroup b = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        bool same_group = a.order() == b.order();
        if (same_group)
            for (const Perm& p : b.generators()) same_group = same_group && a.contains(p);
        CHECK((normal_form(a) == normal_form(b)) == same_group);
    }
}

TEST_CASE("normal form output generates the same subgroup, S_5") {
    Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        PermGroup g = random_subgroup(5, 1 + static_cast<int>(rng.below(3)), rng);
        std::vector<Perm> nf = normal_form(g);
        PermGroup regen = nf.empty() ? PermGroup::trivial(5) : PermGroup(5, nf);
        CHECK(regen.order() == g.order());
        for (const Perm& p : nf) CHECK(g.contains(p));
    }
}
