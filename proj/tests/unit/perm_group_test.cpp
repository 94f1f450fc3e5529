#include "gic/perm_group.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <map>
#include <set>

using namespace gic;

namespace {

PermGroup random_subgroup(int n, int gens, Rng& rng) {
    std::vector<Perm> g;
    for (int i = 0; i < gens; ++i) g.push_back(uniform_symmetric_element(n, rng));
    return PermGroup(n, std::move(g));
}

}  // namespace

TEST_CASE("order on known groups") {
    CHECK(PermGroup::trivial(5).order() == 1);
    PermGroup s3(3, {Perm::from_cycles(3, {{1, 2}}), Perm::from_cycles(3, {{1, 2, 3}})});
    CHECK(s3.order() == 6);
    PermGroup klein(4, {Perm::from_cycles(4, {{1, 2}, {3, 4}}), Perm::from_cycles(4, {{1, 3}, {2, 4}})});
    CHECK(klein.order() == 4);
    CHECK(PermGroup::symmetric(7).order() == factorial(7));
}

TEST_CASE("orbit examples") {
    CHECK(PermGroup::trivial(4).orbit(3) == std::vector<int>{3});
    PermGroup c3(3, {Perm::from_cycles(3, {{1, 2, 3}})});
    CHECK(c3.orbit(1) == std::vector<int>{1, 2, 3});
    PermGroup g(4, {Perm::from_cycles(4, {{1, 2}})});
    CHECK(g.orbit(4) == std::vector<int>{4});
    CHECK_THROWS_AS(g.orbit(5), std::domain_error);
}

TEST_CASE("transporter examples") {
    PermGroup c3(3, {Perm::from_cycles(3, {{1, 2, 3}})});
    auto t = c3.transporter(1, 1);
    REQUIRE(t.has_value());
    CHECK(c3.contains(*t));
    auto t13 = c3.transporter(1, 3);
    REQUIRE(t13.has_value());
    CHECK(t13->apply(1) == 3);
    CHECK(c3.contains(*t13));
    PermGroup g(3, {Perm::from_cycles(3, {{1, 2}})});
    CHECK(!g.transporter(1, 3).has_value());
}

TEST_CASE("stabilizer examples") {
    CHECK(PermGroup::trivial(4).stabilizer(2).order() == 1);
    PermGroup s3 = PermGroup::symmetric(3);
    CHECK(s3.stabilizer(1).order() == 2);
    CHECK(s3.stabilizer(1).order() * BigIndex(s3.orbit(1).size()) == s3.order());
}

TEST_CASE("contains") {
    PermGroup c3(3, {Perm::from_cycles(3, {{1, 2, 3}})});
    CHECK(c3.contains(Perm::identity(3)));
    CHECK(!c3.contains(Perm::from_cycles(3, {{1, 2}})));
    PermGroup s3(3, {Perm::from_cycles(3, {{1, 2}}), Perm::from_cycles(3, {{1, 2, 3}})});
    for (const Perm& p : oracle::symmetric_elements(3)) CHECK(s3.contains(p));
}

TEST_CASE("chain queries agree with closure enumeration on random S_4 subgroups") {
    Rng rng(20240517);
    for (int trial = 0; trial < 200; ++trial) {
        PermGroup g = random_subgroup(4, 1 + static_cast<int>(rng.below(3)), rng);
        auto elems = oracle::closure(4, g.generators());
        CHECK(g.order() == BigIndex(elems.size()));

        // membership agrees both ways
        for (const Perm& p : oracle::symmetric_elements(4))
            CHECK(g.contains(p) == (elems.count(p.images0()) > 0));

        for (int v = 1; v <= 4; ++v) {
            // orbit by brute force
            std::set<int> brute;
            for (const auto& img : elems) brute.insert(img[v - 1] + 1);
            auto fast = g.orbit(v);
            CHECK(std::set<int>(fast.begin(), fast.end()) == brute);

            // orbit-stabilizer identity and stabilizer correctness
            PermGroup st = g.stabilizer(v);
            CHECK(st.order() * BigIndex(fast.size()) == g.order());
            for (const Perm& p : st.generators()) {
                CHECK(p.apply(v) == v);
                CHECK(elems.count(p.images0()) > 0);
            }

            // transporter hits every orbit member and nothing else
            for (int u = 1; u <= 4; ++u) {
                auto t = g.transporter(v, u);
                if (brute.count(u)) {
                    REQUIRE(t.has_value());
                    CHECK(t->apply(v) == u);
                    CHECK(g.contains(*t));
                } else {
                    CHECK(!t.has_value());
                }
            }
        }
    }
}

TEST_CASE("reduced keeps the generated subgroup") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        PermGroup g = random_subgroup(5, 4, rng);
        PermGroup r = g.reduced();
        CHECK(r.order() == g.order());
        for (const Perm& p : r.generators()) CHECK(g.contains(p));
        CHECK(r.generators().size() <= std::max<std::size_t>(1, g.generators().size()));
    }
}

TEST_CASE("elements enumerates the whole group") {
    PermGroup s4 = PermGroup::symmetric(4);
    auto elems = s4.elements();
    std::set<std::vector<int>> uniq;
    for (const Perm& p : elems) uniq.insert(p.images0());
    CHECK(uniq.size() == 24);
}

TEST_CASE("random subproduct basics") {
    std::vector<Perm> empty;
    Rng rng(5);
    CHECK_THROWS_AS(random_subproduct(empty, rng), std::domain_error);

    // all-zero draw gives the identity: find a seed whose first bit draws are 0
    std::vector<Perm> list{Perm::from_cycles(3, {{1, 2}})};
    bool saw_identity = false, saw_swap = false;
    int id_count = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        Perm p = random_subproduct(list, rng);
        if (p.is_identity()) {
            saw_identity = true;
            ++id_count;
        } else {
            CHECK(p == list[0]);
            saw_swap = true;
        }
    }
    CHECK(saw_identity);
    CHECK(saw_swap);
    // Bernoulli: about a 50/50 split, +-5% at 10^4 draws
    CHECK(id_count > draws * 0.45);
    CHECK(id_count < draws * 0.55);

    // closure: members for many seeds
    PermGroup s4 = PermGroup::symmetric(4);
    for (int i = 0; i < 200; ++i) CHECK(s4.contains(random_subproduct(s4.generators(), rng)));
}

TEST_CASE("near uniform sampling: trivial group") {
    Rng rng(11);
    CHECK(near_uniform_element(PermGroup::trivial(4), rng) == Perm::identity(4));
}

TEST_CASE("near uniform sampling: C_3 frequencies within 3% of 1/3 at 1e5 draws") {
    PermGroup c3(3, {Perm::from_cycles(3, {{1, 2, 3}})});
    Rng rng(101);
    NearUniformSampler sampler(c3, rng);
    std::map<std::vector<int>, int> freq;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++freq[sampler.draw(rng).images0()];
    REQUIRE(freq.size() == 3);
    for (const auto& [img, cnt] : freq) {
        double p = static_cast<double>(cnt) / draws;
        CHECK(p > 1.0 / 3 - 0.03);
        CHECK(p < 1.0 / 3 + 0.03);
    }
}

TEST_CASE("near uniform sampling: S_4 all 24 elements within 10% relative at 1e6 draws") {
    PermGroup s4 = PermGroup::symmetric(4);
    Rng rng(999);
    NearUniformSampler sampler(s4, rng);
    std::map<std::vector<int>, int> freq;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) ++freq[sampler.draw(rng).images0()];
    REQUIRE(freq.size() == 24);
    for (const auto& [img, cnt] : freq) {
        double rel = static_cast<double>(cnt) * 24 / draws;
        CHECK(rel > 0.9);
        CHECK(rel < 1.1);
    }
}

TEST_CASE("generator list text form round-trips") {
    PermGroup g(4, {Perm::from_cycles(4, {{1, 2}}), Perm::from_cycles(4, {{2, 3, 4}})});
    std::istringstream is(g.to_text());
    PermGroup back = PermGroup::from_text(is);
    CHECK(back.degree() == 4);
    CHECK(back.order() == g.order());
    for (const Perm& p : back.generators()) CHECK(g.contains(p));
}
