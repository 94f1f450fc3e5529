#include "gic/cost.hpp"

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <set>

using namespace gic;

namespace {

// A codec that hides information in its parameters without charging for it.
struct CheatingCodec : Codec {
    std::string id() const override { return "cheating"; }
    std::optional<std::string> decode(const Bits& params, const BigIndex&,
                                      std::uint64_t) const override {
        return std::string(params.bytes.begin(), params.bytes.end());
    }
    std::uint64_t charged_param_bits(const Bits&) const override { return 0; }
};

}  // namespace

TEST_CASE("literal cost: |y| + c_machine, empty string costs c_machine") {
    CostModel m = CostModel::standard();
    CHECK(m.cost("") == 64);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        std::string y;
        for (std::uint64_t len = rng.below(40); y.size() < len;)
            y += static_cast<char>(rng.below(256));
        CHECK(m.cost(y) == 8 * y.size() + 64);
    }
}

TEST_CASE("literal descriptions decode to the exact string") {
    CostModel m = CostModel::standard();
    std::string y = "abc\x00\xff def";
    Description d = LiteralCodec::make(y);
    std::vector<CostModel::Line> report;
    CHECK(m.cost(y, {d}, &report) == 8 * y.size() + 64);
    CHECK(report.size() == 2);
    CHECK(report[1].accepted);
}

TEST_CASE("failing hints are rejected and logged, not fatal") {
    CostModel m = CostModel::standard();
    Description d = LiteralCodec::make("aaaa");
    std::vector<CostModel::Line> report;
    std::uint64_t c = m.cost("bbbb", {d}, &report);
    CHECK(c == 8 * 4 + 64);
    CHECK(!report[1].accepted);
    CHECK(report[1].note.find("different string") != std::string::npos);

    Description unknown;
    unknown.codec_id = "no-such-codec";
    report.clear();
    m.cost("x", {unknown}, &report);
    CHECK(!report[1].accepted);
}

TEST_CASE("blocked-lehmer codec round-trips permutation lists") {
    Rng rng(3);
    std::vector<Perm> perms;
    std::string expect;
    for (int i = 0; i < 20; ++i) {
        perms.push_back(uniform_symmetric_element(5, rng));
        expect += detail::pack_perm_bytes(perms.back());
    }
    Description d = BlockedLehmerCodec::make(5, 4, perms);
    BlockedLehmerCodec codec;
    auto decoded = codec.decode(d.params, d.index, d.index_bits);
    REQUIRE(decoded.has_value());
    CHECK(*decoded == expect);
    // ceil(20/4) blocks of ceil(4*log2(120)) = 28 bits
    CHECK(d.index_bits == 5 * 28);

    // and through the registered model
    CostModel m = CostModel::standard();
    std::vector<CostModel::Line> report;
    CHECK(m.cost(expect, {d}, &report) == d.params.nbits + d.index_bits + 64);
    CHECK(report[1].accepted);
}

TEST_CASE("blocked-gl codec round-trips matrix lists") {
    Rng rng(4);
    std::vector<MatrixFq> mats;
    std::string expect;
    for (int i = 0; i < 9; ++i) {
        mats.push_back(random_gl(2, 3, rng));
        expect += detail::pack_matrix_bytes(mats.back());
    }
    Description d = BlockedGlCodec::make(2, 3, 4, mats);
    BlockedGlCodec codec;
    auto decoded = codec.decode(d.params, d.index, d.index_bits);
    REQUIRE(decoded.has_value());
    CHECK(*decoded == expect);
}

TEST_CASE("blocked-coset codec reproduces permuted copies of a rigid graph") {
    Rng rng(5);
    UniverseElement base = UniverseElement::make_graph(fixtures::rigid6());
    PermGroup gamma = PermGroup::trivial(6);
    const int t = 64, b = 8;
    std::vector<Perm> taus;
    std::string y;
    for (int i = 0; i < t; ++i) {
        taus.push_back(uniform_symmetric_element(6, rng));
        y += complete_invariant(act(taus.back(), base));
    }
    Description d = BlockedCosetCodec::make(base, gamma, b, taus);
    CostModel m = CostModel::standard();
    std::vector<CostModel::Line> report;
    std::uint64_t c = m.cost(y, {d}, &report);
    REQUIRE(report[1].accepted);
    // t/b blocks of ceil(8 * log2(720)) = 76 bits, plus params and machine
    CHECK(report[1].index_bits == (t / b) * 76);
    std::uint64_t s_bits = (t / b) * 76;
    CHECK(c == s_bits + report[1].params_bits + 64);
    CHECK(c <= 64 * std::ceil(std::log2(720.0)) + 76 + report[1].params_bits + 64);

    // the paper-style bound: cost within t*s + t/b + |params| + c_machine
    double bound = t * std::log2(720.0) + t / b + report[1].params_bits + 64;
    CHECK(static_cast<double>(c) <= bound + 1);
}

TEST_CASE("blocked-coset codec with a nontrivial automorphism group") {
    // square C_4 on 4 vertices inside S_4: |Aut| = 8, orbit base = 3
    Graph square(4);
    square.set_edge(0, 1);
    square.set_edge(1, 2);
    square.set_edge(2, 3);
    square.set_edge(3, 0);
    UniverseElement base = UniverseElement::make_graph(square);
    auto aut = oracle::universe_aut(base);
    CHECK(aut.size() == 8);
    std::vector<Perm> agens;
    for (const auto& g : aut) agens.push_back(std::get<Perm>(g));
    PermGroup gamma(4, agens);

    Rng rng(6);
    std::vector<Perm> taus;
    std::string y;
    for (int i = 0; i < 16; ++i) {
        taus.push_back(uniform_symmetric_element(4, rng));
        y += complete_invariant(act(taus.back(), base));
    }
    Description d = BlockedCosetCodec::make(base, gamma, 4, taus);
    CostModel m = CostModel::standard();
    std::vector<CostModel::Line> report;
    m.cost(y, {d}, &report);
    CHECK(report[1].accepted);
    // base 24/8 = 3 per sample: blocks of ceil(4*log2 3) = 7 bits
    CHECK(report[1].index_bits == 4 * 7);
}

TEST_CASE("flat-scheme codec round-trips through a registered sampler") {
    BitSampler sampler{10, [](std::uint64_t sigma) {
                           std::string out(1, static_cast<char>(sigma & 0x1f));
                           return out;
                       }};
    Rng rng(7);
    FlatScheme scheme = build_scheme(sampler, 5.0, rng);
    std::vector<BigIndex> ks;
    std::string y;
    for (int v = 0; v < 12; ++v) {
        std::string s(1, static_cast<char>(v));
        ks.push_back(flat_encode(scheme, sampler, s));
        y += s;
    }
    Description d = FlatSchemeCodec::make_registered(1, scheme, ks);
    std::map<int, FlatSchemeCodec::RegisteredSampler> reg{{1, {sampler, 1000}}};
    CostModel m = CostModel::standard(64, reg);
    std::vector<CostModel::Line> report;
    std::uint64_t c = m.cost(y, {d}, &report);
    CHECK(report[1].accepted);
    // declared circuit bits are charged on top of the parameter blob
    CHECK(report[1].params_bits == d.params.nbits + 1000);
    CHECK(c == std::min(report[0].total, report[1].total));
}

TEST_CASE("flat-scheme codec: orbit sampler family") {
    UniverseElement base = UniverseElement::make_graph(fixtures::rigid6());
    BitSampler sampler = FlatSchemeCodec::orbit_sampler(base);
    CHECK(sampler.ell == 18);  // ceil(log2 720) + 8
    Rng rng(8);
    FlatScheme scheme = build_scheme(sampler, std::log2(720.0) + 0.15, rng);
    Rng draw(9);
    std::vector<BigIndex> ks;
    std::string y;
    for (int i = 0; i < 8; ++i) {
        std::string s = sample_isomorphic_copy(base, draw);
        ks.push_back(flat_encode(scheme, sampler, s));
        y += s;
    }
    Description d = FlatSchemeCodec::make_orbit(base, scheme, ks);
    CostModel m = CostModel::standard();
    std::vector<CostModel::Line> report;
    m.cost(y, {d}, &report);
    CHECK(report[1].accepted);
}

TEST_CASE("counting audit passes for the standard registry") {
    CostModel m = CostModel::standard();
    auto rep = m.counting_audit(80, 256);
    CHECK(rep.pass);
    CHECK(rep.bound < rep.limit);

    // audit closes with a real blocked-coset description as probe
    Rng rng(10);
    UniverseElement base = UniverseElement::make_graph(fixtures::rigid6());
    std::vector<Perm> taus{uniform_symmetric_element(6, rng)};
    Description d = BlockedCosetCodec::make(base, PermGroup::trivial(6), 1, taus);
    auto rep2 = m.counting_audit(200, 64, {d});
    CHECK(rep2.pass);
}

TEST_CASE("audit fails when a codec omits its params from cost") {
    CostModel m = CostModel::standard();
    m.register_codec(std::make_shared<CheatingCodec>());
    Description d;
    d.codec_id = "cheating";
    d.params.push(0xab, 8);
    d.index = 0;
    d.index_bits = 0;
    auto rep = m.counting_audit(100, 8, {d});
    CHECK(!rep.pass);
}

TEST_CASE("counting bound blocks sub-entropy costs: soundness sampling") {
    // uniform over 2^16 two-byte strings; Pr[cost <= 16 - k] bounded by
    // 2^(1-k), checked at k = 4 and k = 8
    CostModel m = CostModel::standard();
    Rng rng(11);
    int hits4 = 0, hits8 = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        std::uint64_t v = rng.below(1ULL << 16);
        std::string y(2, '\0');
        y[0] = static_cast<char>(v >> 8);
        y[1] = static_cast<char>(v & 0xff);
        std::uint64_t c = m.cost(y);
        if (c <= 16 - 4) ++hits4;
        if (c <= 16 - 8) ++hits8;
    }
    CHECK(static_cast<double>(hits4) / draws <= 2.0 * std::pow(2.0, -4));
    CHECK(static_cast<double>(hits8) / draws <= 2.0 * std::pow(2.0, -8));
    CHECK(hits8 == 0);
    // and the analytic counting certificate for that budget
    auto rep = m.counting_audit(8, 16);
    CHECK(rep.pass);
    CHECK(rep.bound == 0);  // budget below c_machine
}

TEST_CASE("monotonicity: adding hints never increases cost") {
    CostModel m = CostModel::standard();
    Rng rng(12);
    UniverseElement base = UniverseElement::make_graph(fixtures::rigid6());
    std::vector<Perm> taus;
    std::string y;
    for (int i = 0; i < 8; ++i) {
        taus.push_back(uniform_symmetric_element(6, rng));
        y += complete_invariant(act(taus.back(), base));
    }
    std::uint64_t bare = m.cost(y);
    Description d = BlockedCosetCodec::make(base, PermGroup::trivial(6), 4, taus);
    std::uint64_t hinted = m.cost(y, {d});
    CHECK(hinted <= bare);
    std::uint64_t both = m.cost(y, {d, LiteralCodec::make(y)});
    CHECK(both == hinted);
}

TEST_CASE("cost report lines have the documented shape") {
    CostModel m = CostModel::standard();
    std::vector<CostModel::Line> report;
    m.cost("zz", {LiteralCodec::make("zz")}, &report);
    std::string lines = cost_report_lines(report);
    CHECK(lines.find("literal 0 16 80") != std::string::npos);
}
