#include "gic/fq.hpp"

#include "doctest.h"

#include <map>
#include <set>

using namespace gic;

namespace {

// brute-force row span as a set of vectors
std::set<std::vector<std::uint32_t>> row_span(const MatrixFq& m) {
    std::set<std::vector<std::uint32_t>> out;
    std::vector<int> coeff(m.rows(), 0);
    for (;;) {
        std::vector<std::uint32_t> v(m.cols(), 0);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                v[c] = (v[c] + static_cast<std::uint64_t>(coeff[r]) * m.at(r, c)) % m.q();
        out.insert(v);
        int i = 0;
        while (i < m.rows() && ++coeff[i] == static_cast<int>(m.q())) coeff[i++] = 0;
        if (i == m.rows()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("construction validates the modulus") {
    CHECK_THROWS_AS(MatrixFq(2, 2, 4), std::domain_error);
    CHECK_THROWS_AS(MatrixFq(2, 2, 1), std::domain_error);
    CHECK_NOTHROW(MatrixFq(2, 2, 7));
}

TEST_CASE("rref basics") {
    MatrixFq id = MatrixFq::identity(3, 5);
    CHECK(rref(id) == id);

    MatrixFq twos(2, 2, 3);
    twos.at(0, 0) = 2;
    twos.at(1, 1) = 2;
    CHECK(rref(twos) == MatrixFq::identity(2, 3));

    MatrixFq m(2, 3, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 1;
    m.at(1, 2) = 1;
    MatrixFq r = rref(m);
    CHECK(rref(r) == r);  // idempotent
    CHECK(row_span(r) == row_span(m));
}

TEST_CASE("rref is invariant under invertible row operations over F_3") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        MatrixFq m(3, 4, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = static_cast<std::uint32_t>(rng.below(3));
        MatrixFq p = random_gl(3, 3, rng);
        CHECK(rref(m) == rref(p * m));
    }
}

TEST_CASE("rref is a complete invariant for row spans of 2x3 matrices over F_2") {
    std::map<std::set<std::vector<std::uint32_t>>, std::set<std::string>> by_span;
    for (int bits = 0; bits < 64; ++bits) {
        MatrixFq m(2, 3, 2);
        for (int i = 0; i < 6; ++i) m.at(i / 3, i % 3) = (bits >> i) & 1;
        by_span[row_span(m)].insert(rref(m).to_text());
    }
    for (const auto& [span, forms] : by_span) CHECK(forms.size() == 1);
    std::set<std::string> all_forms;
    for (const auto& [span, forms] : by_span) all_forms.insert(*forms.begin());
    CHECK(all_forms.size() == by_span.size());
}

TEST_CASE("gl_order formula") {
    CHECK(gl_order(1, 7) == 6);
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(2, 3) == 48);
    CHECK(gl_order(3, 2) == 168);
    CHECK_THROWS_AS(gl_order(2, 6), std::domain_error);

    // cross-check by enumeration over all 2x2 matrices
    for (std::uint32_t q : {2u, 3u}) {
        int count = 0;
        for (std::uint32_t a = 0; a < q * q * q * q; ++a) {
            MatrixFq m(2, 2, q);
            std::uint32_t x = a;
            for (int i = 0; i < 4; ++i) {
                m.at(i / 2, i % 2) = x % q;
                x /= q;
            }
            if (is_invertible(m)) ++count;
        }
        CHECK(gl_order(2, q) == count);
    }
}

TEST_CASE("gl indexing round-trips exhaustively") {
    for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}}) {
        BigIndex total = gl_order(n, q);
        std::set<std::string> seen;
        for (BigIndex k = 0; k < total; ++k) {
            MatrixFq m = gl_unrank(k, n, q);
            CHECK(is_invertible(m));
            CHECK(seen.insert(m.to_text()).second);
            CHECK(gl_rank(m) == k);
        }
        CHECK(seen.size() == total);
        CHECK_THROWS_AS(gl_unrank(total, n, q), std::out_of_range);
    }
}

TEST_CASE("gl_rank rejects singular matrices") {
    MatrixFq zero(2, 2, 3);
    CHECK_THROWS_AS(gl_rank(zero), std::domain_error);
    CHECK(gl_rank(gl_unrank(0, 3, 2)) == 0);
}

TEST_CASE("random_gl is uniform at desk scale") {
    Rng rng(31337);
    // n=1, q=3: values 1 and 2 about 50/50 at 1e4 draws
    int ones = 0;
    const int draws1 = 10000;
    for (int i = 0; i < draws1; ++i) {
        MatrixFq m = random_gl(1, 3, rng);
        CHECK(is_invertible(m));
        if (m.at(0, 0) == 1) ++ones;
    }
    CHECK(ones > draws1 * 0.45);
    CHECK(ones < draws1 * 0.55);

    // GL_2(F_2): all 6 elements within 10% of uniform at 1e5 draws
    std::map<std::string, int> freq;
    const int draws2 = 100000;
    for (int i = 0; i < draws2; ++i) ++freq[random_gl(2, 2, rng).to_text()];
    REQUIRE(freq.size() == 6);
    for (const auto& [key, cnt] : freq) {
        double rel = static_cast<double>(cnt) * 6 / draws2;
        CHECK(rel > 0.9);
        CHECK(rel < 1.1);
    }
}

TEST_CASE("matrix text form round-trips") {
    MatrixFq m(2, 3, 5);
    m.at(0, 1) = 4;
    m.at(1, 2) = 3;
    std::istringstream is(m.to_text());
    CHECK(MatrixFq::from_text(is) == m);
}

TEST_CASE("matrix inverse") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        MatrixFq m = random_gl(3, 5, rng);
        CHECK(m * inverse(m) == MatrixFq::identity(3, 5));
        CHECK(inverse(m) * m == MatrixFq::identity(3, 5));
    }
    CHECK_THROWS_AS(inverse(MatrixFq(2, 2, 3)), std::domain_error);
}
