#pragma once

#include "gic/big_index.hpp"
#include "gic/bits.hpp"
#include "gic/rng.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gic {

/// Affine hash sigma -> U*sigma + v over F_2, with U an m x ell bit matrix.
/// Bit j of a mask is coordinate j of sigma.
struct LinearHash {
    int ell = 0;
    int m = 0;
    std::vector<std::uint64_t> rows;  // m masks of ell bits
    std::uint64_t v = 0;              // m bits

    std::uint64_t eval(std::uint64_t sigma) const {
        std::uint64_t out = 0;
        for (int i = 0; i < m; ++i)
            out |= static_cast<std::uint64_t>(__builtin_parityll(rows[i] & sigma)) << i;
        return out ^ v;
    }

    static LinearHash random(int ell, int m, Rng& rng) {
        if (ell < 0 || ell > 63) throw std::domain_error("LinearHash: ell out of range");
        LinearHash h;
        h.ell = ell;
        h.m = m;
        std::uint64_t mask = ell == 0 ? 0 : (~0ULL >> (64 - ell));
        for (int i = 0; i < m; ++i) h.rows.push_back(rng.next_u64() & mask);
        h.v = m == 0 ? 0 : (rng.next_u64() & (m == 64 ? ~0ULL : ((1ULL << m) - 1)));
        return h;
    }
};

/// Solved form of h^{-1}(0^m): a particular solution plus a kernel basis.
struct KernelDecoder {
    bool solvable = false;
    int ell = 0;
    int rank = 0;
    std::uint64_t particular = 0;
    std::vector<std::uint64_t> basis;  // ell - rank vectors

    static KernelDecoder solve(const LinearHash& h) {
        KernelDecoder kd;
        kd.ell = h.ell;
        // Solve U*sigma = v (char 2). Gaussian elimination, columns ascending.
        std::vector<std::uint64_t> rows = h.rows;
        std::vector<int> rhs(h.m);
        for (int i = 0; i < h.m; ++i) rhs[i] = (h.v >> i) & 1;
        std::vector<int> pivcol;
        int r = 0;
        for (int c = 0; c < h.ell && r < h.m; ++c) {
            int pr = -1;
            for (int i = r; i < h.m; ++i)
                if ((rows[i] >> c) & 1) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(rows[pr], rows[r]);
            std::swap(rhs[pr], rhs[r]);
            for (int i = 0; i < h.m; ++i) {
                if (i == r || !((rows[i] >> c) & 1)) continue;
                rows[i] ^= rows[r];
                rhs[i] ^= rhs[r];
            }
            pivcol.push_back(c);
            ++r;
        }
        kd.rank = r;
        for (int i = r; i < h.m; ++i)
            if (rhs[i]) return kd;  // inconsistent: empty preimage
        kd.solvable = true;
        for (int j = 0; j < r; ++j)
            if (rhs[j]) kd.particular |= 1ULL << pivcol[j];
        std::vector<char> is_pivot(h.ell, 0);
        for (int c : pivcol) is_pivot[c] = 1;
        for (int f = 0; f < h.ell; ++f) {
            if (is_pivot[f]) continue;
            std::uint64_t vec = 1ULL << f;
            for (int j = 0; j < r; ++j)
                if ((rows[j] >> f) & 1) vec |= 1ULL << pivcol[j];
            kd.basis.push_back(vec);
        }
        return kd;
    }

    BigIndex count() const {
        return solvable ? pow2(static_cast<std::uint64_t>(ell - rank)) : BigIndex(0);
    }

    std::uint64_t unrank(const BigIndex& j) const {
        if (!solvable) throw std::domain_error("kernel_unrank: empty preimage");
        if (j < 0 || j >= count()) throw std::out_of_range("kernel_unrank: index out of range");
        std::uint64_t sigma = particular;
        std::uint64_t jj = j.convert_to<std::uint64_t>();
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((jj >> i) & 1) sigma ^= basis[i];
        return sigma;
    }
};

/// Bijection from [2^(ell-rank U)] onto h^{-1}(0^m).
inline std::uint64_t kernel_unrank(const LinearHash& h, const BigIndex& j) {
    return KernelDecoder::solve(h).unrank(j);
}

/// A sampler program: ell input bits to an outcome byte-string.
struct BitSampler {
    int ell = 0;
    std::function<std::string(std::uint64_t)> run;
};

/// Hash list certifying a near-optimal encoding of a flat sampler, per the
/// construction with 3*ceil(s) random affine hashes and output length
/// ceil(s)+3+ceil(log(3*ceil(s))) bits.
struct FlatScheme {
    int ell = 0;
    int m = 0;       // max(0, ell - ceil(s) - 2)
    int s_ceil = 0;
    std::vector<LinearHash> hashes;
    bool exhaustively_verified = false;

    std::uint64_t offset_bits() const {
        return static_cast<std::uint64_t>(s_ceil) + 3;
    }

    std::uint64_t index_width() const {
        return offset_bits() + ceil_log2(BigIndex(static_cast<std::uint64_t>(hashes.size())));
    }

    BigIndex index_limit() const {
        return BigIndex(static_cast<std::uint64_t>(hashes.size())) << offset_bits();
    }

    std::string to_text() const {
        std::ostringstream os;
        os << ell << ' ' << m << ' ' << s_ceil << ' ' << hashes.size() << '\n';
        for (const auto& h : hashes) {
            for (int i = 0; i < m; ++i) {
                for (int c = 0; c < ell; ++c) os << (((h.rows[i] >> c) & 1) ? '1' : '0');
                os << '\n';
            }
            for (int i = 0; i < m; ++i) os << (((h.v >> i) & 1) ? '1' : '0');
            os << '\n';
        }
        return os.str();
    }

    static FlatScheme from_text(std::istream& is) {
        FlatScheme s;
        std::size_t count = 0;
        if (!(is >> s.ell >> s.m >> s.s_ceil >> count))
            throw std::domain_error("scheme: bad header");
        std::string line;
        std::getline(is, line);
        auto read_bits = [&](int want) {
            if (!std::getline(is, line) || static_cast<int>(line.size()) != want)
                throw std::domain_error("scheme: bad bit line");
            std::uint64_t bits = 0;
            for (int c = 0; c < want; ++c) {
                if (line[c] == '1')
                    bits |= 1ULL << c;
                else if (line[c] != '0')
                    throw std::domain_error("scheme: bad bit char");
            }
            return bits;
        };
        for (std::size_t k = 0; k < count; ++k) {
            LinearHash h;
            h.ell = s.ell;
            h.m = s.m;
            for (int i = 0; i < s.m; ++i) h.rows.push_back(read_bits(s.ell));
            h.v = read_bits(s.m);
            s.hashes.push_back(std::move(h));
        }
        return s;
    }
};

/// h works for outcome y when its preimage of 0^m is small enough
/// (<= 2^(ceil(s)+3)) and contains a sample mapping to y.
inline bool works_for(const LinearHash& h, const BitSampler& sampler, int s_ceil,
                      const std::string& y) {
    KernelDecoder kd = KernelDecoder::solve(h);
    if (!kd.solvable) return false;
    if (kd.count() > pow2(static_cast<std::uint64_t>(s_ceil) + 3)) return false;
    std::uint64_t n = kd.count().convert_to<std::uint64_t>();
    for (std::uint64_t j = 0; j < n; ++j)
        if (sampler.run(kd.unrank(j)) == y) return true;
    return false;
}

namespace detail {

inline std::vector<std::string> all_outcomes(const BitSampler& sampler) {
    std::set<std::string> out;
    for (std::uint64_t sigma = 0; sigma < (1ULL << sampler.ell); ++sigma)
        out.insert(sampler.run(sigma));
    return {out.begin(), out.end()};
}

}  // namespace detail

/// Draws 3*ceil(s) hashes at random (redrawing any with an empty preimage so
/// the decoder is total) and certifies that every outcome has a working hash.
/// Up to ell = 20 the outcome set is found by exhausting {0,1}^ell; above,
/// verification is by sampling and the scheme is marked accordingly.
/// Retries with fresh hash lists; failure after the retry budget signals an
/// underestimated max-entropy bound s.
inline FlatScheme build_scheme(const BitSampler& sampler, double s, Rng& rng,
                               int retries = 64, int sample_verify = 4096) {
    if (s < 0) throw std::domain_error("build_scheme: s must be >= 0");
    if (sampler.ell < 0 || sampler.ell > 63)
        throw std::domain_error("build_scheme: ell out of range");
    FlatScheme scheme;
    scheme.ell = sampler.ell;
    scheme.s_ceil = static_cast<int>(std::ceil(s));
    scheme.m = std::max(0, sampler.ell - scheme.s_ceil - 2);
    std::size_t count = std::max(1, 3 * scheme.s_ceil);

    const bool exhaustive = sampler.ell <= 20;
    std::vector<std::string> outcomes;
    if (exhaustive) {
        outcomes = detail::all_outcomes(sampler);
    } else {
        std::set<std::string> seen;
        for (int i = 0; i < sample_verify; ++i)
            seen.insert(sampler.run(rng.next_u64() & (~0ULL >> (64 - sampler.ell))));
        outcomes.assign(seen.begin(), seen.end());
    }

    for (int attempt = 0; attempt < retries; ++attempt) {
        scheme.hashes.clear();
        while (scheme.hashes.size() < count) {
            LinearHash h = LinearHash::random(scheme.ell, scheme.m, rng);
            if (KernelDecoder::solve(h).solvable) scheme.hashes.push_back(std::move(h));
        }
        bool all_covered = true;
        for (const auto& y : outcomes) {
            bool covered = false;
            for (const auto& h : scheme.hashes)
                if (works_for(h, sampler, scheme.s_ceil, y)) {
                    covered = true;
                    break;
                }
            if (!covered) {
                all_covered = false;
                break;
            }
        }
        if (all_covered) {
            scheme.exhaustively_verified = exhaustive;
            return scheme;
        }
    }
    throw std::runtime_error("build_scheme: coverage verification exceeded the retry budget "
                             "(max-entropy bound s was likely underestimated)");
}

/// Index k_y = 2^(ceil(s)+3) * i + j with h_i working for y and the j-th
/// kernel element sampling to y.
inline BigIndex flat_encode(const FlatScheme& scheme, const BitSampler& sampler,
                            const std::string& y) {
    for (std::size_t i = 0; i < scheme.hashes.size(); ++i) {
        KernelDecoder kd = KernelDecoder::solve(scheme.hashes[i]);
        if (!kd.solvable) continue;
        if (kd.count() > pow2(scheme.offset_bits())) continue;
        std::uint64_t n = kd.count().convert_to<std::uint64_t>();
        for (std::uint64_t j = 0; j < n; ++j)
            if (sampler.run(kd.unrank(j)) == y)
                return (BigIndex(i) << scheme.offset_bits()) + j;
    }
    throw invariant_violation("flat_encode: no working hash for outcome (scheme not verified?)");
}

/// Total on [0, count * 2^(ceil(s)+3)): the kernel coefficient part is
/// reduced mod the kernel size, so every index decodes.
inline std::string flat_decode(const FlatScheme& scheme, const BitSampler& sampler,
                               const BigIndex& k) {
    if (k < 0 || k >= scheme.index_limit())
        throw std::out_of_range("flat_decode: index out of range");
    std::uint64_t i = static_cast<std::uint64_t>(k >> scheme.offset_bits());
    BigIndex j = k - (BigIndex(i) << scheme.offset_bits());
    KernelDecoder kd = KernelDecoder::solve(scheme.hashes[i]);
    if (!kd.solvable) throw invariant_violation("flat_decode: hash with empty preimage");
    return sampler.run(kd.unrank(j % kd.count()));
}

}  // namespace gic
