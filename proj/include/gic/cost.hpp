#pragma once

#include "gic/bits.hpp"
#include "gic/coset.hpp"
#include "gic/flat.hpp"
#include "gic/iso.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gic {

/// A self-contained description of a string: which registered decoder, its
/// parameter blob, and an index of a declared width. Decoding is injective
/// per (codec, params, width).
struct Description {
    std::string codec_id;
    Bits params;
    BigIndex index;
    std::uint64_t index_bits = 0;
};

namespace detail {

inline void push_big(Bits& b, const BigIndex& v, std::uint64_t width) {
    for (std::uint64_t i = 0; i < width; ++i)
        b.push_bit(boost::multiprecision::bit_test(v, static_cast<unsigned>(width - 1 - i)));
}

inline BigIndex read_big(BitReader& r, std::uint64_t width) {
    BigIndex v = 0;
    for (std::uint64_t i = 0; i < width; ++i) {
        v <<= 1;
        if (r.read_bit()) v |= 1;
    }
    return v;
}

// Block widths for t samples in blocks of b, each sample an integer in
// [0, range): one index of ceil(log2(range^block)) bits per block.
inline std::vector<std::pair<int, std::uint64_t>> block_layout(int t, int b, const BigIndex& range) {
    std::vector<std::pair<int, std::uint64_t>> out;
    int done = 0;
    while (done < t) {
        int len = std::min(b, t - done);
        BigIndex total = 1;
        for (int i = 0; i < len; ++i) total *= range;
        out.emplace_back(len, ceil_log2(total));
        done += len;
    }
    return out;
}

// ---- universe element packing (codec parameter layouts) --------------------

constexpr int kKindW = 2, kNW = 8, kQW = 16, kDW = 8, kTW = 20, kBW = 12, kGensW = 8;

inline int field_width(std::uint32_t q) { return static_cast<int>(ceil_log2(BigIndex(q))); }
inline int point_width(int n) { return n <= 1 ? 1 : static_cast<int>(ceil_log2(BigIndex(n))); }

inline void pack_perm(Bits& bits, const Perm& p) {
    int w = point_width(p.degree());
    for (int i = 0; i < p.degree(); ++i)
        bits.push(static_cast<std::uint64_t>(p.image0(i)), w);
}

inline Perm unpack_perm(BitReader& r, int n) {
    int w = point_width(n);
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) images[i] = static_cast<int>(r.read(w)) + 1;
    return Perm::from_images(images);
}

inline void pack_universe(Bits& bits, const UniverseElement& w) {
    bits.push(static_cast<std::uint64_t>(w.kind), kKindW);
    int n = w.degree();
    bits.push(static_cast<std::uint64_t>(n), kNW);
    switch (w.kind) {
        case Kind::Graph:
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) bits.push_bit(w.graph().at(u, v));
            break;
        case Kind::LinearCode: {
            const MatrixFq& m = w.code();
            bits.push(m.q(), kQW);
            bits.push(static_cast<std::uint64_t>(m.rows()), kDW);
            int fw = field_width(m.q());
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) bits.push(m.at(r, c), fw);
            break;
        }
        case Kind::PermConjugacy: {
            bits.push(w.subgroup_gens().size(), kGensW);
            for (const Perm& p : w.subgroup_gens()) pack_perm(bits, p);
            break;
        }
        case Kind::MatrixSpace: {
            const auto& basis = w.space_basis();
            bits.push(basis.front().q(), kQW);
            bits.push(basis.size(), kDW);
            int fw = field_width(basis.front().q());
            for (const auto& b : basis)
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) bits.push(b.at(r, c), fw);
            break;
        }
    }
}

inline UniverseElement unpack_universe(BitReader& r) {
    Kind kind = static_cast<Kind>(r.read(kKindW));
    int n = static_cast<int>(r.read(kNW));
    switch (kind) {
        case Kind::Graph: {
            Graph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (r.read_bit()) g.set_edge(u, v);
            return UniverseElement::make_graph(std::move(g));
        }
        case Kind::LinearCode: {
            std::uint32_t q = static_cast<std::uint32_t>(r.read(kQW));
            int d = static_cast<int>(r.read(kDW));
            MatrixFq m(d, n, q);
            int fw = field_width(q);
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < n; ++c) m.at(i, c) = static_cast<std::uint32_t>(r.read(fw));
            return UniverseElement::make_code(std::move(m));
        }
        case Kind::PermConjugacy: {
            int k = static_cast<int>(r.read(kGensW));
            std::vector<Perm> gens;
            for (int i = 0; i < k; ++i) gens.push_back(unpack_perm(r, n));
            return UniverseElement::make_subgroup(n, std::move(gens));
        }
        case Kind::MatrixSpace: {
            std::uint32_t q = static_cast<std::uint32_t>(r.read(kQW));
            int d = static_cast<int>(r.read(kDW));
            int fw = field_width(q);
            std::vector<MatrixFq> basis;
            for (int i = 0; i < d; ++i) {
                MatrixFq b(n, n, q);
                for (int rr = 0; rr < n; ++rr)
                    for (int c = 0; c < n; ++c) b.at(rr, c) = static_cast<std::uint32_t>(r.read(fw));
                basis.push_back(std::move(b));
            }
            return UniverseElement::make_space(std::move(basis));
        }
    }
    throw std::domain_error("unpack_universe: bad kind");
}

inline std::string pack_perm_bytes(const Perm& p) {
    Bits b;
    pack_perm(b, p);
    return std::string(b.bytes.begin(), b.bytes.end());
}

inline std::string pack_matrix_bytes(const MatrixFq& m) {
    Bits b;
    int fw = field_width(m.q());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) b.push(m.at(r, c), fw);
    return std::string(b.bytes.begin(), b.bytes.end());
}

}  // namespace detail

/// A registered injective decoder. The model charges
/// charged_param_bits + index_bits + c_machine per description.
class Codec {
public:
    virtual ~Codec() = default;
    virtual std::string id() const = 0;
    virtual std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                              std::uint64_t index_bits) const = 0;

    virtual std::uint64_t charged_param_bits(const Bits& params) const { return params.nbits; }

    /// Upper bound on distinct strings describable with
    /// charged_param_bits + index_bits <= budget.
    virtual BigIndex max_described_strings(std::uint64_t budget) const {
        return (BigIndex(budget) + 1) * pow2(budget);
    }
};

/// literal: the index is the string itself, big-endian; width = 8 * |y|.
class LiteralCodec : public Codec {
public:
    std::string id() const override { return "literal"; }

    std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                      std::uint64_t index_bits) const override {
        if (params.nbits != 0 || index_bits % 8 != 0) return std::nullopt;
        std::size_t len = index_bits / 8;
        std::string out(len, '\0');
        BigIndex v = index;
        for (std::size_t i = 0; i < len; ++i) {
            out[len - 1 - i] = static_cast<char>(static_cast<std::uint8_t>(v & 0xff));
            v >>= 8;
        }
        return out;
    }

    BigIndex max_described_strings(std::uint64_t budget) const override {
        // strings of bit-length <= budget, whole bytes
        return pow2(budget / 8 * 8 + 1);
    }

    static Description make(const std::string& y) {
        Description d;
        d.codec_id = "literal";
        d.index_bits = 8 * y.size();
        d.index = 0;
        for (unsigned char c : y) d.index = (d.index << 8) | c;
        return d;
    }
};

/// blocked-lehmer: blocks of b Lehmer indices aggregated in base n!, decoding
/// to concatenated packed image tables.
class BlockedLehmerCodec : public Codec {
public:
    std::string id() const override { return "blocked-lehmer"; }

    std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                      std::uint64_t index_bits) const override {
        try {
            BitReader r(params);
            int n = static_cast<int>(r.read(detail::kNW));
            int t = static_cast<int>(r.read(detail::kTW));
            int b = static_cast<int>(r.read(detail::kBW));
            if (r.remaining() != 0 || n < 1 || t < 1 || b < 1) return std::nullopt;
            return decode_blocks(index, index_bits, t, b, factorial(n),
                                 [&](const BigIndex& k) {
                                     return detail::pack_perm_bytes(lehmer_unrank(k, n));
                                 });
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    static Description make(int n, int b, const std::vector<Perm>& perms) {
        Description d;
        d.codec_id = "blocked-lehmer";
        Bits p;
        p.push(static_cast<std::uint64_t>(n), detail::kNW);
        p.push(static_cast<std::uint64_t>(perms.size()), detail::kTW);
        p.push(static_cast<std::uint64_t>(b), detail::kBW);
        d.params = std::move(p);
        std::vector<BigIndex> digits;
        digits.reserve(perms.size());
        for (const Perm& q : perms) digits.push_back(lehmer_rank(q));
        encode_blocks(d, digits, b, factorial(n));
        return d;
    }

    template <class Unrank>
    static std::optional<std::string> decode_blocks(const BigIndex& index, std::uint64_t index_bits,
                                                    int t, int b, const BigIndex& range,
                                                    Unrank&& unrank) {
        auto layout = detail::block_layout(t, b, range);
        std::uint64_t want = 0;
        for (auto& [len, w] : layout) want += w;
        if (want != index_bits || index < 0 || index >= pow2(index_bits)) return std::nullopt;
        std::string out;
        std::uint64_t consumed = 0;
        for (auto& [len, w] : layout) {
            consumed += w;
            BigIndex chunk = (index >> (index_bits - consumed)) & (pow2(w) - 1);
            BigIndex total = 1;
            for (int i = 0; i < len; ++i) total *= range;
            if (chunk >= total) return std::nullopt;
            std::vector<BigIndex> digits(len);
            for (int i = len - 1; i >= 0; --i) {
                digits[i] = chunk % range;
                chunk /= range;
            }
            for (const BigIndex& k : digits) out += unrank(k);
        }
        return out;
    }

    static void encode_blocks(Description& d, const std::vector<BigIndex>& digits, int b,
                              const BigIndex& range) {
        auto layout = detail::block_layout(static_cast<int>(digits.size()), b, range);
        BigIndex index = 0;
        std::uint64_t bits = 0;
        std::size_t at = 0;
        for (auto& [len, w] : layout) {
            BigIndex chunk = 0;
            for (int i = 0; i < len; ++i) chunk = chunk * range + digits[at++];
            index = (index << w) | chunk;
            bits += w;
        }
        d.index = index;
        d.index_bits = bits;
    }
};

/// blocked-coset: per block one index in base |H|/|Gamma| over canonical
/// coset representatives; each digit decodes through the coset indexing to a
/// group element sigma and then to the invariant of sigma^{-1} applied to the
/// base object. Parameters carry the base object and Gamma's generators.
///
/// For matrix-space bases the acting group is GL_n(F_q) and the digits are
/// plain GL indices (trivial Gamma): the transported copies themselves.
class BlockedCosetCodec : public Codec {
public:
    std::string id() const override { return "blocked-coset"; }

    std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                      std::uint64_t index_bits) const override {
        try {
            BitReader r(params);
            UniverseElement base = detail::unpack_universe(r);
            int t = static_cast<int>(r.read(detail::kTW));
            int b = static_cast<int>(r.read(detail::kBW));
            int gcount = static_cast<int>(r.read(detail::kGensW));
            int n = base.degree();
            if (base.kind == Kind::MatrixSpace) {
                if (gcount != 0 || r.remaining() != 0) return std::nullopt;
                std::uint32_t q = base.field();
                return BlockedLehmerCodec::decode_blocks(
                    index, index_bits, t, b, gl_order(n, q), [&](const BigIndex& k) {
                        return complete_invariant(act(gl_unrank(k, n, q), base));
                    });
            }
            std::vector<Perm> gens;
            for (int i = 0; i < gcount; ++i) gens.push_back(detail::unpack_perm(r, n));
            if (r.remaining() != 0) return std::nullopt;
            CosetIndexing idx(PermGroup::symmetric(n), PermGroup(n, std::move(gens)));
            return BlockedLehmerCodec::decode_blocks(
                index, index_bits, t, b, idx.count(), [&](const BigIndex& k) {
                    Perm sigma = idx.unrank(k);
                    return complete_invariant(act(sigma.inverse(), base));
                });
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    /// transporters[i] maps the base object to sample i's object.
    static Description make(const UniverseElement& base, const PermGroup& gamma, int b,
                            const std::vector<Perm>& transporters) {
        Description d;
        d.codec_id = "blocked-coset";
        Bits p;
        detail::pack_universe(p, base);
        p.push(transporters.size(), detail::kTW);
        p.push(static_cast<std::uint64_t>(b), detail::kBW);
        p.push(gamma.generators().size(), detail::kGensW);
        for (const Perm& g : gamma.generators()) detail::pack_perm(p, g);
        d.params = std::move(p);
        CosetIndexing idx(PermGroup::symmetric(base.degree()), gamma);
        std::vector<BigIndex> digits;
        digits.reserve(transporters.size());
        for (const Perm& tau : transporters) digits.push_back(idx.rank(tau.inverse()));
        BlockedLehmerCodec::encode_blocks(d, digits, b, idx.count());
        return d;
    }

    /// Matrix-space flavor: transporters are GL elements, Gamma trivial.
    static Description make_gl(const UniverseElement& base, int b,
                               const std::vector<MatrixFq>& transporters) {
        Description d;
        d.codec_id = "blocked-coset";
        Bits p;
        detail::pack_universe(p, base);
        p.push(transporters.size(), detail::kTW);
        p.push(static_cast<std::uint64_t>(b), detail::kBW);
        p.push(0, detail::kGensW);
        d.params = std::move(p);
        std::vector<BigIndex> digits;
        digits.reserve(transporters.size());
        for (const MatrixFq& tau : transporters) digits.push_back(gl_rank(tau));
        BlockedLehmerCodec::encode_blocks(d, digits, b, gl_order(base.degree(), base.field()));
        return d;
    }
};

/// blocked-gl: blocks of b GL_n(F_q) indices, decoding to concatenated packed
/// matrices.
class BlockedGlCodec : public Codec {
public:
    std::string id() const override { return "blocked-gl"; }

    std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                      std::uint64_t index_bits) const override {
        try {
            BitReader r(params);
            int n = static_cast<int>(r.read(detail::kNW));
            std::uint32_t q = static_cast<std::uint32_t>(r.read(detail::kQW));
            int t = static_cast<int>(r.read(detail::kTW));
            int b = static_cast<int>(r.read(detail::kBW));
            if (r.remaining() != 0) return std::nullopt;
            return BlockedLehmerCodec::decode_blocks(index, index_bits, t, b, gl_order(n, q),
                                                     [&](const BigIndex& k) {
                                                         return detail::pack_matrix_bytes(
                                                             gl_unrank(k, n, q));
                                                     });
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    static Description make(int n, std::uint32_t q, int b, const std::vector<MatrixFq>& mats) {
        Description d;
        d.codec_id = "blocked-gl";
        Bits p;
        p.push(static_cast<std::uint64_t>(n), detail::kNW);
        p.push(q, detail::kQW);
        p.push(mats.size(), detail::kTW);
        p.push(static_cast<std::uint64_t>(b), detail::kBW);
        d.params = std::move(p);
        std::vector<BigIndex> digits;
        digits.reserve(mats.size());
        for (const MatrixFq& m : mats) digits.push_back(gl_rank(m));
        BlockedLehmerCodec::encode_blocks(d, digits, b, gl_order(n, q));
        return d;
    }
};

/// flat-scheme: per sample one fixed-width hash-scheme index. The sampler is
/// rebuilt from the parameters: family 0 is the isomorphic-copy sampler of a
/// packed base object (sigma mod |H| -> indexed group element -> invariant);
/// family 1 looks up an externally registered sampler, whose declared circuit
/// size is charged on top of the parameter blob.
class FlatSchemeCodec : public Codec {
public:
    struct RegisteredSampler {
        BitSampler sampler;
        std::uint64_t declared_bits = 0;
    };

    FlatSchemeCodec() = default;
    explicit FlatSchemeCodec(std::map<int, RegisteredSampler> registry)
        : registry_(std::move(registry)) {}

    std::string id() const override { return "flat-scheme"; }

    static BitSampler orbit_sampler(const UniverseElement& base) {
        BigIndex order = acting_group_order(base.kind, base.degree(), base.field());
        int ell = static_cast<int>(ceil_log2(order)) + 8;
        Kind kind = base.kind;
        int n = base.degree();
        std::uint32_t q = base.field();
        return {ell, [=](std::uint64_t sigma) {
                    BigIndex k = BigIndex(sigma) % order;
                    return complete_invariant(act(acting_element_by_index(kind, n, q, k), base));
                }};
    }

    std::optional<std::string> decode(const Bits& params, const BigIndex& index,
                                      std::uint64_t index_bits) const override {
        try {
            BitReader r(params);
            auto [sampler, ok] = parse_sampler(r);
            if (!ok) return std::nullopt;
            int t = static_cast<int>(r.read(detail::kTW));
            FlatScheme scheme = parse_scheme(r, sampler.ell);
            if (r.remaining() != 0) return std::nullopt;
            std::uint64_t w = scheme.index_width();
            if (index_bits != w * static_cast<std::uint64_t>(t) || index >= pow2(index_bits))
                return std::nullopt;
            std::string out;
            for (int i = 0; i < t; ++i) {
                BigIndex chunk = (index >> ((t - 1 - i) * w)) & (pow2(w) - 1);
                if (chunk >= scheme.index_limit()) return std::nullopt;
                out += flat_decode(scheme, sampler, chunk);
            }
            return out;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    std::uint64_t charged_param_bits(const Bits& params) const override {
        std::uint64_t extra = 0;
        try {
            BitReader r(params);
            if (r.read(2) == 1) {
                int id = static_cast<int>(r.read(16));
                auto it = registry_.find(id);
                if (it != registry_.end()) extra = it->second.declared_bits;
            }
        } catch (const std::exception&) {
        }
        return params.nbits + extra;
    }

    static Description make_orbit(const UniverseElement& base, const FlatScheme& scheme,
                                  const std::vector<BigIndex>& sample_indices) {
        Description d;
        d.codec_id = "flat-scheme";
        Bits p;
        p.push(0, 2);
        detail::pack_universe(p, base);
        p.push(sample_indices.size(), detail::kTW);
        pack_scheme(p, scheme);
        d.params = std::move(p);
        fill_index(d, scheme, sample_indices);
        return d;
    }

    static Description make_registered(int id, const FlatScheme& scheme,
                                       const std::vector<BigIndex>& sample_indices) {
        Description d;
        d.codec_id = "flat-scheme";
        Bits p;
        p.push(1, 2);
        p.push(static_cast<std::uint64_t>(id), 16);
        p.push(sample_indices.size(), detail::kTW);
        pack_scheme(p, scheme);
        d.params = std::move(p);
        fill_index(d, scheme, sample_indices);
        return d;
    }

private:
    static void fill_index(Description& d, const FlatScheme& scheme,
                           const std::vector<BigIndex>& ks) {
        std::uint64_t w = scheme.index_width();
        d.index = 0;
        for (const BigIndex& k : ks) d.index = (d.index << w) | k;
        d.index_bits = w * ks.size();
    }

    static void pack_scheme(Bits& p, const FlatScheme& s) {
        p.push(static_cast<std::uint64_t>(s.ell), 8);
        p.push(static_cast<std::uint64_t>(s.m), 8);
        p.push(static_cast<std::uint64_t>(s.s_ceil), 8);
        p.push(s.hashes.size(), 8);
        for (const auto& h : s.hashes) {
            for (int i = 0; i < s.m; ++i) p.push(h.rows[i], s.ell);
            p.push(h.v, s.m);
        }
    }

    static FlatScheme parse_scheme(BitReader& r, int expect_ell) {
        FlatScheme s;
        s.ell = static_cast<int>(r.read(8));
        s.m = static_cast<int>(r.read(8));
        s.s_ceil = static_cast<int>(r.read(8));
        int count = static_cast<int>(r.read(8));
        if (s.ell != expect_ell) throw std::domain_error("scheme ell mismatch");
        for (int k = 0; k < count; ++k) {
            LinearHash h;
            h.ell = s.ell;
            h.m = s.m;
            for (int i = 0; i < s.m; ++i) h.rows.push_back(r.read(s.ell));
            h.v = r.read(s.m);
            s.hashes.push_back(std::move(h));
        }
        return s;
    }

    std::pair<BitSampler, bool> parse_sampler(BitReader& r) const {
        int family = static_cast<int>(r.read(2));
        if (family == 0) {
            UniverseElement base = detail::unpack_universe(r);
            return {orbit_sampler(base), true};
        }
        if (family == 1) {
            int id = static_cast<int>(r.read(16));
            auto it = registry_.find(id);
            if (it == registry_.end()) return {{}, false};
            return {it->second.sampler, true};
        }
        return {{}, false};
    }

    std::map<int, RegisteredSampler> registry_;
};

/// Description cost as minimum over hinted descriptions plus the literal
/// fallback; a flat c_machine surcharge stands in for machine overhead.
class CostModel {
public:
    explicit CostModel(std::uint64_t c_machine = 64) : c_machine_(c_machine) {}

    static CostModel standard(std::uint64_t c_machine = 64,
                              std::map<int, FlatSchemeCodec::RegisteredSampler> samplers = {}) {
        CostModel m(c_machine);
        m.register_codec(std::make_shared<LiteralCodec>());
        m.register_codec(std::make_shared<BlockedCosetCodec>());
        m.register_codec(std::make_shared<BlockedLehmerCodec>());
        m.register_codec(std::make_shared<BlockedGlCodec>());
        m.register_codec(std::make_shared<FlatSchemeCodec>(std::move(samplers)));
        return m;
    }

    void register_codec(std::shared_ptr<const Codec> c) { codecs_[c->id()] = std::move(c); }

    std::uint64_t c_machine() const { return c_machine_; }

    struct Line {
        std::string codec_id;
        std::uint64_t params_bits = 0;
        std::uint64_t index_bits = 0;
        std::uint64_t total = 0;
        bool accepted = false;
        std::string note;
    };

    std::uint64_t cost(const std::string& y, const std::vector<Description>& hints = {},
                       std::vector<Line>* report = nullptr) const {
        std::uint64_t best = 8 * y.size() + c_machine_;
        if (report)
            report->push_back({"literal", 0, 8 * y.size(), best, true, "always available"});
        for (const auto& h : hints) {
            Line line;
            line.codec_id = h.codec_id;
            line.index_bits = h.index_bits;
            auto it = codecs_.find(h.codec_id);
            if (it == codecs_.end()) {
                line.note = "rejected: unknown codec";
            } else if (h.index < 0 || h.index >= pow2(h.index_bits)) {
                line.note = "rejected: index exceeds declared width";
            } else {
                line.params_bits = it->second->charged_param_bits(h.params);
                line.total = line.params_bits + h.index_bits + c_machine_;
                auto decoded = it->second->decode(h.params, h.index, h.index_bits);
                if (!decoded) {
                    line.note = "rejected: decode failure";
                } else if (*decoded != y) {
                    line.note = "rejected: decodes to a different string";
                } else {
                    line.accepted = true;
                    if (line.total < best) best = line.total;
                }
            }
            if (report) report->push_back(std::move(line));
        }
        return best;
    }

    struct AuditReport {
        bool pass = false;
        BigIndex bound = 0;
        BigIndex limit = 0;
        std::vector<std::string> lines;
    };

    /// Verifies analytically that fewer than 2^(c+1) strings (of any length,
    /// hence of length ell in particular) can have cost <= c, and checks the
    /// charging discipline on the supplied probe descriptions.
    AuditReport counting_audit(std::uint64_t c, std::uint64_t ell,
                               const std::vector<Description>& probes = {}) const {
        AuditReport rep;
        rep.limit = pow2(c + 1);
        bool consistent = true;
        for (const auto& d : probes) {
            auto it = codecs_.find(d.codec_id);
            if (it == codecs_.end()) {
                rep.lines.push_back("probe: unknown codec " + d.codec_id);
                consistent = false;
                continue;
            }
            if (it->second->charged_param_bits(d.params) < d.params.nbits) {
                rep.lines.push_back("probe: codec " + d.codec_id +
                                    " charges fewer bits than its parameter blob holds");
                consistent = false;
            }
            auto a = it->second->decode(d.params, d.index, d.index_bits);
            auto b = it->second->decode(d.params, d.index, d.index_bits);
            if (!a || !b || *a != *b) {
                rep.lines.push_back("probe: codec " + d.codec_id + " decode not deterministic");
                consistent = false;
            }
        }
        if (c < c_machine_) {
            rep.bound = 0;
            rep.lines.push_back("budget below c_machine: nothing describable");
            rep.pass = consistent;
            return rep;
        }
        std::uint64_t budget = c - c_machine_;
        for (const auto& [id, codec] : codecs_) {
            BigIndex cnt = codec->max_described_strings(budget);
            rep.bound += cnt;
            std::ostringstream os;
            os << id << ": <= " << cnt.str() << " strings at parameter+index budget " << budget;
            rep.lines.push_back(os.str());
        }
        rep.pass = consistent && rep.bound < rep.limit;
        {
            std::ostringstream os;
            os << "total bound " << rep.bound.str() << (rep.pass ? " < " : " >= ") << "2^"
               << (c + 1) << " (length " << ell << ")";
            rep.lines.push_back(os.str());
        }
        return rep;
    }

private:
    std::uint64_t c_machine_;
    std::map<std::string, std::shared_ptr<const Codec>> codecs_;
};

/// Text form of descriptions: one per block, parameter blob hex-dumped in the
/// codec's own layout.
inline std::string descriptions_to_text(const std::vector<Description>& ds) {
    static const char* hexd = "0123456789abcdef";
    std::ostringstream os;
    for (const auto& d : ds) {
        os << "codec " << d.codec_id << '\n';
        os << "params " << d.params.nbits << ' ';
        for (std::uint8_t b : d.params.bytes) os << hexd[b >> 4] << hexd[b & 15];
        os << '\n';
        os << "index " << d.index_bits << ' ' << d.index.str() << '\n';
    }
    return os.str();
}

inline std::vector<Description> descriptions_from_text(std::istream& is) {
    std::vector<Description> out;
    std::string word;
    while (is >> word) {
        if (word != "codec") throw std::domain_error("hints: expected 'codec'");
        Description d;
        is >> d.codec_id;
        std::uint64_t nbits = 0;
        std::string hex;
        if (!(is >> word) || word != "params") throw std::domain_error("hints: expected 'params'");
        is >> nbits;
        if (nbits > 0) is >> hex;
        d.params.nbits = nbits;
        auto val = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            throw std::domain_error("hints: bad hex");
        };
        for (std::size_t i = 0; i < hex.size(); i += 2) {
            int hi = val(hex[i]);
            int lo = i + 1 < hex.size() ? val(hex[i + 1]) : 0;
            d.params.bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
        }
        if (d.params.bytes.size() * 8 < nbits) throw std::domain_error("hints: hex shorter than nbits");
        if (!(is >> word) || word != "index") throw std::domain_error("hints: expected 'index'");
        std::string dec;
        is >> d.index_bits >> dec;
        d.index = BigIndex(dec);
        out.push_back(std::move(d));
    }
    return out;
}

/// One-line report records: "codec_id params_bits index_bits total".
inline std::string cost_report_lines(const std::vector<CostModel::Line>& lines) {
    std::ostringstream os;
    for (const auto& l : lines)
        os << l.codec_id << ' ' << l.params_bits << ' ' << l.index_bits << ' ' << l.total
           << (l.accepted ? "" : "  # " + l.note) << '\n';
    return os.str();
}

}  // namespace gic
