#pragma once

#include "gic/coset.hpp"
#include "gic/fq.hpp"
#include "gic/perm.hpp"
#include "gic/perm_group.hpp"
#include "gic/rng.hpp"

#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gic {

enum class Kind { Graph, LinearCode, PermConjugacy, MatrixSpace };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Graph: return "graph";
        case Kind::LinearCode: return "linear-code";
        case Kind::PermConjugacy: return "perm-group-conjugacy";
        case Kind::MatrixSpace: return "matrix-subspace";
    }
    throw std::logic_error("bad kind");
}

inline Kind kind_from_name(const std::string& s) {
    if (s == "graph") return Kind::Graph;
    if (s == "linear-code") return Kind::LinearCode;
    if (s == "perm-group-conjugacy") return Kind::PermConjugacy;
    if (s == "matrix-subspace") return Kind::MatrixSpace;
    throw std::domain_error("unknown instance kind: " + s);
}

/// Simple undirected graph on [n] as an adjacency matrix.
struct Graph {
    int n = 0;
    std::vector<char> adj;  // n*n entries, 0/1

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(static_cast<std::size_t>(n_) * n_, 0) {}

    char at(int u, int v) const { return adj[static_cast<std::size_t>(u) * n + v]; }

    void set_edge(int u, int v, bool on = true) {  // 0-based
        adj[static_cast<std::size_t>(u) * n + v] = on;
        adj[static_cast<std::size_t>(v) * n + u] = on;
    }

    void validate() const {
        for (int u = 0; u < n; ++u) {
            if (at(u, u)) throw std::domain_error("graph: nonzero diagonal");
            for (int v = 0; v < n; ++v) {
                if (at(u, v) != 0 && at(u, v) != 1) throw std::domain_error("graph: bad entry");
                if (at(u, v) != at(v, u)) throw std::domain_error("graph: not symmetric");
            }
        }
    }

    bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }
};

/// A group element of the instance's acting group: a permutation for the
/// S_n-based kinds, an invertible matrix for matrix-space conjugacy.
using GroupElement = std::variant<Perm, MatrixFq>;

inline GroupElement ge_compose(const GroupElement& g, const GroupElement& h) {
    // apply g first, then h (matches the permutation convention)
    if (std::holds_alternative<Perm>(g))
        return compose(std::get<Perm>(g), std::get<Perm>(h));
    return std::get<MatrixFq>(h) * std::get<MatrixFq>(g);
}

inline GroupElement ge_inverse(const GroupElement& g) {
    if (std::holds_alternative<Perm>(g)) return std::get<Perm>(g).inverse();
    return inverse(std::get<MatrixFq>(g));
}

inline bool ge_equal(const GroupElement& a, const GroupElement& b) {
    if (std::holds_alternative<Perm>(a) != std::holds_alternative<Perm>(b)) return false;
    if (std::holds_alternative<Perm>(a)) return std::get<Perm>(a) == std::get<Perm>(b);
    return std::get<MatrixFq>(a) == std::get<MatrixFq>(b);
}

/// One element of the universe Omega, tagged by kind.
struct UniverseElement {
    Kind kind = Kind::Graph;
    std::variant<Graph, MatrixFq, std::vector<Perm>, std::vector<MatrixFq>> payload;

    const Graph& graph() const { return std::get<Graph>(payload); }
    const MatrixFq& code() const { return std::get<MatrixFq>(payload); }
    const std::vector<Perm>& subgroup_gens() const { return std::get<std::vector<Perm>>(payload); }
    const std::vector<MatrixFq>& space_basis() const { return std::get<std::vector<MatrixFq>>(payload); }

    static UniverseElement make_graph(Graph g) {
        g.validate();
        return {Kind::Graph, std::move(g)};
    }

    static UniverseElement make_code(MatrixFq m) {
        if (rank_fq(m) != m.rows()) throw std::domain_error("code: generator matrix not full rank");
        return {Kind::LinearCode, std::move(m)};
    }

    static UniverseElement make_subgroup(int n, std::vector<Perm> gens) {
        for (const auto& p : gens)
            if (p.degree() != n) throw std::domain_error("subgroup: degree mismatch");
        UniverseElement w{Kind::PermConjugacy, std::move(gens)};
        w.conj_degree = n;
        return w;
    }

    static UniverseElement make_space(std::vector<MatrixFq> basis) {
        if (basis.empty()) throw std::domain_error("matrix space: empty basis");
        int n = basis.front().rows();
        for (const auto& b : basis)
            if (b.rows() != n || b.cols() != n || b.q() != basis.front().q())
                throw std::domain_error("matrix space: shape mismatch");
        MatrixFq flat(static_cast<int>(basis.size()), n * n, basis.front().q());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) flat.at(static_cast<int>(i), r * n + c) = basis[i].at(r, c);
        if (rank_fq(flat) != flat.rows())
            throw std::domain_error("matrix space: basis matrices not linearly independent");
        return {Kind::MatrixSpace, std::move(basis)};
    }

    int degree() const {  // n of the acting group
        switch (kind) {
            case Kind::Graph: return graph().n;
            case Kind::LinearCode: return code().cols();
            case Kind::PermConjugacy: return conj_degree;
            case Kind::MatrixSpace: return space_basis().front().rows();
        }
        throw std::logic_error("bad kind");
    }

    std::uint32_t field() const {
        switch (kind) {
            case Kind::LinearCode: return code().q();
            case Kind::MatrixSpace: return space_basis().front().q();
            default: return 0;
        }
    }

    int conj_degree = 0;  // degree n for the subgroup payload
};

/// The acted-upon element, as a representation (not yet canonical).
inline UniverseElement act(const GroupElement& h, const UniverseElement& w) {
    switch (w.kind) {
        case Kind::Graph: {
            const Perm& p = std::get<Perm>(h);
            const Graph& g = w.graph();
            if (p.degree() != g.n) throw std::domain_error("act: degree mismatch");
            Graph out(g.n);
            for (int u = 0; u < g.n; ++u)
                for (int v = 0; v < g.n; ++v)
                    if (g.at(u, v)) out.adj[static_cast<std::size_t>(p.image0(u)) * g.n + p.image0(v)] = 1;
            return {Kind::Graph, std::move(out)};
        }
        case Kind::LinearCode: {
            const Perm& p = std::get<Perm>(h);
            const MatrixFq& m = w.code();
            if (p.degree() != m.cols()) throw std::domain_error("act: degree mismatch");
            MatrixFq out(m.rows(), m.cols(), m.q());
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) out.at(r, p.image0(c)) = m.at(r, c);
            return {Kind::LinearCode, std::move(out)};
        }
        case Kind::PermConjugacy: {
            const Perm& p = std::get<Perm>(h);
            if (p.degree() != w.degree()) throw std::domain_error("act: degree mismatch");
            Perm pinv = p.inverse();
            std::vector<Perm> out;
            out.reserve(w.subgroup_gens().size());
            for (const Perm& g : w.subgroup_gens()) out.push_back(compose(compose(pinv, g), p));
            UniverseElement r{Kind::PermConjugacy, std::move(out)};
            r.conj_degree = w.conj_degree;
            return r;
        }
        case Kind::MatrixSpace: {
            const MatrixFq& x = std::get<MatrixFq>(h);
            if (x.rows() != w.degree() || x.q() != w.field())
                throw std::domain_error("act: dimension/field mismatch");
            MatrixFq xinv = inverse(x);
            std::vector<MatrixFq> out;
            out.reserve(w.space_basis().size());
            for (const MatrixFq& b : w.space_basis()) out.push_back(x * b * xinv);
            return {Kind::MatrixSpace, std::move(out)};
        }
    }
    throw std::logic_error("bad kind");
}

/// Canonical byte-string, equal exactly for equal abstract objects.
/// Layouts: graphs are the packed row-major adjacency bits; codes the RREF of
/// the generator matrix in matrix text form; subgroups the normal-form
/// generator list in generator-list text form; matrix spaces the RREF of the
/// d x n^2 flattening in matrix text form.
inline std::string complete_invariant(const UniverseElement& w) {
    switch (w.kind) {
        case Kind::Graph: {
            const Graph& g = w.graph();
            std::string out((static_cast<std::size_t>(g.n) * g.n + 7) / 8, '\0');
            for (int u = 0; u < g.n; ++u)
                for (int v = 0; v < g.n; ++v)
                    if (g.at(u, v)) {
                        std::size_t i = static_cast<std::size_t>(u) * g.n + v;
                        out[i / 8] |= static_cast<char>(0x80u >> (i % 8));
                    }
            return out;
        }
        case Kind::LinearCode:
            return rref(w.code()).to_text();
        case Kind::PermConjugacy: {
            PermGroup g(w.conj_degree, w.subgroup_gens());
            std::vector<Perm> nf = normal_form(g);
            std::ostringstream os;
            os << w.conj_degree << ' ' << nf.size() << '\n';
            for (const Perm& p : nf) os << p.to_text() << '\n';
            return os.str();
        }
        case Kind::MatrixSpace: {
            const auto& basis = w.space_basis();
            int n = basis.front().rows();
            MatrixFq flat(static_cast<int>(basis.size()), n * n, basis.front().q());
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) flat.at(static_cast<int>(i), r * n + c) = basis[i].at(r, c);
            return rref(flat).to_text();
        }
    }
    throw std::logic_error("bad kind");
}

/// Order of the acting group H (n! or |GL_n(F_q)|).
inline BigIndex acting_group_order(Kind kind, int n, std::uint32_t q) {
    if (kind == Kind::MatrixSpace) return gl_order(n, q);
    return factorial(n);
}

/// Exact uniform element of H.
inline GroupElement uniform_acting_element(Kind kind, int n, std::uint32_t q, Rng& rng) {
    if (kind == Kind::MatrixSpace) return random_gl(n, q, rng);
    return uniform_symmetric_element(n, rng);
}

/// The k-th element of H in indexing order (Lehmer / GL indexing).
inline GroupElement acting_element_by_index(Kind kind, int n, std::uint32_t q, const BigIndex& k) {
    if (kind == Kind::MatrixSpace) return gl_unrank(k, n, q);
    return lehmer_unrank(k, n);
}

inline GroupElement acting_identity(Kind kind, int n, std::uint32_t q) {
    if (kind == Kind::MatrixSpace) return MatrixFq::identity(n, q);
    return Perm::identity(n);
}

/// nu(h(w)) for h drawn uniformly from H: one sample of the flat
/// distribution on the isomorphism class of w.
inline std::string sample_isomorphic_copy(const UniverseElement& w, Rng& rng) {
    GroupElement h = uniform_acting_element(w.kind, w.degree(), w.field(), rng);
    return complete_invariant(act(h, w));
}

/// An Isomorphism Problem instance: two universe elements plus the acting
/// group determined by the kind.
struct IsoInstance {
    Kind kind = Kind::Graph;
    UniverseElement x0, x1;

    int n() const { return x0.degree(); }
    std::uint32_t q() const { return x0.field(); }

    void validate() const {
        if (x0.kind != kind || x1.kind != kind) throw std::domain_error("instance: kind mismatch");
        if (x0.degree() != x1.degree()) throw std::domain_error("instance: degree mismatch");
        if (x0.field() != x1.field()) throw std::domain_error("instance: field mismatch");
        if (kind == Kind::LinearCode && w_rows(x0) != w_rows(x1))
            throw std::domain_error("instance: code dimension mismatch");
        if (kind == Kind::MatrixSpace && x0.space_basis().size() != x1.space_basis().size())
            throw std::domain_error("instance: space dimension mismatch");
    }

private:
    static int w_rows(const UniverseElement& w) { return w.code().rows(); }
};

// ---- text formats ----------------------------------------------------------

inline Graph graph_from_text(std::istream& is) {
    int n = 0;
    if (!(is >> n)) throw std::domain_error("graph: bad header");
    std::string line;
    std::getline(is, line);
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        if (!std::getline(is, line) || static_cast<int>(line.size()) < n)
            throw std::domain_error("graph: truncated adjacency row");
        for (int v = 0; v < n; ++v) {
            char c = line[v];
            if (c != '0' && c != '1') throw std::domain_error("graph: bad adjacency char");
            g.adj[static_cast<std::size_t>(u) * n + v] = c - '0';
        }
    }
    g.validate();
    return g;
}

inline std::string graph_to_text(const Graph& g) {
    std::ostringstream os;
    os << g.n << '\n';
    for (int u = 0; u < g.n; ++u) {
        for (int v = 0; v < g.n; ++v) os << (g.at(u, v) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

inline UniverseElement universe_from_text(Kind kind, std::istream& is) {
    switch (kind) {
        case Kind::Graph:
            return UniverseElement::make_graph(graph_from_text(is));
        case Kind::LinearCode:
            return UniverseElement::make_code(MatrixFq::from_text(is));
        case Kind::PermConjugacy: {
            PermGroup g = PermGroup::from_text(is);
            return UniverseElement::make_subgroup(g.degree(), g.generators());
        }
        case Kind::MatrixSpace: {
            int d = 0, n = 0;
            std::uint32_t q = 0;
            if (!(is >> d >> n >> q)) throw std::domain_error("matrix space: bad header");
            std::vector<MatrixFq> basis;
            for (int i = 0; i < d; ++i) {
                MatrixFq b(n, n, q);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        long long v;
                        if (!(is >> v)) throw std::domain_error("matrix space: truncated");
                        b.set(r, c, static_cast<std::uint64_t>((v % q + q)));
                    }
                basis.push_back(std::move(b));
            }
            return UniverseElement::make_space(std::move(basis));
        }
    }
    throw std::logic_error("bad kind");
}

inline std::string universe_to_text(const UniverseElement& w) {
    switch (w.kind) {
        case Kind::Graph:
            return graph_to_text(w.graph());
        case Kind::LinearCode:
            return w.code().to_text();
        case Kind::PermConjugacy: {
            std::ostringstream os;
            os << w.conj_degree << ' ' << w.subgroup_gens().size() << '\n';
            for (const Perm& p : w.subgroup_gens()) os << p.to_text() << '\n';
            return os.str();
        }
        case Kind::MatrixSpace: {
            const auto& basis = w.space_basis();
            int n = basis.front().rows();
            std::ostringstream os;
            os << basis.size() << ' ' << n << ' ' << basis.front().q() << '\n';
            for (const auto& b : basis)
                for (int r = 0; r < n; ++r) {
                    for (int c = 0; c < n; ++c) {
                        if (c) os << ' ';
                        os << b.at(r, c);
                    }
                    os << '\n';
                }
            return os.str();
        }
    }
    throw std::logic_error("bad kind");
}

/// Instance file: a kind line, then the two payloads separated by a blank
/// line (payloads in their kind-specific text formats).
inline IsoInstance instance_from_text(std::istream& is) {
    std::vector<std::string> lines;
    std::string l;
    while (std::getline(is, l)) {
        while (!l.empty() && (l.back() == '\r' || l.back() == ' ')) l.pop_back();
        lines.push_back(l);
    }
    std::size_t i = 0;
    auto skip_blank = [&] {
        while (i < lines.size() && lines[i].empty()) ++i;
    };
    auto next_block = [&] {
        skip_blank();
        std::string block;
        while (i < lines.size() && !lines[i].empty()) block += lines[i++] + "\n";
        if (block.empty()) throw std::domain_error("instance: missing payload");
        return block;
    };
    skip_blank();
    if (i >= lines.size()) throw std::domain_error("instance: missing kind line");
    IsoInstance inst;
    inst.kind = kind_from_name(lines[i++]);
    std::istringstream b0(next_block()), b1(next_block());
    inst.x0 = universe_from_text(inst.kind, b0);
    inst.x1 = universe_from_text(inst.kind, b1);
    inst.validate();
    return inst;
}

inline std::string instance_to_text(const IsoInstance& inst) {
    return kind_name(inst.kind) + "\n" + universe_to_text(inst.x0) + "\n" +
           universe_to_text(inst.x1);
}

}  // namespace gic
