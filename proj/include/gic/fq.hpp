#pragma once

#include "gic/big_index.hpp"
#include "gic/rng.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gic {

inline bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

/// Dense matrix over the prime field F_q, entries reduced mod q.
class MatrixFq {
public:
    MatrixFq(int rows, int cols, std::uint32_t q)
        : rows_(rows), cols_(cols), q_(q), a_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw std::domain_error("negative dimension");
        if (!is_prime(q)) throw std::domain_error("modulus is not prime");
    }

    static MatrixFq identity(int n, std::uint32_t q) {
        MatrixFq m(n, n, q);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t q() const { return q_; }

    std::uint32_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    void set(int r, int c, std::uint64_t v) { at(r, c) = static_cast<std::uint32_t>(v % q_); }

    std::vector<std::uint32_t> row(int r) const {
        return {a_.begin() + static_cast<std::size_t>(r) * cols_,
                a_.begin() + static_cast<std::size_t>(r + 1) * cols_};
    }

    bool operator==(const MatrixFq& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && a_ == o.a_;
    }
    bool operator!=(const MatrixFq& o) const { return !(*this == o); }

    MatrixFq operator*(const MatrixFq& o) const {
        if (cols_ != o.rows_ || q_ != o.q_) throw std::domain_error("matmul shape/field mismatch");
        MatrixFq r(rows_, o.cols_, q_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                std::uint64_t v = at(i, k);
                if (!v) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = static_cast<std::uint32_t>((r.at(i, j) + v * o.at(k, j)) % q_);
            }
        return r;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << rows_ << ' ' << cols_ << ' ' << q_ << '\n';
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                if (j) os << ' ';
                os << at(i, j);
            }
            os << '\n';
        }
        return os.str();
    }

    static MatrixFq from_text(std::istream& is) {
        int r = 0, c = 0;
        std::uint32_t q = 0;
        if (!(is >> r >> c >> q)) throw std::domain_error("matrix: bad header");
        MatrixFq m(r, c, q);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                long long v;
                if (!(is >> v)) throw std::domain_error("matrix: truncated");
                m.set(i, j, static_cast<std::uint64_t>(((v % q) + q)));
            }
        return m;
    }

private:
    int rows_, cols_;
    std::uint32_t q_;
    std::vector<std::uint32_t> a_;
};

namespace detail {

inline std::uint32_t fq_inv(std::uint32_t a, std::uint32_t q) {
    // extended Euclid; q prime, a != 0
    long long t = 0, new_t = 1, r = q, new_r = a % q;
    while (new_r != 0) {
        long long quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("fq_inv: not invertible");
    return static_cast<std::uint32_t>(((t % q) + q) % q);
}

}  // namespace detail

/// Unique reduced row echelon form: leading entries 1, pivot columns cleared
/// above and below, zero rows last. Equal for two matrices iff they have the
/// same row span.
inline MatrixFq rref(const MatrixFq& m) {
    MatrixFq r = m;
    const std::uint32_t q = m.q();
    int lead = 0;
    for (int row = 0; row < r.rows() && lead < r.cols(); ++row) {
        int pr = -1;
        while (lead < r.cols()) {
            for (int i = row; i < r.rows(); ++i)
                if (r.at(i, lead)) {
                    pr = i;
                    break;
                }
            if (pr >= 0) break;
            ++lead;
        }
        if (pr < 0) break;
        for (int j = 0; j < r.cols(); ++j) std::swap(r.at(pr, j), r.at(row, j));
        std::uint32_t inv = detail::fq_inv(r.at(row, lead), q);
        for (int j = 0; j < r.cols(); ++j)
            r.at(row, j) = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r.at(row, j)) * inv) % q);
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || !r.at(i, lead)) continue;
            std::uint64_t f = r.at(i, lead);
            for (int j = 0; j < r.cols(); ++j) {
                std::uint64_t sub = (f * r.at(row, j)) % q;
                r.at(i, j) = static_cast<std::uint32_t>((r.at(i, j) + q - sub) % q);
            }
        }
        ++lead;
    }
    return r;
}

inline int rank_fq(const MatrixFq& m) {
    MatrixFq r = rref(m);
    int rank = 0;
    for (int i = 0; i < r.rows(); ++i) {
        bool nonzero = false;
        for (int j = 0; j < r.cols(); ++j)
            if (r.at(i, j)) {
                nonzero = true;
                break;
            }
        if (nonzero) ++rank;
    }
    return rank;
}

inline bool is_invertible(const MatrixFq& m) {
    return m.rows() == m.cols() && rank_fq(m) == m.rows();
}

inline MatrixFq inverse(const MatrixFq& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse: not square");
    const int n = m.rows();
    const std::uint32_t q = m.q();
    MatrixFq aug(n, 2 * n, q);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    MatrixFq r = rref(aug);
    for (int i = 0; i < n; ++i)
        if (r.at(i, i) != 1) throw std::domain_error("inverse: singular matrix");
    MatrixFq inv(n, n, q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

/// |GL_n(F_q)| = prod_{i=1}^{n} (q^n - q^{i-1}).
inline BigIndex gl_order(int n, std::uint32_t q) {
    if (n < 1) throw std::domain_error("gl_order: n must be >= 1");
    if (!is_prime(q)) throw std::domain_error("gl_order: q must be prime");
    BigIndex qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    BigIndex o = 1, qi = 1;
    for (int i = 1; i <= n; ++i) {
        o *= (qn - qi);
        qi *= q;
    }
    return o;
}

namespace detail {

// Standard basis vectors at the non-pivot columns of rref(rows), ascending.
// Together with `rows` (linearly independent) they form a basis of F_q^n.
inline std::vector<std::vector<std::uint32_t>> extension_basis(
    const std::vector<std::vector<std::uint32_t>>& rows, int n, std::uint32_t q) {
    std::vector<char> pivot(n, 0);
    if (!rows.empty()) {
        MatrixFq m(static_cast<int>(rows.size()), n, q);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
        MatrixFq r = rref(m);
        for (int i = 0; i < r.rows(); ++i)
            for (int j = 0; j < n; ++j)
                if (r.at(i, j)) {
                    pivot[j] = 1;
                    break;
                }
    }
    std::vector<std::vector<std::uint32_t>> ext;
    for (int j = 0; j < n; ++j)
        if (!pivot[j]) {
            std::vector<std::uint32_t> e(n, 0);
            e[j] = 1;
            ext.push_back(std::move(e));
        }
    return ext;
}

inline std::vector<std::uint32_t> base_q_digits(BigIndex k, std::uint32_t q, int count) {
    std::vector<std::uint32_t> d(count, 0);
    for (int i = 0; i < count && k > 0; ++i) {
        d[i] = static_cast<std::uint32_t>(k % q);
        k /= q;
    }
    return d;
}

}  // namespace detail

/// Decodes k in [0, |GL_n(F_q)|) to an invertible matrix. Rows are decoded in
/// order; row i splits its sub-index as k0 + k1 * q^(i-1), where k0 selects a
/// combination of the prior rows and k1 + 1 a nonzero combination of the
/// completed basis vectors. Row 1 is the most significant position.
inline MatrixFq gl_unrank(BigIndex k, int n, std::uint32_t q) {
    BigIndex total = gl_order(n, q);
    if (k < 0 || k >= total) throw std::out_of_range("gl_unrank: index out of range");
    BigIndex qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;

    std::vector<BigIndex> sizes(n + 1);  // sizes[i] = q^n - q^{i-1}
    BigIndex qi = 1;
    for (int i = 1; i <= n; ++i) {
        sizes[i] = qn - qi;
        qi *= q;
    }
    std::vector<BigIndex> digit(n + 1);
    for (int i = n; i >= 1; --i) {
        digit[i] = k % sizes[i];
        k /= sizes[i];
    }

    MatrixFq m(n, n, q);
    std::vector<std::vector<std::uint32_t>> rows;
    BigIndex qpow = 1;  // q^{i-1}
    for (int i = 1; i <= n; ++i) {
        BigIndex k0 = digit[i] % qpow;
        BigIndex k1 = digit[i] / qpow;
        auto d0 = detail::base_q_digits(k0, q, i - 1);
        auto ext = detail::extension_basis(rows, n, q);
        auto d1 = detail::base_q_digits(k1 + 1, q, static_cast<int>(ext.size()));
        std::vector<std::uint32_t> v(n, 0);
        for (int r = 0; r < i - 1; ++r)
            for (int j = 0; j < n; ++j)
                v[j] = static_cast<std::uint32_t>((v[j] + static_cast<std::uint64_t>(d0[r]) * rows[r][j]) % q);
        for (std::size_t r = 0; r < ext.size(); ++r)
            for (int j = 0; j < n; ++j)
                v[j] = static_cast<std::uint32_t>((v[j] + static_cast<std::uint64_t>(d1[r]) * ext[r][j]) % q);
        for (int j = 0; j < n; ++j) m.at(i - 1, j) = v[j];
        rows.push_back(std::move(v));
        qpow *= q;
    }
    return m;
}

/// Inverse of gl_unrank.
inline BigIndex gl_rank(const MatrixFq& m) {
    if (m.rows() != m.cols()) throw std::domain_error("gl_rank: not square");
    if (!is_invertible(m)) throw std::domain_error("gl_rank: singular matrix");
    const int n = m.rows();
    const std::uint32_t q = m.q();
    BigIndex qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;

    std::vector<std::vector<std::uint32_t>> rows;
    BigIndex k = 0, qpow = 1;
    for (int i = 1; i <= n; ++i) {
        auto ext = detail::extension_basis(rows, n, q);
        // Solve v = x * [rows; ext] for the coefficient vector x.
        const int nb = n;
        MatrixFq aug(nb, nb + 1, q);
        for (int r = 0; r < i - 1; ++r)
            for (int j = 0; j < n; ++j) aug.at(j, r) = rows[r][j];
        for (std::size_t r = 0; r < ext.size(); ++r)
            for (int j = 0; j < n; ++j) aug.at(j, static_cast<int>(i - 1 + r)) = ext[r][j];
        for (int j = 0; j < n; ++j) aug.at(j, nb) = m.at(i - 1, j);
        MatrixFq sol = rref(aug);
        std::vector<std::uint32_t> coeff(n, 0);
        for (int r = 0; r < n; ++r) {
            int pc = -1;
            for (int c = 0; c < nb; ++c)
                if (sol.at(r, c)) {
                    pc = c;
                    break;
                }
            if (pc >= 0) coeff[pc] = sol.at(r, nb);
        }
        BigIndex k0 = 0, y = 0, qr = 1;
        for (int r = 0; r < i - 1; ++r) {
            k0 += qr * coeff[r];
            qr *= q;
        }
        qr = 1;
        for (std::size_t r = 0; r < ext.size(); ++r) {
            y += qr * coeff[i - 1 + r];
            qr *= q;
        }
        if (y == 0) throw std::logic_error("gl_rank: row dependent on prior rows");
        BigIndex digit = k0 + (y - 1) * qpow;
        k = k * (qn - qpow) + digit;
        qpow *= q;
        rows.push_back(m.row(i - 1));
    }
    return k;
}

/// Uniform over GL_n(F_q) by rejection sampling of uniform matrices.
inline MatrixFq random_gl(int n, std::uint32_t q, Rng& rng) {
    if (!is_prime(q)) throw std::domain_error("random_gl: q must be prime");
    for (;;) {
        MatrixFq m(n, n, q);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<std::uint32_t>(rng.below(q));
        if (is_invertible(m)) return m;
    }
}

}  // namespace gic
