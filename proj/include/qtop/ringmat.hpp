#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtop/qscalar.hpp"

namespace qtop {

// Dense row-major matrix over a scalar backend, with an optional tensor leg
// structure (leftmost leg varies slowest).
template <class S>
class Matrix {
public:
    using Traits = ScalarTraits<S>;
    using value_type = S;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, Traits::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
        return m;
    }
    static Matrix diagonal(const std::vector<S>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(n, n);
        m(i, j) = Traits::one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::vector<S>& data() { return a_; }
    const std::vector<S>& data() const { return a_; }

    const std::vector<std::size_t>& legs() const { return legs_; }
    // Leg dims, defaulting to a single leg.
    std::vector<std::size_t> leg_dims() const { return legs_.empty() ? std::vector<std::size_t>{r_} : legs_; }
    Matrix& with_legs(std::vector<std::size_t> legs) {
        std::size_t p = std::accumulate(legs.begin(), legs.end(), std::size_t{1}, std::multiplies<>());
        if (!square() || p != r_) throw std::invalid_argument("leg structure does not match matrix dimension");
        legs_ = std::move(legs);
        return *this;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const S& x) { return Traits::is_zero(x); });
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] + o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] - o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }
    friend Matrix operator*(const S& s, Matrix a) {
        for (auto& x : a.a_)
            if (!Traits::is_zero(x)) x = s * x;
        return a;
    }

    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<S> a_;
    std::vector<std::size_t> legs_;
};

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
    using T = ScalarTraits<S>;
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<S> c(a.rows(), b.cols());
    std::vector<std::vector<std::size_t>> nz(b.rows());
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!T::is_zero(b(k, j))) nz[k].push_back(j);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const S& x = a(i, k);
            if (T::is_zero(x)) continue;
            for (std::size_t j : nz[k]) c(i, j) += x * b(k, j);
        }
    if (a.square() && b.square() && a.legs() == b.legs() && !a.legs().empty()) c.with_legs(a.legs());
    return c;
}

// Dense numeric product (Eigen kernel).
Matrix<Numeric> operator*(const Matrix<Numeric>& a, const Matrix<Numeric>& b);

template <class S>
Matrix<S> transpose(const Matrix<S>& m) {
    Matrix<S> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    if (!m.legs().empty()) t.with_legs(m.legs());
    return t;
}

template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
    using T = ScalarTraits<S>;
    Matrix<S> c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const S& x = a(i, j);
            if (T::is_zero(x)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!T::is_zero(b(k, l))) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    if (a.square() && b.square()) {
        auto la = a.leg_dims();
        auto lb = b.leg_dims();
        la.insert(la.end(), lb.begin(), lb.end());
        c.with_legs(la);
    }
    return c;
}

namespace detail {
inline std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
    return s;
}
inline std::size_t product(const std::vector<std::size_t>& d) {
    return std::accumulate(d.begin(), d.end(), std::size_t{1}, std::multiplies<>());
}
}  // namespace detail

// A acting on the listed legs (in A's own leg order), identity on the rest.
template <class S>
Matrix<S> embed(const Matrix<S>& a, const std::vector<std::size_t>& slots, const std::vector<std::size_t>& dims) {
    using T = ScalarTraits<S>;
    const std::size_t total = detail::product(dims);
    std::vector<std::size_t> sub;
    for (auto s : slots) {
        if (s >= dims.size()) throw std::invalid_argument("embed: slot out of range");
        sub.push_back(dims[s]);
    }
    if (!a.square() || detail::product(sub) != a.rows()) throw std::invalid_argument("embed: slot/dim mismatch");
    std::vector<bool> used(dims.size(), false);
    for (auto s : slots) {
        if (used[s]) throw std::invalid_argument("embed: repeated slot");
        used[s] = true;
    }
    const auto st = detail::strides(dims);
    const auto sub_st = detail::strides(sub);
    // offset in the full index for each local index of A
    std::vector<std::size_t> off(a.rows(), 0);
    for (std::size_t loc = 0; loc < a.rows(); ++loc)
        for (std::size_t k = 0; k < slots.size(); ++k) off[loc] += ((loc / sub_st[k]) % sub[k]) * st[slots[k]];
    std::vector<std::size_t> rest{0};
    for (std::size_t leg = 0; leg < dims.size(); ++leg) {
        if (used[leg]) continue;
        std::vector<std::size_t> next;
        for (auto base : rest)
            for (std::size_t v = 0; v < dims[leg]; ++v) next.push_back(base + v * st[leg]);
        rest = std::move(next);
    }
    Matrix<S> out(total, total);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (T::is_zero(a(i, j))) continue;
            for (auto base : rest) out(base + off[i], base + off[j]) = a(i, j);
        }
    out.with_legs(dims);
    return out;
}

// Transpose the indices of one leg only.
template <class S>
Matrix<S> partial_transpose(const Matrix<S>& m, std::size_t leg) {
    if (m.legs().size() < 2) throw std::invalid_argument("partial_transpose: missing leg structure");
    const auto& dims = m.legs();
    if (leg >= dims.size()) throw std::invalid_argument("partial_transpose: leg out of range");
    const auto st = detail::strides(dims);
    Matrix<S> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::size_t ai = (i / st[leg]) % dims[leg];
            std::size_t aj = (j / st[leg]) % dims[leg];
            std::size_t i2 = i + (aj - ai) * st[leg];
            std::size_t j2 = j + (ai - aj) * st[leg];
            out(i2, j2) = m(i, j);
        }
    out.with_legs(dims);
    return out;
}

// Permutation operator swapping two tensor factors of dims (a, b): v(x)w -> w(x)v.
template <class S>
Matrix<S> swap_operator(std::size_t a, std::size_t b) {
    Matrix<S> p(a * b, a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) p(j * a + i, i * b + j) = ScalarTraits<S>::one();
    return p;
}

template <class S>
Matrix<S> select_cols(const Matrix<S>& m, const std::vector<std::size_t>& cols) {
    Matrix<S> out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = m(i, cols[k]);
    return out;
}

template <class S>
S trace(const Matrix<S>& m) {
    S t = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

// Max absolute entry difference (numeric) or 0/1 exact-equality flag (exact).
template <class S>
double residual_norm(const Matrix<S>& a, const Matrix<S>& b) {
    a.check_same(b);
    double r = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) r = std::max(r, ScalarTraits<S>::diff(a.data()[k], b.data()[k]));
    return r;
}

template <class S>
double residual_norm_cols(const Matrix<S>& a, const Matrix<S>& b, const std::vector<std::size_t>& cols) {
    a.check_same(b);
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (auto j : cols) r = std::max(r, ScalarTraits<S>::diff(a(i, j), b(i, j)));
    return r;
}

template <class S>
double residual_norm(const Matrix<S>& a) {
    return residual_norm(a, Matrix<S>(a.rows(), a.cols()));
}

template <class S>
Matrix<Numeric> to_numeric(const Matrix<S>& m, double q) {
    Matrix<Numeric> out(m.rows(), m.cols());
    for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = ScalarTraits<S>::eval(m.data()[k], q);
    if (!m.legs().empty()) out.with_legs(m.legs());
    return out;
}

// Gauss-Jordan inverse; exact backends only pivot on invertible (monomial) entries.
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
    using T = ScalarTraits<S>;
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix<S> a = m;
    Matrix<S> inv = Matrix<S>::identity(n);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> pivot_row(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = n;
        for (std::size_t r = 0; r < n; ++r)
            if (!done[r] && T::invertible(a(r, col))) {
                p = r;
                break;
            }
        if (p == n) throw std::domain_error("inverse: no invertible pivot in column " + std::to_string(col));
        done[p] = true;
        pivot_row[col] = p;
        S piv = T::inv(a(p, col));
        std::vector<std::size_t> nz_a, nz_i;
        for (std::size_t j = 0; j < n; ++j) {
            if (!T::is_zero(a(p, j))) {
                a(p, j) = piv * a(p, j);
                nz_a.push_back(j);
            }
            if (!T::is_zero(inv(p, j))) {
                inv(p, j) = piv * inv(p, j);
                nz_i.push_back(j);
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == p || T::is_zero(a(r, col))) continue;
            S f = a(r, col);
            for (auto j : nz_a) a(r, j) -= f * a(p, j);
            for (auto j : nz_i) inv(r, j) -= f * inv(p, j);
        }
    }
    Matrix<S> out(n, n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t j = 0; j < n; ++j) out(col, j) = inv(pivot_row[col], j);
    if (!m.legs().empty()) out.with_legs(m.legs());
    return out;
}

Matrix<Numeric> inverse(const Matrix<Numeric>& m);

// Operator-valued matrices: n x n blocks, each block of size d.
template <class S>
Matrix<S> block(const Matrix<S>& m, std::size_t n, std::size_t i, std::size_t j) {
    const std::size_t d = m.rows() / n;
    Matrix<S> b(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) b(a, c) = m(i * d + a, j * d + c);
    return b;
}

template <class S>
Matrix<S> from_blocks(const std::vector<std::vector<Matrix<S>>>& blocks) {
    const std::size_t n = blocks.size();
    const std::size_t d = blocks.at(0).at(0).rows();
    Matrix<S> m(n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& b = blocks[i][j];
            if (b.rows() != d || b.cols() != d) throw std::invalid_argument("from_blocks: block size mismatch");
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t c = 0; c < d; ++c) m(i * d + a, j * d + c) = b(a, c);
        }
    m.with_legs({n, d});
    return m;
}

// Projector carried as numerator / scalar denominator (exact backends cannot
// divide by non-monomials).
template <class S>
struct Projector {
    Matrix<S> num;
    S denom = ScalarTraits<S>::one();
};

template <class S>
struct HeckePair {
    Projector<S> plus, minus;
};

// Symmetrizer / antisymmetrizer from Rhat = P R_+ for the fundamental sl(n)
// R-matrix; throws if Rhat is not Hecke with the expected normalization.
template <class S>
HeckePair<S> hecke_projectors(const Matrix<S>& rhat, int n, const QContext& ctx);

// Exact rank of an idempotent from its trace: tr(num) = rank * denom.
template <class S>
long projector_rank(const Projector<S>& p, const QContext& ctx);

// Idempotence residual num*num - denom*num.
template <class S>
double idempotence_residual(const Projector<S>& p) {
    return residual_norm(p.num * p.num, p.denom * p.num);
}

// Numeric-only spectral helpers.
Matrix<Numeric> spectral_projector(const Matrix<Numeric>& m, Numeric eigenvalue, double tol = 1e-9);
std::size_t numeric_rank(const Matrix<Numeric>& m, double tol = 1e-9);
// Orthonormal basis of the null space, as columns.
Matrix<Numeric> null_space(const Matrix<Numeric>& m, double tol = 1e-9);
// Orthonormal basis of the column space, as columns.
Matrix<Numeric> image_basis(const Matrix<Numeric>& p, double tol = 1e-9);
Matrix<Numeric> adjoint(const Matrix<Numeric>& m);

}  // namespace qtop
