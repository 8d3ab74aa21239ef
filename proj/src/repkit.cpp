#include "qtop/repkit.hpp"

#include <cmath>
#include <map>

namespace qtop {

AlgebraSpec AlgebraSpec::sl(int n) {
    if (n < 2) throw std::invalid_argument("sl(n) needs n >= 2");
    AlgebraSpec a;
    a.n = n;
    a.cartan.assign(n - 1, std::vector<int>(n - 1, 0));
    for (int i = 0; i < n - 1; ++i) {
        a.cartan[i][i] = 2;
        if (i + 1 < n - 1) a.cartan[i][i + 1] = a.cartan[i + 1][i] = -1;
    }
    // theta(i) = n - i in 1-based labels
    for (int i = 0; i < n - 1; ++i) a.theta.push_back(n - 2 - i);
    return a;
}

bool AlgebraSpec::theta_involutive() const {
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (theta[theta[i]] != int(i)) return false;
    return true;
}

template <class S>
Matrix<S> Representation<S>::qH(std::size_t i, Exp c, const QContext& ctx) const {
    std::vector<S> d;
    for (const auto& w : weights.at(i)) d.push_back(ScalarTraits<S>::qpow(c * w, ctx));
    return Matrix<S>::diagonal(d);
}

template <class S>
Matrix<S> Representation<S>::H(std::size_t i) const {
    std::vector<S> d;
    for (const auto& w : weights.at(i))
        d.push_back(ScalarTraits<S>::from_rational(Rational(w.numerator(), w.denominator())));
    return Matrix<S>::diagonal(d);
}

namespace {

template <class S>
S sqrt_scalar(const S& x) {
    if constexpr (ScalarTraits<S>::exact) {
        throw std::domain_error("square roots of q-numbers need the numeric backend");
    } else {
        return std::sqrt(x);
    }
}

std::string spin_label(Exp s) { return "spin-" + exp_string(s); }

}  // namespace

template <class S>
Representation<S> spin_rep(Exp s, Basis basis, const QContext& ctx) {
    if (s < 0 || (s * 2).denominator() != 1) throw std::invalid_argument("spin must be a nonnegative half-integer");
    if (basis == Basis::Unitary && ScalarTraits<S>::exact)
        throw std::domain_error("unitary spin basis needs the numeric backend");
    const long d = (s * 2).numerator() + 1;
    Representation<S> r;
    r.label = spin_label(s);
    r.basis = basis;
    r.hnorm = HNorm::Half;
    r.dim = d;
    r.weights.resize(1);
    for (long m = 1; m <= d; ++m) r.weights[0].push_back(s + 1 - m);
    Matrix<S> xp(d, d), xm(d, d);
    for (long m = 1; m < d; ++m) {
        S a = qnum<S>(m, ctx);
        S b = qnum<S>(d - m, ctx);  // [2s+1-m]
        if (basis == Basis::Unitary) {
            S v = sqrt_scalar(a * b);
            xp(m - 1, m) = v;
            xm(m, m - 1) = v;
        } else {
            xp(m - 1, m) = a;
            xm(m, m - 1) = b;
        }
    }
    r.xp.push_back(xp);
    r.xm.push_back(xm);
    return r;
}

template <class S>
Representation<S> fundamental_rep(int n, const QContext&) {
    if (n < 2) throw std::invalid_argument("fundamental_rep needs n >= 2");
    Representation<S> r;
    r.label = "fundamental-" + std::to_string(n);
    r.basis = Basis::Integral;
    r.hnorm = HNorm::Full;
    r.dim = n;
    for (int i = 0; i < n - 1; ++i) {
        std::vector<Exp> w(n, Exp(0));
        w[i] = 1;
        w[i + 1] = -1;
        r.weights.push_back(w);
        r.xp.push_back(Matrix<S>::unit(n, i, i + 1));
        r.xm.push_back(Matrix<S>::unit(n, i + 1, i));
    }
    return r;
}

template <class S>
Representation<S> coproduct_rep(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx,
                                CoproductOrder order) {
    if (r1.rank() != r2.rank() || r1.hnorm != r2.hnorm) throw std::invalid_argument("coproduct_rep: algebra mismatch");
    Representation<S> r;
    r.label = "(" + r1.label + ")x(" + r2.label + ")";
    r.basis = r1.basis == r2.basis ? r1.basis : Basis::Integral;
    r.hnorm = r1.hnorm;
    r.dim = r1.dim * r2.dim;
    const Exp k = r1.kappa();
    const Exp sgn = order == CoproductOrder::RCompatible ? Exp(1) : Exp(-1);
    const auto i1 = Matrix<S>::identity(r1.dim);
    const auto i2 = Matrix<S>::identity(r2.dim);
    for (std::size_t i = 0; i < r1.rank(); ++i) {
        std::vector<Exp> w;
        for (const auto& a : r1.weights[i])
            for (const auto& b : r2.weights[i]) w.push_back(a + b);
        r.weights.push_back(w);
        auto right = r2.qH(i, sgn * k, ctx);
        auto left = r1.qH(i, -sgn * k, ctx);
        r.xp.push_back(kron(r1.xp[i], right) + kron(left, r2.xp[i]));
        r.xm.push_back(kron(r1.xm[i], right) + kron(left, r2.xm[i]));
    }
    for (auto& m : r.xp) m.with_legs({r1.dim, r2.dim});
    for (auto& m : r.xm) m.with_legs({r1.dim, r2.dim});
    return r;
}

template <class S>
double check_relations(const Representation<S>& r, const QContext& ctx) {
    using T = ScalarTraits<S>;
    const auto spec = AlgebraSpec::sl(int(r.rank()) + 1);
    const Exp k = r.kappa();
    const S w = omega<S>(ctx);
    double res = 0.0;
    for (std::size_t i = 0; i < r.rank(); ++i) {
        for (std::size_t j = 0; j < r.rank(); ++j) {
            auto comm = r.xp[i] * r.xm[j] - r.xm[j] * r.xp[i];
            Matrix<S> rhs(r.dim, r.dim);
            if (i == j) rhs = r.qH(i, 2 * k, ctx) - r.qH(i, -2 * k, ctx);
            res = std::max(res, residual_norm(w * comm, rhs));
            // q^(kH_i) X_j q^(-kH_i) = q^(+-k a_ij) X_j
            const Exp step = r.hnorm == HNorm::Half ? Exp(spec.cartan[i][j], 2) : Exp(spec.cartan[i][j]);
            const Exp shift = k * step;
            res = std::max(res, residual_norm(r.qH(i, k, ctx) * r.xp[j] * r.qH(i, -k, ctx), T::qpow(shift, ctx) * r.xp[j]));
            res = std::max(res, residual_norm(r.qH(i, k, ctx) * r.xm[j] * r.qH(i, -k, ctx), T::qpow(-shift, ctx) * r.xm[j]));
        }
    }
    return res;
}

template <class S>
std::vector<std::pair<Exp, int>> weight_multiplicities(const Representation<S>& r) {
    std::map<Exp, int> m;
    for (const auto& w : r.weights.at(0)) ++m[w];
    std::vector<std::pair<Exp, int>> out(m.rbegin(), m.rend());
    return out;
}

template <class S>
ModelSpace<S>::ModelSpace(int D, Exp gamma, const QContext& ctx) : D_(D), gamma_(gamma), ctx_(ctx) {
    if (D < 1) throw std::invalid_argument("model space needs D >= 1");
    for (int d = 0; d <= D; ++d) {
        offset_.push_back(basis_.size());
        for (int a = d; a >= 0; --a) basis_.emplace_back(a, d - a);
    }
}

template <class S>
std::size_t ModelSpace<S>::index(int a, int b) const {
    if (a < 0 || b < 0 || a + b > D_) throw std::out_of_range("monomial outside the truncated space");
    return offset_[a + b] + (a + b - a);
}

template <class S>
Matrix<S> ModelSpace<S>::build(const Step& f) const {
    Matrix<S> m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        auto [a, b] = basis_[j];
        int a2 = a, b2 = b;
        S c = ScalarTraits<S>::zero();
        if (!f(a, b, a2, b2, c)) continue;
        if (a2 < 0 || b2 < 0 || a2 + b2 > D_) continue;  // truncated away
        m(index(a2, b2), j) = c;
    }
    return m;
}

template <class S>
Matrix<S> ModelSpace<S>::xp() const {
    return build([&](int a, int b, int& a2, int& b2, S& c) {
        if (b == 0) return false;
        a2 = a + 1, b2 = b - 1, c = qnum<S>(b, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::xm() const {
    return build([&](int a, int b, int& a2, int& b2, S& c) {
        if (a == 0) return false;
        a2 = a - 1, b2 = b + 1, c = qnum<S>(a, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::qH(Exp c) const {
    return build([&](int a, int b, int&, int&, S& v) {
        v = ScalarTraits<S>::qpow(c * Exp(a - b, 2), ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::z1() const {
    return build([&](int a, int, int& a2, int&, S& c) {
        a2 = a + 1, c = ScalarTraits<S>::one();
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::z2() const {
    return build([&](int, int b, int&, int& b2, S& c) {
        b2 = b + 1, c = ScalarTraits<S>::one();
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::l1() const {
    return build([&](int a, int, int& a2, int&, S& c) {
        if (a == 0) return false;
        a2 = a - 1, c = qnum<S>(a, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::l2() const {
    return build([&](int, int b, int&, int& b2, S& c) {
        if (b == 0) return false;
        b2 = b - 1, c = qnum<S>(b, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::dil1(Exp c) const {
    return build([&](int a, int, int&, int&, S& v) {
        v = ScalarTraits<S>::qpow(c * a, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::dil2(Exp c) const {
    return build([&](int, int b, int&, int&, S& v) {
        v = ScalarTraits<S>::qpow(c * b, ctx_);
        return true;
    });
}

template <class S>
Matrix<S> ModelSpace<S>::spin_p() const {
    return diag_p([](int p) { return ScalarTraits<S>::from_int(p); });
}

template <class S>
Matrix<S> ModelSpace<S>::qp(Exp c) const {
    return diag_p([&](int p) { return ScalarTraits<S>::qpow(c * p, ctx_); });
}

template <class S>
Matrix<S> ModelSpace<S>::diag_p(const std::function<S(int)>& f) const {
    return build([&](int a, int b, int&, int&, S& v) {
        v = f(a + b + 1);
        return true;
    });
}

template <class S>
std::vector<std::size_t> ModelSpace<S>::margin_indices(int mu) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (degree(i) <= D_ - mu) out.push_back(i);
    return out;
}

template <class S>
std::vector<std::size_t> ModelSpace<S>::margin_cols(std::size_t aux, int mu) const {
    const auto idx = margin_indices(mu);
    if (idx.empty()) throw std::domain_error("margin exhausted: D too small");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < aux; ++k)
        for (auto i : idx) out.push_back(k * dim() + i);
    return out;
}

std::vector<Numeric> model_vector(Exp j, Exp m, int D, const QContext& ctx) {
    if (j < 0 || (j * 2).denominator() != 1 || (j - m).denominator() != 1 || m > j || m < -j)
        throw std::invalid_argument("model_vector: invalid (j, m)");
    if ((j * 2).numerator() > D) throw std::domain_error("model_vector: degree overflow");
    ModelSpace<Numeric> ms(D, 0, ctx);
    const long a = (j + m).numerator();
    const long b = (j - m).numerator();
    std::vector<Numeric> v(ms.dim());
    Numeric fa = qfactorial<Numeric>(a, FactorialVariant::Bracket, ctx);
    Numeric fb = qfactorial<Numeric>(b, FactorialVariant::Bracket, ctx);
    v[ms.index(int(a), int(b))] = 1.0 / std::sqrt(fa * fb);
    return v;
}

namespace {
Matrix<Numeric> block_impl(Exp j, const ModelSpace<Numeric>& ms, bool dual) {
    if ((j * 2).denominator() != 1 || j < 0) throw std::invalid_argument("model_block: invalid spin");
    const long d2 = (j * 2).numerator();
    if (d2 > ms.D()) throw std::domain_error("model_block: degree overflow");
    Matrix<Numeric> out(dual ? d2 + 1 : ms.dim(), dual ? ms.dim() : d2 + 1);
    for (long k = 0; k <= d2; ++k) {
        long a = d2 - k, b = k;
        Numeric n = std::sqrt(qfactorial<Numeric>(a, FactorialVariant::Bracket, ms.ctx()) *
                              qfactorial<Numeric>(b, FactorialVariant::Bracket, ms.ctx()));
        std::size_t i = ms.index(int(a), int(b));
        if (dual)
            out(k, i) = n;
        else
            out(i, k) = 1.0 / n;
    }
    return out;
}
}  // namespace

Matrix<Numeric> model_block(Exp j, const ModelSpace<Numeric>& ms) { return block_impl(j, ms, false); }
Matrix<Numeric> model_dual_block(Exp j, const ModelSpace<Numeric>& ms) { return block_impl(j, ms, true); }

#define QTOP_INSTANTIATE(S)                                                                                         \
    template struct Representation<S>;                                                                              \
    template Representation<S> spin_rep<S>(Exp, Basis, const QContext&);                                            \
    template Representation<S> fundamental_rep<S>(int, const QContext&);                                            \
    template Representation<S> coproduct_rep<S>(const Representation<S>&, const Representation<S>&, const QContext&, \
                                                CoproductOrder);                                                    \
    template double check_relations<S>(const Representation<S>&, const QContext&);                                  \
    template std::vector<std::pair<Exp, int>> weight_multiplicities<S>(const Representation<S>&);                   \
    template class ModelSpace<S>;

QTOP_INSTANTIATE(Laurent)
QTOP_INSTANTIATE(Numeric)
#undef QTOP_INSTANTIATE

}  // namespace qtop
