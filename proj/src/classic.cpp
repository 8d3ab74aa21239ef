#include "qtop/classic.hpp"

#include <cmath>
#include <stdexcept>

namespace qtop {

namespace {

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
    return a * b - b * a;
}

template <class S>
Matrix<S> antidiagonal(std::size_t d) {
    Matrix<S> m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1 - i) = ScalarTraits<S>::one();
    return m;
}

template <class S>
Matrix<S> scaled(long k, const Matrix<S>& m) {
    return ScalarTraits<S>::from_int(k) * m;
}

}  // namespace

template <class S>
ClassicalRep<S> classical_spin_rep(Exp s) {
    if (s < 0 || (s * 2).denominator() != 1) throw std::invalid_argument("spin must be a nonnegative half-integer");
    const long d = (s * 2).numerator() + 1;
    ClassicalRep<S> r;
    r.spin = s;
    r.h = Matrix<S>(d, d);
    r.xp = Matrix<S>(d, d);
    r.xm = Matrix<S>(d, d);
    for (long k = 0; k < d; ++k) {
        const Exp m = s - k;
        r.h(k, k) = ScalarTraits<S>::from_rational(Rational(m.numerator()) / m.denominator());
        if (k > 0) {
            r.xp(k - 1, k) = ScalarTraits<S>::from_int(k);
            r.xm(k, k - 1) = ScalarTraits<S>::from_int(d - k);
        }
    }
    return r;
}

template <class S>
ClassicalRMatrix<S> classical_r_sl2(const ClassicalRep<S>& a, const ClassicalRep<S>& b, Variant v) {
    ClassicalRMatrix<S> r;
    r.spin_i = a.spin;
    r.spin_j = b.spin;
    r.variant = v;
    if (v == Variant::Plus)
        r.m = scaled(2, Matrix<S>(kron(a.h, b.h) + kron(a.xp, b.xm)));
    else
        r.m = scaled(-2, Matrix<S>(kron(a.h, b.h) + kron(a.xm, b.xp)));
    r.m.with_legs({a.dim(), b.dim()});
    return r;
}

template <class S>
double verify_CYBE(const Matrix<S>& r12, const Matrix<S>& r13, const Matrix<S>& r23, const std::vector<std::size_t>& dims) {
    if (dims.size() != 3) throw std::invalid_argument("verify_CYBE: three legs expected");
    auto a = embed(r12, {0, 1}, dims), b = embed(r13, {0, 2}, dims), c = embed(r23, {1, 2}, dims);
    return residual_norm(Matrix<S>(commutator(a, b) + commutator(a, c) + commutator(b, c)));
}

template <class S>
double verify_CYBE(const Matrix<S>& r, std::size_t d) {
    return verify_CYBE(r, r, r, {d, d, d});
}

Matrix<Numeric> q_derivative_limit(const std::function<Matrix<Numeric>(double)>& builder, double eps, bool richardson) {
    if (!(eps >= 1e-7 && eps <= 1e-4)) throw std::invalid_argument("q_derivative_limit: eps outside [1e-7, 1e-4]");
    auto quotient = [&](double e) {
        Matrix<Numeric> r = builder(1.0 + e);
        if (!r.square()) throw std::invalid_argument("q_derivative_limit: square matrix expected");
        return Matrix<Numeric>((1.0 / e) * Matrix<Numeric>(r - Matrix<Numeric>::identity(r.rows())));
    };
    Matrix<Numeric> d = quotient(eps);
    if (!richardson) return d;
    return Matrix<Numeric>(2.0 * quotient(eps / 2) - d);
}

template <class S>
double classical_chi_residual(const ClassicalRMatrix<S>& r) {
    const auto dims = r.m.leg_dims();
    if (dims.size() != 2) throw std::invalid_argument("classical_chi_residual: two legs expected");
    auto c1 = kron(antidiagonal<S>(dims[0]), Matrix<S>::identity(dims[1]));
    auto c2 = kron(Matrix<S>::identity(dims[0]), antidiagonal<S>(dims[1]));
    double res = residual_norm(Matrix<S>(c1 * r.m * c1), partial_transpose(r.m, 0));
    return std::max(res, residual_norm(Matrix<S>(c2 * r.m * c2), partial_transpose(r.m, 1)));
}

template <class S>
ClassicalModel<S>::ClassicalModel(int D) : D_(D) {
    if (D < 1) throw std::invalid_argument("classical model needs D >= 1");
    for (int d = 0; d <= D; ++d) {
        offset_.push_back(basis_.size());
        for (int a = d; a >= 0; --a) basis_.emplace_back(a, d - a);
    }
}

template <class S>
std::size_t ClassicalModel<S>::index(int a, int b) const {
    if (a < 0 || b < 0 || a + b > D_) throw std::out_of_range("monomial outside the truncated space");
    return offset_[a + b] + b;
}

template <class S>
Matrix<S> ClassicalModel<S>::build(const Step& f) const {
    Matrix<S> m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        auto [a, b] = basis_[j];
        int a2 = a, b2 = b;
        S c = ScalarTraits<S>::zero();
        if (!f(a, b, a2, b2, c)) continue;
        if (a2 + b2 > D_) continue;
        m(index(a2, b2), j) = c;
    }
    return m;
}

template <class S>
Matrix<S> ClassicalModel<S>::z1() const {
    return build([](int a, int, int& a2, int&, S& c) {
        a2 = a + 1, c = ScalarTraits<S>::one();
        return true;
    });
}

template <class S>
Matrix<S> ClassicalModel<S>::z2() const {
    return build([](int, int b, int&, int& b2, S& c) {
        b2 = b + 1, c = ScalarTraits<S>::one();
        return true;
    });
}

template <class S>
Matrix<S> ClassicalModel<S>::d1() const {
    return build([](int a, int, int& a2, int&, S& c) {
        if (a == 0) return false;
        a2 = a - 1, c = ScalarTraits<S>::from_int(a);
        return true;
    });
}

template <class S>
Matrix<S> ClassicalModel<S>::d2() const {
    return build([](int, int b, int&, int& b2, S& c) {
        if (b == 0) return false;
        b2 = b - 1, c = ScalarTraits<S>::from_int(b);
        return true;
    });
}

template <class S>
Matrix<S> ClassicalModel<S>::h() const {
    return build([](int a, int b, int&, int&, S& c) {
        c = ScalarTraits<S>::from_rational(Rational(a - b) / 2);
        return true;
    });
}

template <class S>
Matrix<S> ClassicalModel<S>::diag_p(const std::function<S(int)>& f) const {
    return build([&](int a, int b, int&, int&, S& c) {
        c = f(a + b + 1);
        return true;
    });
}

template <class S>
std::vector<std::size_t> ClassicalModel<S>::margin_cols(std::size_t aux, int mu) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < aux; ++k)
        for (std::size_t i = 0; i < dim(); ++i)
            if (degree(i) <= D_ - mu) out.push_back(k * dim() + i);
    if (out.empty()) throw std::domain_error("margin exhausted: D too small");
    return out;
}

template <class S>
double classical_model_residual(const ClassicalModel<S>& cm) {
    const auto xp = cm.xp(), xm = cm.xm(), h = cm.h();
    double r = residual_norm(commutator(xp, xm), scaled(2, h));
    r = std::max(r, residual_norm(commutator(h, xp), xp));
    return std::max(r, residual_norm(commutator(h, xm), Matrix<S>(-xm)));
}

template <class S>
GeneratingMatrix<S> build_classical_W_half(const ClassicalModel<S>& cm, Normalizer f) {
    Matrix<S> fp;
    switch (f) {
        case Normalizer::Identity: fp = cm.identity(); break;
        case Normalizer::InverseQnum:
            fp = cm.diag_p([](int p) { return ScalarTraits<S>::from_rational(Rational(1) / p); });
            break;
        case Normalizer::InverseSqrtQnum:
            if constexpr (ScalarTraits<S>::exact)
                throw std::domain_error("inverse square root normalizer needs the numeric backend");
            else
                fp = cm.diag_p([](int p) { return S(1.0 / std::sqrt(double(p))); });
            break;
    }
    GeneratingMatrix<S> w;
    w.m = from_blocks<S>({{cm.d1() * fp, -(cm.z2() * fp)}, {cm.d2() * fp, cm.z1() * fp}});
    w.m.with_legs({2, cm.dim()});
    w.kind = Kind::Contravariant;
    w.rep = "1/2";
    w.margin = 1;
    w.normalizer = normalizer_name(f);
    w.provenance = "classical";
    return w;
}

template <class S>
Matrix<S> classical_l(const ClassicalModel<S>& cm, Variant v) {
    auto rho = classical_spin_rep<S>(Exp(1, 2));
    Matrix<S> l = v == Variant::Plus ? scaled(2, Matrix<S>(kron(rho.h, cm.h()) + kron(rho.xp, cm.xm())))
                                     : scaled(-2, Matrix<S>(kron(rho.h, cm.h()) + kron(rho.xm, cm.xp())));
    l.with_legs({2, cm.dim()});
    return l;
}

namespace {

template <class S>
struct Legs {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> cols;
};

template <class S>
Legs<S> legs_for(const GeneratingMatrix<S>& g, const Matrix<S>& r, const ClassicalModel<S>& cm) {
    const std::size_t n = g.n();
    if (g.model_dim() != cm.dim()) throw std::invalid_argument("generating matrix does not match the model");
    if (r.rows() != 2 * n) throw std::invalid_argument("r-matrix legs do not match (1/2, rep)");
    return {{2, n, cm.dim()}, cm.margin_cols(2 * n, g.margin)};
}

}  // namespace

template <class S>
double verify_classical_generating(const GeneratingMatrix<S>& g, const Matrix<S>& lp, const Matrix<S>& lm,
                                   const Matrix<S>& rp, const Matrix<S>& rm, const ClassicalModel<S>& cm) {
    const auto lg = legs_for(g, rp, cm);
    const auto g2 = embed(g.m, {1, 2}, lg.dims);
    double res = 0.0;
    for (auto [l, r] : {std::pair{&lp, &rp}, std::pair{&lm, &rm}}) {
        const auto l1 = embed(*l, {0, 2}, lg.dims);
        const auto r12 = embed(*r, {0, 1}, lg.dims);
        Matrix<S> x = commutator(l1, g2);
        x = g.kind == Kind::Contravariant ? Matrix<S>(x + r12 * g2) : Matrix<S>(x - g2 * r12);
        res = std::max(res, residual_norm_cols(x, Matrix<S>(x.rows(), x.cols()), lg.cols));
    }
    return res;
}

template <class S>
double classical_casimir_residual(const GeneratingMatrix<S>& w, const Matrix<S>& lp, const Matrix<S>& lm,
                                  const Matrix<S>& rp, const Matrix<S>& rm, const ClassicalModel<S>& cm) {
    if (w.kind != Kind::Contravariant) throw std::invalid_argument("classical_casimir_residual: contravariant matrix expected");
    const auto lg = legs_for(w, rp, cm);
    const auto w2 = embed(w.m, {1, 2}, lg.dims);
    const auto dl = embed(Matrix<S>(lp - lm), {0, 2}, lg.dims);
    const auto c = embed(Matrix<S>(rp - rm), {0, 1}, lg.dims);
    Matrix<S> x = commutator(dl, w2) + c * w2;
    return residual_norm_cols(x, Matrix<S>(x.rows(), x.cols()), lg.cols);
}

template <class S>
double classical_components(const GeneratingMatrix<S>& g, const ClassicalRep<S>& rho, const ClassicalModel<S>& cm) {
    const std::size_t n = g.n();
    if (rho.dim() != n) throw std::invalid_argument("classical_components: rep dimension mismatch");
    const auto cols = cm.margin_cols(n, g.margin);
    const auto in = Matrix<S>::identity(n), im = cm.identity();
    double res = 0.0;
    for (auto [x, rx] : {std::pair{cm.h(), rho.h}, std::pair{cm.xp(), rho.xp}, std::pair{cm.xm(), rho.xm}}) {
        const auto big = kron(in, x);
        const auto rb = kron(rx, im);
        Matrix<S> d = commutator(big, g.m);
        d = g.kind == Kind::Contravariant ? Matrix<S>(d + rb * g.m) : Matrix<S>(d - g.m * rb);
        res = std::max(res, residual_norm_cols(d, Matrix<S>(d.rows(), d.cols()), cols));
    }
    return res;
}

template <class S>
Matrix<S> classical_weyl(Exp s) {
    if (s < 0 || (s * 2).denominator() != 1) throw std::invalid_argument("spin must be a nonnegative half-integer");
    const long d = (s * 2).numerator() + 1;
    Matrix<S> w(d, d);
    for (long k = 1; k <= d; ++k) w(d - k, k - 1) = ScalarTraits<S>::from_int(k % 2 ? -1 : 1);
    return w;
}

template <class S>
GeneratingMatrix<S> classical_convert(const GeneratingMatrix<S>& w) {
    if (w.kind != Kind::Contravariant) throw std::invalid_argument("classical_convert: contravariant matrix expected");
    GeneratingMatrix<S> u = w;
    const Exp s(long(w.n()) - 1, 2);
    u.m = partial_transpose(w.m, 0) * kron(classical_weyl<S>(s), Matrix<S>::identity(w.model_dim()));
    u.m.with_legs({w.n(), w.model_dim()});
    u.kind = Kind::Covariant;
    u.provenance = "classical conversion";
    return u;
}

#define QTOP_INSTANTIATE(S)                                                                                           \
    template ClassicalRep<S> classical_spin_rep<S>(Exp);                                                              \
    template ClassicalRMatrix<S> classical_r_sl2<S>(const ClassicalRep<S>&, const ClassicalRep<S>&, Variant);        \
    template double verify_CYBE<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&,                              \
                                   const std::vector<std::size_t>&);                                                  \
    template double verify_CYBE<S>(const Matrix<S>&, std::size_t);                                                    \
    template double classical_chi_residual<S>(const ClassicalRMatrix<S>&);                                            \
    template class ClassicalModel<S>;                                                                                 \
    template double classical_model_residual<S>(const ClassicalModel<S>&);                                            \
    template GeneratingMatrix<S> build_classical_W_half<S>(const ClassicalModel<S>&, Normalizer);                     \
    template Matrix<S> classical_l<S>(const ClassicalModel<S>&, Variant);                                             \
    template double verify_classical_generating<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&,    \
                                                   const Matrix<S>&, const Matrix<S>&, const ClassicalModel<S>&);     \
    template double classical_casimir_residual<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&,     \
                                                  const Matrix<S>&, const Matrix<S>&, const ClassicalModel<S>&);      \
    template double classical_components<S>(const GeneratingMatrix<S>&, const ClassicalRep<S>&,                       \
                                            const ClassicalModel<S>&);                                                \
    template Matrix<S> classical_weyl<S>(Exp);                                                                        \
    template GeneratingMatrix<S> classical_convert<S>(const GeneratingMatrix<S>&);

QTOP_INSTANTIATE(Rational)
QTOP_INSTANTIATE(Numeric)
#undef QTOP_INSTANTIATE

}  // namespace qtop
