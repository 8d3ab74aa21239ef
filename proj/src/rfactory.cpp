#include "qtop/rfactory.hpp"

#include <cmath>

namespace qtop {

std::string variant_name(Variant v) { return v == Variant::Plus ? "plus" : "minus"; }

namespace {

template <class S>
S qp(Exp e, const QContext& ctx) {
    return ScalarTraits<S>::qpow(e, ctx);
}

template <class S>
Matrix<S> matrix_power(const Matrix<S>& m, int n) {
    Matrix<S> out = Matrix<S>::identity(m.rows());
    for (int k = 0; k < n; ++k) out = out * m;
    return out;
}

template <class S>
S divide(const S& a, const S& b) {
    if constexpr (std::is_same_v<S, Laurent>) {
        return Laurent::divide_exact(a, b);
    } else {
        return a / b;
    }
}

template <class S>
Matrix<S> two_leg(Matrix<S> m, std::size_t a, std::size_t b) {
    m.with_legs({a, b});
    return m;
}

}  // namespace

template <class S>
RMatrix<S> fundamental_R(int n, Variant v, const QContext& ctx) {
    if (n < 2) throw std::invalid_argument("fundamental_R needs n >= 2");
    const std::size_t d = n;
    const S w = omega<S>(ctx);
    const bool plus = v == Variant::Plus;
    Matrix<S> r(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t ij = i * d + j;
            r(ij, ij) = i == j ? qp<S>(plus ? 1 : -1, ctx) : ScalarTraits<S>::one();
            if (i < j) {
                if (plus)
                    r(ij, j * d + i) = w;  // E_ij x E_ji
                else
                    r(j * d + i, ij) = -w;  // E_ji x E_ij
            }
        }
    RMatrix<S> out;
    out.m = two_leg(qp<S>(plus ? Exp(-1, n) : Exp(1, n), ctx) * r, d, d);
    out.rep_i = out.rep_j = "fundamental-" + std::to_string(n);
    out.variant = v;
    out.normalization = "fundamental";
    out.route = "fundamental";
    return out;
}

template <class S>
RMatrix<S> lop_substituted_R(Exp s, Variant v, const QContext& ctx, Basis basis) {
    const auto rep = spin_rep<S>(s, basis, ctx);
    const std::size_t d = rep.dim;
    const S w = omega<S>(ctx);
    Matrix<S> zero(d, d);
    Matrix<S> m;
    if (v == Variant::Plus)
        m = from_blocks<S>({{rep.qH(0, 1, ctx), (w * qp<S>(Exp(-1, 2), ctx)) * rep.xm[0]}, {zero, rep.qH(0, -1, ctx)}});
    else
        m = from_blocks<S>({{rep.qH(0, -1, ctx), zero}, {(-w * qp<S>(Exp(1, 2), ctx)) * rep.xp[0], rep.qH(0, 1, ctx)}});
    RMatrix<S> out;
    out.m = two_leg(m, 2, d);
    out.rep_i = "spin-1/2";
    out.rep_j = rep.label;
    out.variant = v;
    out.normalization = "lop";
    out.route = "lop";
    return out;
}

template <class S>
RMatrix<S> universal_R_sl2(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx,
                           int max_terms) {
    if (r1.rank() != 1 || r2.rank() != 1 || r1.hnorm != HNorm::Half || r2.hnorm != HNorm::Half)
        throw std::invalid_argument("universal_R_sl2 needs sl(2) spin representations");
    const S w = omega<S>(ctx);
    const auto& h1 = r1.weights[0];
    const auto& h2 = r2.weights[0];
    std::vector<S> k;
    for (const auto& a : h1)
        for (const auto& b : h2) k.push_back(qp<S>(2 * a * b, ctx));
    const Matrix<S> cartan = Matrix<S>::diagonal(k);

    const int limit = int(std::min(r1.dim, r2.dim));
    Matrix<S> series(r1.dim * r2.dim, r1.dim * r2.dim);
    int n = 0;
    for (; n < limit && (max_terms < 0 || n < max_terms); ++n) {
        Matrix<S> a = r1.qH(0, Exp(n), ctx) * matrix_power(r1.xp[0], n);
        Matrix<S> b = r2.qH(0, Exp(-n), ctx) * matrix_power(r2.xm[0], n);
        S c = ScalarTraits<S>::one();
        for (int k2 = 0; k2 < n; ++k2) c = c * w;
        c = c * qp<S>(Exp(-n * (n + 1), 2), ctx);
        const S f = qfactorial<S>(n, FactorialVariant::Bracket, ctx);
        Matrix<S> t = kron(a, b);
        for (auto& x : t.data())
            if (!ScalarTraits<S>::is_zero(x)) x = divide(c * x, f);
        series += t;
    }
    if (max_terms < 0 && n < limit) throw std::logic_error("series truncated early");
    // nilpotency guard: the next power must vanish
    if (max_terms < 0 && !matrix_power(r1.xp[0], limit).is_zero() && !matrix_power(r2.xm[0], limit).is_zero())
        throw std::domain_error("universal R series does not terminate");
    RMatrix<S> out;
    out.m = two_leg(cartan * series, r1.dim, r2.dim);
    out.rep_i = r1.label;
    out.rep_j = r2.label;
    out.variant = Variant::Plus;
    out.normalization = "universal";
    out.route = "universal";
    return out;
}

template <class S>
Matrix<S> antipode_R_sl2(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx) {
    const S w = omega<S>(ctx);
    const auto& h1 = r1.weights[0];
    const auto& h2 = r2.weights[0];
    const int limit = int(std::min(r1.dim, r2.dim));
    Matrix<S> out(r1.dim * r2.dim, r1.dim * r2.dim);
    const Matrix<S> sxm = (-qp<S>(1, ctx)) * r2.xm[0];
    for (int n = 0; n < limit; ++n) {
        S c = ScalarTraits<S>::one();
        for (int k2 = 0; k2 < n; ++k2) c = c * w;
        c = c * qp<S>(Exp(-n * (n + 1), 2), ctx);
        const S f = qfactorial<S>(n, FactorialVariant::Bracket, ctx);
        const Matrix<S> a = r1.qH(0, Exp(n), ctx) * matrix_power(r1.xp[0], n);
        const Matrix<S> b = matrix_power(sxm, n) * r2.qH(0, Exp(n), ctx);
        // q^(2 H x H) = sum over weights lambda of P_lambda x q^(2 lambda H); S maps P_mu -> P_-mu
        for (std::size_t li = 0; li < r1.dim; ++li)
            for (std::size_t mi = 0; mi < r2.dim; ++mi) {
                std::size_t neg = r2.dim;
                for (std::size_t t = 0; t < r2.dim; ++t)
                    if (h2[t] == -h2[mi]) neg = t;
                if (neg == r2.dim) throw std::domain_error("antipode: weight spectrum not symmetric");
                Matrix<S> pa = Matrix<S>::unit(r1.dim, li, li) * a;
                Matrix<S> pb = b * Matrix<S>::unit(r2.dim, neg, neg);
                Matrix<S> t = kron(pa, pb);
                const S cc = c * qp<S>(2 * h1[li] * h2[mi], ctx);
                for (auto& x : t.data())
                    if (!ScalarTraits<S>::is_zero(x)) x = divide(cc * x, f);
                out += t;
            }
    }
    out.with_legs({r1.dim, r2.dim});
    return out;
}

template <class S>
Matrix<S> build_L(const ModelSpace<S>& ms, Variant v) {
    const auto& ctx = ms.ctx();
    const S w = omega<S>(ctx);
    Matrix<S> zero(ms.dim(), ms.dim());
    Matrix<S> m;
    if (v == Variant::Plus)
        m = from_blocks<S>({{ms.qH(1), (w * qp<S>(Exp(-1, 2), ctx)) * ms.xm()}, {zero, ms.qH(-1)}});
    else
        m = from_blocks<S>({{ms.qH(-1), zero}, {(-w * qp<S>(Exp(1, 2), ctx)) * ms.xp(), ms.qH(1)}});
    return m;
}

template <class S>
Matrix<S> diagonal_inverse(const Matrix<S>& d) {
    Matrix<S> out(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && !ScalarTraits<S>::is_zero(d(i, j))) throw std::invalid_argument("matrix is not diagonal");
        if (!ScalarTraits<S>::invertible(d(i, i))) throw std::domain_error("singular diagonal entry");
        out(i, i) = ScalarTraits<S>::inv(d(i, i));
    }
    return out;
}

template <class S>
Matrix<S> reflection_L(const ModelSpace<S>& ms) {
    const Matrix<S> lp = build_L(ms, Variant::Plus);
    const Matrix<S> lm = build_L(ms, Variant::Minus);
    // [[A, 0], [C, B]]^-1 = [[A^-1, 0], [-B^-1 C A^-1, B^-1]]
    const Matrix<S> ai = diagonal_inverse(block(lm, 2, 0, 0));
    const Matrix<S> bi = diagonal_inverse(block(lm, 2, 1, 1));
    const Matrix<S> c = block(lm, 2, 1, 0);
    Matrix<S> zero(ms.dim(), ms.dim());
    const Matrix<S> lmi = from_blocks<S>({{ai, zero}, {-(bi * c * ai), bi}});
    Matrix<S> l = lp * lmi;
    l.with_legs({2, ms.dim()});
    return l;
}

template <class S>
RMatrix<S> fuse_R(const RMatrix<S>& r_lj, const RMatrix<S>& r_li, const Matrix<S>& v, const Matrix<S>& vd) {
    const auto lj = r_lj.m.leg_dims();
    const auto li = r_li.m.leg_dims();
    if (lj.size() != 2 || li.size() != 2 || lj[0] != li[0]) throw std::invalid_argument("fuse_R: leg mismatch");
    const std::size_t dl = lj[0], di = li[1], dj = lj[1];
    if (v.rows() != di * dj || vd.cols() != di * dj || vd.rows() != v.cols())
        throw std::invalid_argument("fuse_R: basis dimension mismatch");
    const std::size_t k = v.cols();
    if (residual_norm(vd * v, Matrix<S>::identity(k)) > 1e-10) throw std::invalid_argument("fuse_R: Vd is not a left inverse of V");
    const std::vector<std::size_t> dims{dl, di, dj};
    const Matrix<S> r13 = embed(r_lj.m, {0, 2}, dims);
    const Matrix<S> r12 = embed(r_li.m, {0, 1}, dims);
    const Matrix<S> il = Matrix<S>::identity(dl);
    Matrix<S> f = kron(il, vd) * (r13 * r12) * kron(il, v);
    f.with_legs({dl, k});
    RMatrix<S> out;
    out.m = f;
    out.rep_i = r_lj.rep_i;
    out.rep_j = "fused(" + r_li.rep_j + "," + r_lj.rep_j + ")";
    out.variant = r_lj.variant;
    out.normalization = "fused-unnormalized";
    out.route = "fusion";
    return out;
}

RMatrix<Numeric> normalize_reference(RMatrix<Numeric> r) {
    for (const auto& x : r.m.data())
        if (std::abs(x) > 1e-300) {
            const Numeric s = x;
            for (auto& y : r.m.data()) y /= s;
            r.raw_scale = s;
            r.normalization = "reference-entry";
            return r;
        }
    throw std::domain_error("normalize_reference: zero matrix");
}

template <class S>
double verify_YBE(const Matrix<S>& r12, const Matrix<S>& r13, const Matrix<S>& r23) {
    const auto a = r12.leg_dims();
    const auto b = r13.leg_dims();
    const auto c = r23.leg_dims();
    if (a.size() != 2 || b.size() != 2 || c.size() != 2 || a[0] != b[0] || a[1] != c[0] || b[1] != c[1])
        throw std::invalid_argument("verify_YBE: leg mismatch");
    const std::vector<std::size_t> dims{a[0], a[1], b[1]};
    const auto e12 = embed(r12, {0, 1}, dims);
    const auto e13 = embed(r13, {0, 2}, dims);
    const auto e23 = embed(r23, {1, 2}, dims);
    return residual_norm(e12 * e13 * e23, e23 * e13 * e12);
}

template <class S>
double verify_YBE(const Matrix<S>& r) {
    return verify_YBE(r, r, r);
}

namespace {

template <class S>
std::vector<std::size_t> aux_dims(const Matrix<S>& r, std::size_t model_dim) {
    const auto d = r.leg_dims();
    if (d.size() != 2) throw std::invalid_argument("R-matrix needs two legs");
    return {d[0], d[1], model_dim};
}

}  // namespace

template <class S>
double verify_RLL(const Matrix<S>& r, const Matrix<S>& l1, const Matrix<S>& l2, std::size_t model_dim) {
    const auto dims = aux_dims(r, model_dim);
    if (l1.rows() != dims[0] * model_dim || l2.rows() != dims[1] * model_dim)
        throw std::invalid_argument("verify_RLL: L-operator dimension mismatch");
    const auto e1 = embed(l1, {0, 2}, dims);
    const auto e2 = embed(l2, {1, 2}, dims);
    const auto er = embed(r, {0, 1}, dims);
    return residual_norm(er * e1 * e2, e2 * e1 * er);
}

template <class S>
double verify_reflection(const Matrix<S>& l, const Matrix<S>& rp, const Matrix<S>& rm, std::size_t model_dim) {
    const auto dims = aux_dims(rp, model_dim);
    const auto e1 = embed(l, {0, 2}, dims);
    const auto e2 = embed(l, {1, 2}, dims);
    const auto p = embed(rp, {0, 1}, dims);
    const auto m = embed(rm, {0, 1}, dims);
    const auto pi = embed(inverse(rp), {0, 1}, dims);
    const auto mi = embed(inverse(rm), {0, 1}, dims);
    return residual_norm(e1 * mi * e2 * m, pi * e2 * p * e1);
}

template <class S>
double verify_fusion_commutation(const Matrix<S>& p, const Matrix<S>& r_lj, const Matrix<S>& r_li) {
    const auto lj = r_lj.leg_dims();
    const auto li = r_li.leg_dims();
    if (lj.size() != 2 || li.size() != 2 || lj[0] != li[0] || p.rows() != li[1] * lj[1])
        throw std::invalid_argument("verify_fusion_commutation: dimension mismatch");
    const std::vector<std::size_t> dims{lj[0], li[1], lj[1]};
    Matrix<S> pp = p;
    pp.with_legs({li[1], lj[1]});
    const auto p23 = embed(pp, {1, 2}, dims);
    const auto rr = embed(r_lj, {0, 2}, dims) * embed(r_li, {0, 1}, dims);
    return residual_norm(p23 * rr, rr * p23);
}

template <class S>
double verify_crossing_chi(const Matrix<S>& r, const Matrix<S>& chi) {
    const auto d = r.leg_dims();
    if (d.size() != 2 || d[0] != chi.rows() || d[1] != chi.rows()) throw std::invalid_argument("verify_crossing: wrong dims");
    const auto ci = inverse(chi);
    const auto id = Matrix<S>::identity(d[0]);
    const double t1 = residual_norm(kron(chi, id) * r * kron(ci, id), partial_transpose(r, 0));
    const double t2 = residual_norm(kron(id, chi) * r * kron(id, ci), partial_transpose(r, 1));
    return std::max(t1, t2);
}

template <class S>
double verify_crossing_weyl(const Matrix<S>& r, const Matrix<S>& weyl) {
    const auto d = r.leg_dims();
    if (d.size() != 2 || d[0] != weyl.rows() || d[1] != weyl.rows()) throw std::invalid_argument("verify_crossing: wrong dims");
    const auto p = swap_operator<S>(d[0], d[1]);
    Matrix<S> rp = p * r * p;
    rp.with_legs(d);
    Matrix<S> rpi = inverse(rp);
    rpi.with_legs(d);
    const auto wi = inverse(weyl);
    const auto id = Matrix<S>::identity(d[0]);
    const double a = residual_norm(partial_transpose(rpi, 0), kron(weyl, id) * rp * kron(wi, id));
    const double b = residual_norm(kron(id, wi) * rpi * kron(id, weyl), partial_transpose(rp, 1));
    return std::max(a, b);
}

template <class S>
double verify_quasitriangular(const Matrix<S>& r, const Representation<S>& r1, const Representation<S>& r2,
                              const QContext& ctx) {
    const auto d12 = coproduct_rep(r1, r2, ctx);
    const auto d21 = coproduct_rep(r2, r1, ctx);
    const auto p12 = swap_operator<S>(r1.dim, r2.dim);  // V1 x V2 -> V2 x V1
    const auto p21 = swap_operator<S>(r2.dim, r1.dim);
    double res = 0.0;
    auto flip = [&](const Matrix<S>& x) { return p21 * x * p12; };
    res = std::max(res, residual_norm(r * d12.qH(0, 1, ctx), flip(d21.qH(0, 1, ctx)) * r));
    res = std::max(res, residual_norm(r * d12.xp[0], flip(d21.xp[0]) * r));
    res = std::max(res, residual_norm(r * d12.xm[0], flip(d21.xm[0]) * r));
    return res;
}

#define QTOP_INSTANTIATE(S)                                                                                        \
    template RMatrix<S> fundamental_R<S>(int, Variant, const QContext&);                                           \
    template RMatrix<S> lop_substituted_R<S>(Exp, Variant, const QContext&, Basis);                                \
    template RMatrix<S> universal_R_sl2<S>(const Representation<S>&, const Representation<S>&, const QContext&,    \
                                           int);                                                                   \
    template Matrix<S> antipode_R_sl2<S>(const Representation<S>&, const Representation<S>&, const QContext&);     \
    template Matrix<S> build_L<S>(const ModelSpace<S>&, Variant);                                                  \
    template Matrix<S> reflection_L<S>(const ModelSpace<S>&);                                                      \
    template RMatrix<S> fuse_R<S>(const RMatrix<S>&, const RMatrix<S>&, const Matrix<S>&, const Matrix<S>&);       \
    template double verify_YBE<S>(const Matrix<S>&);                                                               \
    template double verify_YBE<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&);                           \
    template double verify_RLL<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&, std::size_t);              \
    template double verify_reflection<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&, std::size_t);       \
    template double verify_fusion_commutation<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&);            \
    template double verify_crossing_chi<S>(const Matrix<S>&, const Matrix<S>&);                                    \
    template double verify_crossing_weyl<S>(const Matrix<S>&, const Matrix<S>&);                                   \
    template double verify_quasitriangular<S>(const Matrix<S>&, const Representation<S>&, const Representation<S>&, \
                                              const QContext&);                                                    \
    template Matrix<S> diagonal_inverse<S>(const Matrix<S>&);

QTOP_INSTANTIATE(Laurent)
QTOP_INSTANTIATE(Numeric)
#undef QTOP_INSTANTIATE

}  // namespace qtop
