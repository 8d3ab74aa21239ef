#include "qtop/topgen.hpp"

#include <cmath>

namespace qtop {

std::string kind_name(Kind k) { return k == Kind::Covariant ? "covariant" : "contravariant"; }

std::string normalizer_name(Normalizer n) {
    switch (n) {
        case Normalizer::Identity: return "identity";
        case Normalizer::InverseSqrtQnum: return "inverse-sqrt-qnum";
        case Normalizer::InverseQnum: return "inverse-qnum";
    }
    return "identity";
}

Normalizer parse_normalizer(const std::string& s) {
    if (s == "identity") return Normalizer::Identity;
    if (s == "inverse-sqrt-qnum") return Normalizer::InverseSqrtQnum;
    if (s == "inverse-qnum") return Normalizer::InverseQnum;
    throw std::invalid_argument("unknown normalizer '" + s + "'");
}

namespace {

template <class S>
S qp(Exp e, const QContext& ctx) {
    return ScalarTraits<S>::qpow(e, ctx);
}

template <class S>
Matrix<S> normalizer_diag(const ModelSpace<S>& ms, Normalizer f) {
    if (f == Normalizer::Identity) return ms.identity();
    if constexpr (ScalarTraits<S>::exact) {
        throw std::domain_error("normalizer " + normalizer_name(f) + " needs the numeric backend");
    } else {
        const auto& ctx = ms.ctx();
        if (f == Normalizer::InverseSqrtQnum)
            return ms.diag_p([&](int p) { return 1.0 / std::sqrt(qnum<S>(p, ctx)); });
        return ms.diag_p([&](int p) { return 1.0 / qnum<S>(p, ctx); });
    }
}

template <class S>
Matrix<S> with_legs(Matrix<S> m, std::size_t n, std::size_t d) {
    m.with_legs({n, d});
    return m;
}

template <class S>
std::vector<std::size_t> dims3(const Matrix<S>& r, std::size_t model) {
    const auto d = r.leg_dims();
    if (d.size() != 2) throw std::invalid_argument("R-matrix needs two legs");
    return {d[0], d[1], model};
}

template <class S>
Matrix<S> aux_kron(const Matrix<S>& a, std::size_t model) {
    return kron(a, Matrix<S>::identity(model));
}

// Generators lifted to (N x model).
template <class S>
std::vector<Matrix<S>> lifted_generators(std::size_t n, const ModelSpace<S>& ms) {
    const auto id = Matrix<S>::identity(n);
    return {kron(id, ms.qH(1)), kron(id, ms.xp()), kron(id, ms.xm())};
}

template <class S>
GeneratingMatrix<S> relabel(const GeneratingMatrix<S>& src, Matrix<S> m, Kind kind, const std::string& prov) {
    GeneratingMatrix<S> out = src;
    out.m = with_legs(std::move(m), src.n(), src.model_dim());
    out.kind = kind;
    out.provenance = prov;
    return out;
}

}  // namespace

template <class S>
GeneratingMatrix<S> build_W_half(const ModelSpace<S>& ms, Normalizer fn, HalfForm form) {
    const auto& ctx = ms.ctx();
    const Exp g = ms.gamma();
    const Matrix<S> f = normalizer_diag(ms, fn);
    const Matrix<S> down = ms.qp(-g);
    const Matrix<S> up = ms.qp(g);
    const bool lit = form == HalfForm::Literal;
    const S c11 = lit ? qp<S>(Exp(1, 2), ctx) : ScalarTraits<S>::one();
    const S c12 = lit ? -ScalarTraits<S>::one() : -qp<S>(Exp(-1, 2), ctx);
    const S c21 = lit ? qp<S>(Exp(-1, 2), ctx) : ScalarTraits<S>::one();
    const S c22 = lit ? ScalarTraits<S>::one() : qp<S>(Exp(1, 2), ctx);
    const Matrix<S> w11 = c11 * (ms.l1() * down * ms.dil2(Exp(1, 2)) * f);
    const Matrix<S> w12 = c12 * (ms.z2() * up * ms.dil1(Exp(-1, 2)) * f);
    const Matrix<S> w21 = c21 * (ms.l2() * down * ms.dil1(Exp(-1, 2)) * f);
    const Matrix<S> w22 = c22 * (ms.z1() * up * ms.dil2(Exp(1, 2)) * f);
    GeneratingMatrix<S> out;
    out.m = with_legs(from_blocks<S>({{w11, w12}, {w21, w22}}), 2, ms.dim());
    out.kind = Kind::Contravariant;
    out.rep = "spin-1/2";
    out.margin = 1;
    out.gamma = g;
    out.normalizer = normalizer_name(fn);
    out.provenance = lit ? "W-half literal" : "W-half";
    return out;
}

template <class S>
double verify_covariant(const GeneratingMatrix<S>& u, const Matrix<S>& lp, const Matrix<S>& lm, const Matrix<S>& rp,
                        const Matrix<S>& rm, const ModelSpace<S>& ms) {
    const auto dims = dims3(rp, ms.dim());
    if (dims[1] != u.n()) throw std::invalid_argument("verify_covariant: R and U rep mismatch");
    const auto cols = ms.margin_cols(dims[0] * dims[1], u.margin);
    const auto u2 = embed(u.m, {1, 2}, dims);
    double res = 0.0;
    for (auto [l, r] : {std::pair{&lp, &rp}, std::pair{&lm, &rm}}) {
        const auto l1 = embed(*l, {0, 2}, dims);
        const auto er = embed(*r, {0, 1}, dims);
        res = std::max(res, residual_norm_cols(Matrix<S>(l1 * u2), Matrix<S>(u2 * er * l1), cols));
    }
    return res;
}

template <class S>
double verify_contravariant(const GeneratingMatrix<S>& w, const Matrix<S>& lp, const Matrix<S>& lm,
                            const Matrix<S>& rp, const Matrix<S>& rm, const ModelSpace<S>& ms) {
    const auto dims = dims3(rp, ms.dim());
    if (dims[1] != w.n()) throw std::invalid_argument("verify_contravariant: R and W rep mismatch");
    const auto cols = ms.margin_cols(dims[0] * dims[1], w.margin);
    const auto w2 = embed(w.m, {1, 2}, dims);
    double res = 0.0;
    for (auto [l, r] : {std::pair{&lp, &rp}, std::pair{&lm, &rm}}) {
        const auto l1 = embed(*l, {0, 2}, dims);
        const auto eri = embed(inverse(*r), {0, 1}, dims);
        res = std::max(res, residual_norm_cols(Matrix<S>(l1 * w2), Matrix<S>(eri * w2 * l1), cols));
    }
    return res;
}

namespace {

// Max |a - b| restricted to rows of aux block i (i = row index) and margin columns.
template <class S>
double block_row_residual(const Matrix<S>& a, const Matrix<S>& b, std::size_t i, std::size_t model,
                          const std::vector<std::size_t>& cols) {
    double r = 0.0;
    for (std::size_t row = i * model; row < (i + 1) * model; ++row)
        for (auto c : cols) r = std::max(r, ScalarTraits<S>::diff(a(row, c), b(row, c)));
    return r;
}

}  // namespace

template <class S>
std::vector<double> covariant_components(const GeneratingMatrix<S>& u, const Representation<S>& rho,
                                         const ModelSpace<S>& ms) {
    const std::size_t n = u.n();
    if (rho.dim != n) throw std::invalid_argument("covariant_components: rep dimension mismatch");
    const auto& ctx = ms.ctx();
    const auto cols = ms.margin_cols(n, u.margin);
    const auto id = Matrix<S>::identity(n);
    const auto qh = kron(id, ms.qH(1));
    const auto qhi = kron(id, ms.qH(-1));
    const auto xp = kron(id, ms.xp());
    const auto xm = kron(id, ms.xm());
    const auto m = ms.dim();
    std::vector<std::pair<Matrix<S>, Matrix<S>>> rel;
    rel.emplace_back(qh * u.m * qhi, u.m * aux_kron(rho.qH(0, 1, ctx), m));
    rel.emplace_back(xp * u.m * qh - qp<S>(-1, ctx) * (qh * u.m * xp), u.m * aux_kron(rho.xp[0], m));
    rel.emplace_back(xm * u.m * qh - qp<S>(1, ctx) * (qh * u.m * xm), u.m * aux_kron(rho.xm[0], m));
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, b] : rel) out[i] = std::max(out[i], block_row_residual(a, b, i, m, cols));
    return out;
}

template <class S>
std::vector<double> contravariant_components(const GeneratingMatrix<S>& w, const Representation<S>& rho,
                                             const ModelSpace<S>& ms) {
    const std::size_t n = w.n();
    if (rho.dim != n) throw std::invalid_argument("contravariant_components: rep dimension mismatch");
    const auto& ctx = ms.ctx();
    const auto m = ms.dim();
    const auto id = Matrix<S>::identity(n);
    const auto qh = kron(id, ms.qH(1));
    const auto qhi = kron(id, ms.qH(-1));
    const auto xp = kron(id, ms.xp());
    const auto xm = kron(id, ms.xm());
    std::vector<std::pair<Matrix<S>, Matrix<S>>> rel;
    rel.emplace_back(qh * w.m * qhi, aux_kron(rho.qH(0, -1, ctx), m) * w.m);
    rel.emplace_back(xp * w.m * qh - qp<S>(-1, ctx) * (qh * w.m * xp),
                     (-qp<S>(-1, ctx)) * (aux_kron(rho.xp[0], m) * w.m));
    rel.emplace_back(xm * w.m * qh - qp<S>(1, ctx) * (qh * w.m * xm), (-qp<S>(1, ctx)) * (aux_kron(rho.xm[0], m) * w.m));
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto cols = ms.margin_cols(1, w.margin);
        std::vector<std::size_t> shifted;
        for (auto c : cols) shifted.push_back(k * m + c);
        for (const auto& [a, b] : rel) out[k] = std::max(out[k], residual_norm_cols(a, b, shifted));
    }
    return out;
}

template <class S>
GeneratingMatrix<S> keep_rows(const GeneratingMatrix<S>& g, const std::vector<std::size_t>& rows) {
    const std::size_t n = g.n(), m = g.model_dim();
    std::vector<bool> keep(n, false);
    for (auto r : rows) keep.at(r) = true;
    GeneratingMatrix<S> out = g;
    for (std::size_t i = 0; i < n; ++i)
        if (!keep[i])
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t c = 0; c < n * m; ++c) out.m(i * m + a, c) = ScalarTraits<S>::zero();
    return out;
}

template <class S>
GeneratingMatrix<S> keep_cols(const GeneratingMatrix<S>& g, const std::vector<std::size_t>& cols) {
    const std::size_t n = g.n(), m = g.model_dim();
    std::vector<bool> keep(n, false);
    for (auto c : cols) keep.at(c) = true;
    GeneratingMatrix<S> out = g;
    for (std::size_t k = 0; k < n; ++k)
        if (!keep[k])
            for (std::size_t r = 0; r < n * m; ++r)
                for (std::size_t a = 0; a < m; ++a) out.m(r, k * m + a) = ScalarTraits<S>::zero();
    return out;
}

template <class S>
Matrix<S> weyl_spin(Exp s, const QContext& ctx) {
    if (s < 0 || (s * 2).denominator() != 1) throw std::invalid_argument("weyl_spin: invalid spin");
    const long d = (s * 2).numerator() + 1;
    Matrix<S> w(d, d);
    for (long k = 1; k <= d; ++k) {
        const long m = d + 1 - k;  // 2s + 2 - k
        S v = qp<S>(s + 1 - m, ctx);
        w(m - 1, k - 1) = k % 2 ? -v : v;
    }
    return w;
}

template <class S>
Matrix<S> weyl_fundamental(int n, const QContext& ctx) {
    if (n < 2) throw std::invalid_argument("weyl_fundamental needs n >= 2");
    Matrix<S> w(n, n);
    for (int k = 1; k <= n; ++k) {
        const int m = n - k + 1;
        S v = qp<S>(Exp(2 * k - (n + 1), 2), ctx);
        w(m - 1, k - 1) = k % 2 ? -v : v;
    }
    return w;
}

template <class S>
Matrix<S> chi_matrix(std::size_t n) {
    Matrix<S> c(n, n);
    for (std::size_t k = 0; k < n; ++k) c(n - 1 - k, k) = ScalarTraits<S>::one();
    return c;
}

template <class S>
Matrix<S> aux_transpose(const Matrix<S>& g) {
    const auto d = g.leg_dims();
    if (d.size() != 2) throw std::invalid_argument("aux_transpose: missing leg structure");
    return partial_transpose(g, 0);
}

template <class S>
GeneratingMatrix<S> convert_contra_to_co(const GeneratingMatrix<S>& w, const Matrix<S>& weyl) {
    if (w.kind != Kind::Contravariant) throw std::invalid_argument("convert_contra_to_co: input must be contravariant");
    if (weyl.rows() != w.n()) throw std::invalid_argument("convert_contra_to_co: dimension mismatch");
    return relabel(w, aux_transpose(w.m) * aux_kron(weyl, w.model_dim()), Kind::Covariant, "W^t Weyl");
}

template <class S>
GeneratingMatrix<S> convert_co_to_contra(const GeneratingMatrix<S>& u, const Matrix<S>& weyl) {
    if (u.kind != Kind::Covariant) throw std::invalid_argument("convert_co_to_contra: input must be covariant");
    if (weyl.rows() != u.n()) throw std::invalid_argument("convert_co_to_contra: dimension mismatch");
    return relabel(u, aux_kron(transpose(weyl), u.model_dim()) * aux_transpose(u.m), Kind::Contravariant, "Weyl^t U^t");
}

template <class S>
GeneratingMatrix<S> chi_transform(const GeneratingMatrix<S>& g) {
    const auto chi = aux_kron(chi_matrix<S>(g.n()), g.model_dim());
    if (g.kind == Kind::Covariant) return relabel(g, chi * aux_transpose(g.m), g.kind, "chi U^t");
    return relabel(g, aux_transpose(g.m) * chi, g.kind, "W^t chi");
}

template <class S>
double verify_hat(const GeneratingMatrix<S>& g, const Matrix<S>& lp, const Matrix<S>& lm, const Matrix<S>& rp,
                  const Matrix<S>& rm, const ModelSpace<S>& ms) {
    const auto dims = dims3(rp, ms.dim());
    const auto cols = ms.margin_cols(dims[0] * dims[1], g.margin);
    const auto g2 = embed(g.m, {1, 2}, dims);
    double res = 0.0;
    for (auto [l, r] : {std::pair{&lp, &rp}, std::pair{&lm, &rm}}) {
        const auto l1 = embed(*l, {0, 2}, dims);
        if (g.kind == Kind::Covariant) {
            const auto er = embed(*r, {0, 1}, dims);
            res = std::max(res, residual_norm_cols(Matrix<S>(l1 * g2), Matrix<S>(er * g2 * l1), cols));
        } else {
            const auto eri = embed(inverse(*r), {0, 1}, dims);
            res = std::max(res, residual_norm_cols(Matrix<S>(l1 * g2), Matrix<S>(g2 * eri * l1), cols));
        }
    }
    return res;
}

template <class S>
double scalar_residual(const Matrix<S>& z, std::size_t n, const ModelSpace<S>& ms, int margin) {
    if (z.rows() != n * ms.dim()) throw std::invalid_argument("scalar_residual: dimension mismatch");
    const auto cols = ms.margin_cols(n, margin);
    double res = 0.0;
    for (const auto& g : lifted_generators(n, ms)) res = std::max(res, residual_norm_cols(Matrix<S>(g * z), Matrix<S>(z * g), cols));
    return res;
}

template <class S>
Matrix<S> weyl_sandwich_U(const GeneratingMatrix<S>& u, const Matrix<S>& weyl) {
    return u.m * aux_kron(transpose(weyl), u.model_dim()) * aux_transpose(u.m);
}

template <class S>
Matrix<S> weyl_sandwich_W(const GeneratingMatrix<S>& w, const Matrix<S>& weyl) {
    return aux_transpose(w.m) * aux_kron(weyl, w.model_dim()) * w.m;
}

template <class S>
GeneratingMatrix<S> fuse_generating(const GeneratingMatrix<S>& a, const GeneratingMatrix<S>& b, const Matrix<S>& v,
                                    const Matrix<S>& vd, const Matrix<S>& f, const ModelSpace<S>& ms) {
    if (a.kind != b.kind) throw std::invalid_argument("fuse_generating: kinds differ");
    const std::size_t m = ms.dim(), da = a.n(), db = b.n();
    if (v.rows() != da * db || vd.cols() != da * db || vd.rows() != v.cols())
        throw std::invalid_argument("fuse_generating: basis dimension mismatch");
    if (f.rows() != m) throw std::invalid_argument("fuse_generating: F dimension mismatch");
    for (const auto& g : {ms.qH(1), ms.xp(), ms.xm()})
        if (residual_norm(Matrix<S>(g * f), Matrix<S>(f * g)) > 1e-12)
            throw std::invalid_argument("fuse_generating: F does not commute with the generators");
    const std::vector<std::size_t> dims{da, db, m};
    const auto a1 = embed(a.m, {0, 2}, dims);
    const auto b2 = embed(b.m, {1, 2}, dims);
    const auto ff = kron(Matrix<S>::identity(da * db), f);
    const auto vv = kron(v, Matrix<S>::identity(m));
    const auto vvd = kron(vd, Matrix<S>::identity(m));
    Matrix<S> core = a.kind == Kind::Covariant ? Matrix<S>(ff * b2 * a1) : Matrix<S>(a1 * b2 * ff);
    GeneratingMatrix<S> out;
    out.m = with_legs(Matrix<S>(vvd * core * vv), v.cols(), m);
    out.kind = a.kind;
    out.rep = "fused(" + a.rep + "," + b.rep + ")";
    out.margin = a.margin + b.margin;
    out.gamma = a.gamma;
    out.normalizer = a.normalizer;
    out.provenance = "fusion";
    return out;
}

template <class S>
Invariant<S> invariant_qdet(const GeneratingMatrix<S>& g, const Matrix<S>& p, const Matrix<S>& f,
                            const ModelSpace<S>& ms) {
    const std::size_t m = ms.dim(), d = g.n();
    if (p.rows() != d * d) throw std::invalid_argument("invariant_qdet: projector dimension mismatch");
    const std::vector<std::size_t> dims{d, d, m};
    const auto g1 = embed(g.m, {0, 2}, dims);
    const auto g2 = embed(g.m, {1, 2}, dims);
    const auto ff = kron(Matrix<S>::identity(d * d), f);
    const auto pp = kron(p, Matrix<S>::identity(m));
    Invariant<S> out;
    out.op = g.kind == Kind::Covariant ? Matrix<S>(ff * g2 * g1 * pp) : Matrix<S>(pp * g1 * g2 * ff);
    out.residual = scalar_residual(out.op, d * d, ms, 2 * g.margin);
    return out;
}

#define QTOP_INSTANTIATE(S)                                                                                        \
    template GeneratingMatrix<S> build_W_half<S>(const ModelSpace<S>&, Normalizer, HalfForm);                      \
    template double verify_covariant<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&,             \
                                        const Matrix<S>&, const Matrix<S>&, const ModelSpace<S>&);                  \
    template double verify_contravariant<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&,         \
                                            const Matrix<S>&, const Matrix<S>&, const ModelSpace<S>&);              \
    template std::vector<double> covariant_components<S>(const GeneratingMatrix<S>&, const Representation<S>&,      \
                                                         const ModelSpace<S>&);                                     \
    template std::vector<double> contravariant_components<S>(const GeneratingMatrix<S>&, const Representation<S>&,  \
                                                             const ModelSpace<S>&);                                 \
    template GeneratingMatrix<S> keep_rows<S>(const GeneratingMatrix<S>&, const std::vector<std::size_t>&);         \
    template GeneratingMatrix<S> keep_cols<S>(const GeneratingMatrix<S>&, const std::vector<std::size_t>&);         \
    template Matrix<S> weyl_spin<S>(Exp, const QContext&);                                                          \
    template Matrix<S> weyl_fundamental<S>(int, const QContext&);                                                   \
    template Matrix<S> chi_matrix<S>(std::size_t);                                                                  \
    template Matrix<S> aux_transpose<S>(const Matrix<S>&);                                                          \
    template GeneratingMatrix<S> convert_contra_to_co<S>(const GeneratingMatrix<S>&, const Matrix<S>&);             \
    template GeneratingMatrix<S> convert_co_to_contra<S>(const GeneratingMatrix<S>&, const Matrix<S>&);             \
    template GeneratingMatrix<S> chi_transform<S>(const GeneratingMatrix<S>&);                                      \
    template double verify_hat<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&, const Matrix<S>&, \
                                  const Matrix<S>&, const ModelSpace<S>&);                                          \
    template double scalar_residual<S>(const Matrix<S>&, std::size_t, const ModelSpace<S>&, int);                   \
    template Matrix<S> weyl_sandwich_U<S>(const GeneratingMatrix<S>&, const Matrix<S>&);                            \
    template Matrix<S> weyl_sandwich_W<S>(const GeneratingMatrix<S>&, const Matrix<S>&);                            \
    template GeneratingMatrix<S> fuse_generating<S>(const GeneratingMatrix<S>&, const GeneratingMatrix<S>&,         \
                                                    const Matrix<S>&, const Matrix<S>&, const Matrix<S>&,           \
                                                    const ModelSpace<S>&);                                          \
    template Invariant<S> invariant_qdet<S>(const GeneratingMatrix<S>&, const Matrix<S>&, const Matrix<S>&,         \
                                            const ModelSpace<S>&);

QTOP_INSTANTIATE(Laurent)
QTOP_INSTANTIATE(Numeric)
#undef QTOP_INSTANTIATE

}  // namespace qtop
