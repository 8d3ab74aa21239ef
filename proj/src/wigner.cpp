#include "qtop/wigner.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace qtop {

using NM = Matrix<Numeric>;

namespace {

constexpr double kZero = 1e-12;

bool half_integer(Exp x) { return x >= 0 && (x * 2).denominator() == 1; }
long twice(Exp x) { return (x * 2).numerator(); }
std::size_t dim_of(Exp j) { return static_cast<std::size_t>(twice(j) + 1); }

// Column-compressed copy of a dense operator.
struct Sparse {
    std::vector<std::vector<std::pair<std::size_t, Numeric>>> cols;

    explicit Sparse(const NM& m) : cols(m.cols()) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != Numeric{}) cols[j].emplace_back(i, m(i, j));
    }
    void apply_add(const Numeric* v, Numeric s, Numeric* out) const {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (v[j] == Numeric{}) continue;
            const Numeric x = s * v[j];
            for (const auto& [i, a] : cols[j]) out[i] += a * x;
        }
    }
};

using Entries = std::vector<std::vector<Sparse>>;

Entries sparse_entries(const GeneratingMatrix<Numeric>& g) {
    Entries e(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j) e[i].emplace_back(g.entry(i, j));
    return e;
}

}  // namespace

bool in_cg_range(Exp j1, Exp j2, Exp j) {
    if (!half_integer(j1) || !half_integer(j2) || !half_integer(j)) return false;
    const Exp lo = j1 > j2 ? j1 - j2 : j2 - j1;
    return j >= lo && j <= j1 + j2 && (j1 + j2 - j).denominator() == 1;
}

std::vector<Exp> cg_channels(Exp j1, Exp j2) {
    if (!half_integer(j1) || !half_integer(j2)) throw std::invalid_argument("cg_channels: invalid spin");
    std::vector<Exp> out;
    for (Exp j = j1 + j2; j >= (j1 > j2 ? j1 - j2 : j2 - j1); j -= 1) out.push_back(j);
    return out;
}

CGMap build_cg(Exp j1, Exp j2, Exp j, const QContext& ctx) {
    if (!in_cg_range(j1, j2, j)) throw std::invalid_argument("build_cg: j outside the Clebsch-Gordan range");
    if (ctx.backend != Backend::Numeric) throw std::domain_error("build_cg: unitary basis needs the numeric backend");
    auto r1 = spin_rep<Numeric>(j1, Basis::Unitary, ctx);
    auto r2 = spin_rep<Numeric>(j2, Basis::Unitary, ctx);
    auto d = coproduct_rep(r1, r2, ctx);
    const std::size_t n = d.dim;

    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k)
        if (d.weights[0][k] == j) cols.push_back(k);
    NM ker = null_space(select_cols(d.xp[0], cols));
    if (ker.cols() != 1) throw std::runtime_error("build_cg: highest-weight space is not one-dimensional");

    std::vector<Numeric> v(n);
    double norm = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        v[cols[k]] = ker(k, 0);
        norm += std::norm(ker(k, 0));
    }
    Numeric phase = 1.0 / std::sqrt(norm);
    for (const auto& x : v)
        if (std::abs(x) > kZero) {
            phase *= std::conj(x) / std::abs(x);
            break;
        }
    for (auto& x : v) x *= phase;

    const std::size_t dk = dim_of(j);
    CGMap cg;
    cg.j1 = j1;
    cg.j2 = j2;
    cg.j = j;
    cg.cp = NM(n, dk);
    for (std::size_t k = 0; k < dk; ++k) {
        for (std::size_t i = 0; i < n; ++i) cg.cp(i, k) = v[i];
        if (k + 1 == dk) break;
        // m = j - k; X- |j,m> = sqrt([j+m][j-m+1]) |j,m-1>
        const Numeric c = std::sqrt(qnum<Numeric>(twice(j) - long(k), ctx) * qnum<Numeric>(long(k) + 1, ctx));
        std::vector<Numeric> next(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) next[a] += d.xm[0](a, b) * v[b];
        for (auto& x : next) x /= c;
        v = std::move(next);
    }
    cg.c = adjoint(cg.cp);
    return cg;
}

double verify_cg_intertwiner(const CGMap& cg, const QContext& ctx) {
    auto r1 = spin_rep<Numeric>(cg.j1, Basis::Unitary, ctx);
    auto r2 = spin_rep<Numeric>(cg.j2, Basis::Unitary, ctx);
    auto d = coproduct_rep(r1, r2, ctx);
    auto rk = spin_rep<Numeric>(cg.j, Basis::Unitary, ctx);
    double r = residual_norm(NM(cg.c * d.qH(0, 1, ctx)), NM(rk.qH(0, 1, ctx) * cg.c));
    r = std::max(r, residual_norm(NM(cg.c * d.xp[0]), NM(rk.xp[0] * cg.c)));
    r = std::max(r, residual_norm(NM(cg.c * d.xm[0]), NM(rk.xm[0] * cg.c)));
    return r;
}

double verify_cg_completeness(Exp j1, Exp j2, const QContext& ctx) {
    const std::size_t n = dim_of(j1) * dim_of(j2);
    std::vector<CGMap> maps;
    for (Exp j : cg_channels(j1, j2)) maps.push_back(build_cg(j1, j2, j, ctx));
    NM sum(n, n);
    for (const auto& m : maps) sum += m.cp * m.c;
    double r = residual_norm(sum, NM::identity(n));
    for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = 0; b < maps.size(); ++b) {
            NM p = maps[a].c * maps[b].cp;
            r = std::max(r, residual_norm(p, a == b ? NM::identity(p.rows()) : NM(p.rows(), p.cols())));
        }
    return r;
}

double verify_cg_fusion(const CGMap& cg, const NM& r_lj, const NM& r_li, const NM& r_lk) {
    const std::size_t di = dim_of(cg.j1), dj = dim_of(cg.j2), dk = dim_of(cg.j);
    if (r_lk.rows() % dk) throw std::invalid_argument("verify_cg_fusion: dimension mismatch");
    const std::size_t dl = r_lk.rows() / dk;
    if (r_li.rows() != dl * di || r_lj.rows() != dl * dj) throw std::invalid_argument("verify_cg_fusion: dimension mismatch");
    const std::vector<std::size_t> dims{dl, di, dj};
    NM r1312 = embed(r_lj, {0, 2}, dims) * embed(r_li, {0, 1}, dims);
    NM icp = kron(NM::identity(dl), cg.cp);
    NM ic = kron(NM::identity(dl), cg.c);
    double r = residual_norm(NM(r1312 * icp), NM(icp * r_lk));
    return std::max(r, residual_norm(NM(ic * r1312), NM(r_lk * ic)));
}

double basis_action_check(Exp k, const ModelSpace<Numeric>& ms, const NM& lp, const NM& lm) {
    if (twice(k) > ms.D()) throw std::domain_error("basis_action_check: block exceeds the model degree");
    NM iv = kron(NM::identity(2), model_block(k, ms));
    double r = 0.0;
    for (auto [l, v] : {std::pair{&lp, Variant::Plus}, std::pair{&lm, Variant::Minus}}) {
        auto rk = lop_substituted_R<Numeric>(k, v, ms.ctx(), Basis::Unitary).m;
        r = std::max(r, residual_norm(NM(*l * iv), NM(iv * rk)));
    }
    return r;
}

namespace {

TensorOperator entries_operator(const GeneratingMatrix<Numeric>& g, std::size_t fixed, bool by_row) {
    if (fixed >= g.n()) throw std::out_of_range("tensor operator index out of range");
    auto e = std::make_shared<Entries>(sparse_entries(g));
    TensorOperator t;
    t.rank = Exp(long(g.n()) - 1, 2);
    t.contragredient = !by_row;
    t.apply = [e, fixed, by_row](std::size_t c, const std::vector<Numeric>& v) {
        const Sparse& s = by_row ? (*e)[fixed][c] : (*e)[c][fixed];
        std::vector<Numeric> out(v.size());
        s.apply_add(v.data(), 1.0, out.data());
        return out;
    };
    return t;
}

}  // namespace

TensorOperator tensor_row(const GeneratingMatrix<Numeric>& u, std::size_t row) {
    if (u.kind != Kind::Covariant) throw std::invalid_argument("tensor_row: covariant matrix expected");
    return entries_operator(u, row, true);
}

TensorOperator tensor_col(const GeneratingMatrix<Numeric>& w, std::size_t col) {
    if (w.kind != Kind::Contravariant) throw std::invalid_argument("tensor_col: contravariant matrix expected");
    return entries_operator(w, col, false);
}

TensorOperator fused_row(const GeneratingMatrix<Numeric>& u, int copies, std::size_t row, const QContext& ctx) {
    if (u.kind != Kind::Covariant || u.n() != 2) throw std::invalid_argument("fused_row: spin-1/2 covariant matrix expected");
    if (copies < 0 || std::size_t(row) > std::size_t(copies)) throw std::out_of_range("fused_row: bad row or copy count");
    // top-channel embedding of the spin copies/2 rep into (1/2)^copies
    NM v = NM::identity(1);
    for (int k = 1; k <= copies; ++k) {
        if (k == 1) {
            v = NM::identity(2);
            continue;
        }
        v = kron(v, NM::identity(2)) * build_cg(Exp(k - 1, 2), Exp(1, 2), Exp(k, 2), ctx).cp;
    }
    auto e = std::make_shared<Entries>(sparse_entries(u));
    auto vm = std::make_shared<NM>(v);
    const std::size_t dim = u.model_dim();
    TensorOperator t;
    t.rank = Exp(copies, 2);
    t.apply = [e, vm, copies, row, dim](std::size_t c, const std::vector<Numeric>& x) {
        const std::size_t aux = vm->rows();
        std::vector<Numeric> psi(aux * dim);
        for (std::size_t a = 0; a < aux; ++a)
            for (std::size_t i = 0; i < dim; ++i) psi[a * dim + i] = (*vm)(a, c) * x[i];
        // leg 1 (slowest index) acts first
        for (int leg = 0; leg < copies; ++leg) {
            const std::size_t stride = std::size_t(1) << (copies - 1 - leg);
            std::vector<Numeric> next(aux * dim);
            for (std::size_t a = 0; a < aux; ++a) {
                const std::size_t bit = (a / stride) & 1;
                for (std::size_t b = 0; b < 2; ++b) {
                    const std::size_t src = a - bit * stride + b * stride;
                    (*e)[bit][b].apply_add(&psi[src * dim], 1.0, &next[a * dim]);
                }
            }
            psi = std::move(next);
        }
        std::vector<Numeric> out(dim);
        for (std::size_t a = 0; a < aux; ++a) {
            const Numeric w = std::conj((*vm)(a, row));
            if (w == Numeric{}) continue;
            for (std::size_t i = 0; i < dim; ++i) out[i] += w * psi[a * dim + i];
        }
        return out;
    };
    return t;
}

ReducedElement reduced_matrix_elements(const TensorOperator& t, Exp j_in, Exp j_out, const ModelSpace<Numeric>& ms) {
    if (!half_integer(j_in) || !half_integer(j_out)) throw std::invalid_argument("reduced_matrix_elements: invalid spin");
    if (twice(j_in) > ms.D() || twice(j_out) > ms.D())
        throw std::domain_error("reduced_matrix_elements: block exceeds the model degree");
    const std::size_t dr = dim_of(t.rank), din = dim_of(j_in), dout = dim_of(j_out);
    NM vin = model_block(j_in, ms);
    NM dual = model_dual_block(j_out, ms);

    ReducedElement re;
    re.j_in = j_in;
    re.j_out = j_out;
    re.elements = NM(dout, din * dr);
    std::vector<Numeric> v(ms.dim());
    for (std::size_t k = 0; k < din; ++k) {
        for (std::size_t i = 0; i < ms.dim(); ++i) v[i] = vin(i, k);
        for (std::size_t c = 0; c < dr; ++c) {
            auto out = t.apply(c, v);
            for (std::size_t m = 0; m < dout; ++m) {
                Numeric s{};
                for (std::size_t i = 0; i < ms.dim(); ++i)
                    if (dual(m, i) != Numeric{}) s += dual(m, i) * out[i];
                re.elements(m, k * dr + c) = s;
                re.block_max = std::max(re.block_max, std::abs(s));
            }
        }
    }
    re.allowed = in_cg_range(j_in, t.rank, j_out);
    re.structural_zero = re.block_max <= kZero;
    if (!re.allowed || re.structural_zero) return re;

    re.cgc = build_cg(j_in, t.rank, j_out, ms.ctx()).c;
    if (t.contragredient)
        re.cgc = re.cgc * kron(NM::identity(din), inverse(weyl_spin<Numeric>(t.rank, ms.ctx())));
    std::size_t ref = 0;
    for (std::size_t k = 0; k < re.cgc.data().size(); ++k)
        if (std::abs(re.cgc.data()[k]) > std::abs(re.cgc.data()[ref])) ref = k;
    re.reduced = re.elements.data()[ref] / re.cgc.data()[ref];
    if (std::abs(re.reduced) <= kZero) {
        re.zero_mismatch = re.block_max;
        return re;
    }
    for (std::size_t k = 0; k < re.cgc.data().size(); ++k) {
        const Numeric c = re.cgc.data()[k], x = re.elements.data()[k];
        if (std::abs(c) > kZero)
            re.deviation = std::max(re.deviation, std::abs(x / (c * re.reduced) - 1.0));
        else
            re.zero_mismatch = std::max(re.zero_mismatch, std::abs(x / re.reduced));
    }
    return re;
}

double wigner_eckart_residual(const TensorOperator& t, Exp max_j, const ModelSpace<Numeric>& ms) {
    if (twice(max_j) + twice(t.rank) > ms.D()) throw std::domain_error("wigner_eckart_residual: model too small");
    double r = 0.0;
    for (Exp j_in = 0; j_in <= max_j; j_in += Exp(1, 2))
        for (Exp j_out = 0; twice(j_out) <= ms.D(); j_out += Exp(1, 2)) {
            auto re = reduced_matrix_elements(t, j_in, j_out, ms);
            r = std::max(r, re.allowed ? std::max(re.deviation, re.zero_mismatch) : re.block_max);
        }
    return r;
}

std::vector<CGCChannel> cgc_table(Exp j1, Exp j2, const QContext& ctx) {
    if (!half_integer(j1) || !half_integer(j2)) throw std::invalid_argument("cgc_table: invalid spin");
    const int copies = int(twice(j2));
    const int D = int(twice(j1)) + copies + 1;
    ModelSpace<Numeric> ms(D, 0, ctx);
    auto w = build_W_half(ms, Normalizer::InverseSqrtQnum);
    auto u = convert_contra_to_co(w, weyl_spin<Numeric>(Exp(1, 2), ctx));
    std::vector<CGCChannel> out;
    const std::size_t d2 = dim_of(j2);
    for (Exp j : cg_channels(j1, j2)) {
        // row r carries r raising factors, shifting the degree by 2r - copies
        const long guess = (j - j1 + j2).numerator();
        ReducedElement best = reduced_matrix_elements(fused_row(u, copies, std::size_t(guess), ctx), j1, j, ms);
        for (int r = 0; r <= copies && best.structural_zero; ++r) {
            if (r == guess) continue;
            auto re = reduced_matrix_elements(fused_row(u, copies, std::size_t(r), ctx), j1, j, ms);
            if (re.block_max > best.block_max) best = std::move(re);
        }
        if (best.structural_zero || best.cgc.rows() == 0) throw std::runtime_error("cgc_table: no fused row reaches the channel");
        CGCChannel ch;
        ch.j = j;
        ch.reduced = best.reduced;
        for (std::size_t k = 0; k < best.cgc.rows(); ++k)
            for (std::size_t col = 0; col < best.cgc.cols(); ++col) {
                const Exp m = j - long(k), m1 = j1 - long(col / d2), m2 = j2 - long(col % d2);
                const double direct = best.cgc(k, col).real();
                const double extracted = (best.elements(k, col) / best.reduced).real();
                ch.agreement = std::max(ch.agreement, std::abs(best.cgc(k, col) - best.elements(k, col) / best.reduced));
                if (m == m1 + m2) ch.entries.push_back({m1, m2, m, direct, extracted});
            }
        out.push_back(std::move(ch));
    }
    return out;
}

double classical_cgc(Exp j1, Exp m1, Exp j2, Exp m2, Exp j, Exp m) {
    if (m != m1 + m2 || !in_cg_range(j1, j2, j)) return 0.0;
    auto f = [](Exp x) { return std::tgamma(boost::rational_cast<double>(x) + 1.0); };
    const double pre = std::sqrt((2 * boost::rational_cast<double>(j) + 1) * f(j + j1 - j2) * f(j - j1 + j2) *
                                 f(j1 + j2 - j) / f(j1 + j2 + j + 1) * f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) *
                                 f(j2 - m2) * f(j2 + m2));
    double sum = 0.0;
    for (long k = 0;; ++k) {
        const Exp a = j1 + j2 - j - k, b = j1 - m1 - k, c = j2 + m2 - k, d = j - j2 + m1 + k, e = j - j1 - m2 + k;
        if (a < 0 || b < 0 || c < 0) break;
        if (d < 0 || e < 0) continue;
        sum += (k % 2 ? -1.0 : 1.0) / (f(Exp(k)) * f(a) * f(b) * f(c) * f(d) * f(e));
    }
    return pre * sum;
}

}  // namespace qtop
