#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtop/rfactory.hpp"

using namespace qtop;
using LM = Matrix<Laurent>;
using NM = Matrix<Numeric>;

namespace {

Laurent qm(Exp e) { return Laurent::monomial(e); }
const Laurent W = qm(1) - qm(-1);

LM hand_r_plus() {
    LM r(4, 4);
    r(0, 0) = qm(1);
    r(1, 1) = Laurent(1);
    r(2, 2) = Laurent(1);
    r(3, 3) = qm(1);
    r(1, 2) = W;
    return qm(Exp(-1, 2)) * r;
}

LM hand_r_minus() {
    LM r(4, 4);
    r(0, 0) = qm(-1);
    r(1, 1) = Laurent(1);
    r(2, 2) = Laurent(1);
    r(3, 3) = qm(-1);
    r(2, 1) = -W;
    return qm(Exp(1, 2)) * r;
}

NM perturb(NM m, std::size_t i, std::size_t j, double eps) {
    m(i, j) += eps;
    return m;
}

// Spin-1 and spin-0 weight vectors in (1/2) x (1/2), unitary basis, coproduct X -> X (x) q^H + q^-H (x) X.
NM symmetric_basis(double q) {
    const double s2 = std::sqrt(q + 1 / q);
    NM v(4, 3);
    v(0, 0) = 1;
    v(1, 1) = std::pow(q, -0.5) / s2;
    v(2, 1) = std::pow(q, 0.5) / s2;
    v(3, 2) = 1;
    return v;
}

NM singlet_basis(double q) {
    const double s2 = std::sqrt(q + 1 / q);
    NM v(4, 1);
    v(1, 0) = std::pow(q, 0.5) / s2;
    v(2, 0) = -std::pow(q, -0.5) / s2;
    return v;
}

}  // namespace

TEST_CASE("fundamental R for n = 2 matches the printed matrices") {
    auto ctx = QContext::exact(2);
    auto rp = fundamental_R<Laurent>(2, Variant::Plus, ctx);
    auto rm = fundamental_R<Laurent>(2, Variant::Minus, ctx);
    CHECK(residual_norm(rp.m, hand_r_plus()) == 0.0);
    CHECK(residual_norm(rm.m, hand_r_minus()) == 0.0);
    CHECK(rp.m.legs() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("fundamental R for n = 3 entries") {
    auto ctx = QContext::exact(6);
    auto r = fundamental_R<Laurent>(3, Variant::Plus, ctx).m;
    const Laurent pre = qm(Exp(-1, 3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(r(i * 3 + j, i * 3 + j) == (i == j ? pre * qm(1) : pre));
            if (i < j) CHECK(r(i * 3 + j, j * 3 + i) == pre * W);
            if (i > j) CHECK(r(i * 3 + j, j * 3 + i).is_zero());
        }
}

TEST_CASE("R- is P R+^-1 P") {
    for (int n = 2; n <= 4; ++n) {
        auto ctx = QContext::exact(2 * n);
        auto rp = fundamental_R<Laurent>(n, Variant::Plus, ctx).m;
        auto rm = fundamental_R<Laurent>(n, Variant::Minus, ctx).m;
        auto p = swap_operator<Laurent>(n, n);
        CHECK(residual_norm(LM(p * inverse(rp) * p), rm) == 0.0);
    }
}

TEST_CASE("three routes agree at (1/2, 1/2)") {
    auto ctx = QContext::exact(2);
    auto h = spin_rep<Laurent>(Exp(1, 2), Basis::Integral, ctx);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        auto f = fundamental_R<Laurent>(2, v, ctx).m;
        CHECK(residual_norm(lop_substituted_R<Laurent>(Exp(1, 2), v, ctx, Basis::Integral).m, f) == 0.0);
    }
    CHECK(residual_norm(universal_R_sl2(h, h, ctx).m, hand_r_plus()) == 0.0);
    auto lead = universal_R_sl2(h, h, ctx, 1).m;
    CHECK(residual_norm(lead, LM::diagonal({qm(Exp(1, 2)), qm(Exp(-1, 2)), qm(Exp(-1, 2)), qm(Exp(1, 2))})) == 0.0);
}

TEST_CASE("spin-1 L-operator substitution") {
    auto ctx = QContext::exact(2);
    auto one = spin_rep<Laurent>(1, Basis::Integral, ctx);
    auto rp = lop_substituted_R<Laurent>(1, Variant::Plus, ctx, Basis::Integral).m;
    auto rm = lop_substituted_R<Laurent>(1, Variant::Minus, ctx, Basis::Integral).m;
    CHECK(rp.legs() == std::vector<std::size_t>{2, 3});
    CHECK(block(rp, 2, 1, 0).is_zero());
    CHECK(residual_norm(block(rp, 2, 0, 1), LM((W * qm(Exp(-1, 2))) * one.xm[0])) == 0.0);
    CHECK(residual_norm(block(rm, 2, 1, 0), LM((-W * qm(Exp(1, 2))) * one.xp[0])) == 0.0);
    CHECK(block(rm, 2, 0, 1).is_zero());
    auto h = spin_rep<Laurent>(Exp(1, 2), Basis::Integral, ctx);
    CHECK(residual_norm(universal_R_sl2(h, one, ctx).m, rp) == 0.0);

    auto nctx = QContext::numeric(1.2);
    auto hn = spin_rep<Numeric>(Exp(1, 2), Basis::Unitary, nctx);
    auto on = spin_rep<Numeric>(1, Basis::Unitary, nctx);
    CHECK(residual_norm(universal_R_sl2(hn, on, nctx).m, lop_substituted_R<Numeric>(1, Variant::Plus, nctx, Basis::Unitary).m) <
          1e-12);
}

TEST_CASE("quasitriangularity and antipode in representations") {
    auto ctx = QContext::exact(2);
    auto h = spin_rep<Laurent>(Exp(1, 2), Basis::Integral, ctx);
    auto one = spin_rep<Laurent>(1, Basis::Integral, ctx);
    auto th = spin_rep<Laurent>(Exp(3, 2), Basis::Integral, ctx);
    for (auto [a, b] : {std::pair{&h, &h}, std::pair{&h, &one}, std::pair{&one, &th}}) {
        auto r = universal_R_sl2(*a, *b, ctx).m;
        CHECK(verify_quasitriangular(r, *a, *b, ctx) == 0.0);
        CHECK(residual_norm(LM(r * antipode_R_sl2(*a, *b, ctx)), LM::identity(r.rows())) == 0.0);
    }
    auto nctx = QContext::numeric(1.2);
    auto hn = spin_rep<Numeric>(Exp(1, 2), Basis::Unitary, nctx);
    auto on = spin_rep<Numeric>(1, Basis::Unitary, nctx);
    CHECK(verify_quasitriangular(universal_R_sl2(hn, on, nctx).m, hn, on, nctx) < 1e-12);
    // the literal coproduct X -> X (x) q^-H + q^H (x) X is not intertwined
    auto r = universal_R_sl2(hn, hn, nctx).m;
    auto p = swap_operator<Numeric>(2, 2);
    auto lit = coproduct_rep(hn, hn, nctx, CoproductOrder::PaperLiteral);
    CHECK(residual_norm(NM(r * lit.xp[0]), NM(p * lit.xp[0] * p * r)) > 1e-2);
}

TEST_CASE("Yang-Baxter") {
    for (int n = 2; n <= 4; ++n) {
        auto ctx = QContext::exact(2 * n);
        CHECK(verify_YBE(fundamental_R<Laurent>(n, Variant::Plus, ctx).m) == 0.0);
        CHECK(verify_YBE(fundamental_R<Laurent>(n, Variant::Minus, ctx).m) == 0.0);
    }
    auto nctx = QContext::numeric(1.2);
    auto r = fundamental_R<Numeric>(2, Variant::Plus, nctx).m;
    CHECK(verify_YBE(r) < 1e-14);
    NM bad = perturb(r, 1, 2, 1e-3);
    bad.with_legs({2, 2});
    CHECK(verify_YBE(bad) >= 1e-4);
    // mixed legs (1/2, 1/2, s)
    for (int d = 1; d <= 4; ++d) {
        Exp s(d, 2);
        auto r1s = lop_substituted_R<Numeric>(s, Variant::Plus, nctx, Basis::Unitary).m;
        CHECK(verify_YBE(r, r1s, r1s) < 1e-10);
    }
}

TEST_CASE("L-operators on the model space") {
    auto ctx = QContext::exact(2);
    ModelSpace<Laurent> ms(4, 0, ctx);
    auto lp = build_L(ms, Variant::Plus);
    auto lm = build_L(ms, Variant::Minus);
    CHECK(block(lp, 2, 1, 0).is_zero());
    CHECK(block(lm, 2, 0, 1).is_zero());
    // (L+)_12 on z1^2 z2: w q^-1/2 [2] z1 z2^2
    auto b12 = block(lp, 2, 0, 1);
    CHECK(b12(ms.index(1, 2), ms.index(2, 1)) == W * qm(Exp(-1, 2)) * (qm(1) + qm(-1)));
    // (L-)_11 = q^-H: q^((b-a)/2)
    auto b11 = block(lm, 2, 0, 0);
    CHECK(b11(ms.index(3, 0), ms.index(3, 0)) == qm(Exp(-3, 2)));
    CHECK(b11(ms.index(1, 2), ms.index(1, 2)) == qm(Exp(1, 2)));
}

TEST_CASE("RLL relations") {
    auto ectx = QContext::exact(2);
    ModelSpace<Laurent> es(5, 0, ectx);
    auto erp = fundamental_R<Laurent>(2, Variant::Plus, ectx).m;
    auto erm = fundamental_R<Laurent>(2, Variant::Minus, ectx).m;
    auto elp = build_L(es, Variant::Plus), elm = build_L(es, Variant::Minus);
    CHECK(verify_RLL(erp, elp, elp, es.dim()) == 0.0);
    CHECK(verify_RLL(erm, elm, elm, es.dim()) == 0.0);
    CHECK(verify_RLL(erp, elp, elm, es.dim()) == 0.0);

    auto ctx = QContext::numeric(1.2);
    ModelSpace<Numeric> ms(12, 0, ctx);
    auto rp = fundamental_R<Numeric>(2, Variant::Plus, ctx).m;
    auto rm = fundamental_R<Numeric>(2, Variant::Minus, ctx).m;
    auto lp = build_L(ms, Variant::Plus), lm = build_L(ms, Variant::Minus);
    CHECK(verify_RLL(rp, lp, lp, ms.dim()) < 1e-11);
    CHECK(verify_RLL(rm, lm, lm, ms.dim()) < 1e-11);
    CHECK(verify_RLL(rp, lp, lm, ms.dim()) < 1e-11);
    CHECK(verify_RLL(rp, perturb(lp, 0, 0, 1e-3), lp, ms.dim()) >= 1e-4);

    // abelian case
    auto id = NM::identity(4);
    id.with_legs({2, 2});
    auto diag = from_blocks<Numeric>({{ms.qH(1), NM(ms.dim(), ms.dim())}, {NM(ms.dim(), ms.dim()), ms.qH(-1)}});
    CHECK(verify_RLL(id, diag, diag, ms.dim()) == 0.0);
}

TEST_CASE("reflection equation") {
    auto ctx = QContext::numeric(1.2);
    ModelSpace<Numeric> ms(12, 0, ctx);
    auto rp = fundamental_R<Numeric>(2, Variant::Plus, ctx).m;
    auto rm = fundamental_R<Numeric>(2, Variant::Minus, ctx).m;
    auto l = reflection_L(ms);
    CHECK(residual_norm(NM(l * build_L(ms, Variant::Minus)), build_L(ms, Variant::Plus)) < 1e-12);
    CHECK(verify_reflection(l, rp, rm, ms.dim()) < 1e-10);
    CHECK(verify_reflection(perturb(l, 3, 3, 1e-3), rp, rm, ms.dim()) >= 1e-5);

    auto nctx = QContext::numeric(1.0 + 1e-6);
    ModelSpace<Numeric> ns(12, 0, nctx);
    CHECK(verify_reflection(reflection_L(ns), fundamental_R<Numeric>(2, Variant::Plus, nctx).m,
                            fundamental_R<Numeric>(2, Variant::Minus, nctx).m, ns.dim()) < 1e-10);

    auto ectx = QContext::exact(2);
    ModelSpace<Laurent> es(4, 0, ectx);
    CHECK(verify_reflection(reflection_L(es), fundamental_R<Laurent>(2, Variant::Plus, ectx).m,
                            fundamental_R<Laurent>(2, Variant::Minus, ectx).m, es.dim()) == 0.0);
}

TEST_CASE("fusion commutation with Hecke projectors") {
    for (int n = 2; n <= 3; ++n) {
        auto ctx = QContext::exact(2 * n);
        auto rp = fundamental_R<Laurent>(n, Variant::Plus, ctx).m;
        auto rm = fundamental_R<Laurent>(n, Variant::Minus, ctx).m;
        auto hp = hecke_projectors(LM(swap_operator<Laurent>(n, n) * rp), n, ctx);
        for (const auto* r : {&rp, &rm}) {
            CHECK(verify_fusion_commutation(hp.plus.num, *r, *r) == 0.0);
            CHECK(verify_fusion_commutation(hp.minus.num, *r, *r) == 0.0);
            CHECK(verify_fusion_commutation(LM::identity(n * n), *r, *r) == 0.0);
        }
    }
    auto ctx = QContext::numeric(1.2);
    auto r = fundamental_R<Numeric>(2, Variant::Plus, ctx).m;
    auto v = symmetric_basis(1.2);
    NM p = v * transpose(v);
    CHECK(verify_fusion_commutation(p, r, r) < 1e-12);
    CHECK(verify_fusion_commutation(perturb(p, 0, 1, 1e-3), r, r) >= 1e-4);
}

TEST_CASE("fused R matches the spin-1 substitution") {
    const double q = 1.2;
    auto ctx = QContext::numeric(q);
    for (auto var : {Variant::Plus, Variant::Minus}) {
        auto r = fundamental_R<Numeric>(2, var, ctx);
        auto v = symmetric_basis(q);
        auto f = fuse_R(r, r, v, transpose(v));
        auto lop = lop_substituted_R<Numeric>(1, var, ctx, Basis::Unitary);
        auto nf = normalize_reference(f);
        auto nl = normalize_reference(lop);
        CHECK(residual_norm(nf.m, nl.m) < 1e-10);
        CHECK(std::abs(f.m(0, 0) - lop.m(0, 0)) < 1e-12);
        CHECK(verify_YBE(r.m, f.m, f.m) < 1e-10);

        auto s = singlet_basis(q);
        auto f0 = fuse_R(r, r, s, transpose(s));
        CHECK(f0.m.rows() == 2);
        CHECK(residual_norm(f0.m, NM(f0.m(0, 0) * NM::identity(2))) < 1e-12);
    }
}

TEST_CASE("crossing relations") {
    auto ctx = QContext::exact(2);
    LM weyl(2, 2);
    weyl(0, 1) = qm(Exp(1, 2));
    weyl(1, 0) = -qm(Exp(-1, 2));
    for (auto v : {Variant::Plus, Variant::Minus})
        CHECK(verify_crossing_weyl(fundamental_R<Laurent>(2, v, ctx).m, weyl) == 0.0);
    // chi only reproduces the full transpose on both legs at once
    LM chi(2, 2);
    chi(0, 1) = chi(1, 0) = Laurent(1);
    auto r = fundamental_R<Laurent>(2, Variant::Plus, ctx).m;
    auto cc = kron(chi, chi);
    CHECK(residual_norm(LM(cc * r * cc), transpose(r)) == 0.0);
    CHECK(verify_crossing_chi(r, chi) == 1.0);
    CHECK(verify_crossing_weyl(r, LM::identity(2)) == 1.0);
}
