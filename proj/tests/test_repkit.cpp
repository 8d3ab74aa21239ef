#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtop/repkit.hpp"

using namespace qtop;
using LM = Matrix<Laurent>;
using NM = Matrix<Numeric>;

namespace {

Laurent qm(Exp e) { return Laurent::monomial(e); }

double br(double x, double q) { return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q); }

}  // namespace

TEST_CASE("spin-1 unitary and integral matrices") {
    const double q = 1.2;
    auto ctx = QContext::numeric(q);
    auto u = spin_rep<Numeric>(1, Basis::Unitary, ctx);
    CHECK(u.dim == 3);
    const double v = std::sqrt(br(2, q));  // sqrt([1][2])
    CHECK(std::abs(u.xp[0](0, 1) - v) < 1e-14);
    CHECK(std::abs(u.xp[0](1, 2) - v) < 1e-14);
    CHECK(std::abs(u.xm[0](1, 0) - v) < 1e-14);
    CHECK(residual_norm(u.xm[0], transpose(u.xp[0])) == 0.0);

    auto ectx = QContext::exact(2);
    auto i = spin_rep<Laurent>(1, Basis::Integral, ectx);
    CHECK(i.xp[0](0, 1) == Laurent(1));
    CHECK(i.xp[0](1, 2) == qm(1) + qm(-1));
    CHECK(i.xm[0](1, 0) == qm(1) + qm(-1));
    CHECK(i.xm[0](2, 1) == Laurent(1));
    CHECK(i.weights[0] == std::vector<Exp>{1, 0, -1});
    CHECK_THROWS(spin_rep<Laurent>(1, Basis::Unitary, ectx));
    CHECK_THROWS(spin_rep<Laurent>(Exp(1, 3), Basis::Integral, ectx));
}

TEST_CASE("relations hold for spins up to 4") {
    auto ectx = QContext::exact(2);
    auto nctx = QContext::numeric(1.2);
    for (int d = 0; d <= 8; ++d) {
        Exp s(d, 2);
        CHECK(check_relations(spin_rep<Laurent>(s, Basis::Integral, ectx), ectx) == 0.0);
        CHECK(check_relations(spin_rep<Numeric>(s, Basis::Unitary, nctx), nctx) < 1e-12);
    }
}

TEST_CASE("fundamental sl(3)") {
    auto ctx = QContext::exact(6);
    auto f = fundamental_rep<Laurent>(3, ctx);
    CHECK(f.rank() == 2);
    CHECK(f.weights[0] == std::vector<Exp>{1, -1, 0});
    CHECK(f.weights[1] == std::vector<Exp>{0, 1, -1});
    CHECK(residual_norm(f.qH(0, Exp(1, 2), ctx), LM::diagonal({qm(Exp(1, 2)), qm(Exp(-1, 2)), Laurent(1)})) == 0.0);
    CHECK(check_relations(f, ctx) == 0.0);
    for (int n = 2; n <= 5; ++n) CHECK(check_relations(fundamental_rep<Laurent>(n, ctx), ctx) == 0.0);
    auto a = AlgebraSpec::sl(4);
    CHECK(a.theta == std::vector<int>{2, 1, 0});
    CHECK(a.theta_involutive());
    CHECK(a.cartan[0][1] == -1);
    CHECK(a.cartan[0][2] == 0);
}

TEST_CASE("coproduct on fundamental sl(2) squared") {
    auto ctx = QContext::exact(2);
    auto f = fundamental_rep<Laurent>(2, ctx);
    auto c = coproduct_rep(f, f, ctx);
    // q^(H/2) on each factor: Delta(q^(H/2)) = diag(q, 1, 1, q^-1)
    CHECK(residual_norm(c.qH(0, Exp(1, 2), ctx), LM::diagonal({qm(1), Laurent(1), Laurent(1), qm(-1)})) == 0.0);
    // Delta(X+) e_{22} = e_1 (x) q^(-1/2) e_2 + q^(1/2) e_2 (x) e_1 -> indices 1 and 2
    CHECK(c.xp[0](1, 3) == qm(Exp(-1, 2)));
    CHECK(c.xp[0](2, 3) == qm(Exp(1, 2)));
    CHECK(check_relations(c, ctx) == 0.0);
    auto flip = coproduct_rep(f, f, ctx, CoproductOrder::PaperLiteral);
    CHECK(flip.xp[0](1, 3) == qm(Exp(1, 2)));
    CHECK(check_relations(flip, ctx) == 0.0);
    // the flip is the swap conjugate
    LM p = swap_operator<Laurent>(2, 2);
    CHECK(residual_norm(p * c.xp[0] * p, flip.xp[0]) == 0.0);
}

TEST_CASE("coproduct is coassociative") {
    auto ctx = QContext::exact(2);
    auto h = spin_rep<Laurent>(Exp(1, 2), Basis::Integral, ctx);
    auto one = spin_rep<Laurent>(1, Basis::Integral, ctx);
    auto l = coproduct_rep(coproduct_rep(h, one, ctx), h, ctx);
    auto r = coproduct_rep(h, coproduct_rep(one, h, ctx), ctx);
    CHECK(residual_norm(l.xp[0], r.xp[0]) == 0.0);
    CHECK(residual_norm(l.xm[0], r.xm[0]) == 0.0);
    CHECK(check_relations(l, ctx) == 0.0);
}

TEST_CASE("half times half weight multiplicities") {
    auto ctx = QContext::exact(2);
    auto h = spin_rep<Laurent>(Exp(1, 2), Basis::Integral, ctx);
    auto w = weight_multiplicities(coproduct_rep(h, h, ctx));
    REQUIRE(w.size() == 3);
    CHECK(w[0] == std::pair<Exp, int>{1, 1});
    CHECK(w[1] == std::pair<Exp, int>{0, 2});
    CHECK(w[2] == std::pair<Exp, int>{-1, 1});
}

TEST_CASE("model space relations and blocks") {
    const double q = 1.2;
    auto ctx = QContext::numeric(q);
    ModelSpace<Numeric> ms(12, 0, ctx);
    CHECK(ms.dim() == 91);
    auto xp = ms.xp(), xm = ms.xm();
    const double w = q - 1 / q;
    CHECK(residual_norm(NM(w * (xp * xm - xm * xp)), NM(ms.qH(2) - ms.qH(-2))) < 1e-11);
    CHECK(residual_norm(NM(ms.qH(1) * xp * ms.qH(-1)), NM(q * xp)) < 1e-12);

    // p on z1^2 z2 is 4
    auto p = ms.spin_p();
    std::size_t k = ms.index(2, 1);
    CHECK(p(k, k) == Numeric(4.0));
    CHECK(ms.index(0, 0) == 0);
    CHECK(ms.index(1, 0) == 1);
    CHECK(ms.index(0, 1) == 2);
    CHECK_THROWS(ms.index(13, 0));

    // on |j,m> the model operators match the unitary spin rep
    for (int d = 1; d <= 6; ++d) {
        Exp j(d, 2);
        auto blk = model_block(j, ms);
        auto dual = model_dual_block(j, ms);
        auto u = spin_rep<Numeric>(j, Basis::Unitary, ctx);
        CHECK(residual_norm(dual * blk, NM::identity(d + 1)) < 1e-12);
        CHECK(residual_norm(dual * xp * blk, u.xp[0]) < 1e-12);
        CHECK(residual_norm(dual * xm * blk, u.xm[0]) < 1e-12);
        CHECK(residual_norm(xp * blk, blk * u.xp[0]) < 1e-12);
    }

    auto v = model_vector(1, 0, 12, ctx);
    CHECK(std::abs(v[ms.index(1, 1)] - 1.0) < 1e-15);
    auto v2 = model_vector(1, 1, 12, ctx);
    CHECK(std::abs(v2[ms.index(2, 0)] - 1.0 / std::sqrt(br(2, q))) < 1e-15);
    CHECK_THROWS(model_vector(Exp(1, 2), 0, 12, ctx));
    CHECK_THROWS(model_vector(7, 0, 12, ctx));
}

TEST_CASE("model space truncation and margins") {
    auto ctx = QContext::exact(2);
    ModelSpace<Laurent> ms(3, 0, ctx);
    auto z1 = ms.z1();
    CHECK(z1(ms.index(1, 0), ms.index(0, 0)) == Laurent(1));
    CHECK(z1.data()[0].is_zero());
    // top band maps to zero
    for (std::size_t r = 0; r < ms.dim(); ++r) CHECK(z1(r, ms.index(3, 0)).is_zero());
    auto l1 = ms.l1();
    CHECK(l1(ms.index(1, 1), ms.index(2, 1)) == qm(1) + qm(-1));
    CHECK(residual_norm(LM(ms.dil1(1) * ms.dil2(1)), ms.qp(1) * LM::diagonal(std::vector<Laurent>(ms.dim(), qm(-1)))) == 0.0);
    CHECK(ms.margin_indices(1).size() == 6);
    auto cols = ms.margin_cols(2, 1);
    CHECK(cols.size() == 12);
    CHECK(cols[6] == ms.dim());
    CHECK_THROWS(ms.margin_cols(2, 4));
}
