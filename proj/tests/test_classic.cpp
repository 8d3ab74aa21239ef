#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtop/classic.hpp"

using namespace qtop;
using QM = Matrix<Rational>;
using NM = Matrix<Numeric>;

namespace {

const Exp half(1, 2);

QM rmat(std::initializer_list<std::initializer_list<Rational>> rows) {
    QM m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const auto& x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

NM numeric(const QM& m) { return to_numeric(m, 1.0); }

struct Exact {
    ClassicalModel<Rational> cm;
    QM lp, lm, rp, rm;
    explicit Exact(int D)
        : cm(D),
          lp(classical_l(cm, Variant::Plus)),
          lm(classical_l(cm, Variant::Minus)),
          rp(classical_r_sl2(classical_spin_rep<Rational>(half), classical_spin_rep<Rational>(half), Variant::Plus).m),
          rm(classical_r_sl2(classical_spin_rep<Rational>(half), classical_spin_rep<Rational>(half), Variant::Minus).m) {}
};

}  // namespace

TEST_CASE("classical spin reps") {
    for (Exp s = 0; s <= 2; s += half) {
        auto r = classical_spin_rep<Rational>(s);
        CHECK(residual_norm(QM(r.xp * r.xm - r.xm * r.xp), QM(Rational(2) * r.h)) == 0.0);
        CHECK(residual_norm(QM(r.h * r.xp - r.xp * r.h), r.xp) == 0.0);
    }
    auto one = classical_spin_rep<Rational>(1);
    CHECK(one.xp(0, 1) == 1);
    CHECK(one.xp(1, 2) == 2);
    CHECK(one.xm(1, 0) == 2);
    CHECK(one.xm(2, 1) == 1);
}

TEST_CASE("classical r-matrix at (1/2, 1/2)") {
    auto h = classical_spin_rep<Rational>(half);
    auto r = classical_r_sl2(h, h, Variant::Plus);
    const Rational a(1, 2);
    auto expect = rmat({{a, 0, 0, 0}, {0, -a, 2, 0}, {0, 0, -a, 0}, {0, 0, 0, a}});
    CHECK(residual_norm(r.m, expect) == 0.0);
    CHECK(trace(r.m) == 0);
    CHECK(r.algebra == "classical");
    auto rm = classical_r_sl2(h, h, Variant::Minus);
    auto expect_m = rmat({{-a, 0, 0, 0}, {0, a, 0, 0}, {0, -2, a, 0}, {0, 0, 0, -a}});
    CHECK(residual_norm(rm.m, expect_m) == 0.0);
    // r- = -P r+ P
    auto p = swap_operator<Rational>(2, 2);
    CHECK(residual_norm(rm.m, QM(Rational(-1) * QM(p * r.m * p))) == 0.0);
}

TEST_CASE("classical Yang-Baxter equation") {
    auto h = classical_spin_rep<Rational>(half);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        CHECK(verify_CYBE(classical_r_sl2(h, h, v).m, 2) == 0.0);
        for (auto [sb, sc] : {std::pair{half, Exp(1)}, std::pair{Exp(1), Exp(3, 2)}}) {
            auto b = classical_spin_rep<Rational>(sb), c = classical_spin_rep<Rational>(sc);
            CHECK(verify_CYBE(classical_r_sl2(h, b, v).m, classical_r_sl2(h, c, v).m, classical_r_sl2(b, c, v).m,
                              {2, b.dim(), c.dim()}) == 0.0);
        }
    }
    auto bad = classical_r_sl2(h, h, Variant::Plus).m;
    bad(1, 1) += Rational(1, 1000);
    CHECK(verify_CYBE(bad, 2) == 1.0);
    CHECK(residual_norm(numeric(bad), numeric(classical_r_sl2(h, h, Variant::Plus).m)) >= 1e-4);
}

TEST_CASE("derivative limit of quantum R-matrices") {
    auto h = classical_spin_rep<Rational>(half);
    auto rp = numeric(classical_r_sl2(h, h, Variant::Plus).m);
    auto rm = numeric(classical_r_sl2(h, h, Variant::Minus).m);
    auto fund = [](Variant v) {
        return [v](double q) { return fundamental_R<Numeric>(2, v, QContext::numeric(q)).m; };
    };
    CHECK(residual_norm(q_derivative_limit(fund(Variant::Plus), 1e-6, false), rp) < 1e-5);
    CHECK(residual_norm(q_derivative_limit(fund(Variant::Plus), 1e-6), rp) < 1e-9);
    CHECK(residual_norm(q_derivative_limit(fund(Variant::Minus), 1e-6, false), rm) < 1e-5);
    CHECK(residual_norm(q_derivative_limit(fund(Variant::Minus), 1e-6), rm) < 1e-9);
    // hand expansion at q = 1 + eps: diagonal +-eps/2, (2,3) entry 2 eps
    auto d = q_derivative_limit(fund(Variant::Plus), 1e-5);
    CHECK(std::abs(d(0, 0) - 0.5) < 1e-8);
    CHECK(std::abs(d(1, 1) + 0.5) < 1e-8);
    CHECK(std::abs(d(1, 2) - 2.0) < 1e-8);
    auto id = [](double) { return NM::identity(4); };
    CHECK(residual_norm(q_derivative_limit(id, 1e-6)) == 0.0);
    CHECK_THROWS_AS(q_derivative_limit(id, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(q_derivative_limit(id, 1e-9), std::invalid_argument);
    // spin (1/2, 1) through the L-operator substitution in the integral basis
    auto one = classical_spin_rep<Rational>(1);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        auto lop = [v](double q) { return lop_substituted_R<Numeric>(1, v, QContext::numeric(q), Basis::Integral).m; };
        CHECK(residual_norm(q_derivative_limit(lop, 1e-6), numeric(classical_r_sl2(h, one, v).m)) < 1e-8);
    }
    // sl(3), defined operationally
    auto r3 = q_derivative_limit([](double q) { return fundamental_R<Numeric>(3, Variant::Plus, QContext::numeric(q)).m; },
                                 1e-5);
    CHECK(verify_CYBE(r3, 3) < 1e-6);
}

TEST_CASE("classical chi property") {
    auto h = classical_spin_rep<Rational>(half);
    auto one = classical_spin_rep<Rational>(1);
    // chi maps H to -H, so the partial-transpose form fails (see README)
    for (auto v : {Variant::Plus, Variant::Minus}) {
        CHECK(classical_chi_residual(classical_r_sl2(h, h, v)) == 1.0);
        CHECK(classical_chi_residual(classical_r_sl2(h, one, v)) == 1.0);
        CHECK(classical_chi_residual(classical_r_sl2<Numeric>(classical_spin_rep<Numeric>(half),
                                                              classical_spin_rep<Numeric>(half), v)) > 0.5);
    }
    // the full transpose does hold
    auto r = classical_r_sl2(h, h, Variant::Plus).m;
    QM chi2(4, 4);
    for (std::size_t i = 0; i < 4; ++i) chi2(i, 3 - i) = 1;
    CHECK(residual_norm(QM(chi2 * r * chi2), transpose(r)) == 0.0);
}

TEST_CASE("classical model space") {
    ClassicalModel<Rational> cm(5);
    CHECK(cm.dim() == 21);
    CHECK(classical_model_residual(cm) == 0.0);
    CHECK(classical_model_residual(ClassicalModel<Numeric>(6)) == 0.0);
    CHECK(cm.index(0, 0) == 0);
    CHECK(cm.index(1, 0) == 1);
    CHECK(cm.index(0, 1) == 2);
    auto xp = cm.xp();
    CHECK(xp(cm.index(2, 1), cm.index(1, 2)) == 2);  // z1 d2 z1 z2^2 = 2 z1^2 z2
    CHECK(cm.h()(cm.index(3, 0), cm.index(3, 0)) == Rational(3, 2));
    CHECK(cm.z1()(cm.index(5, 0), cm.index(4, 0)) == 1);
    CHECK(cm.z1().data().size() == cm.dim() * cm.dim());
    CHECK_THROWS(ClassicalModel<Rational>(0));
    CHECK_THROWS_AS(cm.margin_cols(2, 6), std::domain_error);
}

TEST_CASE("classical W entries") {
    ClassicalModel<Rational> cm(4);
    auto w = build_classical_W_half(cm, Normalizer::InverseQnum);
    auto e11 = w.entry(0, 0);
    CHECK(e11(cm.index(1, 0), cm.index(2, 0)) == Rational(2, 3));  // d1 z1^2 f(3)
    auto e12 = w.entry(0, 1);
    CHECK(e12(cm.index(0, 1), cm.index(0, 0)) == -1);  // -z2 f(1)
    auto e22 = w.entry(1, 1);
    CHECK(e22(cm.index(2, 1), cm.index(1, 1)) == Rational(1, 3));
    CHECK(w.kind == Kind::Contravariant);
    CHECK(w.normalizer == normalizer_name(Normalizer::InverseQnum));
    CHECK_THROWS_AS(build_classical_W_half(cm, Normalizer::InverseSqrtQnum), std::domain_error);
    auto wn = build_classical_W_half(ClassicalModel<Numeric>(4), Normalizer::InverseSqrtQnum);
    CHECK(std::abs(wn.entry(0, 0)(cm.index(1, 0), cm.index(2, 0)) - 2 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("classical limit of the contravariant relation (exact)") {
    Exact e(6);
    auto half_rep = classical_spin_rep<Rational>(half);
    for (auto f : {Normalizer::Identity, Normalizer::InverseQnum}) {
        auto w = build_classical_W_half(e.cm, f);
        CHECK(verify_classical_generating(w, e.lp, e.lm, e.rp, e.rm, e.cm) == 0.0);
        CHECK(classical_components(w, half_rep, e.cm) == 0.0);
        CHECK(classical_casimir_residual(w, e.lp, e.lm, e.rp, e.rm, e.cm) == 0.0);
        auto u = classical_convert(w);
        CHECK(u.kind == Kind::Covariant);
        CHECK(verify_classical_generating(u, e.lp, e.lm, e.rp, e.rm, e.cm) == 0.0);
        CHECK(classical_components(u, half_rep, e.cm) == 0.0);
        auto as_contra = u;
        as_contra.kind = Kind::Contravariant;
        CHECK(verify_classical_generating(as_contra, e.lp, e.lm, e.rp, e.rm, e.cm) == 1.0);
    }
    auto w = build_classical_W_half(e.cm, Normalizer::Identity);
    auto bad = w;
    bad.m(e.cm.index(0, 0), e.cm.index(1, 0)) += Rational(1, 1000);
    CHECK(verify_classical_generating(bad, e.lp, e.lm, e.rp, e.rm, e.cm) == 1.0);
    CHECK(classical_components(bad, half_rep, e.cm) == 1.0);
    CHECK_THROWS_AS(classical_casimir_residual(classical_convert(w), e.lp, e.lm, e.rp, e.rm, e.cm),
                    std::invalid_argument);
    CHECK_THROWS_AS(classical_convert(classical_convert(w)), std::invalid_argument);
}

TEST_CASE("classical relations, numeric") {
    ClassicalModel<Numeric> cm(8);
    auto h = classical_spin_rep<Numeric>(half);
    auto rp = classical_r_sl2(h, h, Variant::Plus).m, rm = classical_r_sl2(h, h, Variant::Minus).m;
    auto lp = classical_l(cm, Variant::Plus), lm = classical_l(cm, Variant::Minus);
    auto w = build_classical_W_half(cm, Normalizer::InverseSqrtQnum);
    CHECK(verify_classical_generating(w, lp, lm, rp, rm, cm) < 1e-13);
    auto bad = w;
    bad.m(cm.index(1, 0), cm.dim() + cm.index(0, 0)) += 1e-3;
    CHECK(verify_classical_generating(bad, lp, lm, rp, rm, cm) >= 1e-4);
}

TEST_CASE("q -> 1 limit of the quantum generating matrix") {
    const double q = 1 + 1e-6;
    auto ctx = QContext::numeric(q);
    ClassicalModel<Numeric> cm(8);
    auto wc = build_classical_W_half(cm, Normalizer::InverseSqrtQnum);
    // the deviation is first order in q - 1 with a slope growing like gamma p
    for (auto [gamma, eps] : {std::pair{Exp(0), 1e-6}, std::pair{half, 1e-7}, std::pair{Exp(1), 1e-7}}) {
        auto c = QContext::numeric(1 + eps);
        ModelSpace<Numeric> ms(8, gamma, c);
        auto wq = build_W_half(ms, Normalizer::InverseSqrtQnum);
        CHECK(residual_norm(wq.m, wc.m) < 1e-5);
        auto uq = convert_contra_to_co(wq, weyl_spin<Numeric>(half, c));
        CHECK(residual_norm(uq.m, classical_convert(wc).m) < 1e-5);
    }
    ModelSpace<Numeric> far(8, 0, QContext::numeric(1.2));
    CHECK(residual_norm(build_W_half(far, Normalizer::InverseSqrtQnum).m, wc.m) > 1e-2);
    // the L-operators tend to 1 + (q - 1) l
    ModelSpace<Numeric> ms(8, 0, ctx);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        NM d = (1.0 / (q - 1)) * NM(build_L(ms, v) - NM::identity(2 * ms.dim()));
        CHECK(residual_norm(d, classical_l(cm, v)) < 1e-4);
    }
}
