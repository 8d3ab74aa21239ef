#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtop/wigner.hpp"

using namespace qtop;
using NM = Matrix<Numeric>;

namespace {

const Exp half(1, 2);

NM lop(Exp s, Variant v, const QContext& ctx) { return lop_substituted_R<Numeric>(s, v, ctx, Basis::Unitary).m; }

struct Generators {
    QContext ctx;
    ModelSpace<Numeric> ms;
    GeneratingMatrix<Numeric> w, u;
    Generators(int D, Exp gamma, double q = 1.2)
        : ctx(QContext::numeric(q)),
          ms(D, gamma, ctx),
          w(build_W_half(ms, Normalizer::InverseSqrtQnum)),
          u(convert_contra_to_co(w, weyl_spin<Numeric>(half, ctx))) {}
};

}  // namespace

TEST_CASE("CG map for 1/2 x 1/2") {
    auto ctx = QContext::numeric(1.2);
    auto top = build_cg(half, half, 1, ctx);
    CHECK(top.c.rows() == 3);
    CHECK(top.c.cols() == 4);
    CHECK(std::abs(top.c(0, 0) - 1.0) < 1e-15);

    auto s = build_cg(half, half, 0, ctx);
    REQUIRE(s.c.rows() == 1);
    CHECK(std::abs(s.c(0, 0)) == 0.0);
    CHECK(std::abs(s.c(0, 3)) == 0.0);
    // kernel of X+ (x) q^H + q^-H (x) X+ on span(e12, e21): a q^-1/2 + b q^1/2 = 0
    CHECK(s.c(0, 1).real() > 0);
    CHECK(std::abs(s.c(0, 1) / s.c(0, 2) + 1.2) < 1e-14);
    CHECK(std::abs(std::norm(s.c(0, 1)) + std::norm(s.c(0, 2)) - 1.0) < 1e-14);
    // lowered middle vector (q^-1/2 e12 + q^1/2 e21) / sqrt([2])
    const double s2 = std::sqrt(1.2 + 1 / 1.2);
    CHECK(std::abs(top.cp(1, 1) - std::pow(1.2, -0.5) / s2) < 1e-14);
    CHECK(std::abs(top.cp(2, 1) - std::pow(1.2, 0.5) / s2) < 1e-14);
}

TEST_CASE("CG intertwiner and completeness") {
    auto ctx = QContext::numeric(1.2);
    for (Exp j1 = 0; j1 <= 2; j1 += half)
        for (Exp j2 = 0; j2 <= 2; j2 += half) {
            for (Exp j : cg_channels(j1, j2)) CHECK(verify_cg_intertwiner(build_cg(j1, j2, j, ctx), ctx) < 1e-11);
            CHECK(verify_cg_completeness(j1, j2, ctx) < 1e-11);
        }
    CHECK(cg_channels(half, 1) == std::vector<Exp>{Exp(3, 2), half});
    CHECK_THROWS_AS(build_cg(half, half, 2, ctx), std::invalid_argument);
    CHECK_THROWS_AS(build_cg(half, half, half, ctx), std::invalid_argument);
    CHECK_THROWS_AS(build_cg(half, half, 0, QContext::exact()), std::domain_error);
    // a broken map is detected
    auto bad = build_cg(half, 1, half, ctx);
    bad.c(0, 1) += 1e-3;
    CHECK(verify_cg_intertwiner(bad, ctx) >= 1e-4);
}

TEST_CASE("classical CGC oracle") {
    CHECK(std::abs(classical_cgc(half, half, half, -half, 1, 0) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(classical_cgc(half, -half, half, half, 0, 0) + std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(classical_cgc(1, 1, half, -half, half, half) - std::sqrt(2.0 / 3)) < 1e-15);
    CHECK(std::abs(classical_cgc(1, 0, half, half, half, half) + std::sqrt(1.0 / 3)) < 1e-15);
    CHECK(classical_cgc(1, 1, half, half, half, half) == 0.0);
}

TEST_CASE("q -> 1 limit of the CG maps") {
    auto ctx = QContext::numeric(1 + 1e-6);
    for (auto [j1, j2] : {std::pair{half, half}, std::pair{Exp(1), half}, std::pair{Exp(3, 2), Exp(1)}})
        for (Exp j : cg_channels(j1, j2)) {
            auto cg = build_cg(j1, j2, j, ctx);
            const long d2 = (j2 * 2).numerator() + 1;
            double r = 0.0;
            for (std::size_t k = 0; k < cg.c.rows(); ++k)
                for (std::size_t col = 0; col < cg.c.cols(); ++col) {
                    Exp m = j - long(k), m1 = j1 - long(col) / d2, m2 = j2 - long(col) % d2;
                    r = std::max(r, std::abs(cg.c(k, col) - classical_cgc(j1, m1, j2, m2, j, m)));
                }
            CHECK(r < 1e-5);
        }
}

TEST_CASE("fusion through CG maps") {
    auto ctx = QContext::numeric(1.2);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        for (auto [i, j] : {std::pair{half, half}, std::pair{half, Exp(1)}, std::pair{Exp(1), Exp(3, 2)}})
            for (Exp k : cg_channels(i, j))
                CHECK(verify_cg_fusion(build_cg(i, j, k, ctx), lop(j, v, ctx), lop(i, v, ctx), lop(k, v, ctx)) < 1e-10);
        // trivial channel: R^{L,0} is the identity
        CHECK(residual_norm(lop(0, v, ctx), NM::identity(2)) == 0.0);
    }
    auto cg = build_cg(half, half, 1, ctx);
    auto rk = lop(1, Variant::Plus, ctx);
    rk(0, 0) += 1e-3;
    CHECK(verify_cg_fusion(cg, lop(half, Variant::Plus, ctx), lop(half, Variant::Plus, ctx), rk) >= 1e-4);
    CHECK_THROWS_AS(verify_cg_fusion(cg, lop(1, Variant::Plus, ctx), lop(half, Variant::Plus, ctx), lop(1, Variant::Plus, ctx)),
                    std::invalid_argument);
}

TEST_CASE("generators on embedded basis vectors") {
    auto ctx = QContext::numeric(1.2);
    ModelSpace<Numeric> ms(12, 0, ctx);
    auto lp = build_L(ms, Variant::Plus), lm = build_L(ms, Variant::Minus);
    CHECK(basis_action_check(half, ms, lp, lm) < 1e-11);
    CHECK(basis_action_check(2, ms, lp, lm) < 1e-10);
    CHECK(basis_action_check(0, ms, lp, lm) == 0.0);
    CHECK(basis_action_check(6, ms, lp, lm) < 1e-10);
    CHECK_THROWS_AS(basis_action_check(Exp(13, 2), ms, lp, lm), std::domain_error);
    auto bad = lp;
    bad(1, 2 + ms.dim()) += 1e-3;  // (1,2) block, z1 -> z2 slot
    CHECK(basis_action_check(half, ms, bad, lm) >= 1e-4);
}

TEST_CASE("reduced matrix elements of W columns") {
    Generators g(12, 0);
    auto lower = tensor_col(g.w, 0), raise = tensor_col(g.w, 1);
    CHECK(lower.contragredient);
    auto a = reduced_matrix_elements(lower, 1, half, g.ms);
    CHECK(a.allowed);
    CHECK_FALSE(a.structural_zero);
    CHECK(a.deviation < 1e-8);
    CHECK(a.zero_mismatch < 1e-12);
    auto b = reduced_matrix_elements(lower, 1, Exp(3, 2), g.ms);
    CHECK(b.allowed);
    CHECK(b.structural_zero);
    auto c = reduced_matrix_elements(raise, 1, Exp(3, 2), g.ms);
    CHECK_FALSE(c.structural_zero);
    CHECK(c.deviation < 1e-8);
    // selection rule
    auto z = reduced_matrix_elements(raise, 1, Exp(5, 2), g.ms);
    CHECK_FALSE(z.allowed);
    CHECK(z.structural_zero);
    CHECK(reduced_matrix_elements(raise, 1, 1, g.ms).structural_zero);
}

TEST_CASE("Wigner-Eckart factorization for every row and column") {
    for (Exp gamma : {Exp(0), half}) {
        Generators g(12, gamma);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(wigner_eckart_residual(tensor_col(g.w, k), 4, g.ms) < 1e-7);
            CHECK(wigner_eckart_residual(tensor_row(g.u, k), 4, g.ms) < 1e-7);
        }
    }
    Generators g(12, 0);
    CHECK_THROWS_AS(wigner_eckart_residual(tensor_col(g.w, 0), 6, g.ms), std::domain_error);
    CHECK_THROWS_AS(tensor_row(g.w, 0), std::invalid_argument);
    CHECK_THROWS_AS(tensor_col(g.u, 0), std::invalid_argument);
    // a perturbed generating matrix breaks the factorization
    auto bad = g.w;
    bad.m(g.ms.index(1, 1), g.ms.dim() + g.ms.index(0, 1)) += 1e-3;
    CHECK(wigner_eckart_residual(tensor_col(bad, 1), 4, g.ms) >= 1e-4);
}

TEST_CASE("reduced elements of rows and columns (observation)") {
    Generators g(12, 0);
    auto col = reduced_matrix_elements(tensor_col(g.w, 1), 1, Exp(3, 2), g.ms);
    auto row = reduced_matrix_elements(tensor_row(g.u, 1), 1, Exp(3, 2), g.ms);
    auto col2 = reduced_matrix_elements(tensor_col(g.w, 1), 2, Exp(5, 2), g.ms);
    auto row2 = reduced_matrix_elements(tensor_row(g.u, 1), 2, Exp(5, 2), g.ms);
    MESSAGE("W col 2, 1 -> 3/2: " << col.reduced << ", U row 2: " << row.reduced);
    MESSAGE("W col 2, 2 -> 5/2: " << col2.reduced << ", U row 2: " << row2.reduced);
    CHECK(std::abs(row.reduced) > 0);
    CHECK(std::abs(col.reduced) > 0);
}

TEST_CASE("fused spin-1 covariant rows") {
    Generators g(8, 0);
    for (std::size_t r = 0; r < 3; ++r) CHECK(wigner_eckart_residual(fused_row(g.u, 2, r, g.ctx), 3, g.ms) < 1e-7);
    // the row with one raising factor maps j to j (and j +- 1 with zero weight shift overall)
    auto re = reduced_matrix_elements(fused_row(g.u, 2, 2, g.ctx), 1, 2, g.ms);
    CHECK_FALSE(re.structural_zero);
    CHECK(re.deviation < 1e-8);
    CHECK_THROWS_AS(fused_row(g.w, 2, 0, g.ctx), std::invalid_argument);
    CHECK_THROWS_AS(fused_row(g.u, 2, 3, g.ctx), std::out_of_range);
}

TEST_CASE("CGC tables") {
    auto ctx = QContext::numeric(1.2);
    auto t = cgc_table(half, half, ctx);
    REQUIRE(t.size() == 2);
    CHECK(t[0].j == 1);
    CHECK(t[1].j == 0);
    for (const auto& ch : t) CHECK(ch.agreement < 1e-8);
    CHECK(t[0].entries.size() == 4);
    CHECK(t[1].entries.size() == 2);
    auto t2 = cgc_table(half, 1, ctx);
    REQUIRE(t2.size() == 2);
    CHECK(t2[0].j == Exp(3, 2));
    CHECK(t2[1].j == half);
    for (auto [j1, j2] : {std::pair{Exp(1), Exp(0)}, std::pair{Exp(2), Exp(3, 2)}, std::pair{Exp(4), Exp(4)}})
        for (const auto& ch : cgc_table(j1, j2, ctx)) CHECK(ch.agreement < 1e-8);
}
