#pragma once

#include <functional>
#include <vector>

#include "qtop/topgen.hpp"

namespace qtop {

// Clebsch-Gordan map C: V^j1 (x) V^j2 -> V^j in the unitary basis, with its
// right inverse Cp (columns |j,m> expanded in e_k1 (x) e_k2, k = j - m).
struct CGMap {
    Matrix<Numeric> c;   // (2j+1) x (d1 d2)
    Matrix<Numeric> cp;  // (d1 d2) x (2j+1)
    Exp j1 = 0, j2 = 0, j = 0;
    Basis basis = Basis::Unitary;
};

bool in_cg_range(Exp j1, Exp j2, Exp j);
std::vector<Exp> cg_channels(Exp j1, Exp j2);

// Highest-weight vector from the kernel of Delta(X+) at weight j, first nonzero
// coefficient positive, then lowered with Delta(X-) / sqrt([j+m][j-m+1]).
CGMap build_cg(Exp j1, Exp j2, Exp j, const QContext& ctx);

// C Delta(x) - rho^j(x) C for x in {q^H, X+, X-}.
double verify_cg_intertwiner(const CGMap& cg, const QContext& ctx);
// sum_K Cp_K C_K = 1 and C_K Cp_L = delta_KL 1 over all channels.
double verify_cg_completeness(Exp j1, Exp j2, const QContext& ctx);

// Legs (L, I, J): R13 R12 (1 x Cp) - (1 x Cp) R_LK and (1 x C) R13 R12 - R_LK (1 x C).
double verify_cg_fusion(const CGMap& cg, const Matrix<Numeric>& r_lj, const Matrix<Numeric>& r_li,
                        const Matrix<Numeric>& r_lk);

// L (1 x v) - (1 x v) R^{1/2,K} for both variants, v the embedded |K,m> columns.
double basis_action_check(Exp k, const ModelSpace<Numeric>& ms, const Matrix<Numeric>& lp,
                          const Matrix<Numeric>& lm);

// Tensor operator of a given rank: apply(c, v) is component c acting on v.
// Contragredient components transform with C (1 x Weyl^-1) instead of C.
struct TensorOperator {
    Exp rank = Exp(1, 2);
    bool contragredient = false;
    std::function<std::vector<Numeric>(std::size_t, const std::vector<Numeric>&)> apply;
};

TensorOperator tensor_row(const GeneratingMatrix<Numeric>& u, std::size_t row);
TensorOperator tensor_col(const GeneratingMatrix<Numeric>& w, std::size_t col);
// Row of the spin copies/2 covariant matrix fused from `copies` factors of a
// spin-1/2 covariant matrix (identity F), applied factor by factor.
TensorOperator fused_row(const GeneratingMatrix<Numeric>& u, int copies, std::size_t row, const QContext& ctx);

struct ReducedElement {
    Exp j_in = 0, j_out = 0;
    bool allowed = false;          // j_out in the CG range of (j_in, rank)
    bool structural_zero = false;  // block vanishes
    Numeric reduced{};             // common ratio matrix element / CGC
    double deviation = 0.0;        // max relative ratio deviation over nonzero CGC slots
    double zero_mismatch = 0.0;    // max |element| / |reduced| where the CGC vanishes
    double block_max = 0.0;
    Matrix<Numeric> elements;      // <j_out m''| T_c |j_in m'>, column m' (2 rank + 1) + c
    Matrix<Numeric> cgc;           // matching CGC (empty if not allowed)
};

ReducedElement reduced_matrix_elements(const TensorOperator& t, Exp j_in, Exp j_out, const ModelSpace<Numeric>& ms);

// Worst Wigner-Eckart statistic over all blocks j_in <= max_j, j_out arbitrary
// within the model: deviation or zero mismatch for allowed blocks, block size
// for forbidden ones.
double wigner_eckart_residual(const TensorOperator& t, Exp max_j, const ModelSpace<Numeric>& ms);

struct CGCEntry {
    Exp m1, m2, m;
    double direct = 0.0, extracted = 0.0;
};
struct CGCChannel {
    Exp j;
    Numeric reduced{};
    double agreement = 0.0;
    std::vector<CGCEntry> entries;
};
// Direct CGC next to the ratios extracted from the spin-j2 fused covariant operator
// acting on spin-j1 states.
std::vector<CGCChannel> cgc_table(Exp j1, Exp j2, const QContext& ctx);

// Classical Clebsch-Gordan coefficient (Racah formula, Condon-Shortley phase).
double classical_cgc(Exp j1, Exp m1, Exp j2, Exp m2, Exp j, Exp m);

}  // namespace qtop
