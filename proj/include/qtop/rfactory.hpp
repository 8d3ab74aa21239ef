#pragma once

#include <string>
#include <vector>

#include "qtop/repkit.hpp"

namespace qtop {

enum class Variant { Plus, Minus };

std::string variant_name(Variant v);

// Two-leg R-matrix with bookkeeping. Leg 0 is rep I, leg 1 is rep J.
template <class S>
struct RMatrix {
    Matrix<S> m;
    std::string rep_i, rep_j;
    Variant variant = Variant::Plus;
    std::string normalization;  // "fundamental", "lop", "universal", "fused-unnormalized"
    std::string route;
    S raw_scale = ScalarTraits<S>::one();
};

// Fundamental sl(n) R-matrix:
// R+ = q^(-1/n) [ q sum E_ii x E_ii + sum_{i!=j} E_ii x E_jj + w sum_{i<j} E_ij x E_ji ],
// R- = q^(1/n) [ q^-1 sum E_ii x E_ii + sum_{i!=j} E_ii x E_jj - w sum_{i<j} E_ji x E_ij ].
template <class S>
RMatrix<S> fundamental_R(int n, Variant v, const QContext& ctx);

// R^{1/2,s}: the 2x2 L-operator block matrix with generators in the spin-s rep.
template <class S>
RMatrix<S> lop_substituted_R(Exp s, Variant v, const QContext& ctx, Basis basis);

// q^(2 H x H) sum_n w^n q^(-n(n+1)/2) / [n]! (q^(nH) X+^n) x (q^(-nH) X-^n) in r1 x r2.
template <class S>
RMatrix<S> universal_R_sl2(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx,
                           int max_terms = -1);

// (id x S) R in r1 x r2, S the antipode S(X+-) = -q^(-+1) X+-, S(q^H) = q^-H.
template <class S>
Matrix<S> antipode_R_sl2(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx);

// L-operators on the model space, legs (2, model).
template <class S>
Matrix<S> build_L(const ModelSpace<S>& ms, Variant v);

// L+ L-^-1 using the block triangular structure of L-.
template <class S>
Matrix<S> reflection_L(const ModelSpace<S>& ms);

// Fusion: (1 x V') R13 R12 (1 x V) with legs (L, I, J); V has orthonormal-style
// columns spanning the fused leg and Vd is a left inverse (Vd V = 1).
template <class S>
RMatrix<S> fuse_R(const RMatrix<S>& r_lj, const RMatrix<S>& r_li, const Matrix<S>& v, const Matrix<S>& vd);

// Divide by the first nonzero entry (row-major); records the divisor in raw_scale.
RMatrix<Numeric> normalize_reference(RMatrix<Numeric> r);

template <class S>
double verify_YBE(const Matrix<S>& r);
// Mixed form on legs (d1, d2, d3): R12 R13 R23 = R23 R13 R12.
template <class S>
double verify_YBE(const Matrix<S>& r12, const Matrix<S>& r13, const Matrix<S>& r23);

// R L1 L2 - L2 L1 R on (aux, aux, model) with L1 on legs {0,2}, L2 on {1,2}.
template <class S>
double verify_RLL(const Matrix<S>& r, const Matrix<S>& l1, const Matrix<S>& l2, std::size_t model_dim);

// L1 R-^-1 L2 R- - R+^-1 L2 R+ L1 for L = L+ L-^-1.
template <class S>
double verify_reflection(const Matrix<S>& l, const Matrix<S>& rp, const Matrix<S>& rm, std::size_t model_dim);

// P23 R13 R12 - R13 R12 P23 (P acts on legs I, J).
template <class S>
double verify_fusion_commutation(const Matrix<S>& p, const Matrix<S>& r_lj, const Matrix<S>& r_li);

// chi kind: chi1 R chi1^-1 = R^{t1} and chi2 R chi2^-1 = R^{t2}.
template <class S>
double verify_crossing_chi(const Matrix<S>& r, const Matrix<S>& chi);
// Weyl kind, for Rp = P R P: (Rp^-1)^{t1} = W1 Rp W1^-1 and W2^-1 Rp^-1 W2 = Rp^{t2}.
template <class S>
double verify_crossing_weyl(const Matrix<S>& r, const Matrix<S>& weyl);

// R Delta(x) - Delta'(x) R for x in {q^H, X+, X-}.
template <class S>
double verify_quasitriangular(const Matrix<S>& r, const Representation<S>& r1, const Representation<S>& r2,
                              const QContext& ctx);

// Inverse of a matrix that is diagonal.
template <class S>
Matrix<S> diagonal_inverse(const Matrix<S>& d);

}  // namespace qtop
