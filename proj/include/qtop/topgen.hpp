#pragma once

#include <string>
#include <vector>

#include "qtop/rfactory.hpp"

namespace qtop {

enum class Kind { Covariant, Contravariant };
enum class Normalizer { Identity, InverseSqrtQnum, InverseQnum };
// Corrected: the realization that satisfies the contravariant relation.
// Literal: row 1 scaled by q^(1/2), row 2 by q^(-1/2) relative to Corrected.
enum class HalfForm { Corrected, Literal };

std::string kind_name(Kind k);
std::string normalizer_name(Normalizer n);
Normalizer parse_normalizer(const std::string& s);

// Operator-valued N x N matrix over a model space, stored as an (N*M) square
// matrix with legs (N, M).
template <class S>
struct GeneratingMatrix {
    Matrix<S> m;
    Kind kind = Kind::Contravariant;
    std::string rep;
    int margin = 1;
    Exp gamma = 0;
    std::string normalizer = "identity";
    std::string provenance;

    std::size_t n() const { return m.leg_dims().at(0); }
    std::size_t model_dim() const { return m.leg_dims().at(1); }
    Matrix<S> entry(std::size_t i, std::size_t j) const { return block(m, n(), i, j); }
};

template <class S>
GeneratingMatrix<S> build_W_half(const ModelSpace<S>& ms, Normalizer f, HalfForm form = HalfForm::Corrected);

// L1 U2 - U2 R L1 for (L+, R+) and (L-, R-), on margin columns.
template <class S>
double verify_covariant(const GeneratingMatrix<S>& u, const Matrix<S>& lp, const Matrix<S>& lm, const Matrix<S>& rp,
                        const Matrix<S>& rm, const ModelSpace<S>& ms);
// L1 W2 - R^-1 W2 L1.
template <class S>
double verify_contravariant(const GeneratingMatrix<S>& w, const Matrix<S>& lp, const Matrix<S>& lm,
                            const Matrix<S>& rp, const Matrix<S>& rm, const ModelSpace<S>& ms);

// Component form with generators, one residual per row (covariant):
// q^H U q^-H = U q^rho(H), X+- U q^H - q^-+1 q^H U X+- = U rho(X+-).
template <class S>
std::vector<double> covariant_components(const GeneratingMatrix<S>& u, const Representation<S>& rho,
                                         const ModelSpace<S>& ms);
// One residual per column (contravariant):
// q^H W q^-H = q^-rho(H) W, X+- W q^H - q^-+1 q^H W X+- = -q^-+1 rho(X+-) W.
template <class S>
std::vector<double> contravariant_components(const GeneratingMatrix<S>& w, const Representation<S>& rho,
                                             const ModelSpace<S>& ms);

// Zero all rows (covariant) or columns (contravariant) except the listed ones.
template <class S>
GeneratingMatrix<S> keep_rows(const GeneratingMatrix<S>& g, const std::vector<std::size_t>& rows);
template <class S>
GeneratingMatrix<S> keep_cols(const GeneratingMatrix<S>& g, const std::vector<std::size_t>& cols);

// Spin s: W_mk = (-1)^k q^(s+1-m) delta(m, 2s+2-k), 1-based.
template <class S>
Matrix<S> weyl_spin(Exp s, const QContext& ctx);
// Fundamental sl(n): W_mk = (-1)^k q^(k-(n+1)/2) delta(m, n-k+1), 1-based.
template <class S>
Matrix<S> weyl_fundamental(int n, const QContext& ctx);
template <class S>
Matrix<S> chi_matrix(std::size_t n);

// Transpose in the auxiliary space only.
template <class S>
Matrix<S> aux_transpose(const Matrix<S>& g);

// U~ = W^t (Weyl x 1).
template <class S>
GeneratingMatrix<S> convert_contra_to_co(const GeneratingMatrix<S>& w, const Matrix<S>& weyl);
// W~ = (Weyl^t x 1) U^t.
template <class S>
GeneratingMatrix<S> convert_co_to_contra(const GeneratingMatrix<S>& u, const Matrix<S>& weyl);

// U^ = (chi x 1) U^t, W^ = W^t (chi x 1).
template <class S>
GeneratingMatrix<S> chi_transform(const GeneratingMatrix<S>& g);
// L1 U^2 - R U^2 L1 (covariant) or L1 W^2 - W^2 R^-1 L1 (contravariant).
template <class S>
double verify_hat(const GeneratingMatrix<S>& g, const Matrix<S>& lp, const Matrix<S>& lm, const Matrix<S>& rp,
                  const Matrix<S>& rm, const ModelSpace<S>& ms);

// Worst commutator of every entry of an operator matrix with q^H and X+- on
// the margin columns.
template <class S>
double scalar_residual(const Matrix<S>& z, std::size_t n, const ModelSpace<S>& ms, int margin);
template <class S>
Matrix<S> weyl_sandwich_U(const GeneratingMatrix<S>& u, const Matrix<S>& weyl);
template <class S>
Matrix<S> weyl_sandwich_W(const GeneratingMatrix<S>& w, const Matrix<S>& weyl);

// Fusion of generating matrices onto the span of V (Vd a left inverse):
// covariant Vd F U_B^2 U_A^1 V, contravariant Vd W_A^1 W_B^2 F V. F must
// commute with the model generators.
template <class S>
GeneratingMatrix<S> fuse_generating(const GeneratingMatrix<S>& a, const GeneratingMatrix<S>& b, const Matrix<S>& v,
                                    const Matrix<S>& vd, const Matrix<S>& f, const ModelSpace<S>& ms);

// Uncompressed invariant F U^2 U^1 P (covariant) or P W^1 W^2 F (contravariant)
// and its worst commutator with the generators.
template <class S>
struct Invariant {
    Matrix<S> op;
    double residual = 0.0;
};
template <class S>
Invariant<S> invariant_qdet(const GeneratingMatrix<S>& g, const Matrix<S>& p, const Matrix<S>& f,
                            const ModelSpace<S>& ms);

}  // namespace qtop
