#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtop/topgen.hpp"

namespace qtop {

// Classical spin-s rep in the integral basis: X+ e_k = k e_(k-1), X- e_k = (2s-k) e_(k+1).
template <class S>
struct ClassicalRep {
    Exp spin = 0;
    Matrix<S> h, xp, xm;
    std::size_t dim() const { return h.rows(); }
};

template <class S>
ClassicalRep<S> classical_spin_rep(Exp s);

template <class S>
struct ClassicalRMatrix {
    Matrix<S> m;
    Exp spin_i = 0, spin_j = 0;
    Variant variant = Variant::Plus;
    std::string algebra = "classical";
};

// r = 2 (H x H + X+ x X-); r- = -r' with r' = 2 (H x H + X- x X+).
template <class S>
ClassicalRMatrix<S> classical_r_sl2(const ClassicalRep<S>& a, const ClassicalRep<S>& b, Variant v);

// [r12, r13] + [r12, r23] + [r13, r23] on legs (d1, d2, d3).
template <class S>
double verify_CYBE(const Matrix<S>& r12, const Matrix<S>& r13, const Matrix<S>& r23, const std::vector<std::size_t>& dims);
template <class S>
double verify_CYBE(const Matrix<S>& r, std::size_t d);

// (R(1+eps) - 1)/eps, optionally Richardson-extrapolated with eps/2.
Matrix<Numeric> q_derivative_limit(const std::function<Matrix<Numeric>(double)>& builder, double eps,
                                   bool richardson = true);

// chi1 r chi1 = r^{t1} and chi2 r chi2 = r^{t2}, chi antidiagonal.
template <class S>
double classical_chi_residual(const ClassicalRMatrix<S>& r);

// Polynomials z1^a z2^b, a + b <= D, in the same order as ModelSpace.
template <class S>
class ClassicalModel {
public:
    explicit ClassicalModel(int D);

    int D() const { return D_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t index(int a, int b) const;
    int degree(std::size_t i) const { return basis_[i].first + basis_[i].second; }

    Matrix<S> z1() const;
    Matrix<S> z2() const;
    Matrix<S> d1() const;
    Matrix<S> d2() const;
    Matrix<S> xp() const { return z1() * d2(); }
    Matrix<S> xm() const { return z2() * d1(); }
    Matrix<S> h() const;
    Matrix<S> diag_p(const std::function<S(int)>& f) const;
    Matrix<S> identity() const { return Matrix<S>::identity(dim()); }
    std::vector<std::size_t> margin_cols(std::size_t aux, int mu) const;

private:
    using Step = std::function<bool(int, int, int&, int&, S&)>;
    Matrix<S> build(const Step& f) const;

    int D_;
    std::vector<std::pair<int, int>> basis_;
    std::vector<std::size_t> offset_;
};

// [X+, X-] - 2H, [H, X+-] -+ X+- on the whole truncated space.
template <class S>
double classical_model_residual(const ClassicalModel<S>& cm);

// [[d1, -z2], [d2, z1]] f(p).
template <class S>
GeneratingMatrix<S> build_classical_W_half(const ClassicalModel<S>& cm, Normalizer f);

// l+ = (rho x id) r, l- = -(rho x id) r' with rho the spin-1/2 rep; legs (2, model).
template <class S>
Matrix<S> classical_l(const ClassicalModel<S>& cm, Variant v);

// Covariant [l1, U2] - U2 r, contravariant [l1, W2] + r W2, on margin columns,
// worst over (l+, r+) and (l-, r-).
template <class S>
double verify_classical_generating(const GeneratingMatrix<S>& g, const Matrix<S>& lp, const Matrix<S>& lm,
                                   const Matrix<S>& rp, const Matrix<S>& rm, const ClassicalModel<S>& cm);

// [l1+ - l1-, W2] + c W2 with c = r+ - r- (contravariant only).
template <class S>
double classical_casimir_residual(const GeneratingMatrix<S>& w, const Matrix<S>& lp, const Matrix<S>& lm,
                                  const Matrix<S>& rp, const Matrix<S>& rm, const ClassicalModel<S>& cm);

// Component form: covariant [H, U] = U rho(H), [X+-, U] = U rho(X+-) per row;
// contravariant [x, W] = -rho(x) W per column. Worst over rows/columns.
template <class S>
double classical_components(const GeneratingMatrix<S>& g, const ClassicalRep<S>& rho, const ClassicalModel<S>& cm);

// q -> 1 Weyl element: W_mk = (-1)^k delta(m, 2s+2-k).
template <class S>
Matrix<S> classical_weyl(Exp s);

// U~ = W^t (Weyl x 1).
template <class S>
GeneratingMatrix<S> classical_convert(const GeneratingMatrix<S>& w);

}  // namespace qtop
