#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qtop/ringmat.hpp"

namespace qtop {

enum class Basis { Unitary, Integral };
// Half: sl(2) H with q^H X+ q^-H = q X+. Full: sl(n) H_i with Cartan-integer shifts.
enum class HNorm { Half, Full };
// RCompatible is the coproduct intertwined by the series R-matrix:
// X -> X (x) q^H + q^-H (x) X. PaperLiteral is its flip.
enum class CoproductOrder { RCompatible, PaperLiteral };

struct AlgebraSpec {
    int n = 2;
    std::vector<std::vector<int>> cartan;
    std::vector<int> theta;  // 0-based Dynkin involution

    static AlgebraSpec sl(int n);
    bool theta_involutive() const;
};

template <class S>
struct Representation {
    std::string label;
    Basis basis = Basis::Integral;
    HNorm hnorm = HNorm::Half;
    std::size_t dim = 0;
    std::vector<std::vector<Exp>> weights;  // weights[i][k]: H_i on basis vector k
    std::vector<Matrix<S>> xp, xm;

    std::size_t rank() const { return xp.size(); }
    // q^(c H_i)
    Matrix<S> qH(std::size_t i, Exp c, const QContext& ctx) const;
    // H_i as a matrix (rational entries).
    Matrix<S> H(std::size_t i) const;
    // exponent multiplier kappa: q^(kappa H_i) is the "Cartan part" of the coproduct
    Exp kappa() const { return hnorm == HNorm::Half ? Exp(1) : Exp(1, 2); }
};

template <class S>
Representation<S> spin_rep(Exp s, Basis basis, const QContext& ctx);
template <class S>
Representation<S> fundamental_rep(int n, const QContext& ctx);
template <class S>
Representation<S> coproduct_rep(const Representation<S>& r1, const Representation<S>& r2, const QContext& ctx,
                                CoproductOrder order = CoproductOrder::RCompatible);
// Worst residual of the defining relations (commutator and Cartan conjugation).
template <class S>
double check_relations(const Representation<S>& r, const QContext& ctx);
// Weight multiplicities of H_0 (sorted descending by weight).
template <class S>
std::vector<std::pair<Exp, int>> weight_multiplicities(const Representation<S>& r);

// Polynomials z1^a z2^b with a+b <= D, ordered by degree then a descending,
// so each degree block lists |j,j>, |j,j-1>, ..., |j,-j>.
template <class S>
class ModelSpace {
public:
    ModelSpace(int D, Exp gamma, const QContext& ctx);

    int D() const { return D_; }
    Exp gamma() const { return gamma_; }
    const QContext& ctx() const { return ctx_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::pair<int, int>>& basis() const { return basis_; }
    std::size_t index(int a, int b) const;
    int degree(std::size_t i) const { return basis_[i].first + basis_[i].second; }

    Matrix<S> xp() const;
    Matrix<S> xm() const;
    Matrix<S> qH(Exp c) const;
    Matrix<S> z1() const;
    Matrix<S> z2() const;
    Matrix<S> l1() const;  // z1^-1 [z1 d1]
    Matrix<S> l2() const;
    Matrix<S> dil1(Exp c) const;  // q^(c z1 d1)
    Matrix<S> dil2(Exp c) const;
    Matrix<S> spin_p() const;     // a+b+1
    Matrix<S> qp(Exp c) const;    // q^(c p)
    Matrix<S> diag_p(const std::function<S(int)>& f) const;
    Matrix<S> identity() const { return Matrix<S>::identity(dim()); }

    // Basis indices of degree <= D - mu.
    std::vector<std::size_t> margin_indices(int mu) const;
    // Column indices in aux (x) model of dimension aux * dim() restricted to the margin.
    std::vector<std::size_t> margin_cols(std::size_t aux, int mu) const;

private:
    using Step = std::function<bool(int, int, int&, int&, S&)>;
    Matrix<S> build(const Step& f) const;

    int D_;
    Exp gamma_;
    QContext ctx_;
    std::vector<std::pair<int, int>> basis_;
    std::vector<std::size_t> offset_;
};

// Coefficient vector of |j,m> = z1^(j+m) z2^(j-m) / sqrt([j+m]! [j-m]!).
std::vector<Numeric> model_vector(Exp j, Exp m, int D, const QContext& ctx);
// Columns |j,j>, ..., |j,-j> (dim x (2j+1)) and the matching dual rows.
Matrix<Numeric> model_block(Exp j, const ModelSpace<Numeric>& ms);
Matrix<Numeric> model_dual_block(Exp j, const ModelSpace<Numeric>& ms);

}  // namespace qtop
