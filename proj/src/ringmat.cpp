#include "qtop/ringmat.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace qtop {

namespace {

using EMat = Eigen::Matrix<Numeric, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMat> view(const Matrix<Numeric>& m) { return {m.data().data(), Eigen::Index(m.rows()), Eigen::Index(m.cols())}; }

Matrix<Numeric> from_eigen(const Eigen::MatrixXcd& e) {
    Matrix<Numeric> m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

}  // namespace

Matrix<Numeric> operator*(const Matrix<Numeric>& a, const Matrix<Numeric>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<Numeric> c(a.rows(), b.cols());
    Eigen::Map<EMat> out(c.data().data(), Eigen::Index(c.rows()), Eigen::Index(c.cols()));
    out.noalias() = view(a) * view(b);
    if (a.square() && b.square() && a.legs() == b.legs() && !a.legs().empty()) c.with_legs(a.legs());
    return c;
}

Matrix<Numeric> inverse(const Matrix<Numeric>& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    Eigen::MatrixXcd e = view(m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(e);
    Eigen::MatrixXcd inv = lu.inverse();
    if (!inv.allFinite()) throw std::domain_error("inverse: singular matrix");
    auto out = from_eigen(inv);
    if (!m.legs().empty()) out.with_legs(m.legs());
    return out;
}

Matrix<Numeric> adjoint(const Matrix<Numeric>& m) {
    Matrix<Numeric> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
    return t;
}

Matrix<Numeric> spectral_projector(const Matrix<Numeric>& m, Numeric eigenvalue, double tol) {
    if (!m.square()) throw std::invalid_argument("spectral_projector: non-square");
    Eigen::MatrixXcd e = view(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(e, false);
    if (es.info() != Eigen::Success) throw std::domain_error("spectral_projector: eigen decomposition failed");
    const auto& ev = es.eigenvalues();
    std::vector<Numeric> others;
    bool found = false;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        double d = std::abs(ev[k] - eigenvalue);
        if (d <= tol) {
            found = true;
            continue;
        }
        if (d <= 100 * tol) throw std::domain_error("spectral_projector: eigenvalue cluster unresolved");
        bool dup = false;
        for (auto& o : others)
            if (std::abs(o - ev[k]) <= tol) dup = true;
        if (!dup) others.push_back(ev[k]);
    }
    if (!found) throw std::domain_error("spectral_projector: eigenvalue not found");
    const std::size_t n = m.rows();
    auto p = Matrix<Numeric>::identity(n);
    for (const auto& mu : others) p = (1.0 / (eigenvalue - mu)) * (p * (m - mu * Matrix<Numeric>::identity(n)));
    if (!m.legs().empty()) p.with_legs(m.legs());
    return p;
}

std::size_t numeric_rank(const Matrix<Numeric>& m, double tol) {
    Eigen::MatrixXcd e = view(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s[0] : 0.0;
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s[k] > tol * std::max(1.0, smax)) ++r;
    return r;
}

Matrix<Numeric> null_space(const Matrix<Numeric>& m, double tol) {
    Eigen::MatrixXcd e = view(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s[0] : 0.0;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < e.cols(); ++k)
        if (k >= s.size() || s[k] <= tol * std::max(1.0, smax)) keep.push_back(k);
    Matrix<Numeric> out(e.cols(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (Eigen::Index i = 0; i < e.cols(); ++i) out(i, c) = svd.matrixV()(i, keep[c]);
    return out;
}

Matrix<Numeric> image_basis(const Matrix<Numeric>& p, double tol) {
    Eigen::MatrixXcd e = view(p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s[0] : 0.0;
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s[k] > tol * std::max(1.0, smax)) ++r;
    Matrix<Numeric> out(e.rows(), r);
    for (std::size_t c = 0; c < r; ++c)
        for (Eigen::Index i = 0; i < e.rows(); ++i) out(i, c) = svd.matrixU()(i, c);
    return out;
}

template <class S>
HeckePair<S> hecke_projectors(const Matrix<S>& rhat, int n, const QContext& ctx) {
    using T = ScalarTraits<S>;
    if (n < 2 || rhat.rows() != std::size_t(n * n)) throw std::invalid_argument("hecke_projectors: dimension mismatch");
    const auto id = Matrix<S>::identity(rhat.rows());
    // (Rhat - q^(1-1/n)) (Rhat + q^(-1-1/n)) = 0
    auto a = rhat - T::qpow(Exp(1) - Exp(1, n), ctx) * id;
    auto b = rhat + T::qpow(Exp(-1) - Exp(1, n), ctx) * id;
    double h = residual_norm(a * b);
    if (h > (T::exact ? 0.0 : 1e-10)) throw std::domain_error("hecke_projectors: input is not Hecke with the expected normalization");
    HeckePair<S> out;
    out.minus.num = T::qpow(Exp(1), ctx) * id - T::qpow(Exp(1, n), ctx) * rhat;
    out.minus.denom = qnum<S>(2, ctx);
    if constexpr (!T::exact) {
        out.minus.num = T::inv(out.minus.denom) * out.minus.num;
        out.minus.denom = T::one();
    }
    out.plus.num = out.minus.denom * id - out.minus.num;
    out.plus.denom = out.minus.denom;
    out.minus.num.with_legs({std::size_t(n), std::size_t(n)});
    out.plus.num.with_legs({std::size_t(n), std::size_t(n)});
    return out;
}

template <class S>
long projector_rank(const Projector<S>& p, const QContext& ctx) {
    using T = ScalarTraits<S>;
    S tr = trace(p.num);
    const double qv = T::exact ? 1.37 : ctx.q;
    double r = (T::eval(tr, qv) / T::eval(p.denom, qv)).real();
    long k = std::lround(r);
    if constexpr (T::exact) {
        if (!(tr == S(k) * p.denom)) throw std::domain_error("projector_rank: trace is not an integer multiple");
    } else {
        if (std::abs(r - double(k)) > 1e-8) throw std::domain_error("projector_rank: non-integer trace");
    }
    return k;
}

template HeckePair<Laurent> hecke_projectors<Laurent>(const Matrix<Laurent>&, int, const QContext&);
template HeckePair<Numeric> hecke_projectors<Numeric>(const Matrix<Numeric>&, int, const QContext&);
template long projector_rank<Laurent>(const Projector<Laurent>&, const QContext&);
template long projector_rank<Numeric>(const Projector<Numeric>&, const QContext&);

}  // namespace qtop
