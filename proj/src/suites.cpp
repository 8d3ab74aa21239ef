#include "qtop/suites.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "qtop/classic.hpp"
#include "qtop/wigner.hpp"

namespace qtop {

using LM = Matrix<Laurent>;
using NM = Matrix<Numeric>;
using QM = Matrix<Rational>;

namespace {

const Exp kHalf(1, 2);

// Memo shared by the checks of one run; the first caller builds, others wait.
class Cache {
public:
    template <class T>
    std::shared_ptr<const T> get(const std::string& key, const std::function<T()>& make) {
        std::promise<std::shared_ptr<const void>> promise;
        std::shared_future<std::shared_ptr<const void>> fut;
        bool owner = false;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = items_.find(key);
            if (it == items_.end()) {
                fut = promise.get_future().share();
                items_.emplace(key, fut);
                owner = true;
            } else {
                fut = it->second;
            }
        }
        if (owner) {
            try {
                promise.set_value(std::make_shared<const T>(make()));
            } catch (...) {
                promise.set_exception(std::current_exception());
            }
        }
        return std::static_pointer_cast<const T>(fut.get());
    }

private:
    std::mutex mu_;
    std::map<std::string, std::shared_future<std::shared_ptr<const void>>> items_;
};

template <class S>
struct Setup {
    QContext ctx;
    ModelSpace<S> ms;
    Matrix<S> lp, lm, rp, rm;
    Setup(int D, Exp gamma, const QContext& c)
        : ctx(c),
          ms(D, gamma, c),
          lp(build_L(ms, Variant::Plus)),
          lm(build_L(ms, Variant::Minus)),
          rp(fundamental_R<S>(2, Variant::Plus, c).m),
          rm(fundamental_R<S>(2, Variant::Minus, c).m) {}
};

struct Gen {
    GeneratingMatrix<Numeric> w, u;
};

std::string vname(Variant v) { return v == Variant::Plus ? "plus" : "minus"; }
std::string nstr(int n) { return "n=" + std::to_string(n); }

template <class S>
Matrix<S> perturb(Matrix<S> m, std::size_t i, std::size_t j, double eps = 1e-3) {
    m(i, j) += eps;
    return m;
}

struct Env {
    RunConfig cfg;
    std::shared_ptr<Cache> cache = std::make_shared<Cache>();

    QContext nctx() const { return QContext::numeric(cfg.q); }
    int exact_D(int cap) const { return std::min(cfg.D, cap); }
    Normalizer normalizer() const { return cfg.normalizer.value_or(Normalizer::InverseSqrtQnum); }
    Exp gamma0() const { return cfg.gamma.value_or(Exp(0)); }

    std::vector<int> ns() const { return cfg.n ? std::vector<int>{*cfg.n} : std::vector<int>{2, 3, 4}; }
    bool has_n(int n) const { return !cfg.n || *cfg.n == n; }
    std::vector<Exp> gammas_numeric() const {
        return cfg.gamma ? std::vector<Exp>{*cfg.gamma} : std::vector<Exp>{0, kHalf, 1};
    }
    std::vector<Exp> gammas_exact() const { return cfg.gamma ? std::vector<Exp>{*cfg.gamma} : std::vector<Exp>{0, kHalf}; }
    std::vector<Exp> spins() const {
        return cfg.spin ? std::vector<Exp>{*cfg.spin} : std::vector<Exp>{kHalf, 1, Exp(3, 2), 2};
    }

    std::shared_ptr<const Setup<Numeric>> num(Exp gamma) const {
        const int D = cfg.D;
        const auto ctx = nctx();
        return cache->get<Setup<Numeric>>("num D=" + std::to_string(D) + " g=" + exp_string(gamma),
                                          [=] { return Setup<Numeric>(D, gamma, ctx); });
    }
    std::shared_ptr<const Setup<Laurent>> exact(int D, Exp gamma) const {
        return cache->get<Setup<Laurent>>("exact D=" + std::to_string(D) + " g=" + exp_string(gamma),
                                          [=] { return Setup<Laurent>(D, gamma, QContext::exact(2)); });
    }
    std::shared_ptr<const Gen> gen(Exp gamma) const {
        auto s = num(gamma);
        const Normalizer f = normalizer();
        return cache->get<Gen>("gen g=" + exp_string(gamma), [=] {
            auto w = build_W_half(s->ms, f);
            auto u = convert_contra_to_co(w, weyl_spin<Numeric>(kHalf, s->ctx));
            return Gen{w, u};
        });
    }
    std::shared_ptr<const CGMap> cg_top() const {
        const auto ctx = nctx();
        return cache->get<CGMap>("cg 1/2 1/2 1", [=] { return build_cg(kHalf, kHalf, 1, ctx); });
    }
};

class Builder {
public:
    Builder(const RunConfig& cfg, std::vector<Check>& out) : cfg_(cfg), out_(out) {}

    // backend: "exact", "numeric" or "any".
    void add(const std::string& backend, int criterion, const std::string& id, const std::string& anchor, double tol,
             Bound bound, std::function<double()> run) {
        if (cfg_.backend_set && backend != "any" && backend != cfg_.backend) return;
        if (cfg_.tol_set && bound == Bound::Upper && backend == "numeric") tol = cfg_.tol;
        char prefix[8];
        std::snprintf(prefix, sizeof prefix, "c%02d.", criterion);
        out_.push_back({prefix + id, anchor, criterion, tol, bound, std::move(run)});
    }
    void upper(const std::string& backend, int criterion, const std::string& id, const std::string& anchor, double tol,
               std::function<double()> run) {
        add(backend, criterion, id, anchor, tol, Bound::Upper, std::move(run));
    }
    void control(int criterion, const std::string& id, const std::string& anchor, std::function<double()> run,
                 const std::string& backend = "numeric") {
        add(backend, criterion, id, "negative control: " + anchor, 1e-4, Bound::Lower, std::move(run));
    }

private:
    const RunConfig& cfg_;
    std::vector<Check>& out_;
};

void suite_ybe(Builder& b, const Env& env) {
    const double q = env.cfg.q;
    if (env.has_n(2)) {
        b.upper("exact", 1, "route.universal-vs-fundamental", "universal R-matrix against the fundamental R-matrix", 0,
                [] {
                    auto ctx = QContext::exact(2);
                    auto h = spin_rep<Laurent>(kHalf, Basis::Integral, ctx);
                    return residual_norm(universal_R_sl2(h, h, ctx).m, fundamental_R<Laurent>(2, Variant::Plus, ctx).m);
                });
        for (auto v : {Variant::Plus, Variant::Minus})
            b.upper("exact", 1, "route.lop-vs-fundamental." + vname(v),
                    "L-operator substitution against the fundamental R-matrix", 0, [v] {
                        auto ctx = QContext::exact(2);
                        return residual_norm(lop_substituted_R<Laurent>(kHalf, v, ctx, Basis::Integral).m,
                                             fundamental_R<Laurent>(2, v, ctx).m);
                    });
    }
    for (int n : env.ns())
        for (auto v : {Variant::Plus, Variant::Minus}) {
            b.upper("exact", 2, "ybe.exact." + nstr(n) + "." + vname(v), "Yang-Baxter equation", 0,
                    [n, v] { return verify_YBE(fundamental_R<Laurent>(n, v, QContext::exact(2 * n)).m); });
            b.upper("numeric", 2, "ybe.numeric." + nstr(n) + "." + vname(v), "Yang-Baxter equation", 1e-10,
                    [n, v, q] { return verify_YBE(fundamental_R<Numeric>(n, v, QContext::numeric(q)).m); });
        }
    for (Exp s : env.spins())
        for (auto v : {Variant::Plus, Variant::Minus})
            b.upper("numeric", 2, "ybe.mixed.s=" + exp_string(s) + "." + vname(v),
                    "Yang-Baxter equation with legs (1/2, 1/2, s)", 1e-10, [s, v, q] {
                        auto ctx = QContext::numeric(q);
                        auto r1s = lop_substituted_R<Numeric>(s, v, ctx, Basis::Unitary).m;
                        return verify_YBE(fundamental_R<Numeric>(2, v, ctx).m, r1s, r1s);
                    });
    b.control(12, "neg.ybe", "Yang-Baxter equation", [q] {
        return verify_YBE(perturb(fundamental_R<Numeric>(2, Variant::Plus, QContext::numeric(q)).m, 1, 2));
    });
}

void suite_rll(Builder& b, const Env& env) {
    const std::string anchor = "RLL relations";
    struct Rel {
        const char* name;
        bool r_plus, l1_plus, l2_plus;
    };
    const Rel rels[] = {{"R+L+L+", true, true, true}, {"R-L-L-", false, false, false}, {"R+L+L-", true, true, false}};
    for (const auto& rel : rels) {
        b.upper("numeric", 3, std::string("rll.numeric.") + rel.name, anchor, 1e-11, [env, rel] {
            auto s = env.num(0);
            return verify_RLL(rel.r_plus ? s->rp : s->rm, rel.l1_plus ? s->lp : s->lm, rel.l2_plus ? s->lp : s->lm,
                              s->ms.dim());
        });
        b.upper("exact", 3, std::string("rll.exact.") + rel.name, anchor, 0, [env, rel] {
            auto s = env.exact(env.exact_D(5), 0);
            return verify_RLL(rel.r_plus ? s->rp : s->rm, rel.l1_plus ? s->lp : s->lm, rel.l2_plus ? s->lp : s->lm,
                              s->ms.dim());
        });
    }
    b.control(12, "neg.rll", anchor, [env] {
        auto s = env.num(0);
        return verify_RLL(s->rp, perturb(s->lp, 0, 0), s->lp, s->ms.dim());
    });
}

void suite_reflection(Builder& b, const Env& env) {
    const std::string anchor = "reflection equation for L+ L-^-1";
    b.upper("numeric", 4, "reflection.numeric", anchor, 1e-10, [env] {
        auto s = env.num(0);
        return verify_reflection(reflection_L(s->ms), s->rp, s->rm, s->ms.dim());
    });
    b.upper("exact", 4, "reflection.exact", anchor, 0, [env] {
        auto s = env.exact(env.exact_D(4), 0);
        return verify_reflection(reflection_L(s->ms), s->rp, s->rm, s->ms.dim());
    });
    b.control(12, "neg.reflection", anchor, [env] {
        auto s = env.num(0);
        return verify_reflection(perturb(reflection_L(s->ms), 1, 1), s->rp, s->rm, s->ms.dim());
    });
}

void suite_contravariant(Builder& b, const Env& env) {
    const std::string anchor = "contravariant generating matrix relation";
    for (Exp g : env.gammas_exact()) {
        const std::string tag = ".gamma=" + exp_string(g);
        b.upper("exact", 5, "contra.exact" + tag, anchor, 0, [env, g] {
            auto s = env.exact(env.exact_D(6), g);
            return verify_contravariant(build_W_half(s->ms, Normalizer::Identity), s->lp, s->lm, s->rp, s->rm, s->ms);
        });
        b.upper("exact", 5, "contra.exact.components" + tag, "contravariant tensor operator components", 0, [env, g] {
            auto s = env.exact(env.exact_D(6), g);
            auto w = build_W_half(s->ms, Normalizer::Identity);
            auto rho = spin_rep<Laurent>(kHalf, Basis::Integral, s->ctx);
            double r = 0.0;
            for (double x : contravariant_components(w, rho, s->ms)) r = std::max(r, x);
            return r;
        });
    }
    for (Exp g : env.gammas_numeric()) {
        const std::string tag = ".gamma=" + exp_string(g);
        b.upper("numeric", 5, "contra.numeric" + tag, anchor, 1e-9, [env, g] {
            auto s = env.num(g);
            return verify_contravariant(env.gen(g)->w, s->lp, s->lm, s->rp, s->rm, s->ms);
        });
        b.upper("numeric", 5, "contra.numeric.components" + tag, "contravariant tensor operator components",
                env.cfg.tol, [env, g] {
                    auto s = env.num(g);
                    auto rho = spin_rep<Numeric>(kHalf, Basis::Unitary, s->ctx);
                    double r = 0.0;
                    for (double x : contravariant_components(env.gen(g)->w, rho, s->ms)) r = std::max(r, x);
                    return r;
                });
    }
    b.add("numeric", 5, "contra.literal-form-defect",
          "W^(1/2) without the q^(-+1/2) row factors is not contravariant", 1e-2, Bound::Lower, [env] {
              const Exp g = env.gamma0();
              auto s = env.num(g);
              return verify_contravariant(build_W_half(s->ms, env.normalizer(), HalfForm::Literal), s->lp, s->lm,
                                          s->rp, s->rm, s->ms);
          });
    b.control(12, "neg.contravariant", anchor, [env] {
        const Exp g = env.gamma0();
        auto s = env.num(g);
        auto w = env.gen(g)->w;
        w.m = perturb(w.m, 5, 3 + s->ms.dim());
        return verify_contravariant(w, s->lp, s->lm, s->rp, s->rm, s->ms);
    });
}

void suite_covariant(Builder& b, const Env& env) {
    const std::string anchor = "covariant generating matrix relation (Weyl conversion)";
    for (Exp g : env.gammas_numeric()) {
        const std::string tag = ".gamma=" + exp_string(g);
        b.upper("numeric", 6, "cov.numeric" + tag, anchor, 1e-9, [env, g] {
            auto s = env.num(g);
            return verify_covariant(env.gen(g)->u, s->lp, s->lm, s->rp, s->rm, s->ms);
        });
        b.upper("numeric", 6, "cov.numeric.components" + tag, "covariant tensor operator components", env.cfg.tol,
                [env, g] {
                    auto s = env.num(g);
                    auto rho = spin_rep<Numeric>(kHalf, Basis::Unitary, s->ctx);
                    double r = 0.0;
                    for (double x : covariant_components(env.gen(g)->u, rho, s->ms)) r = std::max(r, x);
                    return r;
                });
    }
    b.upper("numeric", 6, "cov.round-trip", "covariant to contravariant conversion returns -W", 1e-12, [env] {
        const Exp g = env.gamma0();
        auto gen = env.gen(g);
        auto back = convert_co_to_contra(gen->u, weyl_spin<Numeric>(kHalf, env.nctx()));
        return residual_norm(back.m, NM(-gen->w.m));
    });
    for (const char* which : {"W", "U"}) {
        const bool is_w = std::string(which) == "W";
        b.upper("numeric", 6, std::string("hat.") + which, "hat transform (chi-conjugated transpose) relations", 1e-9,
                [env, is_w] {
                    const Exp g = env.gamma0();
                    auto s = env.num(g);
                    auto gen = env.gen(g);
                    return verify_hat(chi_transform(is_w ? gen->w : gen->u), s->lp, s->lm, s->rp, s->rm, s->ms);
                });
    }
    b.control(12, "neg.covariant", anchor, [env] {
        const Exp g = env.gamma0();
        auto s = env.num(g);
        auto u = env.gen(g)->u;
        u.m = perturb(u.m, 4, s->ms.dim() + 2);
        return verify_covariant(u, s->lp, s->lm, s->rp, s->rm, s->ms);
    });
}

void suite_scalars(Builder& b, const Env& env) {
    const std::string anchor = "scalar products of generating matrices";
    b.upper("numeric", 7, "scalars.UW", anchor, 1e-9, [env] {
        const Exp g = env.gamma0();
        auto gen = env.gen(g);
        return scalar_residual(NM(gen->u.m * gen->w.m), 2, env.num(g)->ms, 2);
    });
    b.upper("numeric", 7, "scalars.U-weyl-Ut", anchor, 1e-9, [env] {
        const Exp g = env.gamma0();
        return scalar_residual(weyl_sandwich_U(env.gen(g)->u, weyl_spin<Numeric>(kHalf, env.nctx())), 2,
                               env.num(g)->ms, 2);
    });
    b.upper("numeric", 7, "scalars.Wt-weyl-W", anchor, 1e-9, [env] {
        const Exp g = env.gamma0();
        return scalar_residual(weyl_sandwich_W(env.gen(g)->w, weyl_spin<Numeric>(kHalf, env.nctx())), 2,
                               env.num(g)->ms, 2);
    });
    b.control(12, "neg.scalars", anchor, [env] {
        const Exp g = env.gamma0();
        auto gen = env.gen(g);
        return scalar_residual(perturb(NM(gen->u.m * gen->w.m), 1, 2), 2, env.num(g)->ms, 2);
    });
}

void suite_invariants(Builder& b, const Env& env) {
    const std::string anchor = "quantum determinant invariant";
    auto minus_projector = [](const Setup<Numeric>& s) {
        return hecke_projectors(NM(swap_operator<Numeric>(2, 2) * s.rp), 2, s.ctx);
    };
    for (const char* which : {"U", "W"}) {
        const bool is_w = std::string(which) == "W";
        b.upper("numeric", 7, std::string("qdet.") + which, anchor, 1e-8, [env, is_w, minus_projector] {
            const Exp g = env.gamma0();
            auto s = env.num(g);
            auto gen = env.gen(g);
            return invariant_qdet(is_w ? gen->w : gen->u, minus_projector(*s).minus.num, s->ms.identity(), s->ms)
                .residual;
        });
    }
    b.add("numeric", 7, "qdet.symmetrizer-not-invariant", "q-symmetrized product of U is not invariant", 1e-3,
          Bound::Lower, [env, minus_projector] {
              const Exp g = env.gamma0();
              auto s = env.num(g);
              return invariant_qdet(env.gen(g)->u, minus_projector(*s).plus.num, s->ms.identity(), s->ms).residual;
          });
    for (int n : env.ns())
        b.upper("exact", 7, "hecke-ranks." + nstr(n), "Hecke projector ranks n(n+1)/2 and n(n-1)/2", 0, [n] {
            auto ctx = QContext::exact(2 * n);
            auto hp = hecke_projectors(LM(swap_operator<Laurent>(n, n) * fundamental_R<Laurent>(n, Variant::Plus, ctx).m),
                                       n, ctx);
            return double(std::abs(projector_rank(hp.plus, ctx) - n * (n + 1) / 2) +
                          std::abs(projector_rank(hp.minus, ctx) - n * (n - 1) / 2));
        });
    b.control(12, "neg.qdet", anchor, [env, minus_projector] {
        const Exp g = env.gamma0();
        auto s = env.num(g);
        auto u = env.gen(g)->u;
        u.m = perturb(u.m, 4, s->ms.dim() + 2);
        return invariant_qdet(u, minus_projector(*s).minus.num, s->ms.identity(), s->ms).residual;
    });
}

void suite_fusion(Builder& b, const Env& env) {
    const std::string anchor = "fusion procedure";
    const double q = env.cfg.q;
    for (auto v : {Variant::Plus, Variant::Minus})
        b.upper("numeric", 8, "fused-R." + vname(v), "fused R-matrix against the spin-1 substitution", 1e-10,
                [env, v, q] {
                    auto ctx = QContext::numeric(q);
                    auto cg = env.cg_top();
                    auto r = fundamental_R<Numeric>(2, v, ctx);
                    auto f = normalize_reference(fuse_R(r, r, cg->cp, cg->c));
                    auto l = normalize_reference(lop_substituted_R<Numeric>(1, v, ctx, Basis::Unitary));
                    return residual_norm(f.m, l.m);
                });
    for (int n : env.ns())
        for (bool plus : {true, false})
            b.upper("exact", 8, "projector-commutation." + nstr(n) + (plus ? ".P+" : ".P-"),
                    "Hecke projectors commute with R13 R12", 0, [n, plus] {
                        auto ctx = QContext::exact(2 * n);
                        auto rp = fundamental_R<Laurent>(n, Variant::Plus, ctx).m;
                        auto rm = fundamental_R<Laurent>(n, Variant::Minus, ctx).m;
                        auto hp = hecke_projectors(LM(swap_operator<Laurent>(n, n) * rp), n, ctx);
                        const auto& p = plus ? hp.plus.num : hp.minus.num;
                        return std::max(verify_fusion_commutation(p, rp, rp), verify_fusion_commutation(p, rm, rm));
                    });
    for (bool qp : {false, true})
        for (bool contra : {true, false})
            b.upper("numeric", 8,
                    std::string("fused-generating.") + (contra ? "contra" : "cov") + (qp ? ".F=q^p" : ".F=identity"),
                    "fused generating matrix relation", 1e-8, [env, qp, contra] {
                        const Exp g = env.gamma0();
                        auto s = env.num(g);
                        auto gen = env.gen(g);
                        auto cg = env.cg_top();
                        auto rp = fundamental_R<Numeric>(2, Variant::Plus, s->ctx);
                        auto rm = fundamental_R<Numeric>(2, Variant::Minus, s->ctx);
                        auto fp = fuse_R(rp, rp, cg->cp, cg->c).m, fm = fuse_R(rm, rm, cg->cp, cg->c).m;
                        const NM f = qp ? s->ms.qp(1) : s->ms.identity();
                        const auto& base = contra ? gen->w : gen->u;
                        auto k = fuse_generating(base, base, cg->cp, cg->c, f, s->ms);
                        return contra ? verify_contravariant(k, s->lp, s->lm, fp, fm, s->ms)
                                      : verify_covariant(k, s->lp, s->lm, fp, fm, s->ms);
                    });
    b.control(12, "neg.fusion", anchor, [env, q] {
        auto cg = env.cg_top();
        auto r = fundamental_R<Numeric>(2, Variant::Plus, QContext::numeric(q)).m;
        return verify_fusion_commutation(perturb(NM(cg->cp * cg->c), 0, 1), r, r);
    });
}

void suite_wigner(Builder& b, const Env& env) {
    const std::string anchor = "Wigner-Eckart factorization";
    const double q = env.cfg.q;
    for (std::size_t k = 0; k < 2; ++k) {
        b.upper("numeric", 9, "we.W.col" + std::to_string(k + 1), anchor, 1e-7, [env, k] {
            const Exp g = env.gamma0();
            return wigner_eckart_residual(tensor_col(env.gen(g)->w, k), 4, env.num(g)->ms);
        });
        b.upper("numeric", 9, "we.U.row" + std::to_string(k + 1), anchor, 1e-7, [env, k] {
            const Exp g = env.gamma0();
            return wigner_eckart_residual(tensor_row(env.gen(g)->u, k), 4, env.num(g)->ms);
        });
    }
    b.upper("numeric", 9, "cg.intertwiner", "Clebsch-Gordan intertwiner property", 1e-11, [q] {
        auto ctx = QContext::numeric(q);
        double r = 0.0;
        for (Exp j1 = 0; j1 <= 2; j1 += kHalf)
            for (Exp j2 = 0; j2 <= 2; j2 += kHalf)
                for (Exp j : cg_channels(j1, j2)) r = std::max(r, verify_cg_intertwiner(build_cg(j1, j2, j, ctx), ctx));
        return r;
    });
    b.upper("numeric", 9, "cg.completeness", "Clebsch-Gordan completeness and orthogonality", 1e-11, [q] {
        auto ctx = QContext::numeric(q);
        double r = 0.0;
        for (Exp j1 = 0; j1 <= 2; j1 += kHalf)
            for (Exp j2 = 0; j2 <= 2; j2 += kHalf) r = std::max(r, verify_cg_completeness(j1, j2, ctx));
        return r;
    });
    b.upper("numeric", 9, "cg.fusion", "R-matrix fusion through Clebsch-Gordan maps", 1e-10, [q] {
        auto ctx = QContext::numeric(q);
        auto lop = [&](Exp s, Variant v) { return lop_substituted_R<Numeric>(s, v, ctx, Basis::Unitary).m; };
        double r = 0.0;
        for (auto v : {Variant::Plus, Variant::Minus})
            for (auto [i, j] : {std::pair{kHalf, kHalf}, std::pair{kHalf, Exp(1)}, std::pair{Exp(1), Exp(3, 2)}})
                for (Exp k : cg_channels(i, j))
                    r = std::max(r, verify_cg_fusion(build_cg(i, j, k, ctx), lop(j, v), lop(i, v), lop(k, v)));
        return r;
    });
    for (Exp k : {Exp(0), kHalf, Exp(1), Exp(3, 2), Exp(2)})
        b.upper("numeric", 9, "basis-action.K=" + exp_string(k), "L-operators on embedded basis vectors",
                k <= kHalf ? 1e-11 : 1e-10, [env, k] {
                    auto s = env.num(0);
                    return basis_action_check(k, s->ms, s->lp, s->lm);
                });
    b.control(12, "neg.wigner-eckart", anchor, [env] {
        const Exp g = env.gamma0();
        auto s = env.num(g);
        auto w = env.gen(g)->w;
        w.m = perturb(w.m, s->ms.index(1, 1), s->ms.dim() + s->ms.index(0, 1));
        return wigner_eckart_residual(tensor_col(w, 1), 4, s->ms);
    });
    b.control(12, "neg.cg", "Clebsch-Gordan intertwiner property", [q] {
        auto ctx = QContext::numeric(q);
        auto cg = build_cg(kHalf, 1, kHalf, ctx);
        cg.c(0, 1) += 1e-3;
        return verify_cg_intertwiner(cg, ctx);
    });
}

void suite_crossing(Builder& b, const Env& env) {
    const double q = env.cfg.q;
    for (int n : env.ns())
        for (auto v : {Variant::Plus, Variant::Minus}) {
            const std::string tag = nstr(n) + "." + vname(v);
            b.upper("exact", 10, "chi." + tag, "crossing with chi on one leg", 0, [n, v] {
                auto ctx = QContext::exact(2 * n);
                return verify_crossing_chi(fundamental_R<Laurent>(n, v, ctx).m, chi_matrix<Laurent>(n));
            });
            b.upper("exact", 10, "chi-full-transpose." + tag, "chi on both legs gives the full transpose", 0, [n, v] {
                auto ctx = QContext::exact(2 * n);
                auto r = fundamental_R<Laurent>(n, v, ctx).m;
                auto cc = kron(chi_matrix<Laurent>(n), chi_matrix<Laurent>(n));
                return residual_norm(LM(cc * r * cc), transpose(r));
            });
        }
    if (env.has_n(3))
        b.upper("exact", 10, "weyl-conjugation.n=3", "q-Weyl conjugation of matrix units", 0, [] {
            auto ctx = QContext::exact(6);
            auto w = weyl_fundamental<Laurent>(3, ctx);
            auto wi = inverse(w);
            double r = 0.0;
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    Laurent c = Laurent::monomial(i - j);
                    if ((i + j) % 2) c = -c;
                    r = std::max(r, residual_norm(LM(w * LM::unit(3, i - 1, j - 1) * wi), LM(c * LM::unit(3, 3 - i, 3 - j))));
                }
            return r;
        });
    if (env.has_n(2))
        for (auto v : {Variant::Plus, Variant::Minus}) {
            b.upper("exact", 10, "crossing-weyl.exact." + vname(v), "crossing with the q-Weyl element", 0, [v] {
                auto ctx = QContext::exact(2);
                return verify_crossing_weyl(fundamental_R<Laurent>(2, v, ctx).m, weyl_spin<Laurent>(kHalf, ctx));
            });
            b.upper("numeric", 10, "crossing-weyl.numeric." + vname(v), "crossing with the q-Weyl element", 1e-12,
                    [v, q] {
                        auto ctx = QContext::numeric(q);
                        return verify_crossing_weyl(fundamental_R<Numeric>(2, v, ctx).m, weyl_spin<Numeric>(kHalf, ctx));
                    });
        }
    b.control(12, "neg.crossing", "crossing with the q-Weyl element", [q] {
        auto ctx = QContext::numeric(q);
        return verify_crossing_weyl(perturb(fundamental_R<Numeric>(2, Variant::Plus, ctx).m, 0, 0),
                                    weyl_spin<Numeric>(kHalf, ctx));
    });
}

void suite_classical(Builder& b, const Env& env) {
    const auto half_q = classical_spin_rep<Rational>(kHalf);
    for (auto v : {Variant::Plus, Variant::Minus}) {
        auto fund = [v](double q) { return fundamental_R<Numeric>(2, v, QContext::numeric(q)).m; };
        const NM r = to_numeric(classical_r_sl2(half_q, half_q, v).m, 1.0);
        b.upper("numeric", 11, "r-limit." + vname(v), "classical r-matrix as the first-order term of R", 1e-5,
                [fund, r] { return residual_norm(q_derivative_limit(fund, 1e-6, false), r); });
        b.upper("numeric", 11, "r-limit.richardson." + vname(v), "classical r-matrix as the first-order term of R",
                1e-9, [fund, r] { return residual_norm(q_derivative_limit(fund, 1e-6, true), r); });
        b.upper("exact", 11, "cybe." + vname(v), "classical Yang-Baxter equation", 0,
                [half_q, v] { return verify_CYBE(classical_r_sl2(half_q, half_q, v).m, 2); });
        b.upper("exact", 0, "classical-chi." + vname(v), "classical crossing with chi on one leg", 0, [half_q, v] {
            auto one = classical_spin_rep<Rational>(1);
            return std::max(classical_chi_residual(classical_r_sl2(half_q, half_q, v)),
                            classical_chi_residual(classical_r_sl2(half_q, one, v)));
        });
    }
    struct Exact {
        ClassicalModel<Rational> cm;
        QM lp, lm, rp, rm;
        GeneratingMatrix<Rational> w, u;
    };
    auto exact = [env, half_q] {
        const int D = env.exact_D(6);
        return env.cache->get<Exact>("classical D=" + std::to_string(D), [D, half_q] {
            ClassicalModel<Rational> cm(D);
            auto w = build_classical_W_half(cm, Normalizer::Identity);
            return Exact{cm,
                         classical_l(cm, Variant::Plus),
                         classical_l(cm, Variant::Minus),
                         classical_r_sl2(half_q, half_q, Variant::Plus).m,
                         classical_r_sl2(half_q, half_q, Variant::Minus).m,
                         w,
                         classical_convert(w)};
        });
    };
    const std::string anchor = "classical limit of the generating matrix relations";
    b.upper("exact", 11, "classical-model", "classical sl(2) realization on polynomials", 0,
            [exact] { return classical_model_residual(exact()->cm); });
    b.upper("exact", 11, "classical-W.contra", anchor, 0, [exact] {
        auto e = exact();
        return verify_classical_generating(e->w, e->lp, e->lm, e->rp, e->rm, e->cm);
    });
    b.upper("exact", 11, "classical-W.components", "classical contravariant components", 0,
            [exact, half_q] { return classical_components(exact()->w, half_q, exact()->cm); });
    b.upper("exact", 11, "classical-W.casimir", "tensor Casimir consequence", 0, [exact] {
        auto e = exact();
        return classical_casimir_residual(e->w, e->lp, e->lm, e->rp, e->rm, e->cm);
    });
    b.upper("exact", 11, "classical-U.cov", "classical covariant relation after Weyl conversion", 0, [exact] {
        auto e = exact();
        return verify_classical_generating(e->u, e->lp, e->lm, e->rp, e->rm, e->cm);
    });
    b.upper("exact", 11, "classical-U.components", "classical covariant components", 0,
            [exact, half_q] { return classical_components(exact()->u, half_q, exact()->cm); });
    const int D = env.cfg.D;
    b.upper("numeric", 11, "q-limit.W", "q -> 1 limit of W^(1/2)", 1e-5, [D] {
        auto ctx = QContext::numeric(1 + 1e-6);
        ModelSpace<Numeric> ms(D, 0, ctx);
        auto wc = build_classical_W_half(ClassicalModel<Numeric>(D), Normalizer::InverseSqrtQnum);
        return residual_norm(build_W_half(ms, Normalizer::InverseSqrtQnum).m, wc.m);
    });
    b.upper("numeric", 11, "q-limit.U", "q -> 1 limit of the converted covariant matrix", 1e-5, [D] {
        auto ctx = QContext::numeric(1 + 1e-6);
        ModelSpace<Numeric> ms(D, 0, ctx);
        auto u = convert_contra_to_co(build_W_half(ms, Normalizer::InverseSqrtQnum), weyl_spin<Numeric>(kHalf, ctx));
        auto wc = build_classical_W_half(ClassicalModel<Numeric>(D), Normalizer::InverseSqrtQnum);
        return residual_norm(u.m, classical_convert(wc).m);
    });
    b.control(
        12, "neg.classical", anchor,
        [exact] {
            auto e = exact();
            auto w = e->w;
            w.m(e->cm.index(0, 0), e->cm.index(1, 0)) += Rational(1, 1000);
            return verify_classical_generating(w, e->lp, e->lm, e->rp, e->rm, e->cm);
        },
        "exact");
    b.control(
        12, "neg.cybe", "classical Yang-Baxter equation",
        [half_q] {
            auto r = classical_r_sl2(half_q, half_q, Variant::Plus).m;
            r(1, 1) += Rational(1, 1000);
            return verify_CYBE(r, 2);
        },
        "exact");
}

using SuiteFn = void (*)(Builder&, const Env&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"ybe", suite_ybe},
        {"rll", suite_rll},
        {"reflection", suite_reflection},
        {"crossing", suite_crossing},
        {"covariant", suite_covariant},
        {"contravariant", suite_contravariant},
        {"scalars", suite_scalars},
        {"fusion", suite_fusion},
        {"invariants", suite_invariants},
        {"wigner-eckart", suite_wigner},
        {"classical", suite_classical},
    };
    return r;
}

}  // namespace

void RunConfig::validate() const {
    if (backend != "numeric" && backend != "exact") throw std::invalid_argument("backend must be numeric or exact");
    if (!std::isfinite(q) || q <= 0 || q == 1) throw std::invalid_argument("q must be positive and different from 1");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (D < 1) throw std::invalid_argument("D must be at least 1");
    if (n && (*n < 2 || *n > 6)) throw std::invalid_argument("n must lie in [2, 6]");
    if (spin) {
        if (*spin < 0 || (*spin * 2).denominator() != 1) throw std::invalid_argument("spin must be a nonnegative half-integer");
        if (D < (*spin * 2).numerator()) throw std::invalid_argument("D must be at least 2 * spin");
    }
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (format != "json" && format != "text") throw std::invalid_argument("format must be json or text");
}

Json config_json(const RunConfig& cfg) {
    Json j;
    j["backend"] = cfg.backend;
    j["q"] = num(cfg.q);
    j["n"] = cfg.n ? Json(*cfg.n) : Json(nullptr);
    j["spin"] = cfg.spin ? Json(exp_string(*cfg.spin)) : Json(nullptr);
    j["D"] = cfg.D;
    j["gamma"] = cfg.gamma ? Json(exp_string(*cfg.gamma)) : Json(nullptr);
    j["normalizer"] = cfg.normalizer ? Json(normalizer_name(*cfg.normalizer)) : Json(nullptr);
    j["tol"] = num(cfg.tol);
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        v.push_back("all");
        return v;
    }();
    return names;
}

std::vector<Check> build_checks(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    std::vector<Check> out;
    Builder b(cfg, out);
    Env env{cfg};
    bool found = false;
    for (const auto& [name, fn] : registry())
        if (suite == "all" || suite == name) {
            fn(b, env);
            found = true;
        }
    if (!found) throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

}  // namespace qtop
