#include "qtop/qscalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qtop {

void QContext::validate() const {
    if (root < 1) throw std::invalid_argument("root index must be positive");
    if (backend == Backend::Numeric) {
        if (!(q > 1.0)) throw std::invalid_argument("numeric q must be > 1");
        if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    }
}

Exp parse_exp(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Exp(std::stol(s));
        long num = std::stol(s.substr(0, slash));
        long den = std::stol(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Exp(num, den);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad rational: '" + s + "'");
    }
}

std::string exp_string(Exp e) {
    if (e.denominator() == 1) return std::to_string(e.numerator());
    return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

double to_double(Exp e) { return static_cast<double>(e.numerator()) / static_cast<double>(e.denominator()); }

Laurent::Laurent(long c) {
    if (c != 0) terms_.emplace_back(Exp(0), Rational(c));
}

Laurent::Laurent(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace_back(Exp(0), c);
}

Laurent Laurent::monomial(Exp e, const Rational& c) {
    Laurent x;
    if (sgn(c) != 0) x.terms_.emplace_back(e, c);
    return x;
}

Exp Laurent::min_exp() const {
    if (terms_.empty()) throw std::domain_error("min_exp of zero");
    return terms_.front().first;
}

Exp Laurent::max_exp() const {
    if (terms_.empty()) throw std::domain_error("max_exp of zero");
    return terms_.back().first;
}

void Laurent::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.second) == 0; }), out.end());
    terms_ = std::move(out);
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == terms_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational c = a->second + b->second;
            if (sgn(c) != 0) out.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.emplace_back(x.first + y.first, x.second * y.second);
    if (a.terms_.size() > 1 && b.terms_.size() > 1) r.canonicalize();
    return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

bool operator==(const Laurent& a, const Laurent& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

Laurent Laurent::inverse_monomial() const {
    if (!is_monomial()) throw std::domain_error("exact division by a non-monomial: " + str());
    return monomial(-terms_[0].first, 1 / terms_[0].second);
}

Laurent Laurent::divide_exact(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (b.is_monomial()) return a * b.inverse_monomial();
    // long division from the top exponent; exponents must align on b's lattice
    Laurent rem = a;
    Laurent quot;
    const Exp lead = b.max_exp();
    const Rational lead_c = b.terms_.back().second;
    const Exp span = b.max_exp() - b.min_exp();
    while (!rem.is_zero()) {
        if (rem.max_exp() - rem.min_exp() < span) throw std::domain_error("not divisible: " + a.str() + " / " + b.str());
        Laurent t = monomial(rem.max_exp() - lead, rem.terms_.back().second / lead_c);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

Numeric Laurent::eval(double q) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.second.get_d() * std::pow(q, to_double(t.first));
    return {s, 0.0};
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        Rational ac = abs(c);
        bool unit = ac == 1;
        if (it->first == 0) {
            os << ac.get_str();
            continue;
        }
        if (!unit) os << ac.get_str() << "*";
        os << "q";
        if (it->first != 1) os << "^(" << exp_string(it->first) << ")";
    }
    return os.str();
}

bool Laurent::fits_root(int root) const {
    for (const auto& t : terms_)
        if ((t.first * root).denominator() != 1) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Laurent& x) { return os << x.str(); }

Numeric ScalarTraits<Numeric>::qpow(Exp e, const QContext& ctx) { return {std::pow(ctx.q, to_double(e)), 0.0}; }

Rational ScalarTraits<Rational>::qpow(Exp e, const QContext&) {
    // classical arithmetic: q = 1
    (void)e;
    return 1;
}

template <>
Laurent omega<Laurent>(const QContext&) {
    return Laurent::monomial(Exp(1)) - Laurent::monomial(Exp(-1));
}

template <>
Numeric omega<Numeric>(const QContext& ctx) {
    return {ctx.q - 1.0 / ctx.q, 0.0};
}

template <>
Numeric qnum_rational<Numeric>(Exp x, const QContext& ctx) {
    if (x == 0) return {};
    const double q = ctx.q;
    const double xv = to_double(x);
    // sinh form keeps precision near q = 1
    const double lq = std::log(q);
    return {std::sinh(xv * lq) / std::sinh(lq), 0.0};
}

template <>
Numeric qnum<Numeric>(long k, const QContext& ctx) {
    return qnum_rational<Numeric>(Exp(k), ctx);
}

template <>
Laurent qnum<Laurent>(long k, const QContext&) {
    Laurent r;
    long n = std::labs(k);
    for (long j = n - 1; j >= 1 - n; j -= 2) r += Laurent::monomial(Exp(j));
    return k < 0 ? -r : r;
}

template <>
Laurent qnum_rational<Laurent>(Exp x, const QContext& ctx) {
    if ((x * ctx.root).denominator() != 1)
        throw std::domain_error("exponent " + exp_string(x) + " is not an integer power of q^(1/" +
                                std::to_string(ctx.root) + ")");
    if (x.denominator() == 1) return qnum<Laurent>(x.numerator(), ctx);
    Laurent num = Laurent::monomial(x) - Laurent::monomial(-x);
    return Laurent::divide_exact(num, omega<Laurent>(ctx));
}

template <class S>
S qfactorial(long r, FactorialVariant variant, const QContext& ctx) {
    if (r < 0) throw std::domain_error("negative factorial argument");
    S acc = ScalarTraits<S>::one();
    for (long k = 1; k <= r; ++k) {
        if (variant == FactorialVariant::Bracket) {
            acc = acc * qnum<S>(k, ctx);
        } else {
            // (q^k - 1)/(q - 1) = 1 + q + ... + q^(k-1)
            S s = ScalarTraits<S>::zero();
            for (long j = 0; j < k; ++j) s = s + ScalarTraits<S>::qpow(Exp(j), ctx);
            acc = acc * s;
        }
    }
    return acc;
}

template Laurent qfactorial<Laurent>(long, FactorialVariant, const QContext&);
template Numeric qfactorial<Numeric>(long, FactorialVariant, const QContext&);

}  // namespace qtop
