#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <gmpxx.h>

// Boost's mixed rational/integer equality recurses forever under C++20
// reversed-operator lookup; these non-template overloads take precedence.
namespace boost {
inline bool operator==(const rational<long>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<long>& a, int b) { return a == long(b); }
inline bool operator==(long b, const rational<long>& a) { return a == b; }
inline bool operator==(int b, const rational<long>& a) { return a == long(b); }
inline bool operator!=(const rational<long>& a, long b) { return !(a == b); }
inline bool operator!=(const rational<long>& a, int b) { return !(a == long(b)); }
}  // namespace boost

namespace qtop {

// Exponent of q. Always a small rational (k/2, k/(2n), ...).
using Exp = boost::rational<long>;
using Numeric = std::complex<double>;
using Rational = mpq_class;

enum class Backend { Exact, Numeric };

struct QContext {
    Backend backend = Backend::Numeric;
    double q = 1.2;
    int root = 2;  // t = q^(1/root)
    double tol = 1e-8;

    static QContext exact(int root = 2) { return {Backend::Exact, 1.2, root, 0.0}; }
    static QContext numeric(double q = 1.2, double tol = 1e-8) { return {Backend::Numeric, q, 2, tol}; }
    void validate() const;
};

Exp parse_exp(const std::string& s);
std::string exp_string(Exp e);
double to_double(Exp e);

// Laurent polynomial in fractional powers of q with rational coefficients.
// Terms are kept sorted by exponent with no zero coefficients, so equal
// values compare equal structurally.
class Laurent {
public:
    using Term = std::pair<Exp, Rational>;

    Laurent() = default;
    Laurent(long c);  // NOLINT(google-explicit-constructor)
    explicit Laurent(const Rational& c);

    static Laurent monomial(Exp e, const Rational& c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Exp min_exp() const;
    Exp max_exp() const;

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b);
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    // Inverse of a single-term value. Throws for anything else.
    Laurent inverse_monomial() const;
    // Exact quotient a / b; throws if b does not divide a in the Laurent ring.
    static Laurent divide_exact(const Laurent& a, const Laurent& b);

    Numeric eval(double q) const;
    std::string str() const;
    // Every exponent times `root` is an integer.
    bool fits_root(int root) const;

private:
    void canonicalize();
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Laurent& x);

// Uniform interface over the scalar backends used as matrix entries.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Laurent> {
    static constexpr bool exact = true;
    static Laurent zero() { return {}; }
    static Laurent one() { return Laurent(1); }
    static Laurent from_int(long k) { return Laurent(k); }
    static Laurent from_rational(const Rational& r) { return Laurent(r); }
    static Laurent qpow(Exp e, const QContext&) { return Laurent::monomial(e); }
    static bool is_zero(const Laurent& x) { return x.is_zero(); }
    static bool invertible(const Laurent& x) { return x.is_monomial(); }
    static Laurent inv(const Laurent& x) { return x.inverse_monomial(); }
    static Numeric eval(const Laurent& x, double q) { return x.eval(q); }
    static double diff(const Laurent& a, const Laurent& b) { return a == b ? 0.0 : 1.0; }
};

template <>
struct ScalarTraits<Numeric> {
    static constexpr bool exact = false;
    static Numeric zero() { return {0.0, 0.0}; }
    static Numeric one() { return {1.0, 0.0}; }
    static Numeric from_int(long k) { return {static_cast<double>(k), 0.0}; }
    static Numeric from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
    static Numeric qpow(Exp e, const QContext& ctx);
    static bool is_zero(const Numeric& x) { return x == Numeric{}; }
    static bool invertible(const Numeric& x) { return std::abs(x) > 1e-300; }
    static Numeric inv(const Numeric& x) { return 1.0 / x; }
    static Numeric eval(const Numeric& x, double) { return x; }
    static double diff(const Numeric& a, const Numeric& b) { return std::abs(a - b); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_int(long k) { return k; }
    static Rational from_rational(const Rational& r) { return r; }
    static Rational qpow(Exp e, const QContext&);
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static bool invertible(const Rational& x) { return sgn(x) != 0; }
    static Rational inv(const Rational& x) { return 1 / x; }
    static Numeric eval(const Rational& x, double) { return {x.get_d(), 0.0}; }
    static double diff(const Rational& a, const Rational& b) { return a == b ? 0.0 : 1.0; }
};

enum class FactorialVariant { Bracket, ExpSeries };

// [k] = (q^k - q^-k) / (q - q^-1)
template <class S>
S qnum(long k, const QContext& ctx);
template <class S>
S qnum_rational(Exp x, const QContext& ctx);
template <class S>
S qfactorial(long r, FactorialVariant variant, const QContext& ctx);
// omega = q - q^-1
template <class S>
S omega(const QContext& ctx);

}  // namespace qtop
