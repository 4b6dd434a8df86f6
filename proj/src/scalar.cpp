#include "qshift/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace qshift {

// --- GaussianRational -------------------------------------------------------

GaussianRational GaussianRational::inverse() const {
    mpq_class n = re * re + im * im;
    if (n == 0) throw scalar_error("division by zero in Q(i)");
    return {re / n, mpq_class(-im / n)};
}

std::string GaussianRational::str() const {
    auto rat = [](const mpq_class& x) { return x.get_str(); };
    if (im == 0) return rat(re);
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = rat(im) + "i";
    if (re == 0) return imag;
    if (im > 0) return rat(re) + "+" + imag;
    return rat(re) + imag;  // imag already carries the minus sign
}

// --- GPoly ------------------------------------------------------------------

GPoly GPoly::monomial(const GaussianRational& c, int k) {
    GPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(static_cast<size_t>(k) + 1, GaussianRational());
    p.c_[static_cast<size_t>(k)] = c;
    return p;
}

const GaussianRational& GPoly::lead() const {
    if (c_.empty()) throw scalar_error("lead() of zero polynomial");
    return c_.back();
}

int GPoly::low_order() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    throw scalar_error("low_order() of zero polynomial");
}

GPoly GPoly::operator-() const {
    GPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

GPoly GPoly::operator+(const GPoly& o) const {
    std::vector<GaussianRational> c(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    return from_coeffs(std::move(c));
}

GPoly GPoly::operator-(const GPoly& o) const { return *this + (-o); }

GPoly GPoly::operator*(const GPoly& o) const {
    if (is_zero() || o.is_zero()) return GPoly();
    std::vector<GaussianRational> c(c_.size() + o.c_.size() - 1);
    for (size_t a = 0; a < c_.size(); ++a) {
        if (c_[a].is_zero()) continue;
        for (size_t b = 0; b < o.c_.size(); ++b) c[a + b] = c[a + b] + c_[a] * o.c_[b];
    }
    return from_coeffs(std::move(c));
}

GPoly GPoly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k < 0) throw scalar_error("GPoly::shifted expects k >= 0");
    std::vector<GaussianRational> c(c_.size() + static_cast<size_t>(k));
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return from_coeffs(std::move(c));
}

GPoly GPoly::scaled(const GaussianRational& c) const {
    if (c.is_zero()) return GPoly();
    GPoly r = *this;
    for (auto& x : r.c_) x = x * c;
    return r;
}

GPoly GPoly::divmod(const GPoly& divisor, GPoly& rem) const {
    if (divisor.is_zero()) throw scalar_error("polynomial division by zero");
    GPoly quot;
    rem = *this;
    const GaussianRational inv_lead = divisor.lead().inverse();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        int k = rem.degree() - divisor.degree();
        GaussianRational f = rem.lead() * inv_lead;
        GPoly piece = GPoly::monomial(f, k);
        quot = quot + piece;
        rem = rem - divisor * piece;
    }
    return quot;
}

GPoly GPoly::exact_div(const GPoly& divisor) const {
    GPoly rem;
    GPoly q = divmod(divisor, rem);
    if (!rem.is_zero()) throw scalar_error("inexact polynomial division");
    return q;
}

GPoly GPoly::gcd(GPoly a, GPoly b) {
    while (!b.is_zero()) {
        GPoly rem;
        a.divmod(b, rem);
        a = std::move(b);
        b = std::move(rem);
        if (!b.is_zero()) b = b.monic();
    }
    return a.is_zero() ? a : a.monic();
}

GPoly GPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
}

GaussianRational GPoly::eval(const GaussianRational& v0) const {
    GaussianRational acc;  // Horner, highest power first
    for (size_t k = c_.size(); k-- > 0;) acc = acc * v0 + c_[k];
    return acc;
}

// --- Scalar -----------------------------------------------------------------

Scalar::Scalar(const GaussianRational& c) : e_(0), num_(c), den_(GaussianRational(1)) {}

Scalar::Scalar(long e, GPoly num, GPoly den) : e_(e), num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

Scalar::Scalar(long e, GPoly num, GPoly den, reduced_tag)
    : e_(e), num_(std::move(num)), den_(std::move(den)) {
    normalize(false);
}

Scalar Scalar::v_pow(long e) {
    Scalar s(1);
    s.e_ = e;
    return s;
}

void Scalar::normalize(bool gcd_reduce) {
    if (den_.is_zero()) throw scalar_error("zero denominator");
    if (num_.is_zero()) {
        e_ = 0;
        den_ = GPoly(GaussianRational(1));
        return;
    }
    int a = num_.low_order(), b = den_.low_order();
    if (a > 0) {
        std::vector<GaussianRational> c;
        for (int k = a; k <= num_.degree(); ++k) c.push_back(num_.coeff(k));
        num_ = GPoly::from_coeffs(std::move(c));
    }
    if (b > 0) {
        std::vector<GaussianRational> c;
        for (int k = b; k <= den_.degree(); ++k) c.push_back(den_.coeff(k));
        den_ = GPoly::from_coeffs(std::move(c));
    }
    e_ += a - b;
    if (gcd_reduce && den_.degree() > 0) {
        GPoly g = GPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    GaussianRational lc = den_.lead().inverse();
    num_ = num_.scaled(lc);
    den_ = den_.scaled(lc);
}

bool Scalar::is_one() const {
    return e_ == 0 && den_.degree() == 0 && num_.degree() == 0 && num_.coeff(0).is_one();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long e = std::min(e_, o.e_);
    GPoly n = num_.shifted(static_cast<int>(e_ - e)) * o.den_ +
              o.num_.shifted(static_cast<int>(o.e_ - e)) * den_;
    return Scalar(e, std::move(n), den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    // A scalar of the form c v^e only shifts and rescales the other factor,
    // which both preserve the normal form.
    if (num_.degree() == 0 && den_.degree() == 0) {
        Scalar r = o;
        r.e_ += e_;
        r.num_ = r.num_.scaled(num_.coeff(0));
        return r;
    }
    if (o.num_.degree() == 0 && o.den_.degree() == 0) {
        Scalar r = *this;
        r.e_ += o.e_;
        r.num_ = r.num_.scaled(o.num_.coeff(0));
        return r;
    }
    // Reduce each numerator against the opposite denominator; both factors
    // are already internally reduced, so the product needs no further gcd.
    GPoly n1 = num_, d2 = o.den_;
    if (n1.degree() > 0 && d2.degree() > 0) {
        GPoly g = GPoly::gcd(n1, d2);
        if (g.degree() > 0) {
            n1 = n1.exact_div(g);
            d2 = d2.exact_div(g);
        }
    }
    GPoly n2 = o.num_, d1 = den_;
    if (n2.degree() > 0 && d1.degree() > 0) {
        GPoly g = GPoly::gcd(n2, d1);
        if (g.degree() > 0) {
            n2 = n2.exact_div(g);
            d1 = d1.exact_div(g);
        }
    }
    return Scalar(e_ + o.e_, n1 * n2, d1 * d2, reduced_tag{});
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw scalar_error("inverse of zero");
    return Scalar(-e_, den_, num_);
}

Scalar Scalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar acc = Scalar::one(), base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

GaussianRational Scalar::eval(const GaussianRational& v0) const {
    if (is_zero()) return GaussianRational();
    GaussianRational d = den_.eval(v0);
    if (d.is_zero()) throw scalar_error("denominator vanishes at evaluation point");
    GaussianRational val = num_.eval(v0) / d;
    long k = e_;
    GaussianRational p = v0;
    if (k < 0) {
        p = v0.inverse();
        k = -k;
    }
    for (long j = 0; j < k; ++j) val = val * p;
    return val;
}

// --- rendering --------------------------------------------------------------

namespace {

std::string poly_str(const GPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        GaussianRational c = p.coeff(k);
        if (c.is_zero()) continue;
        std::string piece;
        bool mixed = (c.re != 0 && c.im != 0);
        if (k == 0) {
            piece = mixed ? "(" + c.str() + ")" : c.str();
        } else {
            std::string vp = (k == 1) ? "v" : "v^" + std::to_string(k);
            if (c.is_one())
                piece = vp;
            else if ((-c).is_one())
                piece = "-" + vp;
            else if (mixed)
                piece = "(" + c.str() + ")*" + vp;
            else
                piece = c.str() + "*" + vp;
        }
        if (out.empty()) {
            out = piece;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

// Recursive-descent parser for the printed grammar.
struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw scalar_error("parse error: expected '" + std::string(1, c) + "'");
    }

    mpz_class digits() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw scalar_error("parse error: expected digits");
        return mpz_class(s.substr(start, pos - start));
    }

    mpq_class rational() {
        mpz_class n = digits();
        if (accept('/')) {
            mpz_class d = digits();
            if (d == 0) throw scalar_error("parse error: zero denominator");
            return mpq_class(n) / mpq_class(d);
        }
        return mpq_class(n);
    }

    GPoly factor() {
        skip();
        if (pos >= s.size()) throw scalar_error("parse error: unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            GPoly inner = poly();
            expect(')');
            return inner;
        }
        if (c == 'i') {
            ++pos;
            return GPoly(GaussianRational::unit_i());
        }
        if (c == 'v') {
            ++pos;
            int k = 1;
            if (accept('^')) {
                bool neg = accept('-');
                mpz_class e = digits();
                if (neg) throw scalar_error("parse error: negative power of v in polynomial");
                k = static_cast<int>(e.get_si());
            }
            return GPoly::monomial(GaussianRational(1), k);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class r = rational();
            skip();
            if (pos < s.size() && s[pos] == 'i') {
                ++pos;
                return GPoly(GaussianRational(mpq_class(0), r));
            }
            return GPoly(GaussianRational(r));
        }
        throw scalar_error(std::string("parse error: unexpected character '") + c + "'");
    }

    GPoly term() {
        GPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    GPoly poly() {
        bool neg = accept('-');
        GPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip();
            if (accept('+')) {
                acc = acc + term();
            } else if (pos < s.size() && s[pos] == '-') {
                // A '-' at this level is a separator, not part of the term.
                ++pos;
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }
};

}  // namespace

std::string Scalar::str() const {
    if (is_zero()) return "0";
    GPoly p = num_, q = den_;
    if (e_ >= 0)
        p = p.shifted(static_cast<int>(e_));
    else
        q = q.shifted(static_cast<int>(-e_));
    bool trivial_den = (q.degree() == 0 && q.coeff(0).is_one());
    if (trivial_den) return poly_str(p);
    return "(" + poly_str(p) + ")/(" + poly_str(q) + ")";
}

Scalar Scalar::parse(const std::string& text) {
    // Split "(P)/(Q)" at the unique depth-0 ")/(" boundary if present.
    int depth = 0;
    for (size_t k = 0; k + 2 < text.size(); ++k) {
        char c = text[k];
        if (c == '(') ++depth;
        if (c == ')') {
            --depth;
            if (depth == 0 && text[k + 1] == '/' && text[k + 2] == '(') {
                Parser pn(text);
                pn.expect('(');
                GPoly p = pn.poly();
                pn.expect(')');
                pn.expect('/');
                pn.expect('(');
                GPoly q = pn.poly();
                pn.expect(')');
                pn.skip();
                if (pn.pos != text.size()) throw scalar_error("parse error: trailing input");
                return Scalar(0, std::move(p), std::move(q));
            }
        }
    }
    Parser pr(text);
    GPoly p = pr.poly();
    pr.skip();
    if (pr.pos != text.size()) throw scalar_error("parse error: trailing input");
    return Scalar(0, std::move(p), GPoly(GaussianRational(1)));
}

// --- q-combinatorics --------------------------------------------------------

Scalar qint(long m, long t) {
    if (m == 0) return Scalar::zero();
    if (m < 0) return -qint(-m, t);
    // Representation theory evaluates [m] once per letter application, so
    // small arguments are cached.
    static std::map<std::pair<long, long>, Scalar> cache;
    auto it = cache.find({m, t});
    if (it != cache.end()) return it->second;
    Scalar n = Scalar::v_pow(t * m) - Scalar::v_pow(-t * m);
    Scalar d = Scalar::v_pow(t) - Scalar::v_pow(-t);
    Scalar r = n / d;
    if (m <= 64 && std::abs(t) <= 64) cache.emplace(std::pair{m, t}, r);
    return r;
}

Scalar qfact(long m, long t) {
    if (m < 0) throw scalar_error("qfact of negative integer");
    Scalar acc = Scalar::one();
    for (long k = 2; k <= m; ++k) acc = acc * qint(k, t);
    return acc;
}

Scalar qbinom(long m, long k, long t) {
    if (k < 0 || k > m) return Scalar::zero();
    return qfact(m, t) / (qfact(k, t) * qfact(m - k, t));
}

Scalar tau_nu(long t) {
    return (Scalar::v_pow(t) + Scalar::one()) / (Scalar::v_pow(t) - Scalar::one());
}

Scalar tau_nu_kappa(long t, int kappa) {
    Scalar nu = Scalar::v_pow(t);
    Scalar k(static_cast<long>(kappa));
    return (nu - k + Scalar::one()) / (nu + k - Scalar::one());
}

}  // namespace qshift
