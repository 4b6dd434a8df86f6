// Exact scalar arithmetic for the coefficient field F = Q(i)(v).
//
// A Scalar is kept in the normal form v^e * p(v)/q(v) where p and q are
// polynomials over the Gaussian rationals with nonzero constant terms, q is
// monic and gcd(p, q) = 1.  The generic quantum parameter is q = v^4, so
// that q^(1/2) = v^2 and q^(1/4) = v are honest elements of the field.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qshift {

struct scalar_error : std::runtime_error {
    explicit scalar_error(const std::string& what) : std::runtime_error(what) {}
};

// Element of Q(i): re + im * i with exact rational parts.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r) : re(r), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussianRational operator-() const { return {mpq_class(-re), mpq_class(-im)}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational inverse() const;
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }
    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    // Canonical rendering: "0", "3/2", "i", "-i", "2i", "3+i", "1/2-2/3i".
    std::string str() const;
};

// Dense polynomial in v over Q(i).  coeff(k) is the coefficient of v^k.
class GPoly {
  public:
    GPoly() = default;
    explicit GPoly(GaussianRational c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    static GPoly monomial(const GaussianRational& c, int k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    GaussianRational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return GaussianRational();
        return c_[static_cast<size_t>(k)];
    }
    const GaussianRational& lead() const;
    int low_order() const;  // least k with coeff(k) != 0; requires nonzero

    GPoly operator-() const;
    GPoly operator+(const GPoly& o) const;
    GPoly operator-(const GPoly& o) const;
    GPoly operator*(const GPoly& o) const;
    bool operator==(const GPoly& o) const { return c_ == o.c_; }
    bool operator!=(const GPoly& o) const { return !(*this == o); }

    GPoly shifted(int k) const;  // multiply by v^k, k >= 0
    GPoly scaled(const GaussianRational& c) const;
    // Euclidean division by a nonzero divisor; returns quotient, sets rem.
    GPoly divmod(const GPoly& divisor, GPoly& rem) const;
    GPoly exact_div(const GPoly& divisor) const;
    static GPoly gcd(GPoly a, GPoly b);  // monic gcd, gcd(0,0) = 0
    GPoly monic() const;

    GaussianRational eval(const GaussianRational& v0) const;

    static GPoly from_coeffs(std::vector<GaussianRational> c) {
        GPoly p;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

// Field element v^e * num/den in normal form.
class Scalar {
  public:
    Scalar() : e_(0), num_(), den_(GaussianRational(1)) {}
    Scalar(long n) : Scalar(GaussianRational(n)) {}
    Scalar(const mpq_class& r) : Scalar(GaussianRational(r)) {}
    explicit Scalar(const GaussianRational& c);
    Scalar(long e, GPoly num, GPoly den);  // normalizes

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar unit_i() { return Scalar(GaussianRational::unit_i()); }
    static Scalar v_pow(long e);              // v^e
    static Scalar q_pow(long k) { return v_pow(4 * k); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    long v_exponent() const { return e_; }
    const GPoly& num() const { return num_; }
    const GPoly& den() const { return den_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    bool operator==(const Scalar& o) const {
        return e_ == o.e_ && num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar pow(long k) const;

    // Substitute a rational (or Gaussian rational) value for v.
    GaussianRational eval(const GaussianRational& v0) const;

    // Canonical textual form "p(v)" or "(p(v))/(q(v))" with the v^e factor
    // folded into the numerator (e >= 0) or denominator (e < 0).
    std::string str() const;
    static Scalar parse(const std::string& text);

  private:
    // The tag skips the gcd pass for factors already known to be coprime.
    struct reduced_tag {};
    Scalar(long e, GPoly num, GPoly den, reduced_tag);
    void normalize(bool gcd_reduce = true);
    long e_;
    GPoly num_, den_;
};

// --- q-combinatorics -------------------------------------------------------
//
// Quantum integers and friends relative to a base q_i = v^t (t = 4 d_i, so
// t = 2, 4, 8 for d_i = 1/2, 1, 2).

// [m] = (v^{tm} - v^{-tm}) / (v^t - v^{-t}); [0] = 0, [-m] = -[m].
Scalar qint(long m, long t);
// [m]! = [m][m-1]...[1], m >= 0.
Scalar qfact(long m, long t);
// Gaussian binomial [m choose k]; zero when k < 0 or k > m.
Scalar qbinom(long m, long k, long t);
// tau_nu = (nu + 1)/(nu - 1) for nu = v^t.
Scalar tau_nu(long t);
// tau_{nu,kappa} = (nu - kappa + 1)/(nu + kappa - 1); kappa in {0, 1}.
Scalar tau_nu_kappa(long t, int kappa);

}  // namespace qshift
