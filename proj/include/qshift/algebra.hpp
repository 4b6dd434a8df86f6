// Noncommutative expressions in the Chevalley generators with trailing
// Cartan monomials, Lusztig braid operators, and evaluation into oscillator
// operators.
//
// A term is scalar * X-word * K_beta; K-factors are always commuted to the
// right with K_beta X_j^s = q^{s (beta, alpha_j)} X_j^s K_beta, and equal
// words merge.  X-words are free: no Serre/PBW reduction is attempted, so
// distinct canonical forms may still denote equal algebra elements.  True
// equality is decided by evaluating both sides into operators on a window.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qshift/cartan.hpp"
#include "qshift/oscillator.hpp"
#include "qshift/scalar.hpp"

namespace qshift {

struct algebra_error : std::runtime_error {
    explicit algebra_error(const std::string& what) : std::runtime_error(what) {}
};

struct XLetter {
    int node;
    int sign;  // +1 or -1
    bool operator==(const XLetter&) const = default;
    auto operator<=>(const XLetter&) const = default;
};

using XWord = std::vector<XLetter>;

class AlgebraExpr {
  public:
    using Key = std::pair<XWord, std::vector<int>>;

    explicit AlgebraExpr(std::shared_ptr<const CartanData> c) : c_(std::move(c)) {}

    static AlgebraExpr zero(std::shared_ptr<const CartanData> c) { return AlgebraExpr(std::move(c)); }
    static AlgebraExpr one(std::shared_ptr<const CartanData> c);
    static AlgebraExpr gen_x(std::shared_ptr<const CartanData> c, int node, int sign);
    static AlgebraExpr gen_k(std::shared_ptr<const CartanData> c, std::vector<int> beta);

    const CartanData& cartan() const { return *c_; }
    const std::shared_ptr<const CartanData>& cartan_ptr() const { return c_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    AlgebraExpr operator+(const AlgebraExpr& o) const;
    AlgebraExpr operator-(const AlgebraExpr& o) const;
    AlgebraExpr operator-() const;
    AlgebraExpr operator*(const AlgebraExpr& o) const;
    AlgebraExpr operator*(const Scalar& s) const;
    bool operator==(const AlgebraExpr& o) const { return terms_ == o.terms_; }

    // (X_i^sign)^k / [k]_i!
    static AlgebraExpr divided_power(std::shared_ptr<const CartanData> c, int node, int sign, int k);

    std::string str() const;
    static AlgebraExpr parse(std::shared_ptr<const CartanData> c, const std::string& text);

  private:
    void add_term(const Key& key, const Scalar& s);
    friend AlgebraExpr phi_antiauto(const AlgebraExpr&);
    friend AlgebraExpr braid(const AlgebraExpr&, int, bool);
    friend AlgebraExpr braid_tau(const AlgebraExpr&, const std::vector<int>&);
    std::shared_ptr<const CartanData> c_;
    std::map<Key, Scalar> terms_;
};

inline AlgebraExpr operator*(const Scalar& s, const AlgebraExpr& x) { return x * s; }

// [x, y]_p = x y - p^{-1} y x.
AlgebraExpr q_commutator(const AlgebraExpr& x, const AlgebraExpr& y, const Scalar& p);

// The C-linear anti-automorphism fixing X_i^± and inverting K_i.
AlgebraExpr phi_antiauto(const AlgebraExpr& x);

// Lusztig operator T_i (or its inverse, via Phi T_i Phi).
AlgebraExpr braid(const AlgebraExpr& x, int i, bool inverse = false);

// Diagram automorphism: relabels letters and lattice coordinates.
AlgebraExpr braid_tau(const AlgebraExpr& x, const std::vector<int>& perm);

// T_w for w = tau s_{i_1} ... s_{i_m}: the rightmost reflection acts first.
AlgebraExpr braid_word_apply(const AlgebraExpr& x, const TranslationWord& w);

// Substitute the generator images: letters multiply out into oscillator
// words, K_beta becomes the product of the K-images.
FockOperator represent(const AlgebraExpr& x, const DJImages& im);

}  // namespace qshift
