// Laurent polynomials over F = Q(i)(v) in a shared list of named variables.
//
// Terms are kept in a map ordered by graded lexicographic order on exponent
// vectors, which fixes a deterministic term order for printing and for the
// leading-term division loop.  Exponents may be negative; exact division
// first translates both operands into the polynomial range.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qshift/scalar.hpp"

namespace qshift {

struct laurent_error : std::runtime_error {
    explicit laurent_error(const std::string& what) : std::runtime_error(what) {}
};

using VarTable = std::shared_ptr<const std::vector<std::string>>;
VarTable make_vars(std::vector<std::string> names);

using ExpVec = std::vector<int>;

struct GradedLex {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

class LaurentPoly {
  public:
    using TermMap = std::map<ExpVec, Scalar, GradedLex>;

    LaurentPoly() = default;
    explicit LaurentPoly(VarTable vars) : vars_(std::move(vars)) {}

    static LaurentPoly zero(VarTable vars) { return LaurentPoly(std::move(vars)); }
    static LaurentPoly constant(VarTable vars, Scalar c);
    static LaurentPoly one(VarTable vars) { return constant(std::move(vars), Scalar::one()); }
    static LaurentPoly monomial(VarTable vars, ExpVec e, Scalar c);
    // Sparse builder: product of vars[idx]^exp times c.
    static LaurentPoly sparse_monomial(VarTable vars, const std::vector<std::pair<int, int>>& powers,
                                Scalar c = Scalar::one());
    static LaurentPoly variable(VarTable vars, int idx, int power = 1);

    const VarTable& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    size_t term_count() const { return terms_.size(); }
    Scalar coeff(const ExpVec& e) const;

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(const Scalar& c) const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // k < 0 requires an invertible (single-term) polynomial.
    LaurentPoly pow(long k) const;
    LaurentPoly inverse_monomial() const;

    // Multiply each term's coefficient by prod_j s[j]^{e_j}.
    LaurentPoly scale_action(const std::vector<Scalar>& s) const;

    // Substitute vars[j] -> images[j] (an invertible coeff*monomial in the
    // target table) for every variable simultaneously.
    LaurentPoly subs_monomials(const VarTable& target,
                               const std::vector<std::pair<Scalar, ExpVec>>& images) const;

    // Exact quotient; throws laurent_error if the division is not exact.
    LaurentPoly exact_div(const LaurentPoly& divisor) const;

    int degree_in(int var) const;      // max exponent of var (0 for the zero poly)
    int min_degree_in(int var) const;  // min exponent of var (0 for the zero poly)
    // Sum of the terms whose exponent of var equals e.
    LaurentPoly component_in_var(int var, int e) const;

    std::string str() const;

  private:
    void add_term(const ExpVec& e, const Scalar& c);
    VarTable vars_;
    TermMap terms_;
};

inline LaurentPoly operator*(const Scalar& c, const LaurentPoly& p) { return p * c; }

// zeta_i: x_i -> q_i^{-1} x_i with q_i = v^t (other variables fixed);
// inverse = true gives zeta_i^{-1}.
LaurentPoly zeta(const LaurentPoly& f, int i, long t, bool inverse = false);

// {u}_i = (u - u^{-1}) / (q_i - q_i^{-1}) with q_i = v^t; u must be an
// invertible single-term Laurent polynomial.
LaurentPoly brace(const LaurentPoly& u, long t);

// y_i = prod_j x_j^{a_{ji}} (column i of the Cartan matrix); the first
// matrix.size() variables of the table are taken to be x_0, ..., x_n.
LaurentPoly y_monomial(const VarTable& vars, const std::vector<std::vector<int>>& matrix, int i);

// The four affine families admitting the monomial change of variables.
enum class Family { A1, C1, A2, D2 };

// z_1, ..., z_n as monomials in x_0, ..., x_n (z_0 as well for Family::A1).
struct ChangeOfVars {
    Family fam;
    int n;
    VarTable x;
    std::vector<LaurentPoly> z;  // index 0 used only for Family::A1

    // y_i expressed through the z-monomials.
    LaurentPoly y_via_z(int i) const;
};

ChangeOfVars change_of_vars(Family fam, int n, VarTable xvars);

// Checks that y_via_z(i) agrees with the Cartan-matrix column monomial for
// every node; used as a structural self-test for small ranks.
bool verify_change_of_vars(const ChangeOfVars& cv, const std::vector<std::vector<int>>& matrix);

}  // namespace qshift
