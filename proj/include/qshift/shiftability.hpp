// Shiftability of tuples of Laurent polynomials attached to a generalized
// Cartan matrix: exact verification of the defining shift system
//
//   zeta_i(phi_i) - phi_i = {y_i}_i,
//   phi_i phi_j = zeta_j^{-1}(phi_i) zeta_i^{-1}(phi_j)  (i != j),
//
// construction of the canonical solution tuples for the four affine families
// that admit them, and a classifier deciding which Cartan matrices can carry
// a solution at all by degree bookkeeping on the middle parts phi_{i,0}.
#pragma once

#include <tuple>

#include "qshift/cartan.hpp"
#include "qshift/laurent.hpp"

namespace qshift {

// Exact residuals of the shift system.  qexps[i] is the v-exponent t_i with
// q_i = v^{t_i}; var_offset is the index of x_0 inside the tuple's variable
// table (1 when a symbolic b leads the table).
struct ShiftReport {
    std::vector<LaurentPoly> shift_residuals;                   // node i
    std::vector<std::tuple<int, int, LaurentPoly>> pair_residuals;  // i < j
    bool ok() const;
};

ShiftReport verify_solution(const std::vector<std::vector<int>>& a,
                            const std::vector<long>& qexps,
                            const std::vector<LaurentPoly>& phi, int var_offset = 0);

// The exchange identity for one ordered pair.
bool verify_pair_shiftable(const LaurentPoly& phi_i, const LaurentPoly& phi_j, int i, int j,
                           long ti, long tj, int var_offset = 0);

// Canonical solution tuple of an affine type that admits one.  A-type keeps
// the parameter b as a leading symbolic variable; the twisted types pin the
// scalar constants the tuple is stated with.
struct CanonicalSolution {
    VarTable vars;               // (b, x_0..x_n) or (x_0..x_n)
    int var_offset = 0;          // index of x_0
    std::vector<LaurentPoly> z;  // z-monomials over vars; z[0] is A-type only
    std::vector<LaurentPoly> phi;
    Scalar b_value = Scalar::one();  // pinned b for the twisted families
};
CanonicalSolution canonical_solution(const CartanData& c);

// Viable rank-two degree profiles for a connected pair with off-diagonal
// entries (lam, mu), |lam| >= |mu|: 'P' a single forced profile, 'E'/'B' the
// two branches of the double-bond case, empty when no profile exists.
std::vector<char> rank2_options(int lam, int mu);

enum class ShiftVerdict { Shiftable, NotShiftable, NecessaryConditionsPassed };

struct ClassifyResult {
    ShiftVerdict verdict = ShiftVerdict::NotShiftable;
    std::string detail;
    // Feasible option per double-bond edge, keyed (short node, long node).
    std::vector<std::pair<std::pair<int, int>, char>> b2_options;
};

ClassifyResult classify(const CartanData& c);

}  // namespace qshift
