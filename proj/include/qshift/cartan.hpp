// Generalized Cartan matrices, affine labels, symmetrizers and the small
// amount of Weyl-group combinatorics needed elsewhere: simple reflections on
// the root lattice, fundamental translation words, and weight helpers.
//
// Labels follow the grammar <letter><N> for finite types and <letter><N>~<r>
// for affine ones, e.g. "A2", "G2", "A3~1", "C2~1", "A4~2", "D3~2".
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qshift/laurent.hpp"
#include "qshift/scalar.hpp"

namespace qshift {

struct cartan_error : std::runtime_error {
    explicit cartan_error(const std::string& what) : std::runtime_error(what) {}
};

struct CartanData {
    std::string label;
    char letter = 0;
    int subscript = 0;
    int twist = 0;  // 0 for finite types, r for X_N^{(r)}
    bool affine = false;
    std::vector<std::vector<int>> a;  // the Cartan matrix
    std::vector<int> marks;           // delta = sum marks[i] alpha_i (affine)
    std::vector<int> comarks;         // marks of the transposed matrix (affine)
    std::vector<int> twice_d;         // symmetrizer: d_i a_ij = d_j a_ji
    std::vector<int> twice_dtilde;    // 2 d~_i (affine)

    int size() const { return static_cast<int>(a.size()); }
    int n() const { return size() - 1; }  // affine rank index
    // q_i = v^{qexp(i)}.
    long qexp(int i) const { return 2L * twice_d[static_cast<size_t>(i)]; }
    bool connected(int i, int j) const { return i != j && a[i][j] != 0; }
};

CartanData make_cartan(const std::string& label);

// s_i acting on a root-lattice vector (coefficients of the alpha_j).
std::vector<int> reflect(const CartanData& c, int i, std::vector<int> beta);

// 4 * (beta, alpha_j) where beta lives in the root lattice; this is the
// v-exponent of q^{(beta, alpha_j)}.
long pairing_vexp(const CartanData& c, const std::vector<int>& beta, int j);

// lambda(K_i) = q^{(beta, alpha_i)} for beta = sum_j coeffs[j] omega_j with
// (omega_j, alpha_i) = d_i delta_ij; each exponent must land in Z.
std::vector<Scalar> weight_from_hstar(const CartanData& c, const std::vector<mpq_class>& coeffs);

// Reduced word, preceded by a diagram automorphism, for the fundamental
// translation attached to node i (defined for the four shiftable families at
// the nodes used by the loop-weight computations).
struct TranslationWord {
    std::vector<int> perm;  // node map of the diagram automorphism
    std::vector<int> word;  // simple reflections; rightmost acts first
};
TranslationWord translation_word(const CartanData& c, int i);

// Map onto the monomial change-of-variables family, when the type admits one.
struct FamilyInfo {
    Family fam;
    int n;  // family rank index: number of z-variables
};
std::optional<FamilyInfo> family_info(const CartanData& c);

}  // namespace qshift
