// The n-fold quantized oscillator algebra and its truncated Fock action.
//
// An operator is a formal sum of words in per-slot letters a, a+, k, k^{-1}
// with coefficients in a Laurent ring of auxiliary commuting symbols (the
// loop parameter z and one twist unit per slot).  Words act on occupation
// vectors in the window [0, M)^n exactly: lowering an empty slot gives an
// exact zero, while raising a slot out of the window marks the input state
// as uncertified, so identities are only asserted on states whose entire
// evaluation stays inside the window.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qshift/cartan.hpp"
#include "qshift/laurent.hpp"

namespace qshift {

struct osc_error : std::runtime_error {
    explicit osc_error(const std::string& what) : std::runtime_error(what) {}
};

enum class OscLetter { A, ADag, K, Kinv };

struct OscFactor {
    int slot;
    OscLetter letter;
    bool operator==(const OscFactor&) const = default;
    auto operator<=>(const OscFactor&) const = default;
};

using OscWord = std::vector<OscFactor>;

class FockOperator {
  public:
    FockOperator(int slots, long nu_vexp, VarTable params)
        : slots_(slots), nu_vexp_(nu_vexp), params_(std::move(params)) {}

    static FockOperator identity(int slots, long nu_vexp, VarTable params);
    static FockOperator letter(int slots, long nu_vexp, VarTable params, int slot, OscLetter l);

    int slots() const { return slots_; }
    long nu_vexp() const { return nu_vexp_; }
    const VarTable& params() const { return params_; }
    const std::map<OscWord, LaurentPoly>& terms() const { return terms_; }
    bool is_formally_zero() const { return terms_.empty(); }

    FockOperator operator+(const FockOperator& o) const;
    FockOperator operator-(const FockOperator& o) const;
    FockOperator operator-() const;
    FockOperator operator*(const FockOperator& o) const;
    FockOperator operator*(const Scalar& c) const;
    FockOperator scaled(const LaurentPoly& c) const;
    FockOperator pow(int k) const;

    // Inverse of a single word of k-letters with an invertible coefficient.
    FockOperator inverse() const;

    // Slotwise algebra automorphisms.  vartheta swaps creation with
    // annihilation on the flagged slots: a+ -> -a, a -> a+, k -> nu^{-1}k^{-1}.
    FockOperator vartheta(const std::vector<int>& eps) const;
    // theta scales a -> u a, a+ -> u^{-1} a+ on slot s, with u the parameter
    // variable unit_var[s] (negative index = leave the slot untouched).
    FockOperator theta(const std::vector<int>& unit_var) const;

    // Rewrites every coefficient by substituting each parameter variable
    // with an invertible constant-times-monomial image over the same table.
    FockOperator substituted(const std::vector<std::pair<Scalar, ExpVec>>& images) const;

    // Action on the basis state |m>.  Second component is false when some
    // intermediate state escapes the window, in which case the map cannot be
    // trusted and the state must be excluded from identity checks.
    std::pair<std::map<std::vector<int>, LaurentPoly>, bool> apply(const std::vector<int>& m,
                                                                   int window) const;

    // Largest intermediate occupation any slot can reach above the starting
    // one; window peak_raise()+1 certifies the vacuum, and peak_raise()+w
    // certifies every state below w.
    int peak_raise() const;

  private:
    void add_term(const OscWord& w, const LaurentPoly& c);
    int slots_;
    long nu_vexp_;
    VarTable params_;
    std::map<OscWord, LaurentPoly> terms_;
};

struct CompareResult {
    bool equal = true;
    int certified = 0;  // states certified by both sides
    std::string first_mismatch;
};

// Compare two operators on every basis state of [0, window)^slots that both
// evaluate without escaping the window.
CompareResult compare_on_window(const FockOperator& a, const FockOperator& b, int window);

// Images of the Chevalley generators in the n-fold oscillator algebra for
// the four families admitting them.  Slot s hosts oscillator s+1; in the
// A family node indices are cyclic and oscillator 0 is oscillator n.
struct DJImages {
    CartanData c;
    Family fam;
    int n = 0;          // number of oscillator slots
    long nu_vexp = 0;   // nu = v^{nu_vexp}
    VarTable params;    // "z", then "b1".."bn"
    std::vector<FockOperator> xp, xm, k, kinv;
};

DJImages dj_images(const CartanData& c);

struct RelationReport {
    int checks = 0;
    int min_certified = -1;  // smallest certified count over all checks
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Check the defining relations on the window: K-monomial inverses and
// commutativity, K X K^{-1} rescaling, the mixed commutator against
// (K_i - K_i^{-1})/(q_i - q_i^{-1}), both quantum Serre families, and that
// the image of K_delta is the identity.
RelationReport verify_dj_relations(const DJImages& im, int window);

}  // namespace qshift
