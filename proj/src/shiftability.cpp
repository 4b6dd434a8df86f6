// Shift-system verification, canonical solution tuples, and the classifier.
//
// The classifier works with the normal form phi_i = beta_i^+ y_i + phi_{i,0}
// + beta_i^- y_i^{-1} (the only shape compatible with the twist equation) and
// reduces existence to degree bookkeeping on the middle parts phi_{i,0}:
//   - x_k-degrees of phi_{j,0} are confined per connected pair to the viable
//     rank-two profiles, and to {0} for disconnected pairs;
//   - any term of phi_{j,0} has nonpositive mixed degrees (m, t), mt <= 0,
//     in the variables of two distinct neighbors of j;
//   - product terms whose shift coefficient is not 1 must cancel against a
//     partner with the same full degree vector, which demands concrete paired
//     terms (or single monomial terms) of the middle parts.
// A double bond leaves two viable profiles, so the search walks all option
// assignments over double-bond edges; every other edge type is forced.
#include "qshift/shiftability.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qshift {

bool ShiftReport::ok() const {
    for (const auto& r : shift_residuals)
        if (!r.is_zero()) return false;
    for (const auto& [i, j, r] : pair_residuals)
        if (!r.is_zero()) return false;
    return true;
}

namespace {

LaurentPoly y_offset(const VarTable& vars, const std::vector<std::vector<int>>& a, int i,
                     int off) {
    std::vector<std::pair<int, int>> powers;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k][static_cast<size_t>(i)] != 0)
            powers.push_back({off + static_cast<int>(k), a[k][static_cast<size_t>(i)]});
    return LaurentPoly::sparse_monomial(vars, powers);
}

}  // namespace

ShiftReport verify_solution(const std::vector<std::vector<int>>& a,
                            const std::vector<long>& qexps,
                            const std::vector<LaurentPoly>& phi, int var_offset) {
    const int size = static_cast<int>(a.size());
    if (static_cast<int>(phi.size()) != size || static_cast<int>(qexps.size()) != size)
        throw laurent_error("verify_solution: tuple size mismatch");
    ShiftReport rep;
    const VarTable& vars = phi[0].vars();
    for (int i = 0; i < size; ++i) {
        LaurentPoly yi = y_offset(vars, a, i, var_offset);
        LaurentPoly lhs = zeta(phi[static_cast<size_t>(i)], var_offset + i, qexps[static_cast<size_t>(i)]) -
                          phi[static_cast<size_t>(i)];
        rep.shift_residuals.push_back(lhs - brace(yi, qexps[static_cast<size_t>(i)]));
    }
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) {
            LaurentPoly lhs = phi[static_cast<size_t>(i)] * phi[static_cast<size_t>(j)];
            LaurentPoly rhs = zeta(phi[static_cast<size_t>(i)], var_offset + j,
                                   qexps[static_cast<size_t>(j)], true) *
                              zeta(phi[static_cast<size_t>(j)], var_offset + i,
                                   qexps[static_cast<size_t>(i)], true);
            rep.pair_residuals.emplace_back(i, j, lhs - rhs);
        }
    return rep;
}

bool verify_pair_shiftable(const LaurentPoly& phi_i, const LaurentPoly& phi_j, int i, int j,
                           long ti, long tj, int var_offset) {
    LaurentPoly lhs = phi_i * phi_j;
    LaurentPoly rhs =
        zeta(phi_i, var_offset + j, tj, true) * zeta(phi_j, var_offset + i, ti, true);
    return (lhs - rhs).is_zero();
}

CanonicalSolution canonical_solution(const CartanData& c) {
    auto fi = family_info(c);
    if (!fi) throw cartan_error("no canonical solution tuple for type " + c.label);
    const int n = fi->n;
    CanonicalSolution cs;
    const Scalar iu = Scalar::unit_i();

    if (fi->fam == Family::A1) {
        std::vector<std::string> names = {"b"};
        for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
        cs.vars = make_vars(names);
        cs.var_offset = 1;
        auto x = [&](int i, int p) { return LaurentPoly::variable(cs.vars, 1 + i, p); };
        cs.z.assign(static_cast<size_t>(n) + 1, LaurentPoly::zero(cs.vars));
        for (int i = 1; i <= n; ++i) cs.z[static_cast<size_t>(i)] = x(i - 1, -1) * x(i, 1);
        cs.z[0] = x(0, 1) * x(n, -1);
        LaurentPoly b = LaurentPoly::variable(cs.vars, 0);
        for (int i = 0; i <= n; ++i) {
            LaurentPoly zi = cs.z[static_cast<size_t>(i)];
            LaurentPoly znext = cs.z[static_cast<size_t>((i + 1) % (n + 1))];
            cs.phi.push_back(brace(b * zi * Scalar::q_pow(1), 4) * brace(b * znext, 4));
        }
        return cs;
    }

    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    cs.vars = make_vars(names);
    cs.var_offset = 0;
    ChangeOfVars cv = change_of_vars(fi->fam, n, cs.vars);
    cs.z = cv.z;
    auto z = [&](int i, long p) { return cs.z[static_cast<size_t>(i)].pow(p); };

    if (fi->fam == Family::C1) {
        cs.b_value = iu * Scalar::v_pow(-1);  // i q^{-1/4}
        Scalar qb = Scalar::q_pow(1) * cs.b_value;
        cs.phi.push_back(brace(z(1, -1) * qb, 4) * brace(z(1, 1) * cs.b_value, 4));
        for (int i = 1; i <= n - 1; ++i) {
            Scalar qib = Scalar::v_pow(2) * cs.b_value;  // q_i = q^{1/2} inside
            cs.phi.push_back(brace(z(i, 1) * qib, 2) * brace(z(i + 1, 1) * cs.b_value, 2));
        }
        cs.phi.push_back(brace(z(n, 1) * qb, 4) * brace(z(n, -1) * cs.b_value, 4));
        return cs;
    }

    if (fi->fam == Family::A2) {
        cs.b_value = iu * Scalar::v_pow(-2);  // i q^{-1/2}
        cs.phi.push_back(brace(z(1, 1) * (iu * Scalar::v_pow(-6)), 8) *
                         brace(z(1, 1) * (iu * Scalar::v_pow(-2)), 8));
        for (int i = 1; i <= n - 1; ++i)
            cs.phi.push_back(brace(z(i, 1) * (iu * Scalar::v_pow(2)), 4) *
                             brace(z(i + 1, 1) * (iu * Scalar::v_pow(-2)), 4));
        Scalar qn_gap = Scalar::v_pow(2) - Scalar::v_pow(-2);  // q_n - q_n^{-1}
        cs.phi.push_back(brace(z(n, 1) * (iu * Scalar::v_pow(2)), 2) * (iu * qn_gap.inverse()));
        return cs;
    }

    // Family::D2
    cs.b_value = iu * Scalar::v_pow(-4);  // i q^{-1}
    Scalar q0_gap = Scalar::v_pow(4) - Scalar::v_pow(-4);
    cs.phi.push_back(brace(z(1, 1) * (iu * Scalar::v_pow(-4)), 4) * (iu * q0_gap.inverse()));
    for (int i = 1; i <= n - 1; ++i)
        cs.phi.push_back(brace(z(i, 1) * (iu * Scalar::v_pow(4)), 8) *
                         brace(z(i + 1, 1) * (iu * Scalar::v_pow(-4)), 8));
    cs.phi.push_back(brace(z(n, 1) * (iu * Scalar::v_pow(4)), 4) * (iu * q0_gap.inverse()));
    return cs;
}

namespace {

enum class EdgeKind { A2, B2, G2, A11, A22, Bad };

EdgeKind edge_kind(int lam, int mu) {
    if (lam == -1 && mu == -1) return EdgeKind::A2;
    if (lam == -2 && mu == -1) return EdgeKind::B2;
    if (lam == -3 && mu == -1) return EdgeKind::G2;
    if (lam == -2 && mu == -2) return EdgeKind::A11;
    if (lam == -4 && mu == -1) return EdgeKind::A22;
    return EdgeKind::Bad;
}

struct Edge {
    int shortn, longn;  // |a[shortn][longn]| >= |a[longn][shortn]|
    EdgeKind kind;
};

struct NodeInfo {
    bool forced_zero = false;
    bool forced_nonzero = false;
    std::map<int, std::vector<int>> allowed;  // neighbor -> allowed degrees
};

struct DegreeDemand {
    int node, coord, value;
};
struct PairDemand {
    int i, j;  // cancelling partner of y_i y_j is a product of middle terms
};
struct SingleDemand {
    int i, j;  // a middle term of node j equal to (y_i^2 y_j)^{+-1}, i short
};

// All term degree vectors of phi_{node,0} over the neighbor coordinates,
// restricted to the allowed sets, satisfying the nonpositive mixed-degree
// condition, and matching the pinned coordinates.
std::vector<std::map<int, int>> candidate_terms(const NodeInfo& info,
                                                const std::vector<int>& nbrs,
                                                const std::map<int, int>& pins) {
    for (const auto& [k, v] : pins)
        if (v != 0 && !info.allowed.count(k)) return {};
    std::vector<std::map<int, int>> out;
    std::vector<int> acc;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == nbrs.size()) {
            std::map<int, int> term;
            for (size_t p = 0; p < nbrs.size(); ++p) term[nbrs[p]] = acc[p];
            out.push_back(std::move(term));
            return;
        }
        int k = nbrs[idx];
        for (int dv : info.allowed.at(k)) {
            if (pins.count(k) && pins.at(k) != dv) continue;
            bool sign_ok = true;
            for (size_t p = 0; p < idx; ++p)
                if (acc[p] * dv > 0) {
                    sign_ok = false;
                    break;
                }
            if (!sign_ok) continue;
            acc.push_back(dv);
            rec(idx + 1);
            acc.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace

std::vector<char> rank2_options(int lam, int mu) {
    switch (edge_kind(lam, mu)) {
        case EdgeKind::A2:
        case EdgeKind::A11:
        case EdgeKind::A22:
            return {'P'};
        case EdgeKind::B2:
            return {'E', 'B'};
        default:
            return {};
    }
}

ClassifyResult classify(const CartanData& c) {
    const auto& a = c.a;
    const int size = c.size();
    ClassifyResult res;

    std::vector<Edge> edges;
    std::vector<size_t> b2_edges;
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) {
            if (a[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
            nbrs[static_cast<size_t>(i)].push_back(j);
            nbrs[static_cast<size_t>(j)].push_back(i);
            Edge e;
            if (std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]) >=
                std::abs(a[static_cast<size_t>(j)][static_cast<size_t>(i)])) {
                e.shortn = i;
                e.longn = j;
            } else {
                e.shortn = j;
                e.longn = i;
            }
            int lam = a[static_cast<size_t>(e.shortn)][static_cast<size_t>(e.longn)];
            int mu = a[static_cast<size_t>(e.longn)][static_cast<size_t>(e.shortn)];
            e.kind = edge_kind(lam, mu);
            if (e.kind == EdgeKind::G2 || e.kind == EdgeKind::Bad) {
                std::ostringstream os;
                os << "pair (" << e.shortn << ", " << e.longn << ") with entries (" << lam
                   << ", " << mu << ") admits no degree profile";
                res.verdict = ShiftVerdict::NotShiftable;
                res.detail = os.str();
                return res;
            }
            if (e.kind == EdgeKind::B2) b2_edges.push_back(edges.size());
            edges.push_back(e);
        }

    std::string failure = "no constraints";
    for (size_t mask = 0; mask < (size_t{1} << b2_edges.size()); ++mask) {
        std::vector<NodeInfo> info(static_cast<size_t>(size));
        // Disconnected pairs confine middle parts to degree 0; neighbors are
        // overwritten below.
        std::vector<DegreeDemand> degree_demands;
        std::vector<PairDemand> pair_demands;
        std::vector<SingleDemand> single_demands;
        std::vector<std::pair<std::pair<int, int>, char>> options;

        for (size_t ei = 0; ei < edges.size(); ++ei) {
            const Edge& e = edges[ei];
            const int sn = e.shortn, ln = e.longn;
            switch (e.kind) {
                case EdgeKind::A2:
                    info[static_cast<size_t>(sn)].allowed[ln] = {1, -1};
                    info[static_cast<size_t>(ln)].allowed[sn] = {1, -1};
                    info[static_cast<size_t>(sn)].forced_nonzero = true;
                    info[static_cast<size_t>(ln)].forced_nonzero = true;
                    for (int s : {1, -1}) {
                        degree_demands.push_back({sn, ln, s});
                        degree_demands.push_back({ln, sn, s});
                    }
                    pair_demands.push_back({sn, ln});
                    break;
                case EdgeKind::A11:
                    info[static_cast<size_t>(sn)].allowed[ln] = {0};
                    info[static_cast<size_t>(ln)].allowed[sn] = {0};
                    break;
                case EdgeKind::A22:
                    info[static_cast<size_t>(sn)].forced_zero = true;
                    info[static_cast<size_t>(ln)].forced_nonzero = true;
                    info[static_cast<size_t>(sn)].allowed[ln] = {0};
                    info[static_cast<size_t>(ln)].allowed[sn] = {0};
                    degree_demands.push_back({ln, sn, 0});
                    single_demands.push_back({sn, ln});
                    break;
                case EdgeKind::B2: {
                    size_t pos = 0;
                    while (b2_edges[pos] != ei) ++pos;
                    bool option_e = ((mask >> pos) & 1) == 0;
                    options.push_back({{sn, ln}, option_e ? 'E' : 'B'});
                    if (option_e) {
                        info[static_cast<size_t>(sn)].forced_zero = true;
                        info[static_cast<size_t>(ln)].forced_nonzero = true;
                        info[static_cast<size_t>(sn)].allowed[ln] = {0};
                        info[static_cast<size_t>(ln)].allowed[sn] = {2, -2};
                        degree_demands.push_back({ln, sn, 2});
                        degree_demands.push_back({ln, sn, -2});
                        single_demands.push_back({sn, ln});
                    } else {
                        info[static_cast<size_t>(sn)].forced_nonzero = true;
                        info[static_cast<size_t>(ln)].forced_nonzero = true;
                        info[static_cast<size_t>(sn)].allowed[ln] = {1, -1};
                        info[static_cast<size_t>(ln)].allowed[sn] = {0};
                        degree_demands.push_back({sn, ln, 1});
                        degree_demands.push_back({sn, ln, -1});
                        degree_demands.push_back({ln, sn, 0});
                        pair_demands.push_back({sn, ln});
                    }
                    break;
                }
                default:
                    break;
            }
        }

        bool feasible = true;
        for (int v = 0; v < size && feasible; ++v)
            if (info[static_cast<size_t>(v)].forced_zero &&
                info[static_cast<size_t>(v)].forced_nonzero) {
                std::ostringstream os;
                os << "node " << v << ": middle part must vanish for one neighbor and be "
                   << "nonzero for another";
                failure = os.str();
                feasible = false;
            }

        for (const auto& d : degree_demands) {
            if (!feasible) break;
            if (candidate_terms(info[static_cast<size_t>(d.node)], nbrs[static_cast<size_t>(d.node)],
                                {{d.coord, d.value}})
                    .empty()) {
                std::ostringstream os;
                os << "node " << d.node << ": no admissible term with degree " << d.value
                   << " in x_" << d.coord;
                failure = os.str();
                feasible = false;
            }
        }

        for (const auto& p : pair_demands) {
            if (!feasible) break;
            // Cancelling y_i y_j (and its inverse) against a product of a
            // middle term of each side demands the exact monomial split.
            for (int sign : {1, -1}) {
                int uj = sign * (2 + a[static_cast<size_t>(p.j)][static_cast<size_t>(p.i)]);
                int wi = sign * (2 + a[static_cast<size_t>(p.i)][static_cast<size_t>(p.j)]);
                auto us = candidate_terms(info[static_cast<size_t>(p.i)],
                                          nbrs[static_cast<size_t>(p.i)], {{p.j, uj}});
                auto ws = candidate_terms(info[static_cast<size_t>(p.j)],
                                          nbrs[static_cast<size_t>(p.j)], {{p.i, wi}});
                std::set<int> third;
                for (int k : nbrs[static_cast<size_t>(p.i)]) third.insert(k);
                for (int k : nbrs[static_cast<size_t>(p.j)]) third.insert(k);
                third.erase(p.i);
                third.erase(p.j);
                bool found = false;
                for (const auto& u : us) {
                    for (const auto& w : ws) {
                        bool match = true;
                        for (int k : third) {
                            int uk = u.count(k) ? u.at(k) : 0;
                            int wk = w.count(k) ? w.at(k) : 0;
                            int want = sign * (a[static_cast<size_t>(k)][static_cast<size_t>(p.i)] +
                                               a[static_cast<size_t>(k)][static_cast<size_t>(p.j)]);
                            if (uk + wk != want) {
                                match = false;
                                break;
                            }
                        }
                        if (match) {
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (!found) {
                    std::ostringstream os;
                    os << "pair (" << p.i << ", " << p.j << "): the monomial y_" << p.i << " y_"
                       << p.j << (sign > 0 ? "" : " inverted")
                       << " has no cancelling middle-term product";
                    failure = os.str();
                    feasible = false;
                    break;
                }
            }
        }

        for (const auto& sdem : single_demands) {
            if (!feasible) break;
            // The partner of y_i y_j is beta_i^- y_i^{-1} times a middle term
            // of node j equal to y_i^2 y_j (inverse pair symmetric).
            for (int sign : {1, -1}) {
                bool ok = true;
                std::map<int, int> w;
                for (int k = 0; k < size && ok; ++k) {
                    if (k == sdem.j) continue;
                    int want =
                        sign * (2 * a[static_cast<size_t>(k)][static_cast<size_t>(sdem.i)] +
                                a[static_cast<size_t>(k)][static_cast<size_t>(sdem.j)]);
                    const auto& inf = info[static_cast<size_t>(sdem.j)];
                    if (inf.allowed.count(k)) {
                        const auto& al = inf.allowed.at(k);
                        if (std::find(al.begin(), al.end(), want) == al.end()) ok = false;
                        w[k] = want;
                    } else if (want != 0) {
                        ok = false;
                    }
                }
                if (ok)
                    for (auto it = w.begin(); it != w.end() && ok; ++it)
                        for (auto jt = std::next(it); jt != w.end() && ok; ++jt)
                            if (it->second * jt->second > 0) ok = false;
                if (!ok) {
                    std::ostringstream os;
                    os << "node " << sdem.j << ": the demanded monomial term (y_" << sdem.i
                       << "^2 y_" << sdem.j << ")^" << (sign > 0 ? "+1" : "-1")
                       << " violates a degree constraint";
                    failure = os.str();
                    feasible = false;
                    break;
                }
            }
        }

        if (feasible) {
            res.b2_options = options;
            std::ostringstream os;
            os << "all degree constraints satisfiable";
            if (!options.empty()) {
                os << "; double-bond options:";
                for (const auto& [pr, ch] : options)
                    os << " (" << pr.first << "," << pr.second << "):" << ch;
            }
            res.detail = os.str();
            if (c.affine && family_info(c)) {
                res.verdict = ShiftVerdict::Shiftable;
            } else {
                res.verdict = ShiftVerdict::NecessaryConditionsPassed;
            }
            return res;
        }
    }

    res.verdict = ShiftVerdict::NotShiftable;
    res.detail = failure;
    return res;
}

}  // namespace qshift
