// Oscillator words, their exact truncated Fock action, and the Chevalley
// generator images for the four admissible families.
#include "qshift/oscillator.hpp"

#include <algorithm>
#include <sstream>

namespace qshift {

namespace {

std::string state_str(const std::vector<int>& m) {
    std::ostringstream os;
    os << "|";
    for (size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
    os << ">";
    return os.str();
}

}  // namespace

void FockOperator::add_term(const OscWord& w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockOperator FockOperator::identity(int slots, long nu_vexp, VarTable params) {
    FockOperator r(slots, nu_vexp, params);
    r.add_term({}, LaurentPoly::one(params));
    return r;
}

FockOperator FockOperator::letter(int slots, long nu_vexp, VarTable params, int slot, OscLetter l) {
    if (slot < 0 || slot >= slots) throw osc_error("oscillator slot out of range");
    FockOperator r(slots, nu_vexp, params);
    r.add_term({OscFactor{slot, l}}, LaurentPoly::one(params));
    return r;
}

FockOperator FockOperator::operator+(const FockOperator& o) const {
    FockOperator r(*this);
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

FockOperator FockOperator::operator-(const FockOperator& o) const { return *this + (-o); }

FockOperator FockOperator::operator-() const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

FockOperator FockOperator::operator*(const FockOperator& o) const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : o.terms_) {
            OscWord w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add_term(w, c1 * c2);
        }
    }
    return r;
}

FockOperator FockOperator::operator*(const Scalar& c) const {
    FockOperator r(slots_, nu_vexp_, params_);
    if (c == Scalar::zero()) return r;
    for (const auto& [w, co] : terms_) r.terms_.emplace(w, co * c);
    return r;
}

FockOperator FockOperator::scaled(const LaurentPoly& c) const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w, co] : terms_) r.add_term(w, co * c);
    return r;
}

FockOperator FockOperator::pow(int k) const {
    if (k < 0) throw osc_error("negative operator power");
    FockOperator r = identity(slots_, nu_vexp_, params_);
    for (int s = 0; s < k; ++s) r = r * *this;
    return r;
}

FockOperator FockOperator::inverse() const {
    if (terms_.size() != 1) throw osc_error("inverse of a non-monomial operator");
    const auto& [w, c] = *terms_.begin();
    OscWord iw;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->letter == OscLetter::K) {
            iw.push_back({it->slot, OscLetter::Kinv});
        } else if (it->letter == OscLetter::Kinv) {
            iw.push_back({it->slot, OscLetter::K});
        } else {
            throw osc_error("inverse of a word with oscillator letters");
        }
    }
    FockOperator r(slots_, nu_vexp_, params_);
    r.add_term(iw, c.pow(-1));
    return r;
}

FockOperator FockOperator::vartheta(const std::vector<int>& eps) const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w, c] : terms_) {
        OscWord nw;
        Scalar f = Scalar::one();
        for (const OscFactor& l : w) {
            if (!eps[l.slot]) {
                nw.push_back(l);
                continue;
            }
            switch (l.letter) {
                case OscLetter::A:
                    nw.push_back({l.slot, OscLetter::ADag});
                    break;
                case OscLetter::ADag:
                    nw.push_back({l.slot, OscLetter::A});
                    f = -f;
                    break;
                case OscLetter::K:
                    nw.push_back({l.slot, OscLetter::Kinv});
                    f = f * Scalar::v_pow(-nu_vexp_);
                    break;
                case OscLetter::Kinv:
                    nw.push_back({l.slot, OscLetter::K});
                    f = f * Scalar::v_pow(nu_vexp_);
                    break;
            }
        }
        r.add_term(nw, c * f);
    }
    return r;
}

FockOperator FockOperator::theta(const std::vector<int>& unit_var) const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w, c] : terms_) {
        LaurentPoly nc = c;
        for (const OscFactor& l : w) {
            int u = unit_var[l.slot];
            if (u < 0) continue;
            if (l.letter == OscLetter::A) {
                nc *= LaurentPoly::variable(params_, u);
            } else if (l.letter == OscLetter::ADag) {
                nc *= LaurentPoly::variable(params_, u, -1);
            }
        }
        r.add_term(w, nc);
    }
    return r;
}

FockOperator FockOperator::substituted(
    const std::vector<std::pair<Scalar, ExpVec>>& images) const {
    FockOperator r(slots_, nu_vexp_, params_);
    for (const auto& [w, c] : terms_) {
        LaurentPoly nc = c.subs_monomials(params_, images);
        if (!nc.is_zero()) r.add_term(w, nc);
    }
    return r;
}

std::pair<std::map<std::vector<int>, LaurentPoly>, bool> FockOperator::apply(
    const std::vector<int>& m, int window) const {
    std::map<std::vector<int>, LaurentPoly> out;
    bool certified = true;
    for (const auto& [w, c] : terms_) {
        std::vector<int> cur = m;
        Scalar f = Scalar::one();
        bool dead = false;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            switch (it->letter) {
                case OscLetter::A:
                    if (cur[it->slot] == 0) {
                        dead = true;  // annihilation of an empty slot: exact zero
                    } else {
                        f = f * qint(cur[it->slot], nu_vexp_);
                        --cur[it->slot];
                    }
                    break;
                case OscLetter::ADag:
                    ++cur[it->slot];
                    if (cur[it->slot] >= window) {
                        certified = false;
                        dead = true;
                    }
                    break;
                case OscLetter::K:
                    f = f * Scalar::v_pow(nu_vexp_ * cur[it->slot]);
                    break;
                case OscLetter::Kinv:
                    f = f * Scalar::v_pow(-nu_vexp_ * cur[it->slot]);
                    break;
            }
            if (dead) break;
        }
        if (dead) continue;
        auto [it2, inserted] = out.try_emplace(cur, c * f);
        if (!inserted) {
            it2->second += c * f;
            if (it2->second.is_zero()) out.erase(it2);
        }
    }
    return {std::move(out), certified};
}

int FockOperator::peak_raise() const {
    int peak = 0;
    for (const auto& [w, c] : terms_) {
        std::vector<int> delta(static_cast<size_t>(slots_), 0);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            if (it->letter == OscLetter::A) --delta[it->slot];
            if (it->letter == OscLetter::ADag) peak = std::max(peak, ++delta[it->slot]);
        }
    }
    return peak;
}

CompareResult compare_on_window(const FockOperator& a, const FockOperator& b, int window) {
    CompareResult res;
    std::vector<int> m(a.slots(), 0);
    while (true) {
        auto [ta, ca] = a.apply(m, window);
        auto [tb, cb] = b.apply(m, window);
        if (ca && cb) {
            ++res.certified;
            if (res.equal && ta != tb) {
                res.equal = false;
                res.first_mismatch = "at " + state_str(m);
            }
        }
        int s = 0;
        while (s < a.slots() && m[s] == window - 1) m[s++] = 0;
        if (s == a.slots()) break;
        ++m[s];
    }
    return res;
}

DJImages dj_images(const CartanData& c) {
    auto fi = family_info(c);
    if (!fi) throw osc_error("no oscillator realization for type " + c.label);

    DJImages im;
    im.c = c;
    im.fam = fi->fam;
    im.n = (fi->fam == Family::A1) ? c.size() : fi->n;
    switch (fi->fam) {
        case Family::A1:
        case Family::A2:
            im.nu_vexp = 4;
            break;
        case Family::C1:
            im.nu_vexp = 2;
            break;
        case Family::D2:
            im.nu_vexp = 8;
            break;
    }
    std::vector<std::string> names{"z"};
    for (int s = 1; s <= im.n; ++s) names.push_back("b" + std::to_string(s));
    im.params = make_vars(names);

    const long nu = im.nu_vexp;
    auto word = [&](std::vector<OscFactor> ls) {
        FockOperator r = FockOperator::identity(im.n, nu, im.params);
        for (const OscFactor& l : ls) r = r * FockOperator::letter(im.n, nu, im.params, l.slot, l.letter);
        return r;
    };
    auto zpow = [&](int p) { return LaurentPoly::variable(im.params, 0, p); };
    const Scalar two_inv = qint(2, nu).inverse();
    const Scalar iu = Scalar::unit_i();

    im.xp.assign(c.size(), FockOperator(im.n, nu, im.params));
    im.xm.assign(c.size(), FockOperator(im.n, nu, im.params));
    im.k.assign(c.size(), FockOperator(im.n, nu, im.params));

    if (fi->fam == Family::A1) {
        // Oscillator indices are cyclic: node i couples slots i and i+1 with
        // oscillator 0 identified with oscillator n.
        const int N = im.n;
        for (int i = 0; i < N; ++i) {
            int lo = (i == 0) ? N - 1 : i - 1;
            int hi = i;
            im.xp[i] = word({{lo, OscLetter::A}, {hi, OscLetter::ADag}}).scaled(zpow(i == 0 ? 1 : 0));
            im.xm[i] = word({{lo, OscLetter::ADag}, {hi, OscLetter::A}}).scaled(zpow(i == 0 ? -1 : 0));
            im.k[i] = word({{lo, OscLetter::Kinv}, {hi, OscLetter::K}});
        }
    } else {
        const int n = im.n;
        for (int i = 1; i < n; ++i) {
            im.xp[i] = word({{i - 1, OscLetter::A}, {i, OscLetter::ADag}});
            im.xm[i] = word({{i - 1, OscLetter::ADag}, {i, OscLetter::A}});
            im.k[i] = word({{i - 1, OscLetter::Kinv}, {i, OscLetter::K}});
        }
        if (fi->fam == Family::D2) {
            im.xp[0] = word({{0, OscLetter::ADag}}).scaled(zpow(1));
            im.xm[0] = word({{0, OscLetter::A}}).scaled(zpow(-1) * (iu * tau_nu(nu)));
            im.k[0] = word({{0, OscLetter::K}}) * (-(iu * Scalar::v_pow(nu / 2)));
        } else {
            im.xp[0] = word({{0, OscLetter::ADag}, {0, OscLetter::ADag}}).scaled(zpow(1) * two_inv);
            im.xm[0] = word({{0, OscLetter::A}, {0, OscLetter::A}}).scaled(zpow(-1) * two_inv);
            im.k[0] = word({{0, OscLetter::K}, {0, OscLetter::K}}) * (-Scalar::v_pow(nu));
        }
        if (fi->fam == Family::C1) {
            im.xp[n] = word({{n - 1, OscLetter::A}, {n - 1, OscLetter::A}}) * two_inv;
            im.xm[n] = word({{n - 1, OscLetter::ADag}, {n - 1, OscLetter::ADag}}) * two_inv;
            im.k[n] = word({{n - 1, OscLetter::Kinv}, {n - 1, OscLetter::Kinv}}) * (-Scalar::v_pow(-nu));
        } else {
            im.xp[n] = word({{n - 1, OscLetter::A}}) * (iu * tau_nu(nu));
            im.xm[n] = word({{n - 1, OscLetter::ADag}});
            im.k[n] = word({{n - 1, OscLetter::Kinv}}) * (iu * Scalar::v_pow(-nu / 2));
        }
    }
    im.kinv.reserve(c.size());
    for (int i = 0; i < c.size(); ++i) im.kinv.push_back(im.k[i].inverse());
    return im;
}

RelationReport verify_dj_relations(const DJImages& im, int window) {
    RelationReport rep;
    const CartanData& c = im.c;
    const int sz = c.size();
    FockOperator id = FockOperator::identity(im.n, im.nu_vexp, im.params);

    auto check = [&](const std::string& name, const FockOperator& lhs, const FockOperator& rhs) {
        CompareResult r = compare_on_window(lhs, rhs, window);
        ++rep.checks;
        if (rep.min_certified < 0 || r.certified < rep.min_certified) rep.min_certified = r.certified;
        if (r.certified == 0) {
            rep.failures.push_back(name + ": no certified states in window");
        } else if (!r.equal) {
            rep.failures.push_back(name + ": mismatch " + r.first_mismatch);
        }
    };

    for (int i = 0; i < sz; ++i) {
        check("K" + std::to_string(i) + " K" + std::to_string(i) + "^-1 = 1",
              im.k[i] * im.kinv[i], id);
        check("K" + std::to_string(i) + "^-1 K" + std::to_string(i) + " = 1",
              im.kinv[i] * im.k[i], id);
        for (int j = i + 1; j < sz; ++j) {
            check("K commute (" + std::to_string(i) + "," + std::to_string(j) + ")",
                  im.k[i] * im.k[j], im.k[j] * im.k[i]);
        }
    }

    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            long e = c.qexp(i) * c.a[i][j];
            check("K" + std::to_string(i) + " X" + std::to_string(j) + "+ rescales",
                  im.k[i] * im.xp[j], (im.xp[j] * im.k[i]) * Scalar::v_pow(e));
            check("K" + std::to_string(i) + " X" + std::to_string(j) + "- rescales",
                  im.k[i] * im.xm[j], (im.xm[j] * im.k[i]) * Scalar::v_pow(-e));
        }
    }

    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            FockOperator lhs = im.xp[i] * im.xm[j] - im.xm[j] * im.xp[i];
            FockOperator rhs(im.n, im.nu_vexp, im.params);
            if (i == j) {
                Scalar den = Scalar::v_pow(c.qexp(i)) - Scalar::v_pow(-c.qexp(i));
                rhs = (im.k[i] - im.kinv[i]) * den.inverse();
            }
            check("[X" + std::to_string(i) + "+, X" + std::to_string(j) + "-]", lhs, rhs);
        }
    }

    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i == j) continue;
            long r = 1 - c.a[i][j];
            for (int sign = 0; sign < 2; ++sign) {
                const auto& xi = sign ? im.xm[i] : im.xp[i];
                const auto& xj = sign ? im.xm[j] : im.xp[j];
                FockOperator sum(im.n, im.nu_vexp, im.params);
                for (long k = 0; k <= r; ++k) {
                    Scalar coeff = qbinom(r, k, c.qexp(i));
                    if (k % 2) coeff = -coeff;
                    sum = sum + (xi.pow(static_cast<int>(k)) * xj *
                                 xi.pow(static_cast<int>(r - k))) * coeff;
                }
                check("Serre (" + std::to_string(i) + "," + std::to_string(j) +
                          (sign ? ",-)" : ",+)"),
                      sum, FockOperator(im.n, im.nu_vexp, im.params));
            }
        }
    }

    FockOperator kdelta = id;
    for (int i = 0; i < sz; ++i) {
        for (long m = 0; m < c.marks[i]; ++m) kdelta = kdelta * im.k[i];
    }
    check("K_delta = 1", kdelta, id);
    return rep;
}

}  // namespace qshift
