#include "qshift/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qshift {

VarTable make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool GradedLex::operator()(const ExpVec& a, const ExpVec& b) const {
    long ga = std::accumulate(a.begin(), a.end(), 0L);
    long gb = std::accumulate(b.begin(), b.end(), 0L);
    if (ga != gb) return ga < gb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

LaurentPoly LaurentPoly::constant(VarTable vars, Scalar c) {
    LaurentPoly p(vars);
    if (!c.is_zero()) p.terms_.emplace(ExpVec(vars->size(), 0), std::move(c));
    return p;
}

LaurentPoly LaurentPoly::monomial(VarTable vars, ExpVec e, Scalar c) {
    LaurentPoly p(vars);
    if (e.size() != vars->size()) throw laurent_error("exponent vector has wrong length");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

LaurentPoly LaurentPoly::sparse_monomial(VarTable vars, const std::vector<std::pair<int, int>>& powers,
                                  Scalar c) {
    ExpVec e(vars->size(), 0);
    for (const auto& [idx, exp] : powers) {
        if (idx < 0 || idx >= static_cast<int>(vars->size()))
            throw laurent_error("variable index out of range");
        e[static_cast<size_t>(idx)] += exp;
    }
    return monomial(std::move(vars), std::move(e), std::move(c));
}

LaurentPoly LaurentPoly::variable(VarTable vars, int idx, int power) {
    return sparse_monomial(std::move(vars), {{idx, power}}, Scalar::one());
}

Scalar LaurentPoly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero() : it->second;
}

void LaurentPoly::add_term(const ExpVec& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    if (!r.vars_) r.vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r(vars_ ? vars_ : o.vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            ExpVec e = ea;
            for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

LaurentPoly LaurentPoly::operator*(const Scalar& c) const {
    LaurentPoly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second) return false;
    return true;
}

LaurentPoly LaurentPoly::inverse_monomial() const {
    if (terms_.size() != 1) throw laurent_error("inverse of a non-monomial Laurent polynomial");
    const auto& [e, c] = *terms_.begin();
    ExpVec inv = e;
    for (auto& x : inv) x = -x;
    return monomial(vars_, std::move(inv), c.inverse());
}

LaurentPoly LaurentPoly::pow(long k) const {
    if (k < 0) return inverse_monomial().pow(-k);
    LaurentPoly acc = one(vars_), base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

LaurentPoly LaurentPoly::scale_action(const std::vector<Scalar>& s) const {
    if (s.size() != vars_->size()) throw laurent_error("scale vector has wrong length");
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Scalar f = c;
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) f *= s[k].pow(e[k]);
        r.add_term(e, f);
    }
    return r;
}

LaurentPoly LaurentPoly::subs_monomials(
    const VarTable& target, const std::vector<std::pair<Scalar, ExpVec>>& images) const {
    if (images.size() != vars_->size()) throw laurent_error("substitution table has wrong length");
    LaurentPoly r(target);
    for (const auto& [e, c] : terms_) {
        Scalar f = c;
        ExpVec out(target->size(), 0);
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            f *= images[k].first.pow(e[k]);
            for (size_t j = 0; j < out.size(); ++j) out[j] += e[k] * images[k].second[j];
        }
        r.add_term(out, f);
    }
    return r;
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) throw laurent_error("division by zero");
    if (is_zero()) return zero(vars_);
    if (divisor.is_monomial()) return *this * divisor.inverse_monomial();

    size_t nv = vars_->size();
    auto min_exps = [nv](const LaurentPoly& p) {
        ExpVec m(nv, 0);
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            for (size_t k = 0; k < nv; ++k) m[k] = first ? e[k] : std::min(m[k], e[k]);
            first = false;
        }
        return m;
    };
    ExpVec fmin = min_exps(*this), gmin = min_exps(divisor);
    auto shift_up = [this](const LaurentPoly& p, const ExpVec& by) {
        ExpVec neg = by;
        for (auto& x : neg) x = -x;
        return p * monomial(vars_, neg, Scalar::one());
    };
    LaurentPoly rem = shift_up(*this, fmin);
    LaurentPoly g = shift_up(divisor, gmin);
    LaurentPoly quot(vars_);
    const auto& [glead_e, glead_c] = *g.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& [rlead_e, rlead_c] = *rem.terms().rbegin();
        ExpVec d(nv);
        for (size_t k = 0; k < nv; ++k) {
            d[k] = rlead_e[k] - glead_e[k];
            if (d[k] < 0) throw laurent_error("inexact Laurent division");
        }
        LaurentPoly piece = monomial(vars_, std::move(d), rlead_c / glead_c);
        quot += piece;
        rem -= piece * g;
    }
    ExpVec back(nv);
    for (size_t k = 0; k < nv; ++k) back[k] = fmin[k] - gmin[k];
    return quot * monomial(vars_, std::move(back), Scalar::one());
}

int LaurentPoly::degree_in(int var) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int x = e[static_cast<size_t>(var)];
        d = first ? x : std::max(d, x);
        first = false;
    }
    return d;
}

int LaurentPoly::min_degree_in(int var) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int x = e[static_cast<size_t>(var)];
        d = first ? x : std::min(d, x);
        first = false;
    }
    return d;
}

LaurentPoly LaurentPoly::component_in_var(int var, int deg) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (e[static_cast<size_t>(var)] == deg) r.terms_.emplace(e, c);
    return r;
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*vars_)[k];
            if (e[k] != 1) mono += "^" + std::to_string(e[k]);
        }
        std::string piece;
        if (mono.empty()) {
            piece = "(" + c.str() + ")";
        } else if (c.is_one()) {
            piece = mono;
        } else if ((-c).is_one()) {
            piece = "-" + mono;
        } else {
            piece = "(" + c.str() + ")*" + mono;
        }
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out;
}

LaurentPoly zeta(const LaurentPoly& f, int i, long t, bool inverse) {
    std::vector<Scalar> s(f.vars()->size(), Scalar::one());
    s[static_cast<size_t>(i)] = Scalar::v_pow(inverse ? t : -t);
    return f.scale_action(s);
}

LaurentPoly brace(const LaurentPoly& u, long t) {
    if (u.term_count() != 1) throw laurent_error("brace expects an invertible monomial");
    Scalar denom = Scalar::v_pow(t) - Scalar::v_pow(-t);
    return (u - u.inverse_monomial()) * denom.inverse();
}

LaurentPoly y_monomial(const VarTable& vars, const std::vector<std::vector<int>>& matrix, int i) {
    std::vector<std::pair<int, int>> powers;
    for (size_t j = 0; j < matrix.size(); ++j) {
        int e = matrix[j][static_cast<size_t>(i)];
        if (e != 0) powers.emplace_back(static_cast<int>(j), e);
    }
    return LaurentPoly::sparse_monomial(vars, powers);
}

ChangeOfVars change_of_vars(Family fam, int n, VarTable xvars) {
    ChangeOfVars cv{fam, n, xvars, {}};
    cv.z.assign(static_cast<size_t>(n) + 1, LaurentPoly(xvars));
    auto x = [&](int i, int p) { return LaurentPoly::variable(xvars, i, p); };
    switch (fam) {
        case Family::A1:
            if (n < 1) throw laurent_error("family A1 needs n >= 1");
            for (int i = 1; i <= n; ++i) cv.z[i] = x(i - 1, -1) * x(i, 1);
            cv.z[0] = x(0, 1) * x(n, -1);
            break;
        case Family::C1:
            if (n < 2) throw laurent_error("family C1 needs n >= 2");
            for (int i = 1; i <= n; ++i) cv.z[i] = x(i - 1, -1) * x(i, 1);
            break;
        case Family::A2:
            if (n < 1) throw laurent_error("family A2 needs n >= 1");
            for (int i = 1; i <= n - 1; ++i) cv.z[i] = x(i - 1, -1) * x(i, 1);
            cv.z[n] = x(n - 1, -1) * x(n, 2);
            break;
        case Family::D2:
            if (n < 2) throw laurent_error("family D2 needs n >= 2");
            cv.z[1] = x(0, -2) * x(1, 1);
            for (int i = 2; i <= n - 1; ++i) cv.z[i] = x(i - 1, -1) * x(i, 1);
            cv.z[n] = x(n - 1, -1) * x(n, 2);
            break;
    }
    return cv;
}

LaurentPoly ChangeOfVars::y_via_z(int i) const {
    switch (fam) {
        case Family::A1:
            return z[static_cast<size_t>(i)] * z[static_cast<size_t>((i + 1) % (n + 1))].pow(-1);
        case Family::C1:
            if (i == 0) return z[1].pow(-2);
            if (i == n) return z[static_cast<size_t>(n)].pow(2);
            return z[static_cast<size_t>(i)] * z[static_cast<size_t>(i) + 1].pow(-1);
        case Family::A2:
            if (i == 0) return z[1].pow(-2);
            if (i == n) return z[static_cast<size_t>(n)];
            return z[static_cast<size_t>(i)] * z[static_cast<size_t>(i) + 1].pow(-1);
        case Family::D2:
            if (i == 0) return z[1].pow(-1);
            if (i == n) return z[static_cast<size_t>(n)];
            return z[static_cast<size_t>(i)] * z[static_cast<size_t>(i) + 1].pow(-1);
    }
    throw laurent_error("unknown family");
}

bool verify_change_of_vars(const ChangeOfVars& cv, const std::vector<std::vector<int>>& matrix) {
    for (int i = 0; i <= cv.n; ++i)
        if (cv.y_via_z(i) != y_monomial(cv.x, matrix, i)) return false;
    return true;
}

}  // namespace qshift
