// Canonical K-right expressions, Lusztig braid operators, and substitution
// into oscillator images.
#include "qshift/algebra.hpp"

#include <cstdlib>
#include <sstream>

namespace qshift {

namespace {

long size_budget() {
    static long budget = [] {
        if (const char* s = std::getenv("QSHIFT_SIZE_BUDGET")) {
            long b = std::atol(s);
            if (b > 0) return b;
        }
        return 500000L;
    }();
    return budget;
}

// v-exponent picked up when K_beta crosses the whole word w to the right.
long cross_vexp(const CartanData& c, const std::vector<int>& beta, const XWord& w) {
    long e = 0;
    for (const XLetter& l : w) e += l.sign * pairing_vexp(c, beta, l.node);
    return e;
}

}  // namespace

void AlgebraExpr::add_term(const Key& key, const Scalar& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, s);
    if (!inserted) {
        it->second = it->second + s;
        if (it->second.is_zero()) terms_.erase(it);
    }
    if (static_cast<long>(terms_.size()) > size_budget())
        throw algebra_error("expression size budget exceeded (set QSHIFT_SIZE_BUDGET to raise)");
}

AlgebraExpr AlgebraExpr::one(std::shared_ptr<const CartanData> c) {
    AlgebraExpr r(c);
    r.add_term({{}, std::vector<int>(c->size(), 0)}, Scalar::one());
    return r;
}

AlgebraExpr AlgebraExpr::gen_x(std::shared_ptr<const CartanData> c, int node, int sign) {
    if (node < 0 || node >= c->size() || (sign != 1 && sign != -1))
        throw algebra_error("bad generator letter");
    AlgebraExpr r(c);
    r.add_term({{XLetter{node, sign}}, std::vector<int>(c->size(), 0)}, Scalar::one());
    return r;
}

AlgebraExpr AlgebraExpr::gen_k(std::shared_ptr<const CartanData> c, std::vector<int> beta) {
    if (static_cast<int>(beta.size()) != c->size()) throw algebra_error("bad lattice vector");
    AlgebraExpr r(c);
    r.add_term({{}, std::move(beta)}, Scalar::one());
    return r;
}

AlgebraExpr AlgebraExpr::operator+(const AlgebraExpr& o) const {
    AlgebraExpr r(*this);
    for (const auto& [k, s] : o.terms_) r.add_term(k, s);
    return r;
}

AlgebraExpr AlgebraExpr::operator-(const AlgebraExpr& o) const { return *this + (-o); }

AlgebraExpr AlgebraExpr::operator-() const {
    AlgebraExpr r(c_);
    for (const auto& [k, s] : terms_) r.terms_.emplace(k, -s);
    return r;
}

AlgebraExpr AlgebraExpr::operator*(const AlgebraExpr& o) const {
    AlgebraExpr r(c_);
    for (const auto& [k1, s1] : terms_) {
        for (const auto& [k2, s2] : o.terms_) {
            XWord w = k1.first;
            w.insert(w.end(), k2.first.begin(), k2.first.end());
            std::vector<int> beta = k1.second;
            for (size_t i = 0; i < beta.size(); ++i) beta[i] += k2.second[i];
            Scalar s = s1 * s2 * Scalar::v_pow(cross_vexp(*c_, k1.second, k2.first));
            r.add_term({std::move(w), std::move(beta)}, s);
        }
    }
    return r;
}

AlgebraExpr AlgebraExpr::operator*(const Scalar& s) const {
    AlgebraExpr r(c_);
    if (s.is_zero()) return r;
    for (const auto& [k, co] : terms_) r.terms_.emplace(k, co * s);
    return r;
}

AlgebraExpr AlgebraExpr::divided_power(std::shared_ptr<const CartanData> c, int node, int sign,
                                       int k) {
    if (k < 0) throw algebra_error("negative divided power");
    AlgebraExpr r(c);
    XWord w(static_cast<size_t>(k), XLetter{node, sign});
    r.add_term({std::move(w), std::vector<int>(c->size(), 0)},
               qfact(k, c->qexp(node)).inverse());
    return r;
}

AlgebraExpr q_commutator(const AlgebraExpr& x, const AlgebraExpr& y, const Scalar& p) {
    return x * y - (y * x) * p.inverse();
}

AlgebraExpr phi_antiauto(const AlgebraExpr& x) {
    const CartanData& c = x.cartan();
    AlgebraExpr r(x.cartan_ptr());
    for (const auto& [key, s] : x.terms()) {
        XWord w(key.first.rbegin(), key.first.rend());
        std::vector<int> beta(key.second.size());
        for (size_t i = 0; i < beta.size(); ++i) beta[i] = -key.second[i];
        // Phi places K_{-beta} on the left; moving it back across the
        // reversed word collects the crossing q-powers.
        Scalar ns = s * Scalar::v_pow(cross_vexp(c, beta, w));
        r.add_term({std::move(w), std::move(beta)}, ns);
    }
    return r;
}

AlgebraExpr braid(const AlgebraExpr& x, int i, bool inverse) {
    if (inverse) return phi_antiauto(braid(phi_antiauto(x), i, false));
    const auto& cp = x.cartan_ptr();
    const CartanData& c = *cp;
    if (i < 0 || i >= c.size()) throw algebra_error("braid node out of range");

    // The letter images repeat across terms, so build them once per call.
    std::map<std::pair<int, int>, AlgebraExpr> images;
    auto image = [&](const XLetter& l) -> const AlgebraExpr& {
        auto it = images.find({l.node, l.sign});
        if (it != images.end()) return it->second;
        AlgebraExpr img(cp);
        if (l.node == i) {
            std::vector<int> ei(c.size(), 0);
            ei[i] = l.sign;
            if (l.sign > 0) {
                img = -(AlgebraExpr::gen_x(cp, i, -1) * AlgebraExpr::gen_k(cp, ei));
            } else {
                img = -(AlgebraExpr::gen_k(cp, ei) * AlgebraExpr::gen_x(cp, i, 1));
            }
        } else {
            int m = -c.a[i][l.node];
            for (int k = 0; k <= m; ++k) {
                AlgebraExpr part =
                    (l.sign > 0)
                        ? AlgebraExpr::divided_power(cp, i, 1, m - k) *
                              AlgebraExpr::gen_x(cp, l.node, 1) * AlgebraExpr::divided_power(cp, i, 1, k)
                        : AlgebraExpr::divided_power(cp, i, -1, k) *
                              AlgebraExpr::gen_x(cp, l.node, -1) *
                              AlgebraExpr::divided_power(cp, i, -1, m - k);
                Scalar coeff = Scalar::v_pow(-l.sign * k * c.qexp(i));
                if ((k + m) % 2) coeff = -coeff;
                img = img + part * coeff;
            }
        }
        return images.emplace(std::pair{l.node, l.sign}, std::move(img)).first->second;
    };

    AlgebraExpr r(cp);
    for (const auto& [key, s] : x.terms()) {
        AlgebraExpr acc = AlgebraExpr::one(cp) * s;
        for (const XLetter& l : key.first) acc = acc * image(l);
        acc = acc * AlgebraExpr::gen_k(cp, reflect(c, i, key.second));
        r = r + acc;
    }
    return r;
}

AlgebraExpr braid_tau(const AlgebraExpr& x, const std::vector<int>& perm) {
    const CartanData& c = x.cartan();
    if (static_cast<int>(perm.size()) != c.size()) throw algebra_error("bad diagram automorphism");
    AlgebraExpr r(x.cartan_ptr());
    for (const auto& [key, s] : x.terms()) {
        XWord w;
        w.reserve(key.first.size());
        for (const XLetter& l : key.first) w.push_back({perm[l.node], l.sign});
        std::vector<int> beta(key.second.size());
        for (size_t j = 0; j < beta.size(); ++j) beta[static_cast<size_t>(perm[j])] = key.second[j];
        r.add_term({std::move(w), std::move(beta)}, s);
    }
    return r;
}

AlgebraExpr braid_word_apply(const AlgebraExpr& x, const TranslationWord& w) {
    AlgebraExpr r = x;
    for (size_t idx = w.word.size(); idx-- > 0;) r = braid(r, w.word[idx]);
    return braid_tau(r, w.perm);
}

FockOperator represent(const AlgebraExpr& x, const DJImages& im) {
    FockOperator r(im.n, im.nu_vexp, im.params);
    for (const auto& [key, s] : x.terms()) {
        FockOperator acc = FockOperator::identity(im.n, im.nu_vexp, im.params) * s;
        for (const XLetter& l : key.first)
            acc = acc * (l.sign > 0 ? im.xp[l.node] : im.xm[l.node]);
        for (size_t j = 0; j < key.second.size(); ++j) {
            const FockOperator& kj = key.second[j] > 0 ? im.k[j] : im.kinv[j];
            for (int t = 0; t < std::abs(key.second[j]); ++t) acc = acc * kj;
        }
        r = r + acc;
    }
    return r;
}

std::string AlgebraExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, s] : terms_) {
        // Only unit coefficients move their sign into the separator; any
        // other scalar is kept whole inside its parentheses.
        bool plus_one = (s == Scalar::one());
        bool minus_one = (s == -Scalar::one());
        os << (first ? (minus_one ? "- " : "") : (minus_one ? " - " : " + "));
        first = false;
        std::vector<std::string> pieces;
        bool beta_zero = true;
        for (int b : key.second)
            if (b) beta_zero = false;
        bool bare = key.first.empty() && beta_zero;
        if ((!plus_one && !minus_one) || bare)
            pieces.push_back("(" + (minus_one ? Scalar::one() : s).str() + ")");
        for (const XLetter& l : key.first)
            pieces.push_back("X" + std::to_string(l.node) + (l.sign > 0 ? "+" : "-"));
        if (!beta_zero) {
            std::string kp = "K[";
            for (size_t j = 0; j < key.second.size(); ++j)
                kp += (j ? "," : "") + std::to_string(key.second[j]);
            pieces.push_back(kp + "]");
        }
        for (size_t j = 0; j < pieces.size(); ++j) os << (j ? " " : "") << pieces[j];
    }
    return os.str();
}

AlgebraExpr AlgebraExpr::parse(std::shared_ptr<const CartanData> c, const std::string& text) {
    AlgebraExpr r(c);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw algebra_error("empty expression");
    if (text.compare(pos, 1, "0") == 0 && pos + 1 == text.size()) return r;
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        bool neg = false;
        if (text[pos] == '+' || text[pos] == '-') {
            neg = text[pos] == '-';
            ++pos;
            skip_ws();
        } else if (!first) {
            throw algebra_error("expected sign between terms");
        }
        first = false;
        Scalar coeff = Scalar::one();
        if (pos < text.size() && text[pos] == '(') {
            auto matching = [&](size_t open) {
                int depth = 0;
                for (size_t k = open; k < text.size(); ++k) {
                    if (text[k] == '(') ++depth;
                    if (text[k] == ')' && --depth == 0) return k;
                }
                throw algebra_error("unbalanced scalar parentheses");
            };
            size_t start = pos;
            size_t close = matching(pos);
            if (close + 1 < text.size() && text[close + 1] == '/') {
                // A fractional coefficient prints as (P)/(Q); hand the whole
                // slice to the scalar parser.
                if (close + 2 >= text.size() || text[close + 2] != '(')
                    throw algebra_error("malformed fractional coefficient");
                size_t close2 = matching(close + 2);
                coeff = Scalar::parse(text.substr(start, close2 + 1 - start));
                pos = close2 + 1;
            } else {
                coeff = Scalar::parse(text.substr(start + 1, close - start - 1));
                pos = close + 1;
            }
        }
        if (neg) coeff = -coeff;
        XWord w;
        std::vector<int> beta(c->size(), 0);
        skip_ws();
        while (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
            if (text[pos] == 'X') {
                ++pos;
                size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                int node = std::stoi(text.substr(start, pos - start));
                if (pos == text.size() || (text[pos] != '+' && text[pos] != '-'))
                    throw algebra_error("letter missing sign");
                w.push_back({node, text[pos] == '+' ? 1 : -1});
                ++pos;
            } else if (text[pos] == 'K') {
                ++pos;
                if (pos == text.size() || text[pos] != '[') throw algebra_error("K missing bracket");
                ++pos;
                int j = 0;
                while (true) {
                    size_t start = pos;
                    while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
                    if (pos == text.size()) throw algebra_error("unterminated K vector");
                    if (j >= c->size()) throw algebra_error("long K vector");
                    beta[j++] = std::stoi(text.substr(start, pos - start));
                    if (text[pos] == ']') break;
                    ++pos;
                }
                ++pos;
                if (j != c->size()) throw algebra_error("short K vector");
                break;
            } else {
                throw algebra_error("unexpected character in expression");
            }
            skip_ws();
        }
        r.add_term({std::move(w), std::move(beta)}, coeff);
        skip_ws();
    }
    return r;
}

}  // namespace qshift
