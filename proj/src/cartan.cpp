// Construction and validation of the Cartan matrices used by the engine.
//
// Marks are computed as the primitive positive kernel vector of the matrix
// (rows times marks = 0), comarks as the marks of the transpose, and the
// symmetrizer of an affine matrix as d_i = comark_i / mark_i, rescaled to the
// smallest vector making 2 d_i integral.  Finite symmetrizers are propagated
// along edges and normalized so that the minimum is 1.
#include "qshift/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qshift {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix path_matrix(int size) {
    Matrix m(size, std::vector<int>(size, 0));
    for (int i = 0; i < size; ++i) m[i][i] = 2;
    for (int i = 0; i + 1 < size; ++i) {
        m[i][i + 1] = -1;
        m[i + 1][i] = -1;
    }
    return m;
}

// Primitive positive kernel vector of an integer square matrix, or empty if
// the matrix is nonsingular.  Affine generalized Cartan matrices have a one
// dimensional kernel spanned by a strictly positive vector.
std::vector<mpq_class> kernel_vector(const Matrix& a) {
    const size_t n = a.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];

    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[row], m[piv]);
        mpq_class lead = m[row][col];
        for (size_t j = 0; j < n; ++j) m[row][j] /= lead;
        for (size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            mpq_class f = m[r][col];
            for (size_t j = 0; j < n; ++j) m[r][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row == n) return {};
    if (row + 1 != n) throw cartan_error("matrix kernel is not one dimensional");

    // Free columns are those without a pivot; with nullity one there is
    // exactly one, set to 1 and read the pivot rows.
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;
    std::vector<mpq_class> x(n, 0);
    x[free_col] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free_col];

    // Clear denominators and reduce to a primitive integer vector.
    mpz_class l = 1;
    for (const auto& q : x) l = lcm(l, q.get_den());
    mpz_class g = 0;
    std::vector<mpz_class> z(n);
    for (size_t i = 0; i < n; ++i) {
        z[i] = mpz_class(x[i] * l);
        g = gcd(g, z[i]);
    }
    std::vector<mpq_class> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = mpq_class(z[i] / g);
    if (out[0] < 0)
        for (auto& q : out) q = -q;
    for (const auto& q : out)
        if (q <= 0) throw cartan_error("kernel vector is not strictly positive");
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.size(), std::vector<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
    return t;
}

void check_gcm(const Matrix& a, const std::string& label) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i][i] != 2) throw cartan_error(label + ": diagonal entry is not 2");
        for (size_t j = 0; j < a.size(); ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) throw cartan_error(label + ": positive off-diagonal entry");
            if ((a[i][j] == 0) != (a[j][i] == 0))
                throw cartan_error(label + ": zero pattern is not symmetric");
        }
    }
}

// Propagate d-ratios along edges of a connected diagram: d_j / d_i = a_ij / a_ji.
std::vector<mpq_class> propagate_symmetrizer(const Matrix& a, const std::string& label) {
    const size_t n = a.size();
    std::vector<mpq_class> d(n, 0);
    d[0] = 1;
    std::vector<size_t> queue = {0};
    while (!queue.empty()) {
        size_t i = queue.back();
        queue.pop_back();
        for (size_t j = 0; j < n; ++j) {
            if (i == j || a[i][j] == 0) continue;
            mpq_class want = d[i] * a[i][j] / a[j][i];
            if (d[j] == 0) {
                d[j] = want;
                queue.push_back(j);
            } else if (d[j] != want) {
                throw cartan_error(label + ": matrix is not symmetrizable");
            }
        }
    }
    for (const auto& q : d)
        if (q == 0) throw cartan_error(label + ": diagram is not connected");
    return d;
}

std::vector<int> to_twice_d(std::vector<mpq_class> d, const std::string& label) {
    for (auto& q : d) q *= 2;
    mpz_class l = 1;
    for (const auto& q : d) l = lcm(l, q.get_den());
    std::vector<int> out;
    if (l == 1) {
        // Already integral: keep as computed, this pins the normalization of
        // the four families all representation formulas depend on.
        for (const auto& q : d) out.push_back(static_cast<int>(mpz_class(q.get_num()).get_si()));
    } else {
        // Fractional q-powers of v do not exist in the scalar field; rescale
        // to the primitive integral symmetrizer (only reached by types whose
        // q_i are never consumed downstream).
        std::vector<mpz_class> z;
        mpz_class g = 0;
        for (const auto& q : d) {
            z.push_back(mpz_class(q * l));
            g = gcd(g, z.back());
        }
        for (const auto& v : z) out.push_back(static_cast<int>(mpz_class(v / g).get_si()));
    }
    for (int v : out)
        if (v <= 0) throw cartan_error(label + ": symmetrizer is not positive");
    return out;
}

}  // namespace

CartanData make_cartan(const std::string& label) {
    // Parse <letter><digits>[~<digit>].
    if (label.empty() || !std::isalpha(static_cast<unsigned char>(label[0])))
        throw cartan_error("bad type label: " + label);
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    size_t pos = 1;
    size_t digits = 0;
    while (pos + digits < label.size() && std::isdigit(static_cast<unsigned char>(label[pos + digits])))
        ++digits;
    if (digits == 0) throw cartan_error("bad type label: " + label);
    int sub = std::stoi(label.substr(pos, digits));
    pos += digits;
    int twist = 0;
    if (pos < label.size()) {
        if (label[pos] != '~' || pos + 2 != label.size() ||
            !std::isdigit(static_cast<unsigned char>(label[pos + 1])))
            throw cartan_error("bad type label: " + label);
        twist = label[pos + 1] - '0';
        if (twist < 1 || twist > 3) throw cartan_error("bad twist in label: " + label);
    }

    CartanData c;
    c.label = label;
    c.letter = letter;
    c.subscript = sub;
    c.twist = twist;
    c.affine = twist > 0;

    auto unsupported = [&]() -> cartan_error { return cartan_error("unsupported type: " + label); };

    if (twist == 0) {
        if (letter == 'A' && sub >= 1) {
            c.a = path_matrix(sub);
        } else if ((letter == 'B' || letter == 'C') && sub >= 2) {
            c.a = path_matrix(sub);
            if (letter == 'B') {
                c.a[sub - 1][sub - 2] = -2;  // short last root
            } else {
                c.a[sub - 2][sub - 1] = -2;  // long last root
            }
        } else if (letter == 'D' && sub >= 4) {
            c.a = path_matrix(sub - 1);
            c.a.resize(sub);
            for (auto& row : c.a) row.resize(sub, 0);
            c.a[sub - 1][sub - 1] = 2;
            c.a[sub - 3][sub - 1] = -1;
            c.a[sub - 1][sub - 3] = -1;
        } else if (letter == 'E' && sub >= 6 && sub <= 8) {
            c.a = path_matrix(sub - 1);
            c.a.resize(sub);
            for (auto& row : c.a) row.resize(sub, 0);
            c.a[sub - 1][sub - 1] = 2;
            c.a[2][sub - 1] = -1;
            c.a[sub - 1][2] = -1;
        } else if (letter == 'F' && sub == 4) {
            c.a = path_matrix(4);
            c.a[2][1] = -2;
        } else if (letter == 'G' && sub == 2) {
            c.a = {{2, -1}, {-3, 2}};
        } else {
            throw unsupported();
        }
    } else if (twist == 1) {
        int n = sub;
        if (letter == 'A' && n >= 1) {
            if (n == 1) {
                c.a = {{2, -2}, {-2, 2}};
            } else {
                c.a = path_matrix(n + 1);
                c.a[0][n] = -1;
                c.a[n][0] = -1;
            }
        } else if (letter == 'B' && n >= 3) {
            c.a = path_matrix(n + 1);
            c.a[0][1] = 0;
            c.a[1][0] = 0;
            c.a[0][2] = -1;
            c.a[2][0] = -1;
            c.a[n][n - 1] = -2;
        } else if (letter == 'C' && n >= 2) {
            c.a = path_matrix(n + 1);
            c.a[1][0] = -2;
            c.a[n - 1][n] = -2;
        } else if (letter == 'D' && n >= 4) {
            c.a = path_matrix(n + 1);
            c.a[0][1] = 0;
            c.a[1][0] = 0;
            c.a[0][2] = -1;
            c.a[2][0] = -1;
            c.a[n - 1][n] = 0;
            c.a[n][n - 1] = 0;
            c.a[n - 2][n] = -1;
            c.a[n][n - 2] = -1;
        } else if (letter == 'E' && n == 6) {
            c.a = Matrix(7, std::vector<int>(7, 0));
            for (int i = 0; i < 7; ++i) c.a[i][i] = 2;
            auto link = [&](int i, int j) {
                c.a[i][j] = -1;
                c.a[j][i] = -1;
            };
            link(1, 2);
            link(2, 3);
            link(3, 4);
            link(4, 5);
            link(3, 6);
            link(6, 0);
        } else if (letter == 'F' && n == 4) {
            c.a = path_matrix(5);
            c.a[3][2] = -2;
        } else if (letter == 'G' && n == 2) {
            c.a = {{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}};
        } else {
            throw unsupported();
        }
    } else if (twist == 2) {
        if (letter == 'A' && sub >= 2 && sub % 2 == 0) {
            int n = sub / 2;
            if (n == 1) {
                c.a = {{2, -1}, {-4, 2}};
            } else {
                c.a = path_matrix(n + 1);
                c.a[1][0] = -2;
                c.a[n][n - 1] = -2;
            }
        } else if (letter == 'A' && sub == 3) {
            // A_3^(2) and D_3^(2) name the same diagram; keep the requested
            // label but build the D_3^(2) matrix.
            c.a = {{2, -2, 0}, {-1, 2, -1}, {0, -2, 2}};
        } else if (letter == 'A' && sub >= 5 && sub % 2 == 1) {
            int l = (sub + 1) / 2;  // l + 1 nodes, fork at node 2
            c.a = path_matrix(l + 1);
            c.a[0][1] = 0;
            c.a[1][0] = 0;
            c.a[0][2] = -1;
            c.a[2][0] = -1;
            c.a[l - 1][l] = -2;
        } else if (letter == 'D' && sub >= 3) {
            int n = sub - 1;
            c.a = path_matrix(n + 1);
            c.a[0][1] = -2;
            c.a[n][n - 1] = -2;
        } else if (letter == 'E' && sub == 6) {
            c.a = path_matrix(5);
            c.a[2][3] = -2;
        } else {
            throw unsupported();
        }
    } else if (twist == 3) {
        if (letter == 'D' && sub == 4) {
            c.a = {{2, -1, 0}, {-1, 2, -3}, {0, -1, 2}};
        } else {
            throw unsupported();
        }
    } else {
        throw unsupported();
    }

    check_gcm(c.a, label);

    if (c.affine) {
        auto marks_q = kernel_vector(c.a);
        if (marks_q.empty()) throw cartan_error(label + ": affine matrix is nonsingular");
        auto comarks_q = kernel_vector(transpose(c.a));
        for (const auto& q : marks_q) c.marks.push_back(static_cast<int>(mpz_class(q.get_num()).get_si()));
        for (const auto& q : comarks_q) c.comarks.push_back(static_cast<int>(mpz_class(q.get_num()).get_si()));
        std::vector<mpq_class> d(marks_q.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = comarks_q[i] / marks_q[i];
        c.twice_d = to_twice_d(d, label);
        // d~_i = 1 in the untwisted and A_{2n}^(2) cases, d_i otherwise.
        bool dtilde_one = twist == 1 || (letter == 'A' && sub % 2 == 0);
        for (size_t i = 0; i < d.size(); ++i)
            c.twice_dtilde.push_back(dtilde_one ? 2 : c.twice_d[i]);
    } else {
        auto d = propagate_symmetrizer(c.a, label);
        mpq_class mn = d[0];
        for (const auto& q : d) mn = std::min(mn, q);
        for (auto& q : d) q /= mn;
        c.twice_d = to_twice_d(d, label);
    }

    // Symmetrizer identity, exact.
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j)
            if (static_cast<long>(c.twice_d[i]) * c.a[i][j] !=
                static_cast<long>(c.twice_d[j]) * c.a[j][i])
                throw cartan_error(label + ": symmetrizer check failed");

    return c;
}

std::vector<int> reflect(const CartanData& c, int i, std::vector<int> beta) {
    if (i < 0 || i >= c.size() || static_cast<int>(beta.size()) != c.size())
        throw cartan_error("reflect: index or vector size out of range");
    long s = 0;
    for (int j = 0; j < c.size(); ++j) s += static_cast<long>(c.a[i][j]) * beta[j];
    beta[i] -= static_cast<int>(s);
    return beta;
}

long pairing_vexp(const CartanData& c, const std::vector<int>& beta, int j) {
    if (j < 0 || j >= c.size() || static_cast<int>(beta.size()) != c.size())
        throw cartan_error("pairing: index or vector size out of range");
    long s = 0;
    for (int k = 0; k < c.size(); ++k)
        s += static_cast<long>(beta[k]) * 2 * c.twice_d[k] * c.a[k][j];
    return s;
}

std::vector<Scalar> weight_from_hstar(const CartanData& c, const std::vector<mpq_class>& coeffs) {
    if (static_cast<int>(coeffs.size()) != c.size())
        throw cartan_error("weight_from_hstar: coefficient count mismatch");
    std::vector<Scalar> out;
    for (int i = 0; i < c.size(); ++i) {
        mpq_class e = coeffs[i] * 2 * c.twice_d[i];
        if (e.get_den() != 1)
            throw cartan_error("weight_from_hstar: exponent is not integral");
        out.push_back(Scalar::v_pow(mpz_class(e.get_num()).get_si()));
    }
    return out;
}

TranslationWord translation_word(const CartanData& c, int i) {
    auto fi = family_info(c);
    if (!fi) throw cartan_error("translation word: unsupported type " + c.label);
    TranslationWord tw;
    const int size = c.size();
    tw.perm.resize(size);
    for (int j = 0; j < size; ++j) tw.perm[j] = j;

    if (fi->fam == Family::A1) {
        const int slots = size;  // nodes 0..slots-1 on a cycle
        if (i < 1 || i >= slots) throw cartan_error("translation word: node out of range");
        for (int j = 0; j < slots; ++j) tw.perm[j] = (j + i) % slots;
        for (int r = 1; r <= i; ++r)
            for (int k = slots - i + r - 1; k >= r; --k) tw.word.push_back(k);
        return tw;
    }

    const int n = c.n();
    if (fi->fam == Family::C1 || fi->fam == Family::D2) {
        if (i == n - 1 && n >= 2) {
            for (int rep = 0; rep < n - 1; ++rep) {
                for (int k = 0; k <= n; ++k) tw.word.push_back(k);
                tw.word.push_back(n - 1);
            }
            return tw;
        }
        if (i == n) {
            for (int j = 0; j < size; ++j) tw.perm[j] = n - j;
            tw.word.push_back(n);
            for (int j = n - 1; j >= 1; --j)
                for (int k = j; k <= n; ++k) tw.word.push_back(k);
            return tw;
        }
        throw cartan_error("translation word: node out of range");
    }

    // Family::A2
    if (i != n) throw cartan_error("translation word: node out of range");
    for (int rep = 0; rep < n; ++rep)
        for (int k = 0; k <= n; ++k) tw.word.push_back(k);
    return tw;
}

std::optional<FamilyInfo> family_info(const CartanData& c) {
    if (!c.affine) return std::nullopt;
    if (c.letter == 'A' && c.twist == 1) return FamilyInfo{Family::A1, c.subscript};
    if (c.letter == 'C' && c.twist == 1) return FamilyInfo{Family::C1, c.subscript};
    if (c.letter == 'A' && c.twist == 2 && c.subscript % 2 == 0)
        return FamilyInfo{Family::A2, c.subscript / 2};
    if (c.letter == 'A' && c.twist == 2 && c.subscript == 3) return FamilyInfo{Family::D2, 2};
    if (c.letter == 'D' && c.twist == 2) return FamilyInfo{Family::D2, c.subscript - 1};
    return std::nullopt;
}

}  // namespace qshift
