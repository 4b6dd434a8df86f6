// Tests for Cartan matrix construction: pinned matrices and marks for the
// types the engine computes with, algorithmic invariants (null vector,
// symmetrizer) across every registered affine label, reflection identities,
// and translation words acting as t(alpha_i) = alpha_i - d~_i delta.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qshift/cartan.hpp"

using namespace qshift;

namespace {

const std::vector<std::string> kAffineLabels = {
    "A1~1", "A2~1", "A3~1", "A4~1", "B3~1", "B4~1", "C2~1", "C3~1", "C4~1",
    "D4~1", "D5~1", "E6~1", "F4~1", "G2~1", "A2~2", "A4~2", "A6~2", "A3~2",
    "A5~2", "A7~2", "D3~2", "D4~2", "D5~2", "E6~2", "D4~3"};

std::vector<int> apply_translation(const CartanData& c, const TranslationWord& tw,
                                   std::vector<int> beta) {
    for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it) beta = reflect(c, *it, beta);
    std::vector<int> out(beta.size());
    for (size_t j = 0; j < beta.size(); ++j) out[static_cast<size_t>(tw.perm[j])] = beta[j];
    return out;
}

}  // namespace

TEST_CASE("label parsing and rejection") {
    CHECK(make_cartan("A2").size() == 2);
    CHECK(make_cartan("a3~1").label == "a3~1");
    CHECK(make_cartan("A3~1").twist == 1);
    CHECK(make_cartan("D3~2").subscript == 3);
    CHECK(make_cartan("A4~2").letter == 'A');
    CHECK_FALSE(make_cartan("G2").affine);
    CHECK(make_cartan("G2~1").affine);

    CHECK_THROWS_AS(make_cartan(""), cartan_error);
    CHECK_THROWS_AS(make_cartan("A"), cartan_error);
    CHECK_THROWS_AS(make_cartan("H3"), cartan_error);
    CHECK_THROWS_AS(make_cartan("A2~"), cartan_error);
    CHECK_THROWS_AS(make_cartan("A2~5"), cartan_error);
    CHECK_THROWS_AS(make_cartan("A0~1"), cartan_error);
    CHECK_THROWS_AS(make_cartan("C1~1"), cartan_error);
    CHECK_THROWS_AS(make_cartan("B2~1"), cartan_error);
    CHECK_THROWS_AS(make_cartan("D2~2"), cartan_error);
    CHECK_THROWS_AS(make_cartan("E7~1"), cartan_error);
    CHECK_THROWS_AS(make_cartan("G2~3"), cartan_error);
}

TEST_CASE("pinned matrices") {
    using M = std::vector<std::vector<int>>;

    CHECK(make_cartan("A1~1").a == M{{2, -2}, {-2, 2}});
    CHECK(make_cartan("A2~1").a == M{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
    CHECK(make_cartan("C2~1").a == M{{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}});
    CHECK(make_cartan("C3~1").a ==
          M{{2, -1, 0, 0}, {-2, 2, -1, 0}, {0, -1, 2, -2}, {0, 0, -1, 2}});
    CHECK(make_cartan("A2~2").a == M{{2, -1}, {-4, 2}});
    CHECK(make_cartan("A4~2").a == M{{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}});
    CHECK(make_cartan("A6~2").a ==
          M{{2, -1, 0, 0}, {-2, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}});
    CHECK(make_cartan("D3~2").a == M{{2, -2, 0}, {-1, 2, -1}, {0, -2, 2}});
    CHECK(make_cartan("D4~2").a ==
          M{{2, -2, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}});
    CHECK(make_cartan("B3~1").a ==
          M{{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -1}, {0, 0, -2, 2}});
    CHECK(make_cartan("A5~2").a ==
          M{{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -2}, {0, 0, -1, 2}});
    CHECK(make_cartan("G2~1").a == M{{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}});
    CHECK(make_cartan("D4~3").a == M{{2, -1, 0}, {-1, 2, -3}, {0, -1, 2}});
    CHECK(make_cartan("F4~1").a == M{{2, -1, 0, 0, 0},
                                     {-1, 2, -1, 0, 0},
                                     {0, -1, 2, -1, 0},
                                     {0, 0, -2, 2, -1},
                                     {0, 0, 0, -1, 2}});
    CHECK(make_cartan("E6~2").a == M{{2, -1, 0, 0, 0},
                                     {-1, 2, -1, 0, 0},
                                     {0, -1, 2, -2, 0},
                                     {0, 0, -1, 2, -1},
                                     {0, 0, 0, -1, 2}});

    CHECK(make_cartan("A2").a == M{{2, -1}, {-1, 2}});
    CHECK(make_cartan("B2").a == M{{2, -1}, {-2, 2}});
    CHECK(make_cartan("C2").a == M{{2, -2}, {-1, 2}});
    CHECK(make_cartan("G2").a == M{{2, -1}, {-3, 2}});
    CHECK(make_cartan("B3").a == M{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
    CHECK(make_cartan("D4").a ==
          M{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
}

TEST_CASE("marks and comarks") {
    CHECK(make_cartan("A2~1").marks == std::vector<int>{1, 1, 1});
    CHECK(make_cartan("C3~1").marks == std::vector<int>{1, 2, 2, 1});
    CHECK(make_cartan("A2~2").marks == std::vector<int>{1, 2});
    CHECK(make_cartan("A4~2").marks == std::vector<int>{1, 2, 2});
    CHECK(make_cartan("D3~2").marks == std::vector<int>{1, 1, 1});
    CHECK(make_cartan("D4~2").marks == std::vector<int>{1, 1, 1, 1});
    CHECK(make_cartan("B3~1").marks == std::vector<int>{1, 1, 2, 2});
    CHECK(make_cartan("A5~2").marks == std::vector<int>{1, 1, 2, 1});
    CHECK(make_cartan("G2~1").marks == std::vector<int>{1, 2, 3});
    CHECK(make_cartan("D4~3").marks == std::vector<int>{1, 2, 1});
    CHECK(make_cartan("F4~1").marks == std::vector<int>{1, 2, 3, 4, 2});
    CHECK(make_cartan("E6~1").marks == std::vector<int>{1, 1, 2, 3, 2, 1, 2});
    CHECK(make_cartan("E6~2").marks == std::vector<int>{1, 2, 3, 2, 1});

    CHECK(make_cartan("C3~1").comarks == std::vector<int>{1, 1, 1, 1});
    CHECK(make_cartan("A4~2").comarks == std::vector<int>{2, 2, 1});
    CHECK(make_cartan("D3~2").comarks == std::vector<int>{1, 2, 1});

    // Finite types carry no marks.
    CHECK(make_cartan("A3").marks.empty());

    // Null-vector invariants, rows times marks and columns times comarks.
    for (const auto& label : kAffineLabels) {
        CartanData c = make_cartan(label);
        REQUIRE(c.marks.size() == c.a.size());
        REQUIRE(c.comarks.size() == c.a.size());
        for (int i = 0; i < c.size(); ++i) {
            long row = 0, col = 0;
            for (int j = 0; j < c.size(); ++j) {
                row += static_cast<long>(c.a[i][j]) * c.marks[j];
                col += static_cast<long>(c.a[j][i]) * c.comarks[j];
            }
            CHECK(row == 0);
            CHECK(col == 0);
        }
    }
}

TEST_CASE("symmetrizers and q_i exponents") {
    CHECK(make_cartan("A2~1").twice_d == std::vector<int>{2, 2, 2});
    CHECK(make_cartan("C2~1").twice_d == std::vector<int>{2, 1, 2});
    CHECK(make_cartan("C3~1").twice_d == std::vector<int>{2, 1, 1, 2});
    CHECK(make_cartan("A2~2").twice_d == std::vector<int>{4, 1});
    CHECK(make_cartan("A4~2").twice_d == std::vector<int>{4, 2, 1});
    CHECK(make_cartan("A6~2").twice_d == std::vector<int>{4, 2, 2, 1});
    CHECK(make_cartan("D3~2").twice_d == std::vector<int>{2, 4, 2});
    CHECK(make_cartan("D4~2").twice_d == std::vector<int>{2, 4, 4, 2});
    CHECK(make_cartan("B3~1").twice_d == std::vector<int>{2, 2, 2, 1});
    CHECK(make_cartan("A2").twice_d == std::vector<int>{2, 2});
    CHECK(make_cartan("G2").twice_d == std::vector<int>{6, 2});

    // q_i = v^{qexp(i)}: C-type ends carry q, the middle q^{1/2}.
    CartanData c = make_cartan("C3~1");
    CHECK(c.qexp(0) == 4);
    CHECK(c.qexp(1) == 2);
    CHECK(c.qexp(3) == 4);
    CartanData a4 = make_cartan("A4~2");
    CHECK(a4.qexp(0) == 8);
    CHECK(a4.qexp(1) == 4);
    CHECK(a4.qexp(2) == 2);

    for (const auto& label : kAffineLabels) {
        CartanData cd = make_cartan(label);
        for (int i = 0; i < cd.size(); ++i)
            for (int j = 0; j < cd.size(); ++j)
                CHECK(static_cast<long>(cd.twice_d[i]) * cd.a[i][j] ==
                      static_cast<long>(cd.twice_d[j]) * cd.a[j][i]);
    }

    // d~_i: 1 for untwisted and A_{2n}^(2), d_i for the other twisted types.
    CHECK(make_cartan("C3~1").twice_dtilde == std::vector<int>{2, 2, 2, 2});
    CHECK(make_cartan("A4~2").twice_dtilde == std::vector<int>{2, 2, 2});
    CHECK(make_cartan("D4~2").twice_dtilde == std::vector<int>{2, 4, 4, 2});
}

TEST_CASE("the label A3~2 names the D3~2 diagram") {
    CartanData alias = make_cartan("A3~2");
    CartanData d3 = make_cartan("D3~2");
    CHECK(alias.a == d3.a);
    CHECK(alias.marks == d3.marks);
    CHECK(alias.twice_d == d3.twice_d);
    CHECK(alias.twice_dtilde == d3.twice_dtilde);
    CHECK(alias.label == "A3~2");
    auto fi = family_info(alias);
    REQUIRE(fi.has_value());
    CHECK(fi->fam == Family::D2);
    CHECK(fi->n == 2);
}

TEST_CASE("reflections") {
    for (const auto& label : {"A2~1", "C3~1", "A4~2", "D4~2", "G2~1"}) {
        CartanData c = make_cartan(label);
        for (int i = 0; i < c.size(); ++i) {
            // delta is fixed by every simple reflection.
            CHECK(reflect(c, i, c.marks) == c.marks);
            // involution on a spread of vectors
            for (int j = 0; j < c.size(); ++j) {
                std::vector<int> e(static_cast<size_t>(c.size()), 0);
                e[static_cast<size_t>(j)] = 1;
                e[static_cast<size_t>((j + 1) % c.size())] += 2;
                CHECK(reflect(c, i, reflect(c, i, e)) == e);
            }
            // s_i alpha_i = -alpha_i
            std::vector<int> ei(static_cast<size_t>(c.size()), 0);
            ei[static_cast<size_t>(i)] = 1;
            std::vector<int> want(static_cast<size_t>(c.size()), 0);
            want[static_cast<size_t>(i)] = -1;
            CHECK(reflect(c, i, ei) == want);
        }
    }

    // s_i alpha_j = alpha_j - a_ij alpha_i, spot check on C3~1.
    CartanData c = make_cartan("C3~1");
    std::vector<int> a1 = {0, 1, 0, 0};
    CHECK(reflect(c, 0, a1) == std::vector<int>{1, 1, 0, 0});   // a_01 = -1
    CHECK(reflect(c, 2, a1) == std::vector<int>{0, 1, 1, 0});   // a_21 = -1
    std::vector<int> a2 = {0, 0, 1, 0};
    CHECK(reflect(c, 3, a2) == std::vector<int>{0, 0, 1, 1});   // a_32 = -1
    std::vector<int> a3 = {0, 0, 0, 1};
    CHECK(reflect(c, 2, a3) == std::vector<int>{0, 0, 2, 1});   // a_23 = -2
}

TEST_CASE("pairing exponents") {
    CartanData c = make_cartan("A4~2");
    // (alpha_i, alpha_i) = 2 d_i, so the v-exponent of q^{(.,.)} is 4 d_i.
    std::vector<int> e0 = {1, 0, 0}, e1 = {0, 1, 0}, e2 = {0, 0, 1};
    CHECK(pairing_vexp(c, e0, 0) == 16);  // d_0 = 2
    CHECK(pairing_vexp(c, e1, 1) == 8);   // d_1 = 1
    CHECK(pairing_vexp(c, e2, 2) == 4);   // d_2 = 1/2
    // (alpha_0, alpha_1) = d_0 a_01 = -2, exponent -8; symmetric both ways.
    CHECK(pairing_vexp(c, e0, 1) == -8);
    CHECK(pairing_vexp(c, e1, 0) == -8);
    // delta pairs to zero with everything.
    for (int j = 0; j < c.size(); ++j) CHECK(pairing_vexp(c, c.marks, j) == 0);
}

TEST_CASE("weight_from_hstar") {
    CartanData c = make_cartan("C3~1");
    std::vector<mpq_class> coeffs = {mpq_class(1, 2), 0, 1, mpq_class(-3, 2)};
    auto lambda = weight_from_hstar(c, coeffs);
    CHECK(lambda[0] == Scalar::v_pow(2));    // q_0^{1/2}
    CHECK(lambda[1] == Scalar::one());
    CHECK(lambda[2] == Scalar::v_pow(2));    // q_2^1 with d_2 = 1/2
    CHECK(lambda[3] == Scalar::v_pow(-6));   // q_3^{-3/2}
    CHECK_THROWS_AS(weight_from_hstar(c, {mpq_class(1, 3), 0, 0, 0}), cartan_error);
    CHECK_THROWS_AS(weight_from_hstar(c, {0, 0, 0}), cartan_error);
}

TEST_CASE("translation words") {
    struct Probe {
        std::string label;
        std::vector<int> nodes;
    };
    const std::vector<Probe> probes = {
        {"A1~1", {1}},        {"A2~1", {1, 2}},    {"A3~1", {1, 2, 3}},
        {"C2~1", {1, 2}},     {"C3~1", {2, 3}},    {"A2~2", {1}},
        {"A4~2", {2}},        {"A6~2", {3}},       {"D3~2", {1, 2}},
        {"D4~2", {2, 3}},     {"A3~2", {1, 2}}};

    for (const auto& p : probes) {
        CartanData c = make_cartan(p.label);
        for (int i : p.nodes) {
            CAPTURE(p.label);
            CAPTURE(i);
            TranslationWord tw = translation_word(c, i);
            REQUIRE_FALSE(tw.word.empty());
            CHECK(tw.word.back() == i);
            // The leading permutation must be a diagram automorphism.
            for (int r = 0; r < c.size(); ++r)
                for (int s = 0; s < c.size(); ++s)
                    CHECK(c.a[static_cast<size_t>(tw.perm[r])][static_cast<size_t>(tw.perm[s])] ==
                          c.a[static_cast<size_t>(r)][static_cast<size_t>(s)]);
            // t(alpha_i) = alpha_i - d~_i delta.
            std::vector<int> ei(static_cast<size_t>(c.size()), 0);
            ei[static_cast<size_t>(i)] = 1;
            std::vector<int> got = apply_translation(c, tw, ei);
            std::vector<int> want = ei;
            int dtilde = c.twice_dtilde[static_cast<size_t>(i)] / 2;
            for (int j = 0; j < c.size(); ++j)
                want[static_cast<size_t>(j)] -= dtilde * c.marks[static_cast<size_t>(j)];
            CHECK(got == want);
        }
    }

    CHECK_THROWS_AS(translation_word(make_cartan("A2~1"), 0), cartan_error);
    CHECK_THROWS_AS(translation_word(make_cartan("C3~1"), 1), cartan_error);
    CHECK_THROWS_AS(translation_word(make_cartan("B3~1"), 1), cartan_error);
}

TEST_CASE("family info and change of variables sweep") {
    CHECK_FALSE(family_info(make_cartan("A3")).has_value());
    CHECK_FALSE(family_info(make_cartan("B3~1")).has_value());
    CHECK_FALSE(family_info(make_cartan("G2~1")).has_value());
    CHECK_FALSE(family_info(make_cartan("A5~2")).has_value());

    const std::vector<std::string> shiftable = {"A1~1", "A2~1", "A3~1", "A4~1", "C2~1",
                                                "C3~1", "C4~1", "A2~2", "A4~2", "A6~2",
                                                "A8~2", "D3~2", "D4~2", "D5~2", "A3~2"};
    for (const auto& label : shiftable) {
        CAPTURE(label);
        CartanData c = make_cartan(label);
        auto fi = family_info(c);
        REQUIRE(fi.has_value());
        std::vector<std::string> names;
        for (int i = 0; i < c.size(); ++i) names.push_back("x" + std::to_string(i));
        ChangeOfVars cv = change_of_vars(fi->fam, fi->n, make_vars(names));
        CHECK(verify_change_of_vars(cv, c.a));
    }
}
