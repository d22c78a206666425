#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include "klcells/coxeter.hpp"
#include "oracle_helpers.hpp"

using namespace klcells;

TEST_CASE("group orders match the closed-form counts") {
    CHECK(oracles::system("A1").size() == 2);
    CHECK(oracles::system("A2").size() == 6);
    CHECK(oracles::system("A3").size() == 24);
    CHECK(oracles::system("B2").size() == 8);
    CHECK(oracles::system("B3").size() == 48);
    CHECK(oracles::system("D4").size() == 192);
    CHECK(oracles::system("D5").size() == 1920); // 2^4 * 5!
}

TEST_CASE("generator multiplication") {
    const CoxeterSystem& d4 = oracles::system("D4");
    SECTION("identity and involution") {
        Element s = d4.left(0, 0);
        CHECK(d4.length(s) == 1);
        CHECK(d4.left(0, s) == 0);
        CHECK(d4.mul_gen(Side::Right, s, 0) == 0);
    }
    SECTION("left multiplication changes length by one and is an involution") {
        for (Element w = 0; w < d4.size(); ++w)
            for (Generator s = 0; s < d4.rank(); ++s) {
                int diff = d4.length(d4.left(s, w)) - d4.length(w);
                CHECK((diff == 1 || diff == -1));
                CHECK(d4.left(s, d4.left(s, w)) == w);
                CHECK(d4.right(d4.right(w, s), s) == w);
            }
    }
    SECTION("s1 times s3s4") {
        Element w = d4.parse_word("3 4");
        CHECK(d4.length(d4.left(0, w)) == 3);
    }
}

TEST_CASE("descent sets") {
    const CoxeterSystem& d4 = oracles::system("D4");
    CHECK(d4.left_descents(0) == 0);
    CHECK(d4.left_descents(d4.parse_word("1 2")) == 0b0011u);
    CHECK(d4.left_descents(d4.long_element()) == d4.full_genset());
    // tau(w w0) = S minus tau(w)
    Element w0 = d4.long_element();
    for (Element w = 0; w < d4.size(); ++w) {
        Element ww0 = w;
        for (Generator s : d4.word(w0)) ww0 = d4.right(ww0, s);
        CHECK(d4.right_descents(ww0) == (d4.full_genset() & ~d4.right_descents(w)));
    }
}

TEST_CASE("canonical words are lexicographically minimal reduced words") {
    const CoxeterSystem& sys = oracles::system("A3");
    for (Element w = 0; w < sys.size(); ++w) {
        auto words = oracles::all_reduced_words(sys, w);
        std::vector<Generator> best = *std::min_element(words.begin(), words.end());
        CHECK(sys.word(w) == best);
        CHECK(sys.element_from_word(best) == w);
    }
    // Indices sorted by (length, word).
    for (Element w = 1; w < sys.size(); ++w) {
        auto a = std::pair(sys.length(w - 1), sys.word(w - 1));
        auto b = std::pair(sys.length(w), sys.word(w));
        CHECK(a < b);
    }
}

TEST_CASE("Bruhat order agrees with the subword oracle") {
    for (const char* name : {"A3", "B2"}) {
        const CoxeterSystem& sys = oracles::system(name);
        for (Element y = 0; y < sys.size(); ++y)
            for (Element w = 0; w < sys.size(); ++w)
                CHECK(sys.bruhat_leq(y, w) == oracles::bruhat_leq_subword_oracle(sys, y, w));
    }
}

TEST_CASE("Bruhat order basics") {
    const CoxeterSystem& a2 = oracles::system("A2");
    Element s = a2.parse_word("1"), sts = a2.parse_word("1 2 1");
    CHECK(a2.bruhat_leq(s, sts));
    CHECK_FALSE(a2.bruhat_leq(sts, s));
    const CoxeterSystem& d4 = oracles::system("D4");
    for (Element w = 0; w < d4.size(); ++w) {
        CHECK(d4.bruhat_leq(0, w));
        CHECK(d4.bruhat_leq(w, w));
        for (Generator g = 0; g < d4.rank(); ++g) {
            Element sw = d4.left(g, w);
            Element lo = d4.length(sw) < d4.length(w) ? sw : w;
            Element hi = lo == w ? sw : w;
            CHECK(d4.bruhat_leq(lo, hi));
        }
    }
}

TEST_CASE("parabolic decomposition") {
    const CoxeterSystem& d5 = oracles::system("D5");
    GenSet J = 0b01111; // the D4 subdiagram
    SECTION("factorization is exact and lengths add") {
        for (Element w = 0; w < d5.size(); ++w) {
            auto [wj, up] = d5.parabolic_decompose(J, w);
            CHECK((d5.left_descents(up) & J) == 0);
            CHECK((d5.left_descents(wj) & ~J) == 0);
            Element prod = wj;
            for (Generator s : d5.word(up)) prod = d5.right(prod, s);
            CHECK(prod == w);
            CHECK(d5.length(w) == d5.length(wj) + d5.length(up));
        }
    }
    SECTION("trivial cases") {
        Element inside = d5.parse_word("1 3 2");
        CHECK(d5.parabolic_decompose(J, inside) == std::pair(inside, Element(0)));
        Element rep = d5.parse_word("5");
        CHECK(d5.parabolic_decompose(J, rep) == std::pair(Element(0), rep));
    }
    SECTION("coset representative counts") {
        CHECK(d5.min_coset_reps(J).size() == 10); // 1920 / 192
        CHECK(d5.min_coset_reps(d5.full_genset()) == std::vector<Element>{0});
        CHECK(d5.min_coset_reps(0).size() == d5.size());
    }
    SECTION("descents restrict through the projection") {
        const CoxeterSystem& d4 = oracles::system("D4");
        for (Element w = 0; w < d4.size(); ++w) {
            auto wj = d4.parabolic_decompose(0b0101, w).first;
            CHECK((d4.left_descents(w) & 0b0101) == (d4.left_descents(wj) & 0b0101));
        }
        for (Element w = 0; w < d5.size(); ++w) {
            auto wj = d5.parabolic_decompose(J, w).first;
            CHECK((d5.left_descents(w) & J) == (d5.left_descents(wj) & J));
        }
    }
}

TEST_CASE("elements between same-coset elements stay in the coset") {
    const CoxeterSystem& d4 = oracles::system("D4");
    GenSet J = 0b0011;
    for (Element y = 0; y < d4.size(); ++y)
        for (Element w = 0; w < d4.size(); ++w) {
            if (!d4.bruhat_leq(y, w)) continue;
            auto [yj, yup] = d4.parabolic_decompose(J, y);
            auto [wj, wup] = d4.parabolic_decompose(J, w);
            if (yup != wup) continue;
            for (Element z = 0; z < d4.size(); ++z) {
                if (!d4.bruhat_leq(y, z) || !d4.bruhat_leq(z, w)) continue;
                auto [zj, zup] = d4.parabolic_decompose(J, z);
                REQUIRE(zup == yup);
                CHECK(d4.bruhat_leq(yj, zj));
                CHECK(d4.bruhat_leq(zj, wj));
            }
        }
}

TEST_CASE("descent transfer through commuting and noncommuting generators") {
    const CoxeterSystem& d4 = oracles::system("D4");
    for (Element w = 0; w < d4.size(); ++w)
        for (Generator s = 0; s < 4; ++s)
            for (Generator t = 0; t < 4; ++t) {
                if (s == t) continue;
                bool t_in_w = d4.is_descent(Side::Left, w, t);
                bool t_in_sw = d4.is_descent(Side::Left, d4.left(s, w), t);
                bool s_in_w = d4.is_descent(Side::Left, w, s);
                if (d4.bond_order(s, t) == 2) CHECK(t_in_sw == t_in_w);
                if (!s_in_w && !t_in_w) CHECK_FALSE(t_in_sw);
                if (s_in_w && t_in_w) CHECK(t_in_sw);
            }
}

TEST_CASE("long element") {
    CHECK(oracles::system("A1").length(oracles::system("A1").long_element()) == 1);
    const CoxeterSystem& a2 = oracles::system("A2");
    CHECK(a2.long_element() == a2.parse_word("1 2 1"));
    const CoxeterSystem& d4 = oracles::system("D4");
    Element w0 = d4.long_element();
    CHECK(d4.length(w0) == 12);
    for (Element w = 0; w < d4.size(); ++w) {
        Element ww0 = w;
        for (Generator s : d4.word(w0)) ww0 = d4.right(ww0, s);
        CHECK(d4.length(ww0) == d4.length(w0) - d4.length(w));
    }
}

TEST_CASE("element parsing and formatting") {
    const CoxeterSystem& d4 = oracles::system("D4");
    CHECK(d4.format_element(0) == "e");
    CHECK(d4.parse_word("e") == 0);
    for (Element w = 0; w < d4.size(); ++w)
        CHECK(d4.parse_word(d4.format_element(w)) == w);
    CHECK_THROWS_AS(d4.parse_word("9"), validation_error);
    CHECK_THROWS_AS(d4.parse_word("zap"), validation_error);
    CHECK(d4.format_genset(0b1011) == "{1,2,4}");
}

TEST_CASE("inverses") {
    const CoxeterSystem& b3 = oracles::system("B3");
    for (Element w = 0; w < b3.size(); ++w) {
        Element prod = b3.inverse(w);
        for (Generator s : b3.word(w)) prod = b3.right(prod, s);
        CHECK(prod == 0);
        CHECK(b3.left_descents(w) == b3.right_descents(b3.inverse(w)));
    }
}

TEST_CASE("custom matrix files") {
    SECTION("B2 as a matrix file reproduces the named group") {
        std::istringstream in("1 2 4\n");
        CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix::from_stream(in), "custom-b2");
        CHECK(sys.size() == 8);
        CHECK(sys.length(sys.long_element()) == 4);
    }
    SECTION("non-crystallographic bond orders are rejected") {
        std::istringstream in("1 2 5\n");
        CHECK_THROWS_AS(CoxeterMatrix::from_stream(in), validation_error);
    }
    SECTION("malformed lines are rejected") {
        std::istringstream in("1 2\n");
        CHECK_THROWS_AS(CoxeterMatrix::from_stream(in), validation_error);
    }
    SECTION("an infinite group hits the enumeration budget") {
        // Affine A2: a triangle of order-3 bonds.
        std::istringstream in("1 2 3\n2 3 3\n1 3 3\n");
        CoxeterMatrix m = CoxeterMatrix::from_stream(in);
        CHECK_THROWS_AS(CoxeterSystem::build(m, "affine-a2", 5000), budget_error);
    }
    SECTION("unknown named types are rejected") {
        CHECK_THROWS_AS(CoxeterSystem::build("Q7"), validation_error);
        CHECK_THROWS_AS(CoxeterSystem::build("E8"), validation_error);
    }
}
