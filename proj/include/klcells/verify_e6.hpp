#ifndef KLCELLS_VERIFY_E6_HPP
#define KLCELLS_VERIFY_E6_HPP

#include "klcells/verify.hpp"

namespace klcells {

// The E6 stretch check: two mu values around a clump pair of sizes 10 and 14
// below the element s5 s2 s1 s3 s4 w, computed on an interval-restricted
// table.  The equalities checkable inside the interval realize the
// different-size transport case in E6.
inline VerificationReport verify_e6_example(double budget_seconds = 600.0) {
    using namespace verify_detail;
    Stopwatch clock;
    VerificationReport rep;
    rep.theorem = "e6";
    rep.group = "E6";

    CoxeterSystem sys = CoxeterSystem::build("E6");
    if (clock.seconds() > budget_seconds) {
        rep.skipped = true;
        rep.skip_reason = "budget exceeded during enumeration";
        rep.elapsed_seconds = clock.seconds();
        return rep;
    }
    check_that(rep, sys.size() == 51840, "|W(E6)|", "51840", std::to_string(sys.size()));

    // The D4 subdiagram of E6: generators 2,3,5 around the branch node 4.
    std::vector<D4Config> cfgs = detect_d4_configs(sys);
    check_that(rep, cfgs.size() == 1, "D4 subdiagrams in E6", "1",
               std::to_string(cfgs.size()));
    D4Catalogs cats(sys, cfgs.front());

    Element w = sys.parse_word("1 3 1 5 6 5 2");
    check_that(rep, sys.length(w) == 7, "l(w)", "7", std::to_string(sys.length(w)));
    check_that(rep, classify_d4_type_left(sys, cfgs.front(), w) == D4Type::C, "type of w", "C",
               "other");

    auto clump_w = clump_of_left(cats, w);
    check_that(rep, clump_w && clump_w->size() == 10, "clump of w", "size 10",
               clump_w ? std::to_string(clump_w->size()) : "none");

    auto lmul = [&](std::initializer_list<int> one_based, Element x) {
        for (auto it = std::rbegin(one_based); it != std::rend(one_based); ++it)
            x = sys.left(*it - 1, x);
        return x;
    };
    Element M = lmul({3, 4}, w);      // s3 s4 w, of type A_{s3}
    Element y = lmul({1}, M);         // s1 s3 s4 w
    Element Mp = lmul({5, 2}, y);     // s5 s2 y
    check_that(rep, sys.length(M) == 9 && sys.length(y) == 10 && sys.length(Mp) == 12,
               "lengths of s3s4w, y, s5s2y", "9/10/12",
               std::to_string(sys.length(M)) + "/" + std::to_string(sys.length(y)) + "/" +
                   std::to_string(sys.length(Mp)));

    auto type_M = classify_d4_type_left(sys, cfgs.front(), M);
    auto type_y = classify_d4_type_left(sys, cfgs.front(), y);
    check_that(rep, type_M && type_y && *type_M == *type_y && is_A_type(*type_M),
               "types of s3s4w and y", "equal type A", "other");

    auto clump_y = clump_of_left(cats, y);
    check_that(rep, clump_y && clump_y->size() == 14, "clump of y", "size 14",
               clump_y ? std::to_string(clump_y->size()) : "none");
    if (clump_y) {
        auto Cs = clump_y->of_type(D4Type::C);
        check_that(rep, Cs.size() == 1 && Cs[0] == Mp, "type C element of the clump of y",
                   sys.format_element(Mp), Cs.empty() ? "none" : sys.format_element(Cs[0]));
    }

    if (clock.seconds() > budget_seconds) {
        rep.skipped = true;
        rep.skip_reason = "budget exceeded before interval table";
        rep.elapsed_seconds = clock.seconds();
        return rep;
    }
    KLTable tbl = KLTable::build_interval(sys, Mp);
    rep.notes.push_back("interval [e, s5s2y] has " + std::to_string(tbl.scope().size()) +
                        " elements");

    check_eq(rep, 1, tbl.mu(M, y), pair_witness(sys, "e6 mu ", M, y));
    check_eq(rep, 1, tbl.mu(w, Mp), pair_witness(sys, "e6 mu ", w, Mp));

    // Different-size transport: with L = w and U the other type C element of
    // the clump of w, mu(L, M') = mu(U, M') = mu(M, L') where L' = y.  The
    // fourth term of the statement pairs M with the second type A element of
    // the clump of y, which lies above the interval, so it is not checkable
    // here.
    if (clump_w) {
        auto Cs = clump_w->of_type(D4Type::C);
        Element U = Cs[0] == w ? Cs[1] : Cs[0];
        check_that(rep, tbl.in_scope(U), "upper type C element of the clump of w",
                   "inside the interval", "outside");
        if (tbl.in_scope(U))
            check_eq(rep, tbl.mu(w, Mp), tbl.mu(U, Mp), pair_witness(sys, "e6 case2 ", U, Mp));
        check_eq(rep, tbl.mu(w, Mp), tbl.mu(M, y), "e6 case2 mu(L,M') = mu(M,L')");
        rep.notes.push_back("mu(M, U') skipped: U' lies above the interval top");
    }

    rep.elapsed_seconds = clock.seconds();
    return rep;
}

} // namespace klcells

#endif
