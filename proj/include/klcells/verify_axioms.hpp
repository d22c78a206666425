#ifndef KLCELLS_VERIFY_AXIOMS_HPP
#define KLCELLS_VERIFY_AXIOMS_HPP

#include "klcells/verify.hpp"

namespace klcells {

// ---------------------------------------------------------------------------
// Structural axioms of the transport maps: domains are KL interval sets, the
// maps are cell functions and descent-preserving on the opposite side, edges
// transport, the KL order is preserved, set-valued maps pair up correctly,
// their derived involutions behave, and cells map onto unions of cells.

inline VerificationReport verify_edge_transport_axioms(const CoxeterSystem& sys,
                                                       const KLTable& tbl,
                                                       const MapFamily& family) {
    using namespace verify_detail;
    Stopwatch clock;
    VerificationReport rep;
    rep.theorem = "axioms";
    rep.group = sys.name();
    if (family.empty()) {
        rep.skipped = true;
        rep.skip_reason = "empty map family";
        return rep;
    }
    Side side = family.front().side;
    Side opp = other_side(side);
    for (const auto& m : family)
        if (m.side != side) throw validation_error("mixed-side family");

    std::vector<Element> all(sys.size());
    for (Element w = 0; w < sys.size(); ++w) all[w] = w;
    WGraph graph(tbl, all);
    // A left map must respect the *right* preorder and right cells.
    BitMatrix reach = preorder_reachability(graph, opp);
    CellPartition same_cells =
        cells(graph, side == Side::Left ? CellSide::Left : CellSide::Right);
    CellPartition opp_cells =
        cells(graph, side == Side::Left ? CellSide::Right : CellSide::Left);

    auto leq_opp = [&](Element x, Element y) { return reach.get(x, y); };

    for (const TransportMap& map : family) {
        std::string name = map.name();
        std::vector<Element> domain;
        std::vector<std::vector<Element>> image(sys.size());
        for (Element w = 0; w < sys.size(); ++w)
            if (map.in_domain(sys, w)) {
                domain.push_back(w);
                image[w] = map.image(sys, w);
                check_that(rep, image[w].size() >= 1 && image[w].size() <= 2,
                           name + " image size at " + sys.format_element(w), "1 or 2",
                           std::to_string(image[w].size()));
            }
        std::vector<char> in_dom(sys.size(), 0);
        for (Element w : domain) in_dom[w] = 1;

        // KL interval set: nothing outside the domain sits between two domain
        // elements in the opposite-side preorder.
        {
            std::vector<std::uint64_t> from_domain(reach.words_per_row(), 0);
            for (Element x : domain) {
                const std::uint64_t* row = reach.row(x);
                for (std::size_t i = 0; i < reach.words_per_row(); ++i) from_domain[i] |= row[i];
            }
            for (Element w = 0; w < sys.size(); ++w) {
                if (in_dom[w]) continue;
                bool above = (from_domain[w / 64] >> (w % 64)) & 1u;
                if (!above) continue;
                bool below = false;
                const std::uint64_t* row = reach.row(w);
                for (Element y : domain)
                    if ((row[y / 64] >> (y % 64)) & 1u) {
                        below = true;
                        break;
                    }
                check_that(rep, !below, name + " interval gap at " + sys.format_element(w),
                           "domain closed under KL intervals", "hole");
            }
            rep.instances += domain.empty() ? 0 : 1;
        }

        for (Element w : domain) {
            for (Element u : image[w]) {
                check_that(rep, sys.descents(opp, u) == sys.descents(opp, w),
                           name + " tau at " + sys.format_element(w), "preserved", "changed");
                check_that(rep,
                           same_cells.class_of[graph.position(u)] ==
                               same_cells.class_of[graph.position(w)],
                           name + " cell function at " + sys.format_element(w),
                           "image in same cell", "escapes");
            }
        }

        if (!map.type2()) {
            // Type 1: injective and mu-tilde preserving on all domain pairs.
            std::map<Element, Element> seen;
            for (Element w : domain) {
                auto [it, fresh] = seen.emplace(image[w][0], w);
                check_that(rep, fresh, name + " injectivity at " + sys.format_element(w),
                           "distinct images", "collision");
            }
            for (Element x : domain)
                for (Element y : domain) {
                    if (y <= x) continue;
                    check_eq(rep, tbl.mu_tilde(x, y), tbl.mu_tilde(image[x][0], image[y][0]),
                             pair_witness(sys, name + " transport ", x, y));
                    if (leq_opp(x, y))
                        check_that(rep, leq_opp(image[x][0], image[y][0]),
                                   pair_witness(sys, name + " order ", x, y), "preserved",
                                   "broken");
                    if (leq_opp(y, x))
                        check_that(rep, leq_opp(image[y][0], image[x][0]),
                                   pair_witness(sys, name + " order ", y, x), "preserved",
                                   "broken");
                }
            if (map.derived) {
                for (Element w : domain) {
                    Element u = image[w][0];
                    check_that(rep, in_dom[u] && image[u][0] == w,
                               name + " involution at " + sys.format_element(w), "U(U(w)) = w",
                               "broken");
                }
            }
        } else {
            // Type 2 edge-transport conditions plus the pairing structure.
            TransportMap pair = map.pair_map();
            for (Element w : domain) {
                if (image[w].size() == 2) {
                    for (Element u : image[w]) {
                        auto back = pair.image(sys, u);
                        check_that(rep, back.size() == 1 && back[0] == w,
                                   name + " pair(a) at " + sys.format_element(w),
                                   "two-element image points back", "mismatch");
                    }
                } else {
                    auto back = pair.image(sys, image[w][0]);
                    check_that(rep,
                               back.size() == 2 &&
                                   ((back[0] == w) != (back[1] == w)),
                               name + " pair(b) at " + sys.format_element(w),
                               "singleton image has exactly two preimages", "mismatch");
                }
            }
            auto matched = [&](Element x, Element y, auto&& rel) {
                const auto &ix = image[x], &iy = image[y];
                if (ix.size() == iy.size()) {
                    if (ix.size() == 1) return rel(ix[0], iy[0]);
                    return (rel(ix[0], iy[0]) && rel(ix[1], iy[1])) ||
                           (rel(ix[0], iy[1]) && rel(ix[1], iy[0]));
                }
                for (Element a : ix)
                    for (Element b : iy)
                        if (!rel(a, b)) return false;
                return true;
            };
            for (Element x : domain)
                for (Element y : domain) {
                    if (y <= x) continue;
                    if (tbl.mu_tilde(x, y) != 0)
                        check_that(rep,
                                   matched(x, y,
                                           [&](Element a, Element b) {
                                               return tbl.mu_tilde(a, b) != 0;
                                           }),
                                   pair_witness(sys, name + " transport ", x, y),
                                   "edges transport", "lost");
                    if (leq_opp(x, y))
                        check_that(rep,
                                   matched(x, y, [&](Element a, Element b) { return leq_opp(a, b); }),
                                   pair_witness(sys, name + " order ", x, y), "preserved",
                                   "broken");
                }
        }

        // Image of a full cell on the map's own side... cells live on the
        // opposite preorder: a left map sends right cells to unions of right
        // cells.  Only cells fully inside the domain are constrained.
        {
            std::map<std::int32_t, std::vector<Element>> cells_in_domain;
            for (Element w : domain)
                cells_in_domain[opp_cells.class_of[graph.position(w)]].push_back(w);
            for (auto& [cls, members] : cells_in_domain) {
                if (members.size() != opp_cells.classes[cls].size()) continue;
                std::set<Element> img;
                std::set<std::int32_t> img_classes;
                bool constant_size = true;
                for (Element w : members) {
                    if (image[w].size() != image[members[0]].size()) constant_size = false;
                    for (Element u : image[w]) {
                        img.insert(u);
                        img_classes.insert(opp_cells.class_of[graph.position(u)]);
                    }
                }
                std::size_t limit =
                    map.type2() ? (constant_size ? image[members[0]].size() : 1) : 1;
                check_that(rep, img_classes.size() <= limit,
                           name + " cell image classes (cell " + std::to_string(cls) + ")",
                           "<= " + std::to_string(limit), std::to_string(img_classes.size()));
                std::set<Element> full;
                for (std::int32_t c : img_classes)
                    full.insert(opp_cells.classes[c].begin(), opp_cells.classes[c].end());
                check_that(rep, img == full,
                           name + " cell image (cell " + std::to_string(cls) + ")",
                           "union of whole cells", "partial");
            }
        }
    }

    rep.elapsed_seconds = clock.seconds();
    return rep;
}

// Semicircle composite, operator size equalities, the relation between the
// four D4 map kinds, and the six-fold Knuth composites linking the two
// members of a doubled image; over every clump of every outer labeling.
inline VerificationReport verify_d4_operators(const CoxeterSystem& sys,
                                              const D4Config& base_cfg) {
    using namespace verify_detail;
    Stopwatch clock;
    VerificationReport rep;
    rep.theorem = "d4-operators";
    rep.group = sys.name();

    for (const D4Config& cfg : base_cfg.outer_relabelings()) {
        D4Catalogs cats(sys, cfg);
        auto T = [&](int a, int b, Element w) {
            return knuth_map(sys, KnuthMapId{Side::Left, cfg.label_gen(a), cfg.label_gen(b)}, w);
        };
        for (Element rep_elem : sys.min_coset_reps(cats.mask()))
            for (CatalogId id : kAllCatalogs) {
                Clump clump = make_clump(cats, id, rep_elem);
                std::string at = catalog_name(id) + "@" + sys.format_element(rep_elem);

                // Semicircle: the six-step Knuth composite fixes a type A1
                // element exactly in the 10-element clumps.
                for (Element w : clump.of_type(make_A(1))) {
                    Element r = semicircle_map(cats, Side::Left, w);
                    check_that(rep, classify_d4_type_left(sys, cfg, r) == make_A(1),
                               "semicircle type " + at, "A1", "other");
                    if (clump.size() == 10)
                        check_that(rep, r == w, "semicircle " + at, "fixed point", "moved");
                    else
                        check_that(rep,
                                   r != w && std::find(clump.members.begin(),
                                                       clump.members.end(),
                                                       r) != clump.members.end(),
                                   "semicircle " + at, "other A1 of the clump", "wrong");
                }

                for (int i : {1, 2, 4}) {
                    int j = (i == 1) ? 2 : 1;
                    int k = 7 - i - j;
                    // w2 = T_{k,3} T_{3,i} T_{j,3} T_{3,k} T_{i,3} T_{3,j} (w1),
                    // applied right to left.
                    auto composite_C = [&](Element x) {
                        x = T(3, j, x);
                        x = T(i, 3, x);
                        x = T(3, k, x);
                        x = T(j, 3, x);
                        x = T(3, i, x);
                        return T(k, 3, x);
                    };
                    // w2 = T_{3,k} T_{i,3} T_{3,j} T_{k,3} T_{3,i} T_{j,3} (w1).
                    auto composite_D = [&](Element x) {
                        x = T(j, 3, x);
                        x = T(3, i, x);
                        x = T(k, 3, x);
                        x = T(3, j, x);
                        x = T(i, 3, x);
                        return T(3, k, x);
                    };
                    for (Element w : clump.of_type(D4Type::C)) {
                        auto TiC = d4_map(cats, Side::Left, D4MapKind::CtoB, i, w);
                        auto TjC = d4_map(cats, Side::Left, D4MapKind::CtoB, j, w);
                        auto TiD_sz = d4_map(cats, Side::Left, D4MapKind::CtoB, k, w).size();
                        check_that(rep, TiC.size() == TjC.size() && TjC.size() == TiD_sz,
                                   "operator sizes at C " + at, "equal", "differ");
                        // T^L_{3,j}(T^L_{i,C}(w)) = T^L_{k,D}(T^L_{3,k}(w)).
                        std::set<Element> lhs;
                        for (Element u : TiC) lhs.insert(T(3, j, u));
                        auto rhs_v =
                            d4_map(cats, Side::Left, D4MapKind::DtoA, k, T(3, k, w));
                        check_that(rep, lhs == std::set<Element>(rhs_v.begin(), rhs_v.end()),
                                   "operator relation at C " + at, "equal sets", "differ");
                        Element w1 = TiC[0];
                        Element w2 = TiC.size() == 2 ? TiC[1] : TiC[0];
                        check_that(rep, composite_C(w1) == w2,
                                   "six-fold composite at C " + at, "partner", "strayed");
                    }
                    for (Element w : clump.of_type(D4Type::D)) {
                        auto TiD = d4_map(cats, Side::Left, D4MapKind::DtoA, i, w);
                        auto TjD = d4_map(cats, Side::Left, D4MapKind::DtoA, j, w);
                        check_that(rep, TiD.size() == TjD.size(),
                                   "operator sizes at D " + at, "equal", "differ");
                        Element w1 = TiD[0];
                        Element w2 = TiD.size() == 2 ? TiD[1] : TiD[0];
                        check_that(rep, composite_D(w1) == w2,
                                   "six-fold composite at D " + at, "partner", "strayed");
                    }
                }
            }
    }
    rep.elapsed_seconds = clock.seconds();
    return rep;
}

} // namespace klcells

#endif
