// Command-line front end: group construction, Kazhdan-Lusztig queries, cells,
// clumps, transport maps, the generalized tau-invariant, theorem verification,
// and KL table caching.
//
// Exit codes: 0 success, 1 verification violations, 2 usage errors,
// 3 budget or scope errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "klcells/cache.hpp"
#include "klcells/export.hpp"
#include "klcells/gentau.hpp"
#include "klcells/verify.hpp"

using namespace klcells;

namespace {

Side parse_side(const std::string& s) {
    if (s == "L" || s == "l" || s == "left") return Side::Left;
    if (s == "R" || s == "r" || s == "right") return Side::Right;
    throw validation_error("side must be L or R");
}

FamilySelection parse_family(const std::string& spec) {
    FamilySelection sel;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "knuth") sel.knuth = true;
        else if (tok == "b2") sel.b2 = true;
        else if (tok == "d4") sel.d4 = true;
        else if (tok == "u") sel.derived = true;
        else if (!tok.empty()) throw validation_error("unknown map family: " + tok);
    }
    return sel;
}

D4Config require_config(const CoxeterSystem& sys) {
    auto cfgs = detect_d4_configs(sys);
    if (cfgs.empty()) throw validation_error("group has no D4 subdiagram");
    return cfgs.front();
}

int run_verify(const CoxeterSystem& sys, const KLTable& tbl, const std::string& id,
               bool as_json) {
    std::vector<VerificationReport> reports;
    auto run_one = [&](const std::string& which) {
        if (which == "a2") {
            reports.push_back(verify_a2_transport(sys, tbl));
        } else if (which == "b2") {
            reports.push_back(verify_b2_transport(sys, tbl));
        } else if (which == "d4") {
            auto cfgs = detect_d4_configs(sys);
            if (cfgs.empty()) {
                VerificationReport r;
                r.theorem = "d4";
                r.group = sys.name();
                r.skipped = true;
                r.skip_reason = "no D4 subdiagram";
                reports.push_back(r);
            } else {
                for (const D4Config& c : cfgs.front().outer_relabelings())
                    reports.push_back(verify_d4_transport(sys, tbl, c));
                reports.push_back(verify_d4_operators(sys, cfgs.front()));
            }
        } else if (which == "catalog") {
            auto cfgs = detect_d4_configs(sys);
            if (cfgs.empty()) {
                VerificationReport r;
                r.theorem = "catalog";
                r.group = sys.name();
                r.skipped = true;
                r.skip_reason = "no D4 subdiagram";
                reports.push_back(r);
            } else {
                reports.push_back(verify_d4_catalog(sys, tbl, cfgs.front()));
            }
        } else if (which == "axioms") {
            FamilySelection sel;
            sel.knuth = sel.b2 = sel.d4 = sel.derived = true;
            MapFamily fam = make_family(sys, Side::Left, sel);
            reports.push_back(verify_edge_transport_axioms(sys, tbl, fam));
        } else if (which == "e6") {
            reports.push_back(verify_e6_example());
        } else {
            throw validation_error("unknown theorem id: " + which +
                                   " (expected a2, b2, d4, catalog, axioms, e6, all)");
        }
    };
    if (id == "all") {
        for (const char* which : {"a2", "b2", "d4", "catalog", "axioms", "e6"}) run_one(which);
    } else {
        run_one(id);
    }
    bool failed = false;
    if (as_json) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        std::cout << arr.dump(2) << '\n';
    }
    for (const auto& r : reports) {
        if (!as_json) std::cout << r.to_text();
        if (!r.skipped && !r.passed()) failed = true;
    }
    return failed ? 1 : 0;
}

std::string default_cache_path(const std::string& group) {
    const char* dir = std::getenv("KLCELLS_CACHE_DIR");
    std::filesystem::path base = dir ? dir : ".";
    return (base / (group + ".klcache")).string();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Kazhdan-Lusztig computations on finite Weyl groups: "
                 "polynomials, W-graphs, cells, transport maps, and exhaustive "
                 "theorem verification"};
    app.require_subcommand(1);

    std::string group, yword, wword, side_flag = "L", format = "text";
    std::string maps_flag = "knuth", theorem, cache_path, cache_op, word, mapkind;
    std::vector<std::string> map_args;

    auto* c_info = app.add_subcommand("group-info", "Construct a group and print basic data");
    c_info->add_option("group", group)->required();

    auto* c_kl = app.add_subcommand("kl", "Print P_{y,w}, mu(y,w) and mu~(y,w)");
    c_kl->add_option("group", group)->required();
    c_kl->add_option("y", yword)->required();
    c_kl->add_option("w", wword)->required();

    auto* c_mu = app.add_subcommand("mu", "Print mu(y,w) and mu~(y,w)");
    c_mu->add_option("group", group)->required();
    c_mu->add_option("y", yword)->required();
    c_mu->add_option("w", wword)->required();

    auto* c_cells = app.add_subcommand("cells", "Cell partition of the group");
    c_cells->add_option("group", group)->required();
    c_cells->add_option("--side", side_flag, "L, R, or 2 (two-sided)");
    c_cells->add_option("--format", format, "text, json, or dot");

    std::string preorder_flag;
    auto* c_wgraph = app.add_subcommand("wgraph", "The W-graph of the whole group");
    c_wgraph->add_option("group", group)->required();
    c_wgraph->add_option("--format", format, "dot or json");
    c_wgraph->add_option("--preorder", preorder_flag,
                         "L or R: emit the directed preorder graph instead");

    auto* c_clump = app.add_subcommand("clump", "The clump containing an element");
    c_clump->add_option("group", group)->required();
    c_clump->add_option("w", word)->required();
    c_clump->add_option("--side", side_flag);
    c_clump->add_option("--format", format, "text, json, or dot");

    auto* c_map = app.add_subcommand("map", "Apply a transport map: knuth|b2|d4 args... w");
    c_map->add_option("group", group)->required();
    c_map->add_option("kind", mapkind, "knuth, b2, d4, or u")->required();
    c_map->add_option("args", map_args,
                      "knuth/b2: SIDE s t W ; d4: SIDE T(i,C)-style-name W ; u: SIDE s t W")
        ->required();

    auto* c_gentau = app.add_subcommand("gentau", "Generalized tau-invariant partition");
    c_gentau->add_option("group", group)->required();
    c_gentau->add_option("--side", side_flag, "L or R");
    c_gentau->add_option("--maps", maps_flag, "comma list from knuth,b2,d4,u");
    c_gentau->add_option("--format", format, "text or json");

    auto* c_verify = app.add_subcommand("verify", "Verify a theorem exhaustively");
    c_verify->add_option("group", group)->required();
    c_verify->add_option("theorem", theorem, "a2, b2, d4, catalog, axioms, e6, all")->required();
    c_verify->add_option("--format", format, "text or json");

    auto* c_cache = app.add_subcommand("cache", "Save or load the KL table");
    c_cache->add_option("group", group)->required();
    c_cache->add_option("op", cache_op, "save or load")->required();
    c_cache->add_option("path", cache_path, "defaults to $KLCELLS_CACHE_DIR/<group>.klcache");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_info) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            std::cout << "group " << sys.name() << "\nrank " << sys.rank() << "\nelements "
                      << sys.size() << "\nlongest element " << sys.format_element(sys.long_element())
                      << " (length " << sys.length(sys.long_element()) << ")\n";
            return 0;
        }
        if (*c_kl || *c_mu) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            Element y = sys.parse_word(yword), w = sys.parse_word(wword);
            Polynomial p;
            Coeff mu = 0, mu_tilde = 0;
            if (sys.size() <= kFullTableCap) {
                KLTable tbl = KLTable::build_full(sys);
                p = tbl.kl_poly(y, w);
                mu = tbl.mu(y, w);
                mu_tilde = tbl.mu_tilde(y, w);
            } else {
                // Large group: restrict to the interval below the longer of
                // the two elements; everything outside it contributes zero.
                Element top = sys.length(y) > sys.length(w) ? y : w;
                KLTable tbl = KLTable::build_interval(sys, top);
                if (tbl.in_scope(y) && tbl.in_scope(w)) {
                    p = tbl.kl_poly(y, w);
                    mu = tbl.mu(y, w);
                    mu_tilde = tbl.mu_tilde(y, w);
                }
            }
            if (*c_kl) std::cout << "P = " << p.to_string() << '\n';
            std::cout << "mu = " << mu.get_str() << "\nmu~ = " << mu_tilde.get_str() << '\n';
            return 0;
        }
        if (*c_cells) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            KLTable tbl = KLTable::build_full(sys);
            std::vector<Element> all(sys.size());
            for (Element w = 0; w < sys.size(); ++w) all[w] = w;
            WGraph g(tbl, all);
            CellSide side = side_flag == "2" ? CellSide::TwoSided
                            : parse_side(side_flag) == Side::Left ? CellSide::Left
                                                                  : CellSide::Right;
            CellPartition part = cells(g, side);
            if (format == "json") {
                std::cout << to_json(g, part).dump(2) << '\n';
            } else if (format == "dot") {
                for (std::size_t c = 0; c < part.classes.size(); ++c) {
                    WGraph sub(tbl, part.classes[c]);
                    std::cout << to_dot(sub, "cell" + std::to_string(c));
                }
            } else {
                std::cout << part.classes.size() << " " << cell_side_name(part.side)
                          << " cells\n";
                for (std::size_t c = 0; c < part.classes.size(); ++c) {
                    std::cout << "cell " << c << " (size " << part.classes[c].size() << "):";
                    for (Element w : part.classes[c]) std::cout << " [" << sys.format_element(w) << "]";
                    std::cout << '\n';
                }
            }
            return 0;
        }
        if (*c_wgraph) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            KLTable tbl = KLTable::build_full(sys);
            std::vector<Element> all(sys.size());
            for (Element w = 0; w < sys.size(); ++w) all[w] = w;
            WGraph g(tbl, all);
            if (!preorder_flag.empty()) {
                std::cout << to_dot_preorder(g, parse_side(preorder_flag),
                                             sys.name() + "_preorder");
            } else if (format == "json") {
                std::cout << to_json(g).dump(2) << '\n';
            } else {
                std::cout << to_dot(g, sys.name());
            }
            return 0;
        }
        if (*c_clump) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            D4Config cfg = require_config(sys);
            D4Catalogs cats(sys, cfg);
            Side side = parse_side(side_flag);
            auto clump = clump_of(cats, side, sys.parse_word(word));
            if (!clump) {
                std::cout << "none\n";
                return 0;
            }
            if (format == "dot") {
                KLTable tbl = KLTable::build_full(sys);
                WGraph g(tbl, clump->members);
                std::cout << to_dot(g, catalog_name(clump->catalog));
                return 0;
            }
            if (format == "json") {
                json members = json::array();
                for (std::size_t i = 0; i < clump->members.size(); ++i)
                    members.push_back(
                        {{"type", type_name(clump->type_of_node(static_cast<int>(i)))},
                         {"word", sys.format_element(clump->members[i])}});
                std::cout << json{{"group", sys.name()},
                                  {"catalog", catalog_name(clump->catalog)},
                                  {"coset_rep", sys.format_element(clump->coset_rep)},
                                  {"members", members}}
                                 .dump(2)
                          << '\n';
                return 0;
            }
            std::cout << catalog_name(clump->catalog) << " clump, coset representative ["
                      << sys.format_element(clump->coset_rep) << "]\n";
            for (std::size_t i = 0; i < clump->members.size(); ++i)
                std::cout << type_name(clump->type_of_node(static_cast<int>(i))) << " ["
                          << sys.format_element(clump->members[i]) << "]\n";
            return 0;
        }
        if (*c_map) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            if (map_args.size() < 2) throw validation_error("map: missing arguments");
            Side side = parse_side(map_args[0]);
            std::vector<Element> image;
            if (mapkind == "knuth" || mapkind == "b2" || mapkind == "u") {
                if (map_args.size() != 4)
                    throw validation_error("usage: map GROUP " + mapkind + " SIDE s t W");
                Generator s = std::stoi(map_args[1]) - 1, t = std::stoi(map_args[2]) - 1;
                Element w = sys.parse_word(map_args[3]);
                if (mapkind == "knuth") {
                    image = {knuth_map(sys, KnuthMapId{side, s, t}, w)};
                } else if (mapkind == "b2") {
                    image = b2_map(sys, B2MapId{side, s, t}, w);
                } else {
                    image = {derived_map_U(sys, TransportMap::b2(side, s, t), w)};
                }
            } else if (mapkind == "d4") {
                if (map_args.size() != 3)
                    throw validation_error("usage: map GROUP d4 SIDE T(1,C) W");
                auto cats = std::make_shared<const D4Catalogs>(sys, require_config(sys));
                std::string name = map_args[1];
                D4MapKind kind;
                int outer = 0;
                auto parse_name = [&]() {
                    for (int o : {1, 2, 4})
                        for (D4MapKind k : {D4MapKind::AtoD, D4MapKind::BtoC, D4MapKind::CtoB,
                                            D4MapKind::DtoA})
                            if (d4_map_name(k, o) == name) {
                                kind = k;
                                outer = o;
                                return true;
                            }
                    return false;
                };
                if (!parse_name())
                    throw validation_error("unknown D4 map name: " + name +
                                           " (expected e.g. T(1,C), T(C,1), T(1,D), T(D,1))");
                image = d4_map(*cats, side, kind, outer, sys.parse_word(map_args[2]));
            } else {
                throw validation_error("unknown map kind: " + mapkind);
            }
            for (Element x : image) std::cout << "[" << sys.format_element(x) << "]\n";
            return 0;
        }
        if (*c_gentau) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            Side side = parse_side(side_flag);
            MapFamily fam = make_family(sys, side, parse_family(maps_flag));
            GenTauPartition part = gentau_refine(sys, fam, side);
            if (format == "json") {
                std::cout << to_json(sys, part).dump(2) << '\n';
            } else {
                std::cout << part.num_classes << " classes, stabilized at order "
                          << part.order_reached << '\n';
                std::map<std::int32_t, std::vector<Element>> by_class;
                for (Element w = 0; w < sys.size(); ++w) by_class[part.class_of[w]].push_back(w);
                for (auto& [cls, members] : by_class) {
                    std::cout << "class " << cls << " (size " << members.size() << "):";
                    for (Element w : members) std::cout << " [" << sys.format_element(w) << "]";
                    std::cout << '\n';
                }
            }
            return 0;
        }
        if (*c_verify) {
            if (theorem == "e6") {
                // builds its own group
                CoxeterSystem dummy = CoxeterSystem::build("A1");
                KLTable tbl = KLTable::build_full(dummy);
                return run_verify(dummy, tbl, theorem, format == "json");
            }
            CoxeterSystem sys = CoxeterSystem::build(group);
            KLTable tbl = KLTable::build_full(sys);
            return run_verify(sys, tbl, theorem, format == "json");
        }
        if (*c_cache) {
            CoxeterSystem sys = CoxeterSystem::build(group);
            std::string path = cache_path.empty() ? default_cache_path(group) : cache_path;
            if (cache_op == "save") {
                KLTable tbl = KLTable::build_full(sys);
                save_cache(tbl, path);
                std::cout << "saved " << path << '\n';
            } else if (cache_op == "load") {
                KLTable tbl = load_cache(sys, path);
                std::cout << "loaded " << path << " (" << tbl.scope().size()
                          << " elements)\n";
            } else {
                throw validation_error("cache op must be save or load");
            }
            return 0;
        }
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const scope_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cache_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
