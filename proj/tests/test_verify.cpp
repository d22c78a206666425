#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "klcells/cache.hpp"
#include "klcells/verify.hpp"
#include "oracle_helpers.hpp"

using namespace klcells;

namespace {

// Corrupt one cached polynomial P_{y,w} by bumping its top admissible
// coefficient, then reload through the cache (fixing the checksum), so the
// verifiers see a structurally valid but wrong table.
KLTable corrupted_table(const CoxeterSystem& sys, const KLTable& tbl, Element y, Element w) {
    int gap = sys.length(w) - sys.length(y);
    REQUIRE(gap >= 3);
    REQUIRE(gap % 2 == 1);
    int deg = (gap - 1) / 2;

    std::ostringstream out;
    save_cache(tbl, out);
    std::string text = out.str();

    std::string needle = "\n" + std::to_string(y) + " " + std::to_string(w) + " ";
    std::size_t pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    std::size_t line_start = pos + 1;
    std::size_t line_end = text.find('\n', line_start);
    std::istringstream ls(text.substr(line_start, line_end - line_start));
    unsigned long yy, ww;
    ls >> yy >> ww;
    std::vector<Coeff> coeffs;
    std::string tok;
    while (ls >> tok) coeffs.emplace_back(tok);
    coeffs.resize(std::max<std::size_t>(coeffs.size(), deg + 1), Coeff(0));
    coeffs[deg] += 1;
    std::string line = std::to_string(y) + " " + std::to_string(w);
    for (const Coeff& c : coeffs) line += " " + c.get_str();
    text.replace(line_start, line_end - line_start, line);

    // Recompute the trailer checksum over the pair lines.
    std::size_t body_start = text.find('\n') + 1;
    std::size_t body_end = text.rfind("checksum");
    std::string body = text.substr(body_start, body_end - body_start);
    unsigned long crc = ::crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                                static_cast<uInt>(body.size()));
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08lx", crc & 0xffffffffUL);
    text = text.substr(0, body_end) + "checksum " + hex + "\n";

    std::istringstream in(text);
    return load_cache(sys, in);
}

// A comparable pair with odd length gap >= 3 satisfying a predicate.
template <typename Pred>
std::pair<Element, Element> find_pair(const CoxeterSystem& sys, Pred&& pred) {
    for (Element y = 0; y < sys.size(); ++y)
        for (Element w = 0; w < sys.size(); ++w) {
            int gap = sys.length(w) - sys.length(y);
            if (gap < 3 || gap % 2 == 0) continue;
            if (!sys.bruhat_leq(y, w)) continue;
            if (pred(y, w)) return {y, w};
        }
    FAIL("no pair found");
    return {0, 0};
}

} // namespace

TEST_CASE("verifier reports are reproducible") {
    const CoxeterSystem& a3 = oracles::system("A3");
    const KLTable& tbl = oracles::table("A3");
    auto r1 = verify_a2_transport(a3, tbl);
    auto r2 = verify_a2_transport(a3, tbl);
    CHECK(r1.passed());
    CHECK(r1.instances == r2.instances);
    CHECK(r1.violations.size() == r2.violations.size());
}

TEST_CASE("transport verifiers pass on clean tables") {
    CHECK(verify_a2_transport(oracles::system("A3"), oracles::table("A3")).passed());
    CHECK(verify_b2_transport(oracles::system("B2"), oracles::table("B2")).passed());
    {
        const CoxeterSystem& d4 = oracles::system("D4");
        D4Config cfg = detect_d4_configs(d4).front();
        CHECK(verify_d4_transport(d4, oracles::table("D4"), cfg).passed());
        CHECK(verify_d4_catalog(d4, oracles::table("D4"), cfg).passed());
        CHECK(verify_d4_operators(d4, cfg).passed());
    }
}

TEST_CASE("verifiers skip when their hypotheses are absent") {
    auto rep = verify_b2_transport(oracles::system("A3"), oracles::table("A3"));
    CHECK(rep.skipped);
    CHECK(rep.skip_reason == "no bond of order 4");
    auto rep2 = verify_a2_transport(oracles::system("B2"), oracles::table("B2"));
    CHECK(rep2.skipped);
}

TEST_CASE("fault injection: a2 transport") {
    const CoxeterSystem& d4 = oracles::system("D4");
    const KLTable& tbl = oracles::table("D4");
    // Corrupt mu(L, L') for two elements with the {s}-pattern of bond (1,3).
    GenSet J = 0b0101;
    Element s_elem = d4.left(0, 0);
    auto [y, w] = find_pair(d4, [&](Element a, Element b) {
        return d4.parabolic_decompose(J, a).first == s_elem &&
               d4.parabolic_decompose(J, b).first == s_elem;
    });
    KLTable bad = corrupted_table(d4, tbl, y, w);
    CHECK_FALSE(verify_a2_transport(d4, bad).passed());
}

TEST_CASE("fault injection: b2 transport") {
    const CoxeterSystem& b3 = oracles::system("B3");
    const KLTable& tbl = oracles::table("B3");
    GenSet J = 0b110;
    Element s_elem = b3.left(1, 0);
    auto [y, w] = find_pair(b3, [&](Element a, Element b) {
        return b3.parabolic_decompose(J, a).first == s_elem &&
               b3.parabolic_decompose(J, b).first == s_elem;
    });
    KLTable bad = corrupted_table(b3, tbl, y, w);
    CHECK_FALSE(verify_b2_transport(b3, bad).passed());
}

TEST_CASE("fault injection: d4 transport") {
    const CoxeterSystem& d4 = oracles::system("D4");
    D4Config cfg = detect_d4_configs(d4).front();
    D4Catalogs cats(d4, cfg);
    // A same-type non-edge across the two ten-element catalogs: the lower
    // type C of C(10,a) against the upper type C of C(10,b); gap 3 + 5.
    Element y = cats.data(CatalogId::C10a).elems[0];
    Element w = cats.data(CatalogId::C10b).elems[8];
    REQUIRE(d4.bruhat_leq(y, w));
    KLTable bad = corrupted_table(d4, oracles::table("D4"), y, w);
    CHECK_FALSE(verify_d4_transport(d4, bad, cfg).passed());
}

TEST_CASE("fault injection: catalog") {
    const CoxeterSystem& d4 = oracles::system("D4");
    D4Config cfg = detect_d4_configs(d4).front();
    D4Catalogs cats(d4, cfg);
    // Bottom type C against the top type D of the same catalog: gap 5.
    Element y = cats.data(CatalogId::C10a).elems[0];
    Element w = cats.data(CatalogId::C10a).elems[9];
    REQUIRE(d4.bruhat_leq(y, w));
    KLTable bad = corrupted_table(d4, oracles::table("D4"), y, w);
    CHECK_FALSE(verify_d4_catalog(d4, bad, cfg).passed());
}

TEST_CASE("fault injection: transport axioms") {
    const CoxeterSystem& d4 = oracles::system("D4");
    // Corrupt a pair inside the domain of the Knuth map through (1,3) whose
    // images form a different pair.
    KnuthMapId id{Side::Left, 0, 2};
    auto [y, w] = find_pair(d4, [&](Element a, Element b) {
        return knuth_domain(d4, id, a) && knuth_domain(d4, id, b);
    });
    KLTable bad = corrupted_table(d4, oracles::table("D4"), y, w);
    FamilySelection sel;
    sel.knuth = true;
    auto rep = verify_edge_transport_axioms(d4, bad, make_family(d4, Side::Left, sel));
    CHECK_FALSE(rep.passed());
}

TEST_CASE("e6 verifier respects its budget") {
    auto rep = verify_e6_example(0.0);
    CHECK(rep.skipped);
    CHECK_FALSE(rep.skip_reason.empty());
}

TEST_CASE("report rendering") {
    VerificationReport rep;
    rep.theorem = "demo";
    rep.group = "D4";
    rep.instances = 3;
    rep.violations.push_back({"witness", "1", "0"});
    std::string text = rep.to_text();
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(text.find("witness") != std::string::npos);
    CHECK_FALSE(rep.passed());
}
