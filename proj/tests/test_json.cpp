#include <doctest.h>

#include "gen_proof.hpp"
#include "iso_helpers.hpp"
#include "mall/errors.hpp"
#include "mall/json_io.hpp"
#include "net_fixtures.hpp"
#include "sample_proofs.hpp"

using namespace mall;

namespace {
std::string fixture_path(const char* name) { return std::string(MALL_FIXTURE_DIR) + "/" + name; }
}  // namespace

TEST_CASE("fixture files match the in-code nets") {
    CHECK(net_identical(net_from_json(read_json_file(fixture_path("fig4.net.json"))), fixture::fig4()));
    CHECK(net_identical(net_from_json(read_json_file(fixture_path("fig9-left.net.json"))), fixture::fig9_left()));
    CHECK(net_identical(net_from_json(read_json_file(fixture_path("fig9-right.net.json"))), fixture::fig9_right()));
    CHECK(net_identical(net_from_json(read_json_file(fixture_path("fig10-left.net.json"))), fixture::fig10_left()));
    CHECK(net_identical(net_from_json(read_json_file(fixture_path("fig10-right.net.json"))), fixture::fig10_right()));
    CHECK(proof_equal(proof_from_json(read_json_file(fixture_path("five-cuts.proof.json"))), sample::five_cuts()));
    CHECK(is_proof_net(net_from_json(read_json_file(fixture_path("fig4.net.json")))).ok);
}

TEST_CASE("proof json layout") {
    Json j = proof_to_json(ax(parse("X")));
    CHECK(j["rule"] == "ax");
    CHECK(j["conclusion"] == Json::array({"X^", "X"}));
    CHECK(j["cutFormula"].is_null());
    CHECK(j["premises"].empty());
    Json c = proof_to_json(cut_rule(ax(parse("X")), 1, ax(parse("X")), 0));
    CHECK(c["rule"] == "cut");
    CHECK(c["cutFormula"] == "X");
    CHECK(c["premiseMaps"].size() == 2);
}

TEST_CASE("random proofs round-trip") {
    gen::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Proof p = gen::proof(rng);
        Proof q = proof_from_json(Json::parse(proof_to_json(p).dump()));
        CHECK(proof_equal(p, q));
        CHECK(check_proof(q).empty());
    }
}

TEST_CASE("random nets round-trip") {
    gen::Rng rng(4);
    gen::ProofOpts o;
    o.units = false;
    o.formulas = gen::unit_free();
    for (int i = 0; i < 100; ++i) {
        LinkingSet n = desequentialize(eta_normalize(gen::proof(rng, o)));
        LinkingSet m = net_from_json(Json::parse(net_to_json(n).dump()));
        CHECK(net_identical(n, m));
    }
}

TEST_CASE("derivations round-trip and replay") {
    gen::Rng rng(6);
    gen::FormulaOpts o;
    for (int i = 0; i < 100; ++i) {
        Formula a = gen::formula(rng, 7, o);
        Formula b = gen::random_e_walk(rng, a, 4, o);
        auto d = decide_iso(a, b);
        REQUIRE(d.iso);
        Derivation e = derivation_from_json(Json::parse(derivation_to_json(*d.derivation).dump()));
        CHECK(e.source == a);
        CHECK(e.target == b);
        CHECK(e.steps.size() == d.derivation->steps.size());
        CHECK(replay(e).back() == b);
    }
}

TEST_CASE("reduction logs are one object per line") {
    std::vector<ReductionRecord> log;
    normalize(sample::five_cuts(), Strategy::BetabarFirst, &log);
    REQUIRE(!log.empty());
    std::string text = reduction_log_jsonl(log);
    std::size_t lines = 0, pos = 0;
    while ((pos = text.find('\n', pos)) != std::string::npos) ++lines, ++pos;
    CHECK(lines == log.size());
    Json first = Json::parse(text.substr(0, text.find('\n')));
    CHECK(first.contains("position"));
    CHECK(first["kind"] == beta_kind_name(log[0].kind));
    CHECK(first["densityBefore"].size() == log[0].density_before.size());
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(proof_from_json(Json::parse(R"({"rule":"ax"})")), FormatError);
    CHECK_THROWS_AS(proof_from_json(Json::parse(
                        R"({"rule":"nope","conclusion":[],"principal":[],"premises":[],"premiseMaps":[]})")),
                    FormatError);
    CHECK_THROWS_AS(proof_from_json(Json::parse(
                        R"({"rule":"ax","conclusion":["X *"],"principal":[],"premises":[],"premiseMaps":[]})")),
                    ParseError);
    CHECK_THROWS_AS(net_from_json(Json::parse(R"({"cutPairs":[["X","Y"]],"conclusions":[],"linkings":[]})")),
                    FormatError);
    CHECK_THROWS_AS(net_from_json(Json::parse(
                        R"({"cutPairs":[],"conclusions":["X^","X"],"linkings":[[[{"tree":0,"side":0,"path":""},{"tree":5,"side":0,"path":""}]]]})")),
                    FormatError);
    CHECK_THROWS_AS(net_from_json(Json::parse(
                        R"({"cutPairs":[],"conclusions":["X * X^"],"linkings":[[[{"tree":0,"side":0,"path":""},{"tree":0,"side":0,"path":"R"}]]]})")),
                    FormatError);
    CHECK_THROWS_AS(derivation_from_json(Json::parse(R"({"source":"X","target":"X","steps":[{"eq":"zzz","dir":"ltr","path":"","inst":{}}]})")),
                    FormatError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), FormatError);
}
