#include <doctest.h>

#include "gen.hpp"
#include "mall/errors.hpp"
#include "mall/formula.hpp"

#include <map>
#include <unordered_set>

using namespace mall;
using F = Formula;

namespace {

F X() { return F::atom("X"); }
F Y() { return F::atom("Y"); }
F Z() { return F::atom("Z"); }

// Oracle: every formula one associativity/commutativity rewrite away from f.
void ac_neighbours(const F& f, std::vector<F>& out) {
    if (!f.is_binary()) return;
    const Kind k = f.kind();
    out.push_back(F::binary(k, f.right(), f.left()));
    if (f.right().kind() == k)
        out.push_back(F::binary(k, F::binary(k, f.left(), f.right().left()), f.right().right()));
    if (f.left().kind() == k)
        out.push_back(F::binary(k, f.left().left(), F::binary(k, f.left().right(), f.right())));
    std::vector<F> sub;
    ac_neighbours(f.left(), sub);
    for (auto& g : sub) out.push_back(F::binary(k, g, f.right()));
    sub.clear();
    ac_neighbours(f.right(), sub);
    for (auto& g : sub) out.push_back(F::binary(k, f.left(), g));
}

std::unordered_set<F> ac_closure(const F& f, int depth) {
    std::unordered_set<F> seen{f};
    std::vector<F> frontier{f};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<F> next;
        for (auto& g : frontier) {
            std::vector<F> nb;
            ac_neighbours(g, nb);
            for (auto& h : nb)
                if (seen.insert(h).second) next.push_back(h);
        }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("parse examples") {
    CHECK(parse("X * (Y + Z)") == F::tensor(X(), F::plus(Y(), Z())));
    CHECK(parse("~(X * Y)") == F::par(F::neg("Y"), F::neg("X")));
    CHECK(parse("bot") == F::bot());
    CHECK(parse("top & 0 & 1") == F::with(F::with(F::top(), F::zero()), F::one()));
    CHECK(parse("X^ | Y") == F::par(F::neg("X"), Y()));
    CHECK(parse("X * Y + Z") == F::plus(F::tensor(X(), Y()), Z()));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("X * Y & Z"), ParseError);
    CHECK_THROWS_AS(parse("X + Y | Z"), ParseError);
    CHECK_THROWS_AS(parse("(X * Y"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("X Y"), ParseError);
    try {
        parse("X * Y & Z");
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("dual") {
    CHECK(dual(X()) == F::neg("X"));
    CHECK(dual(F::tensor(X(), Y())) == F::par(F::neg("Y"), F::neg("X")));
    CHECK(dual(F::one()) == F::bot());
    CHECK(dual(F::top()) == F::zero());
    CHECK(dual(F::with(X(), F::one())) == F::plus(F::bot(), F::neg("X")));
}

TEST_CASE("size and mass") {
    CHECK(size(X()) == 1);
    CHECK(size(F::tensor(X(), Y())) == 3);
    CHECK(size(F::one()) == 1);
    CHECK(mass(X()) == 2);
    CHECK(mass(F::tensor(X(), X())) == 9);
    CHECK(mass(parse("(X * X) | X")) == 30);
}

TEST_CASE("distributed") {
    CHECK_FALSE(is_distributed(F::tensor(X(), F::plus(Y(), Z()))));
    CHECK(is_distributed(F::par(X(), Y())));
    CHECK_FALSE(is_distributed(parse("top & X")));
    CHECK(is_distributed(parse("(X * Y) + (X * Z)")));
}

TEST_CASE("d_normalize examples") {
    CHECK(d_normalize(F::tensor(X(), F::one())).first == X());
    CHECK(d_normalize(parse("(1 + X) * Y")).first == parse("Y + (X * Y)"));
    CHECK(d_normalize(F::par(F::top(), X())).first == F::top());
    auto [r, trace] = d_normalize(parse("(1 + X) * Y"));
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].rule == DRule::TensorPlusL);
    CHECK(trace[0].path == "");
    CHECK(trace[1].rule == DRule::TensorOneL);
    CHECK(trace[1].path == "L");
}

TEST_CASE("ac_canonical examples") {
    CHECK(ac_canonical(F::tensor(Y(), X())) == ac_canonical(F::tensor(X(), Y())));
    CHECK(ac_canonical(parse("(X * Y) * Z")) == ac_canonical(parse("X * (Y * Z)")));
    CHECK(ac_canonical(parse("X + Y")) != ac_canonical(parse("X * Y")));
    CHECK(ac_canonical(parse("Z * (Y * X)")) == parse("(X * Y) * Z"));
}

TEST_CASE("non-ambiguous") {
    CHECK(is_non_ambiguous(F::with(X(), F::neg("Y"))));
    CHECK_FALSE(is_non_ambiguous(parse("(A * B) + (A * C)")));
    CHECK_FALSE(is_non_ambiguous(parse("X * X^")));
}

TEST_CASE("substitute_units") {
    CHECK(substitute_units(F::top(), "U", "V") == F::neg("U"));
    CHECK(substitute_units(F::plus(F::one(), F::zero()), "U", "V") == F::plus(F::atom("V"), F::atom("U")));
    CHECK_THROWS_AS(substitute_units(parse("U * 1"), "U", "V"), FreshnessViolation);
}

TEST_CASE("property: involution, exhaustive up to size 7 over 2 atoms") {
    auto all = gen::all_up_to_size(7, gen::FormulaOpts{});
    CHECK(all.size() > 100000);
    for (auto& f : all) REQUIRE(dual(dual(f)) == f);
}

TEST_CASE("property: randomized involution, mass, distributivity and substitution vs dual") {
    gen::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        F f = gen::formula(rng, 25);
        REQUIRE(dual(dual(f)) == f);
        REQUIRE(mass(f) == mass(dual(f)));
        REQUIRE(mass(f) >= 2);
        REQUIRE(is_distributed(f) == is_distributed(dual(f)));
        REQUIRE(is_non_ambiguous(f) == is_non_ambiguous(dual(f)));
        REQUIRE(substitute_units(dual(f), "U", "V") == dual(substitute_units(f, "U", "V")));
        REQUIRE(is_unit_free(substitute_units(f, "U", "V")));
        REQUIRE(parse(print(f)) == f);
    }
}

TEST_CASE("property: d_normalize terminates in distributed form with a replayable trace") {
    gen::Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        F f = gen::formula(rng, 15);
        auto [g, trace] = d_normalize(f);
        REQUIRE(is_distributed(g));
        F cur = f;
        for (auto& s : trace) {
            REQUIRE(s.before == cur);
            auto r = apply_drule(s.rule, subformula(cur, s.path));
            REQUIRE(r.has_value());
            cur = replace_at(cur, s.path, *r);
            REQUIRE(s.after == cur);
        }
        REQUIRE(cur == g);
    }
}

TEST_CASE("property: ac_canonical agrees with bounded AC closure (size <= 6, 2 atoms)") {
    auto all = gen::all_up_to_size(6, gen::FormulaOpts{});
    std::map<std::string, std::vector<F>> groups;
    for (auto& f : all) groups[print(ac_canonical(f))].push_back(f);
    for (auto& [key, members] : groups) {
        auto closure = ac_closure(members.front(), 8);
        REQUIRE(closure.size() == members.size());
        for (auto& m : members) REQUIRE(closure.count(m) == 1);
    }
}
