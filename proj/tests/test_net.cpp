#include <doctest.h>

#include "gen_proof.hpp"
#include "mall/cut_elim.hpp"
#include "mall/errors.hpp"
#include "mall/net.hpp"
#include "net_fixtures.hpp"
#include "net_oracle.hpp"

#include <algorithm>

using namespace mall;
using fixture::at;
using fixture::ln;

namespace {

using oracle::flip;
using oracle::resolutions;

Proof random_unit_free(gen::Rng& rng, bool cuts, int depth = 3) {
    gen::ProofOpts o;
    o.units = false;
    o.cuts = cuts;
    o.depth = depth;
    o.max_width = 4;
    o.formulas = gen::unit_free({"X", "Y"});
    return eta_normalize(gen::proof(rng, o));
}

std::set<Addr> leaf_set(const Linking& l) {
    std::set<Addr> s;
    for (auto& k : l) {
        s.insert(k.a);
        s.insert(k.b);
    }
    return s;
}

}  // namespace

TEST_CASE("running example: resolutions, toggling, dependency, jumps") {
    LinkingSet n = fixture::fig4();
    Linking l1 = fixture::fig4_l1(), l2 = fixture::fig4_l2();
    int i1 = static_cast<int>(std::find(n.linkings.begin(), n.linkings.end(), l1) - n.linkings.begin());
    int i2 = 1 - i1;
    REQUIRE(n.linkings[i2] == l2);

    auto r1 = additive_resolution(n.seq, l1);
    CHECK(r1.count(at(1, "L")));
    CHECK(!r1.count(at(1, "R")));
    CHECK(r1.count(at(2, "R")));
    CHECK(!r1.count(at(2, "L")));
    CHECK(r1.count(at(0, "", 0)));
    CHECK(r1.count(at(0, "", 1)));
    // the other linking deletes the cut pair
    auto r2 = additive_resolution(n.seq, l2);
    CHECK(!r2.count(at(0, "", 0)));
    CHECK(r2.size() == 4);

    LinkingSet single;
    single.seq.conclusions = {parse("X^"), parse("X")};
    single.linkings = {{ln(at(0, ""), at(1, ""))}};
    CHECK(additive_resolution(single.seq, single.linkings[0]).size() == 2);

    CHECK(toggled_withs(n, {i1, i2}) == std::set<Addr>{at(1, "")});
    CHECK(toggled_withs(n, {i1}).empty());
    for (auto& k : l1) CHECK(depends(n, k, at(1, ""), {i1, i2}));
    for (auto& k : l2) CHECK(depends(n, k, at(1, ""), {i1, i2}));
    for (auto& k : l1) CHECK(!depends(n, k, at(1, ""), {i1}));

    CHECK(build_graph(n, {i1}).jump_count() == 0);
    CHECK(build_graph(n, {i2}).jump_count() == 0);
    auto g = build_graph(n, {i1, i2});
    CHECK(g.jump_count() == 4);
    std::set<Addr> tails;
    for (auto& e : g.edges)
        if (e.kind == NetGraph::EdgeKind::Jump) {
            tails.insert(g.vertices[e.u].addr);
            CHECK(g.vertices[e.v].addr == at(1, ""));
        }
    CHECK(tails == std::set<Addr>{at(2, "L"), at(2, "R"), at(0, "", 0), at(0, "", 1)});
    CHECK(build_graph(n, {}).vertices.empty());

    CHECK(is_proof_net(n).ok);
    CHECK(restrict_left(n, {i1, i2}, at(1, "")) == std::vector<int>{i1});
    CHECK(restrict_left(n, {i1}, at(1, "")) == std::vector<int>{i1});
    CHECK(restrict_left(n, {i2}, at(1, "")).empty());
}

TEST_CASE("correctness criterion failures") {
    LinkingSet n = fixture::fig4();
    n.linkings = {fixture::fig4_l1()};
    auto r = is_proof_net(n);
    CHECK(!r.ok);
    CHECK(r.failed == Criterion::P1);

    LinkingSet loop;
    loop.seq.conclusions = {parse("X * X^")};
    loop.linkings = {{ln(at(0, "L"), at(0, "R"))}};
    r = is_proof_net(loop);
    CHECK(!r.ok);
    CHECK(r.failed == Criterion::P2);

    // a cut pair nobody uses
    LinkingSet unused;
    unused.seq.cuts = {CutPair{parse("Y"), parse("Y^"), 0}};
    unused.seq.conclusions = {parse("X^"), parse("X")};
    unused.linkings = {{ln(at(1, ""), at(2, ""))}};
    r = is_proof_net(unused);
    CHECK(r.failed == Criterion::P0);
    CHECK(!r.ok);

    // & whose two linkings do not differ anywhere else: P3 holds, since the & is a root
    LinkingSet w;
    w.seq.conclusions = {parse("X^ & X^"), parse("X")};
    w.linkings = {{ln(at(0, "L"), at(1, ""))}, {ln(at(0, "R"), at(1, ""))}};
    w.normalize();
    CHECK(is_proof_net(w).ok);

    // two linkings on the same &-resolution
    LinkingSet two;
    two.seq.conclusions = {parse("X^ | X^"), parse("X * X")};
    two.linkings = {{ln(at(0, "L"), at(1, "R")), ln(at(0, "R"), at(1, "L"))},
                    {ln(at(0, "L"), at(1, "L")), ln(at(0, "R"), at(1, "R"))}};
    two.normalize();
    r = is_proof_net(two);
    CHECK(r.failed == Criterion::P1);
}

TEST_CASE("toggling criterion: a + choice tied to a & across a tensor") {
    // (X^&X^)*Y^, Y*(Z+Z), Z^, X with the + choice following the & choice
    LinkingSet n;
    n.seq.conclusions = {parse("(X^ & X^) * Y^"), parse("Y * (Z + Z)"), parse("Z^"), parse("X")};
    Linking l1{ln(at(0, "LL"), at(3, "")), ln(at(0, "R"), at(1, "L")), ln(at(1, "RL"), at(2, ""))};
    Linking l2{ln(at(0, "LR"), at(3, "")), ln(at(0, "R"), at(1, "L")), ln(at(1, "RR"), at(2, ""))};
    n.linkings = {l1, l2};
    n.normalize();
    auto r = is_proof_net(n);
    CHECK(!r.ok);
    CHECK(r.failed == Criterion::P3);
    CHECK(toggled_withs(n, {0, 1}) == std::set<Addr>{at(0, "L")});
    CHECK_THROWS_AS(sequentialize(n), NotAProofNet);

    // keeping the + choice fixed gives the sequentializable net
    Linking l2ok{ln(at(0, "LR"), at(3, "")), ln(at(0, "R"), at(1, "L")), ln(at(1, "RL"), at(2, ""))};
    n.linkings = {l1, l2ok};
    n.normalize();
    CHECK(is_proof_net(n).ok);
    CHECK(net_equal(desequentialize(sequentialize(n)), n));
}

TEST_CASE("desequentialized random proofs are proof-nets") {
    gen::Rng rng(7);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        Proof p = random_unit_free(rng, false);
        LinkingSet n = desequentialize(p);
        if (n.linkings.size() < 2 || n.linkings.size() > 8) continue;
        CHECK(is_proof_net(n).ok);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("invalid linkings are rejected") {
    LinkingSet n;
    n.seq.conclusions = {parse("X + Y"), parse("X^")};
    Linking bad{ln(at(0, "R"), at(1, ""))};  // Y against X^
    CHECK_THROWS_AS(additive_resolution(n.seq, bad), InvalidLinking);
    Linking half{ln(at(0, "L"), at(1, ""))};
    CHECK_NOTHROW(additive_resolution(n.seq, half));
    LinkingSet m;
    m.seq.conclusions = {parse("X * Y"), parse("X^")};
    CHECK_THROWS_AS(additive_resolution(m.seq, {ln(at(0, "L"), at(1, ""))}), InvalidLinking);
    LinkingSet c;
    c.seq.cuts = {CutPair{parse("X"), parse("X^"), 0}};
    c.seq.conclusions = {parse("X"), parse("X^")};
    CHECK_THROWS_AS(additive_resolution(c.seq, {ln(at(0, "", 0), at(2, ""))}), InvalidLinking);
}

TEST_CASE("identity nets") {
    auto x = identity_net(parse("X"));
    REQUIRE(x.linkings.size() == 1);
    CHECK(x.linkings[0] == Linking{ln(at(0, ""), at(1, ""))});

    auto xy = identity_net(parse("X + Y"));
    CHECK(xy.linkings.size() == 2);
    CHECK(xy.seq.conclusions == Sequent{parse("Y^ & X^"), parse("X + Y")});
    // dual choices: the left of X+Y goes with the right of Y^&X^
    CHECK(std::count(xy.linkings.begin(), xy.linkings.end(), Linking{ln(at(0, "R"), at(1, "L"))}) == 1);
    CHECK(std::count(xy.linkings.begin(), xy.linkings.end(), Linking{ln(at(0, "L"), at(1, "R"))}) == 1);
    CHECK_THROWS_AS(identity_net(parse("X * 1")), UnitsPresent);

    gen::Rng rng(11);
    auto fo = gen::unit_free({"X", "Y", "Z"});
    for (int t = 0; t < 80; ++t) {
        Formula a = gen::formula(rng, 12, fo);
        auto n = identity_net(a);
        CHECK(is_proof_net(n).ok);
        CHECK(is_bipartite(n));
        CHECK(is_ax_unique(n));
        CHECK(is_full(n));
        CHECK(static_cast<long>(n.linkings.size()) == resolutions(a));
        CHECK(n.linkings.size() == slices(id_proof(a)).size());
        for (auto& l : n.linkings)
            for (auto& k : l) {
                CHECK(k.a.tree == 0);
                CHECK(k.b.tree == 1);
                CHECK(k.b.path == flip(k.a.path));
            }
    }
}

TEST_CASE("desequentialization clauses") {
    auto d = desequentialize(ax(parse("X")));
    CHECK(d.linkings == std::vector<Linking>{{ln(at(0, ""), at(1, ""))}});
    CHECK_THROWS_AS(desequentialize(ax(parse("X * Y"))), NonAtomicAxiom);
    CHECK_THROWS_AS(desequentialize(one_rule()), UnitsPresent);
    CHECK(net_identical(desequentialize(id_proof(parse("X + Y"))), identity_net(parse("X + Y"))));

    // & unions the linking sets of its premises
    Proof a = ax(parse("X"));
    Proof b = ax(parse("X"));
    Proof ww = with_rule(a, 1, b, 1);  // X & X, X^
    auto dw = desequentialize(ww);
    CHECK(dw.linkings.size() == 2);
    CHECK(is_proof_net(dw).ok);

    // a cut adds one pair, premise 0 on side 0
    Proof c = cut_rule(ax(parse("X")), 1, ax(parse("X")), 0);
    auto dc = desequentialize(c);
    REQUIRE(dc.seq.cuts.size() == 1);
    CHECK(dc.seq.cuts[0].a == parse("X"));
    CHECK(dc.seq.cuts[0].b == parse("X^"));
    CHECK(dc.linkings.size() == 1);
    CHECK(is_proof_net(dc).ok);
}

TEST_CASE("fixture nets: structural predicates") {
    auto l = fixture::fig9_left(), r = fixture::fig9_right();
    CHECK(is_proof_net(l).ok);
    CHECK(is_proof_net(r).ok);
    CHECK(!is_bipartite(l));
    CHECK(is_full(l));
    CHECK(!is_ax_unique(l));
    CHECK(is_bipartite(r));
    CHECK(!is_full(r));
    CHECK(!is_ax_unique(r));

    auto a = fixture::fig10_left(), b = fixture::fig10_right();
    for (auto* n : {&a, &b}) {
        CHECK(is_proof_net(*n).ok);
        CHECK(is_bipartite(*n));
        CHECK(is_full(*n));
        CHECK(!is_ax_unique(*n));
    }

    // composing the two nets over the & / + formula gives back the identity
    auto comp = compose(r, l, r.seq.conclusions[0]);
    CHECK(comp.seq.cuts.size() == 1);
    CHECK(comp.linkings.size() == 2);
    CHECK(is_proof_net(comp).ok);
    auto nf = normalize_net(comp);
    CHECK(net_identical(nf, identity_net(parse("(A | A^) * B"))));

    CHECK(is_proof_net(fixture::tensor_par_identity()).ok);
    CHECK(is_proof_net(fixture::tensor_par_swap()).ok);
    CHECK(is_ax_unique(fixture::tensor_par_swap()));
    CHECK(is_bipartite(fixture::tensor_par_swap()));
    CHECK(net_identical(fixture::tensor_par_identity(), identity_net(parse("X | X"))));
    CHECK(!net_equal(fixture::tensor_par_identity(), fixture::tensor_par_swap()));
}

TEST_CASE("distributivity nets: composition and almost reduced composition") {
    auto t = fixture::fig10_left(), p = fixture::fig10_right();
    Formula over = parse("(A * B) + (A * C)");
    auto comp = compose(p, t, over);
    CHECK(comp.seq.cuts.size() == 1);
    CHECK(comp.linkings.size() == 4);
    CHECK(comp.seq.conclusions == Sequent{parse("(C^ & B^) | A^"), parse("A * (B + C)")});
    CHECK(is_proof_net(comp).ok);

    auto ar = almost_reduced_composition(p, t, over);
    CHECK(ar.linkings.size() == 2);
    REQUIRE(ar.seq.cuts.size() == 4);
    for (auto& c : ar.seq.cuts) CHECK(c.a.is_atomic());
    CHECK(is_proof_net(ar).ok);
    // the A leaf of A*(B+C) is linked differently in the two linkings
    Addr aleaf = at(static_cast<int>(ar.seq.cuts.size()) + 1, "L");
    std::set<Link> on_a;
    for (auto& l : ar.linkings)
        for (auto& k : l)
            if (k.a == aleaf || k.b == aleaf) on_a.insert(k);
    CHECK(on_a.size() == 2);

    auto nf = normalize_net(comp);
    CHECK(net_identical(nf, identity_net(parse("A * (B + C)"))));
    CHECK(net_identical(normalize_net(ar), nf));

    auto idx = identity_net(parse("X"));
    auto c2 = compose(idx, idx, parse("X"));
    CHECK(c2.linkings.size() == 1);
    CHECK(c2.seq.cuts.size() == 1);
    CHECK(net_identical(almost_reduced_composition(idx, idx, parse("X")), c2));
    CHECK_THROWS_AS(compose(idx, idx, parse("Y")), ConclusionMismatch);

    auto ixy = identity_net(parse("X + Y"));
    CHECK(compose(ixy, ixy, parse("X + Y")).linkings.size() == 4);
}

TEST_CASE("eliminate_cut: atomic fusion and errors") {
    // X^, X  cut against  X^, X on X
    LinkingSet n;
    n.seq.cuts = {CutPair{parse("X"), parse("X^"), 0}};
    n.seq.conclusions = {parse("X^"), parse("X")};
    n.linkings = {{ln(at(1, ""), at(0, "", 0)), ln(at(0, "", 1), at(2, ""))}};
    auto r = eliminate_cut(n, 0);
    CHECK(r.seq.cuts.empty());
    CHECK(r.linkings == std::vector<Linking>{{ln(at(0, ""), at(1, ""))}});
    CHECK_THROWS_AS(eliminate_cut(n, 1), PairNotFound);
    CHECK_THROWS_AS(turbo_eliminate(n, 3), PairNotFound);
    CHECK(net_identical(normalize_net(r), r));
}

TEST_CASE("net cut elimination: confluence, correctness, turbo") {
    gen::Rng rng(23);
    int with_cuts = 0, orders = 0, turbo = 0, dropped = 0;
    for (int t = 0; t < 250; ++t) {
        Proof p = random_unit_free(rng, true);
        LinkingSet n = desequentialize(p);
        if (n.seq.cuts.empty() || n.linkings.size() > 8) continue;
        ++with_cuts;
        REQUIRE(is_proof_net(n).ok);
        auto nf = normalize_net(n);
        CHECK(nf.seq.cuts.empty());
        CHECK(is_proof_net(nf).ok);

        // random order, checking every intermediate net
        LinkingSet cur = n;
        while (!cur.seq.cuts.empty()) {
            int k = gen::pick(rng, static_cast<int>(cur.seq.cuts.size()));
            cur = eliminate_cut(cur, k);
            CHECK(is_proof_net(cur).ok);
        }
        CHECK(net_identical(cur, nf));
        ++orders;

        // turbo on one pair against stepwise elimination of its descendants
        int k = gen::pick(rng, static_cast<int>(n.seq.cuts.size()));
        int tag = n.seq.cuts[k].tag;
        LinkingSet step = eliminate_cut(n, k);
        for (;;) {
            int d = -1;
            for (std::size_t q = 0; q < step.seq.cuts.size() && d < 0; ++q)
                if (step.seq.cuts[q].tag == tag) d = static_cast<int>(q);
            if (d < 0) break;
            step = eliminate_cut(step, d);
        }
        auto tb = turbo_eliminate(n, k);
        CHECK(net_identical(tb, step));
        CHECK(is_proof_net(tb).ok);
        ++turbo;
        for (auto& l : n.linkings)
            if (!matches(n, l)) ++dropped;
    }
    CHECK(with_cuts > 60);
    CHECK(orders == with_cuts);
    CHECK(turbo == with_cuts);
    CHECK(dropped > 0);
}

TEST_CASE("matches: mirrored leaves across a pair") {
    // [X+Y * Y^&X^]: the pair is consistent only when the choices are dual
    Formula a = parse("X + Y");
    auto comp = compose(identity_net(a), identity_net(a), a);
    REQUIRE(comp.linkings.size() == 4);
    int m = 0;
    for (auto& l : comp.linkings) m += matches(comp, l);
    CHECK(m == 2);
    auto tb = turbo_eliminate(comp, 0);
    CHECK(tb.linkings.size() == 2);
    CHECK(net_identical(tb, identity_net(a)));
}

TEST_CASE("simulation: nets normalize like proofs") {
    gen::Rng rng(31);
    int n_checked = 0;
    for (int t = 0; t < 250; ++t) {
        Proof p = random_unit_free(rng, true);
        if (count_cuts(p) == 0) continue;
        LinkingSet d = desequentialize(p);
        if (d.linkings.size() > 8) continue;
        Proof q = normalize(p, Strategy::BetabarFirst);
        REQUIRE(is_cut_free(q));
        CHECK(net_identical(normalize_net(d), desequentialize(q)));
        ++n_checked;
    }
    CHECK(n_checked > 60);
}

TEST_CASE("sequentializing vertices") {
    auto id = identity_net(parse("X * Y"));
    auto sv = find_sequentializing(id);
    // the par root is sequentializing; the tensor root is not
    CHECK(std::find(sv.begin(), sv.end(), at(0, "")) != sv.end());
    CHECK(std::find(sv.begin(), sv.end(), at(1, "")) == sv.end());

    auto l = fixture::fig10_left();
    sv = find_sequentializing(l);
    CHECK(std::find(sv.begin(), sv.end(), at(0, "")) == sv.end());
    CHECK(std::find(sv.begin(), sv.end(), at(1, "")) != sv.end());

    LinkingSet bad = fixture::fig4();
    bad.linkings.pop_back();
    CHECK_THROWS_AS(sequentialize(bad), NotAProofNet);
}

TEST_CASE("sequentialization round trip") {
    auto id = identity_net(parse("X * Y"));
    Proof p = sequentialize(id);
    CHECK(check_proof(p).empty());
    CHECK(net_identical(desequentialize(p), id));

    for (auto n : {fixture::fig4(), fixture::fig9_left(), fixture::fig9_right(), fixture::fig10_left(),
                   fixture::fig10_right(), fixture::tensor_par_swap()}) {
        Proof q = sequentialize(n);
        CHECK(check_proof(q).empty());
        CHECK(net_equal(desequentialize(q), n));
    }

    gen::Rng rng(41);
    int done = 0;
    for (int t = 0; t < 300; ++t) {
        Proof p = random_unit_free(rng, t % 2 == 0);
        LinkingSet n = desequentialize(p);
        if (n.linkings.size() > 8) continue;
        Proof q = sequentialize(n);
        CHECK(check_proof(q).empty());
        CHECK(q->conclusion == p->conclusion);
        CHECK(net_equal(desequentialize(q), n));
        if (n.seq.cuts.empty()) CHECK(net_identical(desequentialize(q), n));
        ++done;
    }
    CHECK(done > 150);
}

TEST_CASE("net equality ignores cut order and orientation") {
    LinkingSet n = fixture::fig4();
    LinkingSet m = n;
    std::swap(m.seq.cuts[0].a, m.seq.cuts[0].b);
    for (auto& l : m.linkings) {
        Linking r;
        for (auto k : l) {
            for (Addr* x : {&k.a, &k.b})
                if (x->tree == 0) x->side = 1 - x->side;
            r.insert(make_link(k.a, k.b));
        }
        l = r;
    }
    m.normalize();
    CHECK(!net_identical(n, m));
    CHECK(net_equal(n, m));

    auto idx = identity_net(parse("X"));
    auto two = compose(compose(idx, idx, parse("X")), idx, parse("X"));
    REQUIRE(two.seq.cuts.size() == 2);
    LinkingSet sw = two;
    std::swap(sw.seq.cuts[0], sw.seq.cuts[1]);
    for (auto& l : sw.linkings) {
        Linking r;
        for (auto k : l) {
            for (Addr* x : {&k.a, &k.b})
                if (x->tree < 2) x->tree = 1 - x->tree;
            r.insert(make_link(k.a, k.b));
        }
        l = r;
    }
    sw.normalize();
    CHECK(net_equal(two, sw));
    CHECK(!net_identical(two, sw));
}
