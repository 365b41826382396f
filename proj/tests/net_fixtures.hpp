#pragma once
// Reference proof-nets, transcribed leaf by leaf.

#include "mall/net.hpp"

namespace fixture {

inline mall::Addr at(int tree, const char* path, int side = 0) { return mall::Addr{tree, side, path}; }
inline mall::Link ln(mall::Addr a, mall::Addr b) { return mall::make_link(std::move(a), std::move(b)); }

// [X * X^]  X & X^, X + X^   (trees: 0 the pair, 1 and 2 the conclusions)
inline mall::LinkingSet fig4() {
    using namespace mall;
    LinkingSet n;
    n.seq.cuts = {CutPair{parse("X"), parse("X^"), 0}};
    n.seq.conclusions = {parse("X & X^"), parse("X + X^")};
    Linking l1{ln(at(1, "L"), at(0, "", 1)), ln(at(2, "R"), at(0, "", 0))};
    Linking l2{ln(at(1, "R"), at(2, "L"))};
    n.linkings = {l1, l2};
    n.normalize();
    return n;
}
inline mall::Linking fig4_l1() { return {ln(at(1, "L"), at(0, "", 1)), ln(at(2, "R"), at(0, "", 0))}; }
inline mall::Linking fig4_l2() { return {ln(at(1, "R"), at(2, "L"))}; }

// non bipartite: (A|A^)*B, B^ & (B^ | (A*A^))
inline mall::LinkingSet fig9_left() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("(A | A^) * B"), parse("B^ & (B^ | (A * A^))")};
    Linking blue{ln(at(0, "LL"), at(1, "RRR")), ln(at(0, "LR"), at(1, "RRL")), ln(at(0, "R"), at(1, "RL"))};
    Linking red{ln(at(0, "LL"), at(0, "LR")), ln(at(0, "R"), at(1, "L"))};
    n.linkings = {blue, red};
    n.normalize();
    return n;
}

// non full: ((A|A^)*B) + B, B^ | (A*A^)
inline mall::LinkingSet fig9_right() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("((A | A^) * B) + B"), parse("B^ | (A * A^)")};
    n.linkings = {{ln(at(0, "LLL"), at(1, "RR")), ln(at(0, "LLR"), at(1, "RL")), ln(at(0, "LR"), at(1, "L"))}};
    return n;
}

// A*(B+C), (C^|A^) & (B^|A^)
inline mall::LinkingSet fig10_left() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("A * (B + C)"), parse("(C^ | A^) & (B^ | A^)")};
    Linking blue{ln(at(0, "L"), at(1, "RR")), ln(at(0, "RL"), at(1, "RL"))};
    Linking red{ln(at(0, "L"), at(1, "LR")), ln(at(0, "RR"), at(1, "LL"))};
    n.linkings = {blue, red};
    n.normalize();
    return n;
}

// (A*B)+(A*C), (C^&B^) | A^
inline mall::LinkingSet fig10_right() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("(A * B) + (A * C)"), parse("(C^ & B^) | A^")};
    Linking blue{ln(at(1, "R"), at(0, "LL")), ln(at(1, "LR"), at(0, "LR"))};
    Linking red{ln(at(1, "R"), at(0, "RL")), ln(at(1, "LL"), at(0, "RR"))};
    n.linkings = {blue, red};
    n.normalize();
    return n;
}

// X^ * X^, X | X: the identity and the swap
inline mall::LinkingSet tensor_par_identity() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("X^ * X^"), parse("X | X")};
    n.linkings = {{ln(at(0, "L"), at(1, "R")), ln(at(0, "R"), at(1, "L"))}};
    return n;
}
inline mall::LinkingSet tensor_par_swap() {
    using namespace mall;
    LinkingSet n;
    n.seq.conclusions = {parse("X^ * X^"), parse("X | X")};
    n.linkings = {{ln(at(0, "L"), at(1, "L")), ln(at(0, "R"), at(1, "R"))}};
    return n;
}

}  // namespace fixture
