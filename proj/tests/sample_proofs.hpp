#pragma once
// Small hand-built proofs used by several suites.

#include "mall/sequent.hpp"

namespace sample {

// Five cuts c1..c5 over X, with c5 at the root, c3 above c5, c2 above c3,
// c1 above c2 and c4 on the other side of c5.
inline mall::Proof five_cuts() {
    using namespace mall;
    Formula x = Formula::atom("X");
    Proof c1 = cut_rule(ax(x), 1, ax(x), 0);
    Proof p1 = plus1_rule(c1, 1, Formula::zero());          // X+0, X^
    Proof c2 = cut_rule(ax(x), 1, p1, 1);                   // X^, X+0
    Proof w = with_rule(top_rule({Formula::top(), x}, 0), 0, ax(x), 0);  // top&X^, X
    Proof c3 = cut_rule(c2, 1, w, 0);                       // X^, X
    Proof c4 = cut_rule(ax(x), 1, ax(x), 0);
    return cut_rule(c3, 1, c4, 0);
}

}  // namespace sample
