#include "mall/cut_elim.hpp"

#include "mall/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace mall {

const char* beta_kind_name(BetaStepKind k) {
    switch (k) {
        case BetaStepKind::KeyAx: return "KeyAx";
        case BetaStepKind::KeyParTensor: return "KeyParTensor";
        case BetaStepKind::KeyWithPlus1: return "KeyWithPlus1";
        case BetaStepKind::KeyWithPlus2: return "KeyWithPlus2";
        case BetaStepKind::KeyBotOne: return "KeyBotOne";
        case BetaStepKind::CommParCut: return "CommParCut";
        case BetaStepKind::CommTensorCut1: return "CommTensorCut1";
        case BetaStepKind::CommTensorCut2: return "CommTensorCut2";
        case BetaStepKind::CommWithCut: return "CommWithCut";
        case BetaStepKind::CommPlus1Cut: return "CommPlus1Cut";
        case BetaStepKind::CommPlus2Cut: return "CommPlus2Cut";
        case BetaStepKind::CommBotCut: return "CommBotCut";
        case BetaStepKind::CommTopCut: return "CommTopCut";
        case BetaStepKind::CommCutCut: return "CommCutCut";
    }
    return "?";
}

const char* commutation_kind_name(CommutationKind k) {
    static const char* names[] = {"par-par",   "tensor-tensor", "with-with", "plus-plus", "par-tensor",
                                  "par-with",  "par-plus",      "tensor-with", "tensor-plus", "with-plus",
                                  "par-top",   "tensor-top",    "with-top",  "plus-top",  "top-top",
                                  "bot-top",   "par-bot",       "tensor-bot", "with-bot", "plus-bot",
                                  "bot-bot"};
    return names[static_cast<int>(k)];
}

namespace {

// ------------------------------------------------------------------ labelled rebuilding
//
// Rewrites are assembled from sub-proofs whose conclusion occurrences carry
// integer labels.  Occurrences of the rewritten node's conclusion are labelled
// by their position there, so the result can be put back in the exact order.

struct LP {
    Proof p;
    std::vector<int> lab;
};

int lpos(const LP& x, int l) {
    for (std::size_t k = 0; k < x.lab.size(); ++k)
        if (x.lab[k] == l) return static_cast<int>(k);
    throw IllFormedProof("internal: lost occurrence label " + std::to_string(l));
}

bool is_principal(const ProofNode& n, int t) {
    return std::find(n.principal.begin(), n.principal.end(), t) != n.principal.end();
}

struct Labels {
    int next;
    int fresh() { return next++; }
    // Context positions inherit the node's labels; active ones get fresh labels.
    std::vector<int> child(const ProofNode& n, int i, const std::vector<int>& nl) {
        std::vector<int> out;
        for (int t : n.maps[i]) out.push_back(t >= 0 && !is_principal(n, t) ? nl[t] : fresh());
        return out;
    }
};

std::vector<int> iota(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool has(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

LP mk(Rule r, std::vector<LP> prem, const std::vector<std::vector<int>>& act, std::optional<Formula> pf,
      int plabel, int kept = 0) {
    if (r == Rule::Par) {
        auto& q = prem[0];
        int a = lpos(q, act[0][0]), b = lpos(q, act[0][1]);
        if (a > b) {
            auto perm = iota(q.lab.size());
            std::swap(perm[a], perm[b]);
            q.p = permute(q.p, perm);
            std::swap(q.lab[a], q.lab[b]);
        }
    }
    Sequent c;
    std::vector<int> lab, principal;
    if (pf) {
        c.push_back(*pf);
        lab.push_back(plabel);
        principal.push_back(0);
    }
    bool shared = r == Rule::With && prem.size() == 2;
    std::vector<std::vector<int>> maps(prem.size());
    std::vector<Proof> ps;
    for (std::size_t i = 0; i < prem.size(); ++i) {
        const auto& q = prem[i];
        ps.push_back(q.p);
        maps[i].assign(q.lab.size(), 0);
        int ctx = 0;
        for (std::size_t x = 0; x < q.lab.size(); ++x) {
            int l = q.lab[x];
            if (has(act[i], l)) {
                maps[i][x] = r == Rule::Cut ? -1 : 0;
                continue;
            }
            ++ctx;
            if (shared && i == 1) {
                auto it = std::find(lab.begin(), lab.end(), l);
                if (it == lab.end()) throw IllFormedProof("internal: & contexts differ");
                maps[i][x] = static_cast<int>(it - lab.begin());
            } else {
                maps[i][x] = static_cast<int>(c.size());
                c.push_back(q.p->conclusion[x]);
                lab.push_back(l);
            }
        }
        if (shared && i == 1 && ctx + 1 != static_cast<int>(c.size()))
            throw IllFormedProof("internal: & context sizes differ");
    }
    std::optional<Formula> cutf;
    if (r == Rule::Cut) cutf = prem[0].p->conclusion[lpos(prem[0], act[0][0])];
    return {make_node(std::move(c), r, std::move(principal), std::move(ps), std::move(maps), cutf, kept),
            std::move(lab)};
}

Proof to_order(const LP& x, const std::vector<int>& want) {
    std::vector<int> perm(x.lab.size());
    for (std::size_t k = 0; k < x.lab.size(); ++k) {
        auto it = std::find(want.begin(), want.end(), x.lab[k]);
        if (it == want.end()) throw IllFormedProof("internal: stray occurrence after rewrite");
        perm[k] = static_cast<int>(it - want.begin());
    }
    return permute(x.p, perm);
}

std::vector<int> labels_of(const std::vector<int>& lab, const std::vector<int>& positions) {
    std::vector<int> out;
    for (int x : positions) out.push_back(lab[x]);
    return out;
}

// Move the rule of node n above its premise r (which must not act on n's
// active formulas).  Also the commutative cases of cut elimination, with n a cut.
// `choose` picks the premise of a binary upper rule when n has no active
// formula in premise r (a bot rule); -1 means the unique candidate.
Proof push_up(const Proof& N, int r, int choose = -1) {
    const auto& n = *N;
    if (r < 0 || r >= static_cast<int>(n.premises.size())) throw NotApplicable("no such premise");
    const Proof& U = n.premises[r];
    const auto& u = *U;
    if (u.rule == Rule::Ax || u.rule == Rule::One) throw NotApplicable("upper rule has no context");
    if (u.rule == Rule::With && u.premises.size() != 2 && n.rule != Rule::Cut)
        throw NotApplicable("slice node");
    for (int x : active_positions(n, r))
        if (is_principal(u, x)) throw NotApplicable("upper rule acts on the lower active formula");

    if (u.rule == Rule::Top) {
        return top_rule(n.conclusion, n.maps[r][u.principal[0]]);
    }

    auto NL = iota(n.conclusion.size());
    Labels L{static_cast<int>(NL.size())};
    std::vector<std::vector<int>> PL, actN;
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
        PL.push_back(L.child(n, static_cast<int>(i), NL));
        actN.push_back(labels_of(PL.back(), active_positions(n, static_cast<int>(i))));
    }
    const auto& UL = PL[r];
    std::vector<std::vector<int>> RL, actU;
    for (std::size_t j = 0; j < u.premises.size(); ++j) {
        RL.push_back(L.child(u, static_cast<int>(j), UL));
        actU.push_back(labels_of(RL.back(), active_positions(u, static_cast<int>(j))));
    }
    std::optional<Formula> pf;
    int plabel = -1;
    if (!n.principal.empty()) {
        pf = n.conclusion[n.principal[0]];
        plabel = n.principal[0];
    }
    std::optional<Formula> uf;
    int ulabel = -1;
    if (!u.principal.empty()) {
        uf = u.conclusion[u.principal[0]];
        ulabel = UL[u.principal[0]];
    }
    auto contains = [&](std::size_t j) {
        for (int l : actN[r])
            if (!has(RL[j], l)) return false;
        return true;
    };
    auto build_lower = [&](std::size_t j) {
        std::vector<LP> pr;
        for (std::size_t i = 0; i < n.premises.size(); ++i)
            pr.push_back(static_cast<int>(i) == r ? LP{u.premises[j], RL[j]} : LP{n.premises[i], PL[i]});
        return mk(n.rule, std::move(pr), actN, pf, plabel, n.kept);
    };
    std::vector<LP> up;
    for (std::size_t j = 0; j < u.premises.size(); ++j) up.push_back({u.premises[j], RL[j]});
    if (u.rule == Rule::With) {
        for (std::size_t j = 0; j < u.premises.size(); ++j) up[j] = build_lower(j);
    } else {
        std::vector<std::size_t> cand;
        for (std::size_t j = 0; j < u.premises.size(); ++j)
            if (contains(j)) cand.push_back(j);
        std::size_t j;
        if (choose >= 0) {
            if (std::find(cand.begin(), cand.end(), static_cast<std::size_t>(choose)) == cand.end())
                throw NotApplicable("active formulas not in the chosen premise");
            j = static_cast<std::size_t>(choose);
        } else {
            if (cand.size() != 1) throw NotApplicable("active formulas split between premises");
            j = cand[0];
        }
        up[j] = build_lower(j);
    }
    return to_order(mk(u.rule, std::move(up), actU, uf, ulabel, u.kept), NL);
}

// ------------------------------------------------------------------ beta steps

struct CutInfo {
    int a[2];
};

CutInfo cut_info(const ProofNode& n) {
    CutInfo c{};
    for (int s = 0; s < 2; ++s) c.a[s] = active_positions(n, s).at(0);
    return c;
}

std::vector<BetaStep> steps_at(const ProofNode& n, const NodePath& at, bool cut_cut) {
    std::vector<BetaStep> out;
    if (n.rule != Rule::Cut) return out;
    auto ci = cut_info(n);
    const ProofNode* S[2] = {n.premises[0].get(), n.premises[1].get()};
    if (S[0]->rule == Rule::Ax || S[1]->rule == Rule::Ax) {
        out.push_back({at, BetaStepKind::KeyAx, S[0]->rule == Rule::Ax ? 0 : 1});
    } else if (is_principal(*S[0], ci.a[0]) && is_principal(*S[1], ci.a[1])) {
        for (int s = 0; s < 2; ++s) {
            Rule a = S[s]->rule, b = S[1 - s]->rule;
            if (a == Rule::Tensor && b == Rule::Par) out.push_back({at, BetaStepKind::KeyParTensor, s});
            if (a == Rule::With && b == Rule::Plus1) out.push_back({at, BetaStepKind::KeyWithPlus1, s});
            if (a == Rule::With && b == Rule::Plus2) out.push_back({at, BetaStepKind::KeyWithPlus2, s});
            if (a == Rule::Bot && b == Rule::One) out.push_back({at, BetaStepKind::KeyBotOne, s});
        }
    }
    for (int s = 0; s < 2; ++s) {
        const auto& u = *S[s];
        if (u.rule == Rule::Ax || u.rule == Rule::One || is_principal(u, ci.a[s])) continue;
        BetaStepKind k;
        switch (u.rule) {
            case Rule::Par: k = BetaStepKind::CommParCut; break;
            case Rule::Tensor:
                k = preimage(u, 0, ci.a[s]) >= 0 ? BetaStepKind::CommTensorCut1 : BetaStepKind::CommTensorCut2;
                break;
            case Rule::With: k = BetaStepKind::CommWithCut; break;
            case Rule::Plus1: k = BetaStepKind::CommPlus1Cut; break;
            case Rule::Plus2: k = BetaStepKind::CommPlus2Cut; break;
            case Rule::Bot: k = BetaStepKind::CommBotCut; break;
            case Rule::Top: k = BetaStepKind::CommTopCut; break;
            case Rule::Cut:
                if (!cut_cut) continue;
                k = BetaStepKind::CommCutCut;
                break;
            default: continue;
        }
        out.push_back({at, k, s});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BetaStep& x, const BetaStep& y) { return x.kind < y.kind; });
    return out;
}

Proof key_step(const Proof& N, BetaStepKind kind, int s) {
    const auto& n = *N;
    auto NL = iota(n.conclusion.size());
    Labels L{static_cast<int>(NL.size())};
    std::vector<int> PL[2] = {L.child(n, 0, NL), L.child(n, 1, NL)};
    auto ci = cut_info(n);
    int o = 1 - s;
    const auto& S = *n.premises[s];
    const auto& O = *n.premises[o];
    auto cut2 = [&](LP mine, int ml, LP other, int ol) {
        // keep the side of the premise coming from n.premises[s]
        if (s == 0) return mk(Rule::Cut, {std::move(mine), std::move(other)}, {{ml}, {ol}}, std::nullopt, -1);
        return mk(Rule::Cut, {std::move(other), std::move(mine)}, {{ol}, {ml}}, std::nullopt, -1);
    };
    switch (kind) {
        case BetaStepKind::KeyAx: {
            if (S.rule != Rule::Ax) throw NotApplicable("no axiom on that side");
            LP r{n.premises[o], PL[o]};
            r.lab[ci.a[o]] = PL[s][1 - ci.a[s]];
            return to_order(r, NL);
        }
        case BetaStepKind::KeyParTensor: {
            if (S.rule != Rule::Tensor || O.rule != Rule::Par) throw NotApplicable("not a par/tensor cut");
            auto T0 = L.child(S, 0, PL[s]);
            auto T1 = L.child(S, 1, PL[s]);
            int a = T0[active_positions(S, 0)[0]], b = T1[active_positions(S, 1)[0]];
            auto RP = L.child(O, 0, PL[o]);
            auto pa = active_positions(O, 0);
            int bl = RP[pa[0]], ar = RP[pa[1]];
            LP inner = cut2({S.premises[1], T1}, b, {O.premises[0], RP}, bl);
            LP outer = cut2({S.premises[0], T0}, a, inner, ar);
            return to_order(outer, NL);
        }
        case BetaStepKind::KeyWithPlus1:
        case BetaStepKind::KeyWithPlus2: {
            Rule inj = kind == BetaStepKind::KeyWithPlus1 ? Rule::Plus1 : Rule::Plus2;
            if (S.rule != Rule::With || O.rule != inj) throw NotApplicable("not a with/plus cut");
            // plus1 exposes the dual of the right & component
            int want = kind == BetaStepKind::KeyWithPlus1 ? 1 : 0;
            int wi = want;
            if (S.premises.size() == 1) {
                if (S.kept - 1 != want) throw NotApplicable("slice kept the other & premise");
                wi = 0;
            }
            auto WL = L.child(S, wi, PL[s]);
            auto QL = L.child(O, 0, PL[o]);
            LP r = cut2({S.premises[wi], WL}, WL[active_positions(S, wi)[0]], {O.premises[0], QL},
                        QL[active_positions(O, 0)[0]]);
            return to_order(r, NL);
        }
        case BetaStepKind::KeyBotOne: {
            if (S.rule != Rule::Bot || O.rule != Rule::One) throw NotApplicable("not a bot/one cut");
            return to_order({S.premises[0], L.child(S, 0, PL[s])}, NL);
        }
        default: throw NotApplicable("not a key case");
    }
}

bool is_key(BetaStepKind k) { return k <= BetaStepKind::KeyBotOne; }

}  // namespace

std::vector<BetaStep> enumerate_beta(const Proof& p, bool include_cut_cut) {
    std::vector<BetaStep> out;
    for_each_node(p, [&](const NodePath& at, const Proof& q) {
        auto s = steps_at(*q, at, include_cut_cut);
        out.insert(out.end(), s.begin(), s.end());
    });
    return out;
}

Proof apply_beta(const Proof& p, const BetaStep& s) {
    Proof n = subproof(p, s.at);
    auto avail = steps_at(*n, s.at, true);
    bool ok = std::any_of(avail.begin(), avail.end(),
                          [&](const BetaStep& x) { return x.kind == s.kind && x.side == s.side; });
    if (!ok) throw NotApplicable(std::string(beta_kind_name(s.kind)) + " does not apply at " + node_path_str(s.at));
    Proof r = is_key(s.kind) ? key_step(n, s.kind, s.side) : push_up(n, s.side);
    return replace_subproof(p, s.at, r);
}

std::variant<Proof, SliceFailure> slice_cut_step(const Proof& s) {
    auto steps = enumerate_beta(s, false);
    if (steps.empty()) {
        if (is_cut_free(s)) throw NoCut("slice has no cut");
        steps = enumerate_beta(s, true);
    }
    const auto& st = steps.front();
    if (st.kind == BetaStepKind::KeyWithPlus1 || st.kind == BetaStepKind::KeyWithPlus2) {
        const auto& w = *subproof(s, st.at)->premises[st.side];
        int want = st.kind == BetaStepKind::KeyWithPlus1 ? 2 : 1;
        if (w.premises.size() == 1 && w.kept != want)
            return SliceFailure{st.at, "& slice kept premise " + std::to_string(w.kept) + ", plus needs " +
                                           std::to_string(want)};
    }
    return apply_beta(s, st);
}

// ------------------------------------------------------------------ measure

Mass sequent_mass(const Sequent& s) {
    Mass m = 1;
    for (const auto& f : s) m *= mass(f);
    return m;
}

Mass cut_mass(const ProofNode& c) {
    if (c.rule != Rule::Cut) throw NotApplicable("not a cut");
    return mass(*c.cut_formula) * sequent_mass(c.conclusion);
}

std::vector<CutDensity> cut_densities(const Proof& p) {
    std::vector<CutDensity> out;
    NodePath at;
    std::function<void(const Proof&, const Mass&)> go = [&](const Proof& q, const Mass& below) {
        Mass acc = below;
        if (q->rule == Rule::Cut) {
            Mass m = cut_mass(*q);
            acc += m;
            out.push_back({at, m, acc});
        }
        for (std::size_t i = 0; i < q->premises.size(); ++i) {
            at.push_back(static_cast<int>(i));
            go(q->premises[i], acc);
            at.pop_back();
        }
    };
    go(p, Mass(0));
    return out;
}

std::vector<Mass> density(const Proof& p) {
    std::vector<Mass> d;
    for (auto& c : cut_densities(p)) d.push_back(c.density);
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

bool dm_greater(const std::vector<Mass>& a0, const std::vector<Mass>& b0) {
    auto a = a0, b = b0;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<Mass> amb, bma;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(amb));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(bma));
    if (amb.empty() && bma.empty()) return false;
    for (const auto& y : bma)
        if (amb.empty() || !(amb.back() > y)) return false;
    return true;
}

// ------------------------------------------------------------------ normalization

namespace {

bool unit_cut_kind(BetaStepKind k) {
    return k == BetaStepKind::CommTopCut || k == BetaStepKind::CommBotCut || k == BetaStepKind::KeyBotOne;
}

// Steps at cuts with no cut above them.
std::vector<BetaStep> highest_steps(const Proof& p) {
    std::vector<BetaStep> out;
    for_each_node(p, [&](const NodePath& at, const Proof& q) {
        if (q->rule != Rule::Cut) return;
        for (auto& pr : q->premises)
            if (!is_cut_free(pr)) return;
        auto s = steps_at(*q, at, false);
        out.insert(out.end(), s.begin(), s.end());
    });
    return out;
}

}  // namespace

Proof normalize(const Proof& p0, Strategy st, std::vector<ReductionRecord>* log) {
    Proof p = p0;
    if (st == Strategy::PatternPreserving) {
        auto rep = detect_patterns(p);
        if (!rep.ok()) throw PatternPreconditionFailed("unit rules outside top/0 and 1/plus/bot patterns");
        p = make_patterns_adjacent(p);
    }
    while (true) {
        auto steps = enumerate_beta(p, false);
        if (steps.empty()) break;
        BetaStep chosen = steps.front();
        if (st == Strategy::PatternPreserving) {
            auto it = std::find_if(steps.begin(), steps.end(),
                                   [](const BetaStep& s) { return !unit_cut_kind(s.kind); });
            if (it != steps.end()) chosen = *it;
            else chosen = highest_steps(p).at(0);
        }
        std::vector<Mass> before;
        if (log) before = density(p);
        p = apply_beta(p, chosen);
        if (log) log->push_back({chosen.at, chosen.kind, std::move(before), density(p)});
    }
    if (!is_cut_free(p)) throw IllFormedProof("normalization stuck on cut/cut commutations only");
    return p;
}

// ------------------------------------------------------------------ rule commutations

namespace {

bool is_plus(Rule r) { return r == Rule::Plus1 || r == Rule::Plus2; }

int rule_class(Rule r) {
    switch (r) {
        case Rule::Par: return 0;
        case Rule::Tensor: return 1;
        case Rule::With: return 2;
        case Rule::Plus1:
        case Rule::Plus2: return 3;
        case Rule::Top: return 4;
        case Rule::Bot: return 5;
        default: return -1;
    }
}

CommutationKind row(Rule a, Rule b) {
    using K = CommutationKind;
    int x = rule_class(a), y = rule_class(b);
    if (x > y) std::swap(x, y);
    // classes: par tensor with plus top bot
    static const int table[6][6] = {
        {int(K::ParPar), int(K::ParTensor), int(K::ParWith), int(K::ParPlus), int(K::ParTop), int(K::ParBot)},
        {-1, int(K::TensorTensor), int(K::TensorWith), int(K::TensorPlus), int(K::TensorTop), int(K::TensorBot)},
        {-1, -1, int(K::WithWith), int(K::WithPlus), int(K::WithTop), int(K::WithBot)},
        {-1, -1, -1, int(K::PlusPlus), int(K::PlusTop), int(K::PlusBot)},
        {-1, -1, -1, -1, int(K::TopTop), int(K::BotTop)},
        {-1, -1, -1, -1, -1, int(K::BotBot)},
    };
    return static_cast<K>(table[x][y]);
}

bool lower_movable(Rule r) {
    return r == Rule::Par || r == Rule::Tensor || is_plus(r) || r == Rule::Bot;
}

bool upper_ok(const ProofNode& u) {
    switch (u.rule) {
        case Rule::Par:
        case Rule::Tensor:
        case Rule::Plus1:
        case Rule::Plus2:
        case Rule::Bot:
        case Rule::Top: return true;
        case Rule::With: return u.premises.size() == 2;
        default: return false;
    }
}

// Inverse of pushing a rule above a &: both & premises end with the same rule
// on the same context occurrence.
std::optional<Proof> pull_down(const Proof& W) {
    const auto& w = *W;
    if (w.rule != Rule::With || w.premises.size() != 2) return std::nullopt;
    const auto& A = *w.premises[0];
    const auto& B = *w.premises[1];
    if (A.rule != B.rule || A.principal.empty()) return std::nullopt;
    if (!lower_movable(A.rule) && A.rule != Rule::With && A.rule != Rule::Top) return std::nullopt;
    if (A.rule == Rule::With && (A.premises.size() != 2 || B.premises.size() != 2)) return std::nullopt;
    int c = w.maps[0][A.principal[0]];
    if (c < 0 || is_principal(w, c) || w.maps[1][B.principal[0]] != c) return std::nullopt;
    if (A.rule == Rule::Top) return top_rule(w.conclusion, c);

    auto WL = iota(w.conclusion.size());
    Labels L{static_cast<int>(WL.size())};
    auto AL = L.child(w, 0, WL), BL = L.child(w, 1, WL);
    int wa = AL[active_positions(w, 0)[0]], wb = BL[active_positions(w, 1)[0]];
    Formula wf = w.conclusion[w.principal[0]];
    int wlabel = w.principal[0];
    Formula rf = w.conclusion[c];

    if (A.rule == Rule::Tensor) {
        int q = -1;
        int apos = active_positions(w, 0)[0], bpos = active_positions(w, 1)[0];
        for (int j = 0; j < 2; ++j)
            if (preimage(A, j, apos) >= 0) q = 1 - j;
        if (q < 0 || preimage(B, 1 - q, bpos) < 0) return std::nullopt;
        if (!proof_equal(A.premises[q], B.premises[q])) return std::nullopt;
        auto SA = L.child(A, q, AL), SB = L.child(B, q, BL);
        auto ta = active_positions(A, q), tb = active_positions(B, q);
        if (ta != tb) return std::nullopt;
        for (std::size_t x = 0; x < SA.size(); ++x)
            if (x != static_cast<std::size_t>(ta[0]) && SA[x] != SB[x]) return std::nullopt;
        auto T1 = L.child(A, 1 - q, AL), T2 = L.child(B, 1 - q, BL);
        int t1 = T1[active_positions(A, 1 - q)[0]];
        T2[active_positions(B, 1 - q)[0]] = t1;
        LP inner = mk(Rule::With, {{A.premises[1 - q], T1}, {B.premises[1 - q], T2}}, {{wa}, {wb}}, wf, wlabel);
        int s = SA[ta[0]];
        LP sig{A.premises[q], SA};
        LP outer = q == 0 ? mk(Rule::Tensor, {sig, inner}, {{s}, {t1}}, rf, c)
                          : mk(Rule::Tensor, {inner, sig}, {{t1}, {s}}, rf, c);
        return to_order(outer, WL);
    }
    if (A.rule == Rule::With) {
        std::vector<int> a = L.child(A, 0, AL), b = L.child(A, 1, AL);
        std::vector<int> cc = L.child(B, 0, BL), d = L.child(B, 1, BL);
        int la = a[active_positions(A, 0)[0]], lb = b[active_positions(A, 1)[0]];
        cc[active_positions(B, 0)[0]] = la;
        d[active_positions(B, 1)[0]] = lb;
        LP i1 = mk(Rule::With, {{A.premises[0], a}, {B.premises[0], cc}}, {{wa}, {wb}}, wf, wlabel);
        LP i2 = mk(Rule::With, {{A.premises[1], b}, {B.premises[1], d}}, {{wa}, {wb}}, wf, wlabel);
        return to_order(mk(Rule::With, {i1, i2}, {{la}, {lb}}, rf, c), WL);
    }
    // unary
    auto T1 = L.child(A, 0, AL), T2 = L.child(B, 0, BL);
    auto pa = active_positions(A, 0), pb = active_positions(B, 0);
    if (pa.size() != pb.size()) return std::nullopt;
    std::vector<int> act;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        act.push_back(T1[pa[k]]);
        T2[pb[k]] = T1[pa[k]];
    }
    LP inner = mk(Rule::With, {{A.premises[0], T1}, {B.premises[0], T2}}, {{wa}, {wb}}, wf, wlabel);
    return to_order(mk(A.rule, {inner}, {act}, rf, c), WL);
}

Proof top_expand(const Proof& T, int pos, int variant) {
    const auto& t = *T;
    const Sequent& c = t.conclusion;
    const Formula& f = c[pos];
    auto TL = iota(c.size());
    int next = static_cast<int>(c.size());
    auto top_with = [&](const std::vector<Formula>& parts, std::vector<int> labs) {
        Sequent s;
        std::vector<int> lab;
        int pi = -1;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (static_cast<int>(k) == pos) continue;
            if (static_cast<int>(k) == t.principal[0]) pi = static_cast<int>(s.size());
            s.push_back(c[k]);
            lab.push_back(TL[k]);
        }
        for (std::size_t k = 0; k < parts.size(); ++k) {
            s.push_back(parts[k]);
            lab.push_back(labs[k]);
        }
        return LP{top_rule(s, pi), lab};
    };
    LP r;
    switch (f.kind()) {
        case Kind::Par: {
            int l1 = next++, l2 = next++;
            r = mk(Rule::Par, {top_with({f.left(), f.right()}, {l1, l2})}, {{l1, l2}}, f, pos);
            break;
        }
        case Kind::Plus: {
            int l = next++;
            Formula part = variant == 1 ? f.left() : f.right();
            r = mk(variant == 1 ? Rule::Plus1 : Rule::Plus2, {top_with({part}, {l})}, {{l}}, f, pos);
            break;
        }
        case Kind::Bot: r = mk(Rule::Bot, {top_with({}, {})}, {{}}, f, pos); break;
        case Kind::With: {
            int l1 = next++, l2 = next++;
            r = mk(Rule::With, {top_with({f.left()}, {l1}), top_with({f.right()}, {l2})}, {{l1}, {l2}}, f, pos);
            break;
        }
        default: throw NotApplicable("top context formula cannot be decomposed here");
    }
    return to_order(r, TL);
}

bool cut_free_memo(const Proof& p, std::unordered_map<const ProofNode*, bool>& memo) {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    bool ok = p->rule != Rule::Cut;
    for (auto& q : p->premises) ok = cut_free_memo(q, memo) && ok;
    memo[p.get()] = ok;
    return ok;
}

std::vector<Commutation> commutations_at(const Proof& N, const NodePath& at) {
    std::vector<Commutation> out;
    const auto& n = *N;
    if (lower_movable(n.rule)) {
        for (std::size_t r = 0; r < n.premises.size(); ++r) {
            const auto& u = *n.premises[r];
            if (!upper_ok(u)) continue;
            auto act = active_positions(n, static_cast<int>(r));
            bool clash = false;
            for (int x : act) clash = clash || is_principal(u, x);
            if (clash) continue;
            CommutationKind k = row(n.rule, u.rule);
            int ri = static_cast<int>(r);
            if (u.rule == Rule::Tensor) {
                for (int j = 0; j < 2; ++j) {
                    bool all = true;
                    for (int x : act) all = all && preimage(u, j, x) >= 0;
                    if (all) out.push_back({at, k, CommDir::Up, CommOp::PushUp, ri, j});
                }
            } else {
                out.push_back({at, k, CommDir::Up, CommOp::PushUp, ri, 0});
            }
        }
    }
    if (n.rule == Rule::With && n.premises.size() == 2) {
        const auto& A = *n.premises[0];
        if (A.rule == n.premises[1]->rule && rule_class(A.rule) >= 0 && pull_down(N))
            out.push_back({at, row(A.rule, Rule::With), CommDir::Down, CommOp::PullDown, -1, 0});
    }
    if (n.rule == Rule::Top) {
        for (std::size_t k = 0; k < n.conclusion.size(); ++k) {
            int pos = static_cast<int>(k);
            if (pos == n.principal[0]) continue;
            switch (n.conclusion[k].kind()) {
                case Kind::Par: out.push_back({at, CommutationKind::ParTop, CommDir::Down, CommOp::TopExpand, pos, 0}); break;
                case Kind::With: out.push_back({at, CommutationKind::WithTop, CommDir::Down, CommOp::TopExpand, pos, 0}); break;
                case Kind::Bot: out.push_back({at, CommutationKind::BotTop, CommDir::Down, CommOp::TopExpand, pos, 0}); break;
                case Kind::Plus:
                    out.push_back({at, CommutationKind::PlusTop, CommDir::Down, CommOp::TopExpand, pos, 1});
                    out.push_back({at, CommutationKind::PlusTop, CommDir::Down, CommOp::TopExpand, pos, 2});
                    break;
                case Kind::Top: out.push_back({at, CommutationKind::TopTop, CommDir::Up, CommOp::TopSwitch, pos, 0}); break;
                default: break;
            }
        }
    }
    return out;
}

Proof commute_node(const Proof& N, const Commutation& c) {
    switch (c.op) {
        case CommOp::PushUp: {
            bool binary_upper = N->premises.at(c.arg)->rule == Rule::Tensor;
            return push_up(N, c.arg, binary_upper ? c.variant : -1);
        }
        case CommOp::PullDown: {
            auto r = pull_down(N);
            if (!r) throw NotApplicable("& premises do not share a rule");
            return *r;
        }
        case CommOp::TopExpand: return top_expand(N, c.arg, c.variant);
        case CommOp::TopSwitch: return top_rule(N->conclusion, c.arg);
    }
    throw NotApplicable("unknown commutation");
}

bool same_comm(const Commutation& a, const Commutation& b) {
    return a.kind == b.kind && a.dir == b.dir && a.op == b.op && a.arg == b.arg && a.variant == b.variant;
}

}  // namespace

std::vector<Commutation> enumerate_commutations(const Proof& p) {
    std::vector<Commutation> out;
    std::unordered_map<const ProofNode*, bool> memo;
    for_each_node(p, [&](const NodePath& at, const Proof& q) {
        if (!cut_free_memo(q, memo)) return;
        auto s = commutations_at(q, at);
        out.insert(out.end(), s.begin(), s.end());
    });
    return out;
}

Proof apply_commutation(const Proof& p, const Commutation& c) {
    Proof n = subproof(p, c.at);
    if (!is_cut_free(n)) throw NotApplicable("cut above the commutation");
    auto avail = commutations_at(n, c.at);
    if (std::none_of(avail.begin(), avail.end(), [&](const Commutation& x) { return same_comm(x, c); }))
        throw NotApplicable(std::string(commutation_kind_name(c.kind)) + " does not apply at " + node_path_str(c.at));
    return replace_subproof(p, c.at, commute_node(n, c));
}

Proof apply_top_tensor_create(const Proof& p, const NodePath& at, int pos, int k, const Proof& supplied) {
    Proof T = subproof(p, at);
    const auto& t = *T;
    if (t.rule != Rule::Top) throw NotApplicable("not a top rule");
    if (pos < 0 || pos >= static_cast<int>(t.conclusion.size()) || pos == t.principal[0] ||
        t.conclusion[pos].kind() != Kind::Tensor)
        throw NotApplicable("no tensor formula in the top context there");
    if (k != 1 && k != 2) throw NotApplicable("component must be 1 or 2");
    if (!is_cut_free(supplied)) throw NotApplicable("supplied proof has a cut");
    const Formula& f = t.conclusion[pos];
    Formula mine = k == 1 ? f.left() : f.right();
    Formula other = k == 1 ? f.right() : f.left();
    const auto& sc = supplied->conclusion;
    if (sc.empty() || sc[0] != other) throw NotApplicable("supplied proof must conclude the other component first");
    auto TL = iota(t.conclusion.size());
    int next = static_cast<int>(TL.size());
    std::vector<bool> used(t.conclusion.size(), false);
    used[pos] = true;
    used[t.principal[0]] = true;
    std::vector<int> slab{next++};
    for (std::size_t x = 1; x < sc.size(); ++x) {
        int found = -1;
        for (std::size_t y = 0; y < t.conclusion.size() && found < 0; ++y)
            if (!used[y] && t.conclusion[y] == sc[x]) found = static_cast<int>(y);
        if (found < 0) throw NotApplicable("supplied context is not part of the top context");
        used[found] = true;
        slab.push_back(found);
    }
    Sequent ts{mine};
    int ml = next++;
    std::vector<int> tlab{ml};
    int pi = -1;
    for (std::size_t y = 0; y < t.conclusion.size(); ++y) {
        if (used[y] && static_cast<int>(y) != t.principal[0]) continue;
        if (static_cast<int>(y) == t.principal[0]) pi = static_cast<int>(ts.size());
        ts.push_back(t.conclusion[y]);
        tlab.push_back(static_cast<int>(y));
    }
    LP top{top_rule(ts, pi), tlab};
    LP sup{supplied, slab};
    LP r = k == 1 ? mk(Rule::Tensor, {top, sup}, {{ml}, {slab[0]}}, f, pos)
                  : mk(Rule::Tensor, {sup, top}, {{slab[0]}, {ml}}, f, pos);
    return replace_subproof(p, at, to_order(r, TL));
}

EqcOutcome eqc_search(const Proof& p, const Proof& q, std::size_t budget) {
    std::string kp = proof_key(p), kq = proof_key(q);
    if (kp == kq) return {EqcResult::Equal, 1};
    std::unordered_set<std::string> seen[2] = {{kp}, {kq}};
    std::deque<Proof> frontier[2] = {{p}, {q}};
    std::size_t states = 2;
    while (!frontier[0].empty() && !frontier[1].empty()) {
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::deque<Proof> next;
        for (const auto& cur : frontier[side]) {
            for (const auto& c : enumerate_commutations(cur)) {
                Proof r = apply_commutation(cur, c);
                std::string k = proof_key(r);
                if (seen[1 - side].count(k)) return {EqcResult::Equal, states};
                if (seen[side].insert(k).second) {
                    next.push_back(r);
                    if (++states >= budget) return {EqcResult::NotProvedEqual, states};
                }
            }
        }
        frontier[side] = std::move(next);
    }
    return {EqcResult::NotProvedEqual, states};
}

// ------------------------------------------------------------------ unit patterns

bool PatternReport::all_top_patterns() const {
    return std::all_of(tops.begin(), tops.end(), [](const TopEntry& e) { return e.pattern; });
}

bool PatternReport::all_unit_patterns() const {
    return std::all_of(ones.begin(), ones.end(), [](const OneEntry& e) { return e.pattern; }) &&
           std::all_of(bots.begin(), bots.end(), [](const BotEntry& e) { return e.pattern; });
}

std::vector<NodePath> PatternReport::offending() const {
    std::vector<NodePath> out;
    for (auto& e : tops)
        if (!e.pattern) out.push_back(e.at);
    for (auto& e : ones)
        if (!e.pattern) out.push_back(e.at);
    for (auto& e : bots)
        if (!e.pattern) out.push_back(e.at);
    return out;
}

namespace {

bool bot_heads_pattern(const ProofNode& b) {
    const ProofNode* q = b.premises[0].get();
    while (is_plus(q->rule)) q = q->premises[0].get();
    return q->rule == Rule::One;
}

}  // namespace

PatternReport detect_patterns(const Proof& p) {
    PatternReport rep;
    std::vector<const ProofNode*> chain;
    NodePath at;
    std::function<void(const Proof&)> go = [&](const Proof& q) {
        const auto& n = *q;
        if (n.rule == Rule::Top) {
            bool pat = n.conclusion.size() == 2 && n.conclusion[1 - n.principal[0]].kind() == Kind::Zero;
            rep.tops.push_back({at, pat});
        } else if (n.rule == Rule::Bot) {
            rep.bots.push_back({at, bot_heads_pattern(n)});
        } else if (n.rule == Rule::One) {
            int pos = 0, plus = 0;
            bool pat = false;
            for (int d = static_cast<int>(chain.size()) - 1; d >= 0; --d) {
                const auto& par = *chain[d];
                int t = par.maps[at[d]][pos];
                if (is_plus(par.rule) && t == par.principal[0]) {
                    ++plus;
                    pos = t;
                    continue;
                }
                pat = par.rule == Rule::Bot;
                break;
            }
            rep.ones.push_back({at, pat, pat && plus == 0, plus});
        }
        chain.push_back(&n);
        for (std::size_t i = 0; i < n.premises.size(); ++i) {
            at.push_back(static_cast<int>(i));
            go(n.premises[i]);
            at.pop_back();
        }
        chain.pop_back();
    };
    go(p);
    return rep;
}

Proof make_patterns_adjacent(const Proof& p0) {
    Proof p = p0;
    while (true) {
        std::optional<NodePath> target;
        for_each_node(p, [&](const NodePath& at, const Proof& q) {
            if (!target && q->rule == Rule::Bot && is_plus(q->premises[0]->rule) && bot_heads_pattern(*q))
                target = at;
        });
        if (!target) return p;
        p = replace_subproof(p, *target, push_up(subproof(p, *target), 0));
    }
}

}  // namespace mall
