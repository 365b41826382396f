#include "mall/sequent.hpp"

#include "mall/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace mall {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Ax: return "ax";
        case Rule::Cut: return "cut";
        case Rule::Tensor: return "tensor";
        case Rule::Par: return "par";
        case Rule::One: return "one";
        case Rule::Bot: return "bot";
        case Rule::With: return "with";
        case Rule::Plus1: return "plus1";
        case Rule::Plus2: return "plus2";
        case Rule::Top: return "top";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Rule::Top); ++i)
        if (s == rule_name(static_cast<Rule>(i))) return static_cast<Rule>(i);
    return std::nullopt;
}

std::string node_path_str(const NodePath& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

Proof make_node(Sequent c, Rule r, std::vector<int> principal, std::vector<Proof> prem,
                std::vector<std::vector<int>> maps, std::optional<Formula> cut, int kept) {
    auto n = std::make_shared<ProofNode>();
    n->conclusion = std::move(c);
    n->rule = r;
    n->principal = std::move(principal);
    n->premises = std::move(prem);
    n->maps = std::move(maps);
    n->cut_formula = std::move(cut);
    n->kept = kept;
    return n;
}

// ---------------------------------------------------------------- builders

namespace {

// Map for a premise whose position `act` goes to `target` and whose other
// positions fill node positions starting at `next`.
std::vector<int> context_map(std::size_t n, const std::vector<int>& act, const std::vector<int>& target,
                             int& next) {
    std::vector<int> m(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        auto it = std::find(act.begin(), act.end(), static_cast<int>(k));
        if (it != act.end()) m[k] = target[it - act.begin()];
        else m[k] = next++;
    }
    return m;
}

void need(bool ok, const std::string& msg) {
    if (!ok) throw IllFormedProof(msg);
}

}  // namespace

Proof ax(const Formula& a) { return make_node({dual(a), a}, Rule::Ax, {0, 1}, {}, {}); }

Proof ax_seq(const Formula& first, const Formula& second) {
    need(dual(first) == second, "axiom formulas must be dual");
    return make_node({first, second}, Rule::Ax, {0, 1}, {}, {});
}

Proof one_rule() { return make_node({Formula::one()}, Rule::One, {0}, {}, {}); }

Proof bot_rule(const Proof& p) {
    Sequent c{Formula::bot()};
    for (auto& f : p->conclusion) c.push_back(f);
    std::vector<int> m(p->conclusion.size());
    std::iota(m.begin(), m.end(), 1);
    return make_node(std::move(c), Rule::Bot, {0}, {p}, {m});
}

Proof top_rule(Sequent ctx, int k) {
    need(k >= 0 && k < static_cast<int>(ctx.size()) && ctx[k].kind() == Kind::Top, "top rule needs top");
    return make_node(std::move(ctx), Rule::Top, {k}, {}, {});
}

Proof par_rule(const Proof& p0, int i, int j) {
    need(i != j, "par needs two distinct positions");
    Proof p = p0;
    if (i > j) {
        // keep the convention: the lower position is the left subformula
        std::vector<int> perm(p->conclusion.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[i], perm[j]);
        p = permute(p, perm);
        std::swap(i, j);
    }
    const auto& pc = p->conclusion;
    Sequent c{Formula::par(pc[i], pc[j])};
    int next = 1;
    auto m = context_map(pc.size(), {i, j}, {0, 0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i && static_cast<int>(k) != j) c.push_back(pc[k]);
    return make_node(std::move(c), Rule::Par, {0}, {p}, {m});
}

Proof tensor_rule(const Proof& p, int i, const Proof& q, int j) {
    const auto& pc = p->conclusion;
    const auto& qc = q->conclusion;
    Sequent c{Formula::tensor(pc[i], qc[j])};
    int next = 1;
    auto m0 = context_map(pc.size(), {i}, {0}, next);
    auto m1 = context_map(qc.size(), {j}, {0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    for (std::size_t k = 0; k < qc.size(); ++k)
        if (static_cast<int>(k) != j) c.push_back(qc[k]);
    return make_node(std::move(c), Rule::Tensor, {0}, {p, q}, {m0, m1});
}

Proof with_rule(const Proof& p, int i, const Proof& q, int j) {
    const auto& pc = p->conclusion;
    const auto& qc = q->conclusion;
    need(pc.size() == qc.size(), "with premises must share their context");
    Sequent c{Formula::with(pc[i], qc[j])};
    int next = 1;
    auto m0 = context_map(pc.size(), {i}, {0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    // match q's context to p's, formula by formula, in order of p
    std::vector<int> m1(qc.size(), -2);
    m1[j] = 0;
    std::vector<bool> used(qc.size(), false);
    used[j] = true;
    for (std::size_t pos = 1; pos < c.size(); ++pos) {
        bool found = false;
        for (std::size_t k = 0; k < qc.size(); ++k)
            if (!used[k] && qc[k] == c[pos]) {
                used[k] = true;
                m1[k] = static_cast<int>(pos);
                found = true;
                break;
            }
        need(found, "with premises must share their context");
    }
    return make_node(std::move(c), Rule::With, {0}, {p, q}, {m0, m1});
}

Proof with_slice(const Proof& p, int i, const Formula& other, int kept) {
    const auto& pc = p->conclusion;
    Formula w = kept == 1 ? Formula::with(pc[i], other) : Formula::with(other, pc[i]);
    Sequent c{w};
    int next = 1;
    auto m = context_map(pc.size(), {i}, {0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    return make_node(std::move(c), Rule::With, {0}, {p}, {m}, std::nullopt, kept);
}

Proof plus1_rule(const Proof& p, int i, const Formula& b) {
    const auto& pc = p->conclusion;
    Sequent c{Formula::plus(pc[i], b)};
    int next = 1;
    auto m = context_map(pc.size(), {i}, {0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    return make_node(std::move(c), Rule::Plus1, {0}, {p}, {m});
}

Proof plus2_rule(const Formula& a, const Proof& p, int i) {
    const auto& pc = p->conclusion;
    Sequent c{Formula::plus(a, pc[i])};
    int next = 1;
    auto m = context_map(pc.size(), {i}, {0}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    return make_node(std::move(c), Rule::Plus2, {0}, {p}, {m});
}

Proof cut_rule(const Proof& p, int i, const Proof& q, int j) {
    const auto& pc = p->conclusion;
    const auto& qc = q->conclusion;
    need(dual(pc[i]) == qc[j], "cut formulas must be dual: " + print(pc[i]) + " / " + print(qc[j]));
    Sequent c;
    int next = 0;
    auto m0 = context_map(pc.size(), {i}, {-1}, next);
    auto m1 = context_map(qc.size(), {j}, {-1}, next);
    for (std::size_t k = 0; k < pc.size(); ++k)
        if (static_cast<int>(k) != i) c.push_back(pc[k]);
    for (std::size_t k = 0; k < qc.size(); ++k)
        if (static_cast<int>(k) != j) c.push_back(qc[k]);
    return make_node(std::move(c), Rule::Cut, {}, {p, q}, {m0, m1}, pc[i]);
}

Proof permute(const Proof& p, const std::vector<int>& perm) {
    const auto& pc = p->conclusion;
    need(perm.size() == pc.size(), "permutation size mismatch");
    bool ident = true;
    for (std::size_t k = 0; k < perm.size(); ++k) ident = ident && perm[k] == static_cast<int>(k);
    if (ident) return p;
    Sequent c(pc.size());
    for (std::size_t k = 0; k < pc.size(); ++k) c[perm[k]] = pc[k];
    auto n = std::make_shared<ProofNode>(*p);
    n->conclusion = std::move(c);
    for (auto& x : n->principal) x = perm[x];
    for (auto& m : n->maps)
        for (auto& x : m)
            if (x >= 0) x = perm[x];
    return n;
}

int index_of(const Sequent& s, const Formula& f, int skip) {
    for (std::size_t k = 0; k < s.size(); ++k)
        if (static_cast<int>(k) != skip && s[k] == f) return static_cast<int>(k);
    return -1;
}

Proof arrange(const Proof& p, const Sequent& wanted) {
    const auto& pc = p->conclusion;
    need(wanted.size() == pc.size(), "arrange: size mismatch");
    std::vector<int> perm(pc.size(), -1);
    std::vector<bool> used(wanted.size(), false);
    for (std::size_t k = 0; k < pc.size(); ++k) {
        bool ok = false;
        for (std::size_t w = 0; w < wanted.size(); ++w)
            if (!used[w] && wanted[w] == pc[k]) {
                used[w] = true;
                perm[k] = static_cast<int>(w);
                ok = true;
                break;
            }
        need(ok, "arrange: " + sequent_str(pc) + " is not a permutation of " + sequent_str(wanted));
    }
    return permute(p, perm);
}

// ---------------------------------------------------------------- checking

std::vector<int> active_positions(const ProofNode& n, int i) {
    std::vector<int> out;
    const auto& m = n.maps[i];
    for (std::size_t k = 0; k < m.size(); ++k) {
        int t = m[k];
        if (t < 0 || std::find(n.principal.begin(), n.principal.end(), t) != n.principal.end())
            out.push_back(static_cast<int>(k));
    }
    return out;
}

int preimage(const ProofNode& n, int i, int k) {
    const auto& m = n.maps[i];
    for (std::size_t x = 0; x < m.size(); ++x)
        if (m[x] == k) return static_cast<int>(x);
    return -1;
}

namespace {

struct Checker {
    std::vector<Violation> out;

    void bad(const NodePath& at, Rule r, std::string msg) { out.push_back({at, r, std::move(msg)}); }

    static std::size_t premise_count(const ProofNode& n) {
        switch (n.rule) {
            case Rule::Ax:
            case Rule::One:
            case Rule::Top: return 0;
            case Rule::Par:
            case Rule::Bot:
            case Rule::Plus1:
            case Rule::Plus2: return 1;
            case Rule::With: return n.kept ? 1 : 2;
            default: return 2;
        }
    }

    void check(const Proof& p, NodePath& at) {
        const ProofNode& n = *p;
        const Rule r = n.rule;
        const auto& c = n.conclusion;
        const int sz = static_cast<int>(c.size());
        if (n.premises.size() != premise_count(n)) {
            bad(at, r, "wrong number of premises");
            return;
        }
        if (n.maps.size() != n.premises.size()) {
            bad(at, r, "one premise map per premise required");
            return;
        }
        for (int x : n.principal)
            if (x < 0 || x >= sz) {
                bad(at, r, "principal position out of range");
                return;
            }
        if (r != Rule::With && n.kept != 0) bad(at, r, "only with nodes may record a kept premise");
        if (r == Rule::Cut) {
            if (!n.cut_formula) bad(at, r, "cut without cut formula");
        } else if (n.cut_formula) {
            bad(at, r, "cut formula on a non-cut node");
        }
        // map shape
        std::vector<int> hits(sz, 0);
        for (std::size_t i = 0; i < n.premises.size(); ++i) {
            const auto& m = n.maps[i];
            if (m.size() != n.premises[i]->conclusion.size()) {
                bad(at, r, "premise map " + std::to_string(i) + " is not total");
                return;
            }
            for (int t : m)
                if (t < -1 || t >= sz) {
                    bad(at, r, "premise map target out of range");
                    return;
                }
        }
        auto is_principal = [&](int k) {
            return std::find(n.principal.begin(), n.principal.end(), k) != n.principal.end();
        };
        // context: each non-principal position receives exactly one premise
        // position (per premise for with)
        if (r == Rule::With && !n.kept) {
            for (std::size_t i = 0; i < 2; ++i) {
                std::vector<int> h(sz, 0);
                for (int t : n.maps[i])
                    if (t >= 0) ++h[t];
                for (int k = 0; k < sz; ++k)
                    if (!is_principal(k) && h[k] != 1) {
                        bad(at, r, "with context mismatch in premise " + std::to_string(i));
                        return;
                    }
            }
        } else if (!n.premises.empty()) {
            for (std::size_t i = 0; i < n.premises.size(); ++i)
                for (int t : n.maps[i])
                    if (t >= 0 && !is_principal(t)) ++hits[t];
            for (int k = 0; k < sz; ++k)
                if (!is_principal(k) && hits[k] != 1) {
                    bad(at, r, "context position " + std::to_string(k) + " not covered exactly once");
                    return;
                }
        }
        // context formulas are preserved
        for (std::size_t i = 0; i < n.premises.size(); ++i) {
            const auto& pc = n.premises[i]->conclusion;
            for (std::size_t k = 0; k < pc.size(); ++k) {
                int t = n.maps[i][k];
                if (t >= 0 && !is_principal(t) && !(pc[k] == c[t])) {
                    bad(at, r, "context formula changed at premise " + std::to_string(i));
                    return;
                }
            }
        }
        rule_local(n, at);
        for (std::size_t i = 0; i < n.premises.size(); ++i) {
            at.push_back(static_cast<int>(i));
            check(n.premises[i], at);
            at.pop_back();
        }
    }

    void rule_local(const ProofNode& n, const NodePath& at) {
        const Rule r = n.rule;
        const auto& c = n.conclusion;
        auto one_principal = [&]() {
            if (n.principal.size() != 1) {
                bad(at, r, "exactly one principal formula expected");
                return false;
            }
            return true;
        };
        auto act = [&](int i) { return active_positions(n, i); };
        switch (r) {
            case Rule::Ax:
                if (c.size() != 2 || n.principal.size() != 2 || !(dual(c[0]) == c[1]))
                    bad(at, r, "axiom must conclude A^, A");
                return;
            case Rule::One:
                if (c.size() != 1 || c[0].kind() != Kind::One || !one_principal()) bad(at, r, "one rule must conclude 1");
                return;
            case Rule::Top:
                if (!one_principal()) return;
                if (c[n.principal[0]].kind() != Kind::Top) bad(at, r, "top rule principal must be top");
                return;
            case Rule::Bot: {
                if (!one_principal()) return;
                if (c[n.principal[0]].kind() != Kind::Bot) bad(at, r, "bot rule principal must be bot");
                if (!act(0).empty()) bad(at, r, "bot rule premise has no active formula");
                return;
            }
            case Rule::Par: {
                if (!one_principal()) return;
                const auto& f = c[n.principal[0]];
                auto a = act(0);
                if (f.kind() != Kind::Par || a.size() != 2) {
                    bad(at, r, "par rule shape");
                    return;
                }
                const auto& pc = n.premises[0]->conclusion;
                if (!(pc[a[0]] == f.left() && pc[a[1]] == f.right()))
                    bad(at, r, "par premise formulas do not match " + print(f));
                return;
            }
            case Rule::Tensor: {
                if (!one_principal()) return;
                const auto& f = c[n.principal[0]];
                auto a0 = act(0), a1 = act(1);
                if (f.kind() != Kind::Tensor || a0.size() != 1 || a1.size() != 1) {
                    bad(at, r, "tensor rule shape");
                    return;
                }
                if (!(n.premises[0]->conclusion[a0[0]] == f.left() &&
                      n.premises[1]->conclusion[a1[0]] == f.right()))
                    bad(at, r, "tensor premise formulas do not match " + print(f));
                return;
            }
            case Rule::With: {
                if (!one_principal()) return;
                const auto& f = c[n.principal[0]];
                if (f.kind() != Kind::With) {
                    bad(at, r, "with principal must be &");
                    return;
                }
                if (n.kept) {
                    auto a = act(0);
                    const Formula& want = n.kept == 1 ? f.left() : f.right();
                    if (a.size() != 1 || !(n.premises[0]->conclusion[a[0]] == want))
                        bad(at, r, "with slice premise does not match the kept side");
                    if (n.kept != 1 && n.kept != 2) bad(at, r, "kept must be 1 or 2");
                    return;
                }
                auto a0 = act(0), a1 = act(1);
                if (a0.size() != 1 || a1.size() != 1 || !(n.premises[0]->conclusion[a0[0]] == f.left()) ||
                    !(n.premises[1]->conclusion[a1[0]] == f.right()))
                    bad(at, r, "with premise formulas do not match " + print(f));
                return;
            }
            case Rule::Plus1:
            case Rule::Plus2: {
                if (!one_principal()) return;
                const auto& f = c[n.principal[0]];
                auto a = act(0);
                if (f.kind() != Kind::Plus || a.size() != 1) {
                    bad(at, r, "plus rule shape");
                    return;
                }
                const Formula& want = r == Rule::Plus1 ? f.left() : f.right();
                if (!(n.premises[0]->conclusion[a[0]] == want))
                    bad(at, r, std::string(r == Rule::Plus1 ? "plus1" : "plus2") +
                                   " premise must expose " + print(want));
                return;
            }
            case Rule::Cut: {
                if (!n.principal.empty()) bad(at, r, "cut has no principal formula");
                auto a0 = act(0), a1 = act(1);
                if (a0.size() != 1 || a1.size() != 1) {
                    bad(at, r, "cut needs one cut formula per premise");
                    return;
                }
                if (!n.cut_formula) return;
                const auto& l = n.premises[0]->conclusion[a0[0]];
                const auto& rr = n.premises[1]->conclusion[a1[0]];
                if (!(l == *n.cut_formula) || !(dual(l) == rr))
                    bad(at, r, "cut formulas are not dual");
                return;
            }
        }
    }
};

}  // namespace

std::vector<Violation> check_proof(const Proof& p) {
    Checker ck;
    NodePath at;
    ck.check(p, at);
    return ck.out;
}

// ---------------------------------------------------------------- navigation

Proof subproof(const Proof& p, const NodePath& at) {
    Proof cur = p;
    for (int i : at) {
        if (i < 0 || i >= static_cast<int>(cur->premises.size()))
            throw NotApplicable("no node at " + node_path_str(at));
        cur = cur->premises[i];
    }
    return cur;
}

namespace {

Proof replace_rec(const Proof& p, const NodePath& at, std::size_t d, const Proof& q) {
    if (d == at.size()) return q;
    auto n = std::make_shared<ProofNode>(*p);
    n->premises[at[d]] = replace_rec(p->premises[at[d]], at, d + 1, q);
    return n;
}

}  // namespace

Proof replace_subproof(const Proof& p, const NodePath& at, const Proof& q) {
    Proof old = subproof(p, at);
    if (old->conclusion != q->conclusion)
        throw NotApplicable("replacement changes the conclusion " + sequent_str(old->conclusion) + " to " +
                            sequent_str(q->conclusion));
    return replace_rec(p, at, 0, q);
}

void for_each_node(const Proof& p, const std::function<void(const NodePath&, const Proof&)>& f) {
    NodePath at;
    std::function<void(const Proof&)> go = [&](const Proof& q) {
        f(at, q);
        for (std::size_t i = 0; i < q->premises.size(); ++i) {
            at.push_back(static_cast<int>(i));
            go(q->premises[i]);
            at.pop_back();
        }
    };
    go(p);
}

bool is_cut_free(const Proof& p) {
    if (p->rule == Rule::Cut) return false;
    for (auto& q : p->premises)
        if (!is_cut_free(q)) return false;
    return true;
}

bool is_eta_normal(const Proof& p) {
    if (p->rule == Rule::Ax) return p->conclusion[0].is_atomic();
    for (auto& q : p->premises)
        if (!is_eta_normal(q)) return false;
    return true;
}

bool proof_unit_free(const Proof& p) {
    for (auto& f : p->conclusion)
        if (!is_unit_free(f)) return false;
    if (p->cut_formula && !is_unit_free(*p->cut_formula)) return false;
    for (auto& q : p->premises)
        if (!proof_unit_free(q)) return false;
    return true;
}

std::size_t proof_size(const Proof& p) {
    std::size_t n = 1;
    for (auto& q : p->premises) n += proof_size(q);
    return n;
}

std::size_t count_cuts(const Proof& p) {
    std::size_t n = p->rule == Rule::Cut ? 1 : 0;
    for (auto& q : p->premises) n += count_cuts(q);
    return n;
}

bool proof_equal(const Proof& p, const Proof& q) {
    if (p == q) return true;
    if (p->rule != q->rule || p->kept != q->kept || p->conclusion != q->conclusion ||
        p->principal != q->principal || p->maps != q->maps || p->premises.size() != q->premises.size())
        return false;
    if (p->cut_formula.has_value() != q->cut_formula.has_value()) return false;
    if (p->cut_formula && !(*p->cut_formula == *q->cut_formula)) return false;
    for (std::size_t i = 0; i < p->premises.size(); ++i)
        if (!proof_equal(p->premises[i], q->premises[i])) return false;
    return true;
}

std::string sequent_str(const Sequent& s) {
    std::string out = "|- ";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += print(s[i]);
    }
    return out;
}

std::string proof_str(const Proof& p, int indent) {
    std::string out(indent * 2, ' ');
    out += rule_name(p->rule);
    if (p->kept) out += std::to_string(p->kept);
    out += "  " + sequent_str(p->conclusion) + "\n";
    for (auto& q : p->premises) out += proof_str(q, indent + 1);
    return out;
}

// ---------------------------------------------------------------- keys

namespace {

struct KeyResult {
    std::string key;
    std::vector<int> order;  // order[c] = original position at canonical index c
    std::vector<int> rank;   // rank[original] = canonical index
};

KeyResult key_rec(const Proof& p) {
    const auto& c = p->conclusion;
    KeyResult kr;
    kr.order.resize(c.size());
    std::iota(kr.order.begin(), kr.order.end(), 0);
    std::vector<std::string> fs(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) fs[k] = print(c[k]);
    std::stable_sort(kr.order.begin(), kr.order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    kr.rank.resize(c.size());
    for (std::size_t x = 0; x < kr.order.size(); ++x) kr.rank[kr.order[x]] = static_cast<int>(x);

    std::vector<KeyResult> sub;
    for (auto& q : p->premises) sub.push_back(key_rec(q));
    // canonical map of premise i: for each canonical premise index, the
    // canonical node index (or -1), with par sides tagged
    std::vector<std::string> prem_keys;
    for (std::size_t i = 0; i < p->premises.size(); ++i) {
        std::string s = "{" + sub[i].key + "|";
        const auto& m = p->maps[i];
        for (std::size_t ci = 0; ci < sub[i].order.size(); ++ci) {
            int orig = sub[i].order[ci];
            int t = m[orig];
            s += std::to_string(t < 0 ? -1 : kr.rank[t]);
            if (p->rule == Rule::Par && t >= 0 &&
                std::find(p->principal.begin(), p->principal.end(), t) != p->principal.end()) {
                auto act = active_positions(*p, static_cast<int>(i));
                s += orig == act[0] ? "l" : "r";
            }
            s += ",";
        }
        prem_keys.push_back(s + "}");
    }
    std::string s = rule_name(p->rule);
    if (p->kept) s += std::to_string(p->kept);
    s += "[";
    for (int o : kr.order) s += fs[o] + ";";
    s += "]p";
    std::vector<int> pr;
    for (int x : p->principal) pr.push_back(kr.rank[x]);
    std::sort(pr.begin(), pr.end());
    for (int x : pr) s += std::to_string(x) + ",";
    if (p->rule == Rule::Cut) {
        // cut branches are unordered
        if (prem_keys[1] < prem_keys[0]) std::swap(prem_keys[0], prem_keys[1]);
    }
    for (auto& k : prem_keys) s += k;
    kr.key = std::move(s);
    return kr;
}

}  // namespace

std::string proof_key(const Proof& p) { return key_rec(p).key; }

// ---------------------------------------------------------------- eta

bool is_positive(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Tensor:
        case Kind::Plus:
        case Kind::One:
        case Kind::Zero: return true;
        default: return false;
    }
}

namespace {

// Axiom with the negative formula first.
Proof axc(const Formula& a) {
    return is_positive(a) ? ax(a) : ax(dual(a));
}

int pos_of_positive(const Proof& axnode) { return is_positive(axnode->conclusion[0]) ? 0 : 1; }

// One expansion step on |- A^, A with A positive.
Proof expand_positive(const Formula& a) {
    switch (a.kind()) {
        case Kind::Tensor: {
            const Formula &P = a.left(), &Q = a.right();
            Proof ap = axc(P), aq = axc(Q);
            Proof t = tensor_rule(ap, index_of(ap->conclusion, P), aq, index_of(aq->conclusion, Q));
            // t = |- P*Q, P^, Q^ ; par Q^ (left) with P^ (right)
            Proof pr = par_rule(t, 2, 1);
            return arrange(pr, {dual(a), a});
        }
        case Kind::Plus: {
            const Formula &P = a.left(), &Q = a.right();
            Proof aq = axc(Q), ap = axc(P);
            Proof l = plus2_rule(P, aq, index_of(aq->conclusion, Q));  // |- P+Q, Q^
            Proof r = plus1_rule(ap, index_of(ap->conclusion, P), Q);  // |- P+Q, P^
            Proof w = with_rule(l, 1, r, 1);                            // |- Q^&P^, P+Q
            return w;
        }
        case Kind::One: return bot_rule(one_rule());
        case Kind::Zero: return top_rule({Formula::top(), Formula::zero()}, 0);
        default: return ax(a);
    }
}

}  // namespace

Proof eta_expand_once(const Proof& axnode) {
    if (axnode->rule != Rule::Ax) throw NotApplicable("not an axiom");
    const auto& c = axnode->conclusion;
    Formula a = c[pos_of_positive(axnode)];
    if (a.is_atomic()) return axnode;
    return arrange(expand_positive(a), c);
}

std::vector<std::pair<NodePath, Proof>> eta_step(const Proof& p) {
    std::vector<std::pair<NodePath, Proof>> out;
    for_each_node(p, [&](const NodePath& at, const Proof& q) {
        if (q->rule == Rule::Ax && !q->conclusion[0].is_atomic())
            out.emplace_back(at, replace_subproof(p, at, eta_expand_once(q)));
    });
    return out;
}

Proof eta_normalize(const Proof& p) {
    if (p->rule == Rule::Ax) {
        if (p->conclusion[0].is_atomic()) return p;
        return eta_normalize(eta_expand_once(p));
    }
    auto n = std::make_shared<ProofNode>(*p);
    bool changed = false;
    for (auto& q : n->premises) {
        Proof r = eta_normalize(q);
        changed = changed || r != q;
        q = r;
    }
    if (!changed) return p;
    return n;
}

Proof id_proof(const Formula& a) { return eta_normalize(ax(a)); }

// ---------------------------------------------------------------- slices

std::vector<Proof> slices(const Proof& p) {
    if (p->premises.empty()) return {p};
    if (p->rule == Rule::With && !p->kept) {
        std::vector<Proof> out;
        for (int i = 0; i < 2; ++i) {
            for (auto& s : slices(p->premises[i])) {
                auto n = std::make_shared<ProofNode>(*p);
                n->premises = {s};
                n->maps = {p->maps[i]};
                n->kept = i + 1;
                out.push_back(n);
            }
        }
        return out;
    }
    std::vector<std::vector<Proof>> per;
    for (auto& q : p->premises) per.push_back(slices(q));
    std::vector<Proof> out;
    std::vector<std::size_t> idx(per.size(), 0);
    for (;;) {
        auto n = std::make_shared<ProofNode>(*p);
        for (std::size_t i = 0; i < per.size(); ++i) n->premises[i] = per[i][idx[i]];
        out.push_back(n);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == per[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

bool is_slice(const Proof& p) {
    if (p->rule == Rule::With && !p->kept) return false;
    for (auto& q : p->premises)
        if (!is_slice(q)) return false;
    return true;
}

// ---------------------------------------------------------------- units

Proof substitute_units_proof(const Proof& p, const std::string& x, const std::string& y) {
    auto sub = [&](const Formula& f) { return substitute_units(f, x, y); };
    if (p->rule == Rule::Top) {
        if (p->conclusion.size() != 2 || p->conclusion[1 - p->principal[0]].kind() != Kind::Zero)
            throw PatternPreconditionFailed("top rule is not a top/0 pattern: " + sequent_str(p->conclusion));
        return ax_seq(sub(p->conclusion[0]), sub(p->conclusion[1]));
    }
    if (p->rule == Rule::Bot) {
        if (p->premises[0]->rule == Rule::One) {
            Sequent c{sub(p->conclusion[0]), sub(p->conclusion[1])};
            return ax_seq(c[0], c[1]);
        }
        throw PatternPreconditionFailed("bot rule not directly above its 1 rule");
    }
    if (p->rule == Rule::One) throw PatternPreconditionFailed("1 rule outside a 1/bot pattern");
    auto n = std::make_shared<ProofNode>(*p);
    for (auto& f : n->conclusion) f = sub(f);
    if (n->cut_formula) n->cut_formula = sub(*n->cut_formula);
    for (auto& q : n->premises) q = substitute_units_proof(q, x, y);
    return n;
}

}  // namespace mall
