#include "mall/iso.hpp"

#include "mall/cut_elim.hpp"
#include "mall/errors.hpp"
#include "mall/net.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mall {

// ------------------------------------------------------------------ schemas

namespace {

using E = EquationId;

struct EqInfo {
    E id;
    const char* tag;
    const char* symbol;
};

const EqInfo kInfo[] = {
    {E::AssocTensor, "assoc-tensor", "assoc⊗"},      {E::AssocPar, "assoc-par", "assoc⅋"},
    {E::AssocPlus, "assoc-plus", "assoc⊕"},          {E::AssocWith, "assoc-with", "assoc&"},
    {E::CommTensor, "comm-tensor", "comm⊗"},         {E::CommPar, "comm-par", "comm⅋"},
    {E::CommPlus, "comm-plus", "comm⊕"},             {E::CommWith, "comm-with", "comm&"},
    {E::DistrTensorPlus, "distr-tensor-plus", "distr⊗⊕"}, {E::DistrParWith, "distr-par-with", "distr⅋&"},
    {E::UnitTensorOne, "unit-tensor-one", "unit⊗1"}, {E::UnitParBot, "unit-par-bot", "unit⅋⊥"},
    {E::UnitPlusZero, "unit-plus-zero", "unit⊕0"},   {E::UnitWithTop, "unit-with-top", "unit&⊤"},
    {E::CancelTensorZero, "cancel-tensor-zero", "cancel⊗0"}, {E::CancelParTop, "cancel-par-top", "cancel⅋⊤"},
};

const Formula& meta(char c) {
    static const Formula a = Formula::atom("?A"), b = Formula::atom("?B"), cc = Formula::atom("?C");
    return c == 'A' ? a : c == 'B' ? b : cc;
}

struct Schema {
    Formula lhs, rhs;
};

Schema make_schema(E e) {
    using F = Formula;
    const F& A = meta('A');
    const F& B = meta('B');
    const F& C = meta('C');
    auto assoc = [&](Kind k) { return Schema{F::binary(k, A, F::binary(k, B, C)), F::binary(k, F::binary(k, A, B), C)}; };
    auto comm = [&](Kind k) { return Schema{F::binary(k, A, B), F::binary(k, B, A)}; };
    switch (e) {
        case E::AssocTensor: return assoc(Kind::Tensor);
        case E::AssocPar: return assoc(Kind::Par);
        case E::AssocPlus: return assoc(Kind::Plus);
        case E::AssocWith: return assoc(Kind::With);
        case E::CommTensor: return comm(Kind::Tensor);
        case E::CommPar: return comm(Kind::Par);
        case E::CommPlus: return comm(Kind::Plus);
        case E::CommWith: return comm(Kind::With);
        case E::DistrTensorPlus: return {F::tensor(A, F::plus(B, C)), F::plus(F::tensor(A, B), F::tensor(A, C))};
        case E::DistrParWith: return {F::par(A, F::with(B, C)), F::with(F::par(A, B), F::par(A, C))};
        case E::UnitTensorOne: return {F::tensor(A, F::one()), A};
        case E::UnitParBot: return {F::par(A, F::bot()), A};
        case E::UnitPlusZero: return {F::plus(A, F::zero()), A};
        case E::UnitWithTop: return {F::with(A, F::top()), A};
        case E::CancelTensorZero: return {F::tensor(A, F::zero()), F::zero()};
        case E::CancelParTop: return {F::par(A, F::top()), F::top()};
    }
    throw std::logic_error("unknown equation");
}

const Schema& schema(E e) {
    static const std::vector<Schema> all = [] {
        std::vector<Schema> v;
        for (int i = 0; i < kEquationCount; ++i) v.push_back(make_schema(static_cast<E>(i)));
        return v;
    }();
    return all.at(static_cast<int>(e));
}

bool is_meta(const Formula& f) { return f.kind() == Kind::Atom && f.name().size() == 2 && f.name()[0] == '?'; }

bool match(const Formula& pat, const Formula& f, Instantiation& inst) {
    if (is_meta(pat)) {
        std::string v(1, pat.name()[1]);
        auto it = inst.find(v);
        if (it != inst.end()) return it->second == f;
        inst.emplace(v, f);
        return true;
    }
    if (pat.kind() != f.kind()) return false;
    if (pat.is_atomic()) return pat.name() == f.name();
    if (!pat.is_binary()) return true;
    return match(pat.left(), f.left(), inst) && match(pat.right(), f.right(), inst);
}

Formula instantiate(const Formula& pat, const Instantiation& inst) {
    if (is_meta(pat)) {
        auto it = inst.find(std::string(1, pat.name()[1]));
        if (it == inst.end()) throw ReplayMismatch(std::string("metavariable ") + pat.name()[1] + " is not instantiated");
        return it->second;
    }
    if (!pat.is_binary()) return pat;
    return Formula::binary(pat.kind(), instantiate(pat.left(), inst), instantiate(pat.right(), inst));
}

}  // namespace

const std::vector<EquationId>& all_equations() {
    static const std::vector<EquationId> v = [] {
        std::vector<EquationId> r;
        for (int i = 0; i < kEquationCount; ++i) r.push_back(static_cast<EquationId>(i));
        return r;
    }();
    return v;
}

const char* equation_tag(EquationId e) { return kInfo[static_cast<int>(e)].tag; }
const char* equation_symbol(EquationId e) { return kInfo[static_cast<int>(e)].symbol; }

std::optional<EquationId> equation_from_name(const std::string& s) {
    for (auto& i : kInfo)
        if (s == i.tag || s == i.symbol) return i.id;
    return std::nullopt;
}

std::vector<std::string> equation_metavars(EquationId e) {
    std::set<std::string> vs;
    std::function<void(const Formula&)> go = [&](const Formula& f) {
        if (is_meta(f)) vs.insert(std::string(1, f.name()[1]));
        else if (f.is_binary()) {
            go(f.left());
            go(f.right());
        }
    };
    go(schema(e).lhs);
    go(schema(e).rhs);
    return {vs.begin(), vs.end()};
}

bool is_ac(EquationId e) { return static_cast<int>(e) < 8; }

Direction flip(Direction d) { return d == Direction::LeftToRight ? Direction::RightToLeft : Direction::LeftToRight; }

std::pair<Formula, Formula> equation_sides(EquationId e, const Instantiation& inst) {
    const auto& s = schema(e);
    return {instantiate(s.lhs, inst), instantiate(s.rhs, inst)};
}

std::optional<Instantiation> match_equation(EquationId e, Direction d, const Formula& f) {
    const auto& s = schema(e);
    Instantiation inst;
    if (!match(d == Direction::LeftToRight ? s.lhs : s.rhs, f, inst)) return std::nullopt;
    return inst;
}

Formula apply_step(const Formula& f, const DerivationStep& s) {
    if (!valid_path(f, s.position)) throw ReplayMismatch("position " + s.position + " not in " + print(f));
    auto [l, r] = equation_sides(s.equation, s.inst);
    const Formula& from = s.direction == Direction::LeftToRight ? l : r;
    const Formula& to = s.direction == Direction::LeftToRight ? r : l;
    Formula sub = subformula(f, s.position);
    if (sub != from)
        throw ReplayMismatch(std::string(equation_tag(s.equation)) + " expects " + print(from) + " at '" +
                             s.position + "' but found " + print(sub));
    return replace_at(f, s.position, to);
}

std::vector<Formula> replay(const Derivation& d) {
    std::vector<Formula> out{d.source};
    for (auto& s : d.steps) out.push_back(apply_step(out.back(), s));
    if (out.back() != d.target)
        throw ReplayMismatch("replay ends at " + print(out.back()) + ", expected " + print(d.target));
    return out;
}

Derivation inverse(const Derivation& d) {
    Derivation r{d.target, d.source, {}};
    for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
        auto s = *it;
        s.direction = flip(s.direction);
        r.steps.push_back(std::move(s));
    }
    return r;
}

Derivation concat(const Derivation& x, const Derivation& y) {
    if (x.target != y.source) throw ReplayMismatch("derivations do not chain: " + print(x.target) + " / " + print(y.source));
    Derivation r{x.source, y.target, x.steps};
    r.steps.insert(r.steps.end(), y.steps.begin(), y.steps.end());
    return r;
}

// ------------------------------------------------------------------ derivations

namespace {

struct Builder {
    Formula cur;
    std::vector<DerivationStep> steps;

    void apply(EquationId e, Direction d, const Path& p) {
        auto inst = match_equation(e, d, subformula(cur, p));
        if (!inst) throw std::logic_error(std::string("builder: ") + equation_tag(e) + " does not apply at '" + p + "'");
        DerivationStep s{e, d, p, std::move(*inst)};
        cur = apply_step(cur, s);
        steps.push_back(std::move(s));
    }
};

EquationId assoc_of(Kind k) {
    switch (k) {
        case Kind::Tensor: return E::AssocTensor;
        case Kind::Par: return E::AssocPar;
        case Kind::Plus: return E::AssocPlus;
        default: return E::AssocWith;
    }
}
EquationId comm_of(Kind k) {
    switch (k) {
        case Kind::Tensor: return E::CommTensor;
        case Kind::Par: return E::CommPar;
        case Kind::Plus: return E::CommPlus;
        default: return E::CommWith;
    }
}

constexpr auto L2R = Direction::LeftToRight;
constexpr auto R2L = Direction::RightToLeft;

// Spine node below p whose right child continues the spine.
bool find_right_nest(const Formula& f, Kind k, Path& at) {
    if (f.right().kind() == k) return true;
    if (f.left().kind() == k) {
        at.push_back('L');
        return find_right_nest(f.left(), k, at);
    }
    return false;
}

// Rewrites the subformula at p into ac_canonical form with single assoc/comm steps.
void ac_normalize(Builder& b, const Path& p) {
    const Formula f0 = subformula(b.cur, p);
    if (!f0.is_binary()) return;
    const Kind k = f0.kind();
    for (;;) {
        Path at = p;
        if (!find_right_nest(subformula(b.cur, p), k, at)) break;
        b.apply(assoc_of(k), L2R, at);
    }
    const int n = static_cast<int>(spine(subformula(b.cur, p)).size());
    auto arg_path = [&](int i) {
        if (i == 0) return p + std::string(n - 1, 'L');
        return p + std::string(n - 1 - i, 'L') + "R";
    };
    for (int i = 0; i < n; ++i) ac_normalize(b, arg_path(i));
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i + 1 < n; ++i) {
            if (ac_compare(subformula(b.cur, arg_path(i)), subformula(b.cur, arg_path(i + 1))) <= 0) continue;
            if (i == 0) {
                b.apply(comm_of(k), L2R, p + std::string(n - 2, 'L'));
            } else {
                Path node = p + std::string(n - 2 - i, 'L');
                b.apply(assoc_of(k), R2L, node);
                b.apply(comm_of(k), L2R, node + "R");
                b.apply(assoc_of(k), L2R, node);
            }
            changed = true;
        }
    }
    if (subformula(b.cur, p) != ac_canonical(f0)) throw std::logic_error("ac_normalize missed the canonical form");
}

}  // namespace

std::optional<Derivation> ac_derivation(const Formula& a, const Formula& b) {
    Builder x{a, {}}, y{b, {}};
    ac_normalize(x, "");
    ac_normalize(y, "");
    if (x.cur != y.cur) return std::nullopt;
    Derivation da{a, x.cur, std::move(x.steps)};
    Derivation db{b, y.cur, std::move(y.steps)};
    return concat(da, inverse(db));
}

Derivation d_derivation(const Formula& f) {
    auto [nf, trace] = d_normalize(f);
    Builder b{f, {}};
    for (auto& st : trace) {
        const Path& p = st.path;
        auto swap_then = [&](EquationId comm, EquationId e) {
            b.apply(comm, L2R, p);
            b.apply(e, L2R, p);
        };
        switch (st.rule) {
            case DRule::TensorPlusR: b.apply(E::DistrTensorPlus, L2R, p); break;
            case DRule::TensorPlusL:
                swap_then(E::CommTensor, E::DistrTensorPlus);
                b.apply(E::CommTensor, L2R, p + "L");
                b.apply(E::CommTensor, L2R, p + "R");
                break;
            case DRule::ParWithR: b.apply(E::DistrParWith, L2R, p); break;
            case DRule::ParWithL:
                swap_then(E::CommPar, E::DistrParWith);
                b.apply(E::CommPar, L2R, p + "L");
                b.apply(E::CommPar, L2R, p + "R");
                break;
            case DRule::TensorOneR: b.apply(E::UnitTensorOne, L2R, p); break;
            case DRule::TensorOneL: swap_then(E::CommTensor, E::UnitTensorOne); break;
            case DRule::ParBotR: b.apply(E::UnitParBot, L2R, p); break;
            case DRule::ParBotL: swap_then(E::CommPar, E::UnitParBot); break;
            case DRule::PlusZeroR: b.apply(E::UnitPlusZero, L2R, p); break;
            case DRule::PlusZeroL: swap_then(E::CommPlus, E::UnitPlusZero); break;
            case DRule::WithTopR: b.apply(E::UnitWithTop, L2R, p); break;
            case DRule::WithTopL: swap_then(E::CommWith, E::UnitWithTop); break;
            case DRule::TensorZeroR: b.apply(E::CancelTensorZero, L2R, p); break;
            case DRule::TensorZeroL: swap_then(E::CommTensor, E::CancelTensorZero); break;
            case DRule::ParTopR: b.apply(E::CancelParTop, L2R, p); break;
            case DRule::ParTopL: swap_then(E::CommPar, E::CancelParTop); break;
        }
        if (b.cur != st.after)
            throw std::logic_error(std::string("d_derivation diverged on ") + drule_name(st.rule));
    }
    return Derivation{f, nf, std::move(b.steps)};
}

namespace {

// Drop every detour that comes back to a formula already visited.
Derivation without_cycles(const Derivation& d) {
    std::vector<Formula> states{d.source};
    std::vector<DerivationStep> out;
    for (auto& s : d.steps) {
        Formula next = apply_step(states.back(), s);
        auto seen = std::find(states.begin(), states.end(), next);
        if (seen != states.end()) {
            auto k = static_cast<std::size_t>(seen - states.begin());
            states.resize(k + 1);
            out.resize(k);
            continue;
        }
        out.push_back(s);
        states.push_back(std::move(next));
    }
    return {d.source, d.target, std::move(out)};
}

}  // namespace

IsoDecision decide_iso(const Formula& a, const Formula& b) {
    if (auto direct = ac_derivation(a, b)) return {true, without_cycles(*direct)};
    auto da = d_derivation(a);
    auto db = d_derivation(b);
    auto ac = ac_derivation(da.target, db.target);
    if (!ac) return {false, std::nullopt};
    return {true, without_cycles(concat(concat(da, *ac), inverse(db)))};
}

// ------------------------------------------------------------------ witnesses

namespace {

Formula subst_atoms(const Formula& f, const std::map<std::string, Formula>& m) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::NegAtom: {
            auto it = m.find(f.name());
            if (it == m.end()) return f;
            return f.kind() == Kind::Atom ? it->second : dual(it->second);
        }
        default:
            if (!f.is_binary()) return f;
            return Formula::binary(f.kind(), subst_atoms(f.left(), m), subst_atoms(f.right(), m));
    }
}

Proof subst_proof(const Proof& p, const std::map<std::string, Formula>& m) {
    auto n = std::make_shared<ProofNode>(*p);
    for (auto& f : n->conclusion) f = subst_atoms(f, m);
    if (n->cut_formula) n->cut_formula = subst_atoms(*n->cut_formula, m);
    for (auto& q : n->premises) q = subst_proof(q, m);
    return n;
}

int pos(const Proof& p, const Formula& f) {
    int i = index_of(p->conclusion, f);
    if (i < 0) throw std::logic_error("template: " + print(f) + " not in " + sequent_str(p->conclusion));
    return i;
}
Proof T(const Proof& p, const Formula& f, const Proof& q, const Formula& g) { return tensor_rule(p, pos(p, f), q, pos(q, g)); }
Proof P(const Proof& p, const Formula& f, const Formula& g) { return par_rule(p, pos(p, f), pos(p, g)); }
Proof W(const Proof& p, const Formula& f, const Proof& q, const Formula& g) { return with_rule(p, pos(p, f), q, pos(q, g)); }
Proof P1(const Proof& p, const Formula& f, const Formula& b) { return plus1_rule(p, pos(p, f), b); }
Proof P2(const Formula& a, const Proof& p, const Formula& f) { return plus2_rule(a, p, pos(p, f)); }

// Left-to-right templates over the fresh atoms $A $B $C: (|- L^, R ; |- R^, L).
std::pair<Proof, Proof> template_ltr(E e) {
    using F = Formula;
    const F A = F::atom("$A"), B = F::atom("$B"), C = F::atom("$C");
    const F a = dual(A), b = dual(B), c = dual(C);
    const F one = F::one(), bot = F::bot(), top = F::top(), zero = F::zero();
    auto comm_tpl = [](auto build, const F& x, const F& y) { return std::pair{build(x, y), build(y, x)}; };
    switch (e) {
        case E::AssocTensor: {
            Proof pi = P(P(T(T(ax(A), A, ax(B), B), F::tensor(A, B), ax(C), C), c, b), F::par(c, b), a);
            Proof pi2 = P(P(T(ax(A), A, T(ax(B), B, ax(C), C), F::tensor(B, C)), b, a), c, F::par(b, a));
            return {pi, pi2};
        }
        case E::AssocPar: {
            Proof pi = P(P(T(T(ax(C), c, ax(B), b), F::tensor(c, b), ax(A), a), A, B), F::par(A, B), C);
            Proof pi2 = P(P(T(ax(C), c, T(ax(B), b, ax(A), a), F::tensor(b, a)), B, C), A, F::par(B, C));
            return {pi, pi2};
        }
        case E::AssocPlus: {
            Proof pc = P2(F::plus(A, B), ax(C), C);
            Proof pb = P1(P2(A, ax(B), B), F::plus(A, B), C);
            Proof pa = P1(P1(ax(A), A, B), F::plus(A, B), C);
            Proof pi = W(W(pc, c, pb, b), F::with(c, b), pa, a);
            Proof qc = P2(A, P2(B, ax(C), C), F::plus(B, C));
            Proof qb = P2(A, P1(ax(B), B, C), F::plus(B, C));
            Proof qa = P1(ax(A), A, F::plus(B, C));
            Proof pi2 = W(qc, c, W(qb, b, qa, a), F::with(b, a));
            return {pi, pi2};
        }
        case E::AssocWith: {
            Proof pc = P1(P1(ax(C), c, b), F::plus(c, b), a);
            Proof pa = P2(F::plus(c, b), ax(A), a);
            Proof pb = P1(P2(c, ax(B), b), F::plus(c, b), a);
            Proof pi = W(W(pa, A, pb, B), F::with(A, B), pc, C);
            Proof qa = P2(c, P2(b, ax(A), a), F::plus(b, a));
            Proof qb = P2(c, P1(ax(B), b, a), F::plus(b, a));
            Proof qc = P1(ax(C), c, F::plus(b, a));
            Proof pi2 = W(qa, A, W(qb, B, qc, C), F::with(B, C));
            return {pi, pi2};
        }
        case E::CommTensor:
            return comm_tpl([](const F& x, const F& y) { return P(T(ax(y), y, ax(x), x), dual(y), dual(x)); }, A, B);
        case E::CommPar:
            return comm_tpl([](const F& x, const F& y) { return P(T(ax(y), dual(y), ax(x), dual(x)), y, x); }, A, B);
        case E::CommPlus:
            return comm_tpl([](const F& x, const F& y) { return W(P1(ax(y), y, x), dual(y), P2(y, ax(x), x), dual(x)); },
                            A, B);
        case E::CommWith:
            return comm_tpl(
                [](const F& x, const F& y) {
                    return W(P1(ax(y), dual(y), dual(x)), y, P2(dual(y), ax(x), dual(x)), x);
                },
                A, B);
        case E::DistrTensorPlus: {
            const F ab = F::tensor(A, B), ac = F::tensor(A, C);
            Proof pc = P2(ab, T(ax(A), A, ax(C), C), ac);
            Proof pb = P1(T(ax(A), A, ax(B), B), ab, ac);
            Proof pi = P(W(pc, c, pb, b), F::with(c, b), a);
            Proof q1 = P(T(ax(A), A, P2(B, ax(C), C), F::plus(B, C)), c, a);
            Proof q2 = P(T(ax(A), A, P1(ax(B), B, C), F::plus(B, C)), b, a);
            Proof pi2 = W(q1, F::par(c, a), q2, F::par(b, a));
            return {pi, pi2};
        }
        case E::DistrParWith: {
            const F cb = F::plus(c, b);
            Proof q1 = P(T(P2(c, ax(B), b), cb, ax(A), a), A, B);
            Proof q2 = P(T(P1(ax(C), c, b), cb, ax(A), a), A, C);
            Proof pi = W(q1, F::par(A, B), q2, F::par(A, C));
            const F ca = F::tensor(c, a), ba = F::tensor(b, a);
            Proof pb = P2(ca, T(ax(B), b, ax(A), a), ba);
            Proof pc = P1(T(ax(C), c, ax(A), a), ca, ba);
            Proof pi2 = P(W(pb, B, pc, C), A, F::with(B, C));
            return {pi, pi2};
        }
        case E::UnitTensorOne: return {P(bot_rule(ax(A)), bot, a), T(ax(A), A, one_rule(), one)};
        case E::UnitParBot: return {T(one_rule(), one, ax(A), a), P(bot_rule(ax(A)), A, bot)};
        case E::UnitPlusZero: return {W(top_rule({top, A}, 0), top, ax(A), a), P1(ax(A), A, zero)};
        case E::UnitWithTop: return {P2(zero, ax(A), a), W(ax(A), A, top_rule({top, a}, 0), top)};
        case E::CancelTensorZero:
            return {P(top_rule({top, a, zero}, 0), top, a), top_rule({top, F::tensor(A, zero)}, 0)};
        case E::CancelParTop:
            return {top_rule({F::tensor(zero, a), top}, 1), P(top_rule({zero, A, top}, 2), A, top)};
    }
    throw std::logic_error("unknown equation");
}

Proof swap2(const Proof& p) { return permute(p, {1, 0}); }

// pi : |- X^, Y where X sits at `at` in `before`; returns |- before^, after'
// where after' replaces X by Y.  Siblings come from `before`.
Proof lift(Proof pi, const Formula& before, const Path& at) {
    for (int k = static_cast<int>(at.size()) - 1; k >= 0; --k) {
        const Formula node = subformula(before, at.substr(0, k));
        const bool left = at[k] == 'L';
        const Formula S = left ? node.right() : node.left();
        const Formula Y = pi->conclusion[1];
        switch (node.kind()) {
            case Kind::Tensor:
                pi = left ? par_rule(tensor_rule(pi, 1, ax(S), 1), 2, 1) : par_rule(tensor_rule(ax(S), 1, pi, 1), 2, 1);
                break;
            case Kind::Par:
                pi = swap2(left ? par_rule(tensor_rule(ax(S), 0, pi, 0), 2, 1) : par_rule(tensor_rule(pi, 0, ax(S), 0), 2, 1));
                break;
            case Kind::Plus:
                pi = left ? with_rule(plus2_rule(Y, ax(S), 1), 1, plus1_rule(pi, 1, S), 1)
                          : with_rule(plus2_rule(S, pi, 1), 1, plus1_rule(ax(S), 1, Y), 1);
                break;
            case Kind::With: {
                const Formula Xd = pi->conclusion[0];
                pi = swap2(left ? with_rule(plus2_rule(dual(S), pi, 0), 1, plus1_rule(ax(S), 0, Xd), 1)
                                : with_rule(plus2_rule(Xd, ax(S), 0), 1, plus1_rule(pi, 0, dual(S)), 1));
                break;
            }
            default: throw std::logic_error("lift through a non-binary formula");
        }
    }
    return pi;
}

}  // namespace

std::pair<Proof, Proof> witness_equation(EquationId e, Direction d, const Instantiation& inst) {
    auto [lhs, rhs] = equation_sides(e, inst);
    auto [pi, pi2] = template_ltr(e);
    std::map<std::string, Formula> m;
    for (auto& [k, v] : inst) m.emplace("$" + k, v);
    pi = arrange(subst_proof(pi, m), {dual(lhs), rhs});
    pi2 = arrange(subst_proof(pi2, m), {dual(rhs), lhs});
    if (d == Direction::RightToLeft) std::swap(pi, pi2);
    return {pi, pi2};
}

std::pair<Proof, Proof> witness_derivation(const Derivation& d) {
    auto states = replay(d);
    if (d.steps.empty()) return {id_proof(d.source), id_proof(d.source)};
    Proof fwd, bwd;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        auto [w, w2] = witness_equation(s.equation, s.direction, s.inst);
        Proof f = lift(w, states[i], s.position);
        Proof g = lift(w2, states[i + 1], s.position);
        if (i == 0) {
            fwd = f;
            bwd = g;
        } else {
            fwd = cut_rule(fwd, 1, f, 0);
            bwd = cut_rule(g, 1, bwd, 0);
        }
    }
    return {fwd, bwd};
}

// ------------------------------------------------------------------ verification

const char* verdict_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Verified: return "Verified";
        case Verdict::Kind::Refuted: return "Refuted";
        default: return "Unknown";
    }
}

namespace {

std::string fresh_name(const std::set<std::string>& used, const std::string& base) {
    std::string n = base;
    for (int i = 0; used.count(n); ++i) n = base + std::to_string(i);
    return n;
}

Verdict verify_rec(const Formula& a, const Formula& b, const Proof& pi, const Proof& pi2, std::size_t budget,
                   std::vector<std::string>& log) {
    auto done = [&](Verdict::Kind k, std::string why) {
        Verdict v{k, std::move(why), log};
        return v;
    };
    Proof e = eta_normalize(pi), e2 = eta_normalize(pi2);
    log.push_back("eta-expanded: " + std::to_string(proof_size(e)) + " and " + std::to_string(proof_size(e2)) + " rules");

    if (is_unit_free(a) && is_unit_free(b)) {
        // units can survive inside cut formulas; cut-free proofs have none
        for (Proof* q : {&e, &e2})
            if (!proof_unit_free(*q)) *q = eta_normalize(normalize(*q));
        LinkingSet n = desequentialize(e), n2 = desequentialize(e2);
        auto check = [&](const LinkingSet& x, const LinkingSet& y, const Formula& over, const Formula& src) {
            LinkingSet c = compose_at(x, 1, y, 0);
            if (c.linkings.size() > budget) throw SizeCapExceeded("composition has too many linkings");
            LinkingSet r = normalize_net(c);
            bool ok = net_equal(r, identity_net(src));
            log.push_back("composed over " + print(over) + ": " + std::to_string(c.seq.cuts.size()) + " cut pairs, " +
                          std::to_string(c.linkings.size()) + " linkings -> " + std::to_string(r.linkings.size()) +
                          " linkings, " + (ok ? "identity" : "not the identity") + " on " + print(src));
            return ok;
        };
        if (!check(n, n2, b, a)) return done(Verdict::Kind::Refuted, "composition over b does not reduce to the identity on a");
        if (!check(n2, n, a, b)) return done(Verdict::Kind::Refuted, "composition over a does not reduce to the identity on b");
        return done(Verdict::Kind::Verified, "both compositions reduce to identity nets");
    }

    if (is_distributed(a) && is_distributed(b)) {
        Proof c = eta_normalize(normalize(e)), c2 = eta_normalize(normalize(e2));
        log.push_back("cut-free: " + std::to_string(proof_size(c)) + " and " + std::to_string(proof_size(c2)) + " rules");
        for (const Proof* q : {&c, &c2}) {
            auto rep = detect_patterns(*q);
            if (!rep.ok()) {
                auto off = rep.offending();
                std::string where = off.empty() ? "" : " at " + node_path_str(off.front());
                log.push_back("unit rule outside top/0 and 1/plus/bot patterns" + where);
                return done(Verdict::Kind::Refuted, "unit rules outside the patterns of isomorphisms" + where);
            }
        }
        c = make_patterns_adjacent(c);
        c2 = make_patterns_adjacent(c2);
        auto used = atom_names(a);
        for (auto& n : atom_names(b)) used.insert(n);
        std::string x = fresh_name(used, "u0");
        used.insert(x);
        std::string y = fresh_name(used, "u1");
        Formula a2 = substitute_units(a, x, y), b2 = substitute_units(b, x, y);
        log.push_back("units replaced by " + x + " and " + y + ": " + print(a2) + " vs " + print(b2));
        return verify_rec(a2, b2, substitute_units_proof(c, x, y), substitute_units_proof(c2, x, y), budget, log);
    }

    // Transfer to distributed forms through the derivation witnesses.
    auto da = d_derivation(a), db = d_derivation(b);
    auto [wa, wa2] = witness_derivation(da);
    auto [wb, wb2] = witness_derivation(db);
    Proof pd = cut_rule(cut_rule(wa2, 1, e, 0), 1, wb, 0);
    Proof pd2 = cut_rule(cut_rule(wb2, 1, e2, 0), 1, wa, 0);
    log.push_back("transferred to distributed forms " + print(da.target) + " vs " + print(db.target));
    return verify_rec(da.target, db.target, pd, pd2, budget, log);
}

}  // namespace

Verdict verify_iso(const Formula& a, const Formula& b, const Proof& pi, const Proof& pi2, std::size_t budget) {
    for (const Proof* p : {&pi, &pi2}) {
        auto v = check_proof(*p);
        if (!v.empty())
            throw IllFormedProof(node_path_str(v.front().node) + " (" + rule_name(v.front().rule) + "): " + v.front().message);
    }
    if (pi->conclusion != Sequent{dual(a), b})
        throw ConclusionMismatch("first proof concludes " + sequent_str(pi->conclusion) + ", expected " +
                                 sequent_str({dual(a), b}));
    if (pi2->conclusion != Sequent{dual(b), a})
        throw ConclusionMismatch("second proof concludes " + sequent_str(pi2->conclusion) + ", expected " +
                                 sequent_str({dual(b), a}));
    std::vector<std::string> log;
    try {
        return verify_rec(a, b, pi, pi2, budget, log);
    } catch (const SizeCapExceeded& ex) {
        log.push_back(ex.what());
        return Verdict{Verdict::Kind::Unknown, std::string("budget exhausted: ") + ex.what(), log};
    }
}

// ------------------------------------------------------------------ printing

std::string step_str(const DerivationStep& s) {
    std::ostringstream o;
    o << equation_symbol(s.equation) << (s.direction == Direction::LeftToRight ? " ->" : " <-") << " at '" << s.position
      << "'";
    for (auto& [k, v] : s.inst) o << " " << k << "=" << print(v);
    return o.str();
}

std::string derivation_str(const Derivation& d) {
    std::ostringstream o;
    auto states = replay(d);
    o << print(states[0]) << "\n";
    for (std::size_t i = 0; i < d.steps.size(); ++i) o << "  = " << print(states[i + 1]) << "   [" << step_str(d.steps[i]) << "]\n";
    return o.str();
}

}  // namespace mall
