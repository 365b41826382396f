#include "mall/formula.hpp"

#include "mall/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace mall {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::atom(std::string name) {
    Formula f;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->hash = mix(std::hash<std::string>{}(name), 1);
    n->name = std::move(name);
    f.n_ = std::move(n);
    return f;
}

Formula Formula::neg(std::string name) {
    Formula f;
    auto n = std::make_shared<Node>();
    n->kind = Kind::NegAtom;
    n->hash = mix(std::hash<std::string>{}(name), 2);
    n->name = std::move(name);
    f.n_ = std::move(n);
    return f;
}

Formula Formula::unit(Kind k) {
    // Units are shared singletons.
    static const auto make = [](Kind k) {
        Formula f;
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->hash = mix(0x51ed27, static_cast<std::size_t>(k));
        f.n_ = std::move(n);
        return f;
    };
    static const Formula one = make(Kind::One), bot = make(Kind::Bot), top = make(Kind::Top),
                         zero = make(Kind::Zero);
    switch (k) {
        case Kind::One: return one;
        case Kind::Bot: return bot;
        case Kind::Top: return top;
        case Kind::Zero: return zero;
        default: throw std::logic_error("not a unit");
    }
}

Formula Formula::one() { return unit(Kind::One); }
Formula Formula::bot() { return unit(Kind::Bot); }
Formula Formula::top() { return unit(Kind::Top); }
Formula Formula::zero() { return unit(Kind::Zero); }

Formula Formula::binary(Kind k, Formula l, Formula r) {
    Formula f;
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->size = 1 + l.size() + r.size();
    n->hash = mix(mix(static_cast<std::size_t>(k) * 7919, l.hash()), r.hash());
    n->l = std::move(l);
    n->r = std::move(r);
    f.n_ = std::move(n);
    return f;
}

bool Formula::is_unit() const {
    auto k = kind();
    return k == Kind::One || k == Kind::Bot || k == Kind::Top || k == Kind::Zero;
}

bool Formula::is_binary() const {
    auto k = kind();
    return k == Kind::Tensor || k == Kind::Par || k == Kind::With || k == Kind::Plus;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (!a.n_ || !b.n_) return false;
    if (a.n_->hash != b.n_->hash || a.n_->size != b.n_->size || a.kind() != b.kind()) return false;
    if (a.is_atomic()) return a.name() == b.name();
    if (a.is_binary()) return a.left() == b.left() && a.right() == b.right();
    return true;
}

std::string Formula::str() const { return print(*this); }

std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    if (a.is_atomic()) return a.name() <=> b.name();
    if (!a.is_binary()) return std::strong_ordering::equal;
    if (auto c = compare(a.left(), b.left()); c != 0) return c;
    return compare(a.right(), b.right());
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Atom: return "atom";
        case Kind::NegAtom: return "negatom";
        case Kind::Tensor: return "tensor";
        case Kind::Par: return "par";
        case Kind::With: return "with";
        case Kind::Plus: return "plus";
        case Kind::One: return "one";
        case Kind::Bot: return "bot";
        case Kind::Top: return "top";
        case Kind::Zero: return "zero";
    }
    return "?";
}

bool is_multiplicative(Kind k) { return k == Kind::Tensor || k == Kind::Par; }
bool is_additive(Kind k) { return k == Kind::With || k == Kind::Plus; }

Kind dual_kind(Kind k) {
    switch (k) {
        case Kind::Atom: return Kind::NegAtom;
        case Kind::NegAtom: return Kind::Atom;
        case Kind::Tensor: return Kind::Par;
        case Kind::Par: return Kind::Tensor;
        case Kind::With: return Kind::Plus;
        case Kind::Plus: return Kind::With;
        case Kind::One: return Kind::Bot;
        case Kind::Bot: return Kind::One;
        case Kind::Top: return Kind::Zero;
        case Kind::Zero: return Kind::Top;
    }
    return k;
}

// ---------------------------------------------------------------- printing

namespace {

const char* op_symbol(Kind k) {
    switch (k) {
        case Kind::Tensor: return " * ";
        case Kind::Par: return " | ";
        case Kind::With: return " & ";
        case Kind::Plus: return " + ";
        default: return "?";
    }
}

void print_rec(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Kind::Atom: out += f.name(); return;
        case Kind::NegAtom: out += f.name(); out += '^'; return;
        case Kind::One: out += '1'; return;
        case Kind::Bot: out += "bot"; return;
        case Kind::Top: out += "top"; return;
        case Kind::Zero: out += '0'; return;
        default: break;
    }
    out += '(';
    print_rec(f.left(), out);
    out += op_symbol(f.kind());
    print_rec(f.right(), out);
    out += ')';
}

}  // namespace

std::string print(const Formula& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Formula run() {
        Formula f = loose();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected trailing input", i_);
        return f;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    static bool loose_op(char c) { return c == '+' || c == '|'; }
    static bool tight_op(char c) { return c == '*' || c == '&'; }
    static Kind op_kind(char c) {
        switch (c) {
            case '*': return Kind::Tensor;
            case '&': return Kind::With;
            case '+': return Kind::Plus;
            default: return Kind::Par;
        }
    }

    Formula loose() {
        Formula f = tight();
        char op = 0;
        while (loose_op(peek())) {
            char c = s_[i_];
            if (op && c != op) throw ParseError("mixed connectives need parentheses", i_);
            op = c;
            ++i_;
            f = Formula::binary(op_kind(c), f, tight());
        }
        return f;
    }

    Formula tight() {
        Formula f = unary();
        char op = 0;
        while (tight_op(peek())) {
            char c = s_[i_];
            if (op && c != op) throw ParseError("mixed connectives need parentheses", i_);
            op = c;
            ++i_;
            f = Formula::binary(op_kind(c), f, unary());
        }
        return f;
    }

    Formula unary() {
        if (peek() == '~') {
            ++i_;
            return dual(unary());
        }
        Formula f = primary();
        while (peek() == '^') {
            ++i_;
            f = dual(f);
        }
        return f;
    }

    Formula primary() {
        char c = peek();
        if (c == '\0') throw ParseError("unexpected end of input", i_);
        if (c == '(') {
            ++i_;
            Formula f = loose();
            if (peek() != ')') throw ParseError("expected ')'", i_);
            ++i_;
            return f;
        }
        if (c == '1') { ++i_; return Formula::one(); }
        if (c == '0') { ++i_; return Formula::zero(); }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string id(s_.substr(start, i_ - start));
            if (id == "bot") return Formula::bot();
            if (id == "top") return Formula::top();
            return Formula::atom(id);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------- basics

Formula dual(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom: return Formula::neg(f.name());
        case Kind::NegAtom: return Formula::atom(f.name());
        case Kind::One: return Formula::bot();
        case Kind::Bot: return Formula::one();
        case Kind::Top: return Formula::zero();
        case Kind::Zero: return Formula::top();
        default: return Formula::binary(dual_kind(f.kind()), dual(f.right()), dual(f.left()));
    }
}

std::size_t size(const Formula& f) { return f.size(); }

Mass mass(const Formula& f) {
    if (!f.is_binary()) return 2;
    return (mass(f.left()) + 1) * (mass(f.right()) + 1);
}

bool is_unit_free(const Formula& f) {
    if (f.is_unit()) return false;
    if (f.is_binary()) return is_unit_free(f.left()) && is_unit_free(f.right());
    return true;
}

namespace {

void count_atoms(const Formula& f, std::map<std::string, int>& m) {
    if (f.is_atomic()) ++m[f.name()];
    else if (f.is_binary()) {
        count_atoms(f.left(), m);
        count_atoms(f.right(), m);
    }
}

}  // namespace

bool is_non_ambiguous(const Formula& f) {
    std::map<std::string, int> m;
    count_atoms(f, m);
    return std::all_of(m.begin(), m.end(), [](auto& kv) { return kv.second <= 1; });
}

std::set<std::string> atom_names(const Formula& f) {
    std::map<std::string, int> m;
    count_atoms(f, m);
    std::set<std::string> out;
    for (auto& [k, v] : m) out.insert(k);
    return out;
}

bool valid_path(const Formula& f, const Path& p) {
    Formula cur = f;
    for (char c : p) {
        if (!cur.is_binary() || (c != 'L' && c != 'R')) return false;
        cur = c == 'L' ? cur.left() : cur.right();
    }
    return true;
}

Formula subformula(const Formula& f, const Path& p) {
    Formula cur = f;
    for (char c : p) {
        if (!cur.is_binary()) throw std::out_of_range("path " + p + " leaves " + print(f));
        cur = c == 'L' ? cur.left() : cur.right();
    }
    return cur;
}

namespace {

Formula replace_rec(const Formula& f, const Path& p, std::size_t i, const Formula& g) {
    if (i == p.size()) return g;
    if (!f.is_binary()) throw std::out_of_range("path " + p + " invalid");
    if (p[i] == 'L') return Formula::binary(f.kind(), replace_rec(f.left(), p, i + 1, g), f.right());
    return Formula::binary(f.kind(), f.left(), replace_rec(f.right(), p, i + 1, g));
}

}  // namespace

Formula replace_at(const Formula& f, const Path& p, const Formula& g) { return replace_rec(f, p, 0, g); }

namespace {

Formula subst_rec(const Formula& f, const std::string& x, const std::string& y) {
    switch (f.kind()) {
        case Kind::Top: return Formula::neg(x);
        case Kind::Zero: return Formula::atom(x);
        case Kind::Bot: return Formula::neg(y);
        case Kind::One: return Formula::atom(y);
        case Kind::Atom:
        case Kind::NegAtom: return f;
        default:
            return Formula::binary(f.kind(), subst_rec(f.left(), x, y), subst_rec(f.right(), x, y));
    }
}

}  // namespace

Formula substitute_units(const Formula& f, const std::string& x, const std::string& y) {
    auto names = atom_names(f);
    if (names.count(x) || names.count(y) || x == y)
        throw FreshnessViolation("substitution atoms must be fresh and distinct");
    return subst_rec(f, x, y);
}

// ---------------------------------------------------------------- D system

const char* drule_name(DRule r) {
    static const char* names[] = {
        "tensor-plus-r", "tensor-plus-l", "par-with-l",    "par-with-r",
        "tensor-one-r",  "tensor-one-l",  "par-bot-r",     "par-bot-l",
        "plus-zero-r",   "plus-zero-l",   "with-top-r",    "with-top-l",
        "tensor-zero-r", "tensor-zero-l", "par-top-r",     "par-top-l",
    };
    return names[static_cast<int>(r)];
}

std::optional<Formula> apply_drule(DRule r, const Formula& f) {
    if (!f.is_binary()) return std::nullopt;
    const Kind k = f.kind();
    const Formula& a = f.left();
    const Formula& b = f.right();
    using F = Formula;
    switch (r) {
        case DRule::TensorPlusR:
            if (k == Kind::Tensor && b.kind() == Kind::Plus)
                return F::plus(F::tensor(a, b.left()), F::tensor(a, b.right()));
            break;
        case DRule::TensorPlusL:
            if (k == Kind::Tensor && a.kind() == Kind::Plus)
                return F::plus(F::tensor(a.left(), b), F::tensor(a.right(), b));
            break;
        case DRule::ParWithL:
            if (k == Kind::Par && a.kind() == Kind::With)
                return F::with(F::par(a.left(), b), F::par(a.right(), b));
            break;
        case DRule::ParWithR:
            if (k == Kind::Par && b.kind() == Kind::With)
                return F::with(F::par(a, b.left()), F::par(a, b.right()));
            break;
        case DRule::TensorOneR:
            if (k == Kind::Tensor && b.kind() == Kind::One) return a;
            break;
        case DRule::TensorOneL:
            if (k == Kind::Tensor && a.kind() == Kind::One) return b;
            break;
        case DRule::ParBotR:
            if (k == Kind::Par && b.kind() == Kind::Bot) return a;
            break;
        case DRule::ParBotL:
            if (k == Kind::Par && a.kind() == Kind::Bot) return b;
            break;
        case DRule::PlusZeroR:
            if (k == Kind::Plus && b.kind() == Kind::Zero) return a;
            break;
        case DRule::PlusZeroL:
            if (k == Kind::Plus && a.kind() == Kind::Zero) return b;
            break;
        case DRule::WithTopR:
            if (k == Kind::With && b.kind() == Kind::Top) return a;
            break;
        case DRule::WithTopL:
            if (k == Kind::With && a.kind() == Kind::Top) return b;
            break;
        case DRule::TensorZeroR:
            if (k == Kind::Tensor && b.kind() == Kind::Zero) return F::zero();
            break;
        case DRule::TensorZeroL:
            if (k == Kind::Tensor && a.kind() == Kind::Zero) return F::zero();
            break;
        case DRule::ParTopR:
            if (k == Kind::Par && b.kind() == Kind::Top) return F::top();
            break;
        case DRule::ParTopL:
            if (k == Kind::Par && a.kind() == Kind::Top) return F::top();
            break;
    }
    return std::nullopt;
}

namespace {

std::optional<std::pair<DRule, Formula>> redex_at(const Formula& f) {
    for (int i = 0; i < kDRuleCount; ++i) {
        auto r = static_cast<DRule>(i);
        if (auto g = apply_drule(r, f)) return std::make_pair(r, *g);
    }
    return std::nullopt;
}

// Leftmost-innermost: first redex in post-order.
bool find_redex(const Formula& f, Path& path, DRule& rule, Formula& result) {
    if (f.is_binary()) {
        path.push_back('L');
        if (find_redex(f.left(), path, rule, result)) return true;
        path.back() = 'R';
        if (find_redex(f.right(), path, rule, result)) return true;
        path.pop_back();
    }
    if (auto r = redex_at(f)) {
        rule = r->first;
        result = r->second;
        return true;
    }
    return false;
}

}  // namespace

bool is_distributed(const Formula& f) {
    if (!f.is_binary()) return true;
    if (redex_at(f)) return false;
    return is_distributed(f.left()) && is_distributed(f.right());
}

std::pair<Formula, RewriteTrace> d_normalize(const Formula& f) {
    RewriteTrace trace;
    Formula cur = f;
    for (;;) {
        Path p;
        DRule rule{};
        Formula res;
        if (!find_redex(cur, p, rule, res)) break;
        Formula next = replace_at(cur, p, res);
        trace.push_back({rule, p, cur, next});
        cur = next;
    }
    return {cur, trace};
}

// ---------------------------------------------------------------- AC

std::vector<Formula> spine(const Formula& f) {
    std::vector<Formula> out;
    if (!f.is_binary()) {
        out.push_back(f);
        return out;
    }
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (g.kind() == f.kind()) {
            go(g.left());
            go(g.right());
        } else {
            out.push_back(g);
        }
    };
    go(f);
    return out;
}

std::strong_ordering ac_compare(const Formula& a, const Formula& b) {
    if (a.is_atomic() && b.is_atomic()) {
        if (auto c = a.name() <=> b.name(); c != 0) return c;
        return a.kind() <=> b.kind();
    }
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    if (!a.is_binary()) return std::strong_ordering::equal;
    auto sa = spine(a), sb = spine(b);
    if (sa.size() != sb.size()) return sa.size() <=> sb.size();
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (auto c = ac_compare(sa[i], sb[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

Formula ac_canonical(const Formula& f) {
    if (!f.is_binary()) return f;
    auto args = spine(f);
    for (auto& a : args) a = ac_canonical(a);
    std::stable_sort(args.begin(), args.end(),
                     [](const Formula& x, const Formula& y) { return ac_compare(x, y) < 0; });
    Formula acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = Formula::binary(f.kind(), acc, args[i]);
    return acc;
}

}  // namespace mall
