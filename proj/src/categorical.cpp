#include "mall/categorical.hpp"

#include "mall/errors.hpp"
#include "mall/iso.hpp"

#include <cctype>

namespace mall {

using CK = CatFormula::Kind;

CatFormula CatFormula::make(Kind k, std::string name, CatFormula l, CatFormula r) {
    CatFormula f;
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->size = 1 + (l.valid() ? l.size() : 0) + (r.valid() ? r.size() : 0);
    n->l = std::move(l);
    n->r = std::move(r);
    f.n_ = std::move(n);
    return f;
}

CatFormula CatFormula::atom(std::string name) { return make(CK::Atom, std::move(name), {}, {}); }
CatFormula CatFormula::one() { return make(CK::One, "", {}, {}); }
CatFormula CatFormula::bot() { return make(CK::Bot, "", {}, {}); }
CatFormula CatFormula::top() { return make(CK::Top, "", {}, {}); }
CatFormula CatFormula::tensor(CatFormula l, CatFormula r) { return make(CK::Tensor, "", std::move(l), std::move(r)); }
CatFormula CatFormula::lolli(CatFormula l, CatFormula r) { return make(CK::Lolli, "", std::move(l), std::move(r)); }
CatFormula CatFormula::with(CatFormula l, CatFormula r) { return make(CK::With, "", std::move(l), std::move(r)); }

CatFormula CatFormula::plus(const CatFormula& l, const CatFormula& r) {
    return lolli(with(lolli(l, bot()), lolli(r, bot())), bot());
}
CatFormula CatFormula::zero() { return lolli(top(), bot()); }

bool CatFormula::is_binary() const {
    return kind() == CK::Tensor || kind() == CK::Lolli || kind() == CK::With;
}

bool operator==(const CatFormula& a, const CatFormula& b) {
    if (a.n_ == b.n_) return true;
    if (!a.valid() || !b.valid()) return false;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    if (a.kind() == CK::Atom) return a.name() == b.name();
    if (!a.is_binary()) return true;
    return a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------- parsing

namespace {

class CatParser {
public:
    explicit CatParser(std::string_view s) : s_(s) {}

    CatFormula run() {
        CatFormula f = lolli();
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
    bool at_lolli() {
        return peek() == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == 'o';
    }

    CatFormula lolli() {
        CatFormula f = sum();
        if (at_lolli()) {
            i_ += 2;
            return CatFormula::lolli(f, lolli());
        }
        if (peek() == '-') throw ParseError("expected '-o'", i_);
        return f;
    }

    CatFormula sum() {
        CatFormula f = tight();
        while (peek() == '+') {
            ++i_;
            f = CatFormula::plus(f, tight());
        }
        return f;
    }

    CatFormula tight() {
        CatFormula f = primary();
        char op = 0;
        while (peek() == '*' || peek() == '&') {
            char c = s_[i_];
            if (op && c != op) throw ParseError("mixed connectives need parentheses", i_);
            op = c;
            ++i_;
            CatFormula r = primary();
            f = c == '*' ? CatFormula::tensor(f, r) : CatFormula::with(f, r);
        }
        return f;
    }

    CatFormula primary() {
        char c = peek();
        if (c == '\0') throw ParseError("unexpected end of input", i_);
        if (c == '(') {
            ++i_;
            CatFormula f = lolli();
            if (peek() != ')') throw ParseError("expected ')'", i_);
            ++i_;
            return f;
        }
        if (c == '1') { ++i_; return CatFormula::one(); }
        if (c == '0') { ++i_; return CatFormula::zero(); }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string id(s_.substr(start, i_ - start));
            if (id == "bot") return CatFormula::bot();
            if (id == "top") return CatFormula::top();
            return CatFormula::atom(id);
        }
        if (c == '|' || c == '^' || c == '~')
            throw ParseError(std::string("'") + c + "' is not part of the categorical syntax", i_);
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
};

void print_rec(const CatFormula& f, std::string& out) {
    switch (f.kind()) {
        case CK::Atom: out += f.name(); return;
        case CK::One: out += '1'; return;
        case CK::Bot: out += "bot"; return;
        case CK::Top: out += "top"; return;
        default: break;
    }
    auto child = [&](const CatFormula& c, bool bare) {
        bool paren = c.is_binary() && !bare;
        if (paren) out += '(';
        print_rec(c, out);
        if (paren) out += ')';
    };
    if (f.kind() == CK::Lolli) {
        child(f.left(), false);
        out += " -o ";
        child(f.right(), f.right().kind() == CK::Lolli);
        return;
    }
    const char* op = f.kind() == CK::Tensor ? " * " : " & ";
    child(f.left(), f.left().kind() == f.kind());
    out += op;
    child(f.right(), false);
}

}  // namespace

CatFormula parse_cat(std::string_view text) { return CatParser(text).run(); }

std::string print_cat(const CatFormula& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

bool is_bot_free(const CatFormula& f) {
    if (f.kind() == CK::Bot) return false;
    if (!f.is_binary()) return true;
    return is_bot_free(f.left()) && is_bot_free(f.right());
}

// ---------------------------------------------------------------- translations

Formula cat_to_mall(const CatFormula& f) {
    switch (f.kind()) {
        case CK::Atom: return Formula::atom(f.name());
        case CK::One: return Formula::one();
        case CK::Bot: return Formula::bot();
        case CK::Top: return Formula::top();
        case CK::Tensor: return Formula::tensor(cat_to_mall(f.left()), cat_to_mall(f.right()));
        case CK::With: return Formula::with(cat_to_mall(f.left()), cat_to_mall(f.right()));
        case CK::Lolli: return Formula::par(dual(cat_to_mall(f.left())), cat_to_mall(f.right()));
    }
    return {};
}

namespace {
CatFormula neg(CatFormula f) { return CatFormula::lolli(std::move(f), CatFormula::bot()); }
}  // namespace

CatFormula mall_to_cat(const Formula& a) {
    switch (a.kind()) {
        case Kind::Atom: return CatFormula::atom(a.name());
        case Kind::NegAtom: return neg(CatFormula::atom(a.name()));
        case Kind::One: return CatFormula::one();
        case Kind::Bot: return CatFormula::bot();
        case Kind::Top: return CatFormula::top();
        case Kind::Zero: return CatFormula::zero();
        case Kind::Tensor: return CatFormula::tensor(mall_to_cat(a.left()), mall_to_cat(a.right()));
        case Kind::With: return CatFormula::with(mall_to_cat(a.left()), mall_to_cat(a.right()));
        case Kind::Par:
            return neg(CatFormula::tensor(neg(mall_to_cat(a.left())), neg(mall_to_cat(a.right()))));
        case Kind::Plus: return CatFormula::plus(mall_to_cat(a.left()), mall_to_cat(a.right()));
    }
    return {};
}

// ---------------------------------------------------------------- polarity

const char* polarity_name(Polarity p) {
    switch (p) {
        case Polarity::Output: return "output";
        case Polarity::Input: return "input";
        default: return "neither";
    }
}

Polarity classify(const Formula& a) {
    using P = Polarity;
    switch (a.kind()) {
        case Kind::Atom:
        case Kind::One:
        case Kind::Top: return P::Output;
        case Kind::NegAtom:
        case Kind::Bot:
        case Kind::Zero: return P::Input;
        default: break;
    }
    P l = classify(a.left()), r = classify(a.right());
    if (l == P::Neither || r == P::Neither) return P::Neither;
    switch (a.kind()) {
        case Kind::Tensor:
            if (l == P::Output && r == P::Output) return P::Output;
            if (l != r) return P::Input;
            return P::Neither;
        case Kind::Par:
            if (l == P::Input && r == P::Input) return P::Input;
            if (l != r) return P::Output;
            return P::Neither;
        case Kind::With: return l == P::Output && r == P::Output ? P::Output : P::Neither;
        case Kind::Plus: return l == P::Input && r == P::Input ? P::Input : P::Neither;
        default: return P::Neither;
    }
}

CatFormula output_to_smcc(const Formula& a) {
    auto fail = [&]() -> CatFormula { throw NotOutput(print(a) + " is not an output formula"); };
    switch (a.kind()) {
        case Kind::Atom: return CatFormula::atom(a.name());
        case Kind::One: return CatFormula::one();
        case Kind::Top: return CatFormula::top();
        case Kind::Tensor: return CatFormula::tensor(output_to_smcc(a.left()), output_to_smcc(a.right()));
        case Kind::With: return CatFormula::with(output_to_smcc(a.left()), output_to_smcc(a.right()));
        case Kind::Par: {
            if (classify(a) != Polarity::Output) return fail();
            bool input_left = classify(a.left()) == Polarity::Input;
            const Formula& in = input_left ? a.left() : a.right();
            const Formula& out = input_left ? a.right() : a.left();
            return CatFormula::lolli(output_to_smcc(dual(in)), output_to_smcc(out));
        }
        default: return fail();
    }
}

// ---------------------------------------------------------------- deciding

bool decide_iso_star(const CatFormula& f, const CatFormula& g) {
    return decide_iso(cat_to_mall(f), cat_to_mall(g)).iso;
}

bool decide_iso_smcc(const CatFormula& f, const CatFormula& g) {
    for (const CatFormula* h : {&f, &g})
        if (!is_bot_free(*h))
            throw LanguageViolation(print_cat(*h) +
                                    " uses bot (possibly through + or 0) outside the SMCC language");
    return decide_iso_star(f, g);
}

std::vector<CatEquation> cat_equations(const CatFormula& f, const CatFormula& g, const CatFormula& h) {
    using C = CatFormula;
    return {
        {"assoc-tensor", C::tensor(f, C::tensor(g, h)), C::tensor(C::tensor(f, g), h), true},
        {"comm-tensor", C::tensor(f, g), C::tensor(g, f), true},
        {"unit-tensor", C::tensor(f, C::one()), f, true},
        {"curry", C::lolli(C::tensor(f, g), h), C::lolli(f, C::lolli(g, h)), true},
        {"unit-lolli", C::lolli(C::one(), f), f, true},
        {"assoc-with", C::with(f, C::with(g, h)), C::with(C::with(f, g), h), true},
        {"comm-with", C::with(f, g), C::with(g, f), true},
        {"unit-with", C::with(f, C::top()), f, true},
        {"distr-lolli-with", C::lolli(f, C::with(g, h)), C::with(C::lolli(f, g), C::lolli(f, h)), true},
        {"lolli-top", C::lolli(f, C::top()), C::top(), true},
        {"double-neg", neg(neg(f)), f, false},
    };
}

}  // namespace mall
