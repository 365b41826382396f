#pragma once

#include "mall/formula.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mall {

// Objects of star-autonomous categories with finite products.  Coproducts
// (+, 0) are sugar and are expanded by the builders and the parser.
class CatFormula {
public:
    enum class Kind : std::uint8_t { Atom, Tensor, One, Lolli, Bot, With, Top };

    CatFormula() = default;
    static CatFormula atom(std::string name);
    static CatFormula one();
    static CatFormula bot();
    static CatFormula top();
    static CatFormula tensor(CatFormula l, CatFormula r);
    static CatFormula lolli(CatFormula l, CatFormula r);
    static CatFormula with(CatFormula l, CatFormula r);
    // ((F -o bot) & (G -o bot)) -o bot
    static CatFormula plus(const CatFormula& l, const CatFormula& r);
    // top -o bot
    static CatFormula zero();

    bool valid() const { return n_ != nullptr; }
    Kind kind() const;
    const std::string& name() const;
    const CatFormula& left() const;
    const CatFormula& right() const;
    bool is_binary() const;
    std::size_t size() const;

    friend bool operator==(const CatFormula& a, const CatFormula& b);
    friend bool operator!=(const CatFormula& a, const CatFormula& b) { return !(a == b); }

private:
    struct Node;
    static CatFormula make(Kind k, std::string name, CatFormula l, CatFormula r);
    std::shared_ptr<const Node> n_;
};

struct CatFormula::Node {
    Kind kind;
    std::string name;
    CatFormula l, r;
    std::size_t size = 1;
};

inline CatFormula::Kind CatFormula::kind() const { return n_->kind; }
inline const std::string& CatFormula::name() const { return n_->name; }
inline const CatFormula& CatFormula::left() const { return n_->l; }
inline const CatFormula& CatFormula::right() const { return n_->r; }
inline std::size_t CatFormula::size() const { return n_->size; }

// `-o` is right-associative and binds loosest; otherwise MALL syntax without
// `|`, `^` and `~`.
CatFormula parse_cat(std::string_view text);
std::string print_cat(const CatFormula& f);
bool is_bot_free(const CatFormula& f);

Formula cat_to_mall(const CatFormula& f);
CatFormula mall_to_cat(const Formula& a);

enum class Polarity { Output, Input, Neither };
const char* polarity_name(Polarity p);
Polarity classify(const Formula& a);
// Throws NotOutput.
CatFormula output_to_smcc(const Formula& a);

bool decide_iso_star(const CatFormula& f, const CatFormula& g);
// Throws LanguageViolation when an input contains bot (directly or through
// the coproduct sugar).
bool decide_iso_smcc(const CatFormula& f, const CatFormula& g);

struct CatEquation {
    std::string name;
    CatFormula lhs, rhs;
    bool smcc;  // belongs to the sub-theory without the double negation
};
// Every equation of the theory instantiated with f, g, h.
std::vector<CatEquation> cat_equations(const CatFormula& f, const CatFormula& g, const CatFormula& h);

}  // namespace mall
