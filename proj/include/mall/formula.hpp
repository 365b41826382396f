#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mall {

enum class Kind : std::uint8_t { Atom, NegAtom, Tensor, Par, With, Plus, One, Bot, Top, Zero };

using Mass = boost::multiprecision::cpp_int;

// 'L' / 'R' steps from the root.
using Path = std::string;

class Formula {
public:
    Formula() = default;

    static Formula atom(std::string name);
    static Formula neg(std::string name);
    static Formula one();
    static Formula bot();
    static Formula top();
    static Formula zero();
    static Formula unit(Kind k);
    static Formula binary(Kind k, Formula l, Formula r);
    static Formula tensor(Formula l, Formula r) { return binary(Kind::Tensor, std::move(l), std::move(r)); }
    static Formula par(Formula l, Formula r) { return binary(Kind::Par, std::move(l), std::move(r)); }
    static Formula with(Formula l, Formula r) { return binary(Kind::With, std::move(l), std::move(r)); }
    static Formula plus(Formula l, Formula r) { return binary(Kind::Plus, std::move(l), std::move(r)); }

    bool valid() const { return n_ != nullptr; }
    Kind kind() const;
    const std::string& name() const;
    const Formula& left() const;
    const Formula& right() const;
    std::size_t size() const;
    std::size_t hash() const;

    bool is_atomic() const { return kind() == Kind::Atom || kind() == Kind::NegAtom; }
    bool is_unit() const;
    bool is_binary() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

    std::string str() const;

private:
    struct Node;
    std::shared_ptr<const Node> n_;
};

struct Formula::Node {
    Kind kind;
    std::string name;
    Formula l, r;
    std::size_t size = 1;
    std::size_t hash = 0;
};

inline Kind Formula::kind() const { return n_->kind; }
inline const std::string& Formula::name() const { return n_->name; }
inline const Formula& Formula::left() const { return n_->l; }
inline const Formula& Formula::right() const { return n_->r; }
inline std::size_t Formula::size() const { return n_->size; }
inline std::size_t Formula::hash() const { return n_->hash; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Structural total order (used for AC sorting and for std::map keys).
std::strong_ordering compare(const Formula& a, const Formula& b);
struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

const char* kind_name(Kind k);
bool is_multiplicative(Kind k);
bool is_additive(Kind k);
Kind dual_kind(Kind k);

Formula parse(std::string_view text);
std::string print(const Formula& f);

Formula dual(const Formula& f);
std::size_t size(const Formula& f);
Mass mass(const Formula& f);

bool is_unit_free(const Formula& f);
bool is_non_ambiguous(const Formula& f);
std::set<std::string> atom_names(const Formula& f);

Formula subformula(const Formula& f, const Path& p);
Formula replace_at(const Formula& f, const Path& p, const Formula& g);
bool valid_path(const Formula& f, const Path& p);

Formula substitute_units(const Formula& f, const std::string& x, const std::string& y);

// --- distributed form ---------------------------------------------------

enum class DRule : std::uint8_t {
    TensorPlusR,   // A*(B+C) -> (A*B)+(A*C)
    TensorPlusL,   // (A+B)*C -> (A*C)+(B*C)
    ParWithL,      // (C&B)|A -> (C|A)&(B|A)
    ParWithR,      // C|(B&A) -> (C|B)&(C|A)
    TensorOneR,    // A*1 -> A
    TensorOneL,
    ParBotR,
    ParBotL,
    PlusZeroR,
    PlusZeroL,
    WithTopR,
    WithTopL,
    TensorZeroR,   // A*0 -> 0
    TensorZeroL,
    ParTopR,       // A|top -> top
    ParTopL,
};
constexpr int kDRuleCount = 16;
const char* drule_name(DRule r);

struct RewriteStep {
    DRule rule;
    Path path;
    Formula before;
    Formula after;
};
using RewriteTrace = std::vector<RewriteStep>;

std::optional<Formula> apply_drule(DRule r, const Formula& f);
bool is_distributed(const Formula& f);
std::pair<Formula, RewriteTrace> d_normalize(const Formula& f);

// --- AC ------------------------------------------------------------------

// Order on canonical forms: connective tag, spine arity, then spine elements.
std::strong_ordering ac_compare(const Formula& a, const Formula& b);
Formula ac_canonical(const Formula& f);
// Maximal same-connective spine of f (f itself when f is not binary).
std::vector<Formula> spine(const Formula& f);

}  // namespace mall

template <>
struct std::hash<mall::Formula> {
    std::size_t operator()(const mall::Formula& f) const { return f.hash(); }
};
