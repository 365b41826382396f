#pragma once

#include "mall/sequent.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mall {

enum class BetaStepKind : std::uint8_t {
    KeyAx,
    KeyParTensor,
    KeyWithPlus1,
    KeyWithPlus2,
    KeyBotOne,
    CommParCut,
    CommTensorCut1,
    CommTensorCut2,
    CommWithCut,
    CommPlus1Cut,
    CommPlus2Cut,
    CommBotCut,
    CommTopCut,
    CommCutCut,
};
const char* beta_kind_name(BetaStepKind k);

struct BetaStep {
    NodePath at;        // the cut node
    BetaStepKind kind;
    int side = 0;       // cut premise carrying the axiom / the commuted rule / the & for key cases
};

// All steps at every cut, ordered by preorder index of the cut and kind.
std::vector<BetaStep> enumerate_beta(const Proof& p, bool include_cut_cut = false);
Proof apply_beta(const Proof& p, const BetaStep& s);

struct SliceFailure {
    NodePath at;
    std::string reason;
};
std::variant<Proof, SliceFailure> slice_cut_step(const Proof& s);

enum class Strategy { BetabarFirst, PatternPreserving };

struct ReductionRecord {
    NodePath at;
    BetaStepKind kind;
    std::vector<Mass> density_before;
    std::vector<Mass> density_after;
};

Proof normalize(const Proof& p, Strategy st = Strategy::BetabarFirst,
                std::vector<ReductionRecord>* log = nullptr);

// --- measure ------------------------------------------------------------------

Mass sequent_mass(const Sequent& s);
Mass cut_mass(const ProofNode& cut);

struct CutDensity {
    NodePath at;
    Mass mass;
    Mass density;
};
std::vector<CutDensity> cut_densities(const Proof& p);
// Multiset of cut densities, sorted decreasingly.
std::vector<Mass> density(const Proof& p);
// Dershowitz-Manna: a > b.
bool dm_greater(const std::vector<Mass>& a, const std::vector<Mass>& b);

// --- rule commutations ------------------------------------------------

enum class CommutationKind : std::uint8_t {
    ParPar, TensorTensor, WithWith, PlusPlus, ParTensor, ParWith, ParPlus, TensorWith, TensorPlus,
    WithPlus, ParTop, TensorTop, WithTop, PlusTop, TopTop, BotTop, ParBot, TensorBot, WithBot,
    PlusBot, BotBot,
};
const char* commutation_kind_name(CommutationKind k);

// Up: the lower rule moves above its premise (or is absorbed by a top rule).
// Down: the inverse (a rule shared by both & premises, or a top rule
// decomposing a context formula, moves below).
enum class CommDir : std::uint8_t { Up, Down };

enum class CommOp : std::uint8_t { PushUp, PullDown, TopExpand, TopSwitch };

struct Commutation {
    NodePath at;
    CommutationKind kind;
    CommDir dir;
    CommOp op;
    int arg = -1;      // premise index (PushUp) or context position (TopExpand/TopSwitch)
    int variant = 0;   // which plus injection for TopExpand on a plus formula; row variant otherwise
};

std::vector<Commutation> enumerate_commutations(const Proof& p);
Proof apply_commutation(const Proof& p, const Commutation& c);

// The top/tensor commutation that creates a sub-proof: the top rule at `at`
// with a tensor formula A1*A2 in its context at `pos` becomes a tensor whose
// premise k (1 or 2) is a top rule and whose other premise is `supplied`.
// `supplied` must conclude the other component first, then formulas of the
// top rule's context.
Proof apply_top_tensor_create(const Proof& p, const NodePath& at, int pos, int k, const Proof& supplied);

enum class EqcResult { Equal, NotProvedEqual };
struct EqcOutcome {
    EqcResult result;
    std::size_t states = 0;
};
EqcOutcome eqc_search(const Proof& p, const Proof& q, std::size_t budget = 100000);

// --- unit patterns ------------------------------------------------------------

struct PatternReport {
    struct TopEntry {
        NodePath at;
        bool pattern;
    };
    struct OneEntry {
        NodePath at;
        bool pattern;     // 1/plus/bot
        bool adjacent;    // plus sequence empty
        int plus_count;
    };
    struct BotEntry {
        NodePath at;
        bool pattern;
    };
    std::vector<TopEntry> tops;
    std::vector<OneEntry> ones;
    std::vector<BotEntry> bots;

    bool all_top_patterns() const;
    bool all_unit_patterns() const;  // ones and bots
    bool ok() const { return all_top_patterns() && all_unit_patterns(); }
    std::vector<NodePath> offending() const;
};

PatternReport detect_patterns(const Proof& p);
// Move every bot rule of a 1/plus/bot pattern up to its 1 rule.
Proof make_patterns_adjacent(const Proof& p);

}  // namespace mall
