#pragma once

#include "mall/formula.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mall {

using Sequent = std::vector<Formula>;

enum class Rule : std::uint8_t { Ax, Cut, Tensor, Par, One, Bot, With, Plus1, Plus2, Top };
const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

// Occurrence bookkeeping: maps[i][k] is the position in `conclusion` of
// position k of premise i; active formulas map to the principal position,
// cut formulas map to -1.  For Par the active formula at the lower premise
// position is the left subformula.  A With node with a single premise is a
// slice node and records which premise it kept (1 or 2).
struct ProofNode {
    Sequent conclusion;
    Rule rule = Rule::Ax;
    std::vector<int> principal;
    std::optional<Formula> cut_formula;  // formula in premise 0; premise 1 holds its dual
    std::vector<Proof> premises;
    std::vector<std::vector<int>> maps;
    int kept = 0;
};

// Address of a node: premise indices from the root.
using NodePath = std::vector<int>;

std::string node_path_str(const NodePath& p);

// --- builders -------------------------------------------------------------
// Each builder puts the principal formula first and keeps premise contexts in
// order (premise 0 then premise 1).

Proof make_node(Sequent c, Rule r, std::vector<int> principal, std::vector<Proof> prem,
                std::vector<std::vector<int>> maps, std::optional<Formula> cut = std::nullopt,
                int kept = 0);

Proof ax(const Formula& a);                       // |- a^, a
Proof ax_seq(const Formula& first, const Formula& second);  // |- first, second (mutually dual)
Proof one_rule();
Proof bot_rule(const Proof& p);
Proof top_rule(Sequent ctx, int k);               // ctx[k] must be top
Proof par_rule(const Proof& p, int i, int j);     // p[i] left, p[j] right
Proof tensor_rule(const Proof& p, int i, const Proof& q, int j);
Proof with_rule(const Proof& p, int i, const Proof& q, int j);
Proof plus1_rule(const Proof& p, int i, const Formula& b);
Proof plus2_rule(const Formula& a, const Proof& p, int i);
Proof cut_rule(const Proof& p, int i, const Proof& q, int j);
Proof with_slice(const Proof& p, int i, const Formula& other, int kept);

// perm[old] = new position.
Proof permute(const Proof& p, const std::vector<int>& perm);
// Reorder the root conclusion to `wanted` (matched formula by formula, first unused).
Proof arrange(const Proof& p, const Sequent& wanted);
int index_of(const Sequent& s, const Formula& f, int skip = -1);

// --- inspection -----------------------------------------------------------

struct Violation {
    NodePath node;
    Rule rule;
    std::string message;
};
std::vector<Violation> check_proof(const Proof& p);

Proof subproof(const Proof& p, const NodePath& at);
// Replace the node at `at` by q; q must have the same root conclusion (same order).
Proof replace_subproof(const Proof& p, const NodePath& at, const Proof& q);

// Positions in premise i that are active (map to principal) or cut (-1).
std::vector<int> active_positions(const ProofNode& n, int i);
// Position in premise i that maps to node position k, or -1.
int preimage(const ProofNode& n, int i, int k);

bool is_cut_free(const Proof& p);
bool is_eta_normal(const Proof& p);
bool proof_unit_free(const Proof& p);
std::size_t proof_size(const Proof& p);
std::size_t count_cuts(const Proof& p);
bool proof_equal(const Proof& p, const Proof& q);
// Key identifying a proof up to conclusion permutations and cut-branch symmetry.
std::string proof_key(const Proof& p);
std::string sequent_str(const Sequent& s);
std::string proof_str(const Proof& p, int indent = 0);

// Every node, preorder, with its path.
void for_each_node(const Proof& p, const std::function<void(const NodePath&, const Proof&)>& f);

// --- identity and axiom-expansion ----------------------------------------

bool is_positive(const Formula& f);
Proof eta_expand_once(const Proof& axnode);
std::vector<std::pair<NodePath, Proof>> eta_step(const Proof& p);
Proof eta_normalize(const Proof& p);
Proof id_proof(const Formula& a);

// --- slices -------------------------------------------------------------------

std::vector<Proof> slices(const Proof& p);
bool is_slice(const Proof& p);

// Substitute units by atoms in every sequent of a proof whose unit rules
// form only top/0 and adjacent 1/bot patterns.
Proof substitute_units_proof(const Proof& p, const std::string& x, const std::string& y);

}  // namespace mall
