#pragma once

#include "mall/sequent.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mall {

enum class EquationId : std::uint8_t {
    AssocTensor, AssocPar, AssocPlus, AssocWith,
    CommTensor, CommPar, CommPlus, CommWith,
    DistrTensorPlus, DistrParWith,
    UnitTensorOne, UnitParBot, UnitPlusZero, UnitWithTop,
    CancelTensorZero, CancelParTop,
};
constexpr int kEquationCount = 16;
const std::vector<EquationId>& all_equations();
// Stable ASCII tag ("assoc-tensor", ...) and the symbolic name ("assoc⊗", ...).
const char* equation_tag(EquationId e);
const char* equation_symbol(EquationId e);
std::optional<EquationId> equation_from_name(const std::string& s);
// Metavariables of the schema, among "A", "B", "C".
std::vector<std::string> equation_metavars(EquationId e);
bool is_ac(EquationId e);

enum class Direction : std::uint8_t { LeftToRight, RightToLeft };
Direction flip(Direction d);

using Instantiation = std::map<std::string, Formula>;

struct DerivationStep {
    EquationId equation;
    Direction direction = Direction::LeftToRight;
    Path position;
    Instantiation inst;
};

struct Derivation {
    Formula source;
    Formula target;
    std::vector<DerivationStep> steps;
};

// (lhs, rhs) of the instantiated schema.  Throws ReplayMismatch when a
// metavariable is missing.
std::pair<Formula, Formula> equation_sides(EquationId e, const Instantiation& inst);
// Instantiation making the source side (lhs for LeftToRight) equal to f.
std::optional<Instantiation> match_equation(EquationId e, Direction d, const Formula& f);

Formula apply_step(const Formula& f, const DerivationStep& s);
// Intermediate formulas, source first.  Throws ReplayMismatch.
std::vector<Formula> replay(const Derivation& d);
Derivation inverse(const Derivation& d);
Derivation concat(const Derivation& x, const Derivation& y);

// E-derivation of f to its distributed form, following the d_normalize trace.
Derivation d_derivation(const Formula& f);
std::optional<Derivation> ac_derivation(const Formula& a, const Formula& b);

struct IsoDecision {
    bool iso = false;
    std::optional<Derivation> derivation;
};
IsoDecision decide_iso(const Formula& a, const Formula& b);

// pi proves |- A^, B and pi2 proves |- B^, A for the instance A = B read in
// direction d (A is the source side).
std::pair<Proof, Proof> witness_equation(EquationId e, Direction d, const Instantiation& inst);
std::pair<Proof, Proof> witness_derivation(const Derivation& d);

struct Verdict {
    enum class Kind { Verified, Refuted, Unknown };
    Kind kind = Kind::Unknown;
    std::string reason;
    std::vector<std::string> log;
};
const char* verdict_name(Verdict::Kind k);

Verdict verify_iso(const Formula& a, const Formula& b, const Proof& pi, const Proof& pi2,
                   std::size_t budget = 100000);

std::string step_str(const DerivationStep& s);
std::string derivation_str(const Derivation& d);

}  // namespace mall
