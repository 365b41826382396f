#pragma once
// Hand-rolled random generators shared by the unit suites and the acceptance binary.

#include "mall/formula.hpp"

#include <random>
#include <string>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

struct FormulaOpts {
    std::vector<std::string> atoms{"X", "Y"};
    bool units = true;
    bool negatives = true;
    std::vector<mall::Kind> connectives{mall::Kind::Tensor, mall::Kind::Par, mall::Kind::With,
                                        mall::Kind::Plus};
};

inline mall::Formula leaf(Rng& rng, const FormulaOpts& o) {
    using mall::Formula;
    std::size_t n_atoms = o.atoms.size() * (o.negatives ? 2 : 1);
    std::size_t n = n_atoms + (o.units ? 4 : 0);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    if (k < n_atoms) {
        const auto& a = o.atoms[k % o.atoms.size()];
        return k < o.atoms.size() ? Formula::atom(a) : Formula::neg(a);
    }
    switch (k - n_atoms) {
        case 0: return Formula::one();
        case 1: return Formula::bot();
        case 2: return Formula::top();
        default: return Formula::zero();
    }
}

// Random formula with exactly `leaves` leaves (size 2*leaves-1).
inline mall::Formula formula_leaves(Rng& rng, int leaves, const FormulaOpts& o) {
    if (leaves <= 1) return leaf(rng, o);
    int l = std::uniform_int_distribution<int>(1, leaves - 1)(rng);
    auto k = o.connectives[std::uniform_int_distribution<std::size_t>(0, o.connectives.size() - 1)(rng)];
    return mall::Formula::binary(k, formula_leaves(rng, l, o), formula_leaves(rng, leaves - l, o));
}

// Random formula of size at most `max_size`.
inline mall::Formula formula(Rng& rng, int max_size, const FormulaOpts& o = {}) {
    int max_leaves = (max_size + 1) / 2;
    int leaves = std::uniform_int_distribution<int>(1, std::max(1, max_leaves))(rng);
    return formula_leaves(rng, leaves, o);
}

inline FormulaOpts unit_free(std::vector<std::string> atoms = {"X", "Y", "Z"}) {
    FormulaOpts o;
    o.atoms = std::move(atoms);
    o.units = false;
    return o;
}

// Every formula with exactly `leaves` leaves over the given options.
inline void all_formulas(int leaves, const FormulaOpts& o, std::vector<mall::Formula>& out) {
    using mall::Formula;
    if (leaves == 1) {
        for (auto& a : o.atoms) {
            out.push_back(Formula::atom(a));
            if (o.negatives) out.push_back(Formula::neg(a));
        }
        if (o.units)
            for (auto f : {Formula::one(), Formula::bot(), Formula::top(), Formula::zero()}) out.push_back(f);
        return;
    }
    for (int l = 1; l < leaves; ++l) {
        std::vector<Formula> ls, rs;
        all_formulas(l, o, ls);
        all_formulas(leaves - l, o, rs);
        for (auto k : o.connectives)
            for (auto& a : ls)
                for (auto& b : rs) out.push_back(Formula::binary(k, a, b));
    }
}

inline std::vector<mall::Formula> all_up_to_size(int max_size, const FormulaOpts& o) {
    std::vector<mall::Formula> out;
    for (int n = 1; 2 * n - 1 <= max_size; ++n) all_formulas(n, o, out);
    return out;
}

}  // namespace gen
