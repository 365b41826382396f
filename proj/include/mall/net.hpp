#pragma once

#include "mall/sequent.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mall {

// A cut pair A * A^.  `tag` is bookkeeping carried to the pairs created by
// splitting this one; it plays no part in equality.
struct CutPair {
    Formula a;
    Formula b;
    int tag = 0;
};

struct CutSequent {
    std::vector<CutPair> cuts;
    Sequent conclusions;

    std::size_t tree_count() const { return cuts.size() + conclusions.size(); }
    bool is_cut(int tree) const { return tree < static_cast<int>(cuts.size()); }
    // Root formula of a tree (side selects the cut pair component).
    const Formula& root(int tree, int side) const;
};

// A vertex of the syntactic forest: trees are numbered cut pairs first, then
// conclusions; side is 0 or 1 inside a cut pair and 0 otherwise.
struct Addr {
    int tree = 0;
    int side = 0;
    Path path;
    auto operator<=>(const Addr&) const = default;
    bool operator==(const Addr&) const = default;
};
std::string addr_str(const Addr& a);

struct Link {
    Addr a, b;  // a < b
    auto operator<=>(const Link&) const = default;
    bool operator==(const Link&) const = default;
};
Link make_link(Addr x, Addr y);

using Linking = std::set<Link>;

struct LinkingSet {
    CutSequent seq;
    std::vector<Linking> linkings;  // sorted, no duplicates
    void normalize();
};

Formula formula_at(const CutSequent& s, const Addr& a);
bool is_leaf(const CutSequent& s, const Addr& a);
std::vector<Addr> leaves(const CutSequent& s);

// Kept vertices of the additive resolution determined by a linking.
std::set<Addr> additive_resolution(const CutSequent& s, const Linking& l);
std::set<Addr> toggled_withs(const LinkingSet& ls, const std::vector<int>& subset);
bool depends(const LinkingSet& ls, const Link& a, const Addr& w, const std::vector<int>& subset);

struct NetGraph {
    struct Vertex {
        Addr addr;
        bool star = false;  // cut pair vertex (addr.tree is the pair index)
    };
    enum class EdgeKind { Tree, Link, Jump };
    struct Edge {
        int u, v;  // for Tree: u child, v parent; for Jump: u leaf, v the & vertex
        EdgeKind kind;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    int index_of(const Addr& a) const;
    int star_of(int pair) const;
    std::size_t jump_count() const;
};
NetGraph build_graph(const LinkingSet& ls, const std::vector<int>& subset);

enum class Criterion { P0, P1, P2, P3 };
const char* criterion_name(Criterion c);

struct NetCheck {
    bool ok = true;
    Criterion failed = Criterion::P0;
    std::string witness;
};

struct NetCaps {
    int max_pars = 20;      // per linking, for the switching enumeration
    int max_linkings = 12;  // for the subset enumeration
};

NetCheck is_proof_net(const LinkingSet& ls, const NetCaps& caps = {});
// Throws InvalidLinking when a linking is not on an additive resolution.
void validate_linkings(const LinkingSet& ls);

LinkingSet identity_net(const Formula& a);
LinkingSet desequentialize(const Proof& p);
LinkingSet compose(const LinkingSet& theta, const LinkingSet& psi, const Formula& over);
// Cut on conclusion i of theta against conclusion j of psi.
LinkingSet compose_at(const LinkingSet& theta, int i, const LinkingSet& psi, int j);

LinkingSet eliminate_cut(const LinkingSet& ls, int pair);
LinkingSet normalize_net(const LinkingSet& ls);
bool matches(const LinkingSet& ls, const Linking& l);
LinkingSet turbo_eliminate(const LinkingSet& ls, int pair);
LinkingSet almost_reduced_composition(const LinkingSet& theta, const LinkingSet& psi, const Formula& over);

bool is_bipartite(const LinkingSet& ls);
bool is_full(const LinkingSet& ls);
bool is_ax_unique(const LinkingSet& ls);
std::vector<int> restrict_left(const LinkingSet& ls, const std::vector<int>& subset, const Addr& w);

// Terminal vertices that are sequentializing.  Cut pair vertices are reported
// with an empty path and side -1.
std::vector<Addr> find_sequentializing(const LinkingSet& ls);
Proof sequentialize(const LinkingSet& ls);

// Equality up to the order and orientation of cut pairs.
bool net_equal(const LinkingSet& x, const LinkingSet& y);
// Structural equality: same cut pair list, same conclusions, same linkings.
bool net_identical(const LinkingSet& x, const LinkingSet& y);

std::string net_str(const LinkingSet& ls);
std::string net_dot(const LinkingSet& ls);

}  // namespace mall
