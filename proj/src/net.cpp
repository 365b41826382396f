#include "mall/net.hpp"

#include "mall/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace mall {

const Formula& CutSequent::root(int tree, int side) const {
    if (tree < 0 || tree >= static_cast<int>(tree_count())) throw InvalidLinking("tree index out of range");
    if (is_cut(tree)) return side == 0 ? cuts[tree].a : cuts[tree].b;
    return conclusions[tree - cuts.size()];
}

std::string addr_str(const Addr& a) {
    std::ostringstream o;
    if (a.side < 0) o << "*" << a.tree;
    else o << a.tree << "." << a.side << ":" << (a.path.empty() ? "e" : a.path);
    return o.str();
}

Link make_link(Addr x, Addr y) {
    if (y < x) std::swap(x, y);
    return Link{std::move(x), std::move(y)};
}

void LinkingSet::normalize() {
    std::sort(linkings.begin(), linkings.end());
    linkings.erase(std::unique(linkings.begin(), linkings.end()), linkings.end());
}

Formula formula_at(const CutSequent& s, const Addr& a) {
    const Formula& r = s.root(a.tree, a.side);
    if (!valid_path(r, a.path)) throw InvalidLinking("bad path " + addr_str(a));
    return subformula(r, a.path);
}

bool is_leaf(const CutSequent& s, const Addr& a) { return formula_at(s, a).is_atomic(); }

namespace {

int ncuts(const CutSequent& s) { return static_cast<int>(s.cuts.size()); }
Addr star(int pair) { return Addr{pair, -1, ""}; }
bool is_star(const Addr& a) { return a.side < 0; }
Addr child(const Addr& a, char c) { return Addr{a.tree, a.side, a.path + c}; }
Addr parent(const Addr& a) { return Addr{a.tree, a.side, a.path.substr(0, a.path.size() - 1)}; }

void collect(const Formula& f, int tree, int side, const Path& p, std::vector<Addr>& out) {
    if (f.is_atomic()) {
        out.push_back(Addr{tree, side, p});
        return;
    }
    if (!f.is_binary()) return;
    collect(f.left(), tree, side, p + 'L', out);
    collect(f.right(), tree, side, p + 'R', out);
}

bool complementary(const Formula& a, const Formula& b) {
    if (!a.is_atomic() || !b.is_atomic()) return false;
    return a.kind() != b.kind() && a.name() == b.name();
}

Kind kind_at(const CutSequent& s, const Addr& a) { return formula_at(s, a).kind(); }

Path mirror(const Path& p) {
    Path q = p;
    for (char& c : q) c = c == 'L' ? 'R' : 'L';
    return q;
}

// Per-linking data shared by the checks.
struct Ctx {
    const LinkingSet& ls;
    std::vector<std::set<Addr>> res;
    std::vector<std::map<Addr, char>> choice;  // & vertex -> kept premise

    explicit Ctx(const LinkingSet& l) : ls(l) {
        for (auto& lam : ls.linkings) {
            res.push_back(additive_resolution(ls.seq, lam));
            std::map<Addr, char> ch;
            for (auto& v : res.back()) {
                if (kind_at(ls.seq, v) != Kind::With) continue;
                ch[v] = res.back().count(child(v, 'L')) ? 'L' : 'R';
            }
            choice.push_back(std::move(ch));
        }
    }

    std::set<Addr> toggled2(int i, int j) const {
        std::set<Addr> t;
        for (auto& [w, c] : choice[i]) {
            auto it = choice[j].find(w);
            if (it != choice[j].end() && it->second != c) t.insert(w);
        }
        return t;
    }

    std::set<Addr> toggled(const std::vector<int>& sub) const {
        std::map<Addr, char> seen;
        std::set<Addr> t;
        for (int i : sub)
            for (auto& [w, c] : choice[i]) {
                auto [it, fresh] = seen.emplace(w, c);
                if (!fresh && it->second != c) t.insert(w);
            }
        return t;
    }

    bool depends(const Link& a, const Addr& w, const std::vector<int>& sub) const {
        for (int i : sub) {
            if (!ls.linkings[i].count(a)) continue;
            for (int j : sub) {
                if (ls.linkings[j].count(a)) continue;
                auto t = toggled2(i, j);
                if (t.size() == 1 && *t.begin() == w) return true;
            }
        }
        return false;
    }
};

// Internal graph with adjacency.
struct Graph {
    std::vector<Addr> verts;
    std::map<Addr, int> idx;
    std::vector<NetGraph::Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, edge)
    std::vector<Kind> kinds;                             // Kind of each vertex (Top for stars)

    int add_vertex(const Addr& a, Kind k) {
        auto [it, fresh] = idx.emplace(a, static_cast<int>(verts.size()));
        if (fresh) {
            verts.push_back(a);
            adj.emplace_back();
            kinds.push_back(k);
        }
        return it->second;
    }
    void add_edge(int u, int v, NetGraph::EdgeKind k) {
        int e = static_cast<int>(edges.size());
        edges.push_back({u, v, k});
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    bool negative(int v) const {
        return !is_star(verts[v]) && (kinds[v] == Kind::Par || kinds[v] == Kind::With);
    }
    bool in_edge(int e, int v) const {
        auto& ed = edges[e];
        return ed.v == v && (ed.kind == NetGraph::EdgeKind::Tree || ed.kind == NetGraph::EdgeKind::Jump);
    }
    bool out_edge(int e, int v) const {
        auto& ed = edges[e];
        return ed.u == v && ed.kind == NetGraph::EdgeKind::Tree;
    }
};

Graph make_graph(const Ctx& c, const std::vector<int>& sub, bool jumps) {
    const CutSequent& s = c.ls.seq;
    Graph g;
    std::set<Addr> verts;
    for (int i : sub) verts.insert(c.res[i].begin(), c.res[i].end());
    for (auto& v : verts) g.add_vertex(v, kind_at(s, v));
    for (int p = 0; p < ncuts(s); ++p)
        if (verts.count(Addr{p, 0, ""})) g.add_vertex(star(p), Kind::Top);
    for (auto& v : verts) {
        int u = g.idx.at(v);
        if (!v.path.empty()) g.add_edge(u, g.idx.at(parent(v)), NetGraph::EdgeKind::Tree);
        else if (s.is_cut(v.tree)) g.add_edge(u, g.idx.at(star(v.tree)), NetGraph::EdgeKind::Tree);
    }
    std::set<Link> links;
    for (int i : sub) links.insert(c.ls.linkings[i].begin(), c.ls.linkings[i].end());
    for (auto& l : links) g.add_edge(g.idx.at(l.a), g.idx.at(l.b), NetGraph::EdgeKind::Link);
    if (!jumps || sub.size() < 2) return g;
    std::set<std::pair<Addr, Addr>> js;
    for (int i : sub)
        for (auto& a : c.ls.linkings[i])
            for (int j : sub) {
                if (c.ls.linkings[j].count(a)) continue;
                auto t = c.toggled2(i, j);
                if (t.size() != 1) continue;
                const Addr& w = *t.begin();
                // a jump from a premise leaf of W runs parallel to the tree edge; it adds nothing
                for (const Addr* l : {&a.a, &a.b})
                    if (!(l->tree == w.tree && l->side == w.side && l->path.size() == w.path.size() + 1 &&
                          l->path.compare(0, w.path.size(), w.path) == 0))
                        js.insert({*l, w});
            }
    for (auto& [l, w] : js) g.add_edge(g.idx.at(l), g.idx.at(w), NetGraph::EdgeKind::Jump);
    return g;
}

NetGraph to_public(const Graph& g) {
    NetGraph n;
    for (auto& v : g.verts) n.vertices.push_back({v, is_star(v)});
    n.edges = g.edges;
    return n;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

// Is W on a cycle using at most one switch edge of each negative vertex?
bool on_switching_cycle(const Graph& g, int w, long& budget) {
    int e0 = -1;
    for (auto [n, e] : g.adj[w])
        if (g.out_edge(e, w)) e0 = e;
    if (e0 < 0) return false;  // a conclusion root
    int start = g.edges[e0].v;
    std::vector<char> visited(g.verts.size(), 0);
    visited[w] = visited[start] = 1;
    std::function<bool(int, int)> dfs = [&](int v, int via) -> bool {
        bool forced_out = g.negative(v) && g.in_edge(via, v);
        for (auto [n, e] : g.adj[v]) {
            if (e == via) continue;
            if (forced_out && !g.out_edge(e, v)) continue;
            if (n == w) {
                if (e != e0) return true;
                continue;
            }
            if (visited[n]) continue;
            if (--budget < 0) throw SizeCapExceeded("switching cycle search exceeded its step budget");
            visited[n] = 1;
            if (dfs(n, e)) return true;
            visited[n] = 0;
        }
        return false;
    };
    return dfs(start, e0);
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Rebuild linkings over a new cut sequent; links touching an address mapped
// to nullopt are dropped.
LinkingSet remap(const std::vector<Linking>& src, CutSequent seq,
                 const std::function<std::optional<Addr>(const Addr&)>& f) {
    LinkingSet out;
    out.seq = std::move(seq);
    for (auto& lam : src) {
        Linking l;
        for (auto& a : lam) {
            auto x = f(a.a), y = f(a.b);
            if (x && y) l.insert(make_link(*x, *y));
        }
        out.linkings.push_back(std::move(l));
    }
    out.normalize();
    return out;
}

void retag(LinkingSet& ls) {
    for (std::size_t k = 0; k < ls.seq.cuts.size(); ++k) ls.seq.cuts[k].tag = static_cast<int>(k);
}

void check_unit_free(const Formula& f) {
    if (!is_unit_free(f)) throw UnitsPresent("formula contains units: " + print(f));
}

// Delete pair k and shift later trees down.
std::optional<Addr> drop_pair(const Addr& a, int k) {
    if (a.tree == k) return std::nullopt;
    Addr b = a;
    if (b.tree > k) --b.tree;
    return b;
}

// Remove cut pairs with no leaf in any linking.
LinkingSet garbage_collect(const LinkingSet& ls) {
    std::set<int> used;
    for (auto& lam : ls.linkings)
        for (auto& a : lam) {
            used.insert(a.a.tree);
            used.insert(a.b.tree);
        }
    std::vector<int> newidx(ls.seq.tree_count(), -1);
    CutSequent s;
    for (int p = 0; p < ncuts(ls.seq); ++p)
        if (used.count(p)) {
            newidx[p] = ncuts(s);
            s.cuts.push_back(ls.seq.cuts[p]);
        }
    if (s.cuts.size() == ls.seq.cuts.size()) return ls;
    s.conclusions = ls.seq.conclusions;
    for (std::size_t k = 0; k < s.conclusions.size(); ++k) newidx[ncuts(ls.seq) + k] = ncuts(s) + static_cast<int>(k);
    return remap(ls.linkings, s, [&](const Addr& a) -> std::optional<Addr> {
        return Addr{newidx[a.tree], a.side, a.path};
    });
}

}  // namespace

std::vector<Addr> leaves(const CutSequent& s) {
    std::vector<Addr> out;
    for (int t = 0; t < static_cast<int>(s.tree_count()); ++t)
        for (int side = 0; side < (s.is_cut(t) ? 2 : 1); ++side) collect(s.root(t, side), t, side, "", out);
    return out;
}

std::set<Addr> additive_resolution(const CutSequent& s, const Linking& l) {
    std::set<Addr> used;
    for (auto& link : l) {
        for (const Addr* a : {&link.a, &link.b}) {
            if (a->tree < 0 || a->tree >= static_cast<int>(s.tree_count()) || a->side < 0 ||
                a->side > (s.is_cut(a->tree) ? 1 : 0))
                throw InvalidLinking("address out of range: " + addr_str(*a));
            if (!formula_at(s, *a).is_atomic()) throw InvalidLinking("link endpoint is not a leaf: " + addr_str(*a));
            if (!used.insert(*a).second) throw InvalidLinking("links share a leaf: " + addr_str(*a));
        }
        if (!complementary(formula_at(s, link.a), formula_at(s, link.b)))
            throw InvalidLinking("link between non-complementary leaves " + addr_str(link.a) + " " + addr_str(link.b));
    }
    std::set<Addr> kept;
    for (auto& a : used)
        for (std::size_t k = 0; k <= a.path.size(); ++k) kept.insert(Addr{a.tree, a.side, a.path.substr(0, k)});
    for (std::size_t k = 0; k < s.conclusions.size(); ++k)
        if (!kept.count(Addr{ncuts(s) + static_cast<int>(k), 0, ""}))
            throw InvalidLinking("conclusion " + std::to_string(k) + " has no leaf in the linking");
    for (int p = 0; p < ncuts(s); ++p)
        if (kept.count(Addr{p, 0, ""}) != kept.count(Addr{p, 1, ""}))
            throw InvalidLinking("cut pair " + std::to_string(p) + " used on one side only");
    for (auto& v : kept) {
        Formula f = formula_at(s, v);
        if (!f.is_binary()) continue;
        int n = static_cast<int>(kept.count(child(v, 'L')) + kept.count(child(v, 'R')));
        bool mult = f.kind() == Kind::Tensor || f.kind() == Kind::Par;
        if (mult && n != 2) throw InvalidLinking("multiplicative vertex missing a premise at " + addr_str(v));
        if (!mult && n != 1) throw InvalidLinking("additive vertex must keep exactly one premise at " + addr_str(v));
    }
    return kept;
}

std::set<Addr> toggled_withs(const LinkingSet& ls, const std::vector<int>& subset) {
    return Ctx(ls).toggled(subset);
}

bool depends(const LinkingSet& ls, const Link& a, const Addr& w, const std::vector<int>& subset) {
    return Ctx(ls).depends(a, w, subset);
}

int NetGraph::index_of(const Addr& a) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (!vertices[k].star && vertices[k].addr == a) return static_cast<int>(k);
    return -1;
}

int NetGraph::star_of(int pair) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k].star && vertices[k].addr.tree == pair) return static_cast<int>(k);
    return -1;
}

std::size_t NetGraph::jump_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.kind == EdgeKind::Jump; }));
}

NetGraph build_graph(const LinkingSet& ls, const std::vector<int>& subset) {
    Ctx c(ls);
    return to_public(make_graph(c, subset, true));
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::P0: return "P0";
        case Criterion::P1: return "P1";
        case Criterion::P2: return "P2";
        case Criterion::P3: return "P3";
    }
    return "?";
}

void validate_linkings(const LinkingSet& ls) {
    for (auto& s : ls.seq.cuts)
        if (dual(s.a) != s.b) throw InvalidLinking("cut pair components are not dual");
    for (auto& l : ls.linkings) additive_resolution(ls.seq, l);
}

NetCheck is_proof_net(const LinkingSet& ls, const NetCaps& caps) {
    validate_linkings(ls);
    const CutSequent& s = ls.seq;
    Ctx c(ls);
    auto fail = [](Criterion k, std::string w) { return NetCheck{false, k, std::move(w)}; };

    // P0
    for (int p = 0; p < ncuts(s); ++p) {
        bool hit = false;
        for (auto& r : c.res) hit = hit || r.count(Addr{p, 0, ""});
        if (!hit) return fail(Criterion::P0, "cut pair " + std::to_string(p) + " has no leaf");
    }

    // P1: walk the &-resolutions in preorder, pruning on the candidate linkings
    std::vector<Addr> withs;
    for (int t = 0; t < static_cast<int>(s.tree_count()); ++t)
        for (int side = 0; side < (s.is_cut(t) ? 2 : 1); ++side) {
            std::function<void(const Formula&, const Path&)> walk = [&](const Formula& f, const Path& p) {
                if (!f.is_binary()) return;
                if (f.kind() == Kind::With) withs.push_back(Addr{t, side, p});
                walk(f.left(), p + 'L');
                walk(f.right(), p + 'R');
            };
            walk(s.root(t, side), "");
        }
    std::sort(withs.begin(), withs.end());
    long resolutions = 0;
    std::string p1_witness;
    std::map<Addr, char> chosen;
    std::function<bool(std::size_t, std::vector<int>)> enumerate = [&](std::size_t k, std::vector<int> cand) -> bool {
        while (k < withs.size()) {
            // skip & vertices deleted by an earlier choice
            const Addr& w = withs[k];
            bool deleted = false;
            for (auto& [u, ch] : chosen)
                if (u.tree == w.tree && u.side == w.side && w.path.size() > u.path.size() &&
                    w.path.compare(0, u.path.size(), u.path) == 0 && w.path[u.path.size()] != ch)
                    deleted = true;
            if (!deleted) break;
            ++k;
        }
        if (k == withs.size()) {
            if (++resolutions > (1L << 20)) throw SizeCapExceeded("too many &-resolutions");
            if (cand.size() != 1) {
                std::ostringstream o;
                o << cand.size() << " linkings on the &-resolution {";
                for (auto& [u, ch] : chosen) o << " " << addr_str(u) << "=" << ch;
                o << " }";
                p1_witness = o.str();
                return false;
            }
            return true;
        }
        const Addr& w = withs[k];
        for (char ch : {'L', 'R'}) {
            std::vector<int> next;
            for (int i : cand) {
                auto it = c.choice[i].find(w);
                if (it == c.choice[i].end() || it->second == ch) next.push_back(i);
            }
            chosen[w] = ch;
            bool ok = enumerate(k + 1, next);
            chosen.erase(w);
            if (!ok) return false;
        }
        return true;
    };
    if (!enumerate(0, all_indices(ls.linkings.size()))) return fail(Criterion::P1, p1_witness);

    // P2
    for (std::size_t i = 0; i < ls.linkings.size(); ++i) {
        Graph g = make_graph(c, {static_cast<int>(i)}, false);
        std::vector<std::pair<int, int>> pars;  // premise edges of each par
        for (std::size_t v = 0; v < g.verts.size(); ++v) {
            if (is_star(g.verts[v]) || g.kinds[v] != Kind::Par) continue;
            std::vector<int> prem;
            for (auto [n, e] : g.adj[v])
                if (g.in_edge(e, static_cast<int>(v))) prem.push_back(e);
            pars.push_back({prem.at(0), prem.at(1)});
        }
        if (static_cast<int>(pars.size()) > caps.max_pars)
            throw SizeCapExceeded("too many par vertices for the switching check: " + std::to_string(pars.size()));
        std::string wit = "linking " + std::to_string(i);
        if (g.edges.size() - pars.size() + 1 != g.verts.size()) return fail(Criterion::P2, wit + ": wrong edge count");
        std::vector<char> off(g.edges.size(), 0);
        for (unsigned long mask = 0; mask < (1UL << pars.size()); ++mask) {
            std::fill(off.begin(), off.end(), 0);
            for (std::size_t b = 0; b < pars.size(); ++b) off[(mask >> b) & 1 ? pars[b].second : pars[b].first] = 1;
            UnionFind uf(static_cast<int>(g.verts.size()));
            for (std::size_t e = 0; e < g.edges.size(); ++e)
                if (!off[e] && !uf.unite(g.edges[e].u, g.edges[e].v))
                    return fail(Criterion::P2, wit + ": cycle under switching " + std::to_string(mask));
        }
    }

    // P3
    std::size_t n = ls.linkings.size();
    if (n >= 2) {
        if (static_cast<int>(n) > caps.max_linkings)
            throw SizeCapExceeded("too many linkings for the toggling check: " + std::to_string(n));
        long budget = 20'000'000;
        for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<int> sub;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1) sub.push_back(static_cast<int>(i));
            auto t = c.toggled(sub);
            bool good = false;
            for (auto& w : t)
                if (w.path.empty() && !s.is_cut(w.tree)) good = true;
            if (!good && !t.empty()) {
                Graph g = make_graph(c, sub, true);
                for (auto& w : t)
                    if (!on_switching_cycle(g, g.idx.at(w), budget)) {
                        good = true;
                        break;
                    }
            }
            if (!good) {
                std::ostringstream o;
                o << "linkings {";
                for (int i : sub) o << " " << i;
                o << " } toggle " << (t.empty() ? "no &-vertex" : "only &-vertices on switching cycles");
                return fail(Criterion::P3, o.str());
            }
        }
    }
    return {};
}

// ------------------------------------------------------------- desequentialization

namespace {

// Linking sets are products over tensors and cuts; past this they no longer fit in memory.
constexpr std::size_t kMaxLinkings = std::size_t{1} << 16;
void check_linking_count(std::size_t n) {
    if (n > kMaxLinkings) throw SizeCapExceeded("linking set would have " + std::to_string(n) + " linkings");
}

LinkingSet deseq(const Proof& p) {
    const ProofNode& n = *p;
    for (auto& f : n.conclusion) check_unit_free(f);
    if (n.rule == Rule::One || n.rule == Rule::Bot || n.rule == Rule::Top)
        throw UnitsPresent(std::string("unit rule ") + rule_name(n.rule));
    if (n.rule == Rule::Ax) {
        if (!n.conclusion[0].is_atomic()) throw NonAtomicAxiom("axiom on " + print(n.conclusion[0]));
        LinkingSet out;
        out.seq.conclusions = n.conclusion;
        out.linkings = {Linking{make_link(Addr{0, 0, ""}, Addr{1, 0, ""})}};
        return out;
    }
    std::vector<LinkingSet> sub;
    for (auto& q : n.premises) sub.push_back(deseq(q));

    LinkingSet out;
    out.seq.conclusions = n.conclusion;
    std::vector<int> offset;
    for (auto& s : sub) {
        offset.push_back(ncuts(out.seq));
        for (auto& c : s.seq.cuts) out.seq.cuts.push_back(c);
    }
    int newpair = -1;
    if (n.rule == Rule::Cut) {
        newpair = ncuts(out.seq);
        out.seq.cuts.push_back(CutPair{*n.cut_formula, dual(*n.cut_formula), 0});
    }
    const int total = ncuts(out.seq);

    auto mapper = [&](int i) {
        return [&, i](const Addr& a) -> Addr {
            const CutSequent& cs = sub[i].seq;
            if (cs.is_cut(a.tree)) return Addr{offset[i] + a.tree, a.side, a.path};
            int k = a.tree - ncuts(cs);
            int m = n.maps[i][k];
            if (m == -1) return Addr{newpair, i, a.path};
            bool active = !n.principal.empty() && m == n.principal[0];
            if (!active) return Addr{total + m, 0, a.path};
            char pre = 'L';
            switch (n.rule) {
                case Rule::Tensor: pre = i == 0 ? 'L' : 'R'; break;
                case Rule::Par: {
                    auto act = active_positions(n, 0);
                    pre = k == *std::min_element(act.begin(), act.end()) ? 'L' : 'R';
                    break;
                }
                case Rule::Plus1: pre = 'L'; break;
                case Rule::Plus2: pre = 'R'; break;
                case Rule::With:
                    if (n.premises.size() == 1) pre = n.kept == 2 ? 'R' : 'L';
                    else pre = i == 0 ? 'L' : 'R';
                    break;
                default: break;
            }
            return Addr{total + m, 0, pre + a.path};
        };
    };
    auto map_linking = [&](int i, const Linking& l) {
        auto f = mapper(i);
        Linking r;
        for (auto& a : l) r.insert(make_link(f(a.a), f(a.b)));
        return r;
    };

    if (n.rule == Rule::Tensor || n.rule == Rule::Cut) {
        check_linking_count(sub[0].linkings.size() * sub[1].linkings.size());
        for (auto& l0 : sub[0].linkings)
            for (auto& l1 : sub[1].linkings) {
                Linking r = map_linking(0, l0);
                auto r1 = map_linking(1, l1);
                r.insert(r1.begin(), r1.end());
                out.linkings.push_back(std::move(r));
            }
    } else {
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (auto& l : sub[i].linkings) out.linkings.push_back(map_linking(static_cast<int>(i), l));
    }
    out.normalize();
    return out;
}

}  // namespace

LinkingSet desequentialize(const Proof& p) {
    LinkingSet out = deseq(p);
    retag(out);
    return out;
}

LinkingSet identity_net(const Formula& a) {
    check_unit_free(a);
    return desequentialize(id_proof(a));
}

LinkingSet compose_at(const LinkingSet& theta, int i, const LinkingSet& psi, int j) {
    const auto& tc = theta.seq.conclusions;
    const auto& pc = psi.seq.conclusions;
    if (i < 0 || i >= static_cast<int>(tc.size()) || j < 0 || j >= static_cast<int>(pc.size()))
        throw ConclusionMismatch("composition position out of range");
    if (dual(tc[i]) != pc[j]) throw ConclusionMismatch("cut formulas are not dual: " + print(tc[i]) + " / " + print(pc[j]));
    CutSequent s;
    s.cuts = theta.seq.cuts;
    for (auto& c : psi.seq.cuts) s.cuts.push_back(c);
    const int newpair = ncuts(s);
    s.cuts.push_back(CutPair{tc[i], pc[j], 0});
    const int total = ncuts(s);
    for (int k = 0; k < static_cast<int>(tc.size()); ++k)
        if (k != i) s.conclusions.push_back(tc[k]);
    for (int k = 0; k < static_cast<int>(pc.size()); ++k)
        if (k != j) s.conclusions.push_back(pc[k]);
    const int gamma = static_cast<int>(tc.size()) - 1;

    auto f0 = [&](const Addr& a) {
        const CutSequent& cs = theta.seq;
        if (cs.is_cut(a.tree)) return a;
        int k = a.tree - ncuts(cs);
        if (k == i) return Addr{newpair, 0, a.path};
        return Addr{total + (k < i ? k : k - 1), 0, a.path};
    };
    auto f1 = [&](const Addr& a) {
        const CutSequent& cs = psi.seq;
        if (cs.is_cut(a.tree)) return Addr{ncuts(theta.seq) + a.tree, a.side, a.path};
        int k = a.tree - ncuts(cs);
        if (k == j) return Addr{newpair, 1, a.path};
        return Addr{total + gamma + (k < j ? k : k - 1), 0, a.path};
    };
    LinkingSet out;
    out.seq = s;
    check_linking_count(theta.linkings.size() * psi.linkings.size());
    for (auto& l0 : theta.linkings)
        for (auto& l1 : psi.linkings) {
            Linking r;
            for (auto& a : l0) r.insert(make_link(f0(a.a), f0(a.b)));
            for (auto& a : l1) r.insert(make_link(f1(a.a), f1(a.b)));
            out.linkings.push_back(std::move(r));
        }
    out.normalize();
    retag(out);
    return out;
}

LinkingSet compose(const LinkingSet& theta, const LinkingSet& psi, const Formula& over) {
    int i = index_of(theta.seq.conclusions, over);
    int j = index_of(psi.seq.conclusions, dual(over));
    if (i < 0 || j < 0) throw ConclusionMismatch("cut formula " + print(over) + " not found in both nets");
    return compose_at(theta, i, psi, j);
}

// ------------------------------------------------------------- cut elimination

LinkingSet eliminate_cut(const LinkingSet& ls, int pair) {
    const CutSequent& s = ls.seq;
    if (pair < 0 || pair >= ncuts(s)) throw PairNotFound("no cut pair " + std::to_string(pair));
    const CutPair cp = s.cuts[pair];
    const Formula& a = cp.a;

    if (a.is_atomic()) {
        CutSequent t = s;
        t.cuts.erase(t.cuts.begin() + pair);
        LinkingSet out;
        out.seq = t;
        for (auto& lam : ls.linkings) {
            Linking r;
            std::optional<Addr> l, m;
            for (auto& k : lam) {
                bool ina = k.a.tree == pair, inb = k.b.tree == pair;
                if (ina && inb) continue;  // a link closing the pair on itself
                if (ina || inb) {
                    const Addr& inner = ina ? k.a : k.b;
                    const Addr& outer = ina ? k.b : k.a;
                    (inner.side == 0 ? l : m) = outer;
                    continue;
                }
                r.insert(make_link(*drop_pair(k.a, pair), *drop_pair(k.b, pair)));
            }
            if (l && m) r.insert(make_link(*drop_pair(*l, pair), *drop_pair(*m, pair)));
            out.linkings.push_back(std::move(r));
        }
        out.normalize();
        return out;
    }

    // split into (a.left, b.right) and (a.right, b.left), appended at the end
    CutSequent t;
    for (int p = 0; p < ncuts(s); ++p)
        if (p != pair) t.cuts.push_back(s.cuts[p]);
    const int first = ncuts(t);
    t.cuts.push_back(CutPair{a.left(), cp.b.right(), cp.tag});
    t.cuts.push_back(CutPair{a.right(), cp.b.left(), cp.tag});
    t.conclusions = s.conclusions;
    auto f = [&](const Addr& x) -> std::optional<Addr> {
        if (x.tree != pair) {
            Addr y = x;
            if (!s.is_cut(x.tree)) ++y.tree;  // one pair removed, two added
            else if (y.tree > pair) --y.tree;
            return y;
        }
        char c = x.path[0];
        Path rest = x.path.substr(1);
        bool to_first = (x.side == 0) == (c == 'L');
        return Addr{to_first ? first : first + 1, x.side, rest};
    };

    std::vector<Linking> kept;
    bool additive = a.kind() == Kind::With || a.kind() == Kind::Plus;
    for (auto& lam : ls.linkings) {
        if (additive) {
            std::optional<char> c0, c1;
            for (auto& k : lam)
                for (const Addr* x : {&k.a, &k.b})
                    if (x->tree == pair) (x->side == 0 ? c0 : c1) = x->path[0];
            if (c0 && c1 && *c0 == *c1) continue;  // inconsistent
        }
        kept.push_back(lam);
    }
    LinkingSet out = remap(kept, t, f);
    if (additive) out = garbage_collect(out);
    return out;
}

LinkingSet normalize_net(const LinkingSet& ls) {
    LinkingSet cur = ls;
    while (!cur.seq.cuts.empty()) cur = eliminate_cut(cur, 0);
    return cur;
}

namespace {

bool matches_pair(const Linking& l, int pair) {
    std::set<Addr> ends;
    for (auto& k : l) {
        if (k.a.tree == pair) ends.insert(k.a);
        if (k.b.tree == pair) ends.insert(k.b);
    }
    for (auto& e : ends)
        if (!ends.count(Addr{pair, 1 - e.side, mirror(e.path)})) return false;
    return true;
}

}  // namespace

bool matches(const LinkingSet& ls, const Linking& l) {
    for (int p = 0; p < ncuts(ls.seq); ++p)
        if (!matches_pair(l, p)) return false;
    return true;
}

LinkingSet turbo_eliminate(const LinkingSet& ls, int pair) {
    const CutSequent& s = ls.seq;
    if (pair < 0 || pair >= ncuts(s)) throw PairNotFound("no cut pair " + std::to_string(pair));
    CutSequent t = s;
    t.cuts.erase(t.cuts.begin() + pair);
    LinkingSet out;
    out.seq = t;
    for (auto& lam : ls.linkings) {
        if (!matches_pair(lam, pair)) continue;
        std::map<Addr, Addr> partner;
        for (auto& k : lam) {
            partner[k.a] = k.b;
            partner[k.b] = k.a;
        }
        Linking r;
        std::set<Addr> done;
        for (auto& k : lam) {
            for (const Addr* start : {&k.a, &k.b}) {
                if (start->tree == pair || done.count(*start)) continue;
                // follow the chain through the pair
                Addr cur = partner.at(*start);
                std::size_t guard = 0;
                while (cur.tree == pair && guard++ <= partner.size()) cur = partner.at(Addr{pair, 1 - cur.side, mirror(cur.path)});
                if (cur.tree == pair) continue;
                done.insert(*start);
                done.insert(cur);
                r.insert(make_link(*drop_pair(*start, pair), *drop_pair(cur, pair)));
            }
        }
        out.linkings.push_back(std::move(r));
    }
    out.normalize();
    return garbage_collect(out);
}

LinkingSet almost_reduced_composition(const LinkingSet& theta, const LinkingSet& psi, const Formula& over) {
    LinkingSet cur = compose(theta, psi, over);
    for (;;) {
        int k = -1;
        for (int p = 0; p < ncuts(cur.seq) && k < 0; ++p)
            if (!cur.seq.cuts[p].a.is_atomic()) k = p;
        if (k < 0) return cur;
        cur = eliminate_cut(cur, k);
    }
}

// ------------------------------------------------------------- predicates

bool is_bipartite(const LinkingSet& ls) {
    if (!ls.seq.cuts.empty() || ls.seq.conclusions.size() != 2) return false;
    for (auto& lam : ls.linkings)
        for (auto& k : lam)
            if (k.a.tree == k.b.tree) return false;
    return true;
}

namespace {
std::map<Addr, std::set<Link>> links_on_leaves(const LinkingSet& ls) {
    std::map<Addr, std::set<Link>> m;
    for (auto& l : leaves(ls.seq)) m[l];
    for (auto& lam : ls.linkings)
        for (auto& k : lam) {
            m[k.a].insert(k);
            m[k.b].insert(k);
        }
    return m;
}
}  // namespace

bool is_full(const LinkingSet& ls) {
    for (auto& [l, ks] : links_on_leaves(ls))
        if (ks.empty()) return false;
    return true;
}

bool is_ax_unique(const LinkingSet& ls) {
    for (auto& [l, ks] : links_on_leaves(ls))
        if (ks.size() != 1) return false;
    return true;
}

std::vector<int> restrict_left(const LinkingSet& ls, const std::vector<int>& subset, const Addr& w) {
    std::vector<int> out;
    Addr r = child(w, 'R');
    for (int i : subset)
        if (!additive_resolution(ls.seq, ls.linkings.at(i)).count(r)) out.push_back(i);
    return out;
}

// ------------------------------------------------------------- sequentialization

namespace {

// Components of G minus vertex `removed`.
std::vector<int> components(const Graph& g, int removed) {
    std::vector<int> comp(g.verts.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < g.verts.size(); ++v) {
        if (static_cast<int>(v) == removed || comp[v] >= 0) continue;
        std::queue<int> q;
        q.push(static_cast<int>(v));
        comp[v] = next;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [n, e] : g.adj[u])
                if (n != removed && comp[n] < 0) {
                    comp[n] = next;
                    q.push(n);
                }
        }
        ++next;
    }
    return comp;
}

int component_count(const std::vector<int>& comp) {
    int m = -1;
    for (int c : comp) m = std::max(m, c);
    return m + 1;
}

bool sequentializing(const LinkingSet& ls, const Graph& g, const Addr& v) {
    if (is_star(v)) return component_count(components(g, g.idx.at(v))) == 2;
    Kind k = kind_at(ls.seq, v);
    switch (k) {
        case Kind::Par:
        case Kind::With: return true;
        case Kind::Plus: return !g.idx.count(child(v, 'L')) || !g.idx.count(child(v, 'R'));
        case Kind::Tensor: return component_count(components(g, g.idx.at(v))) == 2;
        default: return false;
    }
}

// Move position 0 of a proof to `k`, keeping the rest in order.
std::vector<int> principal_to(std::size_t n, int k) {
    std::vector<int> perm(n);
    perm[0] = k;
    for (std::size_t r = 1; r < n; ++r) perm[r] = static_cast<int>(r) - 1 < k ? static_cast<int>(r) - 1 : static_cast<int>(r);
    return perm;
}

// Linkings restricted to a component, over the given sub cut sequent.
struct SubNet {
    CutSequent seq;
    std::vector<int> pair_of;  // old pair index -> new, or -1
    std::vector<int> conc_of;  // old conclusion index -> new position, or -1
};

Proof seq_rec(const LinkingSet& ls);

Proof seq_split(const LinkingSet& ls, const Graph& g, const std::vector<int>& comp, const Addr& v) {
    const CutSequent& s = ls.seq;
    const int C = ncuts(s);
    const int nconc = static_cast<int>(s.conclusions.size());
    const bool cut = is_star(v);
    // the two premises: sides of a cut pair, or the two children of a tensor
    Addr prem[2] = {cut ? Addr{v.tree, 0, ""} : child(v, 'L'), cut ? Addr{v.tree, 1, ""} : child(v, 'R')};
    int side_comp[2] = {comp[g.idx.at(prem[0])], comp[g.idx.at(prem[1])]};
    SubNet sn[2];
    std::vector<int> where(nconc, -1);  // which side each other conclusion goes to
    for (int h = 0; h < 2; ++h) {
        sn[h].pair_of.assign(C, -1);
        sn[h].conc_of.assign(nconc, -1);
        for (int p = 0; p < C; ++p) {
            if (cut && p == v.tree) continue;
            auto it = g.idx.find(star(p));
            if (it != g.idx.end() && comp[it->second] == side_comp[h]) {
                sn[h].pair_of[p] = ncuts(sn[h].seq);
                sn[h].seq.cuts.push_back(s.cuts[p]);
            }
        }
        sn[h].seq.conclusions.push_back(formula_at(s, prem[h]));
        for (int k = 0; k < nconc; ++k) {
            if (!cut && k == v.tree - C) continue;
            if (comp[g.idx.at(Addr{C + k, 0, ""})] == side_comp[h]) {
                sn[h].conc_of[k] = static_cast<int>(sn[h].seq.conclusions.size());
                sn[h].seq.conclusions.push_back(s.conclusions[k]);
                where[k] = h;
            }
        }
    }
    Proof pr[2];
    for (int h = 0; h < 2; ++h) {
        const int hc = ncuts(sn[h].seq);
        auto f = [&](const Addr& a) -> std::optional<Addr> {
            if (a.tree == prem[h].tree && a.side == prem[h].side && a.path.compare(0, prem[h].path.size(), prem[h].path) == 0 &&
                a.path.size() >= prem[h].path.size() && (cut || a.tree == v.tree))
                return Addr{hc, 0, a.path.substr(prem[h].path.size())};
            if (s.is_cut(a.tree)) {
                if (sn[h].pair_of[a.tree] < 0) return std::nullopt;
                return Addr{sn[h].pair_of[a.tree], a.side, a.path};
            }
            int k = a.tree - C;
            if (sn[h].conc_of[k] < 0) return std::nullopt;
            return Addr{hc + sn[h].conc_of[k], 0, a.path};
        };
        pr[h] = seq_rec(remap(ls.linkings, sn[h].seq, f));
    }
    Proof r = cut ? cut_rule(pr[0], 0, pr[1], 0) : tensor_rule(pr[0], 0, pr[1], 0);
    // r: [principal?] then side-0 conclusions then side-1 conclusions
    std::vector<int> perm;
    if (!cut) perm.push_back(v.tree - C);
    for (int h = 0; h < 2; ++h)
        for (int k = 0; k < nconc; ++k)
            if (where[k] == h && sn[h].conc_of[k] >= 0) perm.push_back(k);
    if (perm.size() != r->conclusion.size()) throw NoSequentializingVertex("split lost a conclusion");
    return permute(r, perm);
}

Proof seq_rec(const LinkingSet& ls) {
    const CutSequent& s = ls.seq;
    const int C = ncuts(s);
    const int nconc = static_cast<int>(s.conclusions.size());
    bool atomic = C == 0;
    for (auto& f : s.conclusions) atomic = atomic && f.is_atomic();
    if (atomic) {
        if (nconc == 2 && ls.linkings.size() == 1 && ls.linkings[0].size() == 1)
            return ax_seq(s.conclusions[0], s.conclusions[1]);
        throw NoSequentializingVertex("atomic sequent that is not an axiom");
    }
    Ctx c(ls);
    Graph g = make_graph(c, all_indices(ls.linkings.size()), true);

    auto rest_map = [&](int k, int shift, int newC) {
        // conclusion m != k goes to newC + shift + (m < k ? m : m - 1)
        return [=](int m) { return newC + shift + (m < k ? m : m - 1); };
    };

    // Par
    for (int k = 0; k < nconc; ++k) {
        if (s.conclusions[k].kind() != Kind::Par) continue;
        CutSequent t;
        t.cuts = s.cuts;
        t.conclusions = {s.conclusions[k].left(), s.conclusions[k].right()};
        for (int m = 0; m < nconc; ++m)
            if (m != k) t.conclusions.push_back(s.conclusions[m]);
        auto rm = rest_map(k, 2, C);
        auto f = [&](const Addr& a) -> std::optional<Addr> {
            if (s.is_cut(a.tree)) return a;
            int m = a.tree - C;
            if (m == k) return Addr{C + (a.path[0] == 'L' ? 0 : 1), 0, a.path.substr(1)};
            return Addr{rm(m), 0, a.path};
        };
        Proof p = seq_rec(remap(ls.linkings, t, f));
        return permute(par_rule(p, 0, 1), principal_to(nconc, k));
    }
    // With.  A & whose two sides share a cut pair would duplicate it, so it
    // waits until nothing else is sequentializing.
    auto with_at = [&](int k, bool allow_shared) -> std::optional<Proof> {
        std::vector<Linking> part[2];
        std::set<int> used[2];
        for (int h = 0; h < 2; ++h) {
            char ch = h == 0 ? 'L' : 'R';
            for (std::size_t i = 0; i < ls.linkings.size(); ++i)
                if (c.res[i].count(Addr{C + k, 0, std::string(1, ch)})) part[h].push_back(ls.linkings[i]);
            for (auto& lam : part[h])
                for (auto& a : lam) {
                    if (s.is_cut(a.a.tree)) used[h].insert(a.a.tree);
                    if (s.is_cut(a.b.tree)) used[h].insert(a.b.tree);
                }
        }
        if (!allow_shared)
            for (int p : used[0])
                if (used[1].count(p)) return std::nullopt;
        Proof pr[2];
        for (int h = 0; h < 2; ++h) {
            CutSequent t;
            std::vector<int> pair_of(C, -1);
            for (int p : used[h]) {
                pair_of[p] = ncuts(t);
                t.cuts.push_back(s.cuts[p]);
            }
            const int tc = ncuts(t);
            Formula sub = h == 0 ? s.conclusions[k].left() : s.conclusions[k].right();
            t.conclusions = {sub};
            for (int m = 0; m < nconc; ++m)
                if (m != k) t.conclusions.push_back(s.conclusions[m]);
            auto rm = rest_map(k, 1, tc);
            auto f = [&](const Addr& a) -> std::optional<Addr> {
                if (s.is_cut(a.tree)) return Addr{pair_of[a.tree], a.side, a.path};
                int m = a.tree - C;
                if (m == k) return Addr{tc, 0, a.path.substr(1)};
                return Addr{rm(m), 0, a.path};
            };
            pr[h] = seq_rec(remap(part[h], t, f));
        }
        Sequent concl{s.conclusions[k]};
        for (int m = 0; m < nconc; ++m)
            if (m != k) concl.push_back(s.conclusions[m]);
        std::vector<int> mp(nconc);
        std::iota(mp.begin(), mp.end(), 0);
        Proof w = make_node(concl, Rule::With, {0}, {pr[0], pr[1]}, {mp, mp});
        return permute(w, principal_to(nconc, k));
    };
    for (int k = 0; k < nconc; ++k)
        if (s.conclusions[k].kind() == Kind::With)
            if (auto r = with_at(k, false)) return *r;
    // Plus
    for (int k = 0; k < nconc; ++k) {
        Addr v{C + k, 0, ""};
        if (s.conclusions[k].kind() != Kind::Plus || !sequentializing(ls, g, v)) continue;
        bool left = g.idx.count(child(v, 'L')) > 0;
        CutSequent t;
        t.cuts = s.cuts;
        t.conclusions = {left ? s.conclusions[k].left() : s.conclusions[k].right()};
        for (int m = 0; m < nconc; ++m)
            if (m != k) t.conclusions.push_back(s.conclusions[m]);
        auto rm = rest_map(k, 1, C);
        auto f = [&](const Addr& a) -> std::optional<Addr> {
            if (s.is_cut(a.tree)) return a;
            int m = a.tree - C;
            if (m == k) return Addr{C, 0, a.path.substr(1)};
            return Addr{rm(m), 0, a.path};
        };
        Proof p = seq_rec(remap(ls.linkings, t, f));
        Proof r = left ? plus1_rule(p, 0, s.conclusions[k].right()) : plus2_rule(s.conclusions[k].left(), p, 0);
        return permute(r, principal_to(nconc, k));
    }
    // Tensor, then cut pairs
    for (int k = 0; k < nconc; ++k) {
        Addr v{C + k, 0, ""};
        if (s.conclusions[k].kind() != Kind::Tensor) continue;
        auto comp = components(g, g.idx.at(v));
        if (component_count(comp) == 2) return seq_split(ls, g, comp, v);
    }
    for (int p = 0; p < C; ++p) {
        auto comp = components(g, g.idx.at(star(p)));
        if (component_count(comp) == 2) return seq_split(ls, g, comp, star(p));
    }
    for (int k = 0; k < nconc; ++k)
        if (s.conclusions[k].kind() == Kind::With) return *with_at(k, true);
    throw NoSequentializingVertex("no sequentializing vertex in " + net_str(ls));
}

}  // namespace

std::vector<Addr> find_sequentializing(const LinkingSet& ls) {
    Ctx c(ls);
    Graph g = make_graph(c, all_indices(ls.linkings.size()), true);
    std::vector<Addr> out;
    const int C = ncuts(ls.seq);
    for (int k = 0; k < static_cast<int>(ls.seq.conclusions.size()); ++k) {
        Addr v{C + k, 0, ""};
        if (ls.seq.conclusions[k].is_binary() && sequentializing(ls, g, v)) out.push_back(v);
    }
    for (int p = 0; p < C; ++p)
        if (g.idx.count(star(p)) && sequentializing(ls, g, star(p))) out.push_back(star(p));
    return out;
}

Proof sequentialize(const LinkingSet& ls) {
    auto chk = is_proof_net(ls);
    if (!chk.ok) throw NotAProofNet(std::string(criterion_name(chk.failed)) + ": " + chk.witness);
    return seq_rec(ls);
}

// ------------------------------------------------------------- equality and printing

bool net_identical(const LinkingSet& x, const LinkingSet& y) {
    if (x.seq.conclusions != y.seq.conclusions || x.seq.cuts.size() != y.seq.cuts.size()) return false;
    for (std::size_t k = 0; k < x.seq.cuts.size(); ++k)
        if (x.seq.cuts[k].a != y.seq.cuts[k].a || x.seq.cuts[k].b != y.seq.cuts[k].b) return false;
    LinkingSet a = x, b = y;
    a.normalize();
    b.normalize();
    return a.linkings == b.linkings;
}

namespace {

// Orient every pair canonically, sort pairs by formula, then pick the
// smallest linking list over permutations of identical pairs.
LinkingSet canonical(const LinkingSet& ls) {
    const CutSequent& s = ls.seq;
    const int C = ncuts(s);
    std::vector<int> flip(C, 0);
    for (int p = 0; p < C; ++p) flip[p] = compare(s.cuts[p].b, s.cuts[p].a) < 0;
    auto oriented = [&](int p) {
        return flip[p] ? std::make_pair(s.cuts[p].b, s.cuts[p].a) : std::make_pair(s.cuts[p].a, s.cuts[p].b);
    };
    std::vector<int> order = all_indices(C);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        auto x = oriented(a), y = oriented(b);
        auto c = compare(x.first, y.first);
        return c < 0;
    });
    // groups of identical pairs
    std::vector<std::pair<int, int>> groups;
    for (int i = 0; i < C;) {
        int j = i;
        while (j < C && oriented(order[j]).first == oriented(order[i]).first) ++j;
        groups.push_back({i, j});
        i = j;
    }
    CutSequent t;
    for (int p : order) {
        auto [a, b] = oriented(p);
        t.cuts.push_back(CutPair{a, b, 0});
    }
    t.conclusions = s.conclusions;
    std::optional<LinkingSet> best;
    long tries = 0;
    std::function<void(std::size_t)> go = [&](std::size_t gi) {
        if (gi == groups.size()) {
            std::vector<int> newidx(C);
            for (int k = 0; k < C; ++k) newidx[order[k]] = k;
            LinkingSet cand = remap(ls.linkings, t, [&](const Addr& a) -> std::optional<Addr> {
                if (!s.is_cut(a.tree)) return a;
                return Addr{newidx[a.tree], flip[a.tree] ? 1 - a.side : a.side, a.path};
            });
            if (!best || cand.linkings < best->linkings) best = cand;
            if (++tries > 40320) throw SizeCapExceeded("too many identical cut pairs to compare");
            return;
        }
        auto [lo, hi] = groups[gi];
        std::sort(order.begin() + lo, order.begin() + hi);
        do go(gi + 1);
        while (std::next_permutation(order.begin() + lo, order.begin() + hi));
    };
    go(0);
    return *best;
}

}  // namespace

bool net_equal(const LinkingSet& x, const LinkingSet& y) {
    if (x.seq.conclusions != y.seq.conclusions || x.seq.cuts.size() != y.seq.cuts.size()) return false;
    return net_identical(canonical(x), canonical(y));
}

std::string net_str(const LinkingSet& ls) {
    std::ostringstream o;
    o << "[";
    for (std::size_t k = 0; k < ls.seq.cuts.size(); ++k)
        o << (k ? ", " : "") << print(ls.seq.cuts[k].a) << " * " << print(ls.seq.cuts[k].b);
    o << "] " << sequent_str(ls.seq.conclusions) << " {";
    for (std::size_t i = 0; i < ls.linkings.size(); ++i) {
        o << (i ? "; " : "") << "{";
        bool first = true;
        for (auto& k : ls.linkings[i]) {
            o << (first ? "" : ", ") << "(" << addr_str(k.a) << " " << addr_str(k.b) << ")";
            first = false;
        }
        o << "}";
    }
    o << "}";
    return o.str();
}

std::string net_dot(const LinkingSet& ls) {
    static const char* colors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "teal", "magenta"};
    const CutSequent& s = ls.seq;
    std::set<Addr> all;
    std::vector<std::set<Addr>> res;
    for (auto& l : ls.linkings) {
        res.push_back(additive_resolution(s, l));
        all.insert(res.back().begin(), res.back().end());
    }
    auto id = [](const Addr& a) {
        std::string r = "v" + std::to_string(a.tree) + "_" + (a.side < 0 ? std::string("s") : std::to_string(a.side)) + "_" + a.path;
        return r;
    };
    std::ostringstream o;
    o << "digraph net {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    // every vertex of the forest, unused ones greyed
    for (int t = 0; t < static_cast<int>(s.tree_count()); ++t) {
        for (int side = 0; side < (s.is_cut(t) ? 2 : 1); ++side) {
            std::function<void(const Formula&, const Path&)> walk = [&](const Formula& f, const Path& p) {
                Addr a{t, side, p};
                std::string label = f.is_atomic() ? print(f) : kind_name(f.kind());
                o << "  " << id(a) << " [label=\"" << label << "\"" << (all.count(a) ? "" : " fontcolor=gray") << "];\n";
                if (!p.empty()) o << "  " << id(a) << " -> " << id(parent(a)) << " [arrowhead=none];\n";
                if (f.is_binary()) {
                    walk(f.left(), p + 'L');
                    walk(f.right(), p + 'R');
                }
            };
            walk(s.root(t, side), "");
        }
        if (s.is_cut(t)) {
            o << "  " << id(star(t)) << " [label=\"*\"];\n";
            for (int side = 0; side < 2; ++side) o << "  " << id(Addr{t, side, ""}) << " -> " << id(star(t)) << " [arrowhead=none];\n";
        }
    }
    for (std::size_t i = 0; i < ls.linkings.size(); ++i)
        for (auto& k : ls.linkings[i])
            o << "  " << id(k.a) << " -> " << id(k.b) << " [dir=none constraint=false color=" << colors[i % 8] << "];\n";
    if (ls.linkings.size() >= 2) {
        NetGraph g = build_graph(ls, all_indices(ls.linkings.size()));
        for (auto& e : g.edges)
            if (e.kind == NetGraph::EdgeKind::Jump)
                o << "  " << id(g.vertices[e.u].addr) << " -> " << id(g.vertices[e.v].addr)
                  << " [style=dashed constraint=false];\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace mall
