#include "mall/json_io.hpp"

#include "mall/errors.hpp"

#include <fstream>
#include <sstream>

namespace mall {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

std::string str_of(const Json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

int int_of(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

Json formulas_to_json(const Sequent& s) {
    Json a = Json::array();
    for (auto& f : s) a.push_back(print(f));
    return a;
}

Sequent formulas_from_json(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    Sequent s;
    for (auto& x : j) s.push_back(parse(str_of(x, what)));
    return s;
}

std::vector<int> ints_from_json(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<int> v;
    for (auto& x : j) v.push_back(int_of(x, what));
    return v;
}

}  // namespace

// ---------------------------------------------------------------- proofs

Json proof_to_json(const Proof& p) {
    Json j;
    j["conclusion"] = formulas_to_json(p->conclusion);
    j["rule"] = rule_name(p->rule);
    j["principal"] = p->principal;
    j["cutFormula"] = p->cut_formula ? Json(print(*p->cut_formula)) : Json(nullptr);
    Json prem = Json::array();
    for (auto& q : p->premises) prem.push_back(proof_to_json(q));
    j["premises"] = prem;
    j["premiseMaps"] = p->maps;
    if (p->kept) j["kept"] = p->kept;
    return j;
}

Proof proof_from_json(const Json& j) {
    auto rule = rule_from_name(str_of(field(j, "rule"), "rule"));
    if (!rule) bad("unknown rule " + field(j, "rule").dump());
    Sequent c = formulas_from_json(field(j, "conclusion"), "conclusion");
    std::vector<int> principal = ints_from_json(field(j, "principal"), "principal");
    std::optional<Formula> cut;
    if (auto it = j.find("cutFormula"); it != j.end() && !it->is_null()) cut = parse(str_of(*it, "cutFormula"));
    const Json& pj = field(j, "premises");
    if (!pj.is_array()) bad("premises must be an array");
    std::vector<Proof> prem;
    for (auto& q : pj) prem.push_back(proof_from_json(q));
    const Json& mj = field(j, "premiseMaps");
    if (!mj.is_array()) bad("premiseMaps must be an array");
    std::vector<std::vector<int>> maps;
    for (auto& m : mj) maps.push_back(ints_from_json(m, "premiseMaps"));
    if (maps.size() != prem.size()) bad("premiseMaps and premises differ in length");
    int kept = 0;
    if (auto it = j.find("kept"); it != j.end()) kept = int_of(*it, "kept");
    return make_node(std::move(c), *rule, std::move(principal), std::move(prem), std::move(maps), cut, kept);
}

// ---------------------------------------------------------------- nets

Json addr_to_json(const Addr& a) { return Json{{"tree", a.tree}, {"side", a.side}, {"path", a.path}}; }

Addr addr_from_json(const Json& j) {
    Addr a;
    a.tree = int_of(field(j, "tree"), "tree");
    a.side = int_of(field(j, "side"), "side");
    a.path = str_of(field(j, "path"), "path");
    if (a.side != 0 && a.side != 1) bad("side must be 0 or 1");
    for (char c : a.path)
        if (c != 'L' && c != 'R') bad("path must consist of L and R");
    return a;
}

Json net_to_json(const LinkingSet& ls) {
    Json cuts = Json::array();
    for (auto& c : ls.seq.cuts) cuts.push_back(Json::array({print(c.a), print(c.b)}));
    Json lks = Json::array();
    for (auto& l : ls.linkings) {
        Json lj = Json::array();
        for (auto& k : l) lj.push_back(Json::array({addr_to_json(k.a), addr_to_json(k.b)}));
        lks.push_back(lj);
    }
    return Json{{"cutPairs", cuts}, {"conclusions", formulas_to_json(ls.seq.conclusions)}, {"linkings", lks}};
}

LinkingSet net_from_json(const Json& j) {
    LinkingSet ls;
    const Json& cj = field(j, "cutPairs");
    if (!cj.is_array()) bad("cutPairs must be an array");
    int tag = 0;
    for (auto& c : cj) {
        if (!c.is_array() || c.size() != 2) bad("a cut pair is a two-element array");
        CutPair p{parse(str_of(c[0], "cut formula")), parse(str_of(c[1], "cut formula")), tag++};
        if (dual(p.a) != p.b) bad("cut pair " + c.dump() + " is not a formula and its dual");
        ls.seq.cuts.push_back(p);
    }
    ls.seq.conclusions = formulas_from_json(field(j, "conclusions"), "conclusions");
    const Json& lj = field(j, "linkings");
    if (!lj.is_array()) bad("linkings must be an array");
    for (auto& l : lj) {
        if (!l.is_array()) bad("a linking is an array of links");
        Linking lk;
        for (auto& k : l) {
            if (!k.is_array() || k.size() != 2) bad("a link is a two-element array");
            Addr x = addr_from_json(k[0]), y = addr_from_json(k[1]);
            for (auto* a : {&x, &y}) {
                if (a->tree < 0 || a->tree >= static_cast<int>(ls.seq.tree_count()))
                    bad("link address " + addr_str(*a) + " names no tree");
                if (!ls.seq.is_cut(a->tree) && a->side != 0) bad("conclusion addresses have side 0");
                if (!is_leaf(ls.seq, *a)) bad("link address " + addr_str(*a) + " is not a leaf");
            }
            lk.insert(make_link(x, y));
        }
        ls.linkings.push_back(std::move(lk));
    }
    ls.normalize();
    return ls;
}

// ---------------------------------------------------------------- derivations

Json derivation_to_json(const Derivation& d) {
    Json steps = Json::array();
    for (auto& s : d.steps) {
        Json inst = Json::object();
        for (auto& [k, v] : s.inst) inst[k] = print(v);
        steps.push_back({{"eq", equation_tag(s.equation)},
                         {"dir", s.direction == Direction::LeftToRight ? "ltr" : "rtl"},
                         {"path", s.position},
                         {"inst", inst}});
    }
    return Json{{"source", print(d.source)}, {"target", print(d.target)}, {"steps", steps}};
}

Derivation derivation_from_json(const Json& j) {
    Derivation d;
    d.source = parse(str_of(field(j, "source"), "source"));
    d.target = parse(str_of(field(j, "target"), "target"));
    const Json& sj = field(j, "steps");
    if (!sj.is_array()) bad("steps must be an array");
    for (auto& s : sj) {
        DerivationStep st;
        auto e = equation_from_name(str_of(field(s, "eq"), "eq"));
        if (!e) bad("unknown equation " + field(s, "eq").dump());
        st.equation = *e;
        std::string dir = str_of(field(s, "dir"), "dir");
        if (dir == "ltr") st.direction = Direction::LeftToRight;
        else if (dir == "rtl") st.direction = Direction::RightToLeft;
        else bad("dir must be \"ltr\" or \"rtl\"");
        st.position = str_of(field(s, "path"), "path");
        const Json& ij = field(s, "inst");
        if (!ij.is_object()) bad("inst must be an object");
        for (auto& [k, v] : ij.items()) st.inst[k] = parse(str_of(v, "inst"));
        d.steps.push_back(std::move(st));
    }
    return d;
}

// ---------------------------------------------------------------- logs

Json mass_to_json(const Mass& m) {
    if (m >= 0 && m <= Mass(std::numeric_limits<std::int64_t>::max())) return Json(static_cast<std::int64_t>(m));
    return Json(m.str());
}

Json reduction_record_to_json(const ReductionRecord& r) {
    Json before = Json::array(), after = Json::array();
    for (auto& m : r.density_before) before.push_back(mass_to_json(m));
    for (auto& m : r.density_after) after.push_back(mass_to_json(m));
    return Json{{"position", r.at}, {"kind", beta_kind_name(r.kind)}, {"densityBefore", before}, {"densityAfter", after}};
}

std::string reduction_log_jsonl(const std::vector<ReductionRecord>& log) {
    std::string out;
    for (auto& r : log) out += reduction_record_to_json(r).dump() + "\n";
    return out;
}

// ---------------------------------------------------------------- files

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) bad("cannot write " + path);
    out << text;
}

}  // namespace mall
