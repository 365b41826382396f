#include "mall/cli.hpp"

#include "mall/categorical.hpp"
#include "mall/errors.hpp"
#include "mall/json_io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>

namespace mall {

namespace {

constexpr int kTrue = 0, kFalse = 1, kError = 2, kUnknown = 3;

struct Options {
    bool json = false;
    std::size_t budget = 100000;
    std::string strategy = "betabar";
    int cap_linkings = 12;
};

Strategy strategy_of(const std::string& s) {
    return s == "pattern" ? Strategy::PatternPreserving : Strategy::BetabarFirst;
}

Json path_json(const NodePath& p) { return Json(p); }

Json density_json(const std::vector<Mass>& d) {
    Json a = Json::array();
    for (auto& m : d) a.push_back(mass_to_json(m));
    return a;
}

std::string mass_list(const std::vector<Mass>& d) {
    std::string s = "{";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + d[i].str();
    return s + "}";
}

class Cli {
public:
    Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Isomorphisms, proofs and proof-nets of multiplicative-additive linear logic", "mall"};
        app.require_subcommand(1);
        app.add_flag("--json", o_.json, "structured JSON output");
        app.add_option("--budget", o_.budget, "step budget for verification")->capture_default_str();
        app.add_option("--strategy", o_.strategy, "cut-elimination strategy")
            ->check(CLI::IsMember({"betabar", "pattern"}))
            ->capture_default_str();
        app.add_option("--cap-linkings", o_.cap_linkings, "largest linking count for the toggling check")
            ->capture_default_str();
        app.fallthrough();

        add_iso(app);
        add_proof(app);
        add_net(app);
        add_cat(app);
        add_fmt(app);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e, out_, err_);
            return code == 0 ? 0 : kError;
        }
        try {
            return action_();
        } catch (const Error& e) {
            err_ << e.code() << ": " << e.what() << "\n";
            return dynamic_cast<const SizeCapExceeded*>(&e) ? kUnknown : kError;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kError;
        }
    }

private:
    std::ostream& out_;
    std::ostream& err_;
    Options o_;
    std::function<int()> action_;
    // Storage for positional arguments; CLI11 binds by reference.
    std::string a_, b_, c_, d_, file_out_, log_out_;
    int i_ = 0, j_ = 0, pair_ = -1;

    CLI::App* verb(CLI::App& parent, const char* name, const char* help, std::function<int()> f) {
        auto* s = parent.add_subcommand(name, help);
        s->callback([this, f] { action_ = f; });
        return s;
    }

    void emit(const Json& j) { out_ << j.dump(2) << "\n"; }
    void emit_proof(const Proof& p) {
        if (o_.json) emit(proof_to_json(p));
        else out_ << proof_str(p);
    }
    void emit_net(const LinkingSet& n) {
        if (o_.json) emit(net_to_json(n));
        else out_ << net_str(n) << "\n";
    }
    static Proof load_proof(const std::string& f) { return proof_from_json(read_json_file(f)); }
    static LinkingSet load_net(const std::string& f) { return net_from_json(read_json_file(f)); }
    NetCaps caps() const {
        NetCaps c;
        c.max_linkings = o_.cap_linkings;
        return c;
    }

    // ------------------------------------------------------------ iso
    void add_iso(CLI::App& app) {
        auto* iso = app.add_subcommand("iso", "isomorphism decision, witnesses and verification");
        iso->require_subcommand(1);

        auto* dec = verb(*iso, "decide", "decide A = B modulo the equational theory", [this] {
            Formula a = parse(a_), b = parse(b_);
            auto d = decide_iso(a, b);
            if (o_.json) {
                Json j{{"iso", d.iso}};
                j["derivation"] = d.derivation ? derivation_to_json(*d.derivation) : Json(nullptr);
                emit(j);
            } else {
                out_ << (d.iso ? "isomorphic" : "not isomorphic") << "\n";
                if (d.derivation) out_ << derivation_str(*d.derivation);
            }
            return d.iso ? kTrue : kFalse;
        });
        dec->add_option("A", a_)->required();
        dec->add_option("B", b_)->required();

        auto* wit = verb(*iso, "witness", "witness proofs of |- A^, B and |- B^, A", [this] {
            Formula a = parse(a_), b = parse(b_);
            auto d = decide_iso(a, b);
            if (!d.iso) {
                err_ << "not isomorphic\n";
                return kFalse;
            }
            auto [fwd, bwd] = witness_derivation(*d.derivation);
            if (!file_out_.empty()) {
                write_text_file(file_out_ + ".fwd.json", proof_to_json(fwd).dump(2) + "\n");
                write_text_file(file_out_ + ".bwd.json", proof_to_json(bwd).dump(2) + "\n");
            }
            if (o_.json) {
                emit(Json{{"forward", proof_to_json(fwd)}, {"backward", proof_to_json(bwd)}});
            } else {
                out_ << "forward:\n" << proof_str(fwd) << "backward:\n" << proof_str(bwd);
            }
            return kTrue;
        });
        wit->add_option("A", a_)->required();
        wit->add_option("B", b_)->required();
        wit->add_option("-o,--out", file_out_, "write PREFIX.fwd.json and PREFIX.bwd.json");

        auto* ver = verb(*iso, "verify", "check that two proofs compose to identities", [this] {
            Formula a = parse(a_), b = parse(b_);
            Verdict v = verify_iso(a, b, load_proof(c_), load_proof(d_), o_.budget);
            if (o_.json) {
                emit(Json{{"verdict", verdict_name(v.kind)}, {"reason", v.reason}, {"log", v.log}});
            } else {
                out_ << verdict_name(v.kind);
                if (!v.reason.empty()) out_ << ": " << v.reason;
                out_ << "\n";
                for (auto& l : v.log) out_ << "  " << l << "\n";
            }
            switch (v.kind) {
                case Verdict::Kind::Verified: return kTrue;
                case Verdict::Kind::Refuted: return kFalse;
                default: return kUnknown;
            }
        });
        ver->add_option("A", a_)->required();
        ver->add_option("B", b_)->required();
        ver->add_option("forward", c_, "proof JSON of |- A^, B")->required();
        ver->add_option("backward", d_, "proof JSON of |- B^, A")->required();
    }

    // ------------------------------------------------------------ proof
    void add_proof(CLI::App& app) {
        auto* pr = app.add_subcommand("proof", "sequent-calculus proofs");
        pr->require_subcommand(1);

        auto* chk = verb(*pr, "check", "check every rule instance", [this] {
            auto vs = check_proof(load_proof(a_));
            if (o_.json) {
                Json a = Json::array();
                for (auto& v : vs) a.push_back({{"node", v.node}, {"rule", rule_name(v.rule)}, {"message", v.message}});
                emit(Json{{"valid", vs.empty()}, {"violations", a}});
            } else {
                if (vs.empty()) out_ << "valid\n";
                for (auto& v : vs)
                    out_ << node_path_str(v.node) << " " << rule_name(v.rule) << ": " << v.message << "\n";
            }
            return vs.empty() ? kTrue : kFalse;
        });
        chk->add_option("file", a_)->required();

        auto* id = verb(*pr, "id", "eta-expanded identity proof of |- A^, A", [this] {
            emit_proof(id_proof(parse(a_)));
            return kTrue;
        });
        id->add_option("A", a_)->required();

        auto* eta = verb(*pr, "eta", "eta-expand every axiom", [this] {
            emit_proof(eta_normalize(load_proof(a_)));
            return kTrue;
        });
        eta->add_option("file", a_)->required();

        auto* nrm = verb(*pr, "normalize", "cut elimination", [this] {
            std::vector<ReductionRecord> log;
            Proof p = normalize(load_proof(a_), strategy_of(o_.strategy), &log);
            if (!log_out_.empty()) write_text_file(log_out_, reduction_log_jsonl(log));
            emit_proof(p);
            return kTrue;
        });
        nrm->add_option("file", a_)->required();
        nrm->add_option("--log", log_out_, "write the reduction log as JSON lines");

        auto* sl = verb(*pr, "slices", "the slices of a proof", [this] {
            auto ss = slices(load_proof(a_));
            if (o_.json) {
                Json a = Json::array();
                for (auto& s : ss) a.push_back(proof_to_json(s));
                emit(a);
            } else {
                out_ << ss.size() << " slices\n";
                for (std::size_t i = 0; i < ss.size(); ++i) out_ << "slice " << i << ":\n" << proof_str(ss[i]);
            }
            return kTrue;
        });
        sl->add_option("file", a_)->required();

        auto* pat = verb(*pr, "patterns", "unit patterns of the top, 1 and bot rules", [this] {
            auto r = detect_patterns(load_proof(a_));
            if (o_.json) {
                Json tops = Json::array(), ones = Json::array(), bots = Json::array();
                for (auto& e : r.tops) tops.push_back({{"at", e.at}, {"pattern", e.pattern}});
                for (auto& e : r.ones)
                    ones.push_back({{"at", e.at}, {"pattern", e.pattern}, {"adjacent", e.adjacent}, {"plusCount", e.plus_count}});
                for (auto& e : r.bots) bots.push_back({{"at", e.at}, {"pattern", e.pattern}});
                emit(Json{{"ok", r.ok()}, {"tops", tops}, {"ones", ones}, {"bots", bots}});
            } else {
                out_ << "top rules: " << r.tops.size() << ", 1 rules: " << r.ones.size()
                     << ", bot rules: " << r.bots.size() << "\n";
                out_ << (r.ok() ? "all in patterns" : "outside a pattern:");
                for (auto& p : r.offending()) out_ << " " << node_path_str(p);
                out_ << "\n";
            }
            return r.ok() ? kTrue : kFalse;
        });
        pat->add_option("file", a_)->required();

        auto* den = verb(*pr, "density", "mass and density of every cut", [this] {
            Proof p = load_proof(a_);
            auto cds = cut_densities(p);
            if (o_.json) {
                Json a = Json::array();
                for (auto& c : cds)
                    a.push_back({{"at", path_json(c.at)}, {"mass", mass_to_json(c.mass)}, {"density", mass_to_json(c.density)}});
                emit(Json{{"cuts", a}, {"density", density_json(density(p))}});
            } else {
                for (auto& c : cds)
                    out_ << node_path_str(c.at) << " mass " << c.mass.str() << " density " << c.density.str() << "\n";
                out_ << "density " << mass_list(density(p)) << "\n";
            }
            return kTrue;
        });
        den->add_option("file", a_)->required();
    }

    // ------------------------------------------------------------ net
    void add_net(CLI::App& app) {
        auto* nt = app.add_subcommand("net", "proof-nets");
        nt->require_subcommand(1);

        auto* chk = verb(*nt, "check", "correctness criterion", [this] {
            LinkingSet n = load_net(a_);
            validate_linkings(n);
            NetCheck c = is_proof_net(n, caps());
            if (o_.json) {
                Json j{{"proofNet", c.ok}};
                if (!c.ok) j["failed"] = criterion_name(c.failed), j["witness"] = c.witness;
                emit(j);
            } else {
                out_ << (c.ok ? "proof-net" : std::string("not a proof-net: ") + criterion_name(c.failed));
                if (!c.ok && !c.witness.empty()) out_ << " (" << c.witness << ")";
                out_ << "\n";
            }
            return c.ok ? kTrue : kFalse;
        });
        chk->add_option("file", a_)->required();

        auto* cmp = verb(*nt, "compose", "cut conclusion I of the first net against conclusion J of the second",
                         [this] {
                             emit_net(compose_at(load_net(a_), i_, load_net(b_), j_));
                             return kTrue;
                         });
        cmp->add_option("first", a_)->required();
        cmp->add_option("I", i_)->required();
        cmp->add_option("second", b_)->required();
        cmp->add_option("J", j_)->required();

        auto* red = verb(*nt, "reduce", "eliminate every cut (or one pair with --pair)", [this] {
            LinkingSet n = load_net(a_);
            emit_net(pair_ >= 0 ? eliminate_cut(n, pair_) : normalize_net(n));
            return kTrue;
        });
        red->add_option("file", a_)->required();
        red->add_option("--pair", pair_, "index of the cut pair");

        auto* tur = verb(*nt, "turbo", "eliminate one cut pair in a single step", [this] {
            emit_net(turbo_eliminate(load_net(a_), std::max(pair_, 0)));
            return kTrue;
        });
        tur->add_option("file", a_)->required();
        tur->add_option("--pair", pair_, "index of the cut pair (default 0)");

        auto* des = verb(*nt, "deseq", "proof-net of a proof", [this] {
            emit_net(desequentialize(load_proof(a_)));
            return kTrue;
        });
        des->add_option("proof", a_)->required();

        auto* seq = verb(*nt, "seq", "a proof whose proof-net is the given one", [this] {
            emit_proof(sequentialize(load_net(a_)));
            return kTrue;
        });
        seq->add_option("net", a_)->required();

        auto* dot = verb(*nt, "dot", "Graphviz rendering", [this] {
            std::string s = net_dot(load_net(a_));
            if (file_out_.empty()) out_ << s;
            else write_text_file(file_out_, s);
            return kTrue;
        });
        dot->add_option("net", a_)->required();
        dot->add_option("-o,--out", file_out_, "write to a file instead of stdout");

        auto* prd = verb(*nt, "predicates", "bipartite, full and ax-unique", [this] {
            LinkingSet n = load_net(a_);
            bool bip = is_bipartite(n), full = is_full(n), axu = is_ax_unique(n);
            if (o_.json) {
                emit(Json{{"bipartite", bip}, {"full", full}, {"axUnique", axu}});
            } else {
                out_ << std::boolalpha << "bipartite " << bip << "\nfull " << full << "\nax-unique " << axu << "\n";
            }
            return kTrue;
        });
        prd->add_option("net", a_)->required();
    }

    // ------------------------------------------------------------ cat
    void add_cat(CLI::App& app) {
        auto* ct = app.add_subcommand("cat", "categorical formulas (-o for linear implication)");
        ct->require_subcommand(1);

        auto* tm = verb(*ct, "to-mall", "translate a categorical formula into MALL", [this] {
            Formula a = cat_to_mall(parse_cat(a_));
            if (o_.json) emit(Json{{"mall", print(a)}, {"polarity", polarity_name(classify(a))}});
            else out_ << print(a) << "\n";
            return kTrue;
        });
        tm->add_option("F", a_)->required();

        auto* fm = verb(*ct, "from-mall", "translate a MALL formula into a categorical one", [this] {
            Formula a = parse(a_);
            CatFormula f = mall_to_cat(a);
            std::optional<CatFormula> smcc;
            if (classify(a) == Polarity::Output) smcc = output_to_smcc(a);
            if (o_.json) {
                emit(Json{{"star", print_cat(f)},
                          {"polarity", polarity_name(classify(a))},
                          {"smcc", smcc ? Json(print_cat(*smcc)) : Json(nullptr)}});
            } else {
                out_ << print_cat(f) << "\n";
                if (smcc) out_ << "output formula, smcc reading: " << print_cat(*smcc) << "\n";
            }
            return kTrue;
        });
        fm->add_option("A", a_)->required();

        auto decide = [this](bool smcc) {
            CatFormula f = parse_cat(a_), g = parse_cat(b_);
            bool r = smcc ? decide_iso_smcc(f, g) : decide_iso_star(f, g);
            if (o_.json) emit(Json{{"iso", r}});
            else out_ << (r ? "isomorphic" : "not isomorphic") << "\n";
            return r ? kTrue : kFalse;
        };
        auto* ds = verb(*ct, "decide-star", "isomorphism in star-autonomous categories with products",
                        [decide] { return decide(false); });
        ds->add_option("F", a_)->required();
        ds->add_option("G", b_)->required();
        auto* dm = verb(*ct, "decide-smcc", "isomorphism in symmetric monoidal closed categories with products",
                        [decide] { return decide(true); });
        dm->add_option("F", a_)->required();
        dm->add_option("G", b_)->required();
    }

    // ------------------------------------------------------------ fmt
    void add_fmt(CLI::App& app) {
        auto* ft = app.add_subcommand("fmt", "formula utilities");
        ft->require_subcommand(1);

        auto* nf = verb(*ft, "normalize", "distributed form, then AC-canonical form", [this] {
            Formula a = parse(a_);
            auto [dist, trace] = d_normalize(a);
            Formula canon = ac_canonical(dist);
            if (o_.json) {
                emit(Json{{"distributed", print(dist)}, {"canonical", print(canon)}, {"steps", trace.size()}});
            } else {
                out_ << print(canon) << "\n";
            }
            return kTrue;
        });
        nf->add_option("A", a_)->required();

        auto* du = verb(*ft, "dual", "linear negation", [this] {
            Formula d = dual(parse(a_));
            if (o_.json) emit(Json{{"dual", print(d)}});
            else out_ << print(d) << "\n";
            return kTrue;
        });
        du->add_option("A", a_)->required();

        auto* ms = verb(*ft, "mass", "mass of a formula", [this] {
            Formula a = parse(a_);
            Mass m = mass(a);
            if (o_.json) emit(Json{{"mass", mass_to_json(m)}, {"size", a.size()}});
            else out_ << m.str() << "\n";
            return kTrue;
        });
        ms->add_option("A", a_)->required();
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return Cli(out, err).run(argc, argv);
}

}  // namespace mall
