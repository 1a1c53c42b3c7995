// bluebend: command line front end. Every verb prints one JSON document on stdout.
//
// Exit codes: 0 ok, 2 parse or validation error, 3 Unknown verdict or exhausted budget, 4 precondition violation.

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "bluebend/engine.hpp"
#include "bluebend/io.hpp"

using namespace bluebend;
using io::json;

namespace {

constexpr int kOk = 0, kInvalid = 2, kUnknown = 3, kPrecondition = 4;

int exit_code_for(const std::string& code) {
    static const std::set<std::string> invalid{"ParseError",      "InvalidTag",        "InvalidValue",
                                               "TagMismatch",     "UnknownGenerator",  "NameClash",
                                               "InvalidBudget",   "UnassignedGenerator", "GeneratorMismatch",
                                               "UsageError"};
    static const std::set<std::string> budget{"Unstable", "CompletionBudgetExceeded", "NotStabilized", "Unknown"};
    if (invalid.count(code)) return kInvalid;
    if (budget.count(code)) return kUnknown;
    return kPrecondition;
}

int report(const std::string& code, const std::string& message) {
    json e{{"error", {{"code", code}, {"message", message}}}};
    std::cout << e.dump() << "\n";
    return exit_code_for(code);
}

struct Options {
    std::string in;
    int depth = -1, len = -1, degree = -1;
    unsigned seed = 0x5eed;
    std::string format = "json";
};

Budget resolve_budget(const Options& o) {
    Budget b;
    if (const char* env = std::getenv("BLUEBEND_BUDGET")) {
        // "depth,len,degree"
        std::stringstream ss(env);
        std::string item;
        std::vector<int> v;
        try {
            while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
        } catch (const std::exception&) {
            fail("InvalidBudget", "BLUEBEND_BUDGET must look like depth,len,degree");
        }
        if (v.size() != 3) fail("InvalidBudget", "BLUEBEND_BUDGET must look like depth,len,degree");
        b = Budget{v[0], v[1], v[2]};
    }
    if (o.depth >= 0) b.max_depth = o.depth;
    if (o.len >= 0) b.max_sum_len = o.len;
    if (o.degree >= 0) b.max_degree = o.degree;
    if (b.max_depth < 0 || b.max_sum_len < 1 || b.max_degree < 1) fail("InvalidBudget", "budget values out of range");
    return b;
}

json load(const std::string& path) {
    if (path.empty()) fail("UsageError", "--in is required");
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return io::parse_text(ss.str());
    }
    return io::read_file(path);
}

Presentation load_presentation(const Options& o, const Budget& b) {
    Presentation p = io::presentation_from_json(load(o.in));
    p.budget_default = b;
    return p;
}

BaseValuation base_arg(const std::string& text, GroundTag source, GroundTag target) {
    if (!text.empty() && text.front() == '{') return io::base_from_json(io::parse_text(text), source, target);
    return parse_base_valuation(text, source, target);
}

int verdict_exit(const Verdict& v) { return v.is_unknown() ? kUnknown : kOk; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ordered blueprint toolkit"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--in", o.in, "input JSON file, - for stdin");
        c->add_option("--budget-depth", o.depth, "derivation depth bound");
        c->add_option("--budget-len", o.len, "bound on sum length");
        c->add_option("--budget-degree", o.degree, "bound on monomial degree");
        c->add_option("--seed", o.seed, "seed for sampled model search");
        c->add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    };

    std::string functor, base = "trivial", target = "TROP", point, relation, poly, coeffs, le_one;
    std::vector<std::string> elems;
    int degree_bound = 2, size_bound = 2;
    long integral_prime = 0;
    bool recover = false;

    auto* show = app.add_subcommand("show", "parse, validate and print a presentation");
    auto* fun = app.add_subcommand("apply-functor", "apply POS, HULL, INV or IDEM");
    fun->add_option("--functor", functor, "pos, hull, inv or idem")->required();
    auto* ten = app.add_subcommand("tensor", "relative tensor product; input {B, C, D, fB, fC}");
    auto* loc = app.add_subcommand("localize", "invert monomials");
    loc->add_option("--elem", elems, "monomial in text syntax, repeatable")->required();
    auto* bnd = app.add_subcommand("bend", "bend along a base valuation");
    auto* gg = app.add_subcommand("gg", "Giansiracusa congruence from degree-bounded circuits");
    gg->add_option("--degree", degree_bound, "degree bound for ideal elements");
    auto* trc = app.add_subcommand("trop-check", "is a point in the tropicalization");
    trc->add_option("--point", point, "JSON object generator -> value")->required();
    auto* val = app.add_subcommand("check-valuation", "is the assignment a valuation; input valuation JSON");
    auto* hyp = app.add_subcommand("hypersurface", "tropical hypersurface of a polynomial");
    hyp->add_option("--poly", poly, "polynomial in text syntax")->required();
    auto* spc = app.add_subcommand("spectrum", "prime k-ideals");
    auto* glb = app.add_subcommand("globalize", "global sections presentation");
    auto* kat = app.add_subcommand("kato", "affine Kato fan of a monoid");
    kat->add_flag("--recover", recover, "recover the fan from the bend of a ring presentation");
    auto* cone = app.add_subcommand("cone-check", "extended cone membership");
    cone->add_option("--point", point, "JSON object generator -> value in OTROP")->required();
    auto* an = app.add_subcommand("an", "span-semiring fragment");
    an->add_option("--size", size_bound, "maximal number of span generators");
    an->add_option("--coeffs", coeffs, "comma separated fragment coefficients");
    an->add_option("--integral-prime", integral_prime, "prime defining integral scalars for ring grounds");
    an->add_option("--le-one", le_one, "comma separated monomials designated <= 1");
    auto* wts = app.add_subcommand("weights", "tropical weight at a point of the tropicalization");
    wts->add_option("--point", point, "JSON object generator -> value")->required();
    wts->add_option("--degree", degree_bound, "degree bound for ideal elements");
    wts->add_option("--poly", poly, "also print the initial form of this polynomial");
    auto* der = app.add_subcommand("derives", "decide a relation in a presentation");
    der->add_option("--relation", relation, "relation like \"0 == 1\" or \"x <= y + 1\"")->required();

    for (auto* c : {show, fun, ten, loc, bnd, gg, trc, val, hyp, spc, glb, kat, cone, an, wts, der}) add_common(c);
    for (auto* c : {bnd, gg, trc, hyp, wts}) c->add_option("--base", base, "base valuation, e.g. trivial or p_adic(2)");
    for (auto* c : {bnd, gg, trc, wts}) c->add_option("--target", target, "target ground tag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("UsageError", e.what());
    }

    try {
        const Budget b = resolve_budget(o);
        set_model_seed(o.seed);
        if (o.format == "svg" && !hyp->parsed()) fail("UsageError", "svg output is only available for hypersurface");

        if (show->parsed()) {
            emit(io::to_json(load_presentation(o, b)));
            return kOk;
        }
        if (fun->parsed()) {
            emit(io::to_json(apply_functor(load_presentation(o, b), parse_functor_tag(functor))));
            return kOk;
        }
        if (ten->parsed()) {
            json j = load(o.in);
            for (const char* k : {"B", "C", "D", "fB", "fC"})
                if (!j.contains(k)) fail("ParseError", std::string("tensor input needs field '") + k + "'");
            Presentation pB = io::presentation_from_json(j["B"]), pC = io::presentation_from_json(j["C"]),
                         pD = io::presentation_from_json(j["D"]);
            auto gmap = [](const json& m, const Presentation& into) {
                GeneratorMap out;
                if (!m.is_object()) fail("ParseError", "a generator map is an object");
                for (auto& [g, v] : m.items())
                    out[g] = v.is_string() ? parse_monomial(into, v.get<std::string>()) : io::monomial_from_json(into, v);
                return out;
            };
            pB.budget_default = pC.budget_default = pD.budget_default = b;
            emit(io::to_json(tensor(pB, pC, pD, gmap(j["fB"], pB), gmap(j["fC"], pC))));
            return kOk;
        }
        if (loc->parsed()) {
            Presentation p = load_presentation(o, b);
            std::vector<Monomial> ms;
            for (auto& e : elems) ms.push_back(parse_monomial(p, e));
            emit(io::to_json(localize(p, ms)));
            return kOk;
        }
        if (bnd->parsed()) {
            Presentation p = load_presentation(o, b);
            GroundTag t = GroundTag::parse(target);
            BendPresentation bp = bend(p, base_arg(base, p.ground, t), t);
            emit(json{{"bend", io::to_json(bp.underlying)}, {"embedding_generators", bp.embedding_gens}});
            return kOk;
        }
        if (gg->parsed()) {
            Presentation p = load_presentation(o, b);
            GroundTag t = GroundTag::parse(target);
            emit(io::to_json(gg_congruence(p, base_arg(base, p.ground, t), t, degree_bound)));
            return kOk;
        }
        if (trc->parsed()) {
            Presentation p = load_presentation(o, b);
            GroundTag t = GroundTag::parse(target);
            BendPresentation bp = bend(p, base_arg(base, p.ground, t), t);
            bool in = point_in_trop(bp, io::assignment_from_json(io::parse_text(point), t));
            emit(json{{"in_tropicalization", in}});
            return kOk;
        }
        if (val->parsed()) {
            ValuationSpec s = io::valuation_from_json(load(o.in));
            s.source.budget_default = b;
            Verdict v = is_valuation(s, b);
            json out = io::to_json(v);
            if (v.is_proved()) out["class"] = valuation_class_name(classify_valuation(s));
            emit(out);
            return verdict_exit(v);
        }
        if (hyp->parsed()) {
            Presentation p = load_presentation(o, b);
            const GroundTag T = GroundTag::of(GroundKind::TROP);
            PolyhedralComplex c = tropical_hypersurface(p, parse_sum(p, poly), base_arg(base, p.ground, T));
            if (o.format == "svg") {
                std::cout << hypersurface_svg(c);
                return kOk;
            }
            json out = io::to_json(c);
            out["balancing_defects"] = balancing_defects(c);
            emit(out);
            return kOk;
        }
        if (spc->parsed()) {
            auto primes = prime_k_ideals(load_presentation(o, b), b);
            json pts = json::array(), tentative = json::array();
            for (size_t i = 0; i < primes.size(); ++i) {
                json pt = json::array({"<zero>"});
                for (auto& g : primes[i].generator_subset) pt.push_back(g);
                pts.push_back(pt);
                if (primes[i].tentative) tentative.push_back(i);
            }
            json out{{"primes", pts}};
            if (!tentative.empty()) out["tentative"] = tentative;
            emit(out);
            return kOk;
        }
        if (glb->parsed()) {
            emit(io::to_json(globalize(load_presentation(o, b), b)));
            return kOk;
        }
        if (kat->parsed()) {
            Presentation p = load_presentation(o, b);
            if (recover) {
                KatoRecovery r = recover_kato_from_bend(p, b);
                emit(json{{"fan", io::to_json(r.fan)}, {"isomorphism", io::to_json(r.iso)}});
                return verdict_exit(r.iso);
            }
            emit(io::to_json(kato_fan(p)));
            return kOk;
        }
        if (cone->parsed()) {
            Presentation p = load_presentation(o, b);
            auto pt = io::assignment_from_json(io::parse_text(point), GroundTag::of(GroundKind::OTROP));
            emit(json{{"in_cone", extended_cone_membership(p, pt)}});
            return kOk;
        }
        if (an->parsed()) {
            Presentation p = load_presentation(o, b);
            KDesignation k;
            k.integral_prime = integral_prime;
            auto split = [](const std::string& s) {
                std::vector<std::string> out;
                std::stringstream ss(s);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) out.push_back(item);
                return out;
            };
            for (auto& c : split(coeffs)) k.fragment_coeffs.push_back(GroundValue::parse(p.ground, c));
            for (auto& m : split(le_one)) k.le_one.push_back(parse_monomial(p, m));
            SpanTable t = macpherson_an(p, k, size_bound, b);
            emit(io::to_json(t));
            return t.unknown ? kUnknown : kOk;
        }
        if (wts->parsed()) {
            Presentation p = load_presentation(o, b);
            GroundTag t = GroundTag::parse(target);
            BendPresentation bp = bend(p, base_arg(base, p.ground, t), t);
            auto w = io::assignment_from_json(io::parse_text(point), t);
            json out{{"weight", mr_weight(bp, w, degree_bound)}};
            if (!poly.empty())
                out["initial_form"] = io::to_json(mr_initial_form(bp.underlying, parse_sum(bp.underlying, poly), w));
            emit(out);
            return kOk;
        }
        if (der->parsed()) {
            Presentation p = load_presentation(o, b);
            Verdict v = derives(p, parse_relation(p, relation), b);
            emit(io::to_json(v));
            return verdict_exit(v);
        }
    } catch (const Error& e) {
        return report(e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return report("ParseError", e.what());
    }
    return kOk;
}
