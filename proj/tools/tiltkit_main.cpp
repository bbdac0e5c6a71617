#include <CLI11.hpp>
#include <json.hpp>

#include "tiltkit/derived.hpp"
#include "tiltkit/workspace.hpp"

#include <iostream>

using namespace tiltkit;
using nlohmann::json;

namespace {

// exit codes: 0 verified, 1 property falsified, 2 input/usage error
constexpr int kVerified = 0;
constexpr int kFalsified = 1;
constexpr int kUsage = 2;

json field_json(const FieldSpec& f) {
    json j;
    j["kind"] = f.is_rational() ? "rational" : "prime";
    if (!f.is_rational()) j["p"] = f.p;
    return j;
}

json report_json(const TiltingReport& r) {
    return json{{"axioms",
                 {{"T1", {{"pd", r.pd}}},
                  {"T2", {{"checked_degrees", r.t2_checked}}},
                  {"T3good",
                   {{"coresolution_length", r.cores_length}, {"terms", r.cores_term_dims}}}}},
                {"S_dim", r.s_dim},
                {"dagger",
                 {{"length", r.dagger_length},
                  {"exact", r.dagger_exact},
                  {"double_end_ok", r.double_end_ok}}},
                {"strict_lifts", r.strict_lifts},
                {"rh_model", r.rh_via_injectives ? "injective-resolutions" : "strict-lifts"}};
}

json derived_json(const DerivedReport& r) {
    return json{{"degrees", r.degrees},
                {"input_dims", r.input_dims},
                {"output_dims", r.output_dims},
                {"verdicts", r.verdicts},
                {"window", {r.window.lo, r.window.hi}},
                {"pass", r.pass}};
}

json class_json(const ClassReport& r) {
    json j;
    j["witness_dims"] = r.witness_dims;
    if (r.index)
        j["index"] = *r.index;
    else
        j["index"] = nullptr;
    return j;
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

std::vector<BoundedComplex> probe_suite(const TiltingContext& ctx, std::uint64_t seed,
                                        std::size_t count) {
    std::vector<BoundedComplex> suite;
    for (const auto& s : ctx.canon_S.simples) suite.push_back(BoundedComplex::stalk(s, 0));
    std::vector<ModulePtr> indec;
    for (const auto& s : ctx.canon_S.simples) indec.push_back(s);
    for (const auto& p : ctx.canon_S.projectives) indec.push_back(p);
    for (std::size_t k = 0; k < count; ++k)
        suite.push_back(random_complex(ctx.S, indec, seed + k));
    return suite;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tilting-module certification and derived-equivalence checks"};
    app.require_subcommand(1);

    std::string workspace, module_name, complex_name, window_spec, tilting_name = "T";
    std::size_t degree_n = 1, degree_i = 0;
    std::uint64_t seed = 0;
    bool pretty = false;
    app.add_option("--workspace", workspace, "workspace JSON file")->required();
    app.add_option("--tilting", tilting_name, "name of the tilting module (default: T)");
    app.add_option("--module", module_name, "operand module name");
    app.add_option("--complex", complex_name, "operand complex name");
    app.add_option("--n", degree_n, "tilting degree bound (default: 1)");
    app.add_option("--degree", degree_i, "cohomological degree");
    app.add_option("--seed", seed, "seed for randomized suites (default: 0)");
    app.add_option("--window", window_spec, "degree window LO:HI for lg");
    app.add_flag("--text", pretty, "pretty-print the JSON report");

    auto* cmd_check = app.add_subcommand("check-tilting", "certify an n-tilting module");
    auto* cmd_good = app.add_subcommand("good-tilt", "symbolic good-tilting rewrite");
    std::string symbols;
    cmd_good->add_option("--symbols", symbols, "comma-separated coresolution terms")->required();
    auto* cmd_ext = app.add_subcommand("ext", "dim Ext^i(T, M) for M = --module, i = --degree");
    auto* cmd_tor =
        app.add_subcommand("tor", "dim Tor_i^S(N, T) for N = Ext^i(T, --module)");
    auto* cmd_endo = app.add_subcommand("endo", "endomorphism algebra of --module");
    auto* cmd_class = app.add_subcommand("class", "KE classification of --module");
    auto* cmd_miy = app.add_subcommand("miyashita", "KE_i/KT_i roundtrip on --module");
    auto* cmd_lemma = app.add_subcommand("lemma13", "acyclicity and adjunction checks");
    std::size_t proj_index = 0;
    cmd_lemma->add_option("--projective", proj_index, "index of the projective S-module");
    auto* cmd_dagger = app.add_subcommand("dagger", "endomorphism-side resolution report");
    auto* cmd_counit =
        app.add_subcommand("derived-counit", "counit homology check on --complex");
    auto* cmd_unit = app.add_subcommand("derived-unit", "unit homology check on RH(--complex)");
    auto* cmd_emem = app.add_subcommand("e-member", "E-membership of RH(--complex)");
    auto* cmd_probe = app.add_subcommand("classical-probe", "per-object classical test suite");
    std::size_t probe_count = 20;
    cmd_probe->add_option("--count", probe_count, "number of random complexes");
    auto* cmd_equiv = app.add_subcommand("equivalence", "Gen_n-equivalence of two modules");
    std::string other;
    std::size_t other_n = 1;
    cmd_equiv->add_option("--other", other, "second tilting module")->required();
    cmd_equiv->add_option("--other-n", other_n, "degree bound for the second module");

    for (CLI::App* sc : {cmd_check, cmd_good, cmd_ext, cmd_tor, cmd_endo, cmd_class, cmd_miy,
                         cmd_lemma, cmd_dagger, cmd_counit, cmd_unit, cmd_emem, cmd_probe,
                         cmd_equiv})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kVerified : kUsage;
    }

    try {
        if (cmd_good->parsed()) {
            FormalExactSequence seq;
            std::string cur;
            std::istringstream ss(symbols);
            while (std::getline(ss, cur, ','))
                if (!cur.empty()) seq.terms.push_back(FormalSum::single(cur));
            GoodTiltResult r = good_tilt_formal(seq);
            json steps = json::array();
            for (const auto& s : r.steps)
                steps.push_back(
                    {{"augmented", s.augmented_str()}, {"absorbed", s.absorbed.str()}});
            emit(json{{"command", "good-tilt"},
                      {"t_prime", r.t_prime.str()},
                      {"steps", steps},
                      {"final", r.final_sequence.str()}},
                 pretty);
            return kVerified;
        }

        Workspace ws = load_workspace_file(workspace);

        if (cmd_check->parsed()) {
            const std::string& name = module_name.empty() ? tilting_name : module_name;
            CertifyOutcome out = certify_tilting(ws.algebra, ws.module_named(name), degree_n);
            emit(json{{"command", "check-tilting"},
                      {"module", name},
                      {"n", degree_n},
                      {"field", field_json(ws.field)},
                      {"certified", out.ok()},
                      {"failures", out.failures},
                      {"report", report_json(out.report)}},
                 pretty);
            return out.ok() ? kVerified : kFalsified;
        }
        if (cmd_endo->parsed()) {
            EndAlgebra e = end_algebra(ws.module_named(module_name));
            emit(json{{"command", "endo"}, {"module", module_name}, {"dim", e.algebra->dim()}},
                 pretty);
            return kVerified;
        }

        CertifyOutcome cert = certify_tilting(ws.algebra, ws.module_named(tilting_name), degree_n);
        if (!cert.ok()) {
            emit(json{{"command", "certify"},
                      {"module", tilting_name},
                      {"failures", cert.failures},
                      {"report", report_json(cert.report)}},
                 pretty);
            return kFalsified;
        }
        TiltingContext ctx = std::move(*cert.ctx);

        if (cmd_ext->parsed()) {
            std::size_t d = ext_T_dim(ctx, ws.module_named(module_name), degree_i);
            emit(json{{"command", "ext"},
                      {"module", module_name},
                      {"degree", degree_i},
                      {"dim", d}},
                 pretty);
            return kVerified;
        }
        if (cmd_tor->parsed()) {
            ModulePtr e = ext_T_module(ctx, ws.module_named(module_name), degree_i);
            TorResult t = tor(e, ctx.bimodule, degree_i);
            emit(json{{"command", "tor"},
                      {"witness_of", module_name},
                      {"degree", degree_i},
                      {"dim", t.dim}},
                 pretty);
            return kVerified;
        }
        if (cmd_class->parsed()) {
            ClassReport ke = ke_index(ctx, ws.module_named(module_name));
            emit(json{{"command", "class"}, {"module", module_name}, {"ke", class_json(ke)}},
                 pretty);
            return ke.index ? kVerified : kFalsified;
        }
        if (cmd_miy->parsed()) {
            RoundtripReport r = miyashita_roundtrip(ctx, ws.module_named(module_name));
            emit(json{{"command", "miyashita"},
                      {"module", module_name},
                      {"index", r.index},
                      {"ke_dims", r.ke_dims},
                      {"kt_dims", r.kt_dims},
                      {"witness_dim", r.witness_dim},
                      {"ok", r.ok},
                      {"failures", r.failures}},
                 pretty);
            return r.ok ? kVerified : kFalsified;
        }
        if (cmd_lemma->parsed()) {
            if (proj_index >= ctx.canon_S.projectives.size())
                throw std::runtime_error("projective index out of range");
            Lemma13Report r = lemma13_check(ctx, ws.module_named(module_name),
                                            ctx.canon_S.projectives[proj_index]);
            emit(json{{"command", "lemma13"},
                      {"module", module_name},
                      {"projective", proj_index},
                      {"tor_vanishes", r.tor_vanishes},
                      {"counit_iso", r.counit_iso},
                      {"ext_vanishes", r.ext_vanishes},
                      {"unit_iso", r.unit_iso},
                      {"ok", r.ok()}},
                 pretty);
            return r.ok() ? kVerified : kFalsified;
        }
        if (cmd_dagger->parsed()) {
            std::vector<std::size_t> dims;
            for (int j = ctx.dagger.low(); j <= ctx.dagger.high(); ++j)
                dims.push_back(ctx.dagger.term(j)->dim());
            emit(json{{"command", "dagger"},
                      {"length", ctx.report.dagger_length},
                      {"exact", ctx.report.dagger_exact},
                      {"double_end_ok", ctx.report.double_end_ok},
                      {"term_dims", dims}},
                 pretty);
            return (ctx.report.dagger_exact && ctx.report.double_end_ok) ? kVerified
                                                                          : kFalsified;
        }
        if (cmd_counit->parsed()) {
            DerivedReport r = counit_check(ctx, ws.complex_named(complex_name));
            json j = derived_json(r);
            j["command"] = "derived-counit";
            j["complex"] = complex_name;
            j["seed"] = seed;
            emit(j, pretty);
            return r.pass ? kVerified : kFalsified;
        }
        if (cmd_unit->parsed() || cmd_emem->parsed()) {
            // S-side complexes are entered as RH of a named R-complex
            BoundedComplex nc = rh(ctx, ws.complex_named(complex_name));
            if (cmd_emem->parsed()) {
                Window w = lg_guaranteed_window(ctx, nc);
                if (!window_spec.empty()) {
                    auto colon = window_spec.find(':');
                    if (colon == std::string::npos)
                        throw std::runtime_error("window must look like LO:HI");
                    Window user{std::stoi(window_spec.substr(0, colon)),
                                std::stoi(window_spec.substr(colon + 1))};
                    w.lo = std::min(w.lo, user.lo);
                    w.hi = std::max(w.hi, user.hi);
                }
                BoundedComplex image = lg(ctx, nc, w);
                bool member = true;
                for (int j = w.lo; j <= w.hi && member; ++j)
                    if (image.homology_dim(j) != 0) member = false;
                emit(json{{"command", "e-member"},
                          {"complex", complex_name},
                          {"window", {w.lo, w.hi}},
                          {"member", member}},
                     pretty);
                return kVerified;
            }
            DerivedReport r = unit_check(ctx, nc);
            json j = derived_json(r);
            j["command"] = "derived-unit";
            j["complex"] = complex_name;
            j["seed"] = seed;
            emit(j, pretty);
            return r.pass ? kVerified : kFalsified;
        }
        if (cmd_probe->parsed()) {
            auto suite = probe_suite(ctx, seed, probe_count);
            ClassicalProbeReport r = classical_probe(ctx, suite);
            emit(json{{"command", "classical-probe"},
                      {"tested", r.tested},
                      {"vacuous", r.vacuous},
                      {"seed", seed},
                      {"pass", r.pass},
                      {"counterexamples", r.counterexamples}},
                 pretty);
            return r.pass ? kVerified : kFalsified;
        }
        if (cmd_equiv->parsed()) {
            CertifyOutcome o2 = certify_tilting(ws.algebra, ws.module_named(other), other_n);
            if (!o2.ok()) {
                emit(json{{"command", "equivalence"}, {"failures", o2.failures}}, pretty);
                return kFalsified;
            }
            EquivalenceReport r = equivalence_check(ctx, *o2.ctx, {});
            emit(json{{"command", "equivalence"},
                      {"equivalent", r.equivalent},
                      {"disagreements", r.disagreements}},
                 pretty);
            return r.equivalent ? kVerified : kFalsified;
        }
        std::cerr << "no subcommand handled\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
