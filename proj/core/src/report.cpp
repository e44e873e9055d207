#include "detkit/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "detkit/errors.hpp"
#include "detkit/lifting.hpp"
#include "detkit/oracle.hpp"
#include "detkit/problem.hpp"

namespace detkit {

namespace {

using nlohmann::json; // std::map backed, so object keys come out sorted

constexpr const char* kTool = "detkit 1.0.0";
constexpr std::uint32_t kDefaultCap = 16;
constexpr std::uint32_t kDefaultLiftCap = 64;

std::string fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json poly_list(const std::vector<Poly>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(p.str());
    return a;
}

json vec_list(const std::vector<Vec>& v) {
    json a = json::array();
    for (const auto& w : v) a.push_back(poly_list(w.c));
    return a;
}

json cert_json(const MembershipCert& c) {
    return {{"target", c.target.str()},
            {"generators", poly_list(c.gens)},
            {"coefficients", poly_list(c.coeffs)}};
}

json witness_json(const NonMembershipWitness& w) {
    return {{"target", w.target.str()},
            {"normal_form", w.nf.str()},
            {"basis", poly_list(w.basis)}};
}

json inputs_json(const ProblemSpec& spec) {
    json j;
    j["vars"] = spec.ctx ? spec.ctx->vars : std::vector<std::string>{};
    j["ideal"] = poly_list(spec.ideal);
    if (spec.perturbed) j["perturbed"] = poly_list(*spec.perturbed);
    if (spec.k) j["k"] = *spec.k;
    if (spec.divisor)
        j["divisor"] = {{"var", spec.ctx->vars[spec.divisor->first]},
                        {"r", spec.divisor->second}};
    if (spec.cap) j["cap"] = *spec.cap;
    if (spec.order) j["order"] = *spec.order;
    if (spec.box) j["box"] = {spec.box->first, spec.box->second};
    return j;
}

std::uint32_t pick(const std::optional<std::uint32_t>& a,
                   const std::optional<std::uint32_t>& b, std::uint32_t dflt) {
    return a ? *a : b ? *b : dflt;
}

TruncationBox pick_box(const CliOptions& opts, const ProblemSpec& spec) {
    if (opts.box) return {opts.box->first, opts.box->second};
    if (spec.box) return {spec.box->first, spec.box->second};
    return {4, 4};
}

Presentation presentation_of(const ProblemSpec& spec) {
    return Presentation{spec.ctx, spec.ideal, {}, {}};
}

json subquotient_report(const Subquotient& m, const std::optional<TruncationBox>& box,
                        json& certificates, std::string& summary, const char* name) {
    json results;
    results["rank"] = m.rank;
    results["generator_count"] = m.gens.size();
    bool zero = is_zero_module(m);
    results["is_zero"] = zero;
    auto ann = annihilator(m);
    results["annihilator"] = poly_list(ann);
    if (box) results["box_dimension"] = truncated_dimension(m, *box);
    certificates["generators"] = vec_list(m.gens);
    certificates["zero_span"] = vec_list(m.zero);
    std::ostringstream s;
    if (zero)
        s << name << " is the zero module";
    else {
        s << name << " has " << m.gens.size() << " generator(s); annihilator (";
        for (std::size_t i = 0; i < ann.size(); ++i) s << (i ? ", " : "") << ann[i].str();
        s << ")";
    }
    summary = s.str();
    return results;
}

json lift_json(const LiftCertificate& c) {
    json j;
    j["target"] = c.target_L;
    j["working"] = c.working_L;
    j["N"] = c.N;
    j["M"] = c.M;
    j["agreement_order"] = c.agreement_order;
    j["images"] = poly_list(c.map.images);
    json gens = json::array();
    for (const auto& g : c.gen_certs)
        gens.push_back({{"image", g.image.str()},
                        {"coefficients", poly_list(g.coeffs)},
                        {"cofactor", g.cofactor.str()}});
    j["generators"] = gens;
    json pre = json::array();
    for (const auto& p : c.preimages)
        pre.push_back({{"preimage", p.preimage.str()},
                       {"image", p.image.str()},
                       {"coefficients", poly_list(p.coeffs)},
                       {"cofactor", p.cofactor.str()}});
    j["preimages"] = pre;
    json tr = json::array();
    for (const auto& st : c.trace)
        tr.push_back({{"level", st.level}, {"theta", poly_list(st.theta)}});
    j["trace"] = tr;
    return j;
}

std::vector<Poly> parse_poly_array(const json& a, const CtxPtr& ctx) {
    std::vector<Poly> out;
    for (const auto& s : a) out.push_back(Poly::parse(s.get<std::string>(), ctx));
    return out;
}

LiftCertificate lift_from_json(const json& envelope) {
    const json& in = envelope.at("inputs");
    const json& lf = envelope.at("certificates").at("lift");

    LiftCertificate c;
    CtxPtr ctx = make_ctx(in.at("vars").get<std::vector<std::string>>());
    c.pair.orig = Presentation{ctx, parse_poly_array(in.at("ideal"), ctx), {}, {}};
    c.pair.pert = parse_poly_array(in.at("perturbed"), ctx);
    c.pair.k = in.at("k").get<std::uint32_t>();
    if (in.contains("divisor")) {
        const json& d = in.at("divisor");
        std::string name = d.at("var").get<std::string>();
        const auto& vars = ctx->vars;
        auto pos = std::find(vars.begin(), vars.end(), name);
        if (pos == vars.end()) throw ParseError("divisor variable not in vars");
        c.pair.divisor = DivisorDatum{static_cast<std::uint32_t>(pos - vars.begin()),
                                      d.at("r").get<std::uint32_t>()};
    }
    c.target_L = lf.at("target").get<std::uint32_t>();
    c.working_L = lf.at("working").get<std::uint32_t>();
    c.N = lf.at("N").get<std::uint32_t>();
    c.M = lf.at("M").get<std::uint32_t>();
    c.agreement_order = lf.at("agreement_order").get<std::uint32_t>();
    c.map = MapTruncation{ctx, parse_poly_array(lf.at("images"), ctx), c.target_L};
    for (const auto& g : lf.at("generators")) {
        GenCert gc;
        gc.image = Poly::parse(g.at("image").get<std::string>(), ctx);
        gc.coeffs = parse_poly_array(g.at("coefficients"), ctx);
        gc.cofactor = Poly::parse(g.at("cofactor").get<std::string>(), ctx);
        c.gen_certs.push_back(std::move(gc));
    }
    for (const auto& p : lf.at("preimages")) {
        PreimageCert pc;
        pc.preimage = Poly::parse(p.at("preimage").get<std::string>(), ctx);
        pc.image = Poly::parse(p.at("image").get<std::string>(), ctx);
        pc.coeffs = parse_poly_array(p.at("coefficients"), ctx);
        pc.cofactor = Poly::parse(p.at("cofactor").get<std::string>(), ctx);
        c.preimages.push_back(std::move(pc));
    }
    for (const auto& st : lf.at("trace")) {
        StageTrace t;
        t.level = st.at("level").get<std::uint32_t>();
        t.theta = parse_poly_array(st.at("theta"), ctx);
        c.trace.push_back(std::move(t));
    }
    return c;
}

FamilyPair pair_of(const ProblemSpec& spec) {
    if (!spec.perturbed) throw ParseError("this command needs a 'perturbed' line");
    std::optional<DivisorDatum> dd;
    if (spec.divisor) dd = DivisorDatum{spec.divisor->first, spec.divisor->second};
    return make_family_pair(presentation_of(spec), *spec.perturbed, *spec.k, dd);
}

struct Sections {
    json inputs;
    json results;
    json certificates = json::object();
    std::string summary;
    int exit_code = 0;
};

Sections dispatch(const std::string& command, const std::string& input,
                  const CliOptions& opts) {
    Sections out;

    if (command == "verify") {
        json envelope;
        LiftCertificate cert;
        try {
            envelope = json::parse(input);
            cert = lift_from_json(envelope);
            out.inputs = envelope.at("inputs");
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed certificate: ") + e.what());
        }
        LiftCheck chk = verify_lift(cert);
        out.results["ok"] = chk.ok;
        if (!chk.ok) {
            out.results["failing_index"] = chk.index;
            out.results["what"] = chk.what;
            out.summary = "certificate REJECTED at check " + std::to_string(chk.index) +
                          ": " + chk.what;
            out.exit_code = 1;
        } else {
            out.summary = "certificate verified: every identity re-expands exactly";
        }
        return out;
    }

    ProblemSpec spec = parse_problem(input);
    out.inputs = inputs_json(spec);
    Presentation pres = presentation_of(spec);
    std::uint32_t cap = pick(opts.cap, spec.cap, kDefaultCap);

    if (command == "t1" || command == "t2") {
        auto L = ls_complex(pres);
        Subquotient m = command == "t1" ? t1(L) : t2(L);
        std::optional<TruncationBox> box;
        if (opts.box || spec.box) box = pick_box(opts, spec);
        out.results = subquotient_report(m, box, out.certificates, out.summary,
                                         command == "t1" ? "T1" : "T2");
    } else if (command == "bound") {
        DeterminacyReport rep = determinacy(pres, cap);
        out.results["N1"] = rep.N1;
        out.results["N2"] = rep.N2;
        out.results["N"] = rep.N;
        out.results["threshold_k"] = rep.threshold_k;
        out.results["precision_loss"] = rep.precision_loss;
        out.results["annihilator"] = poly_list(rep.ann_t1);
        out.results["t2_levels_checked"] = rep.t2_levels_checked;
        out.certificates["n1_certificate"] = cert_json(rep.n1_cert);
        if (rep.n1_witness) out.certificates["n1_witness"] = witness_json(*rep.n1_witness);
        out.certificates["t2_strict_witnesses"] = vec_list(rep.t2_strict_witnesses);
        std::ostringstream s;
        s << "N = " << rep.N << " (N1 = " << rep.N1 << ", N2 = " << rep.N2
          << "); threshold k = " << rep.threshold_k << ", precision loss "
          << rep.precision_loss;
        out.summary = s.str();
    } else if (command == "divisor-bound") {
        if (!spec.divisor) throw ParseError("'divisor-bound' needs divisor/r lines");
        DivisorReport rep = divisor_report(pres, spec.divisor->first, cap);
        auto bound_json = [&](const DivisorBound& b, json& cert_out) {
            cert_out["certificate"] = cert_json(b.cert);
            if (b.wit_N) cert_out["witness_N"] = witness_json(*b.wit_N);
            if (b.wit_M) cert_out["witness_M"] = witness_json(*b.wit_M);
            return json{{"s", b.s}, {"N", b.N}, {"M", b.M}, {"annihilator", poly_list(b.ann)}};
        };
        json c0, c1;
        out.results["s0"] = bound_json(rep.s0, c0);
        out.results["s1"] = bound_json(rep.s1, c1);
        out.results["divisor"] = spec.ctx->vars[rep.divisor_var];
        out.certificates["s0"] = c0;
        out.certificates["s1"] = c1;
        std::ostringstream s;
        s << "divisor bounds: (N, M) = (" << rep.s0.N << ", " << rep.s0.M
          << ") at s = 0, (" << rep.s1.N << ", " << rep.s1.M << ") at s = 1";
        out.summary = s.str();
    } else if (command == "support") {
        std::vector<Poly> cutouts;
        json names = json::array();
        cutouts.push_back(Poly::t_power(spec.ctx, 1));
        names.push_back("t");
        if (spec.divisor) {
            cutouts.push_back(Poly::var(spec.ctx, spec.divisor->first));
            names.push_back(spec.ctx->vars[spec.divisor->first]);
        }
        bool within = t1_support_within(pres, cutouts);
        out.results["cutouts"] = names;
        out.results["within"] = within;
        out.summary = within ? "T1 is supported inside the union of the cutouts"
                             : "T1 has support away from the cutouts";
    } else if (command == "lift") {
        FamilyPair pair = pair_of(spec);
        std::uint32_t target = pick(opts.order, spec.order, pair.k);
        LiftCertificate cert =
            formal_lift(pair, target, pick(opts.cap, spec.cap, kDefaultLiftCap));
        out.results["N"] = cert.N;
        out.results["M"] = cert.M;
        out.results["target"] = cert.target_L;
        out.results["working"] = cert.working_L;
        out.results["agreement_order"] = cert.agreement_order;
        out.results["images"] = poly_list(cert.map.images);
        out.certificates["lift"] = lift_json(cert);
        std::ostringstream s;
        s << "lift to order " << cert.target_L << " succeeded: N = " << cert.N
          << ", identity agreement through t^" << cert.agreement_order;
        out.summary = s.str();
    } else if (command == "oracle") {
        TruncationBox box = pick_box(opts, spec);
        out.results["box"] = {box.L, box.d};
        out.results["quotient_dimension"] = truncated_quotient_dimension(pres, box);
        out.results["t0_dimension"] = truncated_t0_dimension(pres, box);
        std::size_t orac = truncated_t1_dimension(pres, box);
        out.results["t1_dimension"] = orac;
        out.results["t2_dimension"] = truncated_t2_dimension(pres, box);
        std::size_t main_dim = truncated_dimension(t1(ls_complex(pres)), box);
        out.results["t1_main_dimension"] = main_dim;
        out.results["t1_agree"] = main_dim == orac;
        std::ostringstream s;
        s << "boxed T1 dimension " << orac << " (main pipeline " << main_dim << ", "
          << (main_dim == orac ? "agree" : "DISAGREE") << ")";
        if (spec.perturbed && spec.k) {
            std::uint32_t target = pick(opts.order, spec.order, *spec.k + 1);
            if (target > box.L) target = box.L;
            IsoSearchResult iso =
                truncated_iso_search(pres, *spec.perturbed, *spec.k, target, box);
            json ij;
            ij["found"] = iso.found;
            if (iso.found) {
                ij["images"] = poly_list(iso.images);
                ij["target"] = target;
            } else {
                ij["note"] = iso.note;
            }
            out.results["iso_search"] = ij;
            s << "; iso search " << (iso.found ? "found a change of coordinates"
                                               : "inconclusive (" + iso.note + ")");
        }
        out.summary = s.str();
    } else if (command == "artin-system") {
        FamilyPair pair = pair_of(spec);
        std::uint32_t target = pick(opts.order, spec.order, pair.k);
        LiftCertificate cert =
            formal_lift(pair, target, pick(opts.cap, spec.cap, kDefaultLiftCap));
        ArtinSystem sys = emit_artin_system(cert);
        out.results["order"] = sys.order;
        out.results["variables"] = sys.ext->vars;
        out.results["equations"] = poly_list(sys.equations);
        out.certificates["a_solution"] = poly_list(sys.a_solution);
        json b = json::array();
        for (const auto& row : sys.b_solution) b.push_back(poly_list(row));
        out.certificates["b_solution"] = b;
        out.certificates["residual_cofactors"] = poly_list(sys.residual_cofactors);
        std::ostringstream s;
        s << sys.equations.size() << " equation(s) in " << sys.ext->vars.size()
          << " unknowns, solved mod t^" << sys.order;
        out.summary = s.str();
    } else {
        throw ParseError("unknown command '" + command + "'");
    }
    return out;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "t1",   "t2",   "bound",  "divisor-bound", "support",
        "lift", "verify", "oracle", "artin-system"};
    return names;
}

RunResult run(const std::string& command, const std::string& input,
              const CliOptions& opts) {
    Sections sec;
    try {
        sec = dispatch(command, input, opts);
    } catch (const ParseError& e) {
        sec.results = json::object();
        json err{{"kind", "parse"}, {"message", e.what()}};
        if (e.line) err["line"] = e.line;
        if (e.col) err["col"] = e.col;
        sec.results["error"] = err;
        sec.summary = std::string("usage error: ") + e.what();
        sec.exit_code = 2;
    } catch (const CapError& e) {
        sec.results = json::object();
        sec.results["error"] = {{"kind", "cap"}, {"message", e.what()}};
        sec.summary = std::string("resource cap: ") + e.what();
        sec.exit_code = 3;
    } catch (const MathError& e) {
        sec.results = json::object();
        sec.results["error"] = {{"kind", "math"}, {"message", e.what()}};
        sec.summary = std::string("mathematical failure: ") + e.what();
        sec.exit_code = 1;
    } catch (const std::exception& e) {
        sec.results = json::object();
        sec.results["error"] = {{"kind", "internal"}, {"message", e.what()}};
        sec.summary = std::string("internal error: ") + e.what();
        sec.exit_code = 1;
    }

    json envelope;
    envelope["schema"] = 1;
    envelope["tool"] = kTool;
    envelope["command"] = command;
    if (!sec.inputs.is_null()) envelope["inputs"] = sec.inputs;
    envelope["results"] = sec.results;
    envelope["certificates"] = sec.certificates;
    json hashed{{"command", command},
                {"inputs", sec.inputs},
                {"results", sec.results},
                {"certificates", sec.certificates}};
    envelope["run_hash"] = fnv1a64(hashed.dump());
    envelope["timestamp"] = utc_now();

    RunResult rr;
    rr.json = envelope.dump(2) + "\n";
    rr.summary = sec.summary;
    rr.exit_code = sec.exit_code;
    return rr;
}

} // namespace detkit
