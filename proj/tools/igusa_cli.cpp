// Command-line front end: parse a polynomial, run the zeta engine, the
// Newton-polyhedron analysis and the brute-force oracle, and emit either a
// deterministic JSON report or a human-readable summary.
//
// Exit codes: 0 success, 2 parse/config error, 3 cap exceeded,
//             4 a requested check failed (the check is named on stderr).

#include <igusa/oracle.hpp>
#include <igusa/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace igusa;

namespace {

struct RunConfig {
    std::string poly;
    std::vector<std::string> vars{"x", "y"};
    long p = 7;
    unsigned char_order = 1; // 1 = trivial
    unsigned char_conductor = 1;
    std::string mode = "auto";
    long kmax = 4;
    long spf_depth = 32;
    long long enum_cap = 10000000;
    std::string checks = "all"; // poles|theoremB|oracle|expsum|all|none
    std::string format = "json";
    long expsum_mmax = 3;
};

bool check_enabled(const RunConfig& cfg, const std::string& name) {
    return cfg.checks == "all" || cfg.checks == name;
}

PAdicContext context_of(const RunConfig& cfg) {
    PAdicContext ctx(cfg.p);
    ctx.spf_depth_cap = cfg.spf_depth;
    ctx.enum_cap = cfg.enum_cap;
    if (const char* env = std::getenv("IGUSA_ENUM_CAP")) ctx.enum_cap = std::atoll(env);
    return ctx;
}

EngineMode mode_of(const RunConfig& cfg) {
    if (cfg.mode == "auto") return EngineMode::Auto;
    if (cfg.mode == "A") return EngineMode::A;
    if (cfg.mode == "B") return EngineMode::B;
    throw DomainError("mode must be auto, A or B");
}

Character character_of(const RunConfig& cfg) {
    if (cfg.char_order <= 1) return Character::trivial(cfg.p);
    return Character::of_order(cfg.p, cfg.char_order, cfg.char_conductor);
}

ordered_json input_json(const RunConfig& cfg, const IntPolynomial& f) {
    ordered_json j;
    j["poly"] = f.str(cfg.vars);
    j["vars"] = cfg.vars;
    j["p"] = cfg.p;
    ordered_json chi;
    chi["kind"] = cfg.char_order <= 1 ? "trivial" : "nontrivial";
    chi["order"] = cfg.char_order;
    chi["conductor"] = cfg.char_conductor;
    j["character"] = chi;
    j["mode"] = cfg.mode;
    ordered_json caps;
    caps["enum_cap"] = cfg.enum_cap;
    caps["spf_depth"] = cfg.spf_depth;
    caps["kmax"] = cfg.kmax;
    j["caps"] = caps;
    j["checks"] = cfg.checks;
    return j;
}

/// Largest series depth (<= requested) whose oracle enumeration fits the cap.
long cap_limited_kmax(const PAdicContext& ctx, int n, long requested) {
    long k = requested;
    while (k >= 0) {
        long double pts = 1;
        for (long i = 0; i < n * (k + 1); ++i) pts *= ctx.p;
        if (pts <= static_cast<long double>(ctx.enum_cap)) return k;
        --k;
    }
    return -1;
}

int run_zeta(const RunConfig& cfg, std::ostream& out) {
    auto f = parse_polynomial(cfg.poly, cfg.vars, /*newton_mode=*/true);
    PAdicContext ctx = context_of(cfg);
    Character chi = character_of(cfg);
    auto rep = zeta_full(f, cfg.vars, chi, ctx, mode_of(cfg));

    ordered_json j;
    j["input"] = input_json(cfg, f);
    j["newton"] = json_of(rep.np);
    j["zeta"] = json_of(rep);
    j["poles"] = json_of(rep.poles);

    bool failed = false;
    std::string failed_check;

    BetaInvariants inv = beta_invariants(rep.np);
    j["invariants"] = json_of(inv, rep.np);

    ordered_json checks;
    if (check_enabled(cfg, "poles")) {
        bool ok = theorem_A_containment(rep.poles, candidate_poles(rep.np));
        ordered_json ja;
        ordered_json cand = ordered_json::array();
        for (auto& [N, M] : candidate_poles(rep.np)) cand.push_back(ordered_json::array({N, M}));
        ja["candidates"] = cand;
        ja["contained"] = ok;
        checks["theorem_A_i"] = ja;
        if (!ok) { failed = true; failed_check = "poles (Theorem A(i) containment)"; }
        if (!chi.is_trivial()) {
            bool predicted = char_vanishing(chi, rep.np);
            bool is_poly = rep.normalized.den.empty();
            ordered_json jv;
            jv["vanishing_predicted"] = predicted;
            jv["is_polynomial"] = is_poly;
            jv["degree"] =
                rep.normalized.num.is_zero() ? -1 : rep.normalized.num.max_exp();
            checks["theorem_A_ii"] = jv;
            if (predicted && !is_poly) { failed = true; failed_check = "poles (Theorem A(ii))"; }
        }
    }
    if (check_enabled(cfg, "theoremB") && chi.is_trivial()) {
        auto v = theorem_B_verdict(rep.total, rep.np, f, ctx, rep.gate.all_pass);
        checks["theorem_B"] = json_of(v);
        if (!v.pass) { failed = true; failed_check = "theoremB"; }
    }
    if (check_enabled(cfg, "oracle")) {
        long k = cap_limited_kmax(ctx, f.nvars(), cfg.kmax);
        ordered_json jo;
        if (k < 0) {
            jo["skipped"] = "enumeration cap too small for any series depth";
        } else {
            SeriesPrefix prefix = chi.is_trivial() ? measure_coeffs(f, ctx, k)
                                                   : twisted_coeffs(f, ctx, chi, k);
            auto cmp = compare_series(rep.total, prefix);
            jo["kmax"] = k;
            ordered_json eng = ordered_json::array(), orc = ordered_json::array();
            for (auto& c : cmp.engine) eng.push_back(json_of(c));
            for (auto& c : cmp.oracle) orc.push_back(json_of(c));
            jo["engine"] = eng;
            jo["oracle"] = orc;
            jo["match"] = cmp.match;
            if (cmp.first_mismatch >= 0) jo["first_mismatch"] = cmp.first_mismatch;
            if (!cmp.match) { failed = true; failed_check = "oracle"; }
        }
        j["oracle"] = jo;
    }
    if (check_enabled(cfg, "expsum") && chi.is_trivial() && !(inv.beta > Rat(-1))) {
        ordered_json je;
        je["skipped"] = "beta(f) <= -1: outside the corollary's scope";
        checks["cor_6_1_ii"] = je;
    }
    if (check_enabled(cfg, "expsum") && chi.is_trivial() && inv.beta > Rat(-1)) {
        auto er = expsum_bound_report(f, ctx, inv, cfg.expsum_mmax);
        ordered_json je;
        je["beta"] = rat_str(er.beta);
        je["rho"] = er.rho;
        je["fitted_C"] = fixed_decimal(er.fitted_C);
        ordered_json samples = ordered_json::array();
        for (auto& s : er.samples)
            samples.push_back(ordered_json::array(
                {s.m, fixed_decimal(s.abs_value), fixed_decimal(s.bound_at_C1)}));
        je["samples"] = samples;
        je["all_below_one"] = er.all_below_one;
        checks["cor_6_1_ii"] = je;
        if (!er.all_below_one) { failed = true; failed_check = "expsum (|E| <= 1)"; }
    }
    j["theorem_checks"] = checks;

    if (cfg.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "Z(s, f, chi) for f = " << f.str(cfg.vars) << ", p = " << cfg.p << "\n";
        out << "  mode: " << mode_name(rep.mode_used) << "\n";
        out << "  factored: " << rep.total.str() << "\n";
        out << "  normalized numerator: " << rep.normalized.num.str() << "\n";
        out << "  normalized denominator:";
        for (auto& [fac, m] : rep.normalized.den)
            out << " (1-q^-" << fac.N << " t^" << fac.M << ")^" << m;
        out << "\n  poles:";
        for (auto& pf : rep.poles)
            out << " [Re s = " << rat_str(pf.real_part()) << ", mult " << pf.multiplicity << "]";
        out << "\n  beta = " << rat_str(inv.beta) << ", rho = " << inv.rho << "\n";
        if (checks.contains("theorem_B"))
            out << "  theorem B: " << checks["theorem_B"]["detail"].get<std::string>() << "\n";
        if (j.contains("oracle") && j["oracle"].contains("match"))
            out << "  oracle match: " << (j["oracle"]["match"].get<bool>() ? "yes" : "NO") << "\n";
    }
    if (failed) {
        std::cerr << "check failed: " << failed_check << "\n";
        return 4;
    }
    return 0;
}

int run_newton(const RunConfig& cfg, std::ostream& out) {
    auto f = parse_polynomial(cfg.poly, cfg.vars, /*newton_mode=*/true);
    auto np = newton_polyhedron(f);
    ordered_json j;
    j["input"] = input_json(cfg, f);
    j["newton"] = json_of(np);
    try {
        j["invariants"] = json_of(beta_invariants(np), np);
    } catch (const DomainError&) {
        j["invariants"] = nullptr;
    }
    if (cfg.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "Newton polyhedron of " << f.str(cfg.vars) << "\n  facets:\n";
        for (auto& fc : np.facets) {
            out << "    normal (";
            for (std::size_t i = 0; i < fc.normal.size(); ++i)
                out << (i ? "," : "") << fc.normal[i];
            out << "), m = " << fc.m << ", |a| = " << fc.abs << "\n";
        }
        out << "  faces: " << np.faces.size() << ", vertices: " << np.vertices.size() << "\n";
    }
    return 0;
}

int run_oracle(const RunConfig& cfg, std::ostream& out, bool expsum_mode, long expsum_m,
               long expsum_u) {
    auto f = parse_polynomial(cfg.poly, cfg.vars);
    PAdicContext ctx = context_of(cfg);
    ordered_json j;
    j["input"] = input_json(cfg, f);
    ordered_json jo;
    if (expsum_mode) {
        auto E = exp_sum(f, ctx, expsum_m, expsum_u);
        jo["expsum"] = json_of(E);
        jo["abs"] = fixed_decimal(std::abs(E));
        jo["m"] = expsum_m;
        jo["u"] = expsum_u;
    } else {
        Character chi = character_of(cfg);
        SeriesPrefix prefix = chi.is_trivial() ? measure_coeffs(f, ctx, cfg.kmax)
                                               : twisted_coeffs(f, ctx, chi, cfg.kmax);
        ordered_json arr = ordered_json::array();
        for (auto& c : prefix.coeffs) arr.push_back(json_of(c));
        jo["series"] = arr;
        ordered_json counts = ordered_json::array();
        for (long m = 1; m <= cfg.kmax + 1; ++m)
            counts.push_back(count_zeros_mod(f, ctx, m).get_str());
        jo["counts"] = counts;
    }
    j["oracle"] = jo;
    if (cfg.format == "json")
        out << j.dump(2) << "\n";
    else
        out << j.dump(2) << "\n";
    return 0;
}

int dispatch(const RunConfig& cfg, const std::string& which, std::ostream& out, bool expsum_mode,
             long m, long u) {
    try {
        if (which == "zeta") return run_zeta(cfg, out);
        if (which == "newton") return run_newton(cfg, out);
        return run_oracle(cfg, out, expsum_mode, m, u);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const SPFDepthExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Igusa local zeta functions of Newton-nondegenerate polynomials"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    std::string out_path;
    std::string corpus_path;
    bool expsum_mode = false;
    long expsum_m = 1, expsum_u = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--poly", cfg.poly, "polynomial text, e.g. \"x^2+x*y+y^2\"");
        cmd->add_option("--vars", cfg.vars, "variable names (default x y)");
        cmd->add_option("--p", cfg.p, "prime p");
        cmd->add_option("--char-order", cfg.char_order, "character order d (1 = trivial)");
        cmd->add_option("--char-conductor", cfg.char_conductor, "character conductor c");
        cmd->add_option("--mode", cfg.mode, "engine mode: auto|A|B");
        cmd->add_option("--kmax", cfg.kmax, "series depth for oracle comparisons");
        cmd->add_option("--spf-depth", cfg.spf_depth, "SPF recursion depth cap");
        cmd->add_option("--enum-cap", cfg.enum_cap, "enumeration point cap");
        cmd->add_option("--checks", cfg.checks, "poles|theoremB|oracle|expsum|all|none");
        cmd->add_option("--format", cfg.format, "json|text");
        cmd->add_option("--out", out_path, "write the report to a file");
    };

    CLI::App* zeta = app.add_subcommand("zeta", "compute Z(s,f,chi) and run checks");
    add_common(zeta);
    zeta->add_option("--corpus", corpus_path, "batch file: one JSON config per line");
    zeta->add_option("--expsum-mmax", cfg.expsum_mmax, "largest m for the exponential-sum bound report");

    CLI::App* newton = app.add_subcommand("newton", "Newton polyhedron report");
    add_common(newton);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force series / counts / exp sums");
    add_common(oracle);
    oracle->add_flag("--expsum", expsum_mode, "compute E(u p^-m, K, f)");
    oracle->add_option("--m", expsum_m, "exponential sum depth m");
    oracle->add_option("--u", expsum_u, "unit u in z = u p^-m");

    CLI11_PARSE(app, argc, argv);

    std::string which = "zeta";
    if (newton->parsed()) which = "newton";
    if (oracle->parsed()) which = "oracle";

    // Batch mode: run every config line, report the worst exit code.
    if (!corpus_path.empty()) {
        std::ifstream in(corpus_path);
        if (!in) {
            std::cerr << "config error: cannot open corpus file " << corpus_path << "\n";
            return 2;
        }
        int worst = 0;
        std::string line;
        std::ostringstream all;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            ordered_json spec;
            try {
                spec = ordered_json::parse(line);
            } catch (...) {
                std::cerr << "config error: bad corpus line: " << line << "\n";
                return 2;
            }
            RunConfig c = cfg;
            if (spec.contains("poly")) c.poly = spec["poly"].get<std::string>();
            if (spec.contains("vars")) c.vars = spec["vars"].get<std::vector<std::string>>();
            if (spec.contains("p")) c.p = spec["p"].get<long>();
            if (spec.contains("char_order")) c.char_order = spec["char_order"].get<unsigned>();
            if (spec.contains("mode")) c.mode = spec["mode"].get<std::string>();
            if (spec.contains("kmax")) c.kmax = spec["kmax"].get<long>();
            if (spec.contains("checks")) c.checks = spec["checks"].get<std::string>();
            int rc = dispatch(c, "zeta", all, false, 0, 0);
            worst = std::max(worst, rc);
        }
        if (out_path.empty()) {
            std::cout << all.str();
        } else {
            std::ofstream of(out_path);
            of << all.str();
        }
        return worst;
    }

    if (cfg.poly.empty()) {
        std::cerr << "config error: --poly is required\n";
        return 2;
    }
    if (out_path.empty()) return dispatch(cfg, which, std::cout, expsum_mode, expsum_m, expsum_u);
    std::ofstream of(out_path);
    if (!of) {
        std::cerr << "config error: cannot open output file " << out_path << "\n";
        return 2;
    }
    return dispatch(cfg, which, of, expsum_mode, expsum_m, expsum_u);
}
