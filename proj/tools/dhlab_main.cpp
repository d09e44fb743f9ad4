// dhlab: batch driver for the circle-method laboratory.
//
// Subcommands (each reads one JSON config via --config):
//   convergents  continued fraction of lambda1/lambda2 and the X = q^{9/5} ladder
//   params       arc parameters (P, eta, R, Q) with degeneracy flags
//   identity     the flagship check: I(eta,varpi,(-A,A)) against the weighted sum
//   meanvalues   L2 / L4 orthogonality and the two Selberg integrals
//   scan-minor   minor-arc dichotomy audit + sup V profile
//   tails        rigorous trivial-arc tail bound vs a measured truncation
//   j1           major-arc main-term lower bound (MC + certified box)
//   search       prime quadruple solutions (meet-in-the-middle), CSV
//   s0           the two-primes-plus-powers-of-two s_0 calculator
//
// Exit codes: 0 ok, 2 invariant violation detected, 3 config error,
// 4 degenerate-parameter refusal.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "dhlab/analysis.hpp"
#include "dhlab/diophantine.hpp"
#include "dhlab/errors.hpp"
#include "dhlab/expsums.hpp"
#include "dhlab/kernel.hpp"
#include "dhlab/powers2.hpp"
#include "dhlab/search.hpp"
#include "dhlab/threads.hpp"

using namespace dhlab;
using cli::d17;

namespace {

struct Options {
    std::string config_path;
    std::string out_prefix;
    int threads = 0;
    std::optional<std::uint64_t> seed;
};

void emit(const Options& opt, const std::string& suffix, const std::string& payload,
          bool to_stdout) {
    if (!opt.out_prefix.empty()) {
        std::ofstream f(opt.out_prefix + suffix, std::ios::binary);
        if (!f) throw DomainError("cannot write " + opt.out_prefix + suffix);
        f << payload;
    }
    if (to_stdout) std::cout << payload;
}

std::string arc_params_json(const ArcParams& p) {
    std::ostringstream os;
    os << "{\n"
       << "  \"X\": " << d17(p.X) << ",\n"
       << "  \"delta\": " << d17(p.delta) << ",\n"
       << "  \"eps\": " << d17(p.eps) << ",\n"
       << "  \"P\": " << d17(p.P) << ",\n"
       << "  \"eta\": " << d17(p.eta) << ",\n"
       << "  \"R\": " << d17(p.R) << ",\n"
       << "  \"Q\": " << d17(p.Q) << ",\n"
       << "  \"major_edge\": " << d17(p.major_edge()) << ",\n"
       << "  \"eta_degenerate\": " << (p.eta_degenerate ? "true" : "false") << ",\n"
       << "  \"q_exceeds_p\": " << (p.q_exceeds_p ? "true" : "false") << ",\n"
       << "  \"empty_minor\": " << (p.empty_minor ? "true" : "false") << "\n"
       << "}\n";
    return os.str();
}

int cmd_convergents(const cli::RunConfig& cfg, const Options& opt) {
    DoubleDouble xi = dd_div(cfg.lambdas[0], cfg.lambdas[1]);
    auto list = continued_fraction(xi, cfg.convergents_count);
    std::ostringstream os;
    os << "k,a,q,quality,X\n";
    int k = 0;
    for (const auto& c : list.convergents) {
        os << k++ << ',' << c.a << ',' << c.q << ',' << d17(c.quality) << ','
           << d17(choose_X(c.q)) << '\n';
    }
    emit(opt, "_convergents.csv", os.str(), true);
    if (list.exhausted)
        std::cerr << "note: expansion stopped at the precision certification limit\n";
    return 0;
}

int cmd_params(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    emit(opt, "_params.json", arc_params_json(spec.params), true);
    return 0;
}

int cmd_identity(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    double wss = weighted_solution_sum(spec);
    double A = cfg.identity_A;
    QuadratureSpec q;
    q.threads = opt.threads;
    auto I = integral_I(spec, Region::interval(-A, A), q);
    auto s1 = prime_exp_sum(spec.s1_spec(), 0.0, &spec.linear_table).real();
    auto s2 = prime_exp_sum(spec.s2_spec(), 0.0, &spec.square_table).real();
    double tail = fejer_tail_bound(spec.eta(), A) * (s1 * s2 * s2 * s2);
    double tol = tail + I.quad_error + 1e-6;
    double gap = std::abs(I.value - wss);
    bool ok = gap <= tol;

    std::ostringstream os;
    os << "{\n"
       << "  \"weighted_solution_sum\": " << d17(wss) << ",\n"
       << "  \"integral\": " << d17(I.value) << ",\n"
       << "  \"imag_residual\": " << d17(I.imag_residual) << ",\n"
       << "  \"A\": " << d17(A) << ",\n"
       << "  \"step\": " << d17(I.step) << ",\n"
       << "  \"nodes\": " << I.nodes << ",\n"
       << "  \"gap\": " << d17(gap) << ",\n"
       << "  \"tail_bound\": " << d17(tail) << ",\n"
       << "  \"quad_error\": " << d17(I.quad_error) << ",\n"
       << "  \"tolerance\": " << d17(tol) << ",\n"
       << "  \"pass\": " << (ok ? "true" : "false") << "\n"
       << "}\n";
    emit(opt, "_identity.json", os.str(), true);
    return ok ? 0 : 2;
}

int cmd_meanvalues(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    auto l2 = mean_value_L2(spec.X(), spec.delta(), spec.linear_table);
    auto l4 = mean_value_L4(spec.X(), spec.delta(), spec.square_table);
    // J needs theta coverage past X + h
    double h = cfg.selberg_h;
    auto jt = sieve_range(2, static_cast<std::uint64_t>(spec.X() + h) + 2);
    double jlin = selberg_J(spec.X(), h, spec.delta(), SelbergVariant::Linear, jt);
    double jsqrt = selberg_J(spec.X(), h, spec.delta(), SelbergVariant::Sqrt, jt);

    std::ostringstream os;
    os << "{\n"
       << "  \"L2_exact\": " << d17(l2.exact) << ",\n"
       << "  \"L2_quadrature\": " << d17(l2.quadrature) << ",\n"
       << "  \"L4_exact\": " << d17(l4.exact) << ",\n"
       << "  \"L4_diagonal\": " << d17(l4.diagonal) << ",\n"
       << "  \"L4_offdiagonal\": " << d17(l4.offdiagonal) << ",\n"
       << "  \"selberg_h\": " << d17(h) << ",\n"
       << "  \"selberg_J\": " << d17(jlin) << ",\n"
       << "  \"selberg_J_sqrt\": " << d17(jsqrt) << "\n"
       << "}\n";
    emit(opt, "_meanvalues.json", os.str(), true);
    return 0;
}

int cmd_scan_minor(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    std::uint64_t seed = opt.seed.value_or(cfg.seed);
    std::vector<ScanSample> profile;
    auto rep = minor_arc_scan(spec, cfg.scan_samples, seed, opt.threads, &profile);

    std::ostringstream os;
    os << "{\n"
       << "  \"samples\": " << rep.samples << ",\n"
       << "  \"seed\": " << seed << ",\n"
       << "  \"sup_V\": " << d17(rep.sup_V) << ",\n"
       << "  \"argmax_alpha\": " << d17(rep.argmax_alpha) << ",\n"
       << "  \"sup_V_over_X_4_9\": " << d17(rep.sup_V / std::pow(spec.X(), 4.0 / 9.0))
       << ",\n"
       << "  \"violations\": " << rep.dichotomy_violations.size() << ",\n"
       << "  \"max_vaughan_ratio\": " << d17(rep.max_vaughan_ratio) << ",\n"
       << "  \"max_ghosh_ratio\": " << d17(rep.max_ghosh_ratio) << "\n"
       << "}\n";
    emit(opt, "_scan.json", os.str(), true);

    std::ostringstream csv;
    csv << "alpha,V,q1,q2,label\n";
    for (const auto& s : profile)
        csv << d17(s.alpha) << ',' << d17(s.V) << ',' << s.q1 << ',' << s.q2 << ','
            << arc_name(s.label) << '\n';
    emit(opt, "_profile.csv", csv.str(), false);
    return rep.dichotomy_violations.empty() ? 0 : 2;
}

int cmd_tails(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    double A = cfg.tails_A > 0.0 ? cfg.tails_A : spec.params.R;
    auto tb = trivial_tail_bound(spec, A);
    QuadratureSpec q;
    q.threads = opt.threads;
    auto measured = integral_I(spec, Region::trivial_truncated(10.0 * A), q);
    bool ok = tb.bound >= std::abs(measured.value);

    std::ostringstream os;
    os << "{\n"
       << "  \"A\": " << d17(A) << ",\n"
       << "  \"bound\": " << d17(tb.bound) << ",\n"
       << "  \"A_term\": " << d17(tb.A_term) << ",\n"
       << "  \"B_term2\": " << d17(tb.B_term2) << ",\n"
       << "  \"B_term3\": " << d17(tb.B_term3) << ",\n"
       << "  \"sup_S2\": " << d17(tb.sup_S2) << ",\n"
       << "  \"measured_A_to_10A\": " << d17(measured.value) << ",\n"
       << "  \"pass\": " << (ok ? "true" : "false") << "\n"
       << "}\n";
    emit(opt, "_tails.json", os.str(), true);
    return ok ? 0 : 2;
}

int cmd_j1(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    std::uint64_t seed = opt.seed.value_or(cfg.seed);
    auto j1 = major_lower_J1(spec, cfg.j1_samples, seed, opt.threads);
    QuadratureSpec q;
    q.threads = opt.threads;
    auto smooth = integral_I(spec, Region::major(), q, IntegrandKind::SmoothApprox);
    auto prime = integral_I(spec, Region::major(), q, IntegrandKind::PrimeSums);
    double defect = prime.value - smooth.value;

    std::ostringstream os;
    os << "{\n"
       << "  \"mc_estimate\": " << d17(j1.mc_estimate) << ",\n"
       << "  \"mc_samples\": " << j1.samples << ",\n"
       << "  \"seed\": " << seed << ",\n"
       << "  \"constructive_bound\": " << d17(j1.constructive_bound) << ",\n"
       << "  \"certified\": " << (j1.certified ? "true" : "false") << ",\n"
       << "  \"eta2_X_3_2\": " << d17(spec.eta() * spec.eta() * std::pow(spec.X(), 1.5))
       << ",\n"
       << "  \"J1_major_smooth\": " << d17(smooth.value) << ",\n"
       << "  \"I_major_prime\": " << d17(prime.value) << ",\n"
       << "  \"replacement_defect\": " << d17(defect) << "\n"
       << "}\n";
    emit(opt, "_j1.json", os.str(), true);
    return 0;
}

int cmd_search(const cli::RunConfig& cfg, const Options& opt) {
    ProblemSpec spec = cli::build_spec(cfg);
    SearchMode mode = cfg.search_mode == "theorem" ? SearchMode::theorem(cfg.search_eps)
                                                   : SearchMode::window(cfg.search_eta);
    auto recs = find_solutions(spec, mode, cfg.search_limit, opt.threads);
    emit(opt, "_solutions.csv", solutions_to_csv(recs), opt.out_prefix.empty());

    std::ostringstream os;
    os << "{\n"
       << "  \"mode\": \"" << cfg.search_mode << "\",\n"
       << "  \"X\": " << d17(spec.X()) << ",\n"
       << "  \"found\": " << recs.size() << ",\n"
       << "  \"limit\": " << cfg.search_limit << "\n"
       << "}\n";
    emit(opt, "_search.json", os.str(), !opt.out_prefix.empty());
    return 0;
}

int cmd_s0(const cli::RunConfig& cfg, const Options& opt) {
    auto r = s_zero(cfg.s0);
    auto sf1 = sfrak_prime(cfg.s0.q1);
    auto sf2 = sfrak_prime(cfg.s0.q2);
    std::ostringstream os;
    os << "{\n"
       << "  \"lambda1\": " << d17(cfg.s0.lambda1) << ",\n"
       << "  \"q1\": " << cfg.s0.q1 << ",\n"
       << "  \"q2\": " << cfg.s0.q2 << ",\n"
       << "  \"eta\": " << d17(cfg.s0.eta) << ",\n"
       << "  \"sfrak_q1\": \"" << sf1.num << '/' << sf1.den << "\",\n"
       << "  \"sfrak_q2\": \"" << sf2.num << '/' << sf2.den << "\",\n"
       << "  \"capC\": " << d17(r.capC_value) << ",\n"
       << "  \"numerator\": " << d17(r.numerator) << ",\n"
       << "  \"denominator\": " << d17(r.denominator) << ",\n"
       << "  \"ratio\": " << d17(r.ratio) << ",\n"
       << "  \"s0\": " << r.s0 << "\n"
       << "}\n";
    emit(opt, "_s0.json", os.str(), true);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the Davenport-Heilbronn circle method on "
                 "lambda1 p1 + lambda2 p2^2 + lambda3 p3^2 + lambda4 p4^2 + varpi"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file")->required();
    app.add_option("--out", opt.out_prefix, "output path prefix");
    app.add_option("--threads", opt.threads,
                   "worker threads (0 = DH_LAB_THREADS or hardware)");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "override the config seed");
    std::int64_t min_q_flag = 0;
    auto* min_q_opt = app.add_option(
        "--min-q", min_q_flag, "smallest convergent denominator the X ladder may use");

    const char* names[] = {"convergents", "params",     "identity",
                           "meanvalues",  "scan-minor", "tails",
                           "j1",          "search",     "s0"};
    for (const char* n : names) app.add_subcommand(n);

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opt.seed = seed_flag;

    try {
        cli::RunConfig cfg = cli::parse_config(opt.config_path);
        if (*min_q_opt) cfg.min_q = min_q_flag;
        std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "convergents") return cmd_convergents(cfg, opt);
        if (cmd == "params") return cmd_params(cfg, opt);
        if (cmd == "identity") return cmd_identity(cfg, opt);
        if (cmd == "meanvalues") return cmd_meanvalues(cfg, opt);
        if (cmd == "scan-minor") return cmd_scan_minor(cfg, opt);
        if (cmd == "tails") return cmd_tails(cfg, opt);
        if (cmd == "j1") return cmd_j1(cfg, opt);
        if (cmd == "search") return cmd_search(cfg, opt);
        if (cmd == "s0") return cmd_s0(cfg, opt);
        std::cerr << "unknown command " << cmd << "\n";
        return 3;
    } catch (const DegenerateParams& e) {
        std::cerr << "degenerate parameters: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
