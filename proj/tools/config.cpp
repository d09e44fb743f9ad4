#include "config.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "dhlab/diophantine.hpp"
#include "dhlab/errors.hpp"

namespace dhlab::cli {

using nlohmann::json;

std::string d17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

DoubleDouble resolve_literal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    DoubleDouble v;
    if (s == "sqrt2") v = dd_const::sqrt2;
    else if (s == "sqrt3") v = dd_const::sqrt3;
    else if (s == "sqrt5") v = dd_const::sqrt5;
    else if (s == "pi") v = dd_const::pi;
    else if (s == "e") v = dd_const::euler_e;
    else if (auto slash = s.find('/'); slash != std::string::npos) {
        try {
            double num = std::stod(s.substr(0, slash));
            double den = std::stod(s.substr(slash + 1));
            if (den == 0.0) throw DomainError("literal: zero denominator in " + text);
            v = dd_from_ratio(num, den);
        } catch (const std::logic_error&) {
            throw DomainError("literal: cannot parse rational " + text);
        }
    } else {
        try {
            std::size_t used = 0;
            v = DoubleDouble(std::stod(s, &used));
            if (used != s.size()) throw DomainError("literal: trailing junk in " + text);
        } catch (const std::logic_error&) {
            throw DomainError("literal: unknown symbol " + text);
        }
    }
    return neg ? dd_neg(v) : v;
}

namespace {

DoubleDouble number_or_literal(const json& j, const char* what) {
    if (j.is_number()) return DoubleDouble(j.get<double>());
    if (j.is_string()) return resolve_literal(j.get<std::string>());
    throw DomainError(std::string("config: ") + what + " must be a number or literal string");
}

} // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config: top level must be an object");

    RunConfig cfg;
    try {
        if (j.contains("lambdas")) {
            const auto& ls = j.at("lambdas");
            if (!ls.is_array() || ls.size() != 4)
                throw DomainError("config: lambdas must be an array of 4 entries");
            for (int i = 0; i < 4; ++i) cfg.lambdas[i] = number_or_literal(ls[i], "lambda");
        }
        if (j.contains("varpi")) cfg.varpi = number_or_literal(j.at("varpi"), "varpi");
        cfg.eps = j.value("eps", cfg.eps);
        cfg.ghosh_eps = j.value("ghosh_eps", cfg.ghosh_eps);
        cfg.delta = j.value("delta", cfg.delta);
        if (j.contains("X")) {
            const auto& x = j.at("X");
            if (x.is_number()) {
                cfg.X = x.get<double>();
            } else if (x.is_string()) {
                std::string s = x.get<std::string>();
                const std::string prefix = "from-convergent:";
                if (s.rfind(prefix, 0) != 0)
                    throw DomainError("config: X string must be from-convergent:<k>");
                cfg.x_from_convergent = std::stoi(s.substr(prefix.size()));
            } else {
                throw DomainError("config: X must be a number or from-convergent:<k>");
            }
        }
        if (j.contains("overrides")) {
            const auto& ov = j.at("overrides");
            if (ov.contains("P")) cfg.overrides.P = ov.at("P").get<double>();
            if (ov.contains("eta")) cfg.overrides.eta = ov.at("eta").get<double>();
            if (ov.contains("R")) cfg.overrides.R = ov.at("R").get<double>();
            if (ov.contains("Q")) cfg.overrides.Q = ov.at("Q").get<double>();
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.min_q = j.value("min_q", cfg.min_q);

        if (j.contains("identity")) cfg.identity_A = j.at("identity").value("A", cfg.identity_A);
        if (j.contains("scan")) cfg.scan_samples = j.at("scan").value("samples", cfg.scan_samples);
        if (j.contains("search")) {
            const auto& s = j.at("search");
            cfg.search_mode = s.value("mode", cfg.search_mode);
            cfg.search_eta = s.value("eta", cfg.search_eta);
            cfg.search_eps = s.value("eps", cfg.search_eps);
            cfg.search_limit = s.value("limit", cfg.search_limit);
            if (cfg.search_mode != "window" && cfg.search_mode != "theorem")
                throw DomainError("config: search.mode must be window or theorem");
        }
        if (j.contains("meanvalues"))
            cfg.selberg_h = j.at("meanvalues").value("selberg_h", cfg.selberg_h);
        if (j.contains("tails")) cfg.tails_A = j.at("tails").value("A", cfg.tails_A);
        if (j.contains("j1")) cfg.j1_samples = j.at("j1").value("mc_samples", cfg.j1_samples);
        if (j.contains("s0")) {
            const auto& s = j.at("s0");
            cfg.s0.lambda1 = s.value("lambda1", cfg.s0.lambda1);
            cfg.s0.q1 = s.value("q1", cfg.s0.q1);
            cfg.s0.q2 = s.value("q2", cfg.s0.q2);
            cfg.s0.eta = s.value("eta", cfg.s0.eta);
        }
        if (j.contains("convergents"))
            cfg.convergents_count = j.at("convergents").value("count", cfg.convergents_count);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: bad field: ") + e.what());
    }
    return cfg;
}

ProblemSpec build_spec(const RunConfig& cfg) {
    double X = cfg.X;
    if (cfg.x_from_convergent) {
        DoubleDouble xi = dd_div(cfg.lambdas[0], cfg.lambdas[1]);
        auto ladder = continued_fraction(xi, 64);
        int k = *cfg.x_from_convergent;
        int seen = 0;
        bool hit = false;
        for (const auto& c : ladder.convergents) {
            if (c.q < cfg.min_q) continue;
            if (seen++ == k) {
                X = choose_X(c.q);
                hit = true;
                break;
            }
        }
        if (!hit)
            throw DomainError("config: from-convergent index beyond the certified ladder");
    }
    if (!(X > 0.0)) throw DomainError("config: X must be set and positive");
    return ProblemSpec::make(cfg.lambdas, cfg.varpi,
                             arc_params(X, cfg.eps, cfg.delta, cfg.overrides,
                                        cfg.ghosh_eps));
}

} // namespace dhlab::cli
