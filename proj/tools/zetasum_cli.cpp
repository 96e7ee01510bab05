// zetasum: verification sweeps and single-value evaluation for the zeta /
// harmonic-number summation-rule engine. Exit codes: 0 all pass, 1 any
// verification failure or domain error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetasum/zetasum.hpp"

namespace {

using namespace zetasum;

struct CliUsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    unsigned digits = 50;
    int threshold_exp = -40;
    long n_max = 8;
    long n_min = -1;  // -1: use the family's natural start
    std::string format = "text";
    bool parallel = false;
};

void check_verification_config(const RunConfig& cfg) {
    if (cfg.digits < 10) throw CliUsageError("verification commands require --digits >= 10");
    if (cfg.threshold_exp >= -5) throw CliUsageError("--threshold-exp must be below -5");
}

std::string fmt_value(const BigReal& v, unsigned digits) { return v.to_string(digits); }

const char* kReportCsvHeader = "identity_id,n,digits,lhs,rhs,abs_residual,threshold,pass,elapsed_ms";

void print_report(const VerificationReport& r, const RunConfig& cfg) {
    unsigned d = cfg.digits;
    if (cfg.format == "csv") {
        std::printf("%s,%ld,%u,%s,%s,%s,%s,%s,%ld\n", r.identity_id.c_str(), r.n, r.digits,
                    fmt_value(r.lhs, d).c_str(), fmt_value(r.rhs, d).c_str(),
                    fmt_value(r.abs_residual, d).c_str(), fmt_value(r.threshold, d).c_str(),
                    r.pass ? "true" : "false", r.elapsed_ms);
    } else if (cfg.format == "json") {
        std::printf(
            "{\"identity_id\":\"%s\",\"n\":%ld,\"digits\":%u,\"lhs\":%s,\"rhs\":%s,"
            "\"abs_residual\":%s,\"threshold\":%s,\"pass\":%s,\"elapsed_ms\":%ld}\n",
            r.identity_id.c_str(), r.n, r.digits, fmt_value(r.lhs, d).c_str(),
            fmt_value(r.rhs, d).c_str(), fmt_value(r.abs_residual, d).c_str(),
            fmt_value(r.threshold, d).c_str(), r.pass ? "true" : "false", r.elapsed_ms);
    } else {
        std::printf("%-8s n=%-3ld %s  lhs=%s rhs=%s residual=%s (%ld ms)\n", r.identity_id.c_str(),
                    r.n, r.pass ? "PASS" : "FAIL", fmt_value(r.lhs, d).c_str(),
                    fmt_value(r.rhs, d).c_str(), fmt_value(r.abs_residual, d).c_str(), r.elapsed_ms);
    }
}

struct FamilyInfo {
    IdentityFamily family;
    long natural_min;  // 0 for the fixed numbered equalities
};

const std::map<std::string, FamilyInfo>& family_table() {
    static const std::map<std::string, FamilyInfo> table = {
        {"p1", {IdentityFamily::P1, 1}},        {"p1a", {IdentityFamily::P1a, 2}},
        {"p2", {IdentityFamily::P2, 1}},        {"p3", {IdentityFamily::P3, 1}},
        {"p4", {IdentityFamily::P4, 1}},        {"p5", {IdentityFamily::P5, 2}},
        {"euler19", {IdentityFamily::Euler19, 2}}, {"eq11", {IdentityFamily::Eq11, 0}},
        {"eq12", {IdentityFamily::Eq12, 0}},    {"eq23", {IdentityFamily::Eq23, 0}},
        {"eq24", {IdentityFamily::Eq24, 0}},    {"eq25", {IdentityFamily::Eq25, 0}},
    };
    return table;
}

std::vector<Identity> collect_instances(const std::string& family_name, const RunConfig& cfg) {
    std::vector<std::string> names;
    if (family_name == "all") {
        for (const auto& [name, info] : family_table()) names.push_back(name);
    } else {
        if (!family_table().count(family_name)) {
            throw CliUsageError("unknown identity family '" + family_name +
                                "' (expected p1, p1a, p2, p3, p4, p5, euler19, eq11, eq12, eq23, "
                                "eq24, eq25 or all)");
        }
        names.push_back(family_name);
    }

    std::vector<Identity> out;
    for (const auto& name : names) {
        const FamilyInfo& info = family_table().at(name);
        if (info.natural_min == 0) {
            out.push_back(build_identity(info.family));
            continue;
        }
        long lo = cfg.n_min >= info.natural_min ? cfg.n_min : info.natural_min;
        for (long n = lo; n <= cfg.n_max; ++n) {
            out.push_back(build_identity(info.family, n));
        }
    }
    return out;
}

int run_verify(const std::string& family_name, const RunConfig& cfg) {
    check_verification_config(cfg);
    PrecisionContext ctx(cfg.digits);
    BigReal threshold = pow10(cfg.threshold_exp, ctx);
    std::vector<Identity> instances = collect_instances(family_name, cfg);

    std::vector<VerificationReport> reports;
    reports.reserve(instances.size());
    if (cfg.parallel) {
        std::vector<std::future<VerificationReport>> futures;
        futures.reserve(instances.size());
        for (const auto& inst : instances) {
            futures.push_back(std::async(std::launch::async,
                                         [&inst, &ctx, &threshold] { return verify(inst, ctx, threshold); }));
        }
        for (auto& f : futures) reports.push_back(f.get());
    } else {
        for (const auto& inst : instances) reports.push_back(verify(inst, ctx, threshold));
    }

    if (cfg.format == "csv") std::printf("%s\n", kReportCsvHeader);
    bool all_pass = true;
    for (const auto& r : reports) {
        print_report(r, cfg);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int run_coeffs(const std::string& expansion_name, long order, const RunConfig& cfg) {
    check_verification_config(cfg);
    static const std::map<std::string, Expansion> table = {
        {"eq7", Expansion::Eq7},   {"eq13", Expansion::Eq13}, {"eq14", Expansion::Eq14},
        {"eq15", Expansion::Eq15}, {"eq16", Expansion::Eq16}, {"eq26", Expansion::Eq26},
    };
    auto it = table.find(expansion_name);
    if (it == table.end()) {
        throw CliUsageError("unknown expansion '" + expansion_name +
                            "' (expected eq7, eq13, eq14, eq15, eq16 or eq26)");
    }
    PrecisionContext ctx(cfg.digits);
    BigReal threshold = pow10(cfg.threshold_exp, ctx);
    std::vector<VerificationReport> reports =
        coefficient_check(it->second, static_cast<int>(order), ctx, threshold);

    if (cfg.format == "csv") std::printf("%s\n", kReportCsvHeader);
    bool all_pass = true;
    for (const auto& r : reports) {
        print_report(r, cfg);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int run_mellin(const std::vector<std::string>& s_values, double tail_cut, const RunConfig& cfg) {
    check_verification_config(cfg);
    PrecisionContext ctx(cfg.digits);
    unsigned d = cfg.digits;
    bool all_pass = true;
    if (cfg.format == "csv") std::printf("s,lhs,rhs,abs_residual,quad_intervals,tail_cut,pass\n");
    for (const auto& text : s_values) {
        BigReal s(ctx);
        try {
            s = BigReal::parse(text, ctx);
        } catch (const std::invalid_argument&) {
            throw CliUsageError("mellin: cannot parse s value '" + text + "'");
        }
        MellinSample sample = mellin_verify(s, ctx, BigReal::from_double(tail_cut, ctx));
        if (cfg.format == "csv") {
            std::printf("%s,%s,%s,%s,%lu,%s,%s\n", fmt_value(sample.s, d).c_str(),
                        fmt_value(sample.lhs, d).c_str(), fmt_value(sample.rhs, d).c_str(),
                        fmt_value(sample.abs_residual, d).c_str(), sample.quad_intervals,
                        fmt_value(sample.tail_cut, d).c_str(), sample.pass ? "true" : "false");
        } else if (cfg.format == "json") {
            std::printf("{\"s\":%s,\"lhs\":%s,\"rhs\":%s,\"abs_residual\":%s,\"pass\":%s}\n",
                        fmt_value(sample.s, d).c_str(), fmt_value(sample.lhs, d).c_str(),
                        fmt_value(sample.rhs, d).c_str(), fmt_value(sample.abs_residual, d).c_str(),
                        sample.pass ? "true" : "false");
        } else {
            std::printf("s=%s %s  lhs=%s rhs=%s residual=%s panels=%lu\n",
                        sample.s.to_string_compact(6).c_str(), sample.pass ? "PASS" : "FAIL",
                        fmt_value(sample.lhs, d).c_str(), fmt_value(sample.rhs, d).c_str(),
                        fmt_value(sample.abs_residual, d).c_str(), sample.quad_intervals);
        }
        all_pass = all_pass && sample.pass;
    }
    return all_pass ? 0 : 1;
}

int run_eval(const std::string& kind, const std::vector<std::string>& args, const std::string& chi_mode,
             const RunConfig& cfg) {
    PrecisionContext ctx(cfg.digits);
    auto want_args = [&](size_t n) {
        if (args.size() != n) {
            throw CliUsageError("eval " + kind + ": expected " + std::to_string(n) + " argument(s)");
        }
    };
    auto parse_long = [](const std::string& t) {
        try {
            size_t pos = 0;
            long v = std::stol(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw CliUsageError("expected an integer, got '" + t + "'");
        }
    };

    if (kind == "zeta") {
        want_args(1);
        std::printf("%s\n", zeta_int(parse_long(args[0]), ctx).to_string_compact(cfg.digits).c_str());
    } else if (kind == "gamma") {
        want_args(0);
        std::printf("%s\n", euler_gamma(ctx).to_string_compact(cfg.digits).c_str());
    } else if (kind == "eulersum") {
        want_args(2);
        long p = parse_long(args[0]);
        if (p < 1) throw std::invalid_argument("euler_sum: requires p >= 1");
        std::printf("%s\n",
                    euler_sum(static_cast<unsigned>(p), parse_long(args[1]), ctx)
                        .to_string_compact(cfg.digits)
                        .c_str());
    } else if (kind == "chi") {
        want_args(2);
        long k = parse_long(args[0]);
        if (k < 0) throw std::invalid_argument("chi: requires k in {0,1,2}");
        ChiMode mode;
        if (chi_mode == "closed") {
            mode = ChiMode::closed_form;
        } else if (chi_mode == "direct") {
            mode = ChiMode::direct;
        } else {
            throw CliUsageError("--mode must be 'closed' or 'direct'");
        }
        BigReal s(ctx);
        try {
            s = BigReal::parse(args[1], ctx);
        } catch (const std::invalid_argument&) {
            throw CliUsageError("chi: cannot parse s value '" + args[1] + "'");
        }
        std::printf("%s\n", chi(static_cast<unsigned>(k), s, ctx, mode).to_string_compact(cfg.digits).c_str());
    } else if (kind == "harmonic") {
        want_args(2);
        long n = parse_long(args[0]);
        long k = parse_long(args[1]);
        if (n < 0) throw std::invalid_argument("harmonic: requires n >= 0");
        if (k < 1) throw std::invalid_argument("harmonic: power k must be >= 1");
        std::printf("%s\n",
                    harmonic(static_cast<unsigned long>(n), static_cast<unsigned>(k)).to_string().c_str());
    } else {
        throw CliUsageError("unknown eval kind '" + kind +
                            "' (expected zeta, gamma, eulersum, chi or harmonic)");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zetasum: high-precision verification of zeta-value / harmonic-number summation rules"};
    app.fallthrough();
    RunConfig cfg;

    app.add_option("--digits", cfg.digits, "working precision in decimal digits")
        ->envname("ZETASUM_DIGITS")
        ->capture_default_str();
    app.add_option("--threshold-exp", cfg.threshold_exp, "pass threshold is 10^THRESHOLD_EXP")
        ->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "last sweep index for proposition families")
        ->capture_default_str();
    app.add_option("--n-min", cfg.n_min, "first sweep index (default: family's natural start)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_flag("--parallel", cfg.parallel, "verify identity instances concurrently");

    auto* verify_cmd = app.add_subcommand("verify", "verify one identity family (or 'all')");
    std::string family;
    verify_cmd->add_option("family", family, "p1|p1a|p2|p3|p4|p5|euler19|eq11|eq12|eq23|eq24|eq25|all")
        ->required();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a single quantity");
    std::string eval_kind;
    std::vector<std::string> eval_args;
    std::string chi_mode = "closed";
    eval_cmd->add_option("kind", eval_kind, "zeta|gamma|eulersum|chi|harmonic")->required();
    eval_cmd->add_option("args", eval_args, "arguments for the chosen kind");
    eval_cmd->add_option("--mode", chi_mode, "chi mode: closed|direct")->capture_default_str();

    auto* coeffs_cmd = app.add_subcommand("coeffs", "Laurent coefficient cross-check for one expansion");
    std::string expansion;
    long order = 10;
    coeffs_cmd->add_option("expansion", expansion, "eq7|eq13|eq14|eq15|eq16|eq26")->required();
    coeffs_cmd->add_option("--order", order, "highest degree to check")->capture_default_str();

    auto* mellin_cmd = app.add_subcommand("mellin", "verify the Mellin transform at sample points");
    std::vector<std::string> s_values;
    double tail_cut = 50.0;
    mellin_cmd->add_option("s", s_values, "sample points in the strip (0,2)")->required();
    mellin_cmd->add_option("--tail-cut", tail_cut, "switch to the analytic tail beyond this x")
        ->capture_default_str();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run 'zetasum --help' for usage\n";
        return 2;
    }

    try {
        if (*verify_cmd) return run_verify(family, cfg);
        if (*eval_cmd) return run_eval(eval_kind, eval_args, chi_mode, cfg);
        if (*coeffs_cmd) return run_coeffs(expansion, order, cfg);
        if (*mellin_cmd) return run_mellin(s_values, tail_cut, cfg);
    } catch (const CliUsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
