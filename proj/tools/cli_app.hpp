#pragma once

/**
 * @file cli_app.hpp
 * @brief The primetails command line, factored so tests can drive it
 *        through run_app with captured streams.
 *
 * Every subcommand prints one canonical OutputEnvelope (or a documented
 * raw row format for the structured exports). Exit codes: 0 success,
 * 1 domain error, 2 resource or cap error, 64 usage error. Resource
 * caps can be raised or lowered per process via the environment
 * variables PRIMETAILS_SIEVE_CAP, PRIMETAILS_DP_CAP and
 * PRIMETAILS_ENUM_CAP.
 */

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primetails/primetails.hpp"

namespace primetails {

namespace cli_detail {

inline uint64_t env_u64(const char* name, uint64_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0')
        return fallback;
    errno = 0;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (errno != 0 || end == v || *end != '\0')
        throw domain_error(std::string(name) + ": not a decimal integer");
    return parsed;
}

} // namespace cli_detail

inline int run_app(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    using clock = std::chrono::steady_clock;

    CLI::App app{"digit-sum statistics of primes: exact distributions, "
                 "Chernoff tail bounds, and interval experiments",
                 "primetails"};
    app.require_subcommand(1);

    struct {
        std::string format = "json";
        bool timing = false;
        uint64_t segment_size = kDefaultSegmentSize;
        uint64_t sieve_cap = kSieveHiCap;
        uint64_t enum_cap = kFullEnumCap;
        uint32_t dp_cap = kDefaultDigitCap;
    } shared;

    app.add_option("--format", shared.format, "output form")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--timing", shared.timing,
                 "measure runtime_ms (off by default so output is "
                 "byte-stable)");
    app.add_option("--segment-size", shared.segment_size,
                   "odd candidates per sieve block")
        ->capture_default_str();

    struct {
        uint64_t n = 0;
        uint32_t base = 2;
        uint32_t k = 0;
        double threshold = 0.0;
        double a = 0.0;
        double t = 0.0;
        double gamma = 0.0;
        double alpha = 0.0;
        double beta = 0.0;
        double theta = 0.0;
        double margin = 0.0;
        uint64_t lo = 0;
        uint64_t hi = 0;
        uint64_t x = 0;
        uint64_t limit = 0;
        std::string emit = "count";
        std::string level = "full";
        uint64_t seed = kDefaultVerifySeed;
    } o;

    int exit_code = 0;

    auto finish = [&](const char* command, json params, json results,
                      clock::time_point t0) {
        OutputEnvelope env;
        env.command = command;
        env.parameters = std::move(params);
        env.results = std::move(results);
        if (shared.timing)
            env.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 clock::now() - t0)
                                 .count();
        out << (shared.format == "csv" ? render_csv(env) : render_json(env));
    };

    auto sub = [](CLI::App* parent, const char* name, const char* desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    // digits
    auto* digits_cmd = sub(&app, "digits", "digit arithmetic and exact digit-sum distributions");
    digits_cmd->require_subcommand(1);
    {
        auto* c = sub(digits_cmd, "sum", "sum of the base-q digits of n");
        c->add_option("--n", o.n, "integer to sum")->required();
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->callback([&] {
            auto t0 = clock::now();
            DigitSystem sys(o.base);
            finish("digits sum", json{{"base", o.base}, {"n", o.n}},
                   json{{"digit_sum", digit_sum(o.n, sys)}}, t0);
        });
    }
    {
        auto* c = sub(digits_cmd, "count", "number of base-q digits of n");
        c->add_option("--n", o.n, "integer to measure")->required();
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->callback([&] {
            auto t0 = clock::now();
            DigitSystem sys(o.base);
            finish("digits count", json{{"base", o.base}, {"n", o.n}},
                   json{{"digit_count", digit_count(o.n, sys)}}, t0);
        });
    }
    {
        auto* c = sub(digits_cmd, "dist",
                      "exact digit-sum distribution over [0, q^k)");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--digits", o.k, "digit count k")->required();
        c->callback([&] {
            auto t0 = clock::now();
            DigitSystem sys(o.base);
            auto dist = build_distribution(sys, o.k, shared.dp_cap);
            if (shared.format == "csv") {
                write_csv(dist, out);
                return;
            }
            json counts = json::array();
            for (const auto& cnt : dist.counts)
                counts.push_back(cnt.to_string());
            finish("digits dist", json{{"base", o.base}, {"digits", o.k}},
                   json{{"q", dist.q},
                        {"k", dist.k},
                        {"total", dist.total().to_string()},
                        {"counts", counts}},
                   t0);
        });
    }
    {
        auto* c = sub(digits_cmd, "tail",
                      "count of n < q^k with digit sum past a threshold");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--digits", o.k, "digit count k")->required();
        c->add_option("--threshold", o.threshold, "real threshold")->required();
        c->callback([&] {
            auto t0 = clock::now();
            DigitSystem sys(o.base);
            auto dist = build_distribution(sys, o.k, shared.dp_cap);
            finish("digits tail",
                   json{{"base", o.base},
                        {"digits", o.k},
                        {"threshold", o.threshold}},
                   json{{"tail_count", tail_count(dist, o.threshold).to_string()},
                        {"head_count", head_count(dist, o.threshold).to_string()},
                        {"total", dist.total().to_string()}},
                   t0);
        });
    }
    {
        auto* c = sub(digits_cmd, "proportion",
                      "proportion of n < q^k with digit sum >= a(q-1)k");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--digits", o.k, "digit count k")->required();
        c->add_option("--a", o.a, "tail target in (1/2, 1)")->required();
        c->callback([&] {
            auto t0 = clock::now();
            DigitSystem sys(o.base);
            auto dist = build_distribution(sys, o.k, shared.dp_cap);
            finish("digits proportion",
                   json{{"a", o.a}, {"base", o.base}, {"digits", o.k}},
                   json{{"threshold", o.a * (sys.q - 1) * o.k},
                        {"tail_proportion", tail_proportion(dist, o.a)}},
                   t0);
        });
    }

    // chernoff
    auto* chernoff_cmd = sub(&app, "chernoff", "moment generating function, rate function and tail bounds");
    chernoff_cmd->require_subcommand(1);
    {
        auto* c = sub(chernoff_cmd, "mgf", "E(e^{t xi}) both ways, and its log");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--t", o.t, "tilt")->required();
        c->callback([&] {
            auto t0 = clock::now();
            finish("chernoff mgf", json{{"base", o.base}, {"t", o.t}},
                   json{{"mgf_direct", mgf_direct(o.base, o.t)},
                        {"mgf_closed", mgf_closed(o.base, o.t)},
                        {"log_mgf", log_mgf(o.base, o.t)}},
                   t0);
        });
    }
    {
        auto* c = sub(chernoff_cmd, "rate",
                      "rate function; optimized over t unless --t is given");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--gamma", o.gamma, "normalized deviation in [0, 1)")
            ->required();
        auto* t_opt = c->add_option("--t", o.t, "evaluate at this tilt");
        c->callback([&, t_opt] {
            auto t0 = clock::now();
            json params{{"base", o.base}, {"gamma", o.gamma}};
            json res;
            if (t_opt->count() > 0) {
                params["t"] = o.t;
                res = json{{"t", o.t}, {"rate", rate(o.base, o.gamma, o.t)}};
            } else {
                auto r = optimize_rate(o.base, o.gamma);
                res = json{{"t_star", r.t_star},
                           {"rate_star", r.rate_star},
                           {"iterations", r.iterations}};
            }
            finish("chernoff rate", params, res, t0);
        });
    }
    {
        auto* c = sub(chernoff_cmd, "bounds",
                      "tail bounds at digit count k and target a");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--digits", o.k, "digit count k")->required();
        c->add_option("--alpha", o.alpha, "tail target in (1/2, 1)")->required();
        c->callback([&] {
            auto t0 = clock::now();
            json res{{"lemma_bound", lemma_bound(o.base, o.k, o.alpha)},
                     {"refined_bound", refined_bound(o.base, o.k, o.alpha)},
                     {"fixed_tilt_bound", fixed_tilt_bound(o.base, o.k, o.alpha)},
                     {"display_bound", display_bound(o.base, o.k, o.alpha)}};
            if (o.k <= shared.dp_cap) {
                DigitSystem sys(o.base);
                auto dist = build_distribution(sys, o.k, shared.dp_cap);
                res["exact_proportion"] = tail_proportion(dist, o.alpha);
            }
            finish("chernoff bounds",
                   json{{"alpha", o.alpha}, {"base", o.base}, {"digits", o.k}},
                   res, t0);
        });
    }

    // sieve
    auto* sieve_cmd = sub(&app, "sieve", "prime enumeration over [lo, hi)");
    sieve_cmd->require_subcommand(1);
    {
        auto* c = sub(sieve_cmd, "range", "primes in [lo, hi)");
        c->add_option("--lo", o.lo, "range start")->required();
        c->add_option("--hi", o.hi, "range end (exclusive)")->required();
        c->add_option("--base", o.base, "base for --emit hist")
            ->capture_default_str();
        c->add_option("--emit", o.emit, "what to print")
            ->check(CLI::IsMember({"count", "hist", "primes"}))
            ->capture_default_str();
        c->callback([&] {
            auto t0 = clock::now();
            PrimeRange range(o.lo, o.hi, shared.sieve_cap);
            if (o.emit == "primes") {
                for_each_prime(range, [&](uint64_t p) { out << p << '\n'; },
                               shared.segment_size);
            } else if (o.emit == "hist") {
                DigitSystem sys(o.base);
                write_csv(count_and_histogram(range, sys, shared.segment_size),
                          out);
            } else {
                uint64_t n = 0;
                for_each_prime(range, [&](uint64_t) { ++n; },
                               shared.segment_size);
                finish("sieve range", json{{"hi", o.hi}, {"lo", o.lo}},
                       json{{"count", n}}, t0);
            }
        });
    }
    {
        auto* c = sub(sieve_cmd, "density",
                      "prime count of (x, x + ceil(x^theta)] vs h/log x");
        c->add_option("--x", o.x, "interval start")->required();
        c->add_option("--theta", o.theta, "interval length exponent in (0, 1]")
            ->required();
        c->callback([&] {
            auto t0 = clock::now();
            auto d = empirical_short_interval_density(
                o.x, o.theta, shared.segment_size, shared.sieve_cap);
            finish("sieve density", json{{"theta", o.theta}, {"x", o.x}},
                   json{{"x", d.x},
                        {"theta", d.theta},
                        {"h", d.h},
                        {"prime_count", d.prime_count},
                        {"expected", d.expected},
                        {"ratio", d.ratio}},
                   t0);
        });
    }

    // theorem
    auto* theorem_cmd = sub(&app, "theorem", "digit-constrained interval experiments");
    theorem_cmd->require_subcommand(1);
    auto run_theorem = [&](TailSide side, double target) {
        auto t0 = clock::now();
        auto inst = build_instance(o.base, o.x, target, side, o.margin,
                                   shared.sieve_cap);
        auto rec = run_experiment(inst, shared.segment_size);
        bool upper = side == TailSide::upper;
        json params{{"base", o.base},
                    {upper ? "alpha" : "beta", target},
                    {"margin", o.margin},
                    {"x", o.x}};
        json res{{"side", upper ? "upper" : "lower"},
                 {"q", inst.q},
                 {"x", inst.x},
                 {"target", inst.target},
                 {"margin", inst.margin},
                 {"adjusted", inst.adjusted},
                 {"k", inst.k},
                 {"l", inst.l},
                 {"interval_lo", inst.interval.lo},
                 {"interval_hi", inst.interval.hi},
                 {"threshold", inst.threshold},
                 {"primes_in_interval", rec.primes_in_interval},
                 {"qualifying_primes", rec.qualifying_primes},
                 {"delta", rec.delta},
                 {"chernoff_exceptions_bound", rec.chernoff_exceptions_bound},
                 {"lower_bound_main", rec.lower_bound_main},
                 {"ratio", rec.ratio}};
        finish(upper ? "theorem upper" : "theorem lower", params, res, t0);
    };
    {
        auto* c = sub(theorem_cmd, "upper",
                      "interval [q^k - q^l, q^k), digit sums >= threshold");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--x", o.x, "scale, x >= q^2")->required();
        c->add_option("--alpha", o.alpha, "upper-tail target")->required();
        c->add_option("--margin", o.margin, "slack taken off the interval length")
            ->capture_default_str();
        c->callback([&] { run_theorem(TailSide::upper, o.alpha); });
    }
    {
        auto* c = sub(theorem_cmd, "lower",
                      "interval [q^{k-1}, q^{k-1} + q^l), digit sums <= threshold");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--x", o.x, "scale, x >= q^2")->required();
        c->add_option("--beta", o.beta, "lower-tail target")->required();
        c->add_option("--margin", o.margin, "slack taken off the interval length")
            ->capture_default_str();
        c->callback([&] { run_theorem(TailSide::lower, o.beta); });
    }

    // whole-range surveys
    {
        auto* c = sub(&app, "survey",
                      "tail count over all primes up to the limit");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--limit", o.limit, "enumerate primes up to here")
            ->required();
        c->add_option("--alpha", o.alpha, "tail target")->required();
        c->callback([&] {
            auto t0 = clock::now();
            auto s = survey_tail(o.base, o.limit, o.alpha, shared.enum_cap,
                                 shared.segment_size);
            finish("survey",
                   json{{"alpha", o.alpha}, {"base", o.base}, {"limit", o.limit}},
                   json{{"count", s.count},
                        {"threshold", s.threshold},
                        {"bound", s.bound}},
                   t0);
        });
    }
    {
        auto* c = sub(&app, "problem-one",
                      "primes with twice as many binary ones as zeros");
        c->add_option("--limit", o.limit, "enumerate primes up to here")
            ->required();
        c->callback([&] {
            auto t0 = clock::now();
            auto p = problem_one(o.limit, shared.enum_cap, shared.segment_size);
            finish("problem-one", json{{"limit", o.limit}},
                   json{{"count", p.count},
                        {"strict_log_count", p.strict_log_count}},
                   t0);
        });
    }
    {
        auto* c = sub(&app, "avg", "mean digit sum of primes up to the limit");
        c->add_option("--base", o.base, "base q >= 2")->capture_default_str();
        c->add_option("--limit", o.limit, "enumerate primes up to here")
            ->required();
        c->callback([&] {
            auto t0 = clock::now();
            auto a = copeland_erdos_average(o.base, o.limit, shared.enum_cap,
                                            shared.segment_size);
            finish("avg", json{{"base", o.base}, {"limit", o.limit}},
                   json{{"mean", a.mean},
                        {"reference", a.reference},
                        {"prime_count", a.prime_count},
                        {"digit_sum_total", a.digit_sum_total}},
                   t0);
        });
    }
    {
        auto* c = sub(&app, "verify", "run the acceptance suite");
        c->add_option("--level", o.level, "quick or full")
            ->check(CLI::IsMember({"quick", "full"}))
            ->capture_default_str();
        c->add_option("--seed", o.seed, "seed for the randomized checks")
            ->capture_default_str();
        c->callback([&] {
            auto rep = run_acceptance(o.level == "quick" ? VerifyLevel::quick
                                                         : VerifyLevel::full,
                                      o.seed);
            print_report(rep, out);
            if (!rep.all_pass())
                exit_code = 1;
        });
    }

    try {
        shared.sieve_cap =
            cli_detail::env_u64("PRIMETAILS_SIEVE_CAP", kSieveHiCap);
        shared.enum_cap = cli_detail::env_u64("PRIMETAILS_ENUM_CAP", kFullEnumCap);
        shared.dp_cap = static_cast<uint32_t>(std::min<uint64_t>(
            cli_detail::env_u64("PRIMETAILS_DP_CAP", kDefaultDigitCap),
            kHardDigitCap));
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* deepest = &app;
        while (!deepest->get_subcommands().empty())
            deepest = deepest->get_subcommands().back();
        out << deepest->help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n"
            << "run 'primetails --help' for usage\n";
        return 64;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 70;
    }
    return exit_code;
}

} // namespace primetails
