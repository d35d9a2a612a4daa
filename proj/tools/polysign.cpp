#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polysign/commands.hpp"
#include "polysign/errors.hpp"

using namespace polysign;

namespace {

// "ones" and "uniform" name generators; anything else is a weights file.
void apply_weights_flag(const std::string& flag, WeightGen& gen,
                        std::string& file) {
    try {
        gen = parse_weight_gen(flag);
    } catch (const InvalidParameter&) {
        gen = WeightGen::file;
        file = flag;
    }
}

std::optional<Rational> parse_a_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_rat(s);
}

std::vector<Rational> parse_rat_list(const std::vector<std::string>& items,
                                     const char* what) {
    if (items.empty()) throw InvalidParameter(std::string(what) + " list is empty");
    std::vector<Rational> out;
    out.reserve(items.size());
    for (const std::string& s : items) out.push_back(parse_rat(s));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{
        "Sign-change constructor for +-1/0 weighted polynomials: builds "
        "moment-collision certificates, certifies sign changes in the window "
        "(1-2a, 1-a), and re-verifies every inequality behind the count."};
    app.require_subcommand(1);
    int rc = kExitOk;

    // ---- construct ------------------------------------------------------
    auto* c = app.add_subcommand(
        "construct", "Run one end-to-end construction and certify it");
    ConstructConfig ccfg;
    std::string c_M = "1", c_a, c_weights = "ones", c_strategy = "exhaustive";
    c->add_option("--n", ccfg.n, "degree bound (>= 1)")->required();
    c->add_option("--M", c_M, "weight bound, rational (default 1)");
    c->add_option("--weights", c_weights,
                  "ones | uniform | <file of n+1 rationals> (default ones)");
    c->add_option("--a", c_a,
                  "window parameter override, rational in (0, 1/3]; default "
                  "is the canonical choice sqrt(log(4M)/n) rounded down");
    c->add_option("--m", ccfg.m,
                  "moment count; 0 picks max(1, guaranteed count)");
    c->add_option("--strategy", c_strategy, "exhaustive | mitm | random");
    c->add_option("--seed", ccfg.seed, "64-bit seed (splitmix64 streams)");
    c->add_option("--budget", ccfg.budget, "work budget for mitm/random");
    c->add_option("--cap", ccfg.cap, "exhaustive length cap (default 26)");
    c->add_option("--threads", ccfg.threads, "exhaustive worker threads");
    c->add_option("--out", ccfg.out, "write the certificate document here");
    c->callback([&]() {
        try {
            ccfg.M = parse_rat(c_M);
            ccfg.a_override = parse_a_flag(c_a);
            apply_weights_flag(c_weights, ccfg.wgen, ccfg.weights_file);
            ccfg.strategy = parse_strategy(c_strategy);
        } catch (const Error& e) {
            std::cerr << "construct: " << e.what() << '\n';
            rc = kExitUsage;
            return;
        }
        rc = cmd_construct(ccfg, std::cout, std::cerr);
    });

    // ---- verify ---------------------------------------------------------
    auto* v = app.add_subcommand(
        "verify", "Recompute everything a certificate document claims");
    std::string v_path;
    v->add_option("file", v_path, "certificate document")->required();
    v->callback([&]() { rc = cmd_verify(v_path, std::cout, std::cerr); });

    // ---- sweep ----------------------------------------------------------
    auto* s = app.add_subcommand(
        "sweep",
        "Construction pipeline over an instance grid; CSV columns "
        "n,M,a,m_target,m_guaranteed,s_achieved,strategy,time (time is the "
        "strategy's deterministic work counter)");
    SweepConfig scfg;
    std::vector<std::string> s_Ms{"1"};
    std::string s_a, s_weights = "ones", s_strategy = "exhaustive";
    s->add_option("--n-lo", scfg.n_lo, "lowest degree bound (default 8)");
    s->add_option("--n-hi", scfg.n_hi, "highest degree bound (default 24)");
    s->add_option("--n-step", scfg.n_step, "degree step (default 4)");
    s->add_option("--M", s_Ms, "weight bounds, rational list")
        ->delimiter(',');
    s->add_option("--weights", s_weights,
                  "ones | uniform | <file of n+1 rationals>");
    s->add_option("--a", s_a, "window parameter override for every row");
    s->add_option("--m", scfg.m, "fixed moment count; 0 per-row automatic");
    s->add_option("--strategy", s_strategy, "exhaustive | mitm | random");
    s->add_option("--seed", scfg.seed,
                  "sweep seed; row i uses splitmix64(seed, i)");
    s->add_option("--budget", scfg.budget, "per-row budget for mitm/random");
    s->add_option("--runs", scfg.runs, "repetitions per (n, M) cell");
    s->add_option("--cap", scfg.cap, "exhaustive length cap");
    s->add_option("--threads", scfg.threads,
                  "worker pool size (rows stay in instance order)");
    s->add_option("--out", scfg.out, "CSV path (default: stdout)");
    s->callback([&]() {
        try {
            scfg.Ms = parse_rat_list(s_Ms, "weight bound");
            scfg.a_override = parse_a_flag(s_a);
            apply_weights_flag(s_weights, scfg.wgen, scfg.weights_file);
            scfg.strategy = parse_strategy(s_strategy);
        } catch (const Error& e) {
            std::cerr << "sweep: " << e.what() << '\n';
            rc = kExitUsage;
            return;
        }
        rc = cmd_sweep(scfg, std::cout, std::cerr);
    });

    // ---- multone --------------------------------------------------------
    auto* mo = app.add_subcommand(
        "multone",
        "Largest multiplicity of the root at 1 over nonzero polynomials of "
        "degree <= n with coefficients in {-1,0,1}");
    int mo_n = 8;
    std::uint64_t mo_budget = 50'000'000;
    mo->add_option("--n", mo_n, "degree bound")->required();
    mo->add_option("--budget", mo_budget, "search node budget");
    mo->callback(
        [&]() { rc = cmd_multone(mo_n, mo_budget, std::cout, std::cerr); });

    // ---- bound ----------------------------------------------------------
    auto* b = app.add_subcommand(
        "bound", "Canonical window parameter and guaranteed sign-change count");
    int b_n = 0;
    std::string b_M = "1";
    b->add_option("--n", b_n, "degree bound")->required();
    b->add_option("--M", b_M, "weight bound, rational");
    b->callback([&]() {
        try {
            rc = cmd_bound(b_n, parse_rat(b_M), std::cout, std::cerr);
        } catch (const Error& e) {
            std::cerr << "bound: " << e.what() << '\n';
            rc = kExitUsage;
        }
    });

    // ---- lemmas ---------------------------------------------------------
    auto* l = app.add_subcommand(
        "lemmas", "Random-instance sweep of the three window-norm bounds");
    LemmaConfig lcfg;
    std::vector<std::string> l_Ms{"1", "2", "4", "8"};
    std::vector<std::string> l_as{"1/3", "1/4", "1/6"};
    l->add_option("--runs", lcfg.runs, "instances to draw (default 200)");
    l->add_option("--n", lcfg.n_max, "largest degree bound (default 20)");
    l->add_option("--M", l_Ms, "weight bounds, rational list")->delimiter(',');
    l->add_option("--a", l_as, "window parameters, rational list")
        ->delimiter(',');
    l->add_option("--seed", lcfg.seed, "64-bit seed");
    l->add_option("--tol", lcfg.tol,
                  "admissible quadrature-error share per check (default 1e-6)");
    l->add_option("--out", lcfg.out, "CSV path for the per-check table");
    l->callback([&]() {
        try {
            lcfg.Ms = parse_rat_list(l_Ms, "weight bound");
            lcfg.as = parse_rat_list(l_as, "window parameter");
        } catch (const Error& e) {
            std::cerr << "lemmas: " << e.what() << '\n';
            rc = kExitUsage;
            return;
        }
        rc = cmd_lemmas(lcfg, std::cout, std::cerr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
