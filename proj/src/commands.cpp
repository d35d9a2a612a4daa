#include "polysign/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "polysign/errors.hpp"
#include "polysign/rng.hpp"

namespace polysign {
namespace {

using nlohmann::json;

std::vector<Rational> make_weights(int n, const Rational& M, WeightGen wgen,
                                   const std::string& file, SplitMix64& rng) {
    std::vector<Rational> w(n + 1, Rational(1));
    switch (wgen) {
    case WeightGen::ones:
        break;
    case WeightGen::uniform:
        // deterministic rationals on the 1/1024 lattice in [1, M]
        for (Rational& x : w)
            x = 1 + (M - 1) * Rational(static_cast<long>(rng.next_below(1025))) /
                        1024;
        break;
    case WeightGen::file: {
        std::ifstream in(file);
        if (!in) throw InvalidParameter("cannot open weights file: " + file);
        w.clear();
        std::string tok;
        while (in >> tok) w.push_back(parse_rat(tok));
        if (static_cast<int>(w.size()) != n + 1)
            throw LengthMismatch("weights file must hold exactly n+1 entries");
        break;
    }
    }
    return w;
}

/// Derived stream so weight draws never overlap a strategy's own sequence.
SplitMix64 weight_rng(std::uint64_t seed) {
    return SplitMix64(SplitMix64::at(seed, 1001));
}

void check_strategy_cap(Strategy s, int n, int cap) {
    switch (s) {
    case Strategy::exhaustive:
        if (n > cap)
            throw CapExceeded("exhaustive strategy capped at n = " +
                              std::to_string(cap));
        break;
    case Strategy::mitm:
        if (n > 47)
            throw CapExceeded("meet-in-the-middle strategy capped at n = 47");
        break;
    case Strategy::random:
        if (n > 62)
            throw CapExceeded("random strategy capped at n = 62");
        break;
    }
}

} // namespace

WeightGen parse_weight_gen(const std::string& name) {
    if (name == "ones") return WeightGen::ones;
    if (name == "uniform") return WeightGen::uniform;
    if (name == "file") return WeightGen::file;
    throw InvalidParameter("unknown weight generator: " + name);
}

int cmd_construct(const ConstructConfig& cfg, std::ostream& out,
                  std::ostream& err) {
    try {
        if (cfg.n < 1) throw InvalidParameter("degree bound must be >= 1");
        check_strategy_cap(cfg.strategy, cfg.n, cfg.cap);
        SplitMix64 wrng = weight_rng(cfg.seed);
        std::vector<Rational> weights =
            make_weights(cfg.n, cfg.M, cfg.wgen, cfg.weights_file, wrng);
        Rational a = cfg.a_override ? *cfg.a_override : choose_a(cfg.n, cfg.M);
        ProblemInstance inst(cfg.n, cfg.M, weights, a);
        int m_guar = inst.frame_holds() ? guaranteed_m(cfg.n, cfg.M) : 0;
        int m = cfg.m > 0 ? cfg.m : std::max(1, m_guar);
        if (m < 1 || m > cfg.n)
            throw InvalidParameter("moment count must lie in [1, n]");

        ConstructOptions copts;
        copts.strategy = cfg.strategy;
        copts.seed = cfg.seed;
        copts.budget = cfg.budget;
        copts.exhaustive.cap_n = cfg.cap;
        copts.exhaustive.threads = std::max(1, cfg.threads);
        std::optional<ConstructResult> res = construct(inst, m, copts);
        if (!res) {
            err << "construct: no collision within budget " << cfg.budget
                << " (strategy " << strategy_name(cfg.strategy) << ")\n";
            return kExitExhausted;
        }

        SignChangeCertificate sc =
            count_sign_changes(res->P, inst.window_lo(), inst.window_hi());
        ChainReport chain = proof_chain_check(res->P, inst, m, res->cert, sc);
        json doc = certificate_document(inst, m, res->cert, sc, chain);
        if (!cfg.out.empty()) save_json(cfg.out, doc);

        out << "construct: n=" << cfg.n << " M=" << rat_str(cfg.M)
            << " a=" << rat_str(a) << " m=" << m << " m_guaranteed=" << m_guar
            << " strategy=" << strategy_name(cfg.strategy)
            << " sign_changes=" << sc.count
            << " chain_links=" << chain.links.size()
            << " work=" << res->cert.stats.work;
        if (!cfg.out.empty()) out << " out=" << cfg.out;
        out << '\n';
        return kExitOk;
    } catch (const ChainViolation& e) {
        err << "construct: " << e.what() << '\n';
        return kExitVerify;
    } catch (const Error& e) {
        err << "construct: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    json doc;
    try {
        doc = load_json(path);
    } catch (const Error& e) {
        err << "verify: " << e.what() << '\n';
        return kExitUsage;
    }
    VerifyOutcome v = verify_certificate(doc);
    if (v.ok) {
        out << "verify: pass checks=" << v.passed.size()
            << " sign_changes=" << v.sign_changes << '\n';
        return kExitOk;
    }
    out << "verify: fail (" << v.failed_check << ")\n";
    return kExitVerify;
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
    struct RowParams {
        int n;
        Rational M;
        std::uint64_t row_seed;
    };
    struct RowOut {
        std::string line;
        std::string error;
    };

    std::vector<RowParams> rows;
    try {
        if (cfg.n_lo < 1 || cfg.n_step < 1 || cfg.n_hi < cfg.n_lo)
            throw InvalidParameter("degree range is empty");
        if (cfg.Ms.empty()) throw InvalidParameter("weight bound list is empty");
        if (cfg.runs < 1) throw InvalidParameter("repetitions must be >= 1");
        std::uint64_t idx = 0;
        for (int n = cfg.n_lo; n <= cfg.n_hi; n += cfg.n_step)
            for (const Rational& M : cfg.Ms)
                for (int r = 0; r < cfg.runs; ++r) {
                    rows.push_back({n, M, SplitMix64::at(cfg.seed, idx)});
                    ++idx;
                }
        for (const RowParams& rp : rows) {
            if (!cfg.a_override) choose_a(rp.n, rp.M); // frame check up front
            if (cfg.m > rp.n)
                throw InvalidParameter(
                    "fixed moment count exceeds a row's degree bound");
            check_strategy_cap(cfg.strategy, rp.n, cfg.cap);
        }
    } catch (const Error& e) {
        err << "sweep: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<RowOut> results(rows.size());
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= rows.size()) return;
            const RowParams& rp = rows[i];
            try {
                SplitMix64 wrng = weight_rng(rp.row_seed);
                std::vector<Rational> weights = make_weights(
                    rp.n, rp.M, cfg.wgen, cfg.weights_file, wrng);
                Rational a =
                    cfg.a_override ? *cfg.a_override : choose_a(rp.n, rp.M);
                ProblemInstance inst(rp.n, rp.M, weights, a);
                int m_guar =
                    inst.frame_holds() ? guaranteed_m(rp.n, rp.M) : 0;
                int m = cfg.m > 0 ? cfg.m : std::max(1, m_guar);

                ConstructOptions copts;
                copts.strategy = cfg.strategy;
                copts.seed = rp.row_seed;
                copts.budget = cfg.budget;
                copts.exhaustive.cap_n = cfg.cap;
                copts.exhaustive.threads = 1; // pool parallelism only

                std::optional<ConstructResult> res = construct(inst, m, copts);
                int s = -1;
                std::uint64_t cost = cfg.budget;
                if (res) {
                    SignChangeCertificate sc = count_sign_changes(
                        res->P, inst.window_lo(), inst.window_hi());
                    proof_chain_check(res->P, inst, m, res->cert, sc);
                    s = sc.count;
                    cost = res->cert.stats.work;
                }
                std::ostringstream line;
                line << rp.n << ',' << rat_str(rp.M) << ',' << rat_str(a)
                     << ',' << m << ',' << m_guar << ',' << s << ','
                     << strategy_name(cfg.strategy) << ',' << cost;
                results[i].line = line.str();
            } catch (const Error& e) {
                results[i].error = e.what();
            }
        }
    };

    const int workers = std::clamp<int>(
        cfg.threads, 1, std::max<int>(1, static_cast<int>(rows.size())));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    for (std::size_t i = 0; i < results.size(); ++i)
        if (!results[i].error.empty()) {
            err << "sweep: row " << i << ": " << results[i].error << '\n';
            return kExitVerify;
        }

    std::ostringstream table;
    table << "n,M,a,m_target,m_guaranteed,s_achieved,strategy,time\n";
    for (const RowOut& r : results) table << r.line << '\n';
    if (cfg.out.empty()) {
        out << table.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            err << "sweep: cannot open for writing: " << cfg.out << '\n';
            return kExitUsage;
        }
        f << table.str();
        if (!f) {
            err << "sweep: write failed: " << cfg.out << '\n';
            return kExitUsage;
        }
        out << "sweep: rows=" << results.size() << " out=" << cfg.out
            << " rng=" << SplitMix64::kName << " seed=" << cfg.seed << '\n';
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    err << "# sweep wall_seconds=" << wall << '\n';
    return kExitOk;
}

int cmd_multone(int n, std::uint64_t budget, std::ostream& out,
                std::ostream& err) {
    if (n < 0) {
        err << "multone: degree bound must be >= 0\n";
        return kExitUsage;
    }
    try {
        MultiplicityResult r = max_multiplicity_search(n, budget);
        out << "multone: n=" << n << " max_multiplicity=" << r.k
            << " exact=" << (r.exact ? "yes" : "no") << " nodes=" << r.nodes
            << " witness="
            << (r.witness.b.empty() ? std::string("none")
                                    : r.witness.to_string())
            << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "multone: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_bound(int n, const Rational& M, std::ostream& out, std::ostream& err) {
    try {
        Rational a = choose_a(n, M);
        int g = guaranteed_m(n, M);
        Constants c;
        out << "bound: n=" << n << " M=" << rat_str(M) << " a=" << rat_str(a)
            << " a_decimal=" << to_double(a) << " guaranteed_m=" << g
            << " slope=" << c.chain_slope << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "bound: " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_lemmas(const LemmaConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.runs < 1 || cfg.n_max < 1 || cfg.Ms.empty() || cfg.as.empty())
            throw InvalidParameter(
                "lemma sweep needs runs >= 1, n_max >= 1, and nonempty M and a "
                "lists");
        for (const Rational& a : cfg.as)
            if (!(a > 0 && 3 * a <= 1))
                throw InvalidParameter("window parameters must lie in (0, 1/3]");
        for (const Rational& M : cfg.Ms)
            if (!(M >= 1))
                throw InvalidParameter("weight bounds must be >= 1");

        if (!(cfg.tol > 0))
            throw InvalidParameter("quadrature tolerance must be positive");

        SplitMix64 rng(cfg.seed);
        std::ostringstream table;
        table << "check,n,M,a,k,lhs,rhs,tolerance,holds,tol_ok\n";
        long checks = 0, failures = 0, blowups = 0;
        auto record = [&](const BoundReport& r, int n, const Rational& M,
                          const Rational& a, int k) {
            // the reported tolerance is quadrature error plus a fixed
            // 1e-9 (1 + |rhs|) slack; bound the quadrature share by cfg.tol
            const bool tol_ok =
                r.tolerance <= cfg.tol + 1e-9 * (1 + std::fabs(r.rhs));
            table << r.name << ',' << n << ',' << rat_str(M) << ','
                  << rat_str(a) << ',' << k << ',' << r.lhs << ',' << r.rhs
                  << ',' << r.tolerance << ',' << (r.holds ? 1 : 0) << ','
                  << (tol_ok ? 1 : 0) << '\n';
            ++checks;
            if (!r.holds) ++failures;
            if (!tol_ok) ++blowups;
        };

        for (int run = 0; run < cfg.runs; ++run) {
            const int n = 1 + static_cast<int>(rng.next_below(
                                  static_cast<std::uint64_t>(cfg.n_max)));
            const Rational& M = cfg.Ms[rng.next_below(cfg.Ms.size())];
            const Rational& a = cfg.as[rng.next_below(cfg.as.size())];

            // random signs (index 0 forced nonzero) over lattice weights
            std::vector<Rational> coeffs(n + 1);
            for (int j = 0; j <= n; ++j) {
                int s = static_cast<int>(rng.next_below(3)) - 1;
                if (j == 0 && s == 0) s = rng.next_below(2) ? 1 : -1;
                Rational w =
                    1 + (M - 1) *
                            Rational(static_cast<long>(rng.next_below(1025))) /
                            1024;
                coeffs[j] = s * w;
            }
            Poly P(coeffs);
            record(check_logminus_cap(P, a, M), n, M, a, 0);
            record(check_geomean_floor(P, a, M), n, M, a, 0);

            // shifted variant: clear the k low indices, force index k
            const int k = static_cast<int>(
                rng.next_below(static_cast<std::uint64_t>(std::min(n, 3)) + 1));
            std::vector<Rational> ck = coeffs;
            for (int j = 0; j < k; ++j) ck[j] = 0;
            if (ck[k] == 0) {
                int s = rng.next_below(2) ? 1 : -1;
                Rational w =
                    1 + (M - 1) *
                            Rational(static_cast<long>(rng.next_below(1025))) /
                            1024;
                ck[k] = s * w;
            }
            record(check_shifted_floor(Poly(ck), a, M, k), n, M, a, k);
        }

        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
            if (!f)
                throw InvalidParameter("cannot open for writing: " + cfg.out);
            f << table.str();
        }
        out << "lemmas: runs=" << cfg.runs << " checks=" << checks
            << " failures=" << failures << " tolerance_blowups=" << blowups
            << " rng=" << SplitMix64::kName << " seed=" << cfg.seed << '\n';
        return (failures || blowups) ? kExitVerify : kExitOk;
    } catch (const Error& e) {
        err << "lemmas: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace polysign
