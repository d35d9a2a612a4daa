#ifndef POLYSIGN_COMMANDS_HPP
#define POLYSIGN_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polysign/certio.hpp"
#include "polysign/collider.hpp"

namespace polysign {

// Shared process exit codes.
inline constexpr int kExitOk = 0;        // success
inline constexpr int kExitUsage = 1;     // bad configuration or frame
inline constexpr int kExitExhausted = 2; // budgeted search found nothing
inline constexpr int kExitVerify = 3;    // a certified check failed

enum class WeightGen { ones, uniform, file };

WeightGen parse_weight_gen(const std::string& name); // throws InvalidParameter

/// One end-to-end construction: weights, window parameter, grid, collision,
/// difference polynomial, certified sign-change count, inequality chain, and
/// (optionally) a certificate document on disk.
struct ConstructConfig {
    int n = 12;
    Rational M = 1;
    WeightGen wgen = WeightGen::ones;
    std::string weights_file;           // when wgen == WeightGen::file
    std::optional<Rational> a_override; // skip choose_a (small-n experiments)
    int m = 0;                          // 0: max(1, guaranteed_m)
    Strategy strategy = Strategy::exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t budget = 50'000'000;
    int cap = 26; // exhaustive length cap
    int threads = 1;
    std::string out; // certificate path; empty writes no file
};

int cmd_construct(const ConstructConfig& cfg, std::ostream& out,
                  std::ostream& err);

/// Full recompute of a stored certificate document.
int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err);

/// Instance grid (n-range x M-list x repetitions) through the construction
/// pipeline; one CSV row per instance in instance order, bit-for-bit
/// reproducible from the seed regardless of worker count.
struct SweepConfig {
    int n_lo = 8, n_hi = 24, n_step = 4;
    std::vector<Rational> Ms = {Rational(1)};
    WeightGen wgen = WeightGen::ones;
    std::string weights_file;
    std::optional<Rational> a_override;
    int m = 0; // 0: max(1, guaranteed_m) per instance
    Strategy strategy = Strategy::exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t budget = 50'000'000;
    int runs = 1; // repetitions per (n, M) with distinct derived seeds
    int cap = 26;
    int threads = 1;
    std::string out; // CSV path; empty streams the table to stdout
};

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);

/// Largest-multiplicity-at-1 explorer over coefficients in {-1,0,1}.
int cmd_multone(int n, std::uint64_t budget, std::ostream& out,
                std::ostream& err);

/// Prints the window parameter and the guaranteed sign-change count for
/// (n, M) under the size condition.
int cmd_bound(int n, const Rational& M, std::ostream& out, std::ostream& err);

/// Random-instance sweep of the three window-norm inequalities.
struct LemmaConfig {
    int runs = 200;
    int n_max = 20;
    std::vector<Rational> Ms = {Rational(1), Rational(2), Rational(4),
                                Rational(8)};
    std::vector<Rational> as = {Rational(1) / 3, Rational(1) / 4,
                                Rational(1) / 6};
    std::uint64_t seed = 0;
    double tol = 1e-6; // admissible quadrature-error share per check
    std::string out;   // CSV path; empty keeps just the summary line
};

int cmd_lemmas(const LemmaConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace polysign

#endif
