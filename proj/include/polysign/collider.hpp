#ifndef POLYSIGN_COLLIDER_HPP
#define POLYSIGN_COLLIDER_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "polysign/instance.hpp"
#include "polysign/moments.hpp"

namespace polysign {

enum class Strategy { exhaustive, mitm, random };

const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name); // throws InvalidParameter

/// Deterministic work counters.  `enumerated`, `cells`, and `work` are
/// defined so that identical inputs give identical values regardless of
/// thread count (for the exhaustive strategy they describe the canonical
/// lexicographic enumeration up to the winning pair).  `wall_seconds` is
/// transient: reporting only, never serialized or compared.
struct CollisionStats {
    std::uint64_t enumerated = 0; // selection vectors examined
    std::uint64_t cells = 0;      // distinct cells occupied along the way
    std::uint64_t work = 0;       // strategy work units (sweep's cost column)
    double wall_seconds = 0.0;
};

/// Two distinct selections whose moment vectors agree to within h in every
/// coordinate, with the exact differences as evidence.
struct CollisionCertificate {
    SelectionVector d1, d2; // d1 precedes d2 in lexicographic order
    SignVector b;           // componentwise d1 - d2
    MomentVector delta;     // exact moment differences, |delta_j| < h
    GridSpec grid;
    Strategy strategy = Strategy::exhaustive;
    CollisionStats stats;
};

struct ExhaustiveOptions {
    int cap_n = 26;                         // refuse larger n outright
    std::uint64_t cap_bytes = 1ull << 32;   // refuse tables beyond this
    int threads = 1;
};

/// Enumerates all 2^(n+1) selection vectors in lexicographic order,
/// bucketing exact moment vectors by grid cell; returns the first repeated
/// cell (smallest second member; its partner is that cell's first occupant).
/// Always succeeds: there are more vectors than cells.
CollisionCertificate collide_exhaustive(const ProblemInstance& inst, int m,
                                        const ExhaustiveOptions& opts = {});

/// Near-collision search that splits the index range into two halves,
/// enumerates partial moment sums per half, and sweeps full sums in
/// increasing first coordinate from a seed-chosen starting level, testing
/// window neighbors for componentwise gap < h.  Candidates found in floating
/// point are re-verified exactly before a certificate is issued.  Empty when
/// the budget (pops + pair comparisons) runs out.
std::optional<CollisionCertificate> collide_mitm(const ProblemInstance& inst,
                                                 int m, std::uint64_t seed,
                                                 std::uint64_t budget);

/// Birthday sampling: draws selection vectors from the seeded generator and
/// buckets them by cell until two distinct vectors share one.  Empty when
/// the sample budget runs out.
std::optional<CollisionCertificate> collide_random(const ProblemInstance& inst,
                                                   int m, std::uint64_t seed,
                                                   std::uint64_t budget);

/// Collision pipeline product: the sign pattern, the assembled difference
/// polynomial sum_j b_j a_j x^j, and the certificate behind them.
struct ConstructResult {
    SignVector b;
    Poly P;
    CollisionCertificate cert;
};

struct ConstructOptions {
    Strategy strategy = Strategy::exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t budget = 50'000'000;
    ExhaustiveOptions exhaustive;
};

/// Runs the chosen strategy and assembles its difference polynomial.
/// Empty only when a budgeted strategy comes back empty-handed.
std::optional<ConstructResult> construct(const ProblemInstance& inst, int m,
                                         const ConstructOptions& opts = {});

} // namespace polysign

#endif
