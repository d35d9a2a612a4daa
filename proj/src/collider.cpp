#include "polysign/collider.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <queue>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polysign/errors.hpp"
#include "polysign/rng.hpp"

namespace polysign {
namespace {

constexpr std::uint64_t kNone = ~std::uint64_t(0);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Integer-only cell arithmetic.  Moment vectors are carried as
/// sv_j = denom * L * den(M) * v_j, so the cell index floor(v_j / h)
/// becomes a single division by sh = denom * (n+1) * num(M).
struct CellScaler {
    std::vector<std::vector<Integer>> col; // col[i][j], length m each
    Integer sh;
    std::uint64_t Lu;
    int m;

    CellScaler(const MomentTable& tab, const GridSpec& g) {
        const ProblemInstance& inst = tab.instance();
        m = g.m;
        Lu = mpz_get_ui(g.L.get_mpz_t());
        Integer factor = g.L * inst.M().get_den();
        sh = tab.denom() * (inst.n() + 1) * inst.M().get_num();
        col.resize(inst.n() + 1);
        for (int i = 0; i <= inst.n(); ++i) {
            col[i].resize(m);
            for (int j = 0; j < m; ++j)
                col[i][j] = tab.scaled_column(i)[j] * factor;
        }
    }

    /// Scaled moment vector of the selection encoded by the bits of t.
    std::vector<Integer> at(std::uint64_t t) const {
        std::vector<Integer> sv(m, Integer(0));
        for (int i = 0; t != 0; ++i, t >>= 1)
            if (t & 1)
                for (int j = 0; j < m; ++j) sv[j] += col[i][j];
        return sv;
    }

    /// Advances sv from the selection t to t+1: the trailing ones of t
    /// drop out and the next higher index joins.
    void step(std::vector<Integer>& sv, std::uint64_t t) const {
        int z = __builtin_ctzll(~t);
        for (int j = 0; j < m; ++j) {
            sv[j] += col[z][j];
            for (int i = 0; i < z; ++i) sv[j] -= col[i][j];
        }
    }

    /// Mixed-radix packing of the cell index; fits in 64 bits because
    /// L^m <= 2^n < 2^63.  Top cube faces clamp to the last cell, matching
    /// quantize().
    std::uint64_t pack(const std::vector<Integer>& sv, Integer& scratch) const {
        std::uint64_t packed = 0;
        for (int j = m - 1; j >= 0; --j) {
            mpz_tdiv_q(scratch.get_mpz_t(), sv[j].get_mpz_t(), sh.get_mpz_t());
            std::uint64_t c = mpz_get_ui(scratch.get_mpz_t());
            if (c >= Lu) c = Lu - 1;
            packed = packed * Lu + c;
        }
        return packed;
    }
};

void check_gap(const MomentVector& delta, const GridSpec& g) {
    for (const Rational& dj : delta.v)
        if (!(abs(dj) < g.h))
            throw Error("internal: collision certificate violates its gap bound");
}

CollisionCertificate finish(const ProblemInstance& inst, const MomentTable& tab,
                            const GridSpec& g, std::uint64_t t1, std::uint64_t t2,
                            Strategy strategy, CollisionStats stats) {
    if (t1 == t2) throw IdenticalSelections("collision pair collapsed");
    if (t1 > t2) std::swap(t1, t2);
    CollisionCertificate cert;
    cert.d1 = SelectionVector::from_bits(t1, inst.n() + 1);
    cert.d2 = SelectionVector::from_bits(t2, inst.n() + 1);
    std::vector<std::int8_t> b(inst.n() + 1);
    for (int j = 0; j <= inst.n(); ++j)
        b[j] = static_cast<std::int8_t>(cert.d1.d[j]) -
               static_cast<std::int8_t>(cert.d2.d[j]);
    cert.b = SignVector::from_coeffs(std::move(b));
    cert.delta = tab.moments(cert.d1) - tab.moments(cert.d2);
    cert.grid = g;
    cert.strategy = strategy;
    cert.stats = stats;
    check_gap(cert.delta, g);
    return cert;
}

/// Per-worker record: the two smallest selections seen per cell.  Workers
/// scan disjoint contiguous ranges, so entries arrive in increasing order.
using TwoSmallest = std::unordered_map<std::uint64_t, std::array<std::uint64_t, 2>>;

struct WorkerOut {
    TwoSmallest table;
    bool started = false;
};

} // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::exhaustive: return "exhaustive";
        case Strategy::mitm: return "mitm";
        case Strategy::random: return "random";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "exhaustive") return Strategy::exhaustive;
    if (name == "mitm") return Strategy::mitm;
    if (name == "random") return Strategy::random;
    throw InvalidParameter("unknown strategy: " + name);
}

CollisionCertificate collide_exhaustive(const ProblemInstance& inst, int m,
                                        const ExhaustiveOptions& opts) {
    const auto start = Clock::now();
    GridSpec g = GridSpec::make(inst, m);
    const int n = inst.n();
    if (n > opts.cap_n || n > 62)
        throw CapExceeded("exhaustive search refused: n exceeds the cap");
    // Worst case fills one table slot per cell plus the colliding vector.
    Integer worst = (Integer(1) << (n + 1));
    if (worst > g.N + 1) worst = g.N + 1;
    Integer bytes = worst * 56; // conservative node + bucket cost per entry
    if (bytes > Integer(static_cast<unsigned long>(opts.cap_bytes)))
        throw MemoryCapExceeded("exhaustive table estimate exceeds the byte cap");

    MomentTable tab(inst, m);
    CellScaler sc(tab, g);
    const std::uint64_t total = std::uint64_t(1) << (n + 1);

    std::uint64_t best1 = kNone, best2 = kNone;

    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        std::unordered_map<std::uint64_t, std::uint64_t> first;
        std::vector<Integer> sv(m, Integer(0));
        Integer scratch;
        for (std::uint64_t t = 0; t < total; ++t) {
            std::uint64_t cell = sc.pack(sv, scratch);
            auto [it, fresh] = first.try_emplace(cell, t);
            if (!fresh) {
                best1 = it->second;
                best2 = t;
                break;
            }
            if (t + 1 < total) sc.step(sv, t);
        }
    } else {
        // Contiguous blocks (= high-order bit prefixes); each worker records
        // the two smallest members per cell, stops at its own first repeat,
        // and skips anything past the globally best repeat so far.  The
        // merged result is the same pair the single-threaded scan finds.
        const std::uint64_t chunk = (total + threads - 1) / threads;
        std::atomic<std::uint64_t> bound{kNone};
        std::vector<WorkerOut> outs(threads);
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
                const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
                if (lo >= hi || lo > bound.load(std::memory_order_relaxed)) return;
                WorkerOut& out = outs[w];
                out.started = true;
                std::vector<Integer> sv = sc.at(lo);
                Integer scratch;
                for (std::uint64_t t = lo; t < hi; ++t) {
                    if ((t & 0xfff) == 0 &&
                        t > bound.load(std::memory_order_relaxed))
                        break;
                    std::uint64_t cell = sc.pack(sv, scratch);
                    auto [it, fresh] =
                        out.table.try_emplace(cell, std::array<std::uint64_t, 2>{t, kNone});
                    if (!fresh && it->second[1] == kNone) {
                        it->second[1] = t;
                        // lower the global bound to this repeat
                        std::uint64_t cur = bound.load(std::memory_order_relaxed);
                        while (t < cur &&
                               !bound.compare_exchange_weak(cur, t,
                                                            std::memory_order_relaxed)) {
                        }
                        break; // later t in this block cannot beat it
                    }
                    if (t + 1 < hi) sc.step(sv, t);
                }
            });
        }
        for (auto& th : pool) th.join();

        TwoSmallest merged;
        for (const WorkerOut& out : outs) {
            if (!out.started) continue;
            for (const auto& [cell, pair] : out.table) {
                auto [it, fresh] = merged.try_emplace(cell, pair);
                if (fresh) continue;
                std::array<std::uint64_t, 4> all{it->second[0], it->second[1],
                                                 pair[0], pair[1]};
                std::sort(all.begin(), all.end());
                it->second = {all[0], all[1]};
            }
        }
        for (const auto& [cell, pair] : merged) {
            if (pair[1] == kNone) continue;
            if (pair[1] < best2 || (pair[1] == best2 && pair[0] < best1)) {
                best1 = pair[0];
                best2 = pair[1];
            }
        }
    }

    if (best2 == kNone)
        throw Error("internal: exhaustive scan ended without a repeated cell");
    CollisionStats stats;
    stats.enumerated = best2 + 1; // canonical scan length up to the repeat
    stats.cells = best2;          // distinct cells over that prefix
    stats.work = best2 + 1;
    stats.wall_seconds = seconds_since(start);
    return finish(inst, tab, g, best1, best2, Strategy::exhaustive, stats);
}

std::optional<CollisionCertificate> collide_mitm(const ProblemInstance& inst,
                                                 int m, std::uint64_t seed,
                                                 std::uint64_t budget) {
    const auto start = Clock::now();
    GridSpec g = GridSpec::make(inst, m);
    const int n = inst.n();
    if (n > 47) throw CapExceeded("mitm half-lists refused: n exceeds 47");
    MomentTable tab(inst, m);

    const int k_lo = (n + 2) / 2;      // indices [0, k_lo)
    const int k_hi = n + 1 - k_lo;     // indices [k_lo, n]
    const std::uint64_t size_lo = std::uint64_t(1) << k_lo;
    const std::uint64_t size_hi = std::uint64_t(1) << k_hi;

    std::uint64_t used = size_lo + size_hi; // list construction charge
    if (used > budget) return std::nullopt;

    // Double-precision kernel columns for the search phase.
    std::vector<std::vector<double>> dcol(n + 1, std::vector<double>(m));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < m; ++j) dcol[i][j] = to_double(tab.column(i)[j]);

    struct Entry {
        std::vector<double> v;
        std::uint64_t mask; // already positioned within the full selection
    };
    auto build = [&](int base, std::uint64_t size) {
        std::vector<Entry> list(size);
        list[0].v.assign(m, 0.0);
        list[0].mask = 0;
        for (std::uint64_t s = 1; s < size; ++s) {
            int bit = __builtin_ctzll(s);
            const Entry& prev = list[s & (s - 1)];
            list[s].v = prev.v;
            for (int j = 0; j < m; ++j) list[s].v[j] += dcol[base + bit][j];
            list[s].mask = prev.mask | (std::uint64_t(1) << (base + bit));
        }
        std::sort(list.begin(), list.end(), [](const Entry& a, const Entry& b) {
            return a.v[0] != b.v[0] ? a.v[0] < b.v[0] : a.mask < b.mask;
        });
        return list;
    };
    std::vector<Entry> A = build(0, size_lo);
    std::vector<Entry> B = build(k_lo, size_hi);

    // Start the sweep at a seed-chosen level of the first coordinate, in the
    // bulk where partial sums are dense.
    const double lo0 = A.front().v[0] + B.front().v[0];
    const double hi0 = A.back().v[0] + B.back().v[0];
    const double q = 0.2 + 0.6 * ((SplitMix64::at(seed, 0) >> 11) * 0x1.0p-53);
    const double T = lo0 + q * (hi0 - lo0);

    const double h_num = to_double(g.h);
    const double w_ub = 0.999 * h_num; // float guard; exact check follows

    // One lazy stream per B entry, advancing through A; a min-heap yields
    // full sums in nondecreasing first coordinate.
    struct Node {
        double sum;
        std::uint32_t b_idx;
        std::uint32_t a_idx;
    };
    auto node_after = [](const Node& x, const Node& y) {
        if (x.sum != y.sum) return x.sum > y.sum;
        if (x.b_idx != y.b_idx) return x.b_idx > y.b_idx;
        return x.a_idx > y.a_idx;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(node_after)> heap(node_after);
    for (std::uint32_t bi = 0; bi < B.size(); ++bi) {
        double need = T - B[bi].v[0];
        auto it = std::lower_bound(A.begin(), A.end(), need,
                                   [](const Entry& e, double x) { return e.v[0] < x; });
        if (it == A.end()) continue;
        auto ai = static_cast<std::uint32_t>(it - A.begin());
        heap.push({A[ai].v[0] + B[bi].v[0], bi, ai});
    }

    struct WindowItem {
        double v0;
        std::uint32_t a_idx, b_idx;
    };
    std::deque<WindowItem> window;
    std::uint64_t pops = 0, compares = 0;

    auto coords_close = [&](const WindowItem& x, const WindowItem& y) {
        for (int j = 0; j < m; ++j) {
            double dj = A[x.a_idx].v[j] + B[x.b_idx].v[j] - A[y.a_idx].v[j] -
                        B[y.b_idx].v[j];
            if (dj > w_ub || dj < -w_ub) return false;
        }
        return true;
    };

    while (!heap.empty()) {
        if (used >= budget) return std::nullopt;
        Node top = heap.top();
        heap.pop();
        ++pops;
        ++used;
        WindowItem cur{top.sum, top.a_idx, top.b_idx};
        while (!window.empty() && window.front().v0 < cur.v0 - w_ub)
            window.pop_front();
        for (const WindowItem& other : window) {
            ++compares;
            if (++used > budget) return std::nullopt;
            if (!coords_close(cur, other)) continue;
            std::uint64_t t1 = A[cur.a_idx].mask | B[cur.b_idx].mask;
            std::uint64_t t2 = A[other.a_idx].mask | B[other.b_idx].mask;
            if (t1 == t2) continue;
            // exact confirmation
            MomentVector delta =
                tab.moments(SelectionVector::from_bits(t1, n + 1)) -
                tab.moments(SelectionVector::from_bits(t2, n + 1));
            bool ok = true;
            for (const Rational& dj : delta.v)
                if (!(abs(dj) < g.h)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            CollisionStats stats;
            stats.enumerated = pops;
            stats.cells = 0; // no cell table in this strategy
            stats.work = used;
            stats.wall_seconds = seconds_since(start);
            return finish(inst, tab, g, t1, t2, Strategy::mitm, stats);
        }
        window.push_back(cur);
        if (top.a_idx + 1 < A.size())
            heap.push({A[top.a_idx + 1].v[0] + B[top.b_idx].v[0], top.b_idx,
                       top.a_idx + 1});
    }
    return std::nullopt;
}

std::optional<CollisionCertificate> collide_random(const ProblemInstance& inst,
                                                   int m, std::uint64_t seed,
                                                   std::uint64_t budget) {
    const auto start = Clock::now();
    GridSpec g = GridSpec::make(inst, m);
    const int n = inst.n();
    if (n > 62) throw CapExceeded("random sampling refused: n exceeds 62");
    MomentTable tab(inst, m);
    CellScaler sc(tab, g);
    const std::uint64_t total = std::uint64_t(1) << (n + 1);

    std::unordered_map<std::uint64_t, std::uint64_t> first;
    SplitMix64 rng(seed);
    Integer scratch;
    for (std::uint64_t i = 0; i < budget; ++i) {
        std::uint64_t t = rng.next_below(total);
        std::vector<Integer> sv = sc.at(t);
        std::uint64_t cell = sc.pack(sv, scratch);
        auto [it, fresh] = first.try_emplace(cell, t);
        if (!fresh && it->second != t) {
            CollisionStats stats;
            stats.enumerated = i + 1;
            stats.cells = first.size();
            stats.work = i + 1;
            stats.wall_seconds = seconds_since(start);
            return finish(inst, tab, g, it->second, t, Strategy::random, stats);
        }
    }
    return std::nullopt;
}

std::optional<ConstructResult> construct(const ProblemInstance& inst, int m,
                                         const ConstructOptions& opts) {
    std::optional<CollisionCertificate> cert;
    switch (opts.strategy) {
        case Strategy::exhaustive:
            cert = collide_exhaustive(inst, m, opts.exhaustive);
            break;
        case Strategy::mitm:
            cert = collide_mitm(inst, m, opts.seed, opts.budget);
            break;
        case Strategy::random:
            cert = collide_random(inst, m, opts.seed, opts.budget);
            break;
    }
    if (!cert) return std::nullopt;
    ConstructResult out{cert->b, assemble(inst, cert->b), std::move(*cert)};
    if (out.P.is_zero())
        throw Error("internal: difference polynomial vanished");
    return out;
}

} // namespace polysign
