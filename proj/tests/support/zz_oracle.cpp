#include "support/zz_oracle.hpp"

namespace zz {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// m probed on the source tower for each limit level
constexpr std::size_t source_window = 6;
// inverse-limit levels probed
constexpr std::size_t level_window = 4;

u64 gcd64(u64 a, u64 b) {
    while (b) {
        u64 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

bool is_z_tower(const Tower& t) {
    for (u64 o : t.order)
        if (o != 0) return false;
    return true;
}

bool is_finite_tower(const Tower& t) {
    for (u64 o : t.order)
        if (o == 0) return false;
    return true;
}

bool is_constant(const Tower& t) {
    for (u64 s : t.step)
        if (s != 1) return false;
    for (u64 o : t.order)
        if (o != t.order.front()) return false;
    return true;
}

bool is_trivial(const Tower& t) {
    for (u64 o : t.order)
        if (o != 1) return false;
    return true;
}

// product of step[from..to) reduced mod m, m >= 1
u64 composite_mod(const Tower& t, std::size_t from, std::size_t to, u64 m) {
    u128 acc = 1 % m;
    for (std::size_t i = from; i < to; ++i) acc = (acc * (t.step[i] % m)) % m;
    return static_cast<u64>(acc);
}

// product of step[from..from+m); the factories keep these below 2^63
u64 source_product(const Tower& a, std::size_t from, std::size_t m) {
    u128 acc = 1;
    for (std::size_t i = from; i < from + m; ++i) acc *= a.step[i];
    return static_cast<u64>(acc);
}

// order of the n-torsion of the truncated colimit, realized in the last
// stage; stable when the previous stage already carries all of it
struct TorsionPart {
    u64 order = 1;
    bool stable = true;
};

TorsionPart torsion_of(const Tower& b, u64 n) {
    if (is_z_tower(b)) return {1, true};
    std::size_t last = b.order.size() - 1;
    u64 g_prev = gcd64(n, b.order[last - 1]);
    u64 g_last = gcd64(n, b.order[last]);
    return {g_last, g_prev == g_last};
}

// (colim b)/n as a truncated colimit of the stage quotients.  The image of
// an early stage is generated by the composite transition multiplier, and
// gcd(A, tau) is nondecreasing in the number of steps composed, so the
// truncation is judged stable when the last two values agree.
struct QuotientColim {
    u64 ambient = 1;   // Z/ambient carries the truncated colimit
    u64 killed = 1;    // stabilized gcd(ambient, composite multiplier)
    bool stable = true;
    u64 order() const { return ambient / killed; }
};

QuotientColim quotient_colim(const Tower& b, u64 n) {
    u64 ambient = is_z_tower(b) ? n : gcd64(n, b.order.back());
    if (ambient == 1) return {1, 1, true};
    std::size_t last = b.order.size() - 1;
    u64 d_prev = 0, d_last = 0;
    for (std::size_t h = 1; h <= last; ++h) {
        u64 tau = composite_mod(b, last - h, last, ambient);
        u64 dh = tau ? gcd64(ambient, tau) : ambient;
        d_prev = d_last;
        d_last = dh;
        if (dh == ambient) {  // killed divisors only grow, the cap is final
            d_prev = ambient;
            break;
        }
    }
    return {ambient, d_last, d_prev == d_last};
}

// Witnesses at stage c of the target for threads divisible by every partial
// product of the source steps.  The solvable set {y : exists j and z with
// t(c->j) y = sbar z} is a subgroup of the stage; it is tracked by its
// generating divisor.
enum class ChainVerdict { stable_nonzero, stable_trivial, divergent, unstable };

ChainVerdict witness_chain(const Tower& a, const Tower& b, std::size_t c) {
    std::size_t jmax = b.order.size();
    u64 mc = b.order[c];
    bool z_ambient = (mc == 0);
    std::vector<u64> desc(source_window + 1, 0);
    for (std::size_t m = 1; m <= source_window; ++m) {
        u64 sbar = source_product(a, 0, m);
        if (z_ambient) {
            u64 t = composite_mod(b, c, jmax - 1, sbar);
            u64 g = t ? gcd64(sbar, t) : sbar;
            desc[m] = sbar / g;
        } else {
            u64 best = 0;
            for (std::size_t j = c; j < jmax; ++j) {
                u64 g = gcd64(sbar, b.order[j]);
                u64 tg = composite_mod(b, c, j, g);
                u64 q = g / (tg ? gcd64(g, tg) : g);
                if (best == 0 || q < best) best = q;
            }
            if (best >= mc)
                best = mc;  // only 0 survives
            else if (mc % best != 0)
                return ChainVerdict::unstable;  // not realized as a stage subgroup
            desc[m] = best;
        }
    }
    u64 l1 = desc[source_window];
    u64 l2 = desc[source_window - 1];
    u64 l3 = desc[source_window - 2];
    if (l1 == l2 && l2 == l3) {
        if (z_ambient) return ChainVerdict::stable_nonzero;  // q.Z is nonzero
        return l1 == mc ? ChainVerdict::stable_trivial : ChainVerdict::stable_nonzero;
    }
    // the divisors are nondecreasing; growth that recurs through the end of
    // the window is divergence, a lone final jump stays undecided
    int growth = 0;
    for (std::size_t m = 2; m <= source_window; ++m)
        if (desc[m] > desc[m - 1]) ++growth;
    if (z_ambient && l1 > l2 && growth >= 2) return ChainVerdict::divergent;
    return ChainVerdict::unstable;
}

struct ChainSummary {
    bool any_nonzero = false;
    bool any_divergent = false;
    bool any_unstable = false;
};

ChainSummary probe_chains(const Tower& a, const Tower& b) {
    ChainSummary s;
    for (std::size_t c = 0; c < 4 && c + 4 < b.order.size(); ++c) {
        switch (witness_chain(a, b, c)) {
            case ChainVerdict::stable_nonzero: s.any_nonzero = true; break;
            case ChainVerdict::stable_trivial: break;
            case ChainVerdict::divergent: s.any_divergent = true; break;
            case ChainVerdict::unstable: s.any_unstable = true; break;
        }
    }
    return s;
}

// eventual-image verdict helper: all levels zero / all nonzero / undecided
struct LimitVerdict {
    bool all_zero = true;
    bool all_nonzero = true;
    bool stable = true;
};

Verdict settle(const LimitVerdict& lv) {
    if (!lv.stable) return {false, false};
    if (lv.all_zero) return {true, true};
    if (lv.all_nonzero) return {false, true};
    return {false, false};
}

}  // namespace

Tower constant_z() {
    Tower t;
    t.order.assign(12, 0);
    t.step.assign(11, 1);
    return t;
}

Tower constant_cyclic(u64 n) {
    Tower t;
    t.order.assign(12, n);
    t.step.assign(11, 1);
    return t;
}

Tower inverted_primes(const std::vector<u64>& primes) {
    u64 s = 1;
    for (u64 p : primes) s *= p;
    Tower t;
    t.order.assign(24, 0);
    t.step.assign(23, s);
    return t;
}

Tower rationals() {
    Tower t;
    t.order.assign(26, 0);
    for (u64 k = 2; k <= 26; ++k) t.step.push_back(k);
    return t;
}

Tower pruefer(u64 p) {
    Tower t;
    u128 o = 1;
    for (std::size_t k = 0; k < 24; ++k) {
        if (o * p >= (u128(1) << 62)) break;
        o *= p;
        t.order.push_back(static_cast<u64>(o));
    }
    t.step.assign(t.order.size() - 1, p);
    return t;
}

Tower torsion_omitting(const std::vector<u64>& excluded) {
    u64 d = 1;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        bool out = false;
        for (u64 e : excluded)
            if (e == p) out = true;
        if (out) continue;
        u128 trial = 1;
        bool fits = true;
        for (int i = 0; i < 12; ++i) {
            trial *= d * p;
            if (trial >= (u128(1) << 62)) {
                fits = false;
                break;
            }
        }
        if (fits) d *= p;
    }
    Tower t;
    u64 o = 1;
    for (int k = 0; k < 12; ++k) {
        o *= d;
        t.order.push_back(o);
    }
    t.step.assign(11, d);
    return t;
}

Verdict hom_vanishes(const Tower& a, const Tower& b) {
    if (is_trivial(b)) return {true, true};
    if (is_constant(a)) {
        u64 n = a.order.front();
        if (n == 0) return {false, true};  // maps off Z see every element
        if (n == 1) return {true, true};
        auto tp = torsion_of(b, n);
        return {tp.order == 1, tp.stable};
    }
    if (is_finite_tower(a)) {
        // growing torsion source: lim of the n_k-torsion with precomposition
        if (is_z_tower(b)) return {true, true};
        LimitVerdict lv;
        for (std::size_t k = 0; k < level_window && k + source_window < a.order.size(); ++k) {
            u64 e_prev = 0, e_last = 0;
            for (std::size_t m = 1; m <= source_window; ++m) {
                auto tp = torsion_of(b, a.order[k + m]);
                if (!tp.stable) lv.stable = false;
                u64 sbar = source_product(a, k, m);
                e_prev = e_last;
                e_last = tp.order / gcd64(tp.order, sbar);
            }
            if (e_prev != e_last) lv.stable = false;
            (e_last == 1 ? lv.all_nonzero : lv.all_zero) = false;
        }
        return settle(lv);
    }
    if (is_z_tower(a)) {
        // rank-one source with inverted scalars: threads are witnessed by
        // elements divisible by every partial product of the source steps
        auto s = probe_chains(a, b);
        if (s.any_nonzero) return {false, true};
        if (s.any_unstable) return {false, false};
        return {true, true};
    }
    return {false, false};
}

Verdict ext1_vanishes(const Tower& a, const Tower& b) {
    if (is_trivial(b)) return {true, true};
    if (is_constant(a)) {
        u64 n = a.order.front();
        if (n <= 1) return {true, true};  // Z and 0 are projective
        auto qc = quotient_colim(b, n);
        return {qc.order() == 1, qc.stable};
    }
    if (is_finite_tower(a)) {
        // lim of Ext^1(Z/n_k, b) = b/n_k b under the natural reductions;
        // the lim^1 term dies because every Hom(Z/n_k, b) is finite
        LimitVerdict lv;
        for (std::size_t k = 0; k < level_window && k + source_window < a.order.size(); ++k) {
            auto base = quotient_colim(b, a.order[k]);
            if (!base.stable) lv.stable = false;
            u64 f_prev = 0, f_last = 0;
            for (std::size_t m = 1; m <= source_window; ++m) {
                auto high = quotient_colim(b, a.order[k + m]);
                if (!high.stable) lv.stable = false;
                f_prev = f_last;
                f_last = base.ambient / gcd64(base.ambient, high.killed);
            }
            if (f_prev != f_last) lv.stable = false;
            (f_last == 1 ? lv.all_nonzero : lv.all_zero) = false;
        }
        return settle(lv);
    }
    if (is_z_tower(a)) {
        // stages are projective, so only lim^1 Hom(A_k, b) survives; it
        // vanishes exactly when the divisibility chain is Mittag-Leffler
        auto s = probe_chains(a, b);
        if (s.any_divergent) return {false, true};
        if (s.any_unstable) return {false, false};
        return {true, true};
    }
    return {false, false};
}

}  // namespace zz
