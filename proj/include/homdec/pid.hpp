#pragma once

// Symbolic decomposition engine over the integers.  Where the finite
// dimensional side of the library certifies its answers by computing with
// matrices, this side works over a ring with infinitely many primes, so
// modules are finite direct sums drawn from a fixed class of atoms that is
// closed under every operation the decomposition needs: free parts, cyclic
// p-power torsion, localizations at finite or cofinite sets of primes, the
// rationals, and divisible p-torsion with its cofinite sums.  Supports,
// five-term splittings, localizations, and the Hom/Ext vanishing tables are
// all exact on this class.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "scalar.hpp"

namespace homdec::pid {

using u64 = std::uint64_t;

namespace arith {

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace arith

// deterministic Miller-Rabin, exact for every 64-bit input
inline bool is_prime(u64 n) {
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 p : small)
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : small) {
        u64 x = arith::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r && witness; ++i) {
            x = arith::mulmod(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

inline std::vector<u64> first_primes(std::size_t count) {
    std::vector<u64> out;
    for (u64 n = 2; out.size() < count; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

// A point of the spectrum: the generic point (0) or a maximal ideal (p).
struct PrimePoint {
    bool generic = false;
    u64 p = 0;

    static PrimePoint generic_point() { return {true, 0}; }
    static PrimePoint at(u64 p) {
        require(is_prime(p), "prime point: " + std::to_string(p) + " is not prime");
        return {false, p};
    }
    std::string name() const { return generic ? "(0)" : "(" + std::to_string(p) + ")"; }
    bool operator==(const PrimePoint&) const = default;
};

// A set of maximal ideals, either a finite list or the complement of one.
// Stored sorted without duplicates, every member certified prime, so
// structural equality is set equality.
class MaximalSet {
public:
    enum class Kind { finite, cofinite };

    static MaximalSet none() { return MaximalSet(Kind::finite, {}); }
    static MaximalSet all() { return MaximalSet(Kind::cofinite, {}); }
    static MaximalSet of(std::vector<u64> primes) {
        return MaximalSet(Kind::finite, std::move(primes));
    }
    static MaximalSet all_but(std::vector<u64> primes) {
        return MaximalSet(Kind::cofinite, std::move(primes));
    }

    Kind kind() const { return kind_; }
    const std::vector<u64>& primes() const { return primes_; }

    bool contains(u64 p) const {
        bool listed = false;
        for (u64 q : primes_)
            if (q == p) listed = true;
        return kind_ == Kind::finite ? listed : !listed;
    }
    bool empty() const { return kind_ == Kind::finite && primes_.empty(); }
    bool is_all() const { return kind_ == Kind::cofinite && primes_.empty(); }

    MaximalSet complement() const {
        return MaximalSet(kind_ == Kind::finite ? Kind::cofinite : Kind::finite, primes_);
    }

    bool subset_of(const MaximalSet& o) const {
        if (kind_ == Kind::finite) {
            for (u64 p : primes_)
                if (!o.contains(p)) return false;
            return true;
        }
        if (o.kind_ == Kind::finite) return false;  // cofinite sets are infinite
        // complement inclusion flips
        for (u64 p : o.primes_)
            if (contains(p)) return false;
        return true;
    }

    std::string name() const {
        std::string body = "{";
        for (std::size_t i = 0; i < primes_.size(); ++i)
            body += (i ? ", " : "") + std::to_string(primes_[i]);
        body += "}";
        if (kind_ == Kind::finite) return body;
        return primes_.empty() ? "all primes" : "all primes except " + body;
    }

    bool operator==(const MaximalSet&) const = default;

private:
    MaximalSet(Kind k, std::vector<u64> primes) : kind_(k), primes_(std::move(primes)) {
        std::sort(primes_.begin(), primes_.end());
        primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
        for (u64 p : primes_)
            require(is_prime(p), "maximal set: " + std::to_string(p) + " is not prime");
    }

    Kind kind_;
    std::vector<u64> primes_;
};

namespace setdetail {

inline std::vector<u64> merge_union(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<u64> merge_intersection(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out;
    for (u64 p : a)
        for (u64 q : b)
            if (p == q) out.push_back(p);
    return out;
}

inline std::vector<u64> merge_difference(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> out;
    for (u64 p : a) {
        bool drop = false;
        for (u64 q : b)
            if (p == q) drop = true;
        if (!drop) out.push_back(p);
    }
    return out;
}

}  // namespace setdetail

inline MaximalSet set_union(const MaximalSet& a, const MaximalSet& b) {
    using K = MaximalSet::Kind;
    if (a.kind() == K::finite && b.kind() == K::finite)
        return MaximalSet::of(setdetail::merge_union(a.primes(), b.primes()));
    if (a.kind() == K::cofinite && b.kind() == K::cofinite)
        return MaximalSet::all_but(setdetail::merge_intersection(a.primes(), b.primes()));
    const MaximalSet& fin = a.kind() == K::finite ? a : b;
    const MaximalSet& cof = a.kind() == K::finite ? b : a;
    return MaximalSet::all_but(setdetail::merge_difference(cof.primes(), fin.primes()));
}

inline MaximalSet set_intersection(const MaximalSet& a, const MaximalSet& b) {
    using K = MaximalSet::Kind;
    if (a.kind() == K::finite && b.kind() == K::finite)
        return MaximalSet::of(setdetail::merge_intersection(a.primes(), b.primes()));
    if (a.kind() == K::cofinite && b.kind() == K::cofinite)
        return MaximalSet::all_but(setdetail::merge_union(a.primes(), b.primes()));
    const MaximalSet& fin = a.kind() == K::finite ? a : b;
    const MaximalSet& cof = a.kind() == K::finite ? b : a;
    return MaximalSet::of(setdetail::merge_difference(fin.primes(), cof.primes()));
}

inline MaximalSet set_difference(const MaximalSet& a, const MaximalSet& b) {
    return set_intersection(a, b.complement());
}

// A subset of Spec Z: optionally the generic point plus a maximal set.
struct PrimeSet {
    bool generic = false;
    MaximalSet max = MaximalSet::none();

    static PrimeSet everything() { return {true, MaximalSet::all()}; }
    static PrimeSet closed_points() { return {false, MaximalSet::all()}; }
    static PrimeSet only_generic() { return {true, MaximalSet::none()}; }
    static PrimeSet points(std::vector<u64> primes) {
        return {false, MaximalSet::of(std::move(primes))};
    }
    static PrimeSet nothing() { return {false, MaximalSet::none()}; }

    bool contains(const PrimePoint& x) const { return x.generic ? generic : max.contains(x.p); }
    bool empty() const { return !generic && max.empty(); }
    bool is_everything() const { return generic && max.is_all(); }

    PrimeSet complement() const { return {!generic, max.complement()}; }
    bool subset_of(const PrimeSet& o) const {
        return (!generic || o.generic) && max.subset_of(o.max);
    }

    std::string name() const {
        if (is_everything()) return "all of Spec Z";
        if (empty()) return "(empty)";
        if (!generic) return max.name();
        if (max.empty()) return "{(0)}";
        return "{(0)} and " + max.name();
    }

    bool operator==(const PrimeSet&) const = default;
};

inline PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
    return {a.generic || b.generic, set_union(a.max, b.max)};
}

inline PrimeSet set_intersection(const PrimeSet& a, const PrimeSet& b) {
    return {a.generic && b.generic, set_intersection(a.max, b.max)};
}

// Closed under specialization: every closed point below a member is in.
// Over a one-dimensional base that means either the generic point is absent
// or the set is the whole spectrum.
inline bool is_specialization_closed(const PrimeSet& s) {
    return !s.generic || s.is_everything();
}

struct CoherenceReport {
    bool coherent = true;
    std::string reason;
};

// Every subset qualifies here; the operation exists so that reports carry
// the justification instead of a silent assumption.
inline CoherenceReport is_coherent(const PrimeSet& s) {
    return {true,
            s.name() +
                " is coherent: over a one-dimensional principal ideal domain every "
                "specialization closed subset is a union of closed points or the whole "
                "spectrum, and both come from hereditary torsion theories of finite type"};
}

enum class AtomKind { free_rank, cyclic, localized, rationals, pruefer, pruefer_sum };

// One indecomposable-ish building block.  Unused fields stay at their
// defaults so the defaulted equality is structural equality.
struct Atom {
    AtomKind kind = AtomKind::free_rank;
    u64 rank = 0;                         // free_rank
    u64 p = 0;                            // cyclic, pruefer
    u64 k = 0;                            // cyclic exponent
    MaximalSet set = MaximalSet::none();  // localized: inverted primes; pruefer_sum: summands

    static Atom free(u64 rank = 1) {
        Atom a;
        a.kind = AtomKind::free_rank;
        a.rank = rank;
        return a;
    }
    static Atom cyclic(u64 p, u64 k) {
        require(is_prime(p), "cyclic atom: modulus base must be prime");
        require(k >= 1, "cyclic atom: exponent must be positive");
        Atom a;
        a.kind = AtomKind::cyclic;
        a.p = p;
        a.k = k;
        return a;
    }
    static Atom localized(MaximalSet inverted) {
        Atom a;
        a.kind = AtomKind::localized;
        a.set = std::move(inverted);
        return a;
    }
    static Atom rationals() {
        Atom a;
        a.kind = AtomKind::rationals;
        return a;
    }
    static Atom pruefer(u64 p) {
        require(is_prime(p), "divisible torsion atom: prime required");
        Atom a;
        a.kind = AtomKind::pruefer;
        a.p = p;
        return a;
    }
    static Atom pruefer_sum(MaximalSet s) {
        Atom a;
        a.kind = AtomKind::pruefer_sum;
        a.set = std::move(s);
        return a;
    }

    bool divisible() const {
        return kind == AtomKind::rationals || kind == AtomKind::pruefer ||
               kind == AtomKind::pruefer_sum;
    }
    bool torsion() const {
        return kind == AtomKind::cyclic || kind == AtomKind::pruefer ||
               kind == AtomKind::pruefer_sum;
    }

    PrimeSet supp() const {
        switch (kind) {
            case AtomKind::free_rank: return PrimeSet::everything();
            case AtomKind::cyclic: return PrimeSet::points({p});
            case AtomKind::localized: return {true, set.complement()};
            case AtomKind::rationals: return PrimeSet::only_generic();
            case AtomKind::pruefer: return PrimeSet::points({p});
            case AtomKind::pruefer_sum: return {false, set};
        }
        fail("atom: bad kind");
    }
    PrimeSet ass() const {
        switch (kind) {
            case AtomKind::free_rank:
            case AtomKind::localized:
            case AtomKind::rationals: return PrimeSet::only_generic();
            case AtomKind::cyclic:
            case AtomKind::pruefer: return PrimeSet::points({p});
            case AtomKind::pruefer_sum: return {false, set};
        }
        fail("atom: bad kind");
    }

    std::string name() const {
        switch (kind) {
            case AtomKind::free_rank:
                return rank == 1 ? "Z" : "Z^" + std::to_string(rank);
            case AtomKind::cyclic: {
                unsigned __int128 v = 1;
                for (u64 i = 0; i < k; ++i) {
                    v *= p;
                    if (v > 1000000000000ULL)
                        return "Z/" + std::to_string(p) + "^" + std::to_string(k);
                }
                return "Z/" + std::to_string(static_cast<u64>(v));
            }
            case AtomKind::localized: {
                if (set.kind() == MaximalSet::Kind::finite) {
                    unsigned __int128 v = 1;
                    for (u64 q : set.primes()) {
                        v *= q;
                        if (v > 1000000000000ULL) return "Z[1/" + set.name() + "]";
                    }
                    return "Z[1/" + std::to_string(static_cast<u64>(v)) + "]";
                }
                std::string body;
                for (std::size_t i = 0; i < set.primes().size(); ++i)
                    body += (i ? ", " : "") + std::to_string(set.primes()[i]);
                return "Z_(" + body + ")";
            }
            case AtomKind::rationals: return "Q";
            case AtomKind::pruefer: return "Z(" + std::to_string(p) + "^inf)";
            case AtomKind::pruefer_sum:
                if (set.is_all()) return "Q/Z";
                if (set.kind() == MaximalSet::Kind::cofinite)
                    return "Q/Z omitting {" + [&] {
                        std::string body;
                        for (std::size_t i = 0; i < set.primes().size(); ++i)
                            body += (i ? ", " : "") + std::to_string(set.primes()[i]);
                        return body;
                    }() + "}";
                return "sum of Z(q^inf) for q in " + set.name();
        }
        fail("atom: bad kind");
    }

    // fixed order for the canonical form
    std::tuple<int, u64, u64, u64, int, std::vector<u64>> key() const {
        return {static_cast<int>(kind),
                p,
                k,
                rank,
                static_cast<int>(set.kind()),
                set.primes()};
    }

    bool operator==(const Atom&) const = default;
};

// A finite direct sum of atoms in canonical form: rewrites applied, free
// ranks merged, lone divisible torsion absorbed into cofinite sums, atoms
// sorted.  Equality of canonical forms is isomorphism inside the class.
struct SymbolicModule {
    std::vector<Atom> atoms;

    static SymbolicModule zero() { return {}; }

    static SymbolicModule of(std::vector<Atom> raw) {
        std::vector<Atom> out;
        for (Atom& a : raw) {
            switch (a.kind) {
                case AtomKind::free_rank:
                    if (a.rank > 0) out.push_back(a);
                    break;
                case AtomKind::cyclic:
                    if (a.k > 0) out.push_back(a);
                    break;
                case AtomKind::localized:
                    if (a.set.empty())
                        out.push_back(Atom::free(1));
                    else if (a.set.is_all())
                        out.push_back(Atom::rationals());
                    else
                        out.push_back(a);
                    break;
                case AtomKind::pruefer_sum:
                    if (a.set.kind() == MaximalSet::Kind::finite)
                        for (u64 q : a.set.primes()) out.push_back(Atom::pruefer(q));
                    else
                        out.push_back(a);
                    break;
                default: out.push_back(a); break;
            }
        }
        // a cofinite sum missing Z(p^inf) swallows a lone copy of it
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < out.size() && !changed; ++i) {
                if (out[i].kind != AtomKind::pruefer) continue;
                for (std::size_t j = 0; j < out.size() && !changed; ++j) {
                    if (out[j].kind != AtomKind::pruefer_sum) continue;
                    if (out[j].set.contains(out[i].p)) continue;
                    out[j].set = set_union(out[j].set, MaximalSet::of({out[i].p}));
                    out.erase(out.begin() + static_cast<long>(i));
                    changed = true;
                }
            }
        }
        u64 rank = 0;
        std::vector<Atom> rest;
        for (Atom& a : out) {
            if (a.kind == AtomKind::free_rank)
                rank += a.rank;
            else
                rest.push_back(a);
        }
        if (rank > 0) rest.push_back(Atom::free(rank));
        std::sort(rest.begin(), rest.end(),
                  [](const Atom& a, const Atom& b) { return a.key() < b.key(); });
        SymbolicModule m;
        m.atoms = std::move(rest);
        return m;
    }

    SymbolicModule plus(const SymbolicModule& o) const {
        std::vector<Atom> all = atoms;
        all.insert(all.end(), o.atoms.begin(), o.atoms.end());
        return of(std::move(all));
    }

    bool is_zero() const { return atoms.empty(); }

    std::string name() const {
        if (atoms.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            out += (i ? " + " : "") + atoms[i].name();
        return out;
    }

    bool operator==(const SymbolicModule&) const = default;
};

inline PrimeSet supp(const SymbolicModule& m) {
    PrimeSet s = PrimeSet::nothing();
    for (const Atom& a : m.atoms) s = set_union(s, a.supp());
    return s;
}

inline PrimeSet ass(const SymbolicModule& m) {
    PrimeSet s = PrimeSet::nothing();
    for (const Atom& a : m.atoms) s = set_union(s, a.ass());
    return s;
}

// Hom(a, b) = 0 as abelian groups, exact for atoms in canonical form.
// Divisible torsion maps only to divisible torsion; maps out of a
// localization extend uniquely along inverted scalars; everything else is
// bookkeeping with the primes involved.
inline bool hom_vanishes(const Atom& a, const Atom& b) {
    using K = AtomKind;
    switch (a.kind) {
        case K::free_rank: return false;  // evaluation at a basis vector
        case K::cyclic:
            switch (b.kind) {
                case K::free_rank:
                case K::localized:
                case K::rationals: return true;  // torsion into torsion free
                case K::cyclic: return a.p != b.p;
                case K::pruefer: return a.p != b.p;
                case K::pruefer_sum: return !b.set.contains(a.p);
            }
            break;
        case K::localized:
            switch (b.kind) {
                case K::free_rank: return !a.set.empty();
                case K::cyclic: return a.set.contains(b.p);
                case K::localized: return !a.set.subset_of(b.set);
                case K::rationals:
                case K::pruefer:
                case K::pruefer_sum: return false;  // divisible targets absorb
            }
            break;
        case K::rationals:
            switch (b.kind) {
                case K::free_rank:
                case K::cyclic:
                case K::localized: return true;  // image would be divisible
                case K::rationals:
                case K::pruefer:
                case K::pruefer_sum: return false;
            }
            break;
        case K::pruefer:
            switch (b.kind) {
                case K::free_rank:
                case K::cyclic:
                case K::localized:
                case K::rationals: return true;  // divisible torsion into reduced or torsion free
                case K::pruefer: return a.p != b.p;
                case K::pruefer_sum: return !b.set.contains(a.p);
            }
            break;
        case K::pruefer_sum:
            switch (b.kind) {
                case K::free_rank:
                case K::cyclic:
                case K::localized:
                case K::rationals: return true;
                case K::pruefer: return !a.set.contains(b.p);
                case K::pruefer_sum: return set_intersection(a.set, b.set).empty();
            }
            break;
    }
    fail("atom: bad kind");
}

// Ext^1(a, b) = 0.  Divisible targets are injective; Ext off a cyclic atom
// is b/p^k b; Ext off the other colimit atoms reduces to completion terms
// that vanish exactly when the inverted primes of the source already act
// invertibly on the target.
inline bool ext1_vanishes(const Atom& a, const Atom& b) {
    using K = AtomKind;
    if (b.kind == K::rationals || b.kind == K::pruefer || b.kind == K::pruefer_sum)
        return true;
    switch (a.kind) {
        case K::free_rank: return true;
        case K::cyclic:
            switch (b.kind) {
                case K::free_rank: return false;
                case K::cyclic: return a.p != b.p;
                case K::localized: return b.set.contains(a.p);
                default: break;
            }
            break;
        case K::localized:
            switch (b.kind) {
                case K::free_rank: return false;
                case K::cyclic: return true;  // towers of finite groups collapse
                case K::localized: return a.set.subset_of(b.set);
                default: break;
            }
            break;
        case K::rationals:
            switch (b.kind) {
                case K::free_rank: return false;
                case K::cyclic: return true;
                case K::localized: return false;  // the completion quotient survives
                default: break;
            }
            break;
        case K::pruefer:
            switch (b.kind) {
                case K::free_rank: return false;
                case K::cyclic: return a.p != b.p;
                case K::localized: return b.set.contains(a.p);
                default: break;
            }
            break;
        case K::pruefer_sum:
            switch (b.kind) {
                case K::free_rank: return false;
                case K::cyclic: return !a.set.contains(b.p);
                case K::localized: return a.set.subset_of(b.set);
                default: break;
            }
            break;
    }
    fail("atom: bad kind");
}

inline bool hom_vanishes(const SymbolicModule& a, const SymbolicModule& b) {
    for (const Atom& x : a.atoms)
        for (const Atom& y : b.atoms)
            if (!hom_vanishes(x, y)) return false;
    return true;
}

inline bool ext1_vanishes(const SymbolicModule& a, const SymbolicModule& b) {
    for (const Atom& x : a.atoms)
        for (const Atom& y : b.atoms)
            if (!ext1_vanishes(x, y)) return false;
    return true;
}

// Where one middle atom goes in the five-term sequence, with the canonical
// map it rides on.  The lowest term is always zero over the integers, so
// only three destinations appear.
struct AtomRoute {
    Atom source;
    std::string label;
    std::vector<Atom> to_x_low;
    std::vector<Atom> to_y_high;
    std::vector<Atom> to_x_high;
};

struct SymbolicFiveTerm {
    PrimeSet support_side;  // the specialization closed set the pair is built from
    SymbolicModule y_low, x_low, mid, y_high, x_high;
    std::vector<AtomRoute> routes;

    std::string display() const {
        return "0 -> " + y_low.name() + " -> " + x_low.name() + " -> " + mid.name() +
               " -> " + y_high.name() + " -> " + x_high.name() + " -> 0";
    }
};

// Exactness certificate: the routes cover the middle term, each side lands
// in its class, and the two classes are orthogonal atom by atom.
inline void verify_five_term_pid(const SymbolicFiveTerm& ft) {
    require(ft.y_low.is_zero(), "five-term: torsion coreflections embed, the lowest term is zero");
    std::vector<Atom> mid, xl, yh, xh;
    for (const AtomRoute& r : ft.routes) {
        mid.push_back(r.source);
        xl.insert(xl.end(), r.to_x_low.begin(), r.to_x_low.end());
        yh.insert(yh.end(), r.to_y_high.begin(), r.to_y_high.end());
        xh.insert(xh.end(), r.to_x_high.begin(), r.to_x_high.end());
    }
    require(SymbolicModule::of(mid) == ft.mid, "five-term: routes must cover the middle term");
    require(SymbolicModule::of(xl) == ft.x_low, "five-term: routes disagree with the coreflection");
    require(SymbolicModule::of(yh) == ft.y_high, "five-term: routes disagree with the reflection");
    require(SymbolicModule::of(xh) == ft.x_high, "five-term: routes disagree with the top term");
    const PrimeSet phi = ft.support_side;
    const PrimeSet away = phi.complement();
    require(supp(ft.x_low).subset_of(phi), "five-term: coreflection leaks outside the support");
    require(supp(ft.x_high).subset_of(phi), "five-term: top term leaks outside the support");
    require(supp(ft.y_high).subset_of(away), "five-term: reflection meets the support");
    SymbolicModule xs = ft.x_low.plus(ft.x_high);
    require(hom_vanishes(xs, ft.y_high), "five-term: Hom orthogonality fails");
    require(ext1_vanishes(xs, ft.y_high), "five-term: Ext orthogonality fails");
}

// Splits m along the hereditary torsion pair attached to a specialization
// closed phi.  Torsion atoms route by membership of their prime; torsion
// free atoms embed into their localization at the support with divisible
// torsion cokernel.
inline SymbolicFiveTerm five_term_pid(const SymbolicModule& m, const PrimeSet& phi) {
    require(is_specialization_closed(phi),
            "five-term: the support set must be specialization closed");
    require(!phi.is_everything(), "five-term: the full spectrum leaves nothing to split");
    const MaximalSet& t = phi.max;

    SymbolicFiveTerm ft;
    ft.support_side = phi;
    ft.mid = m;
    std::vector<Atom> xl, yh, xh;
    for (const Atom& a : m.atoms) {
        AtomRoute r;
        r.source = a;
        switch (a.kind) {
            case AtomKind::cyclic:
            case AtomKind::pruefer:
                if (t.contains(a.p)) {
                    r.label = "torsion at a support prime, the coreflection is the identity";
                    r.to_x_low = {a};
                } else {
                    r.label = "torsion away from the support, the unit is the identity";
                    r.to_y_high = {a};
                }
                break;
            case AtomKind::pruefer_sum: {
                r.label = "divisible torsion splits prime by prime";
                MaximalSet in = set_intersection(a.set, t);
                MaximalSet out = set_difference(a.set, t);
                if (!in.empty()) r.to_x_low = {Atom::pruefer_sum(in)};
                if (!out.empty()) r.to_y_high = {Atom::pruefer_sum(out)};
                break;
            }
            case AtomKind::rationals:
                r.label = "divisible torsion free, the unit is the identity";
                r.to_y_high = {a};
                break;
            case AtomKind::free_rank:
                r.label = "each free generator embeds into its localization at the support";
                for (u64 i = 0; i < a.rank; ++i) {
                    r.to_y_high.push_back(Atom::localized(t));
                    r.to_x_high.push_back(Atom::pruefer_sum(t));
                }
                break;
            case AtomKind::localized: {
                MaximalSet rest = set_difference(t, a.set);
                if (rest.empty()) {
                    r.label = "already local at the support, the unit is the identity";
                    r.to_y_high = {a};
                } else {
                    r.label = "the unit inverts the remaining support primes";
                    r.to_y_high = {Atom::localized(set_union(a.set, t))};
                    r.to_x_high = {Atom::pruefer_sum(rest)};
                }
                break;
            }
        }
        xl.insert(xl.end(), r.to_x_low.begin(), r.to_x_low.end());
        yh.insert(yh.end(), r.to_y_high.begin(), r.to_y_high.end());
        xh.insert(xh.end(), r.to_x_high.begin(), r.to_x_high.end());
        ft.routes.push_back(std::move(r));
    }
    ft.y_low = SymbolicModule::zero();
    ft.x_low = SymbolicModule::of(std::move(xl));
    ft.y_high = SymbolicModule::of(std::move(yh));
    ft.x_high = SymbolicModule::of(std::move(xh));
    verify_five_term_pid(ft);
    return ft;
}

// p acts invertibly on the atom for every p in the inverted set
inline bool atom_local_over(const Atom& a, const MaximalSet& inverted) {
    switch (a.kind) {
        case AtomKind::free_rank: return inverted.empty();
        case AtomKind::cyclic:
        case AtomKind::pruefer: return !inverted.contains(a.p);
        case AtomKind::localized: return inverted.subset_of(a.set);
        case AtomKind::rationals: return true;
        case AtomKind::pruefer_sum: return set_intersection(a.set, inverted).empty();
    }
    fail("atom: bad kind");
}

struct LocalizationReport {
    SymbolicFiveTerm five_term;
    bool y_side_local = true;
    std::string certificate;
};

// Decomposition against the multiplicative set generated by the listed
// primes.  The Y side is certified to carry a module structure over the
// localized ring, which is what makes the reflection a localization.
inline LocalizationReport localize_decomposition(const SymbolicModule& m,
                                                 const MaximalSet& inverted) {
    LocalizationReport rep{five_term_pid(m, PrimeSet{false, inverted})};
    for (const Atom& a : rep.five_term.y_high.atoms) {
        bool ok = atom_local_over(a, inverted);
        rep.y_side_local = rep.y_side_local && ok;
        rep.certificate += a.name() + (ok ? ": every inverted prime acts invertibly\n"
                                          : ": an inverted prime fails to act invertibly\n");
    }
    if (rep.five_term.y_high.is_zero())
        rep.certificate = "the reflection is zero, nothing to certify\n";
    return rep;
}

// Torsion modules with finite support split as a product over their primes.
inline std::map<u64, SymbolicModule> product_split(const SymbolicModule& m) {
    PrimeSet s = supp(m);
    require(!s.generic, "product split: the support must avoid the generic point");
    require(s.max.kind() == MaximalSet::Kind::finite,
            "product split: the support must be a finite set of primes");
    std::map<u64, std::vector<Atom>> parts;
    for (const Atom& a : m.atoms) parts[a.p].push_back(a);
    std::map<u64, SymbolicModule> out;
    for (auto& [p, atoms] : parts) out[p] = SymbolicModule::of(std::move(atoms));
    return out;
}

struct StratumNode {
    std::string label;
    std::string category;
    bool abelian_simple = false;
    std::vector<StratumNode> children;
};

// The full stratification tree: the root splits into the torsion part over
// the closed points and the generic part, the torsion part refines prime by
// prime.  Only the first prime_count closed strata are materialized; the
// family continues the same way forever.
inline StratumNode stratify(std::size_t prime_count = 5) {
    StratumNode torsion;
    torsion.label = "Supp^{-1}(Max)";
    torsion.category = "torsion modules, one factor per prime (first " +
                       std::to_string(prime_count) + " listed)";
    for (u64 p : first_primes(prime_count)) {
        StratumNode leaf;
        leaf.label = "Supp^{-1}({" + std::to_string(p) + "})";
        leaf.category = std::to_string(p) + "-primary torsion modules, unique simple Z/" +
                        std::to_string(p);
        leaf.abelian_simple = true;
        torsion.children.push_back(std::move(leaf));
    }
    StratumNode generic;
    generic.label = "Supp^{-1}(Min)";
    generic.category = "Q-Mod, unique simple Q";
    generic.abelian_simple = true;

    StratumNode root;
    root.label = "Spec Z";
    root.category = "all modules, split by the torsion pair at the closed points";
    root.children = {std::move(torsion), std::move(generic)};
    return root;
}

inline std::string render_tree(const StratumNode& n, std::size_t depth = 0) {
    std::string out(depth * 2, ' ');
    out += n.label + ": " + n.category + (n.abelian_simple ? " [simple]" : "") + "\n";
    for (const StratumNode& c : n.children) out += render_tree(c, depth + 1);
    return out;
}

}  // namespace homdec::pid
