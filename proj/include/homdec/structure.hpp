#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"
#include "quiver.hpp"

namespace homdec {

namespace polydetail {

// polynomials as low-degree-first coefficient vectors

template <Field F>
std::vector<F> trim(std::vector<F> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

template <Field F>
std::vector<F> derivative(const std::vector<F>& p) {
    std::vector<F> d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        F c = F(0);
        for (std::size_t k = 0; k < i; ++k) c += p[i];  // i * p[i] in any characteristic
        d.push_back(c);
    }
    return trim(std::move(d));
}

template <Field F>
std::vector<F> rem(std::vector<F> a, const std::vector<F>& b) {
    a = trim(std::move(a));
    require(!b.empty(), "poly: division by zero polynomial");
    F lead = b.back();
    while (a.size() >= b.size()) {
        F q = a.back() / lead;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

template <Field F>
bool is_squarefree(const std::vector<F>& p) {
    std::vector<F> a = trim(p), b = derivative(p);
    if (b.empty()) return false;  // p' = 0: inseparable or constant
    while (!b.empty()) {
        auto r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.size() == 1;  // gcd is a unit
}

template <Field F>
F eval(const std::vector<F>& p, const F& x) {
    F acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// divide off (t - r); remainder must vanish
template <Field F>
std::vector<F> deflate(const std::vector<F>& p, const F& r) {
    std::vector<F> q(p.size() - 1, F(0));
    F carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    require(carry.is_zero(), "poly: deflation by a non-root");
    return q;
}

// Field-specific enumeration of linear factors. Returns all roots in the
// field of a squarefree polynomial, or nullopt when the search is not
// available / exceeds its budget.
template <Field F>
struct RootSearch {
    static std::optional<std::vector<F>> all_roots(const std::vector<F>&) { return std::nullopt; }
};

template <>
struct RootSearch<Rational> {
    static void divisors_of(mpz_class n, std::vector<mpz_class>& out, bool& complete) {
        n = abs(n);
        complete = true;
        if (n == 0) { out.push_back(0); return; }
        std::vector<std::pair<mpz_class, unsigned>> fac;
        mpz_class m = n;
        for (mpz_class p = 2; p * p <= m; ++p) {
            if (p > 1000000) { complete = false; break; }
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            if (e) fac.push_back({p, e});
        }
        if (m > 1) fac.push_back({m, 1});  // prime or unfactored remainder
        out.push_back(1);
        for (auto& [p, e] : fac) {
            std::size_t base = out.size();
            mpz_class pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
            }
        }
    }

    static std::optional<std::vector<Rational>> all_roots(const std::vector<Rational>& p) {
        // clear denominators
        mpz_class scale = 1;
        for (const auto& c : p) scale = lcm(scale, c.den());
        std::vector<mpz_class> ip;
        for (const auto& c : p) ip.push_back(c.num() * (scale / c.den()));
        while (!ip.empty() && ip.back() == 0) ip.pop_back();
        if (ip.size() <= 1) return std::vector<Rational>{};
        mpz_class content = 0;
        for (const auto& c : ip) content = gcd(content, c);
        for (auto& c : ip) c /= content;

        std::vector<Rational> roots;
        std::vector<Rational> cur(p);
        // root zero first; squarefree input carries at most one factor of t
        if (cur.size() > 1 && cur.front().is_zero()) {
            roots.push_back(Rational(0));
            cur.erase(cur.begin());
            ip.erase(ip.begin());
        }
        if (cur.size() <= 1) return roots;
        bool c0_ok = true, cd_ok = true;
        std::vector<mpz_class> nums, dens;
        divisors_of(ip.front(), nums, c0_ok);
        divisors_of(ip.back(), dens, cd_ok);
        if (!c0_ok || !cd_ok) return std::nullopt;  // factor budget exceeded
        for (const auto& n : nums)
            for (const auto& d : dens)
                for (int sign = 0; sign < 2; ++sign) {
                    if (cur.size() <= 1) break;
                    mpq_class q(sign ? mpz_class(-n) : n, d);
                    Rational cand{q};
                    if (eval(cur, cand).is_zero()) {
                        roots.push_back(cand);
                        cur = deflate(cur, cand);
                    }
                }
        return roots;
    }
};

template <>
struct RootSearch<Fp> {
    static std::optional<std::vector<Fp>> all_roots(const std::vector<Fp>& p) {
        std::uint64_t mod = 0;
        for (const auto& c : p)
            if (c.modulus()) { mod = c.modulus(); break; }
        if (mod == 0 || mod > 100000) return std::nullopt;  // need a small bound modulus
        std::vector<Fp> roots;
        std::vector<Fp> cur(p);
        for (std::uint64_t r = 0; r < mod && cur.size() > 1; ++r) {
            Fp cand(static_cast<long long>(r), mod);
            if (eval(cur, cand).is_zero()) {
                roots.push_back(cand);
                cur = deflate(cur, cand);
            }
        }
        return roots;
    }
};

}  // namespace polydetail

// Structural data of a basic split algebra: certified radical, a complete
// set of orthogonal primitive idempotents, the simples and the
// indecomposable projectives (with their embeddings into the regular
// module). Injectives come from the opposite side; see AlgebraContext.
template <Field F>
struct AlgebraStructure {
    AlgebraPtr<F> algebra;
    Matrix<F> radical;             // columns span rad(A)
    std::vector<Vec<F>> idempotents;
    std::vector<ModulePtr<F>> simples;
    std::vector<ModulePtr<F>> projectives;
    std::vector<Matrix<F>> projective_embeddings;  // into the regular module
    std::vector<Vec<F>> projective_generators;     // coords of e_i inside P_i
    ModulePtr<F> regular;
};

namespace structdetail {

template <Field F>
bool spans_include(const Matrix<F>& span, const Matrix<F>& vectors) {
    if (vectors.cols() == 0) return true;
    return solve_matrix(span, vectors).has_value();
}

// candidate must be a nilpotent two-sided ideal
template <Field F>
bool certify_nil_ideal(const AlgebraPresentation<F>& a, const Matrix<F>& n) {
    std::size_t d = a.dim();
    if (n.cols() == 0) return true;
    Matrix<F> left(d, d * n.cols()), right(d, d * n.cols());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n.cols(); ++j) {
            Vec<F> l = a.mult(a.basis_vec(i), n.column_vec(j));
            Vec<F> r = a.mult(n.column_vec(j), a.basis_vec(i));
            for (std::size_t k = 0; k < d; ++k) {
                left.at(k, i * n.cols() + j) = l[k];
                right.at(k, i * n.cols() + j) = r[k];
            }
        }
    if (!spans_include(n, left) || !spans_include(n, right)) return false;
    Matrix<F> power = n;
    for (std::size_t step = 0; step <= d; ++step) {
        if (power.cols() == 0) return true;
        Matrix<F> prod(d, power.cols() * n.cols());
        for (std::size_t x = 0; x < power.cols(); ++x)
            for (std::size_t y = 0; y < n.cols(); ++y) {
                Vec<F> w = a.mult(power.column_vec(x), n.column_vec(y));
                for (std::size_t k = 0; k < d; ++k) prod.at(k, x * n.cols() + y) = w[k];
            }
        Matrix<F> next = column_space(prod);
        if (next.cols() == power.cols()) return false;  // stabilized nonzero
        power = std::move(next);
    }
    return false;
}

// radical of the trace form tr(L_x L_y); equals the radical in
// characteristic zero and is certified afterwards in any case
template <Field F>
Matrix<F> trace_form_kernel(const AlgebraPresentation<F>& a) {
    std::size_t d = a.dim();
    std::vector<Matrix<F>> lm;
    for (std::size_t i = 0; i < d; ++i) lm.push_back(a.left_mult(a.basis_vec(i)));
    Matrix<F> gram(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Matrix<F> prod = lm[i] * lm[j];
            F tr(0);
            for (std::size_t k = 0; k < d; ++k) tr += prod.at(k, k);
            gram.at(i, j) = tr;
            gram.at(j, i) = tr;
        }
    return kernel_basis(gram);
}

template <Field F>
bool is_commutative(const AlgebraPresentation<F>& a) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (a.mult(a.basis_vec(i), a.basis_vec(j)) != a.mult(a.basis_vec(j), a.basis_vec(i)))
                return false;
    return true;
}

// commutative algebras over the prime field: the radical is the kernel of an
// iterated Frobenius, which is linear there
template <Field F>
std::optional<Matrix<F>> frobenius_radical(const AlgebraPresentation<F>&) {
    return std::nullopt;
}

inline std::optional<Matrix<Fp>> frobenius_radical(const AlgebraPresentation<Fp>& a) {
    if (!is_commutative(a)) return std::nullopt;
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < a.dim() && !p; ++i)
        for (std::size_t j = 0; j < a.dim() && !p; ++j)
            for (std::size_t k = 0; k < a.dim() && !p; ++k)
                if (a.sc(i, j, k).modulus()) p = a.sc(i, j, k).modulus();
    if (p == 0 || p > 100000) return std::nullopt;
    std::size_t d = a.dim();
    auto pth_power = [&](Vec<Fp> x) {
        Vec<Fp> acc = a.unit();
        Vec<Fp> base = std::move(x);
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = a.mult(acc, base);
            base = a.mult(base, base);
            e >>= 1;
        }
        return acc;
    };
    Matrix<Fp> frob(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec<Fp> col = pth_power(a.basis_vec(j));
        for (std::size_t i = 0; i < d; ++i) frob.at(i, j) = col[i];
    }
    Matrix<Fp> it = frob;
    std::uint64_t covered = p;
    while (covered < d) {
        it = frob * it;
        covered *= p;
    }
    return kernel_basis(it);
}

// split a commutative semisimple algebra into one-dimensional blocks; returns
// the complete list of primitive idempotents or nullopt when the quotient is
// not split (or the root search gave up)
template <Field F>
std::optional<std::vector<Vec<F>>> split_into_lines(const AlgebraPresentation<F>& a) {
    if (!is_commutative(a)) return std::nullopt;
    struct Block {
        Vec<F> unit;
        Matrix<F> basis;
    };
    std::vector<Block> done;
    std::vector<Block> todo;
    {
        Matrix<F> all(a.dim(), a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) all.at(i, i) = F(1);
        todo.push_back({a.unit(), all});
    }
    while (!todo.empty()) {
        Block b = std::move(todo.back());
        todo.pop_back();
        if (b.basis.cols() == 1) {
            done.push_back(std::move(b));
            continue;
        }
        bool advanced = false;
        for (std::size_t cand = 0; cand < b.basis.cols() && !advanced; ++cand) {
            Vec<F> x = b.basis.column_vec(cand);
            // left multiplication restricted to the block
            Matrix<F> images(a.dim(), b.basis.cols());
            for (std::size_t j = 0; j < b.basis.cols(); ++j) {
                Vec<F> w = a.mult(x, b.basis.column_vec(j));
                for (std::size_t i = 0; i < a.dim(); ++i) images.at(i, j) = w[i];
            }
            auto coords = solve_matrix(b.basis, images);
            require(coords.has_value(), "split: block not multiplicatively closed");
            auto mp = minimal_polynomial(*coords);
            if (mp.size() <= 2) continue;  // scalar on this block
            if (!polydetail::is_squarefree(mp)) return std::nullopt;  // nilpotents present
            auto roots = polydetail::RootSearch<F>::all_roots(mp);
            if (!roots.has_value()) return std::nullopt;  // search unavailable
            if (roots->size() + 1 != mp.size()) return std::nullopt;  // non-split factor
            // CRT idempotents of k[x] restricted to the block
            for (const auto& lam : *roots) {
                Vec<F> g = b.unit;
                for (const auto& mu : *roots) {
                    if (mu == lam) continue;
                    Vec<F> t = a.mult(g, x);
                    F scale = F(1) / (lam - mu);
                    for (std::size_t i = 0; i < a.dim(); ++i)
                        t[i] = (t[i] - mu * g[i]) * scale;
                    g = std::move(t);
                }
                require(a.mult(g, g) == g, "split: projector failed idempotency");
                Matrix<F> sub(a.dim(), b.basis.cols());
                for (std::size_t j = 0; j < b.basis.cols(); ++j) {
                    Vec<F> w = a.mult(g, b.basis.column_vec(j));
                    for (std::size_t i = 0; i < a.dim(); ++i) sub.at(i, j) = w[i];
                }
                todo.push_back({g, column_space(sub)});
            }
            advanced = true;
        }
        if (!advanced) {
            // every basis vector acts as a scalar yet the block is larger
            // than a line: cannot happen over a field
            return std::nullopt;
        }
    }
    // deterministic order: by pivot position of the block unit
    std::stable_sort(done.begin(), done.end(), [](const Block& x, const Block& y) {
        auto lead = [](const Vec<F>& v) {
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) return i;
            return v.size();
        };
        return lead(x.unit) < lead(y.unit);
    });
    std::vector<Vec<F>> out;
    for (auto& b : done) out.push_back(std::move(b.unit));
    return out;
}

}  // namespace structdetail

// Radical with certification: the returned columns span a nilpotent two-sided
// ideal with split semisimple quotient, which pins it as the radical.
// Rejects algebras whose semisimple quotient does not split over the field.
template <Field F>
Matrix<F> certified_radical(const AlgebraPtr<F>& a) {
    using namespace structdetail;
    std::vector<Matrix<F>> candidates;
    if (a->known_radical()) candidates.push_back(*a->known_radical());
    candidates.push_back(trace_form_kernel(*a));
    if (auto fr = frobenius_radical(*a)) candidates.push_back(*fr);
    for (const auto& n : candidates) {
        if (certify_nil_ideal(*a, n)) return n;
    }
    fail("fdalg: cannot certify the radical of " + a->name() + " over this field");
}

template <Field F>
AlgebraStructure<F> analyze_algebra(const AlgebraPtr<F>& a) {
    using namespace structdetail;
    AlgebraStructure<F> s;
    s.algebra = a;
    s.radical = certified_radical(a);
    std::size_t d = a->dim();

    // quotient by the radical
    auto comp = complement_of_column_space(s.radical, d);
    std::size_t qd = comp.coords.size();
    {
        std::vector<F> qsc(qd * qd * qd, F(0));
        for (std::size_t i = 0; i < qd; ++i)
            for (std::size_t j = 0; j < qd; ++j) {
                Vec<F> prod = a->mult(comp.section.column_vec(i), comp.section.column_vec(j));
                Vec<F> red = comp.projection.apply(prod);
                for (std::size_t k = 0; k < qd; ++k) qsc[(i * qd + j) * qd + k] = red[k];
            }
        Vec<F> qunit = comp.projection.apply(a->unit());
        AlgebraPresentation<F> quo(a->name() + "/rad", qd, std::move(qsc), std::move(qunit));

        std::optional<std::vector<Vec<F>>> quo_idem;
        if (a->known_idempotents()) {
            // transfer and trust after cheap verification below
            quo_idem = std::vector<Vec<F>>();
            for (const auto& e : *a->known_idempotents())
                quo_idem->push_back(comp.projection.apply(e));
        } else {
            quo_idem = split_into_lines(quo);
        }
        if (!quo_idem.has_value() || quo_idem->size() != qd)
            fail("fdalg: non-split semisimple quotient in " + a->name() + " (reject input)");

        if (a->known_idempotents()) {
            s.idempotents = *a->known_idempotents();
        } else {
            // lift along A -> A/rad, keeping the family orthogonal
            Vec<F> used(d, F(0));
            Vec<F> one = a->unit();
            for (std::size_t i = 0; i < quo_idem->size(); ++i) {
                Vec<F> f = one;
                for (std::size_t k = 0; k < d; ++k) f[k] -= used[k];
                if (i + 1 == quo_idem->size()) {
                    s.idempotents.push_back(f);
                    break;
                }
                Vec<F> x = comp.section.apply((*quo_idem)[i]);
                x = a->mult(a->mult(f, x), f);
                bool settled = false;
                for (int it = 0; it < 64; ++it) {
                    Vec<F> x2 = a->mult(x, x);
                    if (x2 == x) { settled = true; break; }
                    Vec<F> x3 = a->mult(x2, x);
                    for (std::size_t k = 0; k < d; ++k)
                        x[k] = F(3) * x2[k] - F(2) * x3[k];
                }
                require(settled, "fdalg: idempotent lifting did not converge");
                s.idempotents.push_back(x);
                for (std::size_t k = 0; k < d; ++k) used[k] += x[k];
            }
        }
    }

    // verify the family: orthogonal idempotents summing to the unit
    {
        Vec<F> sum(d, F(0));
        for (const auto& e : s.idempotents) {
            require(a->mult(e, e) == e, "fdalg: claimed idempotent fails e*e=e");
            for (std::size_t k = 0; k < d; ++k) sum[k] += e[k];
        }
        require(sum == a->unit(), "fdalg: idempotents do not sum to the unit");
        for (std::size_t i = 0; i < s.idempotents.size(); ++i)
            for (std::size_t j = 0; j < s.idempotents.size(); ++j) {
                if (i == j) continue;
                require(a->mult(s.idempotents[i], s.idempotents[j]) == Vec<F>(d, F(0)),
                        "fdalg: idempotent family is not orthogonal");
            }
    }

    s.regular = regular_module(a);
    for (std::size_t i = 0; i < s.idempotents.size(); ++i) {
        auto sub = submodule_generated(s.regular, {s.idempotents[i]},
                                       "P" + std::to_string(i + 1));
        auto gen = solve(sub.inclusion, s.idempotents[i]);
        require(gen.solvable, "fdalg: generator escaped its own projective");
        s.projectives.push_back(sub.module);
        s.projective_embeddings.push_back(sub.inclusion);
        s.projective_generators.push_back(gen.solution);

        // simple top: quotient by rad * e_i inside P_i coordinates
        Matrix<F> radgen(d, s.radical.cols());
        for (std::size_t c = 0; c < s.radical.cols(); ++c) {
            Vec<F> w = a->mult(s.radical.column_vec(c), s.idempotents[i]);
            for (std::size_t r = 0; r < d; ++r) radgen.at(r, c) = w[r];
        }
        Matrix<F> radspan = column_space(radgen);
        auto incoords = solve_matrix(sub.inclusion, radspan);
        require(incoords.has_value(), "fdalg: radical left the projective");
        auto q = quotient_by_basis(sub.module, column_space(*incoords),
                                   "S" + std::to_string(i + 1));
        require(q.module->dim() == 1, "fdalg: simple top is not one-dimensional");
        s.simples.push_back(q.module);
    }
    return s;
}

// A two-sided view: structures for the algebra and its opposite, plus the
// injectives on both sides (dual of the other side's projectives).
template <Field F>
struct AlgebraContext {
    AlgebraPtr<F> algebra;
    AlgebraPtr<F> opposite;
    AlgebraStructure<F> s;
    AlgebraStructure<F> sop;
    std::vector<ModulePtr<F>> injectives;     // over the algebra
    std::vector<ModulePtr<F>> op_injectives;  // over the opposite
};

template <Field F>
AlgebraContext<F> make_context(const AlgebraPtr<F>& a) {
    AlgebraContext<F> ctx;
    ctx.algebra = a;
    ctx.opposite = opposite_algebra(a);
    ctx.s = analyze_algebra(a);
    ctx.sop = analyze_algebra(ctx.opposite);
    require(ctx.s.idempotents.size() == ctx.sop.idempotents.size(),
            "fdalg: sides disagree about the number of blocks");
    for (std::size_t i = 0; i < ctx.sop.projectives.size(); ++i) {
        auto m = dual_module(ctx.sop.projectives[i], a);
        auto renamed = std::make_shared<FdModule<F>>(a,
            [&] {
                std::vector<Matrix<F>> act;
                for (std::size_t k = 0; k < a->dim(); ++k) act.push_back(m->action(k));
                return act;
            }(),
            "I" + std::to_string(i + 1));
        ctx.injectives.push_back(renamed);
    }
    for (std::size_t i = 0; i < ctx.s.projectives.size(); ++i) {
        auto m = dual_module(ctx.s.projectives[i], ctx.opposite);
        auto renamed = std::make_shared<FdModule<F>>(ctx.opposite,
            [&] {
                std::vector<Matrix<F>> act;
                for (std::size_t k = 0; k < a->dim(); ++k) act.push_back(m->action(k));
                return act;
            }(),
            "I" + std::to_string(i + 1) + "^op");
        ctx.op_injectives.push_back(renamed);
    }
    return ctx;
}

// radical submodule rad * M as a subspace of M
template <Field F>
Matrix<F> radical_subspace(const AlgebraStructure<F>& s, const ModulePtr<F>& m) {
    if (s.radical.cols() == 0 || m->dim() == 0) return Matrix<F>(m->dim(), 0);
    Matrix<F> gen(m->dim(), 0);
    for (std::size_t c = 0; c < s.radical.cols(); ++c)
        gen = hstack(gen, m->rho(s.radical.column_vec(c)));
    return column_space(gen);
}

template <Field F>
QuotientData<F> top_of(const AlgebraStructure<F>& s, const ModulePtr<F>& m) {
    return quotient_by_basis(m, radical_subspace(s, m), "top(" + m->name() + ")");
}

// largest submodule killed by the radical
template <Field F>
SubmoduleData<F> socle_of(const AlgebraStructure<F>& s, const ModulePtr<F>& m) {
    if (s.radical.cols() == 0)
        return submodule_from_basis(m, Matrix<F>::identity(m->dim()), "soc(" + m->name() + ")");
    Matrix<F> stack(s.radical.cols() * m->dim(), m->dim());
    for (std::size_t c = 0; c < s.radical.cols(); ++c) {
        Matrix<F> act = m->rho(s.radical.column_vec(c));
        for (std::size_t i = 0; i < m->dim(); ++i)
            for (std::size_t j = 0; j < m->dim(); ++j)
                stack.at(c * m->dim() + i, j) = act.at(i, j);
    }
    return submodule_from_basis(m, kernel_basis(stack), "soc(" + m->name() + ")");
}

// multiplicity of each simple in a semisimple module = rank of e_i acting
template <Field F>
std::vector<std::size_t> isotypic_multiplicities(const AlgebraStructure<F>& s,
                                                 const ModulePtr<F>& semisimple) {
    std::vector<std::size_t> out;
    for (const auto& e : s.idempotents) out.push_back(rank_of(semisimple->rho(e)));
    return out;
}

template <Field F>
struct CoverData {
    ModulePtr<F> cover;                 // direct sum of indecomposable projectives
    ModuleMap<F> onto;                  // cover -> M, surjective with small kernel
    std::vector<std::size_t> multiplicities;
};

// projective cover via the top: one copy of P_i per simple summand S_i of
// M / rad M, mapped by lifting the top basis through the quotient
template <Field F>
CoverData<F> projective_cover(const AlgebraStructure<F>& s, const ModulePtr<F>& m) {
    auto top = top_of(s, m);
    std::vector<ModulePtr<F>> parts;
    std::vector<Vec<F>> targets;  // image in M of each copy's generator
    std::vector<std::size_t> mult(s.idempotents.size(), 0);
    for (std::size_t i = 0; i < s.idempotents.size(); ++i) {
        Matrix<F> block = column_space(top.module->rho(s.idempotents[i]));
        mult[i] = block.cols();
        for (std::size_t c = 0; c < block.cols(); ++c) {
            parts.push_back(s.projectives[i]);
            Vec<F> lift = top.section.apply(block.column_vec(c));
            targets.push_back(m->rho(s.idempotents[i]).apply(lift));
        }
    }
    auto sum = direct_sum(s.algebra, parts, "cover(" + m->name() + ")");
    Matrix<F> map(m->dim(), sum.module->dim());
    std::size_t col = 0, part = 0;
    for (std::size_t i = 0; i < s.idempotents.size(); ++i) {
        for (std::size_t c = 0; c < mult[i]; ++c) {
            // columns: action of each P_i basis vector (as algebra element)
            // on the chosen generator image
            const Matrix<F>& emb = s.projective_embeddings[i];
            for (std::size_t j = 0; j < emb.cols(); ++j) {
                Vec<F> img = m->rho(emb.column_vec(j)).apply(targets[part]);
                // the generator coords: emb * gen = e_i; columns act through
                // rho, and rho(e_i) targets[part] = targets[part]
                for (std::size_t r = 0; r < m->dim(); ++r) map.at(r, col) = img[r];
                ++col;
            }
            ++part;
        }
    }
    ModuleMap<F> onto(sum.module, m, std::move(map));
    require(onto.is_surjective(), "fdalg: projective cover is not onto");
    // minimality: the kernel sits inside rad * cover
    Matrix<F> ker = kernel_basis(onto.matrix());
    Matrix<F> rad = radical_subspace(s, sum.module);
    require(structdetail::spans_include(rad, ker), "fdalg: cover kernel escapes the radical");
    return {sum.module, std::move(onto), std::move(mult)};
}

template <Field F>
struct EnvelopeData {
    ModulePtr<F> envelope;
    ModuleMap<F> into;  // M -> envelope, injective and essential
    std::vector<std::size_t> multiplicities;
};

// injective envelope by duality: E(M) = D(P(D M)) with D the linear dual to
// the opposite side
template <Field F>
EnvelopeData<F> injective_envelope(const AlgebraContext<F>& ctx, const ModulePtr<F>& m) {
    auto dm = dual_module(m, ctx.opposite);
    auto cover = projective_cover(ctx.sop, dm);
    auto env = dual_module(cover.cover, ctx.algebra);
    Matrix<F> into = cover.onto.matrix().transposed();
    ModuleMap<F> map(m, env, std::move(into));
    require(map.is_injective(), "fdalg: envelope embedding is not injective");
    return {env, std::move(map), std::move(cover.multiplicities)};
}

// Corner algebra e A e for an idempotent e, with the compression functor
// M |-> e M on modules.
template <Field F>
struct CornerData {
    AlgebraPtr<F> corner;
    Matrix<F> basis;  // columns: basis of eAe inside A
    Vec<F> e;
};

template <Field F>
CornerData<F> corner_algebra(const AlgebraPtr<F>& a, const Vec<F>& e, std::string name = "") {
    require(a->mult(e, e) == e, "corner: e is not idempotent");
    std::size_t d = a->dim();
    Matrix<F> img(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec<F> w = a->mult(a->mult(e, a->basis_vec(j)), e);
        for (std::size_t i = 0; i < d; ++i) img.at(i, j) = w[i];
    }
    Matrix<F> basis = column_space(img);
    std::size_t cd = basis.cols();
    std::vector<F> sc(cd * cd * cd, F(0));
    for (std::size_t i = 0; i < cd; ++i)
        for (std::size_t j = 0; j < cd; ++j) {
            Vec<F> prod = a->mult(basis.column_vec(i), basis.column_vec(j));
            auto coords = solve(basis, prod);
            require(coords.solvable, "corner: products left the corner");
            for (std::size_t k = 0; k < cd; ++k) sc[(i * cd + j) * cd + k] = coords.solution[k];
        }
    auto unit = solve(basis, e);
    require(unit.solvable, "corner: unit missing");
    auto corner = std::make_shared<AlgebraPresentation<F>>(
        name.empty() ? "corner(" + a->name() + ")" : std::move(name), cd, std::move(sc),
        unit.solution);
    return {corner, std::move(basis), e};
}

template <Field F>
struct CompressedModule {
    ModulePtr<F> module;   // over the corner algebra
    Matrix<F> inclusion;   // eM inside M
};

template <Field F>
CompressedModule<F> compress_module(const CornerData<F>& c, const ModulePtr<F>& m) {
    Matrix<F> em = column_space(m->rho(c.e));
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < c.corner->dim(); ++i) {
        Matrix<F> act = m->rho(c.basis.column_vec(i)) * em;
        auto coords = solve_matrix(em, act);
        require(coords.has_value(), "corner: compressed action left eM");
        action.push_back(*coords);
    }
    return {make_module<F>(c.corner, std::move(action), "e(" + m->name() + ")"), em};
}

}  // namespace homdec
