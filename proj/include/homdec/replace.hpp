#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "complex.hpp"
#include "structure.hpp"

namespace homdec {

// Bounded-above degreewise-projective replacement of a bounded complex,
// built from the top degree downward. At each degree the next term is a
// projective cover of
//   W^i = {(x, p) in X^i (+) P^{i+1} : d_X x = phi p, d_P p = 0},
// with phi and d_P read off the two coordinates. The mapping cone of
// phi: P -> X is then exact in every degree >= down_to, which makes phi a
// quasi-isomorphism once the construction has run below the support of X.
template <Field F>
struct ReplacementData {
    BoundedComplex<F> complex;
    ChainMap<F> to_target;  // P -> X
    bool complete = false;  // ran off the bottom: P is a full replacement
};

template <Field F>
ReplacementData<F> projective_replacement(const AlgebraStructure<F>& s, const BoundedComplex<F>& x,
                                          long down_to) {
    const AlgebraPtr<F>& alg = s.algebra;
    if (x.is_zero() || down_to > x.hi()) {
        BoundedComplex<F> p = zero_complex(alg);
        return {p, zero_chain_map(p, x), x.is_zero()};
    }
    long h = x.hi();
    std::vector<ModulePtr<F>> terms_desc;
    std::vector<ModuleMap<F>> phis_desc;
    std::vector<ModuleMap<F>> dps_desc;
    bool complete = false;

    ModulePtr<F> p_next = zero_module(alg);
    ModuleMap<F> phi_next = ModuleMap<F>::zero(p_next, x.term(h + 1));
    ModuleMap<F> dp_next = ModuleMap<F>::zero(p_next, zero_module(alg));
    long bottom = down_to;
    for (long i = h; i >= down_to; --i) {
        auto amb = direct_sum(alg, {x.term(i), p_next}, "W-amb");
        ModuleMap<F> mismatch = amb.projections[0].then(x.diff(i)) +
                                amb.projections[1].then(phi_next).scaled(F(-1));
        ModuleMap<F> stays_cycle = amb.projections[1].then(dp_next);
        auto tgt = direct_sum(alg, {x.term(i + 1), dp_next.dst()}, "W-tgt");
        ModuleMap<F> big = mismatch.then(tgt.injections[0]) + stays_cycle.then(tgt.injections[1]);
        auto w = kernel_of(big, "W");

        auto cov = projective_cover(s, w.module);
        ModuleMap<F> onto_w = cov.onto.then(w.inclusion);  // P^i -> X^i (+) P^{i+1}
        ModuleMap<F> phi = onto_w.then(amb.projections[0]);
        ModuleMap<F> dp = onto_w.then(amb.projections[1]);
        terms_desc.push_back(cov.cover);
        phis_desc.push_back(phi);
        dps_desc.push_back(dp);
        p_next = cov.cover;
        phi_next = phi;
        dp_next = dp;
        if (cov.cover->dim() == 0 && i <= x.lo()) {
            complete = true;
            bottom = i;
            break;
        }
        bottom = i;
    }

    std::size_t k = terms_desc.size();
    std::vector<ModulePtr<F>> terms(terms_desc.rbegin(), terms_desc.rend());
    std::vector<ModuleMap<F>> diffs;
    for (std::size_t j = 0; j + 1 < k; ++j) diffs.push_back(dps_desc[k - 1 - j]);
    BoundedComplex<F> p(alg, bottom, std::move(terms), std::move(diffs));
    std::vector<ModuleMap<F>> comps(phis_desc.rbegin(), phis_desc.rend());
    ChainMap<F> to_target(p, x, bottom, std::move(comps));
    return {std::move(p), std::move(to_target), complete};
}

// contravariant dual: (DX)^i = D(X^{-i}) over the opposite algebra, with
// transposed differentials
template <Field F>
BoundedComplex<F> dual_complex(const BoundedComplex<F>& x, const AlgebraPtr<F>& opposite) {
    if (x.is_zero()) return zero_complex(opposite);
    std::vector<ModulePtr<F>> terms;
    std::vector<ModuleMap<F>> diffs;
    for (long i = x.hi(); i >= x.lo(); --i) terms.push_back(dual_module(x.term(i), opposite));
    for (long j = 0; j + 1 < static_cast<long>(terms.size()); ++j) {
        long i = x.hi() - j;  // term j is D(X^i); the next one is D(X^{i-1})
        diffs.emplace_back(terms[static_cast<std::size_t>(j)], terms[static_cast<std::size_t>(j + 1)],
                           x.diff(i - 1).matrix().transposed());
    }
    return BoundedComplex<F>(opposite, -x.hi(), std::move(terms), std::move(diffs));
}

// bounded-below degreewise-injective replacement, by dualizing into the
// opposite algebra, replacing projectively, and dualizing back
template <Field F>
struct CoreplacementData {
    BoundedComplex<F> complex;
    ChainMap<F> from_target;  // X -> I
    bool complete = false;
};

template <Field F>
CoreplacementData<F> injective_replacement(const AlgebraContext<F>& ctx, const BoundedComplex<F>& x,
                                           long up_to) {
    BoundedComplex<F> dx = dual_complex(x, ctx.opposite);
    auto rep = projective_replacement(ctx.sop, dx, -up_to);
    BoundedComplex<F> inj = dual_complex(rep.complex, ctx.algebra);
    std::vector<ModuleMap<F>> comps;
    long lo = std::min(inj.lo(), x.lo());
    long hi = std::max(inj.hi(), x.hi());
    for (long n = lo; n <= hi; ++n)
        comps.emplace_back(x.term(n), inj.term(n),
                           rep.to_target.component(-n).matrix().transposed());
    ChainMap<F> from_target(x, inj, lo, std::move(comps));
    return {std::move(inj), std::move(from_target), rep.complete};
}

}  // namespace homdec
