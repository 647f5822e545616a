#pragma once

// Deterministic module corpora.  A corpus is the test diet for the property
// suite: the structural inventory of an algebra (simples, projectives,
// injectives, radical layers, small direct sums) extended by seeded random
// cokernels of maps between projective sums.  Identical (algebra, seed)
// inputs regenerate the identical list, member for member and name for name.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structure.hpp"

namespace homdec {

struct CorpusOptions {
    std::size_t random_count = 12;
    std::size_t max_dim = 6;
};

template <Field F>
struct Corpus {
    AlgebraContext<F> ctx;
    std::vector<ModulePtr<F>> modules;
    std::uint64_t seed = 0;
};

namespace corpusdetail {

template <Field F>
F small_coeff(std::mt19937_64& rng) {
    return F(static_cast<int>(rng() % 5) - 2);
}

// random equivariant map drawn from the hom-space basis
template <Field F>
std::optional<ModuleMap<F>> random_hom(std::mt19937_64& rng, const ModulePtr<F>& m,
                                       const ModulePtr<F>& n) {
    auto basis = hom_space(m, n);
    if (basis.empty()) return std::nullopt;
    ModuleMap<F> f = ModuleMap<F>::zero(m, n);
    for (const auto& b : basis) f = f + b.scaled(small_coeff<F>(rng));
    if (f.is_zero_map()) return std::nullopt;
    return f;
}

}  // namespace corpusdetail

template <Field F>
Corpus<F> make_corpus(const AlgebraPtr<F>& a, std::uint64_t seed, CorpusOptions opts = {}) {
    Corpus<F> c{make_context(a), {}, seed};
    auto add = [&](const ModulePtr<F>& m) {
        for (const auto& known : c.modules)
            if (known->same_presentation(*m)) return;
        c.modules.push_back(m);
    };

    for (const auto& s : c.ctx.s.simples) add(s);
    for (const auto& p : c.ctx.s.projectives) add(p);
    for (const auto& i : c.ctx.injectives) add(i);
    add(zero_module(a));
    add(regular_module(a));

    for (const auto& p : c.ctx.s.projectives) {
        Matrix<F> rad = radical_subspace(c.ctx.s, p);
        if (rad.cols() > 0) add(submodule_from_basis(p, rad, p->name() + ".rad").module);
        add(top_of(c.ctx.s, p).module);
    }

    // small direct sums, the cheap extensions
    std::vector<ModulePtr<F>> bricks = c.ctx.s.simples;
    bricks.insert(bricks.end(), c.ctx.s.projectives.begin(), c.ctx.s.projectives.end());
    for (std::size_t i = 0; i < bricks.size(); ++i)
        for (std::size_t j = i; j < bricks.size(); ++j) {
            if (bricks[i]->dim() + bricks[j]->dim() > opts.max_dim) continue;
            add(direct_sum(a, {bricks[i], bricks[j]}, "sum").module);
        }

    // seeded random cokernels; attempts are counted so the stream is stable
    std::mt19937_64 rng(seed);
    const auto& projs = c.ctx.s.projectives;
    std::size_t produced = 0;
    for (std::size_t attempt = 0; produced < opts.random_count && attempt < 24 * opts.random_count;
         ++attempt) {
        auto pick = [&]() {
            std::vector<ModulePtr<F>> parts;
            std::size_t count = 1 + rng() % 2;
            for (std::size_t t = 0; t < count; ++t)
                parts.push_back(projs[rng() % projs.size()]);
            return direct_sum(a, parts, "ps").module;
        };
        ModulePtr<F> src = pick();
        ModulePtr<F> dst = pick();
        auto f = corpusdetail::random_hom(rng, src, dst);
        if (!f) continue;
        auto coker = cokernel_of(*f, "r" + std::to_string(produced)).module;
        if (coker->dim() == 0 || coker->dim() > opts.max_dim) continue;
        add(coker);
        ++produced;
    }
    return c;
}

}  // namespace homdec
