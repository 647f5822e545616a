#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ring_epi.hpp"

namespace homdec {

// The shapes of subcategories the pair machinery can talk about. The first
// three are cut out by a ring epi and have decidable membership; the Serre
// shape is cut out by an idempotent; a finite inventory is a sampled stand-in
// with no completeness claim.
enum class SubKind { image_of_epi, hom_ext_perp, tor_perp, serre_by_simples, finite_inventory };

template <Field F>
struct SubcategorySpec {
    SubKind kind;
    std::shared_ptr<const RingEpi<F>> epi;  // image_of_epi / hom_ext_perp / tor_perp
    std::vector<std::size_t> simples;       // serre_by_simples
    std::vector<ModulePtr<F>> inventory;    // finite_inventory
    std::string label;

    static SubcategorySpec image_of(std::shared_ptr<const RingEpi<F>> e) {
        return {SubKind::image_of_epi, std::move(e), {}, {}, "modules through the epi"};
    }
    static SubcategorySpec hom_perp_of(std::shared_ptr<const RingEpi<F>> e) {
        return {SubKind::hom_ext_perp, std::move(e), {}, {}, "Hom- and Ext1-perp of S"};
    }
    static SubcategorySpec tor_perp_of(std::shared_ptr<const RingEpi<F>> e) {
        return {SubKind::tor_perp, std::move(e), {}, {}, "tensor- and Tor1-perp of S"};
    }
    static SubcategorySpec serre(std::vector<std::size_t> s) {
        return {SubKind::serre_by_simples, nullptr, std::move(s), {}, "composition factors in a set"};
    }
    static SubcategorySpec listed(std::vector<ModulePtr<F>> inv) {
        return {SubKind::finite_inventory, nullptr, {}, std::move(inv), "finite inventory (sampled)"};
    }
};

struct MembershipResult {
    bool yes = false;
    bool complete = true;  // a decided criterion, as opposed to a sampled search
    std::string witness;
};

// Evaluation at 1 of S: Hom_R(S, M) -> M. For a ring epi, M lies in the
// image of restriction exactly when this is bijective.
template <Field F>
Matrix<F> evaluation_at_one(const RingEpi<F>& e, const std::vector<ModuleMap<F>>& homs,
                            const ModulePtr<F>& m) {
    Matrix<F> ev(m->dim(), homs.size());
    for (std::size_t b = 0; b < homs.size(); ++b)
        ev.set_column(b, homs[b].matrix().apply(e.s->unit()));
    return ev;
}

namespace subdetail {

// iso search against a candidate of equal dimension: try the hom basis and
// pairwise sums; finds most isos in practice, never claims completeness
template <Field F>
bool finds_iso(const ModulePtr<F>& m, const ModulePtr<F>& n) {
    if (m->dim() != n->dim()) return false;
    if (m->same_presentation(*n)) return true;
    auto basis = hom_space(m, n);
    std::size_t d = m->dim();
    for (const auto& f : basis)
        if (rank_of(f.matrix()) == d) return true;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Matrix<F> sum = basis[i].matrix();
            for (std::size_t r = 0; r < sum.rows(); ++r)
                for (std::size_t c = 0; c < sum.cols(); ++c)
                    sum.at(r, c) += basis[j].matrix().at(r, c);
            if (rank_of(sum) == d) return true;
        }
    return false;
}

}  // namespace subdetail

template <Field F>
MembershipResult membership(const AlgebraContext<F>& rc, const SubcategorySpec<F>& sub,
                            const ModulePtr<F>& m) {
    MembershipResult out;
    switch (sub.kind) {
        case SubKind::image_of_epi: {
            auto homs = hom_space(sub.epi->s_left, m);
            Matrix<F> ev = evaluation_at_one(*sub.epi, homs, m);
            if (homs.size() != m->dim()) {
                out.witness = "Hom(S, " + m->name() + ") has dimension " +
                              std::to_string(homs.size()) + ", module has " +
                              std::to_string(m->dim());
                return out;
            }
            if (rank_of(ev) != m->dim()) {
                out.witness = "evaluation at 1 is not invertible on " + m->name();
                return out;
            }
            out.yes = true;
            return out;
        }
        case SubKind::hom_ext_perp: {
            std::size_t h = hom_dim(sub.epi->s_left, m);
            if (h != 0) {
                out.witness = "Hom(S, " + m->name() + ") has dimension " + std::to_string(h);
                return out;
            }
            std::size_t x = ext_dim(1, sub.epi->s_left, m, rc.s);
            if (x != 0) {
                out.witness = "Ext1(S, " + m->name() + ") has dimension " + std::to_string(x);
                return out;
            }
            out.yes = true;
            return out;
        }
        case SubKind::tor_perp: {
            std::size_t t0 = tensor_over_algebra(sub.epi->s_right, m).dim;
            if (t0 != 0) {
                out.witness = "S (x) " + m->name() + " has dimension " + std::to_string(t0);
                return out;
            }
            std::size_t t1 = tor_dim(1, sub.epi->s_right, m, rc.s);
            if (t1 != 0) {
                out.witness = "Tor1(S, " + m->name() + ") has dimension " + std::to_string(t1);
                return out;
            }
            out.yes = true;
            return out;
        }
        case SubKind::serre_by_simples: {
            Vec<F> e(rc.algebra->dim(), F(0));
            std::vector<bool> in(rc.s.idempotents.size(), false);
            for (auto i : sub.simples) {
                require(i < in.size(), "membership: simple index out of range");
                in[i] = true;
            }
            for (std::size_t i = 0; i < in.size(); ++i)
                if (!in[i])
                    for (std::size_t k = 0; k < e.size(); ++k) e[k] += rc.s.idempotents[i][k];
            std::size_t r = rank_of(m->rho(e));
            if (r != 0) {
                out.witness = "complementary idempotent acts with rank " + std::to_string(r) +
                              " on " + m->name();
                return out;
            }
            out.yes = true;
            return out;
        }
        case SubKind::finite_inventory: {
            for (const auto& cand : sub.inventory)
                if (subdetail::finds_iso(m, cand)) {
                    out.yes = true;
                    out.complete = true;  // an explicit isomorphism is a certificate
                    out.witness = "matched " + cand->name();
                    return out;
                }
            out.complete = false;
            out.witness = "no match in the finite inventory (search is not exhaustive)";
            return out;
        }
    }
    return out;
}

}  // namespace homdec
