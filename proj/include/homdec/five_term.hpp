#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subcategory.hpp"

namespace homdec {

// Which side of a ring epi generates the pair: hom_side restricts the image
// to the X slot and perps to Y; tensor_side perps X and restricts to Y.
enum class EpiSide { hom_side, tensor_side };

template <Field F>
struct OrthoPair {
    SubcategorySpec<F> x, y;
    std::shared_ptr<const RingEpi<F>> epi;  // set when the pair comes from an epi
    std::optional<EpiSide> side;            // set when a canonical construction exists
    std::string label;
};

template <Field F>
OrthoPair<F> hom_side_pair(std::shared_ptr<const RingEpi<F>> e) {
    auto x = SubcategorySpec<F>::image_of(e);
    auto y = SubcategorySpec<F>::hom_perp_of(e);
    return {std::move(x), std::move(y), std::move(e), EpiSide::hom_side, "(image, perp)"};
}

template <Field F>
OrthoPair<F> tensor_side_pair(std::shared_ptr<const RingEpi<F>> e) {
    auto x = SubcategorySpec<F>::tor_perp_of(e);
    auto y = SubcategorySpec<F>::image_of(e);
    return {std::move(x), std::move(y), std::move(e), EpiSide::tensor_side, "(perp, image)"};
}

// Same classes in swapped slots; no canonical five-term shape survives this.
template <Field F>
OrthoPair<F> swapped_pair(const OrthoPair<F>& p) {
    return {p.y, p.x, p.epi, std::nullopt, p.label + " swapped"};
}

// 0 -> Y_M -> X_M -> M -> Y^M -> X^M -> 0 with membership witnesses for the
// four outer objects. Always verified exact on construction.
template <Field F>
struct FiveTerm {
    ModulePtr<F> y_low, x_low, mid, y_high, x_high;
    ModuleMap<F> into_x;  // Y_M -> X_M
    ModuleMap<F> counit;  // X_M -> M
    ModuleMap<F> unit;    // M -> Y^M
    ModuleMap<F> onto_x;  // Y^M -> X^M
    MembershipResult wit_y_low, wit_x_low, wit_y_high, wit_x_high;
};

// Exactness at all five interior spots: composites vanish and ranks
// interlock with the dimensions.
template <Field F>
void verify_five_term(const FiveTerm<F>& ft) {
    require(ft.into_x.then(ft.counit).is_zero_map(), "five-term: X_M composite not zero");
    require(ft.counit.then(ft.unit).is_zero_map(), "five-term: middle composite not zero");
    require(ft.unit.then(ft.onto_x).is_zero_map(), "five-term: Y^M composite not zero");
    std::size_t r2 = rank_of(ft.into_x.matrix());
    std::size_t r1 = rank_of(ft.counit.matrix());
    std::size_t r0 = rank_of(ft.unit.matrix());
    std::size_t rp = rank_of(ft.onto_x.matrix());
    require(r2 == ft.y_low->dim(), "five-term: not exact at Y_M");
    require(r2 + r1 == ft.x_low->dim(), "five-term: not exact at X_M");
    require(r1 + r0 == ft.mid->dim(), "five-term: not exact in the middle");
    require(r0 + rp == ft.y_high->dim(), "five-term: not exact at Y^M");
    require(rp == ft.x_high->dim(), "five-term: not exact at X^M");
}

namespace epidetail {

template <Field F>
Matrix<F> negated(const Matrix<F>& m) {
    Matrix<F> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = F(0) - m.at(r, c);
    return out;
}

// Shared skeleton of the hom-side construction: the Hom complex
// Hom(P0, m) -> Hom(P1, m), evaluation at u0, and the pushout ambient.
template <Field F>
struct HomSideCore {
    SPresentation<F> pres;
    HomModule<F> c0, c1;
    Matrix<F> d;            // Hom(P0,m) -> Hom(P1,m), precompose with P1 -> P0
    Matrix<F> ev;           // Hom(P0,m) -> m, evaluate at u0
    DirectSumData<F> push;  // m + Hom(P1,m)
    Matrix<F> glue;         // columns (ev b, -d b): the cone differential
};

template <Field F>
HomSideCore<F> hom_side_core(const AlgebraContext<F>& rc, const RingEpi<F>& e,
                             const ModulePtr<F>& m) {
    auto pres = bimodule_presentation(rc.s, e);
    auto c0 = hom_module(pres.p0, m, "Hom(P0," + m->name() + ")");
    auto c1 = hom_module(pres.p1, m, "Hom(P1," + m->name() + ")");
    std::size_t n0 = c0.basis.size(), n1 = c1.basis.size(), dm = m->dim();
    Matrix<F> d(n1, n0);
    for (std::size_t b = 0; b < n0; ++b)
        d.set_column(b, homdetail::hom_coords(c1.basis, c0.basis[b].matrix() * pres.incl.matrix(),
                                              "hom side"));
    Matrix<F> ev(dm, n0);
    for (std::size_t b = 0; b < n0; ++b) ev.set_column(b, c0.basis[b].matrix().apply(pres.u0));
    auto push = direct_sum(e.r, {m, c1.module}, "push(" + m->name() + ")");
    Matrix<F> glue = vstack(ev, negated(d));
    return {std::move(pres), std::move(c0), std::move(c1), std::move(d), std::move(ev),
            std::move(push), std::move(glue)};
}

// Shared skeleton of the tensor-side construction: P1'(x)m -> P0'(x)m for
// the right-handed presentation, the unit u0 (x) -, and the cone ambient.
template <Field F>
struct TensorSideCore {
    SPresentation<F> pres;  // over the opposite algebra
    ModulePtr<F> t1m, t0m;
    TensorSpace<F> sp1, sp0;
    Matrix<F> delta;        // t1m -> t0m
    Matrix<F> u;            // m -> t0m
    DirectSumData<F> pull;  // t1m + m
};

template <Field F>
TensorSideCore<F> tensor_side_core(const AlgebraContext<F>& rc, const RingEpi<F>& e,
                                   const ModulePtr<F>& m) {
    auto fe = e.flipped();
    auto pres = bimodule_presentation(rc.sop, fe);
    std::size_t dm = m->dim();
    auto sp1 = tensor_over_algebra(pres.p1.left, m);
    auto sp0 = tensor_over_algebra(pres.p0.left, m);
    auto induced = [&](const Bimodule<F>& bm, const TensorSpace<F>& sp, std::string name) {
        std::vector<Matrix<F>> action;
        for (std::size_t i = 0; i < e.r->dim(); ++i)
            action.push_back(sp.projection * kron(bm.right[i], Matrix<F>::identity(dm)) *
                             sp.section);
        return make_module<F>(e.r, std::move(action), std::move(name));
    };
    auto t1m = induced(pres.p1, sp1, "P1(x)" + m->name());
    auto t0m = induced(pres.p0, sp0, "P0(x)" + m->name());
    Matrix<F> delta =
        sp0.projection * kron(pres.incl.matrix(), Matrix<F>::identity(dm)) * sp1.section;
    Matrix<F> u0col(pres.p0.left->dim(), 1);
    u0col.set_column(0, pres.u0);
    Matrix<F> u = sp0.projection * kron(u0col, Matrix<F>::identity(dm));
    auto pull = direct_sum(e.r, {t1m, m}, "pull(" + m->name() + ")");
    return {std::move(pres), std::move(t1m), std::move(t0m), std::move(sp1), std::move(sp0),
            std::move(delta), std::move(u), std::move(pull)};
}

}  // namespace epidetail

// The canonical five-term of a module. Hom side: apply Hom(-, m) to the
// presentation and cone off the evaluation; the outer objects are the
// kernels and cokernels of the resulting square. Tensor side: tensor the
// right-handed presentation and cone off the unit.
template <Field F>
FiveTerm<F> build_five_term(const AlgebraContext<F>& rc, const OrthoPair<F>& pair,
                            const ModulePtr<F>& m) {
    require(pair.side.has_value(), "five-term: no canonical construction for this pair shape");
    require(pair.epi != nullptr, "five-term: pair carries no epi");
    const RingEpi<F>& e = *pair.epi;
    ModulePtr<F> y_low, x_low, y_high, x_high;
    std::optional<ModuleMap<F>> into_x, counit, unit, onto_x;

    if (*pair.side == EpiSide::hom_side) {
        auto core = epidetail::hom_side_core(rc, e, m);
        ModuleMap<F> dmap(core.c0.module, core.c1.module, core.d);
        ModuleMap<F> cone_d(core.c0.module, core.push.module, core.glue);

        auto xk = kernel_of(dmap, "X(" + m->name() + ")");
        auto yk = kernel_of(cone_d, "Y(" + m->name() + ")");
        auto quot = quotient_by_basis(core.push.module, column_space(core.glue),
                                      "Y^(" + m->name() + ")");
        auto ck = cokernel_of(dmap, "X^(" + m->name() + ")");

        x_low = xk.module;
        y_low = yk.module;
        y_high = quot.module;
        x_high = ck.module;
        auto emb = solve_matrix(xk.inclusion.matrix(), yk.inclusion.matrix());
        require(emb.has_value(), "five-term: cone cycles escaped the kernel");
        into_x.emplace(y_low, x_low, *emb);
        counit.emplace(x_low, m, core.ev * xk.inclusion.matrix());
        unit.emplace(m, y_high, quot.projection * core.push.injections[0].matrix());
        onto_x.emplace(y_high, x_high,
                       ck.projection.matrix() * core.push.projections[1].matrix() * quot.section);
    } else {
        auto core = epidetail::tensor_side_core(rc, e, m);
        ModuleMap<F> dmap(core.t1m, core.t0m, core.delta);
        ModuleMap<F> cone_d(core.pull.module, core.t0m, hstack(core.delta, core.u));

        auto yk = kernel_of(dmap, "Y(" + m->name() + ")");
        auto xk = kernel_of(cone_d, "X(" + m->name() + ")");
        auto q1 = quotient_by_basis(core.t0m, column_space(core.delta), "Y^(" + m->name() + ")");
        auto q2 = quotient_by_basis(core.t0m, column_space(hstack(core.delta, core.u)),
                                    "X^(" + m->name() + ")");

        y_low = yk.module;
        x_low = xk.module;
        y_high = q1.module;
        x_high = q2.module;
        auto emb = solve_matrix(xk.inclusion.matrix(),
                                core.pull.injections[0].matrix() * yk.inclusion.matrix());
        require(emb.has_value(), "five-term: Tor cycles escaped the cone kernel");
        into_x.emplace(y_low, x_low, *emb);
        counit.emplace(x_low, m, core.pull.projections[1].matrix() * xk.inclusion.matrix());
        unit.emplace(m, y_high, q1.projection * core.u);
        onto_x.emplace(y_high, x_high, q2.projection * q1.section);
    }

    FiveTerm<F> ft{y_low,
                   x_low,
                   m,
                   y_high,
                   x_high,
                   std::move(*into_x),
                   std::move(*counit),
                   std::move(*unit),
                   std::move(*onto_x),
                   membership(rc, pair.y, y_low),
                   membership(rc, pair.x, x_low),
                   membership(rc, pair.y, y_high),
                   membership(rc, pair.x, x_high)};
    verify_five_term(ft);
    return ft;
}

// r is the right adjoint value X_M, l the left adjoint value Y^M.
template <Field F>
ModulePtr<F> r_of(const AlgebraContext<F>& rc, const OrthoPair<F>& pair, const ModulePtr<F>& m) {
    return build_five_term(rc, pair, m).x_low;
}

template <Field F>
ModulePtr<F> l_of(const AlgebraContext<F>& rc, const OrthoPair<F>& pair, const ModulePtr<F>& m) {
    return build_five_term(rc, pair, m).y_high;
}

// ---- ladders ------------------------------------------------------------

// The four dashed maps extending f between two five-terms, when they exist.
// freedom is the dimension of the solution space; the pair axioms force it
// to zero, so the stored maps are then the unique ladder.
template <Field F>
struct Ladder {
    bool exists = false;
    std::size_t freedom = 0;
    std::optional<ModuleMap<F>> y_low, x_low, y_high, x_high;
};

namespace epidetail {

// rows expressing a N(g) U = U a_M(g) for every algebra basis g, stacked
// over the unknown block at the given column offset
template <Field F>
void append_linearity_rows(std::vector<std::vector<F>>& rows, std::vector<F>& rhs,
                           const ModulePtr<F>& src, const ModulePtr<F>& dst,
                           std::size_t offset, std::size_t total) {
    std::size_t sm = src->dim(), dn = dst->dim();
    for (std::size_t g = 0; g < src->algebra()->dim(); ++g) {
        const Matrix<F>& am = src->action(g);
        const Matrix<F>& an = dst->action(g);
        // vec(an U) - vec(U am) = (I (x) an - am^T (x) I) vec U
        for (std::size_t c = 0; c < sm; ++c)
            for (std::size_t r = 0; r < dn; ++r) {
                std::vector<F> row(total, F(0));
                for (std::size_t k = 0; k < dn; ++k) row[offset + c * dn + k] += an.at(r, k);
                for (std::size_t k = 0; k < sm; ++k) row[offset + k * dn + r] -= am.at(k, c);
                rows.push_back(std::move(row));
                rhs.push_back(F(0));
            }
    }
}

template <Field F>
Matrix<F> unvec_block(const Vec<F>& sol, std::size_t offset, std::size_t r, std::size_t c) {
    Matrix<F> out(r, c);
    for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < r; ++i) out.at(i, j) = sol[offset + j * r + i];
    return out;
}

}  // namespace epidetail

// Solve for the ladder (Y_f, X_f, Y^f, X^f) making all four squares over f
// commute, with module linearity imposed on every unknown. One linear
// system; existence and the solution-space dimension are exact.
template <Field F>
Ladder<F> extend_morphism_five_term(const FiveTerm<F>& src, const FiveTerm<F>& dst,
                                    const ModuleMap<F>& f) {
    require(f.src()->same_presentation(*src.mid) && f.dst()->same_presentation(*dst.mid),
            "ladder: morphism endpoints do not match the five-terms");
    std::size_t ya = src.y_low->dim(), yb = dst.y_low->dim();
    std::size_t xa = src.x_low->dim(), xb = dst.x_low->dim();
    std::size_t ua = src.y_high->dim(), ub = dst.y_high->dim();
    std::size_t va = src.x_high->dim(), vb = dst.x_high->dim();
    std::size_t off_y = 0, off_x = ya * yb, off_u = off_x + xa * xb, off_v = off_u + ua * ub;
    std::size_t total = off_v + va * vb;

    std::vector<std::vector<F>> rows;
    std::vector<F> rhs;
    epidetail::append_linearity_rows(rows, rhs, src.y_low, dst.y_low, off_y, total);
    epidetail::append_linearity_rows(rows, rhs, src.x_low, dst.x_low, off_x, total);
    epidetail::append_linearity_rows(rows, rhs, src.y_high, dst.y_high, off_u, total);
    epidetail::append_linearity_rows(rows, rhs, src.x_high, dst.x_high, off_v, total);

    // X_f . eps(-2) = eps(-2)' . Y_f
    const Matrix<F>& e2s = src.into_x.matrix();
    const Matrix<F>& e2d = dst.into_x.matrix();
    for (std::size_t j = 0; j < ya; ++j)
        for (std::size_t r = 0; r < xb; ++r) {
            std::vector<F> row(total, F(0));
            for (std::size_t k = 0; k < xa; ++k) row[off_x + k * xb + r] += e2s.at(k, j);
            for (std::size_t k = 0; k < yb; ++k) row[off_y + j * yb + k] -= e2d.at(r, k);
            rows.push_back(std::move(row));
            rhs.push_back(F(0));
        }
    const Matrix<F>& e1s = src.counit.matrix();
    const Matrix<F>& e1d = dst.counit.matrix();
    Matrix<F> fc = f.matrix() * e1s;  // f . eps(-1) = eps(-1)' . X_f
    for (std::size_t j = 0; j < xa; ++j)
        for (std::size_t r = 0; r < f.dst()->dim(); ++r) {
            std::vector<F> row(total, F(0));
            for (std::size_t k = 0; k < xb; ++k) row[off_x + j * xb + k] += e1d.at(r, k);
            rows.push_back(std::move(row));
            rhs.push_back(fc.at(r, j));
        }
    const Matrix<F>& e0s = src.unit.matrix();
    const Matrix<F>& e0d = dst.unit.matrix();
    Matrix<F> uf = e0d * f.matrix();  // Y^f . eps(0) = eps(0)' . f
    for (std::size_t j = 0; j < src.mid->dim(); ++j)
        for (std::size_t r = 0; r < ub; ++r) {
            std::vector<F> row(total, F(0));
            for (std::size_t k = 0; k < ua; ++k) row[off_u + k * ub + r] += e0s.at(k, j);
            rows.push_back(std::move(row));
            rhs.push_back(uf.at(r, j));
        }
    const Matrix<F>& eps = src.onto_x.matrix();
    const Matrix<F>& epd = dst.onto_x.matrix();
    for (std::size_t j = 0; j < ua; ++j)  // X^f . eps(1) = eps(1)' . Y^f
        for (std::size_t r = 0; r < vb; ++r) {
            std::vector<F> row(total, F(0));
            for (std::size_t k = 0; k < va; ++k) row[off_v + k * vb + r] += eps.at(k, j);
            for (std::size_t k = 0; k < ub; ++k) row[off_u + j * ub + k] -= epd.at(r, k);
            rows.push_back(std::move(row));
            rhs.push_back(F(0));
        }

    Matrix<F> sys(rows.size(), total);
    Vec<F> b(rows.size(), F(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
        b[i] = rhs[i];
    }
    Ladder<F> out;
    auto sol = solve(sys, b);
    if (!sol.solvable) return out;
    out.exists = true;
    out.freedom = total - rank_of(sys);
    out.y_low.emplace(src.y_low, dst.y_low, epidetail::unvec_block(sol.solution, off_y, yb, ya));
    out.x_low.emplace(src.x_low, dst.x_low, epidetail::unvec_block(sol.solution, off_x, xb, xa));
    out.y_high.emplace(src.y_high, dst.y_high,
                       epidetail::unvec_block(sol.solution, off_u, ub, ua));
    out.x_high.emplace(src.x_high, dst.x_high,
                       epidetail::unvec_block(sol.solution, off_v, vb, va));
    return out;
}

struct UniqueReport {
    bool iso = false;
    std::size_t freedom = 0;
    std::string detail;
};

// Two verified five-terms of the same module are uniquely isomorphic over
// the identity. Corrupted inputs die in verification before any comparison.
template <Field F>
UniqueReport check_five_term_unique(const FiveTerm<F>& a, const FiveTerm<F>& b) {
    verify_five_term(a);
    verify_five_term(b);
    require(a.mid->same_presentation(*b.mid), "uniqueness: five-terms of different modules");
    ModuleMap<F> idb(a.mid, b.mid, Matrix<F>::identity(a.mid->dim()));
    auto lad = extend_morphism_five_term(a, b, idb);
    UniqueReport out;
    out.freedom = lad.freedom;
    if (!lad.exists) {
        out.detail = "no ladder over the identity";
        return out;
    }
    if (lad.freedom != 0) {
        out.detail = "ladder not unique (freedom " + std::to_string(lad.freedom) + ")";
        return out;
    }
    auto invertible = [](const ModuleMap<F>& g) {
        return g.src()->dim() == g.dst()->dim() && rank_of(g.matrix()) == g.src()->dim();
    };
    if (!invertible(*lad.y_low)) {
        out.detail = "Y_M component not invertible";
        return out;
    }
    if (!invertible(*lad.x_low)) {
        out.detail = "X_M component not invertible";
        return out;
    }
    if (!invertible(*lad.y_high)) {
        out.detail = "Y^M component not invertible";
        return out;
    }
    if (!invertible(*lad.x_high)) {
        out.detail = "X^M component not invertible";
        return out;
    }
    out.iso = true;
    return out;
}

// ---- cross-checks against the derived-functor routes --------------------

struct RouteCheck {
    bool ok = false;
    std::string detail;
};

// l computed as H^0 Hom(T, m) must agree with Y^m from the five-term; the
// comparison map sends f to (f(u_R), f . iota1) and descends to an
// isomorphism of the two quotients.
template <Field F>
RouteCheck check_unit_route(const AlgebraContext<F>& rc, const OrthoPair<F>& pair,
                            const ModulePtr<F>& m) {
    RouteCheck out;
    require(pair.side == EpiSide::hom_side, "unit route: hom-side pair required");
    const RingEpi<F>& e = *pair.epi;
    auto ft = build_five_term(rc, pair, m);
    auto core = epidetail::hom_side_core(rc, e, m);
    auto quot = quotient_by_basis(core.push.module, column_space(core.glue), "tw");
    require(quot.module->same_presentation(*ft.y_high), "unit route: construction drifted");

    auto uf = unit_functor(rc, e, m);
    std::size_t n0 = uf.hom0.basis.size();
    Matrix<F> phi(core.push.module->dim(), n0);
    for (std::size_t b = 0; b < n0; ++b) {
        Vec<F> top = uf.hom0.basis[b].matrix().apply(uf.u_r);
        Vec<F> bot = homdetail::hom_coords(core.c1.basis, uf.hom0.basis[b].matrix() * uf.iota1,
                                           "unit route");
        Vec<F> col(core.push.module->dim(), F(0));
        for (std::size_t i = 0; i < top.size(); ++i) col[i] = top[i];
        for (std::size_t i = 0; i < bot.size(); ++i) col[top.size() + i] = bot[i];
        phi.set_column(b, col);
    }
    ModuleMap<F> phimap(uf.hom0.module, core.push.module, phi);  // linearity checked here
    (void)phimap;
    Matrix<F> comp = quot.projection * phi;
    Matrix<F> ker = kernel_basis(uf.onto.matrix());
    Matrix<F> killed = comp * ker;
    for (std::size_t r = 0; r < killed.rows(); ++r)
        for (std::size_t c = 0; c < killed.cols(); ++c)
            if (!killed.at(r, c).is_zero()) {
                out.detail = "comparison does not descend to the quotient";
                return out;
            }
    if (uf.module->dim() != ft.y_high->dim()) {
        out.detail = "l(m) and Y^m have different dimensions";
        return out;
    }
    if (rank_of(comp) != ft.y_high->dim()) {
        out.detail = "descended comparison is not onto";
        return out;
    }
    auto g = solve_matrix(uf.onto.matrix().transposed(), comp.transposed());
    if (!g.has_value()) {
        out.detail = "comparison does not factor through l(m)";
        return out;
    }
    ModuleMap<F> iso(uf.module, ft.y_high, g->transposed());  // verifies linearity
    out.ok = rank_of(iso.matrix()) == ft.y_high->dim();
    if (!out.ok) out.detail = "descended comparison is not invertible";
    return out;
}

// r computed as H^0 (T' (x) m) must agree with X_m from the five-term; the
// comparison sends (x, p)(x)v to (-p(x)v, x.v) and restricts to the kernels.
template <Field F>
RouteCheck check_counit_route(const AlgebraContext<F>& rc, const OrthoPair<F>& pair,
                              const ModulePtr<F>& m) {
    RouteCheck out;
    require(pair.side == EpiSide::tensor_side, "counit route: tensor-side pair required");
    const RingEpi<F>& e = *pair.epi;
    auto ft = build_five_term(rc, pair, m);
    auto core = epidetail::tensor_side_core(rc, e, m);
    ModuleMap<F> cone_d(core.pull.module, core.t0m, hstack(core.delta, core.u));
    auto xk = kernel_of(cone_d, "tw");
    require(xk.module->same_presentation(*ft.x_low), "counit route: construction drifted");

    auto cf = counit_functor(rc, e, m);
    std::size_t dm = m->dim(), dr = cf.r_block;
    std::size_t d1 = cf.p1_left->dim();
    std::size_t amb = (dr + d1) * dm;
    // ambient comparison: rows = [P1'(x)m quotient coords ; m], columns over
    // the ambient (R + P1') (x)k m
    Matrix<F> sel(d1 * dm, amb);
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t i = 0; i < dm; ++i) sel.at(a * dm + i, (dr + a) * dm + i) = F(1);
    Matrix<F> mrows(dm, amb);
    for (std::size_t in = 0; in < dr; ++in) {
        const Matrix<F>& act = m->action(in);
        for (std::size_t im = 0; im < dm; ++im)
            for (std::size_t r = 0; r < dm; ++r) mrows.at(r, in * dm + im) = act.at(r, im);
    }
    Matrix<F> sigma =
        vstack(epidetail::negated(core.sp1.projection * sel), mrows) * cf.t0_space.section;
    ModuleMap<F> sigmap(cf.t0m, core.pull.module, sigma);  // linearity checked here
    (void)sigmap;
    auto rest = solve_matrix(xk.inclusion.matrix(), sigma * cf.incl.matrix());
    if (!rest.has_value()) {
        out.detail = "comparison leaves the cone kernel";
        return out;
    }
    ModuleMap<F> iso(cf.module, ft.x_low, *rest);
    out.ok = cf.module->dim() == ft.x_low->dim() &&
             rank_of(iso.matrix()) == ft.x_low->dim();
    if (!out.ok) out.detail = "restricted comparison is not invertible";
    return out;
}

// ---- the equivalence between the two perpendicular classes --------------

struct EquivalenceReport {
    bool ok = true;
    std::size_t forward = 0;   // Y-objects round-tripped
    std::size_t backward = 0;  // Z-objects round-tripped
    std::string detail;
};

namespace epidetail {

// unique g with g . pre = post, then demand invertibility
template <Field F>
bool unique_iso_through(const ModulePtr<F>& srcm, const ModulePtr<F>& dstm,
                        const Matrix<F>& pre, const Matrix<F>& post, std::string& detail) {
    std::size_t a = srcm->dim(), b = dstm->dim();
    std::vector<std::vector<F>> rows;
    std::vector<F> rhs;
    append_linearity_rows(rows, rhs, srcm, dstm, 0, a * b);
    for (std::size_t j = 0; j < pre.cols(); ++j)
        for (std::size_t r = 0; r < b; ++r) {
            std::vector<F> row(a * b, F(0));
            for (std::size_t k = 0; k < a; ++k) row[k * b + r] += pre.at(k, j);
            rows.push_back(std::move(row));
            rhs.push_back(post.at(r, j));
        }
    Matrix<F> sys(rows.size(), a * b);
    Vec<F> v(rows.size(), F(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < a * b; ++j) sys.at(i, j) = rows[i][j];
        v[i] = rhs[i];
    }
    auto sol = solve(sys, v);
    if (!sol.solvable) {
        detail = "no factorization through the unit";
        return false;
    }
    if (rank_of(sys) != a * b) {
        detail = "factorization not unique";
        return false;
    }
    Matrix<F> g = unvec_block(sol.solution, 0, b, a);
    ModuleMap<F> check(srcm, dstm, g);  // dies here if not module-linear
    (void)check;
    if (a != b || rank_of(g) != a) {
        detail = "factorization not invertible";
        return false;
    }
    return true;
}

}  // namespace epidetail

// For Y perp on the hom side, z = r(Y) lands in the tensor perp and l(z) is
// canonically isomorphic to Y; dually for Z in the tensor perp. Round trips
// run over the members of the inventory.
template <Field F>
EquivalenceReport check_yz_equivalence(const AlgebraContext<F>& rc,
                                       std::shared_ptr<const RingEpi<F>> e,
                                       const std::vector<ModulePtr<F>>& inventory) {
    EquivalenceReport out;
    auto hp = hom_side_pair<F>(e);
    auto tp = tensor_side_pair<F>(e);
    for (const auto& m : inventory) {
        if (membership(rc, hp.y, m).yes) {
            auto fty = build_five_term(rc, tp, m);
            if (!fty.wit_x_low.yes) {
                out.ok = false;
                out.detail = "r(" + m->name() + ") escaped the tensor perp";
                return out;
            }
            auto ftz = build_five_term(rc, hp, fty.x_low);
            // g . unit_z = counit_Y, uniquely, and g is an isomorphism
            if (!epidetail::unique_iso_through(ftz.y_high, m, ftz.unit.matrix(),
                                               fty.counit.matrix(), out.detail)) {
                out.ok = false;
                out.detail = "l(r(" + m->name() + ")) -> " + m->name() + ": " + out.detail;
                return out;
            }
            ++out.forward;
        }
        if (membership(rc, tp.x, m).yes) {
            auto ftz = build_five_term(rc, hp, m);
            if (!membership(rc, hp.y, ftz.y_high).yes) {
                out.ok = false;
                out.detail = "l(" + m->name() + ") escaped the hom perp";
                return out;
            }
            auto fty = build_five_term(rc, tp, ftz.y_high);
            // counit_y . h = unit_z with h unique and invertible; transpose
            // the problem to reuse the factorization helper on the opposite
            // composition order
            std::size_t a = m->dim(), b = fty.x_low->dim();
            std::vector<std::vector<F>> rows;
            std::vector<F> rhs;
            epidetail::append_linearity_rows(rows, rhs, m, fty.x_low, 0, a * b);
            const Matrix<F>& cu = fty.counit.matrix();
            const Matrix<F>& un = ftz.unit.matrix();
            for (std::size_t j = 0; j < a; ++j)
                for (std::size_t r = 0; r < un.rows(); ++r) {
                    std::vector<F> row(a * b, F(0));
                    for (std::size_t k = 0; k < b; ++k) row[j * b + k] += cu.at(r, k);
                    rows.push_back(std::move(row));
                    rhs.push_back(un.at(r, j));
                }
            Matrix<F> sys(rows.size(), a * b);
            Vec<F> v(rows.size(), F(0));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (std::size_t j = 0; j < a * b; ++j) sys.at(i, j) = rows[i][j];
                v[i] = rhs[i];
            }
            auto sol = solve(sys, v);
            bool good = sol.solvable && rank_of(sys) == a * b;
            if (good) {
                Matrix<F> h = epidetail::unvec_block(sol.solution, 0, b, a);
                ModuleMap<F> hm(m, fty.x_low, h);  // linearity check
                (void)hm;
                good = (a == b) && rank_of(h) == a;
            }
            if (!good) {
                out.ok = false;
                out.detail = m->name() + " -> r(l(" + m->name() + ")) is not a unique iso";
                return out;
            }
            ++out.backward;
        }
    }
    return out;
}

}  // namespace homdec
