#pragma once

#include <string>
#include <vector>

#include "resolve.hpp"

namespace homdec {

namespace homdetail {

// coordinates of a map matrix in a given hom-space basis
template <Field F>
Vec<F> hom_coords(const std::vector<ModuleMap<F>>& basis, const Matrix<F>& target,
                  const std::string& where) {
    if (basis.empty()) {
        for (std::size_t i = 0; i < target.rows(); ++i)
            for (std::size_t j = 0; j < target.cols(); ++j)
                require(target.at(i, j).is_zero(), where + ": map escaped the empty hom space");
        return {};
    }
    std::size_t n = target.rows() * target.cols();
    Matrix<F> sys(n, basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Vec<F> v = vec_of(basis[b].matrix());
        for (std::size_t i = 0; i < n; ++i) sys.at(i, b) = v[i];
    }
    auto sol = solve(sys, vec_of(target));
    require(sol.solvable, where + ": map escaped the hom space");
    return sol.solution;
}

}  // namespace homdetail

template <Field F>
struct ExtResult {
    std::size_t dim = 0;
    // cocycle representatives P_k -> N of a basis of Ext^k, rref-normalized
    std::vector<ModuleMap<F>> cocycles;
};

// Ext^k(M, N) from a minimal projective resolution of M: apply Hom(-, N),
// take cohomology at spot k. Cocycle witnesses are chosen by the rref pivot
// convention against the coboundary space.
template <Field F>
ExtResult<F> ext_group(std::size_t k, const ModulePtr<F>& m, const ModulePtr<F>& n,
                       const AlgebraStructure<F>& s) {
    require_same_module_algebra(m, n, "ext");
    ExtResult<F> out;
    if (m->dim() == 0 || n->dim() == 0) return out;
    Resolution<F> res = projective_resolution(s, m, k + 1);
    if (k >= res.terms.size()) {
        if (res.complete) return out;  // resolution ended: higher ext vanish
        fail("ext: resolution shorter than requested degree");
    }
    auto ck = hom_space(res.terms[k], n);
    if (ck.empty()) return out;

    // outgoing differential: precompose with d_k : terms[k+1] -> terms[k]
    Matrix<F> delta_out(0, 0);
    std::vector<ModuleMap<F>> ck1;
    if (k < res.differentials.size()) {
        ck1 = hom_space(res.terms[k + 1], n);
        delta_out = Matrix<F>(ck1.size(), ck.size());
        for (std::size_t j = 0; j < ck.size(); ++j) {
            Matrix<F> comp = ck[j].matrix() * res.differentials[k].matrix();
            Vec<F> coords = homdetail::hom_coords(ck1, comp, "ext");
            for (std::size_t i = 0; i < coords.size(); ++i) delta_out.at(i, j) = coords[i];
        }
    } else {
        require(res.complete, "ext: missing differential");
        delta_out = Matrix<F>(0, ck.size());  // everything is a cocycle
    }
    Matrix<F> cocycles = kernel_basis(delta_out);

    // incoming differential: image of Hom(terms[k-1], N)
    Matrix<F> cobound(ck.size(), 0);
    if (k > 0) {
        auto ckm = hom_space(res.terms[k - 1], n);
        Matrix<F> delta_in(ck.size(), ckm.size());
        for (std::size_t j = 0; j < ckm.size(); ++j) {
            Matrix<F> comp = ckm[j].matrix() * res.differentials[k - 1].matrix();
            Vec<F> coords = homdetail::hom_coords(ck, comp, "ext");
            for (std::size_t i = 0; i < coords.size(); ++i) delta_in.at(i, j) = coords[i];
        }
        cobound = column_space(delta_in);
    }

    // pick cocycle classes: pivots of rref([coboundaries | cocycles]) that
    // fall in the cocycle block give independent representatives
    Matrix<F> glued = hstack(cobound, cocycles);
    auto rc = rref(glued);
    out.dim = 0;
    for (std::size_t p : rc.pivots) {
        if (p < cobound.cols()) continue;
        std::size_t j = p - cobound.cols();
        // cocycle column j is independent from coboundaries and previous picks
        Matrix<F> rep(n->dim(), res.terms[k]->dim());
        for (std::size_t b = 0; b < ck.size(); ++b) {
            const F& c = cocycles.at(b, j);
            if (c.is_zero()) continue;
            rep = rep + ck[b].matrix().scaled(c);
        }
        out.cocycles.emplace_back(res.terms[k], n, std::move(rep));
        ++out.dim;
    }
    return out;
}

template <Field F>
std::size_t ext_dim(std::size_t k, const ModulePtr<F>& m, const ModulePtr<F>& n,
                    const AlgebraStructure<F>& s) {
    return ext_group(k, m, n, s).dim;
}

// Tensor product N (x)_A M for a right module N (left module over the
// opposite algebra) and a left module M: the vector-space tensor modulo the
// balancing relations. Returned as quotient data over the pair index
// (i_N * dim M + i_M).
template <Field F>
struct TensorSpace {
    std::size_t dim = 0;
    Matrix<F> projection;  // dim x (dimN * dimM)
    Matrix<F> section;
};

template <Field F>
TensorSpace<F> tensor_over_algebra(const ModulePtr<F>& n_right, const ModulePtr<F>& m) {
    std::size_t dn = n_right->dim(), dm = m->dim();
    std::size_t amb = dn * dm;
    const auto& a = m->algebra();
    require(n_right->algebra()->structurally_equal(*opposite_algebra(a)),
            "tensor: right operand must live over the opposite algebra");
    std::vector<Vec<F>> rel;
    for (std::size_t g = 0; g < a->dim(); ++g) {
        const Matrix<F>& rn = n_right->action(g);  // n . a  (opposite-side action)
        const Matrix<F>& rm = m->action(g);
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                // (n_i . a) (x) m_j - n_i (x) (a . m_j)
                Vec<F> v(amb, F(0));
                for (std::size_t r = 0; r < dn; ++r) v[r * dm + j] += rn.at(r, i);
                for (std::size_t r = 0; r < dm; ++r) v[i * dm + r] -= rm.at(r, j);
                bool zero = true;
                for (const auto& x : v)
                    if (!x.is_zero()) { zero = false; break; }
                if (!zero) rel.push_back(std::move(v));
            }
    }
    Matrix<F> relm(amb, rel.size());
    for (std::size_t c = 0; c < rel.size(); ++c) relm.set_column(c, rel[c]);
    auto comp = complement_of_column_space(column_space(relm), amb);
    TensorSpace<F> out;
    out.projection = comp.projection;
    out.section = comp.section;
    out.dim = comp.coords.size();
    return out;
}

// Tor_k(N, M) via a projective resolution of M tensored with N
template <Field F>
std::size_t tor_dim(std::size_t k, const ModulePtr<F>& n_right, const ModulePtr<F>& m,
                    const AlgebraStructure<F>& s) {
    if (m->dim() == 0 || n_right->dim() == 0) return 0;
    Resolution<F> res = projective_resolution(s, m, k + 1);
    if (k >= res.terms.size()) {
        require(res.complete, "tor: resolution shorter than requested degree");
        return 0;
    }
    std::size_t dn = n_right->dim();
    std::vector<TensorSpace<F>> spaces;
    for (const auto& t : res.terms) spaces.push_back(tensor_over_algebra(n_right, t));
    auto induced = [&](std::size_t i) {
        // N (x) d_i : spot i+1 -> spot i, block structure kron(I_N, d)
        const Matrix<F>& d = res.differentials[i].matrix();
        std::size_t src = res.terms[i + 1]->dim(), dst = res.terms[i]->dim();
        Matrix<F> big(dn * dst, dn * src);
        for (std::size_t b = 0; b < dn; ++b)
            for (std::size_t r = 0; r < dst; ++r)
                for (std::size_t c = 0; c < src; ++c)
                    big.at(b * dst + r, b * src + c) = d.at(r, c);
        return spaces[i].projection * big * spaces[i + 1].section;
    };
    std::size_t ker;
    if (k == 0) {
        ker = spaces[0].dim;
    } else {
        Matrix<F> dout = induced(k - 1);
        ker = spaces[k].dim - rank_of(dout);
    }
    std::size_t img = 0;
    if (k < res.differentials.size()) {
        img = rank_of(induced(k));
    } else {
        require(res.complete, "tor: missing differential");
    }
    return ker - img;
}

// dimension vector of a module over a quiver-compiled algebra, indexed by the
// vertex idempotents
template <Field F>
std::vector<std::size_t> dimension_vector(const AlgebraStructure<F>& s, const ModulePtr<F>& m) {
    std::vector<std::size_t> out;
    for (const auto& e : s.idempotents) out.push_back(rank_of(m->rho(e)));
    return out;
}

// Euler form of a relation-free quiver: <dM, dN> = sum_v dM_v dN_v -
// sum_arrows dM_src dN_tgt. For hereditary algebras this equals
// dim Hom(M, N) - dim Ext^1(M, N).
template <Field F>
long long euler_form(const QuiverPresentation<F>& q, const std::vector<std::size_t>& dm,
                     const std::vector<std::size_t>& dn) {
    require(dm.size() == q.n_vertices && dn.size() == q.n_vertices, "euler: dimension vector size");
    long long acc = 0;
    for (std::size_t v = 0; v < q.n_vertices; ++v)
        acc += static_cast<long long>(dm[v]) * static_cast<long long>(dn[v]);
    for (const auto& a : q.arrows)
        acc -= static_cast<long long>(dm[a.src]) * static_cast<long long>(dn[a.tgt]);
    return acc;
}

}  // namespace homdec
