#pragma once

#include <cstdlib>
#include <vector>

#include "replace.hpp"

namespace homdec {

// dim Hom(X, Y[n]) in the bounded derived category. X is replaced by a
// degreewise-projective complex resolved down to degree lo(Y) - n - 1; below
// that degree no component or constraint can influence a degree-n map into Y,
// so the truncation is exact. The answer is the dimension of the space of
// chain maps P -> Y[n] modulo null-homotopic ones, one kernel and one rank.
template <Field F>
std::size_t derived_hom(const AlgebraStructure<F>& s, const BoundedComplex<F>& x,
                        const BoundedComplex<F>& y, long n) {
    if (x.is_zero() || y.is_zero()) return 0;
    long depth = y.lo() - n - 1;
    if (depth > x.hi()) return 0;
    auto rep = projective_replacement(s, x, depth);
    const BoundedComplex<F>& p = rep.complex;
    if (p.is_zero()) return 0;
    F sgn = (std::labs(n) % 2 == 1) ? F(-1) : F(1);

    // unknown blocks: components f^i in Hom(P^i, Y^{i+n})
    long flo = std::max(p.lo(), y.lo() - n);
    long fhi = std::min(p.hi(), y.hi() - n);
    if (flo > fhi) return 0;
    std::vector<std::vector<ModuleMap<F>>> fbasis;
    std::vector<std::size_t> foffset;
    std::size_t nf = 0;
    for (long i = flo; i <= fhi; ++i) {
        fbasis.push_back(hom_space(p.term(i), y.term(i + n)));
        foffset.push_back(nf);
        nf += fbasis.back().size();
    }
    if (nf == 0) return 0;
    auto fblock = [&](long i) -> long { return i - flo; };

    // chain conditions: for every degree i, f^{i+1} d_P^i = sgn d_Y^{i+n} f^i,
    // rows indexed by the entries of a map P^i -> Y^{i+n+1}
    std::size_t rows = 0;
    for (long i = flo - 1; i <= fhi; ++i) rows += p.term(i)->dim() * y.term(i + n + 1)->dim();
    Matrix<F> delta(rows, nf);
    std::size_t row0 = 0;
    for (long i = flo - 1; i <= fhi; ++i) {
        std::size_t cell = p.term(i)->dim() * y.term(i + n + 1)->dim();
        if (cell == 0) continue;
        if (i + 1 >= flo && i + 1 <= fhi) {
            const auto& bas = fbasis[static_cast<std::size_t>(fblock(i + 1))];
            Matrix<F> dp = p.diff(i).matrix();
            for (std::size_t b = 0; b < bas.size(); ++b) {
                Vec<F> v = vec_of(bas[b].matrix() * dp);
                std::size_t col = foffset[static_cast<std::size_t>(fblock(i + 1))] + b;
                for (std::size_t r = 0; r < cell; ++r) delta.at(row0 + r, col) = v[r];
            }
        }
        if (i >= flo && i <= fhi) {
            const auto& bas = fbasis[static_cast<std::size_t>(fblock(i))];
            Matrix<F> dy = y.diff(i + n).matrix().scaled(sgn);
            for (std::size_t b = 0; b < bas.size(); ++b) {
                Vec<F> v = vec_of(dy * bas[b].matrix());
                std::size_t col = foffset[static_cast<std::size_t>(fblock(i))] + b;
                for (std::size_t r = 0; r < cell; ++r)
                    delta.at(row0 + r, col) -= v[r];
            }
        }
        row0 += cell;
    }
    std::size_t cocycles = nf - rank_of(delta);

    // null-homotopies: s^i in Hom(P^i, Y^{i+n-1}) bound by
    // f^i = sgn d_Y^{i+n-1} s^i + s^{i+1} d_P^i, measured in raw entries of
    // the f-blocks (rank is basis-independent)
    long slo = std::max(p.lo(), y.lo() - n + 1);
    long shi = std::min(p.hi(), y.hi() - n + 1);
    std::size_t ambient = 0;
    std::vector<std::size_t> aoffset;
    for (long i = flo; i <= fhi; ++i) {
        aoffset.push_back(ambient);
        ambient += p.term(i)->dim() * y.term(i + n)->dim();
    }
    std::size_t ns = 0;
    std::vector<std::vector<ModuleMap<F>>> sbasis;
    std::vector<long> sdeg;
    for (long i = slo; i <= shi; ++i) {
        sbasis.push_back(hom_space(p.term(i), y.term(i + n - 1)));
        sdeg.push_back(i);
        ns += sbasis.back().size();
    }
    std::size_t boundary_rank = 0;
    if (ns > 0 && ambient > 0) {
        Matrix<F> h(ambient, ns);
        std::size_t col = 0;
        for (std::size_t blk = 0; blk < sbasis.size(); ++blk) {
            long i = sdeg[blk];
            for (const auto& sm : sbasis[blk]) {
                // contribution at degree i: sgn d_Y^{i+n-1} s^i
                if (i >= flo && i <= fhi) {
                    Vec<F> v = vec_of(y.diff(i + n - 1).matrix().scaled(sgn) * sm.matrix());
                    std::size_t off = aoffset[static_cast<std::size_t>(i - flo)];
                    for (std::size_t r = 0; r < v.size(); ++r) h.at(off + r, col) = v[r];
                }
                // contribution at degree i-1: s^i d_P^{i-1}
                if (i - 1 >= flo && i - 1 <= fhi) {
                    Vec<F> v = vec_of(sm.matrix() * p.diff(i - 1).matrix());
                    std::size_t off = aoffset[static_cast<std::size_t>(i - 1 - flo)];
                    for (std::size_t r = 0; r < v.size(); ++r) h.at(off + r, col) += v[r];
                }
                ++col;
            }
        }
        boundary_rank = rank_of(h);
    }
    return cocycles - boundary_rank;
}

// stalk convenience: dim Hom(M, N[n]) in the derived category
template <Field F>
std::size_t derived_hom(const AlgebraStructure<F>& s, const ModulePtr<F>& m, const ModulePtr<F>& n,
                        long shift_by) {
    return derived_hom(s, stalk_complex(m), stalk_complex(n), shift_by);
}

}  // namespace homdec
