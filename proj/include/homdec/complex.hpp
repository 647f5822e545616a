#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "module.hpp"

namespace homdec {

// Bounded cochain complex. terms_[i] sits in degree lo_ + i, the stored
// differential diffs_[i] maps terms_[i] -> terms_[i+1]. Constructed complexes
// are trimmed: the support window starts and ends with a nonzero term, and a
// complex of zero modules has an empty window.
template <Field F>
class BoundedComplex {
  public:
    BoundedComplex() = default;

    BoundedComplex(AlgebraPtr<F> algebra, long lo, std::vector<ModulePtr<F>> terms,
                   std::vector<ModuleMap<F>> diffs)
        : algebra_(std::move(algebra)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        require(algebra_ != nullptr, "complex: missing algebra");
        if (!terms_.empty())
            require(diffs_.size() + 1 == terms_.size(), "complex: one differential per adjacent pair");
        else
            require(diffs_.empty(), "complex: differentials without terms");
        for (const auto& t : terms_) {
            require(t != nullptr, "complex: missing term");
            require(t->algebra()->structurally_equal(*algebra_), "complex: term over a different algebra");
        }
        for (std::size_t i = 0; i < diffs_.size(); ++i) {
            require(diffs_[i].src() == terms_[i] && diffs_[i].dst() == terms_[i + 1],
                    "complex: differential endpoints off the grid");
        }
        for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
            require(diffs_[i].then(diffs_[i + 1]).is_zero_map(), "complex: d after d is not zero");
        trim();
        zero_ = zero_module(algebra_);
    }

    const AlgebraPtr<F>& algebra() const { return algebra_; }
    bool is_zero() const { return terms_.empty(); }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(terms_.size()) - 1; }

    const ModulePtr<F>& term(long n) const {
        if (n < lo_ || n > hi()) return zero_;
        return terms_[static_cast<std::size_t>(n - lo_)];
    }

    ModuleMap<F> diff(long n) const {
        if (n >= lo_ && n + 1 <= hi()) return diffs_[static_cast<std::size_t>(n - lo_)];
        return ModuleMap<F>::zero(term(n), term(n + 1));
    }

    bool equal_to(const BoundedComplex& o) const {
        if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
        if (lo_ != o.lo_ || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!terms_[i]->same_presentation(*o.terms_[i])) return false;
        for (std::size_t i = 0; i < diffs_.size(); ++i)
            if (!(diffs_[i].matrix() == o.diffs_[i].matrix())) return false;
        return true;
    }

  private:
    void trim() {
        std::size_t first = 0;
        while (first < terms_.size() && terms_[first]->dim() == 0) ++first;
        if (first == terms_.size()) {
            terms_.clear();
            diffs_.clear();
            lo_ = 0;
            return;
        }
        std::size_t last = terms_.size();
        while (last > first && terms_[last - 1]->dim() == 0) --last;
        lo_ += static_cast<long>(first);
        terms_ = std::vector<ModulePtr<F>>(terms_.begin() + first, terms_.begin() + last);
        if (terms_.size() <= 1)
            diffs_.clear();
        else
            diffs_ = std::vector<ModuleMap<F>>(diffs_.begin() + first, diffs_.begin() + (last - 1));
    }

    AlgebraPtr<F> algebra_;
    long lo_ = 0;
    std::vector<ModulePtr<F>> terms_;
    std::vector<ModuleMap<F>> diffs_;
    ModulePtr<F> zero_;
};

template <Field F>
BoundedComplex<F> stalk_complex(const ModulePtr<F>& m, long degree = 0) {
    return BoundedComplex<F>(m->algebra(), degree, {m}, {});
}

template <Field F>
BoundedComplex<F> zero_complex(const AlgebraPtr<F>& a) {
    return BoundedComplex<F>(a, 0, {}, {});
}

// (X[n])^i = X^{n+i}, differentials picking up the sign (-1)^n
template <Field F>
BoundedComplex<F> shift(const BoundedComplex<F>& x, long n) {
    if (x.is_zero()) return x;
    std::vector<ModulePtr<F>> terms;
    std::vector<ModuleMap<F>> diffs;
    for (long i = x.lo(); i <= x.hi(); ++i) terms.push_back(x.term(i));
    bool flip = (std::labs(n) % 2) == 1;
    for (long i = x.lo(); i < x.hi(); ++i) {
        ModuleMap<F> d = x.diff(i);
        diffs.push_back(flip ? d.scaled(F(-1)) : d);
    }
    return BoundedComplex<F>(x.algebra(), x.lo() - n, std::move(terms), std::move(diffs));
}

// degreewise components of a chain map; unstored degrees are zero
template <Field F>
class ChainMap {
  public:
    ChainMap(BoundedComplex<F> src, BoundedComplex<F> dst, long lo, std::vector<ModuleMap<F>> comps)
        : src_(std::move(src)), dst_(std::move(dst)), lo_(lo), comps_(std::move(comps)) {
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            long n = lo_ + static_cast<long>(i);
            require(comps_[i].src()->same_presentation(*src_.term(n)) &&
                        comps_[i].dst()->same_presentation(*dst_.term(n)),
                    "chain map: component endpoints off the grid");
        }
        long wlo = std::min(src_.lo(), dst_.lo()) - 1;
        long whi = std::max(src_.hi(), dst_.hi()) + 1;
        for (long n = wlo; n <= whi; ++n) {
            Matrix<F> walk_then_map = component(n + 1).matrix() * src_.diff(n).matrix();
            Matrix<F> map_then_walk = dst_.diff(n).matrix() * component(n).matrix();
            require(walk_then_map == map_then_walk, "chain map: squares do not commute");
        }
    }

    const BoundedComplex<F>& src() const { return src_; }
    const BoundedComplex<F>& dst() const { return dst_; }

    ModuleMap<F> component(long n) const {
        long idx = n - lo_;
        if (idx < 0 || idx >= static_cast<long>(comps_.size()))
            return ModuleMap<F>::zero(src_.term(n), dst_.term(n));
        return comps_[static_cast<std::size_t>(idx)];
    }

    bool is_zero_map() const {
        for (const auto& c : comps_)
            if (!c.is_zero_map()) return false;
        return true;
    }

  private:
    BoundedComplex<F> src_;
    BoundedComplex<F> dst_;
    long lo_ = 0;
    std::vector<ModuleMap<F>> comps_;
};

template <Field F>
ChainMap<F> zero_chain_map(const BoundedComplex<F>& x, const BoundedComplex<F>& y) {
    return ChainMap<F>(x, y, 0, {});
}

template <Field F>
ChainMap<F> identity_chain_map(const BoundedComplex<F>& x) {
    std::vector<ModuleMap<F>> comps;
    for (long n = x.lo(); n <= x.hi(); ++n) comps.push_back(ModuleMap<F>::identity(x.term(n)));
    return ChainMap<F>(x, x, x.lo(), std::move(comps));
}

// chain map between stalk complexes in a common degree
template <Field F>
ChainMap<F> stalk_chain_map(const ModuleMap<F>& f, long degree = 0) {
    BoundedComplex<F> x = stalk_complex(f.src(), degree);
    BoundedComplex<F> y = stalk_complex(f.dst(), degree);
    return ChainMap<F>(x, y, degree, {f});
}

// H^n as a module together with access to cycles and chosen representatives
template <Field F>
struct CohomologySpot {
    ModulePtr<F> module;     // ker d^n / im d^{n-1} with the induced action
    ModuleMap<F> cycles_in;  // Z^n -> X^n
    ModuleMap<F> onto_h;     // Z^n -> H^n, surjective
    Matrix<F> rep;           // X^n dim x H dim, linear section through cycle representatives
};

template <Field F>
CohomologySpot<F> cohomology_at(const BoundedComplex<F>& x, long n) {
    auto z = kernel_of(x.diff(n), "Z");
    Matrix<F> prev = x.diff(n - 1).matrix();
    auto bc = solve_matrix(z.inclusion.matrix(), prev);
    require(bc.has_value(), "cohomology: boundaries escaped the cycles");
    auto q = quotient_by_basis(z.module, column_space(*bc), "H");
    CohomologySpot<F> out{q.module, z.inclusion, ModuleMap<F>(z.module, q.module, q.projection),
                          z.inclusion.matrix() * q.section};
    return out;
}

template <Field F>
std::size_t cohomology_dim(const BoundedComplex<F>& x, long n) {
    std::size_t cyc = x.term(n)->dim() - rank_of(x.diff(n).matrix());
    return cyc - rank_of(x.diff(n - 1).matrix());
}

template <Field F>
bool is_exact(const BoundedComplex<F>& x) {
    for (long n = x.lo(); n <= x.hi(); ++n)
        if (cohomology_dim(x, n) != 0) return false;
    return true;
}

// map induced on cohomology in degree n
template <Field F>
ModuleMap<F> induced_cohomology_map(const ChainMap<F>& f, long n) {
    auto hx = cohomology_at(f.src(), n);
    auto hy = cohomology_at(f.dst(), n);
    Matrix<F> m(hy.module->dim(), hx.module->dim());
    Matrix<F> fn = f.component(n).matrix();
    for (std::size_t j = 0; j < hx.module->dim(); ++j) {
        Vec<F> image = fn.apply(hx.rep.column_vec(j));
        auto coords = solve(hy.cycles_in.matrix(), image);
        require(coords.solvable, "cohomology: image of a cycle is not a cycle");
        Vec<F> cls = hy.onto_h.matrix().apply(coords.solution);
        for (std::size_t i = 0; i < cls.size(); ++i) m.at(i, j) = cls[i];
    }
    return ModuleMap<F>(hx.module, hy.module, std::move(m));
}

// Mapping cone of f: A -> B. In degree i the term is B^i (+) A^{i+1}, the
// differential is the block matrix [[d_B, f], [0, -d_A]]. The triangle
// carries the canonical inclusion and projection.
template <Field F>
struct Triangle {
    BoundedComplex<F> a, b, c;
    ChainMap<F> f;           // a -> b
    ChainMap<F> into_cone;   // b -> c
    ChainMap<F> onto_shift;  // c -> a[1]
};

template <Field F>
Triangle<F> cone_triangle(const ChainMap<F>& f) {
    const BoundedComplex<F>& a = f.src();
    const BoundedComplex<F>& b = f.dst();
    const AlgebraPtr<F>& alg = a.algebra();
    require(alg->structurally_equal(*b.algebra()), "cone: complexes over different algebras");

    long wlo = std::min(b.lo(), a.lo() - 1);
    long whi = std::max(b.hi(), a.hi() - 1);
    if (a.is_zero() && b.is_zero()) {
        BoundedComplex<F> c = zero_complex(alg);
        return {a, b, c, f, zero_chain_map(b, c), zero_chain_map(c, shift(a, 1))};
    }

    std::vector<DirectSumData<F>> sums;
    std::vector<ModulePtr<F>> terms;
    for (long i = wlo; i <= whi; ++i) {
        sums.push_back(direct_sum(alg, {b.term(i), a.term(i + 1)}, "cone"));
        terms.push_back(sums.back().module);
    }
    std::vector<ModuleMap<F>> diffs;
    for (long i = wlo; i < whi; ++i) {
        const auto& cur = sums[static_cast<std::size_t>(i - wlo)];
        const auto& nxt = sums[static_cast<std::size_t>(i - wlo + 1)];
        ModuleMap<F> top = cur.projections[0].then(b.diff(i)).then(nxt.injections[0]) +
                           cur.projections[1].then(f.component(i + 1)).then(nxt.injections[0]);
        ModuleMap<F> bot = cur.projections[1].then(a.diff(i + 1).scaled(F(-1))).then(nxt.injections[1]);
        diffs.push_back(top + bot);
    }
    BoundedComplex<F> c(alg, wlo, terms, diffs);

    std::vector<ModuleMap<F>> inc;
    for (long i = b.lo(); i <= b.hi(); ++i) {
        const auto& sum = sums[static_cast<std::size_t>(i - wlo)];
        inc.push_back(ModuleMap<F>(b.term(i), c.term(i), sum.injections[0].matrix()));
    }
    ChainMap<F> into(b, c, b.lo(), std::move(inc));

    BoundedComplex<F> a1 = shift(a, 1);
    std::vector<ModuleMap<F>> prj;
    for (long i = a1.lo(); i <= a1.hi(); ++i) {
        const auto& sum = sums[static_cast<std::size_t>(i - wlo)];
        prj.push_back(ModuleMap<F>(c.term(i), a1.term(i), sum.projections[1].matrix()));
    }
    ChainMap<F> onto(c, a1, a1.lo(), std::move(prj));

    return {a, b, c, f, into, onto};
}

// the triangle invariant: the third object literally is the cone, with the
// canonical maps
template <Field F>
bool verify_triangle(const Triangle<F>& t) {
    Triangle<F> rebuilt = cone_triangle(t.f);
    if (!rebuilt.c.equal_to(t.c)) return false;
    long wlo = std::min(t.b.lo(), t.c.lo());
    long whi = std::max(t.b.hi(), t.c.hi());
    for (long n = wlo; n <= whi; ++n) {
        if (!(t.into_cone.component(n).matrix() == rebuilt.into_cone.component(n).matrix()))
            return false;
        if (!(t.onto_shift.component(n).matrix() == rebuilt.onto_shift.component(n).matrix()))
            return false;
    }
    return true;
}

// exactness of the cohomology long exact sequence through the whole window,
// checked with induced maps and rank arithmetic
template <Field F>
bool triangle_les_exact(const Triangle<F>& t) {
    BoundedComplex<F> a1 = shift(t.a, 1);
    long wlo = std::min({t.a.lo(), t.b.lo(), t.c.lo()}) - 1;
    long whi = std::max({t.a.hi(), t.b.hi(), t.c.hi()}) + 1;
    long alt = 0;
    for (long n = wlo; n <= whi; ++n) {
        std::size_t da = cohomology_dim(t.a, n);
        std::size_t db = cohomology_dim(t.b, n);
        std::size_t dc = cohomology_dim(t.c, n);
        long sign = ((n - wlo) % 2 == 0) ? 1 : -1;
        alt += sign * (static_cast<long>(da) - static_cast<long>(db) + static_cast<long>(dc));

        ModuleMap<F> hf = induced_cohomology_map(t.f, n);
        ModuleMap<F> hg = induced_cohomology_map(t.into_cone, n);
        ModuleMap<F> hh = induced_cohomology_map(t.onto_shift, n);
        // H^n(c) -> H^{n+1}(a) is H^n of the projection into a[1]
        std::size_t rf = rank_of(hf.matrix());
        std::size_t rg = rank_of(hg.matrix());
        std::size_t rh = rank_of(hh.matrix());
        if (!hf.then(hg).is_zero_map()) return false;
        if (!hg.then(hh).is_zero_map()) return false;
        if (rf + rg != db) return false;  // exact at H^n(b)
        if (rg + rh != dc) return false;  // exact at H^n(c)
        // exact at H^{n+1}(a): the connecting map is H^n of the projection,
        // composed against H^{n+1} of f (identical presentations line up)
        std::size_t da1 = cohomology_dim(a1, n);
        ModuleMap<F> hf1 = induced_cohomology_map(t.f, n + 1);
        if (!hh.then(hf1).is_zero_map()) return false;
        if (rh + rank_of(hf1.matrix()) != da1) return false;
    }
    return alt == 0;
}

struct MembershipReport {
    bool yes = true;
    std::vector<long> failing;  // degrees whose cohomology fails the predicate
};

// cohomology-wise membership: every nonzero H^n must satisfy the predicate
template <Field F, class Pred>
MembershipReport membership_in_dbx(const BoundedComplex<F>& x, Pred&& pred) {
    MembershipReport out;
    for (long n = x.lo(); n <= x.hi(); ++n) {
        auto h = cohomology_at(x, n);
        if (h.module->dim() == 0) continue;
        if (!pred(h.module)) {
            out.yes = false;
            out.failing.push_back(n);
        }
    }
    return out;
}

}  // namespace homdec
