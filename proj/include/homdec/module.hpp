#pragma once

#include <memory>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "matrix.hpp"

namespace homdec {

// Finite-dimensional left module, given by one action matrix per algebra
// basis element. Construction verifies unit and multiplicativity, so any
// FdModule in flight is a genuine representation.
template <Field F>
class FdModule {
  public:
    FdModule(AlgebraPtr<F> algebra, std::vector<Matrix<F>> action, std::string name = "M")
        : algebra_(std::move(algebra)), action_(std::move(action)), name_(std::move(name)) {
        require(algebra_ != nullptr, "module: missing algebra");
        require(action_.size() == algebra_->dim(), "module: one action matrix per basis element");
        dim_ = action_.empty() ? 0 : action_[0].rows();
        for (const auto& m : action_)
            require(m.rows() == dim_ && m.cols() == dim_, "module: action matrices must be square of equal size");
        verify_axioms();
    }

    const AlgebraPtr<F>& algebra() const { return algebra_; }
    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void rename(std::string n) { name_ = std::move(n); }

    const Matrix<F>& action(std::size_t i) const { return action_[i]; }

    // action of a general algebra element
    Matrix<F> rho(const Vec<F>& a) const {
        require(a.size() == algebra_->dim(), "module: element size mismatch");
        Matrix<F> out(dim_, dim_);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t r = 0; r < dim_; ++r)
                for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) += a[i] * action_[i].at(r, c);
        }
        return out;
    }

    Vec<F> act(const Vec<F>& a, const Vec<F>& v) const { return rho(a).apply(v); }

    bool same_presentation(const FdModule& o) const {
        if (dim_ != o.dim_ || action_.size() != o.action_.size()) return false;
        for (std::size_t i = 0; i < action_.size(); ++i)
            if (!(action_[i] == o.action_[i])) return false;
        return true;
    }

  private:
    void verify_axioms() const {
        Matrix<F> u = rho(algebra_->unit());
        require(u == Matrix<F>::identity(dim_), "module: unit does not act as identity on " + name_);
        std::size_t d = algebra_->dim();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Matrix<F> lhs = action_[i] * action_[j];
                Matrix<F> rhs(dim_, dim_);
                for (std::size_t k = 0; k < d; ++k) {
                    const F& c = algebra_->sc(i, j, k);
                    if (c.is_zero()) continue;
                    for (std::size_t r = 0; r < dim_; ++r)
                        for (std::size_t cc = 0; cc < dim_; ++cc)
                            rhs.at(r, cc) += c * action_[k].at(r, cc);
                }
                require(lhs == rhs, "module: action not multiplicative at (" +
                                        algebra_->basis_name(i) + "," + algebra_->basis_name(j) +
                                        ") on " + name_);
            }
    }

    AlgebraPtr<F> algebra_;
    std::size_t dim_ = 0;
    std::vector<Matrix<F>> action_;
    std::string name_;
};

template <Field F>
using ModulePtr = std::shared_ptr<const FdModule<F>>;

template <Field F>
ModulePtr<F> make_module(AlgebraPtr<F> a, std::vector<Matrix<F>> action, std::string name = "M") {
    return std::make_shared<FdModule<F>>(std::move(a), std::move(action), std::move(name));
}

template <Field F>
void require_same_module_algebra(const ModulePtr<F>& m, const ModulePtr<F>& n,
                                 const std::string& where) {
    require_same_algebra(m->algebra(), n->algebra(), where);
}

template <Field F>
ModulePtr<F> zero_module(const AlgebraPtr<F>& a) {
    std::vector<Matrix<F>> action(a->dim(), Matrix<F>(0, 0));
    return make_module<F>(a, std::move(action), "0");
}

// the algebra as a left module over itself
template <Field F>
ModulePtr<F> regular_module(const AlgebraPtr<F>& a) {
    std::vector<Matrix<F>> action;
    action.reserve(a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) action.push_back(a->left_mult(a->basis_vec(i)));
    return make_module<F>(a, std::move(action), a->name());
}

// A module homomorphism src -> dst, stored as a dst.dim x src.dim matrix.
// Construction verifies the intertwining relations.
template <Field F>
class ModuleMap {
  public:
    ModuleMap(ModulePtr<F> src, ModulePtr<F> dst, Matrix<F> m)
        : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
        require(src_ && dst_, "module map: missing endpoint");
        require_same_module_algebra(src_, dst_, "module map");
        require(m_.rows() == dst_->dim() && m_.cols() == src_->dim(),
                "module map: matrix shape mismatch");
        for (std::size_t i = 0; i < src_->algebra()->dim(); ++i)
            require(m_ * src_->action(i) == dst_->action(i) * m_,
                    "module map: not equivariant at " + src_->algebra()->basis_name(i));
    }

    static ModuleMap zero(ModulePtr<F> src, ModulePtr<F> dst) {
        Matrix<F> z(dst->dim(), src->dim());
        return ModuleMap(std::move(src), std::move(dst), std::move(z));
    }

    static ModuleMap identity(ModulePtr<F> m) {
        Matrix<F> id = Matrix<F>::identity(m->dim());
        return ModuleMap(m, m, std::move(id));
    }

    const ModulePtr<F>& src() const { return src_; }
    const ModulePtr<F>& dst() const { return dst_; }
    const Matrix<F>& matrix() const { return m_; }

    Vec<F> apply(const Vec<F>& v) const { return m_.apply(v); }

    bool is_zero_map() const {
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = 0; j < m_.cols(); ++j)
                if (!m_.at(i, j).is_zero()) return false;
        return true;
    }
    bool is_injective() const { return rank_of(m_) == src_->dim(); }
    bool is_surjective() const { return rank_of(m_) == dst_->dim(); }
    bool is_isomorphism() const { return is_injective() && is_surjective(); }

    ModuleMap then(const ModuleMap& g) const {  // this first, then g
        require(g.src_->same_presentation(*dst_), "module map: composition endpoint mismatch");
        return ModuleMap(src_, g.dst_, g.m_ * m_);
    }

    ModuleMap operator+(const ModuleMap& o) const {
        require(src_->same_presentation(*o.src_) && dst_->same_presentation(*o.dst_),
                "module map: sum endpoint mismatch");
        return ModuleMap(src_, dst_, m_ + o.m_);
    }
    ModuleMap operator-() const { return ModuleMap(src_, dst_, m_.scaled(F(-1))); }
    ModuleMap scaled(const F& c) const { return ModuleMap(src_, dst_, m_.scaled(c)); }

  private:
    ModulePtr<F> src_, dst_;
    Matrix<F> m_;
};

// Subquotient helpers. Each returns the induced module together with the
// structural map that exhibits it.

template <Field F>
struct SubmoduleData {
    ModulePtr<F> module;      // the submodule with its induced action
    Matrix<F> inclusion;      // ambient.dim x module.dim
};

// induced action on a subspace given by basis columns; the span must be
// action-stable or this throws
template <Field F>
SubmoduleData<F> submodule_from_basis(const ModulePtr<F>& m, const Matrix<F>& basis,
                                      std::string name = "sub") {
    require(basis.rows() == m->dim(), "submodule: basis lives in the wrong space");
    require(rank_of(basis) == basis.cols(), "submodule: basis columns are dependent");
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) {
        auto sol = solve_matrix(basis, m->action(i) * basis);
        require(sol.has_value(), "submodule: span is not action-stable");
        action.push_back(*sol);
    }
    SubmoduleData<F> out{make_module<F>(m->algebra(), std::move(action), std::move(name)), basis};
    return out;
}

// smallest submodule containing the given vectors
template <Field F>
SubmoduleData<F> submodule_generated(const ModulePtr<F>& m, const std::vector<Vec<F>>& gens,
                                     std::string name = "gen") {
    Matrix<F> cur(m->dim(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        require(gens[j].size() == m->dim(), "submodule: generator size mismatch");
        cur.set_column(j, gens[j]);
    }
    cur = column_space(cur);
    for (;;) {
        Matrix<F> ext = cur;
        for (std::size_t i = 0; i < m->algebra()->dim(); ++i) ext = hstack(ext, m->action(i) * cur);
        Matrix<F> next = column_space(ext);
        if (next.cols() == cur.cols()) break;
        cur = next;
    }
    return submodule_from_basis(m, cur, std::move(name));
}

template <Field F>
struct QuotientData {
    ModulePtr<F> module;
    Matrix<F> projection;  // module.dim x ambient.dim
    Matrix<F> section;     // ambient.dim x module.dim, projection * section = I
};

// quotient by an action-stable subspace
template <Field F>
QuotientData<F> quotient_by_basis(const ModulePtr<F>& m, const Matrix<F>& basis,
                                  std::string name = "quot") {
    require(basis.rows() == m->dim(), "quotient: basis lives in the wrong space");
    auto comp = complement_of_column_space(basis, m->dim());
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) {
        // well-definedness needs stability; verify rather than assume
        Matrix<F> moved = m->action(i) * basis;
        auto sol = solve_matrix(basis, moved);
        require(sol.has_value(), "quotient: subspace is not action-stable");
        action.push_back(comp.projection * m->action(i) * comp.section);
    }
    QuotientData<F> out{make_module<F>(m->algebra(), std::move(action), std::move(name)),
                        comp.projection, comp.section};
    return out;
}

template <Field F>
struct KernelData {
    ModulePtr<F> module;
    ModuleMap<F> inclusion;
};

template <Field F>
KernelData<F> kernel_of(const ModuleMap<F>& f, std::string name = "ker") {
    Matrix<F> k = kernel_basis(f.matrix());
    auto sub = submodule_from_basis(f.src(), k, std::move(name));
    return {sub.module, ModuleMap<F>(sub.module, f.src(), sub.inclusion)};
}

template <Field F>
struct ImageData {
    ModulePtr<F> module;
    ModuleMap<F> inclusion;      // image -> dst
    ModuleMap<F> corestriction;  // src -> image
};

template <Field F>
ImageData<F> image_of(const ModuleMap<F>& f, std::string name = "im") {
    Matrix<F> b = column_space(f.matrix());
    auto sub = submodule_from_basis(f.dst(), b, std::move(name));
    auto coords = solve_matrix(b, f.matrix());
    require(coords.has_value(), "image: internal coordinate failure");
    return {sub.module, ModuleMap<F>(sub.module, f.dst(), sub.inclusion),
            ModuleMap<F>(f.src(), sub.module, *coords)};
}

template <Field F>
struct CokernelData {
    ModulePtr<F> module;
    ModuleMap<F> projection;  // dst -> coker
};

template <Field F>
CokernelData<F> cokernel_of(const ModuleMap<F>& f, std::string name = "coker") {
    Matrix<F> b = column_space(f.matrix());
    auto q = quotient_by_basis(f.dst(), b, std::move(name));
    return {q.module, ModuleMap<F>(f.dst(), q.module, q.projection)};
}

// Direct sums.
template <Field F>
struct DirectSumData {
    ModulePtr<F> module;
    std::vector<ModuleMap<F>> injections;
    std::vector<ModuleMap<F>> projections;
};

template <Field F>
DirectSumData<F> direct_sum(const AlgebraPtr<F>& a, const std::vector<ModulePtr<F>>& parts,
                            std::string name = "") {
    std::size_t total = 0;
    for (const auto& p : parts) {
        require_same_algebra(a, p->algebra(), "direct sum");
        total += p->dim();
    }
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        Matrix<F> blk(total, total);
        std::size_t off = 0;
        for (const auto& p : parts) {
            for (std::size_t r = 0; r < p->dim(); ++r)
                for (std::size_t c = 0; c < p->dim(); ++c)
                    blk.at(off + r, off + c) = p->action(i).at(r, c);
            off += p->dim();
        }
        action.push_back(std::move(blk));
    }
    if (name.empty()) {
        for (const auto& p : parts) {
            if (!name.empty()) name += "+";
            name += p->name();
        }
        if (name.empty()) name = "0";
    }
    auto sum = make_module<F>(a, std::move(action), std::move(name));
    DirectSumData<F> out;
    out.module = sum;
    std::size_t off = 0;
    for (const auto& p : parts) {
        Matrix<F> in(total, p->dim());
        Matrix<F> pr(p->dim(), total);
        for (std::size_t r = 0; r < p->dim(); ++r) {
            in.at(off + r, r) = F(1);
            pr.at(r, off + r) = F(1);
        }
        out.injections.emplace_back(p, sum, std::move(in));
        out.projections.emplace_back(sum, p, std::move(pr));
        off += p->dim();
    }
    return out;
}

// Right modules are handled as left modules over the opposite algebra; the
// linear dual swaps sides. dual_of(M over A) lives over A^op with transposed
// action, and applying it twice round-trips.
template <Field F>
ModulePtr<F> dual_module(const ModulePtr<F>& m, const AlgebraPtr<F>& opposite) {
    require(opposite->dim() == m->algebra()->dim(), "dual: opposite algebra dimension mismatch");
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) action.push_back(m->action(i).transposed());
    return make_module<F>(opposite, std::move(action), m->name() + "*");
}

// Pull a module back along an algebra map: B-module becomes an A-module via
// a |-> rho(phi(a)).
template <Field F>
ModulePtr<F> restrict_along(const AlgebraHom<F>& phi, const ModulePtr<F>& m,
                            std::string name = "") {
    require(m->algebra()->structurally_equal(*phi.dst()), "restriction: module not over the target");
    std::vector<Matrix<F>> action;
    for (std::size_t i = 0; i < phi.src()->dim(); ++i)
        action.push_back(m->rho(phi.apply(phi.src()->basis_vec(i))));
    return make_module<F>(phi.src(), std::move(action),
                          name.empty() ? m->name() + "|" : std::move(name));
}

// Basis of the space of module maps m -> n, via the linear system
// rho_n(e) X = X rho_m(e) for every basis element e.
template <Field F>
std::vector<ModuleMap<F>> hom_space(const ModulePtr<F>& m, const ModulePtr<F>& n) {
    require_same_module_algebra(m, n, "hom space");
    std::size_t dm = m->dim(), dn = n->dim();
    if (dm == 0 || dn == 0) return {};
    std::size_t ng = m->algebra()->dim();
    Matrix<F> sys(ng * dm * dn, dm * dn);
    Matrix<F> idn = Matrix<F>::identity(dn);
    for (std::size_t g = 0; g < ng; ++g) {
        // vec(rho_n(e) X) = kron(I_dm, rho_n(e)) vec(X)
        // vec(X rho_m(e)) = kron(rho_m(e)^T, I_dn) vec(X)
        Matrix<F> lhs = kron(Matrix<F>::identity(dm), n->action(g));
        Matrix<F> rhs = kron(m->action(g).transposed(), idn);
        for (std::size_t r = 0; r < dm * dn; ++r)
            for (std::size_t c = 0; c < dm * dn; ++c)
                sys.at(g * dm * dn + r, c) = lhs.at(r, c) - rhs.at(r, c);
    }
    Matrix<F> k = kernel_basis(sys);
    std::vector<ModuleMap<F>> out;
    out.reserve(k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j)
        out.emplace_back(m, n, unvec(k.column_vec(j), dn, dm));
    return out;
}

template <Field F>
std::size_t hom_dim(const ModulePtr<F>& m, const ModulePtr<F>& n) {
    return hom_space(m, n).size();
}

}  // namespace homdec
