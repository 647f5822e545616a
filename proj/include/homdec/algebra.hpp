#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace homdec {

// Finite-dimensional associative unital algebra given by structure constants.
// Invariants checked at construction: associativity on all basis triples and
// two-sided unitality of the given unit vector.
template <Field F>
class AlgebraPresentation {
public:
    AlgebraPresentation(std::string name, std::size_t dim, std::vector<F> structure,
                        Vec<F> unit, std::vector<std::string> basis_names = {})
        : name_(std::move(name)), dim_(dim), sc_(std::move(structure)), unit_(std::move(unit)),
          basis_names_(std::move(basis_names)) {
        require(dim_ > 0, "algebra: dimension must be positive");
        require(sc_.size() == dim_ * dim_ * dim_, "algebra: structure constant count mismatch");
        require(unit_.size() == dim_, "algebra: unit coordinate count mismatch");
        if (basis_names_.empty()) {
            for (std::size_t i = 0; i < dim_; ++i)
                basis_names_.push_back("b" + std::to_string(i));
        }
        require(basis_names_.size() == dim_, "algebra: basis name count mismatch");
        verify_axioms();
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const std::string& basis_name(std::size_t i) const { return basis_names_[i]; }
    const Vec<F>& unit() const { return unit_; }

    const F& sc(std::size_t i, std::size_t j, std::size_t k) const {
        return sc_[(i * dim_ + j) * dim_ + k];
    }

    Vec<F> basis_vec(std::size_t i) const {
        Vec<F> v(dim_, F(0));
        v[i] = F(1);
        return v;
    }

    Vec<F> mult(const Vec<F>& x, const Vec<F>& y) const {
        require(x.size() == dim_ && y.size() == dim_, "algebra: mult arity");
        Vec<F> r(dim_, F(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                F c = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!sc(i, j, k).is_zero()) r[k] += c * sc(i, j, k);
            }
        }
        return r;
    }

    // Matrix of left multiplication by x on the regular module.
    Matrix<F> left_mult(const Vec<F>& x) const {
        Matrix<F> m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<F> col = mult(x, basis_vec(j));
            for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
        }
        return m;
    }

    // Matrix of right multiplication by x.
    Matrix<F> right_mult(const Vec<F>& x) const {
        Matrix<F> m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<F> col = mult(basis_vec(j), x);
            for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
        }
        return m;
    }

    bool structurally_equal(const AlgebraPresentation& o) const {
        if (dim_ != o.dim_) return false;
        for (std::size_t t = 0; t < sc_.size(); ++t)
            if (!(sc_[t] == o.sc_[t])) return false;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!(unit_[i] == o.unit_[i])) return false;
        return true;
    }

    // Subspace of the radical when known by construction (quiver compilation
    // stores arrow-ideal normal forms here); columns form a basis.
    const std::optional<Matrix<F>>& known_radical() const { return known_radical_; }
    void set_known_radical(Matrix<F> b) { known_radical_ = std::move(b); }

    // Complete set of primitive orthogonal idempotents when known by
    // construction (vertex idempotents for quiver algebras).
    const std::optional<std::vector<Vec<F>>>& known_idempotents() const {
        return known_idempotents_;
    }
    void set_known_idempotents(std::vector<Vec<F>> e) { known_idempotents_ = std::move(e); }

private:
    void verify_axioms() const {
        for (std::size_t i = 0; i < dim_; ++i) {
            Vec<F> bi = basis_vec(i);
            Vec<F> lu = mult(unit_, bi);
            Vec<F> ru = mult(bi, unit_);
            for (std::size_t k = 0; k < dim_; ++k) {
                require(lu[k] == bi[k], "algebra: unit fails on the left at " + basis_names_[i]);
                require(ru[k] == bi[k], "algebra: unit fails on the right at " + basis_names_[i]);
            }
        }
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                Vec<F> ij = mult(basis_vec(i), basis_vec(j));
                for (std::size_t k = 0; k < dim_; ++k) {
                    Vec<F> a = mult(ij, basis_vec(k));
                    Vec<F> b = mult(basis_vec(i), mult(basis_vec(j), basis_vec(k)));
                    for (std::size_t t = 0; t < dim_; ++t)
                        require(a[t] == b[t], "algebra: associativity fails at triple (" +
                                                  basis_names_[i] + "," + basis_names_[j] + "," +
                                                  basis_names_[k] + ")");
                }
            }
    }

    std::string name_;
    std::size_t dim_;
    std::vector<F> sc_;
    Vec<F> unit_;
    std::vector<std::string> basis_names_;
    std::optional<Matrix<F>> known_radical_;
    std::optional<std::vector<Vec<F>>> known_idempotents_;
};

template <Field F>
using AlgebraPtr = std::shared_ptr<const AlgebraPresentation<F>>;

template <Field F>
void require_same_algebra(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b,
                          const std::string& where) {
    require(a && b, where + ": missing algebra");
    if (a == b) return;
    require(a->structurally_equal(*b), where + ": operands live over different algebras");
}

// Opposite algebra: same underlying space, reversed multiplication. Radical
// and primitive idempotents transfer verbatim.
template <Field F>
AlgebraPtr<F> opposite_algebra(const AlgebraPtr<F>& a) {
    std::size_t d = a->dim();
    std::vector<F> sc(d * d * d, F(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                sc[(i * d + j) * d + k] = a->sc(j, i, k);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back(a->basis_name(i));
    auto op = std::make_shared<AlgebraPresentation<F>>(a->name() + "^op", d, std::move(sc),
                                                       a->unit(), std::move(names));
    if (a->known_radical()) op->set_known_radical(*a->known_radical());
    if (a->known_idempotents()) op->set_known_idempotents(*a->known_idempotents());
    return op;
}

// Unital algebra homomorphism, verified at construction.
template <Field F>
class AlgebraHom {
public:
    AlgebraHom(AlgebraPtr<F> src, AlgebraPtr<F> dst, Matrix<F> m)
        : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
        require(m_.rows() == dst_->dim() && m_.cols() == src_->dim(),
                "algebra hom: matrix shape mismatch");
        Vec<F> one = m_.apply(src_->unit());
        for (std::size_t k = 0; k < dst_->dim(); ++k)
            require(one[k] == dst_->unit()[k], "algebra hom: unit not preserved");
        for (std::size_t i = 0; i < src_->dim(); ++i)
            for (std::size_t j = 0; j < src_->dim(); ++j) {
                Vec<F> lhs = m_.apply(src_->mult(src_->basis_vec(i), src_->basis_vec(j)));
                Vec<F> rhs = dst_->mult(m_.apply(src_->basis_vec(i)), m_.apply(src_->basis_vec(j)));
                for (std::size_t k = 0; k < dst_->dim(); ++k)
                    require(lhs[k] == rhs[k], "algebra hom: multiplicativity fails at (" +
                                                  src_->basis_name(i) + "," + src_->basis_name(j) +
                                                  ")");
            }
    }

    const AlgebraPtr<F>& src() const { return src_; }
    const AlgebraPtr<F>& dst() const { return dst_; }
    const Matrix<F>& matrix() const { return m_; }

    Vec<F> apply(const Vec<F>& x) const { return m_.apply(x); }

private:
    AlgebraPtr<F> src_;
    AlgebraPtr<F> dst_;
    Matrix<F> m_;
};

}  // namespace homdec
