#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace homdec {

struct QuiverArrow {
    std::string name;
    std::size_t src = 0;  // 0-based vertex
    std::size_t tgt = 0;
};

// A path stores arrow indices in application order (first applied first).
// The algebra product p*q is "apply q, then p".
struct QuiverPath {
    std::vector<std::size_t> arrows;
};

template <Field F>
struct QuiverRelation {
    std::vector<std::pair<F, QuiverPath>> terms;
};

template <Field F>
struct QuiverPresentation {
    std::string name;
    std::size_t n_vertices = 0;
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation<F>> relations;
};

struct QuiverLimits {
    std::size_t max_path_length = 24;
    std::size_t max_paths = 200000;
};

namespace detail {

struct PathRec {
    std::vector<std::size_t> arrows;  // application order
    std::size_t src = 0, tgt = 0;
    std::vector<std::size_t> lex_key;  // arrow name ranks, for the tie order
};

// length-then-lex order on paths, ties broken by arrow labels; used descending
// so that rref pivots sit on the longest (most reducible) monomials.
inline bool path_order_less(const PathRec& a, const PathRec& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.lex_key != b.lex_key) return a.lex_key < b.lex_key;
    return a.src < b.src;  // distinct trivial paths
}

}  // namespace detail

// Compile a quiver with relations into a verified structure-constant algebra.
// Basis: normal-form monomials in length-then-lex order (vertex idempotents
// first). Relations must be parallel (all terms share source and target) and
// lie in the arrow ideal; the compiled algebra then knows its radical (normal
// forms of length >= 1) and its vertex idempotents.
template <Field F>
AlgebraPtr<F> compile_quiver(const QuiverPresentation<F>& q, QuiverLimits limits = {}) {
    require(q.n_vertices > 0, "quiver: needs at least one vertex");
    for (const auto& a : q.arrows) {
        require(a.src < q.n_vertices && a.tgt < q.n_vertices, "quiver: arrow endpoint out of range");
        require(!a.name.empty(), "quiver: arrow needs a name");
    }
    std::vector<std::size_t> name_rank(q.arrows.size());
    {
        std::vector<std::size_t> idx(q.arrows.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (q.arrows[a].name != q.arrows[b].name) return q.arrows[a].name < q.arrows[b].name;
            return a < b;
        });
        for (std::size_t r = 0; r < idx.size(); ++r) name_rank[idx[r]] = r;
    }

    for (const auto& rel : q.relations) {
        require(!rel.terms.empty(), "quiver: empty relation");
        std::size_t s = 0, t = 0;
        bool first = true;
        for (const auto& [c, p] : rel.terms) {
            (void)c;
            require(!p.arrows.empty(), "quiver: relation terms must have length >= 1");
            for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
                require(q.arrows[p.arrows[i]].tgt == q.arrows[p.arrows[i + 1]].src,
                        "quiver: relation term is not a composable path");
            std::size_t ps = q.arrows[p.arrows.front()].src;
            std::size_t pt = q.arrows[p.arrows.back()].tgt;
            if (first) { s = ps; t = pt; first = false; }
            require(ps == s && pt == t, "quiver: relation terms are not parallel");
        }
    }

    // Enumerate paths up to a length bound; returns them sorted descending in
    // the length-then-lex order together with an index map.
    auto enumerate = [&](std::size_t maxlen) {
        std::vector<detail::PathRec> paths;
        for (std::size_t v = 0; v < q.n_vertices; ++v) {
            detail::PathRec p;
            p.src = p.tgt = v;
            paths.push_back(p);
        }
        std::size_t level_begin = 0;
        for (std::size_t len = 1; len <= maxlen; ++len) {
            std::size_t level_end = paths.size();
            for (std::size_t i = level_begin; i < level_end; ++i) {
                for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                    if (q.arrows[a].src != paths[i].tgt) continue;
                    detail::PathRec p = paths[i];
                    p.arrows.push_back(a);
                    p.lex_key.push_back(name_rank[a]);
                    p.tgt = q.arrows[a].tgt;
                    paths.push_back(std::move(p));
                    require(paths.size() <= limits.max_paths,
                            "quiver: not finite-dimensional at cap (path budget exceeded)");
                }
            }
            level_begin = level_end;
            if (level_begin == paths.size()) break;  // no paths of this length
        }
        std::sort(paths.begin(), paths.end(),
                  [](const detail::PathRec& a, const detail::PathRec& b) {
                      return detail::path_order_less(b, a);  // descending
                  });
        std::map<std::vector<std::size_t>, std::map<std::size_t, std::size_t>> index;
        for (std::size_t i = 0; i < paths.size(); ++i)
            index[paths[i].arrows][paths[i].src] = i;
        return std::pair(std::move(paths), std::move(index));
    };

    // Span of the two-sided ideal inside the path space of bounded length:
    // all products (left path) * relation * (right path).
    auto ideal_rref = [&](const std::vector<detail::PathRec>& paths, auto& index,
                          std::size_t maxlen) {
        std::vector<Vec<F>> rows;
        auto locate = [&](const std::vector<std::size_t>& arrows, std::size_t src)
            -> std::size_t {
            auto it = index.find(arrows);
            require(it != index.end(), "quiver: internal path lookup failure");
            auto jt = it->second.find(src);
            require(jt != it->second.end(), "quiver: internal path lookup failure");
            return jt->second;
        };
        for (const auto& rel : q.relations) {
            std::size_t rs = q.arrows[rel.terms.front().second.arrows.front()].src;
            std::size_t rt = q.arrows[rel.terms.front().second.arrows.back()].tgt;
            std::size_t rmax = 0;
            for (const auto& [c, p] : rel.terms) rmax = std::max(rmax, p.arrows.size());
            for (const auto& left : paths) {    // applied after the relation
                if (left.src != rt) continue;
                for (const auto& right : paths) {  // applied before the relation
                    if (right.tgt != rs) continue;
                    if (left.arrows.size() + rmax + right.arrows.size() > maxlen) continue;
                    Vec<F> row(paths.size(), F(0));
                    for (const auto& [c, p] : rel.terms) {
                        std::vector<std::size_t> w = right.arrows;
                        w.insert(w.end(), p.arrows.begin(), p.arrows.end());
                        w.insert(w.end(), left.arrows.begin(), left.arrows.end());
                        row[locate(w, right.src)] += c;
                    }
                    bool zero = true;
                    for (const F& x : row)
                        if (!x.is_zero()) { zero = false; break; }
                    if (!zero) rows.push_back(std::move(row));
                }
            }
        }
        Matrix<F> m(rows.size(), paths.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < paths.size(); ++j) m.at(i, j) = rows[i][j];
        return rref(m);
    };

    // Phase 1: grow the length bound until no normal form appears at the top
    // length (then nothing longer survives either).
    std::size_t stable_len = 0;
    bool stabilized = false;
    for (std::size_t L = 1; L <= limits.max_path_length; ++L) {
        auto [paths, index] = enumerate(L);
        auto rr = ideal_rref(paths, index, L);
        std::vector<bool> pivot(paths.size(), false);
        for (auto p : rr.pivots) pivot[p] = true;
        bool top_nf = false;
        bool top_exists = false;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (paths[i].arrows.size() == L) {
                top_exists = true;
                if (!pivot[i]) { top_nf = true; break; }
            }
        }
        if (!top_exists || !top_nf) {
            stable_len = L;
            stabilized = true;
            break;
        }
    }
    require(stabilized, "quiver: not finite-dimensional at cap (length " +
                            std::to_string(limits.max_path_length) + ")");

    // Phase 2: redo the reduction with room for products of two normal forms.
    std::size_t nf_len = stable_len == 0 ? 0 : stable_len - 1;
    std::size_t full_len = std::max<std::size_t>(2 * nf_len, 1);
    auto [paths, index] = enumerate(full_len);
    auto rr = ideal_rref(paths, index, full_len);
    std::vector<bool> pivot(paths.size(), false);
    std::vector<std::size_t> pivot_row(paths.size(), 0);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        pivot[rr.pivots[i]] = true;
        pivot_row[rr.pivots[i]] = i;
    }

    // reduce a path-space vector modulo the ideal
    auto reduce = [&](Vec<F> v) {
        for (std::size_t j = 0; j < paths.size(); ++j) {
            if (!pivot[j] || v[j].is_zero()) continue;
            F c = v[j];
            std::size_t row = pivot_row[j];
            for (std::size_t t = j; t < paths.size(); ++t)
                if (!rr.reduced.at(row, t).is_zero()) v[t] -= c * rr.reduced.at(row, t);
        }
        return v;
    };

    // normal-form basis: non-pivot paths of length <= nf_len, ascending order
    std::vector<std::size_t> nf;  // indices into paths, collected ascending
    for (std::size_t i = paths.size(); i-- > 0;) {
        if (!pivot[i] && paths[i].arrows.size() <= nf_len) nf.push_back(i);
    }
    // paths[] is descending, so reversed scan gives ascending order already
    std::size_t d = nf.size();
    require(d >= q.n_vertices, "quiver: vertex idempotents collapsed (relations leave the arrow ideal)");
    std::vector<std::size_t> nf_pos(paths.size(), SIZE_MAX);
    for (std::size_t i = 0; i < d; ++i) nf_pos[nf[i]] = i;
    for (std::size_t i = paths.size(); i-- > 0;) {
        if (!pivot[i] && paths[i].arrows.size() > nf_len)
            fail("quiver: internal stabilization defect");
    }

    auto to_nf_coords = [&](const Vec<F>& pathvec) {
        Vec<F> out(d, F(0));
        for (std::size_t j = 0; j < paths.size(); ++j) {
            if (pathvec[j].is_zero()) continue;
            require(nf_pos[j] != SIZE_MAX, "quiver: reduction left a non-basis path");
            out[nf_pos[j]] = pathvec[j];
        }
        return out;
    };

    std::vector<F> sc(d * d * d, F(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto& pi = paths[nf[i]];
            const auto& pj = paths[nf[j]];
            if (pj.tgt != pi.src) continue;  // product pi * pj applies pj first
            std::vector<std::size_t> w = pj.arrows;
            w.insert(w.end(), pi.arrows.begin(), pi.arrows.end());
            auto it = index.find(w);
            require(it != index.end() && it->second.count(pj.src),
                    "quiver: product path missing from enumeration");
            Vec<F> v(paths.size(), F(0));
            v[it->second.at(pj.src)] = F(1);
            Vec<F> coords = to_nf_coords(reduce(std::move(v)));
            for (std::size_t k = 0; k < d; ++k) sc[(i * d + j) * d + k] = coords[k];
        }

    Vec<F> unit(d, F(0));
    std::vector<Vec<F>> vertex_idem(q.n_vertices, Vec<F>(d, F(0)));
    std::vector<std::string> names(d);
    std::size_t radical_dim = 0;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& p = paths[nf[i]];
        if (p.arrows.empty()) {
            unit[i] = F(1);
            vertex_idem[p.src][i] = F(1);
            names[i] = "e" + std::to_string(p.src + 1);
        } else {
            std::string nm;
            for (std::size_t a : p.arrows) {
                if (!nm.empty()) nm += ".";
                nm += q.arrows[a].name;
            }
            names[i] = nm;
            ++radical_dim;
        }
    }

    auto alg = std::make_shared<AlgebraPresentation<F>>(q.name, d, std::move(sc), std::move(unit),
                                                        std::move(names));

    // The arrow-ideal image is the radical (and the vertex idempotents are
    // primitive) exactly when that image is nilpotent; relations that escape
    // admissibility can break this even for finite-dimensional quotients, so
    // verify before stamping the structure data.
    Matrix<F> rad(d, radical_dim);
    std::size_t col = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (!paths[nf[i]].arrows.empty()) rad.at(i, col++) = F(1);
    }
    bool nilpotent = false;
    Matrix<F> power = rad;
    for (std::size_t step = 0; step <= d; ++step) {
        if (power.cols() == 0) { nilpotent = true; break; }
        Matrix<F> prod(d, power.cols() * rad.cols());
        for (std::size_t a = 0; a < power.cols(); ++a)
            for (std::size_t b = 0; b < rad.cols(); ++b) {
                Vec<F> w = alg->mult(power.column_vec(a), rad.column_vec(b));
                for (std::size_t r = 0; r < d; ++r) prod.at(r, a * rad.cols() + b) = w[r];
            }
        power = column_space(prod);
    }
    if (nilpotent) {
        alg->set_known_radical(std::move(rad));
        alg->set_known_idempotents(std::move(vertex_idem));
    }
    return alg;
}

// Convenience builders used across tests and fixtures.
template <Field F>
QuiverPresentation<F> linear_quiver(std::string name, std::size_t n) {
    QuiverPresentation<F> q;
    q.name = std::move(name);
    q.n_vertices = n;
    for (std::size_t i = 0; i + 1 < n; ++i)
        q.arrows.push_back({std::string(1, static_cast<char>('a' + i)), i, i + 1});
    return q;
}

template <Field F>
QuiverPresentation<F> loop_quiver(std::string name, std::size_t nilpotency) {
    QuiverPresentation<F> q;
    q.name = std::move(name);
    q.n_vertices = 1;
    q.arrows.push_back({"x", 0, 0});
    QuiverRelation<F> rel;
    QuiverPath p;
    p.arrows.assign(nilpotency, 0);
    rel.terms.push_back({F(1), p});
    q.relations.push_back(rel);
    return q;
}

}  // namespace homdec
