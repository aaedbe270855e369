#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "skein/graded.hpp"
#include "skein/sparse.hpp"

namespace skein {

// One basis element of a chain group. q is the quantum degree; the aux
// words are producer-defined identifiers (cube complexes store the vertex
// bitmask and the circle-labeling bitmask).
struct BasisElem {
    int q = 0;
    uint64_t aux0 = 0;
    uint64_t aux1 = 0;
};

// A bounded complex of finite-dimensional vector spaces. Differentials
// raise homological degree by 1; for graded complexes they preserve q.
template <class F>
class ChainComplex {
public:
    ChainComplex() = default;

    void set_basis(int deg, std::vector<BasisElem> basis) { basis_[deg] = std::move(basis); }

    // d : C_deg -> C_{deg+1}; rows indexed by basis(deg+1), cols by basis(deg).
    void set_diff(int deg, SparseMatrix<F> d) { diff_[deg] = std::move(d); }

    bool has_degree(int deg) const { return basis_.count(deg) > 0; }
    const std::vector<BasisElem>& basis(int deg) const {
        static const std::vector<BasisElem> empty;
        auto it = basis_.find(deg);
        return it == basis_.end() ? empty : it->second;
    }
    int dim(int deg) const { return static_cast<int>(basis(deg).size()); }

    SparseMatrix<F> diff(int deg) const {
        auto it = diff_.find(deg);
        if (it != diff_.end()) return it->second;
        return SparseMatrix<F>(dim(deg + 1), dim(deg));
    }

    int min_degree() const { return basis_.empty() ? 0 : basis_.begin()->first; }
    int max_degree() const { return basis_.empty() ? 0 : basis_.rbegin()->first; }

    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& [d, b] : basis_)
            if (!b.empty()) out.push_back(d);
        return out;
    }

    bool graded = true;  // false for filtered theories (h, t not both zero)

    // Throws naming the offending degree if d^2 != 0 or shapes disagree.
    void validate() const {
        for (const auto& [deg, b] : basis_) {
            SparseMatrix<F> d0 = diff(deg);
            if (d0.cols() != dim(deg) || d0.rows() != dim(deg + 1))
                throw std::logic_error("ChainComplex: differential shape at degree " +
                                       std::to_string(deg));
            if (graded) {
                for (int r = 0; r < d0.rows(); ++r)
                    for (const auto& [c, v] : d0.row(r).ent)
                        if (basis(deg + 1)[r].q != basis(deg)[c].q)
                            throw std::logic_error(
                                "ChainComplex: differential not quantum-homogeneous at degree " +
                                std::to_string(deg));
            }
            if (has_degree(deg + 1)) {
                SparseMatrix<F> d1 = diff(deg + 1);
                if (!(d1 * d0).is_zero())
                    throw std::logic_error("ChainComplex: d.d != 0 at degree " +
                                           std::to_string(deg));
            }
        }
    }

    GradedDims dims() const {
        GradedDims g;
        for (const auto& [deg, b] : basis_)
            for (const auto& e : b) g.add(deg, e.q, 1);
        return g;
    }

private:
    std::map<int, std::vector<BasisElem>> basis_;
    std::map<int, SparseMatrix<F>> diff_;
};

// A chain map f : C -> C' of pure homological shift (usually 0); commutes
// with the differentials: d' f = f d. Components are stored per source degree
// and map C_deg -> C'_{deg + t_shift}.
template <class F>
struct ChainMapData {
    int t_shift = 0;
    int q_shift = 0;
    std::map<int, SparseMatrix<F>> comp;

    SparseMatrix<F> at(int deg, const ChainComplex<F>& src, const ChainComplex<F>& dst) const {
        auto it = comp.find(deg);
        if (it != comp.end()) return it->second;
        return SparseMatrix<F>(dst.dim(deg + t_shift), src.dim(deg));
    }
};

template <class F>
void validate_chain_map(const ChainMapData<F>& f, const ChainComplex<F>& src,
                        const ChainComplex<F>& dst) {
    for (int deg : src.degrees()) {
        SparseMatrix<F> lhs = dst.diff(deg + f.t_shift) * f.at(deg, src, dst);
        SparseMatrix<F> rhs = f.at(deg + 1, src, dst) * src.diff(deg);
        if (!(lhs - rhs).is_zero())
            throw std::logic_error("chain map does not commute with differentials at degree " +
                                   std::to_string(deg));
    }
}

template <class F>
ChainMapData<F> compose(const ChainMapData<F>& g, const ChainMapData<F>& f,
                        const ChainComplex<F>& a, const ChainComplex<F>& b,
                        const ChainComplex<F>& c) {
    // g after f, f : a -> b, g : b -> c
    ChainMapData<F> out;
    out.t_shift = f.t_shift + g.t_shift;
    out.q_shift = f.q_shift + g.q_shift;
    for (int deg : a.degrees()) out.comp[deg] = g.at(deg + f.t_shift, b, c) * f.at(deg, a, b);
    return out;
}

// Record of one chain-level cancellation: pivot entry lambda at
// (row r in C_{deg+1}, col c in C_deg) of d_deg, with the pivot row delta
// (over source indices) and pivot column gamma (over target indices) as
// they stood at elimination time, pivot positions excluded.
template <class F>
struct Cancellation {
    int deg;
    int r, c;
    F lambda;
    SparseVec<F> delta;
    SparseVec<F> gamma;
};

// Homotopy-equivalence data produced by chain-level Gaussian elimination:
// reduced complex plus replayable maps
//   f : C -> C_red (project),  g : C_red -> C (include),
// with f g = id and g f homotopic to id. Indices of the reduced complex are
// positions into `alive[deg]`, which names surviving original basis indices.
template <class F>
struct Reduction {
    ChainComplex<F> reduced;
    std::map<int, std::vector<int>> alive;  // reduced position -> original index
    std::vector<Cancellation<F>> log;
    std::map<int, int> orig_dim;

    // f applied to a degree-deg vector in original coordinates; result in
    // original surviving coordinates (still original index space).
    SparseVec<F> project_raw(int deg, SparseVec<F> v) const {
        for (const auto& e : log) {
            if (e.deg == deg) {
                v.set(e.c, F::zero());
            } else if (e.deg + 1 == deg) {
                F vr = v.at(e.r);
                if (!vr.is_zero()) {
                    v.axpy(-(e.lambda.inverse()) * vr, e.gamma);
                    v.set(e.r, F::zero());
                }
            }
        }
        return v;
    }

    // g applied to a reduced-coordinates vector; result in original coords.
    SparseVec<F> include_raw(int deg, const SparseVec<F>& v_red) const {
        SparseVec<F> v;
        auto it = alive.find(deg);
        if (it != alive.end())
            for (const auto& [i, coef] : v_red.ent) v.set(it->second[i], coef);
        for (auto e = log.rbegin(); e != log.rend(); ++e) {
            if (e->deg == deg) {
                F corr = dot(e->delta, v);
                if (!corr.is_zero()) v.set(e->c, -(e->lambda.inverse()) * corr);
            }
        }
        return v;
    }

    SparseVec<F> project(int deg, const SparseVec<F>& v) const {
        SparseVec<F> raw = project_raw(deg, v);
        SparseVec<F> out;
        auto it = alive.find(deg);
        if (it == alive.end()) {
            if (!raw.is_zero()) throw std::logic_error("Reduction: projection off basis");
            return out;
        }
        std::map<int, int> pos;
        for (size_t i = 0; i < it->second.size(); ++i) pos[it->second[i]] = static_cast<int>(i);
        for (const auto& [i, coef] : raw.ent) out.set(pos.at(i), coef);
        return out;
    }
};

// Mutable chain-elimination state. Supports both heuristic full reduction
// (gaussian_simplify) and targeted eliminations at caller-chosen pivots
// (Reidemeister maps). Basis indices stay in the original index space;
// eliminated rows/columns are zeroed, never compacted, until finalize().
template <class F>
class Eliminator {
public:
    explicit Eliminator(const ChainComplex<F>& c) : src_(&c) {
        for (int deg : c.degrees()) {
            d_[deg] = c.diff(deg);
            if (!dead_.count(deg)) dead_[deg] = std::vector<bool>(c.dim(deg), false);
            if (!dead_.count(deg + 1)) dead_[deg + 1] = std::vector<bool>(c.dim(deg + 1), false);
        }
        for (const auto& [deg, mat] : d_) {
            auto& idx = colrows_[deg];
            idx.assign(mat.cols(), {});
            for (int r = 0; r < mat.rows(); ++r)
                for (const auto& [cc, v] : mat.row(r).ent) idx[cc].insert(r);
        }
    }

    const SparseMatrix<F>& diff(int deg) {
        auto it = d_.find(deg);
        if (it == d_.end()) {
            d_[deg] = SparseMatrix<F>(src_->dim(deg + 1), src_->dim(deg));
            colrows_[deg].assign(src_->dim(deg), {});
            it = d_.find(deg);
        }
        return it->second;
    }

    int column_fill(int deg, int c) const {
        auto it = colrows_.find(deg);
        return it == colrows_.end() ? 0 : static_cast<int>(it->second[c].size());
    }

    SparseVec<F> column(int deg, int c) const {
        SparseVec<F> out;
        auto it = colrows_.find(deg);
        if (it == colrows_.end()) return out;
        const SparseMatrix<F>& mat = d_.at(deg);
        for (int r : it->second[c]) out.set(r, mat.at(r, c));
        return out;
    }

    bool is_dead(int deg, int i) const {
        auto it = dead_.find(deg);
        return it != dead_.end() && it->second[i];
    }

    // Cancels the pivot at d_deg[r][c]; the entry must be invertible.
    void eliminate(int deg, int r, int c) {
        diff(deg);
        SparseMatrix<F>& mat = d_[deg];
        auto& idx = colrows_[deg];
        Cancellation<F> e;
        e.deg = deg;
        e.r = r;
        e.c = c;
        e.lambda = mat.at(r, c);
        if (e.lambda.is_zero()) throw std::logic_error("Eliminator: zero pivot");
        e.delta = mat.row(r);
        e.delta.set(c, F::zero());
        e.gamma = column(deg, c);
        e.gamma.set(r, F::zero());

        F linv = e.lambda.inverse();
        for (const auto& [rr, gv] : e.gamma.ent) {
            SparseVec<F>& row = mat.row_mut(rr);
            // track membership changes across the update
            for (const auto& [cc, v] : row.ent) idx[cc].erase(rr);
            row.axpy(-(gv * linv), e.delta);
            for (const auto& [cc, v] : row.ent) idx[cc].insert(rr);
        }
        for (const auto& [cc, v] : mat.row(r).ent) idx[cc].erase(r);
        mat.row_mut(r).ent.clear();
        for (int rr : idx[c]) mat.row_mut(rr).set(c, F::zero());
        idx[c].clear();

        auto lo = d_.find(deg - 1);
        if (lo != d_.end()) {
            auto& lidx = colrows_[deg - 1];
            for (const auto& [cc, v] : lo->second.row(c).ent) lidx[cc].erase(c);
            lo->second.row_mut(c).ent.clear();
        }
        auto hi = d_.find(deg + 1);
        if (hi != d_.end()) {
            auto& hidx = colrows_[deg + 1];
            for (int rr : hidx[r]) hi->second.row_mut(rr).set(r, F::zero());
            hidx[r].clear();
        }

        dead_[deg][c] = true;
        dead_[deg + 1][r] = true;
        log_.push_back(std::move(e));
    }

    // Repeatedly cancels the invertible entry minimizing the fill-in score
    // (row nnz - 1) * (col nnz - 1) within each degree, via a lazy priority
    // queue over candidate entries: stale scores are re-validated on pop,
    // fill-in lands only in the rows the update touched, and those entries
    // are re-pushed.
    void run_heuristic() {
        for (auto& [deg, mat] : d_) {
            auto score_of = [&](int r, int c) {
                return static_cast<long>(mat.row(r).nnz() - 1) *
                       (static_cast<long>(column_fill(deg, c)) - 1);
            };
            using Cand = std::tuple<long, int, int>;
            std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
            for (int r = 0; r < mat.rows(); ++r)
                for (const auto& [cc, v] : mat.row(r).ent) heap.push({score_of(r, cc), r, cc});
            while (!heap.empty()) {
                auto [score, r, c] = heap.top();
                heap.pop();
                if (mat.at(r, c).is_zero()) continue;
                long now = score_of(r, c);
                if (now != score) {
                    heap.push({now, r, c});
                    continue;
                }
                SparseVec<F> gamma = column(deg, c);
                eliminate(deg, r, c);
                for (const auto& [rr, v] : gamma.ent) {
                    if (rr == r) continue;
                    for (const auto& [cc, v2] : mat.row(rr).ent)
                        heap.push({score_of(rr, cc), rr, cc});
                }
            }
        }
    }

    Reduction<F> finalize() && {
        Reduction<F> red;
        red.log = std::move(log_);
        for (const auto& [deg, flags] : dead_) {
            red.orig_dim[deg] = static_cast<int>(flags.size());
            std::vector<int> alive;
            for (int i = 0; i < static_cast<int>(flags.size()); ++i)
                if (!flags[i]) alive.push_back(i);
            if (alive.empty()) continue;
            std::vector<BasisElem> b;
            for (int i : alive) b.push_back(src_->basis(deg)[i]);
            red.reduced.set_basis(deg, std::move(b));
            red.alive[deg] = std::move(alive);
        }
        red.reduced.graded = src_->graded;
        // carry any surviving differential entries into the reduced complex
        for (const auto& [deg, mat] : d_) {
            if (mat.is_zero()) continue;
            auto rit = red.alive.find(deg);
            auto tit = red.alive.find(deg + 1);
            int rows = tit == red.alive.end() ? 0 : static_cast<int>(tit->second.size());
            int cols = rit == red.alive.end() ? 0 : static_cast<int>(rit->second.size());
            SparseMatrix<F> m(rows, cols);
            std::map<int, int> rpos, cpos;
            if (tit != red.alive.end())
                for (size_t i = 0; i < tit->second.size(); ++i)
                    rpos[tit->second[i]] = static_cast<int>(i);
            if (rit != red.alive.end())
                for (size_t i = 0; i < rit->second.size(); ++i)
                    cpos[rit->second[i]] = static_cast<int>(i);
            for (int r = 0; r < mat.rows(); ++r)
                for (const auto& [c, v] : mat.row(r).ent) m.set(rpos.at(r), cpos.at(c), v);
            if (!m.is_zero()) red.reduced.set_diff(deg, std::move(m));
        }
        return red;
    }

private:
    const ChainComplex<F>* src_;
    std::map<int, SparseMatrix<F>> d_;
    std::map<int, std::vector<std::set<int>>> colrows_;
    std::map<int, std::vector<bool>> dead_;
    std::vector<Cancellation<F>> log_;
};

// Eliminates invertible differential entries until none remain; over a field
// the reduced differential is zero, so the reduced complex is the homology.
template <class F>
Reduction<F> gaussian_simplify(const ChainComplex<F>& c) {
    Eliminator<F> e(c);
    e.run_heuristic();
    Reduction<F> red = std::move(e).finalize();
    for (int deg : red.reduced.degrees())
        if (!red.reduced.diff(deg).is_zero())
            throw std::logic_error("gaussian_simplify: nonzero entries left over a field");
    return red;
}

// Homology with stored cycle representatives in the original basis.
template <class F>
struct Homology {
    GradedDims dims;
    // per degree: representative cycles (original coordinates), aligned with
    // the reduced basis order; plus q-degree per class
    std::map<int, std::vector<SparseVec<F>>> reps;
    std::map<int, std::vector<int>> rep_q;
    Reduction<F> reduction;

    // coordinates of a cycle's class in the stored basis of its degree
    SparseVec<F> coords(int deg, const SparseVec<F>& cycle) const {
        return reduction.project(deg, cycle);
    }
};

template <class F>
Homology<F> homology(const ChainComplex<F>& c) {
    Homology<F> h;
    h.reduction = gaussian_simplify(c);
    for (const auto& [deg, alive] : h.reduction.alive) {
        const auto& basis = h.reduction.reduced.basis(deg);
        for (size_t i = 0; i < basis.size(); ++i) {
            h.dims.add(deg, c.graded ? basis[i].q : 0, 1);
            h.reps[deg].push_back(
                h.reduction.include_raw(deg, SparseVec<F>::unit(static_cast<int>(i))));
            h.rep_q[deg].push_back(c.graded ? basis[i].q : 0);
        }
    }
    return h;
}

// Map induced on homology by a chain map. Component at source degree deg
// maps H_deg(src) -> H_{deg + f.t_shift}(dst), in the stored bases.
template <class F>
std::map<int, SparseMatrix<F>> induced_map(const ChainMapData<F>& f, const ChainComplex<F>& src,
                                           const ChainComplex<F>& dst, const Homology<F>& hsrc,
                                           const Homology<F>& hdst) {
    std::map<int, SparseMatrix<F>> out;
    for (const auto& [deg, reps] : hsrc.reps) {
        int tdeg = deg + f.t_shift;
        int tdim = 0;
        auto it = hdst.reps.find(tdeg);
        if (it != hdst.reps.end()) tdim = static_cast<int>(it->second.size());
        SparseMatrix<F> m(tdim, static_cast<int>(reps.size()));
        SparseMatrix<F> fm = f.at(deg, src, dst);
        for (size_t j = 0; j < reps.size(); ++j) {
            SparseVec<F> img = fm.apply(reps[j]);
            SparseVec<F> co = hdst.coords(tdeg, img);
            for (const auto& [i, v] : co.ent) m.set(i, static_cast<int>(j), v);
        }
        out[deg] = std::move(m);
    }
    return out;
}

// Quotient of a based space by the span of relation vectors; returns graded
// dims and the projection matrix (rows = surviving classes, dense over the
// full basis).
template <class F>
struct QuotientResult {
    GradedDims dims;
    SparseMatrix<F> projection;
    int relation_rank = 0;
};

template <class F>
QuotientResult<F> quotient_by_relations(const std::vector<Bidegree>& basis,
                                        const std::vector<SparseVec<F>>& relations) {
    SparseMatrix<F> rel(static_cast<int>(relations.size()), static_cast<int>(basis.size()));
    for (size_t r = 0; r < relations.size(); ++r) rel.row_mut(static_cast<int>(r)) = relations[r];
    Echelon<F> e = row_reduce(std::move(rel));
    std::vector<bool> pivotal(basis.size(), false);
    std::vector<SparseVec<F>> pivot_rows(basis.size());
    for (int r = 0; r < e.mat.rows(); ++r)
        if (e.pivot_col[r] >= 0) {
            pivotal[e.pivot_col[r]] = true;
            pivot_rows[e.pivot_col[r]] = e.mat.row(r);
        }
    QuotientResult<F> out;
    out.relation_rank = e.rank;
    std::vector<int> survivors;
    for (size_t i = 0; i < basis.size(); ++i)
        if (!pivotal[i]) survivors.push_back(static_cast<int>(i));
    out.projection =
        SparseMatrix<F>(static_cast<int>(survivors.size()), static_cast<int>(basis.size()));
    std::map<int, int> survivor_pos;
    for (size_t s = 0; s < survivors.size(); ++s) {
        out.projection.set(static_cast<int>(s), survivors[s], F::one());
        out.dims.add(basis[survivors[s]].t, basis[survivors[s]].q, 1);
        survivor_pos[survivors[s]] = static_cast<int>(s);
    }
    // non-surviving coordinates map to minus the tail of their pivot row
    for (size_t i = 0; i < basis.size(); ++i) {
        if (!pivotal[i]) continue;
        for (const auto& [j, v] : pivot_rows[i].ent) {
            if (j == static_cast<int>(i)) continue;
            out.projection.add(survivor_pos.at(j), static_cast<int>(i), -v);
        }
    }
    return out;
}

// Coequalizer of two parallel maps: target / im(f - g).
template <class F>
QuotientResult<F> coequalizer(const SparseMatrix<F>& f, const SparseMatrix<F>& g,
                              const std::vector<Bidegree>& target_basis) {
    if (f.rows() != g.rows() || f.cols() != g.cols())
        throw std::invalid_argument("coequalizer: shape mismatch");
    if (f.rows() != static_cast<int>(target_basis.size()))
        throw std::invalid_argument("coequalizer: target basis size mismatch");
    SparseMatrix<F> rel = f - g;
    std::vector<SparseVec<F>> relations;
    for (int c = 0; c < rel.cols(); ++c) {
        SparseVec<F> col = rel.column(c);
        if (!col.is_zero()) relations.push_back(std::move(col));
    }
    return quotient_by_relations(target_basis, relations);
}

}  // namespace skein
