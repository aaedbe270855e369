#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "skein/cube.hpp"
#include "skein/diagram.hpp"
#include "skein/pool.hpp"

namespace skein {

// One summand Kh(a-caps . T . b-cups) of a tangle invariant, kept with its
// atom-level construction data so cobordism maps between summands can be
// assembled later. Atom labels: caps piece first, then the tangle's arcs,
// then the cups piece. Quantum degrees are reported with the summand shift
// (-b.n), which places the arc-algebra idempotents in degree zero.
template <class F>
struct ClosurePiece {
    CrossinglessMatching a, b;
    TangleDiagram tangle;                    // the closed-up tangle, as passed
    TangleDiagram atoms;                     // tangle crossings/loops in atom labels
    std::vector<std::pair<int, int>> seams;  // closure gluings
    std::vector<int> cap_atoms;              // per pair of a, in sorted pair order
    std::vector<int> cup_atoms;              // per pair of b
    std::vector<int> tangle_top_atoms;
    std::vector<int> tangle_bottom_atoms;
    int tangle_base = 0;                     // tangle arc x sits at atom x + tangle_base
    int atom_count = 0;
    GluedDiagram glued;
    CubeData<F> cube;
    Homology<F> hom;
    int qshift = 0;

    struct ClassRef {
        int deg;  // homological degree and index within it
        int idx;
        int q;  // shifted quantum degree
    };
    std::vector<ClassRef> classes() const {
        std::vector<ClassRef> out;
        for (const auto& [deg, qs] : hom.rep_q)
            for (size_t i = 0; i < qs.size(); ++i)
                out.push_back({deg, static_cast<int>(i), qs[i] + qshift});
        return out;
    }
    int dim() const { return static_cast<int>(classes().size()); }

    ArcExpand expander() const {
        const GluedDiagram* g = &glued;
        return [g](int arc) {
            auto it = g->rep_atoms.find(arc);
            return it == g->rep_atoms.end() ? std::vector<int>{arc} : it->second;
        };
    }
};

template <class F>
ClosurePiece<F> make_closure_piece(const TangleDiagram& tangle, const CrossinglessMatching& a,
                                   const CrossinglessMatching& b, const FrobeniusSpec<F>& spec,
                                   int crossing_cap = 14) {
    if (2 * a.n != tangle.top_count() || 2 * b.n != tangle.bottom_count())
        throw InputError("closure: matching sizes do not fit the tangle boundary");
    ClosurePiece<F> p;
    p.a = a;
    p.b = b;
    p.tangle = tangle;

    const int tangle_base = a.n;
    p.tangle_base = tangle_base;
    for (int i = 0; i < a.n; ++i) p.cap_atoms.push_back(i);
    TangleDiagram t = tangle;
    for (auto& x : t.crossings)
        for (int& arc : x.slot) arc += tangle_base;
    for (int& arc : t.top_arcs) arc += tangle_base;
    for (int& arc : t.bottom_arcs) arc += tangle_base;
    for (int& arc : t.loops) arc += tangle_base;
    const int cup_base = tangle_base + tangle.max_arc_label() + 1;
    for (int i = 0; i < b.n; ++i) p.cup_atoms.push_back(cup_base + i);
    p.atom_count = cup_base + b.n;

    p.atoms.crossings = t.crossings;
    p.atoms.loops = t.loops;
    p.tangle_top_atoms = t.top_arcs;
    p.tangle_bottom_atoms = t.bottom_arcs;

    for (int i = 0; i < a.n; ++i) {
        p.seams.push_back({p.cap_atoms[i], t.top_arcs[a.pairs[i].first - 1]});
        p.seams.push_back({p.cap_atoms[i], t.top_arcs[a.pairs[i].second - 1]});
    }
    for (int i = 0; i < b.n; ++i) {
        p.seams.push_back({p.cup_atoms[i], t.bottom_arcs[b.pairs[i].first - 1]});
        p.seams.push_back({p.cup_atoms[i], t.bottom_arcs[b.pairs[i].second - 1]});
    }

    p.glued = glue_raw(p.atoms, p.seams);
    p.cube = build_cube(p.glued.diagram, spec, crossing_cap);
    p.hom = homology(p.cube.cx);
    p.qshift = -b.n;
    return p;
}

// ---------------------------------------------------------------------------
// Vertical composition: contract the shared middle matching to vertical
// strands, one saddle per pair. Returns the homology-level matrix with rows
// indexed by target classes and columns by (upper class u, lower class l)
// flattened as u * L.dim() + l. Zero middle mismatch is the caller's branch.

template <class F>
SparseMatrix<F> vertical_compose_matrix(const ClosurePiece<F>& U, const ClosurePiece<F>& L,
                                        const ClosurePiece<F>& target, int crossing_cap = 14) {
    if (!(U.b == L.a)) throw InputError("vertical_compose: middle matchings differ");
    const int n_mid = U.b.n;
    const int u_labels = U.atom_count;

    TangleDiagram atoms = U.atoms;
    {
        TangleDiagram latoms = L.atoms;
        for (auto& x : latoms.crossings)
            for (int& arc : x.slot) arc += u_labels;
        for (int& arc : latoms.loops) arc += u_labels;
        atoms.crossings.insert(atoms.crossings.end(), latoms.crossings.begin(),
                               latoms.crossings.end());
        atoms.loops.insert(atoms.loops.end(), latoms.loops.begin(), latoms.loops.end());
    }

    std::vector<std::pair<int, int>> cur = U.seams;
    for (auto [x, y] : L.seams) cur.push_back({x + u_labels, y + u_labels});

    std::vector<GluedDiagram> states;
    std::vector<CubeData<F>> cubes;
    states.push_back(glue_raw(atoms, cur));
    cubes.push_back(build_cube(states.back().diagram, U.cube.spec, crossing_cap));

    auto expander_of = [](const GluedDiagram& g) {
        return [&g](int arc) {
            auto it = g.rep_atoms.find(arc);
            return it == g.rep_atoms.end() ? std::vector<int>{arc} : it->second;
        };
    };

    std::vector<ChainMapData<F>> steps;
    for (int i = 0; i < n_mid; ++i) {
        auto [p, q] = U.b.pairs[i];
        int cup = U.cup_atoms[i];
        int cap = L.cap_atoms[i] + u_labels;
        int ub_q = U.tangle_bottom_atoms[q - 1];
        int lt_p = L.tangle_top_atoms[p - 1] + u_labels;
        // saddle: cup becomes the p-vertical, cap the q-vertical
        bool did_cup = false, did_cap = false;
        for (auto& s : cur) {
            if (!did_cup && s == std::make_pair(cup, ub_q)) {
                s = {cup, lt_p};
                did_cup = true;
            } else if (!did_cap && s == std::make_pair(cap, lt_p)) {
                s = {cap, ub_q};
                did_cap = true;
            }
        }
        if (!did_cup || !did_cap) throw std::logic_error("vertical_compose: seam edit failed");
        states.push_back(glue_raw(atoms, cur));
        cubes.push_back(build_cube(states.back().diagram, U.cube.spec, crossing_cap));
        size_t k = states.size() - 1;
        steps.push_back(transition_map(cubes[k - 1], cubes[k], -1, expander_of(states[k - 1]),
                                       expander_of(states[k])));
    }

    // Identify the final state with the canonical target closure through the
    // composed tangle: cap/cup atoms pair by matching index, tangle arcs
    // through the composition's arc maps. Collapsed middle atoms carry no key;
    // every circle still holds a keyed atom (a tangle arc at least).
    ComposeResult comp = compose_with_maps(U.tangle, L.tangle);
    {
        TangleDiagram ct = canonicalize(target.tangle);
        bool same_shape = comp.composite.crossings == ct.crossings &&
                          comp.composite.top_arcs == ct.top_arcs &&
                          comp.composite.bottom_arcs == ct.bottom_arcs &&
                          comp.composite.loops == ct.loops;
        if (!same_shape)
            throw std::logic_error("vertical_compose: composite does not match the target tangle");
    }
    // key space: caps -> 3k, cups -> 3k+1, composite tangle arcs -> 3k+2
    std::map<int, std::vector<int>> key_final;  // combined-universe atom -> keys
    for (size_t i = 0; i < U.cap_atoms.size(); ++i)
        key_final[U.cap_atoms[i]] = {3 * static_cast<int>(i)};
    for (size_t j = 0; j < L.cup_atoms.size(); ++j)
        key_final[L.cup_atoms[j] + u_labels] = {3 * static_cast<int>(j) + 1};
    for (const auto& [x, y] : comp.from_d1)
        key_final[x + U.tangle_base] = {3 * y + 2};
    for (const auto& [x, y] : comp.from_d2)
        key_final[x + L.tangle_base + u_labels] = {3 * y + 2};
    std::map<int, std::vector<int>> key_target;
    for (size_t i = 0; i < target.cap_atoms.size(); ++i)
        key_target[target.cap_atoms[i]] = {3 * static_cast<int>(i)};
    for (size_t j = 0; j < target.cup_atoms.size(); ++j)
        key_target[target.cup_atoms[j]] = {3 * static_cast<int>(j) + 1};
    {
        auto [canon_t, relab_t] = canonicalize_with_map(target.tangle);
        (void)canon_t;
        for (const auto& [x, y] : relab_t) key_target[x + target.tangle_base] = {3 * y + 2};
    }
    const GluedDiagram& final_state = states.back();
    ChainMapData<F> relab = transition_map(
        cubes.back(), target.cube, 0,
        [&](int arc) {
            std::vector<int> keys;
            auto it = final_state.rep_atoms.find(arc);
            const std::vector<int> self{arc};
            const std::vector<int>& atoms_of =
                it == final_state.rep_atoms.end() ? self : it->second;
            for (int atom : atoms_of) {
                auto kt = key_final.find(atom);
                if (kt != key_final.end())
                    keys.insert(keys.end(), kt->second.begin(), kt->second.end());
            }
            return keys;
        },
        [&](int arc) {
            std::vector<int> keys;
            auto it = target.glued.rep_atoms.find(arc);
            const std::vector<int> self{arc};
            const std::vector<int>& atoms_of =
                it == target.glued.rep_atoms.end() ? self : it->second;
            for (int atom : atoms_of) {
                auto kt = key_target.find(atom);
                if (kt != key_target.end())
                    keys.insert(keys.end(), kt->second.begin(), kt->second.end());
            }
            return keys;
        });

    auto uclasses = U.classes();
    auto lclasses = L.classes();
    auto tclasses = target.classes();
    std::map<std::pair<int, int>, int> trow_of;
    for (size_t t = 0; t < tclasses.size(); ++t)
        trow_of[{tclasses[t].deg, tclasses[t].idx}] = static_cast<int>(t);

    const int c1 = U.atoms.crossing_count();
    SparseMatrix<F> out(static_cast<int>(tclasses.size()),
                        static_cast<int>(uclasses.size() * lclasses.size()));
    for (size_t ui = 0; ui < uclasses.size(); ++ui) {
        const auto& uc = uclasses[ui];
        const SparseVec<F>& zu = U.hom.reps.at(uc.deg)[uc.idx];
        for (size_t li = 0; li < lclasses.size(); ++li) {
            const auto& lc = lclasses[li];
            const SparseVec<F>& zl = L.hom.reps.at(lc.deg)[lc.idx];
            int deg = uc.deg + lc.deg;
            // Kuenneth pairing of representatives in the initial state
            SparseVec<F> z;
            for (const auto& [iu, cu] : zu.ent) {
                const BasisElem& bu = U.cube.cx.basis(uc.deg)[iu];
                int ncu = static_cast<int>(U.cube.circles[bu.aux0].size());
                for (const auto& [il, cl] : zl.ent) {
                    const BasisElem& bl = L.cube.cx.basis(lc.deg)[il];
                    uint64_t v = bu.aux0 | (bl.aux0 << c1);
                    uint64_t lab = bu.aux1 | (bl.aux1 << ncu);
                    int pos = cubes.front().basis_index(v, lab);
                    z.set(pos, z.at(pos) + cu * cl);
                }
            }
            for (size_t s = 0; s < steps.size(); ++s)
                z = steps[s].at(deg, cubes[s].cx, cubes[s + 1].cx).apply(z);
            z = relab.at(deg, cubes.back().cx, target.cube.cx).apply(z);
            SparseVec<F> coords = target.hom.coords(deg, z);
            int col = static_cast<int>(ui * lclasses.size() + li);
            for (const auto& [ti, coef] : coords.ent) out.set(trow_of.at({deg, ti}), col, coef);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tangle invariants: the direct sum over closure summands, with flattened
// basis bookkeeping. For an (m,n)-tangle the summands are indexed by
// B^m x B^n; actions of the arc algebras on either side attach via
// vertical composition.

template <class F>
struct TangleInvariant {
    TangleDiagram tangle;  // canonical
    int m = 0, n = 0;
    FrobeniusSpec<F> spec;
    std::vector<CrossinglessMatching> top_matchings, bottom_matchings;
    std::vector<std::vector<ClosurePiece<F>>> piece;  // [top idx][bottom idx]

    struct Ref {
        int a, b, k;  // summand indices and class index within the summand
        int t, q;     // bidegree (q shifted)
    };
    std::vector<Ref> basis;
    std::map<std::array<int, 3>, int> index;
    GradedDims dims;

    int summand_dim(int a, int b) const { return piece[a][b].dim(); }
};

template <class F>
TangleInvariant<F> build_tangle_invariant(const TangleDiagram& tangle,
                                          const FrobeniusSpec<F>& spec, int matching_cap = 6,
                                          int crossing_cap = 14, int threads = 1) {
    TangleInvariant<F> inv;
    inv.tangle = canonicalize(tangle);
    if (tangle.top_count() % 2 || tangle.bottom_count() % 2)
        throw InputError("tangle invariant: odd boundary size");
    inv.m = tangle.top_count() / 2;
    inv.n = tangle.bottom_count() / 2;
    inv.spec = spec;
    inv.top_matchings = enumerate_matchings(inv.m, matching_cap);
    inv.bottom_matchings = enumerate_matchings(inv.n, matching_cap);
    const int na = static_cast<int>(inv.top_matchings.size());
    const int nb = static_cast<int>(inv.bottom_matchings.size());
    inv.piece.resize(na);
    for (auto& row : inv.piece) row.resize(nb);
    parallel_for(threads, na * nb, [&](int idx) {
        int ai = idx / nb, bi = idx % nb;
        inv.piece[ai][bi] = make_closure_piece(inv.tangle, inv.top_matchings[ai],
                                               inv.bottom_matchings[bi], spec, crossing_cap);
    });
    for (size_t ai = 0; ai < inv.piece.size(); ++ai)
        for (size_t bi = 0; bi < inv.piece[ai].size(); ++bi) {
            auto cls = inv.piece[ai][bi].classes();
            for (size_t k = 0; k < cls.size(); ++k) {
                typename TangleInvariant<F>::Ref r;
                r.a = static_cast<int>(ai);
                r.b = static_cast<int>(bi);
                r.k = static_cast<int>(k);
                r.t = cls[k].deg;
                r.q = cls[k].q;
                inv.index[{r.a, r.b, r.k}] = static_cast<int>(inv.basis.size());
                inv.basis.push_back(r);
                inv.dims.add(r.t, r.q, 1);
            }
        }
    return inv;
}

// Khovanov's arc algebra H^n: the invariant of the identity tangle, with the
// multiplication table and per-matching idempotents.
template <class F>
struct ArcAlgebra {
    TangleInvariant<F> inv;
    int n = 0;
    // table[x][y]: product of flat basis elements as a vector over flat basis
    std::vector<std::vector<SparseVec<F>>> table;
    std::vector<int> idempotent;  // flat index of 1_a per matching index

    int dim() const { return static_cast<int>(inv.basis.size()); }

    SparseVec<F> multiply(const SparseVec<F>& x, const SparseVec<F>& y) const {
        SparseVec<F> out;
        for (const auto& [i, ci] : x.ent)
            for (const auto& [j, cj] : y.ent) out.axpy(ci * cj, table[i][j]);
        return out;
    }
};

template <class F>
ArcAlgebra<F> build_arc_algebra(int n, const FrobeniusSpec<F>& spec, int matching_cap = 4,
                                int crossing_cap = 14, int threads = 1) {
    if (n > matching_cap)
        throw CapError("arc algebra size " + std::to_string(n) + " exceeds cap " +
                       std::to_string(matching_cap));
    ArcAlgebra<F> alg;
    alg.n = n;
    alg.inv = build_tangle_invariant(identity_tangle(2 * n), spec, std::max(matching_cap, n),
                                     crossing_cap, threads);
    const int dim = alg.dim();
    alg.table.assign(dim, std::vector<SparseVec<F>>(dim));

    const auto& M = alg.inv.bottom_matchings;  // == top_matchings
    for (size_t a = 0; a < M.size(); ++a)
        for (size_t b = 0; b < M.size(); ++b)
            for (size_t c = 0; c < M.size(); ++c) {
                const auto& U = alg.inv.piece[a][b];
                const auto& L = alg.inv.piece[b][c];
                const auto& T = alg.inv.piece[a][c];
                if (U.dim() == 0 || L.dim() == 0) continue;
                SparseMatrix<F> prod = vertical_compose_matrix(U, L, T, crossing_cap);
                int ld = L.dim();
                for (int u = 0; u < U.dim(); ++u)
                    for (int l = 0; l < ld; ++l) {
                        int x = alg.inv.index.at({static_cast<int>(a), static_cast<int>(b), u});
                        int y = alg.inv.index.at({static_cast<int>(b), static_cast<int>(c), l});
                        SparseVec<F>& cell = alg.table[x][y];
                        SparseVec<F> colv = prod.column(u * ld + l);
                        for (const auto& [t, coef] : colv.ent)
                            cell.set(alg.inv.index.at({static_cast<int>(a), static_cast<int>(c),
                                                       t}),
                                     coef);
                    }
            }

    // idempotents: the all-ones labeling class of the (a,a) summand
    for (size_t a = 0; a < M.size(); ++a) {
        const auto& P = alg.inv.piece[a][a];
        SparseVec<F> unit_chain = SparseVec<F>::unit(P.cube.basis_index(0, 0));
        SparseVec<F> co = P.hom.coords(0, unit_chain);
        if (co.nnz() != 1 || !(co.ent[0].second == F::one()))
            throw std::logic_error("arc algebra: idempotent class not a basis vector");
        alg.idempotent.push_back(
            alg.inv.index.at({static_cast<int>(a), static_cast<int>(a), co.ent[0].first}));
    }
    return alg;
}

// Right/left action matrices of arc algebras on a tangle invariant: one
// matrix per algebra flat basis element, acting on the invariant's flat
// basis. Mismatched middles act as zero.
template <class F>
struct BimoduleActions {
    std::vector<SparseMatrix<F>> left;   // per H^m basis element
    std::vector<SparseMatrix<F>> right;  // per H^n basis element
};

template <class F>
BimoduleActions<F> build_actions(const TangleInvariant<F>& mod, const ArcAlgebra<F>* left_alg,
                                 const ArcAlgebra<F>* right_alg, int crossing_cap = 14) {
    BimoduleActions<F> act;
    int md = static_cast<int>(mod.basis.size());
    if (left_alg) {
        act.left.assign(left_alg->dim(), SparseMatrix<F>(md, md));
        for (size_t c = 0; c < mod.top_matchings.size(); ++c)
            for (size_t a = 0; a < mod.top_matchings.size(); ++a)
                for (size_t b = 0; b < mod.bottom_matchings.size(); ++b) {
                    const auto& U = left_alg->inv.piece[c][a];
                    const auto& L = mod.piece[a][b];
                    const auto& T = mod.piece[c][b];
                    if (U.dim() == 0 || L.dim() == 0) continue;
                    SparseMatrix<F> prod = vertical_compose_matrix(U, L, T, crossing_cap);
                    int ld = L.dim();
                    for (int u = 0; u < U.dim(); ++u) {
                        int h = left_alg->inv.index.at(
                            {static_cast<int>(c), static_cast<int>(a), u});
                        for (int l = 0; l < ld; ++l) {
                            int src = mod.index.at({static_cast<int>(a), static_cast<int>(b), l});
                            SparseVec<F> colv = prod.column(u * ld + l);
                            for (const auto& [t, coef] : colv.ent)
                                act.left[h].set(mod.index.at({static_cast<int>(c),
                                                              static_cast<int>(b), t}),
                                                src, coef);
                        }
                    }
                }
    }
    if (right_alg) {
        act.right.assign(right_alg->dim(), SparseMatrix<F>(md, md));
        for (size_t a = 0; a < mod.top_matchings.size(); ++a)
            for (size_t b = 0; b < mod.bottom_matchings.size(); ++b)
                for (size_t c = 0; c < mod.bottom_matchings.size(); ++c) {
                    const auto& U = mod.piece[a][b];
                    const auto& L = right_alg->inv.piece[b][c];
                    const auto& T = mod.piece[a][c];
                    if (U.dim() == 0 || L.dim() == 0) continue;
                    SparseMatrix<F> prod = vertical_compose_matrix(U, L, T, crossing_cap);
                    int ld = L.dim();
                    for (int u = 0; u < U.dim(); ++u)
                        for (int l = 0; l < ld; ++l) {
                            int h = right_alg->inv.index.at(
                                {static_cast<int>(b), static_cast<int>(c), l});
                            int src = mod.index.at({static_cast<int>(a), static_cast<int>(b), u});
                            SparseVec<F> colv = prod.column(u * ld + l);
                            for (const auto& [t, coef] : colv.ent)
                                act.right[h].set(mod.index.at({static_cast<int>(a),
                                                               static_cast<int>(c), t}),
                                                 src, coef);
                        }
                }
    }
    return act;
}

}  // namespace skein
