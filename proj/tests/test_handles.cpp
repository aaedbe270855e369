#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skein/field.hpp"
#include "skein/handles.hpp"

using namespace skein;

TEST_CASE("1-handle of the empty tangle is the ground field") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    auto dims = attach_1_handle(empty_diagram(), spec);
    CHECK(dims.total() == 1);
    CHECK(dims.at(0, 0) == 1);
}

TEST_CASE("1-handle of the identity strand is the belt-circle case") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    auto dims = attach_1_handle(identity_tangle(2, +1), spec);
    CHECK(dims.total() == 2);
}

TEST_CASE("1-handle rejects mismatched boundary orientations") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram d = identity_tangle(2, +1);
    d.bottom_dir = {+1, -1};  // strand cannot close across the handle
    CHECK_THROWS_AS(attach_1_handle(d, spec), InputError);
}

TEST_CASE("1-handle of the full twist with mixed orientations") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    // two strands, one up one down, with a full twist
    TangleDiagram tw = braid_diagram(2, {+1, +1});
    // braid_diagram orients both strands downward; for the algebraically-zero
    // intersection we need mixed orientations, which the braid closure of a
    // 2-strand tangle with opposite orientations encodes by flipping one
    // boundary direction consistently on both ends
    tw.top_dir = {+1, -1};
    tw.bottom_dir = {-1, +1};
    // building the invariant does not consult strand orientations beyond
    // crossing signs, which are stored per crossing
    auto dims = attach_1_handle(tw, spec);
    CHECK(dims.total() > 0);
    // the two independent code paths agree (checked inside via acceptance,
    // repeated here explicitly)
    auto A = build_arc_algebra(1, spec);
    auto B = build_tangle_invariant(tw, spec);
    auto act = build_actions<GF2>(B, &A, &A);
    CHECK(hochschild0(B, act, A) == hochschild0_by_enumeration(B, act, A));
    CHECK(dims == hochschild0(B, act, A));
}

TEST_CASE("1-handle output is Reidemeister-stable at n = 1") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram id1 = identity_tangle(2, +1);
    auto base = attach_1_handle(id1, spec);
    // same tangle with a kink pair on one strand (R1+ then R1- elsewhere
    // keeps the framing honest; a single kink changes writhe only)
    TangleDiagram kinked = id1;
    int fresh = kinked.max_arc_label() + 1;
    // splice a positive kink into arc 0: replace its bottom occurrence
    kinked.bottom_arcs[0] = fresh;
    kinked.crossings.push_back({{0, fresh, fresh + 1, fresh + 1}, 3});
    TangleDiagram kinked2 = kinked;
    int f2 = kinked2.max_arc_label() + 1;
    kinked2.bottom_arcs[0] = f2;
    kinked2.crossings.push_back({{fresh, f2 + 1, f2 + 1, f2}, 1});
    kinked2.validate();
    auto wiggled = attach_1_handle(kinked2, spec);
    CHECK(base == wiggled);
}

TEST_CASE("2-handle of the unknot at truncation 0") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram unknot;
    unknot.loops = {0};
    auto pres = attach_2_handle(empty_diagram(), unknot, 0, 0, spec);
    CHECK(pres.generator_dims.total() == 1);
    CHECK(pres.quotient_dims.total() == 1);
    CHECK(pres.quotient_dims.at(0, 0) == 1);
}

TEST_CASE("2-handle of the unknot at truncation 1") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram unknot;
    unknot.loops = {0};
    auto pres = attach_2_handle(empty_diagram(), unknot, 0, 1, spec);
    // levels: (0,0), (1,0), (0,1): generators 1 + 2 + 2
    CHECK(pres.generator_dims.total() == 5);
    // no relations below level 2
    CHECK(pres.quotient_dims.total() == 5);
    CHECK(pres.stabilization_consistent);
    // level-1 classes sit at shifted quantum degrees 0 and 2
    CHECK(pres.quotient_dims.at(0, 2) == 2);
    CHECK(pres.quotient_dims.at(0, 0) == 3);
}

TEST_CASE("2-handle of the unknot at truncation 2: relations appear") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram unknot;
    unknot.loops = {0};
    auto pres = attach_2_handle(empty_diagram(), unknot, 0, 2, spec);
    // levels: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2): 1 + 2•2 + 4•3 = 17
    CHECK(pres.generator_dims.total() == 17);
    CHECK(pres.braid_relation_consistent);
    CHECK(pres.stabilization_consistent);
    // braiding identifies X(x)1 with 1(x)X at each 2-strand level, and the
    // dotted annuli identify level-0 classes with level-2 ones
    CHECK(pres.quotient_dims.total() < pres.generator_dims.total());
    // the undotted annulus kills the image of 1 (epsilon = 0): the class
    // 1(x)1 at level 2 dies only if it is hit, which it is not; instead the
    // relation maps identify and the quotient keeps a finite table
    CHECK(pres.quotient_dims.total() > 0);
}

TEST_CASE("2-handle of the unknot at truncation 3: braid relation on the 3-cable") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram unknot;
    unknot.loops = {0};
    auto pres = attach_2_handle(empty_diagram(), unknot, 0, 3, spec);
    CHECK(pres.braid_relation_consistent);
    CHECK(pres.stabilization_consistent);
}

TEST_CASE("2-handle rejects companions whose cables carry crossings") {
    auto spec = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    TangleDiagram tre = trace_closure(braid_diagram(2, {+1, +1, +1}));
    CHECK_THROWS_AS(attach_2_handle(empty_diagram(), tre, 0, 1, spec), InputError);
    TangleDiagram unknot;
    unknot.loops = {0};
    CHECK_THROWS_AS(attach_2_handle(empty_diagram(), unknot, 1, 1, spec), InputError);
    // truncation 0 needs no relation maps, so both are fine there
    CHECK_NOTHROW(attach_2_handle(empty_diagram(), unknot, 1, 0, spec));
}

TEST_CASE("3-handle quotient dims equal dim minus rank, against the oracle") {
    using F = GFp<3>;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> val(0, 2);
    for (int trial = 0; trial < 15; ++trial) {
        GradedModule mod;
        int d0 = 2 + trial % 3, d1 = 1 + trial % 4;
        mod.dims[{0, 0}] = d0;
        mod.dims[{1, 2}] = d1;
        Handle3Relation<F> rel;
        rel.eps = F(trial % 3);
        SparseMatrix<F> m0(d0, d0), m1(d1, d1);
        for (int r = 0; r < d0; ++r)
            for (int c = 0; c < d0; ++c) m0.set(r, c, F(val(rng)));
        for (int r = 0; r < d1; ++r)
            for (int c = 0; c < d1; ++c) m1.set(r, c, F(val(rng)));
        rel.blocks[{0, 0}] = m0;
        rel.blocks[{1, 2}] = m1;
        auto out = attach_3_handle<F>(mod, {rel});

        auto expect_block = [&](SparseMatrix<F> m, int d) {
            for (int i = 0; i < d; ++i) m.add(i, i, -rel.eps);
            std::vector<std::vector<F>> dense(d, std::vector<F>(d, F::zero()));
            for (int r = 0; r < d; ++r)
                for (const auto& [c, v] : m.row(r).ent) dense[r][c] = v;
            return d - oracle::dense_rank(dense);
        };
        CHECK(out.at(0, 0) == expect_block(m0, d0));
        CHECK(out.at(1, 2) == expect_block(m1, d1));
    }
}

TEST_CASE("3-handle edge cases") {
    using F = GF2;
    GradedModule mod;
    mod.dims[{0, 0}] = 3;
    // empty relation list: unchanged
    CHECK(attach_3_handle<F>(mod, {}).at(0, 0) == 3);
    // identity relation with eps = 1: unchanged
    Handle3Relation<F> idrel;
    idrel.eps = F::one();
    idrel.blocks[{0, 0}] = SparseMatrix<F>::identity(3);
    CHECK(attach_3_handle<F>(mod, {idrel}).at(0, 0) == 3);
    // rank-1 projector with eps = 0 on a 3-dimensional block: quotient dim 2
    Handle3Relation<F> proj;
    proj.eps = F::zero();
    SparseMatrix<F> p(3, 3);
    p.set(0, 0, F::one());
    proj.blocks[{0, 0}] = p;
    CHECK(attach_3_handle<F>(mod, {proj}).at(0, 0) == 2);
}

TEST_CASE("4-handle is the identity") {
    GradedDims dims;
    dims.add(0, 0, 1);
    dims.add(2, 5, 3);
    CHECK(attach_4_handle(dims) == dims);
    GradedDims empty;
    CHECK(attach_4_handle(empty) == empty);
}

TEST_CASE("2-handle presentation runs under the Lee theory") {
    auto lee = FrobeniusSpec<GF2>::make(Theory::Lee);
    TangleDiagram unknot;
    unknot.loops = {0};
    auto pres = attach_2_handle(empty_diagram(), unknot, 0, 2, lee);
    CHECK(pres.braid_relation_consistent);
    CHECK(pres.stabilization_consistent);
    CHECK(pres.quotient_dims.total() > 0);
}

TEST_CASE("1-handle over an odd-characteristic field") {
    auto spec = FrobeniusSpec<GFp<5>>::make(Theory::Khovanov);
    auto dims = attach_1_handle(identity_tangle(2, +1), spec);
    CHECK(dims.total() == 2);
}
