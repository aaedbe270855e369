#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skein/diagram.hpp"
#include "skein/jones.hpp"

using namespace skein;

namespace {

Laurent from_terms(std::vector<std::pair<int, int64_t>> terms) {
    Laurent p;
    for (auto [e, c] : terms) p.add(e, c);
    return p;
}

TangleDiagram unknot0() {
    TangleDiagram d;
    d.loops = {0};
    return d;
}

}  // namespace

TEST_CASE("jones of the unknot and unlinks") {
    CHECK(jones(unknot0()) == loop_value());
    TangleDiagram two = disjoint_union(unknot0(), unknot0());
    CHECK(jones(two) == loop_value() * loop_value());
    TangleDiagram three = disjoint_union(two, unknot0());
    CHECK(jones(three) == loop_value() * loop_value() * loop_value());
}

TEST_CASE("jones of kinked unknots") {
    TangleDiagram pos_kink;
    pos_kink.crossings.push_back({{0, 0, 1, 1}, 3});
    pos_kink.validate();
    CHECK(pos_kink.writhe() == 1);
    CHECK(jones(pos_kink) == loop_value());

    TangleDiagram neg_kink;
    neg_kink.crossings.push_back({{0, 1, 1, 0}, 1});
    neg_kink.validate();
    CHECK(neg_kink.writhe() == -1);
    CHECK(jones(neg_kink) == loop_value());
}

TEST_CASE("jones of the positive Hopf link (frozen bracket value)") {
    TangleDiagram hopf = trace_closure(braid_diagram(2, {+1, +1}));
    CHECK(jones(hopf) == from_terms({{0, 1}, {2, 1}, {4, 1}, {6, 1}}));
    // negative Hopf link is the mirror
    TangleDiagram mhopf = trace_closure(braid_diagram(2, {-1, -1}));
    CHECK(jones(mhopf) == from_terms({{0, 1}, {-2, 1}, {-4, 1}, {-6, 1}}));
}

TEST_CASE("jones of the trefoils (frozen)") {
    TangleDiagram rh = trace_closure(braid_diagram(2, {+1, +1, +1}));
    CHECK(jones(rh) == from_terms({{1, 1}, {3, 1}, {5, 1}, {9, -1}}));
    TangleDiagram lh = trace_closure(braid_diagram(2, {-1, -1, -1}));
    CHECK(jones(lh) == from_terms({{-1, 1}, {-3, 1}, {-5, 1}, {-9, -1}}));
}

TEST_CASE("jones of the figure-eight (frozen)") {
    TangleDiagram f8 = trace_closure(braid_diagram(3, {+1, -2, +1, -2}));
    CHECK(components(f8).size() == 1);
    CHECK(f8.writhe() == 0);
    CHECK(jones(f8) == from_terms({{-5, 1}, {5, 1}}));
}

TEST_CASE("jones is invariant under kink insertion on corpus diagrams") {
    // writhe normalization: adding both kinds of kink keeps the value
    TangleDiagram hopf = trace_closure(braid_diagram(2, {+1, +1}));
    Laurent base = jones(hopf);
    // attach a positive kink to arc 0 by splicing the template in
    TangleDiagram kinked = hopf;
    int fresh = kinked.max_arc_label() + 1;
    // replace one occurrence of arc 0 by fresh, add kink crossing
    for (auto& x : kinked.crossings)
        for (int& a : x.slot)
            if (a == 0) {
                a = fresh;
                goto done;
            }
done:
    kinked.crossings.push_back({{0, fresh, fresh + 1, fresh + 1}, 3});
    kinked.validate();
    CHECK(kinked.writhe() == hopf.writhe() + 1);
    CHECK(jones(kinked) == base);
}

TEST_CASE("jones respects the crossing cap") {
    TangleDiagram big = trace_closure(
        braid_diagram(2, {+1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1}));
    CHECK_THROWS_AS(jones(big), CapError);
}
