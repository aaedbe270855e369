#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skein/field.hpp"
#include "skein/tqft.hpp"

using namespace skein;

namespace {

template <class F>
void axioms_all_theories() {
    for (Theory th : {Theory::Khovanov, Theory::Lee, Theory::BarNatan})
        CHECK(frobenius_axioms_hold(FrobeniusSpec<F>::make(th)));
}

}  // namespace

TEST_CASE("Frobenius axioms hold for all specs over several fields") {
    axioms_all_theories<GF2>();
    axioms_all_theories<GFp<3>>();
    axioms_all_theories<GFp<7>>();
    axioms_all_theories<Rat64>();
}

TEST_CASE("only the Khovanov spec is graded") {
    CHECK(FrobeniusSpec<Rat64>::make(Theory::Khovanov).graded());
    CHECK(!FrobeniusSpec<Rat64>::make(Theory::Lee).graded());
    CHECK(!FrobeniusSpec<Rat64>::make(Theory::BarNatan).graded());
}

TEST_CASE("sphere evaluations eps(X^d)") {
    auto kh = FrobeniusSpec<Rat64>::make(Theory::Khovanov);
    auto lee = FrobeniusSpec<Rat64>::make(Theory::Lee);
    auto bn = FrobeniusSpec<Rat64>::make(Theory::BarNatan);

    CHECK(evaluate_closed_surface(0, kh) == Rat64::zero());
    CHECK(evaluate_closed_surface(1, kh) == Rat64::one());
    CHECK(evaluate_closed_surface(2, kh) == Rat64::zero());
    CHECK(evaluate_closed_surface(3, kh) == Rat64::zero());
    CHECK(evaluate_closed_surface(4, kh) == Rat64::zero());

    // Lee: X^2 = 1
    CHECK(evaluate_closed_surface(0, lee) == Rat64::zero());
    CHECK(evaluate_closed_surface(1, lee) == Rat64::one());
    CHECK(evaluate_closed_surface(2, lee) == Rat64::zero());
    CHECK(evaluate_closed_surface(3, lee) == Rat64::one());
    CHECK(evaluate_closed_surface(4, lee) == Rat64::zero());

    // Bar-Natan: X^2 = X
    CHECK(evaluate_closed_surface(0, bn) == Rat64::zero());
    for (int d = 1; d <= 4; ++d) CHECK(evaluate_closed_surface(d, bn) == Rat64::one());
}

TEST_CASE("merge of X with X follows the deformation") {
    auto kh = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    GF2 out[2];
    kh.multiply(1, 1, out);
    CHECK(out[0].is_zero());
    CHECK(out[1].is_zero());

    auto lee = FrobeniusSpec<GF2>::make(Theory::Lee);
    lee.multiply(1, 1, out);
    CHECK(out[0] == GF2::one());  // X.X = 1 in the Lee theory
    CHECK(out[1].is_zero());
}

TEST_CASE("tube relation: merge after split is multiplication by 2X - h") {
    auto check_theory = [](Theory th) {
        auto spec = FrobeniusSpec<Rat64>::make(th);
        for (int a = 0; a < 2; ++a) {
            // m(Delta(a))
            Rat64 acc[2] = {Rat64::zero(), Rat64::zero()};
            for (const auto& [l1, l2, c] : spec.comultiply(a)) {
                Rat64 out[2];
                spec.multiply(l1, l2, out);
                for (int k = 0; k < 2; ++k) acc[k] = acc[k] + c * out[k];
            }
            // (2X - h) * a
            Rat64 expect[2] = {Rat64::zero(), Rat64::zero()};
            Rat64 two(2);
            Rat64 xa[2];
            spec.multiply(1, a, xa);  // X * a
            for (int k = 0; k < 2; ++k) expect[k] = two * xa[k];
            expect[a] = expect[a] - spec.h;
            CHECK(acc[0] == expect[0]);
            CHECK(acc[1] == expect[1]);
        }
    };
    check_theory(Theory::Khovanov);
    check_theory(Theory::Lee);
    check_theory(Theory::BarNatan);

    // characteristic 2, Khovanov spec: the tube is the zero map
    auto spec2 = FrobeniusSpec<GF2>::make(Theory::Khovanov);
    for (int a = 0; a < 2; ++a) {
        GF2 acc[2] = {GF2::zero(), GF2::zero()};
        for (const auto& [l1, l2, c] : spec2.comultiply(a)) {
            GF2 out[2];
            spec2.multiply(l1, l2, out);
            for (int k = 0; k < 2; ++k) acc[k] = acc[k] + c * out[k];
        }
        CHECK(acc[0].is_zero());
        CHECK(acc[1].is_zero());
    }
}

TEST_CASE("Khovanov structure maps are degree-homogeneous") {
    auto spec = FrobeniusSpec<Rat64>::make(Theory::Khovanov);
    // merge drops total degree by 1
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Rat64 out[2];
            spec.multiply(a, b, out);
            for (int k = 0; k < 2; ++k)
                if (!out[k].is_zero())
                    CHECK(FrobeniusSpec<Rat64>::qdeg(k) ==
                          FrobeniusSpec<Rat64>::qdeg(a) + FrobeniusSpec<Rat64>::qdeg(b) - 1);
        }
    // split raises by ... -1 relative to the tensor grading
    for (int a = 0; a < 2; ++a)
        for (const auto& [l1, l2, c] : spec.comultiply(a))
            if (!c.is_zero())
                CHECK(FrobeniusSpec<Rat64>::qdeg(l1) + FrobeniusSpec<Rat64>::qdeg(l2) ==
                      FrobeniusSpec<Rat64>::qdeg(a) - 1);
}
