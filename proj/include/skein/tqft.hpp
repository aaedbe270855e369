#pragma once

#include <string>
#include <vector>

#include "skein/errors.hpp"

namespace skein {

enum class Theory { Khovanov, Lee, BarNatan };

inline std::string theory_name(Theory t) {
    switch (t) {
        case Theory::Khovanov: return "khovanov";
        case Theory::Lee: return "lee";
        case Theory::BarNatan: return "bar-natan";
    }
    return "?";
}

inline bool parse_theory(const std::string& s, Theory& out) {
    if (s == "khovanov") out = Theory::Khovanov;
    else if (s == "lee") out = Theory::Lee;
    else if (s == "bar-natan") out = Theory::BarNatan;
    else return false;
    return true;
}

// Rank-2 Frobenius algebra A = k{1, X} with X^2 = h X + t, counit
// eps(1) = 0, eps(X) = 1, Delta(1) = 1(x)X + X(x)1 - h 1(x)1,
// Delta(X) = X(x)X + t 1(x)1. Labels: 0 = basis vector 1, 1 = basis vector X.
// Quantum degrees deg(1) = +1, deg(X) = -1; the grading is honored only
// when h = t = 0.
template <class F>
struct FrobeniusSpec {
    Theory theory = Theory::Khovanov;
    F h = F::zero();
    F t = F::zero();

    static FrobeniusSpec make(Theory th) {
        FrobeniusSpec s;
        s.theory = th;
        switch (th) {
            case Theory::Khovanov: break;
            case Theory::Lee: s.t = F::one(); break;
            case Theory::BarNatan: s.h = F::one(); break;
        }
        return s;
    }

    bool graded() const { return h.is_zero() && t.is_zero(); }

    // m(a, b) as coefficients on {1, X}: result[label] = coefficient
    void multiply(int a, int b, F out[2]) const {
        out[0] = F::zero();
        out[1] = F::zero();
        if (a == 0 && b == 0) out[0] = F::one();
        else if (a + b == 1) out[1] = F::one();
        else {
            out[1] = h;
            out[0] = t;
        }
    }

    // Delta(a): list of (label1, label2, coefficient)
    std::vector<std::tuple<int, int, F>> comultiply(int a) const {
        if (a == 0)
            return {{0, 1, F::one()}, {1, 0, F::one()}, {0, 0, -h}};
        return {{1, 1, F::one()}, {0, 0, t}};
    }

    F counit(int a) const { return a == 0 ? F::zero() : F::one(); }
    // unit: 1 with coefficient one
    F unit_coeff(int a) const { return a == 0 ? F::one() : F::zero(); }
    // multiplication by X: dot(a) = list of (label, coefficient)
    std::vector<std::pair<int, F>> dot(int a) const {
        if (a == 0) return {{1, F::one()}};
        std::vector<std::pair<int, F>> out;
        if (!h.is_zero()) out.push_back({1, h});
        if (!t.is_zero()) out.push_back({0, t});
        return out;
    }

    static int qdeg(int a) { return a == 0 ? +1 : -1; }
};

// eps(X^d): evaluation of a genus-0 closed surface with d dots.
template <class F>
F evaluate_closed_surface(int dots, const FrobeniusSpec<F>& spec) {
    if (dots < 0) throw InputError("evaluate_closed_surface: negative dot count");
    // X^d = a 1 + b X
    F a = F::one(), b = F::zero();  // X^0
    for (int i = 0; i < dots; ++i) {
        F na = b * spec.t;
        F nb = a + b * spec.h;
        a = na;
        b = nb;
    }
    return b;
}

enum class EventKind { Birth, Death, Merge, Split, Dot };

// Elementary cobordism event between closed diagrams that agree outside a
// small disk. Arcs name the affected circles in the source/target diagrams.
struct CobordismEvent {
    EventKind kind;
    int arc_a = -1;  // birth: fresh loop arc in target; death/dot: a source arc
    int arc_b = -1;  // saddle: second source arc
};

// Exhaustive Frobenius axiom checks on the 2-element basis.
template <class F>
bool frobenius_axioms_hold(const FrobeniusSpec<F>& spec) {
    auto mul = [&](int a, int b, F out[2]) { spec.multiply(a, b, out); };
    // associativity: (ab)c = a(bc)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                F lhs[2] = {F::zero(), F::zero()}, rhs[2] = {F::zero(), F::zero()};
                F ab[2], bc[2];
                mul(a, b, ab);
                mul(b, c, bc);
                for (int m = 0; m < 2; ++m) {
                    if (!ab[m].is_zero()) {
                        F t2[2];
                        mul(m, c, t2);
                        for (int k = 0; k < 2; ++k) lhs[k] = lhs[k] + ab[m] * t2[k];
                    }
                    if (!bc[m].is_zero()) {
                        F t2[2];
                        mul(a, m, t2);
                        for (int k = 0; k < 2; ++k) rhs[k] = rhs[k] + bc[m] * t2[k];
                    }
                }
                if (!(lhs[0] == rhs[0] && lhs[1] == rhs[1])) return false;
            }
    // unit
    for (int a = 0; a < 2; ++a) {
        F out[2];
        mul(0, a, out);
        if (!(out[a] == F::one() && out[1 - a].is_zero())) return false;
        mul(a, 0, out);
        if (!(out[a] == F::one() && out[1 - a].is_zero())) return false;
    }
    // counit axiom: (eps (x) id) Delta = id
    for (int a = 0; a < 2; ++a) {
        F acc[2] = {F::zero(), F::zero()};
        for (const auto& [l1, l2, c] : spec.comultiply(a)) acc[l2] = acc[l2] + spec.counit(l1) * c;
        if (!(acc[a] == F::one() && acc[1 - a].is_zero())) return false;
    }
    // counit nondegeneracy: pairing (a,b) -> eps(ab) invertible
    {
        F p[2][2];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                F ab[2];
                mul(a, b, ab);
                p[a][b] = ab[1];  // eps picks the X coefficient
            }
        F det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        if (det.is_zero()) return false;
    }
    // Frobenius condition: Delta m = (m (x) id)(id (x) Delta)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            F lhs[2][2] = {{F::zero(), F::zero()}, {F::zero(), F::zero()}};
            F rhs[2][2] = {{F::zero(), F::zero()}, {F::zero(), F::zero()}};
            F ab[2];
            mul(a, b, ab);
            for (int m = 0; m < 2; ++m)
                if (!ab[m].is_zero())
                    for (const auto& [l1, l2, c] : spec.comultiply(m))
                        lhs[l1][l2] = lhs[l1][l2] + ab[m] * c;
            for (const auto& [l1, l2, c] : spec.comultiply(b)) {
                F am[2];
                mul(a, l1, am);
                for (int k = 0; k < 2; ++k)
                    if (!am[k].is_zero()) rhs[k][l2] = rhs[k][l2] + c * am[k];
            }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (!(lhs[i][j] == rhs[i][j])) return false;
        }
    return true;
}

}  // namespace skein
