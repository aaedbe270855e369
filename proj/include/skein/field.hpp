#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace skein {

// Exact field scalars. Everything downstream is templated on one of these;
// no floating point anywhere.

struct GF2 {
    uint8_t v = 0;

    constexpr GF2() = default;
    constexpr explicit GF2(int64_t x) : v(static_cast<uint8_t>(((x % 2) + 2) % 2)) {}

    static constexpr GF2 zero() { return GF2{}; }
    static constexpr GF2 one() { return GF2{1}; }
    constexpr bool is_zero() const { return v == 0; }

    constexpr GF2 operator+(GF2 o) const { return GF2{v ^ o.v}; }
    constexpr GF2 operator-(GF2 o) const { return GF2{v ^ o.v}; }
    constexpr GF2 operator-() const { return *this; }
    constexpr GF2 operator*(GF2 o) const { return GF2{static_cast<int64_t>(v & o.v)}; }
    GF2 inverse() const {
        if (v == 0) throw std::domain_error("GF2: inverse of zero");
        return one();
    }
    constexpr bool operator==(const GF2&) const = default;

    std::string str() const { return v ? "1" : "0"; }
    static constexpr const char* name() { return "f2"; }
    static constexpr int characteristic() { return 2; }
};

template <unsigned P>
struct GFp {
    static_assert(P >= 3 && P < 1u << 15, "small odd prime expected");
    uint32_t v = 0;

    constexpr GFp() = default;
    constexpr explicit GFp(int64_t x) {
        int64_t r = x % static_cast<int64_t>(P);
        if (r < 0) r += P;
        v = static_cast<uint32_t>(r);
    }

    static constexpr GFp zero() { return GFp{}; }
    static constexpr GFp one() { return GFp{1}; }
    constexpr bool is_zero() const { return v == 0; }

    constexpr GFp operator+(GFp o) const { return GFp{static_cast<int64_t>(v) + o.v}; }
    constexpr GFp operator-(GFp o) const { return GFp{static_cast<int64_t>(v) - o.v}; }
    constexpr GFp operator-() const { return GFp{-static_cast<int64_t>(v)}; }
    constexpr GFp operator*(GFp o) const { return GFp{static_cast<int64_t>(v) * o.v}; }
    GFp inverse() const {
        if (v == 0) throw std::domain_error("GFp: inverse of zero");
        // Fermat: v^(P-2)
        uint64_t base = v, acc = 1, e = P - 2;
        while (e) {
            if (e & 1) acc = acc * base % P;
            base = base * base % P;
            e >>= 1;
        }
        return GFp{static_cast<int64_t>(acc)};
    }
    constexpr bool operator==(const GFp&) const = default;

    std::string str() const { return std::to_string(v); }
    static std::string name() { return "f" + std::to_string(P); }
    static constexpr int characteristic() { return static_cast<int>(P); }
};

// Rationals on checked 64-bit numerator/denominator. Cube differentials have
// entries in {-1,0,1,h,t}; elimination at desk scale stays far from the bound,
// and we throw rather than wrap if it ever does not.
struct Rat64 {
    int64_t num = 0;
    int64_t den = 1;

    constexpr Rat64() = default;
    explicit Rat64(int64_t n) : num(n), den(1) {}
    Rat64(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    static Rat64 zero() { return Rat64{}; }
    static Rat64 one() { return Rat64{1}; }
    bool is_zero() const { return num == 0; }

    Rat64 operator+(const Rat64& o) const {
        return Rat64{checked(checked_mul(num, o.den), checked_mul(o.num, den), /*add=*/true),
                     checked_mul(den, o.den)};
    }
    Rat64 operator-(const Rat64& o) const {
        return Rat64{checked(checked_mul(num, o.den), checked_mul(o.num, den), /*add=*/false),
                     checked_mul(den, o.den)};
    }
    Rat64 operator-() const { return Rat64{-num, den}; }
    Rat64 operator*(const Rat64& o) const {
        return Rat64{checked_mul(num, o.num), checked_mul(den, o.den)};
    }
    Rat64 inverse() const {
        if (num == 0) throw std::domain_error("Rat64: inverse of zero");
        return Rat64{den, num};
    }
    bool operator==(const Rat64& o) const { return num == o.num && den == o.den; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
    static constexpr const char* name() { return "q"; }
    static constexpr int characteristic() { return 0; }

private:
    static int64_t checked_mul(int64_t a, int64_t b) {
        int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rat64: product overflow");
        return r;
    }
    static int64_t checked(int64_t a, int64_t b, bool add) {
        int64_t r;
        bool bad = add ? __builtin_add_overflow(a, b, &r) : __builtin_sub_overflow(a, b, &r);
        if (bad) throw std::overflow_error("Rat64: sum overflow");
        return r;
    }
    void normalize() {
        if (den == 0) throw std::domain_error("Rat64: zero denominator");
        if (num == 0) {
            den = 1;
            return;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        num /= g;
        den /= g;
    }
};

enum class FieldChoice { F2, F3, F5, F7, Rationals };

inline std::string field_name(FieldChoice c) {
    switch (c) {
        case FieldChoice::F2: return "f2";
        case FieldChoice::F3: return "f3";
        case FieldChoice::F5: return "f5";
        case FieldChoice::F7: return "f7";
        case FieldChoice::Rationals: return "q";
    }
    return "?";
}

inline bool parse_field(const std::string& s, FieldChoice& out) {
    if (s == "f2") out = FieldChoice::F2;
    else if (s == "f3") out = FieldChoice::F3;
    else if (s == "f5") out = FieldChoice::F5;
    else if (s == "f7") out = FieldChoice::F7;
    else if (s == "q") out = FieldChoice::Rationals;
    else return false;
    return true;
}

// Runs fn with a default-constructed scalar of the chosen field as a tag.
template <class Fn>
auto with_field(FieldChoice c, Fn&& fn) {
    switch (c) {
        case FieldChoice::F2: return fn(GF2{});
        case FieldChoice::F3: return fn(GFp<3>{});
        case FieldChoice::F5: return fn(GFp<5>{});
        case FieldChoice::F7: return fn(GFp<7>{});
        case FieldChoice::Rationals: return fn(Rat64{});
    }
    throw std::logic_error("with_field: bad choice");
}

}  // namespace skein
