#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace skein {

// Laurent polynomial in q with integer coefficients.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(int64_t c, int exp = 0) {
        if (c != 0) coef_[exp] = c;
    }

    static Laurent q_power(int exp) { return Laurent(1, exp); }

    void add(int exp, int64_t c) {
        if (c == 0) return;
        auto it = coef_.find(exp);
        if (it == coef_.end()) coef_[exp] = c;
        else {
            it->second += c;
            if (it->second == 0) coef_.erase(it);
        }
    }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coef_) r.add(e, c);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coef_) r.add(e, -c);
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (const auto& [e1, c1] : coef_)
            for (const auto& [e2, c2] : o.coef_) r.add(e1 + e2, c1 * c2);
        return r;
    }

    bool is_zero() const { return coef_.empty(); }
    bool operator==(const Laurent&) const = default;
    const std::map<int, int64_t>& coefficients() const { return coef_; }

    std::string str() const {
        if (coef_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : coef_) {
            if (!first) s += c >= 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            int64_t a = c >= 0 ? c : -c;
            if (a != 1 || e == 0) s += std::to_string(a);
            if (e != 0) {
                if (a != 1) s += " ";
                s += "q^" + std::to_string(e);
            }
            first = false;
        }
        return s;
    }

private:
    std::map<int, int64_t> coef_;
};

inline Laurent loop_value() {
    Laurent v;
    v.add(1, 1);
    v.add(-1, 1);
    return v;  // q + q^-1
}

}  // namespace skein
