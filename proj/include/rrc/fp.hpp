#pragma once

// Small dense polynomial arithmetic over Z/pZ for word-size primes, plus
// sound one-sided certificates (a coprime/squarefree answer mod p with
// preserved leading terms is conclusive over Q; the other direction retries
// or falls back to exact arithmetic).

#include <cstdint>
#include <vector>

#include "rational.hpp"

namespace rrc::fp {

using Poly = std::vector<std::uint32_t>; // coefficients of u^i, trailing nonzero

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline std::uint32_t addm(std::uint64_t a, std::uint64_t b, std::uint32_t m) {
    return static_cast<std::uint32_t>((a + b) % m);
}
inline std::uint32_t subm(std::uint64_t a, std::uint64_t b, std::uint32_t m) {
    return static_cast<std::uint32_t>((a + m - b % m) % m);
}
inline std::uint32_t mulm(std::uint64_t a, std::uint64_t b, std::uint32_t m) {
    return static_cast<std::uint32_t>(a * b % m);
}
inline std::uint32_t powm(std::uint64_t a, std::uint64_t e, std::uint32_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}
inline std::uint32_t invm(std::uint32_t a, std::uint32_t p) { return powm(a, p - 2, p); }

inline std::uint32_t rat_mod(const Rat& c, std::uint32_t p, bool& ok) {
    std::uint32_t den = static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_den().get_mpz_t(), p));
    if (den == 0) {
        ok = false;
        return 0;
    }
    std::uint32_t num = static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_num().get_mpz_t(), p));
    return mulm(num, invm(den, p), p);
}

inline Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

inline Poly rem(Poly a, const Poly& b, std::uint32_t p) {
    if (b.empty()) throw Error("mod-p division by zero");
    std::uint32_t inv = invm(b.back(), p);
    while (deg(a) >= deg(b)) {
        std::uint32_t f = mulm(a.back(), inv, p);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = subm(a[off + i], mulm(f, b[i], p), p);
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline Poly quo(const Poly& a, const Poly& b, std::uint32_t p) {
    if (b.empty()) throw Error("mod-p division by zero");
    Poly r = a, q(a.size(), 0);
    std::uint32_t inv = invm(b.back(), p);
    while (deg(r) >= deg(b)) {
        std::uint32_t f = mulm(r.back(), inv, p);
        size_t off = r.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) r[off + i] = subm(r[off + i], mulm(f, b[i], p), p);
        trim(r);
        if (r.empty()) break;
    }
    trim(q);
    return q;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint32_t inv = invm(a.back(), p);
        for (auto& c : a) c = mulm(c, inv, p);
    }
    return a;
}

inline Poly derivative(const Poly& a, std::uint32_t p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mulm(a[i], static_cast<std::uint32_t>(i % p), p);
    trim(r);
    return r;
}

inline Poly squarefree(const Poly& a, std::uint32_t p) {
    Poly d = derivative(a, p);
    if (d.empty()) return a;
    Poly g = gcd(a, d, p);
    if (deg(g) <= 0) return a;
    return quo(a, g, p);
}

inline bool divides(const Poly& d, const Poly& a, std::uint32_t p) {
    if (a.empty()) return true;
    if (d.empty()) return false;
    return rem(a, d, p).empty();
}

inline std::uint32_t eval(const Poly& a, std::uint32_t x, std::uint32_t p) {
    std::uint64_t acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = (acc * x + a[i]) % p;
    return static_cast<std::uint32_t>(acc);
}

constexpr std::uint32_t kProbePrime = 1000003;

} // namespace rrc::fp
