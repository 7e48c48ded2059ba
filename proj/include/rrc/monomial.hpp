#pragma once

// Exponent vectors and monomial orders.
//
// The canonical order used for polynomial storage is grevlex over the full
// slot range with the natural slot priority.  The Groebner engine additionally
// uses the block elimination order grevlex(x) > grevlex(u, y), optionally with
// a permuted priority inside the x block.

#include <cstdint>
#include <numeric>
#include <vector>

#include "context.hpp"

namespace rrc {

struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(int slots) : e(slots, 0) {}

    static Monomial unit(int slots, int slot, std::uint32_t k = 1) {
        Monomial m(slots);
        m.e[slot] = k;
        return m;
    }

    int slots() const { return static_cast<int>(e.size()); }

    std::uint32_t deg() const { return std::accumulate(e.begin(), e.end(), 0u); }

    std::uint32_t deg_range(int lo, int hi) const {
        std::uint32_t d = 0;
        for (int s = lo; s < hi; ++s) d += e[s];
        return d;
    }

    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (int s = 0; s < slots(); ++s) r.e[s] += o.e[s];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (int s = 0; s < slots(); ++s)
            if (e[s] > o.e[s]) return false;
        return true;
    }

    // this / o; caller guarantees divisibility
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (int s = 0; s < slots(); ++s) r.e[s] -= o.e[s];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (int s = 0; s < r.slots(); ++s)
            if (b.e[s] > r.e[s]) r.e[s] = b.e[s];
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        for (int s = 0; s < a.slots(); ++s)
            if (a.e[s] && b.e[s]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

// grevlex on the slot range [lo, hi) with natural priority slot lo > lo+1 > ...
// Returns <0, 0, >0 as a <, ==, > b.
inline int cmp_grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    std::uint32_t da = a.deg_range(lo, hi), db = b.deg_range(lo, hi);
    if (da != db) return da < db ? -1 : 1;
    for (int s = hi - 1; s >= lo; --s) {
        if (a.e[s] != b.e[s]) return a.e[s] > b.e[s] ? -1 : 1;
    }
    return 0;
}

// grevlex over explicitly listed slots, prio[0] most significant
inline int cmp_grevlex_prio(const Monomial& a, const Monomial& b, const std::vector<int>& prio) {
    std::uint32_t da = 0, db = 0;
    for (int s : prio) {
        da += a.e[s];
        db += b.e[s];
    }
    if (da != db) return da < db ? -1 : 1;
    for (auto it = prio.rbegin(); it != prio.rend(); ++it) {
        if (a.e[*it] != b.e[*it]) return a.e[*it] > b.e[*it] ? -1 : 1;
    }
    return 0;
}

inline int cmp_lex_prio(const Monomial& a, const Monomial& b, const std::vector<int>& prio) {
    for (int s : prio) {
        if (a.e[s] != b.e[s]) return a.e[s] < b.e[s] ? -1 : 1;
    }
    return 0;
}

// Canonical full-context grevlex.
inline int cmp_canonical(const Monomial& a, const Monomial& b) {
    return cmp_grevlex_range(a, b, 0, a.slots());
}

struct OrderSpec {
    enum Kind { Grevlex, Lex, BlockElim } kind = Grevlex;
    // Priority permutation of the x block (values are x indices 0..n-1).
    // Empty means the natural order x_1 > ... > x_n.
    std::vector<int> xperm;

    static OrderSpec block(std::vector<int> xperm = {}) { return {BlockElim, std::move(xperm)}; }
    static OrderSpec grevlex_full() { return {Grevlex, {}}; }
    static OrderSpec lex_full() { return {Lex, {}}; }
};

// Order evaluator bound to a context.
class MonoCmp {
public:
    MonoCmp() = default;
    MonoCmp(const CtxPtr& ctx, const OrderSpec& spec) : spec_(spec) {
        int n = ctx->n();
        xprio_.resize(n);
        if (spec.xperm.empty()) {
            std::iota(xprio_.begin(), xprio_.end(), 0);
        } else {
            if (static_cast<int>(spec.xperm.size()) != n)
                throw Error("x-order permutation has wrong length");
            std::vector<bool> seen(n, false);
            for (int i : spec.xperm) {
                if (i < 0 || i >= n || seen[i]) throw Error("invalid x-order permutation");
                seen[i] = true;
            }
            xprio_ = spec.xperm;
        }
        rest_lo_ = n;
        rest_hi_ = ctx->slots();
        full_prio_ = xprio_;
        for (int s = rest_lo_; s < rest_hi_; ++s) full_prio_.push_back(s);
    }

    int cmp(const Monomial& a, const Monomial& b) const {
        switch (spec_.kind) {
            case OrderSpec::Grevlex:
                return cmp_grevlex_prio(a, b, full_prio_);
            case OrderSpec::Lex:
                return cmp_lex_prio(a, b, full_prio_);
            case OrderSpec::BlockElim: {
                int c = cmp_grevlex_prio(a, b, xprio_);
                if (c) return c;
                return cmp_grevlex_range(a, b, rest_lo_, rest_hi_);
            }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

    const OrderSpec& spec() const { return spec_; }
    const std::vector<int>& xprio() const { return xprio_; }

private:
    OrderSpec spec_;
    std::vector<int> xprio_;
    std::vector<int> full_prio_;
    int rest_lo_ = 0, rest_hi_ = 0;
};

} // namespace rrc
