#pragma once

// Dense univariate polynomials over Q and exact real-root isolation
// (Descartes / bisection with rational endpoints).  This is the counting
// oracle everything else is validated against.

#include <algorithm>
#include <vector>

#include "fp.hpp"
#include "poly.hpp"

namespace rrc {

struct UniPoly {
    std::vector<Rat> c; // c[i] = coefficient of u^i, trailing entry nonzero

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rat& x) { return UniPoly({x}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& lc() const {
        if (is_zero()) throw Error("lc of zero");
        return c.back();
    }
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Rat(0); }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        }
        return UniPoly(std::move(r));
    }

    friend UniPoly operator*(const UniPoly& a, const Rat& s) {
        UniPoly r(a);
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }

    UniPoly derivative() const {
        if (c.size() <= 1) return zero();
        std::vector<Rat> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat(static_cast<long>(i));
        return UniPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    int sign_at(const Rat& x) const { return sign(eval(x)); }

    // quotient/remainder over the field Q
    friend std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw Error("univariate division by zero");
        UniPoly r = a, q;
        q.c.assign(std::max<size_t>(a.c.size(), 1), Rat(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            Rat f = r.lc() / b.lc();
            q.c[k] = f;
            for (int i = 0; i <= b.degree(); ++i) r.c[i + k] -= f * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * (1 / lc());
    }

    friend UniPoly uni_gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            (void)q;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    // one-sided mod-p certificate: preserved leading term and a constant
    // gcd with the derivative mod p prove squarefreeness over Q
    bool certified_squarefree() const {
        if (degree() <= 0) return true;
        for (std::uint32_t p : {fp::kProbePrime, 1000033u}) {
            fp::Poly im(c.size());
            bool ok = true;
            for (size_t i = 0; i < c.size() && ok; ++i) im[i] = fp::rat_mod(c[i], p, ok);
            if (!ok || im.back() == 0) continue;
            if (fp::deg(fp::gcd(im, fp::derivative(im, p), p)) == 0) return true;
            return false; // nonconstant modular gcd: inconclusive, treat as no
        }
        return false;
    }

    UniPoly squarefree() const {
        if (is_zero()) throw Error("squarefree of zero");
        if (degree() == 0) return constant(Rat(1));
        if (certified_squarefree()) return monic();
        UniPoly g = uni_gcd(*this, derivative());
        return divrem(*this, g).first.monic();
    }

    // primitive integer coefficients, leading sign preserved
    std::vector<Int> int_coeffs() const {
        Int den(1);
        for (auto& x : c) den = lcm(den, x.get_den());
        std::vector<Int> z(c.size());
        Int content(0);
        for (size_t i = 0; i < c.size(); ++i) {
            z[i] = c[i].get_num() * (den / c[i].get_den());
            content = gcd(content, z[i]);
        }
        if (content > 1)
            for (auto& v : z) v /= content;
        return z;
    }

    // --- conversions -----------------------------------------------------------

    static UniPoly from_multipoly(const MultiPoly& p, int slot) {
        std::vector<Rat> cs(static_cast<size_t>(std::max(p.degree_in(slot), 0)) + 1, Rat(0));
        for (auto& t : p.terms()) {
            for (int s = 0; s < p.ctx()->slots(); ++s)
                if (s != slot && t.m.e[s])
                    throw Error("from_multipoly: polynomial involves other variables");
            cs[t.m.e[slot]] += t.c;
        }
        UniPoly r(std::move(cs));
        return r;
    }

    MultiPoly to_multipoly(const CtxPtr& ctx, int slot) const {
        std::vector<MultiPoly::Term> ts;
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) ts.push_back({Monomial::unit(ctx->slots(), slot, static_cast<std::uint32_t>(i)), c[i]});
        return MultiPoly::from_terms(ctx, std::move(ts));
    }
};

// pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b
inline UniPoly uni_prem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("prem by zero");
    UniPoly r = a;
    int steps = a.degree() - b.degree() + 1, done = 0;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rat lr = r.lc();
        r = r * b.lc();
        for (int i = 0; i <= b.degree(); ++i) r.c[static_cast<size_t>(i + k)] -= lr * b.c[static_cast<size_t>(i)];
        r.trim();
        ++done;
    }
    for (; done < steps; ++done) r = r * b.lc();
    return r;
}

// Principal subresultant coefficients (determinant convention) of (P, Q),
// deg P > deg Q >= 0, via the subresultant polynomial remainder sequence.
// Returned vector has size deg P; entry j is sres_j.
inline std::vector<Rat> psc_chain_prs(const UniPoly& P, const UniPoly& Q) {
    int p = P.degree(), q = Q.degree();
    if (P.is_zero() || p <= q || q < 0) throw Error("psc_chain_prs: need deg P > deg Q >= 0");
    std::vector<Rat> sres(static_cast<size_t>(p), Rat(0));
    sres[static_cast<size_t>(q)] = rat_pow(Q.lc(), static_cast<unsigned>(p - q));
    if (q == 0) {
        // S_0 is determined by the top convention alone
        return sres;
    }
    Rat s = rat_pow(Q.lc(), static_cast<unsigned>(p - q));
    UniPoly A = Q;
    UniPoly B = uni_prem(P, -Q);
    while (true) {
        if (B.is_zero()) break;
        int d = A.degree(), e = B.degree();
        sres[static_cast<size_t>(d - 1)] = B.coeff(d - 1); // zero when defective
        UniPoly C;
        if (e < d - 1) {
            // S_e = lc(B)^(d-1-e) B / s^(d-1-e), exact
            Rat f = rat_pow(B.lc(), static_cast<unsigned>(d - 1 - e)) /
                    rat_pow(s, static_cast<unsigned>(d - 1 - e));
            C = B * f;
            sres[static_cast<size_t>(e)] = C.lc();
        } else {
            C = B;
        }
        if (e == 0) break;
        UniPoly nb = uni_prem(A, -B);
        Rat div = rat_pow(s, static_cast<unsigned>(d - e)) * A.lc();
        B = nb * (1 / div);
        A = C;
        s = A.lc();
    }
    return sres;
}

struct IsolatingInterval {
    Rat lo, hi;
    bool exact; // lo == hi, the root is rational

    Rat mid() const { return exact ? lo : (lo + hi) / 2; }
};

namespace detail {

inline int var_count(const std::vector<Int>& a) {
    int v = 0, last = 0;
    for (auto& x : a) {
        int s = sign(x);
        if (!s) continue;
        if (last && s != last) ++v;
        last = s;
    }
    return v;
}

// p(x+1), integer coefficients, in place
inline void shift1(std::vector<Int>& a) {
    int d = static_cast<int>(a.size()) - 1;
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) a[j] += a[j + 1];
}

// Descartes bound for the number of roots of p in (0,1)
inline int descartes01(const std::vector<Int>& a) {
    std::vector<Int> r(a.rbegin(), a.rend()); // x^d p(1/x)
    shift1(r);                                // then x -> x+1
    return var_count(r);
}

struct VcaNode {
    Int c;
    unsigned k;
    std::vector<Int> p; // polynomial on the normalized (0,1) window
};

// isolate roots of the squarefree integer polynomial q inside (0,1);
// intervals are emitted as dyadic sub-windows (c/2^k, (c+1)/2^k)
inline void isolate01(std::vector<Int> q, std::vector<std::pair<Rat, Rat>>& out,
                      std::vector<Rat>& exact_out) {
    std::vector<VcaNode> stack;
    stack.push_back({Int(0), 0u, std::move(q)});
    while (!stack.empty()) {
        VcaNode node = std::move(stack.back());
        stack.pop_back();
        int v = descartes01(node.p);
        Rat width = make_rat(Int(1), int_pow(Int(2), node.k));
        Rat lo = Rat(node.c) * width, hi = Rat(node.c + 1) * width;
        if (v == 0) continue;
        if (v == 1) {
            out.push_back({lo, hi});
            continue;
        }
        // split: q0 = 2^d q(x/2) on the left half, shift for the right half
        int d = static_cast<int>(node.p.size()) - 1;
        std::vector<Int> q0(node.p);
        for (int i = 0; i <= d; ++i) q0[i] *= int_pow(Int(2), static_cast<unsigned>(d - i));
        // root exactly at the midpoint must be deflated, or windows shrinking
        // onto an endpoint root would never reach Descartes count 0
        Int at1(0);
        for (auto& x : q0) at1 += x;
        if (at1 == 0) {
            exact_out.push_back((lo + hi) / 2);
            std::vector<Int> q(d); // q0 / (x - 1), exact synthetic division
            Int carry(0);
            for (int i = d; i >= 1; --i) {
                carry += q0[i];
                q[i - 1] = carry;
            }
            q0 = std::move(q);
        }
        std::vector<Int> q1(q0);
        shift1(q1);
        stack.push_back({node.c * 2 + 1, node.k + 1, std::move(q1)});
        stack.push_back({node.c * 2, node.k + 1, std::move(q0)});
    }
}

} // namespace detail

// Cauchy root bound: all real roots lie in (-B, B)
inline Rat cauchy_bound(const std::vector<Int>& a) {
    Int m(0);
    for (size_t i = 0; i + 1 < a.size(); ++i) m = std::max(m, Int(abs(a[i])));
    Rat b = Rat(1) + make_rat(m, abs(a.back()));
    return Rat(rat_floor(b) + 1);
}

// Disjoint isolating intervals, one per distinct real root of the squarefree
// part, sorted ascending.
inline std::vector<IsolatingInterval> isolate_real_roots(const UniPoly& p_in) {
    if (p_in.is_zero()) throw Error("isolate_real_roots: zero polynomial");
    UniPoly p = p_in.squarefree();
    if (p.degree() <= 0) return {};
    std::vector<Int> a = p.int_coeffs();
    std::vector<IsolatingInterval> roots;
    // root at 0
    if (a[0] == 0) {
        roots.push_back({Rat(0), Rat(0), true});
        a.erase(a.begin());
        // squarefree => only a single factor of x
    }
    if (a.size() <= 1) return roots;
    Rat bound = cauchy_bound(a);
    Int C = rat_floor(bound); // integer, roots in (-C, C)

    auto isolate_side = [&](bool negative) {
        std::vector<Int> q(a);
        if (negative)
            for (size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
        // map (0, C) to (0,1): q(Cx), coefficients q[i] *= C^i
        Int pw(1);
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] *= pw;
            pw *= C;
        }
        std::vector<std::pair<Rat, Rat>> iv;
        std::vector<Rat> ex;
        detail::isolate01(std::move(q), iv, ex);
        for (auto& [lo, hi] : iv) {
            Rat L = lo * Rat(C), H = hi * Rat(C);
            if (negative)
                roots.push_back({-H, -L, false});
            else
                roots.push_back({L, H, false});
        }
        for (auto& r : ex) {
            Rat v = r * Rat(C);
            if (negative) v = -v;
            roots.push_back({v, v, true});
        }
    };
    isolate_side(false);
    isolate_side(true);

    // A window endpoint may coincide with a neighbouring exact root; shrink
    // until both endpoints carry a genuine sign.  At a simple root the sign
    // immediately to the right is sign(p'), to the left -sign(p').
    UniPoly dp = p.derivative();
    for (auto& iv : roots) {
        if (iv.exact) continue;
        while (true) {
            int slo = p.sign_at(iv.lo), shi = p.sign_at(iv.hi);
            if (slo != 0 && shi != 0) break;
            Rat m = (iv.lo + iv.hi) / 2;
            int sm = p.sign_at(m);
            if (sm == 0) { // the interior root itself is the midpoint
                iv.lo = iv.hi = m;
                iv.exact = true;
                break;
            }
            int shi_eff = shi != 0 ? shi : -dp.sign_at(iv.hi);
            if (sm == shi_eff)
                iv.hi = m;
            else
                iv.lo = m;
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const IsolatingInterval& x, const IsolatingInterval& y) { return x.lo < y.lo; });
    return roots;
}

inline int count_real_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error("count_real_roots: zero polynomial");
    if (p.degree() <= 0) return 0;
    return static_cast<int>(isolate_real_roots(p).size());
}

// Halve an isolating interval of the squarefree polynomial p (endpoint signs
// differ by the isolation invariant).
inline void refine_interval(const UniPoly& p, IsolatingInterval& iv) {
    if (iv.exact) return;
    Rat m = (iv.lo + iv.hi) / 2;
    int sm = p.sign_at(m);
    if (sm == 0) {
        iv.lo = iv.hi = m;
        iv.exact = true;
        return;
    }
    if (sm == p.sign_at(iv.lo))
        iv.lo = m;
    else
        iv.hi = m;
}

} // namespace rrc
