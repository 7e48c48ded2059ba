#pragma once

// Multivariate gcd (primitive pseudo-remainder recursion on the last
// variable), squarefree parts, lcm.  Adequate at desk scale.

#include "fp.hpp"
#include "poly.hpp"

namespace rrc {

inline MultiPoly content_in(const MultiPoly& p, int slot);
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// highest slot index either polynomial depends on, or -1
inline int top_slot(const MultiPoly& a, const MultiPoly& b) {
    for (int s = a.ctx()->slots() - 1; s >= 0; --s)
        if (a.depends_on(s) || b.depends_on(s)) return s;
    return -1;
}

// pseudo-remainder of a by b viewed in (coefficient ring)[slot]:
// lc(b)^(deg a - deg b + 1) * a  mod  b
inline MultiPoly prem_in(const MultiPoly& a, const MultiPoly& b, int slot) {
    int db = b.degree_in(slot);
    if (db < 0) throw Error("prem by zero");
    MultiPoly lb = b.lc_in(slot);
    MultiPoly r = a;
    int steps = a.degree_in(slot) - db + 1;
    int done = 0;
    while (!r.is_zero() && r.degree_in(slot) >= db) {
        int dr = r.degree_in(slot);
        MultiPoly lr = r.lc_in(slot);
        r = r * lb - b.mul_term(Monomial::unit(b.ctx()->slots(), slot,
                                               static_cast<std::uint32_t>(dr - db)),
                                Rat(1)) *
                        lr;
        ++done;
    }
    // pad so the cofactor relation holds with the full exponent
    for (; done < steps; ++done) r = r * lb;
    return r;
}

inline MultiPoly content_in(const MultiPoly& p, int slot) {
    MultiPoly g = MultiPoly::zero(p.ctx());
    for (auto& c : p.coeffs_in(slot)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return g;
    return g.normalized();
}

inline MultiPoly primitive_in(const MultiPoly& p, int slot) {
    MultiPoly c = content_in(p, slot);
    if (c.is_zero() || (c.is_constant() && c.constant_value() == 1)) return p;
    return exact_div(p, c);
}

namespace detail {

// Map a polynomial to Fp[slot]: other slots at seeded residues, coefficients
// mod p.  `ok` clears when a denominator hits p.
inline fp::Poly fp_image_in(const MultiPoly& a, int slot, std::uint32_t p,
                            const std::vector<std::uint32_t>& pt, bool& ok) {
    fp::Poly im(static_cast<size_t>(std::max(a.degree_in(slot), 0)) + 1, 0);
    for (auto& t : a.terms()) {
        std::uint32_t c = fp::rat_mod(t.c, p, ok);
        if (!ok) return {};
        for (int s = 0; s < a.ctx()->slots(); ++s) {
            if (s == slot || !t.m.e[s]) continue;
            c = fp::mulm(c, fp::powm(pt[static_cast<size_t>(s)], t.m.e[s], p), p);
        }
        auto d = t.m.e[static_cast<size_t>(slot)];
        im[d] = fp::addm(im[d], c, p);
    }
    fp::trim(im);
    return im;
}

// Sound shortcut: with the other slots evaluated at a residue point keeping
// lc_slot(a) nonzero, a constant gcd mod p certifies that gcd(a, b) is
// slot-free.
inline bool images_coprime_in(const MultiPoly& a, const MultiPoly& b, int slot) {
    const auto& ctx = a.ctx();
    const std::uint32_t p = fp::kProbePrime;
    int da = a.degree_in(slot);
    for (long trial = 0; trial < 4; ++trial) {
        std::uint64_t st = 0x5eed5eedULL + static_cast<std::uint64_t>(trial) * 77;
        std::vector<std::uint32_t> pt(static_cast<size_t>(ctx->slots()));
        for (auto& v : pt) v = static_cast<std::uint32_t>(splitmix64(st) % (p - 1)) + 1;
        bool ok = true;
        fp::Poly ua = fp_image_in(a, slot, p, pt, ok);
        if (!ok) continue;
        fp::Poly ub = fp_image_in(b, slot, p, pt, ok);
        if (!ok) continue;
        if (fp::deg(ua) != da || ub.empty()) continue; // degree dropped, point unusable
        return fp::deg(fp::gcd(ua, ub, p)) == 0;
    }
    return false;
}

// Same certificate for squarefreeness of a slot-primitive polynomial.
inline bool image_squarefree_in(const MultiPoly& a, int slot) {
    const auto& ctx = a.ctx();
    const std::uint32_t p = fp::kProbePrime;
    int da = a.degree_in(slot);
    for (long trial = 0; trial < 4; ++trial) {
        std::uint64_t st = 0xf00dba11ULL + static_cast<std::uint64_t>(trial) * 131;
        std::vector<std::uint32_t> pt(static_cast<size_t>(ctx->slots()));
        for (auto& v : pt) v = static_cast<std::uint32_t>(splitmix64(st) % (p - 1)) + 1;
        bool ok = true;
        fp::Poly ua = fp_image_in(a, slot, p, pt, ok);
        if (!ok || fp::deg(ua) != da) continue;
        return fp::deg(fp::gcd(ua, fp::derivative(ua, p), p)) == 0;
    }
    return false;
}

} // namespace detail

// A greatest common divisor, normalized with positive leading coefficient and
// primitive integer content.
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    require_same_ctx(a.ctx(), b.ctx());
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.ctx(), Rat(1));
    int slot = top_slot(a, b);
    bool ina = a.depends_on(slot), inb = b.depends_on(slot);
    if (ina != inb) {
        // the slot-free operand must divide the content of the other
        const MultiPoly& with = ina ? a : b;
        const MultiPoly& without = ina ? b : a;
        return poly_gcd(content_in(with, slot), without);
    }
    MultiPoly ca = content_in(a, slot), cb = content_in(b, slot);
    MultiPoly c = poly_gcd(ca, cb);
    MultiPoly A = exact_div(a, ca), B = exact_div(b, cb);
    if (A.degree_in(slot) < B.degree_in(slot)) std::swap(A, B);
    if (!A.is_constant() && !B.is_constant() && detail::images_coprime_in(A, B, slot))
        return c.normalized();
    // subresultant-style remainder sequence: divisions by g*h^delta keep the
    // coefficient growth linear instead of stacking pseudo-multiplier powers
    MultiPoly g = MultiPoly::constant(a.ctx(), Rat(1));
    MultiPoly h = g;
    while (true) {
        if (B.is_zero()) return (c * primitive_in(A, slot).normalized()).normalized();
        if (B.degree_in(slot) == 0) return c.normalized(); // primitive parts coprime
        int delta = A.degree_in(slot) - B.degree_in(slot);
        MultiPoly r = prem_in(A, B, slot);
        MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
        A = B;
        B = r.is_zero() ? r : exact_div(r, divisor);
        g = A.lc_in(slot);
        if (delta > 0) {
            MultiPoly gp = g.pow(static_cast<unsigned>(delta));
            h = delta == 1 ? g : exact_div(gp, h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
}

inline MultiPoly poly_gcd(const std::vector<MultiPoly>& ps) {
    if (ps.empty()) throw Error("gcd of empty list");
    MultiPoly g = ps[0];
    for (size_t i = 1; i < ps.size() && !(g.is_constant() && !g.is_zero()); ++i)
        g = poly_gcd(g, ps[i]);
    return g.is_zero() ? g : g.normalized();
}

inline MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly::zero(a.ctx());
    MultiPoly g = poly_gcd(a, b);
    return exact_div(a * b, g).normalized();
}

// Product of the distinct irreducible factors of p, normalized.
inline MultiPoly squarefree_part(const MultiPoly& p) {
    if (p.is_zero()) throw Error("squarefree_part of zero");
    if (p.is_constant()) return MultiPoly::constant(p.ctx(), Rat(1));
    int slot = top_slot(p, p);
    MultiPoly cont = content_in(p, slot);
    MultiPoly pp = exact_div(p, cont);
    MultiPoly core;
    if (detail::image_squarefree_in(pp, slot)) {
        core = pp.normalized();
    } else {
        MultiPoly g = poly_gcd(pp, pp.derivative(slot));
        core = exact_div(pp.normalized(), g.is_zero() ? MultiPoly::constant(p.ctx(), Rat(1)) : g);
    }
    MultiPoly rest = squarefree_part(cont);
    return (rest * core).normalized();
}

} // namespace rrc
