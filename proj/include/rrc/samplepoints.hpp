#pragma once

// At least one rational point per connected component of
// {g_1 != 0, ..., g_s != 0} in R^t, by open-CAD projection and lifting:
// Collins-style projection (principal subresultant chains, pairwise chains,
// reducta leading coefficients) and midpoint lifting over open cells only.

#include "subresultant.hpp"

namespace rrc {

struct ProjectionTower {
    CtxPtr yctx;                 // t-parameter context
    std::vector<int> axis;       // axis[k] = slot eliminated when projecting level k+1 -> k
                                 // (axis[t-1] first; axis[0] is the base variable)
    std::vector<std::vector<MultiPoly>> level; // level[k] = polynomials in the first k+1 axes
    std::vector<std::string> warnings;
};

namespace cad {

// squarefree, primitive, positive, nonconstant, deduplicated
inline void normalize_set(std::vector<MultiPoly>& v) {
    std::vector<MultiPoly> out;
    for (auto& p : v) {
        if (p.is_zero() || p.is_constant()) continue;
        MultiPoly q = squarefree_part(p);
        if (q.is_constant()) continue;
        bool dup = false;
        for (auto& r : out) dup |= (r == q);
        if (!dup) out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end(),
              [](const MultiPoly& a, const MultiPoly& b) { return MultiPoly::compare(a, b) < 0; });
    v = std::move(out);
}

// split the set into pairwise coprime squarefree polynomials
inline void coprime_refine(std::vector<MultiPoly>& v) {
    normalize_set(v);
    bool changed = true;
    int guard = 0;
    while (changed && ++guard < 64) {
        changed = false;
        for (size_t i = 0; i < v.size() && !changed; ++i)
            for (size_t j = i + 1; j < v.size() && !changed; ++j) {
                MultiPoly g = poly_gcd(v[i], v[j]);
                if (g.is_constant()) continue;
                std::vector<MultiPoly> nv;
                for (size_t k = 0; k < v.size(); ++k) {
                    if (k == i || k == j) continue;
                    nv.push_back(v[k]);
                }
                nv.push_back(g);
                nv.push_back(exact_div(v[i], g));
                nv.push_back(exact_div(v[j], g));
                normalize_set(nv);
                v = std::move(nv);
                changed = true;
            }
    }
}

} // namespace cad

// Collins projection of a squarefree primitive set, eliminating `var`:
// principal subresultant chains of (p, dp/dvar), pairwise chains (p, q),
// leading coefficients of every reductum when the leading coefficient can
// vanish, and contents; all squarefree-primitive-normalized, constants
// dropped.  Polynomials free of `var` pass through unchanged.
inline std::vector<MultiPoly> project_level(const std::vector<MultiPoly>& polys, int var) {
    std::vector<MultiPoly> out;
    std::vector<MultiPoly> active;
    for (auto& p : polys) {
        if (p.degree_in(var) <= 0) {
            out.push_back(p); // passes down untouched
            continue;
        }
        MultiPoly cont = content_in(p, var);
        if (!cont.is_constant()) out.push_back(cont);
        active.push_back(exact_div(p, cont));
    }
    auto add_chain = [&](const MultiPoly& p, const MultiPoly& q) {
        if (q.is_zero()) return;
        auto s = subres_signed_in_slot(p, q, var);
        for (size_t i = 1; i < s.size(); ++i)
            if (!s[i].is_zero()) out.push_back(s[i]);
    };
    for (auto& p : active) {
        // a non-vanishing leading coefficient keeps the degree stable; only
        // then can the reducta chain be skipped
        MultiPoly lc = p.lc_in(var);
        if (!lc.is_constant()) {
            auto cs = p.coeffs_in(var);
            for (auto& c : cs)
                if (!c.is_constant()) out.push_back(c);
        }
        add_chain(p, p.derivative(var));
    }
    for (size_t i = 0; i < active.size(); ++i)
        for (size_t j = i + 1; j < active.size(); ++j) {
            const MultiPoly *a = &active[i], *b = &active[j];
            if (a->degree_in(var) < b->degree_in(var)) std::swap(a, b);
            add_chain(*a, *b);
        }
    cad::normalize_set(out);
    return out;
}

// Build the tower for the parameter-only polynomials gs.  The elimination
// order is chosen greedily: project out the variable with the smallest total
// main-variable degree first.
inline ProjectionTower build_tower(const std::vector<MultiPoly>& gs, const CtxPtr& yctx) {
    ProjectionTower tw;
    tw.yctx = yctx;
    int t = yctx->t();
    std::vector<MultiPoly> cur;
    for (auto& g : gs) cur.push_back(g.transport(yctx));
    cad::coprime_refine(cur);

    std::vector<int> remaining;
    for (int i = 0; i < t; ++i) remaining.push_back(yctx->param_slot(i));
    tw.level.assign(static_cast<size_t>(t), {});
    tw.axis.assign(static_cast<size_t>(t), -1);
    for (int k = t - 1; k >= 0; --k) {
        // pick the cheapest elimination variable among the remaining ones
        int pick = remaining[0];
        long best = -1;
        for (int cand : remaining) {
            long cost = 0;
            for (auto& p : cur) cost += std::max(p.degree_in(cand), 0);
            if (best < 0 || cost < best ||
                (cost == best && cand < pick)) {
                best = cost;
                pick = cand;
            }
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
        tw.axis[static_cast<size_t>(k)] = pick;
        tw.level[static_cast<size_t>(k)] = cur;
        if (k > 0) {
            cur = project_level(cur, pick);
            cad::coprime_refine(cur);
        }
    }
    return tw;
}

namespace cad {

// Refine to pairwise separation: intervals and exact roots must not touch.
struct AxisRoot {
    IsolatingInterval iv;
    int owner; // index of the defining polynomial
};

inline void separate(std::vector<AxisRoot>& roots, const std::vector<UniPoly>& sf) {
    std::sort(roots.begin(), roots.end(),
              [](const AxisRoot& a, const AxisRoot& b) { return a.iv.lo < b.iv.lo || (a.iv.lo == b.iv.lo && a.iv.hi < b.iv.hi); });
    bool changed = true;
    long guard = 0, limit = 1024 + 256 * static_cast<long>(roots.size()) * static_cast<long>(roots.size());
    while (changed && ++guard < limit) {
        changed = false;
        for (size_t i = 0; i + 1 < roots.size(); ++i) {
            auto &a = roots[i], &b = roots[i + 1];
            if (a.iv.hi < b.iv.lo || (a.iv.exact && b.iv.exact && a.iv.lo != b.iv.lo)) continue;
            if (a.iv.exact && b.iv.exact && a.iv.lo == b.iv.lo) {
                roots.erase(roots.begin() + static_cast<long>(i) + 1); // same rational root twice
                changed = true;
                break;
            }
            refine_interval(sf[static_cast<size_t>(a.owner)], a.iv);
            refine_interval(sf[static_cast<size_t>(b.owner)], b.iv);
            std::sort(roots.begin(), roots.end(), [](const AxisRoot& x, const AxisRoot& y) {
                return x.iv.lo < y.iv.lo || (x.iv.lo == y.iv.lo && x.iv.hi < y.iv.hi);
            });
            changed = true;
            break;
        }
    }
    if (guard >= limit) throw Error("interval separation did not converge");
}

} // namespace cad

// Lifting: base points per open cell of each level, recursively.
inline std::vector<std::vector<Rat>> lift(const ProjectionTower& tw,
                                          std::vector<std::string>* warnings = nullptr) {
    int t = static_cast<int>(tw.level.size());
    std::vector<std::vector<Rat>> points; // full slot-length coordinates
    int slots = tw.yctx->slots();

    struct Frame {
        std::vector<Rat> partial; // values by slot (only assigned axes meaningful)
    };
    std::vector<Frame> frontier{Frame{std::vector<Rat>(static_cast<size_t>(slots), Rat(0))}};

    for (int k = 0; k < t; ++k) {
        int var = tw.axis[static_cast<size_t>(k)];
        std::vector<Frame> next;
        for (auto& fr : frontier) {
            // specialize the level polynomials at the already-fixed axes; the
            // projection carries contents and coefficient chains, so a fiber
            // can only die on a projection defect, which we surface
            std::vector<UniPoly> sf;
            bool dead = false;
            for (auto& p : tw.level[static_cast<size_t>(k)]) {
                std::vector<MultiPoly::Term> kept;
                for (auto& term : p.terms()) {
                    Rat c = term.c;
                    for (int s = 0; s < slots; ++s) {
                        if (s == var || !term.m.e[s]) continue;
                        c *= rat_pow(fr.partial[static_cast<size_t>(s)], term.m.e[s]);
                    }
                    Monomial m(slots);
                    m.e[static_cast<size_t>(var)] = term.m.e[static_cast<size_t>(var)];
                    kept.push_back({std::move(m), std::move(c)});
                }
                MultiPoly spec = MultiPoly::from_terms(p.ctx(), std::move(kept));
                if (spec.is_zero()) {
                    if (warnings) warnings->push_back("identically-zero fiber for " + p.str());
                    dead = true;
                    break;
                }
                if (spec.degree_in(var) > 0)
                    sf.push_back(UniPoly::from_multipoly(spec, var).squarefree());
            }
            if (dead) continue;

            // roots of all level polynomials along this axis
            std::vector<cad::AxisRoot> roots;
            for (size_t pi = 0; pi < sf.size(); ++pi)
                for (auto& iv : isolate_real_roots(sf[pi]))
                    roots.push_back({iv, static_cast<int>(pi)});
            cad::separate(roots, sf);

            // candidate coordinates: outside the hull and between roots
            std::vector<Rat> coords;
            if (roots.empty()) {
                coords.push_back(Rat(0));
            } else {
                Rat big(1);
                for (auto& r : roots) {
                    Rat m = std::max(abs(r.iv.lo), abs(r.iv.hi));
                    if (m > big) big = m;
                }
                big = Rat(rat_floor(big) + 1);
                coords.push_back(-big);
                for (size_t i = 0; i + 1 < roots.size(); ++i) {
                    Rat lo = roots[i].iv.hi, hi = roots[i + 1].iv.lo;
                    while (!(lo < hi)) { // touching intervals: refine until a gap opens
                        refine_interval(sf[static_cast<size_t>(roots[i].owner)], roots[i].iv);
                        refine_interval(sf[static_cast<size_t>(roots[i + 1].owner)], roots[i + 1].iv);
                        lo = roots[i].iv.hi;
                        hi = roots[i + 1].iv.lo;
                    }
                    coords.push_back(simplest_in(lo, hi));
                }
                coords.push_back(big);
            }
            for (auto& c : coords) {
                Frame nf = fr;
                nf.partial[static_cast<size_t>(var)] = c;
                next.push_back(std::move(nf));
            }
        }
        frontier = std::move(next);
    }

    for (auto& fr : frontier) points.push_back(std::move(fr.partial));
    // report points as parameter tuples in declaration order
    std::vector<std::vector<Rat>> out;
    for (auto& p : points) {
        std::vector<Rat> q(static_cast<size_t>(tw.yctx->t()));
        for (int i = 0; i < tw.yctx->t(); ++i) q[static_cast<size_t>(i)] = p[static_cast<size_t>(tw.yctx->param_slot(i))];
        out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Sample points meeting every connected component of {g_i != 0 for all i}.
// Constants are ignored; empty input yields the origin.
inline std::vector<std::vector<Rat>> sample_points(const std::vector<MultiPoly>& gs_in,
                                                   const CtxPtr& yctx,
                                                   std::vector<std::string>* warnings = nullptr) {
    std::vector<MultiPoly> gs;
    for (auto& g : gs_in) {
        if (g.is_zero()) throw Error("sample_points: zero polynomial in the input");
        if (g.is_constant()) continue;
        gs.push_back(g.transport(yctx));
    }
    if (gs.empty()) return {std::vector<Rat>(static_cast<size_t>(yctx->t()), Rat(0))};
    ProjectionTower tw = build_tower(gs, yctx);
    auto pts = lift(tw, warnings);
    // soundness: every point keeps every input strictly off zero
    for (auto& pt : pts)
        for (auto& g : gs)
            if (g.eval(pt) == 0)
                throw Error("sample point landed on a zero set (projection defect)");
    return pts;
}

} // namespace rrc
