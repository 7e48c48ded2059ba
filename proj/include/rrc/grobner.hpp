#pragma once

// Buchberger engine for the block elimination order grevlex(x) > grevlex(u,y),
// quotient monomial bases, normal forms over Q(y), and elimination ideals.

#include <map>
#include <set>

#include "ratfunc.hpp"

namespace rrc {

struct ParametricSystem {
    CtxPtr ctx; // params y and variables x (no auxiliary)
    std::vector<MultiPoly> polys;
    int d = 0; // max total degree

    static ParametricSystem make(const CtxPtr& ctx, std::vector<MultiPoly> polys) {
        if (polys.empty()) throw Error("empty polynomial system");
        if (ctx->n() < 1) throw Error("system needs at least one variable");
        ParametricSystem s;
        s.ctx = ctx;
        for (auto& p : polys) {
            require_same_ctx(p.ctx(), ctx);
            if (p.is_zero()) throw Error("zero polynomial in the system");
            s.d = std::max(s.d, p.total_degree());
        }
        s.polys = std::move(polys);
        return s;
    }

    int n() const { return ctx->n(); }
    int t() const { return ctx->t(); }
    int m() const { return static_cast<int>(polys.size()); }

    ParametricSystem specialize(std::span<const Rat> eta) const {
        std::vector<MultiPoly> sp;
        for (auto& p : polys) sp.push_back(p.specialize(eta));
        return make(ctx->specialized(), std::move(sp));
    }
};

namespace gb {

using Term = MultiPoly::Term;

// terms kept sorted descending under the engine order
struct Poly {
    std::vector<Term> t;
    int sugar = 0;

    bool is_zero() const { return t.empty(); }
    const Term& lt() const { return t.front(); }
};

inline Poly from_multipoly(const MultiPoly& p, const MonoCmp& cmp) {
    Poly g;
    g.t = p.terms();
    std::sort(g.t.begin(), g.t.end(),
              [&](const Term& a, const Term& b) { return cmp.cmp(a.m, b.m) > 0; });
    g.sugar = std::max(p.total_degree(), 0);
    return g;
}

inline MultiPoly to_multipoly(const Poly& g, const CtxPtr& ctx) {
    return MultiPoly::from_terms(ctx, g.t);
}

inline Poly add_scaled(const Poly& a, const Poly& b, const Monomial& bm, const Rat& bc,
                       const MonoCmp& cmp) {
    // a + bc * bm * b, both sorted descending
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        Monomial m = b.t[j].m * bm;
        int c = cmp.cmp(a.t[i].m, m);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            Rat v = b.t[j].c * bc;
            if (v != 0) r.t.push_back({std::move(m), std::move(v)});
            ++j;
        } else {
            Rat v = a.t[i].c + b.t[j].c * bc;
            if (v != 0) r.t.push_back({a.t[i].m, std::move(v)});
            ++i, ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) {
        Rat v = b.t[j].c * bc;
        if (v != 0) r.t.push_back({b.t[j].m * bm, std::move(v)});
    }
    return r;
}

inline void normalize_content(Poly& p) {
    if (p.is_zero()) return;
    Rat g(0);
    for (auto& t : p.t) g = rat_content_gcd(g, t.c);
    if (sign(p.t.front().c) < 0) g = -g;
    if (g == 1) return;
    for (auto& t : p.t) t.c /= g;
}

// full reduction by the basis; top-only when tail == false
inline Poly reduce(Poly f, const std::vector<Poly>& basis, const MonoCmp& cmp, bool tail) {
    Poly out;
    int guard = 0;
    while (!f.is_zero()) {
        bool reduced_step = false;
        const Term& lt = f.lt();
        for (auto& g : basis) {
            if (g.is_zero()) continue;
            if (!g.lt().m.divides(lt.m)) continue;
            Monomial q = lt.m / g.lt().m;
            Rat c = -lt.c / g.lt().c;
            f = add_scaled(f, g, q, c, cmp);
            f.sugar = std::max(f.sugar, g.sugar + static_cast<int>(q.deg()));
            reduced_step = true;
            break;
        }
        if (!reduced_step) {
            if (!tail) break;
            out.t.push_back(f.lt());
            f.t.erase(f.t.begin());
        }
        // rescaling is only a unit multiple of the WHOLE polynomial while no
        // part has been emitted; afterwards it would desync out from f
        if (++guard % 64 == 0 && out.t.empty()) normalize_content(f);
    }
    if (!tail) return f;
    out.sugar = f.sugar;
    return out;
}

} // namespace gb

struct GroebnerBasis {
    CtxPtr ctx;
    OrderSpec order;
    std::vector<MultiPoly> gens; // normalized, sorted descending by leading monomial
    bool reduced = false;

    MonoCmp cmp() const { return MonoCmp(ctx, order); }

    // leading monomial of g under the block order
    Monomial lm(const MultiPoly& g) const {
        MonoCmp c = cmp();
        const Monomial* best = nullptr;
        for (auto& t : g.terms())
            if (!best || c.cmp(t.m, *best) > 0) best = &t.m;
        if (!best) throw Error("lm of zero");
        return *best;
    }

    // x-part of the block leading monomial
    Monomial lm_x(const MultiPoly& g) const {
        Monomial m = lm(g);
        for (int s = g.ctx()->n(); s < g.ctx()->slots(); ++s) m.e[s] = 0;
        return m;
    }

    // leading coefficient of g in Q(y)[x]: the sum of all terms sharing the
    // maximal x-part, as a polynomial in (u, y)
    MultiPoly lc_x(const MultiPoly& g) const {
        Monomial mx = lm_x(g);
        std::vector<MultiPoly::Term> ts;
        for (auto& t : g.terms()) {
            bool same = true;
            for (int s = 0; s < g.ctx()->n(); ++s)
                if (t.m.e[s] != mx.e[s]) {
                    same = false;
                    break;
                }
            if (!same) continue;
            Monomial rest = t.m;
            for (int s = 0; s < g.ctx()->n(); ++s) rest.e[s] = 0;
            ts.push_back({rest, t.c});
        }
        return MultiPoly::from_terms(g.ctx(), std::move(ts));
    }
};

// Buchberger with the sugar strategy, the product criterion and the chain
// criterion.  Output is the unique reduced basis, generators primitive with
// positive leading coefficients, sorted descending by leading monomial.
inline GroebnerBasis buchberger(const std::vector<MultiPoly>& input, const CtxPtr& ctx,
                                const OrderSpec& order) {
    MonoCmp cmp(ctx, order);
    std::vector<gb::Poly> G;
    for (auto& p : input) {
        if (p.is_zero()) continue;
        require_same_ctx(p.ctx(), ctx);
        gb::Poly g = gb::from_multipoly(p, cmp);
        gb::normalize_content(g);
        G.push_back(std::move(g));
    }
    if (G.empty()) throw Error("buchberger: no nonzero input");

    struct PairKey {
        int sugar;
        std::uint32_t deg;
        int i, j;
        bool operator<(const PairKey& o) const {
            if (sugar != o.sugar) return sugar < o.sugar;
            if (deg != o.deg) return deg < o.deg;
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };
    std::set<PairKey> queue;
    std::set<std::pair<int, int>> done;

    auto lcm_of = [&](int i, int j) { return Monomial::lcm(G[i].lt().m, G[j].lt().m); };
    auto push_pair = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        Monomial l = lcm_of(i, j);
        if (Monomial::coprime(G[i].lt().m, G[j].lt().m)) {
            done.insert({i, j}); // product criterion
            return;
        }
        int sug = std::max(G[i].sugar + static_cast<int>((l / G[i].lt().m).deg()),
                           G[j].sugar + static_cast<int>((l / G[j].lt().m).deg()));
        queue.insert({sug, l.deg(), i, j});
    };

    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) push_pair(static_cast<int>(i), static_cast<int>(j));

    while (!queue.empty()) {
        PairKey pk = *queue.begin();
        queue.erase(queue.begin());
        int i = pk.i, j = pk.j;
        done.insert({i, j});
        Monomial l = lcm_of(i, j);
        // chain criterion, sequential form: some other leading monomial divides
        // the lcm, both sub-pairs are already treated, and their lcms are
        // strictly smaller (strictness rules out circular skips)
        bool skip = false;
        for (size_t k = 0; k < G.size() && !skip; ++k) {
            int ki = static_cast<int>(k);
            if (ki == i || ki == j || G[k].is_zero()) continue;
            if (!G[k].lt().m.divides(l)) continue;
            if (lcm_of(std::min(i, ki), std::max(i, ki)) == l) continue;
            if (lcm_of(std::min(j, ki), std::max(j, ki)) == l) continue;
            auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (done.count(key(i, ki)) && done.count(key(j, ki))) skip = true;
        }
        if (skip) continue;

        // S-polynomial
        gb::Poly s;
        {
            Monomial qi = l / G[i].lt().m, qj = l / G[j].lt().m;
            gb::Poly zero;
            s = gb::add_scaled(zero, G[i], qi, G[j].lt().c, cmp);
            s = gb::add_scaled(s, G[j], qj, -G[i].lt().c, cmp);
            s.sugar = pk.sugar;
        }
        s = gb::reduce(std::move(s), G, cmp, false);
        if (s.is_zero()) continue;
        gb::normalize_content(s);
        int newi = static_cast<int>(G.size());
        G.push_back(std::move(s));
        for (int k = 0; k < newi; ++k)
            if (!G[k].is_zero()) push_pair(k, newi);
    }

    // minimalize: drop generators whose lm is divisible by another's
    std::vector<int> keep;
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].is_zero()) continue;
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j || G[j].is_zero()) continue;
            if (G[j].lt().m.divides(G[i].lt().m) && !(G[i].lt().m == G[j].lt().m && j > i))
                redundant = G[j].lt().m == G[i].lt().m ? j < i : true;
        }
        if (!redundant) keep.push_back(static_cast<int>(i));
    }
    std::vector<gb::Poly> minimal;
    for (int k : keep) minimal.push_back(G[static_cast<size_t>(k)]);

    // interreduce tails to canonical reduced form
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<gb::Poly> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            gb::Poly r = gb::reduce(minimal[i], others, cmp, true);
            gb::normalize_content(r);
            if (!(r.t.size() == minimal[i].t.size() &&
                  std::equal(r.t.begin(), r.t.end(), minimal[i].t.begin(),
                             [](const gb::Term& a, const gb::Term& b) {
                                 return a.m == b.m && a.c == b.c;
                             }))) {
                minimal[i] = std::move(r);
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(),
              [&](const gb::Poly& a, const gb::Poly& b) { return cmp.cmp(a.lt().m, b.lt().m) > 0; });

    GroebnerBasis out;
    out.ctx = ctx;
    out.order = order;
    out.reduced = true;
    for (auto& g : minimal) out.gens.push_back(gb::to_multipoly(g, ctx));
    return out;
}

inline GroebnerBasis buchberger(const ParametricSystem& sys, const OrderSpec& order = OrderSpec::block()) {
    return buchberger(sys.polys, sys.ctx, order);
}

// --- quotient basis --------------------------------------------------------------

struct QuotientBasis {
    std::vector<Monomial> b; // ascending by (total degree, grevlex)
    int delta = 0;
};

// The finite monomial staircase in x.  Throws NotZeroDimensional when some
// variable has no pure-power leading monomial.
inline QuotientBasis quotient_basis(const GroebnerBasis& gbasis) {
    const CtxPtr& ctx = gbasis.ctx;
    int n = ctx->n();
    std::vector<Monomial> leads;
    for (auto& g : gbasis.gens) leads.push_back(gbasis.lm_x(g));

    // finiteness: a pure power of every variable must appear among the leads
    for (int v = 0; v < n; ++v) {
        bool found = false;
        for (auto& l : leads) {
            bool pure = l.e[v] > 0;
            for (int s = 0; s < ctx->slots() && pure; ++s)
                if (s != v && l.e[s]) pure = false;
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) throw NotZeroDimensionalError();
    }

    auto reducible = [&](const Monomial& m) {
        for (auto& l : leads)
            if (l.divides(m)) return true;
        return false;
    };

    MonoCmp cmp(ctx, gbasis.order);
    std::vector<Monomial> basis;
    std::vector<Monomial> frontier{Monomial(ctx->slots())};
    std::set<std::vector<std::uint32_t>> seen{frontier[0].e};
    while (!frontier.empty()) {
        std::vector<Monomial> next;
        for (auto& m : frontier) {
            if (reducible(m)) continue;
            basis.push_back(m);
            for (int v = 0; v < n; ++v) {
                Monomial m2 = m;
                m2.e[v] += 1;
                if (seen.insert(m2.e).second) next.push_back(m2);
            }
        }
        frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return cmp.cmp(a, b) < 0;
    });
    QuotientBasis qb;
    qb.b = std::move(basis);
    qb.delta = static_cast<int>(qb.b.size());
    return qb;
}

// Subset of the basis keeping, for each distinct x-leading monomial, the
// generator whose x-leading coefficient has least total degree in y (ties by
// position); still a Groebner basis of <f> over Q(y).
inline GroebnerBasis reduce_gb_over_K(const GroebnerBasis& gbasis) {
    std::map<std::vector<std::uint32_t>, int> best; // lm_x -> index
    for (size_t i = 0; i < gbasis.gens.size(); ++i) {
        Monomial mx = gbasis.lm_x(gbasis.gens[i]);
        auto it = best.find(mx.e);
        if (it == best.end()) {
            best[mx.e] = static_cast<int>(i);
        } else {
            int old = it->second;
            int d_old = gbasis.lc_x(gbasis.gens[static_cast<size_t>(old)]).total_degree();
            int d_new = gbasis.lc_x(gbasis.gens[i]).total_degree();
            if (d_new < d_old) it->second = static_cast<int>(i);
        }
    }
    GroebnerBasis out;
    out.ctx = gbasis.ctx;
    out.order = gbasis.order;
    out.reduced = gbasis.reduced;
    std::vector<int> idx;
    for (auto& [k, v] : best) idx.push_back(v);
    std::sort(idx.begin(), idx.end());
    for (int i : idx) out.gens.push_back(gbasis.gens[static_cast<size_t>(i)]);
    MonoCmp cmp(out.ctx, out.order);
    std::sort(out.gens.begin(), out.gens.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return cmp.cmp(out.lm(a), out.lm(b)) > 0;
    });
    return out;
}

// --- normal forms over Q(y) -------------------------------------------------------

// element of Q(y)[x]: x-monomials with rational-function coefficients,
// descending under grevlex(x)
struct XPoly {
    std::vector<std::pair<Monomial, RatFunc>> t;
    bool is_zero() const { return t.empty(); }
};

class NormalFormer {
public:
    NormalFormer(const GroebnerBasis& gbasis) : ctx_(gbasis.ctx), cmp_(gbasis.ctx, gbasis.order) {
        for (auto& g : gbasis.gens) {
            Gen gen;
            gen.lead = gbasis.lm_x(g);
            gen.lc = RatFunc(gbasis.lc_x(g));
            if (gen.lc.is_zero()) throw Error("zero x-leading coefficient in a reduced basis");
            // tail grouped by x-part
            std::map<std::vector<std::uint32_t>, MultiPoly> groups;
            for (auto& t : g.terms()) {
                Monomial mx = t.m, rest = t.m;
                for (int s = ctx_->n(); s < ctx_->slots(); ++s) mx.e[s] = 0;
                for (int s = 0; s < ctx_->n(); ++s) rest.e[s] = 0;
                if (mx == gen.lead) continue;
                auto it = groups.find(mx.e);
                if (it == groups.end()) it = groups.emplace(mx.e, MultiPoly::zero(ctx_)).first;
                it->second += MultiPoly::monomial(ctx_, rest, t.c);
            }
            for (auto& [me, coeff] : groups) {
                Monomial mx(ctx_->slots());
                mx.e = me;
                gen.tail.push_back({mx, RatFunc(coeff)});
            }
            std::sort(gen.tail.begin(), gen.tail.end(), [&](const auto& a, const auto& b) {
                return cmp_.cmp(a.first, b.first) > 0;
            });
            gens_.push_back(std::move(gen));
        }
    }

    const CtxPtr& ctx() const { return ctx_; }

    XPoly from_multipoly(const MultiPoly& p) const {
        std::map<std::vector<std::uint32_t>, MultiPoly> groups;
        for (auto& t : p.terms()) {
            Monomial mx = t.m, rest = t.m;
            for (int s = ctx_->n(); s < ctx_->slots(); ++s) mx.e[s] = 0;
            for (int s = 0; s < ctx_->n(); ++s) rest.e[s] = 0;
            auto it = groups.find(mx.e);
            if (it == groups.end()) it = groups.emplace(mx.e, MultiPoly::zero(ctx_)).first;
            it->second += MultiPoly::monomial(ctx_, rest, t.c);
        }
        XPoly r;
        for (auto& [me, coeff] : groups) {
            if (coeff.is_zero()) continue;
            Monomial mx(ctx_->slots());
            mx.e = me;
            r.t.push_back({mx, RatFunc(coeff)});
        }
        sortx(r);
        return r;
    }

    XPoly monomial(const Monomial& xm, const RatFunc& c) const {
        XPoly r;
        if (!c.is_zero()) r.t.push_back({xm, c});
        return r;
    }

    // unique remainder modulo the basis
    XPoly normal_form(XPoly f) const {
        size_t pos = 0;
        while (pos < f.t.size()) {
            const Gen* hit = nullptr;
            for (auto& g : gens_)
                if (g.lead.divides(f.t[pos].first)) {
                    hit = &g;
                    break;
                }
            if (!hit) {
                ++pos; // irreducible term, move on
                continue;
            }
            Monomial q = f.t[pos].first / hit->lead;
            RatFunc c = f.t[pos].second / hit->lc;
            // f -= c * q * (lead + tail)  [the lead cancels exactly]
            XPoly sub;
            for (auto& [m, cf] : hit->tail) sub.t.push_back({m * q, cf * c});
            f.t.erase(f.t.begin() + static_cast<long>(pos));
            f = sub_into(std::move(f), sub);
            // subtraction can only introduce monomials below q*lead; restart scan at pos
        }
        return f;
    }

    XPoly nf_product(const Monomial& xa, const Monomial& xb) const {
        return normal_form(monomial(xa * xb, RatFunc::constant(ctx_, Rat(1))));
    }

    // coordinates over a quotient basis
    std::vector<RatFunc> coords(const XPoly& f, const QuotientBasis& qb) const {
        std::vector<RatFunc> v(static_cast<size_t>(qb.delta), RatFunc(MultiPoly::zero(ctx_)));
        for (auto& [m, c] : f.t) {
            bool placed = false;
            for (size_t k = 0; k < qb.b.size(); ++k)
                if (qb.b[k] == m) {
                    v[k] = c;
                    placed = true;
                    break;
                }
            if (!placed) throw Error("normal form contains a monomial outside the quotient basis");
        }
        return v;
    }

private:
    struct Gen {
        Monomial lead;
        RatFunc lc;
        std::vector<std::pair<Monomial, RatFunc>> tail;
    };
    CtxPtr ctx_;
    MonoCmp cmp_;
    std::vector<Gen> gens_;

    void sortx(XPoly& p) const {
        std::sort(p.t.begin(), p.t.end(),
                  [&](const auto& a, const auto& b) { return cmp_.cmp(a.first, b.first) > 0; });
    }

    XPoly sub_into(XPoly f, const XPoly& sub) const {
        if (sub.t.empty()) return f;
        XPoly s = sub;
        sortx(s);
        XPoly r;
        size_t i = 0, j = 0;
        while (i < f.t.size() && j < s.t.size()) {
            int c = cmp_.cmp(f.t[i].first, s.t[j].first);
            if (c > 0) {
                r.t.push_back(std::move(f.t[i++]));
            } else if (c < 0) {
                RatFunc v = -s.t[j].second;
                if (!v.is_zero()) r.t.push_back({s.t[j].first, std::move(v)});
                ++j;
            } else {
                RatFunc v = f.t[i].second - s.t[j].second;
                if (!v.is_zero()) r.t.push_back({f.t[i].first, std::move(v)});
                ++i, ++j;
            }
        }
        for (; i < f.t.size(); ++i) r.t.push_back(std::move(f.t[i]));
        for (; j < s.t.size(); ++j) {
            RatFunc v = -s.t[j].second;
            if (!v.is_zero()) r.t.push_back({s.t[j].first, std::move(v)});
        }
        return r;
    }
};

// --- elimination ------------------------------------------------------------------

struct EliminatingPoly {
    MultiPoly w;               // squarefree, primitive, positive leading coefficient
    int deg_u = 0;             // D
    CtxPtr ctx;                // vars + u + params
    std::vector<long> a;       // the linear form u = sum a_i x_i
};

// Adjoin u - sum a_i x_i, eliminate x by the block order grevlex(x) >
// grevlex(u, y), and take the squarefree gcd of the x-free generators.
inline EliminatingPoly elimination_ideal_generator(const ParametricSystem& sys,
                                                   const std::vector<long>& a,
                                                   int delta_expected = -1,
                                                   const OrderSpec& order = OrderSpec::block()) {
    if (static_cast<int>(a.size()) != sys.n()) throw Error("linear form has wrong arity");
    bool nonzero = false;
    for (long ai : a) nonzero |= (ai != 0);
    if (!nonzero) throw Error("zero linear form");

    CtxPtr ectx = sys.ctx->with_aux("u");
    std::vector<MultiPoly> gens;
    for (auto& p : sys.polys) gens.push_back(p.transport(ectx));
    MultiPoly form = MultiPoly::var(ectx, ectx->aux_slot());
    for (int i = 0; i < sys.n(); ++i)
        form -= MultiPoly::var(ectx, ectx->var_slot(i)) * Rat(a[static_cast<size_t>(i)]);
    gens.push_back(form);

    GroebnerBasis gbasis = buchberger(gens, ectx, order);
    std::vector<MultiPoly> xfree;
    for (auto& g : gbasis.gens) {
        bool free = true;
        for (int v = 0; v < ectx->n() && free; ++v)
            if (g.depends_on(v)) free = false;
        if (free) xfree.push_back(g);
    }
    if (xfree.empty()) throw EmptyEliminationError();
    MultiPoly w = squarefree_part(poly_gcd(xfree));
    EliminatingPoly out;
    out.w = w;
    out.deg_u = w.degree_in(ectx->aux_slot());
    out.ctx = ectx;
    out.a = a;
    if (delta_expected >= 0 && out.deg_u < delta_expected)
        throw DegenerateLinearFormError(out.deg_u, delta_expected);
    return out;
}

} // namespace rrc
