#pragma once

// Parametric Hermite matrices: construction through the block-order Groebner
// basis and quotient-algebra multiplication maps, denominator removal, the
// evaluation & interpolation fast path, and specialization.

#include "grobner.hpp"
#include "interpolate.hpp"
#include "matrix.hpp"

namespace rrc {

struct HermiteMatrix {
    CtxPtr sysctx;                       // params + vars
    CtxPtr yctx;                         // params only
    QuotientBasis basis;                 // monomials over sysctx slots
    std::vector<MultiPoly> basis_scale;  // rescale multipliers c_i over yctx
    Mat<RatFunc> h;                      // delta x delta entries over yctx
    MultiPoly w_inf;                     // squarefree lcm of x-leading coefficients
    bool assumption_c = false;           // every lc_x(g) constant
    bool assumption_e = false;           // deg(g) = deg_x(g) across the reduced basis
    bool weak_degree_condition = false;  // top x-homogeneous components parameter-free
    int d_y = 0;                         // max parameter degree across the basis

    int delta() const { return basis.delta; }

    bool polynomial_entries() const {
        for (auto& e : h.a)
            if (!e.is_poly()) return false;
        return true;
    }

    Mat<MultiPoly> poly_entries() const {
        Mat<MultiPoly> m(h.rows, h.cols, MultiPoly::zero(yctx));
        for (int i = 0; i < h.rows; ++i)
            for (int j = 0; j < h.cols; ++j) m.at(i, j) = h.at(i, j).as_poly();
        return m;
    }

    int entry_degree(int i, int j) const { // degree of a polynomial entry
        const RatFunc& e = h.at(i, j);
        return e.num().total_degree() - std::max(e.den().total_degree(), 0);
    }

    // exact evaluation at eta in Q^t; OnBadLocus when w_inf or a denominator vanishes
    MatQ specialize(std::span<const Rat> eta) const {
        if (w_inf.eval(eta) == 0) throw OnBadLocusError();
        MatQ m(h.rows, h.cols);
        for (int i = 0; i < h.rows; ++i)
            for (int j = 0; j < h.cols; ++j) {
                bool bad = false;
                m.at(i, j) = h.at(i, j).eval(eta, &bad);
                if (bad) throw OnBadLocusError();
            }
        return m;
    }
};

namespace detail {

inline RatFunc to_params(const RatFunc& r, const CtxPtr& yctx) {
    return RatFunc(r.num().transport(yctx), r.den().transport(yctx));
}

inline int basis_search(const QuotientBasis& qb, const Monomial& m) {
    for (size_t k = 0; k < qb.b.size(); ++k)
        if (qb.b[k] == m) return static_cast<int>(k);
    return -1;
}

} // namespace detail

inline MatQ specialize_matrix(const HermiteMatrix& H, std::span<const Rat> eta) {
    return H.specialize(eta);
}

// Reduced basis, one generator per x-leading monomial, w_inf and the
// assumption flags; entries are left empty for the interpolation path.
inline HermiteMatrix drl_skeleton(const ParametricSystem& sys, GroebnerBasis& gk_out,
                                  const OrderSpec& order = OrderSpec::block()) {
    GroebnerBasis gb = buchberger(sys, order);
    QuotientBasis qb = quotient_basis(gb); // NotZeroDimensional propagates
    GroebnerBasis gk = reduce_gb_over_K(gb);
    const CtxPtr& ctx = sys.ctx;
    CtxPtr yctx = ctx->params_only();
    int n = ctx->n(), delta = qb.delta;

    HermiteMatrix H;
    H.sysctx = ctx;
    H.yctx = yctx;
    H.basis = qb;
    H.basis_scale.assign(static_cast<size_t>(delta), MultiPoly::constant(yctx, Rat(1)));

    // bad locus
    MultiPoly winf = MultiPoly::constant(ctx, Rat(1));
    for (auto& g : gk.gens) winf = poly_lcm(winf, gk.lc_x(g));
    H.w_inf = squarefree_part(winf).to_params_only();

    // assumption flags from the full reduced basis
    H.assumption_c = true;
    H.assumption_e = true;
    H.weak_degree_condition = true;
    H.d_y = 0;
    for (auto& g : gb.gens) {
        if (!gb.lc_x(g).is_constant()) H.assumption_c = false;
        int dx = g.degree_in_vars();
        if (g.total_degree() != dx) H.assumption_e = false;
        H.d_y = std::max(H.d_y, g.degree_in_params());
        // weak condition: the x-degree-top homogeneous component is parameter-free
        for (auto& t : g.terms())
            if (static_cast<int>(t.m.deg_range(0, n)) == dx && t.m.deg_range(n, ctx->slots()) > 0)
                H.weak_degree_condition = false;
    }
    gk_out = std::move(gk);
    return H;
}

// Alg. pipeline: reduced basis, one generator per x-leading monomial, w_inf,
// multiplication matrices of the variables, then of the basis monomials by
// degree induction, and traces with duplicate entries computed once.
inline HermiteMatrix drl_matrix(const ParametricSystem& sys,
                                const OrderSpec& order = OrderSpec::block()) {
    GroebnerBasis gk;
    HermiteMatrix H = drl_skeleton(sys, gk, order);
    const CtxPtr& ctx = sys.ctx;
    const CtxPtr& yctx = H.yctx;
    const QuotientBasis& qb = H.basis;
    int n = ctx->n(), delta = qb.delta;

    NormalFormer nf(gk);

    // multiplication matrices as polynomial matrices over one common
    // denominator, so products need no rational-function simplification
    struct ScaledMat {
        Mat<MultiPoly> m;
        MultiPoly den;
    };
    MultiPoly one = MultiPoly::constant(ctx, Rat(1));
    auto reduce_scaled = [&](ScaledMat& s) {
        if (s.den.is_constant()) {
            if (s.den.constant_value() != 1) {
                Rat c = s.den.constant_value();
                for (auto& e : s.m.a) e = e * (1 / c);
                s.den = one;
            }
            return;
        }
        MultiPoly g = s.den;
        for (auto& e : s.m.a) {
            if (e.is_zero()) continue;
            g = poly_gcd(g, e);
            if (g.is_constant()) break;
        }
        if (!g.is_constant()) {
            for (auto& e : s.m.a) e = e.is_zero() ? e : exact_div(e, g);
            s.den = exact_div(s.den, g);
        }
        Rat c = s.den.leading().c;
        if (c != 1) {
            for (auto& e : s.m.a) e = e * (1 / c);
            s.den = s.den * (1 / c);
        }
    };

    // XMatrices: row j of L_{x_i} holds the coordinates of NF(x_i * b_j)
    std::vector<ScaledMat> Lx;
    for (int v = 0; v < n; ++v) {
        Mat<std::pair<MultiPoly, MultiPoly>> raw(delta, delta, {MultiPoly::zero(ctx), one});
        MultiPoly den = one;
        for (int j = 0; j < delta; ++j) {
            XPoly r = nf.nf_product(Monomial::unit(ctx->slots(), v), qb.b[static_cast<size_t>(j)]);
            auto coords = nf.coords(r, qb);
            for (int k = 0; k < delta; ++k) {
                raw.at(j, k) = {coords[static_cast<size_t>(k)].num(), coords[static_cast<size_t>(k)].den()};
                den = poly_lcm(den, coords[static_cast<size_t>(k)].den());
            }
        }
        ScaledMat s{Mat<MultiPoly>(delta, delta, MultiPoly::zero(ctx)), den};
        for (int j = 0; j < delta; ++j)
            for (int k = 0; k < delta; ++k) {
                auto& [num, d] = raw.at(j, k);
                if (!num.is_zero()) s.m.at(j, k) = num * exact_div(den, d);
            }
        Lx.push_back(std::move(s));
    }

    // BMatrices by degree induction: L_b = L_{b'} * L_{x_v} for b = x_v * b'
    std::vector<ScaledMat> Lb(static_cast<size_t>(delta));
    for (int k = 0; k < delta; ++k) {
        const Monomial& b = qb.b[static_cast<size_t>(k)];
        if (b.is_one()) {
            ScaledMat id{Mat<MultiPoly>(delta, delta, MultiPoly::zero(ctx)), one};
            for (int i = 0; i < delta; ++i) id.m.at(i, i) = one;
            Lb[static_cast<size_t>(k)] = std::move(id);
            continue;
        }
        if (b.deg() == 1) {
            for (int v = 0; v < n; ++v)
                if (b.e[v]) Lb[static_cast<size_t>(k)] = Lx[static_cast<size_t>(v)];
            continue;
        }
        int v = -1, kprev = -1;
        for (int cand = 0; cand < n && v < 0; ++cand) {
            if (!b.e[cand]) continue;
            Monomial br = b;
            br.e[cand] -= 1;
            int idx = detail::basis_search(qb, br);
            if (idx >= 0 && !Lb[static_cast<size_t>(idx)].m.a.empty()) {
                v = cand;
                kprev = idx;
            }
        }
        if (v < 0) throw Error("staircase is not divisor-closed"); // cannot happen
        const ScaledMat& A = Lb[static_cast<size_t>(kprev)];
        const ScaledMat& B = Lx[static_cast<size_t>(v)];
        ScaledMat M{Mat<MultiPoly>(delta, delta, MultiPoly::zero(ctx)), A.den * B.den};
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j) {
                MultiPoly acc = MultiPoly::zero(ctx);
                for (int l = 0; l < delta; ++l)
                    if (!A.m.at(i, l).is_zero() && !B.m.at(l, j).is_zero())
                        acc += A.m.at(i, l) * B.m.at(l, j);
                M.m.at(i, j) = std::move(acc);
            }
        reduce_scaled(M);
        Lb[static_cast<size_t>(k)] = std::move(M);
    }

    // traces of the basis multiplication maps
    std::vector<RatFunc> tr;
    for (int k = 0; k < delta; ++k) {
        MultiPoly acc = MultiPoly::zero(ctx);
        for (int i = 0; i < delta; ++i) acc += Lb[static_cast<size_t>(k)].m.at(i, i);
        tr.push_back(RatFunc(acc, Lb[static_cast<size_t>(k)].den));
    }

    // TraceComputing with duplicate products computed once
    std::map<std::vector<std::uint32_t>, RatFunc> memo;
    H.h = Mat<RatFunc>(delta, delta, RatFunc(MultiPoly::zero(yctx)));
    RatFunc zero(MultiPoly::zero(ctx));
    for (int i = 0; i < delta; ++i)
        for (int j = i; j < delta; ++j) {
            Monomial prod = qb.b[static_cast<size_t>(i)] * qb.b[static_cast<size_t>(j)];
            auto it = memo.find(prod.e);
            if (it == memo.end()) {
                // row j of L_{b_i} is NF(b_i * b_j)
                const ScaledMat& Li = Lb[static_cast<size_t>(i)];
                RatFunc acc = zero;
                for (int k = 0; k < delta; ++k) {
                    const MultiPoly& c = Li.m.at(j, k);
                    if (!c.is_zero()) acc += RatFunc(c, Li.den) * tr[static_cast<size_t>(k)];
                }
                it = memo.emplace(prod.e, detail::to_params(acc, yctx)).first;
            }
            H.h.at(i, j) = it->second;
            H.h.at(j, i) = it->second;
        }
    return H;
}

// Rescale basis elements by the denominators of the traces (first row),
// multiplying entry (i,j) by c_i * c_j.
inline HermiteMatrix remove_denominators(const HermiteMatrix& H) {
    HermiteMatrix R = H;
    int delta = H.delta();
    std::vector<MultiPoly> c;
    for (int i = 0; i < delta; ++i) c.push_back(H.h.at(0, i).den());
    for (int i = 0; i < delta; ++i) R.basis_scale[static_cast<size_t>(i)] =
        (R.basis_scale[static_cast<size_t>(i)] * c[static_cast<size_t>(i)]).normalized();
    for (int i = 0; i < delta; ++i)
        for (int j = 0; j < delta; ++j)
            R.h.at(i, j) = H.h.at(i, j) * RatFunc(c[static_cast<size_t>(i)] * c[static_cast<size_t>(j)]);
    return R;
}

// Row-lcm rescale: always reaches polynomial entries.  The extra factors are
// products of x-leading coefficients, so their zero sets sit inside W_inf.
inline HermiteMatrix clear_all_denominators(const HermiteMatrix& H) {
    if (H.polynomial_entries()) return H;
    HermiteMatrix R = H;
    int delta = H.delta();
    std::vector<MultiPoly> c;
    for (int i = 0; i < delta; ++i) {
        MultiPoly l = MultiPoly::constant(H.yctx, Rat(1));
        for (int j = 0; j < delta; ++j) l = poly_lcm(l, H.h.at(i, j).den());
        c.push_back(l);
    }
    for (int i = 0; i < delta; ++i) R.basis_scale[static_cast<size_t>(i)] =
        (R.basis_scale[static_cast<size_t>(i)] * c[static_cast<size_t>(i)]).normalized();
    for (int i = 0; i < delta; ++i)
        for (int j = 0; j < delta; ++j)
            R.h.at(i, j) = H.h.at(i, j) * RatFunc(c[static_cast<size_t>(i)] * c[static_cast<size_t>(j)]);
    return R;
}

// Evaluation & interpolation scheme, valid under Assumption (C): compute the
// specialized Hermite matrix over Q on an integer grid and interpolate
// entrywise.  Lambda defaults to twice the maximal basis degree (times d_y
// when only the weaker degree condition holds).
inline HermiteMatrix interp_hermite(const ParametricSystem& sys, int lambda = -1,
                                    const OrderSpec& order = OrderSpec::block()) {
    GroebnerBasis gk;
    HermiteMatrix shape = drl_skeleton(sys, gk, order); // basis and flags only
    if (!shape.assumption_c) throw AssumptionCViolatedError();
    if (sys.t() == 0) return drl_matrix(sys, order);
    shape.h = Mat<RatFunc>(shape.delta(), shape.delta(), RatFunc(MultiPoly::zero(shape.yctx)));

    int maxb = 0;
    for (auto& b : shape.basis.b) maxb = std::max<int>(maxb, static_cast<int>(b.deg()));
    if (lambda < 0) {
        if (shape.assumption_e)
            lambda = 2 * maxb;
        else if (shape.weak_degree_condition)
            lambda = std::max(1, shape.d_y) * 2 * maxb;
        else
            throw Error("no degree bound available: pass an explicit lambda");
    }

    int delta = shape.delta();
    std::vector<int> slots;
    for (int i = 0; i < sys.t(); ++i) slots.push_back(i); // yctx slots
    auto specialized_matrix = [&](std::span<const Rat> pt) {
        ParametricSystem s = sys.specialize(pt);
        HermiteMatrix hq = drl_matrix(s, order);
        if (hq.basis.b.size() != shape.basis.b.size()) throw ResidualMismatchError(
            "staircase changed under specialization");
        MatQ m(delta, delta);
        std::vector<Rat> none;
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j) m.at(i, j) = hq.h.at(i, j).eval(none);
        return m;
    };

    // one grid pass, all entries; duplicates share interpolations
    size_t side = static_cast<size_t>(lambda) + 1;
    size_t total = 1;
    for (int a = 0; a < sys.t(); ++a) total *= side;
    std::vector<MatQ> values;
    values.reserve(total);
    std::vector<Rat> pt(static_cast<size_t>(sys.t()));
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        for (int a = sys.t(); a-- > 0;) {
            pt[static_cast<size_t>(a)] = Rat(static_cast<long>(rem % side));
            rem /= side;
        }
        values.push_back(specialized_matrix(pt));
    }

    HermiteMatrix out = shape;
    auto nodes = integer_grid(static_cast<size_t>(sys.t()), lambda);
    std::map<std::vector<std::uint32_t>, MultiPoly> memo;
    std::vector<Rat> entry_vals(total);
    for (int i = 0; i < delta; ++i)
        for (int j = i; j < delta; ++j) {
            Monomial prod = shape.basis.b[static_cast<size_t>(i)] * shape.basis.b[static_cast<size_t>(j)];
            auto it = memo.find(prod.e);
            if (it == memo.end()) {
                for (size_t f = 0; f < total; ++f) entry_vals[f] = values[f].at(i, j);
                MultiPoly p = interp_tensor(out.yctx, slots, nodes, entry_vals);
                if (p.total_degree() > lambda) throw ResidualMismatchError();
                it = memo.emplace(prod.e, std::move(p)).first;
            }
            out.h.at(i, j) = RatFunc(it->second);
            out.h.at(j, i) = RatFunc(it->second);
        }

    // held-out residual check
    std::vector<Rat> check_pt(static_cast<size_t>(sys.t()), Rat(lambda + 1));
    MatQ direct = specialized_matrix(check_pt);
    for (int i = 0; i < delta; ++i)
        for (int j = 0; j < delta; ++j)
            if (out.h.at(i, j).eval(check_pt) != direct.at(i, j)) throw ResidualMismatchError();
    return out;
}

} // namespace rrc
