#pragma once

// Principal subresultant coefficients and generalized permanences minus
// variations.
//
// Sequences are indexed s_0..s_D with s_0 = lc(p) and s_i the principal
// coefficient of the subresultant of degree D-i, carrying the Sturm-Habicht
// sign twist eps_i = (-1)^(i(i-1)/2).  With that convention
//     generalized_pmv(signs of s(p, p')) = #distinct real roots of p,
// which is pinned down by the isolation oracle in the test suite.  (The
// untwisted s_D equals the classic resultant; the twist flips it exactly when
// D = 2, 3 mod 4.)

#include "interpolate.hpp"
#include "matrix.hpp"
#include "polygcd.hpp"
#include "unipoly.hpp"

namespace rrc {

inline int subres_sign_twist(int i) { // eps_i = (-1)^(i(i-1)/2)
    return (static_cast<long>(i) * (i - 1) / 2) % 2 ? -1 : 1;
}

namespace detail {

// Matrix whose determinant is the principal subresultant coefficient of
// degree j: rows are the shifts p*u^(E-j-1..0), q*u^(D-j-1..0) restricted to
// the columns of degree D+E-j-1 .. j.  Entries come from a coefficient
// accessor so the same shape serves Q and Q[y].
template <class T, class CoeffP, class CoeffQ>
Mat<T> subres_matrix(int D, int E, int j, CoeffP coeff_p, CoeffQ coeff_q, const T& zero) {
    int m = D + E - 2 * j;
    Mat<T> M(m, m, zero);
    int top = D + E - j - 1;
    for (int r = 0; r < E - j; ++r)
        for (int c = 0; c < m; ++c) {
            int deg = top - c - (E - j - 1 - r);
            M.at(r, c) = coeff_p(deg);
        }
    for (int r = 0; r < D - j; ++r)
        for (int c = 0; c < m; ++c) {
            int deg = top - c - (D - j - 1 - r);
            M.at(E - j + r, c) = coeff_q(deg);
        }
    return M;
}

} // namespace detail

// Signed principal subresultant coefficients over Q (s_0..s_D).
inline std::vector<Rat> subres_signed_q(const UniPoly& p, const UniPoly& q) {
    int D = p.degree(), E = q.degree();
    if (p.is_zero() || D < E || E < 0) throw Error("subresultants need deg p >= deg q >= 0");
    std::vector<Rat> s(static_cast<size_t>(D) + 1, Rat(0));
    s[0] = p.lc();
    auto cp = [&](int d) { return p.coeff(d); };
    auto cq = [&](int d) { return q.coeff(d); };
    for (int i = 1; i <= D; ++i) {
        int j = D - i;
        if (j > E) continue; // defective top of the chain: zero
        Mat<Rat> M = detail::subres_matrix<Rat>(D, E, j, cp, cq, Rat(0));
        Rat d = det_exact(M);
        s[i] = subres_sign_twist(i) * d;
    }
    return s;
}

// Generalized permanences minus variations (zero-gap rule: a run of q zeros
// between nonzero entries contributes nothing when q is odd and
// (-1)^(q/2) * sign(s_i * s_j) when q is even).
inline int generalized_pmv(const std::vector<int>& sg) {
    if (sg.empty() || sg[0] == 0) throw Error("generalized_pmv: leading sign must be nonzero");
    int total = 0;
    size_t i = 0;
    while (true) {
        size_t j = i + 1;
        while (j < sg.size() && sg[j] == 0) ++j;
        if (j >= sg.size()) break;
        int gap = static_cast<int>(j - i - 1);
        if (gap % 2 == 0) {
            int contrib = sg[i] * sg[j];
            if ((gap / 2) % 2) contrib = -contrib;
            total += contrib;
        }
        i = j;
    }
    return total;
}

inline std::vector<int> signs_of(const std::vector<Rat>& xs) {
    std::vector<int> s(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) s[i] = sign(xs[i]);
    return s;
}

// Real-root count through the subresultant route (independent of isolation).
inline int pmv_real_root_count(const UniPoly& p) {
    if (p.is_zero()) throw Error("pmv_real_root_count: zero polynomial");
    if (p.degree() == 0) return 0;
    auto s = subres_signed_q(p, p.derivative());
    return generalized_pmv(signs_of(s));
}

// --- parametric carrier -------------------------------------------------------

struct SubresultantCoeffs {
    bool poly_kind = false;
    int D = 0;
    std::vector<Rat> sq;        // rational carrier
    std::vector<MultiPoly> sp;  // Q[y] carrier

    size_t size() const { return poly_kind ? sp.size() : sq.size(); }

    std::vector<Rat> eval(std::span<const Rat> point) const {
        if (!poly_kind) return sq;
        std::vector<Rat> v(sp.size());
        for (size_t i = 0; i < sp.size(); ++i) v[i] = sp[i].eval(point);
        return v;
    }
};

enum class SubresMethod { Auto, Direct, EvalInterp };

// Signed principal subresultant coefficients of (p, q) viewed in `slot` over
// the remaining variables.  EvalInterp evaluates the fixed-shape coefficient
// matrices on integer grids (so it commutes with specialization even where
// degrees drop) and interpolates; Direct runs Bareiss on polynomial entries.
inline std::vector<MultiPoly> subres_signed_in_slot(const MultiPoly& p, const MultiPoly& q, int slot,
                                                    SubresMethod method = SubresMethod::Auto) {
    const CtxPtr& ctx = p.ctx();
    require_same_ctx(ctx, q.ctx());
    int D = p.degree_in(slot), E = q.degree_in(slot);
    if (p.is_zero() || D < E || E < 0) throw Error("subresultants need deg p >= deg q >= 0");

    std::vector<MultiPoly> cp = p.coeffs_in(slot), cq = q.coeffs_in(slot);
    std::vector<int> other;
    for (int s = 0; s < ctx->slots(); ++s)
        if (s != slot && (p.depends_on(s) || q.depends_on(s))) other.push_back(s);

    std::vector<MultiPoly> out(static_cast<size_t>(D) + 1, MultiPoly::zero(ctx));
    out[0] = cp[static_cast<size_t>(D)];

    if (method == SubresMethod::Auto) method = SubresMethod::EvalInterp;
    if (other.empty()) method = SubresMethod::Direct;

    auto at_p = [&](int d) { return d >= 0 && d <= D ? cp[static_cast<size_t>(d)] : MultiPoly::zero(ctx); };
    auto at_q = [&](int d) { return d >= 0 && d <= E ? cq[static_cast<size_t>(d)] : MultiPoly::zero(ctx); };

    if (method == SubresMethod::Direct) {
        for (int i = 1; i <= D; ++i) {
            int j = D - i;
            if (j > E) continue;
            Mat<MultiPoly> M = detail::subres_matrix<MultiPoly>(D, E, j, at_p, at_q,
                                                                MultiPoly::zero(ctx));
            MultiPoly det = poly_mat_det(M);
            if (subres_sign_twist(i) < 0) det = -det;
            out[static_cast<size_t>(i)] = std::move(det);
        }
        return out;
    }

    // evaluation & interpolation: one grid pass evaluates the whole chain per
    // point (subresultant PRS when the degrees survive specialization, fixed-
    // shape determinants otherwise), then each coefficient is interpolated
    // from its own sub-grid
    int dmaxp = 0, dmaxq = 0;
    for (auto& f : cp) dmaxp = std::max(dmaxp, f.total_degree());
    for (auto& f : cq) dmaxq = std::max(dmaxq, f.total_degree());
    int bezout = std::max(1, p.total_degree() * q.total_degree());

    auto bound_for = [&](int i) {
        int j = D - i;
        int rowsum = (E - j) * dmaxp + (D - j) * dmaxq; // deg det <= sum of row maxima
        return std::pair<int, int>{std::min(bezout, rowsum), rowsum};
    };

    size_t k = other.size();
    auto chain_at = [&](std::span<const Rat> pt) {
        std::vector<Rat> full(ctx->slots(), Rat(0));
        for (size_t a = 0; a < k; ++a) full[static_cast<size_t>(other[a])] = pt[a];
        std::vector<Rat> vp, vq;
        for (auto& f : cp) vp.push_back(f.eval(full));
        for (auto& f : cq) vq.push_back(f.eval(full));
        std::vector<Rat> s(static_cast<size_t>(D) + 1, Rat(0));
        bool degs_ok = vp.back() != 0 && vq.back() != 0 && E < D;
        if (degs_ok) {
            UniPoly pe{std::vector<Rat>(vp)}, qe{std::vector<Rat>(vq)};
            auto sres = psc_chain_prs(pe, qe);
            for (int i = 1; i <= D; ++i) {
                int j = D - i;
                if (j > E) continue;
                s[static_cast<size_t>(i)] = sres[static_cast<size_t>(j)];
            }
        } else {
            auto evp = [&](int d) { return d >= 0 && d <= D ? vp[static_cast<size_t>(d)] : Rat(0); };
            auto evq = [&](int d) { return d >= 0 && d <= E ? vq[static_cast<size_t>(d)] : Rat(0); };
            for (int i = 1; i <= D; ++i) {
                int j = D - i;
                if (j > E) continue;
                Mat<Rat> M = detail::subres_matrix<Rat>(D, E, j, evp, evq, Rat(0));
                s[static_cast<size_t>(i)] = det_exact(M);
            }
        }
        return s;
    };

    int maxbound = 0;
    for (int i = 1; i <= D; ++i)
        if (D - i <= E) maxbound = std::max(maxbound, bound_for(i).first);

    auto grid_pass = [&](int side) {
        size_t total = 1;
        for (size_t a = 0; a < k; ++a) total *= static_cast<size_t>(side);
        std::vector<std::vector<Rat>> vals(static_cast<size_t>(D) + 1,
                                           std::vector<Rat>(total));
        std::vector<Rat> pt(k);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rem = flat;
            for (size_t a = k; a-- > 0;) {
                pt[a] = Rat(static_cast<long>(rem % static_cast<size_t>(side)));
                rem /= static_cast<size_t>(side);
            }
            auto s = chain_at(pt);
            for (int i = 1; i <= D; ++i) vals[static_cast<size_t>(i)][flat] = s[static_cast<size_t>(i)];
        }
        return vals;
    };

    int side0 = maxbound + 1;
    auto vals = grid_pass(side0);

    auto interp_from = [&](const std::vector<Rat>& big, int side_big, int bound) {
        // sub-tensor 0..bound per axis out of the big grid
        size_t side = static_cast<size_t>(bound) + 1, total = 1;
        for (size_t a = 0; a < k; ++a) total *= side;
        std::vector<Rat> sub(total);
        std::vector<size_t> idx(k, 0);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rem = flat, bigflat = 0;
            for (size_t a = k; a-- > 0;) {
                idx[a] = rem % side;
                rem /= side;
            }
            for (size_t a = 0; a < k; ++a) bigflat = bigflat * static_cast<size_t>(side_big) + idx[a];
            sub[flat] = big[bigflat];
        }
        auto nodes = integer_grid(k, bound);
        return interp_tensor(ctx, other, nodes, std::move(sub));
    };

    for (int i = 1; i <= D; ++i) {
        int j = D - i;
        if (j > E) continue;
        auto [b_lo, b_hi] = bound_for(i);
        bool done = false;
        for (int attempt = 0; attempt < 2 && !done; ++attempt) {
            int bound = attempt == 0 ? b_lo : b_hi;
            if (attempt == 1 && b_hi == b_lo) break;
            MultiPoly cand;
            if (bound <= maxbound) {
                cand = interp_from(vals[static_cast<size_t>(i)], side0, bound);
            } else {
                // escalated bound beyond the shared grid: dedicated pass
                auto value_at = [&](std::span<const Rat> pt) {
                    return chain_at(pt)[static_cast<size_t>(i)];
                };
                cand = interp_on_integer_grid(ctx, other, bound, value_at);
            }
            if (cand.total_degree() > bound) continue; // wrong bound, escalate
            // held-out verification
            bool ok = true;
            std::uint64_t st = 0xabcdef12345ULL + static_cast<std::uint64_t>(i);
            for (int v = 0; v < 3 && ok; ++v) {
                std::vector<Rat> pt(k);
                std::vector<Rat> full(ctx->slots(), Rat(0));
                for (size_t a = 0; a < k; ++a) {
                    pt[a] = Rat(static_cast<long>(splitmix64(st) % 2000) + static_cast<long>(bound) + 2);
                    full[static_cast<size_t>(other[a])] = pt[a];
                }
                ok = cand.eval(full) == chain_at(pt)[static_cast<size_t>(i)];
            }
            if (ok) {
                if (subres_sign_twist(i) < 0) cand = -cand;
                out[static_cast<size_t>(i)] = std::move(cand);
                done = true;
            }
        }
        if (!done) throw ResidualMismatchError();
    }
    return out;
}

} // namespace rrc
