#pragma once

// Minors of parametric Hermite matrices by evaluation & interpolation,
// congruence transforms, boundary-polynomial extraction, and the finite-field
// minor probe.

#include "fp.hpp"
#include "hermite.hpp"

namespace rrc {

struct MinorRequest {
    std::vector<int> rows, cols; // equal length, strictly increasing
    int degree_bound = -1;       // optional caller bound
};

namespace detail {

// degree bound for a minor: unconditionally the sum of row maxima of the
// actual entry degrees; under Assumption (E) also sum(deg b_r + deg b_c)
inline int minor_bound(const HermiteMatrix& H, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    int rowsum = 0;
    for (int i : rows) {
        int mx = 0;
        for (int j : cols) mx = std::max(mx, std::max(H.entry_degree(i, j), 0));
        rowsum += mx;
    }
    if (H.assumption_e) {
        int lem = 0;
        for (size_t k = 0; k < rows.size(); ++k)
            lem += static_cast<int>(H.basis.b[static_cast<size_t>(rows[k])].deg() +
                                    H.basis.b[static_cast<size_t>(cols[k])].deg());
        return std::min(rowsum, lem);
    }
    return rowsum;
}

} // namespace detail

// The exact minor as a polynomial in Q[y], via tensor-grid evaluation of
// specialized minors and interpolation.
inline MultiPoly minor_poly(const HermiteMatrix& H, const MinorRequest& req) {
    if (req.rows.size() != req.cols.size() || req.rows.empty())
        throw Error("minor request needs equally many rows and columns");
    Mat<MultiPoly> entries = H.poly_entries(); // requires polynomial entries
    int t = H.yctx->t();
    if (t == 0) {
        MatQ m(static_cast<int>(req.rows.size()), static_cast<int>(req.cols.size()));
        for (size_t i = 0; i < req.rows.size(); ++i)
            for (size_t j = 0; j < req.cols.size(); ++j) {
                std::vector<Rat> none;
                m.at(static_cast<int>(i), static_cast<int>(j)) =
                    entries.at(req.rows[i], req.cols[j]).eval(none);
            }
        return MultiPoly::constant(H.yctx, det_exact(m));
    }
    int bound = req.degree_bound >= 0 ? req.degree_bound : detail::minor_bound(H, req.rows, req.cols);
    std::vector<int> slots;
    for (int i = 0; i < t; ++i) slots.push_back(i);
    auto value_at = [&](std::span<const Rat> pt) {
        MatQ m(static_cast<int>(req.rows.size()), static_cast<int>(req.cols.size()));
        for (size_t i = 0; i < req.rows.size(); ++i)
            for (size_t j = 0; j < req.cols.size(); ++j)
                m.at(static_cast<int>(i), static_cast<int>(j)) =
                    entries.at(req.rows[i], req.cols[j]).eval(pt);
        return det_exact(m);
    };
    MultiPoly out = interp_on_integer_grid(H.yctx, slots, bound, value_at);
    // held-out check catches an undersized caller bound
    std::vector<Rat> check(static_cast<size_t>(t), Rat(bound + 1));
    if (out.eval(check) != value_at(check)) throw ResidualMismatchError();
    return out;
}

// All delta leading principal minors M_1..M_delta (M_0 = 1 implicit).
inline std::vector<MultiPoly> leading_principal_minors(const HermiteMatrix& H) {
    Mat<MultiPoly> entries = H.poly_entries();
    int delta = H.delta(), t = H.yctx->t();
    std::vector<int> bounds(static_cast<size_t>(delta));
    int maxbound = 0;
    for (int k = 1; k <= delta; ++k) {
        std::vector<int> idx(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
        bounds[static_cast<size_t>(k - 1)] = detail::minor_bound(H, idx, idx);
        maxbound = std::max(maxbound, bounds[static_cast<size_t>(k - 1)]);
    }
    if (t == 0) {
        std::vector<Rat> none;
        MatQ m(delta, delta);
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j) m.at(i, j) = entries.at(i, j).eval(none);
        auto ms = leading_principal_minors_q(m);
        std::vector<MultiPoly> out;
        for (auto& v : ms) out.push_back(MultiPoly::constant(H.yctx, v));
        return out;
    }

    std::vector<int> slots;
    for (int i = 0; i < t; ++i) slots.push_back(i);
    // one evaluation pass on the largest grid, then per-k interpolation
    auto nodes = integer_grid(static_cast<size_t>(t), maxbound);
    size_t side = static_cast<size_t>(maxbound) + 1, total = 1;
    for (int a = 0; a < t; ++a) total *= side;
    std::vector<std::vector<Rat>> minors_at(static_cast<size_t>(delta),
                                            std::vector<Rat>(total));
    std::vector<Rat> pt(static_cast<size_t>(t));
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        for (int a = t; a-- > 0;) {
            pt[static_cast<size_t>(a)] = Rat(static_cast<long>(rem % side));
            rem /= side;
        }
        MatQ m(delta, delta);
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j) m.at(i, j) = entries.at(i, j).eval(pt);
        auto ms = leading_principal_minors_q(m);
        for (int k = 0; k < delta; ++k) minors_at[static_cast<size_t>(k)][flat] = ms[static_cast<size_t>(k)];
    }
    std::vector<MultiPoly> out;
    for (int k = 0; k < delta; ++k)
        out.push_back(interp_tensor(H.yctx, slots, nodes, minors_at[static_cast<size_t>(k)]));
    return out;
}

// H_A = A^T * H * A; the Hermite matrix of the A-transformed coordinates.
inline HermiteMatrix congruence(const HermiteMatrix& H, const MatZ& A) {
    HermiteMatrix R = H;
    R.h = congruence_transform<RatFunc>(
        H.h, A, RatFunc(MultiPoly::zero(H.yctx)),
        [&](const RatFunc& x, const Int& z) { return x * RatFunc::constant(H.yctx, Rat(z)); });
    return R;
}

// CleanFactors: squarefree part of p with all factors shared with w_inf removed.
inline MultiPoly clean_factors(const MultiPoly& p, const MultiPoly& w_inf) {
    MultiPoly sf = squarefree_part(p);
    MultiPoly g = poly_gcd(sf, w_inf);
    if (!g.is_constant()) sf = exact_div(sf, g).normalized();
    return sf;
}

// --- finite-field minor probe --------------------------------------------------

// Substitute each y_i by a seeded random linear form in a fresh variable u,
// reduce mod p, and scan the leading principal minors of the univariate
// matrix downward: the returned index is where minor_poly can extract the
// boundary polynomial cheaply.  Monte Carlo, never load-bearing.
inline int modp_minor_probe(const HermiteMatrix& H, std::uint32_t p, std::uint64_t seed) {
    Mat<MultiPoly> entries = H.poly_entries(); // Assumption (C) required
    int delta = H.delta(), t = H.yctx->t();
    SeedStream rng(seed, "modp-lines");
    std::vector<std::uint32_t> alpha(static_cast<size_t>(t)), beta(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) {
        alpha[static_cast<size_t>(i)] = static_cast<std::uint32_t>(rng.next_in(1, p - 1));
        beta[static_cast<size_t>(i)] = static_cast<std::uint32_t>(rng.next_in(0, p - 1));
    }

    // map an entry to Fp[u]
    auto to_fp = [&](const MultiPoly& e) {
        fp::Poly out;
        for (auto& term : e.terms()) {
            // coefficient to Fp
            Int num = term.c.get_num(), den = term.c.get_den();
            std::uint32_t cn = static_cast<std::uint32_t>(mpz_fdiv_ui(num.get_mpz_t(), p));
            std::uint32_t cd = static_cast<std::uint32_t>(mpz_fdiv_ui(den.get_mpz_t(), p));
            if (cd == 0) throw BadReductionError("denominator vanishes mod p");
            std::uint32_t c = fp::mulm(cn, fp::invm(cd, p), p);
            fp::Poly mono{c};
            for (int i = 0; i < t; ++i) {
                fp::Poly lin{beta[static_cast<size_t>(i)], alpha[static_cast<size_t>(i)]};
                for (std::uint32_t k = 0; k < term.m.e[static_cast<size_t>(H.yctx->param_slot(i))]; ++k)
                    mono = fp::mul(mono, lin, p);
            }
            if (mono.size() > out.size()) out.resize(mono.size(), 0);
            for (size_t i = 0; i < mono.size(); ++i) out[i] = fp::addm(out[i], mono[i], p);
        }
        fp::trim(out);
        return out;
    };

    Mat<fp::Poly> M(delta, delta);
    int degsum_bound = 0;
    for (int i = 0; i < delta; ++i) {
        int rowmax = 0;
        for (int j = 0; j < delta; ++j) {
            M.at(i, j) = to_fp(entries.at(i, j));
            int dy = entries.at(i, j).total_degree();
            if (!entries.at(i, j).is_zero() && fp::deg(M.at(i, j)) != dy)
                throw BadReductionError(); // top form cancelled under the substitution
            rowmax = std::max(rowmax, fp::deg(M.at(i, j)));
        }
        degsum_bound += std::max(rowmax, 0);
    }
    if (static_cast<std::uint32_t>(degsum_bound + 2) >= p) throw BadReductionError("prime too small");

    // minors via evaluation/interpolation over Fp: evaluate at enough points
    int npts = degsum_bound + 1;
    std::vector<std::vector<std::uint32_t>> minors(static_cast<size_t>(delta),
                                                   std::vector<std::uint32_t>(static_cast<size_t>(npts)));
    for (int x = 0; x < npts; ++x) {
        // dense numeric matrix at u = x
        std::vector<std::uint32_t> num(static_cast<size_t>(delta) * delta);
        for (int i = 0; i < delta; ++i)
            for (int j = 0; j < delta; ++j)
                num[static_cast<size_t>(i) * delta + j] = fp::eval(M.at(i, j), static_cast<std::uint32_t>(x), p);
        // leading principal minors by Gaussian elimination per size
        for (int k = 1; k <= delta; ++k) {
            std::vector<std::uint64_t> w(static_cast<size_t>(k) * k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) w[static_cast<size_t>(i) * k + j] = num[static_cast<size_t>(i) * delta + j];
            std::uint64_t det = 1;
            bool zero = false;
            for (int c = 0; c < k && !zero; ++c) {
                int piv = -1;
                for (int r = c; r < k; ++r)
                    if (w[static_cast<size_t>(r) * k + c] % p) {
                        piv = r;
                        break;
                    }
                if (piv < 0) {
                    zero = true;
                    break;
                }
                if (piv != c) {
                    for (int j = 0; j < k; ++j) std::swap(w[static_cast<size_t>(piv) * k + j], w[static_cast<size_t>(c) * k + j]);
                    det = p - det % p;
                }
                std::uint64_t pv = w[static_cast<size_t>(c) * k + c] % p;
                det = det * pv % p;
                std::uint64_t inv = fp::invm(static_cast<std::uint32_t>(pv), p);
                for (int r = c + 1; r < k; ++r) {
                    std::uint64_t f = w[static_cast<size_t>(r) * k + c] % p * inv % p;
                    if (!f) continue;
                    for (int j = c; j < k; ++j)
                        w[static_cast<size_t>(r) * k + j] =
                            (w[static_cast<size_t>(r) * k + j] + (p - f) * w[static_cast<size_t>(c) * k + j]) % p;
                }
            }
            minors[static_cast<size_t>(k - 1)][static_cast<size_t>(x)] =
                zero ? 0 : static_cast<std::uint32_t>(det % p);
        }
    }

    // Lagrange interpolation over Fp (points 0..npts-1)
    auto interp = [&](const std::vector<std::uint32_t>& vals) {
        fp::Poly acc;
        for (int i = 0; i < npts; ++i) {
            // basis polynomial through point i
            fp::Poly li{1};
            std::uint64_t denom = 1;
            for (int j = 0; j < npts; ++j) {
                if (j == i) continue;
                fp::Poly lin{fp::subm(0, static_cast<std::uint32_t>(j), p), 1};
                li = fp::mul(li, lin, p);
                denom = denom * fp::subm(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), p) % p;
            }
            std::uint32_t scale = fp::mulm(vals[static_cast<size_t>(i)], fp::invm(static_cast<std::uint32_t>(denom), p), p);
            if (li.size() > acc.size()) acc.resize(li.size(), 0);
            for (size_t c = 0; c < li.size(); ++c) acc[c] = fp::addm(acc[c], fp::mulm(li[c], scale, p), p);
        }
        fp::trim(acc);
        return acc;
    };

    fp::Poly det_u = interp(minors[static_cast<size_t>(delta - 1)]);
    if (det_u.empty()) throw BadReductionError("determinant vanished mod p");
    fp::Poly wbar = fp::squarefree(det_u, p);
    for (int r = delta - 1; r >= 0; --r) {
        fp::Poly mr = r == 0 ? fp::Poly{1} : interp(minors[static_cast<size_t>(r - 1)]);
        if (!fp::divides(wbar, mr, p)) return r + 1;
    }
    return 1;
}

} // namespace rrc
