#pragma once

// End-to-end drivers: the weak and full Hermite classifiers, the
// Sturm/subresultant classifier, and the cross-validation harness.

#include <cmath>
#include <optional>
#include <set>

#include "linalg.hpp"
#include "samplepoints.hpp"

namespace rrc {

struct Cell {
    std::vector<int> signs;  // over the nonconstant classification polynomials
    std::vector<Rat> sample; // eta in Q^t
    int count = 0;           // distinct real roots at eta
};

struct ClassificationResult {
    std::string algorithm;
    std::vector<std::string> x_order;
    std::uint64_t seed = 0;
    CtxPtr yctx;
    int delta = 0;

    MultiPoly w_infinity;
    std::optional<MultiPoly> w_H;          // hermite-weak boundary
    std::vector<MultiPoly> minors;         // hermite-full: M_1..M_delta
    std::vector<MultiPoly> subresultants;  // sturm: s_0..s_D, content-normalized
    std::vector<MultiPoly> condition_polys; // the nonconstant polynomials cells refer to

    std::vector<Cell> cells;
    // count -> sign vectors; full mode over condition_polys, fast mode over all minors
    std::map<int, std::vector<std::vector<int>>> formulas;
    bool fast_mode = false;
    std::string realizability = "exact";
    std::vector<std::string> warnings;

    std::set<int> realized_counts() const {
        std::set<int> s;
        for (auto& c : cells) s.insert(c.count);
        return s;
    }
};

namespace detail {

inline std::vector<std::string> order_names(const ParametricSystem& sys, const OrderSpec& order) {
    std::vector<std::string> v;
    if (order.xperm.empty()) {
        for (auto& x : sys.ctx->vars()) v.push_back(x);
    } else {
        for (int i : order.xperm) v.push_back(sys.ctx->vars()[static_cast<size_t>(i)]);
    }
    return v;
}

inline int sign_variations_with_one(const std::vector<Rat>& ms) {
    int var = 0, last = 1;
    for (auto& v : ms) {
        int s = sign(v);
        if (s == 0) throw Error("internal: vanishing minor at a sample point");
        if (s != last) ++var;
        last = s;
    }
    return var;
}

} // namespace detail

// Alg. Weak-RRC-Hermite: boundary w_H from det(H), sample points, signatures.
inline ClassificationResult weak_rrc_hermite(const ParametricSystem& sys, std::uint64_t seed,
                                             const OrderSpec& order = OrderSpec::block()) {
    ClassificationResult res;
    res.algorithm = "hermite-weak";
    res.x_order = detail::order_names(sys, order);
    res.seed = seed;

    HermiteMatrix H = clear_all_denominators(drl_matrix(sys, order));
    res.yctx = H.yctx;
    res.delta = H.delta();
    res.w_infinity = H.w_inf;

    MinorRequest full;
    for (int i = 0; i < H.delta(); ++i) {
        full.rows.push_back(i);
        full.cols.push_back(i);
    }
    MultiPoly det = minor_poly(H, full);
    if (det.is_zero()) throw IdenticallyZeroDeterminantError();
    MultiPoly wh = clean_factors(det, H.w_inf);
    res.w_H = wh;

    std::vector<MultiPoly> gs;
    if (!wh.is_constant()) gs.push_back(wh);
    if (!H.w_inf.is_constant()) gs.push_back(H.w_inf);
    for (auto& g : gs) res.condition_polys.push_back(g);
    auto pts = sample_points(gs, H.yctx, &res.warnings);

    for (auto& pt : pts) {
        Cell c;
        c.sample = pt;
        for (auto& g : res.condition_polys) c.signs.push_back(sign(g.eval(pt)));
        MatQ hq = specialize_matrix(H, pt);
        c.count = signature(hq);
        if ((c.count - rank(hq)) % 2 != 0) throw Error("internal: parity violation at a sample point");
        res.cells.push_back(std::move(c));
    }
    for (auto& c : res.cells) {
        auto& v = res.formulas[c.count];
        if (std::find(v.begin(), v.end(), c.signs) == v.end()) v.push_back(c.signs);
    }
    return res;
}

struct RrcOptions {
    enum FastMode { Auto, On, Off } fast = Auto;
    OrderSpec order = OrderSpec::block();
    int congruence_retries = 20;
};

// Alg. RRC-Hermite with the variation fast path: sample the complement of all
// leading principal minors, read counts off signatures, assemble formulas
// either from the realized sign conditions or as variation-count classes.
inline ClassificationResult rrc_hermite(const ParametricSystem& sys, std::uint64_t seed,
                                        const RrcOptions& opt = {}) {
    ClassificationResult res;
    res.algorithm = "hermite-full";
    res.x_order = detail::order_names(sys, opt.order);
    res.seed = seed;

    HermiteMatrix H = clear_all_denominators(drl_matrix(sys, opt.order));
    res.yctx = H.yctx;
    res.delta = H.delta();
    res.w_infinity = H.w_inf;
    int delta = H.delta();

    // deterministic first try: A = identity; Las Vegas resampling on a
    // degenerate minor (a vanishing determinant cannot be cured by congruence
    // and signals a non-radical input)
    SeedStream rng(seed, "congruence-A");
    HermiteMatrix HA = H;
    std::vector<MultiPoly> minors;
    bool ok = false;
    for (int attempt = 0; attempt <= opt.congruence_retries && !ok; ++attempt) {
        if (attempt > 0) {
            MatZ A = random_unimodularish(delta, rng);
            HA = congruence(H, A);
        }
        minors = leading_principal_minors(HA);
        if (minors.back().is_zero()) throw IdenticallyZeroDeterminantError();
        ok = true;
        for (auto& m : minors) ok &= !m.is_zero();
    }
    if (!ok) throw DegenerateMinorError();
    res.minors = minors;

    std::vector<MultiPoly> gs;
    for (auto& m : minors)
        if (!m.is_constant()) {
            gs.push_back(m);
            res.condition_polys.push_back(m);
        }
    if (!H.w_inf.is_constant()) gs.push_back(H.w_inf);
    auto pts = sample_points(gs, H.yctx, &res.warnings);

    for (auto& pt : pts) {
        Cell c;
        c.sample = pt;
        std::vector<Rat> mvals;
        for (auto& m : minors) mvals.push_back(m.eval(pt));
        for (size_t k = 0; k < minors.size(); ++k)
            if (!minors[k].is_constant()) c.signs.push_back(sign(mvals[k]));
        MatQ hq = specialize_matrix(HA, pt);
        c.count = signature(hq);
        // Hurwitz consistency inside the cell
        int var = detail::sign_variations_with_one(mvals);
        if (delta - 2 * var != c.count) throw Error("internal: Hurwitz inconsistency at a sample point");
        if ((c.count - rank(hq)) % 2 != 0) throw Error("internal: parity violation at a sample point");
        res.cells.push_back(std::move(c));
    }

    bool use_fast;
    switch (opt.fast) {
        case RrcOptions::On: use_fast = true; break;
        case RrcOptions::Off: use_fast = false; break;
        default: {
            // the switch rule: variation classes until 2^delta exceeds delta^{3t}
            double lhs = delta * std::log(2.0);
            double rhs = 3.0 * sys.t() * std::log(static_cast<double>(delta));
            use_fast = lhs <= rhs;
        }
    }
    res.fast_mode = use_fast;
    if (!use_fast) {
        for (auto& c : res.cells) {
            auto& v = res.formulas[c.count];
            if (std::find(v.begin(), v.end(), c.signs) == v.end()) v.push_back(c.signs);
        }
        res.realizability = "exact";
        return res;
    }

    // fast path: for each realized r, all sign vectors over (M_1..M_delta)
    // whose variation count against the leading 1 is (delta - r)/2, filtered
    // by the fixed signs of constant minors
    res.realizability = "possible-superset";
    std::vector<int> fixed(static_cast<size_t>(delta), 0);
    for (int k = 0; k < delta; ++k)
        if (minors[static_cast<size_t>(k)].is_constant())
            fixed[static_cast<size_t>(k)] = sign(minors[static_cast<size_t>(k)].constant_value());
    std::set<int> counts = res.realized_counts();
    for (int r : counts) {
        if ((delta - r) % 2) continue;
        int want = (delta - r) / 2;
        std::vector<std::vector<int>> sigma;
        for (std::uint64_t mask = 0; mask < (1ULL << delta); ++mask) {
            std::vector<int> sg(static_cast<size_t>(delta));
            int var = 0, last = 1;
            bool consistent = true;
            for (int k = 0; k < delta; ++k) {
                int s = (mask >> k) & 1 ? 1 : -1;
                if (fixed[static_cast<size_t>(k)] && s != fixed[static_cast<size_t>(k)]) {
                    consistent = false;
                    break;
                }
                sg[static_cast<size_t>(k)] = s;
                if (s != last) ++var;
                last = s;
            }
            if (consistent && var == want) sigma.push_back(std::move(sg));
        }
        res.formulas[r] = std::move(sigma);
    }
    return res;
}

// Alg. RRC-Sturm: eliminating polynomial, signed subresultant coefficients,
// sample points off their zero sets, counts by generalized PmV.
inline ClassificationResult rrc_sturm(const ParametricSystem& sys, std::uint64_t seed,
                                      const OrderSpec& order = OrderSpec::block()) {
    ClassificationResult res;
    res.algorithm = "sturm";
    res.x_order = detail::order_names(sys, order);
    res.seed = seed;
    res.yctx = sys.ctx->params_only();

    GroebnerBasis gb = buchberger(sys, order);
    QuotientBasis qb = quotient_basis(gb);
    res.delta = qb.delta;

    // deterministic first linear form, then seeded Las Vegas retries
    SeedStream rng(seed, "linear-form");
    std::vector<long> a(static_cast<size_t>(sys.n()), 0);
    a.back() = 1;
    EliminatingPoly elim;
    bool have = false;
    for (int attempt = 0; attempt < 20 && !have; ++attempt) {
        try {
            elim = elimination_ideal_generator(sys, a, qb.delta, order);
            have = true;
        } catch (const DegenerateLinearFormError&) {
            for (auto& ai : a) ai = rng.next_in(-10, 10);
            if (std::all_of(a.begin(), a.end(), [](long v) { return v == 0; })) a.back() = 1;
        }
    }
    if (!have) throw DegenerateLinearFormError(-1, qb.delta);

    int uslot = elim.ctx->aux_slot();
    auto s = subres_signed_in_slot(elim.w, elim.w.derivative(uslot), uslot);

    // content-normalized copies in the parameter context for reporting
    CtxPtr rctx = res.yctx;
    for (auto& si : s) {
        if (si.is_zero()) {
            res.subresultants.push_back(MultiPoly::zero(rctx));
            continue;
        }
        Rat c = si.content();
        res.subresultants.push_back((si * (1 / c)).transport(rctx));
    }
    res.w_infinity = res.subresultants[0].is_constant()
                         ? MultiPoly::constant(rctx, Rat(1))
                         : squarefree_part(res.subresultants[0]);

    std::vector<MultiPoly> gs;
    for (size_t i = 0; i < res.subresultants.size(); ++i)
        if (!res.subresultants[i].is_constant() && !res.subresultants[i].is_zero()) {
            gs.push_back(res.subresultants[i]);
            res.condition_polys.push_back(res.subresultants[i]);
        }
    auto pts = sample_points(gs, rctx, &res.warnings);

    for (auto& pt : pts) {
        Cell c;
        c.sample = pt;
        std::vector<int> all_signs;
        for (auto& si : res.subresultants) all_signs.push_back(si.is_zero() ? 0 : sign(si.eval(pt)));
        for (size_t i = 0; i < res.subresultants.size(); ++i)
            if (!res.subresultants[i].is_constant() && !res.subresultants[i].is_zero())
                c.signs.push_back(all_signs[i]);
        c.count = generalized_pmv(all_signs);
        res.cells.push_back(std::move(c));
    }
    for (auto& c : res.cells) {
        auto& v = res.formulas[c.count];
        if (std::find(v.begin(), v.end(), c.signs) == v.end()) v.push_back(c.signs);
    }
    return res;
}

struct CrossReport {
    ClassificationResult hermite, sturm;
    std::set<int> counts_hermite, counts_sturm;
    int points_checked = 0;
    int points_skipped = 0; // on the other pipeline's boundary
};

// Runs both pipelines and checks the two root counts agree at every sample
// point produced by either, off both boundary sets.
inline CrossReport cross_validate(const ParametricSystem& sys, std::uint64_t seed,
                                  const OrderSpec& order = OrderSpec::block()) {
    CrossReport rep;
    RrcOptions opt;
    opt.fast = RrcOptions::Off;
    opt.order = order;
    rep.hermite = rrc_hermite(sys, seed, opt);
    rep.sturm = rrc_sturm(sys, seed, order);
    rep.counts_hermite = rep.hermite.realized_counts();
    rep.counts_sturm = rep.sturm.realized_counts();

    HermiteMatrix H = clear_all_denominators(drl_matrix(sys, order));

    std::vector<std::vector<Rat>> pts;
    for (auto& c : rep.hermite.cells) pts.push_back(c.sample);
    for (auto& c : rep.sturm.cells) pts.push_back(c.sample);

    for (auto& pt : pts) {
        bool off_boundary = H.w_inf.eval(pt) != 0;
        for (auto& m : rep.hermite.minors) off_boundary &= (m.eval(pt) != 0);
        std::vector<int> s_signs;
        for (auto& si : rep.sturm.subresultants) {
            int sg = si.is_zero() ? 0 : sign(si.eval(pt));
            s_signs.push_back(sg);
        }
        for (size_t i = 0; i < rep.sturm.condition_polys.size(); ++i)
            if (rep.sturm.condition_polys[i].eval(pt) == 0) off_boundary = false;
        if (!off_boundary) {
            ++rep.points_skipped;
            continue;
        }
        int r_h = signature(specialize_matrix(H, pt));
        int r_s = generalized_pmv(s_signs);
        if (r_h != r_s) {
            std::string w = "(";
            for (size_t i = 0; i < pt.size(); ++i) w += (i ? "," : "") + pt[i].get_str();
            w += ")";
            throw DisagreementError("pipelines disagree at " + w + ": hermite " +
                                    std::to_string(r_h) + " vs sturm " + std::to_string(r_s));
        }
        ++rep.points_checked;
    }
    if (rep.counts_hermite != rep.counts_sturm)
        throw DisagreementError("realized count sets differ between pipelines");
    return rep;
}

} // namespace rrc
