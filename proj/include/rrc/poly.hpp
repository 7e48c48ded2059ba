#pragma once

// Sparse multivariate polynomials over Q with a declared variable context.
// Terms are kept sorted descending in the canonical full-context grevlex
// order with no zero coefficients, so equal polynomials compare bit-equal.

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace rrc {

class MultiPoly {
public:
    struct Term {
        Monomial m;
        Rat c;
    };

    MultiPoly() = default;
    explicit MultiPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static MultiPoly zero(CtxPtr ctx) { return MultiPoly(std::move(ctx)); }

    static MultiPoly constant(CtxPtr ctx, const Rat& c) {
        MultiPoly p(std::move(ctx));
        if (c != 0) p.terms_.push_back({Monomial(p.ctx_->slots()), c});
        return p;
    }

    static MultiPoly monomial(CtxPtr ctx, const Monomial& m, const Rat& c) {
        MultiPoly p(std::move(ctx));
        if (c != 0) p.terms_.push_back({m, c});
        return p;
    }

    static MultiPoly var(const CtxPtr& ctx, int slot, std::uint32_t k = 1) {
        return monomial(ctx, Monomial::unit(ctx->slots(), slot, k), Rat(1));
    }

    // terms may arrive in any order, possibly with repeats
    static MultiPoly from_terms(CtxPtr ctx, std::vector<Term> terms) {
        MultiPoly p(std::move(ctx));
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return cmp_canonical(a.m, b.m) > 0; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().m == t.m)
                p.terms_.back().c += t.c;
            else
                p.terms_.push_back(std::move(t));
        }
        p.prune();
        return p;
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

    Rat constant_value() const {
        if (is_zero()) return Rat(0);
        if (!is_constant()) throw Error("constant_value on a non-constant polynomial");
        return terms_[0].c;
    }

    int total_degree() const { // -1 for the zero polynomial
        int d = -1;
        for (auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg()));
        return d;
    }

    int degree_in(int slot) const {
        int d = is_zero() ? -1 : 0;
        for (auto& t : terms_) d = std::max(d, static_cast<int>(t.m.e[slot]));
        return d;
    }

    int degree_range(int lo, int hi) const {
        int d = is_zero() ? -1 : 0;
        for (auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg_range(lo, hi)));
        return d;
    }

    int degree_in_vars() const { return degree_range(0, ctx_->n()); }
    int degree_in_params() const { return degree_range(ctx_->first_param_slot(), ctx_->slots()); }

    bool depends_on(int slot) const { return degree_in(slot) > 0; }

    const Term& leading() const {
        if (is_zero()) throw Error("leading term of zero");
        return terms_[0];
    }

    // --- ring operations -----------------------------------------------------

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        require_same_ctx(a.ctx_, b.ctx_);
        if (a.is_zero() || b.is_zero()) return zero(a.ctx_);
        // accumulate in a canonical-descending map
        auto gt = [](const Monomial& x, const Monomial& y) { return cmp_canonical(x, y) > 0; };
        std::map<Monomial, Rat, decltype(gt)> acc(gt);
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) acc[ta.m * tb.m] += ta.c * tb.c;
        MultiPoly r(a.ctx_);
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, c});
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator*(const MultiPoly& a, const Rat& c) {
        if (c == 0) return zero(a.ctx_);
        MultiPoly r(a);
        for (auto& t : r.terms_) t.c *= c;
        return r;
    }
    friend MultiPoly operator*(const Rat& c, const MultiPoly& a) { return a * c; }

    MultiPoly mul_term(const Monomial& m, const Rat& c) const {
        if (c == 0) return zero(ctx_);
        MultiPoly r(*this);
        for (auto& t : r.terms_) {
            t.m = t.m * m;
            t.c *= c;
        }
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(ctx_, Rat(1));
        MultiPoly b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = e > 1 ? b * b : b;
            e >>= 1;
        }
        return r;
    }

    // exact division in the polynomial ring; throws InexactDivisionError
    friend MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
        require_same_ctx(a.ctx_, b.ctx_);
        if (b.is_zero()) throw InexactDivisionError("division by zero polynomial");
        MultiPoly rem = a, quot(a.ctx_);
        const Term& lb = b.leading();
        while (!rem.is_zero()) {
            const Term& lr = rem.leading();
            if (!lb.m.divides(lr.m)) throw InexactDivisionError();
            Monomial qm = lr.m / lb.m;
            Rat qc = lr.c / lb.c;
            quot.terms_.push_back({qm, qc});
            rem -= b.mul_term(qm, qc);
        }
        // quotient monomials were produced in strictly decreasing order
        return quot;
    }

    friend bool divides_exactly(const MultiPoly& b, const MultiPoly& a) {
        if (a.is_zero()) return true;
        if (b.is_zero()) return false;
        try {
            exact_div(a, b);
            return true;
        } catch (const InexactDivisionError&) {
            return false;
        }
    }

    // --- calculus / evaluation ------------------------------------------------

    MultiPoly derivative(int slot) const {
        MultiPoly r(ctx_);
        for (auto& t : terms_) {
            if (t.m.e[slot] == 0) continue;
            Term d{t.m, t.c * Rat(static_cast<long>(t.m.e[slot]))};
            d.m.e[slot] -= 1;
            r.terms_.push_back(std::move(d));
        }
        // canonical order is graded, so dropping one exponent keeps relative order
        // only within equal-degree runs; re-sort to stay safe
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return cmp_canonical(a.m, b.m) > 0; });
        return r;
    }

    Rat eval(std::span<const Rat> point) const {
        if (static_cast<int>(point.size()) != ctx_->slots()) throw Error("eval: wrong point length");
        // memoized powers per slot
        std::vector<std::vector<Rat>> pw(ctx_->slots());
        for (int s = 0; s < ctx_->slots(); ++s) pw[s].push_back(Rat(1));
        Rat acc(0);
        for (auto& t : terms_) {
            Rat v = t.c;
            for (int s = 0; s < ctx_->slots(); ++s) {
                auto k = t.m.e[s];
                if (!k) continue;
                auto& P = pw[s];
                while (P.size() <= k) P.push_back(P.back() * point[s]);
                v *= P[k];
            }
            acc += v;
        }
        return acc;
    }

    // substitute the parameter block; result lives in ctx->specialized()
    MultiPoly specialize(std::span<const Rat> eta) const {
        if (static_cast<int>(eta.size()) != ctx_->t()) throw Error("specialize: wrong eta length");
        CtxPtr sctx = ctx_->specialized();
        int keep = sctx->slots(); // x block and u keep their slots
        std::vector<Term> out;
        std::vector<std::vector<Rat>> pw(ctx_->t());
        for (auto& v : pw) v.push_back(Rat(1));
        for (auto& t : terms_) {
            Rat c = t.c;
            for (int i = 0; i < ctx_->t(); ++i) {
                auto k = t.m.e[ctx_->param_slot(i)];
                if (!k) continue;
                auto& P = pw[i];
                while (P.size() <= k) P.push_back(P.back() * eta[i]);
                c *= P[k];
            }
            Monomial m(keep);
            for (int s = 0; s < keep; ++s) m.e[s] = t.m.e[s];
            out.push_back({std::move(m), std::move(c)});
        }
        return from_terms(sctx, std::move(out));
    }

    // evaluate only the parameter block, full point given over params
    Rat eval_params(std::span<const Rat> eta) const {
        if (ctx_->n() != 0 || ctx_->has_aux()) throw Error("eval_params: polynomial is not parameter-only");
        return eval(eta);
    }

    // --- context surgery --------------------------------------------------------

    // reinterpret over a context whose slot names contain all slots this
    // polynomial actually uses
    MultiPoly transport(const CtxPtr& to) const {
        if (same_ctx(ctx_, to)) {
            MultiPoly r = *this;
            r.ctx_ = to;
            return r;
        }
        std::vector<int> map(ctx_->slots(), -1);
        for (int s = 0; s < ctx_->slots(); ++s) map[s] = to->slot_of(ctx_->slot_name(s));
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            Monomial m(to->slots());
            for (int s = 0; s < ctx_->slots(); ++s) {
                if (t.m.e[s] == 0) continue;
                if (map[s] < 0) throw Error("transport: slot " + ctx_->slot_name(s) + " missing in target context");
                m.e[map[s]] = t.m.e[s];
            }
            out.push_back({std::move(m), t.c});
        }
        return from_terms(to, std::move(out));
    }

    MultiPoly to_params_only() const { return transport(ctx_->params_only()); }

    // --- univariate views -------------------------------------------------------

    // coefficient of slot^k as a polynomial with that exponent zeroed
    MultiPoly coeff_of(int slot, std::uint32_t k) const {
        MultiPoly r(ctx_);
        std::vector<Term> out;
        for (auto& t : terms_) {
            if (t.m.e[slot] != k) continue;
            Term u = t;
            u.m.e[slot] = 0;
            out.push_back(std::move(u));
        }
        return from_terms(ctx_, std::move(out));
    }

    std::vector<MultiPoly> coeffs_in(int slot) const { // index = power, size = deg+1
        int d = degree_in(slot);
        std::vector<MultiPoly> cs;
        for (int k = 0; k <= std::max(d, 0); ++k) cs.push_back(coeff_of(slot, k));
        if (d < 0) cs.assign(1, zero(ctx_));
        return cs;
    }

    static MultiPoly from_coeffs(int slot, const std::vector<MultiPoly>& cs, const CtxPtr& ctx) {
        MultiPoly r = zero(ctx);
        for (std::uint32_t k = 0; k < cs.size(); ++k)
            r += cs[k].mul_term(Monomial::unit(ctx->slots(), slot, k), Rat(1));
        return r;
    }

    MultiPoly lc_in(int slot) const {
        int d = degree_in(slot);
        if (d < 0) return zero(ctx_);
        return coeff_of(slot, static_cast<std::uint32_t>(d));
    }

    // --- normalization -----------------------------------------------------------

    // positive rational c with (1/c)*this integer-coefficient and primitive
    Rat content() const {
        Rat g(0);
        for (auto& t : terms_) g = rat_content_gcd(g, t.c);
        return g; // 0 for the zero polynomial
    }

    // primitive integer coefficients, positive canonical leading coefficient
    MultiPoly normalized() const {
        if (is_zero()) return *this;
        Rat c = content();
        if (sign(leading().c) < 0) c = -c;
        MultiPoly r(*this);
        for (auto& t : r.terms_) t.c /= c;
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (!same_ctx(ctx_, o.ctx_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // total order for deterministic containers
    static int compare(const MultiPoly& a, const MultiPoly& b) {
        size_t k = std::min(a.terms_.size(), b.terms_.size());
        for (size_t i = 0; i < k; ++i) {
            int c = cmp_canonical(a.terms_[i].m, b.terms_[i].m);
            if (c) return c;
            if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c ? -1 : 1;
        }
        if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
        return 0;
    }

    // --- rendering ---------------------------------------------------------------

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& t : terms_) {
            Rat c = t.c;
            if (first) {
                if (sign(c) < 0) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (sign(c) < 0 ? " - " : " + ");
                c = abs(c);
            }
            first = false;
            bool printed_coeff = false;
            if (c != 1 || t.m.is_one()) {
                os << c.get_str();
                printed_coeff = true;
            }
            bool first_var = !printed_coeff;
            for (int s = 0; s < ctx_->slots(); ++s) {
                if (!t.m.e[s]) continue;
                if (!first_var || printed_coeff) os << "*";
                os << ctx_->slot_name(s);
                if (t.m.e[s] > 1) os << "^" << t.m.e[s];
                first_var = false;
            }
        }
        return os.str();
    }

private:
    CtxPtr ctx_;
    std::vector<Term> terms_;

    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& t) { return t.c == 0; }),
                     terms_.end());
    }

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        require_same_ctx(a.ctx_, b.ctx_);
        MultiPoly r(a.ctx_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = cmp_canonical(a.terms_[i].m, b.terms_[j].m);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                Term t = b.terms_[j++];
                if (subtract) t.c = -t.c;
                r.terms_.push_back(std::move(t));
            } else {
                Rat c2 = subtract ? Rat(a.terms_[i].c - b.terms_[j].c)
                                  : Rat(a.terms_[i].c + b.terms_[j].c);
                if (c2 != 0) r.terms_.push_back({a.terms_[i].m, std::move(c2)});
                ++i, ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            Term t = b.terms_[j];
            if (subtract) t.c = -t.c;
            r.terms_.push_back(std::move(t));
        }
        return r;
    }
};

} // namespace rrc
