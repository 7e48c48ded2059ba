#pragma once

// Elements of the rational function field Q(y), carried as reduced fractions
// of MultiPoly.  The denominator is primitive with positive leading
// coefficient; the numerator absorbs all rational scaling.

#include "polygcd.hpp"

namespace rrc {

class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(MultiPoly p) : num_(std::move(p)) {
        den_ = MultiPoly::constant(num_.ctx(), Rat(1));
    }
    RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        reduce();
    }

    static RatFunc constant(const CtxPtr& ctx, const Rat& c) {
        return RatFunc(MultiPoly::constant(ctx, c));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const CtxPtr& ctx() const { return num_.ctx(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }

    MultiPoly as_poly() const {
        if (!is_poly()) throw Error("rational function is not polynomial: " + str());
        return num_ * (1 / den_.constant_value());
    }

    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(MultiPoly::zero(a.ctx()));
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error("division by zero rational function");
        if (a.is_zero()) return a;
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // exact evaluation; the caller handles vanishing denominators
    Rat eval(std::span<const Rat> point, bool* den_vanishes = nullptr) const {
        Rat d = den_.eval(point);
        if (d == 0) {
            if (den_vanishes) {
                *den_vanishes = true;
                return Rat(0);
            }
            throw Error("denominator vanishes at the evaluation point");
        }
        if (den_vanishes) *den_vanishes = false;
        return num_.eval(point) / d;
    }

    std::string str() const { return is_poly() ? as_poly().str() : "(" + num_.str() + ")/(" + den_.str() + ")"; }

private:
    MultiPoly num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.ctx(), Rat(1));
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        // primitive positive denominator; numerator keeps the scalar
        Rat c = den_.content();
        if (sign(den_.leading().c) < 0) c = -c;
        if (c != 1) {
            den_ = den_ * (1 / c);
            num_ = num_ * (1 / c);
        }
    }
};

} // namespace rrc
