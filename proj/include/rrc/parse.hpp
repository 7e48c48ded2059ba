#pragma once

// Conventional infix polynomial text: "x1^2 + x2^2 - y1", "*" optional
// between a coefficient and its monomial.  This grammar is the substrate of
// the CLI input format.

#include <cctype>
#include <string>

#include "poly.hpp"

namespace rrc {

class PolyParser {
public:
    PolyParser(const CtxPtr& ctx, std::string text, int line = 1)
        : ctx_(ctx), s_(std::move(text)), line_(line) {}

    MultiPoly parse() {
        MultiPoly p = parse_sum();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    CtxPtr ctx_;
    std::string s_;
    size_t pos_ = 0;
    int line_;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(line_, static_cast<int>(pos_) + 1, msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly parse_sum() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        MultiPoly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (eat('+')) {
                acc += parse_term();
            } else if (eat('-')) {
                acc -= parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly parse_term() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a term");
        Rat coeff(1);
        Monomial m(ctx_->slots());
        bool any = false;
        bool expect_factor = true;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) break;
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                if (!expect_factor && !any) break;
                coeff *= parse_rational();
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                auto [slot, exp] = parse_varpow();
                m.e[slot] += exp;
                any = true;
            } else if (c == '*') {
                ++pos_;
                expect_factor = true;
                continue;
            } else {
                break;
            }
            expect_factor = false;
            // juxtaposition allowed; loop continues while factors follow
            skip_ws();
            if (pos_ < s_.size()) {
                char nx = s_[pos_];
                if (nx == '*' || std::isalpha(static_cast<unsigned char>(nx)) || nx == '_' ||
                    std::isdigit(static_cast<unsigned char>(nx)))
                    continue;
            }
            break;
        }
        if (!any) fail("expected a coefficient or a variable");
        return MultiPoly::monomial(ctx_, m, coeff);
    }

    Rat parse_rational() {
        Int num = parse_integer();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            // only treat as a fraction when digits follow
            size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                Int den = parse_integer();
                if (den == 0) fail("zero denominator");
                return make_rat(num, den);
            }
            pos_ = save;
        }
        return Rat(num);
    }

    Int parse_integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Int(s_.substr(start, pos_ - start));
    }

    std::pair<int, std::uint32_t> parse_varpow() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        int slot = ctx_->slot_of(name);
        if (slot < 0) {
            pos_ = start;
            fail("undeclared identifier '" + name + "'");
        }
        std::uint32_t exp = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            Int e = parse_integer();
            if (e < 0 || e > 100000) fail("exponent out of range");
            exp = static_cast<std::uint32_t>(e.get_ui());
        }
        return {slot, exp};
    }
};

inline MultiPoly parse_poly(const CtxPtr& ctx, const std::string& text, int line = 1) {
    return PolyParser(ctx, text, line).parse();
}

} // namespace rrc
