#include <catch2/catch_amalgamated.hpp>

#include <rrc/parse.hpp>
#include <rrc/subresultant.hpp>
#include <rrc/unipoly.hpp>

using namespace rrc;

namespace {

UniPoly U(std::vector<long> coeffs_low_to_high) {
    std::vector<Rat> c;
    for (long v : coeffs_low_to_high) c.push_back(Rat(v));
    return UniPoly(std::move(c));
}

// random polynomial generator targeting squarefree, non-squarefree and
// zero-gap subresultant shapes
UniPoly random_uni(SeedStream& rng, int max_deg = 8) {
    int shape = static_cast<int>(rng.next_in(0, 3));
    auto dense = [&](int d) {
        std::vector<Rat> c(static_cast<size_t>(d) + 1);
        for (auto& x : c) x = rng.next_rat(9);
        if (c.back() == 0) c.back() = Rat(1 + rng.next_in(0, 8));
        return UniPoly(std::move(c));
    };
    switch (shape) {
        case 0: // dense
            return dense(static_cast<int>(rng.next_in(1, max_deg)));
        case 1: { // sparse: u^k +- small tail, likes defective chains
            int d = static_cast<int>(rng.next_in(2, max_deg));
            std::vector<Rat> c(static_cast<size_t>(d) + 1, Rat(0));
            c[static_cast<size_t>(d)] = Rat(rng.next_in(0, 1) ? 1 : -1);
            c[0] = rng.next_rat(9);
            if (rng.next_in(0, 1)) c[static_cast<size_t>(rng.next_in(0, d - 1))] = rng.next_rat(5);
            UniPoly p(std::move(c));
            return p.degree() >= 1 ? p : dense(2);
        }
        case 2: { // repeated factors
            UniPoly f = dense(static_cast<int>(rng.next_in(1, 3)));
            UniPoly g = dense(static_cast<int>(rng.next_in(1, 2)));
            UniPoly p = f * f * g;
            return p.degree() <= max_deg ? p : f * f;
        }
        default: { // even polynomial p(u^2)
            int d = static_cast<int>(rng.next_in(1, max_deg / 2));
            std::vector<Rat> c(static_cast<size_t>(2 * d) + 1, Rat(0));
            for (int i = 0; i <= d; ++i) c[static_cast<size_t>(2 * i)] = rng.next_rat(9);
            if (c.back() == 0) c.back() = Rat(1);
            UniPoly p(std::move(c));
            return p.degree() >= 1 ? p : dense(2);
        }
    }
}

} // namespace

TEST_CASE("real root isolation") {
    SECTION("u^2 - 1") {
        auto roots = isolate_real_roots(U({-1, 0, 1}));
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].lo <= Rat(-1));
        CHECK(roots[0].hi >= Rat(-1));
        CHECK(roots[1].lo <= Rat(1));
        CHECK(roots[1].hi >= Rat(1));
    }
    SECTION("u^2 + 1 has no real roots") {
        CHECK(isolate_real_roots(U({1, 0, 1})).empty());
    }
    SECTION("w((1,0,0), u) = u^4 - u^2 isolates {-1, 0, 1}") {
        auto roots = isolate_real_roots(U({0, 0, -1, 0, 1}));
        REQUIRE(roots.size() == 3);
        CHECK((roots[1].exact && roots[1].lo == 0));
    }
    SECTION("count_real_roots trivia") {
        CHECK(count_real_roots(U({0, 0, 0, 1})) == 1);   // u^3
        CHECK(count_real_roots(U({0, 0, -1, 0, 1})) == 3);
        CHECK(count_real_roots(U({5})) == 0);
    }
    SECTION("isolation soundness on randoms") {
        SeedStream rng(101, "iso-sound");
        for (int i = 0; i < 150; ++i) {
            UniPoly p = random_uni(rng);
            UniPoly sf = p.squarefree();
            auto roots = isolate_real_roots(p);
            for (size_t k = 0; k < roots.size(); ++k) {
                if (roots[k].exact) {
                    CHECK(sf.sign_at(roots[k].lo) == 0);
                } else {
                    CHECK(sf.sign_at(roots[k].lo) * sf.sign_at(roots[k].hi) < 0);
                }
                if (k) CHECK(roots[k - 1].hi <= roots[k].lo);
            }
        }
    }
    SECTION("exact counts on engineered products") {
        // (u-1)(u-2)(u-3)(u^2+1)
        UniPoly p = U({-1, 1}) * U({-2, 1}) * U({-3, 1}) * U({1, 0, 1});
        CHECK(count_real_roots(p) == 3);
        // close roots: (u - 100)(u - 99999/1000)
        UniPoly q = U({-100, 1}) * UniPoly({Rat(-99999) / 1000, Rat(1)});
        CHECK(count_real_roots(q) == 2);
    }
}

TEST_CASE("signed subresultant coefficients over Q") {
    SECTION("toy quadratic: s = (1, 2, y1^2-4y2 at values)") {
        // p = u^2 - 1: two real roots, s_2 must be +4 (the signed resultant)
        auto s = subres_signed_q(U({-1, 0, 1}), U({0, 2}));
        REQUIRE(s.size() == 3);
        CHECK(s[0] == 1);
        CHECK(s[1] == 2);
        CHECK(s[2] == 4);
        CHECK(generalized_pmv(signs_of(s)) == 2);
    }
    SECTION("constant q: s_D = q^deg(p) up to the sign twist") {
        auto s = subres_signed_q(U({1, 2, 0, 1}), U({5})); // D = 3, eps_3 = -1
        REQUIRE(s.size() == 4);
        CHECK(s[3] == subres_sign_twist(3) * Rat(125));
        CHECK(abs(s[3]) == 125);
    }
    SECTION("q = p' on u^4 + 1: internal zero gap, no real roots") {
        UniPoly p = U({1, 0, 0, 0, 1});
        auto s = subres_signed_q(p, p.derivative());
        CHECK(s[2] == 0);
        CHECK(s[3] == 0);
        CHECK(generalized_pmv(signs_of(s)) == 0);
    }
    SECTION("q = p' on u^4 - 1: zero gap, two real roots") {
        UniPoly p = U({-1, 0, 0, 0, 1});
        auto s = subres_signed_q(p, p.derivative());
        CHECK(generalized_pmv(signs_of(s)) == 2);
    }
}

TEST_CASE("generalized PmV") {
    CHECK(generalized_pmv({1, 1, 1}) == 2);
    CHECK(generalized_pmv({1, -1, 1}) == -2);
    CHECK_THROWS(generalized_pmv({0, 1}));

    SECTION("PmV equals the isolation count on 200 randoms (pins the zero-gap rule)") {
        SeedStream rng(202, "pmv-oracle");
        int nonsquarefree = 0, gapped = 0;
        for (int i = 0; i < 200; ++i) {
            UniPoly p = random_uni(rng);
            REQUIRE(p.degree() >= 1);
            auto s = subres_signed_q(p, p.derivative());
            auto sg = signs_of(s);
            bool gap = false;
            for (size_t a = 1; a + 1 < sg.size(); ++a)
                if (sg[a] == 0 && sg[a + 1] != 0) gap = true;
            if (gap) ++gapped;
            if (uni_gcd(p, p.derivative()).degree() > 0) ++nonsquarefree;
            CHECK(generalized_pmv(sg) == count_real_roots(p));
        }
        CHECK(nonsquarefree >= 20);
        CHECK(gapped >= 10);
    }
}

TEST_CASE("parametric subresultants: the worked quartic") {
    auto ctx = VarContext::make({"y1", "y2", "y3"}, {}, "u");
    int uslot = ctx->aux_slot();
    auto w = parse_poly(ctx, "u^4 + 2*y3*u^3 + y2^2*u^2 + y3^2*u^2 - y1*u^2 - 2*y1*y3*u - y1*y3^2");
    auto wu = w.derivative(uslot);

    for (auto method : {SubresMethod::Direct, SubresMethod::EvalInterp}) {
        auto s = subres_signed_in_slot(w, wu, uslot, method);
        REQUIRE(s.size() == 5);
        CHECK(s[0] == MultiPoly::constant(ctx, Rat(1)));
        // printed values hold after dividing out the positive integer content
        CHECK(s[1].normalized() == MultiPoly::constant(ctx, Rat(1)));
        CHECK(s[2].normalized() == parse_poly(ctx, "-2*y2^2 + y3^2 + 2*y1").normalized());
        CHECK(s[2].normalized().str() == parse_poly(ctx, "2*y2^2 - y3^2 - 2*y1").str());
        auto s3_printed = parse_poly(ctx,
            "-y2^6 - 2*y2^4*y3^2 - y2^2*y3^4 + 3*y1*y2^4 - 14*y1*y2^2*y3^2 + y1*y3^4"
            " - 3*y1^2*y2^2 - 2*y1^2*y3^2 + y1^3");
        auto s4_printed = parse_poly(ctx, "y2^2*y3^2*y1") * parse_poly(ctx,
            "-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4"
            " - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3");
        // sign-preserving primitive comparison
        auto prim = [](const MultiPoly& p) {
            Rat c = p.content();
            return p * (1 / c);
        };
        CHECK(prim(s[3]) == prim(s3_printed));
        CHECK(prim(s[4]) == prim(s4_printed));
    }

    SECTION("specialization property where s_0 does not vanish") {
        auto s = subres_signed_in_slot(w, wu, uslot, SubresMethod::Direct);
        SeedStream rng(77, "subres-spec");
        for (int i = 0; i < 25; ++i) {
            std::vector<Rat> eta{rng.next_rat(6, 2), rng.next_rat(6, 2), rng.next_rat(6, 2)};
            std::vector<Rat> full(static_cast<size_t>(ctx->slots()), Rat(0));
            full[static_cast<size_t>(ctx->param_slot(0))] = eta[0];
            full[static_cast<size_t>(ctx->param_slot(1))] = eta[1];
            full[static_cast<size_t>(ctx->param_slot(2))] = eta[2];
            auto w_eta = w.specialize(eta);
            auto sc = ctx->specialized();
            UniPoly wq = UniPoly::from_multipoly(w_eta, sc->aux_slot());
            auto s_direct = subres_signed_q(wq, wq.derivative());
            REQUIRE(s_direct.size() == s.size());
            for (size_t k = 0; k < s.size(); ++k) CHECK(s[k].eval(full) == s_direct[k]);
        }
    }

    SECTION("PmV at a specialization sitting on the boundary counts distinct roots") {
        // eta = (1,0,0): w becomes u^4 - u^2 with 3 distinct real roots; the
        // chain ends in a zero and PmV still returns the distinct count.
        std::vector<Rat> eta{Rat(1), Rat(0), Rat(0)};
        auto w_eta = w.specialize(eta);
        UniPoly wq = UniPoly::from_multipoly(w_eta, ctx->specialized()->aux_slot());
        auto s = subres_signed_q(wq, wq.derivative());
        CHECK(s.back() == 0);
        CHECK(generalized_pmv(signs_of(s)) == 3);
        CHECK(count_real_roots(wq) == 3);
    }
}
