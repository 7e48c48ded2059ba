#include <catch2/catch_amalgamated.hpp>

#include <rrc/linalg.hpp>
#include <rrc/parse.hpp>

using namespace rrc;

namespace {

ParametricSystem fixture_system() {
    auto ctx = VarContext::make({"y1", "y2", "y3"}, {"x1", "x2"});
    return ParametricSystem::make(
        ctx, {parse_poly(ctx, "x1^2 + x2^2 - y1"), parse_poly(ctx, "x1*x2 + y2*x2 + y3*x1")});
}

ParametricSystem toy_system() {
    auto ctx = VarContext::make({"y1", "y2"}, {"x"});
    return ParametricSystem::make(ctx, {parse_poly(ctx, "x^2 + y1*x + y2")});
}

MultiPoly Y(const CtxPtr& yctx, const std::string& s) { return parse_poly(yctx, s); }

// The worked 4x4 matrix.  The trace of L_{x2^2} (entries (1,4) and (2,2))
// appears in the source with flipped signs on y3^2 and y1; the value below is
// the one consistent with the Hankel variant, the printed minors M2, M3 and
// the signature law at (1,0,0).
std::vector<std::vector<std::string>> fixture_entries() {
    return {
        {"4", "-2*y3", "-2*y2", "-2*y2^2 + 2*y3^2 + 2*y1"},
        {"-2*y3", "-2*y2^2 + 2*y3^2 + 2*y1", "4*y2*y3", "6*y2^2*y3 - 2*y3^3"},
        {"-2*y2", "4*y2*y3", "2*y2^2 - 2*y3^2 + 2*y1", "2*y2^3 - 6*y2*y3^2 - 2*y1*y2"},
        {"-2*y2^2 + 2*y3^2 + 2*y1", "6*y2^2*y3 - 2*y3^3", "2*y2^3 - 6*y2*y3^2 - 2*y1*y2",
         "2*y2^4 - 12*y2^2*y3^2 + 2*y3^4 - 4*y1*y2^2 + 2*y1^2"}};
}

} // namespace

TEST_CASE("drl_matrix on the worked system") {
    auto sys = fixture_system();
    auto H = drl_matrix(sys);
    auto yctx = H.yctx;

    REQUIRE(H.delta() == 4);
    CHECK(H.w_inf.is_constant());
    CHECK(H.assumption_c);
    CHECK(H.assumption_e);
    CHECK(H.polynomial_entries());

    SECTION("entry-for-entry against the printed matrix") {
        auto expect = fixture_entries();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(H.h.at(i, j).as_poly() == Y(yctx, expect[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    }
    SECTION("entry (1,1) equals delta; symmetry") {
        CHECK(H.h.at(0, 0).as_poly() == MultiPoly::constant(yctx, Rat(4)));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(H.h.at(i, j) == H.h.at(j, i));
    }
    SECTION("degree pattern") {
        int expect[4][4] = {{0, 1, 1, 2}, {1, 2, 2, 3}, {1, 2, 2, 3}, {2, 3, 3, 4}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(H.entry_degree(i, j) == expect[i][j]);
    }
    SECTION("degree law under Assumption (E)") {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(H.entry_degree(i, j) <=
                      static_cast<int>(H.basis.b[static_cast<size_t>(i)].deg() +
                                       H.basis.b[static_cast<size_t>(j)].deg()));
    }
}

TEST_CASE("toy quadratic Hermite matrix is the Newton power-sum matrix") {
    auto H = drl_matrix(toy_system());
    auto yctx = H.yctx;
    REQUIRE(H.delta() == 2);
    CHECK(H.h.at(0, 0).as_poly() == MultiPoly::constant(yctx, Rat(2)));
    CHECK(H.h.at(0, 1).as_poly() == Y(yctx, "-y1"));
    CHECK(H.h.at(1, 1).as_poly() == Y(yctx, "y1^2 - 2*y2"));
}

TEST_CASE("specialize_matrix") {
    auto H = drl_matrix(fixture_system());

    SECTION("fixture at (1,0,0)") {
        std::vector<Rat> eta{Rat(1), Rat(0), Rat(0)};
        MatQ m = specialize_matrix(H, eta);
        long expect[4][4] = {{4, 0, 0, 2}, {0, 2, 0, 0}, {0, 0, 2, 0}, {2, 0, 0, 2}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(m.at(i, j) == Rat(expect[i][j]));
        CHECK(signature(m) == 4); // roots (+-1,0),(0,+-1)
        CHECK(det_exact(m) == 16);
    }
    SECTION("toy at (0,1): signature 0, no real roots") {
        auto Ht = drl_matrix(toy_system());
        std::vector<Rat> eta{Rat(0), Rat(1)};
        MatQ m = specialize_matrix(Ht, eta);
        CHECK(m.at(0, 0) == 2);
        CHECK(m.at(1, 1) == -2);
        CHECK(m.at(0, 1) == 0);
        CHECK(signature(m) == 0);
    }
    SECTION("bad locus raises") {
        // y1 * x^2 - 1: the leading coefficient vanishes at y1 = 0
        auto ctx = VarContext::make({"y1"}, {"x"});
        auto sys = ParametricSystem::make(ctx, {parse_poly(ctx, "y1*x^2 - 1")});
        auto Hb = drl_matrix(sys);
        CHECK(Hb.w_inf == parse_poly(Hb.yctx, "y1"));
        CHECK(!Hb.polynomial_entries());
        std::vector<Rat> bad{Rat(0)};
        CHECK_THROWS_AS(specialize_matrix(Hb, bad), OnBadLocusError);
        std::vector<Rat> good{Rat(1)};
        CHECK(signature(specialize_matrix(Hb, good)) == 2); // x^2 = 1
    }
}

TEST_CASE("specialization property: matrix commutes with evaluation") {
    SeedStream rng(121, "spec-prop");
    for (auto& sys : {fixture_system(), toy_system()}) {
        auto H = drl_matrix(sys);
        for (int it = 0; it < 8; ++it) {
            std::vector<Rat> eta;
            for (int i = 0; i < sys.t(); ++i) eta.push_back(rng.next_rat(6, 2));
            MatQ direct = specialize_matrix(H, eta);
            auto Hs = drl_matrix(sys.specialize(eta));
            REQUIRE(Hs.delta() == H.delta());
            std::vector<Rat> none;
            for (int i = 0; i < H.delta(); ++i)
                for (int j = 0; j < H.delta(); ++j)
                    CHECK(direct.at(i, j) == Hs.h.at(i, j).eval(none));
        }
    }
}

TEST_CASE("remove_denominators") {
    auto H = drl_matrix(fixture_system());
    SECTION("denominator-free matrices pass through unchanged") {
        auto R = remove_denominators(H);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(R.h.at(i, j) == H.h.at(i, j));
    }
    SECTION("synthetic denominator in row/column 2") {
        HermiteMatrix S = H;
        auto y1 = Y(H.yctx, "y1");
        for (int j = 0; j < 4; ++j) {
            S.h.at(1, j) = S.h.at(1, j) / RatFunc(y1);
            S.h.at(j, 1) = S.h.at(1, j);
        }
        auto R = remove_denominators(S);
        // entry (2,2) got multiplied by y1^2, entries (2,j) by y1
        CHECK(R.h.at(1, 1) == S.h.at(1, 1) * RatFunc(y1 * y1));
        CHECK(R.h.at(1, 0) == S.h.at(1, 0) * RatFunc(y1));
        CHECK(R.basis_scale[1] == y1);
        CHECK(R.polynomial_entries());
    }
    SECTION("congruence preserves specialized signatures off the scale zeros") {
        auto ctx = VarContext::make({"y1"}, {"x"});
        auto sys = ParametricSystem::make(ctx, {parse_poly(ctx, "y1*x^2 - 1")});
        auto Hb = clear_all_denominators(drl_matrix(sys));
        CHECK(Hb.polynomial_entries());
        SeedStream rng(5, "rmden");
        for (int it = 0; it < 10; ++it) {
            Rat v = rng.next_rat(9);
            if (v == 0) continue;
            std::vector<Rat> eta{v};
            auto s1 = signature(specialize_matrix(Hb, eta));
            // compare against the from-scratch matrix of the specialized system
            auto Hs = drl_matrix(sys.specialize(eta));
            std::vector<Rat> none;
            MatQ m(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m.at(i, j) = Hs.h.at(i, j).eval(none);
            CHECK(s1 == signature(m));
        }
    }
}

TEST_CASE("interp_hermite") {
    auto sys = fixture_system();
    SECTION("fixture with lambda = 4 matches drl_matrix") {
        auto Hi = interp_hermite(sys, 4);
        auto Hd = drl_matrix(sys);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(Hi.h.at(i, j) == Hd.h.at(i, j));
    }
    SECTION("default lambda under (E)") {
        auto Hi = interp_hermite(sys);
        auto Hd = drl_matrix(sys);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(Hi.h.at(i, j) == Hd.h.at(i, j));
    }
    SECTION("toy with lambda = 2") {
        auto Hi = interp_hermite(toy_system(), 2);
        CHECK(Hi.h.at(1, 1).as_poly() == Y(Hi.yctx, "y1^2 - 2*y2"));
    }
    SECTION("undersized lambda is reported") {
        CHECK_THROWS_AS(interp_hermite(sys, 1), ResidualMismatchError);
    }
    SECTION("assumption C violation is reported") {
        auto ctx = VarContext::make({"y1"}, {"x"});
        auto bad = ParametricSystem::make(ctx, {parse_poly(ctx, "y1*x^2 - 1")});
        CHECK_THROWS_AS(interp_hermite(bad, 2), AssumptionCViolatedError);
    }
}

TEST_CASE("minor_poly and leading principal minors") {
    auto sys = fixture_system();
    auto H = drl_matrix(sys);
    auto yctx = H.yctx;

    auto c6 = Y(yctx,
        "-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4"
        " - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3");

    SECTION("full determinant equals the printed boundary polynomial") {
        MinorRequest req;
        req.rows = {0, 1, 2, 3};
        req.cols = {0, 1, 2, 3};
        auto det = minor_poly(H, req);
        CHECK(det == Y(yctx, "16*y1") * c6);
        CHECK(det.total_degree() == 7);
    }
    SECTION("1x1 minor (1,1) is delta") {
        MinorRequest req;
        req.rows = {0};
        req.cols = {0};
        CHECK(minor_poly(H, req) == MultiPoly::constant(yctx, Rat(4)));
    }
    SECTION("toy determinant is the discriminant") {
        auto Ht = drl_matrix(toy_system());
        MinorRequest req;
        req.rows = {0, 1};
        req.cols = {0, 1};
        CHECK(minor_poly(Ht, req) == Y(Ht.yctx, "y1^2 - 4*y2"));
    }
    SECTION("printed leading principal minors with A = identity") {
        auto ms = leading_principal_minors(H);
        REQUIRE(ms.size() == 4);
        CHECK(ms[0] == MultiPoly::constant(yctx, Rat(4)));
        CHECK(ms[1] == Y(yctx, "4") * Y(yctx, "-2*y2^2 + y3^2 + 2*y1"));
        CHECK(ms[2] == Y(yctx, "8") *
                           Y(yctx, "-y2^4 - 2*y2^2*y3^2 - y3^4 - y1*y2^2 - y1*y3^2 + 2*y1^2"));
        CHECK(ms[3] == Y(yctx, "16*y1") * c6);
        // degrees (0, 2, 4, 7), all within n(d-1)d^n = 8
        CHECK(ms[0].total_degree() == 0);
        CHECK(ms[1].total_degree() == 2);
        CHECK(ms[2].total_degree() == 4);
        CHECK(ms[3].total_degree() == 7);
    }
    SECTION("undersized caller bound is reported") {
        MinorRequest req;
        req.rows = {0, 1, 2, 3};
        req.cols = {0, 1, 2, 3};
        req.degree_bound = 2;
        CHECK_THROWS_AS(minor_poly(H, req), ResidualMismatchError);
    }
    SECTION("interpolation correctness at random points") {
        SeedStream rng(31, "minor-rand");
        MinorRequest req;
        req.rows = {1, 2, 3};
        req.cols = {1, 2, 3};
        auto m = minor_poly(H, req);
        for (int it = 0; it < 10; ++it) {
            std::vector<Rat> eta{rng.next_rat(7, 3), rng.next_rat(7, 3), rng.next_rat(7, 3)};
            MatQ full = specialize_matrix(H, eta);
            MatQ sub = full.submatrix(req.rows, req.cols);
            CHECK(m.eval(eta) == det_exact(sub));
        }
    }
}

TEST_CASE("congruence on Hermite matrices") {
    auto H = drl_matrix(fixture_system());
    SECTION("identity leaves H unchanged") {
        MatZ id(4, 4);
        for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
        auto HA = congruence(H, id);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(HA.h.at(i, j) == H.h.at(i, j));
    }
    SECTION("Sylvester law at random good points; det multiplicativity") {
        SeedStream rng(71, "cong-h");
        MatZ A = random_unimodularish(4, rng);
        auto HA = congruence(H, A);
        MatQ aq(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) aq.at(i, j) = Rat(A.at(i, j));
        Rat detA = det_exact(aq);
        MinorRequest req;
        req.rows = {0, 1, 2, 3};
        req.cols = {0, 1, 2, 3};
        CHECK(minor_poly(HA, req) == minor_poly(H, req) * (detA * detA));
        for (int it = 0; it < 8; ++it) {
            std::vector<Rat> eta{rng.next_rat(5, 2), rng.next_rat(5, 2), rng.next_rat(5, 2)};
            CHECK(signature(specialize_matrix(HA, eta)) == signature(specialize_matrix(H, eta)));
        }
    }
}

TEST_CASE("clean_factors") {
    auto H = drl_matrix(fixture_system());
    MinorRequest req;
    req.rows = {0, 1, 2, 3};
    req.cols = {0, 1, 2, 3};
    auto det = minor_poly(H, req);
    auto wh = clean_factors(det, H.w_inf);
    // squarefree part of 16*y1*c6 up to normalization
    CHECK(divides_exactly(Y(H.yctx, "y1"), wh));
    CHECK(wh.total_degree() == 7);
    CHECK(wh == squarefree_part(det));
}

TEST_CASE("mod-p minor probe") {
    std::uint32_t p = 65521;
    SECTION("fixture: the full determinant already carries the boundary") {
        auto H = drl_matrix(fixture_system());
        CHECK(modp_minor_probe(H, p, 42) == 4);
    }
    SECTION("identity-like H probes to 1") {
        auto ctx = VarContext::make({"y1"}, {"x1"});
        auto sys = ParametricSystem::make(ctx, {parse_poly(ctx, "x1")});
        auto H = drl_matrix(sys); // 1x1 identity
        CHECK(modp_minor_probe(H, p, 7) == 1);
    }
    SECTION("synthetic det = w^3 stops below delta") {
        // diag(w, w, w) mixed by a congruence
        auto yctx = VarContext::make({"y1"}, {});
        auto w = parse_poly(yctx, "y1^2 - 2");
        HermiteMatrix H;
        H.yctx = yctx;
        H.sysctx = yctx;
        QuotientBasis qb;
        qb.delta = 3;
        qb.b.assign(3, Monomial(yctx->slots()));
        H.basis = qb;
        H.basis_scale.assign(3, MultiPoly::constant(yctx, Rat(1)));
        H.w_inf = MultiPoly::constant(yctx, Rat(1));
        H.h = Mat<RatFunc>(3, 3, RatFunc(MultiPoly::zero(yctx)));
        for (int i = 0; i < 3; ++i) H.h.at(i, i) = RatFunc(w);
        SeedStream rng(3, "probe-synth");
        MatZ A = random_unimodularish(3, rng);
        auto HA = congruence(H, A);
        CHECK(modp_minor_probe(HA, p, 11) < 3);
    }
}
