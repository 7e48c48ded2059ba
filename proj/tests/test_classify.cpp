#include <catch2/catch_amalgamated.hpp>

#include <rrc/classify.hpp>
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

// random dense system with an inhomogeneous spread of coefficients
ParametricSystem random_dense_system(SeedStream& rng, int n, int d, int t) {
    std::vector<std::string> ps, vs;
    for (int i = 0; i < t; ++i) ps.push_back("y" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i + 1));
    auto ctx = VarContext::make(ps, vs);
    std::vector<MultiPoly> polys;
    for (int k = 0; k < n; ++k) {
        std::vector<MultiPoly::Term> ts;
        // all monomials of total degree <= d with small random coefficients
        std::function<void(Monomial&, int, int)> emit = [&](Monomial& m, int slot, int left) {
            if (slot == ctx->slots()) {
                Rat c = rng.next_rat(4);
                if (c != 0) ts.push_back({m, c});
                return;
            }
            for (int e = 0; e <= left; ++e) {
                m.e[static_cast<size_t>(slot)] = static_cast<std::uint32_t>(e);
                emit(m, slot + 1, left - e);
            }
            m.e[static_cast<size_t>(slot)] = 0;
        };
        Monomial m(ctx->slots());
        emit(m, 0, d);
        // keep the x-degree-d part nonzero so the draw is regular-ish
        ts.push_back({Monomial::unit(ctx->slots(), static_cast<size_t>(k) % n, static_cast<std::uint32_t>(d)),
                      Rat(1 + rng.next_in(0, 3))});
        polys.push_back(MultiPoly::from_terms(ctx, std::move(ts)));
    }
    return ParametricSystem::make(ctx, polys);
}

std::set<std::vector<int>> formula_set(const ClassificationResult& r, int count) {
    std::set<std::vector<int>> out;
    auto it = r.formulas.find(count);
    if (it == r.formulas.end()) return out;
    for (auto& v : it->second) out.insert(v);
    return out;
}

} // namespace

TEST_CASE("weak Hermite classification") {
    SECTION("fixture: counts {0,2,4}, printed boundary") {
        auto res = weak_rrc_hermite(fixture_system(), 42);
        CHECK(res.realized_counts() == std::set<int>{0, 2, 4});
        REQUIRE(res.w_H);
        // squarefree part of 16 y1 c6, normalized
        auto yctx = res.yctx;
        auto c6 = parse_poly(yctx,
            "-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4"
            " - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3");
        CHECK(*res.w_H == (parse_poly(yctx, "y1") * c6).normalized());
        CHECK(res.w_infinity.is_constant());
    }
    SECTION("toy: two cells, counts 0 and 2; eta=(0,1) lies in the 0 cell") {
        auto res = weak_rrc_hermite(toy_system(), 42);
        CHECK(res.realized_counts() == std::set<int>{0, 2});
        auto d = parse_poly(res.yctx, "y1^2 - 4*y2");
        for (auto& c : res.cells) {
            int s = sign(d.eval(c.sample));
            CHECK(c.count == (s > 0 ? 2 : 0));
        }
        std::vector<Rat> eta{Rat(0), Rat(1)};
        auto H = drl_matrix(toy_system());
        CHECK(signature(specialize_matrix(H, eta)) == 0);
    }
    SECTION("non-radical input is diagnosed") {
        auto ctx = VarContext::make({"y1"}, {"x"});
        auto sys = ParametricSystem::make(
            ctx, {parse_poly(ctx, "x^2 - 2*y1*x + y1^2")}); // (x - y1)^2
        CHECK_THROWS_AS(weak_rrc_hermite(sys, 42), IdenticallyZeroDeterminantError);
    }
}

TEST_CASE("full Hermite classification on the fixture") {
    RrcOptions opt;
    opt.fast = RrcOptions::Off;
    auto res = rrc_hermite(fixture_system(), 42, opt);

    SECTION("realized sign conditions") {
        std::set<std::vector<int>> got;
        for (auto& c : res.cells) got.insert(c.signs);
        // five printed, the all-positive four-root cell, and the (+,-,+)
        // zero-root cell the source table omits
        std::set<std::vector<int>> expect{{-1, 1, 1},  {-1, -1, 1}, {1, -1, -1}, {-1, -1, -1},
                                          {1, 1, -1},  {1, 1, 1},   {1, -1, 1}};
        CHECK(got == expect);
    }
    SECTION("count grouping includes every printed formula row") {
        CHECK(res.realized_counts() == std::set<int>{0, 2, 4});
        auto f0 = formula_set(res, 0), f2 = formula_set(res, 2), f4 = formula_set(res, 4);
        CHECK(f0.count({-1, 1, 1}));
        CHECK(f0.count({-1, -1, 1}));
        CHECK(f2.count({1, -1, -1}));
        CHECK(f2.count({-1, -1, -1}));
        CHECK(f2.count({1, 1, -1}));
        CHECK(f4 == std::set<std::vector<int>>{{1, 1, 1}});
        CHECK(f0.size() == 3); // includes the omitted (+,-,+) component
    }
    SECTION("cell invariance: extra points in each cell give the same count") {
        auto H = drl_matrix(fixture_system());
        SeedStream rng(42, "cell-invariance");
        for (auto& cell : res.cells) {
            int found = 0;
            for (int trial = 0; trial < 400 && found < 5; ++trial) {
                std::vector<Rat> pt;
                for (auto& x : cell.sample) {
                    Rat d = make_rat(rng.next_in(-100, 100), 400);
                    pt.push_back(x + d);
                }
                std::vector<int> sg;
                for (auto& m : res.condition_polys) sg.push_back(sign(m.eval(pt)));
                if (sg != cell.signs) continue;
                ++found;
                CHECK(signature(specialize_matrix(H, pt)) == cell.count);
            }
            CHECK(found == 5);
        }
    }
}

TEST_CASE("fast mode formulas") {
    RrcOptions opt;
    opt.fast = RrcOptions::On;
    auto res = rrc_hermite(fixture_system(), 42, opt);
    CHECK(res.fast_mode);
    CHECK(res.realizability == "possible-superset");
    // Phi_4 over (M_1..M_4) is the single all-permanence condition
    auto f4 = formula_set(res, 4);
    CHECK(f4 == std::set<std::vector<int>>{{1, 1, 1, 1}});
    // Phi_r vectors are consistent with the constant minor M_1 = 4 > 0
    for (auto& [r, conds] : res.formulas)
        for (auto& sg : conds) CHECK(sg[0] == 1);
    // the cells still carry the realized conditions
    CHECK(res.realized_counts() == std::set<int>{0, 2, 4});

    SECTION("auto rule picks fast mode on the fixture and the toy") {
        RrcOptions aa;
        auto r2 = rrc_hermite(toy_system(), 42, aa);
        CHECK(r2.fast_mode); // 2^2 <= 2^6
    }
}

TEST_CASE("toy full classification reduces to the discriminant") {
    RrcOptions opt;
    opt.fast = RrcOptions::Off;
    auto res = rrc_hermite(toy_system(), 42, opt);
    REQUIRE(res.minors.size() == 2);
    CHECK(res.minors[0] == MultiPoly::constant(res.yctx, Rat(2)));
    CHECK(res.minors[1] == parse_poly(res.yctx, "y1^2 - 4*y2"));
    CHECK(res.realized_counts() == std::set<int>{0, 2});
    auto f2 = formula_set(res, 2), f0 = formula_set(res, 0);
    CHECK(f2 == std::set<std::vector<int>>{{1}});  // M_2 > 0
    CHECK(f0 == std::set<std::vector<int>>{{-1}}); // M_2 < 0
}

TEST_CASE("Sturm classification") {
    SECTION("fixture: printed subresultants, seven conditions, degree 11") {
        auto res = rrc_sturm(fixture_system(), 42);
        auto yctx = res.yctx;
        REQUIRE(res.subresultants.size() == 5);
        CHECK(res.subresultants[0] == MultiPoly::constant(yctx, Rat(1)));
        CHECK(res.subresultants[1] == MultiPoly::constant(yctx, Rat(1)));
        CHECK(res.subresultants[2] == parse_poly(yctx, "-2*y2^2 + y3^2 + 2*y1"));
        CHECK(res.subresultants[3] == parse_poly(yctx,
            "-y2^6 - 2*y2^4*y3^2 - y2^2*y3^4 + 3*y1*y2^4 - 14*y1*y2^2*y3^2 + y1*y3^4"
            " - 3*y1^2*y2^2 - 2*y1^2*y3^2 + y1^3"));
        CHECK(res.subresultants[4] == parse_poly(yctx, "y2^2*y3^2*y1") * parse_poly(yctx,
            "-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4"
            " - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3"));
        // maximum formula degree 11
        int maxdeg = 0;
        for (auto& p : res.condition_polys) maxdeg = std::max(maxdeg, p.total_degree());
        CHECK(maxdeg == 11);
        // seven realizable sign conditions over (s2, s3, s4)
        std::set<std::vector<int>> got;
        for (auto& c : res.cells) got.insert(c.signs);
        std::set<std::vector<int>> expect{{-1, -1, -1}, {-1, -1, 1}, {-1, 1, 1}, {1, -1, -1},
                                          {1, -1, 1},   {1, 1, -1},  {1, 1, 1}};
        CHECK(got == expect);
        // printed three-line grouping
        auto f0 = formula_set(res, 0), f2 = formula_set(res, 2), f4 = formula_set(res, 4);
        CHECK(f0 == std::set<std::vector<int>>{{-1, -1, 1}, {-1, 1, 1}, {1, -1, 1}});
        CHECK(f2 == std::set<std::vector<int>>{{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}});
        CHECK(f4 == std::set<std::vector<int>>{{1, 1, 1}});
    }
    SECTION("toy: classification by the sign of y1^2 - 4 y2") {
        auto res = rrc_sturm(toy_system(), 42);
        REQUIRE(res.subresultants.size() == 3);
        CHECK(res.subresultants[2] == parse_poly(res.yctx, "y1^2 - 4*y2"));
        CHECK(res.realized_counts() == std::set<int>{0, 2});
        auto f2 = formula_set(res, 2);
        CHECK(f2 == std::set<std::vector<int>>{{1}});
    }
}

TEST_CASE("cross validation") {
    SECTION("fixture and toy agree") {
        auto rep1 = cross_validate(fixture_system(), 42);
        CHECK(rep1.counts_hermite == std::set<int>{0, 2, 4});
        CHECK(rep1.points_checked > 0);
        auto rep2 = cross_validate(toy_system(), 42);
        CHECK(rep2.counts_hermite == std::set<int>{0, 2});
    }
    SECTION("seeded random dense systems agree") {
        SeedStream rng(2024, "cross-random");
        int done = 0;
        for (int it = 0; it < 12 && done < 6; ++it) {
            auto sys = random_dense_system(rng, 2, 2, 2);
            try {
                auto rep = cross_validate(sys, 42);
                ++done;
                CHECK(rep.counts_hermite == rep.counts_sturm);
            } catch (const NotZeroDimensionalError&) {
            } catch (const DegenerateLinearFormError&) {
            } catch (const IdenticallyZeroDeterminantError&) {
            }
        }
        CHECK(done >= 6);
    }
}

TEST_CASE("boundary exclusion invariant") {
    for (std::uint64_t seed : {1ULL, 42ULL}) {
        RrcOptions opt;
        opt.fast = RrcOptions::Off;
        auto res = rrc_hermite(fixture_system(), seed, opt);
        for (auto& c : res.cells) {
            CHECK(res.w_infinity.eval(c.sample) != 0);
            for (auto& m : res.condition_polys) CHECK(m.eval(c.sample) != 0);
            for (int s : c.signs) CHECK(s != 0);
        }
    }
}
