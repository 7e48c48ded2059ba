#include <catch2/catch_amalgamated.hpp>

#include <rrc/matrix.hpp>

using namespace rrc;

namespace {

MatQ diag(std::vector<long> d) {
    MatQ m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = Rat(d[i]);
    return m;
}

MatQ random_symmetric(SeedStream& rng, int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rat v = rng.next_rat(9);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

} // namespace

TEST_CASE("exact determinants") {
    CHECK(det_exact(diag({1, 1, 1})) == 1);
    MatQ dup(3, 3);
    for (int j = 0; j < 3; ++j) {
        dup.at(0, j) = Rat(j + 1);
        dup.at(1, j) = Rat(j + 1);
        dup.at(2, j) = Rat(j * j);
    }
    CHECK(det_exact(dup) == 0);
    CHECK_THROWS(det_exact(MatQ(2, 3)));

    // fixture Hermite matrix at eta = (1,0,0)
    MatQ h(4, 4);
    h.at(0, 0) = 4;  h.at(0, 3) = 2;
    h.at(1, 1) = 2;
    h.at(2, 2) = 2;
    h.at(3, 0) = 2;  h.at(3, 3) = 2;
    CHECK(det_exact(h) == 16);
    CHECK(signature(h) == 4);
    CHECK(rank(h) == 4);
}

TEST_CASE("characteristic polynomial") {
    CHECK(char_poly(diag({0, 0})) == std::vector<Rat>{Rat(0), Rat(0), Rat(1)}); // lambda^2
    CHECK(char_poly(diag({2, -2})) == std::vector<Rat>{Rat(-4), Rat(0), Rat(1)}); // lambda^2 - 4

    SECTION("constant term matches det_exact on randoms") {
        SeedStream rng(9, "charpoly");
        for (int it = 0; it < 30; ++it) {
            int n = static_cast<int>(rng.next_in(1, 5));
            MatQ m(n, n);
            for (auto& x : m.a) x = rng.next_rat(9, 4);
            auto cp = char_poly(m);
            Rat d0 = cp[0];
            if (n % 2) d0 = -d0; // det(lambda I - M) at 0 = (-1)^n det(M)
            CHECK(d0 == det_exact(m));
        }
    }
}

TEST_CASE("signature and rank") {
    CHECK(signature(diag({1, 1, 1, 1})) == 4);
    CHECK(signature(diag({0, 0, 0})) == 0);
    CHECK(signature(diag({2, -2})) == 0);
    CHECK(rank(diag({1, 1, 1})) == 3);
    CHECK(rank(MatQ(3, 3)) == 0);
    CHECK_THROWS(signature(MatQ(2, 3)));

    SECTION("Sylvester-Jacobi consistency on randoms") {
        SeedStream rng(13, "sylvester");
        int done = 0;
        for (int it = 0; it < 60; ++it) {
            int n = static_cast<int>(rng.next_in(2, 5));
            MatQ m = random_symmetric(rng, n);
            auto minors = leading_principal_minors_q(m);
            bool all_nonzero = true;
            for (auto& v : minors) all_nonzero &= (v != 0);
            if (!all_nonzero) continue;
            ++done;
            std::vector<Rat> seq{Rat(1)};
            for (auto& v : minors) seq.push_back(v);
            int var = 0;
            for (size_t i = 1; i < seq.size(); ++i)
                if (sign(seq[i - 1]) != sign(seq[i])) ++var;
            CHECK(n - 2 * var == signature(m));
        }
        CHECK(done > 30);
    }
}

TEST_CASE("congruence over Q") {
    SeedStream rng(17, "congruence");
    for (int it = 0; it < 25; ++it) {
        int n = static_cast<int>(rng.next_in(2, 5));
        MatQ m = random_symmetric(rng, n);
        MatZ a = random_unimodularish(n, rng);
        MatQ ma = congruence(m, a);
        CHECK(is_symmetric(ma));
        CHECK(signature(ma) == signature(m)); // Sylvester's law of inertia
        MatQ aq(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) aq.at(i, j) = Rat(a.at(i, j));
        CHECK(det_exact(ma) == det_exact(aq) * det_exact(aq) * det_exact(m));
    }
}
