#pragma once

// Exact rational scalars. GMP supplies the arbitrary-precision arithmetic;
// everything here is small glue kept in one place.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rrc {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rat& r) { return sgn(r); }
inline int sign(const Int& z) { return sgn(z); }

inline Int int_pow(Int base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// gcd of rationals: the positive generator of the fractional ideal,
// gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d).  gcd(x, 0) = |x|.
inline Rat rat_content_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Int num = gcd(a.get_num() * b.get_den(), b.get_num() * a.get_den());
    return make_rat(num, a.get_den() * b.get_den());
}

// Simplest rational (smallest denominator, then smallest |numerator|) in the
// open interval (lo, hi).  Stern-Brocot / continued-fraction walk.
inline Rat simplest_in(const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw Error("simplest_in: empty interval");
    if (lo < 0 && hi > 0) return Rat(0);
    if (hi <= 0) return -simplest_in(-hi, -lo);
    // now 0 <= lo < hi
    Int fl = rat_floor(lo);
    if (Rat(fl) + 1 < hi) return Rat(fl + 1); // an integer strictly inside
    // hi <= fl+1, so both ends live in [fl, fl+1)
    Rat a = lo - Rat(fl), b = hi - Rat(fl);
    if (a == 0) {
        // (0, b): pick 1/ceil(1/b + 1)-ish: smallest q with 1/q < b
        Int q = rat_floor(1 / b) + 1;
        return Rat(fl) + make_rat(Int(1), q);
    }
    // recurse on inverted interval
    Rat inner = simplest_in(1 / b, 1 / a);
    return Rat(fl) + 1 / inner;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

// --- deterministic seeded streams -------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// All randomness in the toolkit flows from one 64-bit seed through named
// streams, so every Las Vegas retry is replayable.
class SeedStream {
public:
    SeedStream(std::uint64_t seed, const std::string& name) : state_(seed ^ fnv1a(name)) {
        splitmix64(state_); // decorrelate from the raw xor
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [lo, hi] inclusive
    long next_in(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    Rat next_rat(long max_abs_num, long max_den = 1) {
        long num = next_in(-max_abs_num, max_abs_num);
        long den = max_den > 1 ? next_in(1, max_den) : 1;
        return make_rat(num, den);
    }

private:
    std::uint64_t state_;
};

} // namespace rrc
