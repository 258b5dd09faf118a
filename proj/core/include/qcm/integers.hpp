#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcm {

using Int = mpz_class;
using Rat = mpq_class;

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// g = gcd(a,b) = u*a + v*b
inline Int xgcd(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Floor division and mod (sign of divisor assumed positive where used).
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& a, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int pow_int(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline Int pow_mod(const Int& a, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Square test for rationals (exact).
inline bool is_square(const Rat& q, Rat* root = nullptr) {
    if (q < 0) return false;
    if (!is_square(q.get_num()) || !is_square(q.get_den())) return false;
    if (root) *root = Rat(isqrt(q.get_num()), isqrt(q.get_den()));
    return true;
}

// Factorization of desk-scale integers: trial division then Pollard rho.
std::map<Int, unsigned> factorize(Int n);

// Distinct prime divisors, ascending.
std::vector<Int> prime_divisors(const Int& n);

// Squarefree part of a nonzero integer (sign preserved).
Int squarefree_part(const Int& n);

// Legendre/Jacobi symbol wrapper.
inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

// Square root mod odd prime p (Tonelli-Shanks); requires (a|p) != -1.
Int sqrt_mod_prime(const Int& a, const Int& p);

}  // namespace qcm
