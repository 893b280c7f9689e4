#pragma once

// Exact integer arithmetic: factorization, totient, multiplicative order,
// and the two-generator decomposition of the unit group of Z_pq.
//
// Everything here is plain trial-division arithmetic. Moduli up to 2^63-1 are
// accepted; the intended working range is desk scale (n <= 10^7 or so), where
// trial division is instantaneous.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "splitkit/errors.hpp"

namespace splitkit {

using std::int64_t;

struct PrimePower {
    int64_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition with strictly increasing primes. The empty
/// factorization is the integer 1.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> pp) : prime_powers_(std::move(pp)) {}

    const std::vector<PrimePower>& prime_powers() const { return prime_powers_; }

    int64_t value() const {
        int64_t v = 1;
        for (const auto& [p, e] : prime_powers_)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }

    bool empty() const { return prime_powers_.empty(); }

private:
    std::vector<PrimePower> prime_powers_;
};

inline Factorization factorize(int64_t n) {
    if (n <= 0) throw validation_error("factorize: n must be a positive integer, got " + std::to_string(n));
    std::vector<PrimePower> pp;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        pp.push_back({p, e});
    }
    if (n > 1) pp.push_back({n, 1});
    return Factorization(std::move(pp));
}

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    const Factorization f = factorize(n);
    return f.prime_powers().size() == 1 && f.prime_powers()[0].exponent == 1;
}

inline bool is_prime_power(int64_t n) {
    return n >= 2 && factorize(n).prime_powers().size() == 1;
}

inline int64_t euler_phi(int64_t n) {
    if (n <= 0) throw validation_error("euler_phi: n must be a positive integer, got " + std::to_string(n));
    int64_t phi = 1;
    for (const auto& [p, e] : factorize(n).prime_powers()) {
        int64_t pk = 1;
        for (int i = 0; i < e - 1; ++i) pk *= p;
        phi *= pk * (p - 1);
    }
    return phi;
}

/// All positive divisors of n, ascending.
inline std::vector<int64_t> divisors(int64_t n) {
    if (n <= 0) throw validation_error("divisors: n must be a positive integer");
    std::vector<int64_t> ds{1};
    for (const auto& [p, e] : factorize(n).prime_powers()) {
        const std::size_t base = ds.size();
        int64_t pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Canonical representative of v modulo n in [0, n). n >= 1.
inline int64_t canonical_mod(int64_t v, int64_t n) {
    int64_t r = v % n;
    return r < 0 ? r + n : r;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t n) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % n);
}

inline int64_t pow_mod(int64_t base, int64_t exp, int64_t n) {
    base = canonical_mod(base, n);
    int64_t out = canonical_mod(1, n);
    while (exp > 0) {
        if (exp & 1) out = mul_mod(out, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return out;
}

/// Least l >= 1 with g^l = 1 (mod n). Found by divisor descent from phi(n):
/// strip prime factors from the exponent while the power stays 1. Requires
/// gcd(g, n) = 1.
inline int64_t mul_order(int64_t g, int64_t n) {
    if (n <= 0) throw validation_error("mul_order: modulus must be positive");
    g = canonical_mod(g, n);
    if (std::gcd(g, n) != 1)
        throw validation_error("mul_order: gcd(" + std::to_string(g) + ", " + std::to_string(n) + ") != 1");
    if (n == 1) return 1;
    int64_t l = euler_phi(n);
    for (const auto& [p, e] : factorize(l).prime_powers()) {
        (void)e;
        while (l % p == 0 && pow_mod(g, l / p, n) == 1) l /= p;
    }
    return l;
}

/// The cyclic subgroup {g^0, g^1, ...} of the units modulo n.
inline std::set<int64_t> cyclic_units(int64_t g, int64_t n) {
    std::set<int64_t> out;
    int64_t v = canonical_mod(1, n);
    do {
        out.insert(v);
        v = mul_mod(v, canonical_mod(g, n), n);
    } while (v != canonical_mod(1, n));
    return out;
}

/// Z_pq^* = <x> x <g> with ord(x) = d = gcd(p-1, q-1) and
/// ord(g) = (p-1)(q-1)/d. The cofactors d1, d2 are defined by
/// ord_p(g) = (p-1)/d1 and ord_q(g) = (q-1)/d2; they always satisfy
/// d1*d2 | d and gcd(d1, d2) = 1.
struct UnitDecomposition {
    int64_t p = 0;
    int64_t q = 0;
    int64_t d = 0;
    int64_t x = 0;
    int64_t g = 0;
    int64_t d1 = 0;
    int64_t d2 = 0;
};

/// Builds a UnitDecomposition for distinct primes p, q. When `pin` supplies
/// an (x, g) pair it is validated and used; otherwise the search is
/// deterministic: smallest g of maximal order first, then smallest x of
/// order d whose cyclic group meets <g> only in 1.
inline UnitDecomposition decompose_unit_group_pq(
    int64_t p, int64_t q, std::optional<std::pair<int64_t, int64_t>> pin = std::nullopt) {
    if (!is_prime(p) || !is_prime(q))
        throw validation_error("decompose_unit_group_pq: p and q must be prime");
    if (p == q) throw validation_error("decompose_unit_group_pq: p and q must be distinct");

    const int64_t n = p * q;
    const int64_t phi = (p - 1) * (q - 1);
    const int64_t d = std::gcd(p - 1, q - 1);
    const int64_t g_order = phi / d;

    UnitDecomposition out;
    out.p = p;
    out.q = q;
    out.d = d;

    const auto check_pair = [&](int64_t x, int64_t g, bool pinned) -> bool {
        const auto fail = [&](const std::string& what) -> bool {
            if (pinned) throw validation_error("decompose_unit_group_pq: pinned pair rejected: " + what);
            return false;
        };
        if (std::gcd(x, n) != 1) return fail("x = " + std::to_string(x) + " is not a unit modulo " + std::to_string(n));
        if (std::gcd(g, n) != 1) return fail("g = " + std::to_string(g) + " is not a unit modulo " + std::to_string(n));
        if (mul_order(x, n) != d)
            return fail("ord(x) = " + std::to_string(mul_order(x, n)) + ", required d = " + std::to_string(d));
        if (mul_order(g, n) != g_order)
            return fail("ord(g) = " + std::to_string(mul_order(g, n)) + ", required (p-1)(q-1)/d = " +
                        std::to_string(g_order));
        const std::set<int64_t> gx = cyclic_units(x, n);
        const std::set<int64_t> gg = cyclic_units(g, n);
        for (int64_t v : gx)
            if (v != 1 && gg.count(v)) return fail("<x> and <g> share the non-identity element " + std::to_string(v));
        return true;
    };

    if (pin) {
        out.x = canonical_mod(pin->first, n);
        out.g = canonical_mod(pin->second, n);
        check_pair(out.x, out.g, true);
    } else {
        int64_t g = 0;
        for (int64_t cand = 1; cand < n; ++cand) {
            if (std::gcd(cand, n) == 1 && mul_order(cand, n) == g_order) { g = cand; break; }
        }
        if (g == 0) throw internal_error("decompose_unit_group_pq: no element of maximal order found");
        int64_t x = 0;
        for (int64_t cand = 1; cand < n; ++cand) {
            if (std::gcd(cand, n) != 1 || mul_order(cand, n) != d) continue;
            if (check_pair(cand, g, false)) { x = cand; break; }
        }
        if (x == 0) throw internal_error("decompose_unit_group_pq: no complement generator found");
        out.x = x;
        out.g = g;
    }

    out.d1 = (p - 1) / mul_order(out.g % p, p);
    out.d2 = (q - 1) / mul_order(out.g % q, q);
    if (d % (out.d1 * out.d2) != 0 || std::gcd(out.d1, out.d2) != 1)
        throw internal_error("decompose_unit_group_pq: derived (d1, d2) violate d1*d2 | d, gcd(d1, d2) = 1");
    return out;
}

} // namespace splitkit
