#include "multislice/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace multislice {

std::uint64_t capacity_cap() {
    if (const char* env = std::getenv("MULTISLICE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 1000000ULL;
}

void require_within_cap(const BigInt& size, const std::string& what,
                        std::uint64_t cap) {
    if (cap == 0) cap = capacity_cap();
    if (size > BigInt(cap)) {
        throw CapacityError(what + ": size " + size.str() + " exceeds cap " +
                            std::to_string(cap) +
                            " (set MULTISLICE_BUDGET to raise it)");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_string(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Rng derive_stream(std::uint64_t seed, const std::string& scenario,
                  std::uint64_t trial) {
    std::uint64_t x = splitmix64(seed);
    x = splitmix64(x ^ hash_string(scenario));
    x = splitmix64(x ^ trial);
    return Rng(x);
}

BigInt big_factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt big_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

BigInt big_multinomial(const std::vector<int>& parts) {
    BigInt r = 1;
    unsigned total = 0;
    for (int p : parts) {
        if (p < 0) return 0;
        total += static_cast<unsigned>(p);
        r *= big_binomial(total, static_cast<unsigned>(p));
    }
    return r;
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
    BigInt b = big_binomial(n, k);
    if (b > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw CapacityError("binomial coefficient overflows 64 bits");
    return static_cast<std::uint64_t>(b);
}

std::uint64_t multinomial_u64(const std::vector<int>& parts) {
    BigInt b = big_multinomial(parts);
    if (b > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw CapacityError("multinomial coefficient overflows 64 bits");
    return static_cast<std::uint64_t>(b);
}

double multinomial_double(const std::vector<int>& parts) {
    double r = 1.0;
    int total = 0;
    for (int p : parts) {
        if (p < 0) return 0.0;
        for (int i = 1; i <= p; ++i) {
            ++total;
            r = r * total / i;
        }
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CapacityError("exact arithmetic overflowed 64 bits");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw CapacityError("exact arithmetic overflowed 64 bits");
    return r;
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = std::gcd(a, b);
    return checked_mul(a / g, b);
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace multislice
