#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace multislice {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;
using Rng = std::mt19937_64;

// Raised when an argument violates an operation's precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a computation would exceed a configured size budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration cap; MULTISLICE_BUDGET overrides the default of 10^6.
std::uint64_t capacity_cap();
void require_within_cap(const BigInt& size, const std::string& what,
                        std::uint64_t cap = 0);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_string(const std::string& s);
// Per-trial stream derived from (seed, scenario, trial index).
Rng derive_stream(std::uint64_t seed, const std::string& scenario,
                  std::uint64_t trial);

BigInt big_factorial(unsigned n);
BigInt big_binomial(unsigned n, unsigned k);
BigInt big_multinomial(const std::vector<int>& parts);

// Exact 64-bit versions; throw CapacityError on overflow.
std::uint64_t binomial_u64(unsigned n, unsigned k);
std::uint64_t multinomial_u64(const std::vector<int>& parts);
double multinomial_double(const std::vector<int>& parts);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t ipow(std::int64_t base, unsigned exp);

// Uniformly random permutation of {0,...,n-1}.
std::vector<int> random_permutation(int n, Rng& rng);

}  // namespace multislice
