#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multislice/core.hpp"

namespace multislice {

struct GroupElement {
    std::vector<std::int64_t> components;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;
};

// Z_{m_1} x ... x Z_{m_t}.
class AbelianGroupSpec {
public:
    AbelianGroupSpec() : AbelianGroupSpec(std::vector<std::int64_t>{2}) {}
    explicit AbelianGroupSpec(std::vector<std::int64_t> factors);
    static AbelianGroupSpec cyclic(std::int64_t m) { return AbelianGroupSpec({m}); }

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::int64_t exponent() const { return exponent_; }
    BigInt order() const;
    std::string str() const;

    GroupElement zero() const;
    GroupElement reduce(std::vector<std::int64_t> comps) const;
    // Image of the integer v under the diagonal map Z -> G.
    GroupElement from_int(std::int64_t v) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement scale(const GroupElement& a, std::int64_t c) const;
    void add_in_place(GroupElement& a, const GroupElement& b) const;
    bool is_zero(const GroupElement& a) const;
    bool contains(const GroupElement& a) const;
    GroupElement random(Rng& rng) const;
    GroupElement random_nonzero(Rng& rng) const;
    std::vector<GroupElement> elements(std::uint64_t cap) const;

    bool operator==(const AbelianGroupSpec&) const = default;

private:
    std::vector<std::int64_t> factors_;
    std::int64_t exponent_ = 1;
};

// Support pattern of δ_a as sorted (coordinate, nonzero letter) pairs.
using Monomial = std::vector<std::pair<int, int>>;

bool monomial_value(const Monomial& a, const Point& x);
// All patterns on n coordinates over an alphabet of size s with support <= d,
// ordered by support size and then lexicographically.
std::vector<Monomial> monomials_up_to(int s, int n, int d);

// Full table over Z_s^n; x_0 is the most significant digit of the index.
std::uint64_t grid_size(int s, int n);
std::uint64_t grid_index(const Point& x, int s);
Point grid_point(std::uint64_t index, int s, int n);

struct JuntaTable {
    int s = 2;
    int n = 0;
    AbelianGroupSpec group;
    std::vector<GroupElement> values;
};

class JuntaPolynomial {
public:
    JuntaPolynomial(int s, int n, AbelianGroupSpec group);

    int s() const { return s_; }
    int n() const { return n_; }
    const AbelianGroupSpec& group() const { return group_; }
    const std::map<Monomial, GroupElement>& coeffs() const { return coeffs_; }

    // Adds g to the coefficient of δ_a; zero results are erased.
    void add_term(const Monomial& a, const GroupElement& g);
    GroupElement evaluate(const Point& x) const;

    bool is_zero() const { return coeffs_.empty(); }
    // 0 for the zero polynomial as well; check is_zero() to tell them apart.
    int degree() const;

    JuntaTable tabulate() const;
    static JuntaPolynomial from_truth_table(const JuntaTable& table);

    JuntaPolynomial operator+(const JuntaPolynomial& other) const;
    JuntaPolynomial operator-(const JuntaPolynomial& other) const;
    bool operator==(const JuntaPolynomial& other) const;

private:
    int s_, n_;
    AbelianGroupSpec group_;
    std::map<Monomial, GroupElement> coeffs_;
};

JuntaPolynomial random_junta_sum(int s, int n, int d, const AbelianGroupSpec& group,
                                 Rng& rng);
bool is_degree_at_most(const JuntaTable& table, int d);

Rational grid_distance(const JuntaTable& f, const JuntaTable& g);
std::uint64_t multislice_nonzero_count(const JuntaPolynomial& p, const SliceSpec& spec);
// multinomial(n - s*d; n_1 - d, ..., n_s - d), or 0 if some n_i < d.
BigInt multislice_distance_bound(const SliceSpec& spec, int d);

// Minimum Hamming weight of the F_p-span of the given vectors.
struct CodeMinimum {
    std::size_t min_weight = 0;  // 0 when the span is trivial
    int dimension = 0;
    std::uint64_t codewords = 0;
    std::size_t length = 0;
};
CodeMinimum code_min_weight(const std::vector<std::vector<int>>& generators, int p,
                            std::uint64_t max_codewords = std::uint64_t(1) << 32);

// Smallest nonzero fraction of a nonzero degree-<=d junta-sum into Z_p on the grid.
Rational grid_junta_min_fraction(int s, int n, int d, int p);
// Smallest nonzero count of a degree-<=d junta-sum into Z_p that is nonzero
// somewhere on the slice.
CodeMinimum multislice_min_nonzero(const SliceSpec& spec, int d, int p);

bool is_prime(std::int64_t p);
Rational odlsz_delta(int q, int d);

class PrimeFieldPolynomial {
public:
    PrimeFieldPolynomial(int p, int n) : p_(p), n_(n) {}
    int p() const { return p_; }
    int n() const { return n_; }
    const std::map<std::vector<int>, int>& coeffs() const { return coeffs_; }
    void add_term(const std::vector<int>& exponents, int c);
    int evaluate(const Point& x) const;
    int degree() const;

private:
    int p_, n_;
    std::map<std::vector<int>, int> coeffs_;
};

// Exponent vectors with each entry <= p-1 and total degree <= d.
std::vector<std::vector<int>> field_monomials(int p, int n, int d);

enum class SearchMode { exhaustive, sampled };
struct FieldMinimum {
    Rational grid;
    std::optional<Rational> slice;  // present when p divides n
};
FieldMinimum field_poly_min_nonzero_fraction(int p, int n, int d, SearchMode mode,
                                             int samples = 10000,
                                             std::uint64_t seed = 1);

// Integer α_b with P(0^m) = Σ α_b P(b) for every junta-sum of degree <= d,
// b ranging over the Hamming ball of radius d around c.
using BallCoefficients = std::map<Point, std::int64_t>;
BallCoefficients ball_interpolation_coeffs(int s, int m, int d, const Point& c);
// Explicit solution supported on the points of c with at most d nonzero
// coordinates zeroed out. Works at any m.
BallCoefficients ball_interpolation_closed_form(int d, const Point& c);
// Checks the identity on every δ-monomial of degree <= d.
bool ball_identity_holds(int d, const Point& target, const BallCoefficients& coeffs);

}  // namespace multislice
