#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "multislice/junta.hpp"

namespace multislice {

// Query access to f : Z_s^n -> G with a query counter.
class Oracle {
public:
    Oracle(int s, int n, AbelianGroupSpec group)
        : s_(s), n_(n), group_(std::move(group)) {}
    virtual ~Oracle() = default;

    GroupElement query(const Point& x) {
        ++queries_;
        return answer(x);
    }
    std::uint64_t queries() const { return queries_; }
    void reset_queries() { queries_ = 0; }

    int s() const { return s_; }
    int n() const { return n_; }
    const AbelianGroupSpec& group() const { return group_; }

protected:
    virtual GroupElement answer(const Point& x) = 0;

private:
    int s_, n_;
    AbelianGroupSpec group_;
    std::uint64_t queries_ = 0;
};

// Answers with the ground truth except on a corrupted set. Random corruption
// is a deterministic function of (seed, x), so repeated queries agree.
class NoisyOracle : public Oracle {
public:
    NoisyOracle(JuntaPolynomial truth, double error_rate = 0.0, std::uint64_t seed = 0);

    void set_error(const Point& x, const GroupElement& value);
    void clear_errors() { errors_.clear(); }
    bool corrupted(const Point& x) const;
    GroupElement truth_at(const Point& x) const { return truth_.evaluate(x); }
    const JuntaPolynomial& truth() const { return truth_; }
    double error_rate() const { return rate_; }

protected:
    GroupElement answer(const Point& x) override;

private:
    bool randomly_corrupted(const Point& x) const;
    GroupElement random_offset(const Point& x) const;

    JuntaPolynomial truth_;
    double rate_;
    std::uint64_t seed_;
    std::map<Point, GroupElement> errors_;
};

class FunctionOracle : public Oracle {
public:
    using Fn = std::function<GroupElement(const Point&)>;
    FunctionOracle(int s, int n, AbelianGroupSpec group, Fn fn)
        : Oracle(s, n, std::move(group)), fn_(std::move(fn)) {}

protected:
    GroupElement answer(const Point& x) override { return fn_(x); }

private:
    Fn fn_;
};

int digit_sum(std::int64_t n, std::int64_t p);
int kummer_valuation(std::int64_t a, std::int64_t b, std::int64_t p);

// ---- ρ-noisy laws ------------------------------------------------------

// Law εδ₀ + (1-ε)U on Z_s.
std::vector<Rational> noisy_law(int s, const Rational& eps);
// Law of y - z for independent y ~ law_y, z ~ law_z.
std::vector<Rational> difference_law(const std::vector<Rational>& y,
                                     const std::vector<Rational>& z);
// ε with law == noisy_law(s, ε), if the law has that form.
std::optional<Rational> noisy_epsilon(const std::vector<Rational>& law);
bool noisy_convolution_check(int s, const Rational& rho1, const Rational& rho2,
                             int trials, Rng& rng);

// ---- error-reduction gadget -------------------------------------------

struct GadgetSample {
    std::vector<Point> shifts;
    std::vector<std::int64_t> coeffs;
};

struct Gadget {
    int n = 0, s = 2, d = 0;
    double rho = 0.0;
    int k = 1;
    Point center;                                          // in Z_s^k
    std::vector<std::pair<Point, std::int64_t>> ball;      // (b, α_b)

    std::size_t q() const { return ball.size(); }
    // Shifts y with P(a) = Σ c_i P(a + y_i); the shift law does not depend on a.
    GadgetSample sample(Rng& rng) const;
    // Pr[y_j = 0] for the shift attached to ball point i.
    Rational zero_probability(std::size_t i) const;
};

int gadget_k(int s, int d, double rho);
Gadget build_gadget(int n, int s, int d, double rho, Rng& rng);

Point add_mod(const Point& a, const Point& y, int s);

GroupElement plurality(const std::vector<GroupElement>& values);

GroupElement base_reduce(Oracle& f, const Point& x, const Gadget& g, Rng& rng);
GroupElement recursive_reduce(Oracle& f, const Point& x, int depth, const Gadget& g,
                              Rng& rng);

// ---- subgrid decoding -------------------------------------------------

// Calls fn(P, mismatches) for every degree-<=d junta-sum P on the table's
// domain with mismatches/N < radius (strict) or <= radius.
void for_each_close_junta_sum(const JuntaTable& table, int d, const Rational& radius,
                              bool strict,
                              const std::function<void(const JuntaPolynomial&, std::uint64_t)>& fn);

std::optional<JuntaPolynomial> brute_force_unique_decode(const JuntaTable& table, int d,
                                                         const Rational& radius);

// x_{h,Π}(y)_i = Π_i(y_{h(i)}), with Π_i a permutation of the alphabet.
struct SubgridMap {
    int s = 2, n = 0, k = 1;
    std::vector<int> h;
    std::vector<std::vector<int>> pi;

    Point point(const Point& y) const;
    // Random h and Π with Π_i(0) = a_i, so that x(0^k) = a.
    static SubgridMap anchored(const Point& a, int s, int k, Rng& rng);
    static SubgridMap random(int s, int n, int k, Rng& rng);
};

JuntaTable restrict_to_subgrid(Oracle& f, const SubgridMap& map);

struct SubgridDecodeResult {
    GroupElement value;
    bool decoded = false;
};
SubgridDecodeResult subgrid_error_reduce_detail(Oracle& f, const Point& a, int k, int d,
                                                Rng& rng);
GroupElement subgrid_error_reduce(Oracle& f, const Point& a, int k, int d, Rng& rng);

// ---- interpolating sets -----------------------------------------------

using BitPoint = std::vector<std::uint8_t>;

// Monomial evaluation matrix over subsets of [r] of size <= d.
std::vector<std::vector<int>> multilinear_subsets(int r, int d);
bool hitting_criterion(const std::vector<BitPoint>& points, int d);
// Points of weight in [lo, hi] satisfying hitting_criterion, by randomized
// greedy search. Throws ValidationError when the search fails.
std::vector<BitPoint> hitting_set(int r, int d, int lo, int hi, Rng& rng,
                                  int attempts = 20);

struct InterpolatingSet {
    int s = 2, d = 0, r = 1, m = 1;
    std::vector<BitPoint> points;          // coordinates ordered block by block
    std::vector<std::int64_t> coeffs;
    std::vector<std::int64_t> weights;     // W_j = s^{m-j}, j = 1..m
    std::int64_t total_weight = 0;         // r (s^m - 1)/(s - 1)

    int k() const { return r * m; }
    Rational weighted_mass(const BitPoint& b) const;
    bool weight_balanced() const;
    bool interpolates() const;
};

InterpolatingSet build_interpolating_set(int s, int d, int r, int m, Rng& rng);

// Value at 1^n from a boolean oracle, via a D-distributed map [n] -> [k].
GroupElement interpolating_set_correct(Oracle& boolean_f, const InterpolatingSet& set,
                                       Rng& rng);

using BooleanCorrector = std::function<GroupElement(Oracle&, Rng&)>;
// Reduces correction at x over Z_s^n to correction at 1^n over the biased cube.
GroupElement biased_cube_correct(Oracle& f, const Point& x, const BooleanCorrector& inner,
                                 Rng& rng, int repetitions = 3);
// z(y)_i = x_i if y_i = 1 else xp_i.
Point biased_cube_point(const Point& x, const Point& xp, const BitPoint& y);

// ---- torsion groups ---------------------------------------------------

struct TorsionScheme {
    int s = 2, d = 0;
    std::int64_t M = 1;
    std::vector<std::pair<std::int64_t, int>> factorization;  // (p, r)
    std::int64_t k = 1;
    std::int64_t k_prime = 1;
    std::int64_t A = 0;

    std::int64_t slice_points() const;  // C(sk, k), saturating
    // c_b for b in {0,1}^{sk} of weight k.
    std::int64_t coefficient(const BitPoint& b) const;
    bool divisibility_holds() const;
    // Q(1) = Σ c_b Q(b) mod M on every multilinear monomial of degree <= d.
    bool identity_holds() const;
};

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t M);
TorsionScheme torsion_scheme(int s, int d, std::int64_t M);
GroupElement torsion_correct(Oracle& f, const Point& x, const TorsionScheme& scheme,
                             Rng& rng);

}  // namespace multislice
