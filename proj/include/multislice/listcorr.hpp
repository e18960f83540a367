#pragma once

#include <functional>
#include <vector>

#include "multislice/correction.hpp"

namespace multislice {

// All degree-<=d junta-sums P with δ(table, P) <= radius.
std::vector<JuntaPolynomial> brute_force_list(const JuntaTable& table, int d,
                                              const Rational& radius);

// x_τ(y)_i = y_{τ(i)} for an s-to-1 map τ : [sk] -> [k].
struct IdentificationMap {
    int s = 2, k = 1;
    std::vector<int> tau;

    bool valid() const;
    Point point(const Point& y) const;
    static IdentificationMap random(int s, int k, Rng& rng);
};

JuntaTable restrict_to_identification(const JuntaTable& f, const IdentificationMap& tau);

// The sk-dimensional subgrid through C and b: h'(i) = σ(h(i) + k·Π_i^{-1}(b_i)).
struct SpannedSubgrid {
    SubgridMap base;
    Point b;
    std::vector<int> sigma;  // permutation of [sk]
    SubgridMap spanned;
    Point witness;           // x_{h',Π}(witness) = b

    static SpannedSubgrid make(const SubgridMap& base, const Point& b,
                               const std::vector<int>& sigma);
    // Lift of y ∈ S^k to S^{sk} with x_{h',Π}(lift(y)) = x_{h,Π}(y).
    Point lift(const Point& y) const;
    // τ(σ(j + k·c)) = j.
    IdentificationMap identification() const;
};

struct ApproximatorDescriptor {
    SubgridMap subgrid;
    std::vector<int> sigma;
    JuntaPolynomial Q;
    int d = 1;
    double eps = 0.1;
};

// Ψ[C,σ,Q](b): s^{sk} queries to f.
GroupElement approximator_eval(const ApproximatorDescriptor& desc, Oracle& f, const Point& b);

std::vector<ApproximatorDescriptor> build_approximators(Oracle& f, int d, double eps, int k,
                                                        int ell, Rng& rng);

struct ListCorrectionParams {
    int d = 1;
    double eps = 0.1;
    int k = 4;            // approximator subgrid dimension
    int ell = 4;          // approximator refinement rounds
    int corrector_k = 4;  // subgrid dimension of the unique corrector
};

struct ListCorrector {
    std::vector<ApproximatorDescriptor> descriptors;
    std::vector<std::function<GroupElement(const Point&, Rng&)>> correctors;
    std::uint64_t build_queries = 0;
};

// The returned closures query f; f must outlive them.
ListCorrector local_list_correct(Oracle& f, const ListCorrectionParams& params, Rng& rng);

// ---- empirical checks ---------------------------------------------------

Rational nonzero_fraction(const JuntaPolynomial& p);
int dependent_variables(const JuntaPolynomial& p);

struct AntiConcentrationReport {
    Rational min_fraction = Rational(1);
    Rational bound = Rational(0);  // 1/s^{d-1} - ε
    int tested = 0;
};
// Random degree-d junta-sums over Z_M on n variables that depend on >= r of them.
AntiConcentrationReport anti_concentration_check(int s, int d, double eps, int r, int n,
                                                 std::int64_t M, int trials, Rng& rng);

// Largest Pr_{a∈{0,1}^n}[P_1(a)=...=P_t(a)=0] over degree-1 polynomials on F_p
// with pairwise distinct leading variables.
Rational disjoint_leading_tail(int p, int t, int n);

struct SamplingReport {
    Rational density;            // |T| / s^n
    std::vector<double> deviations;
    double exceed_frequency = 0.0;
};
// T is a hash-random subset of Z_s^n of density 1/2.
SamplingReport subgrid_sampling_experiment(int s, int n, int k, double eps, int trials,
                                           std::uint64_t seed);

struct RestrictionReport {
    int trials = 0;
    int nonvanishing = 0;
    double frequency() const { return trials ? double(nonvanishing) / trials : 0.0; }
};
// P random with few monomials, nonzero on the balanced slice of S^{s^2 k};
// counts τ for which P∘x_τ stays nonzero on the balanced slice of S^{sk}.
RestrictionReport restriction_nonvanishing_experiment(int s, int k, int d, int trials,
                                                      Rng& rng);

}  // namespace multislice
