#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "multislice/core.hpp"

namespace multislice {

// Dense walk over a slice. Exact mode keeps integer numerators over a
// common denominator; the double matrix is always populated.
class WalkMatrix {
public:
    struct Term {
        Rational weight;
        DistanceMatrix delta;
    };

    WalkMatrix(std::shared_ptr<const SliceIndex> index, Eigen::MatrixXd real);
    WalkMatrix(std::shared_ptr<const SliceIndex> index,
               std::vector<std::int64_t> numerators, std::int64_t denominator);

    const SliceIndex& index() const { return *index_; }
    std::shared_ptr<const SliceIndex> index_ptr() const { return index_; }
    const SliceSpec& spec() const { return index_->spec(); }
    std::size_t size() const { return index_->size(); }

    bool exact() const { return !num_.empty(); }
    std::int64_t numerator(std::size_t a, std::size_t b) const {
        return num_[a * size() + b];
    }
    std::int64_t denominator() const { return den_; }
    Rational entry(std::size_t a, std::size_t b) const;
    const Eigen::MatrixXd& real() const { return real_; }

    // Convex decomposition into W_Δ terms, when the walk was built that way.
    const std::vector<Term>& terms() const { return terms_; }
    void set_terms(std::vector<Term> terms) { terms_ = std::move(terms); }

    bool is_doubly_stochastic_exact() const;
    bool is_symmetric_exact() const;
    bool is_symmetric(double tol = 1e-12) const;

    WalkMatrix transpose() const;
    // Copy with one entry moved by delta/denominator (exact) or delta (real).
    WalkMatrix perturbed(std::size_t a, std::size_t b, std::int64_t delta) const;

private:
    std::shared_ptr<const SliceIndex> index_;
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 1;
    Eigen::MatrixXd real_;
    std::vector<Term> terms_;
};

struct SpectralReport {
    std::vector<double> singular_values;  // descending
    double sigma2 = 0.0;
    bool symmetric = false;
    std::vector<double> eigenvalues;  // descending, symmetric input only
    double lambda2 = 0.0;             // max(|λ₂|, |λ_N|); σ₂ when not symmetric
    std::vector<std::pair<double, int>> multiplicities;
};

struct IndependenceReport {
    int k = 0;
    double epsilon = 0.0;
    std::size_t worst_row = 0;
    std::vector<int> worst_subset;
};

std::uint64_t dense_cap();

std::shared_ptr<const SliceIndex> make_index(const SliceSpec& spec);

// Number of b with Δ(a,b)=d for any a with the row-sum counts of d.
BigInt distance_support_size(const DistanceMatrix& d);

// Calls fn(b) for each b with Δ(a,b) = d.
void for_each_at_distance(const Point& a, const DistanceMatrix& d,
                          const std::function<void(const Point&)>& fn);

WalkMatrix walk_from_distance(const DistanceMatrix& d, const SliceSpec& spec);
WalkMatrix walk_from_terms(std::shared_ptr<const SliceIndex> index,
                           const std::vector<WalkMatrix::Term>& terms);
WalkMatrix walk_odlsz(int s, int n);
// Exhaustive frequency table of Δ(a,b) for uniform independent a,b on the
// balanced slice S^{sk}_{k,...,k}.
std::vector<WalkMatrix::Term> subgrid_distance_law(int s, int k);
WalkMatrix walk_subgrid_identification(int s, int k);
WalkMatrix identity_walk(const SliceSpec& spec);
WalkMatrix convex_combine(const std::vector<std::pair<Rational, WalkMatrix>>& terms);

SpectralReport spectral_report(const WalkMatrix& w, double cluster_tol = 1e-8);

enum class SymmetryMode { exhaustive, sampled };
bool respects_symmetries(const WalkMatrix& w, SymmetryMode mode,
                         int trials = 10000, std::uint64_t seed = 1);

double frobenius_norm(const WalkMatrix& w);

IndependenceReport independence_report(const WalkMatrix& w, int k);
// Same quantity from the product-of-multinomials marginal formula applied to
// the walk's W_Δ decomposition.
IndependenceReport independence_closed_form(const WalkMatrix& w, int k);

struct MixingCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
MixingCheck expander_mixing_check(const WalkMatrix& w,
                                  const std::vector<bool>& in_set,
                                  double lambda2);
MixingCheck expander_mixing_check(const WalkMatrix& w,
                                  const std::vector<bool>& in_set);

}  // namespace multislice
