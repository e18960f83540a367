#pragma once

#include <vector>

#include "multislice/core.hpp"

namespace multislice {

using Partition = std::vector<int>;
// Ragged rows; SYT/canonical tableaux hold 1-based cell labels, SSYT hold letters.
using Tableau = std::vector<std::vector<int>>;

int partition_size(const Partition& p);
bool dominance_geq(const Partition& a, const Partition& b);
std::vector<Partition> partitions_of(int n);
// Sorted by number of parts, then lexicographically descending.
std::vector<Partition> partitions_dominating(const Partition& mu);
Partition conjugate(const Partition& p);
Partition balanced_partition(int s, int n);

BigInt count_syt(const Partition& lam);            // hook-length formula
BigInt count_syt_backtrack(const Partition& lam);  // explicit enumeration
std::vector<Tableau> enumerate_ssyt(const Partition& lam, const Partition& mu);
BigInt count_kostka(const Partition& lam, const Partition& mu);
bool young_rule_check(int s, int n);

Tableau canonical_tableau(const Partition& lam);
bool is_ssyt(const Tableau& t);
Partition shape_of(const Tableau& t);

// Elements of C_λ applied to T₀, as (T₀^σ, sgn σ).
struct ColumnImage {
    Tableau tableau;
    int sign;
};
std::vector<ColumnImage> column_group_images(const Partition& lam);
std::size_t column_group_order(const Partition& lam);

// e_{T',T}(x): each row of T' carries, as a multiset, the letters of row i of T.
bool row_multisets_match(const Tableau& t_prime, const Tableau& t, const Point& x);

// χ_T over the balanced slice in enumeration order.
std::vector<long long> chi_vector(const Tableau& T, int s);
long long chi_value(const std::vector<ColumnImage>& images, const Tableau& T,
                    const Point& x);

double slice_inner_product(const std::vector<long long>& f,
                           const std::vector<long long>& g);
Rational slice_inner_product_exact(const std::vector<long long>& f,
                                   const std::vector<long long>& g);
// det of the Gram matrix under the normalised slice inner product, exact.
double gram_determinant(const std::vector<std::vector<long long>>& vectors);
double gram_volume(const std::vector<std::vector<long long>>& vectors);
double chi_mean_under(const std::vector<double>& dist,
                      const std::vector<long long>& chi);

// Indices (0-based) of coordinates in the first λ₂ columns of T₀.
std::vector<int> chi_junta_coordinates(const Partition& lam);

// Total order on SSYT(λ, μ): true iff S < T.
bool ssyt_less(const Tableau& S, const Tableau& T);
// Membership in A_S: x agrees with S on the first λ₂ columns of T₀.
bool in_a_set(const Tableau& S, const Point& x);

// Row i (0-based) of the tabloid holds the 1-based coordinates equal to i.
Tableau point_to_tabloid(const Point& a, int s);
Point tabloid_to_point(const Tableau& rows);

}  // namespace multislice
