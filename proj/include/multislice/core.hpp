#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "multislice/common.hpp"

namespace multislice {

using Point = std::vector<std::uint8_t>;

struct SliceSpec {
    int s = 2;
    int n = 0;
    std::vector<int> counts;  // counts[σ] = number of coordinates equal to σ

    static SliceSpec balanced(int s, int n);
    bool is_balanced() const;
    void validate() const;
    bool operator==(const SliceSpec& o) const {
        return s == o.s && n == o.n && counts == o.counts;
    }
};

// s×s matrix of joint letter counts, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(int s, std::vector<int> entries);

    int s() const { return s_; }
    int operator()(int sigma, int tau) const { return e_[sigma * s_ + tau]; }
    int& at(int sigma, int tau) { return e_[sigma * s_ + tau]; }
    const std::vector<int>& entries() const { return e_; }
    std::vector<int> row(int sigma) const;
    std::vector<int> col(int tau) const;
    DistanceMatrix transpose() const;
    DistanceMatrix scaled(int factor) const;
    std::string str() const;

    bool operator==(const DistanceMatrix& o) const {
        return s_ == o.s_ && e_ == o.e_;
    }
    bool operator<(const DistanceMatrix& o) const { return e_ < o.e_; }

private:
    int s_ = 0;
    std::vector<int> e_;
};

std::vector<int> letter_counts(const Point& a, int s);
bool on_slice(const Point& a, const SliceSpec& spec);

// All points of the slice in lexicographic order.
std::vector<Point> enumerate_slice(const SliceSpec& spec,
                                   std::uint64_t cap = 0);
BigInt slice_size(const SliceSpec& spec);

DistanceMatrix distance_matrix(const Point& a, const Point& b, int s);

bool is_c_balanced(const DistanceMatrix& d, double C, int m);

// result_i = a_{π^{-1}(i)}, i.e. result[pi[j]] = a[j].
Point apply_permutation(const std::vector<int>& pi, const Point& a);
std::vector<int> inverse_permutation(const std::vector<int>& pi);
int permutation_sign(const std::vector<int>& pi);

std::string point_to_string(const Point& a);
Point point_from_string(const std::string& text);

// Dense index over an enumerated slice.
class SliceIndex {
public:
    explicit SliceIndex(const SliceSpec& spec, std::uint64_t cap = 0);

    const SliceSpec& spec() const { return spec_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t index_of(const Point& a) const;

    static std::uint64_t pack(const Point& a);

private:
    SliceSpec spec_;
    std::vector<Point> points_;
    std::unordered_map<std::uint64_t, std::size_t> rank_;
};

// Every doubly-stochastic-after-scaling distance matrix with row and
// column sums equal to the given counts.
std::vector<DistanceMatrix> all_distance_matrices(const std::vector<int>& rows,
                                                  const std::vector<int>& cols);

}  // namespace multislice
