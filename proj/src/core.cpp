#include "multislice/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace multislice {

SliceSpec SliceSpec::balanced(int s, int n) {
    if (s < 2) throw ValidationError("alphabet size must be at least 2");
    if (n < 0 || n % s != 0)
        throw ValidationError("balanced slice needs s | n (s=" +
                              std::to_string(s) + ", n=" + std::to_string(n) +
                              ")");
    return SliceSpec{s, n, std::vector<int>(s, n / s)};
}

bool SliceSpec::is_balanced() const {
    return std::all_of(counts.begin(), counts.end(),
                       [&](int c) { return c * s == n; });
}

void SliceSpec::validate() const {
    if (s < 2) throw ValidationError("alphabet size must be at least 2");
    if (static_cast<int>(counts.size()) != s)
        throw ValidationError("counts vector must have s entries");
    int total = 0;
    for (int c : counts) {
        if (c < 0) throw ValidationError("negative letter count");
        total += c;
    }
    if (total != n) throw ValidationError("letter counts do not sum to n");
}

DistanceMatrix::DistanceMatrix(int s, std::vector<int> entries)
    : s_(s), e_(std::move(entries)) {
    if (static_cast<int>(e_.size()) != s * s)
        throw ValidationError("distance matrix must have s*s entries");
}

std::vector<int> DistanceMatrix::row(int sigma) const {
    return std::vector<int>(e_.begin() + sigma * s_,
                            e_.begin() + (sigma + 1) * s_);
}

std::vector<int> DistanceMatrix::col(int tau) const {
    std::vector<int> c(s_);
    for (int i = 0; i < s_; ++i) c[i] = (*this)(i, tau);
    return c;
}

DistanceMatrix DistanceMatrix::transpose() const {
    std::vector<int> t(e_.size());
    for (int i = 0; i < s_; ++i)
        for (int j = 0; j < s_; ++j) t[j * s_ + i] = (*this)(i, j);
    return DistanceMatrix(s_, t);
}

DistanceMatrix DistanceMatrix::scaled(int factor) const {
    std::vector<int> t(e_);
    for (int& v : t) v *= factor;
    return DistanceMatrix(s_, t);
}

std::string DistanceMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < s_; ++i) {
        if (i) os << ',';
        os << '[';
        for (int j = 0; j < s_; ++j) {
            if (j) os << ',';
            os << (*this)(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

std::vector<int> letter_counts(const Point& a, int s) {
    std::vector<int> c(s, 0);
    for (auto v : a) {
        if (v >= s) throw ValidationError("letter outside alphabet");
        ++c[v];
    }
    return c;
}

bool on_slice(const Point& a, const SliceSpec& spec) {
    return static_cast<int>(a.size()) == spec.n &&
           letter_counts(a, spec.s) == spec.counts;
}

BigInt slice_size(const SliceSpec& spec) {
    spec.validate();
    return big_multinomial(spec.counts);
}

std::vector<Point> enumerate_slice(const SliceSpec& spec, std::uint64_t cap) {
    require_within_cap(slice_size(spec), "enumerate_slice", cap);
    Point p;
    p.reserve(spec.n);
    for (int sigma = 0; sigma < spec.s; ++sigma)
        p.insert(p.end(), spec.counts[sigma], static_cast<std::uint8_t>(sigma));
    std::vector<Point> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

DistanceMatrix distance_matrix(const Point& a, const Point& b, int s) {
    if (a.size() != b.size())
        throw ValidationError("distance_matrix: length mismatch");
    std::vector<int> e(s * s, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] >= s || b[i] >= s)
            throw ValidationError("distance_matrix: letter outside alphabet");
        ++e[a[i] * s + b[i]];
    }
    return DistanceMatrix(s, e);
}

bool is_c_balanced(const DistanceMatrix& d, double C, int m) {
    if (m <= 0) throw ValidationError("is_c_balanced: m must be positive");
    double width = m == 1 ? 0.0 : std::sqrt(C * m * std::log(double(m)));
    double centre = double(m) / d.s();
    const double slack = 1e-12;
    for (int v : d.entries())
        if (v < centre - width - slack || v > centre + width + slack)
            return false;
    return true;
}

Point apply_permutation(const std::vector<int>& pi, const Point& a) {
    if (pi.size() != a.size())
        throw ValidationError("apply_permutation: size mismatch");
    Point r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[pi[j]] = a[j];
    return r;
}

std::vector<int> inverse_permutation(const std::vector<int>& pi) {
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = int(i);
    return inv;
}

int permutation_sign(const std::vector<int>& pi) {
    std::vector<bool> seen(pi.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = pi[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::string point_to_string(const Point& a) {
    std::string s;
    for (auto v : a) s.push_back(char('0' + v));
    return s;
}

Point point_from_string(const std::string& text) {
    Point p;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ValidationError("point string must contain digits only");
        p.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return p;
}

SliceIndex::SliceIndex(const SliceSpec& spec, std::uint64_t cap)
    : spec_(spec), points_(enumerate_slice(spec, cap)) {
    if (spec.n > 32 || spec.s > 4)
        throw CapacityError("SliceIndex supports n <= 32 and s <= 4");
    rank_.reserve(points_.size() * 2);
    for (std::size_t i = 0; i < points_.size(); ++i)
        rank_.emplace(pack(points_[i]), i);
}

std::uint64_t SliceIndex::pack(const Point& a) {
    std::uint64_t key = 0;
    for (auto v : a) key = (key << 2) | v;
    return key;
}

std::size_t SliceIndex::index_of(const Point& a) const {
    auto it = rank_.find(pack(a));
    if (it == rank_.end() || a.size() != std::size_t(spec_.n))
        throw ValidationError("point is not on the indexed slice");
    return it->second;
}

std::vector<DistanceMatrix> all_distance_matrices(const std::vector<int>& rows,
                                                  const std::vector<int>& cols) {
    const int s = int(rows.size());
    std::vector<DistanceMatrix> out;
    std::vector<int> e(s * s, 0);
    std::vector<int> col_left(cols);
    std::function<void(int, int, int)> rec = [&](int i, int j, int row_left) {
        if (i == s) {
            if (std::all_of(col_left.begin(), col_left.end(),
                            [](int c) { return c == 0; }))
                out.emplace_back(s, e);
            return;
        }
        if (j == s - 1) {
            if (row_left > col_left[j]) return;
            e[i * s + j] = row_left;
            col_left[j] -= row_left;
            rec(i + 1, 0, i + 1 < s ? rows[i + 1] : 0);
            col_left[j] += row_left;
            return;
        }
        for (int v = 0; v <= std::min(row_left, col_left[j]); ++v) {
            e[i * s + j] = v;
            col_left[j] -= v;
            rec(i, j + 1, row_left - v);
            col_left[j] += v;
        }
    };
    if (s > 0) rec(0, 0, rows[0]);
    return out;
}

}  // namespace multislice
