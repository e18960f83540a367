#include "multislice/tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace multislice {

int partition_size(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

bool dominance_geq(const Partition& a, const Partition& b) {
    if (partition_size(a) != partition_size(b))
        throw ValidationError("dominance_geq: partitions of different sizes");
    int sa = 0, sb = 0;
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        sa += i < a.size() ? a[i] : 0;
        sb += i < b.size() ? b[i] : 0;
        if (sa < sb) return false;
    }
    return true;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<Partition> partitions_dominating(const Partition& mu) {
    std::vector<Partition> out;
    for (auto& p : partitions_of(partition_size(mu)))
        if (dominance_geq(p, mu)) out.push_back(p);
    std::stable_sort(out.begin(), out.end(), [](const Partition& x, const Partition& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x > y;
    });
    return out;
}

Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    for (int j = 0; j < p[0]; ++j) {
        int h = 0;
        for (int r : p)
            if (r > j) ++h;
        c.push_back(h);
    }
    return c;
}

Partition balanced_partition(int s, int n) {
    if (s < 1 || n % s != 0) throw ValidationError("balanced partition needs s | n");
    return Partition(s, n / s);
}

BigInt count_syt(const Partition& lam) {
    const int n = partition_size(lam);
    const Partition conj = conjugate(lam);
    BigInt hooks = 1;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam[i]; ++j)
            hooks *= (lam[i] - j - 1) + (conj[j] - int(i) - 1) + 1;
    return big_factorial(n) / hooks;
}

BigInt count_syt_backtrack(const Partition& lam) {
    // Place n, n-1, ..., 1 by removing corners.
    Partition cur(lam);
    std::function<BigInt()> rec = [&]() -> BigInt {
        if (partition_size(cur) == 0) return 1;
        BigInt total = 0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] == 0) continue;
            bool corner = i + 1 == cur.size() || cur[i + 1] < cur[i];
            if (!corner) continue;
            --cur[i];
            total += rec();
            ++cur[i];
        }
        return total;
    };
    return rec();
}

std::vector<Tableau> enumerate_ssyt(const Partition& lam, const Partition& mu) {
    const int n = partition_size(lam);
    if (n != partition_size(mu)) throw ValidationError("shape/content size mismatch");
    std::vector<Tableau> out;
    Tableau t;
    for (int r : lam) t.emplace_back(r, -1);
    Partition left(mu);
    // Fill cells in row-reading order; each cell must exceed its row
    // predecessor weakly and its column predecessor strictly.
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam[i]; ++j) cells.emplace_back(int(i), j);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            out.push_back(t);
            return;
        }
        auto [i, j] = cells[c];
        int lo = 0;
        if (j > 0) lo = std::max(lo, t[i][j - 1]);
        if (i > 0) lo = std::max(lo, t[i - 1][j] + 1);
        for (int v = lo; v < int(mu.size()); ++v) {
            if (left[v] == 0) continue;
            --left[v];
            t[i][j] = v;
            rec(c + 1);
            ++left[v];
        }
        t[i][j] = -1;
    };
    rec(0);
    return out;
}

BigInt count_kostka(const Partition& lam, const Partition& mu) {
    return BigInt(enumerate_ssyt(lam, mu).size());
}

bool young_rule_check(int s, int n) {
    Partition mu = balanced_partition(s, n);
    BigInt sum = 0;
    for (const auto& lam : partitions_dominating(mu))
        sum += count_kostka(lam, mu) * count_syt(lam);
    return sum == slice_size(SliceSpec::balanced(s, n));
}

Tableau canonical_tableau(const Partition& lam) {
    Tableau t;
    int next = 1;
    for (int r : lam) {
        std::vector<int> row(r);
        for (int j = 0; j < r; ++j) row[j] = next++;
        t.push_back(row);
    }
    return t;
}

Partition shape_of(const Tableau& t) {
    Partition p;
    for (const auto& row : t) p.push_back(int(row.size()));
    return p;
}

bool is_ssyt(const Tableau& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0 && t[i].size() > t[i - 1].size()) return false;
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            if (j > 0 && t[i][j] < t[i][j - 1]) return false;
            if (i > 0 && t[i][j] <= t[i - 1][j]) return false;
        }
    }
    return true;
}

std::size_t column_group_order(const Partition& lam) {
    std::size_t order = 1;
    for (int h : conjugate(lam))
        for (int f = 2; f <= h; ++f) order *= std::size_t(f);
    return order;
}

std::vector<ColumnImage> column_group_images(const Partition& lam) {
    const Tableau t0 = canonical_tableau(lam);
    const Partition heights = conjugate(lam);
    std::vector<ColumnImage> out;
    std::vector<std::vector<int>> perms(heights.size());
    std::function<void(std::size_t)> rec = [&](std::size_t col) {
        if (col == heights.size()) {
            Tableau t = t0;
            int sign = 1;
            for (std::size_t j = 0; j < heights.size(); ++j) {
                for (int i = 0; i < heights[j]; ++i) t[i][j] = t0[perms[j][i]][j];
                sign *= permutation_sign(perms[j]);
            }
            out.push_back({t, sign});
            return;
        }
        std::vector<int> p(heights[col]);
        std::iota(p.begin(), p.end(), 0);
        do {
            perms[col] = p;
            rec(col + 1);
        } while (std::next_permutation(p.begin(), p.end()));
    };
    rec(0);
    return out;
}

bool row_multisets_match(const Tableau& t_prime, const Tableau& t, const Point& x) {
    // Row 0 follows from the others on a slice point but is checked anyway.
    std::vector<int> diff;
    for (std::size_t i = 0; i < t.size(); ++i) {
        diff.assign(16, 0);
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            ++diff[x[t_prime[i][j] - 1]];
            --diff[t[i][j]];
        }
        for (int d : diff)
            if (d != 0) return false;
    }
    return true;
}

long long chi_value(const std::vector<ColumnImage>& images, const Tableau& T,
                    const Point& x) {
    long long v = 0;
    for (const auto& img : images)
        if (row_multisets_match(img.tableau, T, x)) v += img.sign;
    return v;
}

std::vector<long long> chi_vector(const Tableau& T, int s) {
    if (!is_ssyt(T)) throw ValidationError("chi_vector: not a semistandard tableau");
    const Partition lam = shape_of(T);
    const int n = partition_size(lam);
    SliceSpec spec = SliceSpec::balanced(s, n);
    std::vector<int> content(s, 0);
    for (const auto& row : T)
        for (int v : row) {
            if (v < 0 || v >= s) throw ValidationError("chi_vector: letter outside alphabet");
            ++content[v];
        }
    if (content != spec.counts)
        throw ValidationError("chi_vector: tableau content is not balanced");
    const auto images = column_group_images(lam);
    std::vector<long long> out;
    for (const auto& x : enumerate_slice(spec)) out.push_back(chi_value(images, T, x));
    return out;
}

Rational slice_inner_product_exact(const std::vector<long long>& f,
                                   const std::vector<long long>& g) {
    if (f.size() != g.size() || f.empty())
        throw ValidationError("slice_inner_product: length mismatch");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < f.size(); ++i) acc = checked_add(acc, checked_mul(f[i], g[i]));
    return Rational(acc, std::int64_t(f.size()));
}

double slice_inner_product(const std::vector<long long>& f,
                           const std::vector<long long>& g) {
    return boost::rational_cast<double>(slice_inner_product_exact(f, g));
}

namespace {

// Fraction-free Gaussian elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[r], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

double gram_determinant(const std::vector<std::vector<long long>>& vectors) {
    const std::size_t r = vectors.size();
    if (r == 0) return 1.0;
    const std::size_t N = vectors.front().size();
    std::vector<std::vector<BigInt>> g(r, std::vector<BigInt>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            BigInt acc = 0;
            if (vectors[j].size() != N) throw ValidationError("gram: length mismatch");
            for (std::size_t x = 0; x < N; ++x) acc += BigInt(vectors[i][x]) * vectors[j][x];
            g[i][j] = g[j][i] = acc;
        }
    BigInt det = bareiss_determinant(g);
    // det(Gram / N) = det / N^r
    long double v = static_cast<long double>(det);
    for (std::size_t i = 0; i < r; ++i) v /= static_cast<long double>(N);
    return double(v);
}

double gram_volume(const std::vector<std::vector<long long>>& vectors) {
    double d = gram_determinant(vectors);
    return d <= 0.0 ? 0.0 : std::sqrt(d);
}

double chi_mean_under(const std::vector<double>& dist,
                      const std::vector<long long>& chi) {
    if (dist.size() != chi.size()) throw ValidationError("chi_mean_under: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) m += dist[i] * double(chi[i]);
    return m;
}

std::vector<int> chi_junta_coordinates(const Partition& lam) {
    const Tableau t0 = canonical_tableau(lam);
    const int width = lam.size() > 1 ? lam[1] : 0;
    std::vector<int> out;
    for (const auto& row : t0)
        for (int j = 0; j < std::min<int>(width, int(row.size())); ++j)
            out.push_back(row[j] - 1);
    std::sort(out.begin(), out.end());
    return out;
}

bool ssyt_less(const Tableau& S, const Tableau& T) {
    if (shape_of(S) != shape_of(T)) throw ValidationError("ssyt_less: shape mismatch");
    for (std::size_t i = S.size(); i-- > 1;)
        for (std::size_t j = S[i].size(); j-- > 0;)
            if (S[i][j] != T[i][j]) return S[i][j] < T[i][j];
    return false;
}

bool in_a_set(const Tableau& S, const Point& x) {
    const Partition lam = shape_of(S);
    const Tableau t0 = canonical_tableau(lam);
    const int width = lam.size() > 1 ? lam[1] : 0;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (int j = 0; j < std::min<int>(width, int(S[i].size())); ++j)
            if (x[t0[i][j] - 1] != S[i][j]) return false;
    return true;
}

Tableau point_to_tabloid(const Point& a, int s) {
    Tableau rows(s);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] >= s) throw ValidationError("point_to_tabloid: letter outside alphabet");
        rows[a[j]].push_back(int(j) + 1);
    }
    return rows;
}

Point tabloid_to_point(const Tableau& rows) {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    Point a(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j : rows[i]) {
            if (j < 1 || std::size_t(j) > n || seen[j - 1])
                throw ValidationError("malformed tabloid: rows must partition [n]");
            seen[j - 1] = true;
            a[j - 1] = static_cast<std::uint8_t>(i);
        }
    return a;
}

}  // namespace multislice
