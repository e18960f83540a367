#include "multislice/correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "multislice/intlinalg.hpp"

namespace multislice {

namespace {

std::uint64_t hash_point(const Point& x, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
    for (auto v : x) h = splitmix64(h ^ (std::uint64_t(v) + 0x100));
    return h;
}

double unit_from_hash(std::uint64_t h) { return double(h >> 11) * 0x1.0p-53; }

GroupElement element_from_index(const AbelianGroupSpec& G, std::uint64_t idx) {
    GroupElement g = G.zero();
    for (std::size_t i = 0; i < G.factors().size(); ++i) {
        g.components[i] = std::int64_t(idx % std::uint64_t(G.factors()[i]));
        idx /= std::uint64_t(G.factors()[i]);
    }
    return g;
}

std::uint64_t group_order_u64(const AbelianGroupSpec& G) {
    BigInt o = G.order();
    if (o > BigInt(std::numeric_limits<std::uint32_t>::max()))
        throw CapacityError("group order too large for enumeration");
    return std::uint64_t(o);
}

int random_other_letter(int letter, int s, Rng& rng) {
    int v = std::uniform_int_distribution<int>(0, s - 2)(rng);
    return v >= letter ? v + 1 : v;
}

}  // namespace

// ---- oracles ----------------------------------------------------------

NoisyOracle::NoisyOracle(JuntaPolynomial truth, double error_rate, std::uint64_t seed)
    : Oracle(truth.s(), truth.n(), truth.group()),
      truth_(std::move(truth)),
      rate_(error_rate),
      seed_(seed) {
    if (!(error_rate >= 0.0 && error_rate <= 1.0))
        throw ValidationError("error rate must lie in [0, 1]");
    if (error_rate > 0.0 && group().order() == 1)
        throw ValidationError("cannot corrupt values of the trivial group");
}

void NoisyOracle::set_error(const Point& x, const GroupElement& value) {
    if (!group().contains(value)) throw ValidationError("error value outside group");
    errors_[x] = value;
}

bool NoisyOracle::randomly_corrupted(const Point& x) const {
    return rate_ > 0.0 && unit_from_hash(hash_point(x, seed_)) < rate_;
}

GroupElement NoisyOracle::random_offset(const Point& x) const {
    std::uint64_t order = group_order_u64(group());
    std::uint64_t h = splitmix64(hash_point(x, seed_) ^ 0xbb67ae8584caa73bULL);
    return element_from_index(group(), 1 + h % (order - 1));
}

bool NoisyOracle::corrupted(const Point& x) const {
    auto it = errors_.find(x);
    if (it != errors_.end()) return it->second != truth_.evaluate(x);
    return randomly_corrupted(x);
}

GroupElement NoisyOracle::answer(const Point& x) {
    if (int(x.size()) != n()) throw ValidationError("query point has wrong length");
    auto it = errors_.find(x);
    if (it != errors_.end()) return it->second;
    GroupElement v = truth_.evaluate(x);
    if (randomly_corrupted(x)) group().add_in_place(v, random_offset(x));
    return v;
}

// ---- Kummer -----------------------------------------------------------

int digit_sum(std::int64_t n, std::int64_t p) {
    if (n < 0 || p < 2) throw ValidationError("digit_sum needs n >= 0 and p >= 2");
    int s = 0;
    for (; n > 0; n /= p) s += int(n % p);
    return s;
}

int kummer_valuation(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (b < 0 || a < b) throw ValidationError("kummer_valuation needs a >= b >= 0");
    if (!is_prime(p)) throw ValidationError("kummer_valuation needs a prime");
    return int((digit_sum(b, p) + digit_sum(a - b, p) - digit_sum(a, p)) / (p - 1));
}

// ---- noisy laws ---------------------------------------------------------

std::vector<Rational> noisy_law(int s, const Rational& eps) {
    Rational rest = (Rational(1) - eps) / Rational(s);
    std::vector<Rational> law(s, rest);
    law[0] = eps + rest;
    for (const auto& v : law)
        if (v < Rational(0)) throw ValidationError("noise parameter gives negative mass");
    return law;
}

std::vector<Rational> difference_law(const std::vector<Rational>& y,
                                     const std::vector<Rational>& z) {
    const int s = int(y.size());
    if (int(z.size()) != s) throw ValidationError("laws over different alphabets");
    std::vector<Rational> out(s, Rational(0));
    for (int u = 0; u < s; ++u)
        for (int v = 0; v < s; ++v) out[mod_floor(u - v, s)] += y[u] * z[v];
    return out;
}

std::optional<Rational> noisy_epsilon(const std::vector<Rational>& law) {
    const int s = int(law.size());
    if (s < 2) return std::nullopt;
    for (int t = 2; t < s; ++t)
        if (law[t] != law[1]) return std::nullopt;
    Rational eps = Rational(1) - Rational(s) * law[1];
    if (law[0] != eps + law[1]) return std::nullopt;
    return eps;
}

bool noisy_convolution_check(int s, const Rational& rho1, const Rational& rho2, int trials,
                             Rng& rng) {
    if (s < 2) throw ValidationError("alphabet size must be at least 2");
    const Rational cap(1, s - 1);
    if (rho1 < Rational(0) || rho2 < Rational(0) || rho1 > cap || rho2 > cap)
        throw ValidationError("noise parameters must lie in [0, 1/(s-1)]");
    std::uniform_int_distribution<int> pick(-1000, 1000);
    auto draw = [&](const Rational& rho, int t) {
        if (t == 0) return rho;
        if (t == 1) return -rho;
        return rho * Rational(pick(rng), 1000);
    };
    for (int t = 0; t < std::max(trials, 2); ++t) {
        Rational e1 = draw(rho1, t), e2 = draw(rho2, (t + 1) % std::max(trials, 2));
        auto law = difference_law(noisy_law(s, e1), noisy_law(s, e2));
        auto eps = noisy_epsilon(law);
        if (!eps || *eps != e1 * e2) return false;
        Rational mag = *eps < Rational(0) ? -*eps : *eps;
        if (mag > rho1 * rho2) return false;
    }
    return true;
}

// ---- gadget -------------------------------------------------------------

int gadget_k(int s, int d, double rho) {
    if (s < 2) throw ValidationError("alphabet size must be at least 2");
    if (d < 0) throw ValidationError("degree must be non-negative");
    if (!(rho > 0.0 && rho < 1.0 / (s - 1)))
        throw ValidationError("infeasible rho: need 0 < rho < 1/(s-1)");
    double x = 2.0 * d / rho;
    if (std::abs(x - std::round(x)) < 1e-9) x = std::round(x);
    double k = (std::floor(x / s) + 1) * s;
    if (k > 1e6) throw CapacityError("gadget dimension k too large");
    return int(k);
}

Gadget build_gadget(int n, int s, int d, double rho, Rng& rng) {
    if (n < 1) throw ValidationError("gadget needs n >= 1");
    Gadget g;
    g.n = n;
    g.s = s;
    g.d = d;
    g.rho = rho;
    g.k = gadget_k(s, d, rho);
    g.center.assign(g.k, 0);
    std::vector<int> order = random_permutation(g.k, rng);
    std::uniform_int_distribution<int> letter(1, s - 1);
    for (int t = g.k / s; t < g.k; ++t) g.center[order[t]] = std::uint8_t(letter(rng));
    auto coeffs = ball_interpolation_closed_form(d, g.center);
    require_within_cap(BigInt(coeffs.size()) * n, "gadget shifts");
    for (auto& [b, c] : coeffs) g.ball.emplace_back(b, c);
    return g;
}

Rational Gadget::zero_probability(std::size_t i) const {
    const Point& b = ball.at(i).first;
    return Rational(std::int64_t(std::count(b.begin(), b.end(), 0)), k);
}

GadgetSample Gadget::sample(Rng& rng) const {
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::vector<int> h(n);
    for (auto& v : h) v = pick(rng);
    // σ_i permutes the nonzero letters.
    std::vector<std::vector<int>> sigma(n);
    for (auto& sg : sigma) {
        auto p = random_permutation(s - 1, rng);
        sg.assign(s, 0);
        for (int v = 1; v < s; ++v) sg[v] = p[v - 1] + 1;
    }
    GadgetSample out;
    out.shifts.reserve(ball.size());
    for (const auto& [b, c] : ball) {
        Point y(n);
        for (int i = 0; i < n; ++i) y[i] = std::uint8_t(sigma[i][b[h[i]]]);
        out.shifts.push_back(std::move(y));
        out.coeffs.push_back(c);
    }
    return out;
}

Point add_mod(const Point& a, const Point& y, int s) {
    if (a.size() != y.size()) throw ValidationError("add_mod: length mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::uint8_t((a[i] + y[i]) % s);
    return r;
}

GroupElement plurality(const std::vector<GroupElement>& values) {
    if (values.empty()) throw ValidationError("plurality of an empty list");
    std::size_t best = 0, best_count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t c = std::count(values.begin(), values.end(), values[i]);
        if (c > best_count) {
            best = i;
            best_count = c;
        }
    }
    return values[best];
}

namespace {

GroupElement gadget_estimate(const std::function<GroupElement(const Point&)>& f,
                             const AbelianGroupSpec& G, const Point& x, const Gadget& g,
                             Rng& rng) {
    GadgetSample smp = g.sample(rng);
    GroupElement acc = G.zero();
    for (std::size_t i = 0; i < smp.shifts.size(); ++i)
        G.add_in_place(acc, G.scale(f(add_mod(x, smp.shifts[i], g.s)), smp.coeffs[i]));
    return acc;
}

GroupElement reduce_rec(Oracle& f, const Point& x, int depth, const Gadget& g, Rng& rng) {
    if (depth == 0) return f.query(x);
    auto inner = [&](const Point& z) { return reduce_rec(f, z, depth - 1, g, rng); };
    std::vector<GroupElement> votes;
    for (int rep = 0; rep < 3; ++rep) votes.push_back(gadget_estimate(inner, f.group(), x, g, rng));
    return plurality(votes);
}

void check_gadget_domain(const Oracle& f, const Gadget& g) {
    if (f.s() != g.s || f.n() != g.n) throw ValidationError("gadget built for a different domain");
}

}  // namespace

GroupElement base_reduce(Oracle& f, const Point& x, const Gadget& g, Rng& rng) {
    check_gadget_domain(f, g);
    return reduce_rec(f, x, 1, g, rng);
}

GroupElement recursive_reduce(Oracle& f, const Point& x, int depth, const Gadget& g,
                              Rng& rng) {
    if (depth < 0) throw ValidationError("recursion depth must be non-negative");
    check_gadget_domain(f, g);
    require_within_cap(pow(BigInt(3 * g.q()), unsigned(depth)), "recursive_reduce queries");
    return reduce_rec(f, x, depth, g, rng);
}

// ---- brute-force decoding ---------------------------------------------

void for_each_close_junta_sum(
    const JuntaTable& table, int d, const Rational& radius, bool strict,
    const std::function<void(const JuntaPolynomial&, std::uint64_t)>& fn) {
    const int s = table.s, k = table.n;
    const auto& G = table.group;
    const std::uint64_t N = grid_size(s, k);
    if (table.values.size() != N) throw ValidationError("table is incomplete");
    auto monos = monomials_up_to(s, k, d);
    const std::size_t T = G.factors().size();
    require_within_cap(pow(G.order(), unsigned(monos.size())), "junta-sum candidates");

    std::vector<std::vector<std::uint64_t>> support(monos.size());
    for (std::uint64_t idx = 0; idx < N; ++idx) {
        Point y = grid_point(idx, s, k);
        for (std::size_t j = 0; j < monos.size(); ++j)
            if (monomial_value(monos[j], y)) support[j].push_back(idx);
    }
    std::vector<std::int64_t> target(N * T), cur(N * T, 0);
    std::vector<int> wrong(N, 0);
    std::uint64_t bad = 0;
    for (std::uint64_t idx = 0; idx < N; ++idx) {
        for (std::size_t t = 0; t < T; ++t) {
            target[idx * T + t] = table.values[idx].components[t];
            wrong[idx] += target[idx * T + t] != 0;
        }
        bad += wrong[idx] > 0;
    }
    const std::int64_t num = radius.numerator(), den = radius.denominator();
    auto accept = [&] {
        __int128 lhs = __int128(bad) * den, rhs = __int128(num) * __int128(N);
        return strict ? lhs < rhs : lhs <= rhs;
    };
    // Digit (j, t) holds component t of the coefficient of monomial j.
    const std::size_t D = monos.size() * T;
    std::vector<std::int64_t> digit(D, 0);
    for (;;) {
        if (accept()) {
            JuntaPolynomial p(s, k, G);
            for (std::size_t j = 0; j < monos.size(); ++j) {
                GroupElement c = G.zero();
                for (std::size_t t = 0; t < T; ++t) c.components[t] = digit[j * T + t];
                p.add_term(monos[j], c);
            }
            fn(p, bad);
        }
        std::size_t pos = 0;
        for (; pos < D; ++pos) {
            const std::size_t j = pos / T, t = pos % T;
            const std::int64_t m = G.factors()[t];
            for (auto idx : support[j]) {
                std::int64_t& v = cur[idx * T + t];
                const bool before = v != target[idx * T + t];
                v = v + 1 == m ? 0 : v + 1;
                const bool after = v != target[idx * T + t];
                if (before != after) {
                    const bool was_bad = wrong[idx] > 0;
                    wrong[idx] += after ? 1 : -1;
                    const bool is_bad = wrong[idx] > 0;
                    if (was_bad != is_bad) is_bad ? ++bad : --bad;
                }
            }
            if (++digit[pos] < m) break;
            digit[pos] = 0;
        }
        if (pos == D) break;
    }
}

std::optional<JuntaPolynomial> brute_force_unique_decode(const JuntaTable& table, int d,
                                                         const Rational& radius) {
    std::optional<JuntaPolynomial> found;
    int count = 0;
    for_each_close_junta_sum(table, d, radius, true,
                             [&](const JuntaPolynomial& p, std::uint64_t) {
                                 if (++count == 1) found = p;
                             });
    if (count != 1) return std::nullopt;
    return found;
}

// ---- subgrids -----------------------------------------------------------

Point SubgridMap::point(const Point& y) const {
    if (int(y.size()) != k) throw ValidationError("subgrid point has wrong length");
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = std::uint8_t(pi[i][y[h[i]]]);
    return x;
}

SubgridMap SubgridMap::anchored(const Point& a, int s, int k, Rng& rng) {
    if (k < 1) throw ValidationError("subgrid dimension must be positive");
    SubgridMap m;
    m.s = s;
    m.n = int(a.size());
    m.k = k;
    std::uniform_int_distribution<int> pick(0, k - 1);
    m.h.resize(m.n);
    for (auto& v : m.h) v = pick(rng);
    m.pi.resize(m.n);
    for (int i = 0; i < m.n; ++i) {
        std::vector<int> others;
        for (int v = 0; v < s; ++v)
            if (v != a[i]) others.push_back(v);
        std::shuffle(others.begin(), others.end(), rng);
        m.pi[i] = {int(a[i])};
        m.pi[i].insert(m.pi[i].end(), others.begin(), others.end());
    }
    return m;
}

SubgridMap SubgridMap::random(int s, int n, int k, Rng& rng) {
    Point a(n);
    std::uniform_int_distribution<int> letter(0, s - 1);
    for (auto& v : a) v = std::uint8_t(letter(rng));
    return anchored(a, s, k, rng);
}

JuntaTable restrict_to_subgrid(Oracle& f, const SubgridMap& map) {
    if (f.s() != map.s || f.n() != map.n) throw ValidationError("subgrid built for another domain");
    const std::uint64_t N = grid_size(map.s, map.k);
    JuntaTable t{map.s, map.k, f.group(), {}};
    t.values.reserve(N);
    for (std::uint64_t idx = 0; idx < N; ++idx)
        t.values.push_back(f.query(map.point(grid_point(idx, map.s, map.k))));
    return t;
}

SubgridDecodeResult subgrid_error_reduce_detail(Oracle& f, const Point& a, int k, int d,
                                                Rng& rng) {
    if (k < d + 1) throw ValidationError("subgrid_error_reduce needs k >= d+1");
    require_within_cap(pow(f.group().order(), unsigned(monomials_up_to(f.s(), k, d).size())),
                       "subgrid decoder candidates");
    auto map = SubgridMap::anchored(a, f.s(), k, rng);
    JuntaTable table = restrict_to_subgrid(f, map);
    auto p = brute_force_unique_decode(table, d, Rational(1, 2 * ipow(f.s(), unsigned(d))));
    if (!p) return {f.group().zero(), false};
    return {p->evaluate(Point(k, 0)), true};
}

GroupElement subgrid_error_reduce(Oracle& f, const Point& a, int k, int d, Rng& rng) {
    return subgrid_error_reduce_detail(f, a, k, d, rng).value;
}

// ---- interpolating sets -----------------------------------------------

std::vector<std::vector<int>> multilinear_subsets(int r, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int start, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < r; ++i) {
            cur.push_back(i);
            rec(i + 1, left - 1);
            cur.pop_back();
        }
    };
    for (int size = 0; size <= std::min(d, r); ++size) rec(0, size);
    return out;
}

namespace {

IntMatrix evaluation_matrix(const std::vector<BitPoint>& points,
                            const std::vector<std::vector<int>>& subsets) {
    IntMatrix E(points.size(), std::vector<BigInt>(subsets.size(), 0));
    for (std::size_t p = 0; p < points.size(); ++p)
        for (std::size_t c = 0; c < subsets.size(); ++c) {
            bool all = true;
            for (int i : subsets[c]) all = all && points[p][i];
            E[p][c] = all ? 1 : 0;
        }
    return E;
}

// Rank mod a large prime, maintained incrementally in echelon form.
class ModRank {
public:
    explicit ModRank(std::size_t cols) : cols_(cols) {}
    bool add(std::vector<std::int64_t> row) {
        for (auto& v : row) v = mod_floor(v, P);
        for (std::size_t r = 0; r < basis_.size(); ++r) {
            std::int64_t c = row[pivots_[r]];
            if (!c) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                row[j] = mod_floor(row[j] - (__int128(c) * basis_[r][j]) % P, P);
        }
        std::size_t piv = 0;
        while (piv < cols_ && row[piv] == 0) ++piv;
        if (piv == cols_) return false;
        std::int64_t inv = inverse(row[piv]);
        for (auto& v : row) v = std::int64_t(__int128(v) * inv % P);
        basis_.push_back(std::move(row));
        pivots_.push_back(piv);
        return true;
    }
    std::size_t rank() const { return basis_.size(); }

private:
    static constexpr std::int64_t P = 1000000007;
    static std::int64_t inverse(std::int64_t a) {
        std::int64_t r = 1, e = P - 2;
        __int128 b = a;
        while (e) {
            if (e & 1) r = std::int64_t(__int128(r) * b % P);
            b = b * b % P;
            e >>= 1;
        }
        return r;
    }
    std::size_t cols_;
    std::vector<std::vector<std::int64_t>> basis_;
    std::vector<std::size_t> pivots_;
};

std::int64_t floor_rational(const Rational& q) {
    std::int64_t n = q.numerator(), d = q.denominator();
    return n >= 0 ? n / d : -((-n + d - 1) / d);
}

std::int64_t ceil_rational(const Rational& q) { return -floor_rational(-q); }

}  // namespace

bool hitting_criterion(const std::vector<BitPoint>& points, int d) {
    if (points.empty()) return false;
    return is_unimodular_embedding(evaluation_matrix(points, multilinear_subsets(int(points[0].size()), d)));
}

std::vector<BitPoint> hitting_set(int r, int d, int lo, int hi, Rng& rng, int attempts) {
    lo = std::max(lo, 0);
    hi = std::min(hi, r);
    if (d < 0) throw ValidationError("degree must be non-negative");
    if (hi - lo + 1 < d + 1)
        throw ValidationError("weight interval must contain at least d+1 integers");
    if (r > 20) throw CapacityError("hitting_set supports r <= 20");
    std::vector<BitPoint> pool;
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        int w = std::popcount(mask);
        if (w < lo || w > hi) continue;
        BitPoint b(r);
        for (int i = 0; i < r; ++i) b[i] = (mask >> i) & 1;
        pool.push_back(std::move(b));
    }
    if (d == 0) return {pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]};
    auto subsets = multilinear_subsets(r, d);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::shuffle(pool.begin(), pool.end(), rng);
        ModRank rank(subsets.size());
        std::vector<BitPoint> chosen;
        std::size_t next = 0;
        for (; next < pool.size() && rank.rank() < subsets.size(); ++next) {
            auto row = evaluation_matrix({pool[next]}, subsets)[0];
            std::vector<std::int64_t> r64(row.size());
            for (std::size_t j = 0; j < row.size(); ++j) r64[j] = std::int64_t(row[j]);
            if (rank.add(std::move(r64))) chosen.push_back(pool[next]);
        }
        if (rank.rank() < subsets.size()) continue;
        // Extra points can only shrink the lattice index.
        while (!hitting_criterion(chosen, d) && next < pool.size())
            chosen.push_back(pool[next++]);
        if (hitting_criterion(chosen, d)) return chosen;
    }
    throw ValidationError("hitting set search failed");
}

Rational InterpolatingSet::weighted_mass(const BitPoint& b) const {
    std::int64_t acc = 0;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < r; ++i) acc += weights[j] * b[j * r + i];
    return Rational(acc, total_weight);
}

bool InterpolatingSet::weight_balanced() const {
    for (const auto& b : points) {
        Rational dev = weighted_mass(b) - Rational(1, s);
        if (dev < Rational(0)) dev = -dev;
        if (dev > Rational(d, total_weight)) return false;
    }
    return true;
}

bool InterpolatingSet::interpolates() const {
    auto subsets = multilinear_subsets(k(), d);
    for (const auto& S : subsets) {
        std::int64_t acc = 0;
        for (std::size_t p = 0; p < points.size(); ++p) {
            bool all = true;
            for (int i : S) all = all && points[p][i];
            if (all) acc += coeffs[p];
        }
        if (acc != 1) return false;
    }
    return true;
}

InterpolatingSet build_interpolating_set(int s, int d, int r, int m, Rng& rng) {
    if (s < 2 || d < 0 || r < 1 || m < 1) throw ValidationError("invalid interpolating set parameters");
    if (r * m > 64) throw CapacityError("interpolating set supports r*m <= 64");
    InterpolatingSet out;
    out.s = s;
    out.d = d;
    out.r = r;
    out.m = m;
    for (int j = 1; j <= m; ++j) out.weights.push_back(ipow(s, unsigned(m - j)));
    out.total_weight = r * (ipow(s, unsigned(m)) - 1) / (s - 1);

    std::map<std::tuple<int, int, int>, std::vector<BitPoint>> cache;
    auto hit = [&](int e, int lo, int hi) -> const std::vector<BitPoint>& {
        auto key = std::make_tuple(e, lo, hi);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, hitting_set(r, e, lo, hi, rng)).first;
        return it->second;
    };
    // level[dd] = S_{mm, dd} for the current mm, with deviations τ_b.
    struct Entry {
        BitPoint b;
        Rational tau;
    };
    std::vector<std::vector<Entry>> level(d + 1);
    level[0].push_back({BitPoint{}, Rational(0)});
    const Rational centre(r, s);
    for (int mm = 1; mm <= m; ++mm) {
        std::vector<std::vector<Entry>> next(d + 1);
        for (int dd = 0; dd <= d; ++dd) {
            std::set<BitPoint> seen;
            for (int dp = 0; dp <= dd; ++dp)
                for (const auto& e : level[dp]) {
                    Rational mid = centre - Rational(s) * e.tau;
                    Rational lo_r = mid - Rational(dd), hi_r = mid + Rational(dd);
                    std::int64_t lo = std::max<std::int64_t>(0, ceil_rational(lo_r));
                    std::int64_t hi = std::min<std::int64_t>(r, floor_rational(hi_r));
                    if (hi - lo + 1 < dd - dp + 1)
                        throw ValidationError("interval I_b too short at level " + std::to_string(mm) +
                                              "; increase r");
                    for (const auto& hpt : hit(dd - dp, int(lo), int(hi))) {
                        BitPoint b = e.b;
                        b.insert(b.end(), hpt.begin(), hpt.end());
                        if (!seen.insert(b).second) continue;
                        int w = int(std::count(hpt.begin(), hpt.end(), 1));
                        next[dd].push_back({b, Rational(s) * e.tau + Rational(w) - centre});
                    }
                }
        }
        level = std::move(next);
    }
    for (const auto& e : level[d]) out.points.push_back(e.b);

    auto subsets = multilinear_subsets(out.k(), d);
    IntMatrix Et = transpose(evaluation_matrix(out.points, subsets));
    require_within_cap(BigInt(Et.size()) * out.points.size(), "interpolating set solve");
    auto sol = solve_integer(Et, std::vector<BigInt>(subsets.size(), 1));
    if (!sol) throw ValidationError("interpolating set has no integer coefficients");
    for (const auto& c : *sol) out.coeffs.push_back(std::int64_t(c));
    if (!out.weight_balanced() || !out.interpolates())
        throw ValidationError("interpolating set failed certification");
    return out;
}

GroupElement interpolating_set_correct(Oracle& f, const InterpolatingSet& set, Rng& rng) {
    if (f.s() != 2) throw ValidationError("interpolating set corrector works on the boolean cube");
    std::discrete_distribution<int> block(set.weights.begin(), set.weights.end());
    std::uniform_int_distribution<int> within(0, set.r - 1);
    std::vector<int> h(f.n());
    for (auto& v : h) v = block(rng) * set.r + within(rng);
    const auto& G = f.group();
    GroupElement acc = G.zero();
    Point y(f.n());
    for (std::size_t p = 0; p < set.points.size(); ++p) {
        for (int i = 0; i < f.n(); ++i) y[i] = set.points[p][h[i]];
        GroupElement v = f.query(y);
        if (set.coeffs[p]) G.add_in_place(acc, G.scale(v, set.coeffs[p]));
    }
    return acc;
}

Point biased_cube_point(const Point& x, const Point& xp, const BitPoint& y) {
    Point z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = y[i] ? x[i] : xp[i];
    return z;
}

GroupElement biased_cube_correct(Oracle& f, const Point& x, const BooleanCorrector& inner,
                                 Rng& rng, int repetitions) {
    if (int(x.size()) != f.n()) throw ValidationError("point has wrong length");
    if (repetitions < 1) throw ValidationError("need at least one repetition");
    std::vector<GroupElement> votes;
    for (int rep = 0; rep < repetitions; ++rep) {
        Point xp(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            xp[i] = std::uint8_t(random_other_letter(x[i], f.s(), rng));
        FunctionOracle boolean(2, f.n(), f.group(),
                               [&](const Point& y) { return f.query(biased_cube_point(x, xp, y)); });
        votes.push_back(inner(boolean, rng));
    }
    return plurality(votes);
}

// ---- torsion ------------------------------------------------------------

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t M) {
    if (M < 1) throw ValidationError("exponent must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= M; ++p) {
        int r = 0;
        while (M % p == 0) {
            M /= p;
            ++r;
        }
        if (r) out.emplace_back(p, r);
    }
    if (M > 1) out.emplace_back(M, 1);
    return out;
}

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) throw ValidationError("binomial coefficient is not invertible mod M");
    return mod_floor(old_s, m);
}

}  // namespace

TorsionScheme torsion_scheme(int s, int d, std::int64_t M) {
    if (s < 2 || d < 0) throw ValidationError("torsion scheme needs s >= 2 and d >= 0");
    TorsionScheme t;
    t.s = s;
    t.d = d;
    t.M = M;
    t.factorization = factorize(M);
    t.k = 1;
    for (auto [p, r] : t.factorization) {
        std::int64_t pr = ipow(p, unsigned(r));
        int sj = 1;
        for (std::int64_t v = pr; v <= d; v = checked_mul(v, pr)) ++sj;
        t.k = checked_mul(t.k, ipow(p, unsigned(3 * r * sj)));
    }
    t.k_prime = checked_mul(s - 1, t.k);
    if (!t.divisibility_holds()) throw ValidationError("divisibility conditions violated");
    BigInt c = big_binomial(unsigned(t.k_prime + d), unsigned(d));
    t.A = M == 1 ? 0 : mod_inverse(std::int64_t(c % M), M);
    return t;
}

bool TorsionScheme::divisibility_holds() const {
    for (auto [p, r] : factorization) {
        if (kummer_valuation(k_prime + d, k_prime, p) != 0) return false;
        for (int i = 1; i <= d; ++i)
            if (kummer_valuation(k_prime + d - i, k_prime - i, p) < r) return false;
    }
    return true;
}

std::int64_t TorsionScheme::slice_points() const {
    BigInt c = big_binomial(unsigned(s * k), unsigned(k));
    if (c > BigInt(std::numeric_limits<std::int64_t>::max())) return std::numeric_limits<std::int64_t>::max();
    return std::int64_t(c);
}

std::int64_t TorsionScheme::coefficient(const BitPoint& b) const {
    if (std::int64_t(b.size()) != s * k) throw ValidationError("slice point has wrong length");
    for (std::int64_t i = s * k - (k - d); i < s * k; ++i)
        if (!b[i]) return 0;
    return A;
}

bool TorsionScheme::identity_holds() const {
    const std::int64_t len = s * k;
    require_within_cap(big_binomial(unsigned(k_prime + d), unsigned(d)) * BigInt(len + 1),
                       "torsion identity check");
    // Nonzero coefficients sit on weight-k points that are 1 on the last k-d
    // coordinates; their remaining d ones lie among the first k'+d.
    std::vector<BitPoint> support;
    std::vector<int> pos;
    std::function<void(int)> rec = [&](int start) {
        if (int(pos.size()) == d) {
            BitPoint b(len, 0);
            for (std::int64_t i = len - (k - d); i < len; ++i) b[i] = 1;
            for (int p : pos) b[p] = 1;
            support.push_back(std::move(b));
            return;
        }
        for (int i = start; i < k_prime + d; ++i) {
            pos.push_back(i);
            rec(i + 1);
            pos.pop_back();
        }
    };
    rec(0);
    for (const auto& S : multilinear_subsets(int(len), d)) {
        std::int64_t acc = 0;
        for (const auto& b : support) {
            bool all = true;
            for (int i : S) all = all && b[i];
            if (all) acc = mod_floor(acc + coefficient(b), M);
        }
        if (acc != mod_floor(1, M)) return false;
    }
    return true;
}

GroupElement torsion_correct(Oracle& f, const Point& x, const TorsionScheme& scheme, Rng& rng) {
    if (f.s() != scheme.s) throw ValidationError("scheme built for another alphabet");
    if (scheme.M % f.group().exponent() != 0)
        throw ValidationError("group exponent must divide the scheme modulus");
    const int n = f.n();
    const int len = int(scheme.s * scheme.k);
    require_within_cap(big_binomial(unsigned(len), unsigned(scheme.k)), "torsion_correct queries");
    std::uniform_int_distribution<int> pick(0, len - 1);
    std::vector<int> h(n);
    for (auto& v : h) v = pick(rng);
    Point xp(n);
    for (int i = 0; i < n; ++i) xp[i] = std::uint8_t(random_other_letter(x[i], f.s(), rng));

    const auto& G = f.group();
    GroupElement acc = G.zero();
    // Weight-k points of {0,1}^{sk}, in decreasing lexicographic order.
    BitPoint b(len, 0);
    std::fill(b.begin(), b.begin() + scheme.k, 1);
    Point z(n);
    do {
        for (int i = 0; i < n; ++i) z[i] = b[h[i]] ? x[i] : xp[i];
        GroupElement v = f.query(z);
        std::int64_t c = scheme.coefficient(b);
        if (c) G.add_in_place(acc, G.scale(v, c));
    } while (std::prev_permutation(b.begin(), b.end()));
    return acc;
}

}  // namespace multislice
