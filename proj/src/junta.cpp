#include "multislice/junta.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "multislice/intlinalg.hpp"

namespace multislice {

// ---- groups -----------------------------------------------------------

AbelianGroupSpec::AbelianGroupSpec(std::vector<std::int64_t> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty()) throw ValidationError("group needs at least one factor");
    for (auto m : factors_) {
        if (m < 1) throw ValidationError("group factors must be positive");
        exponent_ = lcm_checked(exponent_, m);
    }
}

BigInt AbelianGroupSpec::order() const {
    BigInt o = 1;
    for (auto m : factors_) o *= m;
    return o;
}

std::string AbelianGroupSpec::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << 'x';
        os << 'Z' << factors_[i];
    }
    return os.str();
}

GroupElement AbelianGroupSpec::zero() const {
    return GroupElement{std::vector<std::int64_t>(factors_.size(), 0)};
}

GroupElement AbelianGroupSpec::reduce(std::vector<std::int64_t> comps) const {
    if (comps.size() != factors_.size())
        throw ValidationError("group element has wrong number of components");
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = mod_floor(comps[i], factors_[i]);
    return GroupElement{std::move(comps)};
}

GroupElement AbelianGroupSpec::from_int(std::int64_t v) const {
    return reduce(std::vector<std::int64_t>(factors_.size(), v));
}

GroupElement AbelianGroupSpec::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    add_in_place(r, b);
    return r;
}

void AbelianGroupSpec::add_in_place(GroupElement& a, const GroupElement& b) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        a.components[i] += b.components[i];
        if (a.components[i] >= factors_[i]) a.components[i] -= factors_[i];
    }
}

GroupElement AbelianGroupSpec::neg(const GroupElement& a) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (r.components[i]) r.components[i] = factors_[i] - r.components[i];
    return r;
}

GroupElement AbelianGroupSpec::sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
}

GroupElement AbelianGroupSpec::scale(const GroupElement& a, std::int64_t c) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t m = factors_[i];
        __int128 v = __int128(mod_floor(c, m)) * r.components[i];
        r.components[i] = std::int64_t(v % m);
    }
    return r;
}

bool AbelianGroupSpec::is_zero(const GroupElement& a) const {
    return std::all_of(a.components.begin(), a.components.end(),
                       [](std::int64_t v) { return v == 0; });
}

bool AbelianGroupSpec::contains(const GroupElement& a) const {
    if (a.components.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (a.components[i] < 0 || a.components[i] >= factors_[i]) return false;
    return true;
}

GroupElement AbelianGroupSpec::random(Rng& rng) const {
    GroupElement r = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i)
        r.components[i] =
            std::uniform_int_distribution<std::int64_t>(0, factors_[i] - 1)(rng);
    return r;
}

GroupElement AbelianGroupSpec::random_nonzero(Rng& rng) const {
    if (order() == 1) throw ValidationError("trivial group has no nonzero element");
    for (;;) {
        GroupElement g = random(rng);
        if (!is_zero(g)) return g;
    }
}

std::vector<GroupElement> AbelianGroupSpec::elements(std::uint64_t cap) const {
    require_within_cap(order(), "group elements", cap);
    std::vector<GroupElement> out;
    GroupElement g = zero();
    for (;;) {
        out.push_back(g);
        std::size_t i = 0;
        while (i < factors_.size()) {
            if (++g.components[i] < factors_[i]) break;
            g.components[i] = 0;
            ++i;
        }
        if (i == factors_.size()) break;
    }
    return out;
}

// ---- monomials and grids ----------------------------------------------

bool monomial_value(const Monomial& a, const Point& x) {
    for (auto [i, letter] : a)
        if (x[i] != letter) return false;
    return true;
}

std::vector<Monomial> monomials_up_to(int s, int n, int d) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(int, int)> rec = [&](int start, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i)
            for (int letter = 1; letter < s; ++letter) {
                cur.emplace_back(i, letter);
                rec(i + 1, left - 1);
                cur.pop_back();
            }
    };
    for (int size = 0; size <= std::min(d, n); ++size) rec(0, size);
    return out;
}

std::uint64_t grid_size(int s, int n) {
    BigInt size = pow(BigInt(s), unsigned(n));
    require_within_cap(size, "grid table");
    return std::uint64_t(size);
}

std::uint64_t grid_index(const Point& x, int s) {
    std::uint64_t idx = 0;
    for (auto v : x) idx = idx * s + v;
    return idx;
}

Point grid_point(std::uint64_t index, int s, int n) {
    Point x(n);
    for (int i = n - 1; i >= 0; --i) {
        x[i] = std::uint8_t(index % s);
        index /= s;
    }
    return x;
}

// ---- junta polynomials ------------------------------------------------

JuntaPolynomial::JuntaPolynomial(int s, int n, AbelianGroupSpec group)
    : s_(s), n_(n), group_(std::move(group)) {
    if (s < 2) throw ValidationError("alphabet size must be at least 2");
    if (n < 0) throw ValidationError("number of variables must be non-negative");
}

void JuntaPolynomial::add_term(const Monomial& a, const GroupElement& g) {
    Monomial key = a;
    std::sort(key.begin(), key.end());
    for (std::size_t j = 0; j < key.size(); ++j) {
        auto [i, letter] = key[j];
        if (i < 0 || i >= n_ || letter < 1 || letter >= s_ ||
            (j && key[j - 1].first == i))
            throw ValidationError("invalid monomial pattern");
    }
    if (!group_.contains(g)) throw ValidationError("coefficient outside group");
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        if (!group_.is_zero(g)) coeffs_.emplace(std::move(key), g);
        return;
    }
    group_.add_in_place(it->second, g);
    if (group_.is_zero(it->second)) coeffs_.erase(it);
}

GroupElement JuntaPolynomial::evaluate(const Point& x) const {
    if (int(x.size()) != n_) throw ValidationError("evaluate: point has wrong length");
    GroupElement r = group_.zero();
    for (const auto& [a, g] : coeffs_)
        if (monomial_value(a, x)) group_.add_in_place(r, g);
    return r;
}

int JuntaPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& kv : coeffs_) d = std::max(d, kv.first.size());
    return int(d);
}

JuntaTable JuntaPolynomial::tabulate() const {
    const std::uint64_t N = grid_size(s_, n_);
    JuntaTable t{s_, n_, group_, std::vector<GroupElement>(N, group_.zero())};
    for (const auto& [a, g] : coeffs_) {
        Point x(n_, 0);
        for (auto [i, letter] : a) x[i] = std::uint8_t(letter);
        t.values[grid_index(x, s_)] = g;
    }
    // Zeta transform: f(x) = Σ over patterns a with a_i ∈ {0, x_i}.
    std::uint64_t stride = 1;
    for (int i = n_ - 1; i >= 0; --i, stride *= s_)
        for (std::uint64_t idx = 0; idx < N; ++idx) {
            std::uint64_t digit = (idx / stride) % s_;
            if (digit) group_.add_in_place(t.values[idx], t.values[idx - digit * stride]);
        }
    return t;
}

JuntaPolynomial JuntaPolynomial::from_truth_table(const JuntaTable& table) {
    const int s = table.s, n = table.n;
    const std::uint64_t N = grid_size(s, n);
    if (table.values.size() != N) throw ValidationError("truth table is incomplete");
    const auto& G = table.group;
    std::vector<GroupElement> g = table.values;
    for (const auto& v : g)
        if (!G.contains(v)) throw ValidationError("table value outside group");
    std::uint64_t stride = 1;
    for (int i = n - 1; i >= 0; --i, stride *= s)
        for (std::uint64_t idx = 0; idx < N; ++idx) {
            std::uint64_t digit = (idx / stride) % s;
            if (digit) g[idx] = G.sub(g[idx], g[idx - digit * stride]);
        }
    JuntaPolynomial p(s, n, G);
    for (std::uint64_t idx = 0; idx < N; ++idx) {
        if (G.is_zero(g[idx])) continue;
        Point x = grid_point(idx, s, n);
        Monomial a;
        for (int i = 0; i < n; ++i)
            if (x[i]) a.emplace_back(i, x[i]);
        p.coeffs_.emplace(std::move(a), g[idx]);
    }
    return p;
}

JuntaPolynomial JuntaPolynomial::operator+(const JuntaPolynomial& other) const {
    if (s_ != other.s_ || n_ != other.n_ || !(group_ == other.group_))
        throw ValidationError("junta-sum domains differ");
    JuntaPolynomial r = *this;
    for (const auto& [a, g] : other.coeffs_) r.add_term(a, g);
    return r;
}

JuntaPolynomial JuntaPolynomial::operator-(const JuntaPolynomial& other) const {
    if (s_ != other.s_ || n_ != other.n_ || !(group_ == other.group_))
        throw ValidationError("junta-sum domains differ");
    JuntaPolynomial r = *this;
    for (const auto& [a, g] : other.coeffs_) r.add_term(a, group_.neg(g));
    return r;
}

bool JuntaPolynomial::operator==(const JuntaPolynomial& other) const {
    return s_ == other.s_ && n_ == other.n_ && group_ == other.group_ &&
           coeffs_ == other.coeffs_;
}

JuntaPolynomial random_junta_sum(int s, int n, int d, const AbelianGroupSpec& group,
                                 Rng& rng) {
    JuntaPolynomial p(s, n, group);
    for (const auto& a : monomials_up_to(s, n, d)) p.add_term(a, group.random(rng));
    return p;
}

bool is_degree_at_most(const JuntaTable& table, int d) {
    return JuntaPolynomial::from_truth_table(table).degree() <= d;
}

Rational grid_distance(const JuntaTable& f, const JuntaTable& g) {
    if (f.s != g.s || f.n != g.n || f.values.size() != g.values.size() ||
        !(f.group == g.group))
        throw ValidationError("grid_distance: tables over different domains");
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) diff += f.values[i] != g.values[i];
    return Rational(diff, std::int64_t(f.values.size()));
}

std::uint64_t multislice_nonzero_count(const JuntaPolynomial& p, const SliceSpec& spec) {
    if (p.s() != spec.s || p.n() != spec.n)
        throw ValidationError("polynomial and slice disagree on (s, n)");
    std::uint64_t count = 0;
    for (const auto& x : enumerate_slice(spec, capacity_cap()))
        count += !p.group().is_zero(p.evaluate(x));
    return count;
}

BigInt multislice_distance_bound(const SliceSpec& spec, int d) {
    spec.validate();
    std::vector<int> parts;
    for (int c : spec.counts) {
        if (c < d) return 0;
        parts.push_back(c - d);
    }
    return big_multinomial(parts);
}

// ---- minimum weight of small linear codes -----------------------------

namespace {

// Row-reduces mod p and returns a basis of the row space.
std::vector<std::vector<int>> row_basis_mod_p(std::vector<std::vector<int>> rows, int p) {
    if (rows.empty()) return {};
    const std::size_t N = rows[0].size();
    std::vector<int> inv(p, 0);
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1) inv[a] = b;
    for (auto& r : rows)
        for (auto& v : r) v = int(mod_floor(v, p));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < N && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int f = inv[rows[rank][col]];
        for (auto& v : rows[rank]) v = v * f % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            int c = rows[r][col];
            for (std::size_t j = 0; j < N; ++j)
                rows[r][j] = int(mod_floor(rows[r][j] - c * rows[rank][j], p));
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

}  // namespace

CodeMinimum code_min_weight(const std::vector<std::vector<int>>& generators, int p,
                            std::uint64_t max_codewords) {
    if (!is_prime(p)) throw ValidationError("code_min_weight needs a prime modulus");
    CodeMinimum out;
    out.length = generators.empty() ? 0 : generators[0].size();
    auto basis = row_basis_mod_p(generators, p);
    out.dimension = int(basis.size());
    if (basis.empty()) return out;
    BigInt total = pow(BigInt(p), unsigned(basis.size()));
    if (total > max_codewords)
        throw CapacityError("code has " + total.str() + " codewords, above the enumeration limit");
    const std::size_t N = out.length;
    std::size_t best = N + 1;

    if (p == 2) {
        if (N > 128) throw CapacityError("binary code enumeration supports length <= 128");
        std::vector<unsigned __int128> masks;
        for (const auto& row : basis) {
            unsigned __int128 m = 0;
            for (std::size_t j = 0; j < N; ++j)
                if (row[j]) m |= (unsigned __int128)1 << j;
            masks.push_back(m);
        }
        unsigned __int128 cur = 0;
        const std::uint64_t count = std::uint64_t(1) << basis.size();
        for (std::uint64_t i = 1; i < count; ++i) {
            cur ^= masks[std::countr_zero(i)];
            std::size_t w = std::popcount(std::uint64_t(cur)) +
                            std::popcount(std::uint64_t(cur >> 64));
            best = std::min(best, w);
        }
        out.codewords = count;
    } else {
        std::vector<int> cur(N, 0), digits(basis.size(), 0);
        std::size_t weight = 0;
        std::uint64_t seen = 1;
        for (;;) {
            std::size_t i = 0;
            // Odometer step: add basis[i] until a digit does not wrap.
            for (; i < basis.size(); ++i) {
                for (std::size_t j = 0; j < N; ++j) {
                    if (!basis[i][j]) continue;
                    int before = cur[j];
                    cur[j] = (cur[j] + basis[i][j]) % p;
                    weight += (cur[j] != 0) - (before != 0);
                }
                if (++digits[i] < p) break;
                digits[i] = 0;
            }
            if (i == basis.size()) break;
            ++seen;
            best = std::min(best, weight);
        }
        out.codewords = seen;
    }
    out.min_weight = best;
    return out;
}

Rational grid_junta_min_fraction(int s, int n, int d, int p) {
    const std::uint64_t N = grid_size(s, n);
    std::vector<std::vector<int>> gens;
    for (const auto& a : monomials_up_to(s, n, d)) {
        std::vector<int> row(N);
        for (std::uint64_t idx = 0; idx < N; ++idx)
            row[idx] = monomial_value(a, grid_point(idx, s, n));
        gens.push_back(std::move(row));
    }
    auto cm = code_min_weight(gens, p);
    return Rational(std::int64_t(cm.min_weight), std::int64_t(N));
}

CodeMinimum multislice_min_nonzero(const SliceSpec& spec, int d, int p) {
    auto points = enumerate_slice(spec, capacity_cap());
    std::vector<std::vector<int>> gens;
    for (const auto& a : monomials_up_to(spec.s, spec.n, d)) {
        std::vector<int> row(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) row[j] = monomial_value(a, points[j]);
        gens.push_back(std::move(row));
    }
    return code_min_weight(gens, p);
}

// ---- prime fields -----------------------------------------------------

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

Rational odlsz_delta(int q, int d) {
    if (q < 2) throw ValidationError("field size must be at least 2");
    if (d < 0) throw ValidationError("degree must be non-negative");
    const int alpha = d / (q - 1), beta = d % (q - 1);
    return Rational(q - beta, q) / Rational(ipow(q, unsigned(alpha)));
}

void PrimeFieldPolynomial::add_term(const std::vector<int>& exponents, int c) {
    if (int(exponents.size()) != n_) throw ValidationError("exponent vector has wrong length");
    for (int e : exponents)
        if (e < 0 || e > p_ - 1) throw ValidationError("individual degree must be <= p-1");
    int& v = coeffs_[exponents];
    v = int(mod_floor(v + c, p_));
    if (v == 0) coeffs_.erase(exponents);
}

int PrimeFieldPolynomial::evaluate(const Point& x) const {
    std::int64_t total = 0;
    for (const auto& [e, c] : coeffs_) {
        std::int64_t term = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * x[i] % p_;
        total = (total + term) % p_;
    }
    return int(total);
}

int PrimeFieldPolynomial::degree() const {
    int d = 0;
    for (const auto& kv : coeffs_) d = std::max(d, std::accumulate(kv.first.begin(), kv.first.end(), 0));
    return d;
}

std::vector<std::vector<int>> field_monomials(int p, int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            out.push_back(e);
            return;
        }
        for (int v = 0; v <= std::min(left, p - 1); ++v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
        e[i] = 0;
    };
    rec(0, d);
    return out;
}

namespace {

std::vector<std::vector<int>> field_generators(int p, const std::vector<std::vector<int>>& monos,
                                               const std::vector<Point>& points) {
    std::vector<std::vector<int>> gens;
    for (const auto& e : monos) {
        PrimeFieldPolynomial m(p, int(e.size()));
        m.add_term(e, 1);
        std::vector<int> row(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) row[j] = m.evaluate(points[j]);
        gens.push_back(std::move(row));
    }
    return gens;
}

std::size_t sampled_min(const std::vector<std::vector<int>>& gens, int p, int samples,
                        Rng& rng) {
    const std::size_t N = gens.empty() ? 0 : gens[0].size();
    std::size_t best = N + 1;
    std::uniform_int_distribution<int> coef(0, p - 1);
    std::vector<int> cur(N);
    for (int t = 0; t < samples; ++t) {
        std::fill(cur.begin(), cur.end(), 0);
        for (const auto& g : gens) {
            int c = coef(rng);
            if (c)
                for (std::size_t j = 0; j < N; ++j) cur[j] = (cur[j] + c * g[j]) % p;
        }
        std::size_t w = std::count_if(cur.begin(), cur.end(), [](int v) { return v != 0; });
        if (w) best = std::min(best, w);
    }
    return best;
}

}  // namespace

FieldMinimum field_poly_min_nonzero_fraction(int p, int n, int d, SearchMode mode,
                                             int samples, std::uint64_t seed) {
    if (!is_prime(p)) throw ValidationError("field size must be prime");
    if (d < 0 || n < 1) throw ValidationError("need n >= 1 and d >= 0");
    const std::uint64_t N = grid_size(p, n);
    std::vector<Point> grid;
    for (std::uint64_t i = 0; i < N; ++i) grid.push_back(grid_point(i, p, n));
    auto monos = field_monomials(p, n, d);
    Rng rng(seed);
    auto minimum = [&](const std::vector<Point>& pts) {
        auto gens = field_generators(p, monos, pts);
        std::size_t w = mode == SearchMode::exhaustive ? code_min_weight(gens, p).min_weight
                                                       : sampled_min(gens, p, samples, rng);
        return Rational(std::int64_t(w), std::int64_t(pts.size()));
    };
    FieldMinimum out;
    out.grid = minimum(grid);
    if (n % p == 0) out.slice = minimum(enumerate_slice(SliceSpec::balanced(p, n), capacity_cap()));
    return out;
}

// ---- ball interpolation -----------------------------------------------

namespace {

void for_each_ball_point(int s, const Point& c, int d, const std::function<void(const Point&)>& fn) {
    const int m = int(c.size());
    Point x = c;
    std::function<void(int, int)> rec = [&](int start, int left) {
        fn(x);
        if (left == 0) return;
        for (int i = start; i < m; ++i) {
            for (int letter = 0; letter < s; ++letter) {
                if (letter == c[i]) continue;
                x[i] = std::uint8_t(letter);
                rec(i + 1, left - 1);
            }
            x[i] = c[i];
        }
    };
    rec(0, d);
}

}  // namespace

BallCoefficients ball_interpolation_coeffs(int s, int m, int d, const Point& c) {
    if (int(c.size()) != m) throw ValidationError("center has wrong length");
    if (d < 0 || m < d) throw ValidationError("ball interpolation needs 0 <= d <= m");
    for (auto v : c)
        if (v >= s) throw ValidationError("center letter outside alphabet");
    std::vector<Point> ball;
    for_each_ball_point(s, c, d, [&](const Point& b) { ball.push_back(b); });
    auto monos = monomials_up_to(s, m, d);
    if (BigInt(ball.size()) * monos.size() > 250000)
        throw CapacityError("ball interpolation system too large for the integer solver");
    IntMatrix E(monos.size(), std::vector<BigInt>(ball.size(), 0));
    std::vector<BigInt> rhs(monos.size(), 0);
    const Point origin(m, 0);
    for (std::size_t r = 0; r < monos.size(); ++r) {
        for (std::size_t j = 0; j < ball.size(); ++j) E[r][j] = monomial_value(monos[r], ball[j]);
        rhs[r] = monomial_value(monos[r], origin);
    }
    auto sol = solve_integer(E, rhs);
    if (!sol) throw ValidationError("no integer ball interpolation exists");
    BallCoefficients out;
    for (std::size_t j = 0; j < ball.size(); ++j)
        if ((*sol)[j] != 0) out[ball[j]] = std::int64_t((*sol)[j]);
    return out;
}

BallCoefficients ball_interpolation_closed_form(int d, const Point& c) {
    if (d < 0) throw ValidationError("degree must be non-negative");
    std::vector<int> support;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) support.push_back(int(i));
    const int w = int(support.size());
    BallCoefficients out;
    if (w <= d) {
        out[Point(c.size(), 0)] = 1;
        return out;
    }
    // Coefficient of c with J zeroed: (-1)^(d-|J|) C(w-|J|-1, d-|J|).
    Point x = c;
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
        const int j = int(chosen.size());
        std::int64_t coef = std::int64_t(binomial_u64(unsigned(w - j - 1), unsigned(d - j)));
        if ((d - j) % 2) coef = -coef;
        out[x] = coef;
        if (j == d) return;
        for (int t = start; t < w; ++t) {
            x[support[t]] = 0;
            chosen.push_back(t);
            rec(t + 1);
            chosen.pop_back();
            x[support[t]] = c[support[t]];
        }
    };
    rec(0);
    return out;
}

bool ball_identity_holds(int d, const Point& target, const BallCoefficients& coeffs) {
    // Only sub-patterns of some listed point (or of the target) can be nonzero.
    std::map<Monomial, std::int64_t> sums;
    auto accumulate = [&](const Point& b, std::int64_t coef) {
        Monomial full;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i]) full.emplace_back(int(i), b[i]);
        Monomial cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            sums[cur] += coef;
            if (int(cur.size()) == d) return;
            for (std::size_t t = start; t < full.size(); ++t) {
                cur.push_back(full[t]);
                rec(t + 1);
                cur.pop_back();
            }
        };
        rec(0);
    };
    for (const auto& [b, coef] : coeffs) {
        if (b.size() != target.size()) return false;
        accumulate(b, coef);
    }
    accumulate(target, -1);
    return std::all_of(sums.begin(), sums.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace multislice
