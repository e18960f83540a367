#include "multislice/listcorr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

namespace multislice {

namespace {

Rational list_radius(int s, int d, double eps) {
    // 1/s^d - ε/2, with ε read to six decimals.
    Rational e(std::llround(eps * 1e6), 2000000);
    Rational r = Rational(1, ipow(s, unsigned(d))) - e;
    if (r < Rational(0)) throw ValidationError("list radius is negative; decrease eps");
    return r;
}

bool is_z2(const AbelianGroupSpec& G) { return G.factors() == std::vector<std::int64_t>{2}; }

// Walsh-Hadamard path for affine functions over Z_2.
std::vector<JuntaPolynomial> affine_list(const JuntaTable& table, const Rational& radius) {
    const int k = table.n;
    const std::uint64_t N = std::uint64_t(1) << k;
    std::vector<std::int64_t> F(N);
    for (std::uint64_t x = 0; x < N; ++x) F[x] = table.values[x].components[0] ? -1 : 1;
    for (std::uint64_t len = 1; len < N; len <<= 1)
        for (std::uint64_t i = 0; i < N; i += len << 1)
            for (std::uint64_t j = i; j < i + len; ++j) {
                std::int64_t a = F[j], b = F[j + len];
                F[j] = a + b;
                F[j + len] = a - b;
            }
    std::vector<JuntaPolynomial> out;
    const std::int64_t num = radius.numerator(), den = radius.denominator();
    for (int c = 0; c <= 1; ++c)
        for (std::uint64_t u = 0; u < N; ++u) {
            std::int64_t agree = (std::int64_t(N) + (c ? -F[u] : F[u])) / 2;
            std::int64_t bad = std::int64_t(N) - agree;
            if (__int128(bad) * den > __int128(num) * N) continue;
            JuntaPolynomial p(2, k, table.group);
            if (c) p.add_term({}, GroupElement{{1}});
            for (int i = 0; i < k; ++i)
                if (u >> (k - 1 - i) & 1) p.add_term({{i, 1}}, GroupElement{{1}});
            out.push_back(std::move(p));
        }
    return out;
}

}  // namespace

std::vector<JuntaPolynomial> brute_force_list(const JuntaTable& table, int d,
                                              const Rational& radius) {
    if (table.s == 2 && d == 1 && is_z2(table.group)) {
        if (table.values.size() != grid_size(2, table.n))
            throw ValidationError("table is incomplete");
        return affine_list(table, radius);
    }
    std::vector<JuntaPolynomial> out;
    for_each_close_junta_sum(table, d, radius, false,
                             [&](const JuntaPolynomial& p, std::uint64_t) { out.push_back(p); });
    return out;
}

// ---- identification maps ------------------------------------------------

bool IdentificationMap::valid() const {
    if (int(tau.size()) != s * k) return false;
    std::vector<int> fiber(k, 0);
    for (int t : tau) {
        if (t < 0 || t >= k) return false;
        ++fiber[t];
    }
    return std::all_of(fiber.begin(), fiber.end(), [&](int c) { return c == s; });
}

Point IdentificationMap::point(const Point& y) const {
    if (int(y.size()) != k) throw ValidationError("identification point has wrong length");
    Point x(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) x[i] = y[tau[i]];
    return x;
}

IdentificationMap IdentificationMap::random(int s, int k, Rng& rng) {
    IdentificationMap m{s, k, {}};
    auto perm = random_permutation(s * k, rng);
    m.tau.resize(s * k);
    for (int i = 0; i < s * k; ++i) m.tau[perm[i]] = i % k;
    return m;
}

JuntaTable restrict_to_identification(const JuntaTable& f, const IdentificationMap& tau) {
    if (!tau.valid()) throw ValidationError("τ is not an s-to-1 map");
    if (f.n != tau.s * tau.k) throw ValidationError("table and τ disagree on dimension");
    const std::uint64_t N = grid_size(f.s, tau.k);
    JuntaTable g{f.s, tau.k, f.group, {}};
    g.values.reserve(N);
    for (std::uint64_t idx = 0; idx < N; ++idx)
        g.values.push_back(f.values[grid_index(tau.point(grid_point(idx, f.s, tau.k)), f.s)]);
    return g;
}

// ---- spanned subgrids ---------------------------------------------------

SpannedSubgrid SpannedSubgrid::make(const SubgridMap& base, const Point& b,
                                    const std::vector<int>& sigma) {
    const int s = base.s, k = base.k, n = base.n;
    if (int(b.size()) != n) throw ValidationError("point has wrong length");
    if (int(sigma.size()) != s * k) throw ValidationError("σ must permute [sk]");
    SpannedSubgrid sp;
    sp.base = base;
    sp.b = b;
    sp.sigma = sigma;
    sp.spanned = base;
    sp.spanned.k = s * k;
    for (int i = 0; i < n; ++i) {
        int c = int(std::find(base.pi[i].begin(), base.pi[i].end(), b[i]) - base.pi[i].begin());
        sp.spanned.h[i] = sigma[base.h[i] + k * c];
    }
    sp.witness.assign(s * k, 0);
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < s; ++c) sp.witness[sigma[j + k * c]] = std::uint8_t(c);
    return sp;
}

Point SpannedSubgrid::lift(const Point& y) const {
    const int s = base.s, k = base.k;
    Point w(s * k);
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < s; ++c) w[sigma[j + k * c]] = y[j];
    return w;
}

IdentificationMap SpannedSubgrid::identification() const {
    const int s = base.s, k = base.k;
    IdentificationMap m{s, k, std::vector<int>(s * k)};
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < s; ++c) m.tau[sigma[j + k * c]] = j;
    return m;
}

// ---- Algorithms 3 and 4 -------------------------------------------------

GroupElement approximator_eval(const ApproximatorDescriptor& desc, Oracle& f, const Point& b) {
    const int s = desc.subgrid.s, k = desc.subgrid.k;
    auto sp = SpannedSubgrid::make(desc.subgrid, b, desc.sigma);
    JuntaTable table = restrict_to_subgrid(f, sp.spanned);
    auto list = brute_force_list(table, desc.d, list_radius(s, desc.d, desc.eps));
    const std::uint64_t N = grid_size(s, k);
    std::vector<GroupElement> q(N);
    std::vector<Point> lifted(N);
    for (std::uint64_t idx = 0; idx < N; ++idx) {
        Point y = grid_point(idx, s, k);
        q[idx] = desc.Q.evaluate(y);
        lifted[idx] = sp.lift(y);
    }
    for (const auto& R : list) {
        bool match = true;
        for (std::uint64_t idx = 0; idx < N && match; ++idx) match = R.evaluate(lifted[idx]) == q[idx];
        if (match) return R.evaluate(sp.witness);
    }
    return f.group().zero();
}

std::vector<ApproximatorDescriptor> build_approximators(Oracle& f, int d, double eps, int k,
                                                        int ell, Rng& rng) {
    if (ell < 1) throw ValidationError("ell must be at least 1");
    if (k < 1) throw ValidationError("k must be positive");
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    const int s = f.s();
    require_within_cap(pow(BigInt(s), unsigned(s * k)), "approximator subgrid");
    const Rational radius = list_radius(s, d, eps);
    std::vector<ApproximatorDescriptor> out;
    for (int it = 0; it < ell; ++it) {
        auto C = SubgridMap::random(s, f.n(), k, rng);
        auto list = brute_force_list(restrict_to_subgrid(f, C), d, radius);
        auto sigma = random_permutation(s * k, rng);
        for (auto& Q : list) out.push_back({C, sigma, std::move(Q), d, eps});
    }
    return out;
}

ListCorrector local_list_correct(Oracle& f, const ListCorrectionParams& params, Rng& rng) {
    ListCorrector out;
    const std::uint64_t before = f.queries();
    out.descriptors = build_approximators(f, params.d, params.eps, params.k, params.ell, rng);
    out.build_queries = f.queries() - before;
    for (const auto& desc : out.descriptors) {
        auto shared = std::make_shared<const ApproximatorDescriptor>(desc);
        Oracle* fp = &f;
        const int ck = params.corrector_k, d = params.d;
        out.correctors.push_back([shared, fp, ck, d](const Point& x, Rng& r) {
            FunctionOracle psi(fp->s(), fp->n(), fp->group(),
                               [&](const Point& b) { return approximator_eval(*shared, *fp, b); });
            return subgrid_error_reduce(psi, x, ck, d, r);
        });
    }
    return out;
}

// ---- empirical checks ---------------------------------------------------

Rational nonzero_fraction(const JuntaPolynomial& p) {
    auto t = p.tabulate();
    std::int64_t nz = 0;
    for (const auto& v : t.values) nz += !p.group().is_zero(v);
    return Rational(nz, std::int64_t(t.values.size()));
}

int dependent_variables(const JuntaPolynomial& p) {
    std::vector<bool> used(p.n(), false);
    for (const auto& kv : p.coeffs())
        for (auto [i, letter] : kv.first) used[i] = true;
    return int(std::count(used.begin(), used.end(), true));
}

AntiConcentrationReport anti_concentration_check(int s, int d, double eps, int r, int n,
                                                 std::int64_t M, int trials, Rng& rng) {
    if (r > n) throw ValidationError("need r <= n");
    if (d < 1) throw ValidationError("anti-concentration needs d >= 1");
    auto G = AbelianGroupSpec::cyclic(M);
    grid_size(s, n);
    AntiConcentrationReport rep;
    rep.bound = Rational(1, ipow(s, unsigned(d - 1))) - Rational(std::llround(eps * 1e6), 1000000);
    auto monos = monomials_up_to(s, n, d);
    std::bernoulli_distribution keep(0.35);
    int guard = 0;
    while (rep.tested < trials) {
        if (++guard > 100 * trials + 1000) throw ValidationError("could not sample enough polynomials");
        JuntaPolynomial p(s, n, G);
        for (const auto& a : monos)
            if (keep(rng)) p.add_term(a, G.random_nonzero(rng));
        if (p.degree() != d || dependent_variables(p) < r) continue;
        rep.min_fraction = std::min(rep.min_fraction, nonzero_fraction(p));
        ++rep.tested;
    }
    return rep;
}

Rational disjoint_leading_tail(int p, int t, int n) {
    if (!is_prime(p)) throw ValidationError("field size must be prime");
    if (n > 6 || t > n || t < 1) throw ValidationError("need 1 <= t <= n <= 6");
    const int N = 1 << n;
    // Zero sets over {0,1}^n of every degree-1 polynomial, grouped by leading variable.
    std::vector<std::vector<std::uint64_t>> by_lead(n);
    std::vector<int> coef(n + 1, 0);
    for (;;) {
        std::size_t i = 0;
        while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
        if (i == coef.size()) break;
        int lead = -1;
        for (int v = 0; v < n; ++v)
            if (coef[v + 1]) lead = v;
        if (lead < 0) continue;
        std::uint64_t zeros = 0;
        for (int a = 0; a < N; ++a) {
            int val = coef[0];
            for (int v = 0; v < n; ++v)
                if (a >> v & 1) val += coef[v + 1];
            if (val % p == 0) zeros |= std::uint64_t(1) << a;
        }
        by_lead[lead].push_back(zeros);
    }
    BigInt combos = 1;
    for (int v = n - t; v < n; ++v) combos *= by_lead[v].size();
    require_within_cap(combos, "disjoint-monomial enumeration");
    int best = 0;
    std::function<void(int, int, std::uint64_t)> rec = [&](int start, int left, std::uint64_t acc) {
        if (left == 0) {
            best = std::max(best, std::popcount(acc));
            return;
        }
        for (int v = start; v <= n - left; ++v)
            for (auto z : by_lead[v]) rec(v + 1, left - 1, acc & z);
    };
    rec(0, t, N == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << N) - 1);
    return Rational(best, N);
}

SamplingReport subgrid_sampling_experiment(int s, int n, int k, double eps, int trials,
                                           std::uint64_t seed) {
    if (trials < 1) throw ValidationError("need at least one trial");
    const std::uint64_t N = grid_size(s, n), K = grid_size(s, k);
    const std::uint64_t set_seed = splitmix64(seed ^ hash_string("sampling-set"));
    std::vector<bool> in_t(N);
    std::int64_t count = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        in_t[i] = splitmix64(set_seed ^ i) & 1;
        count += in_t[i];
    }
    SamplingReport rep;
    rep.density = Rational(count, std::int64_t(N));
    const double density = boost::rational_cast<double>(rep.density);
    int exceed = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_stream(seed, "sampling", std::uint64_t(t));
        auto C = SubgridMap::random(s, n, k, rng);
        std::uint64_t hits = 0;
        for (std::uint64_t idx = 0; idx < K; ++idx)
            hits += in_t[grid_index(C.point(grid_point(idx, s, k)), s)];
        double dev = std::abs(double(hits) / double(K) - density);
        rep.deviations.push_back(dev);
        exceed += dev >= eps;
    }
    rep.exceed_frequency = double(exceed) / trials;
    return rep;
}

RestrictionReport restriction_nonvanishing_experiment(int s, int k, int d, int trials,
                                                      Rng& rng) {
    const int big = s * s * k, small = s * k;
    auto G = AbelianGroupSpec::cyclic(s);
    auto big_slice = enumerate_slice(SliceSpec::balanced(s, big), capacity_cap());
    auto small_slice = enumerate_slice(SliceSpec::balanced(s, small), capacity_cap());
    auto monos = monomials_up_to(s, big, d);
    std::uniform_int_distribution<std::size_t> pick(1, monos.size() - 1);
    std::uniform_int_distribution<int> terms(1, 4);
    RestrictionReport rep;
    for (int t = 0; t < trials; ++t) {
        JuntaPolynomial P(s, big, G);
        for (;;) {
            P = JuntaPolynomial(s, big, G);
            int m = terms(rng);
            for (int j = 0; j < m; ++j) P.add_term(monos[pick(rng)], G.random_nonzero(rng));
            bool nonzero = std::any_of(big_slice.begin(), big_slice.end(),
                                       [&](const Point& x) { return !G.is_zero(P.evaluate(x)); });
            if (nonzero) break;
        }
        auto tau = IdentificationMap::random(s, small, rng);
        bool alive = std::any_of(small_slice.begin(), small_slice.end(), [&](const Point& y) {
            return !G.is_zero(P.evaluate(tau.point(y)));
        });
        ++rep.trials;
        rep.nonvanishing += alive;
    }
    return rep;
}

}  // namespace multislice
