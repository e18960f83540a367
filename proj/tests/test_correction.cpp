#include "doctest.h"

#include "multislice/correction.hpp"

using namespace multislice;

namespace {
GroupElement z(std::int64_t v) { return GroupElement{{v}}; }

Point random_point(int s, int n, Rng& rng) {
    Point x(n);
    for (auto& v : x) v = std::uint8_t(rng() % s);
    return x;
}
}  // namespace

TEST_CASE("digit sums and Kummer valuations") {
    CHECK(digit_sum(5, 2) == 2);
    CHECK(kummer_valuation(4, 2, 2) == 1);
    CHECK(kummer_valuation(9, 8, 2) == 0);
    for (int a = 0; a <= 30; ++a)
        for (int b = 0; b <= a; ++b)
            for (int p : {2, 3, 5, 7}) {
                BigInt c = big_binomial(a, b);
                int v = 0;
                while (c % p == 0) {
                    c /= p;
                    ++v;
                }
                CHECK(kummer_valuation(a, b, p) == v);
            }
}

TEST_CASE("noisy oracle answers consistently") {
    Rng rng(1);
    auto G = AbelianGroupSpec::cyclic(3);
    auto P = random_junta_sum(3, 6, 2, G, rng);
    NoisyOracle clean(P);
    for (int t = 0; t < 50; ++t) {
        Point x = random_point(3, 6, rng);
        CHECK(clean.query(x) == P.evaluate(x));
    }
    CHECK(clean.queries() == 50);

    NoisyOracle noisy(P, 0.3, 77);
    int corrupted = 0;
    for (std::uint64_t i = 0; i < 729; ++i) {
        Point x = grid_point(i, 3, 6);
        auto v = noisy.query(x);
        CHECK(v == noisy.query(x));
        CHECK((v != P.evaluate(x)) == noisy.corrupted(x));
        corrupted += noisy.corrupted(x);
    }
    CHECK(corrupted > 729 * 0.2);
    CHECK(corrupted < 729 * 0.4);
    Point x(6, 0);
    noisy.set_error(x, G.add(P.evaluate(x), z(1)));
    CHECK(noisy.query(x) != P.evaluate(x));
}

TEST_CASE("noisy laws convolve multiplicatively") {
    Rng rng(4);
    CHECK(noisy_convolution_check(3, Rational(0), Rational(0), 5, rng));
    auto point_mass = noisy_law(2, Rational(1));
    CHECK(difference_law(point_mass, point_mass) == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(noisy_convolution_check(3, Rational(1, 10), Rational(1, 5), 200, rng));
    CHECK(noisy_convolution_check(5, Rational(1, 4), Rational(1, 7), 200, rng));
    auto law = difference_law(noisy_law(3, Rational(1, 10)), noisy_law(3, Rational(1, 5)));
    CHECK(law[0] == Rational(1, 3) + Rational(1, 50) * Rational(2, 3));
}

TEST_CASE("gadget parameters and identity") {
    CHECK(gadget_k(3, 2, 1.0 / 30) == 123);
    CHECK(gadget_k(2, 1, 0.9) == 4);
    CHECK_THROWS_AS(gadget_k(3, 1, 0.6), ValidationError);
    Rng rng(8);

    auto g0 = build_gadget(5, 3, 0, 0.1, rng);
    CHECK(g0.q() == 1);
    CHECK(g0.ball[0].second == 1);

    auto G = AbelianGroupSpec::cyclic(4);
    auto g = build_gadget(8, 3, 2, 0.2, rng);
    CHECK(g.k == 21);
    for (int t = 0; t < 10; ++t) {
        auto P = random_junta_sum(3, 8, 2, G, rng);
        Point a = random_point(3, 8, rng);
        auto smp = g.sample(rng);
        GroupElement acc = G.zero();
        for (std::size_t i = 0; i < smp.shifts.size(); ++i)
            acc = G.add(acc, G.scale(P.evaluate(add_mod(a, smp.shifts[i], 3)), smp.coeffs[i]));
        CHECK(acc == P.evaluate(a));
    }
    // Each shift's zero probability is within ρ(1-1/s) of 1/s.
    for (std::size_t i = 0; i < g.q(); ++i) {
        double p0 = boost::rational_cast<double>(g.zero_probability(i));
        CHECK(std::abs(p0 - 1.0 / 3) <= 0.2 * (2.0 / 3) + 1e-12);
    }
}

TEST_CASE("gadget shift letters follow the noisy law") {
    Rng rng(12);
    auto g = build_gadget(4, 3, 1, 0.25, rng);
    const std::size_t which = g.q() - 1;
    double p0 = boost::rational_cast<double>(g.zero_probability(which));
    std::vector<int> counts(3, 0);
    const int samples = 25000;
    for (int t = 0; t < samples; ++t) {
        auto smp = g.sample(rng);
        for (auto v : smp.shifts[which]) ++counts[v];
    }
    const double N = samples * 4.0;
    std::vector<double> expect{p0, (1 - p0) / 2, (1 - p0) / 2};
    for (int v = 0; v < 3; ++v) {
        double sigma = std::sqrt(N * expect[v] * (1 - expect[v]));
        CHECK(std::abs(counts[v] - N * expect[v]) <= 3 * sigma);
    }
}

TEST_CASE("base and recursive reduction") {
    Rng rng(21);
    auto G = AbelianGroupSpec::cyclic(2);
    auto P = random_junta_sum(2, 16, 1, G, rng);
    auto g = build_gadget(16, 2, 1, 0.9, rng);
    NoisyOracle clean(P);
    for (int t = 0; t < 20; ++t) {
        Point x = random_point(2, 16, rng);
        CHECK(base_reduce(clean, x, g, rng) == P.evaluate(x));
        for (int depth = 0; depth <= 2; ++depth)
            CHECK(recursive_reduce(clean, x, depth, g, rng) == P.evaluate(x));
    }
    clean.reset_queries();
    base_reduce(clean, Point(16, 0), g, rng);
    CHECK(clean.queries() == 3 * g.q());

    // A single error away from every queried point is harmless.
    NoisyOracle one(P);
    Point far(16, 1);
    one.set_error(far, G.add(P.evaluate(far), z(1)));
    Point x(16, 0);
    CHECK(base_reduce(one, x, g, rng) == P.evaluate(x));

    CHECK(plurality({z(1), z(2), z(3)}) == z(1));
    CHECK(plurality({z(1), z(2), z(2)}) == z(2));
}

TEST_CASE("unique decoding") {
    Rng rng(30);
    auto G = AbelianGroupSpec::cyclic(2);
    auto P = random_junta_sum(2, 4, 1, G, rng);
    auto table = P.tabulate();
    auto dec = brute_force_unique_decode(table, 1, Rational(1, 4));
    REQUIRE(dec);
    CHECK(*dec == P);
    // floor((16/2 - 1)/2) = 3 corruptions are still decodable.
    for (int i : {0, 5, 11}) table.values[i] = G.add(table.values[i], z(1));
    dec = brute_force_unique_decode(table, 1, Rational(1, 4));
    REQUIRE(dec);
    CHECK(*dec == P);

    // Midpoint of two codewords at distance 1/2, s=2, k=2, d=1.
    JuntaPolynomial A(2, 2, G), B(2, 2, G);
    B.add_term({{0, 1}}, z(1));
    auto ta = A.tabulate(), tb = B.tabulate();
    JuntaTable mid = ta;
    mid.values[grid_index({1, 0}, 2)] = tb.values[grid_index({1, 0}, 2)];
    CHECK_FALSE(brute_force_unique_decode(mid, 1, Rational(1, 4)));

    // Exhaustive half-distance check at s=2, k=3, d=1.
    auto monos = monomials_up_to(2, 3, 1);
    for (int mask = 0; mask < 16; ++mask) {
        JuntaPolynomial Q(2, 3, G);
        for (int j = 0; j < 4; ++j)
            if (mask >> j & 1) Q.add_term(monos[j], z(1));
        auto base = Q.tabulate();
        for (int e = 0; e < 8; ++e) {
            auto t = base;
            t.values[e] = G.add(t.values[e], z(1));
            auto r = brute_force_unique_decode(t, 1, Rational(1, 4));
            REQUIRE(r);
            CHECK(*r == Q);
        }
        auto r = brute_force_unique_decode(base, 1, Rational(1, 4));
        REQUIRE(r);
        CHECK(*r == Q);
    }
}

TEST_CASE("subgrid error reduction") {
    Rng rng(40);
    auto G = AbelianGroupSpec::cyclic(2);
    auto P = random_junta_sum(2, 12, 1, G, rng);
    NoisyOracle clean(P);
    for (int t = 0; t < 10; ++t) {
        Point a = random_point(2, 12, rng);
        CHECK(subgrid_error_reduce(clean, a, 4, 1, rng) == P.evaluate(a));
    }
    clean.reset_queries();
    subgrid_error_reduce(clean, Point(12, 0), 5, 1, rng);
    CHECK(clean.queries() == 32);

    auto map = SubgridMap::anchored(Point{2, 0, 1, 1}, 3, 2, rng);
    CHECK(map.point({0, 0}) == Point{2, 0, 1, 1});

    // Errors at rate 0.05 over Z_3 with s=3: most points still decode.
    auto G3 = AbelianGroupSpec::cyclic(3);
    auto P3 = random_junta_sum(3, 10, 1, G3, rng);
    NoisyOracle noisy(P3, 0.05, 3);
    int ok = 0;
    for (int t = 0; t < 40; ++t) {
        Point a = random_point(3, 10, rng);
        ok += subgrid_error_reduce(noisy, a, 3, 1, rng) == P3.evaluate(a);
    }
    CHECK(ok >= 30);
}

TEST_CASE("hitting sets") {
    std::vector<BitPoint> ex = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}};
    CHECK(hitting_criterion(ex, 1));
    Rng rng(50);
    auto single = hitting_set(5, 0, 2, 2, rng);
    REQUIRE(single.size() == 1);
    CHECK(std::count(single[0].begin(), single[0].end(), 1) == 2);

    for (int r = 3; r <= 6; ++r)
        for (int d = 1; d <= 2; ++d) {
            auto H = hitting_set(r, d, 1, std::min(r, 1 + d), rng);
            CHECK(hitting_criterion(H, d));
            // Every nonzero degree-<=d multilinear polynomial over Z_2 and Z_3 is hit.
            auto subsets = multilinear_subsets(r, d);
            for (int p : {2, 3}) {
                std::vector<int> coef(subsets.size(), 0);
                bool all_hit = true;
                for (;;) {
                    std::size_t i = 0;
                    while (i < coef.size() && ++coef[i] == p) coef[i++] = 0;
                    if (i == coef.size()) break;
                    bool hit = false;
                    for (const auto& b : H) {
                        int v = 0;
                        for (std::size_t c = 0; c < subsets.size(); ++c) {
                            bool on = true;
                            for (int j : subsets[c]) on = on && b[j];
                            if (on) v += coef[c];
                        }
                        if (v % p) {
                            hit = true;
                            break;
                        }
                    }
                    if (!hit) all_hit = false;
                }
                CHECK(all_hit);
                if (subsets.size() > 7) break;  // keep the Z_3 sweep small
            }
        }
}

TEST_CASE("interpolating sets") {
    Rng rng(60);
    auto zero = build_interpolating_set(2, 0, 4, 2, rng);
    CHECK(zero.points.size() == 1);
    CHECK(zero.coeffs[0] == 1);

    auto S = build_interpolating_set(2, 1, 6, 2, rng);
    CHECK(S.total_weight == 18);
    CHECK(S.weight_balanced());
    CHECK(S.interpolates());
    CHECK(multilinear_subsets(S.k(), 1).size() == 13);
    // Over Z_6 on every basis monomial.
    for (const auto& sub : multilinear_subsets(S.k(), 1)) {
        std::int64_t acc = 0;
        for (std::size_t p = 0; p < S.points.size(); ++p) {
            bool on = true;
            for (int j : sub) on = on && S.points[p][j];
            if (on) acc += S.coeffs[p];
        }
        CHECK(mod_floor(acc, 6) == 1);
    }

    auto S3 = build_interpolating_set(3, 1, 6, 2, rng);
    CHECK(S3.weight_balanced());
    CHECK(S3.interpolates());
}

TEST_CASE("biased cube reduction and interpolating corrector") {
    Rng rng(70);
    auto G = AbelianGroupSpec::cyclic(6);
    auto P = random_junta_sum(3, 8, 1, G, rng);
    NoisyOracle clean(P);
    auto S = build_interpolating_set(3, 1, 6, 2, rng);
    BooleanCorrector inner = [&](Oracle& b, Rng& r) { return interpolating_set_correct(b, S, r); };
    for (int t = 0; t < 20; ++t) {
        Point x = random_point(3, 8, rng);
        CHECK(biased_cube_correct(clean, x, inner, rng) == P.evaluate(x));
    }

    // z(y) for y ~ Bern(1/s)^n is uniform on [s]^n.
    const int s = 3, n = 4, samples = 100000;
    Point x{0, 1, 2, 1};
    std::vector<int> counts(81, 0);
    std::bernoulli_distribution bern(1.0 / s);
    for (int t = 0; t < samples; ++t) {
        Point xp(n);
        BitPoint y(n);
        for (int i = 0; i < n; ++i) {
            xp[i] = std::uint8_t((x[i] + 1 + rng() % 2) % 3);
            y[i] = bern(rng);
        }
        ++counts[grid_index(biased_cube_point(x, xp, y), s)];
    }
    double chi2 = 0, e = samples / 81.0;
    for (int c : counts) chi2 += (c - e) * (c - e) / e;
    CHECK(chi2 < 130);  // 80 dof, far tail
}

TEST_CASE("torsion schemes") {
    auto T = torsion_scheme(2, 1, 2);
    CHECK(T.k == 8);
    CHECK(T.k_prime == 8);
    CHECK(T.A == 1);
    CHECK(T.divisibility_holds());
    CHECK(T.identity_holds());
    CHECK(T.slice_points() == 12870);

    for (std::int64_t M = 2; M <= 12; ++M)
        for (int d = 0; d <= 2; ++d)
            for (int s = 2; s <= 3; ++s) {
                auto t = torsion_scheme(s, d, M);
                CHECK(t.divisibility_holds());
                CHECK(mod_floor(t.A * std::int64_t(big_binomial(unsigned(t.k_prime + d), unsigned(d)) % M), M) == 1);
            }
    CHECK(torsion_scheme(3, 1, 3).identity_holds());

    Rng rng(80);
    auto G = AbelianGroupSpec::cyclic(2);
    for (int t = 0; t < 5; ++t) {
        auto P = random_junta_sum(2, 20, 1, G, rng);
        NoisyOracle clean(P);
        Point ones(20, 1);
        CHECK(torsion_correct(clean, ones, T, rng) == P.evaluate(ones));
        CHECK(clean.queries() == 12870);
    }
}
