#include "doctest.h"

#include <cmath>

#include "multislice/walks.hpp"

using namespace multislice;

namespace {
std::size_t nonzeros_in_row(const WalkMatrix& w, std::size_t a) {
    std::size_t c = 0;
    for (std::size_t b = 0; b < w.size(); ++b) c += w.numerator(a, b) != 0;
    return c;
}
}  // namespace

TEST_CASE("walk_from_distance examples on the (2,2) slice") {
    auto spec = SliceSpec::balanced(2, 4);
    auto johnson = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), spec);
    CHECK(johnson.size() == 6);
    for (std::size_t a = 0; a < 6; ++a) {
        CHECK(nonzeros_in_row(johnson, a) == 4);
        for (std::size_t b = 0; b < 6; ++b)
            if (johnson.numerator(a, b)) CHECK(johnson.entry(a, b) == Rational(1, 4));
    }
    auto comp = walk_from_distance(DistanceMatrix(2, {0, 2, 2, 0}), spec);
    for (std::size_t a = 0; a < 6; ++a) {
        CHECK(nonzeros_in_row(comp, a) == 1);
        Point c = johnson.index().point(a);
        for (auto& v : c) v = 1 - v;
        CHECK(comp.entry(a, comp.index().index_of(c)) == Rational(1));
    }
    auto id = walk_from_distance(DistanceMatrix(2, {2, 0, 0, 2}), spec);
    for (std::size_t a = 0; a < 6; ++a) CHECK(id.entry(a, a) == Rational(1));
}

TEST_CASE("walk_from_distance validation") {
    auto spec = SliceSpec::balanced(2, 4);
    CHECK_THROWS_AS(walk_from_distance(DistanceMatrix(2, {2, 1, 0, 1}), spec),
                    ValidationError);
    CHECK_THROWS_AS(walk_from_distance(DistanceMatrix(2, {3, -1, -1, 3}), spec),
                    ValidationError);
}

TEST_CASE("support size and transpose relation") {
    auto spec = SliceSpec::balanced(3, 6);
    DistanceMatrix d(3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
    auto w = walk_from_distance(d, spec);
    auto wt = walk_from_distance(d.transpose(), spec);
    CHECK(distance_support_size(d) == 8);
    for (std::size_t a = 0; a < w.size(); ++a) CHECK(nonzeros_in_row(w, a) == 8);
    auto tr = w.transpose();
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t b = 0; b < w.size(); ++b)
            CHECK(tr.entry(a, b) == wt.entry(a, b));
    CHECK(w.is_doubly_stochastic_exact());
}

TEST_CASE("walk_odlsz") {
    auto w2 = walk_odlsz(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(w2.entry(a, b) == Rational(1, 2));
    CHECK(spectral_report(w2).lambda2 == doctest::Approx(0.0));
    auto w = walk_odlsz(2, 4);
    CHECK(w.size() == 6);
    CHECK(w.terms().size() == 3);
    CHECK(w.is_symmetric_exact());
    CHECK(w.is_doubly_stochastic_exact());
    auto w3 = walk_odlsz(3, 6);
    CHECK(w3.is_symmetric_exact());
    CHECK(w3.is_doubly_stochastic_exact());
}

TEST_CASE("walk_odlsz matches the bijection sampling process exhaustively at s=2,n=2") {
    // Algorithm: random bijections M_j, y ~ Z_s^m, b_i = y_{M_{a_i}(i)} + a_i.
    // For n=2 each letter class has one coordinate, so M_j is trivial and
    // b_i = y_0 + a_i: both b come out with probability 1/2.
    auto w = walk_odlsz(2, 2);
    CHECK(w.entry(0, 1) == Rational(1, 2));
}

TEST_CASE("subgrid identification walk equals the tau construction exhaustively at s=2,k=1") {
    auto w = walk_subgrid_identification(2, 1);
    CHECK(w.is_symmetric_exact());
    CHECK(w.is_doubly_stochastic_exact());
    const auto& idx = w.index();
    // Enumerate every 2-to-1 map tau:[4]->[2] and every pair a,b on S^2_{1,1}.
    std::vector<std::vector<int>> taus;
    for (int m = 0; m < 16; ++m) {
        std::vector<int> t(4);
        int ones = 0;
        for (int i = 0; i < 4; ++i) ones += (t[i] = (m >> i) & 1);
        if (ones == 2) taus.push_back(t);
    }
    std::vector<Point> sub{{0, 1}, {1, 0}};
    const std::size_t N = w.size();
    std::vector<std::int64_t> freq(N * N, 0);
    std::int64_t total = 0;
    for (const auto& t : taus)
        for (const auto& a : sub)
            for (const auto& b : sub) {
                Point u(4), v(4);
                for (int i = 0; i < 4; ++i) {
                    u[i] = a[t[i]];
                    v[i] = b[t[i]];
                }
                ++freq[idx.index_of(u) * N + idx.index_of(v)];
                ++total;
            }
    // freq/total is the joint law of (u,v), which must equal W/N.
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            CHECK(Rational(freq[a * N + b], total) == w.entry(a, b) / std::int64_t(N));
}

TEST_CASE("subgrid identification walk at s=2,k=2 is symmetric with unit top singular value") {
    auto w = walk_subgrid_identification(2, 2);
    CHECK(w.is_symmetric_exact());
    auto rep = spectral_report(w);
    CHECK(rep.singular_values.front() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral_report on the Johnson walk") {
    auto w = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), SliceSpec::balanced(2, 4));
    auto rep = spectral_report(w);
    CHECK(rep.symmetric);
    CHECK(std::abs(rep.sigma2 - 0.5) < 1e-9);
    REQUIRE(rep.multiplicities.size() == 3);
    CHECK(std::abs(rep.multiplicities[0].first - 1.0) < 1e-9);
    CHECK(rep.multiplicities[0].second == 1);
    CHECK(std::abs(rep.multiplicities[1].first) < 1e-9);
    CHECK(rep.multiplicities[1].second == 3);
    CHECK(std::abs(rep.multiplicities[2].first + 0.5) < 1e-9);
    CHECK(rep.multiplicities[2].second == 2);
    std::vector<double> abs_eig;
    for (double e : rep.eigenvalues) abs_eig.push_back(std::abs(e));
    std::sort(abs_eig.rbegin(), abs_eig.rend());
    for (std::size_t i = 0; i < abs_eig.size(); ++i)
        CHECK(std::abs(abs_eig[i] - rep.singular_values[i]) < 1e-9);
}

TEST_CASE("spectral_report on identity and complement walks") {
    auto spec = SliceSpec::balanced(2, 4);
    for (const auto& w : {identity_walk(spec),
                          walk_from_distance(DistanceMatrix(2, {0, 2, 2, 0}), spec)}) {
        auto rep = spectral_report(w);
        for (double v : rep.singular_values) CHECK(std::abs(v - 1.0) < 1e-12);
        CHECK(std::abs(rep.sigma2 - 1.0) < 1e-12);
    }
}

TEST_CASE("convex_combine") {
    auto spec = SliceSpec::balanced(2, 4);
    auto j = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), spec);
    auto single = convex_combine({{Rational(1), j}});
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) CHECK(single.entry(a, b) == j.entry(a, b));
    auto lazy = convex_combine({{Rational(1, 2), identity_walk(spec)}, {Rational(1, 2), j}});
    CHECK(lazy.is_doubly_stochastic_exact());
    CHECK(spectral_report(lazy).sigma2 <= 0.5 + 0.5 * spectral_report(j).sigma2 + 1e-9);

    auto spec3 = SliceSpec::balanced(3, 6);
    DistanceMatrix p(3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
    auto wp = walk_from_distance(p, spec3);
    auto wpt = walk_from_distance(p.transpose(), spec3);
    auto sym = convex_combine({{Rational(1, 2), wp}, {Rational(1, 2), wpt}});
    CHECK(sym.is_symmetric_exact());
    double bound = std::max(spectral_report(wp).sigma2, spectral_report(wpt).sigma2);
    CHECK(spectral_report(sym).sigma2 <= bound + 1e-9);

    CHECK_THROWS_AS(convex_combine({{Rational(1, 3), j}}), ValidationError);
    CHECK_THROWS_AS(convex_combine({{Rational(1, 2), j}, {Rational(1, 2), wp}}),
                    ValidationError);
}

TEST_CASE("convex combination singular value bound for the ODLSZ decomposition") {
    auto w = walk_odlsz(3, 6);
    std::vector<double> parts;
    double worst = 0.0;
    for (const auto& t : w.terms()) {
        auto wt = walk_from_distance(t.delta, w.spec());
        worst = std::max(worst, spectral_report(wt).sigma2);
    }
    CHECK(spectral_report(w).sigma2 <= worst + 1e-9);
}

TEST_CASE("respects_symmetries") {
    auto spec = SliceSpec::balanced(2, 4);
    auto j = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), spec);
    CHECK(respects_symmetries(j, SymmetryMode::exhaustive));
    CHECK(respects_symmetries(walk_odlsz(2, 4), SymmetryMode::exhaustive));
    CHECK_FALSE(respects_symmetries(j.perturbed(0, 1, 1), SymmetryMode::exhaustive));
    CHECK(respects_symmetries(walk_odlsz(2, 8), SymmetryMode::sampled, 2000));
    CHECK_THROWS_AS(respects_symmetries(walk_odlsz(2, 8), SymmetryMode::exhaustive),
                    CapacityError);
}

TEST_CASE("frobenius_norm") {
    auto spec = SliceSpec::balanced(2, 4);
    CHECK(frobenius_norm(identity_walk(spec)) == doctest::Approx(std::sqrt(6.0)));
    auto j = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), spec);
    CHECK(frobenius_norm(j) == doctest::Approx(std::sqrt(1.5)));
    auto u = walk_odlsz(2, 2);
    CHECK(frobenius_norm(u) == doctest::Approx(1.0));
    // ‖W_Δ‖_F² = N / D
    auto w = walk_from_distance(DistanceMatrix(3, {1, 1, 0, 0, 1, 1, 1, 0, 1}),
                                SliceSpec::balanced(3, 6));
    CHECK(frobenius_norm(w) == doctest::Approx(std::sqrt(90.0 / 8.0)));
}

TEST_CASE("independence_report") {
    auto spec = SliceSpec::balanced(2, 4);
    auto uniform = convex_combine({{Rational(1, 6), walk_from_distance(DistanceMatrix(2, {2, 0, 0, 2}), spec)},
                                   {Rational(2, 3), walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), spec)},
                                   {Rational(1, 6), walk_from_distance(DistanceMatrix(2, {0, 2, 2, 0}), spec)}});
    for (std::size_t b = 0; b < 6; ++b) CHECK(uniform.entry(0, b) == Rational(1, 6));
    CHECK(independence_report(uniform, 1).epsilon == doctest::Approx(0.0));
    CHECK(independence_report(identity_walk(spec), 1).epsilon == doctest::Approx(0.5));
    CHECK(independence_report(identity_walk(SliceSpec::balanced(3, 3)), 1).epsilon ==
          doctest::Approx(2.0 / 3.0));

    auto w = walk_from_distance(DistanceMatrix(2, {2, 2, 2, 2}), SliceSpec::balanced(2, 8));
    auto direct = independence_report(w, 2);
    auto closed = independence_closed_form(w, 2);
    CHECK(std::abs(direct.epsilon - 1.0 / 6.0) < 1e-12);
    CHECK(std::abs(closed.epsilon - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("closed-form marginals agree with direct marginalisation on mixtures") {
    for (auto w : {walk_odlsz(3, 6), walk_subgrid_identification(2, 1), walk_odlsz(2, 6)}) {
        for (int k = 1; k <= 3; ++k)
            CHECK(std::abs(independence_report(w, k).epsilon -
                           independence_closed_form(w, k).epsilon) < 1e-12);
    }
}

TEST_CASE("expander mixing on the Johnson walk") {
    auto w = walk_from_distance(DistanceMatrix(2, {1, 1, 1, 1}), SliceSpec::balanced(2, 4));
    double lam = spectral_report(w).lambda2;
    auto all = expander_mixing_check(w, std::vector<bool>(6, true), lam);
    CHECK(all.lhs == doctest::Approx(1.0));
    CHECK(all.holds);
    auto none = expander_mixing_check(w, std::vector<bool>(6, false), lam);
    CHECK(none.lhs == 0.0);
    CHECK(none.rhs == 0.0);
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<bool> u(6);
        for (int i = 0; i < 6; ++i) u[i] = (mask >> i) & 1;
        CHECK(expander_mixing_check(w, u, lam).holds);
    }
}
