#include "multislice/walks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include <Eigen/SVD>

namespace multislice {

namespace {

Eigen::MatrixXd to_real(const std::vector<std::int64_t>& num, std::int64_t den,
                        std::size_t n) {
    Eigen::MatrixXd m(n, n);
    const double d = double(den);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = double(num[a * n + b]) / d;
    return m;
}

void require_dense(std::size_t n, const char* what) {
    if (n > dense_cap())
        throw CapacityError(std::string(what) + ": " + std::to_string(n) +
                            " states exceed the dense budget of " +
                            std::to_string(dense_cap()));
}

void check_same_margins(const DistanceMatrix& d, const SliceSpec& spec) {
    if (d.s() != spec.s)
        throw ValidationError("distance matrix alphabet differs from slice");
    for (int v : d.entries())
        if (v < 0) throw ValidationError("infeasible distance: negative entry");
    for (int sigma = 0; sigma < spec.s; ++sigma) {
        auto r = d.row(sigma);
        auto c = d.col(sigma);
        if (std::accumulate(r.begin(), r.end(), 0) != spec.counts[sigma] ||
            std::accumulate(c.begin(), c.end(), 0) != spec.counts[sigma])
            throw ValidationError(
                "distance matrix " + d.str() +
                " is not doubly stochastic after scaling by the slice counts");
    }
}

}  // namespace

WalkMatrix::WalkMatrix(std::shared_ptr<const SliceIndex> index,
                       Eigen::MatrixXd real)
    : index_(std::move(index)), real_(std::move(real)) {}

WalkMatrix::WalkMatrix(std::shared_ptr<const SliceIndex> index,
                       std::vector<std::int64_t> numerators,
                       std::int64_t denominator)
    : index_(std::move(index)), num_(std::move(numerators)), den_(denominator) {
    real_ = to_real(num_, den_, index_->size());
}

Rational WalkMatrix::entry(std::size_t a, std::size_t b) const {
    if (!exact()) throw ValidationError("walk has no exact representation");
    return Rational(numerator(a, b), den_);
}

bool WalkMatrix::is_doubly_stochastic_exact() const {
    if (!exact()) throw ValidationError("walk has no exact representation");
    const std::size_t n = size();
    std::vector<std::int64_t> col(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        std::int64_t row = 0;
        for (std::size_t b = 0; b < n; ++b) {
            std::int64_t v = numerator(a, b);
            if (v < 0) return false;
            row = checked_add(row, v);
            col[b] = checked_add(col[b], v);
        }
        if (row != den_) return false;
    }
    return std::all_of(col.begin(), col.end(),
                       [&](std::int64_t c) { return c == den_; });
}

bool WalkMatrix::is_symmetric_exact() const {
    if (!exact()) throw ValidationError("walk has no exact representation");
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (numerator(a, b) != numerator(b, a)) return false;
    return true;
}

bool WalkMatrix::is_symmetric(double tol) const {
    if (exact()) return is_symmetric_exact();
    return (real_ - real_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

WalkMatrix WalkMatrix::transpose() const {
    std::vector<Term> t;
    for (const auto& term : terms_) t.push_back({term.weight, term.delta.transpose()});
    if (exact()) {
        const std::size_t n = size();
        std::vector<std::int64_t> tn(num_.size());
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) tn[b * n + a] = num_[a * n + b];
        WalkMatrix w(index_, std::move(tn), den_);
        w.set_terms(t);
        return w;
    }
    WalkMatrix w(index_, Eigen::MatrixXd(real_.transpose()));
    w.set_terms(t);
    return w;
}

WalkMatrix WalkMatrix::perturbed(std::size_t a, std::size_t b,
                                 std::int64_t delta) const {
    if (exact()) {
        auto n = num_;
        n[a * size() + b] += delta;
        return WalkMatrix(index_, std::move(n), den_);
    }
    Eigen::MatrixXd r = real_;
    r(a, b) += double(delta);
    return WalkMatrix(index_, std::move(r));
}

std::uint64_t dense_cap() {
    if (std::getenv("MULTISLICE_BUDGET")) return capacity_cap();
    return 4000;
}

std::shared_ptr<const SliceIndex> make_index(const SliceSpec& spec) {
    spec.validate();
    require_within_cap(slice_size(spec), "slice index", dense_cap());
    return std::make_shared<const SliceIndex>(spec);
}

BigInt distance_support_size(const DistanceMatrix& d) {
    BigInt r = 1;
    for (int sigma = 0; sigma < d.s(); ++sigma) r *= big_multinomial(d.row(sigma));
    return r;
}

void for_each_at_distance(const Point& a, const DistanceMatrix& d,
                          const std::function<void(const Point&)>& fn) {
    const int s = d.s();
    std::vector<std::vector<int>> pos(s);
    for (std::size_t i = 0; i < a.size(); ++i) pos[a[i]].push_back(int(i));
    std::vector<std::vector<std::uint8_t>> fill(s);
    for (int sigma = 0; sigma < s; ++sigma) {
        for (int tau = 0; tau < s; ++tau)
            fill[sigma].insert(fill[sigma].end(), d(sigma, tau),
                               static_cast<std::uint8_t>(tau));
        if (fill[sigma].size() != pos[sigma].size())
            throw ValidationError("point does not match distance row sums");
    }
    Point b(a.size());
    std::function<void(int)> rec = [&](int sigma) {
        if (sigma == s) {
            fn(b);
            return;
        }
        auto letters = fill[sigma];
        do {
            for (std::size_t t = 0; t < letters.size(); ++t)
                b[pos[sigma][t]] = letters[t];
            rec(sigma + 1);
        } while (std::next_permutation(letters.begin(), letters.end()));
    };
    rec(0);
}

WalkMatrix walk_from_terms(std::shared_ptr<const SliceIndex> index,
                           const std::vector<WalkMatrix::Term>& terms) {
    const SliceSpec& spec = index->spec();
    if (terms.empty()) throw ValidationError("walk needs at least one term");
    Rational total(0);
    std::int64_t L = 1;
    std::vector<std::int64_t> supports;
    for (const auto& t : terms) {
        check_same_margins(t.delta, spec);
        if (t.weight < Rational(0)) throw ValidationError("negative term weight");
        total += t.weight;
        BigInt D = distance_support_size(t.delta);
        if (D > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
            throw CapacityError("support size overflows exact arithmetic");
        supports.push_back(static_cast<std::int64_t>(D));
        L = lcm_checked(L, checked_mul(t.weight.denominator(), supports.back()));
    }
    if (total != Rational(1)) throw ValidationError("term weights must sum to 1");
    const std::size_t N = index->size();
    require_dense(N, "walk construction");
    std::vector<std::int64_t> num(N * N, 0);
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        const auto& t = terms[ti];
        if (t.weight == Rational(0)) continue;
        std::int64_t inc = checked_mul(
            t.weight.numerator(), L / (t.weight.denominator() * supports[ti]));
        for (std::size_t a = 0; a < N; ++a) {
            std::int64_t* row = &num[a * N];
            for_each_at_distance(index->point(a), t.delta, [&](const Point& b) {
                row[index->index_of(b)] += inc;
            });
        }
    }
    WalkMatrix w(std::move(index), std::move(num), L);
    w.set_terms(terms);
    return w;
}

WalkMatrix walk_from_distance(const DistanceMatrix& d, const SliceSpec& spec) {
    check_same_margins(d, spec);
    return walk_from_terms(make_index(spec), {{Rational(1), d}});
}

WalkMatrix identity_walk(const SliceSpec& spec) {
    std::vector<int> e(spec.s * spec.s, 0);
    for (int i = 0; i < spec.s; ++i) e[i * spec.s + i] = spec.counts[i];
    return walk_from_distance(DistanceMatrix(spec.s, e), spec);
}

WalkMatrix walk_odlsz(int s, int n) {
    SliceSpec spec = SliceSpec::balanced(s, n);
    const int m = n / s;
    std::vector<WalkMatrix::Term> terms;
    std::vector<int> f(s, 0);
    const std::int64_t sm = ipow(s, m);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == s - 1) {
            f[i] = left;
            std::vector<int> e(s * s);
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) e[r * s + c] = f[((c - r) % s + s) % s];
            auto alpha = static_cast<std::int64_t>(multinomial_u64(f));
            terms.push_back({Rational(alpha, sm), DistanceMatrix(s, e)});
            return;
        }
        for (int v = 0; v <= left; ++v) {
            f[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, m);
    return walk_from_terms(make_index(spec), terms);
}

std::vector<WalkMatrix::Term> subgrid_distance_law(int s, int k) {
    SliceSpec sub = SliceSpec::balanced(s, s * k);
    auto pts = enumerate_slice(sub);
    std::map<DistanceMatrix, std::int64_t> freq;
    for (const auto& b : pts) ++freq[distance_matrix(pts.front(), b, s)];
    std::vector<WalkMatrix::Term> terms;
    for (const auto& [P, c] : freq)
        terms.push_back({Rational(c, std::int64_t(pts.size())), P});
    return terms;
}

WalkMatrix walk_subgrid_identification(int s, int k) {
    SliceSpec spec = SliceSpec::balanced(s, s * s * k);
    auto law = subgrid_distance_law(s, k);
    for (auto& t : law) t.delta = t.delta.scaled(s);
    return walk_from_terms(make_index(spec), law);
}

WalkMatrix convex_combine(
    const std::vector<std::pair<Rational, WalkMatrix>>& terms) {
    if (terms.empty()) throw ValidationError("convex_combine: no terms");
    Rational total(0);
    bool all_exact = true;
    const auto& spec = terms.front().second.spec();
    for (const auto& [w, m] : terms) {
        if (w < Rational(0)) throw ValidationError("convex_combine: negative weight");
        if (!(m.spec() == spec))
            throw ValidationError("convex_combine: slice mismatch");
        total += w;
        all_exact = all_exact && m.exact();
    }
    if (total != Rational(1))
        throw ValidationError("convex_combine: weights must sum to 1");
    auto index = terms.front().second.index_ptr();
    const std::size_t N = index->size();

    std::vector<WalkMatrix::Term> merged;
    bool decomposed = true;
    for (const auto& [w, m] : terms) {
        if (m.terms().empty()) decomposed = false;
        for (const auto& t : m.terms()) merged.push_back({w * t.weight, t.delta});
    }

    if (all_exact) {
        std::int64_t L = 1;
        for (const auto& [w, m] : terms)
            L = lcm_checked(L, checked_mul(w.denominator(), m.denominator()));
        std::vector<std::int64_t> num(N * N, 0);
        for (const auto& [w, m] : terms) {
            std::int64_t scale =
                checked_mul(w.numerator(), L / (w.denominator() * m.denominator()));
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < N; ++b)
                    num[a * N + b] = checked_add(num[a * N + b],
                                                 checked_mul(scale, m.numerator(a, b)));
        }
        WalkMatrix out(index, std::move(num), L);
        if (decomposed) out.set_terms(merged);
        return out;
    }
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(N, N);
    for (const auto& [w, m] : terms) r += boost::rational_cast<double>(w) * m.real();
    WalkMatrix out(index, std::move(r));
    if (decomposed) out.set_terms(merged);
    return out;
}

SpectralReport spectral_report(const WalkMatrix& w, double cluster_tol) {
    require_dense(w.size(), "spectral_report");
    SpectralReport rep;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(w.real());
    const auto& sv = svd.singularValues();
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
    std::sort(rep.singular_values.rbegin(), rep.singular_values.rend());
    rep.sigma2 = rep.singular_values.size() > 1 ? rep.singular_values[1] : 0.0;
    rep.symmetric = w.is_symmetric();

    std::vector<double> spectrum;
    if (rep.symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.real(),
                                                          Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
        std::sort(rep.eigenvalues.rbegin(), rep.eigenvalues.rend());
        const std::size_t N = rep.eigenvalues.size();
        rep.lambda2 = N > 1 ? std::max(std::abs(rep.eigenvalues[1]),
                                       std::abs(rep.eigenvalues[N - 1]))
                            : 0.0;
        spectrum = rep.eigenvalues;
    } else {
        rep.lambda2 = rep.sigma2;
        spectrum = rep.singular_values;
    }
    for (double v : spectrum) {
        if (!rep.multiplicities.empty() &&
            std::abs(rep.multiplicities.back().first - v) <= cluster_tol) {
            ++rep.multiplicities.back().second;
        } else {
            rep.multiplicities.emplace_back(v, 1);
        }
    }
    return rep;
}

bool respects_symmetries(const WalkMatrix& w, SymmetryMode mode, int trials,
                         std::uint64_t seed) {
    const auto& idx = w.index();
    const int n = idx.spec().n;
    const std::size_t N = w.size();
    auto same = [&](std::size_t a, std::size_t b, std::size_t pa, std::size_t pb) {
        if (w.exact()) return w.numerator(a, b) == w.numerator(pa, pb);
        return std::abs(w.real()(a, b) - w.real()(pa, pb)) <= 1e-12;
    };
    if (mode == SymmetryMode::exhaustive) {
        if (n > 7)
            throw CapacityError("exhaustive symmetry check supports n <= 7");
        std::vector<int> pi(n);
        std::iota(pi.begin(), pi.end(), 0);
        std::vector<std::size_t> image(N);
        do {
            for (std::size_t a = 0; a < N; ++a)
                image[a] = idx.index_of(apply_permutation(pi, idx.point(a)));
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < N; ++b)
                    if (!same(a, b, image[a], image[b])) return false;
        } while (std::next_permutation(pi.begin(), pi.end()));
        return true;
    }
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (int t = 0; t < trials; ++t) {
        auto pi = random_permutation(n, rng);
        std::size_t a = pick(rng);
        std::size_t b = pick(rng);
        if (t % 2 == 0) {
            std::vector<std::size_t> support;
            for (std::size_t c = 0; c < N; ++c)
                if (w.real()(a, c) != 0.0) support.push_back(c);
            if (!support.empty())
                b = support[std::uniform_int_distribution<std::size_t>(
                    0, support.size() - 1)(rng)];
        }
        std::size_t pa = idx.index_of(apply_permutation(pi, idx.point(a)));
        std::size_t pb = idx.index_of(apply_permutation(pi, idx.point(b)));
        if (!same(a, b, pa, pb)) return false;
    }
    return true;
}

double frobenius_norm(const WalkMatrix& w) {
    if (w.exact()) {
        BigInt acc = 0;
        const std::size_t N = w.size();
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) {
                BigInt v = w.numerator(a, b);
                acc += v * v;
            }
        long double num = static_cast<long double>(acc);
        long double den = static_cast<long double>(w.denominator());
        return double(std::sqrt(num) / den);
    }
    return w.real().norm();
}

namespace {

std::vector<std::vector<int>> subsets_up_to(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty()) out.push_back(cur);
        if (int(cur.size()) == k) return;
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

void check_subset_budget(int n, int s, int k) {
    BigInt total = 0;
    for (int j = 1; j <= k; ++j) total += big_binomial(n, j) * BigInt(ipow(s, j));
    require_within_cap(total, "independence_report subsets");
}

}  // namespace

IndependenceReport independence_report(const WalkMatrix& w, int k) {
    const auto& spec = w.spec();
    if (k < 1 || k > spec.n) throw ValidationError("independence_report: bad k");
    check_subset_budget(spec.n, spec.s, k);
    const auto subsets = subsets_up_to(spec.n, k);
    const std::size_t N = w.size();
    IndependenceReport rep;
    rep.k = k;
    std::vector<double> mass;
    std::vector<std::size_t> support;
    std::vector<double> weight;
    for (std::size_t a = 0; a < N; ++a) {
        support.clear();
        weight.clear();
        for (std::size_t b = 0; b < N; ++b) {
            double v = w.exact() ? double(w.numerator(a, b)) : w.real()(a, b);
            if (v != 0.0) {
                support.push_back(b);
                weight.push_back(v);
            }
        }
        const double scale = w.exact() ? double(w.denominator()) : 1.0;
        for (const auto& T : subsets) {
            const std::size_t cells = std::size_t(ipow(spec.s, T.size()));
            mass.assign(cells, 0.0);
            for (std::size_t t = 0; t < support.size(); ++t) {
                const Point& b = w.index().point(support[t]);
                std::size_t key = 0;
                for (int i : T) key = key * spec.s + b[i];
                mass[key] += weight[t];
            }
            const double u = 1.0 / double(cells);
            double sd = 0.0;
            for (double m : mass) sd += std::abs(m / scale - u);
            sd *= 0.5;
            if (sd > rep.epsilon) {
                rep.epsilon = sd;
                rep.worst_row = a;
                rep.worst_subset = T;
            }
        }
    }
    return rep;
}

IndependenceReport independence_closed_form(const WalkMatrix& w, int k) {
    const auto& spec = w.spec();
    if (w.terms().empty())
        throw ValidationError("walk has no distance-matrix decomposition");
    if (k < 1 || k > spec.n) throw ValidationError("independence_report: bad k");
    check_subset_budget(spec.n, spec.s, k);
    const int s = spec.s;
    const auto subsets = subsets_up_to(spec.n, k);

    std::vector<double> weights, denoms;
    for (const auto& t : w.terms()) {
        weights.push_back(boost::rational_cast<double>(t.weight));
        double d = 1.0;
        for (int sigma = 0; sigma < s; ++sigma) d *= multinomial_double(t.delta.row(sigma));
        denoms.push_back(d);
    }
    // The marginal depends on a only through a|_T; memoise on that pattern.
    std::map<std::vector<std::uint8_t>, double> memo;
    IndependenceReport rep;
    rep.k = k;
    for (std::size_t a = 0; a < w.size(); ++a) {
        const Point& pa = w.index().point(a);
        for (const auto& T : subsets) {
            std::vector<std::uint8_t> pattern;
            for (int i : T) pattern.push_back(pa[i]);
            auto it = memo.find(pattern);
            double sd;
            if (it != memo.end()) {
                sd = it->second;
            } else {
                const int t = int(T.size());
                const std::size_t cells = std::size_t(ipow(s, t));
                std::vector<int> tcount(s, 0);
                for (auto v : pattern) ++tcount[v];
                sd = 0.0;
                for (std::size_t key = 0; key < cells; ++key) {
                    // e[σ][τ] = letters τ of b on T ∩ a^{-1}(σ)
                    std::vector<int> e(s * s, 0);
                    std::size_t rest = key;
                    for (int j = t - 1; j >= 0; --j) {
                        int tau = int(rest % s);
                        rest /= s;
                        ++e[pattern[j] * s + tau];
                    }
                    double prob = 0.0;
                    for (std::size_t ti = 0; ti < weights.size(); ++ti) {
                        const auto& P = w.terms()[ti].delta;
                        double num = 1.0;
                        for (int sigma = 0; sigma < s && num != 0.0; ++sigma) {
                            std::vector<int> parts(s);
                            for (int tau = 0; tau < s; ++tau)
                                parts[tau] = P(sigma, tau) - e[sigma * s + tau];
                            num *= multinomial_double(parts);
                        }
                        prob += weights[ti] * num / denoms[ti];
                    }
                    sd += std::abs(prob - 1.0 / double(cells));
                }
                sd *= 0.5;
                memo.emplace(pattern, sd);
            }
            if (sd > rep.epsilon) {
                rep.epsilon = sd;
                rep.worst_row = a;
                rep.worst_subset = T;
            }
        }
    }
    return rep;
}

MixingCheck expander_mixing_check(const WalkMatrix& w,
                                  const std::vector<bool>& in_set,
                                  double lambda2) {
    const std::size_t N = w.size();
    if (in_set.size() != N) throw ValidationError("subset mask size mismatch");
    double joint = 0.0;
    std::size_t u = 0;
    for (std::size_t a = 0; a < N; ++a) {
        if (!in_set[a]) continue;
        ++u;
        for (std::size_t b = 0; b < N; ++b)
            if (in_set[b]) joint += w.real()(a, b);
    }
    MixingCheck r;
    const double frac = double(u) / double(N);
    r.lhs = joint / double(N);
    r.rhs = frac * frac + lambda2 * frac;
    r.holds = r.lhs <= r.rhs + 1e-10;
    return r;
}

MixingCheck expander_mixing_check(const WalkMatrix& w,
                                  const std::vector<bool>& in_set) {
    if (!w.is_symmetric())
        throw ValidationError("expander mixing check needs a symmetric walk");
    return expander_mixing_check(w, in_set, spectral_report(w).lambda2);
}

}  // namespace multislice
