#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "multislice/correction.hpp"
#include "multislice/listcorr.hpp"
#include "multislice/serialize.hpp"
#include "multislice/tableaux.hpp"
#include "multislice/walks.hpp"

using namespace multislice;

namespace {

constexpr const char* kVersion = "0.1.0";

// Every option of a subcommand is stored as text; typed access validates.
class Params {
public:
    explicit Params(CLI::App* app) : app_(app) {}

    void add(const std::string& key, const std::string& def, const std::string& help) {
        values_[key] = def;
        app_->add_option("--" + key, values_[key], help)->capture_default_str();
    }

    // Config file entries fill options that were not given on the command line.
    void merge_config(const std::map<std::string, std::string>& cfg) {
        for (const auto& [key, value] : cfg) {
            auto it = values_.find(key);
            if (it == values_.end())
                throw ValidationError("config key '" + key + "' is not an option of '" +
                                      app_->get_name() + "'");
            if (app_->get_option("--" + key)->count() == 0) it->second = value;
        }
    }

    const std::string& str(const std::string& key) const { return values_.at(key); }

    long long integer(const std::string& key) const {
        const auto& v = str(key);
        try {
            std::size_t pos = 0;
            long long r = std::stoll(v, &pos);
            if (pos == v.size()) return r;
        } catch (const std::exception&) {
        }
        throw ValidationError("--" + key + " expects an integer, got '" + v + "'");
    }

    double real(const std::string& key) const {
        const auto& v = str(key);
        try {
            std::size_t pos = 0;
            double r = std::stod(v, &pos);
            if (pos == v.size() && std::isfinite(r)) return r;
        } catch (const std::exception&) {
        }
        throw ValidationError("--" + key + " expects a number, got '" + v + "'");
    }

    std::vector<int> int_list(const std::string& key) const {
        std::vector<int> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                int v = std::stoi(item, &pos);
                if (pos != item.size()) throw std::invalid_argument(item);
                out.push_back(v);
            } catch (const std::exception&) {
                throw ValidationError("--" + key + " expects a comma-separated integer list");
            }
        }
        if (out.empty()) throw ValidationError("--" + key + " is empty");
        return out;
    }

    Json to_json() const {
        Json j = Json::object();
        for (const auto& [k, v] : values_) j[k] = v;
        return j;
    }

private:
    CLI::App* app_;
    std::map<std::string, std::string> values_;
};

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::map<std::string, std::string> cfg;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t\r");
        auto e = t.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        cfg[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

AbelianGroupSpec parse_group(const std::string& text) {
    std::vector<std::int64_t> factors;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        require(part.size() >= 2 && (part[0] == 'Z' || part[0] == 'z'),
                "group must look like Z4 or Z2xZ3, got '" + text + "'");
        try {
            std::int64_t m = std::stoll(part.substr(1));
            require(m >= 2, "cyclic factor must be at least 2");
            factors.push_back(m);
        } catch (const std::invalid_argument&) {
            throw ValidationError("bad group factor '" + part + "'");
        }
    }
    require(!factors.empty(), "empty group");
    return AbelianGroupSpec(factors);
}

DistanceMatrix parse_delta(const std::string& text, int s, int n) {
    if (text == "balanced") {
        require(n % (s * s) == 0, "balanced delta needs s^2 | n");
        return DistanceMatrix(s, std::vector<int>(s * s, n / (s * s)));
    }
    std::vector<int> e;
    std::stringstream rows(text);
    std::string row;
    int nrows = 0;
    while (std::getline(rows, row, '/')) {
        ++nrows;
        std::stringstream cols(row);
        std::string c;
        int ncols = 0;
        while (std::getline(cols, c, ',')) {
            try {
                e.push_back(std::stoi(c));
            } catch (const std::exception&) {
                throw ValidationError("bad delta entry '" + c + "'");
            }
            ++ncols;
        }
        require(ncols == s, "delta rows need s entries");
    }
    require(nrows == s, "delta needs s rows separated by '/'");
    return DistanceMatrix(s, e);
}

Point random_point(int s, int n, Rng& rng) {
    Point x(n);
    std::uniform_int_distribution<int> letter(0, s - 1);
    for (auto& v : x) v = std::uint8_t(letter(rng));
    return x;
}

Json interval_json(std::int64_t succ, std::int64_t trials) {
    auto [lo, hi] = wilson_interval(succ, trials);
    return {{"successes", succ},
            {"trials", trials},
            {"rate", trials ? double(succ) / trials : 0.0},
            {"wilson95", {lo, hi}}};
}

struct Artifact {
    Json results = Json::object();
    std::vector<std::string> csv_rows;  // without header
    std::string csv_header;
};

// ---- subcommands ---------------------------------------------------------

Artifact run_spectra(const Params& p) {
    const std::string family = p.str("family");
    const int s = int(p.integer("s"));
    const int kind = int(p.integer("independence"));
    require(s >= 2, "--s must be at least 2");
    Artifact a;
    a.csv_header = "schema_version,family,s,n,size,sigma2,lambda2,symmetric,frobenius,independence_k,"
                   "independence_eps,multiplicities";
    a.results["rows"] = Json::array();
    for (int n : p.int_list(family == "subgrid" ? "k" : "n")) {
        WalkMatrix w = [&] {
            if (family == "wdelta") {
                auto spec = SliceSpec::balanced(s, n);
                auto d = parse_delta(p.str("delta"), s, n);
                auto rows_ok = true;
                for (int i = 0; i < s; ++i) {
                    auto r = d.row(i), c = d.col(i);
                    int rs = 0, cs = 0;
                    for (int v : r) rs += v;
                    for (int v : c) cs += v;
                    rows_ok = rows_ok && rs == spec.counts[i] && cs == spec.counts[i];
                }
                require(rows_ok, "delta " + d.str() + " does not have row and column sums n/s = " +
                                     std::to_string(n / s));
                return walk_from_distance(d, spec);
            }
            if (family == "odlsz") return walk_odlsz(s, n);
            if (family == "subgrid") return walk_subgrid_identification(s, n);
            throw ValidationError("--family must be wdelta, odlsz or subgrid");
        }();
        auto rep = spectral_report(w);
        Json row = spectral_to_json(s, w.spec().n, rep);
        row["family"] = family;
        row["frobenius"] = frobenius_norm(w);
        row["size"] = w.size();
        std::string eps_text;
        if (kind > 0) {
            auto ind = independence_report(w, kind);
            row["independence"] = independence_to_json(ind);
            eps_text = std::to_string(ind.epsilon);
        }
        std::ostringstream mult;
        for (std::size_t i = 0; i < rep.multiplicities.size(); ++i)
            mult << (i ? ";" : "") << (std::abs(rep.multiplicities[i].first) < 1e-12 ? 0.0 : rep.multiplicities[i].first)
                 << "x" << rep.multiplicities[i].second;
        std::ostringstream csv;
        csv.precision(12);
        csv << kSchemaVersion << ',' << family << ',' << s << ',' << w.spec().n << ',' << w.size() << ','
            << rep.sigma2 << ',' << rep.lambda2 << ',' << (rep.symmetric ? "true" : "false") << ','
            << frobenius_norm(w) << ',' << kind << ',' << eps_text << ',' << mult.str();
        a.csv_rows.push_back(csv.str());
        a.results["rows"].push_back(row);
    }
    return a;
}

Artifact run_distance(const Params& p) {
    const std::string mode = p.str("mode");
    const int n = int(p.integer("n")), d = int(p.integer("d"));
    require(n >= 1 && d >= 0, "--n must be positive and --d non-negative");
    Artifact a;
    Json& r = a.results;
    r["mode"] = mode;
    if (mode == "grid") {
        const int q = int(p.integer("p"));
        require(is_prime(q), "--p must be prime");
        auto m = field_poly_min_nonzero_fraction(q, n, d, SearchMode::exhaustive);
        const int capped = std::min(d, n * (q - 1));
        r["min_fraction"] = rational_to_string(m.grid);
        r["delta"] = rational_to_string(odlsz_delta(q, capped));
        r["degree_used"] = capped;
        if (m.slice) r["min_fraction_slice"] = rational_to_string(*m.slice);
    } else if (mode == "junta") {
        const int s = int(p.integer("s")), q = int(p.integer("p"));
        require(is_prime(q), "--p must be prime");
        r["min_fraction"] = rational_to_string(grid_junta_min_fraction(s, n, d, q));
        r["bound"] = "1/" + std::to_string(ipow(s, unsigned(d)));
    } else if (mode == "multislice") {
        const int s = int(p.integer("s")), q = int(p.integer("p"));
        require(is_prime(q), "--p must be prime");
        SliceSpec spec = p.str("counts").empty() ? SliceSpec::balanced(s, n)
                                                 : SliceSpec{s, n, p.int_list("counts")};
        spec.validate();
        auto cm = multislice_min_nonzero(spec, d, q);
        r["counts"] = spec.counts;
        r["min_nonzero_count"] = cm.min_weight;
        r["slice_size"] = slice_size(spec).str();
        r["bound"] = multislice_distance_bound(spec, d).str();
        r["dimension"] = cm.dimension;
    } else {
        throw ValidationError("--mode must be grid, junta or multislice");
    }
    a.csv_header = "schema_version,key,value";
    for (auto& [k, v] : r.items()) {
        std::string text = v.is_string() ? v.get<std::string>() : v.dump();
        if (text.find(',') != std::string::npos) text = "\"" + text + "\"";
        a.csv_rows.push_back(std::to_string(kSchemaVersion) + "," + k + "," + text);
    }
    return a;
}

Artifact run_chi(const Params& p) {
    const int s = int(p.integer("s")), n = int(p.integer("n"));
    const int max_l2 = int(p.integer("max-lambda2"));
    auto spec = SliceSpec::balanced(s, n);
    Artifact a;
    a.results["shapes"] = Json::array();
    a.csv_header = "schema_version,lambda,tableau,norm,mean,gram_det";
    const auto mu = balanced_partition(s, n);
    for (const auto& lam : partitions_dominating(mu)) {
        if (lam.size() < 2 || (max_l2 >= 0 && lam[1] > max_l2)) continue;
        std::vector<std::vector<long long>> vecs;
        auto tabs = enumerate_ssyt(lam, mu);
        for (const auto& T : tabs) vecs.push_back(chi_vector(T, s));
        const double g = gram_determinant(vecs);
        Json shape = {{"lambda", lam}, {"gram_det", g}, {"column_group_order", column_group_order(lam)},
                      {"tableaux", Json::array()}};
        for (std::size_t i = 0; i < tabs.size(); ++i) {
            long long sum = 0;
            for (auto v : vecs[i]) sum += v;
            ChiReport rep{lam, tabs[i], std::sqrt(slice_inner_product(vecs[i], vecs[i])),
                          Rational(sum, std::int64_t(vecs[i].size())), g};
            shape["tableaux"].push_back(chi_report_to_json(rep));
            std::ostringstream csv;
            csv << kSchemaVersion << ",\"" << Json(lam).dump() << "\",\"" << tableau_to_json(tabs[i]).dump()
                << "\"," << rep.norm << ',' << rational_to_string(rep.mean) << ',' << g;
            a.csv_rows.push_back(csv.str());
        }
        a.results["shapes"].push_back(shape);
    }
    a.results["slice_size"] = slice_size(spec).str();
    return a;
}

// Runs fn(trial) for every trial on `workers` threads; results are indexed by trial.
std::vector<int> run_trials(int trials, int workers, const std::function<int(int)>& fn) {
    std::vector<int> out(trials, 0);
    workers = std::max(1, std::min(workers, trials));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int t = w; t < trials; t += workers) out[t] = fn(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

Artifact run_correct(const Params& p, std::uint64_t seed) {
    const std::string alg = p.str("alg");
    const int s = int(p.integer("s")), d = int(p.integer("d")), n = int(p.integer("n"));
    const int trials = int(p.integer("trials")), workers = int(p.integer("workers"));
    const double rate = p.real("rate");
    require(trials >= 1, "--trials must be positive");
    require(rate >= 0 && rate < 1, "--rate must lie in [0,1)");
    require(s >= 2 && n >= 1 && d >= 0, "need s >= 2, n >= 1, d >= 0");

    AbelianGroupSpec G = alg == "torsion" ? AbelianGroupSpec::cyclic(p.integer("M")) : parse_group(p.str("group"));
    Rng setup = derive_stream(seed, "correct-setup", 0);
    const JuntaPolynomial P = random_junta_sum(s, n, d, G, setup);

    std::function<GroupElement(Oracle&, const Point&, Rng&)> corrector;
    std::string k_text;
    if (alg == "subgrid") {
        const int k = int(p.integer("k"));
        require(k >= 1 && k <= n, "--k must lie in [1, n]");
        require_within_cap(BigInt(ipow(s, unsigned(k))), "subgrid table");
        corrector = [k, d](Oracle& f, const Point& x, Rng& rng) { return subgrid_error_reduce(f, x, k, d, rng); };
        k_text = "k=" + std::to_string(k);
    } else if (alg == "torsion") {
        auto scheme = std::make_shared<TorsionScheme>(torsion_scheme(s, d, p.integer("M")));
        require(n >= s * scheme->k, "torsion corrector needs n >= s*k = " + std::to_string(s * scheme->k));
        require_within_cap(big_binomial(unsigned(s * scheme->k), unsigned(scheme->k)), "torsion queries");
        corrector = [scheme](Oracle& f, const Point& x, Rng& rng) { return torsion_correct(f, x, *scheme, rng); };
        k_text = "M=" + p.str("M") + ";k=" + std::to_string(scheme->k);
    } else if (alg == "base" || alg == "recursive") {
        const double rho = p.str("rho").empty() ? 1.0 / (10 * s) : p.real("rho");
        require(rho > 0 && rho < 1, "--rho must lie in (0,1)");
        auto gadget = std::make_shared<Gadget>(build_gadget(n, s, d, rho, setup));
        const int depth = int(p.integer("depth"));
        if (alg == "base")
            corrector = [gadget](Oracle& f, const Point& x, Rng& rng) { return base_reduce(f, x, *gadget, rng); };
        else
            corrector = [gadget, depth](Oracle& f, const Point& x, Rng& rng) {
                return recursive_reduce(f, x, depth, *gadget, rng);
            };
        k_text = "gadget_k=" + std::to_string(gadget->k) + ";q=" + std::to_string(gadget->q());
    } else {
        throw ValidationError("--alg must be subgrid, torsion, base or recursive");
    }

    std::vector<std::uint64_t> queries(trials, 0);
    auto t0 = std::chrono::steady_clock::now();
    auto ok = run_trials(trials, workers, [&](int t) {
        Rng rng = derive_stream(seed, "correct-" + alg, std::uint64_t(t));
        NoisyOracle f(P, rate, seed);
        Point x = random_point(s, n, rng);
        int good = corrector(f, x, rng) == P.evaluate(x);
        queries[t] = f.queries();
        return good;
    });
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::int64_t succ = 0;
    std::uint64_t total_q = 0;
    for (int t = 0; t < trials; ++t) {
        succ += ok[t];
        total_q += queries[t];
    }
    ExperimentRow row{alg, s, n, d, G.str(), rate, k_text, trials, succ, double(total_q) / trials, ms};
    Artifact a;
    a.csv_header = "schema_version," + csv_header();
    a.csv_rows.push_back(std::to_string(kSchemaVersion) + "," + to_csv(row));
    a.results = interval_json(succ, trials);
    a.results["algorithm"] = alg;
    a.results["group"] = G.str();
    a.results["parameters"] = k_text;
    a.results["queries_per_call"] = double(total_q) / trials;
    a.results["truth"] = junta_to_json(P);
    return a;
}

Artifact run_list_correct(const Params& p, std::uint64_t seed) {
    const int n = int(p.integer("n")), trials = int(p.integer("trials")), checks = int(p.integer("checks"));
    ListCorrectionParams lp{int(p.integer("d")), p.real("eps"), int(p.integer("k")), int(p.integer("ell")),
                            int(p.integer("corrector-k"))};
    const int s = 2;
    const double split = p.real("split");
    require(trials >= 1 && checks >= 1, "--trials and --checks must be positive");
    require(lp.eps > 0 && lp.eps < 1, "--eps must lie in (0,1)");
    require(split >= 0 && split <= 1, "--split must lie in [0,1]");
    require(lp.k <= n && lp.corrector_k <= n, "subgrid dimensions must not exceed n");
    auto G = AbelianGroupSpec::cyclic(2);
    ListExperimentResult res;
    res.scenario = "planted-two-codewords";
    res.params = p.to_json();
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_stream(seed, "list-correct", std::uint64_t(t));
        JuntaPolynomial P1 = random_junta_sum(s, n, lp.d, G, rng), P2 = P1;
        while ((P1 - P2).degree() <= 0) P2 = random_junta_sum(s, n, lp.d, G, rng);
        const std::uint64_t salt = rng();
        const auto threshold = std::uint64_t(split * 18446744073709551615.0);
        FunctionOracle f(s, n, G, [&](const Point& x) {
            GroupElement v1 = P1.evaluate(x), v2 = P2.evaluate(x);
            if (v1 == v2) return v1;
            std::uint64_t h = salt;
            for (auto v : x) h = splitmix64(h ^ v);
            return h < threshold ? v1 : v2;
        });
        auto lc = local_list_correct(f, lp, rng);
        std::vector<Point> xs;
        for (int i = 0; i < checks; ++i) xs.push_back(random_point(s, n, rng));
        bool got1 = false, got2 = false;
        for (auto& corr : lc.correctors) {
            bool m1 = true, m2 = true;
            for (const auto& x : xs) {
                auto v = corr(x, rng);
                m1 = m1 && v == P1.evaluate(x);
                m2 = m2 && v == P2.evaluate(x);
            }
            got1 = got1 || m1;
            got2 = got2 || m2;
        }
        if (t == 0) res.planted = {P1, P2};
        res.recovered += got1 && got2;
        ++res.trials;
        res.total_queries += f.queries();
    }
    Artifact a;
    a.results = list_result_to_json(res);
    a.results["success"] = interval_json(res.recovered, res.trials);
    a.csv_header = "schema_version,scenario,trials,recovered,rate,total_queries";
    a.csv_rows.push_back(std::to_string(kSchemaVersion) + "," + res.scenario + "," + std::to_string(res.trials) +
                         "," + std::to_string(res.recovered) + "," +
                         std::to_string(double(res.recovered) / res.trials) + "," +
                         std::to_string(res.total_queries));
    return a;
}

Artifact run_sampling(const Params& p, std::uint64_t seed) {
    const int s = int(p.integer("s")), n = int(p.integer("n")), k = int(p.integer("k"));
    const int trials = int(p.integer("trials"));
    const double eps = p.real("eps"), eta = p.real("eta");
    require(p.str("set") == "random", "--set supports only 'random'");
    require(k >= 1 && k <= n && trials >= 1, "need 1 <= k <= n and trials >= 1");
    require_within_cap(BigInt(ipow(s, unsigned(k))), "subgrid enumeration");
    auto rep = subgrid_sampling_experiment(s, n, k, eps, trials, seed);
    auto devs = rep.deviations;
    std::sort(devs.begin(), devs.end());
    auto quant = [&](double q) { return devs[std::min(devs.size() - 1, std::size_t(q * devs.size()))]; };
    const auto exceed = std::int64_t(std::llround(rep.exceed_frequency * trials));
    Artifact a;
    a.results = {{"density", rational_to_string(rep.density)},
                 {"quantiles", {{"0.5", quant(0.5)}, {"0.9", quant(0.9)}, {"0.99", quant(0.99)}, {"max", devs.back()}}},
                 {"eps", eps},
                 {"eta", eta},
                 {"exceed", interval_json(exceed, trials)},
                 {"meets_target", rep.exceed_frequency <= eta}};
    a.csv_header = "schema_version,s,n,k,eps,eta,q50,q90,q99,max,exceed_frequency";
    std::ostringstream csv;
    csv << kSchemaVersion << ',' << s << ',' << n << ',' << k << ',' << eps << ',' << eta << ',' << quant(0.5)
        << ',' << quant(0.9) << ',' << quant(0.99) << ',' << devs.back() << ',' << rep.exceed_frequency;
    a.csv_rows.push_back(csv.str());
    return a;
}

Artifact run_interp(const Params& p, std::uint64_t seed) {
    const int s = int(p.integer("s")), d = int(p.integer("d")), r = int(p.integer("r")), m = int(p.integer("m"));
    Rng rng = derive_stream(seed, "interp-set", 0);
    auto S = build_interpolating_set(s, d, r, m, rng);
    Artifact a;
    Json pts = Json::array();
    a.csv_header = "schema_version,point,coefficient,weighted_mass";
    for (std::size_t i = 0; i < S.points.size(); ++i) {
        std::string bits;
        for (auto b : S.points[i]) bits.push_back(char('0' + b));
        pts.push_back({{"point", bits}, {"coeff", S.coeffs[i]},
                       {"weighted_mass", rational_to_string(S.weighted_mass(S.points[i]))}});
        a.csv_rows.push_back(std::to_string(kSchemaVersion) + "," + bits + "," + std::to_string(S.coeffs[i]) + "," +
                             rational_to_string(S.weighted_mass(S.points[i])));
    }
    a.results = {{"k", S.k()},
                 {"weights", S.weights},
                 {"total_weight", S.total_weight},
                 {"points", pts},
                 {"weight_balanced", S.weight_balanced()},
                 {"interpolates", S.interpolates()}};
    return a;
}

Artifact run_young(const Params& p) {
    const int s = int(p.integer("s"));
    Artifact a;
    a.results["rows"] = Json::array();
    a.csv_header = "schema_version,s,n,slice_size,holds";
    for (int n : p.int_list("n")) {
        auto spec = SliceSpec::balanced(s, n);
        bool ok = young_rule_check(s, n);
        a.results["rows"].push_back({{"n", n}, {"slice_size", slice_size(spec).str()}, {"holds", ok}});
        a.csv_rows.push_back(std::to_string(kSchemaVersion) + "," + std::to_string(s) + "," + std::to_string(n) +
                             "," + slice_size(spec).str() + "," + (ok ? "true" : "false"));
    }
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multislice spectral, distance and local-correction experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    struct Command {
        CLI::App* app;
        std::unique_ptr<Params> params;
        std::string default_format;
    };
    std::map<std::string, Command> commands;
    std::string config_path, out_path, format;
    std::uint64_t seed = 1;

    auto add_command = [&](const std::string& name, const std::string& help, const std::string& fmt) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key=value file; flags override it");
        sub->add_option("--out", out_path, "write the artifact here instead of stdout");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "master seed")->capture_default_str();
        commands[name] = Command{sub, std::make_unique<Params>(sub), fmt};
        return commands[name].params.get();
    };

    auto* sp = add_command("spectra", "spectra of W_delta, W_ODLSZ and subgrid walks", "csv");
    sp->add("family", "wdelta", "wdelta | odlsz | subgrid");
    sp->add("s", "2", "alphabet size");
    sp->add("n", "4", "comma-separated n values");
    sp->add("k", "1", "comma-separated k values (subgrid family)");
    sp->add("delta", "balanced", "'balanced' or rows like 1,1/1,1");
    sp->add("independence", "2", "k for the almost k-wise independence report (0 skips)");

    auto* di = add_command("distance", "exhaustive minimum distances", "json");
    di->add("mode", "grid", "grid (polynomials over F_p) | junta | multislice");
    di->add("p", "2", "prime modulus");
    di->add("s", "2", "alphabet size");
    di->add("n", "2", "number of coordinates");
    di->add("d", "1", "degree");
    di->add("counts", "", "multislice letter counts (default balanced)");

    auto* ch = add_command("chi-vectors", "chi_T vectors on the balanced slice", "json");
    ch->add("s", "2", "alphabet size");
    ch->add("n", "4", "number of coordinates");
    ch->add("max-lambda2", "-1", "skip shapes with lambda_2 above this (-1 keeps all)");

    auto* co = add_command("correct", "unique local correction Monte-Carlo", "json");
    co->add("alg", "subgrid", "subgrid | torsion | base | recursive");
    co->add("s", "2", "alphabet size");
    co->add("n", "32", "number of coordinates");
    co->add("d", "1", "degree");
    co->add("k", "8", "subgrid dimension");
    co->add("group", "Z2", "abelian group, e.g. Z4 or Z2xZ3");
    co->add("M", "2", "torsion exponent (torsion alg, group Z_M)");
    co->add("rate", "0.1", "error rate of the noisy oracle");
    co->add("rho", "", "gadget noise parameter (default 1/(10s))");
    co->add("depth", "1", "recursion depth (recursive alg)");
    co->add("trials", "100", "number of trials");
    co->add("workers", "1", "worker threads");

    auto* li = add_command("list-correct", "planted two-codeword list correction", "json");
    li->add("n", "24", "number of coordinates (s = 2, group Z2)");
    li->add("d", "1", "degree");
    li->add("eps", "0.25", "list-decoding slack");
    li->add("k", "4", "approximator subgrid dimension");
    li->add("ell", "4", "approximator iterations");
    li->add("corrector-k", "4", "unique corrector subgrid dimension");
    li->add("split", "0.5", "fraction of the disagreement set where f follows P1");
    li->add("checks", "3", "random points checked per candidate");
    li->add("trials", "50", "number of trials");

    auto* sa = add_command("sampling", "random subgrid sampling deviations", "json");
    sa->add("s", "2", "alphabet size");
    sa->add("n", "16", "number of coordinates");
    sa->add("k", "10", "subgrid dimension");
    sa->add("eps", "0.2", "deviation threshold");
    sa->add("eta", "0.1", "target exceed probability");
    sa->add("set", "random", "test set T");
    sa->add("trials", "2000", "number of subgrids");

    auto* in = add_command("interp-set", "weight-balanced interpolating set", "json");
    in->add("s", "2", "alphabet size");
    in->add("d", "1", "degree");
    in->add("r", "6", "block size");
    in->add("m", "2", "number of blocks");

    auto* yo = add_command("young-check", "Young's rule dimension identity", "json");
    yo->add("s", "2", "alphabet size");
    yo->add("n", "2,4,6", "comma-separated n values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string name;
    for (auto& [k, c] : commands)
        if (c.app->parsed()) name = k;
    Command& cmd = commands[name];

    try {
        if (!config_path.empty()) {
            auto cfg = read_config(config_path);
            for (const char* global : {"seed", "out", "format"}) {
                auto it = cfg.find(global);
                if (it == cfg.end()) continue;
                if (cmd.app->get_option(std::string("--") + global)->count() == 0) {
                    if (std::string(global) == "seed") {
                        try {
                            seed = std::stoull(it->second);
                        } catch (const std::exception&) {
                            throw ValidationError("config seed must be an unsigned integer");
                        }
                    } else if (std::string(global) == "out") {
                        out_path = it->second;
                    } else {
                        format = it->second;
                    }
                }
                cfg.erase(it);
            }
            cmd.params->merge_config(cfg);
        }
        if (format.empty()) format = cmd.default_format;
        require(format == "json" || format == "csv", "--format must be json or csv");

        auto t0 = std::chrono::steady_clock::now();
        Artifact art;
        const Params& p = *cmd.params;
        if (name == "spectra") art = run_spectra(p);
        else if (name == "distance") art = run_distance(p);
        else if (name == "chi-vectors") art = run_chi(p);
        else if (name == "correct") art = run_correct(p, seed);
        else if (name == "list-correct") art = run_list_correct(p, seed);
        else if (name == "sampling") art = run_sampling(p, seed);
        else if (name == "interp-set") art = run_interp(p, seed);
        else art = run_young(p);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        Json config = p.to_json();
        std::string text;
        if (format == "json") {
            Json record = {{"schema_version", kSchemaVersion}, {"scenario", name},   {"config", config},
                           {"seed", seed},                     {"version", kVersion}, {"wall_time_ms", ms},
                           {"results", art.results}};
            text = record.dump(2) + "\n";
        } else {
            std::ostringstream os;
            os << "# scenario=" << name << " seed=" << seed << " version=" << kVersion << "\n";
            os << "# config=" << config.dump() << "\n";
            os << art.csv_header << "\n";
            for (const auto& r : art.csv_rows) os << r << "\n";
            text = os.str();
        }
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw ValidationError("cannot write " + out_path);
            out << text;
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    }
}
