#include "multislice/serialize.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace multislice {

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

Json spectral_to_json(int s, int n, const SpectralReport& r) {
    Json mult = Json::array();
    for (auto [value, count] : r.multiplicities) mult.push_back({value, count});
    Json j = {{"schema_version", kSchemaVersion},
              {"n", n},
              {"s", s},
              {"sigma", r.singular_values},
              {"sigma2", r.sigma2},
              {"symmetric", r.symmetric},
              {"lambda2", r.lambda2},
              {"multiplicities", mult}};
    if (r.symmetric) j["eigenvalues"] = r.eigenvalues;
    return j;
}

Json independence_to_json(const IndependenceReport& r) {
    return {{"k", r.k},
            {"epsilon", r.epsilon},
            {"worst_row", r.worst_row},
            {"worst_subset", r.worst_subset}};
}

Json tableau_to_json(const Tableau& t) { return Json(t); }

Tableau tableau_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("tableau must be a JSON array of rows");
    return j.get<Tableau>();
}

Json chi_report_to_json(const ChiReport& r) {
    return {{"lambda", r.lambda},
            {"tableau", tableau_to_json(r.tableau)},
            {"norm", r.norm},
            {"mean", rational_to_string(r.mean)},
            {"gram_det", r.gram_det}};
}

Json junta_to_json(const JuntaPolynomial& p) {
    Json monos = Json::array();
    for (const auto& [a, g] : p.coeffs()) {
        Json support = Json::array();
        for (auto [i, letter] : a) support.push_back({i, letter});
        monos.push_back({{"support", support}, {"coeff", g.components}});
    }
    return {{"s", p.s()}, {"n", p.n()}, {"group", p.group().factors()}, {"monomials", monos}};
}

JuntaPolynomial junta_from_json(const Json& j) {
    try {
        JuntaPolynomial p(j.at("s").get<int>(), j.at("n").get<int>(),
                          AbelianGroupSpec(j.at("group").get<std::vector<std::int64_t>>()));
        for (const auto& m : j.at("monomials")) {
            Monomial a;
            for (const auto& pair : m.at("support"))
                a.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
            p.add_term(a, GroupElement{m.at("coeff").get<std::vector<std::int64_t>>()});
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed junta-sum JSON: ") + e.what());
    }
}

std::string csv_header() {
    return "scenario,s,n,d,group,error_rate,k_or_scheme,trials,successes,queries_per_call,"
           "wall_time_ms";
}

std::string to_csv(const ExperimentRow& row) {
    std::ostringstream os;
    os << row.scenario << ',' << row.s << ',' << row.n << ',' << row.d << ',' << row.group << ','
       << row.error_rate << ',' << row.k_or_scheme << ',' << row.trials << ',' << row.successes
       << ',' << row.queries_per_call << ',' << std::fixed << std::setprecision(3)
       << row.wall_time_ms;
    return os.str();
}

Json list_result_to_json(const ListExperimentResult& r) {
    Json planted = Json::array();
    for (const auto& p : r.planted) planted.push_back(junta_to_json(p));
    double rate = r.trials ? double(r.recovered) / double(r.trials) : 0.0;
    return {{"schema_version", kSchemaVersion},
            {"scenario", r.scenario},
            {"params", r.params},
            {"planted_codewords", planted},
            {"recovered", r.recovered},
            {"trials", r.trials},
            {"success_rate", rate},
            {"total_queries", r.total_queries}};
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = double(trials), p = double(successes) / n, z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace multislice
