#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "multislice/junta.hpp"
#include "multislice/tableaux.hpp"
#include "multislice/walks.hpp"

namespace multislice {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

std::string rational_to_string(const Rational& q);

Json spectral_to_json(int s, int n, const SpectralReport& r);
Json independence_to_json(const IndependenceReport& r);

Json tableau_to_json(const Tableau& t);
Tableau tableau_from_json(const Json& j);

struct ChiReport {
    Partition lambda;
    Tableau tableau;
    double norm = 0.0;   // normalised slice norm
    Rational mean;       // slice mean
    double gram_det = 0.0;
};
Json chi_report_to_json(const ChiReport& r);

Json junta_to_json(const JuntaPolynomial& p);
JuntaPolynomial junta_from_json(const Json& j);

struct ExperimentRow {
    std::string scenario;
    int s = 0, n = 0, d = 0;
    std::string group;
    double error_rate = 0.0;
    std::string k_or_scheme;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double queries_per_call = 0.0;
    double wall_time_ms = 0.0;
};
std::string csv_header();
std::string to_csv(const ExperimentRow& row);

struct ListExperimentResult {
    std::string scenario;
    Json params;
    std::vector<JuntaPolynomial> planted;
    std::int64_t recovered = 0;
    std::int64_t trials = 0;
    std::uint64_t total_queries = 0;
};
Json list_result_to_json(const ListExperimentResult& r);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = 1.96);

}  // namespace multislice
