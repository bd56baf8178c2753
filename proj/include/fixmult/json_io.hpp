#pragma once

// JSON documents for spectra and reports. Exact numbers travel as strings
// ("p/q", "p/q+r/si"); counts are decimal strings.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/lattice.hpp"
#include "fixmult/polyfam.hpp"
#include "fixmult/spectrum.hpp"
#include "fixmult/verifier.hpp"

namespace fixmult {

using json = nlohmann::json;

namespace detail {

inline GaussianRational number_from_json(const json& j)
{
    if (j.is_string())
        return GaussianRational::parse(j.get<std::string>());
    if (j.is_number_integer())
        return GaussianRational(j.get<long long>());
    throw Error(ErrorCode::ParseError, "expected a number string, got " + j.dump());
}

inline std::vector<GaussianRational> numbers_from_json(const json& j, const char* key)
{
    if (!j.is_array())
        throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
    std::vector<GaussianRational> out;
    for (const auto& v : j)
        out.push_back(number_from_json(v));
    return out;
}

inline json numbers_to_json(const std::vector<GaussianRational>& values)
{
    json out = json::array();
    for (const auto& v : values)
        out.push_back(v.to_string());
    return out;
}

} // namespace detail

/// Reads {"d": n, "lambda": [...]} or {"d": n, "mu": [...]}; "d" is
/// optional but must match when present.
inline Spectrum spectrum_from_json(const json& j)
{
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "spectrum document must be a JSON object");
    const bool has_lambda = j.contains("lambda");
    const bool has_mu = j.contains("mu");
    if (has_lambda == has_mu)
        throw Error(ErrorCode::ParseError, "exactly one of \"lambda\" and \"mu\" is required");
    Spectrum s = has_lambda ? Spectrum::from_lambda(detail::numbers_from_json(j["lambda"], "lambda"))
                            : Spectrum::from_mu(detail::numbers_from_json(j["mu"], "mu"));
    if (j.contains("d")) {
        if (!j["d"].is_number_integer() || j["d"].get<long long>() != s.degree())
            throw Error(ErrorCode::ParseError, "\"d\" does not match the number of entries");
    }
    return s;
}

inline json spectrum_to_json(const Spectrum& s)
{
    return json{{"d", s.degree()}, {"lambda", detail::numbers_to_json(s.lambda())}};
}

inline json index_set_to_json(IndexSet set)
{
    json out = json::array();
    for (int i : set.elements())
        out.push_back(i + 1);
    return out;
}

inline json partition_to_json(const BlockPartition& p)
{
    json out = json::array();
    for (IndexSet b : p.blocks())
        out.push_back(index_set_to_json(b));
    return out;
}

inline json lattice_to_json(const Lattice& lat)
{
    json parts = json::array();
    for (const auto& p : lat.partitions())
        parts.push_back(partition_to_json(p));
    json subsets = json::array();
    for (IndexSet z : lat.zero_sum_subsets())
        subsets.push_back(index_set_to_json(z));
    return json{{"d", lat.degree()},
                {"size", lat.partitions().size()},
                {"proper_size", lat.proper_size()},
                {"partitions", std::move(parts)},
                {"zero_sum_subsets", std::move(subsets)}};
}

inline json fiber_report_to_json(const FiberReport& r)
{
    json engines = json::object();
    for (const auto& [name, value] : r.engines)
        engines[name] = value.str();
    return json{{"d", r.d},
                {"s_d", r.s_d.str()},
                {"e_I0", r.e_I0.str()},
                {"mc_count", r.mc_count.str()},
                {"mp_count", r.mp_count ? json(r.mp_count->str()) : json(nullptr)},
                {"kappa_sizes", r.kappa_sizes},
                {"g_w", r.gw},
                {"lattice_size", r.lattice_size},
                {"zero_sum_subsets", r.zero_sum_subsets},
                {"engines", std::move(engines)},
                {"agreement", r.agreement}};
}

inline json polynomial_to_json(const IntPolynomial& p)
{
    json coeffs = json::array();
    for (const auto& c : p.coefficients())
        coeffs.push_back(c.str());
    return coeffs;
}

inline json verification_report_to_json(const VerificationReport& r, bool include_tuples)
{
    json out{{"d", r.d},
             {"status", r.status},
             {"analytic", r.analytic},
             {"found_tuples", r.found_tuples},
             {"expected_tuples", r.expected_tuples},
             {"mc_orbits", r.mc_orbits},
             {"expected_orbits", r.expected_orbits},
             {"max_multiplier_error", r.max_multiplier_error},
             {"max_residual", r.max_residual},
             {"stats",
              {{"starts", r.stats.starts},
               {"converged", r.stats.converged},
               {"collisions", r.stats.collisions},
               {"duplicates", r.stats.duplicates}}},
             {"warnings", r.warnings}};
    if (include_tuples) {
        json tuples = json::array();
        for (const auto& t : r.tuples) {
            json zeta = json::array();
            for (const auto& z : t.zeta)
                zeta.push_back({z.real(), z.imag()});
            tuples.push_back(json{{"zeta", std::move(zeta)}, {"residual", t.residual}});
        }
        out["tuples"] = std::move(tuples);
    }
    return out;
}

} // namespace fixmult
