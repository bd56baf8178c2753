#pragma once

// Subcommand dispatch for the fixmult tool. Argument parsing lives in
// tools/fixmult.cpp; everything here works on an already-parsed request so it
// can be driven from tests.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/json_io.hpp"
#include "fixmult/lattice.hpp"
#include "fixmult/polyfam.hpp"
#include "fixmult/spectrum.hpp"
#include "fixmult/spectrum_gen.hpp"
#include "fixmult/verifier.hpp"

namespace fixmult::cli {

inline constexpr std::uint64_t default_seed = 20240229;

struct CommandRequest {
    std::string subcommand; ///< count | lattice | polyfam | identity-check | verify | gen
    std::string input;      ///< path to a JSON document, "-" for stdin
    std::string inline_json;
    std::optional<std::uint64_t> seed;
    int max_degree = 16;

    SolverConfig solver;
    bool include_tuples = false;

    // polyfam
    int max_l = 5;
    bool text = false;

    // identity-check: either explicit sizes or an exhaustive range
    std::vector<int> sizes;
    int min_blocks = 2;
    int max_blocks = 6;
    int min_size = 2;
    int max_size = 5;

    // gen
    std::string plan;
    std::vector<int> block_sizes;
    bool exact = false;
    bool complex_values = false;
    bool shuffle = false;
};

struct CommandResult {
    int exit_code = 0;
    json document;
    std::string text; ///< used instead of `document` when non-empty
};

namespace detail {

inline json read_input(const CommandRequest& req, std::istream& in)
{
    std::string content;
    if (!req.inline_json.empty()) {
        content = req.inline_json;
    } else if (req.input == "-" || req.input.empty()) {
        content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(req.input);
        if (!file)
            throw Error(ErrorCode::ParseError, "cannot open " + req.input);
        content.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline CommandResult cmd_count(const CommandRequest& req, std::istream& in)
{
    const Spectrum s = spectrum_from_json(read_input(req, in));
    CountOptions opts;
    opts.lattice.max_degree = req.max_degree;
    const FiberReport r = count_fibers(s, opts);
    json doc = fiber_report_to_json(r);
    doc["lambda"] = spectrum_to_json(s)["lambda"];
    return {r.agreement ? 0 : 2, std::move(doc), {}};
}

inline CommandResult cmd_lattice(const CommandRequest& req, std::istream& in)
{
    const Spectrum s = spectrum_from_json(read_input(req, in));
    LatticeOptions opts;
    opts.max_degree = req.max_degree;
    return {0, lattice_to_json(enumerate_lattice(s, opts)), {}};
}

inline CommandResult cmd_polyfam(const CommandRequest& req)
{
    if (req.max_l < 2)
        throw Error(ErrorCode::InvalidArgument, "--max-l must be at least 2");
    json table = json::array();
    std::ostringstream text;
    for (int l = 2; l <= req.max_l; ++l) {
        for (int k = 1; k <= l; ++k) {
            const IntPolynomial h = h_polynomial(l, k);
            table.push_back(json{{"l", l},
                                 {"k", k},
                                 {"degree", h.degree()},
                                 {"coefficients", polynomial_to_json(h)},
                                 {"polynomial", h.to_string("d")}});
            text << "f_{" << l << "," << k << "} = " << h.to_string("d") << "\n";
        }
    }
    CommandResult out{0, json{{"max_l", req.max_l}, {"table", std::move(table)}}, {}};
    if (req.text)
        out.text = text.str();
    return out;
}

inline CommandResult cmd_identity_check(const CommandRequest& req)
{
    if (!req.sizes.empty()) {
        const BigInt sum = check_vanishing_identity(req.sizes);
        long long d = 0;
        for (int s : req.sizes)
            d += s;
        return {sum.is_zero() ? 0 : 2, json{{"sizes", req.sizes}, {"d", d}, {"sum", sum.str()}, {"ok", sum.is_zero()}},
                {}};
    }
    if (req.min_blocks < 2 || req.max_blocks < req.min_blocks || req.min_size < 2 || req.max_size < req.min_size)
        throw Error(ErrorCode::InvalidArgument, "invalid identity-check range");
    std::size_t checked = 0;
    json failures = json::array();
    // Block sizes as a non-decreasing vector: the sum is symmetric in the sizes.
    std::vector<int> sizes;
    auto walk = [&](auto&& self, int min_next) -> void {
        const int l = static_cast<int>(sizes.size());
        if (l >= req.min_blocks) {
            ++checked;
            const BigInt sum = check_vanishing_identity(sizes);
            if (!sum.is_zero())
                failures.push_back(json{{"sizes", sizes}, {"sum", sum.str()}});
        }
        if (l == req.max_blocks)
            return;
        for (int s = min_next; s <= req.max_size; ++s) {
            sizes.push_back(s);
            self(self, s);
            sizes.pop_back();
        }
    };
    walk(walk, req.min_size);
    const bool ok = failures.empty();
    return {ok ? 0 : 2,
            json{{"min_blocks", req.min_blocks},
                 {"max_blocks", req.max_blocks},
                 {"min_size", req.min_size},
                 {"max_size", req.max_size},
                 {"checked", checked},
                 {"failures", std::move(failures)},
                 {"ok", ok}},
            {}};
}

inline CommandResult cmd_verify(const CommandRequest& req, std::istream& in)
{
    const Spectrum s = spectrum_from_json(read_input(req, in));
    SolverConfig cfg = req.solver;
    cfg.seed = req.seed.value_or(default_seed);
    CountOptions opts;
    opts.lattice.max_degree = req.max_degree;
    const VerificationReport rep = verify(s, cfg, opts);
    json doc = verification_report_to_json(rep, req.include_tuples);
    doc["lambda"] = spectrum_to_json(s)["lambda"];
    return {rep.ok() ? 0 : 2, std::move(doc), {}};
}

inline CommandResult cmd_gen(const CommandRequest& req)
{
    GeneratedSpectrum gen = [&] {
        if (!req.plan.empty()) {
            json plan_json;
            try {
                plan_json = json::parse(req.plan);
            } catch (const json::parse_error& e) {
                throw Error(ErrorCode::ParseError, "invalid --plan at byte " + std::to_string(e.byte));
            }
            if (!plan_json.is_array())
                throw Error(ErrorCode::ParseError, "--plan must be a JSON array of arrays");
            BlockPlan plan;
            for (const auto& block : plan_json)
                plan.push_back(fixmult::detail::numbers_from_json(block, "plan"));
            return generate(plan);
        }
        if (req.block_sizes.empty())
            throw Error(ErrorCode::InvalidArgument, "gen needs --plan or --sizes");
        GenerateOptions opts;
        opts.exact_lattice = req.exact;
        opts.complex_values = req.complex_values;
        opts.shuffle = req.shuffle;
        return generate_random(req.block_sizes, req.seed.value_or(default_seed), opts);
    }();
    json doc = spectrum_to_json(gen.spectrum);
    doc["blocks"] = partition_to_json(gen.blocks);
    return {0, std::move(doc), {}};
}

} // namespace detail

/// Runs one subcommand. Exit codes: 0 success, 1 invalid input, 2 internal
/// consistency violation or failed verification.
inline CommandResult run(const CommandRequest& req, std::istream& in = std::cin)
{
    try {
        if (req.subcommand == "count")
            return detail::cmd_count(req, in);
        if (req.subcommand == "lattice")
            return detail::cmd_lattice(req, in);
        if (req.subcommand == "polyfam")
            return detail::cmd_polyfam(req);
        if (req.subcommand == "identity-check")
            return detail::cmd_identity_check(req);
        if (req.subcommand == "verify")
            return detail::cmd_verify(req, in);
        if (req.subcommand == "gen")
            return detail::cmd_gen(req);
        throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + req.subcommand + "'");
    } catch (const Error& e) {
        return {is_internal(e.code()) ? 2 : 1,
                json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}, {}};
    }
}

} // namespace fixmult::cli
