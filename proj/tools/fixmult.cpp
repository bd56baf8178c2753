#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fixmult/cli.hpp"

namespace {

void add_input(CLI::App* sub, fixmult::cli::CommandRequest& req)
{
    sub->add_option("input", req.input, "Spectrum JSON file, or - for stdin")->default_val("-");
    sub->add_option("--json", req.inline_json, "Inline spectrum JSON");
    sub->add_option("--max-degree", req.max_degree, "Lattice enumeration cap on d")->default_val(16);
}

} // namespace

int main(int argc, char** argv)
{
    fixmult::cli::CommandRequest req;
    std::string output;
    std::uint64_t seed = fixmult::cli::default_seed;

    CLI::App app{"Fiber counts of the fixed-point multiplier map for polynomials"};
    app.require_subcommand(1);
    app.add_option("-o,--output", output, "Write the result here instead of stdout");

    auto* count = app.add_subcommand("count", "Count polynomials with a given multiplier spectrum");
    add_input(count, req);

    auto* lattice = app.add_subcommand("lattice", "Dump the zero-sum partition lattice");
    add_input(lattice, req);

    auto* polyfam = app.add_subcommand("polyfam", "Print the coarsening polynomials f_{l,k}(d)");
    polyfam->add_option("--max-l", req.max_l, "Largest l")->default_val(5);
    polyfam->add_flag("--text", req.text, "Plain text instead of JSON");

    auto* identity = app.add_subcommand("identity-check", "Evaluate the coarsening vanishing identity");
    identity->add_option("--sizes", req.sizes, "Block sizes, e.g. 2,2,3")->delimiter(',');
    identity->add_option("--min-blocks", req.min_blocks)->default_val(2);
    identity->add_option("--max-blocks", req.max_blocks)->default_val(6);
    identity->add_option("--min-size", req.min_size)->default_val(2);
    identity->add_option("--max-size", req.max_size)->default_val(5);

    auto* verify = app.add_subcommand("verify", "Solve for fixed-point configurations numerically");
    add_input(verify, req);
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--eps-res", req.solver.eps_res)->default_val(req.solver.eps_res);
    verify->add_option("--eps-dup", req.solver.eps_dup)->default_val(req.solver.eps_dup);
    verify->add_option("--eps-sep", req.solver.eps_sep)->default_val(req.solver.eps_sep);
    verify->add_option("--eps-mult", req.solver.eps_mult)->default_val(req.solver.eps_mult);
    verify->add_option("--max-iterations", req.solver.max_iterations)->default_val(req.solver.max_iterations);
    verify->add_option("--budget", req.solver.start_budget, "Newton start budget");
    verify->add_option("--confirm-starts", req.solver.confirm_starts, "Extra starts after the target is reached");
    verify->add_option("--threads", req.solver.threads, "Worker threads (0 = all cores)")->default_val(0);
    verify->add_flag("--tuples", req.include_tuples, "Include the solutions in the report");

    auto* gen = app.add_subcommand("gen", "Generate a test spectrum from zero-sum blocks");
    gen->add_option("--plan", req.plan, "Explicit mu-targets, e.g. '[[1,-1],[\"1/2\",\"-1/2\"]]'");
    gen->add_option("--sizes", req.block_sizes, "Random blocks of these sizes")->delimiter(',');
    gen->add_option("--seed", seed, "Random seed");
    gen->add_flag("--exact", req.exact, "Reject accidental extra zero-sum subsets");
    gen->add_flag("--complex", req.complex_values, "Draw complex values");
    gen->add_flag("--shuffle", req.shuffle, "Permute indices");

    CLI11_PARSE(app, argc, argv);
    req.subcommand = app.get_subcommands().front()->get_name();
    req.seed = seed;

    const auto result = fixmult::cli::run(req, std::cin);
    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            std::cerr << "cannot write " << output << "\n";
            return 1;
        }
    }
    std::ostream& out = output.empty() ? std::cout : file;
    if (!result.text.empty())
        out << result.text;
    else
        out << result.document.dump(2) << "\n";
    if (result.exit_code != 0 && result.document.contains("error"))
        std::cerr << result.document["message"].get<std::string>() << "\n";
    return result.exit_code;
}
