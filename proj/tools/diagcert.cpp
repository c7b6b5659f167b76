#include <iostream>

#include "CLI11.hpp"

#include "diagcert/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Certified diagonalization of matrices over factorial domains"};
    app.require_subcommand(1);
    diagcert::cli::CommandRequest req;

    for (const char* name : {"snf", "analyze", "qg", "diagonalize", "filtration", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("-i,--input", req.input, "input JSON file, - for stdin")->required();
        sub->add_flag("--json", req.json, "emit a JSON report");
        sub->add_option("--seed", req.seed, "seed recorded in the report");
        sub->add_option("--degree", req.bounds.degree, "multiplier degree bound")->check(CLI::PositiveNumber);
        sub->add_option("--height", req.bounds.height, "multiplier coefficient bound")->check(CLI::PositiveNumber);
        sub->add_option("--steps", req.bounds.candidates, "search node budget")->check(CLI::PositiveNumber);
        sub->callback([&req, name] { req.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    diagcert::cli::CommandOutcome out = diagcert::cli::run(req);
    std::cout << out.output;
    if (!out.error.empty())
        std::cerr << out.error << "\n";
    return out.code;
}
