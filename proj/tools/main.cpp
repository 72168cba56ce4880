#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    using dercat::cli::Job;
    Job job;
    std::string output = "text";

    CLI::App app{"Exact computations in the derived category of P^n"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", job.field, "Ground field: q or fp:<prime>")->capture_default_str();
    app.add_option("--seed", job.seed, "Seed for every randomized step")->capture_default_str();
    app.add_option("--max-terms", job.max_terms, "Summand cap for window reduction")->capture_default_str();
    app.add_option("--output", output, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    const std::map<std::string, std::pair<std::string, std::string>> specs = {
        {"validate", {"Check a complex (d^2 = 0, degrees, shapes)", "COMPLEX"}},
        {"reduce", {"Quasi-isomorphic representative with twists in [-n, 0]", "COMPLEX"}},
        {"cone", {"Mapping cone of a chain map", "CHAIN_MAP"}},
        {"ext", {"dim Ext^k(A, B)", "A B"}},
        {"cohomology", {"Hypercohomology H^k(P^n, C)", "COMPLEX"}},
        {"serre-check", {"Compare Ext^k(A, B) with Ext^{-k}(B, S A)", "A B"}},
        {"point-check", {"Point-object predicates", "COMPLEX"}},
        {"line-bundle-check", {"Sampled line-bundle-object predicate", "COMPLEX"}},
        {"beilinson", {"Beilinson multiplicities and K-class", "COMPLEX"}},
        {"hrr-check", {"Euler pairing via HRR and via Ext", "A B"}},
        {"hochschild", {"Hochschild (co)homology via HKR", ""}},
        {"fm-elliptic", {"Fourier-Mukai action on (rank, degree)", "RANK DEGREE"}},
        {"corr-apply", {"Apply a correspondence class", "KERNEL CLASS"}},
        {"corr-compose", {"Compose correspondence classes", "K1 K2"}},
        {"canonical-ring", {"dim H^0(omega^i) over a range", ""}},
    };
    for (const auto& [name, spec] : specs) {
        CLI::App* sub = app.add_subcommand(name, spec.first);
        sub->callback([&job, name = name] { job.command = name; });
        if (!spec.second.empty()) sub->add_option("inputs", job.inputs, spec.second)->required();
        if (name == "hochschild") {
            sub->add_option("--pn", job.pn, "P^n, n <= 3");
            sub->add_option("--genus", job.genus, "Smooth curve of genus g");
            sub->add_option("--hodge", job.hodge, "JSON Hodge table file");
        }
        if (name == "canonical-ring") {
            sub->add_option("--pn", job.pn, "P^n")->required();
            sub->add_option("--from", job.from, "First power")->required();
            sub->add_option("--to", job.to, "Last power")->required();
        }
        if (name == "point-check") {
            sub->add_option("--draws", job.draws, "Random candidates after the basis")->capture_default_str();
        }
        if (name == "line-bundle-check") {
            sub->add_option("--point", job.points, "Homogeneous coordinates, e.g. 1,0,2 (repeatable)");
            sub->add_option("--random-points", job.random_points, "Random points added to the default sample")
                ->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dercat::cli::kUsage;
    }
    job.output = output == "structured" ? dercat::cli::OutputFormat::structured : dercat::cli::OutputFormat::text;

    const dercat::cli::Report rep = dercat::cli::run(job);
    std::cout << rep.out;
    std::cerr << rep.err;
    return rep.exit_code;
}
