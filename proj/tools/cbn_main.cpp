// cbn: generate, learn, evaluate and benchmark discrete Bayesian-network structures.

#include <cbn/error.hpp>
#include <cbn/graph.hpp>
#include <cbn/harness.hpp>

#include <iostream>

#include <CLI11.hpp>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Bayesian-network structure learner"};
    app.require_subcommand(1);

    cbn::RunConfig config;
    std::string sizes;

    auto* generate = app.add_subcommand("generate", "Sample datasets from a network file");
    generate->add_option("--net", config.net, "Network JSON")->required();
    generate->add_option("--n", sizes, "Comma-separated sample sizes")->required();
    generate->add_option("--seed", config.seed, "RNG seed");
    generate->add_option("--out", config.out, "Output directory, or a .csv path for a single size");

    auto* learn = app.add_subcommand("learn", "Learn a DAG from a CSV dataset");
    learn->add_option("--data", config.data, "Dataset CSV")->required();
    learn->add_option("--out", config.out, "Output DAG CSV");
    learn->add_option("--timeout", config.timeout_seconds, "Wall-clock limit in seconds");
    learn->add_flag("--trace", config.trace, "Write per-phase trace files next to the DAG");

    auto* evaluate = app.add_subcommand("evaluate", "Score a learned graph against the true one");
    evaluate->add_option("--learned,--data", config.learned, "Learned graph CSV")->required();
    evaluate->add_option("--truth", config.truth, "True DAG CSV or network JSON")->required();
    evaluate->add_option("--out", config.out, "Report CSV to append to");
    evaluate->add_option("--case", config.case_name, "Case label for the report row");

    auto* benchmark = app.add_subcommand("benchmark", "Run every cell of a manifest");
    benchmark->add_option("--manifest", config.manifest, "Manifest JSON")->required();
    benchmark->add_option("--out", config.out, "Results CSV");
    benchmark->add_option("--timeout", config.timeout_seconds, "Per-cell limit when the manifest sets none");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!(config.timeout_seconds > 0.0))
            throw cbn::UsageError("--timeout must be positive");
        if (*generate) {
            config.sizes = cbn::parse_sizes(sizes);
            for (const auto& path : cbn::cmd_generate(config))
                std::cout << path.string() << '\n';
        } else if (*learn) {
            const auto out = cbn::cmd_learn(config);
            const auto& r = out.result;
            std::cout << "wrote " << out.dag_path.string() << " (" << r.dag.graph().edge_count() << " edges, bic "
                      << r.bic << (r.partial ? ", partial" : "") << ")\n";
        } else if (*evaluate) {
            cbn::cmd_evaluate(config);
        } else if (*benchmark) {
            cbn::cmd_benchmark(config);
        }
    } catch (const cbn::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
