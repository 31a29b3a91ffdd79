#include <cbn/harness.hpp>

#include <cbn/error.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace cbn {

fs::path sibling(const fs::path& csv, const std::string& suffix) {
    return csv.parent_path() / (csv.stem().string() + suffix);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw UsageError("invalid sample size '" + item + "'");
        }
        if (used != item.size() || value < 1)
            throw UsageError("invalid sample size '" + item + "'");
        sizes.push_back(static_cast<std::size_t>(value));
    }
    if (sizes.empty())
        throw UsageError("no sample sizes given");
    return sizes;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    out << text;
}

void write_sample(const fs::path& csv, const Dataset& d, const BnModel& model, std::uint64_t seed) {
    std::ostringstream body;
    d.write_csv(body);
    write_text(csv, body.str());

    json meta;
    meta["generator"] = kSamplerId;
    meta["seed"] = seed;
    meta["n"] = d.num_rows();
    meta["network"] = model.name();
    meta["variables"] = json::array();
    for (const auto& v : d.variables())
        meta["variables"].push_back({{"name", v.name}, {"states", v.states}});
    write_text(sibling(csv, ".meta.json"), meta.dump(2) + "\n");
}

std::optional<Schema> read_schema(const fs::path& meta_path) {
    if (!fs::exists(meta_path))
        return std::nullopt;
    std::ifstream in(meta_path);
    try {
        const auto meta = json::parse(in);
        Schema schema;
        for (const auto& v : meta.at("variables"))
            schema.push_back({v.at("name").get<std::string>(), v.at("states").get<std::vector<std::string>>()});
        return schema;
    } catch (const json::exception& e) {
        throw DataError("metadata '" + meta_path.string() + "': " + e.what());
    }
}

json timing_json(const LearnResult& r, const Dataset& d) {
    const auto frac = r.timing.fractions();
    json t;
    t["phase1_s"] = r.timing.phase1_s;
    t["phase2_s"] = r.timing.phase2_s;
    t["phase3_s"] = r.timing.phase3_s;
    t["total_s"] = r.timing.total_s;
    t["phase1_frac"] = frac[0];
    t["phase2_frac"] = frac[1];
    t["phase3_frac"] = frac[2];
    t["partial"] = r.partial;
    t["bic"] = r.bic;
    t["n"] = d.num_rows();
    t["variables"] = d.num_variables();
    t["pair_tests"] = r.table.pair_tests();
    t["triple_tests"] = r.table.triple_tests();
    t["tabu_escapes"] = r.escapes;
    return t;
}

void write_traces(const fs::path& dag_path, const LearnResult& r, const std::vector<std::string>& names) {
    std::ostringstream pairs, triples, emsg, orientation, search;
    write_pair_scores(pairs, r.table, names);
    write_triple_scores(triples, r.table, names);
    write_graph(emsg, r.emsg.graph);
    write_orientation_trace(orientation, r.orientation_trace, names);
    write_search_trace(search, r.search_trace);
    write_text(sibling(dag_path, ".mmd_pairs.csv"), pairs.str());
    write_text(sibling(dag_path, ".mmd_triples.csv"), triples.str());
    write_text(sibling(dag_path, ".emsg.csv"), emsg.str());
    write_text(sibling(dag_path, ".orientation.log"), orientation.str());
    write_text(sibling(dag_path, ".search.csv"), search.str());
}

Dag load_truth(const fs::path& path) {
    if (path.extension() == ".json")
        return load_network_file(path.string()).dag();
    try {
        return Dag(read_graph_file(path.string()));
    } catch (const GraphError& e) {
        throw DataError("truth graph '" + path.string() + "': " + e.what());
    }
}

} // namespace

std::vector<fs::path> cmd_generate(const RunConfig& config) {
    if (config.net.empty())
        throw UsageError("generate: --net is required");
    if (config.sizes.empty())
        throw UsageError("generate: --n is required");
    const auto model = load_network_file(config.net);

    std::vector<fs::path> written;
    const fs::path out = config.out.empty() ? fs::path(".") : fs::path(config.out);
    const bool single_file = out.extension() == ".csv";
    if (single_file && config.sizes.size() != 1)
        throw UsageError("generate: --out names one file but several sizes were requested");
    for (auto n : config.sizes) {
        const fs::path csv = single_file ? out
                                         : out / (model.name() + "_n" + std::to_string(n) + "_s" +
                                                  std::to_string(config.seed) + ".csv");
        write_sample(csv, forward_sample(model, n, config.seed), model, config.seed);
        written.push_back(csv);
    }
    return written;
}

LearnOutput cmd_learn(const RunConfig& config) {
    if (config.data.empty())
        throw UsageError("learn: --data is required");
    if (!(config.timeout_seconds > 0.0))
        throw UsageError("learn: --timeout must be positive");
    const fs::path data_path(config.data);
    const auto data = load_dataset_file(config.data, read_schema(sibling(data_path, ".meta.json")));

    LearnOptions options;
    options.timeout_seconds = config.timeout_seconds;
    LearnOutput output;
    output.result = learn_structure(data, options);
    output.dag_path = config.out.empty() ? sibling(data_path, ".learned.csv") : fs::path(config.out);
    output.timing_path = sibling(output.dag_path, ".timing.json");

    std::ostringstream dag;
    write_graph(dag, output.result.dag.graph());
    write_text(output.dag_path, dag.str());
    write_text(output.timing_path, timing_json(output.result, data).dump(2) + "\n");
    if (config.trace)
        write_traces(output.dag_path, output.result, data.names());
    return output;
}

MetricsReport cmd_evaluate(const RunConfig& config) {
    if (config.learned.empty() || config.truth.empty())
        throw UsageError("evaluate: --learned and --truth are required");
    const fs::path learned_path(config.learned);
    const auto learned = read_graph_file(config.learned);
    const auto truth = load_truth(config.truth);

    auto report = evaluate(learned, truth);
    report.case_name = config.case_name;
    if (report.case_name.empty()) {
        report.case_name = learned_path.stem().string();
        const std::string suffix = ".learned";
        if (report.case_name.size() > suffix.size() && report.case_name.ends_with(suffix))
            report.case_name.resize(report.case_name.size() - suffix.size());
    }
    const auto timing_path = sibling(learned_path, ".timing.json");
    if (fs::exists(timing_path)) {
        std::ifstream in(timing_path);
        try {
            const auto t = json::parse(in);
            report.n = t.value("n", std::size_t{0});
            report.phase_fractions = {t.value("phase1_frac", 0.0), t.value("phase2_frac", 0.0),
                                      t.value("phase3_frac", 0.0)};
            report.runtime_s = t.value("total_s", 0.0);
        } catch (const json::exception& e) {
            throw DataError("timing '" + timing_path.string() + "': " + e.what());
        }
    }

    std::ostringstream row;
    write_report_row(row, report);
    if (config.out.empty()) {
        write_report_header(std::cout);
        std::cout << row.str();
    } else {
        const bool fresh = !fs::exists(config.out) || fs::file_size(config.out) == 0;
        std::ofstream out(config.out, std::ios::app);
        if (!out)
            throw DataError("cannot write '" + config.out + "'");
        if (fresh)
            write_report_header(out);
        out << row.str();
    }
    return report;
}

Manifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("manifest: cannot open '" + path.string() + "'");
    const auto base = path.parent_path();
    Manifest m;
    try {
        const auto doc = json::parse(in);
        if (doc.contains("timeout_s"))
            m.timeout_seconds = doc.at("timeout_s").get<double>();
        m.workdir = doc.contains("workdir") ? base / doc.at("workdir").get<std::string>() : base / "benchmark_work";
        for (const auto& c : doc.at("cases")) {
            ManifestCase mc;
            mc.name = c.at("name").get<std::string>();
            mc.net = base / c.at("net").get<std::string>();
            mc.sizes = c.at("sizes").get<std::vector<std::size_t>>();
            mc.seeds = c.contains("seeds") ? c.at("seeds").get<std::vector<std::uint64_t>>()
                                           : std::vector<std::uint64_t>{1};
            if (mc.name.empty() || mc.sizes.empty() || mc.seeds.empty())
                throw DataError("manifest: case '" + mc.name + "' needs a name, sizes and seeds");
            for (auto n : mc.sizes)
                if (n < 1)
                    throw DataError("manifest: case '" + mc.name + "' has a zero sample size");
            m.cases.push_back(std::move(mc));
        }
    } catch (const json::exception& e) {
        throw DataError("manifest '" + path.string() + "': " + e.what());
    }
    if (m.timeout_seconds && !(*m.timeout_seconds > 0.0))
        throw DataError("manifest: timeout_s must be positive");
    if (m.cases.empty())
        throw DataError("manifest: no cases");
    return m;
}

std::vector<MetricsReport> cmd_benchmark(const RunConfig& config) {
    if (config.manifest.empty())
        throw UsageError("benchmark: --manifest is required");
    const auto manifest = load_manifest(config.manifest);
    const double timeout = manifest.timeout_seconds.value_or(config.timeout_seconds);

    // Every network must load before any cell runs.
    std::vector<BnModel> models;
    for (const auto& c : manifest.cases)
        models.push_back(load_network_file(c.net.string()));

    std::vector<MetricsReport> rows;
    for (std::size_t ci = 0; ci < manifest.cases.size(); ++ci) {
        const auto& c = manifest.cases[ci];
        const auto& model = models[ci];
        for (auto n : c.sizes)
            for (auto seed : c.seeds) {
                MetricsReport row;
                row.case_name = c.name + "/s" + std::to_string(seed);
                row.n = n;
                const auto started = std::chrono::steady_clock::now();
                try {
                    const auto stem = c.name + "_n" + std::to_string(n) + "_s" + std::to_string(seed);
                    const auto data = forward_sample(model, n, seed);
                    write_sample(manifest.workdir / (stem + ".csv"), data, model, seed);

                    LearnOptions options;
                    options.timeout_seconds = timeout;
                    const auto result = learn_structure(data, options);
                    if (result.partial) {
                        row.available = false;
                        row.runtime_s = timeout;
                    } else {
                        auto report = evaluate(result.dag.graph(), model.dag());
                        report.case_name = row.case_name;
                        report.n = n;
                        report.phase_fractions = result.timing.fractions();
                        report.runtime_s = result.timing.total_s;
                        row = report;
                        std::ostringstream dag;
                        write_graph(dag, result.dag.graph());
                        write_text(manifest.workdir / (stem + ".learned.csv"), dag.str());
                    }
                } catch (const std::exception& e) {
                    std::cerr << "benchmark: " << row.case_name << " n=" << n << ": " << e.what() << '\n';
                    row.available = false;
                    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
                }
                rows.push_back(row);
            }
    }

    std::ostringstream table;
    write_report_header(table);
    for (const auto& r : rows)
        write_report_row(table, r);
    if (config.out.empty())
        std::cout << table.str();
    else
        write_text(config.out, table.str());
    return rows;
}

} // namespace cbn
