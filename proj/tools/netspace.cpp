// netspace — command-line front end for the realization-topology laboratory.
//
// Every run writes one output directory: manifest.json (command, flags, seed,
// duration), data.csv and/or report.json with the results, and networks/*.json
// for any constructed parameterizations. Identical flags + seed give
// byte-identical outputs apart from the duration field.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netspace/netspace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netspace;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("NETSPACE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("NETSPACE_SEED is set but not a nonnegative integer: '" +
                             std::string(env) + "'");
        }
    }
    return 0;
}

std::vector<int> parse_int_list(const std::string& csv, const char* flag) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(std::string(flag) + ": cannot parse integer '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ParseError(std::string(flag) + ": empty list");
    return out;
}

Vector parse_double_list(const std::string& csv, const char* flag) {
    Vector out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(std::string(flag) + ": cannot parse number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ParseError(std::string(flag) + ": empty list");
    return out;
}

// Dyadic default 1, 2, 4, …, 1024.
std::vector<int> default_index_list() {
    std::vector<int> ns;
    for (int n = 1; n <= 1024; n *= 2) ns.push_back(n);
    return ns;
}

void prepare_outdir(const fs::path& out, bool force) {
    if (fs::exists(out)) {
        if (!force)
            throw ParseError("output directory '" + out.string() + "' exists; pass --force to replace it");
        fs::remove_all(out);
    }
    fs::create_directories(out);
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    f << content;
}

// Shared run context: collects output names, then stamps the manifest last so
// the duration covers the whole command.
struct Run {
    fs::path out;
    bool json_mode = false;
    json flags = json::object();
    std::uint64_t seed = 0;
    std::string command;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    json stdout_payload = json::object();

    void add_output(const std::string& name) { outputs.push_back(name); }

    void finish() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json manifest = {
            {"command", command}, {"flags", flags},           {"seed", seed},
            {"version", kVersion}, {"outputs", outputs},       {"duration_seconds", secs},
        };
        write_text(out / "manifest.json", manifest.dump(2) + "\n");
        stdout_payload["command"] = command;
        stdout_payload["seed"] = seed;
        stdout_payload["out"] = out.string();
        if (json_mode) std::cout << stdout_payload.dump(2) << "\n";
    }
};

void write_network_file(Run& run, const std::string& name, const Network& net) {
    fs::create_directories(run.out / "networks");
    write_text(run.out / "networks" / name, serialize(net));
    run.add_output("networks/" + name);
}

void write_sequence_outputs(Run& run, const WitnessSequence& ws) {
    const std::vector<SequenceRow> rows = sequence_report(ws);
    write_text(run.out / "data.csv", to_csv(rows));
    run.add_output("data.csv");
    for (std::size_t i = 0; i < ws.indices.size(); ++i)
        write_network_file(run, "net_" + std::to_string(ws.indices[i]) + ".json", ws.networks[i]);

    json jrows = json::array();
    for (const SequenceRow& r : rows) {
        json row = {{"n", r.n},
                    {"distance", r.distance},
                    {"norm_total", r.norm_total},
                    {"norm_scaling", r.norm_scaling},
                    {"empirical_lipschitz", r.empirical_lipschitz}};
        if (ws.predicted_rate) row["predicted_rate"] = ws.predicted_rate(r.n);
        jrows.push_back(row);
    }
    run.stdout_payload["rows"] = jrows;
    if (!run.json_mode) {
        std::cout << "kind=" << to_string(ws.kind) << " activation=" << ws.act.name() << "\n";
        for (const SequenceRow& r : rows)
            std::cout << "  n=" << r.n << " distance=" << format_double(r.distance)
                      << " norm_total=" << format_double(r.norm_total)
                      << " norm_scaling=" << format_double(r.norm_scaling)
                      << " lipschitz=" << format_double(r.empirical_lipschitz) << "\n";
    }
}

// ---------------------------------------------------------------------------
// identity

struct IdentityArgs {
    std::string activation = "relu";
    int d = 1;
    int layers = 2;
    double eps = 0.01;
    double B = 1.0;
    int grid = 0;  // 0 = default for the dimension
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

int cmd_identity(const IdentityArgs& a) {
    Run run;
    run.command = "identity";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"d", a.d},   {"layers", a.layers},
                 {"eps", a.eps},               {"B", a.B},   {"grid", a.grid},
                 {"force", a.force}};
    prepare_outdir(run.out, a.force);

    const Activation act = parse_activation(a.activation);
    const int grid = a.grid > 0 ? a.grid : default_grid_points(a.d);
    try {
        const IdentityResult res = build_identity_network(act, a.d, a.layers, a.eps, a.B, grid);
        const json report = {{"status", "ok"},
                             {"activation", act.name()},
                             {"d", res.d},
                             {"layers", res.L},
                             {"eps", res.eps},
                             {"B", res.B},
                             {"C", res.C},
                             {"anchor_x0", res.anchor.x0},
                             {"sup_error", res.sup_error},
                             {"grid", grid}};
        write_text(run.out / "report.json", report.dump(2) + "\n");
        run.add_output("report.json");
        write_network_file(run, "identity.json", res.net);
        run.stdout_payload["report"] = report;
        if (!run.json_mode)
            std::cout << "identity approximant: C=" << format_double(res.C)
                      << " sup_error=" << format_double(res.sup_error) << "\n";
        run.finish();
        return 0;
    } catch (const ConstructionFailure& e) {
        const json report = {{"status", "failed"}, {"activation", act.name()}, {"d", a.d},
                             {"layers", a.layers}, {"eps", a.eps},             {"B", a.B},
                             {"error", e.what()}};
        write_text(run.out / "report.json", report.dump(2) + "\n");
        run.add_output("report.json");
        run.stdout_payload["report"] = report;
        if (!run.json_mode) std::cerr << "construction failed: " << e.what() << "\n";
        run.finish();
        return 1;
    }
}

// ---------------------------------------------------------------------------
// witness step|derivative|analytic|homogeneity

struct WitnessArgs {
    std::string activation = "relu";
    std::string n_list;
    int d = 1;
    double B = 1.0;
    int grid = 0;
    int layers = 2;
    std::string x_star;  // step: point; analytic: scalar via first entry
    std::string v;
    double lambda = 1.0;
    int r = 1;
    int q = 0;
    double s = -1.0;  // <0: measure the slack
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

DomainBox witness_domain(const WitnessArgs& a) {
    return DomainBox{a.d, a.B, a.grid > 0 ? a.grid : default_grid_points(a.d)};
}

std::vector<int> witness_indices(const WitnessArgs& a, const char* flag) {
    return a.n_list.empty() ? default_index_list() : parse_int_list(a.n_list, flag);
}

int run_witness(const WitnessArgs& a, const std::string& kind, const WitnessSequence& ws) {
    Run run;
    run.command = "witness " + kind;
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"n_list", a.n_list}, {"d", a.d},
                 {"B", a.B},                   {"grid", a.grid},     {"layers", a.layers},
                 {"force", a.force}};
    if (kind == "step") {
        run.flags["x_star"] = a.x_star;
        run.flags["v"] = a.v;
    } else if (kind == "derivative") {
        run.flags["lambda"] = a.lambda;
    } else if (kind == "analytic") {
        run.flags["x_star"] = a.x_star;
    } else if (kind == "homogeneity") {
        run.flags["r"] = a.r;
        run.flags["q"] = a.q;
        run.flags["s"] = a.s;
    }
    prepare_outdir(run.out, a.force);
    write_sequence_outputs(run, ws);
    run.finish();
    return 0;
}

int cmd_witness_step(const WitnessArgs& a) {
    const Activation act = parse_activation(a.activation);
    const DomainBox box = witness_domain(a);
    Vector x_star(static_cast<std::size_t>(a.d), 0.0);
    if (!a.x_star.empty()) x_star = parse_double_list(a.x_star, "--x-star");
    Vector v(static_cast<std::size_t>(a.d), 0.0);
    v[0] = 1.0;
    if (!a.v.empty()) v = parse_double_list(a.v, "--v");
    std::vector<int> dims{a.d};
    for (int l = 0; l < a.layers - 2; ++l) dims.push_back(1);
    dims.push_back(2);
    dims.push_back(1);
    const WitnessSequence ws = build_step_witness(act, Architecture(dims),
                                                  witness_indices(a, "--n-list"), box, x_star, v);
    return run_witness(a, "step", ws);
}

int cmd_witness_derivative(const WitnessArgs& a) {
    const Activation act = parse_activation(a.activation);
    const WitnessSequence ws = build_derivative_witness(act, a.lambda, witness_domain(a),
                                                        witness_indices(a, "--n-list"), a.layers);
    return run_witness(a, "derivative", ws);
}

int cmd_witness_analytic(const WitnessArgs& a) {
    const Activation act = parse_activation(a.activation);
    const double x_star = a.x_star.empty() ? 0.0 : parse_double_list(a.x_star, "--x-star")[0];
    const WitnessSequence ws = build_analytic_witness(act, x_star, witness_domain(a),
                                                      witness_indices(a, "--n-list"), a.layers);
    return run_witness(a, "analytic", ws);
}

int cmd_witness_homogeneity(const WitnessArgs& a) {
    const Activation act = parse_activation(a.activation);
    // Reject activations that are not approximately homogeneous of the
    // declared order: the slack must stabilize as the probed range grows.
    const double s16 = check_approx_homogeneity(act, {a.r, a.q, 0.0}, 16.0);
    const double s64 = check_approx_homogeneity(act, {a.r, a.q, 0.0}, 64.0);
    if (s64 > s16 + 1e-3)
        throw UnsupportedActivation(
            "witness homogeneity: " + act.name() + " is not approximately homogeneous of order (" +
            std::to_string(a.r) + "," + std::to_string(a.q) + "): the deviation from x^r/x^q keeps "
            "growing with |x| (slack " + format_double(s16) + " on [-16,16] vs " +
            format_double(s64) + " on [-64,64])");
    const double s = a.s >= 0.0 ? a.s : s64;
    const WitnessSequence ws = build_homogeneity_witness(act, {a.r, a.q, s}, witness_domain(a),
                                                         witness_indices(a, "--n-list"));
    return run_witness(a, "homogeneity", ws);
}

// ---------------------------------------------------------------------------
// instability

struct InstabilityArgs {
    std::string activation = "relu";
    std::string arch = "1,4,1";
    std::string n_list;
    double a = -1.0;  // <0: probe
    std::string x0;
    double B = 1.0;
    int grid = 0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

int cmd_instability(const InstabilityArgs& a) {
    Run run;
    run.command = "instability";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"arch", a.arch}, {"n_list", a.n_list},
                 {"a", a.a},                   {"x0", a.x0},     {"B", a.B},
                 {"grid", a.grid},             {"force", a.force}};
    prepare_outdir(run.out, a.force);

    const Activation act = parse_activation(a.activation);
    const Architecture arch(parse_int_list(a.arch, "--arch"));
    const DomainBox box{arch.input_dim(), a.B,
                        a.grid > 0 ? a.grid : default_grid_points(arch.input_dim())};
    Vector x0(static_cast<std::size_t>(arch.input_dim()), 0.0);
    if (!a.x0.empty()) x0 = parse_double_list(a.x0, "--x0");
    const std::vector<int> ns =
        a.n_list.empty() ? default_index_list() : parse_int_list(a.n_list, "--n-list");
    const std::optional<double> step = a.a > 0.0 ? std::optional<double>(a.a) : std::nullopt;

    const InstabilityResult res = build_instability_sequence(act, arch, box, x0, step, ns);
    run.stdout_payload["a"] = res.a;
    run.stdout_payload["oscillation"] = res.oscillation;
    run.stdout_payload["witness_points"] = {res.b_point, res.c_point};
    if (!run.json_mode)
        std::cout << "second-difference step a=" << format_double(res.a)
                  << " oscillation=" << format_double(res.oscillation) << "\n";
    write_sequence_outputs(run, res.seq);
    run.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// canonicalize

struct CanonArgs {
    std::string in;
    double B = 1.0;
    int grid = 0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

int cmd_canonicalize(const CanonArgs& a) {
    Run run;
    run.command = "canonicalize";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"in", a.in}, {"B", a.B}, {"grid", a.grid}, {"force", a.force}};

    std::ifstream f(a.in);
    if (!f) throw ParseError("cannot open network file '" + a.in + "'");
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const Network net = deserialize(text);
    prepare_outdir(run.out, a.force);

    const DomainBox box{net.input_dim(), a.B,
                        a.grid > 0 ? a.grid : default_grid_points(net.input_dim())};
    const Network canon = canonicalize_relu_biases(net, box);
    const Activation relu = make_activation(Act::relu);
    const double sup_diff =
        sup_distance(realization_fn(net, relu), realization_fn(canon, relu), box);

    const std::vector<std::vector<double>> caps = relu_bias_caps(canon, box);
    std::string csv = "layer,neuron,bias_before,bias_after,cap\n";
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l)
        for (std::size_t k = 0; k < net.layers[l].b.size(); ++k) {
            csv += std::to_string(l + 1) + "," + std::to_string(k) + "," +
                   format_double(net.layers[l].b[k]) + "," + format_double(canon.layers[l].b[k]) +
                   "," + format_double(caps[l][k]) + "\n";
        }
    write_text(run.out / "data.csv", csv);
    run.add_output("data.csv");
    write_network_file(run, "canonical.json", canon);

    const json report = {{"sup_diff", sup_diff},
                         {"norm_total_before", norm_total(net)},
                         {"norm_total_after", norm_total(canon)}};
    write_text(run.out / "report.json", report.dump(2) + "\n");
    run.add_output("report.json");
    run.stdout_payload["report"] = report;
    if (!run.json_mode)
        std::cout << "canonicalized: sup_diff=" << format_double(sup_diff)
                  << " norm_total " << format_double(norm_total(net)) << " -> "
                  << format_double(norm_total(canon)) << "\n";
    run.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// rank-probe

struct RankArgs {
    std::string activation = "relu";
    std::string in;  // optional directory of network JSON files
    int points = 64;
    double tau = 1e-8;
    double B = 1.0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

// Shipped fixture: nine single-kink ReLU ridges ϱ(x − β) with distinct β in
// (−1, 1), plus one constant, all on S = (1, 2, 1). Ten functions against
// D = 7 parameters.
std::vector<Network> shipped_rank_fixture() {
    std::vector<Network> nets;
    for (int j = 0; j < 9; ++j) {
        const double beta = -0.8 + 0.2 * j;
        Matrix A1(2, 1);
        A1(0, 0) = 1.0;
        Matrix A2(1, 2);
        A2(0, 0) = 1.0;
        nets.push_back(Network({{A1, {-beta, 0.0}}, {A2, {0.0}}}));
    }
    Matrix A1(2, 1);
    Matrix A2(1, 2);
    nets.push_back(Network({{A1, {1.0, 0.0}}, {A2, {1.0}}}));  // constant 1
    return nets;
}

int cmd_rank_probe(const RankArgs& a) {
    Run run;
    run.command = "rank-probe";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"in", a.in},       {"points", a.points},
                 {"tau", a.tau},               {"B", a.B},         {"force", a.force}};

    const Activation act = parse_activation(a.activation);
    std::vector<Network> nets;
    if (a.in.empty()) {
        nets = shipped_rank_fixture();
    } else {
        if (!fs::is_directory(a.in))
            throw ParseError("--in expects a directory of network JSON files, got '" + a.in + "'");
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a.in))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& p : files) {
            std::ifstream f(p);
            const std::string text((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
            nets.push_back(deserialize(text));
        }
        if (nets.empty()) throw ParseError("no .json networks found in '" + a.in + "'");
    }
    prepare_outdir(run.out, a.force);

    const DomainBox box{nets.front().input_dim(), a.B, default_grid_points(nets.front().input_dim())};
    const RankProbeReport rep = rank_probe(nets, act, box, a.points, a.tau, run.seed);

    json jrep = {{"num_functions", rep.num_functions},
                 {"num_sample_points", rep.num_sample_points},
                 {"singular_values", rep.singular_values},
                 {"numerical_rank", rep.numerical_rank},
                 {"parameter_count", rep.parameter_count},
                 {"verdict", rep.verdict}};
    write_text(run.out / "report.json", jrep.dump(2) + "\n");
    run.add_output("report.json");
    std::string csv = "index,singular_value\n";
    for (std::size_t i = 0; i < rep.singular_values.size(); ++i)
        csv += std::to_string(i) + "," + format_double(rep.singular_values[i]) + "\n";
    write_text(run.out / "data.csv", csv);
    run.add_output("data.csv");
    run.stdout_payload["report"] = jrep;
    if (!run.json_mode)
        std::cout << "rank " << rep.numerical_rank << " from " << rep.num_functions
                  << " functions vs D=" << rep.parameter_count
                  << (rep.verdict ? " -> exceeds parameter count\n" : "\n");
    run.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// explode

struct ExplodeArgs {
    std::string activation = "relu";
    std::string arch = "1,32,1";
    std::string target = "step";
    std::string N_list = "64,128,256,512,1024,2048,4096";
    std::string optimizer = "momentum";
    double momentum = 0.99;
    double step = 0.025;
    int iters = 1500;
    double B = 1.0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

int cmd_explode(const ExplodeArgs& a) {
    Run run;
    run.command = "explode";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"arch", a.arch},         {"target", a.target},
                 {"N_list", a.N_list},         {"step", a.step},         {"iters", a.iters},
                 {"optimizer", a.optimizer},   {"momentum", a.momentum}, {"B", a.B},
                 {"force", a.force}};
    prepare_outdir(run.out, a.force);

    const Activation act = parse_activation(a.activation);
    const Architecture arch(parse_int_list(a.arch, "--arch"));
    const DomainBox box{arch.input_dim(), a.B, default_grid_points(arch.input_dim())};
    TrainConfig cfg;
    cfg.step = a.step;
    cfg.iterations = a.iters;
    cfg.seed = run.seed;
    if (a.optimizer == "momentum") {
        cfg.opt = Optimizer::momentum;
        cfg.momentum = a.momentum;
    } else if (a.optimizer == "gd") {
        cfg.opt = Optimizer::gradient_descent;
    } else {
        throw ParseError("--optimizer must be 'gd' or 'momentum', got '" + a.optimizer + "'");
    }

    const ExplodeSummary summary = exploding_weights_experiment(
        act, arch, a.target, parse_int_list(a.N_list, "--N-list"), box, cfg);

    std::string csv = "N,final_loss,final_norm_total,final_norm_scaling,diverged\n";
    json jrows = json::array();
    for (const ExplodeRow& r : summary.rows) {
        csv += std::to_string(r.N) + "," + format_double(r.final_loss) + "," +
               format_double(r.final_norm_total) + "," + format_double(r.final_norm_scaling) + "," +
               (r.diverged ? "1" : "0") + "\n";
        jrows.push_back({{"N", r.N},
                         {"final_loss", r.final_loss},
                         {"final_norm_total", r.final_norm_total},
                         {"final_norm_scaling", r.final_norm_scaling},
                         {"diverged", r.diverged}});
    }
    write_text(run.out / "data.csv", csv);
    run.add_output("data.csv");
    const json report = {
        {"note", "demonstrative run: growth thresholds are experiment choices, not derived constants"},
        {"target", summary.target_id},
        {"init_norm_total", summary.init_norm_total},
        {"config", {{"step", cfg.step}, {"iterations", cfg.iterations}, {"init_scale", cfg.init_scale},
                    {"seed", cfg.seed}, {"optimizer", a.optimizer}, {"momentum", a.momentum}}},
        {"rows", jrows}};
    write_text(run.out / "report.json", report.dump(2) + "\n");
    run.add_output("report.json");
    run.stdout_payload["report"] = report;
    if (!run.json_mode) {
        std::cout << "target=" << summary.target_id
                  << " init_norm_total=" << format_double(summary.init_norm_total) << "\n";
        for (const ExplodeRow& r : summary.rows)
            std::cout << "  N=" << r.N << " loss=" << format_double(r.final_loss)
                      << " norm_total=" << format_double(r.final_norm_total) << "\n";
    }
    run.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// midpoint-gap

struct MidpointArgs {
    std::string activation = "relu";
    std::string arch = "1,2,1";
    std::string f1;  // optional network files; default = shipped 4-kink pair
    std::string f2;
    int restarts = 20;
    double step = 0.05;
    int iters = 2000;
    double B = 1.0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

Network hat_pair_network(double kink_lo, double kink_hi) {
    Matrix A1(2, 1);
    A1(0, 0) = 1.0;
    A1(1, 0) = 1.0;
    Matrix A2(1, 2);
    A2(0, 0) = 1.0;
    A2(0, 1) = -1.0;
    return Network({{A1, {-kink_lo, -kink_hi}}, {A2, {0.0}}});
}

Network load_network(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open network file '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return deserialize(text);
}

int cmd_midpoint_gap(const MidpointArgs& a) {
    Run run;
    run.command = "midpoint-gap";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"arch", a.arch},  {"f1", a.f1},
                 {"f2", a.f2},                 {"restarts", a.restarts}, {"step", a.step},
                 {"iters", a.iters},           {"B", a.B},        {"force", a.force}};
    prepare_outdir(run.out, a.force);

    const Activation act = parse_activation(a.activation);
    const Architecture arch(parse_int_list(a.arch, "--arch"));
    const DomainBox box{arch.input_dim(), a.B, default_grid_points(arch.input_dim())};
    // Kinks at ±0.5 and ±0.25: the midpoint has four kinks, twice what a
    // two-neuron hidden layer can produce.
    const Network f1 = a.f1.empty() ? hat_pair_network(-0.5, 0.5) : load_network(a.f1);
    const Network f2 = a.f2.empty() ? hat_pair_network(-0.25, 0.25) : load_network(a.f2);
    TrainConfig cfg;
    cfg.step = a.step;
    cfg.iterations = a.iters;
    cfg.seed = run.seed;

    const MidpointGapResult res =
        midpoint_gap_experiment(act, arch, f1, f2, box, cfg, a.restarts);

    std::string csv = "restart,distance\n";
    for (std::size_t i = 0; i < res.per_restart.size(); ++i)
        csv += std::to_string(i) + "," + format_double(res.per_restart[i]) + "\n";
    write_text(run.out / "data.csv", csv);
    run.add_output("data.csv");
    const json report = {{"floor", res.floor},
                         {"restarts", a.restarts},
                         {"config", {{"step", cfg.step}, {"iterations", cfg.iterations},
                                     {"init_scale", cfg.init_scale}, {"seed", cfg.seed}}}};
    write_text(run.out / "report.json", report.dump(2) + "\n");
    run.add_output("report.json");
    write_network_file(run, "f1.json", f1);
    write_network_file(run, "f2.json", f2);
    run.stdout_payload["report"] = report;
    if (!run.json_mode)
        std::cout << "midpoint residual floor over " << a.restarts
                  << " restarts: " << format_double(res.floor) << "\n";
    run.finish();
    return 0;
}

// ---------------------------------------------------------------------------
// lipschitz-check

struct LipschitzArgs {
    std::string activation;  // empty = whole zoo
    int count = 100;
    double B = 1.0;
    std::string out;
    bool force = false;
    bool json_mode = false;
    std::optional<std::uint64_t> seed;
};

int cmd_lipschitz_check(const LipschitzArgs& a) {
    Run run;
    run.command = "lipschitz-check";
    run.out = a.out;
    run.json_mode = a.json_mode;
    run.seed = resolve_seed(a.seed);
    run.flags = {{"activation", a.activation}, {"count", a.count}, {"B", a.B}, {"force", a.force}};
    prepare_outdir(run.out, a.force);

    std::vector<Activation> acts;
    if (a.activation.empty())
        acts = default_activation_set();
    else
        acts.push_back(parse_activation(a.activation));

    Rng rng(mix_seed(run.seed, 0x11b5));
    std::string csv = "index,activation,empirical,bound,ok\n";
    int violations = 0;
    for (int i = 0; i < a.count; ++i) {
        const Activation& act = acts[static_cast<std::size_t>(i) % acts.size()];
        const int d = rng.uniform_int(1, 2);
        const int L = rng.uniform_int(1, 3);
        std::vector<int> dims{d};
        for (int l = 0; l < L - 1; ++l) dims.push_back(rng.uniform_int(1, 4));
        dims.push_back(1);
        Network net = Network::zeros(Architecture(dims));
        for (Layer& layer : net.layers) {
            for (double& w : layer.A.data) w = rng.uniform(-2.0, 2.0);
            for (double& b : layer.b) b = rng.uniform(-2.0, 2.0);
        }
        const DomainBox box{d, a.B, d == 1 ? 257 : 33};
        const LipschitzCheck chk = lipschitz_bound_check(net, act, box);
        if (!chk.ok) ++violations;
        csv += std::to_string(i) + "," + act.name() + "," + format_double(chk.empirical) + "," +
               format_double(chk.bound) + "," + (chk.ok ? "1" : "0") + "\n";
    }
    write_text(run.out / "data.csv", csv);
    run.add_output("data.csv");
    const json report = {{"count", a.count}, {"violations", violations}};
    write_text(run.out / "report.json", report.dump(2) + "\n");
    run.add_output("report.json");
    run.stdout_payload["report"] = report;
    if (!run.json_mode)
        std::cout << "checked " << a.count << " networks, " << violations << " violations\n";
    run.finish();
    return violations == 0 ? 0 : 1;
}

void add_common(CLI::App* cmd, std::string& out, bool& force, bool& json_mode,
                std::optional<std::uint64_t>& seed) {
    cmd->add_option("--out", out, "output directory (created per run)")->required();
    cmd->add_flag("--force", force, "replace the output directory if it exists");
    cmd->add_flag("--json", json_mode, "print a machine-readable summary to stdout");
    cmd->add_option("--seed", seed, "RNG seed (default: NETSPACE_SEED env var, else 0)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netspace: constructions and measurements for fixed-architecture "
                 "network realization sets"};
    app.require_subcommand(1);

    IdentityArgs id;
    CLI::App* c_id = app.add_subcommand("identity", "build a certified identity approximant");
    c_id->add_option("--activation", id.activation, "activation id, e.g. relu or parametric_relu:a=0.2");
    c_id->add_option("--d", id.d, "input dimension")->check(CLI::PositiveNumber);
    c_id->add_option("--layers", id.layers, "number of affine layers")->check(CLI::PositiveNumber);
    c_id->add_option("--eps", id.eps, "sup-error budget")->check(CLI::PositiveNumber);
    c_id->add_option("--B", id.B, "domain half-width")->check(CLI::PositiveNumber);
    c_id->add_option("--grid", id.grid, "certification grid points per axis");
    add_common(c_id, id.out, id.force, id.json_mode, id.seed);

    WitnessArgs w;
    CLI::App* c_w = app.add_subcommand("witness", "generate a non-closedness witness family");
    c_w->require_subcommand(1);
    CLI::App* c_ws = c_w->add_subcommand("step", "L^p convergence to a jump across a hyperplane");
    CLI::App* c_wd = c_w->add_subcommand("derivative", "uniform convergence to a derivative");
    CLI::App* c_wa = c_w->add_subcommand("analytic", "uniform convergence for bounded analytic activations");
    CLI::App* c_wh = c_w->add_subcommand("homogeneity", "uniform convergence to the homogeneous limit");
    for (CLI::App* sub : {c_ws, c_wd, c_wa, c_wh}) {
        sub->add_option("--activation", w.activation, "activation id");
        sub->add_option("--n-list", w.n_list, "comma-separated indices (default 1,2,4,...,1024)");
        sub->add_option("--d", w.d, "input dimension")->check(CLI::PositiveNumber);
        sub->add_option("--B", w.B, "domain half-width")->check(CLI::PositiveNumber);
        sub->add_option("--grid", w.grid, "grid points per axis");
        add_common(sub, w.out, w.force, w.json_mode, w.seed);
    }
    c_ws->add_option("--layers", w.layers, "network depth")->check(CLI::PositiveNumber);
    c_ws->add_option("--x-star", w.x_star, "hyperplane anchor point (comma list)");
    c_ws->add_option("--v", w.v, "unit normal of the hyperplane (comma list)");
    c_wd->add_option("--layers", w.layers, "network depth")->check(CLI::PositiveNumber);
    c_wd->add_option("--lambda", w.lambda, "slope of the inner affine map")->check(CLI::PositiveNumber);
    c_wa->add_option("--layers", w.layers, "network depth")->check(CLI::PositiveNumber);
    c_wa->add_option("--x-star", w.x_star, "expansion point (scalar)");
    c_wh->add_option("--r", w.r, "positive-side order");
    c_wh->add_option("--q", w.q, "negative-side order");
    c_wh->add_option("--s", w.s, "declared slack (default: measured)");

    InstabilityArgs inst;
    CLI::App* c_in = app.add_subcommand("instability", "inverse-instability family F_n -> 0 with exploding norms");
    c_in->add_option("--activation", inst.activation, "activation id");
    c_in->add_option("--arch", inst.arch, "architecture, e.g. 1,4,1");
    c_in->add_option("--n-list", inst.n_list, "comma-separated indices");
    c_in->add_option("--a", inst.a, "second-difference step (default: probed)");
    c_in->add_option("--x0", inst.x0, "center point (comma list, default 0)");
    c_in->add_option("--B", inst.B, "domain half-width")->check(CLI::PositiveNumber);
    c_in->add_option("--grid", inst.grid, "grid points per axis");
    add_common(c_in, inst.out, inst.force, inst.json_mode, inst.seed);

    CanonArgs canon;
    CLI::App* c_c = app.add_subcommand("canonicalize", "rewrite a ReLU network with domain-bounded biases");
    c_c->add_option("--in", canon.in, "input network JSON")->required();
    c_c->add_option("--B", canon.B, "domain half-width")->check(CLI::PositiveNumber);
    c_c->add_option("--grid", canon.grid, "grid points per axis");
    add_common(c_c, canon.out, canon.force, canon.json_mode, canon.seed);

    RankArgs rank;
    CLI::App* c_r = app.add_subcommand("rank-probe", "count linearly independent realizations vs parameters");
    c_r->add_option("--activation", rank.activation, "activation id");
    c_r->add_option("--in", rank.in, "directory of network JSON files (default: shipped ReLU ridge fixture)");
    c_r->add_option("--points", rank.points, "number of sample points")->check(CLI::PositiveNumber);
    c_r->add_option("--tau", rank.tau, "relative singular-value tolerance")->check(CLI::PositiveNumber);
    c_r->add_option("--B", rank.B, "domain half-width")->check(CLI::PositiveNumber);
    add_common(c_r, rank.out, rank.force, rank.json_mode, rank.seed);

    ExplodeArgs expl;
    CLI::App* c_e = app.add_subcommand("explode", "weight growth under training toward a boundary target");
    c_e->add_option("--activation", expl.activation, "activation id");
    c_e->add_option("--arch", expl.arch, "architecture");
    c_e->add_option("--target", expl.target, "step | deriv_limit | inset");
    c_e->add_option("--N-list", expl.N_list, "sample sizes");
    c_e->add_option("--optimizer", expl.optimizer, "gd | momentum");
    c_e->add_option("--momentum", expl.momentum, "momentum coefficient")->check(CLI::Range(0.0, 1.0));
    c_e->add_option("--step", expl.step, "gradient step size")->check(CLI::PositiveNumber);
    c_e->add_option("--iters", expl.iters, "iterations per sample size")->check(CLI::PositiveNumber);
    c_e->add_option("--B", expl.B, "domain half-width")->check(CLI::PositiveNumber);
    add_common(c_e, expl.out, expl.force, expl.json_mode, expl.seed);

    MidpointArgs mid;
    CLI::App* c_m = app.add_subcommand("midpoint-gap", "residual floor when regressing onto a midpoint of two realizations");
    c_m->add_option("--activation", mid.activation, "activation id");
    c_m->add_option("--arch", mid.arch, "architecture");
    c_m->add_option("--f1", mid.f1, "network JSON (default: shipped two-kink net)");
    c_m->add_option("--f2", mid.f2, "network JSON (default: shipped two-kink net, different kinks)");
    c_m->add_option("--restarts", mid.restarts, "random restarts")->check(CLI::PositiveNumber);
    c_m->add_option("--step", mid.step, "gradient step size")->check(CLI::PositiveNumber);
    c_m->add_option("--iters", mid.iters, "iterations per restart")->check(CLI::PositiveNumber);
    c_m->add_option("--B", mid.B, "domain half-width")->check(CLI::PositiveNumber);
    add_common(c_m, mid.out, mid.force, mid.json_mode, mid.seed);

    LipschitzArgs lip;
    CLI::App* c_l = app.add_subcommand("lipschitz-check", "verify the realization-map Lipschitz bound on random networks");
    c_l->add_option("--activation", lip.activation, "activation id (default: all)");
    c_l->add_option("--count", lip.count, "number of random networks")->check(CLI::PositiveNumber);
    c_l->add_option("--B", lip.B, "domain half-width")->check(CLI::PositiveNumber);
    add_common(c_l, lip.out, lip.force, lip.json_mode, lip.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
    }

    try {
        if (c_id->parsed()) return cmd_identity(id);
        if (c_ws->parsed()) return cmd_witness_step(w);
        if (c_wd->parsed()) return cmd_witness_derivative(w);
        if (c_wa->parsed()) return cmd_witness_analytic(w);
        if (c_wh->parsed()) return cmd_witness_homogeneity(w);
        if (c_in->parsed()) return cmd_instability(inst);
        if (c_c->parsed()) return cmd_canonicalize(canon);
        if (c_r->parsed()) return cmd_rank_probe(rank);
        if (c_e->parsed()) return cmd_explode(expl);
        if (c_m->parsed()) return cmd_midpoint_gap(mid);
        if (c_l->parsed()) return cmd_lipschitz_check(lip);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedActivation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
