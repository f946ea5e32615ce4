#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "clusterspt/analysis.hpp"
#include "clusterspt/errors.hpp"
#include "clusterspt/report.hpp"

namespace clusterspt::cli {

namespace {

using report::Json;

struct LambdaRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

// "x" or "start:stop:step".
LambdaRange parse_lambda(const std::string& text) {
    LambdaRange r;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ParseError("--lambda: '" + text + "' is not start:stop:step");
        return v;
    };
    if (parts.size() == 1) {
        r.start = r.stop = num(parts[0]);
    } else if (parts.size() == 3) {
        r = {num(parts[0]), num(parts[1]), num(parts[2])};
    } else {
        throw ParseError("--lambda: '" + text + "' is not start:stop:step");
    }
    return r;
}

struct RunConfig {
    std::string command;
    int size = 9;
    std::string boundary = "open";
    std::string lambda = "0";
    std::optional<std::string> method;
    double tol = 1e-9;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 20110101;
    bool timings = false;
    int count = 8;
    bool global_symmetry = false;
    std::optional<std::string> tamper;
    bool local_only = false;
    std::vector<std::string> probes;
    std::optional<std::size_t> sample;
    unsigned threads = 0;
};

Json config_json(const RunConfig& c, const LatticeSpec& lattice, const LambdaRange& lambda, SolverMethod method) {
    Json j{{"command", c.command},
           {"size", lattice.length},
           {"boundary", std::string(to_string(lattice.boundary))},
           {"lambda", {{"start", report::number(lambda.start)},
                       {"stop", report::number(lambda.stop)},
                       {"step", report::number(lambda.step)}}},
           {"method", std::string(to_string(method))},
           {"tol", report::number(c.tol)},
           {"format", c.format},
           {"seed", c.seed}};
    if (c.command == "spectrum") j["count"] = c.count;
    if (c.command == "verify") {
        j["global_symmetry"] = c.global_symmetry;
        j["tamper"] = c.tamper ? Json(*c.tamper) : Json(nullptr);
    }
    if (c.command == "protect") {
        j["local_only"] = c.local_only;
        j["probes"] = c.probes;
        j["sample"] = c.sample ? Json(*c.sample) : Json(nullptr);
    }
    return j;
}

double single_lambda(const LambdaRange& r, const std::string& command) {
    if (r.start != r.stop) throw DomainError("--lambda: " + command + " takes a single value");
    return r.start;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int execute(const RunConfig& c, std::ostream& out) {
    const Stopwatch clock;
    const LatticeSpec lattice(c.size, parse_boundary(c.boundary));
    const LambdaRange lambda = parse_lambda(c.lambda);
    if (!(c.tol > 0.0)) throw DomainError("--tol must be positive");
    EngineOptions engine;
    engine.residual_rtol = c.tol;
    engine.seed = c.seed;
    const SolverMethod default_method = c.command == "scan" || lattice.length > engine.dense_max_sites
                                            ? SolverMethod::iterative
                                            : SolverMethod::dense;
    const SolverMethod method = c.method ? parse_method(*c.method) : default_method;

    Json results;
    Json verdict;
    int code = kSuccess;
    std::ostringstream csv;

    if (c.command == "verify") {
        const double lam = single_lambda(lambda, c.command);
        if (lam != 0.0) throw DomainError("--lambda: verify audits the unperturbed model; use 0");
        VerifyOptions opts;
        opts.require_global = c.global_symmetry;
        opts.tamper = c.tamper;
        opts.engine = engine;
        const VerifyReport rep = run_verification(lattice, opts);
        results = report::results_json(rep);
        verdict = report::verdict_json(rep);
        report::write_csv(csv, rep);
        code = rep.passed() ? kSuccess : kVerifiedFailure;
    } else if (c.command == "spectrum") {
        if (c.count < 1) throw DomainError("--count must be at least 1");
        const double lam = single_lambda(lambda, c.command);
        const OperatorSum h = cluster_hamiltonian(lattice) + ising_perturbation(lattice, lam);
        const SpectrumResult spec = eig_low(h, c.count, method, engine);
        results = report::results_json(spec);
        verdict = report::verdict_json(spec);
        report::write_csv(csv, spec);
    } else if (c.command == "protect") {
        const double lam = single_lambda(lambda, c.command);
        ProtectionOptions opts;
        opts.local_only = c.local_only;
        for (const auto& name : c.probes) opts.probes.push_back(parse_compact(name, lattice.length));
        opts.sample_bulk = c.sample;
        opts.seed = c.seed;
        opts.method = method;
        opts.engine = engine;
        if (!c.local_only && !lattice.admits_global_symmetry()) {
            throw DomainError("--size: the global symmetry needs an open chain with L = 3 (mod 6), L >= 9; "
                              "use --local-only for other sizes");
        }
        if (c.local_only && (!lattice.is_open() || lattice.length < 4)) {
            throw DomainError("--local-only needs an open chain with L >= 4");
        }
        const ProtectionReport rep = certify_protection(build_model(lattice, lam), opts);
        results = report::results_json(rep);
        verdict = report::verdict_json(rep);
        report::write_csv(csv, rep);
        code = rep.protected_ ? kSuccess : kVerifiedFailure;
    } else {
        const std::vector<double> grid = lambda_grid(lambda.start, lambda.stop, lambda.step);
        ScanOptions opts;
        opts.method = method;
        opts.engine = engine;
        opts.threads = c.threads;
        const ScanResult scan = phase_scan(lattice, grid, opts);
        std::optional<TransitionEstimate> estimate;
        if (scan.points.size() >= 5) estimate = transition_estimate(scan);
        results = report::results_json(scan, estimate);
        verdict = report::verdict_json(scan, estimate);
        report::write_csv(csv, scan);
        code = scan.anomalies.empty() ? kSuccess : kVerifiedFailure;
    }

    Json timings = Json::object();
    if (c.timings) timings["total_seconds"] = report::number(clock.seconds());
    const std::string text =
        c.format == "csv" ? csv.str()
                          : report::dump(report::envelope(config_json(c, lattice, lambda, method), std::move(results),
                                                           std::move(verdict), std::move(timings)));
    if (c.out.empty()) {
        out << text;
    } else {
        std::ofstream file(c.out, std::ios::binary);
        if (!file) throw DomainError("--out: cannot open '" + c.out + "' for writing");
        file << text;
        if (!file) throw DomainError("--out: write to '" + c.out + "' failed");
    }
    return code;
}

void add_common(CLI::App* sub, RunConfig& c, int default_size, const std::string& default_boundary) {
    c.size = default_size;
    c.boundary = default_boundary;
    sub->add_option("--size,-L", c.size, "Chain length L")->capture_default_str();
    sub->add_option("--boundary", c.boundary, "Boundary condition")
        ->check(CLI::IsMember({"open", "periodic"}))
        ->capture_default_str();
    sub->add_option("--lambda", c.lambda, "Ising coupling: a value or start:stop:step")->capture_default_str();
    sub->add_option("--method", c.method, "Eigensolver (default: dense up to L=12, else iterative)")
        ->check(CLI::IsMember({"dense", "iterative"}));
    sub->add_option("--tol", c.tol, "Relative eigenpair residual tolerance")->capture_default_str();
    sub->add_option("--out,-o", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "Seed for solver start vectors and probe sampling")->capture_default_str();
    sub->add_flag("--timings", c.timings, "Record wall-clock timings (output is then not reproducible)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster-state SPT verification and scans", "clusterspt"};
    app.require_subcommand(1);
    RunConfig c;

    auto* verify = app.add_subcommand("verify", "Stabilizer algebra, basis change and symmetry audits");
    auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues of H_C + H_I");
    auto* protect = app.add_subcommand("protect", "Certify ground-space protection by the Z2 x Z2 symmetry");
    auto* scan = app.add_subcommand("scan", "Ground-state observables across a lambda grid");
    // Only the selected subcommand's defaults matter; each call overwrites them.
    RunConfig cv, cs, cp, cn;
    add_common(verify, cv, 9, "open");
    add_common(spectrum, cs, 9, "open");
    add_common(protect, cp, 9, "open");
    add_common(scan, cn, 12, "periodic");
    cn.lambda = "0.5:1.5:0.05";
    scan->get_option("--lambda")->default_str(cn.lambda);

    verify->add_flag("--global-symmetry", cv.global_symmetry, "Require a size that admits the global symmetry");
    verify->add_option("--tamper", cv.tamper, "Replace one symmetry string by its literal block-product form")
        ->check(CLI::IsMember({"A1", "B1", "A2", "B2"}));
    spectrum->add_option("--count", cs.count, "Number of eigenpairs")->capture_default_str();
    protect->add_flag("--local-only", cp.local_only, "Use the edge-local symmetry");
    protect->add_option("--probe", cp.probes, "Probe operator, e.g. Z1Z9 (repeatable; replaces the default set)");
    protect->add_option("--sample", cp.sample, "Keep at most this many bulk single-site probes");
    scan->add_option("--threads", cn.threads, "Worker threads over lambda (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    if (verify->parsed()) c = cv;
    if (spectrum->parsed()) c = cs;
    if (protect->parsed()) c = cp;
    if (scan->parsed()) c = cn;
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

    try {
        return execute(c, out);
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kVerifiedFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"clusterspt"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace clusterspt::cli
