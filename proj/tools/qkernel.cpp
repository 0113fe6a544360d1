// qkernel: quasi-kernels, kernels and conjecture sweeps from the command line.
//
// Exit codes: 0 success, 1 negative verdict or internal failure, 2 parse or
// usage error, 3 sweep found a violation, 4 solve returned a valid set that
// misses the bound.

#include "qk/errors.hpp"
#include "qk/harness.hpp"
#include "qk/io.hpp"
#include "qk/json.hpp"
#include "qk/kernel.hpp"
#include "qk/quasi_kernel.hpp"
#include "qk/reductions.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kViolation = 3, kOutsideBound = 4 };

struct Options {
    std::string input = "-";
    std::string format = "edgelist";
    std::string output = "text";
    bool trace = false;
    std::size_t oracle_cap = qk::kDefaultOracleCap;
    std::uint64_t coloring_budget = qk::ColoringConfig{}.node_budget;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    bool timings = false;

    // validate
    std::vector<std::string> vertices;
    // sweep
    std::size_t n_min = 1;
    std::size_t n_max = 4;
    std::string mode = "conjecture3";
    std::string engine = "oracle";
    // generate
    std::string family;
    std::vector<std::string> params;
    std::size_t parts = 4;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

qk::SolveConfig solve_config(const Options& o) {
    qk::SolveConfig c;
    c.oracle_cap = o.oracle_cap;
    c.coloring.node_budget = o.coloring_budget;
    c.coloring.seed = o.seed;
    return c;
}

qk::Digraph load(const Options& o) {
    const auto format = qk::io::parse_format(o.format);
    if (o.input == "-")
        return qk::io::read(std::cin, format);
    std::ifstream file(o.input);
    if (!file)
        throw UsageError("cannot open '" + o.input + "'");
    return qk::io::read(file, format);
}

template <class T>
T parse_number(const std::string& text, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    return value;
}

double parse_probability(const std::string& text) {
    std::istringstream in(text);
    double p = -1;
    in >> p;
    if (!in || !in.eof() || p < 0.0 || p > 1.0)
        throw UsageError("invalid probability '" + text + "'");
    return p;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        parts.push_back(item);
    return parts;
}

void print_certificate(const qk::Certificate& cert, std::size_t n) {
    std::cout << "n " << n << '\n' << "kernel";
    for (auto v : cert.kernel_set)
        std::cout << ' ' << v;
    std::cout << '\n'
              << "size " << cert.kernel_set.size() << '\n'
              << "bound_numerator " << cert.bound_numerator << '\n'
              << "valid " << (cert.valid ? "true" : "false") << '\n'
              << "within_bound " << (cert.within_bound ? "true" : "false") << '\n'
              << "method " << cert.method << '\n';
}

int cmd_solve(const Options& o) {
    const qk::Digraph d = load(o);
    qk::SolveResult result;
    try {
        result = qk::solve(d, solve_config(o));
    } catch (const qk::ConstructionError& e) {
        std::cerr << "internal validation failed: " << e.what() << '\n';
        return kFailed;
    }
    const auto& cert = result.certificate;
    if (o.output == "json") {
        nlohmann::json j = cert;
        j["bound_guaranteed"] = result.bound_guaranteed;
        if (o.trace)
            j["trace"] = result.trace;
        std::cout << j.dump(2) << '\n';
    } else {
        print_certificate(cert, d.vertex_count());
        if (o.trace)
            std::cout << "trace " << result.trace.dump() << '\n';
    }
    if (!cert.valid)
        return kFailed;
    return cert.within_bound ? kOk : kOutsideBound;
}

int cmd_kernel(const Options& o) {
    const qk::Digraph d = load(o);
    qk::KernelResult result;
    try {
        result = qk::compute_kernel(d, o.oracle_cap);
    } catch (const qk::KernelNotFound&) {
        std::cout << "no kernel exists\n";
        return kFailed;
    } catch (const qk::CapExceeded& e) {
        std::cerr << e.what() << '\n';
        return kFailed;
    }
    if (o.output == "json") {
        std::cout << nlohmann::json{{"kernel", *result.kernel}, {"method", qk::to_string(result.method)}}.dump(2)
                  << '\n';
    } else {
        std::cout << "kernel";
        for (auto v : *result.kernel)
            std::cout << ' ' << v;
        std::cout << "\nmethod " << qk::to_string(result.method) << '\n';
    }
    return kOk;
}

int cmd_validate(const Options& o) {
    const qk::Digraph d = load(o);
    qk::VertexSet k(d.vertex_count());
    for (const auto& token : o.vertices) {
        const auto v = parse_number<std::uint64_t>(token, "vertex");
        if (v >= d.vertex_count())
            throw UsageError("vertex " + token + " out of range for n = " + std::to_string(d.vertex_count()));
        k.insert(static_cast<qk::Vertex>(v));
    }
    const auto cert = qk::check_certificate(d, k, "user");
    std::string reason;
    if (!cert.valid)
        reason = qk::is_independent(d, k) ? "not every vertex is within distance 2" : "not independent";
    if (o.output == "json") {
        nlohmann::json j = cert;
        if (!cert.valid)
            j["reason"] = reason;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (cert.valid ? "valid" : "invalid: " + reason) << '\n'
                  << "size " << k.size() << '\n'
                  << "bound_numerator " << cert.bound_numerator << '\n'
                  << "within_bound " << (cert.within_bound ? "true" : "false") << '\n';
    }
    return cert.valid ? kOk : kFailed;
}

int cmd_sweep(const Options& o) {
    qk::harness::SweepConfig config;
    config.n_min = o.n_min;
    config.n_max = o.n_max;
    config.mode = qk::harness::parse_mode(o.mode);
    config.engine = qk::harness::parse_engine(o.engine);
    config.jobs = o.jobs;
    config.timings = o.timings;
    config.solve = solve_config(o);
    if (config.n_min > config.n_max)
        throw UsageError("--n-min exceeds --n-max");
    const auto report = qk::harness::sweep(config);
    if (o.output == "csv")
        qk::harness::write_csv(std::cout, report);
    else if (o.output == "json")
        std::cout << qk::harness::to_json(report).dump(2) << '\n';
    else
        qk::harness::write_text(std::cout, report);
    if (report.construction_failures > 0)
        std::cerr << report.construction_failures << " construction failure(s)\n";
    return report.violations.empty() ? kOk : kViolation;
}

int cmd_generate(const Options& o) {
    namespace h = qk::harness;
    const auto& p = o.params;
    auto need = [&](std::size_t count, const char* usage) {
        if (p.size() != count)
            throw UsageError(std::string("usage: generate ") + usage);
    };
    qk::Digraph d;
    if (o.family == "cycle-union") {
        need(1, "cycle-union L1,L2,...");
        std::vector<unsigned> lengths;
        for (const auto& part : split(p[0], ','))
            lengths.push_back(parse_number<unsigned>(part, "cycle length"));
        d = h::gen_cycle_union(lengths);
    } else if (o.family == "star-triangle") {
        need(1, "star-triangle S");
        d = h::gen_star_triangle(parse_number<std::size_t>(p[0], "source count"));
    } else if (o.family == "bipartite") {
        need(3, "bipartite S T I-J,I-J,...");
        std::vector<std::pair<qk::Vertex, qk::Vertex>> edges;
        for (const auto& part : split(p[2], ',')) {
            auto ends = split(part, '-');
            if (ends.size() != 2)
                throw UsageError("invalid edge '" + part + "' (expected I-J)");
            edges.emplace_back(parse_number<qk::Vertex>(ends[0], "vertex"), parse_number<qk::Vertex>(ends[1], "vertex"));
        }
        d = h::gen_bipartite_orientation(parse_number<std::size_t>(p[0], "size"),
                                         parse_number<std::size_t>(p[1], "size"), edges);
    } else if (o.family == "random") {
        need(2, "random N P");
        d = h::gen_random(parse_number<std::size_t>(p[0], "vertex count"), parse_probability(p[1]), o.seed);
    } else if (o.family == "kpartite") {
        need(2, "kpartite N P");
        d = h::gen_random_kpartite_orientation(parse_number<std::size_t>(p[0], "vertex count"), o.parts,
                                               parse_probability(p[1]), o.seed);
    } else if (o.family == "random-arcs") {
        need(2, "random-arcs N M");
        d = h::gen_random_arcs(parse_number<std::size_t>(p[0], "vertex count"),
                               parse_number<std::size_t>(p[1], "arc count"), o.seed);
    } else if (o.family == "code") {
        need(2, "code N CODE");
        d = h::digraph_from_code(parse_number<std::size_t>(p[0], "vertex count"),
                                 parse_number<std::uint64_t>(p[1], "code"));
    } else {
        throw UsageError("unknown family '" + o.family + "'");
    }
    qk::io::write(std::cout, d, qk::io::parse_format(o.format));
    return kOk;
}

constexpr const char* kFooter = R"(Text output is one "key value" pair per line.
  solve     n, kernel (members), size, bound_numerator, valid, within_bound, method
            and, under --trace, one "trace <json>" line
  kernel    kernel (members), method; or "no kernel exists"
  validate  valid | invalid: <reason>, size, bound_numerator, within_bound
  sweep     mode, engine, n_range, seed, instances, violations, tight, max_ratio,
            construction_failures, then one "violation <id> ..." line each

Exit codes: 0 ok, 1 negative verdict or internal failure, 2 parse/usage error,
3 sweep violation, 4 solve result valid but outside the bound.)";

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Quasi-kernels and kernels of digraphs", "qkernel"};
    app.footer(kFooter);
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "Input file, '-' for standard input")->capture_default_str();
        sub->add_option("--format", o.format, "Input format")
            ->check(CLI::IsMember({"edgelist", "dot"}))
            ->capture_default_str();
    };
    auto add_output = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--output", o.output, "Output mode")->check(CLI::IsMember(allowed))->capture_default_str();
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--oracle-cap", o.oracle_cap, "Largest n for exact oracles")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--coloring-budget", o.coloring_budget, "Backtracking nodes before the heuristic")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--seed", o.seed, "Seed for randomized steps")->capture_default_str();
    };

    auto* solve = app.add_subcommand("solve", "Quasi-kernel certificate against (n + |S| - |N+(S)|)/2");
    add_input(solve);
    add_output(solve, {"text", "json"});
    add_solver(solve);
    solve->add_flag("--trace", o.trace, "Include the reduction chain and construction traces");

    auto* kernel = app.add_subcommand("kernel", "Kernel by source peeling, Richardson or exact search");
    add_input(kernel);
    add_output(kernel, {"text", "json"});
    kernel->add_option("--oracle-cap", o.oracle_cap, "Largest residual for exact search")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Check that a vertex list is a quasi-kernel");
    validate->add_option("input", o.input, "Input file, '-' for standard input")->required();
    validate->add_option("vertices", o.vertices, "Candidate quasi-kernel");
    validate->add_option("--format", o.format, "Input format")
        ->check(CLI::IsMember({"edgelist", "dot"}))
        ->capture_default_str();
    add_output(validate, {"text", "json"});

    auto* sweep = app.add_subcommand("sweep", "Exhaustive bound check over all labeled digraphs");
    sweep->add_option("--n-min", o.n_min, "Smallest vertex count")->capture_default_str();
    sweep->add_option("--n-max", o.n_max, "Largest vertex count (at most 5)")
        ->check(CLI::Range(0, 5))
        ->capture_default_str();
    sweep->add_option("--mode", o.mode, "Bound to check")
        ->check(CLI::IsMember({"conjecture2", "conjecture3"}))
        ->capture_default_str();
    sweep->add_option("--engine", o.engine, "Minimum oracle or solver pipeline")
        ->check(CLI::IsMember({"oracle", "solver"}))
        ->capture_default_str();
    sweep->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_flag("--timings", o.timings, "Fill the micros column (breaks byte-reproducibility)");
    add_output(sweep, {"text", "csv", "json"});
    add_solver(sweep);

    auto* generate = app.add_subcommand("generate", "Emit a generated digraph");
    generate
        ->add_option("family", o.family,
                     "cycle-union | star-triangle | bipartite | random | kpartite | random-arcs | code")
        ->required();
    generate->add_option("params", o.params, "Family parameters");
    generate->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"edgelist", "dot"}))
        ->capture_default_str();
    generate->add_option("--seed", o.seed, "Seed for random families")->capture_default_str();
    generate->add_option("--parts", o.parts, "Part count for kpartite")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*solve)
            return cmd_solve(o);
        if (*kernel)
            return cmd_kernel(o);
        if (*validate)
            return cmd_validate(o);
        if (*sweep)
            return cmd_sweep(o);
        return cmd_generate(o);
    } catch (const qk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const qk::InvalidDigraph& e) {
        std::cerr << "invalid digraph: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const qk::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const qk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
}
