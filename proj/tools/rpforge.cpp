#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rpforge/pipeline.hpp"

using namespace rpforge;

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("rpforge");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("RPFORGE_LOG"))
        spdlog::set_level(spdlog::level::from_str(level));
}

struct Options {
    int n = 0;
    std::optional<int> k;
    bool single_group = false;
    unsigned precision = 256;
    double eps = std::ldexp(1.0, -64);
    std::string out;
    std::string stage = "all";
    int jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "json";
    std::string family;
    std::string k_policy = "sqrt";
    int n_max = 0;

    PipelineConfig config() const {
        PipelineConfig c;
        c.n = n;
        c.k = k;
        c.single_group = single_group;
        c.precision_bits = precision;
        c.eps = eps;
        if (!out.empty()) c.out_dir = out;
        c.stage = parse_stage(stage);
        c.jobs = jobs;
        c.format = parse_format(format);
        return c;
    }
};

void add_family_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "Ground set size")->required();
    cmd->add_option("--k", o.k, "Number of groups (default ceil(sqrt(n)))");
    cmd->add_flag("--single-group", o.single_group, "Use all nonempty subsets");
}

void add_output_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember({"json", "text"}));
}

void print(const Json& j, OutputFormat format) {
    if (format == OutputFormat::Json) std::cout << j.dump(2) << "\n";
    else std::cout << json_to_text(j);
}

int cmd_generate(const Options& o) {
    PipelineConfig c = o.config();
    c.stage = Stage::Family;
    c.validate();
    const SubsetFamily v = make_family(c);
    if (c.out_dir) write_text_file(*c.out_dir / "family.json", family_to_json(v).dump(2) + "\n");
    print(family_summary(v), c.format);
    return exit_code::ok;
}

int cmd_verify(const Options& o) {
    const OutputFormat format = parse_format(o.format);
    if (o.jobs < 1) throw UsageError("jobs must be at least 1");
    SubsetFamily v;
    if (!o.family.empty()) {
        try {
            v = family_from_json(read_json_file(o.family));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: invalid family file: " << e.what() << "\n";
            return exit_code::family;
        }
    } else if (o.n > 0) {
        PipelineConfig c = o.config();
        c.stage = Stage::Family;
        v = make_family(c);
    } else {
        throw UsageError("verify needs --family FILE or --n");
    }
    const VerifyOutcome outcome = verify_family(v, o.jobs);
    if (!o.out.empty()) write_text_file(std::filesystem::path(o.out) / "verify.json", outcome.report.dump(2) + "\n");
    print(outcome.report, format);
    return outcome.passed ? exit_code::ok : exit_code::family;
}

int cmd_pipeline(const Options& o) {
    const PipelineOutcome outcome = run_pipeline(o.config());
    print(outcome.summary, parse_format(o.format));
    return outcome.exit_code;
}

int cmd_bound_table(const Options& o) {
    const KPolicy policy = KPolicy::parse(o.k_policy);
    const auto rows = bound_table(o.n_max, policy);
    const Json j = bound_table_json(rows, policy);
    if (!o.out.empty()) write_text_file(std::filesystem::path(o.out) / "bound_table.json", j.dump(2) + "\n");
    if (parse_format(o.format) == OutputFormat::Json) std::cout << j.dump(2) << "\n";
    else std::cout << bound_table_text(rows);
    return exit_code::ok;
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();
    Options o;
    CLI::App app{"Centrally symmetric triangulations of real projective space"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Build a grouped subset family");
    add_family_flags(generate, o);
    add_output_flags(generate, o);

    auto* verify = app.add_subcommand("verify", "Check singletons, downward closure and exchange");
    verify->add_option("--family", o.family, "Family JSON file");
    verify->add_option("--n", o.n, "Ground set size (when no file is given)");
    verify->add_option("--k", o.k, "Number of groups");
    verify->add_flag("--single-group", o.single_group, "Use all nonempty subsets");
    verify->add_option("--jobs", o.jobs, "Worker threads");
    add_output_flags(verify, o);

    auto* pipeline = app.add_subcommand("pipeline", "Run family, hull, triangulation, quotient and homology");
    add_family_flags(pipeline, o);
    add_output_flags(pipeline, o);
    pipeline->add_option("--precision", o.precision, "MPFR precision in bits");
    pipeline->add_option("--eps", o.eps, "Certification tolerance");
    pipeline->add_option("--stage", o.stage, "Last stage to run")
        ->check(CLI::IsMember({"family", "verify", "hull", "triangulate", "quotient", "homology", "all"}));
    pipeline->add_option("--jobs", o.jobs, "Worker threads");

    auto* table = app.add_subcommand("bound-table", "Family sizes against the bound and the baseline");
    table->add_option("--n-max", o.n_max, "Largest n")->required();
    table->add_option("--k-policy", o.k_policy, "sqrt, single or a fixed k");
    add_output_flags(table, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*generate) return cmd_generate(o);
        if (*verify) return cmd_verify(o);
        if (*pipeline) return cmd_pipeline(o);
        return cmd_bound_table(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
}
