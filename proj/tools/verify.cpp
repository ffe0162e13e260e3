#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "crverify/fixtures.hpp"
#include "crverify/runner.hpp"

namespace {

constexpr int kUsage = 2;

int cmd_check(const std::optional<std::string>& spec_path, const std::optional<std::string>& fixture,
              const std::string& suites, const crv::RunOptions& base, const std::string& format) {
    try {
        crv::RunOptions opt = base;
        opt.suites = crv::parse_suites(suites);
        const crv::SpecFile spec = spec_path ? crv::load_spec(*spec_path) : crv::load_fixture(*fixture);
        const crv::ReportDocument doc = crv::run(spec, opt);
        std::cout << (format == "structured" ? crv::render_structured(doc) : crv::render_text(doc));
        std::cout.flush();
        return doc.exit_code();
    } catch (const crv::SpecError& e) {
        std::cerr << "verify: error: " << e.location() << ": " << e.message() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "verify: error: --suites: " << e.what() << "\n";
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verifier for contact CR-submanifolds of Sasakian statistical manifolds", "verify"};
    app.set_version_flag("--version", std::string(crv::kToolVersion));
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Run verification suites against a spec file or built-in fixture");
    std::optional<std::string> spec_path, fixture;
    std::string suites = "all";
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> tol;
    auto* spec_opt = check->add_option("--spec", spec_path, "Spec file (JSON)");
    auto* fix_opt = check->add_option("--fixture", fixture, "Built-in fixture name");
    spec_opt->excludes(fix_opt);
    check->add_option("--suites", suites, "Comma-separated: ambient,contact,submanifold,cr,product or all")
        ->capture_default_str();
    check->add_option("--seed", seed, "Sampling seed (overrides the input)");
    check->add_option("--samples", samples, "Sample count (overrides the input)")->check(CLI::PositiveNumber);
    check->add_option("--tol", tol, "Tolerance for every suite (overrides the input)")->check(CLI::PositiveNumber);
    check->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    auto* fixtures = app.add_subcommand("fixtures", "Inspect built-in fixtures");
    fixtures->require_subcommand(1);
    fixtures->add_subcommand("list", "List fixture names");
    auto* dump = fixtures->add_subcommand("dump", "Print a fixture as a spec file");
    std::string dump_name;
    dump->add_option("name", dump_name, "Fixture name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    if (check->parsed()) {
        if (!spec_path && !fixture) {
            std::cerr << "verify: error: check needs --spec or --fixture\n";
            return kUsage;
        }
        crv::RunOptions opt;
        opt.seed = seed;
        opt.samples = samples;
        opt.tolerance = tol;
        return cmd_check(spec_path, fixture, suites, opt, format);
    }
    if (fixtures->got_subcommand("list")) {
        for (const auto& f : crv::fixture_list()) std::cout << f.name << "  " << f.summary << "\n";
        return 0;
    }
    if (dump->parsed()) {
        const auto doc = crv::fixture_document(dump_name);
        if (!doc) {
            std::cerr << "verify: error: unknown fixture \"" << dump_name << "\"\n";
            return kUsage;
        }
        std::cout << *doc;
        return 0;
    }
    return kUsage;
}
