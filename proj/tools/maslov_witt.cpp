// Command-line front end.
//
//   maslov-witt run <scenario.json> [--seed N] [--out report.json]
//   maslov-witt props <family|all> [--cases N] [--seed N] [--out report.json]
//
// MASLOV_WITT_SEED is used when --seed is not given. Exit codes: 0 all
// tasks/properties pass, 1 any failure, 2 input error.

#include "msw/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed) {
    if (seed_given) return seed;
    if (const char* env = std::getenv("MASLOV_WITT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw msw::InputError("MASLOV_WITT_SEED is not an integer");
        }
    }
    return 0;
}

void emit(const msw::Json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw msw::InputError("cannot open output file: " + out_path);
        f << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Maslov-index / Witt-group computations over Q and F_p"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* run_cmd = app.add_subcommand("run", "evaluate a scenario file");
    run_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run_cmd->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) { seed_given = true; });
    run_cmd->add_option("--out", out_path, "write the report here instead of stdout");

    std::string family = "all";
    int cases = 100;
    auto* props_cmd = app.add_subcommand("props", "run a property family (or 'all')");
    props_cmd->add_option("family", family, "family name or 'all' (default)");
    props_cmd->add_option("--cases", cases, "number of random cases")->check(CLI::PositiveNumber);
    props_cmd->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) { seed_given = true; });
    props_cmd->add_option("--out", out_path, "write the JSON report here");
    bool list_families = false;
    props_cmd->add_flag("--list", list_families, "list available families and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            std::ifstream f(scenario_path, std::ios::binary);
            if (!f) throw msw::InputError("cannot open scenario file: " + scenario_path);
            std::stringstream ss;
            ss << f.rdbuf();
            auto scenario = msw::parse_scenario(ss.str());
            auto report = msw::run_scenario(scenario, resolve_seed(seed_given, seed));
            emit(report, out_path);
            return msw::exit_code(report);
        }
        // props
        if (list_families) {
            for (auto& spec : msw::family_registry())
                std::cout << spec.name << "  -  " << spec.description << "\n";
            return 0;
        }
        std::vector<const msw::FamilySpec*> picked;
        if (family == "all") {
            for (auto& spec : msw::family_registry()) picked.push_back(&spec);
        } else {
            auto* spec = msw::find_family(family);
            if (!spec) throw msw::InputError("unknown property family '" + family + "'");
            picked.push_back(spec);
        }
        std::uint64_t s = resolve_seed(seed_given, seed);
        msw::Json out = msw::Json::array();
        int failures = 0;
        for (auto* spec : picked) {
            auto report = msw::run_family(*spec, cases, s);
            failures += static_cast<int>(report.failures.size());
            std::cout << (report.failures.empty() ? "pass" : "FAIL") << "  " << spec->name << "  "
                      << report.passed << "/" << report.cases;
            for (auto& [k, v] : report.info_counts) std::cout << "  [" << k << ": " << v << "]";
            std::cout << "\n";
            out.push_back(msw::family_report_to_json(report));
        }
        if (!out_path.empty()) emit(out, out_path);
        return failures == 0 ? 0 : 1;
    } catch (const msw::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
