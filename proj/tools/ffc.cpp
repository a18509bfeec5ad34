// ffc: evaluate expression-language programs or run the property suites.
//
//   ffc --ring m=1,N=3 -e '(rinv (radd 1 e1))'
//   ffc --ring m=2,N=3 program.ffc
//   ffc --check fld --seed 7
//
// The ring defaults to $FFC_RING. Exit codes: 0 ok, 1 domain error or a
// failed suite, 2 parse, type or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

#include "ffc/checks.hpp"
#include "ffc/cli.hpp"

namespace {

int usage_error(const std::string& code, const std::string& msg, bool pretty) {
    std::cout << ffc::dump(ffc::error_json(ffc::Error(code, code + ": " + msg)), pretty);
    return 2;
}

int run_check(const std::string& name, std::uint64_t seed, bool pretty) {
    using namespace ffc;
    const auto& suites = check_suites();
    std::vector<const Suite*> chosen;
    for (const auto& s : suites)
        if (name == "all" || s.name == name)
            chosen.push_back(&s);
    if (chosen.empty()) {
        std::string names;
        for (const auto& s : suites)
            names += " " + s.name;
        return usage_error("UnknownSuite", "no suite '" + name + "'; available: all" + names, pretty);
    }
    Json out = Json::array();
    bool ok = true;
    for (const auto* s : chosen) {
        Rng rng(seed);
        AxiomReport rep = s->run(rng);
        ok = ok && rep.ok();
        out.push_back(Json{{"suite", s->name},
                           {"description", s->description},
                           {"seed", seed},
                           {"checks", rep.checks},
                           {"failed", rep.failed},
                           {"ok", rep.ok()},
                           {"failures", rep.failures}});
    }
    std::cout << dump(chosen.size() == 1 ? out[0] : out, pretty);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Framed formal curves: expression evaluator and property suites"};
    std::string ring, expr, file, check;
    std::uint64_t seed = 1;
    bool json = false, pretty = false;
    app.add_option("--ring", ring, "Artin ring Q[e1..em]/m^(N+1) as m=<int>,N=<int> (default $FFC_RING)");
    app.add_option("-e,--expr", expr, "program text");
    app.add_option("file", file, "program file ('-' or absent: stdin)");
    app.add_option("--check", check, "run a property suite (or 'all')");
    app.add_option("--seed", seed, "seed for randomized suites");
    auto* json_flag = app.add_flag("--json", json, "compact JSON output (default)");
    app.add_flag("--pretty", pretty, "indented JSON output")->excludes(json_flag);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (!check.empty())
        return run_check(check, seed, pretty);

    if (ring.empty())
        if (const char* env = std::getenv("FFC_RING"))
            ring = env;
    if (ring.empty())
        return usage_error("InvalidSpec", "no ring given; pass --ring m=<int>,N=<int> or set FFC_RING", pretty);

    std::string source;
    if (!expr.empty()) {
        source = expr;
    } else if (!file.empty() && file != "-") {
        std::ifstream in(file);
        if (!in)
            return usage_error("FileNotFound", "cannot read " + file, pretty);
        source.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        source.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }

    ffc::RingFlag flag;
    try {
        flag = ffc::parse_ring_flag(ring);
    } catch (const ffc::Error& e) {
        std::cout << ffc::dump(ffc::error_json(e), pretty);
        return 2;
    }
    auto result = ffc::run_program(source, flag, pretty);
    std::cout << result.output;
    return result.exit_code;
}
