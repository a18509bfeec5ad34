// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   acceptance [--seed N]

#include <chrono>
#include <iomanip>
#include <cstring>
#include <iostream>

#include "ffc/checks.hpp"
#include "golden_runner.hpp"

using namespace ffc;

namespace {

AxiomReport check_cli() {
    AxiomReport rep;
    auto cases = golden::load(FFC_GOLDEN_DIR);
    rep.expect(cases.size() >= 20, [&] { return "only " + std::to_string(cases.size()) + " golden programs"; });
    std::set<std::string> used;
    for (const auto& c : cases) {
        auto problem = golden::check(c);
        rep.expect(problem.empty(), [&] { return problem; });
        if (c.exit_code == 2)
            continue;
        auto e = dsl::parse(c.source);
        rep.expect(dsl::parse(dsl::to_source(e)) == e, [&] { return c.name + ": source round trip"; });
        for (const auto& h : golden::heads(e))
            used.insert(h);
    }
    for (const auto& family : golden::families()) {
        bool hit = false;
        for (const auto& h : family)
            hit = hit || used.count(h);
        rep.expect(hit, [&] { return "no golden program uses " + family[0]; });
    }
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    if (argc == 3 && std::strcmp(argv[1], "--seed") == 0)
        seed = std::stoull(argv[2]);

    struct Criterion {
        std::string title;
        std::function<AxiomReport(Rng&)> run;
    };
    double detection = 0;
    const auto& suites = check_suites();
    std::vector<Criterion> criteria = {
        {"factorization round trip and uniqueness", suites[0].run},
        {"normal-ordered product monoid laws", suites[1].run},
        {"transition law over generic parameters", suites[2].run},
        {"corolla category, operadic axioms, mutation detection",
         [&](Rng&) { return check_corolla_suite({3, 4, 2}, {2, 3, 1}, 0.95, &detection); }},
        {"contraction order independence", suites[4].run},
        {"framed genus-0 operad suite", suites[5].run},
        {"Comm over monoids", suites[6].run},
        {"CLI goldens, round trip, determinism", [](Rng&) { return check_cli(); }},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Rng rng(seed);
        auto start = std::chrono::steady_clock::now();
        AxiomReport rep;
        try {
            rep = criteria[i].run(rng);
        } catch (const std::exception& e) {
            rep.expect(false, [&] { return std::string("exception: ") + e.what(); });
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && rep.ok();
        std::cout << "criterion " << i + 1 << ": " << (rep.ok() ? "PASS" : "FAIL") << "  " << criteria[i].title
                  << " (" << rep.checks << " checks, " << rep.failed << " failed";
        if (i == 3)
            std::cout << ", detection " << detection;
        std::cout << ", " << std::fixed << std::setprecision(1) << secs << "s)" << std::defaultfloat << std::endl;
        for (const auto& f : rep.failures)
            std::cout << "    " << f << "\n";
    }
    return all ? 0 : 1;
}
