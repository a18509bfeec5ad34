#pragma once

// Golden programs live in tests/golden as NAME.ffc with the expected
// pretty-printed output in NAME.json. The header comments give the ring
// and, for failing programs, the exit code:
//
//   ; ring m=1,N=2
//   ; exit 1

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ffc/cli.hpp"

namespace golden {

namespace fs = std::filesystem;

struct Case {
    std::string name;
    fs::path program, expected;
    std::string source;
    std::string ring;
    int exit_code = 0;
};

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<Case> load(const fs::path& dir) {
    std::vector<Case> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".ffc")
            continue;
        Case c;
        c.name = entry.path().stem().string();
        c.program = entry.path();
        c.expected = fs::path(entry.path()).replace_extension(".json");
        c.source = slurp(c.program);
        std::istringstream lines(c.source);
        std::string line;
        while (std::getline(lines, line) && line.rfind(";", 0) == 0) {
            if (line.rfind("; ring ", 0) == 0)
                c.ring = line.substr(7);
            else if (line.rfind("; exit ", 0) == 0)
                c.exit_code = std::stoi(line.substr(7));
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
    return out;
}

inline ffc::RunResult run(const Case& c) { return ffc::run_program(c.source, ffc::parse_ring_flag(c.ring), true); }

/// Empty when the case matches; otherwise what went wrong.
inline std::string check(const Case& c) {
    auto got = run(c);
    if (got.exit_code != c.exit_code)
        return c.name + ": exit code " + std::to_string(got.exit_code) + ", expected " + std::to_string(c.exit_code);
    if (!fs::exists(c.expected))
        return c.name + ": missing " + c.expected.filename().string();
    if (got.output != slurp(c.expected))
        return c.name + ": output differs from " + c.expected.filename().string();
    if (run(c).output != got.output)
        return c.name + ": output is not deterministic";
    return {};
}

/// Operation heads used anywhere in the programs.
inline std::set<std::string> heads(const ffc::dsl::Expr& e) {
    std::set<std::string> out;
    if (!e.head().empty())
        out.insert(e.head());
    for (const auto& x : e.items)
        for (auto& h : heads(x))
            out.insert(h);
    return out;
}

/// Operation families every golden suite must exercise.
inline const std::vector<std::vector<std::string>>& families() {
    static const std::vector<std::vector<std::string>> f = {
        {"radd", "rsub", "rmul"}, {"mul"}, {"invert", "rinv"}, {"mono", "ladd"}, {"subst"}, {"cinv"},
        {"aut"}, {"compose"}, {"factor"}, {"nf"}, {"nprod"}, {"ann"}, {"glue"}, {"transition"},
        {"graph", "dgraph"}, {"collapse"}, {"split"}, {"morphism"}, {"curve", "pcurve"}, {"act"},
        {"angle"}, {"angles"}, {"hour"}, {"ccompose"},
    };
    return f;
}

} // namespace golden
