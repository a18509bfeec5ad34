#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>

#include "ffc/random.hpp"
#include "golden_runner.hpp"

using namespace ffc;
using dsl::Expr;

namespace {

Expr sym(const std::string& s) { return Expr{Expr::Type::Symbol, s, {}, 1, 1}; }
Expr num(const std::string& s) { return Expr{Expr::Type::Number, s, {}, 1, 1}; }
Expr list(std::vector<Expr> items) { return Expr{Expr::Type::List, "", std::move(items), 1, 1}; }

Expr random_expr(Rng& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
    static const std::vector<std::string> symbols{"e1", "u", "inf", "t", "nprod", "glue", "*", "x_1", "a-b"};
    static const std::vector<std::string> numbers{"0", "-3", "12", "1/2", "-7/3"};
    switch (pick(rng)) {
    case 0: return sym(symbols[std::uniform_int_distribution<std::size_t>(0, symbols.size() - 1)(rng)]);
    case 1: return num(numbers[std::uniform_int_distribution<std::size_t>(0, numbers.size() - 1)(rng)]);
    default: {
        std::vector<Expr> items;
        int n = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int k = 0; k < n; ++k)
            items.push_back(random_expr(rng, depth - 1));
        return list(std::move(items));
    }
    }
}

template <class F>
ParseError parse_error(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "expected a parse error";
    return ParseError("none", "none");
}

std::pair<int, std::string> run_binary(const std::string& args) {
    std::string cmd = std::string(FFC_BINARY) + " " + args;
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p))
        out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST(Parse, Examples) {
    EXPECT_EQ(dsl::parse("(rinv (radd 1 e1))"), list({sym("rinv"), list({sym("radd"), num("1"), sym("e1")})}));
    auto g = dsl::parse("(glue (ann () t ()) (ann () s ()))");
    EXPECT_EQ(g, list({sym("glue"), list({sym("ann"), list({}), sym("t"), list({})}),
                       list({sym("ann"), list({}), sym("s"), list({})})}));
    auto withComments = dsl::parse("; a comment\n(rinv\n  ; another\n  (radd 1 e1))");
    EXPECT_EQ(withComments, dsl::parse("(rinv (radd 1 e1))"));
    EXPECT_EQ(withComments.items[1].line, 4);
    EXPECT_EQ(withComments.items[1].column, 3);
}

TEST(Parse, Errors) {
    auto e = parse_error([] { (void)dsl::parse("(rinv e1"); });
    EXPECT_EQ(e.code(), "SyntaxError");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 9);
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);

    EXPECT_EQ(parse_error([] { (void)dsl::parse(")"); }).column(), 1);
    EXPECT_EQ(parse_error([] { (void)dsl::parse("(a) (b)"); }).column(), 5);
    EXPECT_EQ(parse_error([] { (void)dsl::parse("1/0"); }).code(), "SyntaxError");
    EXPECT_EQ(parse_error([] { (void)dsl::parse("   "); }).code(), "SyntaxError");
}

TEST(Parse, RoundTrip) {
    Rng rng(97);
    for (int i = 0; i < 500; ++i) {
        Expr e = random_expr(rng, 4);
        std::string text = dsl::to_source(e);
        EXPECT_EQ(dsl::parse(text), e) << text;
        EXPECT_EQ(dsl::to_source(dsl::parse(text)), text);
    }
    for (const auto& c : golden::load(FFC_GOLDEN_DIR)) {
        if (c.exit_code == 2)
            continue;
        Expr e = dsl::parse(c.source);
        EXPECT_EQ(dsl::parse(dsl::to_source(e)), e) << c.name;
    }
}

TEST(TypeCheck, ReportsExpectedAndActualKinds) {
    dsl::Checker checker(1);
    auto e = parse_error([&] { (void)checker.check(dsl::parse("(nprod (nf () 1 ()) 3)")); });
    EXPECT_EQ(e.code(), "TypeError");
    EXPECT_NE(std::string(e.what()).find("(nprod normalform normalform normalform...)"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("got (nprod normalform int)"), std::string::npos);

    dsl::Checker params(2);
    EXPECT_EQ(params.check(dsl::parse("(radd b (rmul a b) e2 eps)")), dsl::Kind::Ring);
    EXPECT_EQ(params.params(), (std::vector<std::string>{"b", "a"}));
}

TEST(Run, SpecExamples) {
    auto inv = run_program("(rinv (radd 1 e1))", {1, 2});
    EXPECT_EQ(inv.exit_code, 0);
    auto j = Json::parse(inv.output);
    auto s = spec_from_json(j["spec"]);
    auto e = RingElem::var(s, 1);
    EXPECT_EQ(ring_from_json(s, j["value"]), RingElem::one(s) - e + e * e);

    auto prod = run_program("(nprod (nf () s ()) (nf () t ()))", {1, 3});
    auto jp = Json::parse(prod.output);
    auto sp = spec_from_json(jp["spec"]);
    EXPECT_EQ(normal_form_from_json(sp, jp["value"]),
              NormalForm::scaling(RingElem::param(sp, 0) * RingElem::param(sp, 1)));

    auto bad = run_program("(rinv e1)", {1, 3});
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_EQ(Json::parse(bad.output)["error"]["code"], "NotAUnit");
}

TEST(Run, RingFlag) {
    auto r = parse_ring_flag("m=2,N=4");
    EXPECT_EQ(r.num_vars, 2);
    EXPECT_EQ(r.trunc_order, 4);
    EXPECT_THROW((void)parse_ring_flag("m=2"), ParseError);
    EXPECT_THROW((void)parse_ring_flag("m=1,N=0"), Error);
}

TEST(Serialize, ValuesRoundTrip) {
    Rng rng(101);
    auto s = make_spec(2, 3);
    for (int i = 0; i < 30; ++i) {
        auto x = random_nilpotent(s, rng) + random_unit(s, rng);
        EXPECT_EQ(ring_from_json(s, Json::parse(to_json(x).dump())), x);
        auto a = random_normal_form(s, rng, MidKind::Any);
        EXPECT_EQ(normal_form_from_json(s, Json::parse(to_json(a).dump())), a);
        auto c = i % 6 == 0 ? random_bare(s, rng) : random_curve(s, rng);
        EXPECT_EQ(curve_from_json(s, Json::parse(to_json(c).dump())), c);
    }
    EXPECT_EQ(*spec_from_json(spec_to_json(make_spec(2, 3, {"s"}))), *make_spec(2, 3, {"s"}));
}

TEST(Golden, AllCasesMatch) {
    auto cases = golden::load(FFC_GOLDEN_DIR);
    EXPECT_GE(cases.size(), 20u);
    const bool update = std::getenv("FFC_UPDATE_GOLDENS") != nullptr;
    for (const auto& c : cases) {
        if (update) {
            std::ofstream(c.expected, std::ios::binary) << golden::run(c).output;
            continue;
        }
        EXPECT_EQ(golden::check(c), "");
    }
}

TEST(Golden, CoverEveryOperationFamily) {
    std::set<std::string> used;
    for (const auto& c : golden::load(FFC_GOLDEN_DIR))
        if (c.exit_code != 2)
            for (const auto& h : golden::heads(dsl::parse(c.source)))
                used.insert(h);
    for (const auto& family : golden::families()) {
        bool hit = false;
        for (const auto& h : family)
            hit = hit || used.count(h);
        EXPECT_TRUE(hit) << family[0];
    }
}

TEST(Binary, MatchesLibraryAndIsDeterministic) {
    auto cases = golden::load(FFC_GOLDEN_DIR);
    ASSERT_FALSE(cases.empty());
    for (const auto& c : cases) {
        auto args = "--pretty --ring " + c.ring + " " + c.program.string();
        auto first = run_binary(args);
        auto second = run_binary(args);
        EXPECT_EQ(first.first, c.exit_code) << c.name;
        EXPECT_EQ(first.second, golden::slurp(c.expected)) << c.name;
        EXPECT_EQ(first.second, second.second) << c.name;
    }
}

TEST(Binary, UsageErrors) {
    EXPECT_EQ(run_binary("-e '(radd 1 e1)' 2>/dev/null").first, 2);
    EXPECT_EQ(run_binary("--ring m=1 -e '(radd 1 e1)'").first, 2);
    EXPECT_EQ(run_binary("--check nosuch").first, 2);
    auto env = run_binary("-e '(radd 1 e1)'");
    setenv("FFC_RING", "m=1,N=2", 1);
    auto with_env = run_binary("-e '(radd 1 e1)'");
    unsetenv("FFC_RING");
    EXPECT_EQ(env.first, 2);
    EXPECT_EQ(with_env.first, 0);
    EXPECT_EQ(with_env.second, run_program("(radd 1 e1)", {1, 2}).output);
}
