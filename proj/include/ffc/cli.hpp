#pragma once

// Program runner behind the `ffc` binary. Kept in the library so the golden
// tests can run programs in process.

#include <regex>
#include <sstream>
#include <string>

#include "ffc/dsl.hpp"
#include "ffc/serialize.hpp"

namespace ffc {

struct RingFlag {
    int num_vars = 1;
    int trunc_order = 1;
};

/// "m=<int>,N=<int>"; N is the largest surviving degree.
inline RingFlag parse_ring_flag(const std::string& text) {
    static const std::regex re(R"(\s*m\s*=\s*([0-9]+)\s*,\s*N\s*=\s*([0-9]+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw ParseError("InvalidSpec", "InvalidSpec: expected --ring m=<int>,N=<int>, got '" + text + "'");
    RingFlag r{std::stoi(m[1].str()), std::stoi(m[2].str())};
    (void)make_spec(r.num_vars, r.trunc_order);
    return r;
}

namespace detail {

template <class T>
std::string display(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

struct ValueJson {
    std::optional<SpecRef> spec; ///< when the value carries its own ring
    Json value;
    std::optional<std::string> text;
};

inline ValueJson encode(const dsl::Value& v) {
    using namespace dsl;
    return std::visit(
        [](const auto& x) -> ValueJson {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return {{}, x.get_str(), {}};
            else if constexpr (std::is_same_v<T, Nil>)
                return {{}, Json::array(), {}};
            else if constexpr (std::is_same_v<T, GraphValue>)
                return {{}, to_json(x.graph, x.directed), {}};
            else if constexpr (std::is_same_v<T, Multicorolla>)
                return {{}, to_json(x), to_string(x)};
            else if constexpr (std::is_same_v<T, CorollaMorphism>)
                return {{}, to_json(x), to_string(x)};
            else if constexpr (std::is_same_v<T, std::vector<int>>)
                return {{}, Json(x), {}};
            else if constexpr (std::is_same_v<T, Angles>) {
                Json out = Json::array();
                std::string text;
                for (const auto& a : x.values) {
                    out.push_back(to_json(a));
                    text += (text.empty() ? "" : ", ") + display(a);
                }
                return {{}, out, "(" + text + ")"};
            } else if constexpr (std::is_same_v<T, MarkedTree>)
                return {{}, to_json(x), display(x)};
            else if constexpr (std::is_same_v<T, StableTreeCurve>)
                return {x.spec, to_json(x), display(x)};
            else if constexpr (std::is_same_v<T, P1Point>)
                return {x.spec(), to_json(x), x.to_string()};
            else
                return {x.spec(), to_json(x), display(x)};
        },
        v);
}

} // namespace detail

struct RunResult {
    int exit_code = 0;
    std::string output;
};

inline std::string dump(const Json& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

inline Json error_json(const Error& e) {
    Json err{{"code", e.code()}, {"message", e.what()}};
    if (const auto* p = dynamic_cast<const ParseError*>(&e); p && p->line() > 0) {
        err["line"] = p->line();
        err["column"] = p->column();
    }
    return Json{{"error", err}};
}

/// Parse, check and evaluate one program. Exit codes: 0 success, 1 domain
/// error, 2 parse, type or usage error.
inline RunResult run_program(const std::string& source, const RingFlag& ring, bool pretty = false) {
    try {
        dsl::Expr e = dsl::parse(source);
        dsl::Checker checker(ring.num_vars);
        const dsl::Kind kind = checker.check(e);
        SpecRef spec = make_spec(ring.num_vars, ring.trunc_order, checker.params());
        auto [value, k] = dsl::Evaluator(dsl::Context{spec}).eval(e);
        (void)k;
        auto enc = detail::encode(value);
        Json out{{"spec", spec_to_json(enc.spec.value_or(spec))}, {"kind", dsl::kind_name(kind)}, {"value", enc.value}};
        if (enc.text)
            out["text"] = *enc.text;
        return {0, dump(out, pretty)};
    } catch (const ParseError& err) {
        return {2, dump(error_json(err), pretty)};
    } catch (const Error& err) {
        return {1, dump(error_json(err), pretty)};
    } catch (const std::exception& err) {
        return {1, dump(error_json(Error("InternalError", err.what())), pretty)};
    }
}

} // namespace ffc
