#include <doctest.h>

#include <cmath>
#include <vector>

#include "hbern/expr.hpp"
#include "oracles.hpp"

using namespace hbern;

TEST_SUITE("expr") {

TEST_CASE("frozen jets of simple expressions") {
    const ScalarFn sq = parse("t^2", {"t"});
    const Jet1 j = sq.jet(3.0);
    CHECK(j.v == 9.0);
    CHECK(j.d1 == 6.0);
    CHECK(j.d2 == 2.0);
    CHECK(j.d3 == 0.0);

    const ScalarFn g = parse("tan(tanh(t))", {"t"});
    const Jet1 j0 = g.jet(0.0);
    CHECK(std::abs(j0.v) < 1e-15);
    CHECK(j0.d1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(j0.d2) < 1e-14);

    const ScalarFn c = parse("cot(pi/2 - t)", {"t"});
    const Jet1 jc = c.jet(0.0);
    CHECK(std::abs(jc.v) < 1e-15);
    CHECK(jc.d1 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("affine form and precedence") {
    const ScalarFn f = parse("0.5*t + 1", {"t"});
    CHECK(f(2.0) == 2.0);
    CHECK(f.jet(7.0).d1 == 0.5);

    CHECK(parse("2^3^2", {"t"})(0.0) == doctest::Approx(512.0).epsilon(1e-14));  // right-associative
    CHECK(parse("-t^2", {"t"})(3.0) == -9.0);     // unary minus binds after power
    CHECK(parse("2*e", {"t"})(0.0) == doctest::Approx(2.0 * std::exp(1.0)));
    CHECK(parse("(-2)^3", {"t"})(0.0) == -8.0);   // integer power of negative base
    CHECK(parse("t^3", {"t"})(-2.0) == -8.0);
}

TEST_CASE("syntax errors carry offsets") {
    CHECK_THROWS_AS(parse("t^", {"t"}), ParseError);
    try {
        parse("t^", {"t"});
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse("t +* 2", {"t"}), ParseError);
    CHECK_THROWS_AS(parse("sin()", {"t"}), ParseError);
    CHECK_THROWS_AS(parse("sin(t, t)", {"t"}), ParseError);   // wrong arity
    CHECK_THROWS_AS(parse("x + q", {"x", "y"}), ParseError);  // unknown identifier
    CHECK_THROWS_AS(parse("foo(t)", {"t"}), ParseError);
}

TEST_CASE("domain errors are reported, never silent non-finite values") {
    const ScalarFn c = parse("cot(t)", {"t"});
    CHECK_THROWS_AS(c.jet(0.0), DomainError);
    CHECK_THROWS_AS(c.jet(M_PI), DomainError);
    CHECK_THROWS_AS(parse("log(t)", {"t"}).jet(-1.0), DomainError);
    CHECK_THROWS_AS(parse("sqrt(t)", {"t"}).jet(-0.5), DomainError);
    CHECK_THROWS_AS(parse("1/t", {"t"}).jet(0.0), DomainError);
    CHECK_THROWS_AS(parse("tan(t)", {"t"}).jet(M_PI / 2), DomainError);
    CHECK_THROWS_AS(parse("t^0.5", {"t"}).jet(-2.0), DomainError);
}

TEST_CASE("builtins are oracles for the parser") {
    auto check_pair = [](const BuiltinFn& b, const ScalarFn& parsed, double lo, double hi) {
        auto g = oracle::rng(21);
        for (int i = 0; i < 100; ++i) {
            const double t = oracle::uniform(g, lo, hi);
            const Jet1 a = b.fn.jet(t);
            const Jet1 p = parsed.jet(t);
            CHECK(oracle::close_rel(a.v, p.v, 1e-12));
            CHECK(oracle::close_rel(a.d1, p.d1, 1e-12));
            CHECK(oracle::close_rel(a.d2, p.d2, 1e-11));
            CHECK(oracle::close_rel(a.d3, p.d3, 1e-10));
        }
    };
    check_pair(builtin_tan_tanh(), parse("tan(tanh(t))", {"t"}), -3, 3);
    check_pair(builtin_affine(0.5, 1.0), parse("0.5*t + 1", {"t"}), -3, 3);
    check_pair(builtin_cot_shift(), parse("cot(pi/2 - t)", {"t"}), -1.2, 1.2);
    check_pair(builtin_square_pos(), parse("t^2", {"t"}), 0.1, 3);

    CHECK(builtin("tan_tanh").domain.hi == std::numeric_limits<double>::infinity());
    CHECK(builtin("cot_shift").domain.hi == doctest::Approx(M_PI / 2));
    CHECK(builtin("square_pos").domain.lo == 0.0);
    CHECK(builtin("affine", {2.0, 0.0}).fn(1.0) == 2.0);
    CHECK_THROWS_AS(builtin("nope"), ParseError);
}

TEST_CASE("derivatives agree with central differences") {
    const std::vector<std::pair<std::string, std::pair<double, double>>> cases = {
        {"tan(tanh(t))", {-2, 2}},
        {"exp(-t^2)*sin(3*t)", {-2, 2}},
        {"log(2 + cos(t))", {-3, 3}},
        {"sqrt(1 + t^2)", {-3, 3}},
        {"atan(t)/(1 + t^2)", {-3, 3}},
        {"cosh(t/2) - t^3/6", {-2, 2}},
    };
    auto g = oracle::rng(22);
    for (const auto& [src, range] : cases) {
        const ScalarFn f = parse(src, {"t"});
        for (int i = 0; i < 100; ++i) {
            const double t = oracle::uniform(g, range.first, range.second);
            const Jet1 j = f.jet(t);
            const double fd1 = oracle::fd1([&](double x) { return f(x); }, t);
            const double fd2 = oracle::fd2([&](double x) { return f(x); }, t);
            CHECK(std::abs(j.d1 - fd1) <= 1e-6 * (1.0 + std::abs(j.d1)));
            CHECK(std::abs(j.d2 - fd2) <= 1e-6 * (1.0 + std::abs(j.d2)));
        }
    }
    for (const auto& name : {"tan_tanh", "cot_shift", "square_pos"}) {
        const BuiltinFn b = builtin(name);
        for (int i = 0; i < 100; ++i) {
            const double t = oracle::uniform(g, -1.1, 1.1);
            const Jet1 j = b.fn.jet(t);
            const double fd1 = oracle::fd1([&](double x) { return b.fn(x); }, t);
            CHECK(std::abs(j.d1 - fd1) <= 1e-6 * (1.0 + std::abs(j.d1)));
        }
    }
}

TEST_CASE("two-variable jets against finite differences") {
    const ScalarFn f = parse("x*y/2 + sin(x)*cos(y)", {"x", "y"});
    auto g = oracle::rng(23);
    for (int i = 0; i < 100; ++i) {
        const double x = oracle::uniform(g, -2, 2), y = oracle::uniform(g, -2, 2);
        const Jet2 j = f.jet(x, y);
        const double fx = oracle::fd1([&](double s) { return f(s, y); }, x);
        const double fy = oracle::fd1([&](double s) { return f(x, s); }, y);
        const double fxx = oracle::fd2([&](double s) { return f(s, y); }, x);
        const double fyy = oracle::fd2([&](double s) { return f(x, s); }, y);
        const double fxy = oracle::fd1(
            [&](double s) { return oracle::fd1([&](double r) { return f(r, s); }, x); }, y,
            1e-4);
        CHECK(std::abs(j.x - fx) <= 1e-6 * (1 + std::abs(j.x)));
        CHECK(std::abs(j.y - fy) <= 1e-6 * (1 + std::abs(j.y)));
        CHECK(std::abs(j.xx - fxx) <= 1e-5 * (1 + std::abs(j.xx)));
        CHECK(std::abs(j.yy - fyy) <= 1e-5 * (1 + std::abs(j.yy)));
        CHECK(std::abs(j.xy - fxy) <= 1e-5 * (1 + std::abs(j.xy)));
    }
    const Jet2 h = parse("x*y/2", {"x", "y"}).jet(1.25, -0.5);
    CHECK(h.x == -0.25);
    CHECK(h.y == 0.625);
    CHECK(h.xy == 0.5);
}

TEST_CASE("printing round-trips to an equal tree") {
    const std::vector<std::string> cases = {
        "tan(tanh(t))", "0.5*t + 1", "-t^2 + 3*(t - 1)/(t + 2)",
        "cot(pi/2 - t)", "exp(-1/(1 - t^2))", "2^t^2", "t - -t",
    };
    for (const auto& src : cases) {
        const ScalarFn f = parse(src, {"t"});
        const std::string once = f.print();
        const ScalarFn f2 = parse(once, {"t"});
        CHECK(f2.print() == once);
        const double at = 0.3;
        CHECK(f(at) == doctest::Approx(f2(at)).epsilon(1e-15));
    }
    const ScalarFn f = parse("x^2*y - y/x", {"x", "y"});
    CHECK(parse(f.print(), {"x", "y"}).print() == f.print());
}

TEST_CASE("recentered functions") {
    const ScalarFn g = builtin_tan_tanh().fn;
    const ScalarFn s = shift_arg(g, 0.7);
    auto r = oracle::rng(24);
    for (int i = 0; i < 20; ++i) {
        const double t = oracle::uniform(r, -1, 1);
        CHECK(s.jet(t).v == g.jet(0.7 + t).v);
        CHECK(s.jet(t).d1 == g.jet(0.7 + t).d1);
    }
}

}  // TEST_SUITE
