#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <fredholm/fredholm.hpp>

using namespace fredholm;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << contents;
    return path;
}

}  // namespace

TEST_CASE("scalar parsing distinguishes exact and float forms", "[problem_io]") {
    CHECK(*parse_scalar("-1").exact == Rational(-1));
    CHECK(*parse_scalar("3/2").exact == Rational(3, 2));
    CHECK(*parse_scalar("+7").exact == Rational(7));
    CHECK(*parse_scalar("-3/6").exact == Rational(-1, 2));
    CHECK(parse_scalar("0.5").exact == std::nullopt);
    CHECK(parse_scalar("0.5").value == 0.5);
    CHECK(parse_scalar("1e-3").value == 1e-3);
    CHECK_THROWS_AS(parse_scalar("1/0"), ProblemFileError);
    CHECK_THROWS_AS(parse_scalar("abc"), ProblemFileError);
    CHECK_THROWS_AS(parse_scalar(""), ProblemFileError);
}

TEST_CASE("a complete problem file parses into the right structure", "[problem_io]") {
    const std::string text =
        "# symmetric kernel on [-1, 1]\n"
        "interval = -1 1\n"
        "lambda = -1\n"
        "a = 1\n"
        "kernel = x*t + x^2*t^2\n"
        "f = 1\n"
        "exact = 1 + (10/9)*x^2\n";
    const Problem p = parse_problem(text, "inline");
    CHECK(*p.lower.exact == Rational(-1));
    CHECK(*p.upper.exact == Rational(1));
    CHECK(*p.lambda.exact == Rational(-1));
    REQUIRE(p.exact != nullptr);
    const auto* sep = std::get_if<SeparableKernel>(&p.kernel);
    REQUIRE(sep != nullptr);
    CHECK(sep->terms.size() == 2);
    CHECK(eval(*p.exact, 3.0) == Catch::Approx(11.0).margin(1e-12));
}

TEST_CASE("non-separable kernels load as general kernels", "[problem_io]") {
    const Problem p = parse_problem(
        "interval = 0 1\nlambda = 1\na = 1\nkernel = exp(x*t)\nf = 1\n", "inline");
    CHECK(std::holds_alternative<GeneralKernel>(p.kernel));
    CHECK(p.exact == nullptr);
}

TEST_CASE("missing and malformed keys are reported by name and line", "[problem_io]") {
    try {
        parse_problem("interval = 0 1\nlambda = 1\na = 1\nf = x\n", "nofile");
        FAIL("expected a problem-file error");
    } catch (const ProblemFileError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("kernel") != std::string::npos);
        CHECK(msg.find("nofile") != std::string::npos);
    }
    try {
        parse_problem("interval = 0 1\nlambda = 1\nlambda = 2\na = 1\nkernel = 0\nf = x\n", "dup");
        FAIL("expected a duplicate-key error");
    } catch (const ProblemFileError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("duplicate") != std::string::npos);
        CHECK(msg.find("dup:3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_problem("bogus = 1\ninterval = 0 1\nlambda = 1\na = 1\nkernel = 0\nf = x\n"),
                    ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 1\nlambda\na = 1\nkernel = 0\nf = x\n"), ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 1\nlambda =\na = 1\nkernel = 0\nf = x\n"), ProblemFileError);
}

TEST_CASE("interval validation", "[problem_io]") {
    CHECK_THROWS_AS(parse_problem("interval = 1 0\nlambda = 1\na = 1\nkernel = 0\nf = x\n"),
                    ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0\nlambda = 1\na = 1\nkernel = 0\nf = x\n"), ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 1 2\nlambda = 1\na = 1\nkernel = 0\nf = x\n"),
                    ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 zebra\nlambda = 1\na = 1\nkernel = 0\nf = x\n"),
                    ProblemFileError);
}

TEST_CASE("expression errors surface with file and line", "[problem_io]") {
    try {
        parse_problem("interval = 0 1\nlambda = 1\na = 1\nkernel = x*t +\nf = x\n", "broken");
        FAIL("expected a problem-file error");
    } catch (const ProblemFileError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("broken:4") != std::string::npos);
        CHECK(msg.find("parse error") != std::string::npos);
        CHECK(msg.find("kernel") != std::string::npos);
    }
}

TEST_CASE("variable misuse is rejected at load time", "[problem_io]") {
    CHECK_THROWS_AS(parse_problem("interval = 0 1\nlambda = 1\na = t\nkernel = 0\nf = x\n"),
                    ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 1\nlambda = 1\na = 1\nkernel = 0\nf = t\n"),
                    ProblemFileError);
    CHECK_THROWS_AS(parse_problem("interval = 0 1\nlambda = 1\na = 1\nkernel = 0\nf = x\nexact = t\n"),
                    ProblemFileError);
}

TEST_CASE("comments and blank lines are ignored", "[problem_io]") {
    const std::string text =
        "\n# header comment\n\ninterval = 0 1   # trailing comment\n\nlambda = 1\na = 1\n"
        "kernel = 0 # zero kernel\nf = x\n\n# done\n";
    CHECK_NOTHROW(parse_problem(text));
}

TEST_CASE("load_problem reads from disk and reports unreadable paths", "[problem_io]") {
    const auto path = temp_file("fredholm_io_test.problem", builtin_example_text(3));
    const Problem p = load_problem(path);
    CHECK(*p.upper.exact == Rational(1));
    std::filesystem::remove(path);
    try {
        load_problem("/definitely/not/here.problem");
        FAIL("expected a problem-file error");
    } catch (const ProblemFileError& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("built-in problems expose their defining text", "[problem_io]") {
    for (int id = 1; id <= 4; ++id) {
        const Problem p = builtin_example(id);
        CHECK(p.exact != nullptr);
        CHECK(*p.lambda.exact == Rational(-1));
    }
    CHECK(builtin_example_text(1).find("x*t + x^2*t^2") != std::string::npos);
    CHECK_THROWS_AS(builtin_example(0), ArgumentError);
    CHECK_THROWS_AS(builtin_example(5), ArgumentError);
}
