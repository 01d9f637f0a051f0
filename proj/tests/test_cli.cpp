// Command-line front end: argument parsing, row emission, determinism, exit
// codes.  Everything runs in-process through parse_args/run so the tests see
// the same code paths as the installed binary without spawning processes.

#include "doctest.h"

#include "psirep/cli.hpp"
#include "psirep/digamma.hpp"

#include "json.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace psirep;

cli::RunConfig parse(std::initializer_list<const char*> args) {
    return cli::parse_args(std::vector<std::string>(args.begin(), args.end()));
}

// Parses and runs one invocation, capturing stdout text and the exit status.
std::pair<int, std::string> capture(std::initializer_list<const char*> args) {
    const cli::RunConfig cfg = parse(args);
    std::ostringstream os;
    const int rc = cli::run(cfg, os);
    return {rc, os.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

// Minimal RFC 4180 field reader; quoted cells may contain commas and doubled
// quotes.  Independent of the emitter so quoting bugs cannot cancel out.
std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> fields(1);
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (ch == '"') {
                in_quotes = false;
            } else {
                fields.back() += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else {
            fields.back() += ch;
        }
    }
    return fields;
}

int exit_code(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"psirep-cli"};
    argv.insert(argv.end(), args.begin(), args.end());
    // run_main reports usage problems on stderr; silence them for the test log
    std::ostringstream sink;
    std::streambuf* old = std::cerr.rdbuf(sink.rdbuf());
    const int rc = cli::run_main(static_cast<int>(argv.size()), argv.data());
    std::cerr.rdbuf(old);
    return rc;
}

constexpr double kPi = 3.14159265358979324;

}  // namespace

TEST_CASE("real literals accept pi multiples and plain numbers") {
    CHECK(cli::parse_real_literal("pi") == doctest::Approx(kPi).epsilon(1e-16));
    CHECK(cli::parse_real_literal("pi/2") == doctest::Approx(kPi / 2).epsilon(1e-16));
    CHECK(cli::parse_real_literal("pi/4") == doctest::Approx(kPi / 4).epsilon(1e-16));
    CHECK(cli::parse_real_literal("2pi") == doctest::Approx(2 * kPi).epsilon(1e-16));
    CHECK(cli::parse_real_literal("3pi/2") == doctest::Approx(1.5 * kPi).epsilon(1e-16));
    CHECK(cli::parse_real_literal("-pi") == doctest::Approx(-kPi).epsilon(1e-16));
    CHECK(cli::parse_real_literal("0.25") == 0.25);
    CHECK(cli::parse_real_literal("1e-3") == 1e-3);
    CHECK(cli::parse_real_literal("-2.5") == -2.5);

    CHECK_THROWS_AS(cli::parse_real_literal("xpi"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_literal("pi/zero"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_literal("1.5.2"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_literal(""), cli::UsageError);
}

TEST_CASE("argument parsing fills the run configuration") {
    SUBCASE("single evaluation") {
        const cli::RunConfig cfg =
            parse({"eval", "--fn", "psi", "--rep", "u-integral", "--a", "1.5"});
        CHECK(cfg.command == "eval");
        CHECK(cfg.function == "psi");
        CHECK(cfg.rep == "u-integral");
        CHECK(cfg.a == 1.5);
        CHECK(cfg.suite == "all");
        CHECK(cfg.format == "text");
        CHECK(cfg.threads == 1);
        CHECK(cfg.tol_override == 0.0);
    }
    SUBCASE("identity suite with pi literal and tolerance") {
        const cli::RunConfig cfg =
            parse({"identities", "--suite", "prop4", "--beta", "pi/2", "--tol", "1e-6"});
        CHECK(cfg.beta == doctest::Approx(kPi / 2).epsilon(1e-16));
        CHECK(cfg.tol_override == 1e-6);
        CHECK(cfg.ctrl.target_tol == 1e-6);
    }
    SUBCASE("grid forms") {
        CHECK(parse({"compare", "--fn", "psi", "--grid", "1,2,3"}).grid ==
              std::vector<double>{1.0, 2.0, 3.0});
        CHECK(parse({"compare", "--fn", "psi", "--grid", "0.5:5:4"}).grid ==
              std::vector<double>{0.5, 2.0, 3.5, 5.0});
        CHECK(parse({"compare", "--fn", "psi", "--grid", "2.5"}).grid ==
              std::vector<double>{2.5});
    }
    SUBCASE("rejected invocations") {
        CHECK_THROWS_AS(parse({"transmogrify"}), cli::UsageError);
        CHECK_THROWS_AS(parse({"eval", "--fn", "psi"}), cli::UsageError);  // --rep required
        CHECK_THROWS_AS(parse({"eval", "--fn", "psi", "--rep", "bogus"}), cli::UsageError);
        CHECK_THROWS_AS(parse({"eval", "--fn", "bogus", "--rep", "u-integral"}),
                        cli::UsageError);
        CHECK_THROWS_AS(parse({"identities", "--suite", "bogus"}), cli::UsageError);
        CHECK_THROWS_AS(parse({"table", "--fn", "psi-rational", "--q", "1"}),
                        cli::UsageError);
        CHECK_THROWS_AS(parse({"eval", "--fn", "psi", "--rep", "u-integral", "--threads",
                               "0"}),
                        cli::UsageError);
        CHECK_THROWS_AS(parse({"eval", "--fn", "psi", "--rep", "u-integral", "--format",
                               "xml"}),
                        cli::UsageError);
    }
}

TEST_CASE("eval row reproduces the reference value") {
    auto [rc, text] =
        capture({"eval", "--fn", "psi", "--rep", "u-integral", "--a", "1.5", "--format",
                 "csv"});
    CHECK(rc == 0);
    const std::vector<std::string> lines = split_lines(text);
    REQUIRE(lines.size() == 2);
    const std::vector<std::string> fields = csv_fields(lines[1]);
    REQUIRE(fields.size() == 10);  // fn,rep,k,a,value,err_est,terms,nodes,converged,wall
    CHECK(fields[0] == "psi");
    CHECK(fields[8] == "true");
    CHECK(std::stod(fields[4]) == doctest::Approx(psi_ref(1.5)).epsilon(1e-12));
}

TEST_CASE("compare emits one row per grid point and representation") {
    auto [rc, text] = capture(
        {"compare", "--fn", "psi", "--grid", "0.5:5:4", "--format", "csv"});
    CHECK(rc == 0);
    const std::vector<std::string> lines = split_lines(text);
    REQUIRE(lines.size() == 1 + 4 * 7);  // header + grid size x psi representations

    // rows are ordered argument-major: all representations of a point together
    for (size_t i = 1; i <= 7; ++i) CHECK(csv_fields(lines[i])[3] == "0.5");
    CHECK(csv_fields(lines[8])[3] == "2");

    // the quadrature route is at full accuracy on every grid point
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> f = csv_fields(lines[i]);
        REQUIRE(f.size() == 11);
        if (f[1] == "u-integral") {
            CHECK(std::fabs(std::stod(f[6])) < 1e-12);
            CHECK(f[7] == "true");
        }
    }
}

TEST_CASE("rational table covers every reduced fraction below the denominator") {
    auto [rc, text] =
        capture({"table", "--fn", "psi-rational", "--q", "12", "--format", "csv"});
    CHECK(rc == 0);
    const std::vector<std::string> lines = split_lines(text);
    REQUIRE(lines.size() == 12);  // header + p = 1..11
    for (size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> f = csv_fields(lines[i]);
        REQUIRE(f.size() == 7);
        CHECK(f[1] == std::to_string(i));
        CHECK(f[6] == "true");  // matches psi_ref to 1e-12
    }
}

TEST_CASE("identity suites pass at their default tolerances") {
    SUBCASE("fractional moments") {
        auto [rc, text] = capture({"identities", "--suite", "lemma2", "--format", "csv"});
        CHECK(rc == 0);
        const std::vector<std::string> lines = split_lines(text);
        REQUIRE(lines.size() == 7);
        for (size_t i = 1; i < lines.size(); ++i) {
            const std::vector<std::string> f = csv_fields(lines[i]);
            CHECK(f[2] == std::to_string(i));  // arg column carries the moment index
            CHECK(f.back() == "true");
        }
    }
    SUBCASE("remainder sums report the fitted decay exponents") {
        auto [rc, text] =
            capture({"identities", "--suite", "remainder", "--format", "csv"});
        CHECK(rc == 0);
        const std::vector<std::string> lines = split_lines(text);
        REQUIRE(lines.size() == 9);  // header + 5 identity rows + 3 expansion rows
        int exponent_rows = 0;
        for (size_t i = 1; i < lines.size(); ++i) {
            const std::vector<std::string> f = csv_fields(lines[i]);
            REQUIRE(f.size() == 9);  // quoted labels keep the field count stable
            CHECK(f.back() == "true");
            if (f[1].find("decay exponent") != std::string::npos) {
                ++exponent_rows;
                const double fitted = std::stod(f[3]);
                const double integer = std::stod(f[4]);
                CHECK(std::fabs(fitted - integer) < 0.15);
            }
        }
        CHECK(exponent_rows == 2);
    }
}

TEST_CASE("identity failure flips the exit status") {
    auto [rc, text] =
        capture({"identities", "--suite", "lemma2", "--tol", "1e-30", "--format", "csv"});
    CHECK(rc == 1);
    const std::vector<std::string> lines = split_lines(text);
    for (size_t i = 1; i < lines.size(); ++i) CHECK(csv_fields(lines[i]).back() == "false");
}

TEST_CASE("json output carries config, rows, and summary") {
    auto [rc, text] = capture(
        {"eval", "--fn", "psi", "--rep", "u-integral", "--grid", "1,2,3", "--format",
         "json"});
    CHECK(rc == 0);
    const nlohmann::json doc = nlohmann::json::parse(text);
    REQUIRE(doc.contains("config"));
    REQUIRE(doc.contains("rows"));
    REQUIRE(doc.contains("summary"));
    CHECK(doc["config"]["function"] == "psi");
    CHECK(doc["config"]["rep"] == "u-integral");
    CHECK(doc["config"]["seed"] == 12345);
    REQUIRE(doc["rows"].size() == 3);
    CHECK(doc["rows"][1]["a"] == 2.0);
    CHECK(doc["summary"]["pass_count"] == 3);
    CHECK(doc["summary"]["fail_count"] == 0);
    CHECK(doc["summary"]["max_residual"].get<double>() < 1e-10);
}

TEST_CASE("output is deterministic across runs and thread counts") {
    auto first = capture({"identities", "--suite", "lemma2", "--format", "csv"});
    auto second = capture({"identities", "--suite", "lemma2", "--format", "csv"});
    CHECK(first.second == second.second);

    auto serial = capture(
        {"compare", "--fn", "psi", "--grid", "0.5,1.5,3.0", "--format", "csv",
         "--threads", "1"});
    auto fanned = capture(
        {"compare", "--fn", "psi", "--grid", "0.5,1.5,3.0", "--format", "csv",
         "--threads", "4"});
    CHECK(serial.first == fanned.first);
    CHECK(serial.second == fanned.second);
}

TEST_CASE("bench ladder shrinks the residual as work grows") {
    auto [rc, text] = capture(
        {"bench", "--fn", "psi", "--rep", "fourier-cisi", "--a", "1.5", "--format",
         "csv"});
    CHECK(rc == 0);
    const std::vector<std::string> lines = split_lines(text);
    REQUIRE(lines.size() >= 5);
    const std::vector<std::string> first = csv_fields(lines[1]);
    const std::vector<std::string> last = csv_fields(lines.back());
    CHECK(std::stod(last[4]) > std::stod(first[4]));  // work column grows
    CHECK(std::fabs(std::stod(last[6])) < std::fabs(std::stod(first[6])) / 10.0);
}

TEST_CASE("process entry point maps failures to exit code two") {
    CHECK(exit_code({"eval", "--fn", "psi", "--rep", "u-integral", "--a", "-1"}) == 2);
    CHECK(exit_code({"eval", "--fn", "psi", "--rep", "u-integral", "--not-a-flag"}) == 2);
    CHECK(exit_code({"identities", "--suite", "prop4", "--case", "odd", "--a", "3"}) == 2);
    CHECK(exit_code({}) == 2);
}
