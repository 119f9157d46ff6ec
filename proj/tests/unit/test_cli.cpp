#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ksmap/errors.hpp"
#include "ksmap/parser.hpp"
#include "ksmap/pencil_file.hpp"
#include "ksmap/report.hpp"

using namespace ksmap;
namespace fs = std::filesystem;

namespace {
const MultiPoly X = MultiPoly::variable(kVarX);
const MultiPoly T = MultiPoly::variable(kVarT1);
const MultiPoly S = MultiPoly::variable(kVarT2);

const fs::path kData = KSMAP_TEST_DATA;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& src, const SymbolTable& s = make_symbols({"t"})) {
    try {
        parse_polynomial(src, s);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

MultiPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-9, 9), e(0, 4), nterms(1, 6);
    MultiPoly p;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        BigRational q(c(rng), 1 + (c(rng) & 3));
        q.canonicalize();
        p += MultiPoly(q) * X.pow(e(rng)) * T.pow(e(rng)) * S.pow(e(rng) / 2);
    }
    return p;
}
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parser examples") {
    const auto s = make_symbols({"t"});
    CHECK(parse_polynomial("x*(x-1)*(x-t)", s) == X.pow(3) - (1 + T) * X.pow(2) + T * X);
    CHECK(parse_polynomial("x^3 - t", s) == X.pow(3) - T);
    CHECK(parse_polynomial("-x^2", s) == -(X * X));
    CHECK(parse_polynomial("2*x^2^1", s) == 2 * X * X);
    CHECK(parse_polynomial("(x + 1)^2 - 1/2*t", s) == X * X + 2 * X + 1 - MultiPoly(BigRational(1, 2)) * T);
    CHECK(parse_polynomial("  x\n + t ", s) == X + T);
    CHECK(parse_polynomial("--x", s) == X);
}

TEST_CASE("parser errors") {
    CHECK(error_of("x^(1/2)").find("non-integer exponent") != std::string::npos);
    CHECK(error_of("x^t").find("non-integer exponent") != std::string::npos);
    CHECK(error_of("x^-1").find("negative exponent") != std::string::npos);
    CHECK(error_of("2x") == "line 1, column 2: implicit multiplication is not allowed");
    CHECK(error_of("x (t)").find("implicit multiplication") != std::string::npos);
    CHECK(error_of("x + s") == "line 1, column 5: unknown identifier 's'");
    CHECK(error_of("x +\n  ?") == "line 2, column 3: unexpected '?'");
    CHECK(error_of("(x") .find("expected ')'") != std::string::npos);
    CHECK(error_of("x/t").find("division only by constants") != std::string::npos);
    CHECK(error_of("x/0").find("division by zero") != std::string::npos);
    CHECK(error_of("").find("empty expression") != std::string::npos);
    CHECK(error_of("1.5*x").find("only integer literals") != std::string::npos);
    CHECK_THROWS_AS(make_symbols({"a", "b", "c"}), InputError);
    CHECK_THROWS_AS(make_symbols({"x"}), InputError);
}

TEST_CASE("print-parse round trip on canonical forms") {
    std::mt19937 rng(3);
    const auto s = make_symbols({"t1", "t2"});
    for (int i = 0; i < 200; ++i) {
        const MultiPoly p = random_poly(rng);
        CHECK(parse_polynomial(p.to_string(), s) == p);
    }
}

TEST_CASE("pencil file") {
    const auto pf = parse_pencil_file(
        "# comment\nname = demo\nvariables = t1, t2\npolynomial = \"x*(x-1)*(x-2)*(x-t1)*(x-t2)\"  # trailing\n"
        "truncation = 30\ntolerance = 1e-9\ndegree_bound = 2\nsamples = 50\n");
    CHECK(pf.name == "demo");
    CHECK(pf.variables == std::vector<std::string>{"t1", "t2"});
    CHECK(pf.polynomial == X * (X - 1) * (X - 2) * (X - T) * (X - S));
    CHECK(pf.truncation == 30);
    CHECK(pf.tolerance == 1e-9);
    CHECK(pf.degree_bound == 2);
    CHECK(pf.samples == 50);
    CHECK_FALSE(pf.endomorphism.has_value());

    const auto e = parse_pencil_file("variables = t\npolynomial = \"x^3 - t\"\nendomorphism = \"1/2, t; 0, -1\"\n");
    REQUIRE(e.endomorphism.has_value());
    CHECK((*e.endomorphism)[0][0] == MultiPoly(BigRational(1, 2)));
    CHECK((*e.endomorphism)[0][1] == T);
    CHECK((*e.endomorphism)[1][1] == MultiPoly(-1));

    CHECK_THROWS_WITH_AS(parse_pencil_file("variables = t\npolynomial = \"x^3 - t\"\nfoo = 1\n"),
                         "line 3: unknown key 'foo'", InputError);
    CHECK_THROWS_WITH_AS(parse_pencil_file("variables = t\npolynomial = \"x^(1/2)\"\n"),
                         "line 2, column 17: non-integer exponent", InputError);
    CHECK_THROWS_AS(parse_pencil_file("variables = t\npolynomial = \"x^3\"\nendomorphism = \"1, 0; 0\"\n"),
                    InputError);
}

TEST_CASE("exit-code contract on the malformed corpus") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(kData / "malformed")) {
        for (const std::string cmd : {"analyze", "ranks", "gm"}) {
            const auto res = run_file(cmd, entry.path().string(), {});
            INFO(entry.path().filename().string() << " " << cmd);
            if (entry.path().filename() == "non_horizontal_endomorphism.pencil" && cmd != "analyze") {
                CHECK(res.exit_code == kExitOk);
                continue;
            }
            CHECK(res.exit_code == kExitInput);
            CHECK(res.report["status"] == "error");
            CHECK(res.report["error"]["kind"] == "input_error");
            CHECK_FALSE(res.report["error"]["message"].get<std::string>().empty());
        }
        ++seen;
    }
    CHECK(seen >= 15);
    CHECK(run_file("analyze", (kData / "does_not_exist.pencil").string(), {}).exit_code == kExitInput);
    CHECK(run_file("bogus", (kData / "legendre.pencil").string(), {}).exit_code == kExitInput);
    RunOptions bad_stage;
    bad_stage.stage = "nope";
    CHECK(run_file("analyze", (kData / "legendre.pencil").string(), bad_stage).exit_code == kExitInput);
    RunOptions tight;
    tight.samples = 1;
    CHECK(run_file("independence", (kData / "legendre.pencil").string(), tight).exit_code == kExitInput);
}

TEST_CASE("mutated inputs never escape the exit-code contract") {
    const std::string base = slurp(kData / "legendre.pencil");
    std::mt19937 rng(17);
    const std::string alphabet = "xt()^*+-/=\"#0123456789 ,;\n.";
    for (int i = 0; i < 150; ++i) {
        std::string s = base;
        std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
        std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
        for (int k = 0; k < 3; ++k) s[pos(rng)] = alphabet[ch(rng)];
        RunOptions o;
        o.stage = "ranks";
        const auto res = run_text("analyze", s, o);
        CHECK((res.exit_code == kExitOk || res.exit_code == kExitInput));
    }
}

TEST_CASE("command reports") {
    const auto ks = run_file("ks", (kData / "legendre.pencil").string(), {});
    REQUIRE(ks.exit_code == kExitOk);
    CHECK(ks.report["stages"]["ks"]["blocks"][0]["status"] == "nonzero");
    CHECK(ks.report["stages"]["ks"]["r_prime"] == 1);

    const auto rc = run_file("ranks", (kData / "constant.pencil").string(), {});
    REQUIRE(rc.exit_code == kExitOk);
    const auto& r = rc.report["stages"]["ranks"];
    CHECK(r["r"] == 0);
    CHECK(r["r_prime"] == 0);
    CHECK(r["r_doubleprime"] == 0);
    CHECK(r["isotrivial"] == true);

    const auto ind = run_file("independence", (kData / "isotrivial.pencil").string(), {});
    REQUIRE(ind.exit_code == kExitOk);
    const auto& v = ind.report["stages"]["independence"];
    CHECK(v["verdict"] == "relation_candidate");
    // (1/6) Y + t dY = 0 after normalization by the largest coefficient.
    const auto& y = v["relation"]["Y"][0];
    const auto& dy = v["relation"]["dY"][0];
    CHECK(dy[1][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(y[0][0].get<double>() == doctest::Approx(1.0 / 6).epsilon(1e-9));
    CHECK(std::abs(dy[0][0].get<double>()) < 1e-9);
    CHECK(std::abs(y[1][0].get<double>()) < 1e-9);

    const auto two = run_file("monodromy", (kData / "genus2_two.pencil").string(), {});
    CHECK(two.exit_code == kExitInput);

    const auto endo = run_file("decompose", (kData / "legendre_endo.pencil").string(), {});
    REQUIRE(endo.exit_code == kExitOk);
    CHECK(endo.report["stages"]["decompose"]["restricted_pem"] == true);
    CHECK(endo.report["stages"]["decompose"]["factors"][0]["shimura_type"] == nlohmann::json::array({1, 1}));
    CHECK(run_file("decompose", (kData / "legendre.pencil").string(), {}).exit_code == kExitInput);
}

TEST_CASE("numeric values carry their tolerance") {
    RunOptions o;
    o.tol = 1e-9;
    const auto res = run_file("monodromy", (kData / "legendre.pencil").string(), o);
    REQUIRE(res.exit_code == kExitOk);
    const auto& m = res.report["stages"]["monodromy"];
    CHECK(m["symplectic_defect"]["tolerance"] == 1e-9);
    CHECK(m["product_defect"]["tolerance"] == 1e-9);
    for (const auto& loop : m["loops"]) {
        CHECK(loop["matrix"]["tolerance"] == 1e-9);
        CHECK(loop["trace"]["tolerance"] == 1e-9);
    }
}

TEST_CASE("Legendre golden report and determinism") {
    RunOptions o;
    o.seed = 5;
    const auto a = run_file("analyze", (kData / "legendre.pencil").string(), o);
    const auto b = run_file("analyze", (kData / "legendre.pencil").string(), o);
    REQUIRE(a.exit_code == kExitOk);
    // Everything except wall-clock timing is identical across runs.
    auto strip = [](nlohmann::ordered_json j) {
        j.erase("timing_ms");
        return j.dump();
    };
    CHECK(strip(a.report) == strip(b.report));

    const auto golden = nlohmann::ordered_json::parse(slurp(kData / "golden" / "legendre_symbolic.json"));
    for (const auto& [stage, value] : golden.items()) {
        INFO(stage);
        CHECK(a.report["stages"][stage].dump() == value.dump());
    }
}

}  // TEST_SUITE
