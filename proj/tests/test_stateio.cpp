#include "doctest.h"

#include <cstring>

#include "qtau/stateio.hpp"
#include "test_helpers.hpp"

using namespace qtau;
using namespace qtau::testing;

TEST_CASE("format_complex / parse_complex round-trip") {
    const Complex cases[] = {{0.5, 0.0},       {1.0, -2.5},        {-0.0, -0.0},
                             {1e-300, 2e300},  {0.1, -3.25e-17},   {-7.0, 0.0}};
    for (const Complex& z : cases) {
        const Complex back = parse_complex(format_complex(z));
        CHECK(std::memcmp(&back, &z, sizeof z) == 0); // bit-identical
    }
    CHECK(parse_complex("0.5+0i") == Complex{0.5, 0.0});
    CHECK(parse_complex("1e-3-2e-4i") == Complex{1e-3, -2e-4});
    CHECK(parse_complex("2.5") == Complex{2.5, 0.0});
    CHECK_THROWS_AS(parse_complex("banana"), ParseError);
    CHECK_THROWS_AS(parse_complex("1++2i"), ParseError);
}

TEST_CASE("parse_state_text: density header and body") {
    const auto parsed = parse_state_text(
        "density 2 2\n"
        "0.25+0i 0+0i 0+0i 0+0i\n"
        "0+0i 0.25+0i 0+0i 0+0i\n"
        "0+0i 0+0i 0.25+0i 0+0i\n"
        "0+0i 0+0i 0+0i 0.25+0i\n");
    const auto* rho = std::get_if<DensityMatrix>(&parsed);
    REQUIRE(rho != nullptr);
    CHECK(rho->dims().factors() == std::vector<std::size_t>{2, 2});
    CHECK(std::abs(rho->mat()(0, 0) - Complex{0.25, 0}) == 0.0);
}

TEST_CASE("parse_state_text: pure state") {
    const double a = 1.0 / std::sqrt(2.0);
    const std::string text = "pure 2 2\n" + format_complex(Complex{a, 0}) +
                             " 0+0i 0+0i " + format_complex(Complex{a, 0}) + "\n";
    const auto parsed = parse_state_text(text);
    const auto* psi = std::get_if<PureState>(&parsed);
    REQUIRE(psi != nullptr);
    CHECK(std::abs(psi->amps()[0] - Complex{a, 0}) == 0.0);
    CHECK(std::abs(psi->amps()[3] - Complex{a, 0}) == 0.0);
}

TEST_CASE("parse_state_text: validation failure carries diagnostics") {
    try {
        parse_state_text(
            "density 2 2\n"
            "0.225+0i 0+0i 0+0i 0+0i\n"
            "0+0i 0.225+0i 0+0i 0+0i\n"
            "0+0i 0+0i 0.225+0i 0+0i\n"
            "0+0i 0+0i 0+0i 0.225+0i\n");
        FAIL("expected NotAStateError");
    } catch (const NotAStateError& e) {
        CHECK(std::string(e.what()).find("0.9") != std::string::npos);
    }
}

TEST_CASE("parse_state_text: syntax errors carry line numbers") {
    try {
        parse_state_text("density 2 2\n0+0i 0+0i 0+0i 0+0i\n0+0i oops 0+0i 0+0i\n"
                         "0+0i 0+0i 0+0i 0+0i\n0+0i 0+0i 0+0i 0+0i\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_state_text("matrix 2 2\n"), ParseError);
    CHECK_THROWS_AS(parse_state_text("density 2\n"), ParseError);
    CHECK_THROWS_AS(parse_state_text("density 2 2\n0+0i\n"), ParseError);
    CHECK_THROWS_AS(parse_state_text(""), ParseError);
}

TEST_CASE("write/parse round-trip is amplitude-exact") {
    const DensityMatrix rho = random_mixed(DimsSpec{{2, 3}}, 4, 777);
    const auto back = parse_state_text(write_state_text(rho));
    const auto* r2 = std::get_if<DensityMatrix>(&back);
    REQUIRE(r2 != nullptr);
    for (std::size_t r = 0; r < rho.side(); ++r)
        for (std::size_t c = 0; c < rho.side(); ++c) {
            const Complex a = rho.mat()(r, c);
            const Complex b = r2->mat()(r, c);
            CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        }

    const PureState psi = random_pure(DimsSpec{{3, 3}}, 778);
    const auto back2 = parse_state_text(write_state_text(psi));
    const auto* p2 = std::get_if<PureState>(&back2);
    REQUIRE(p2 != nullptr);
    for (std::size_t t = 0; t < psi.amps().size(); ++t) {
        const Complex a = psi.amps()[t];
        const Complex b = p2->amps()[t];
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}

TEST_CASE("parse_state_file: missing file") {
    CHECK_THROWS_AS(parse_state_file("/nonexistent/state.txt"), ParseError);
}
