#include <doctest.h>

#include "wavedecay/config.hpp"

using namespace wavedecay;

TEST_CASE("defaults from a minimal config")
{
    const RunConfig c = parse_config("[coefficient]\nfamily = constant\nk0 = 1\n");
    CHECK(c.cfl == 0.5);
    CHECK(c.dx == 0.05);
    CHECK(c.sample_stride == 10);
    CHECK(c.R == doctest::Approx(2.0));  // 2 r0 with the default r0 = 1
    CHECK(c.family == "constant");
    CHECK(c.preset == "bump-velocity");
    CHECK(c.audits.empty());  // all enabled
    CHECK(c.audit_enabled("morawetz"));
}

TEST_CASE("round-trip: serialize of parse is idempotent")
{
    const std::string text =
        "[solver]\nt_max = 20\ndx = 0.1\n[coefficient]\nfamily = power-growth\ngamma0 = 0.5\nr0 = "
        "2\n[data]\npreset = dipole-velocity\nL = 1\n[audits]\nenable = morawetz,growth\n";
    const RunConfig a = parse_config(text);
    const std::string s1 = serialize(a);
    const RunConfig b = parse_config(s1);
    CHECK(a == b);
    CHECK(serialize(b) == s1);
}

TEST_CASE("rejections name the key")
{
    // growth exponent outside [0, 1)
    try {
        parse_config("[coefficient]\nfamily = power-growth\ngamma0 = 1.0\n");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(e.key == "gamma0");
    }

    // localized-energy radius not beyond r0
    try {
        parse_config("[solver]\nR = 1\n[coefficient]\nr0 = 2\n");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(e.key == "R");
    }

    // unknown key carries its line number
    try {
        parse_config("[solver]\n# comment\nbogus = 1\n");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(e.key == "bogus");
        CHECK(e.line == 3);
    }

    CHECK_THROWS_AS(parse_config("[nope]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver]\ndx = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver]\ncfl = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[audits]\nenable = nonsense\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("key = 1\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored")
{
    const RunConfig c = parse_config("# header\n\n[solver]\nt_max = 5 # trailing\n\n# done\n");
    CHECK(c.t_max == 5.0);
}
