#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oslab/cli.hpp"
#include "oslab/ring.hpp"

using namespace oslab;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("non-coprime germ is a usage error") {
    const Outcome o = invoke({"verify-os", "--p", "2", "--q", "4"});
    CHECK(o.code == cli::kExitUsage);
    CHECK(o.err.find("gcd(p,q) must be 1") != std::string::npos);
  }

  TEST_CASE("unknown commands and bad flags") {
    CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"conifold", "--tmax", "0"}).code == cli::kExitUsage);
    CHECK(invoke({"conifold", "--bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"refined-series", "--p", "2", "--q", "3", "--backend", "hodge"}).code == cli::kExitUsage);
    CHECK(invoke({"local-series", "--p", "2"}).code == cli::kExitUsage);
    CHECK(invoke({"verify-os", "--p", "2", "--q", "3", "--format", "xml"}).code == cli::kExitUsage);
  }

  TEST_CASE("help exits cleanly") {
    const Outcome o = invoke({"--help"});
    CHECK(o.code == cli::kExitOk);
    CHECK(o.out.find("verify-os") != std::string::npos);
  }

  TEST_CASE("verify-os json report") {
    const Outcome o = invoke({"verify-os", "--p", "2", "--q", "3", "--order", "20", "--format", "json"});
    REQUIRE(o.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j.at("schema") == cli::kSchema);
    CHECK(j.at("passed") == true);
    CHECK(j.at("equation") == "os-correspondence");
    CHECK(j.at("seed") == 1);
    CHECK_FALSE(j.at("result").at("coefficients").empty());
  }

  TEST_CASE("wrong Milnor number fails with exit 1") {
    CHECK(invoke({"verify-os", "--p", "2", "--q", "3", "--order", "8", "--mu", "4"}).code == cli::kExitCheckFailed);
  }

  TEST_CASE("conifold json matches the power product") {
    const Outcome o = invoke({"conifold", "--tmax", "2", "--umax", "5", "--format", "json"});
    REQUIRE(o.code == cli::kExitOk);
    const Series s = series_from_json(nlohmann::json::parse(o.out).at("result").at("series"));
    std::vector<PowerFactor> factors;
    for (int k = 1; k <= 5; ++k) {
      MonomialKey base = MonomialKey::of(Var::T) * MonomialKey::of(Var::u, k);
      factors.push_back({base, 1, Rational(k)});
    }
    CHECK(s == power_product(factors, make_caps({{Var::T, 2}, {Var::u, 5}})));
  }

  TEST_CASE("identical runs give identical bytes, whatever the thread count") {
    const std::vector<std::string> base = {"local-series", "--p", "3", "--q", "5", "--nmax", "8", "--format", "json",
                                           "--seed", "77"};
    auto one = base, many = base;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "4"});
    const Outcome a = invoke(one), b = invoke(one), c = invoke(many);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(nlohmann::json::parse(a.out).at("seed") == 77);
  }

  TEST_CASE("text mode ends with the check summary") {
    const Outcome o = invoke({"homfly", "1,1,1", "--oracle"});
    CHECK(o.code == cli::kExitOk);
    CHECK(o.out.find("P = (a^-5") != std::string::npos);
    CHECK(o.out.find("passed: yes") != std::string::npos);
  }

  TEST_CASE("local-series histogram") {
    const Outcome o = invoke({"local-series", "--p", "2", "--q", "3", "--nmax", "2", "--format", "json"});
    const auto hist = nlohmann::json::parse(o.out).at("result").at("by_n_m");
    CHECK(hist == nlohmann::json::parse("[[0,1,1],[1,2,1],[2,1,1],[2,2,1]]"));
  }

  TEST_CASE("wallcross negative control exits 1") {
    CHECK(invoke({"wallcross-check", "--p", "2", "--q", "3", "--rmax", "2", "--nmax", "6"}).code == cli::kExitOk);
    CHECK(invoke({"wallcross-check", "--p", "2", "--q", "3", "--rmax", "2", "--nmax", "6", "--sign", "alternating"})
              .code == cli::kExitCheckFailed);
  }

  TEST_CASE("remaining subcommands run") {
    CHECK(invoke({"refined-series", "--p", "2", "--q", "3", "--nmax", "3", "--backend", "pointcount"}).code == 0);
    CHECK(invoke({"global-series", "--p", "2", "--q", "3", "--nmax", "3", "--curve", "compact"}).code == 0);
    CHECK(invoke({"gv-expand", "--p", "2", "--q", "3", "--umax", "8"}).code == 0);
    CHECK(invoke({"oracle-pointcount", "--p", "2", "--q", "3", "--nmax", "2"}).code == 0);
    CHECK(invoke({"oracle-pointcount", "--p", "2", "--q", "3", "--nmax", "6"}).code == cli::kExitUsage);
    CHECK(invoke({"quiver-audit", "--kmax", "1", "--rmax", "1", "--nmax", "1", "--Nmax", "1"}).code == 0);
  }
}
