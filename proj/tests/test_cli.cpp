#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "blochprior/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = blochprior::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("kl prints the relative entropy") {
  const auto r = run({"kl", "--p", "sld", "--q", "km"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.0891523") != std::string::npos);
  const auto bits = run({"kl", "--p", "sld", "--q", "km", "--units", "bits"});
  CHECK(bits.code == 0);
  CHECK(bits.out.find("0.12862 bits") != std::string::npos);
  CHECK(bits.out.find("bits") != std::string::npos);
}

TEST_CASE("kl against a posterior and json output") {
  const auto r = run({"kl", "--p", "sld", "--q", "km", "--record", "balanced6", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.0720681).epsilon(1e-5));
  CHECK(doc["converged"] == true);
}

TEST_CASE("compare reports the verdict") {
  const auto r = run({"compare", "--p", "mc", "--q", "ld", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == "FirstMoreNoninformative");
  CHECK(doc["variant"] == "paper");
  CHECK(doc["d_p_post_q"].get<double>() == doctest::Approx(2.79851).epsilon(1e-5));
}

TEST_CASE("priors and eval") {
  const auto list = run({"priors", "--format", "csv"});
  CHECK(list.code == 0);
  CHECK(list.out.rfind("label,gap,constant,exponent\n", 0) == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 8);
  const auto eval = run({"eval", "--p", "ld", "--point", "0,0,0", "--convention", "cartesian"});
  CHECK(eval.code == 0);
  CHECK(eval.out.find("0.238732") != std::string::npos);
}

TEST_CASE("sweep and search") {
  const auto sweep = run({"sweep", "--p", "ld", "--q", "mc", "--k-max", "4"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("argmin k=3") != std::string::npos);
  const auto capped = run({"search", "--p", "sld", "--q", "km", "--constraint", "any",
                           "--max-total", "30"});
  CHECK(capped.code == 1);
  CHECK_FALSE(capped.err.empty());
}

TEST_CASE("reproduce writes one csv line per row") {
  const auto r = run({"reproduce", "--table", "s3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("errors map to exit codes") {
  const auto mismatch = run({"kl", "--p", "p0", "--q", "sld"});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.err.find("support") != std::string::npos);
  CHECK(run({"kl", "--p", "xyz", "--q", "sld"}).code == 2);
  CHECK(run({"kl", "--p", "sld"}).code == 2);
  CHECK(run({"kl", "--p", "sld", "--q", "km", "--record", "W+:1"}).code == 2);
  CHECK(run({"kl", "--p", "sld", "--q", "km", "--rel-tol", "-1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"reproduce", "--table", "s9"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("reproduce") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"kl", "--p", "km", "--q", "mc", "--format", "json"};
  CHECK(run(args).out == run(args).out);
}
