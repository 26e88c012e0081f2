#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mixnorm/mixnorm.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(MIXNORM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / ("mixnorm-cli-test-" + std::to_string(getpid()));
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("c-api") {
  TEST_CASE("norm of G through the C interface") {
    mn_func* f = nullptr;
    REQUIRE(mn_func_from_json(R"({"kind":"exp_g","a":2.718281828459045,"p1":1})", &f) == MN_OK);
    mn_norm_result r{};
    REQUIRE(mn_norm(f, MN_NORM_MIXED_WEAK, "1,1", &r) == MN_OK);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(r.method == MN_METHOD_CLOSED_FORM);
    REQUIRE(mn_norm(f, MN_NORM_ITERATED_WEAK, "1,1", &r) == MN_OK);
    CHECK(std::isinf(r.value));
    char* js = nullptr;
    REQUIRE(mn_func_to_json(f, &js) == MN_OK);
    CHECK(std::string(js).find("exp_g") != std::string::npos);
    mn_string_free(js);
    mn_func_free(f);
  }

  TEST_CASE("errors carry a status and a message") {
    mn_func* f = nullptr;
    CHECK(mn_func_from_json("{bad", &f) == MN_ERR_SPEC_PARSE);
    CHECK(f == nullptr);
    CHECK(std::string(mn_last_error()).size() > 0);
    CHECK(std::string(mn_status_name(MN_ERR_SPEC_PARSE)) == "SpecParse");
    REQUIRE(mn_func_from_json("constant-indicator", &f) == MN_OK);
    CHECK(std::string(mn_last_error()).empty());
    mn_norm_result r{};
    CHECK(mn_norm(f, MN_NORM_MIXED, "0,1", &r) == MN_ERR_SPEC_PARSE);
    CHECK(mn_norm(nullptr, MN_NORM_MIXED, "1,1", &r) == MN_ERR_INVALID_ARGUMENT);
    mn_func_free(f);
    char* out = nullptr;
    CHECK(mn_verify("nope", nullptr, 7, &out, nullptr, nullptr, nullptr) == MN_ERR_UNKNOWN_SUITE);
    CHECK(mn_counterexample("nope", nullptr, nullptr, nullptr, 0, &out) == MN_ERR_UNKNOWN_FAMILY);
  }

  TEST_CASE("curve of the unit box") {
    mn_func* f = nullptr;
    REQUIRE(mn_func_from_json("constant-indicator", &f) == MN_OK);
    double lam[3] = {0.25, 0.5, 2.0}, phi[3];
    REQUIRE(mn_curve(f, "1,1", lam, 3, phi, nullptr) == MN_OK);
    CHECK(phi[0] == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(phi[1] == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(phi[2] == 0.0);
    mn_func_free(f);
  }

  TEST_CASE("name lists") {
    char* s = nullptr;
    REQUIRE(mn_suite_names(&s) == MN_OK);
    CHECK(std::string(s).find("hls\n") != std::string::npos);
    mn_string_free(s);
    REQUIRE(mn_family_names(&s) == MN_OK);
    CHECK(std::string(s).find("kernel-strong\n") != std::string::npos);
    mn_string_free(s);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("norm examples") {
    auto r = run(R"(norm --func '{"kind":"exp_g","a":2.718281828,"p1":1}' --family mixed-weak --p 1,1 --format csv)");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("family,p,value,method", 0) == 0);
    auto line = r.out.substr(r.out.find('\n') + 1);
    REQUIRE(line.rfind("mixed-weak,\"1,1\",", 0) == 0);
    double v = std::stod(line.substr(line.find("\",") + 2));
    CHECK(v == doctest::Approx(4.0).epsilon(1e-6));

    r = run("norm --func constant-indicator --family mixed --p 3,3 --format json");
    CHECK(r.code == 0);
    CHECK(r.out.find("1.5874010519681") != std::string::npos);  // 2^{1/3} 2^{1/3}
  }

  TEST_CASE("exit codes") {
    CHECK(run("norm --func '{bad' --p 1,1").code == 2);
    CHECK(run("norm --func constant-indicator --p 1").code == 2);
    CHECK(run(R"(norm --func '{"kind":"max_power","gamma":1,"dims":{"n":2,"m":2}}' --p 2,2)").code == 3);
    CHECK(run("verify --suite nope").code == 2);
    CHECK(run("counterexample --family nope --Ns 1e2").code == 2);
    CHECK(run("counterexample --family kernel-strong --q 1,1 --Ns ''").code == 2);
    CHECK(run("counterexample --family kernel-strong --q 1,1").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("counterexample csv with fit footer") {
    auto r = run("counterexample --family kernel-strong --q 1,1 --Ns 1e2,1e4,1e6,1e8");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line, last;
    std::getline(in, line);
    CHECK(line == "parameter,value,fitted_exponent");
    int rows = 0;
    while (std::getline(in, line)) {
      last = line;
      ++rows;
    }
    CHECK(rows == 5);
    REQUIRE(last.rfind("fit,", 0) == 0);
    double expo = std::stod(last.substr(last.rfind(',') + 1));
    CHECK(expo == doctest::Approx(1.0).epsilon(0.15));

    r = run("counterexample --family holder-outer-power --p 2,4 --q 4,2");
    CHECK(r.code == 0);
    CHECK(r.out.find(",inf,") != std::string::npos);
  }

  TEST_CASE("verify writes deterministic reports and honours the output dir") {
    auto dir = scratch_dir();
    std::string cfg = R"('{"hls_pairs":5}')";
    auto a = run("verify --suite hls --seed 7 --config " + cfg + " --out " + (dir / "a.json").string());
    auto b = run("verify --suite hls --seed 7 --config " + cfg + " --out " + (dir / "b.json").string());
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(a.out.find("fail 0") != std::string::npos);

    std::string env = "MIXNORM_OUTPUT_DIR=" + dir.string() + " ";
    std::string cmd = env + MIXNORM_CLI + " verify --suite hls --config " + cfg + " >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(std::filesystem::exists(dir / "report-hls.json"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("curve csv") {
    auto r = run("curve --func constant-indicator --p 1,1 --lambdas 0.5,2");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("lambda,phi,exact\n0.5,", 0) == 0);
    CHECK(r.out.find("\n2,0,") != std::string::npos);
  }
}
