#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hyperd1/hyperd1.h"

namespace {

struct Space {
  hd1_space* p = nullptr;
  ~Space() { hd1_space_free(p); }
};

struct Report {
  hd1_report* p = nullptr;
  ~Report() { hd1_report_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(hd1_version()).size() > 0);
  CHECK(std::string(hd1_status_name(HD1_OK)) == "OK");
  CHECK(std::string(hd1_status_name(HD1_ERR_NOT_A_TREE)) == "NotATree");
  CHECK(hd1_exit_code(HD1_OK) == 0);
  CHECK(hd1_exit_code(HD1_ERR_PARSE) == 2);
  CHECK(hd1_exit_code(HD1_ERR_TOO_LARGE) == 3);
  CHECK(hd1_exit_code(HD1_ERR_SELFTEST_FAILED) == 1);
}

TEST_CASE("space constructors") {
  Space line, mat, euc, js;
  const double xs[] = {0, 1, 10, 11};
  REQUIRE(hd1_space_create_line(xs, 4, &line.p) == HD1_OK);
  CHECK(hd1_space_size(line.p) == 4);
  double d = 0;
  CHECK(hd1_space_distance(line.p, 0, 3, &d) == HD1_OK);
  CHECK(d == 11.0);
  CHECK(hd1_space_distance(line.p, 0, 9, &d) == HD1_ERR_INDEX_OUT_OF_RANGE);

  const double dist[] = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  REQUIRE(hd1_space_create_matrix(dist, 3, &mat.p) == HD1_OK);
  const double bad[] = {0, 1, 2, 0};
  hd1_space* never = nullptr;
  CHECK(hd1_space_create_matrix(bad, 2, &never) == HD1_ERR_INVALID_METRIC);
  CHECK(never == nullptr);
  CHECK(std::string(hd1_last_error()).size() > 0);

  const double pts[] = {0, 0, 3, 4};
  REQUIRE(hd1_space_create_euclidean(pts, 2, 2, &euc.p) == HD1_OK);
  CHECK(hd1_space_distance(euc.p, 0, 1, &d) == HD1_OK);
  CHECK(d == doctest::Approx(5.0));

  REQUIRE(hd1_space_from_json(R"({"type":"line","points":[0,2]})", &js.p) == HD1_OK);
  CHECK(hd1_space_size(js.p) == 2);
  CHECK(hd1_space_from_json("{not json", &never) == HD1_ERR_PARSE);
  CHECK(hd1_space_from_json(nullptr, &never) == HD1_ERR_INVALID_ARGUMENT);
  CHECK(hd1_space_create_line(xs, 4, nullptr) == HD1_ERR_INVALID_ARGUMENT);
}

TEST_CASE("distances through the C boundary") {
  Space line;
  const double xs[] = {0, 1, 10, 11};
  REQUIRE(hd1_space_create_line(xs, 4, &line.p) == HD1_OK);
  const size_t a[] = {0, 2}, b[] = {1, 3};
  double v = 0;
  CHECK(hd1_hausdorff(line.p, a, 2, b, 2, &v) == HD1_OK);
  CHECK(v == 1.0);
  CHECK(hd1_d1_line(line.p, a, 2, b, 2, &v) == HD1_OK);
  CHECK(v == 2.0);
  CHECK(hd1_d1_exact(line.p, a, 2, b, 2, nullptr, 0, nullptr, &v) == HD1_OK);
  CHECK(v == 2.0);
  CHECK(hd1_mst_upper_bound(line.p, a, 2, b, 2, &v) == HD1_OK);
  CHECK(v == 2.0);
  CHECK(hd1_separation_lower_bound(line.p, a, 2, 0.5, &v) == HD1_OK);
  CHECK(v == 0.25);
  const size_t dup[] = {0, 0};
  CHECK(hd1_d1_line(line.p, dup, 2, b, 2, &v) == HD1_ERR_DUPLICATE_INDEX);
  const size_t close[] = {0, 1};
  CHECK(hd1_separation_lower_bound(line.p, close, 2, 1.0, &v) == HD1_ERR_NOT_SEPARATED);

  hd1_caps caps;
  hd1_default_caps(&caps);
  CHECK(caps.terminal_cap == 14);
  caps.terminal_cap = 3;
  CHECK(hd1_d1_exact(line.p, a, 2, b, 2, nullptr, 0, &caps, &v) == HD1_ERR_CAP_EXCEEDED);

  Space euc;
  const double tri[] = {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2, 0.5, std::sqrt(3.0) / 6};
  REQUIRE(hd1_space_create_euclidean(tri, 4, 2, &euc.p) == HD1_OK);
  const size_t corner[] = {0}, others[] = {1, 2}, pool[] = {3};
  CHECK(hd1_d1_exact(euc.p, corner, 1, others, 2, pool, 1, nullptr, &v) == HD1_OK);
  CHECK(v == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("json runner") {
  hd1_run_options opt{};
  hd1_run_options_init(&opt);
  CHECK(opt.timing == 1);
  CHECK(opt.jobs == 1);
  opt.timing = 0;
  Report r;
  REQUIRE(hd1_run("d1-line", R"({"type":"line","points":[0,1,2],"A":[0,2],"B":[1]})", &opt, &r.p) == HD1_OK);
  const auto j = nlohmann::json::parse(hd1_report_json(r.p));
  CHECK(j["result"]["value"] == 2.0);
  CHECK_FALSE(j.contains("elapsedMs"));

  hd1_report* none = nullptr;
  CHECK(hd1_run("d1-line", "[", &opt, &none) == HD1_ERR_PARSE);
  CHECK(hd1_run("bogus", "{}", &opt, &none) == HD1_ERR_INVALID_ARGUMENT);
  CHECK(hd1_run("d1-exact", R"({"type":"line","points":[0,1],"A":[0],"B":[1],"pool":[5]})", &opt, &none) ==
        HD1_ERR_INDEX_OUT_OF_RANGE);
  CHECK(none == nullptr);

  Report st;
  opt.seed = 99;
  CHECK(hd1_run("selftest", R"({"lineInstances":20,"generalInstances":5})", &opt, &st.p) == HD1_OK);
  CHECK(nlohmann::json::parse(hd1_report_json(st.p))["result"]["seed"] == 99);
}

TEST_CASE("last error is per thread") {
  hd1_space* never = nullptr;
  CHECK(hd1_space_from_json("{", &never) == HD1_ERR_PARSE);
  const std::string mine = hd1_last_error();
  std::string other;
  std::thread t([&] {
    const double xs[] = {1, 1};
    hd1_space* s = nullptr;
    hd1_space_create_line(xs, 2, &s);
    other = hd1_last_error();
  });
  t.join();
  CHECK(hd1_last_error() == mine);
  CHECK(other != mine);
}
