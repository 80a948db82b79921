// Exercises the extern-C surface the CLI is built on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "weylgeo/weylgeo_c.h"

namespace {

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

} // namespace

TEST_CASE("model lifecycle and errors") {
    wg_model* model = nullptr;
    CHECK(wg_model_create("sphere", 1.0, &model) == WG_OK);
    REQUIRE(model != nullptr);
    CHECK(wg_model_euler_characteristic(model) == 2);
    CHECK(wg_model_mesh_csv(model, 8, "capi_mesh.csv") == WG_OK);
    std::string text = slurp("capi_mesh.csv");
    CHECK(text.rfind("chart,u,v,weight\n", 0) == 0);
    std::remove("capi_mesh.csv");
    CHECK(wg_model_mesh_csv(model, 8, "/nonexistent-dir/mesh.csv") == WG_ERR_IO);
    wg_model_destroy(model);

    wg_model* bad = nullptr;
    CHECK(wg_model_create("klein", 1.0, &bad) == WG_ERR_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(std::strlen(wg_last_error()) > 0);
    CHECK(wg_model_create(nullptr, 1.0, &bad) == WG_ERR_ARGUMENT);
}

TEST_CASE("suite runs through the C boundary") {
    wg_suite_config cfg;
    wg_suite_config_defaults(&cfg);
    CHECK(cfg.seed == 42);
    cfg.seed = 7;

    wg_report* report = nullptr;
    REQUIRE(wg_run_suite("jets", &cfg, &report) == WG_OK);
    REQUIRE(report != nullptr);
    CHECK(wg_report_passed(report) == 1);
    int n = wg_report_check_count(report);
    CHECK(n == 3);
    for (int i = 0; i < n; ++i) {
        char name[128];
        double residual = -1.0, tolerance = -1.0;
        int passed = 0;
        CHECK(wg_report_check_name(report, i, name, sizeof(name)) == WG_OK);
        CHECK(std::strlen(name) > 0);
        CHECK(wg_report_check_values(report, i, &residual, &tolerance, &passed) == WG_OK);
        CHECK(passed == 1);
        CHECK(residual <= tolerance);
    }
    CHECK(wg_report_check_name(report, 99, nullptr, 0) == WG_ERR_ARGUMENT);
    CHECK(wg_report_check_values(report, -1, nullptr, nullptr, nullptr) == WG_ERR_ARGUMENT);

    // write json + csv, reload, compare deterministic bytes
    CHECK(wg_report_write(report, "capi_report.json", "json", 0) == WG_OK);
    CHECK(wg_report_write(report, "capi_report.csv", "csv", 1) == WG_OK);
    char* direct = wg_report_to_json(report, 0);
    REQUIRE(direct != nullptr);
    CHECK(slurp("capi_report.json") == direct);

    wg_report* reloaded = nullptr;
    REQUIRE(wg_report_load_json("capi_report.json", &reloaded) == WG_OK);
    char* reloaded_text = wg_report_to_json(reloaded, 0);
    REQUIRE(reloaded_text != nullptr);
    CHECK(std::string(direct) == reloaded_text);
    wg_string_free(direct);
    wg_string_free(reloaded_text);
    wg_report_destroy(reloaded);

    char* csv = wg_report_to_csv(report, 0);
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("suite,check,", 0) == 0);
    wg_string_free(csv);

    CHECK(wg_report_write(report, "capi_report.xml", "xml", 1) == WG_ERR_ARGUMENT);
    wg_report_destroy(report);
    std::remove("capi_report.json");
    std::remove("capi_report.csv");

    wg_report* missing = nullptr;
    CHECK(wg_report_load_json("does_not_exist.json", &missing) == WG_ERR_IO);
    CHECK(wg_run_suite("nonsense", &cfg, &missing) == WG_ERR_UNKNOWN_SUITE);
}

TEST_CASE("geodesic and w-field exports through the C boundary") {
    double ics[8] = {1.0, 0.0, 0.0, 1.0, 0.3, 0.2, 1.0, 0.0};
    CHECK(wg_geodesics_csv("sphere", 1.0, "round", ics, 2, 300, 1e-3, "capi_geo.csv") == WG_OK);
    std::string text = slurp("capi_geo.csv");
    CHECK(text.rfind("chart_id,u,v,x,y,z\n", 0) == 0);
    std::remove("capi_geo.csv");

    CHECK(wg_geodesics_csv("sphere", 1.0, "round", nullptr, 0, 300, 1e-3, "capi_geo0.csv") ==
          WG_OK);
    CHECK(slurp("capi_geo0.csv") == "chart_id,u,v,x,y,z\n");
    std::remove("capi_geo0.csv");

    CHECK(wg_geodesics_csv("torus", 1.0, "round", nullptr, 0, 10, 1e-3, "x.csv") ==
          WG_ERR_ARGUMENT);
    CHECK(wg_geodesics_csv("sphere", 1.0, "beltrami:1,2", nullptr, 0, 10, 1e-3, "x.csv") ==
          WG_ERR_ARGUMENT);

    CHECK(wg_w_grid_csv("sphere", 1.0, "round", 4, "capi_w.csv") == WG_OK);
    CHECK(slurp("capi_w.csv").rfind("u,v,W1,W2\n", 0) == 0);
    std::remove("capi_w.csv");
}

TEST_CASE("version string") {
    CHECK(std::strlen(wg_version()) > 0);
}
