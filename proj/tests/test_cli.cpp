#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* env = std::getenv("VORLAB_BIN");
    REQUIRE(env != nullptr);
    return env;
}

int run(const std::string& args, const std::string& log = "/tmp/vorlab_cli_out.txt") {
    const std::string cmd = binary() + " " + args + " > " + log + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    os << content;
}

}  // namespace

TEST_CASE("help lists every subcommand") {
    REQUIRE(run("--help") == 0);
    const std::string out = slurp("/tmp/vorlab_cli_out.txt");
    for (const char* sub : {"spectrum", "sweep-alpha", "sweep-R", "project", "corrector",
                            "simulate", "validate", "report"})
        CHECK(out.find(sub) != std::string::npos);
}

TEST_CASE("schema errors name the offending key") {
    write_file("/tmp/vorlab_bad1.json", R"({"grid": {"n": "many"}})");
    CHECK(run("--config /tmp/vorlab_bad1.json validate fields") == 1);
    CHECK(slurp("/tmp/vorlab_cli_out.txt").find("grid.n") != std::string::npos);

    write_file("/tmp/vorlab_bad2.json", R"({"grid": {"n": 4}, "alpha": 0.5})");
    CHECK(run("--config /tmp/vorlab_bad2.json validate fields") == 1);
    const std::string out = slurp("/tmp/vorlab_cli_out.txt");
    CHECK(out.find("grid.n") != std::string::npos);
    CHECK(out.find("alpha") != std::string::npos);
}

TEST_CASE("validate fields passes on defaults") {
    fs::remove_all("/tmp/vorlab_runs_f");
    CHECK(run("--out /tmp/vorlab_runs_f validate fields") == 0);
}

TEST_CASE("identical config and seed give identical CSV bytes") {
    write_file("/tmp/vorlab_sweep.json", R"({
        "grid": {"n": 49},
        "alpha_list": [100, 1000, 10000, 100000],
        "seed": 777
    })");
    fs::remove_all("/tmp/vorlab_runs_a");
    fs::remove_all("/tmp/vorlab_runs_b");
    REQUIRE(run("--config /tmp/vorlab_sweep.json --out /tmp/vorlab_runs_a sweep-alpha") == 0);
    REQUIRE(run("--config /tmp/vorlab_sweep.json --out /tmp/vorlab_runs_b sweep-alpha") == 0);
    auto find_csv = [](const std::string& root) {
        for (const auto& e : fs::recursive_directory_iterator(root))
            if (e.path().filename() == "sweep_alpha.csv") return e.path().string();
        FAIL("sweep_alpha.csv not found under " + root);
        return std::string{};
    };
    const std::string a = slurp(find_csv("/tmp/vorlab_runs_a"));
    const std::string b = slurp(find_csv("/tmp/vorlab_runs_b"));
    REQUIRE(!a.empty());
    REQUIRE(a == b);
}

TEST_CASE("report summarizes a run and rejects a dir without manifest") {
    std::string run_dir;
    for (const auto& e : fs::recursive_directory_iterator("/tmp/vorlab_runs_a"))
        if (e.path().filename() == "manifest.json") run_dir = e.path().parent_path().string();
    REQUIRE(!run_dir.empty());
    CHECK(run("report " + run_dir) == 0);
    const std::string out = slurp("/tmp/vorlab_cli_out.txt");
    CHECK(out.find("sweep_alpha.csv") != std::string::npos);
    CHECK(out.find("criterion 8") != std::string::npos);

    fs::create_directories("/tmp/vorlab_empty_run");
    CHECK(run("report /tmp/vorlab_empty_run") == 1);
}
