#include <catch2/catch_amalgamated.hpp>

#include "tautcalc/cache_io.hpp"
#include "tautcalc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using tautcalc::cli::ordered_json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = tautcalc::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path temp_file(const std::string& name) {
    fs::path p = fs::temp_directory_path() / name;
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("cli exit codes") {
    SECTION("success") {
        auto r = run_cli({"psi", "--genus", "1", "--partition", "1"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "1/24\n");
        REQUIRE(r.err.empty());
    }

    SECTION("missing subcommand, unknown subcommand, missing flags") {
        REQUIRE(run_cli({}).code == 2);
        REQUIRE(run_cli({"frobnicate"}).code == 2);
        REQUIRE(run_cli({"psi", "--genus", "1"}).code == 2);
        REQUIRE(run_cli({"strata", "--genus", "1"}).code == 2);
    }

    SECTION("malformed partition text") {
        auto r = run_cli({"psi", "--genus", "0", "--partition", "0,x,0"});
        REQUIRE(r.code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("--partition"));
    }

    SECTION("unstable input space") {
        auto r = run_cli({"psi", "--genus", "0", "--partition", "0"});
        REQUIRE(r.code == 2);
        REQUIRE_THAT(r.err, ContainsSubstring("unstable"));
        REQUIRE(run_cli({"psi", "--genus", "-1", "--partition", "0"}).code == 2);
    }

    SECTION("unsupported domain exits 3 and says why") {
        auto r = run_cli({"elsv-check", "--genus", "2", "--partition", "1,1"});
        REQUIRE(r.code == 3);
        REQUIRE_THAT(r.err, ContainsSubstring("g <= 1"));

        auto b = run_cli({"hurwitz", "--genus", "0", "--partition", "5",
                          "--method", "bruteforce"});
        REQUIRE(b.code == 3);
        REQUIRE_THAT(b.err, ContainsSubstring("cap exceeded"));
    }

    SECTION("bad enum value for --format") {
        REQUIRE(run_cli({"psi", "--genus", "1", "--partition", "1",
                         "--format", "xml"}).code == 2);
    }

    SECTION("help is a success") {
        auto r = run_cli({"--help"});
        REQUIRE(r.code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("strata"));
        REQUIRE_THAT(r.out, ContainsSubstring("elsv-check"));
    }
}

TEST_CASE("cli text outputs") {
    SECTION("three-pointed rational curve") {
        auto r = run_cli({"psi", "--genus", "0", "--partition", "0,0,0"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "1\n");
    }

    SECTION("lambda-g evaluation") {
        auto r = run_cli({"lambda-g", "--genus", "1", "--partition", "0"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "1/24\n");
    }

    SECTION("hurwitz with every method agrees") {
        auto r = run_cli({"hurwitz", "--genus", "0", "--partition", "2,1",
                          "--method", "all"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out ==
                "bruteforce = 4\n"
                "character = 4\n"
                "cutjoin = 4\n"
                "agree = true\n");
    }

    SECTION("single-method hurwitz has no agreement line") {
        auto r = run_cli({"hurwitz", "--genus", "1", "--partition", "2",
                          "--method", "elsv"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "elsv = 1/2\n");
    }

    SECTION("two-profile hurwitz") {
        auto r = run_cli({"hurwitz", "--genus", "0", "--partition", "2",
                          "--partition2", "1,1", "--method", "character"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "character = 1\n");
    }

    SECTION("disconnected count") {
        auto r = run_cli({"hurwitz", "--genus", "0", "--partition", "1,1,1",
                          "--connected", "false", "--method", "character"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "character = 27\n");
    }

    SECTION("band listing") {
        auto r = run_cli({"band", "--genus", "1", "--markings", "1", "--dim", "0"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "1;1;V=(0);E=(0-0);L=(1:0)\ntotal 1 strata\n");
    }

    SECTION("compact-type socle reports its integral") {
        auto r = run_cli({"socle", "--genus", "2", "--markings", "0",
                          "--variant", "compact_type"});
        REQUIRE(r.code == 0);
        REQUIRE_THAT(r.out, ContainsSubstring("integral = 1/576"));
        REQUIRE_THAT(r.out, ContainsSubstring("total 1 strata"));
    }

    SECTION("dimension bound") {
        auto r = run_cli({"diaz", "--genus", "4", "--variant", "s_leq_s", "--s", "0"});
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "3\n");
        REQUIRE(run_cli({"diaz", "--genus", "4", "--variant", "s_leq_s"}).code == 2);
    }
}

TEST_CASE("cli json envelope") {
    SECTION("field order and content") {
        auto r = run_cli({"psi", "--genus", "1", "--partition", "1",
                          "--format", "json"});
        REQUIRE(r.code == 0);
        auto env = ordered_json::parse(r.out);
        std::vector<std::string> keys;
        for (auto it = env.begin(); it != env.end(); ++it) keys.push_back(it.key());
        std::vector<std::string> want = {"command", "params",           "result",
                                         "methods", "exact_arithmetic", "version"};
        REQUIRE(keys == want);
        REQUIRE(env["command"] == "psi");
        REQUIRE(env["params"]["genus"] == 1);
        REQUIRE(env["params"]["partition"] == "1");
        REQUIRE(env["params"]["format"] == "json");
        REQUIRE(env["result"]["value"] == "1/24");
        REQUIRE(env["methods"] == ordered_json::array({"witten-kontsevich-recursion"}));
        REQUIRE(env["exact_arithmetic"] == true);
        REQUIRE(env["version"] == "1.0.0");
    }

    SECTION("cross-validation report") {
        auto r = run_cli({"elsv-check", "--genus", "1", "--partition", "2",
                          "--format", "json"});
        REQUIRE(r.code == 0);
        auto env = ordered_json::parse(r.out);
        const auto& values = env["result"]["values"];
        REQUIRE(values["elsv"] == "1/2");
        REQUIRE(values["character"] == "1/2");
        REQUIRE(values["cutjoin"] == "1/2");
        REQUIRE(values["bruteforce"] == "1/2");
        const auto& eq = env["result"]["equalities"];
        REQUIRE(eq.size() == 6);
        for (const auto& [k, v] : eq.items()) REQUIRE(v == true);
        REQUIRE(env["result"]["all_equal"] == true);
        REQUIRE(env["methods"].size() == 4);
    }

    SECTION("strata payload") {
        auto r = run_cli({"strata", "--genus", "1", "--markings", "1",
                          "--format", "json"});
        REQUIRE(r.code == 0);
        auto env = ordered_json::parse(r.out);
        REQUIRE(env["result"]["count"] == 2);
        REQUIRE(env["result"]["by_codim"]["0"] == 1);
        REQUIRE(env["result"]["by_codim"]["1"] == 1);
        const auto& strata = env["result"]["strata"];
        REQUIRE(strata[0]["key"] == "1;1;V=(1);E=();L=(1:0)");
        REQUIRE(strata[0]["automorphisms"] == "1");
        REQUIRE(strata[1]["key"] == "1;1;V=(0);E=(0-0);L=(1:0)");
        REQUIRE(strata[1]["automorphisms"] == "2");
    }
}

TEST_CASE("cli csv output") {
    auto r = run_cli({"strata", "--genus", "1", "--markings", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out ==
            "key,codim,dim,genus_zero_count,automorphisms\n"
            "\"1;1;V=(1);E=();L=(1:0)\",\"0\",\"1\",\"0\",\"1\"\n"
            "\"1;1;V=(0);E=(0-0);L=(1:0)\",\"1\",\"0\",\"1\",\"2\"\n");

    auto p = run_cli({"psi", "--genus", "1", "--partition", "1", "--format", "csv"});
    REQUIRE(p.out == "value\n\"1/24\"\n");
}

TEST_CASE("cli determinism") {
    std::vector<std::string> args = {"elsv-check", "--genus", "0", "--partition",
                                     "2,1,1", "--format", "json"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);

    std::vector<std::string> args2 = {"strata", "--genus", "0", "--markings", "5",
                                      "--format", "json"};
    REQUIRE(run_cli(args2).out == run_cli(args2).out);
}

TEST_CASE("cli cache behavior") {
    unsetenv("TAUT_CACHE");

    SECTION("store then reload round trip") {
        fs::path cache = temp_file("tautcalc_test_cache_roundtrip.tsv");
        std::vector<std::string> args = {"psi", "--genus", "2", "--partition", "2,3",
                                         "--cache-path", cache.string()};
        auto cold = run_cli(args);
        REQUIRE(cold.code == 0);
        REQUIRE(cold.out == "29/5760\n");
        REQUIRE(fs::exists(cache));

        auto entries = tautcalc::cache_load(cache.string());
        REQUIRE(!entries.empty());
        for (const auto& e : entries) {
            REQUIRE(!e.key.empty());
            REQUIRE(e.key.find('\t') == std::string::npos);
        }

        auto warm = run_cli(args);
        REQUIRE(warm.code == 0);
        REQUIRE(warm.out == cold.out);

        // A second pass over the same store keeps it loadable and consistent.
        auto again = tautcalc::cache_load(cache.string());
        REQUIRE(again.size() >= entries.size());
        fs::remove(cache);
    }

    SECTION("cached runs match cache-free runs") {
        fs::path cache = temp_file("tautcalc_test_cache_neutral.tsv");
        auto bare = run_cli({"psi", "--genus", "2", "--partition", "1,2,3"});
        auto cached = run_cli({"psi", "--genus", "2", "--partition", "1,2,3",
                               "--cache-path", cache.string()});
        auto warm = run_cli({"psi", "--genus", "2", "--partition", "1,2,3",
                             "--cache-path", cache.string()});
        REQUIRE(bare.code == 0);
        REQUIRE(bare.out == cached.out);
        REQUIRE(bare.out == warm.out);
        fs::remove(cache);
    }

    SECTION("corrupt cache line is rejected with its line number") {
        fs::path cache = temp_file("tautcalc_test_cache_corrupt.tsv");
        {
            std::ofstream f(cache);
            f << "psi|1|1\t1/0\n";
        }
        auto r = run_cli({"psi", "--genus", "1", "--partition", "1",
                          "--cache-path", cache.string()});
        REQUIRE(r.code == 1);
        REQUIRE_THAT(r.err, ContainsSubstring("cache parse error"));
        REQUIRE_THAT(r.err, ContainsSubstring("line 1"));
        fs::remove(cache);
    }

    SECTION("environment variable supplies the default path") {
        fs::path cache = temp_file("tautcalc_test_cache_env.tsv");
        setenv("TAUT_CACHE", cache.string().c_str(), 1);
        auto r = run_cli({"psi", "--genus", "1", "--partition", "1"});
        unsetenv("TAUT_CACHE");
        REQUIRE(r.code == 0);
        REQUIRE(r.out == "1/24\n");
        REQUIRE(fs::exists(cache));
        fs::remove(cache);
    }
}
