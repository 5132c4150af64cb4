#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nacirc/cli.hpp"
#include "nacirc/verify.hpp"
#include "nacirc/whitebox.hpp"
#include "support.hpp"

using namespace nacirc;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NACIRC_TEST_DATA) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / ("nacirc_test_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("white-box verdicts") {
        Run a = run({"pit-white", data("assoc.nacirc")});
        CHECK(a.code == 0);
        CHECK(a.out == "NONZERO ((1 2) 3)\n");
        CHECK(run({"pit-white", data("commutator_comm.nacirc")}).out == "ZERO\n");
        CHECK(run({"pit-white", data("commutator_noncomm.nacirc")}).out == "NONZERO (1 2)\n");
        CHECK(run({"pit-white", data("jordan.nacirc")}).out == "NONZERO (((1 1) 2) 1)\n");
        CHECK(run({"pit-white", data("constant.nacirc")}).out == "NONZERO const\n");
        CHECK(run({"pit-white", data("zero.nacirc")}).out == "ZERO\n");
        auto j = nlohmann::json::parse(run({"pit-white", data("square.nacirc"), "--json"}).out);
        CHECK(j["result"] == "NONZERO");
        CHECK(j["witness"]["monomial"] == "(1 1)");
        CHECK(j["witness"]["coefficient"] == 1);
    }

    TEST_CASE("randomized verdicts") {
        Run z = run({"pit-random", data("zero.nacirc"), "--set-size", "100", "--trials", "5", "--seed", "7"});
        CHECK(z.code == 0);
        CHECK(z.out == "ZERO p_fail<=1e-10\n");
        CHECK(run({"pit-random", data("assoc.nacirc")}).out == "NONZERO\n");
        auto j = nlohmann::json::parse(run({"pit-random", data("commutator_comm.nacirc"), "--json"}).out);
        CHECK(j["result"] == "ZERO");
        CHECK(j["stats"]["queries"] == 10);
        CHECK(j["bound"].get<double>() == doctest::Approx(std::pow(2.0 / 1000, 10)));
    }

    TEST_CASE("deterministic black-box verdicts") {
        Run z = run({"pit-hitting", data("zero.nacirc")});
        CHECK(z.code == 0);
        CHECK(z.out == "ZERO\n");
        Run k = run({"pit-hitting", data("constant.nacirc")});
        CHECK(k.code == 0);
        CHECK(k.out.rfind("NONZERO\nx1 elem d=1\n", 0) == 0);
        Run sq = run({"pit-hitting", data("square.nacirc")});
        CHECK(sq.code == 3);
        CHECK(sq.err.find("EnumerationCapExceeded") != std::string::npos);
    }

    TEST_CASE("expansion") {
        Run e = run({"expand", data("commutator_noncomm.nacirc")});
        CHECK(e.code == 0);
        CHECK(e.out == "1 (1 2)\n" + std::to_string(kDefaultPrime - 1) + " (2 1)\nconst 0\n");
        CHECK(run({"expand", data("assoc.nacirc"), "--max-terms", "1"}).code == 3);
        auto j = nlohmann::json::parse(run({"expand", data("constant.nacirc"), "--json"}).out);
        CHECK(j["constant"] == 7);
        CHECK(j["terms"].empty());
    }

    TEST_CASE("generator output") {
        Run g = run({"gen", "--n", "3", "--size", "12", "--seed", "5", "--mode", "noncomm"});
        CHECK(g.code == 0);
        CHECK(g.out == serialize(gen_random(3, 12, 4, Mode::NonComm, 5)));
        CHECK(run({"gen", "--n", "3", "--size", "12", "--seed", "5", "--mode", "noncomm"}).out == g.out);
        CHECK(parse(run({"gen", "--field", "101", "--size", "8"}).out).p == 101);
        CHECK(run({"gen", "--mode", "assoc"}).code == 2);
        CHECK(run({"gen", "--field", "100"}).code == 2);
    }

    TEST_CASE("hitting set listing") {
        Run d = run({"hitting-dump", "--n", "1", "--size", "1", "--degree", "1", "--depth", "0"});
        CHECK(d.code == 0);
        CHECK(d.out.rfind("point 0\nx1 elem d=1\nk=1\n", 0) == 0);
        auto j = nlohmann::json::parse(run({"hitting-dump", "--n", "1", "--size", "1", "--degree", "1", "--depth", "0",
                                            "--json"})
                                           .out);
        const Field F(kDefaultPrime);
        CHECK(j["count"] == hitting_set_nonassoc(1, 1, 1, 0, Mode::Comm, F).size());
        CHECK(run({"hitting-dump", "--n", "1"}).code == 2);
    }

    TEST_CASE("exit codes") {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"pit-white"}).code == 2);
        CHECK(run({"pit-white", "/nonexistent/file.nacirc"}).code == 1);
        CHECK(run({"pit-white", data("assoc.nacirc"), "--field", "101"}).code == 1);
        Run bad = run({"pit-white", write_temp("bad.nacirc", "nacirc v1\nmode comm\nfield 101\nnvars 1\ngate 0 var 9\n")});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("BadReference") != std::string::npos);
        Run broken = run({"pit-white", write_temp("broken.nacirc", "nacirc v1\nmode comm\nfield 101\nnvars 1\nwat\n"),
                          "--json"});
        CHECK(broken.code == 2);
        CHECK(nlohmann::json::parse(broken.out)["error"] == "ParseError");
        std::string small = write_temp("small_field.nacirc", serialize(associator_circuit(Mode::NonComm, 3)));
        CHECK(run({"pit-random", small, "--set-size", "5"}).code == 3);
        CHECK(run({"pit-random", data("assoc.nacirc"), "--set-size", "2"}).code == 3);
        CHECK(run({"verify", "--corpus", "huge"}).code == 1);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("verify report") {
        Run v = run({"verify", "--json", "--seed", "3"});
        auto j = nlohmann::json::parse(v.out);
        CHECK(j["corpus"] == "small");
        CHECK(j["seed"] == 3);
        REQUIRE(j["criteria"].size() == 9);
        for (const auto& c : j["criteria"]) {
            if (c["id"] != 8) CHECK(c["pass"] == true);
        }
        CHECK(v.code == (j["all_pass"].get<bool>() ? 0 : 1));
        Run text = run({"verify", "--seed", "3"});
        CHECK(text.out == run({"verify", "--seed", "3"}).out);
        CHECK(text.out.find("PASS 1 ") != std::string::npos);
    }

    TEST_CASE("the uncorrected duplicate split is caught") {
        Run v = run({"verify", "--inject-duplicate-split-fault"});
        CHECK(v.code == 1);
        CHECK(v.out.find("FAIL 1 ") != std::string::npos);
    }

    TEST_CASE("mutated inputs only raise library errors") {
        Rng rng(2718);
        std::vector<std::string> seeds;
        for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(serialize(gen_random(3, 10, 4, s % 2 ? Mode::Comm : Mode::NonComm, s, 101)));
        const std::string alphabet = "0123456789 \n-#abcdeglmnoprtuvx()";
        std::uint64_t parsed = 0, rejected = 0;
        for (int t = 0; t < 100000; ++t) {
            std::string text = seeds[rng.below(seeds.size())];
            const int edits = 1 + static_cast<int>(rng.below(3));
            for (int e = 0; e < edits && !text.empty(); ++e) {
                std::size_t at = rng.below(text.size());
                switch (rng.below(3)) {
                    case 0: text[at] = alphabet[rng.below(alphabet.size())]; break;
                    case 1: text.erase(at, 1 + rng.below(4)); break;
                    default: text.insert(at, 1, alphabet[rng.below(alphabet.size())]); break;
                }
            }
            try {
                Circuit c = parse(text);
                ++parsed;
                if (c.degree() <= 12) whitebox_pit(c);
            } catch (const Error&) {
                ++rejected;
            }
        }
        CHECK(parsed + rejected == 100000);
        CHECK(parsed > 0);
        CHECK(rejected > 0);
    }
}
