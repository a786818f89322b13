#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "cflow/formats.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("cflow_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run cli(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(CFLOW_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), cflow::read_file(out.string())};
}

std::string put(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  cflow::write_file(p.string(), text);
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("algebra") {
    const Run a = cli("algebra -k 5 \"(4,1)+(4,1)\" \"~(4,1)\" \"empty+(1,4)\"");
    CHECK(a.code == 0);
    CHECK(a.out == "(3,2) amp=4 me=4\n(1,4) amp=3 me=3\nempty amp=0 me=0\n");
    CHECK(cli("algebra -k 5 \"(4,1\"").code == 2);
  }

  TEST_CASE("decide exit codes") {
    const std::string pet = put("petersen.g6", "IheA@GUAo\n");
    const Run p = cli("decide --r 5 " + pet);
    CHECK(p.code == 1);
    CHECK(p.out == "false: no sub-5-mcnzf\n");

    const std::string k4 = put("k4.g6", "C~\n");
    const std::string cert = (scratch() / "k4.cert").string();
    CHECK(cli("decide --r 9/2 --out " + cert + " " + k4).code == 0);
    const std::string k4net = put("k4.cfnet", "cfnet 9/2 4\n0 1 simple\n0 2 simple\n0 3 simple\n1 2 simple\n1 3 simple\n2 3 simple\n");
    CHECK(cli("verify " + k4net + " " + cert).code == 0);

    CHECK(cli("decide --r 5 " + (scratch() / "missing.g6").string()).code == 2);
    CHECK(cli("decide --r 5 " + put("junk.g6", "!!!\n")).code == 2);
    CHECK(cli("decide").code == 2);
    CHECK(cli("frobnicate").code == 2);
  }

  TEST_CASE("budget exhaustion exits 3") {
    const std::string s28 = (scratch() / "s28.cfnet").string();
    REQUIRE(cli("construct s28 --out " + s28).code == 0);
    const Run r = cli("decide --budget 0.000001 " + s28);
    CHECK(r.code == 3);
    CHECK(r.out.rfind("unknown", 0) == 0);
  }

  TEST_CASE("capacity") {
    const std::string pme = (scratch() / "pme.cfnet").string();
    REQUIRE(cli("construct petersen_minus_edge --out " + pme).code == 0);
    const Run a = cli("capacity " + pme);
    CHECK(a.code == 0);
    CHECK(a.out == "(4,1)\n");
    const Run b = cli("capacity --r 9/2 " + pme);
    CHECK(b.out == "(4,1/2)\n");
    const std::string g6 = put("p3.g6", "Bg\n");
    CHECK(cli("capacity --terminals 0 2 " + g6).out == "(1,4)\n");
    CHECK(cli("capacity --terminals 0 1 " + put("k4cap.g6", "C~\n")).out == "full\n");
    CHECK(cli("capacity " + g6).code == 2);
  }

  TEST_CASE("reduce then decide") {
    const std::string h = put("one.hyp", "1 2 3\n");
    const std::string net = (scratch() / "one.cfnet").string();
    REQUIRE(cli("reduce --out " + net + " " + h).code == 0);
    CHECK(fs::exists(net + ".layout"));
    const std::string cert = (scratch() / "one.cert").string();
    CHECK(cli("decide --out " + cert + " " + net).code == 0);
    CHECK(cli("verify " + net + " " + cert).code == 0);
  }

  TEST_CASE("snark verification and corpus") {
    const std::string dir = (scratch() / "corpus").string();
    REQUIRE(cli("corpus mr --depth 1 --out " + dir).code == 0);
    CHECK(fs::exists(fs::path(dir) / "mr_1.g6"));
    const std::string manifest = cflow::read_file((fs::path(dir) / "mr_1.manifest").string());
    CHECK(manifest.find("vertices: 50") != std::string::npos);
    CHECK(manifest.find("is_snark: true") != std::string::npos);
    CHECK(cli("verify-snark " + (fs::path(dir) / "mr_1.g6").string()).code == 0);
    CHECK(cli("verify-snark " + put("k4s.g6", "C~\n")).code == 1);

    REQUIRE(cli("corpus random_cubic --n 12 --count 3 --seed 4 --out " + dir).code == 0);
    const std::string first = cflow::read_file((fs::path(dir) / "random_cubic_12_4.g6").string());
    REQUIRE(cli("corpus random_cubic --n 12 --count 1 --seed 4 --out " + dir).code == 0);
    CHECK(cflow::read_file((fs::path(dir) / "random_cubic_12_4.g6").string()) == first);
  }

  TEST_CASE("construct output re-parses") {
    for (const char* name : {"k4_gadget", "butterfly", "(3,2)-{0,1,4}", "k4_triangle_41", "mr_abstract"}) {
      const std::string out = (scratch() / "construct.cfnet").string();
      REQUIRE(cli(std::string("construct \"") + name + "\" --out " + out).code == 0);
      CHECK_NOTHROW(cflow::read_network(cflow::read_file(out)));
    }
    CHECK(cli("construct nothing").code == 2);
  }
}
