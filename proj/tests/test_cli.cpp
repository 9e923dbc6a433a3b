#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "csv_table.hpp"
#include "json.hpp"
#include "qnd/config.hpp"
#include "qnd/errors.hpp"

using namespace qnd;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qnd_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QND_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("assignments") {
  RunConfig cfg;
  apply_assignments(cfg, {{"cavity.gamma1_meV", "0.7"}, {"phonon.a_e_eV", "-8"}, {"run.seed", "99"}});
  CHECK(cfg.cavity.gamma1 == 0.7);
  CHECK(cfg.phonon.a_e == -8000.0);
  CHECK(cfg.seed == 99);

  SUBCASE("errors are collected") {
    try {
      apply_assignments(cfg, {{"cavity.nope", "1"}, {"grid.n", "abc"}, {"bogus", "1"}});
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("cavity.nope") != std::string::npos);
      CHECK(msg.find("grid.n") != std::string::npos);
      CHECK(msg.find("bogus") != std::string::npos);
    }
  }
  SUBCASE("validate reports every section") {
    RunConfig bad;
    bad.cavity.gamma1 = -1.0;
    bad.mirrors.r1 = 2.0;
    try {
      bad.validate();
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("cavity") != std::string::npos);
      CHECK(msg.find("mirrors") != std::string::npos);
    }
  }
}

TEST_CASE("INI round trip and shipped profile") {
  RunConfig cfg;
  cfg.cavity.v_s = 0.125;
  const fs::path dir = scratch("ini");
  std::ofstream(dir / "a.ini") << to_ini(cfg);
  RunConfig back;
  apply_ini_file(back, dir / "a.ini");
  CHECK(resolved_entries(back) == resolved_entries(cfg));

  // the shipped profile documents every key and changes nothing
  const std::string shipped = slurp(default_profile_path());
  for (const ConfigKey& k : config_schema()) {
    CAPTURE(k.key);
    CHECK(shipped.find(k.key + " =") != std::string::npos);
  }
  CHECK(resolved_entries(load_config({})) == resolved_entries(RunConfig{}));

  std::ofstream(dir / "bad.ini") << "[cavity]\nfoo = 1\n";
  RunConfig x;
  CHECK_THROWS_AS(apply_ini_file(x, dir / "bad.ini"), ValidationError);
  CHECK_THROWS_AS(apply_ini_file(x, dir / "missing.ini"), ValidationError);
}

TEST_CASE("csv writer") {
  const fs::path dir = scratch("csv");
  cli::CsvTable t({"a_meV", "label"});
  t.add_row({0.1, "x,y"});
  t.add_row({1e-20, std::string("plain")});
  t.write(dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "a_meV,label\n0.1,\"x,y\"\n1e-20,plain\n");
  CHECK_THROWS_AS(t.add_row({1.0}), ValidationError);
  CHECK(cli::format_number(0.30000000000000004) == "0.30000000000000004");
}

TEST_CASE("binary: outputs, manifest and exit codes") {
  const fs::path dir = scratch("bin");
  REQUIRE(run_cli("cavity --r1 0.9995 -o " + dir.string()) == 0);
  CHECK(fs::exists(dir / "cavity.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest_cavity.json"));
  CHECK(manifest["config"]["mirrors"]["r1"] == "0.9995");
  CHECK(manifest["exit_code"] == 0);
  CHECK(manifest["versions"].contains("eigen"));
  CHECK(manifest["wall_time_s"].get<double>() >= 0.0);

  CHECK(run_cli("sweep --points 11 -o " + dir.string()) == 0);
  CHECK(slurp(dir / "sweep.csv").rfind("delta_meV,phase_up_rel_input", 0) == 0);

  CHECK(run_cli("sweep --set cavity.unknown=1 -o " + dir.string()) == 1);
  CHECK(run_cli("sweep --gamma1 -1 -o " + dir.string()) == 1);
  CHECK(run_cli("no-such-command") == 1);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("solve --n 15 --spacing 3 --set solver.max_matvecs=8 --set solver.basis_size=6 -o " + dir.string()) ==
        2);
  const auto failed = nlohmann::json::parse(slurp(dir / "manifest_solve.json"));
  CHECK(failed["exit_code"] == 2);
}

TEST_CASE("binary: config file precedence") {
  const fs::path dir = scratch("prec");
  std::ofstream(dir / "c.ini") << "[mirrors]\nr1 = 0.998\nr2 = 0.998\n";
  REQUIRE(run_cli("cavity -c " + (dir / "c.ini").string() + " --r2 0.9991 -o " + dir.string()) == 0);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest_cavity.json"));
  CHECK(m["config"]["mirrors"]["r1"] == "0.998");
  CHECK(m["config"]["mirrors"]["r2"] == "0.9991");
}
