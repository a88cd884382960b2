// End-to-end runs of the installed binary through a shell, one scratch
// directory per case.  These only assert on published behavior: exit
// codes, file names, and report fields.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "phasecone/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = [] {
  fs::path p = fs::temp_directory_path() /
               ("phasecone_cli_tests_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}();

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the binary with `args` inside `dir`, capturing both streams.
RunResult run_cli(const fs::path& dir, const std::string& args,
                  const std::string& env_prefix = "") {
  fs::create_directories(dir);
  std::string cmd = "cd \"" + dir.string() + "\" && " + env_prefix + "\"" +
                    PHASECONE_CLI_PATH + "\" " + args +
                    " > stdout.txt 2> stderr.txt";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = phasecone::io::read_text((dir / "stdout.txt").string());
  r.err = phasecone::io::read_text((dir / "stderr.txt").string());
  return r;
}

fs::path case_dir(const std::string& name) { return kScratch / name; }

json load_json(const fs::path& p) {
  return json::parse(phasecone::io::read_text(p.string()));
}

std::vector<std::vector<std::string>> load_csv(const fs::path& p) {
  std::string text = phasecone::io::read_text(p.string());
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty()) {
      std::vector<std::string> cells;
      std::size_t c = 0;
      while (true) {
        std::size_t comma = line.find(',', c);
        cells.push_back(line.substr(c, comma - c));
        if (comma == std::string::npos) break;
        c = comma + 1;
      }
      rows.push_back(std::move(cells));
    }
    start = end + 1;
  }
  return rows;
}

}  // namespace

TEST_CASE("state runs certify and write a tracked record") {
  fs::path dir = case_dir("state_vacuum");
  RunResult r = run_cli(dir, "state vacuum");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "out" / "state_vacuum.bin"));
  CHECK(fs::exists(dir / "out" / "state_record.json"));
  json rep = load_json(dir / "out" / "state_vacuum_report.json");
  CHECK(rep.at("kind") == "vacuum");
  CHECK(rep.at("dim") == 64);
  CHECK(std::abs(rep.at("purity").get<double>() - 1.0) < 1e-10);
}

TEST_CASE("unrepresentable states exit with the error code") {
  fs::path dir = case_dir("state_bad");
  RunResult r = run_cli(dir, "state fock --k 200");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("thermal purity lands on the closed form") {
  fs::path dir = case_dir("state_thermal");
  RunResult r = run_cli(dir, "state thermal --nbar 1");
  CHECK(r.exit_code == 0);
  json rep = load_json(dir / "out" / "state_thermal_report.json");
  CHECK(std::abs(rep.at("purity").get<double>() - 1.0 / 3.0) < 1e-6);
}

TEST_CASE("characteristic tables are normalized at the origin") {
  fs::path dir = case_dir("char_vacuum");
  REQUIRE(run_cli(dir, "state vacuum").exit_code == 0);
  RunResult r = run_cli(dir, "char out/state_vacuum.bin");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "out" / "state_vacuum_char.bin"));
  json sum = load_json(dir / "out" / "state_vacuum_char_summary.json");
  CHECK(std::abs(sum.at("origin_re").get<double>() - 1.0) < 1e-8);
  CHECK(std::abs(sum.at("origin_im").get<double>()) < 1e-10);
  CHECK(sum.at("sup_norm").get<double>() <= 1.0 + 1e-8);
  CHECK(std::abs(sum.at("purity_char").get<double>() - 1.0) < 1e-4);
  CHECK(sum.at("symmetry_defect").get<double>() < 1e-8);
}

TEST_CASE("quasi-distribution summaries expose the negative origin") {
  fs::path dir = case_dir("wigner_fock1");
  REQUIRE(run_cli(dir, "state fock --k 1").exit_code == 0);
  RunResult r = run_cli(dir, "wigner out/state_fock.bin");
  CHECK(r.exit_code == 0);
  json sum = load_json(dir / "out" / "state_fock_wigner_summary.json");
  CHECK(std::abs(sum.at("integral_re").get<double>() - 1.0) < 1e-6);
  CHECK(std::abs(sum.at("integral_im").get<double>()) < 1e-8);
  CHECK(std::abs(sum.at("origin_value").get<double>() + 0.3183098861837907) <
        1e-4);
  CHECK(sum.at("min_value").get<double>() < -0.25);
  CHECK(sum.at("imag_residue").get<double>() < 1e-8);
}

TEST_CASE("positivity verdicts honor --expect in both directions") {
  fs::path dir = case_dir("pos_narrow");
  RunResult expected_fail =
      run_cli(dir, "positivity quantum --fn gauss:c=0.15 --expect fail");
  CHECK(expected_fail.exit_code == 0);
  CHECK(expected_fail.out.find("verdict") != std::string::npos);
  json rep = load_json(dir / "out" / "psd_report.json");
  CHECK(rep.at("pass") == false);

  RunResult surprised =
      run_cli(case_dir("pos_narrow2"),
              "positivity quantum --fn gauss:c=0.15 --expect pass");
  CHECK(surprised.exit_code == 1);

  RunResult classical =
      run_cli(case_dir("pos_classical"),
              "positivity classical --fn gauss:c=0.15 --expect pass");
  CHECK(classical.exit_code == 0);
}

TEST_CASE("tabulated fields get a verdict through interpolation") {
  fs::path dir = case_dir("pos_field");
  REQUIRE(run_cli(dir, "state vacuum").exit_code == 0);
  REQUIRE(run_cli(dir, "char out/state_vacuum.bin").exit_code == 0);
  RunResult r = run_cli(
      dir, "positivity quantum --field out/state_vacuum_char.bin --expect pass");
  CHECK(r.exit_code == 0);
  json rep = load_json(dir / "out" / "psd_report.json");
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("gram_dim") == 17);
}

TEST_CASE("evolution trajectories track the purity law on both routes") {
  fs::path dir = case_dir("evolve_noise");
  REQUIRE(run_cli(dir, "state vacuum").exit_code == 0);
  RunResult r = run_cli(
      dir, "evolve out/state_vacuum.bin --sigma2 0.5 --t 0,0.5 --mode both");
  CHECK(r.exit_code == 0);
  auto rows = load_csv(dir / "out" / "trajectory.csv");
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].size() == 4);
  CHECK(rows[0][0] == "t");
  CHECK(rows[0][1] == "purity_char");
  CHECK(rows[0][2] == "purity_op");
  CHECK(rows[0][3] == "intertwine_deviation");
  CHECK(std::abs(std::stod(rows[1][1]) - 1.0) < 1e-6);
  CHECK(std::stod(rows[1][3]) <= 1e-10);
  CHECK(std::abs(std::stod(rows[2][1]) - 2.0 / 3.0) < 1e-3);
  CHECK(std::abs(std::stod(rows[2][2]) - 2.0 / 3.0) < 1e-3);
  CHECK(std::stod(rows[2][3]) <= 1e-3);
}

TEST_CASE("pure drift moves the state without losing purity") {
  fs::path dir = case_dir("evolve_drift");
  REQUIRE(run_cli(dir, "state vacuum").exit_code == 0);
  RunResult r = run_cli(
      dir, "evolve out/state_vacuum.bin --drift-q 1 --t 0,1 --mode cq");
  CHECK(r.exit_code == 0);
  auto rows = load_csv(dir / "out" / "trajectory.csv");
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].size() == 2);
  CHECK(rows[0][1] == "purity_char");
  CHECK(std::abs(std::stod(rows[1][1]) - 1.0) < 1e-6);
  CHECK(std::abs(std::stod(rows[2][1]) - 1.0) < 1e-6);
}

TEST_CASE("identity suites exit zero and mutations exit nonzero") {
  RunResult good = run_cli(case_dir("verify_mult"), "verify multiplier");
  CHECK(good.exit_code == 0);
  CHECK(good.out.find("pass") != std::string::npos);

  RunResult bad = run_cli(case_dir("verify_flip"),
                          "verify star --flip-multiplier-sign");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("repeated runs emit byte-identical data files") {
  fs::path a = case_dir("repro_a");
  fs::path b = case_dir("repro_b");
  REQUIRE(run_cli(a, "state vacuum").exit_code == 0);
  REQUIRE(run_cli(b, "state vacuum").exit_code == 0);
  REQUIRE(run_cli(a, "char out/state_vacuum.bin").exit_code == 0);
  REQUIRE(run_cli(b, "char out/state_vacuum.bin").exit_code == 0);
  using phasecone::io::sha256_file;
  CHECK(sha256_file((a / "out" / "state_vacuum.bin").string()) ==
        sha256_file((b / "out" / "state_vacuum.bin").string()));
  CHECK(sha256_file((a / "out" / "state_vacuum_char.bin").string()) ==
        sha256_file((b / "out" / "state_vacuum_char.bin").string()));
}

TEST_CASE("manifest checks catch corrupted outputs") {
  fs::path dir = case_dir("manifest");
  REQUIRE(run_cli(dir, "state vacuum").exit_code == 0);
  RunResult ok = run_cli(dir, "check-manifest out/state_record.json");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("manifest ok") != std::string::npos);

  std::string payload_path = (dir / "out" / "state_vacuum.bin").string();
  std::string bytes = phasecone::io::read_text(payload_path);
  bytes[bytes.size() / 2] ^= 0x01;
  phasecone::io::write_text(payload_path, bytes);
  RunResult tampered = run_cli(dir, "check-manifest out/state_record.json");
  CHECK(tampered.exit_code == 1);
  CHECK(tampered.out.find("state_vacuum.bin") != std::string::npos);
}

TEST_CASE("config file settings apply and flags win over them") {
  fs::path dir = case_dir("env_config");
  fs::create_directories(dir);
  phasecone::io::write_text((dir / "cfg.json").string(),
                            "{\"fock_dim\": 32}\n");
  std::string env = "PHASECONE_CONFIG=\"" + (dir / "cfg.json").string() + "\" ";

  RunResult from_env = run_cli(dir / "env_only", "state vacuum", env);
  CHECK(from_env.exit_code == 0);
  json rep = load_json(dir / "env_only" / "out" / "state_vacuum_report.json");
  CHECK(rep.at("dim") == 32);

  RunResult flag_wins = run_cli(dir / "flag_wins", "state vacuum -N 16", env);
  CHECK(flag_wins.exit_code == 0);
  rep = load_json(dir / "flag_wins" / "out" / "state_vacuum_report.json");
  CHECK(rep.at("dim") == 16);
}

TEST_CASE("config typos are fatal, not ignored") {
  fs::path dir = case_dir("bad_config");
  fs::create_directories(dir);
  phasecone::io::write_text((dir / "cfg.json").string(),
                            "{\"fock_dmi\": 32}\n");
  std::string env = "PHASECONE_CONFIG=\"" + (dir / "cfg.json").string() + "\" ";
  RunResult r = run_cli(dir / "run", "state vacuum", env);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("fock_dmi") != std::string::npos);
}
