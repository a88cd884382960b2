#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "phasecone/config.hpp"
#include "phasecone/core.hpp"
#include "phasecone/fock.hpp"
#include "phasecone/io.hpp"
#include "phasecone/rng.hpp"

using namespace phasecone;
namespace fs = std::filesystem;

namespace {

// Fresh per-process scratch directory so parallel ctest jobs cannot collide.
const fs::path kScratch = [] {
  fs::path p = fs::temp_directory_path() /
               ("phasecone_io_tests_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}();

std::string at(const std::string& name) { return (kScratch / name).string(); }

ComplexField noisy_field(const PhaseGrid& grid, std::uint64_t seed) {
  Rng rng(seed);
  return ComplexField::tabulate(grid, [&](PhasePoint) {
    return cdouble{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
  });
}

}  // namespace

TEST_CASE("printed doubles survive a decimal round trip bit-exactly") {
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 0.1 + 0.2, 6.283185307179586,
                   0.0, -1.0, 5e-324}) {
    std::string s = io::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(io::format_double(10.0) == "10");
}

TEST_CASE("json string quoting escapes control and quote characters") {
  CHECK(io::json_quote("plain") == "\"plain\"");
  CHECK(io::json_quote("a\"b\\c\nd") == "\"a\\\"b\\\\c\\nd\"");
}

TEST_CASE("encoding names map and reject") {
  CHECK(io::encoding_from_name("binary") == io::Encoding::binary);
  CHECK(io::encoding_from_name("csv") == io::Encoding::csv);
  CHECK_THROWS_AS(io::encoding_from_name("hdf5"), ParseError);
}

TEST_CASE("field files round trip in both encodings") {
  PhaseGrid grid(4.0, 16);
  ComplexField f = noisy_field(grid, 12);
  for (io::Encoding enc : {io::Encoding::binary, io::Encoding::csv}) {
    std::string path =
        at(enc == io::Encoding::binary ? "field.bin" : "field.csv");
    io::write_field(path, f, enc, "char");
    io::FieldFile back = io::read_field(path);
    CHECK(back.side == "char");
    CHECK(back.field.grid().half_extent() == 4.0);
    CHECK(back.field.grid().points() == 16);
    for (std::size_t i = 0; i < f.values().size(); ++i)
      CHECK(back.field.values()[i] == f.values()[i]);
  }
}

TEST_CASE("operator files round trip in both encodings") {
  fock::FockOperator a = fock::state_thermal(0.7, 12).op();
  for (io::Encoding enc : {io::Encoding::binary, io::Encoding::csv}) {
    std::string path = at(enc == io::Encoding::binary ? "op.bin" : "op.csv");
    io::write_operator(path, a, enc);
    fock::FockOperator back = io::read_operator(path);
    REQUIRE(back.dim() == 12);
    CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("malformed field files fail loudly") {
  CHECK_THROWS_AS(io::read_field(at("no_such_file.bin")), IOError);

  PhaseGrid grid(2.0, 8);
  io::write_field(at("trunc.bin"), noisy_field(grid, 3), io::Encoding::binary);
  std::string full = io::read_text(at("trunc.bin"));
  io::write_text(at("trunc.bin"), full.substr(0, full.size() - 9));
  CHECK_THROWS_AS(io::read_field(at("trunc.bin")), ParseError);

  io::write_text(at("garbage.bin"), "not json\n123");
  CHECK_THROWS_AS(io::read_field(at("garbage.bin")), ParseError);

  io::write_field(at("op_as_field.bin"), noisy_field(grid, 4),
                  io::Encoding::binary);
  CHECK_THROWS_AS(io::read_operator(at("op_as_field.bin")), ParseError);
}

TEST_CASE("file digests match the published test vectors") {
  io::write_text(at("empty.txt"), "");
  CHECK(io::sha256_file(at("empty.txt")) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  io::write_text(at("abc.txt"), "abc");
  CHECK(io::sha256_file(at("abc.txt")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(io::sha256_file(at("no_such_file.txt")), IOError);
}

TEST_CASE("sample sets round trip through csv") {
  positivity::SampleSet s = positivity::SampleSet::sparse17();
  io::write_sample_set(at("samples.csv"), s);
  std::vector<PhasePoint> back = io::read_sample_points(at("samples.csv"));
  REQUIRE(back.size() == 17);
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].q == s.points()[i].q);
    CHECK(back[i].p == s.points()[i].p);
  }
}

TEST_CASE("experiment records audit their manifests") {
  fs::create_directories(kScratch / "run");
  io::write_text(at("run/payload.txt"), "payload bytes\n");

  io::ExperimentRecord rec;
  rec.command = "state vacuum";
  rec.config_json = config::config_json(config::RunConfig{});
  rec.wall_seconds = 0.125;
  rec.files.push_back({"payload.txt", io::sha256_file(at("run/payload.txt"))});
  rec.warnings.push_back({warn::Code::truncation, "tail weight 1e-9"});
  rec.summary = "wrote vacuum state";
  std::string j = io::record_json(rec);

  // Fixed key order keeps repeated runs diffable.
  CHECK(j.find("\"command\"") < j.find("\"config\""));
  CHECK(j.find("\"config\"") < j.find("\"wall_seconds\""));
  CHECK(j.find("\"wall_seconds\"") < j.find("\"files\""));
  CHECK(j.find("\"files\"") < j.find("\"warnings\""));
  CHECK(j.find("\"warnings\"") < j.find("\"summary\""));
  CHECK(j.find("\"summary\"") < j.find("\"ok\":true"));
  CHECK(j.find("\"code\":\"truncation\"") != std::string::npos);

  io::write_text(at("run/record.json"), j);
  CHECK(io::check_manifest(at("run/record.json")).empty());

  io::write_text(at("run/payload.txt"), "payload bytes?\n");
  auto problems = io::check_manifest(at("run/record.json"));
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("hash mismatch") != std::string::npos);

  fs::remove(kScratch / "run" / "payload.txt");
  problems = io::check_manifest(at("run/record.json"));
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("missing") != std::string::npos);

  io::write_text(at("run/broken.json"), "{\"files\": 3}");
  CHECK_THROWS_AS(io::check_manifest(at("run/broken.json")), ParseError);
}

TEST_CASE("defaults validate and project into grid and quadrature") {
  config::RunConfig cfg;
  CHECK_NOTHROW(config::validate(cfg));
  PhaseGrid grid = config::grid_of(cfg);
  CHECK(grid.half_extent() == 10.0);
  CHECK(grid.points() == 128);
  semigroups::TwirlingQuadrature quad = config::quadrature_of(cfg);
  CHECK(quad.scheme == semigroups::TwirlingQuadrature::Scheme::gauss_hermite);
  CHECK(quad.order == 20);

  cfg.quad_scheme = "monte_carlo";
  cfg.mc_samples = 5000;
  cfg.seed = 42;
  quad = config::quadrature_of(cfg);
  CHECK(quad.scheme == semigroups::TwirlingQuadrature::Scheme::monte_carlo);
  CHECK(quad.samples == 5000);
  CHECK(quad.seed == 42);
}

TEST_CASE("config files overlay and reject typos") {
  io::write_text(at("good.json"),
                 "{\"fock_dim\": 32, \"out_dir\": \"elsewhere\"}");
  config::RunConfig cfg;
  config::overlay_file(cfg, at("good.json"));
  CHECK(cfg.fock_dim == 32);
  CHECK(cfg.out_dir == "elsewhere");
  CHECK(cfg.grid_points == 128);

  io::write_text(at("typo.json"), "{\"fock_dmi\": 32}");
  config::RunConfig fresh;
  CHECK_THROWS_AS(config::overlay_file(fresh, at("typo.json")), ParseError);

  io::write_text(at("notobj.json"), "[1,2]");
  CHECK_THROWS_AS(config::overlay_file(fresh, at("notobj.json")), ParseError);

  io::write_text(at("badval.json"), "{\"fock_dim\": \"many\"}");
  CHECK_THROWS_AS(config::overlay_file(fresh, at("badval.json")), ParseError);
}

TEST_CASE("cross-field validation catches unusable settings") {
  config::RunConfig cfg;
  cfg.grid_points = 32;  // needs >= 2 L^2 / pi = 64 at L = 10
  CHECK_THROWS_AS(config::validate(cfg), GridTooCoarse);

  cfg = config::RunConfig{};
  cfg.fock_dim = 1;
  CHECK_THROWS_AS(config::validate(cfg), InvalidDimension);

  cfg = config::RunConfig{};
  cfg.quad_scheme = "simpson";
  CHECK_THROWS_AS(config::validate(cfg), ParseError);

  cfg = config::RunConfig{};
  cfg.quad_order = 3;
  CHECK_THROWS_AS(config::validate(cfg), InvalidDimension);

  cfg = config::RunConfig{};
  cfg.mc_samples = 100;
  CHECK_THROWS_AS(config::validate(cfg), InvalidDimension);

  cfg = config::RunConfig{};
  cfg.psd_tol_analytic = 0.0;
  CHECK_THROWS_AS(config::validate(cfg), ParseError);

  cfg = config::RunConfig{};
  cfg.threads = -2;
  CHECK_THROWS_AS(config::validate(cfg), InvalidDimension);
}

TEST_CASE("the environment hook loads the named config file") {
  io::write_text(at("env.json"), "{\"fock_dim\": 48}");
  ::setenv("PHASECONE_CONFIG", at("env.json").c_str(), 1);
  config::RunConfig cfg = config::from_environment();
  CHECK(cfg.fock_dim == 48);
  ::unsetenv("PHASECONE_CONFIG");
  cfg = config::from_environment();
  CHECK(cfg.fock_dim == 64);
}

TEST_CASE("config snapshots are flat json with stable keys") {
  std::string j = config::config_json(config::RunConfig{});
  CHECK(j.find("\"fock_dim\":64") != std::string::npos);
  CHECK(j.find("\"half_extent\":10") != std::string::npos);
  CHECK(j.find("\"quad_scheme\":\"gauss_hermite\"") != std::string::npos);
  CHECK(j.find("\"seed\":20240903") != std::string::npos);
  CHECK(j.find("\"fock_dim\"") < j.find("\"half_extent\""));
}

TEST_CASE("text io round trips and reports missing files") {
  io::write_text(at("note.txt"), "two\nlines\n");
  CHECK(io::read_text(at("note.txt")) == "two\nlines\n");
  CHECK_THROWS_AS(io::read_text(at("nothing.txt")), IOError);
}
