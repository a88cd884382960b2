#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "phasecone/config.hpp"
#include "phasecone/fock.hpp"
#include "phasecone/io.hpp"
#include "phasecone/parallel.hpp"
#include "phasecone/positivity.hpp"
#include "phasecone/semigroups.hpp"
#include "phasecone/transforms.hpp"
#include "phasecone/warnings.hpp"
#include "suites.hpp"

namespace pc = phasecone;

namespace {

// Shared flags, attachable to every verb so they may appear after it.
// Resolution order: built-in defaults, then PHASECONE_CONFIG, then
// --config, then explicit flags.
struct Common {
  std::string config_path;
  pc::config::RunConfig flag;
  std::string format = "binary";

  CLI::Option *o_config{}, *o_fock{}, *o_half{}, *o_points{}, *o_tol_a{},
      *o_tol_f{}, *o_scheme{}, *o_order{}, *o_samples{}, *o_seed{}, *o_out{},
      *o_threads{};

  void attach(CLI::App* cmd) {
    o_config = cmd->add_option("--config", config_path,
                               "JSON config file overlaying defaults");
    o_fock = cmd->add_option("-N,--fock-dim", flag.fock_dim,
                             "truncation dimension");
    o_half = cmd->add_option("-L,--half-extent", flag.half_extent,
                             "grid half extent");
    o_points = cmd->add_option("-M,--grid-points", flag.grid_points,
                               "grid points per axis");
    o_tol_a = cmd->add_option("--psd-tol-analytic", flag.psd_tol_analytic,
                              "verdict tolerance for analytic evaluators");
    o_tol_f = cmd->add_option("--psd-tol-field", flag.psd_tol_field,
                              "verdict tolerance for interpolated fields");
    o_scheme = cmd->add_option("--quad-scheme", flag.quad_scheme,
                               "gauss_hermite or monte_carlo")
                   ->check(CLI::IsMember({"gauss_hermite", "monte_carlo"}));
    o_order = cmd->add_option("--quad-order", flag.quad_order,
                              "quadrature nodes per axis");
    o_samples =
        cmd->add_option("--mc-samples", flag.mc_samples, "monte carlo draws");
    o_seed = cmd->add_option("--seed", flag.seed, "rng seed");
    o_out = cmd->add_option("--out-dir", flag.out_dir, "output directory");
    o_threads = cmd->add_option("--threads", flag.threads,
                                "worker cap, 0 = one per core");
    cmd->add_option("--format", format, "payload encoding, binary or csv")
        ->check(CLI::IsMember({"binary", "csv"}));
  }

  pc::config::RunConfig resolve() const {
    pc::config::RunConfig cfg = pc::config::from_environment();
    if (o_config->count()) pc::config::overlay_file(cfg, config_path);
    if (o_fock->count()) cfg.fock_dim = flag.fock_dim;
    if (o_half->count()) cfg.half_extent = flag.half_extent;
    if (o_points->count()) cfg.grid_points = flag.grid_points;
    if (o_tol_a->count()) cfg.psd_tol_analytic = flag.psd_tol_analytic;
    if (o_tol_f->count()) cfg.psd_tol_field = flag.psd_tol_field;
    if (o_scheme->count()) cfg.quad_scheme = flag.quad_scheme;
    if (o_order->count()) cfg.quad_order = flag.quad_order;
    if (o_samples->count()) cfg.mc_samples = flag.mc_samples;
    if (o_seed->count()) cfg.seed = flag.seed;
    if (o_out->count()) cfg.out_dir = flag.out_dir;
    if (o_threads->count()) cfg.threads = flag.threads;
    pc::config::validate(cfg);
    pc::set_worker_count(static_cast<unsigned>(cfg.threads));
    return cfg;
  }

  pc::io::Encoding encoding() const {
    return pc::io::encoding_from_name(format);
  }
  const char* ext() const { return format == "binary" ? ".bin" : ".csv"; }
};

// Output directory, emitted-file tracking, and the closing record.
struct RunContext {
  pc::config::RunConfig cfg;
  std::string command;
  std::chrono::steady_clock::time_point start;
  std::filesystem::path out;
  std::vector<std::pair<std::string, std::string>> files;

  RunContext(pc::config::RunConfig c, std::string cmd)
      : cfg(std::move(c)),
        command(std::move(cmd)),
        start(std::chrono::steady_clock::now()),
        out(cfg.out_dir) {
    std::filesystem::create_directories(out);
  }

  std::string path(const std::string& name) const {
    return (out / name).string();
  }

  void track(const std::string& name) {
    files.emplace_back(name, pc::io::sha256_file(path(name)));
  }

  void finish(const std::string& record_name, const pc::warn::Capture& warns,
              const std::string& summary, bool ok) {
    pc::io::ExperimentRecord rec;
    rec.command = command;
    rec.config_json = pc::config::config_json(cfg);
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    rec.files = files;
    rec.warnings = warns.warnings();
    rec.summary = summary;
    rec.ok = ok;
    pc::io::write_text(path(record_name), pc::io::record_json(rec));
  }
};

std::string warnings_json(const std::vector<pc::warn::Warning>& warns) {
  std::string out = "[";
  for (std::size_t i = 0; i < warns.size(); ++i) {
    if (i) out += ',';
    out += "{\"code\":";
    out += pc::io::json_quote(pc::warn::code_name(warns[i].code));
    out += ",\"detail\":";
    out += pc::io::json_quote(warns[i].detail);
    out += '}';
  }
  return out + "]";
}

// "name:k1=v1,k2=v2" into its parameter map.
std::map<std::string, double> parse_params(const std::string& body,
                                           const std::string& spec) {
  std::map<std::string, double> params;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    std::string item = body.substr(pos, next - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw pc::ParseError("bad parameter \"" + item + "\" in \"" + spec +
                           "\"");
    try {
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw pc::ParseError("bad number in \"" + item + "\" of \"" + spec +
                           "\"");
    }
    pos = next + 1;
  }
  return params;
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& spec) {
  auto it = params.find(key);
  if (it == params.end())
    throw pc::ParseError("\"" + spec + "\" is missing parameter " + key);
  return it->second;
}

pc::positivity::CharEval parse_fn(const std::string& spec) {
  if (spec == "one")
    return [](pc::PhasePoint) { return pc::cdouble{1.0, 0.0}; };
  if (spec == "vacuum")
    return [](pc::PhasePoint z) {
      return pc::cdouble{std::exp(-0.25 * pc::norm_sq(z)), 0.0};
    };
  std::size_t colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  auto params = colon == std::string::npos
                    ? std::map<std::string, double>{}
                    : parse_params(spec.substr(colon + 1), spec);
  if (name == "gauss") {
    double c = require_param(params, "c", spec);
    return [c](pc::PhasePoint z) {
      return pc::cdouble{std::exp(-c * pc::norm_sq(z)), 0.0};
    };
  }
  if (name == "point") {
    return pc::positivity::point_mass_char({require_param(params, "q", spec),
                                            require_param(params, "p", spec)});
  }
  if (name == "normal") {
    Eigen::Vector2d mean(params.count("mq") ? params.at("mq") : 0.0,
                         params.count("mp") ? params.at("mp") : 0.0);
    Eigen::Matrix2d cov;
    double cqp = params.count("cqp") ? params.at("cqp") : 0.0;
    cov << require_param(params, "cqq", spec), cqp, cqp,
        require_param(params, "cpp", spec);
    return pc::positivity::gaussian_measure_char(mean, cov);
  }
  throw pc::ParseError("unknown function spec \"" + spec +
                       "\" (one, vacuum, gauss:c=, point:q=,p=, normal:...)");
}

pc::positivity::SampleSet parse_samples(const std::string& spec) {
  if (spec == "sparse17") return pc::positivity::SampleSet::sparse17();
  if (spec == "lattice50") return pc::positivity::SampleSet::lattice50();
  if (spec == "random50") return pc::positivity::SampleSet::random50();
  return pc::positivity::SampleSet::from_points(
      pc::io::read_sample_points(spec), "file");
}

int run_state(const Common& common, const std::string& kind, double alpha_re,
              double alpha_im, double nbar, int k, const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  const pc::cdouble alpha{alpha_re, alpha_im};
  pc::fock::DensityState state = [&] {
    if (kind == "vacuum") return pc::fock::state_vacuum(cfg.fock_dim);
    if (kind == "coherent") return pc::fock::state_coherent(alpha, cfg.fock_dim);
    if (kind == "fock") return pc::fock::state_fock(k, cfg.fock_dim);
    if (kind == "thermal") return pc::fock::state_thermal(nbar, cfg.fock_dim);
    return pc::fock::state_cat(alpha, cfg.fock_dim);
  }();

  std::string opfile = "state_" + kind + common.ext();
  pc::io::write_operator(ctx.path(opfile), state.op(), common.encoding());
  ctx.track(opfile);

  std::string report = "{\"kind\":" + pc::io::json_quote(kind);
  report += ",\"dim\":" + std::to_string(cfg.fock_dim);
  if (kind == "coherent" || kind == "cat") {
    report += ",\"alpha_re\":" + pc::io::format_double(alpha_re);
    report += ",\"alpha_im\":" + pc::io::format_double(alpha_im);
  } else if (kind == "thermal") {
    report += ",\"nbar\":" + pc::io::format_double(nbar);
  } else if (kind == "fock") {
    report += ",\"k\":" + std::to_string(k);
  }
  report += ",\"purity\":" + pc::io::format_double(pc::fock::purity(state));
  report += ",\"min_eig\":" + pc::io::format_double(state.min_eig());
  report += ",\"hermiticity_defect\":" +
            pc::io::format_double(state.hermiticity_defect());
  report +=
      ",\"trace_defect\":" + pc::io::format_double(state.trace_defect());
  report += ",\"warnings\":" + warnings_json(warns.warnings()) + "}\n";
  std::string repfile = "state_" + kind + "_report.json";
  pc::io::write_text(ctx.path(repfile), report);
  ctx.track(repfile);
  ctx.finish("state_record.json", warns, "certified " + kind, true);
  std::cout << report;
  return 0;
}

int run_char(const Common& common, const std::string& state_file,
             const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  pc::fock::FockOperator op = pc::io::read_operator(state_file);
  pc::PhaseGrid grid = pc::config::grid_of(cfg);
  pc::transforms::CharFunction chi = pc::transforms::dequantize(op, grid);

  std::string stem = std::filesystem::path(state_file).stem().string();
  std::string out = stem + "_char" + common.ext();
  pc::io::write_field(ctx.path(out), chi.field(), common.encoding(), "char");
  ctx.track(out);

  const int c = grid.origin_index();
  pc::cdouble origin = chi.field().at(c, c);
  double purity = pc::semigroups::purity_from_char(chi);
  std::string summary = "{\"origin_re\":" + pc::io::format_double(origin.real());
  summary += ",\"origin_im\":" + pc::io::format_double(origin.imag());
  summary +=
      ",\"sup_norm\":" + pc::io::format_double(chi.field().max_abs());
  summary += ",\"haar_l2_norm\":" +
             pc::io::format_double(std::sqrt(std::max(purity, 0.0)));
  summary += ",\"purity_char\":" + pc::io::format_double(purity);
  summary += ",\"symmetry_defect\":" +
             pc::io::format_double(chi.symmetry_defect());
  summary += ",\"warnings\":" + warnings_json(warns.warnings()) + "}\n";
  std::string sumfile = stem + "_char_summary.json";
  pc::io::write_text(ctx.path(sumfile), summary);
  ctx.track(sumfile);
  ctx.finish("char_record.json", warns, "characteristic table for " + stem,
             true);
  std::cout << summary;
  return 0;
}

int run_wigner(const Common& common, const std::string& state_file,
               const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  pc::fock::FockOperator op = pc::io::read_operator(state_file);
  pc::PhaseGrid grid = pc::config::grid_of(cfg);
  pc::transforms::WignerField w = pc::transforms::wigner_from_state(op, grid);

  std::string stem = std::filesystem::path(state_file).stem().string();
  std::string out = stem + "_wigner" + common.ext();
  pc::io::write_field(ctx.path(out), w.field(), common.encoding(), "wigner");
  ctx.track(out);

  pc::cdouble integral = pc::grid_integral(w.field(), pc::Weight::lebesgue);
  double min_value = 0.0;
  for (const pc::cdouble& v : w.field().values())
    min_value = std::min(min_value, v.real());
  const int c = grid.origin_index();
  std::string summary =
      "{\"integral_re\":" + pc::io::format_double(integral.real());
  summary += ",\"integral_im\":" + pc::io::format_double(integral.imag());
  summary += ",\"origin_value\":" +
             pc::io::format_double(w.field().at(c, c).real());
  summary += ",\"min_value\":" + pc::io::format_double(min_value);
  summary +=
      ",\"imag_residue\":" + pc::io::format_double(w.imag_residue());
  summary += ",\"warnings\":" + warnings_json(warns.warnings()) + "}\n";
  std::string sumfile = stem + "_wigner_summary.json";
  pc::io::write_text(ctx.path(sumfile), summary);
  ctx.track(sumfile);
  ctx.finish("wigner_record.json", warns, "quasi-distribution for " + stem,
             true);
  std::cout << summary;
  return 0;
}

int run_positivity(const Common& common, const std::string& domain,
                   const std::string& fn, const std::string& field_path,
                   const std::string& samples, double tol_value, bool tol_set,
                   const std::string& expect, const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  if (fn.empty() == field_path.empty())
    throw pc::ParseError("need exactly one of --fn and --field");
  pc::positivity::SampleSet set = parse_samples(samples);
  double tol = fn.empty() ? cfg.psd_tol_field : cfg.psd_tol_analytic;
  if (tol_set) tol = tol_value;
  pc::positivity::CharEval chi =
      fn.empty() ? pc::positivity::field_evaluator(
                       pc::io::read_field(field_path).field)
                 : parse_fn(fn);
  pc::positivity::PSDReport rep =
      domain == "quantum" ? pc::positivity::pd_test_quantum(chi, set, tol)
                          : pc::positivity::pd_test_classical(chi, set, tol);

  std::string rj = pc::io::psd_report_json(rep);
  pc::io::write_text(ctx.path("psd_report.json"), rj + "\n");
  ctx.track("psd_report.json");
  pc::io::write_sample_set(ctx.path("sample_set.csv"), set);
  ctx.track("sample_set.csv");

  std::printf("  %-20s %s\n", "verdict", rep.pass ? "pass" : "fail");
  std::printf("  %-20s %d\n", "gram_dim", rep.gram_dim);
  std::printf("  %-20s %s\n", "min_eig",
              pc::io::format_double(rep.min_eig).c_str());
  std::printf("  %-20s %s\n", "max_eig",
              pc::io::format_double(rep.max_eig).c_str());
  std::printf("  %-20s %s\n", "hermiticity_defect",
              pc::io::format_double(rep.hermiticity_defect).c_str());
  std::printf("  %-20s %s\n", "tolerance_used",
              pc::io::format_double(rep.tolerance_used).c_str());

  int code = 0;
  std::string summary = std::string("verdict ") + (rep.pass ? "pass" : "fail");
  if (!expect.empty()) {
    bool matched = (expect == "pass") == rep.pass;
    summary += ", expected " + expect;
    code = matched ? 0 : 1;
  }
  ctx.finish("positivity_record.json", warns, summary, code == 0);
  return code;
}

int run_evolve(const Common& common, const std::string& state_file,
               const std::string& mode, std::vector<double> ts,
               double drift_q, double drift_p, double sigma2, bool sigma_set,
               double cov_qq, double cov_qp, double cov_pp, bool cov_set,
               const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] < 0.0 || (i > 0 && ts[i] <= ts[i - 1]))
      throw pc::ParseError("--t values must be nonnegative and ascending");

  pc::fock::DensityState rho =
      pc::fock::DensityState::certify(pc::io::read_operator(state_file));
  pc::PhaseGrid grid = pc::config::grid_of(cfg);
  pc::semigroups::GaussianSemigroupParams params;
  params.drift << drift_q, drift_p;
  if (sigma_set) params.covariance = sigma2 * Eigen::Matrix2d::Identity();
  if (cov_set) params.covariance << cov_qq, cov_qp, cov_qp, cov_pp;
  pc::semigroups::TwirlingQuadrature quad = pc::config::quadrature_of(cfg);
  pc::transforms::CharFunction chi0 = pc::transforms::dequantize(rho.op(), grid);

  std::string csv;
  if (mode == "cq") csv = "t,purity_char\n";
  else if (mode == "twirl") csv = "t,purity_op\n";
  else csv = "t,purity_char,purity_op,intertwine_deviation\n";
  for (double t : ts) {
    csv += pc::io::format_double(t);
    if (mode != "twirl") {
      pc::transforms::CharFunction ct =
          pc::semigroups::cq_apply(params, t, chi0);
      csv += "," + pc::io::format_double(pc::semigroups::purity_from_char(ct));
    }
    if (mode != "cq") {
      pc::fock::DensityState evolved =
          pc::semigroups::twirl_apply(params, t, rho, quad);
      csv += "," + pc::io::format_double(pc::fock::purity(evolved));
      if (mode == "both") {
        pc::transforms::CharFunction after =
            pc::transforms::dequantize(evolved.op(), grid);
        pc::positivity::CharEval mult = pc::semigroups::gaussian_char(params, t);
        double dev = 0.0;
        const int m = grid.points();
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            pc::cdouble want =
                mult(grid.node(j, k)) * chi0.field().at(j, k);
            dev = std::max(dev, std::abs(after.field().at(j, k) - want));
          }
        csv += "," + pc::io::format_double(dev);
      }
    }
    csv += "\n";
  }
  pc::io::write_text(ctx.path("trajectory.csv"), csv);
  ctx.track("trajectory.csv");
  ctx.finish("evolve_record.json", warns,
             "evolution of " +
                 std::filesystem::path(state_file).stem().string() + ", mode " +
                 mode,
             true);
  std::cout << csv;
  return 0;
}

int run_verify(const Common& common, const std::string& suite, bool flip,
               const std::string& command) {
  pc::config::RunConfig cfg = common.resolve();
  pc::warn::Capture warns;
  RunContext ctx(cfg, command);
  std::vector<pc::suites::Check> checks =
      pc::suites::run_suite(suite, cfg, flip);
  bool ok = true;
  std::string json = "{\"suite\":" + pc::io::json_quote(suite);
  json += std::string(",\"flip_multiplier_sign\":") + (flip ? "true" : "false");
  json += ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const pc::suites::Check& c = checks[i];
    ok = ok && c.pass;
    std::printf("%s  %-34s deviation %-12s (tolerance %s)\n",
                c.pass ? "pass" : "FAIL", c.name.c_str(),
                pc::io::format_double(c.deviation).c_str(),
                pc::io::format_double(c.tolerance).c_str());
    if (i) json += ',';
    json += "{\"name\":" + pc::io::json_quote(c.name);
    json += ",\"deviation\":" + pc::io::format_double(c.deviation);
    json += ",\"tolerance\":" + pc::io::format_double(c.tolerance);
    json += std::string(",\"pass\":") + (c.pass ? "true" : "false") + "}";
  }
  json += std::string("],\"ok\":") + (ok ? "true" : "false") + "}\n";
  pc::io::write_text(ctx.path("verify_report.json"), json);
  ctx.track("verify_report.json");
  ctx.finish("verify_record.json", warns,
             std::string("suite ") + suite + (ok ? " passed" : " failed"), ok);
  std::printf("%s: %zu checks, %s\n", suite.c_str(), checks.size(),
              ok ? "all passed" : "FAILURES");
  return ok ? 0 : 1;
}

int run_check_manifest(const std::string& record_path) {
  std::vector<std::string> problems = pc::io::check_manifest(record_path);
  if (problems.empty()) {
    std::printf("manifest ok\n");
    return 0;
  }
  for (const std::string& p : problems) std::printf("%s\n", p.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command =
      std::filesystem::path(argv[0]).filename().string();
  for (int i = 1; i < argc; ++i) command += std::string(" ") + argv[i];

  CLI::App app{
      "phase-plane states, transforms, positivity tests, and noise evolution"};
  app.require_subcommand(1);

  Common c_state, c_char, c_wigner, c_pos, c_evolve, c_verify;

  auto* sc_state =
      app.add_subcommand("state", "build a reference state and certify it");
  c_state.attach(sc_state);
  std::string kind;
  double alpha_re = 1.0, alpha_im = 0.0, nbar = 1.0;
  int fock_k = 1;
  sc_state->add_option("kind", kind, "vacuum, coherent, fock, thermal, cat")
      ->required()
      ->check(CLI::IsMember({"vacuum", "coherent", "fock", "thermal", "cat"}));
  sc_state->add_option("--alpha-re", alpha_re, "coherent/cat amplitude, real");
  sc_state->add_option("--alpha-im", alpha_im, "coherent/cat amplitude, imag");
  sc_state->add_option("--nbar", nbar, "thermal occupation");
  sc_state->add_option("--k", fock_k, "number level");

  auto* sc_char = app.add_subcommand(
      "char", "characteristic table of a stored operator");
  c_char.attach(sc_char);
  std::string char_file;
  sc_char->add_option("state_file", char_file, "operator file")->required();

  auto* sc_wigner =
      app.add_subcommand("wigner", "quasi-distribution of a stored operator");
  c_wigner.attach(sc_wigner);
  std::string wigner_file;
  sc_wigner->add_option("state_file", wigner_file, "operator file")->required();

  auto* sc_pos = app.add_subcommand(
      "positivity", "Gram positivity verdict for a function");
  c_pos.attach(sc_pos);
  std::string domain, fn_spec, field_path, samples_spec = "sparse17", expect;
  double tol_value = 0.0;
  sc_pos->add_option("domain", domain, "classical or quantum")
      ->required()
      ->check(CLI::IsMember({"classical", "quantum"}));
  sc_pos->add_option("--fn", fn_spec,
                     "analytic family: one, vacuum, gauss:c=, point:q=,p=, "
                     "normal:cqq=,cpp=[,cqp=,mq=,mp=]");
  sc_pos->add_option("--field", field_path, "tabulated field file");
  sc_pos->add_option("--samples", samples_spec,
                     "sparse17, lattice50, random50, or a q,p csv file");
  auto* tol_opt = sc_pos->add_option("--tol", tol_value, "verdict tolerance");
  sc_pos->add_option("--expect", expect,
                     "exit nonzero unless the verdict matches")
      ->check(CLI::IsMember({"pass", "fail"}));

  auto* sc_evolve = app.add_subcommand(
      "evolve", "noise evolution trajectory of a stored state");
  c_evolve.attach(sc_evolve);
  std::string evolve_file, mode = "both";
  std::vector<double> ts = {0.0, 0.25, 0.5, 1.0};
  double drift_q = 0.0, drift_p = 0.0, sigma2 = 0.0;
  double cov_qq = 0.0, cov_qp = 0.0, cov_pp = 0.0;
  sc_evolve->add_option("state_file", evolve_file, "operator file")->required();
  sc_evolve->add_option("--mode", mode, "cq, twirl, or both")
      ->check(CLI::IsMember({"cq", "twirl", "both"}));
  sc_evolve->add_option("--t", ts, "evolution times, ascending")
      ->delimiter(',');
  sc_evolve->add_option("--drift-q", drift_q, "drift velocity, q component");
  sc_evolve->add_option("--drift-p", drift_p, "drift velocity, p component");
  auto* sigma_opt =
      sc_evolve->add_option("--sigma2", sigma2, "isotropic diffusion rate");
  auto* covqq_opt =
      sc_evolve->add_option("--cov-qq", cov_qq, "diffusion matrix qq entry");
  sc_evolve->add_option("--cov-qp", cov_qp, "diffusion matrix qp entry");
  sc_evolve->add_option("--cov-pp", cov_pp, "diffusion matrix pp entry");

  auto* sc_verify =
      app.add_subcommand("verify", "run a cross-module identity suite");
  c_verify.attach(sc_verify);
  std::string suite;
  bool flip = false;
  sc_verify->add_option("suite", suite,
                        "multiplier, star, bochner, schur, intertwine, all")
      ->required()
      ->check(CLI::IsMember(
          {"multiplier", "star", "bochner", "schur", "intertwine", "all"}));
  sc_verify->add_flag("--flip-multiplier-sign", flip,
                      "debug: run the star suite with the wrong orientation");

  auto* sc_manifest = app.add_subcommand(
      "check-manifest", "re-hash the files listed in an experiment record");
  std::string record_path;
  sc_manifest->add_option("record", record_path, "experiment record json")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_state->parsed())
      return run_state(c_state, kind, alpha_re, alpha_im, nbar, fock_k,
                       command);
    if (sc_char->parsed()) return run_char(c_char, char_file, command);
    if (sc_wigner->parsed()) return run_wigner(c_wigner, wigner_file, command);
    if (sc_pos->parsed())
      return run_positivity(c_pos, domain, fn_spec, field_path, samples_spec,
                            tol_value, tol_opt->count() > 0, expect, command);
    if (sc_evolve->parsed())
      return run_evolve(c_evolve, evolve_file, mode, ts, drift_q, drift_p,
                        sigma2, sigma_opt->count() > 0, cov_qq, cov_qp, cov_pp,
                        covqq_opt->count() > 0, command);
    if (sc_verify->parsed()) return run_verify(c_verify, suite, flip, command);
    if (sc_manifest->parsed()) return run_check_manifest(record_path);
  } catch (const pc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
