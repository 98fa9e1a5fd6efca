#include "moprl/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using moprl::Json;

struct Options {
  std::string family;
  std::string params_path;
  std::string out_path;
  std::string suite = "all";
  std::string config_path;
  int nmax = 6;
  double tol = 1e-12;
  unsigned long long seed = 0;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw moprl::ConfigError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw moprl::ConfigError("cannot parse JSON from " + path + ": " + e.what());
  }
  return j;
}

void merge_config(const CLI::App& cmd, Options& opt) {
  if (opt.config_path.empty()) return;
  Json cfg = read_json_file(opt.config_path);
  auto unset = [&](const char* flag) { return cmd.get_option(flag)->count() == 0; };
  if (cfg.contains("family") && unset("--family")) opt.family = cfg["family"].get<std::string>();
  if (cfg.contains("params") && unset("--params")) opt.params_path = cfg["params"].get<std::string>();
  if (cfg.contains("out") && unset("--out")) opt.out_path = cfg["out"].get<std::string>();
  if (cfg.contains("suite") && unset("--suite")) opt.suite = cfg["suite"].get<std::string>();
  if (cfg.contains("nmax") && unset("--nmax")) opt.nmax = cfg["nmax"].get<int>();
  if (cfg.contains("tol") && unset("--tol")) opt.tol = cfg["tol"].get<double>();
  if (cfg.contains("seed") && unset("--seed")) opt.seed = cfg["seed"].get<unsigned long long>();
}

std::vector<std::string> parse_suite(const std::string& suite) {
  std::vector<std::string> names;
  if (suite.empty() || suite == "all") return names;
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  for (const auto& name : names) {
    const auto& known = moprl::known_checks();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw moprl::ConfigError("unknown check name '" + name + "'; valid names: " +
                               [&] {
                                 std::string s;
                                 for (const auto& k : known) s += (s.empty() ? "" : ", ") + k;
                                 return s;
                               }());
  }
  return names;
}

void validate_common(const Options& opt) {
  if (opt.family.empty()) throw moprl::ConfigError("--family is required");
  if (opt.nmax < 1) throw moprl::ConfigError("--nmax must be >= 1");
  if (!(opt.tol >= 1e-14 && opt.tol <= 1e-4))
    throw moprl::ConfigError("--tol must lie in [1e-14, 1e-4]");
}

moprl::WeightSpec load_spec(const Options& opt) {
  moprl::WeightFamily fam = moprl::family_from_name(opt.family);
  if (opt.params_path.empty())
    return moprl::WeightSpec::default_for(fam, fam == moprl::WeightFamily::ScalarHermite ? 1 : 2);
  Json params = read_json_file(opt.params_path);
  params["family"] = opt.family;
  return moprl::weight_spec_from_json(params);
}

void write_output(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw moprl::ConfigError("cannot write to " + out_path);
  out << text;
}

int run_compute(const Options& opt) {
  validate_common(opt);
  moprl::WeightSpec spec = load_spec(opt);
  moprl::MopSequence seq = moprl::build_sequence(spec, opt.nmax, opt.tol);
  if (seq.hankel_warning)
    std::cerr << "warning: a moment system exceeded condition 1e10; "
                 "high-degree entries may be inaccurate\n";
  write_output(moprl::ledger_to_json(seq), opt.out_path);
  return 0;
}

void print_report(const moprl::VerificationReport& rep) {
  std::printf("family %s (N = %d), degrees up to %d, quadrature tol %.1e, seed %llu\n",
              rep.family.c_str(), rep.dim, rep.n_max, rep.quad_tol, rep.seed);
  std::printf("%-14s %-42s %-12s %-9s %s\n", "check", "identity", "residual", "tol", "status");
  for (const auto& c : rep.checks) {
    if (c.skipped) {
      std::printf("%-14s %-42s %-12s %-9s SKIP (%s)\n", c.name.c_str(), c.anchor.c_str(), "-",
                  "-", c.skip_reason.c_str());
    } else {
      std::printf("%-14s %-42s %-12.3e %-9.1e %s\n", c.name.c_str(), c.anchor.c_str(), c.residual,
                  c.tol, c.pass ? "ok" : "FAIL");
    }
  }
  std::printf("overall: %s\n", rep.all_pass() ? "PASS" : "FAIL");
}

int run_verify(const Options& opt) {
  validate_common(opt);
  moprl::VerifyOptions vopt;
  vopt.n_max = opt.nmax;
  vopt.tol = opt.tol;
  vopt.seed = opt.seed;
  vopt.suite = parse_suite(opt.suite);  // rejects unknown names before any computation
  moprl::WeightSpec spec = load_spec(opt);
  moprl::VerificationReport rep = moprl::run_suite(spec, vopt);
  print_report(rep);
  if (!opt.out_path.empty()) write_output(moprl::report_to_json(rep), opt.out_path);
  return rep.all_pass() ? 0 : 1;
}

int run_demo() {
  const std::vector<std::string> families = {"hermite-a", "hermite-b", "freud-a", "freud-b"};
  bool all_ok = true;
  std::printf("built-in families at N = 2, degrees up to 5\n\n");
  for (const auto& fam : families) {
    moprl::WeightSpec spec =
        moprl::WeightSpec::default_for(moprl::family_from_name(fam), 2);
    moprl::VerifyOptions vopt;
    vopt.n_max = 5;
    moprl::VerificationReport rep = moprl::run_suite(spec, vopt);
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& c : rep.checks) {
      if (c.skipped)
        ++skipped;
      else if (c.pass)
        ++passed;
      else
        ++failed;
    }
    all_ok = all_ok && rep.all_pass();
    std::printf("%-14s  checks: %2d ok, %d failed, %d skipped   max residual %.3e   %s\n",
                fam.c_str(), passed, failed, skipped, rep.max_residual(),
                rep.all_pass() ? "PASS" : "FAIL");
  }
  std::printf("\n%s\n", all_ok ? "demo PASS" : "demo FAIL");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix orthogonal polynomial engine"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* compute = app.add_subcommand("compute", "build a ledger and export it as JSON");
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite and report residuals");
  CLI::App* demo = app.add_subcommand("demo", "run the built-in families at N = 2");
  for (CLI::App* cmd : {compute, verify}) {
    cmd->add_option("--family", opt.family, "weight family name");
    cmd->add_option("--params", opt.params_path, "JSON file with parameter matrices");
    cmd->add_option("--nmax", opt.nmax, "highest polynomial degree");
    cmd->add_option("--tol", opt.tol, "quadrature tolerance");
    cmd->add_option("--seed", opt.seed, "seed for sample-point draws");
    cmd->add_option("--out", opt.out_path, "output file (stdout if omitted)");
    cmd->add_option("--config", opt.config_path, "JSON config; explicit flags win");
  }
  verify->add_option("--suite", opt.suite, "comma-separated check names, or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) {
      merge_config(*compute, opt);
      return run_compute(opt);
    }
    if (verify->parsed()) {
      merge_config(*verify, opt);
      return run_verify(opt);
    }
    if (demo->parsed()) return run_demo();
    return 2;
  } catch (const moprl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const moprl::NonConvergentError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const moprl::IllConditionedError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
