#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "papqr/audit.hpp"
#include "papqr/harness.hpp"
#include "papqr/serialize.hpp"

using namespace papqr;

namespace {

// Relative output paths land in $PAP_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("PAP_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string out = dir;
  if (out.back() != '/') out += '/';
  return out + path;
}

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
  } else {
    write_text_file(resolve_output(out_path), body);
  }
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_doubles(csv)) out.push_back(static_cast<int>(v));
  return out;
}

struct ClassFlags {
  std::string kind = "thresholds";
  double lo = 0.0;
  double hi = 1.0;
  int p = 16;
  std::string file;
};

struct DistFlags {
  std::string kind;
  double lo = 0.0;
  double hi = 1.0;
  std::string biases;
  std::uint64_t bias_seed = 0;
  std::string file;
};

void add_class_flags(CLI::App* cmd, ClassFlags& f) {
  cmd->add_option("--class", f.kind, "query class: thresholds|stumps|explicit")
      ->capture_default_str();
  cmd->add_option("--lo", f.lo, "threshold interval lower end")
      ->capture_default_str();
  cmd->add_option("--hi", f.hi, "threshold interval upper end")
      ->capture_default_str();
  cmd->add_option("--p", f.p, "stump dimension")->capture_default_str();
  cmd->add_option("--class-file", f.file,
                  "JSON class document (explicit classes; may carry weights)");
}

void add_dist_flags(CLI::App* cmd, DistFlags& f) {
  cmd->add_option("--dist", f.kind,
                  "distribution: uniform|product|discrete (default follows "
                  "the class)");
  cmd->add_option("--dist-lo", f.lo, "uniform lower end")->capture_default_str();
  cmd->add_option("--dist-hi", f.hi, "uniform upper end")->capture_default_str();
  cmd->add_option("--biases", f.biases, "product biases, comma separated");
  cmd->add_option("--bias-seed", f.bias_seed,
                  "draw product biases uniformly from a seeded stream");
  cmd->add_option("--dist-file", f.file, "JSON distribution document");
}

std::pair<HypothesisClass, std::optional<Distribution>> make_class(
    const ClassFlags& f) {
  if (!f.file.empty())
    return class_from_json(Json::parse(read_text_file(f.file)));
  if (f.kind == "thresholds")
    return {HypothesisClass::all_thresholds(f.lo, f.hi), std::nullopt};
  if (f.kind == "stumps")
    return {HypothesisClass::all_stumps(f.p), std::nullopt};
  throw CLI::ValidationError(
      "--class", "explicit classes need --class-file; got '" + f.kind + "'");
}

Distribution make_distribution(const DistFlags& f, const HypothesisClass& cls,
                               const std::optional<Distribution>& from_class) {
  if (!f.file.empty())
    return distribution_from_json(Json::parse(read_text_file(f.file)),
                                  class_point_kind(cls));
  std::string kind = f.kind;
  if (kind.empty()) {
    if (from_class.has_value()) return *from_class;
    switch (cls.kind) {
      case HypothesisClass::Kind::thresholds: kind = "uniform"; break;
      case HypothesisClass::Kind::stumps: kind = "product"; break;
      case HypothesisClass::Kind::finite:
        throw CLI::ValidationError(
            "--dist", "explicit classes need weights or --dist-file");
    }
  }
  if (kind == "uniform") return Distribution::uniform(f.lo, f.hi);
  if (kind == "product") {
    if (!f.biases.empty())
      return Distribution::product_signs_dist(parse_doubles(f.biases));
    Rng rng(f.bias_seed);
    return fingerprinting_distribution(cls.dimension, rng);
  }
  throw CLI::ValidationError("--dist",
                             "discrete distributions need --dist-file");
}

// Formats shared by all CSV/JSON emitters.
std::string json_line(const Json& j) { return j.dump(2) + "\n"; }

int cmd_calc_samples(int d, std::int64_t p, double alpha, double beta,
                     double eps, double delta, double c_n, double c_m,
                     double c_cover, bool dual_from_vc, std::int64_t size_x,
                     std::int64_t size_h, const std::string& out) {
  const SampleSizes s =
      release_sample_bounds(d, p, alpha, beta, eps, delta, c_n, c_m, dual_from_vc);
  Json j;
  j["n"] = s.private_n;
  j["m"] = s.public_m;
  j["formula"] =
      "n = ceil(c_n (d ln(1/alpha) + ln(1/beta))^{3/2} sqrt(p ln(1/delta)) / "
      "(eps alpha^2)); m = ceil(c_m (d ln(1/alpha) + ln(1/beta)) / alpha)";
  j["constants"] = Json{{"c_n", c_n}, {"c_m", c_m}, {"c_cover", c_cover}};
  j["public_sample_size"] = public_sample_size(d, alpha, beta, c_cover);
  if (dual_from_vc) j["dual_vc_bound"] = std::int64_t{1} << (d + 1);
  if (size_x >= 2 && size_h >= 1)
    j["pmw_n"] = required_private_samples(size_x, size_h, alpha, beta, eps, delta);
  emit(out, json_line(j));
  return 0;
}

Hypothesis hypothesis_from_flags(const CLI::App* cmd, double threshold,
                                 int stump, int hyp_index,
                                 const HypothesisClass& cls) {
  const bool has_t = cmd->count("--threshold") > 0;
  const bool has_s = cmd->count("--stump") > 0;
  const bool has_i = cmd->count("--hyp-index") > 0;
  if (has_t + has_s + has_i != 1)
    throw CLI::ValidationError(
        "query", "give exactly one of --threshold, --stump, --hyp-index");
  if (has_t) return Hypothesis::make_threshold(threshold);
  if (has_s) return Hypothesis::make_stump(stump);
  if (hyp_index < 0 || static_cast<std::size_t>(hyp_index) >= cls.members.size())
    throw CLI::ValidationError("--hyp-index", "index outside the class");
  return cls.members[static_cast<std::size_t>(hyp_index)];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "papqr: public-data-assisted private query release.\n"
      "Covers a query class from public samples, reduces the domain to "
      "pattern representatives, answers with private multiplicative weights, "
      "and audits releases with a tracing attack.\n"
      "All randomness is controlled by --seed. Relative --out paths land in "
      "$PAP_OUTPUT_DIR when set."};
  app.require_subcommand(1);

  // ---- release ----
  auto* release = app.add_subcommand(
      "release", "draw datasets and write a release structure JSON");
  ClassFlags rel_class;
  DistFlags rel_dist;
  std::int64_t rel_n = 1000, rel_m = 100;
  double rel_alpha = 0.1, rel_beta = 0.1, rel_eps = 1.0, rel_delta = 1e-5;
  std::uint64_t rel_seed = 1;
  bool rel_noise_off = false;
  std::string rel_out, rel_config;
  add_class_flags(release, rel_class);
  add_dist_flags(release, rel_dist);
  release->add_option("--n", rel_n, "private sample count")->capture_default_str();
  release->add_option("--m", rel_m, "public sample count")->capture_default_str();
  release->add_option("--alpha", rel_alpha, "target error")->capture_default_str();
  release->add_option("--beta", rel_beta, "failure probability")->capture_default_str();
  release->add_option("--eps", rel_eps, "privacy epsilon")->capture_default_str();
  release->add_option("--delta", rel_delta, "privacy delta")->capture_default_str();
  release->add_option("--seed", rel_seed, "RNG seed")->capture_default_str();
  release->add_flag("--noise-off", rel_noise_off,
                    "oracle mode: disable all noise (not private)");
  release->add_option("--out", rel_out, "output path (default stdout)");
  release->add_option("--config", rel_config,
                      "JSON config file; explicit flags override it");

  // ---- query ----
  auto* query_cmd =
      app.add_subcommand("query", "answer one hypothesis from a release file");
  std::string q_release;
  double q_threshold = 0.0;
  int q_stump = 1, q_hyp_index = 0;
  std::string q_out;
  query_cmd->add_option("--release", q_release, "release JSON path")->required();
  query_cmd->add_option("--threshold", q_threshold, "threshold cutoff");
  query_cmd->add_option("--stump", q_stump, "stump coordinate (1-based)");
  query_cmd->add_option("--hyp-index", q_hyp_index,
                        "member index into an explicit class");
  query_cmd->add_option("--out", q_out, "output path (default stdout)");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand(
      "eval", "worst-case error of a release against a distribution");
  std::string e_release;
  DistFlags e_dist;
  int e_grid = 0;
  std::string e_out;
  eval_cmd->add_option("--release", e_release, "release JSON path")->required();
  add_dist_flags(eval_cmd, e_dist);
  eval_cmd->add_option("--grid", e_grid,
                       "evaluate on an n-point threshold grid instead of "
                       "the exact sweep");
  eval_cmd->add_option("--out", e_out, "output path (default stdout)");

  // ---- audit ----
  auto* audit_cmd = app.add_subcommand(
      "audit", "tracing attack against a release mechanism (CSV)");
  TraceConfig a_cfg;
  a_cfg.p = 4096;
  a_cfg.n = 32;
  a_cfg.m = 0;
  a_cfg.trials = 200;
  a_cfg.fpr_target = 0.01;
  std::string a_mechs = "empirical";
  std::string a_n_grid, a_m_grid, a_alpha_grid;
  double a_eps = 1.0, a_delta = 1e-5, a_beta = 0.1;
  std::uint64_t a_seed = 1;
  int a_workers = 1;
  std::string a_out;
  audit_cmd->add_option("--p", a_cfg.p, "stump dimension")->capture_default_str();
  audit_cmd->add_option("--n", a_cfg.n, "private rows")->capture_default_str();
  audit_cmd->add_option("--m", a_cfg.m, "public rows")->capture_default_str();
  audit_cmd->add_option("--alpha", a_cfg.alpha, "mechanism accuracy target")
      ->capture_default_str();
  audit_cmd->add_option("--trials", a_cfg.trials, "Monte-Carlo trials")
      ->capture_default_str();
  audit_cmd->add_option("--fpr", a_cfg.fpr_target, "target false-positive rate")
      ->capture_default_str();
  audit_cmd->add_option("--null-draws", a_cfg.null_calibration_draws,
                        "calibration draws per trial")
      ->capture_default_str();
  audit_cmd
      ->add_option("--mechanisms", a_mechs,
                   "comma list of empirical|zero|pap|empirical-first-n")
      ->capture_default_str();
  audit_cmd->add_option("--n-grid", a_n_grid, "sweep over private rows");
  audit_cmd->add_option("--m-grid", a_m_grid, "sweep over public rows");
  audit_cmd->add_option("--alpha-grid", a_alpha_grid, "sweep over alpha");
  audit_cmd->add_option("--eps", a_eps, "pap mechanism epsilon")
      ->capture_default_str();
  audit_cmd->add_option("--delta", a_delta, "pap mechanism delta")
      ->capture_default_str();
  audit_cmd->add_option("--beta", a_beta, "pap mechanism beta")
      ->capture_default_str();
  audit_cmd->add_option("--seed", a_seed, "RNG seed")->capture_default_str();
  audit_cmd->add_option("--workers", a_workers, "worker threads")
      ->capture_default_str();
  audit_cmd->add_option("--out", a_out, "output path (default stdout)");

  // ---- bench ----
  auto* bench = app.add_subcommand(
      "bench",
      "seeded experiment harness. Emits CSV with the fixed column order:\n"
      "trial,mode,n,m,alpha,beta,eps,delta,seed,error,error_exact,"
      "cover_patterns,rep_domain_size,pmw_updates,budget_exhausted");
  ClassFlags b_class;
  DistFlags b_dist;
  std::string b_mode = "pap";
  ExperimentSpec b_spec;
  std::string b_out, b_config;
  add_class_flags(bench, b_class);
  add_dist_flags(bench, b_dist);
  bench->add_option("--mode", b_mode, "pap|public-only|private-only")
      ->capture_default_str();
  bench->add_option("--n", b_spec.n, "private sample count")->capture_default_str();
  bench->add_option("--m", b_spec.m, "public sample count")->capture_default_str();
  bench->add_option("--alpha", b_spec.alpha, "target error")->capture_default_str();
  bench->add_option("--beta", b_spec.beta, "failure probability")
      ->capture_default_str();
  bench->add_option("--eps", b_spec.eps, "privacy epsilon")->capture_default_str();
  bench->add_option("--delta", b_spec.delta, "privacy delta")->capture_default_str();
  bench->add_option("--trials", b_spec.trials, "trial count")->capture_default_str();
  bench->add_option("--seed", b_spec.seed, "RNG seed")->capture_default_str();
  bench->add_option("--workers", b_spec.workers, "worker threads")
      ->capture_default_str();
  bench->add_option("--grid-bits", b_spec.grid_bits,
                    "private-only discretization bits")
      ->capture_default_str();
  bench->add_flag("--noise-off", b_spec.noise_off,
                  "oracle mode: disable all noise (not private)");
  bench->add_option("--out", b_out, "output path (default stdout)");
  bench->add_option("--config", b_config,
                    "JSON config file; explicit flags override it");

  // ---- calc-samples ----
  auto* calc = app.add_subcommand(
      "calc-samples", "sample-size calculators (prints a JSON object)");
  int c_d = 1;
  std::int64_t c_p = 1;
  double c_alpha = 0.0, c_beta = 0.0, c_eps = 0.0, c_delta = 0.0;
  double c_cn = 1.0, c_cm = 1.0, c_cover = 4.0;
  bool c_dual = false;
  std::int64_t c_size_x = 0, c_size_h = 0;
  std::string c_out;
  calc->add_option("--d", c_d, "VC dimension")->required();
  calc->add_option("--p", c_p, "dual VC dimension")->capture_default_str();
  calc->add_option("--alpha", c_alpha, "target error")->required();
  calc->add_option("--beta", c_beta, "failure probability")->required();
  calc->add_option("--eps", c_eps, "privacy epsilon")->required();
  calc->add_option("--delta", c_delta, "privacy delta")->required();
  calc->add_option("--c-n", c_cn, "private-bound constant")->capture_default_str();
  calc->add_option("--c-m", c_cm, "public-bound constant")->capture_default_str();
  calc->add_option("--c-cover", c_cover, "cover sample-size constant")
      ->capture_default_str();
  calc->add_flag("--dual-from-vc", c_dual,
                 "replace p by the worst-case bound 2^(d+1)");
  calc->add_option("--size-x", c_size_x,
                   "domain size for the direct PMW sample bound");
  calc->add_option("--size-h", c_size_h,
                   "class size for the direct PMW sample bound");
  calc->add_option("--out", c_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (release->parsed()) {
      ExperimentSpec spec;  // reuse the harness config surface
      if (!rel_config.empty()) {
        const Json cfg = Json::parse(read_text_file(rel_config));
        if (cfg.contains("class") && release->count("--class") == 0 &&
            release->count("--class-file") == 0) {
          auto [cls, d] = class_from_json(cfg.at("class"));
          spec.cls = std::move(cls);
          if (d.has_value()) spec.dist = *d;
        } else {
          auto [cls, d] = make_class(rel_class);
          spec.cls = std::move(cls);
          spec.dist = make_distribution(rel_dist, spec.cls, d);
        }
        if (cfg.contains("distribution") && release->count("--dist") == 0 &&
            release->count("--dist-file") == 0)
          spec.dist = distribution_from_json(cfg.at("distribution"),
                                             class_point_kind(spec.cls));
        auto take = [&](const char* key, auto& slot, const char* flag) {
          using T = std::decay_t<decltype(slot)>;
          if (cfg.contains(key) && release->count(flag) == 0)
            slot = cfg.at(key).get<T>();
        };
        take("n", rel_n, "--n");
        take("m", rel_m, "--m");
        take("alpha", rel_alpha, "--alpha");
        take("beta", rel_beta, "--beta");
        take("eps", rel_eps, "--eps");
        take("delta", rel_delta, "--delta");
        take("seed", rel_seed, "--seed");
      } else {
        auto [cls, d] = make_class(rel_class);
        spec.cls = std::move(cls);
        spec.dist = make_distribution(rel_dist, spec.cls, d);
      }
      Rng rng(rel_seed);
      Rng data_rng = rng.child(0);
      const auto x =
          spec.dist.sample_many(static_cast<std::size_t>(rel_n), data_rng);
      const auto w =
          spec.dist.sample_many(static_cast<std::size_t>(rel_m), data_rng);
      Rng mech_rng = rng.child(1);
      ReleaseOptions opts;
      opts.noise_off = rel_noise_off;
      const auto g = pap_release(x, w, spec.cls, rel_alpha, rel_beta, rel_eps,
                          rel_delta, mech_rng, opts);
      emit(rel_out, release_to_json(g).dump(2) + "\n");
      return 0;
    }

    if (query_cmd->parsed()) {
      const ReleaseStructure g =
          release_from_json(Json::parse(read_text_file(q_release)));
      const Hypothesis h =
          hypothesis_from_flags(query_cmd, q_threshold, q_stump, q_hyp_index,
                                g.cls);
      Json j;
      j["hypothesis"] = hypothesis_to_json(h);
      j["answer"] = query(g, h);
      emit(q_out, json_line(j));
      return 0;
    }

    if (eval_cmd->parsed()) {
      const ReleaseStructure g =
          release_from_json(Json::parse(read_text_file(e_release)));
      const Distribution dist =
          make_distribution(e_dist, g.cls, std::nullopt);
      ErrorReport report;
      if (e_grid > 0) {
        if (g.cls.kind != HypothesisClass::Kind::thresholds)
          throw CLI::ValidationError("--grid",
                                     "grids are built for thresholds only");
        std::vector<Hypothesis> grid;
        for (int i = 0; i < e_grid; ++i)
          grid.push_back(Hypothesis::make_threshold(
              g.cls.lo + (g.cls.hi - g.cls.lo) * (i + 0.5) / e_grid));
        report = evaluate_error(g, dist, &grid);
      } else {
        report = evaluate_error(g, dist);
      }
      Json j;
      j["error"] = report.value;
      j["exact"] = report.exact;
      if (report.grid_size > 0) j["grid_size"] = report.grid_size;
      j["budget_exhausted"] = g.budget_exhausted;
      emit(e_out, json_line(j));
      return 0;
    }

    if (audit_cmd->parsed()) {
      std::vector<int> n_grid =
          a_n_grid.empty() ? std::vector<int>{a_cfg.n} : parse_ints(a_n_grid);
      std::vector<int> m_grid =
          a_m_grid.empty() ? std::vector<int>{a_cfg.m} : parse_ints(a_m_grid);
      std::vector<double> alpha_grid = a_alpha_grid.empty()
                                           ? std::vector<double>{a_cfg.alpha}
                                           : parse_doubles(a_alpha_grid);
      std::vector<SweepPoint> grid;
      std::stringstream ms(a_mechs);
      std::string mech_name;
      while (std::getline(ms, mech_name, ',')) {
        MechanismSpec mech;
        if (mech_name == "empirical") {
          mech.kind = MechanismSpec::Kind::empirical_mean;
        } else if (mech_name == "zero") {
          mech.kind = MechanismSpec::Kind::constant_zero;
        } else if (mech_name == "pap") {
          mech.kind = MechanismSpec::Kind::pap_release;
        } else if (mech_name == "empirical-first-n") {
          mech.kind = MechanismSpec::Kind::empirical_first_n;
        } else {
          throw CLI::ValidationError("--mechanisms",
                                     "unknown mechanism '" + mech_name + "'");
        }
        mech.eps = a_eps;
        mech.delta = a_delta;
        mech.beta = a_beta;
        for (int n : n_grid)
          for (int m : m_grid)
            for (double alpha : alpha_grid) {
              SweepPoint pt;
              pt.cfg = a_cfg;
              pt.cfg.n = n;
              pt.cfg.m = m;
              pt.cfg.alpha = alpha;
              pt.mech = mech;
              grid.push_back(pt);
            }
      }
      const auto results = frontier_sweep(grid, Rng(a_seed), a_workers);
      emit(a_out, audit_csv(results));
      return 0;
    }

    if (bench->parsed()) {
      if (!b_config.empty()) {
        const Json cfg = Json::parse(read_text_file(b_config));
        if (cfg.contains("class") && bench->count("--class") == 0 &&
            bench->count("--class-file") == 0) {
          auto [cls, d] = class_from_json(cfg.at("class"));
          b_spec.cls = std::move(cls);
          if (d.has_value()) b_spec.dist = *d;
        } else {
          auto [cls, d] = make_class(b_class);
          b_spec.cls = std::move(cls);
          b_spec.dist = make_distribution(b_dist, b_spec.cls, d);
        }
        if (cfg.contains("distribution") && bench->count("--dist") == 0 &&
            bench->count("--dist-file") == 0)
          b_spec.dist = distribution_from_json(cfg.at("distribution"),
                                               class_point_kind(b_spec.cls));
        auto take = [&](const char* key, auto& slot, const char* flag) {
          using T = std::decay_t<decltype(slot)>;
          if (cfg.contains(key) && bench->count(flag) == 0)
            slot = cfg.at(key).get<T>();
        };
        if (cfg.contains("mode") && bench->count("--mode") == 0)
          b_mode = cfg.at("mode").get<std::string>();
        take("n", b_spec.n, "--n");
        take("m", b_spec.m, "--m");
        take("alpha", b_spec.alpha, "--alpha");
        take("beta", b_spec.beta, "--beta");
        take("eps", b_spec.eps, "--eps");
        take("delta", b_spec.delta, "--delta");
        take("trials", b_spec.trials, "--trials");
        take("seed", b_spec.seed, "--seed");
        take("workers", b_spec.workers, "--workers");
        take("grid_bits", b_spec.grid_bits, "--grid-bits");
        if (cfg.contains("output") && bench->count("--out") == 0)
          b_out = cfg.at("output").get<std::string>();
      } else {
        auto [cls, d] = make_class(b_class);
        b_spec.cls = std::move(cls);
        b_spec.dist = make_distribution(b_dist, b_spec.cls, d);
      }
      b_spec.mode = mode_from_name(b_mode);
      const auto rows = run_experiment(b_spec);
      emit(b_out, experiment_csv(b_spec, rows));
      return 0;
    }

    if (calc->parsed()) {
      return cmd_calc_samples(c_d, c_p, c_alpha, c_beta, c_eps, c_delta, c_cn,
                              c_cm, c_cover, c_dual, c_size_x, c_size_h,
                              c_out);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
