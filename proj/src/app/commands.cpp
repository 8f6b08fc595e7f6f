#include "softrgg/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "softrgg/app/csv.hpp"
#include "softrgg/app/manifest.hpp"
#include "softrgg/error.hpp"
#include "softrgg/theory.hpp"

namespace fs = std::filesystem;

namespace srgg::app {

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json proportion_json(const ProportionEstimate& p) {
  return {{"successes", p.successes}, {"trials", p.trials}, {"p", p.p}, {"lo", p.lo}, {"hi", p.hi}};
}

nlohmann::json point_json(const PointResult& p) {
  nlohmann::json j{{"axis_value", p.axis_value}};
  if (p.error) {
    j["error"] = *p.error;
    return j;
  }
  const auto& e = p.empirical;
  j["r_c"] = p.r_c_used;
  j["mean_degree"] = p.mean_degree;
  j["empirical"] = {{"p_dis", proportion_json(e.p_dis)},
                    {"p_iso", proportion_json(e.p_iso)},
                    {"p_ucg", proportion_json(e.p_ucg)},
                    {"p_iso_or_ucg", proportion_json(e.p_iso_or_ucg)},
                    {"p_split", proportion_json(e.p_split)},
                    {"mean_n_iso", e.mean_n_iso},
                    {"var_n_iso", e.var_n_iso},
                    {"mean_n_points", e.mean_n_points},
                    {"mean_n_edges", e.mean_n_edges}};
  j["theory"] = {{"expected_isolated", number_or_null(p.theory.expected_isolated)},
                 {"poisson_prob_iso", number_or_null(p.theory.prob_iso_poisson)},
                 {"cv_squared_upper", number_or_null(p.theory.cv_squared_upper)},
                 {"expected_ucg_lower", number_or_null(p.theory.expected_ucg_lower)}};
  return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ProgressCallback progress_printer(std::ostream& err, bool quiet, const std::string& label) {
  if (quiet) return {};
  return [&err, label](std::size_t done, std::size_t total) {
    err << "[" << label << "] point " << done << "/" << total << " done\n";
    err.flush();
  };
}

std::string text(const ConfigMap& c, const std::string& key, const std::string& fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

double number(const ConfigMap& c, const std::string& key) {
  try {
    return parse_number(c.at(key));
  } catch (const std::exception&) {
    throw ConfigError("figure setting '" + key + "' is missing or not a number");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Writes data files and the manifest-carrying JSON; nothing is written
// before every file has been produced.
void write_run(const fs::path& dir, const ProducedRun& run, RunManifest manifest,
               const std::string& manifest_name) {
  fs::create_directories(dir);
  for (const auto& f : run.files) manifest.outputs.push_back(f.name);
  manifest.finished_at = utc_timestamp();
  nlohmann::json doc = run.summary;
  doc["manifest"] = to_json(manifest);
  for (const auto& f : run.files) write_text_file(dir / f.name, f.content);
  write_text_file(dir / manifest_name, doc.dump(2) + "\n");
}

}  // namespace

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

ProducedRun produce_sweep(const ConfigMap& config, unsigned parallelism,
                          const ProgressCallback& progress) {
  const SweepConfig sweep = build_sweep_config(config);
  const SweepResult result = run_sweep(sweep, parallelism, progress);

  ProducedRun run;
  run.files.push_back({"sweep.csv", to_csv_string(sweep_table(result))});
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : result.points) points.push_back(point_json(p));
  run.summary["length"] = sweep.length;
  run.summary["boundary"] = std::string(to_string(sweep.boundary));
  run.summary["connection"] = sweep.connection.describe();
  run.summary["axis"] = std::string(to_string(sweep.axis));
  run.summary["points"] = std::move(points);
  if (sweep.boundary == BoundaryMode::Torus) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : compare_theory(result))
      rows.push_back({{"mean_degree", r.mean_degree},
                      {"empirical_p_iso", r.empirical_p_iso},
                      {"poisson_p_iso", r.poisson_p_iso},
                      {"abs_gap", r.abs_gap},
                      {"covered", r.covered}});
    run.summary["poisson_comparison"] = std::move(rows);
  }
  return run;
}

int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err) {
  ConfigMap config;
  SweepConfig parsed;
  try {
    config = load_config_file(cmd.config_path);
    for (const auto& o : cmd.overrides) apply_override(config, o);
    parsed = build_sweep_config(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = config;
  manifest.master_seed = parsed.master_seed;
  manifest.parallelism = cmd.parallelism;
  manifest.started_at = utc_timestamp();
  const fs::path dir = cmd.out_dir.empty() ? fs::path(default_output_dir(config)) : fs::path(cmd.out_dir);
  try {
    const ProducedRun run = produce_sweep(config, cmd.parallelism, progress_printer(err, cmd.quiet, "sweep"));
    write_run(dir, run, manifest, "sweep.json");
    for (const auto& p : run.summary["points"])
      if (p.contains("error")) err << "point " << p["axis_value"] << ": " << p["error"].get<std::string>() << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  out << "wrote " << (dir / "sweep.csv").string() << " and " << (dir / "sweep.json").string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

namespace {

ConfigMap figure_config(const FigureCommand& cmd) {
  if (cmd.id != "fig3" && cmd.id != "fig5") throw ConfigError("unknown figure id '" + cmd.id + "' (fig3 or fig5)");
  const bool fig3 = cmd.id == "fig3";
  ConfigMap c;
  c["figure.id"] = cmd.id;
  c["figure.L"] = format_number(cmd.length);
  c["figure.trials"] = std::to_string(cmd.trials);
  c["figure.families"] = !cmd.families.empty() ? cmd.families : (fig3 ? "waxman" : "waxman,rayleigh");
  c["figure.boundary"] = !cmd.boundary.empty() ? cmd.boundary : (fig3 ? "line" : "torus");
  c["figure.kmin"] = format_number(cmd.kmin);
  c["figure.kmax"] = format_number(cmd.kmax);
  c["figure.kstep"] = format_number(cmd.kstep);
  c["figure.seed"] = std::to_string(cmd.seed);
  c["figure.tail_epsilon"] = format_number(cmd.tail_epsilon);
  return c;
}

CsvTable curve(const SweepResult& r, const std::string& name,
               const std::function<const ProportionEstimate&(const EmpiricalSummary&)>& pick) {
  CsvTable t;
  t.header = {"mean_degree", name, name + "_lo", name + "_hi"};
  for (const auto& p : r.points) {
    if (p.error) continue;
    const auto& e = pick(p.empirical);
    t.rows.push_back({p.axis_value, e.p, e.lo, e.hi});
  }
  return t;
}

}  // namespace

ProducedRun produce_figure(const ConfigMap& c, unsigned parallelism, const ProgressCallback& progress) {
  const std::string id = text(c, "figure.id", "");
  if (id != "fig3" && id != "fig5") throw ConfigError("unknown figure id '" + id + "' (fig3 or fig5)");

  ConfigMap sweep_base;
  sweep_base["system.L"] = c.at("figure.L");
  sweep_base["system.boundary"] = c.at("figure.boundary");
  sweep_base["sweep.axis"] = "mean_degree";
  sweep_base["sweep.values"] = c.at("figure.kmin") + ":" + c.at("figure.kmax") + ":" + c.at("figure.kstep");
  sweep_base["sweep.trials"] = c.at("figure.trials");
  sweep_base["sweep.seed"] = c.at("figure.seed");
  sweep_base["sweep.tail_epsilon"] = c.at("figure.tail_epsilon");
  sweep_base["sweep.cv_bound"] = "false";
  sweep_base["sweep.ucg_bound"] = "false";

  const auto families = split_list(c.at("figure.families"));
  if (families.empty()) throw ConfigError("figure needs at least one family");
  std::vector<std::pair<std::string, SweepConfig>> configs;
  for (const auto& family : families) {
    if (family != "waxman" && family != "rayleigh")
      throw ConfigError("figure family must be waxman or rayleigh, got '" + family + "'");
    ConfigMap m = sweep_base;
    m["connection.family"] = family;
    configs.emplace_back(family, build_sweep_config(m));
  }

  ProducedRun run;
  run.summary["figure"] = id;
  for (const auto& [family, config] : configs) {
    const SweepResult r = run_sweep(config, parallelism, progress);
    const std::string prefix = id + "_" + family + "_";
    if (id == "fig3") {
      run.files.push_back({prefix + "p_dis.csv", to_csv_string(curve(r, "p_dis", [](const EmpiricalSummary& e) -> const ProportionEstimate& { return e.p_dis; }))});
      run.files.push_back({prefix + "p_iso.csv", to_csv_string(curve(r, "p_iso", [](const EmpiricalSummary& e) -> const ProportionEstimate& { return e.p_iso; }))});
      run.files.push_back({prefix + "p_ucg.csv", to_csv_string(curve(r, "p_ucg", [](const EmpiricalSummary& e) -> const ProportionEstimate& { return e.p_ucg; }))});
      run.files.push_back({prefix + "p_iso_or_ucg.csv", to_csv_string(curve(r, "p_iso_or_ucg", [](const EmpiricalSummary& e) -> const ProportionEstimate& { return e.p_iso_or_ucg; }))});
    } else {
      run.files.push_back({prefix + "p_iso.csv", to_csv_string(curve(r, "p_iso", [](const EmpiricalSummary& e) -> const ProportionEstimate& { return e.p_iso; }))});
    }
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : r.points) points.push_back(point_json(p));
    run.summary["families"][family] = std::move(points);
  }

  if (id == "fig5") {
    const double length = number(c, "figure.L");
    const double kmin = number(c, "figure.kmin");
    const double kmax = number(c, "figure.kmax");
    const double fine = number(c, "figure.kstep") / 10.0;
    CsvTable t;
    t.header = {"mean_degree", "p_iso_poisson"};
    const auto steps = static_cast<long>(std::floor((kmax - kmin) / fine + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      const double k = kmin + static_cast<double>(i) * fine;
      t.rows.push_back({k, poisson_approx_prob_iso(length, k)});
    }
    run.files.push_back({"fig5_poisson.csv", to_csv_string(t)});
  }
  return run;
}

int cmd_figure(const FigureCommand& cmd, std::ostream& out, std::ostream& err) {
  ConfigMap config;
  try {
    config = figure_config(cmd);
    // Validate the derived sweep settings before any work.
    ConfigMap probe;
    probe["system.L"] = config["figure.L"];
    probe["system.boundary"] = config["figure.boundary"];
    probe["sweep.values"] = config["figure.kmin"] + ":" + config["figure.kmax"] + ":" + config["figure.kstep"];
    probe["sweep.trials"] = config["figure.trials"];
    probe["sweep.tail_epsilon"] = config["figure.tail_epsilon"];
    build_sweep_config(probe);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command = "figure";
  manifest.config = config;
  manifest.master_seed = cmd.seed;
  manifest.parallelism = cmd.parallelism;
  manifest.started_at = utc_timestamp();
  const fs::path dir = cmd.out_dir.empty() ? fs::path(default_output_dir({})) : fs::path(cmd.out_dir);
  try {
    const ProducedRun run = produce_figure(config, cmd.parallelism, progress_printer(err, cmd.quiet, cmd.id));
    write_run(dir, run, manifest, cmd.id + ".manifest.json");
    for (const auto& f : run.files) out << "wrote " << (dir / f.name).string() << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify_manifest(const std::string& path, unsigned parallelism, std::ostream& out,
                        std::ostream& err) {
  RunManifest manifest;
  try {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read manifest '" + path + "'");
    const auto doc = nlohmann::json::parse(in);
    manifest = manifest_from_json(doc.contains("manifest") ? doc.at("manifest") : doc);
  } catch (const nlohmann::json::exception& e) {
    err << "config error: manifest is not valid JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  ProducedRun rerun;
  try {
    if (manifest.command == "sweep")
      rerun = produce_sweep(manifest.config, parallelism);
    else if (manifest.command == "figure")
      rerun = produce_figure(manifest.config, parallelism);
    else
      throw ConfigError("manifest command '" + manifest.command + "' cannot be replayed");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }

  const fs::path dir = fs::path(path).parent_path();
  bool identical = true;
  for (const auto& name : manifest.outputs) {
    auto it = std::find_if(rerun.files.begin(), rerun.files.end(),
                           [&](const OutputFile& f) { return f.name == name; });
    const bool same = it != rerun.files.end() && read_text_file(dir / name) == it->content;
    out << (same ? "identical " : "DIFFERS   ") << (dir / name).string() << '\n';
    identical = identical && same;
  }
  return identical ? kExitOk : kExitRuntime;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

int cmd_sample(const SampleCommand& cmd, std::ostream& out, std::ostream& err) {
  PointSet points;
  ConnectionFunction cf = ConnectionFunction::waxman(1.0);
  BoundaryMode boundary;
  try {
    boundary = parse_boundary(cmd.boundary);
    cf = build_connection(cmd.family, cmd.beta, cmd.eta, cmd.rc, cmd.scale, cmd.knots);
    if (cmd.kbar) cf = solve_for_mean_degree(cf, *cmd.kbar, cmd.length, boundary);
    if (!(cmd.tail_epsilon >= 0.0 && cmd.tail_epsilon < 1.0))
      throw InvalidParameter("tail epsilon must lie in [0, 1)");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RandomStream rng(cmd.seed);
    points = sample_ppp(cmd.length, boundary, rng);
    const GraphSample graph = sample_graph(points, cf, rng, cmd.tail_epsilon);
    if (cmd.out_path.empty()) {
      write_dump(out, graph);
    } else {
      std::ofstream file(cmd.out_path);
      if (!file) throw Error("cannot write '" + cmd.out_path + "'");
      write_dump(file, graph);
    }
    const DiagnosisReport d = diagnose(graph);
    err << "nodes=" << points.size() << " edges=" << graph.edges.size()
        << " components=" << d.component_count << " connected=" << d.is_connected
        << " isolated=" << d.n_isolated;
    if (d.gaps_applicable) err << " uncrossed_gaps=" << d.n_uncrossed_gaps;
    err << " split=" << d.has_split << '\n';
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// theory
// ---------------------------------------------------------------------------

namespace {

using Params = std::map<std::string, double>;

struct QuantitySpec {
  std::vector<std::string> axes;     // grid axes besides the connection parameters
  bool uses_connection = false;
  std::vector<std::string> outputs;
  std::function<std::vector<double>(const Params&, const ConnectionFunction*)> compute;
};

ScalingKind parse_kind(const std::string& kind) {
  if (kind == "isolated") return ScalingKind::IsolatedNodes;
  if (kind == "ucg") return ScalingKind::UncrossedGaps;
  throw ConfigError("--kind must be isolated or ucg");
}

std::map<std::string, QuantitySpec> quantity_table(const TheoryCommand& cmd) {
  const BoundaryMode boundary = [&] {
    try {
      return parse_boundary(cmd.boundary);
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
  }();
  const ScalingKind kind = parse_kind(cmd.kind);
  std::map<std::string, QuantitySpec> q;
  q["l1-norm"] = {{}, true, {"value"}, [](const Params&, const ConnectionFunction* cf) {
                    return std::vector<double>{l1_norm(*cf)};
                  }};
  q["mean-degree"] = {{"L"}, true, {"value"}, [boundary](const Params& p, const ConnectionFunction* cf) {
                        return std::vector<double>{mean_degree(*cf, p.at("L"), boundary)};
                      }};
  q["solve-rc"] = {{"L", "kbar"}, true, {"r_c"}, [boundary](const Params& p, const ConnectionFunction* cf) {
                     return std::vector<double>{
                         solve_for_mean_degree(*cf, p.at("kbar"), p.at("L"), boundary).characteristic_range()};
                   }};
  q["expected-iso"] = {{"L"}, true, {"value"}, [](const Params& p, const ConnectionFunction* cf) {
                         return std::vector<double>{expected_isolated(*cf, p.at("L"))};
                       }};
  q["prob-iso-point"] = {{"L"}, true, {"value"}, [](const Params& p, const ConnectionFunction* cf) {
                           return std::vector<double>{prob_isolation_at_point(*cf, p.at("L"))};
                         }};
  q["cv-bound"] = {{"L"}, true, {"value"}, [](const Params& p, const ConnectionFunction* cf) {
                     return std::vector<double>{cv_squared_upper_bound(*cf, p.at("L"))};
                   }};
  q["poisson-prob"] = {{"L", "kbar"}, false, {"value"}, [](const Params& p, const ConnectionFunction*) {
                         return std::vector<double>{poisson_approx_prob_iso(p.at("L"), p.at("kbar"))};
                       }};
  q["critical-gamma"] = {{}, true, {"value"}, [](const Params&, const ConnectionFunction* cf) {
                           return std::vector<double>{critical_gamma(*cf)};
                         }};
  q["theta"] = {{"eta"}, false, {"value"}, [](const Params& p, const ConnectionFunction*) {
                  return std::vector<double>{ucg_theta(p.at("eta"))};
                }};
  q["scaling-r"] = {{"L", "gamma", "eta"}, false, {"R_L"}, [kind](const Params& p, const ConnectionFunction*) {
                      return std::vector<double>{scaling_R(kind, p.at("L"), p.at("gamma"), p.at("eta"))};
                    }};
  q["ucg-lower"] = {{"L"}, true, {"value"}, [](const Params& p, const ConnectionFunction* cf) {
                      return std::vector<double>{expected_ucg_lower_bound(*cf, p.at("L"))};
                    }};
  q["incgamma"] = {{"a", "y"}, false, {"value"}, [](const Params& p, const ConnectionFunction*) {
                     return std::vector<double>{incomplete_gamma_upper(p.at("a"), p.at("y"))};
                   }};
  q["tail-moment"] = {{"x"}, true, {"value"}, [](const Params& p, const ConnectionFunction* cf) {
                        return std::vector<double>{tail_moment_bound(*cf, p.at("x"))};
                      }};
  q["chernoff"] = {{"alpha", "delta"}, false, {"value"}, [](const Params& p, const ConnectionFunction*) {
                     return std::vector<double>{chernoff_rate(p.at("alpha"), p.at("delta"))};
                   }};
  q["crossing-mean"] = {{"R"}, true, {"value", "value_over_R"}, [](const Params& p, const ConnectionFunction* cf) {
                          const double m = conditional_crossing_mean(*cf, p.at("R"));
                          return std::vector<double>{m, m / p.at("R")};
                        }};
  q["gamma-floor"] = {{}, true, {"value"}, [](const Params&, const ConnectionFunction* cf) {
                        return std::vector<double>{conditional_crossing_gamma_floor(*cf)};
                      }};
  const bool explicit_l1 = cmd.l1.has_value();
  const double l1_value = cmd.l1.value_or(0.0);
  auto lstar = [explicit_l1, l1_value](const Params& p, const ConnectionFunction* cf) {
    const auto r = explicit_l1 ? crossover_L_star(l1_value, p.at("eta"), p.at("C")) : crossover_L_star(*cf, p.at("C"));
    return std::vector<double>{r.log_log, r.value.value_or(std::numeric_limits<double>::infinity())};
  };
  q["lstar"] = {explicit_l1 ? std::vector<std::string>{"eta", "C"} : std::vector<std::string>{"C"},
                !explicit_l1, {"log_log_L_star", "L_star"}, lstar};
  q["tau-scaling"] = {{"L", "tau"}, true, {"R_L", "mean_degree"}, [](const Params& p, const ConnectionFunction* cf) {
                        return std::vector<double>{tau_range_scale(*cf, p.at("L"), p.at("tau")),
                                                   mean_degree_from_tau(p.at("L"), p.at("tau"))};
                      }};
  return q;
}

double family_eta(const std::string& family) {
  if (family == "rayleigh") return 2.0;
  return 1.0;
}

}  // namespace

const std::vector<std::string>& theory_quantities() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, spec] : quantity_table(TheoryCommand{})) out.push_back(name);
    return out;
  }();
  return names;
}

int cmd_theory(const TheoryCommand& cmd, std::ostream& out, std::ostream& err) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  try {
    const auto table = quantity_table(cmd);
    auto it = table.find(cmd.quantity);
    if (it == table.end()) throw ConfigError("unknown quantity '" + cmd.quantity + "'");
    const QuantitySpec& spec = it->second;
    if (cmd.format != "csv" && cmd.format != "json") throw ConfigError("--format must be csv or json");

    std::vector<std::string> axes;
    const bool genexp = cmd.family == "genexp";
    if (spec.uses_connection && cmd.family != "tabulated") axes.push_back("rc");
    if (spec.uses_connection && genexp && cmd.quantity != "lstar") axes.push_back("eta");
    if (cmd.quantity == "lstar" && spec.uses_connection && genexp) axes.push_back("eta");
    for (const auto& a : spec.axes)
      if (std::find(axes.begin(), axes.end(), a) == axes.end()) axes.push_back(a);

    const std::map<std::string, std::vector<double>> provided{
        {"rc", cmd.rc.empty() ? std::vector<double>{1.0} : cmd.rc},
        {"eta", cmd.eta.empty() ? std::vector<double>{family_eta(cmd.family)} : cmd.eta},
        {"L", cmd.length.empty() ? std::vector<double>{1000.0} : cmd.length},
        {"kbar", cmd.kbar}, {"gamma", cmd.gamma}, {"a", cmd.a}, {"y", cmd.y}, {"x", cmd.x},
        {"alpha", cmd.alpha}, {"delta", cmd.delta}, {"R", cmd.range_scale}, {"tau", cmd.tau}, {"C", cmd.C}};
    std::vector<const std::vector<double>*> grids;
    for (const auto& a : axes) {
      const auto& values = provided.at(a);
      if (values.empty()) throw ConfigError("quantity '" + cmd.quantity + "' needs --" + a);
      grids.push_back(&values);
    }

    header = axes;
    header.insert(header.end(), spec.outputs.begin(), spec.outputs.end());

    std::vector<std::size_t> idx(axes.size(), 0);
    for (bool more = true; more;) {
      Params p;
      for (std::size_t k = 0; k < axes.size(); ++k) p[axes[k]] = (*grids[k])[idx[k]];
      std::optional<ConnectionFunction> cf;
      if (spec.uses_connection) {
        const double eta = p.count("eta") ? p.at("eta") : family_eta(cmd.family);
        cf = build_connection(cmd.family, cmd.beta, eta, p.count("rc") ? p.at("rc") : 1.0, cmd.scale, cmd.knots);
      }
      std::vector<double> row;
      for (const auto& a : axes) row.push_back(p.at(a));
      const auto values = spec.compute(p, cf ? &*cf : nullptr);
      row.insert(row.end(), values.begin(), values.end());
      rows.push_back(std::move(row));

      more = false;
      for (std::size_t k = axes.size(); k-- > 0;) {
        if (++idx[k] < grids[k]->size()) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }

  std::string rendered;
  if (cmd.format == "csv") {
    rendered = to_csv_string(CsvTable{header, rows});
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      for (std::size_t k = 0; k < header.size(); ++k) obj[header[k]] = number_or_null(row[k]);
      doc.push_back(obj);
    }
    rendered = doc.dump(2) + "\n";
  }
  if (cmd.out_path.empty()) {
    out << rendered;
  } else {
    try {
      write_text_file(cmd.out_path, rendered);
    } catch (const std::exception& e) {
      err << "runtime error: " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// command line
// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"softrgg: connectivity of one-dimensional soft random geometric graphs"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(kVersion));

  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  std::string verify_path;
  unsigned verify_parallelism = cores;
  app.add_option("--verify-manifest", verify_path, "Re-run a manifest (sweep.json or figN.manifest.json) and diff its outputs");
  app.add_option("--parallelism", verify_parallelism, "Worker threads for --verify-manifest")->check(CLI::PositiveNumber);

  SweepCommand sweep;
  sweep.parallelism = cores;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep from an INI config");
  sweep_cmd->add_option("--config", sweep.config_path, "Config file")->required();
  sweep_cmd->add_option("--set", sweep.overrides, "Override, section.key=value (repeatable)");
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory");
  sweep_cmd->add_option("--parallelism", sweep.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress lines");

  TheoryCommand theory;
  auto* theory_cmd = app.add_subcommand("theory", "Evaluate analytic quantities over a parameter grid");
  theory_cmd->add_option("--quantity", theory.quantity, "Quantity to evaluate")
      ->required()
      ->check(CLI::IsMember(theory_quantities()));
  theory_cmd->add_option("--family", theory.family, "waxman | rayleigh | genexp | hard | tabulated");
  theory_cmd->add_option("--beta", theory.beta, "Short-range edge probability");
  theory_cmd->add_option("--eta", theory.eta, "Decay exponent(s)")->delimiter(',');
  theory_cmd->add_option("--rc", theory.rc, "Link range(s)")->delimiter(',');
  theory_cmd->add_option("--scale", theory.scale, "Range scale R");
  theory_cmd->add_option("--knots", theory.knots, "Tabulated knots r:h,r:h,...");
  theory_cmd->add_option("--boundary", theory.boundary, "line | torus (mean degree)");
  theory_cmd->add_option("--kind", theory.kind, "isolated | ucg (scaling-r)");
  theory_cmd->add_option("--L", theory.length, "System length(s)")->delimiter(',');
  theory_cmd->add_option("--kbar", theory.kbar, "Mean degree(s)")->delimiter(',');
  theory_cmd->add_option("--gamma", theory.gamma, "Scaling gamma(s)")->delimiter(',');
  theory_cmd->add_option("--a", theory.a, "Incomplete gamma order(s)")->delimiter(',');
  theory_cmd->add_option("--y", theory.y, "Incomplete gamma argument(s)")->delimiter(',');
  theory_cmd->add_option("--x", theory.x, "Tail moment lower limit(s)")->delimiter(',');
  theory_cmd->add_option("--alpha", theory.alpha, "Chernoff alpha(s)")->delimiter(',');
  theory_cmd->add_option("--delta", theory.delta, "Chernoff delta(s)")->delimiter(',');
  theory_cmd->add_option("--R", theory.range_scale, "Range scale(s) for crossing-mean")->delimiter(',');
  theory_cmd->add_option("--tau", theory.tau, "Poisson-limit tau(s)")->delimiter(',');
  theory_cmd->add_option("--C", theory.C, "Uncrossed-gap constant(s) for lstar")->delimiter(',');
  theory_cmd->add_option("--l1", theory.l1, "Explicit ||H||_1 for lstar");
  theory_cmd->add_option("--format", theory.format, "csv | json");
  theory_cmd->add_option("--out", theory.out_path, "Write to file instead of standard output");

  FigureCommand figure;
  figure.parallelism = cores;
  auto* figure_cmd = app.add_subcommand("figure", "Emit plot data for fig3 or fig5");
  figure_cmd->add_option("id", figure.id, "fig3 | fig5")->required();
  figure_cmd->add_option("--L", figure.length, "System length");
  figure_cmd->add_option("--trials", figure.trials, "Trials per mean degree");
  figure_cmd->add_option("--family", figure.families, "waxman, rayleigh, or a comma list");
  figure_cmd->add_option("--boundary", figure.boundary, "line | torus");
  figure_cmd->add_option("--kmin", figure.kmin, "Smallest mean degree");
  figure_cmd->add_option("--kmax", figure.kmax, "Largest mean degree");
  figure_cmd->add_option("--kstep", figure.kstep, "Mean-degree step");
  figure_cmd->add_option("--seed", figure.seed, "Master seed");
  figure_cmd->add_option("--tail-epsilon", figure.tail_epsilon, "Edge-probability cutoff");
  figure_cmd->add_option("--out", figure.out_dir, "Output directory");
  figure_cmd->add_option("--parallelism", figure.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  figure_cmd->add_flag("--quiet", figure.quiet, "No progress lines");

  SampleCommand sample;
  double sample_kbar = 0.0;
  auto* sample_cmd = app.add_subcommand("sample", "Sample one graph and write its text dump");
  sample_cmd->add_option("--L", sample.length, "System length");
  sample_cmd->add_option("--boundary", sample.boundary, "line | torus");
  sample_cmd->add_option("--family", sample.family, "waxman | rayleigh | genexp | hard | tabulated");
  sample_cmd->add_option("--beta", sample.beta, "Short-range edge probability");
  sample_cmd->add_option("--eta", sample.eta, "Decay exponent (genexp)");
  sample_cmd->add_option("--rc", sample.rc, "Link range");
  sample_cmd->add_option("--scale", sample.scale, "Range scale");
  sample_cmd->add_option("--knots", sample.knots, "Tabulated knots r:h,...");
  auto* kbar_opt = sample_cmd->add_option("--kbar", sample_kbar, "Solve the range for this mean degree");
  sample_cmd->add_option("--seed", sample.seed, "Seed");
  sample_cmd->add_option("--tail-epsilon", sample.tail_epsilon, "Edge-probability cutoff");
  sample_cmd->add_option("--out", sample.out_path, "Dump file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (!verify_path.empty()) return cmd_verify_manifest(verify_path, verify_parallelism, out, err);
  if (*sweep_cmd) return cmd_sweep(sweep, out, err);
  if (*theory_cmd) return cmd_theory(theory, out, err);
  if (*figure_cmd) return cmd_figure(figure, out, err);
  if (*sample_cmd) {
    if (*kbar_opt) sample.kbar = sample_kbar;
    return cmd_sample(sample, out, err);
  }
  out << app.help();
  return kExitUsage;
}

}  // namespace srgg::app
