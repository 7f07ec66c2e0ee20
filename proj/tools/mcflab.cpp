// Command-line front door: deterministic experiment runs with CSV/JSON/SVG
// reports. Exit codes: 0 success, 2 usage error, 3 resource limit,
// 4 internal invariant violation.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "mcflab/io.hpp"

namespace fs = std::filesystem;
using namespace mcflab;

namespace {

struct CommonOpts {
  std::string output_dir;
  std::string config_path;
};

std::string out_path(const CommonOpts& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  return (fs::path(c.output_dir) / name).string();
}

// Config file: one JSON document, keys per subcommand, each mapping long
// option names to values. CLI flags override config values.
void apply_config(CLI::App& app, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot read config file: " + path);
  json doc = json::parse(f, nullptr, true, true);
  auto apply_section = [](CLI::App* cmd, const json& section) {
    for (auto it = section.begin(); it != section.end(); ++it) {
      CLI::Option* opt = cmd->get_option_no_throw("--" + it.key());
      if (!opt) throw usage_error("unknown config key '" + it.key() + "'");
      std::string v = it.value().is_string() ? it.value().get<std::string>()
                                             : it.value().dump();
      opt->default_val(v);
      opt->required(false);  // a config value satisfies a required option
    }
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    CLI::App* sub = app.get_subcommand_no_throw(it.key());
    if (sub && it.value().is_object())
      apply_section(sub, it.value());
    else if (!it.value().is_object())
      apply_section(&app, json{{it.key(), it.value()}});
    else
      throw usage_error("unknown config section '" + it.key() + "'");
  }
}

json run_absorb(const MapParams& p, long samples, long cap, std::uint64_t seed,
                const std::string& region_name, const CommonOpts& common,
                bool write_files) {
  if (p.b < 2) throw usage_error("absorb requires b >= 2");
  SampleRegion region =
      region_name == "lambda" ? SampleRegion::lambda : SampleRegion::cA;
  auto rep = absorption_experiment(p, region, samples, cap, seed);
  auto alpha = alpha_estimate(p, std::max<long>(samples, 1000), seed + 1);
  json summary = absorption_json(rep);
  summary["alpha"] = alpha_json(alpha);
  if (write_files) {
    write_json(out_path(common, "absorb_summary.json"), summary);
    write_file(out_path(common, "absorb_hist_A.csv"),
               histogram_csv(rep.hist_first_hit_A, "first_hit_A"));
    write_file(out_path(common, "absorb_hist_D.csv"),
               histogram_csv(rep.hist_first_hit_D, "first_hit_D"));
  }
  return summary;
}

json run_cones(int depth, const CommonOpts& common, bool write_files) {
  auto tree = complement_recursion(depth);
  json j = tree_json(tree);
  if (write_files) {
    write_json(out_path(common, "cones_tree.json"), j);
    write_file(out_path(common, "cones_areas.csv"), areas_csv(tree));
    for (int k = 0; k <= depth; ++k)
      write_file(out_path(common, "cones_depth_" + std::to_string(k) + ".svg"),
                 render_depth_svg(tree, k));
  }
  return j;
}

json run_conjugacy(long samples, int steps, std::uint64_t seed,
                   const CommonOpts& common, bool write_files) {
  Rng rng(seed);
  long all_ok = 0;
  long boundary_stops = 0;
  for (long i = 0; i < samples; ++i) {
    Int n1 = rng.dyadic(), n2 = rng.dyadic();
    if (n1 > n2) std::swap(n1, n2);
    if (n2 == 0) n2 = 1;
    Rat x1 = make_rat(n1, pow2(kDefaultBits));
    Rat x2 = make_rat(n2, pow2(kDefaultBits));
    auto res = conjugacy_check(x1, x2, steps);
    if (!res.ok)
      throw invariant_error("conjugacy identity failed on a sampled point");
    ++all_ok;
    if (res.steps_verified < steps) ++boundary_stops;
  }
  json j{{"schema_version", kSchemaVersion},
         {"samples", samples},
         {"steps", steps},
         {"seed", seed},
         {"all_pass", all_ok == samples},
         {"boundary_stops", boundary_stops}};
  if (write_files) write_json(out_path(common, "conjugacy.json"), j);
  return j;
}

json run_variant(const MapParams& p, long samples, long cap,
                 std::uint64_t seed, const CommonOpts& common,
                 bool write_files) {
  auto rep = variant_experiment(p, samples, cap, seed);
  json j{{"schema_version", kSchemaVersion},
         {"params", params_json(rep.params)},
         {"n_samples", rep.n_samples},
         {"seed", seed},
         {"forward_invariance_violations", rep.forward_violations},
         {"reverse_invariance_checked", rep.reverse_invariance_checked},
         {"reverse_invariance_violations", rep.reverse_violations},
         {"absorbing_regime", rep.absorbing_regime},
         {"hit_A", rep.hit_A},
         {"nonvanishing_limits", rep.nonvanishing}};
  if (write_files) write_json(out_path(common, "variant.json"), j);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo laboratory for homogeneous subtractive "
               "continued-fraction algorithms"};
  app.require_subcommand(1);

  CommonOpts common;
  const char* env_dir = std::getenv("MCFLAB_OUTPUT_DIR");
  common.output_dir = env_dir ? env_dir : ".";
  app.add_option("--output-dir", common.output_dir,
                 "Directory for report files");
  app.add_option("--config", common.config_path,
                 "JSON config file; CLI flags override its values");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate one orbit");
  int oa = 1, ob = 2, ovi = 0;
  std::string opoint, oeps = "1/1099511627776";
  long ocap = 100000;
  bool otrace = false;
  orbit_cmd->add_option("--a", oa, "Deck-one size")->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--b", ob, "Deck-two size")->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--variant-index", ovi, "Subtracted coordinate (default a)");
  orbit_cmd->add_option("--point", opoint, "Comma-separated rationals")->required();
  orbit_cmd->add_option("--eps", oeps, "Stopping resolution (rational)");
  orbit_cmd->add_option("--cap", ocap, "Step cap");
  orbit_cmd->add_flag("--trace", otrace, "Also write the step trace CSV");

  // absorb
  auto* absorb_cmd = app.add_subcommand("absorb", "Absorption statistics");
  int aa = 1, ab = 2;
  long asamples = 10000, acap = 100000;
  std::uint64_t aseed = 1;
  std::string aregion = "cA";
  absorb_cmd->add_option("--a", aa)->check(CLI::PositiveNumber);
  absorb_cmd->add_option("--b", ab)->check(CLI::PositiveNumber);
  absorb_cmd->add_option("--samples", asamples);
  absorb_cmd->add_option("--cap", acap);
  absorb_cmd->add_option("--seed", aseed)->required();
  absorb_cmd->add_option("--region", aregion)
      ->check(CLI::IsMember({"cA", "lambda"}));

  // cones
  auto* cones_cmd = app.add_subcommand("cones", "Cone subdivision engine");
  int cdepth = 2;
  cones_cmd->add_option("--depth", cdepth, "Recursion depth (<= 12)");

  // conjugacy
  auto* conj_cmd = app.add_subcommand("conjugacy", "Euclid conjugacy sweep");
  long csamples = 10000;
  int csteps = 50;
  std::uint64_t cseed = 1;
  conj_cmd->add_option("--samples", csamples);
  conj_cmd->add_option("--steps", csteps);
  conj_cmd->add_option("--seed", cseed)->required();

  // variant
  auto* var_cmd = app.add_subcommand("variant", "Variant-family checks");
  int va = 2, vb = 1, vi = 1;
  long vsamples = 10000, vcap = 100000;
  std::uint64_t vseed = 1;
  var_cmd->add_option("--a", va)->check(CLI::PositiveNumber);
  var_cmd->add_option("--b", vb)->check(CLI::PositiveNumber);
  var_cmd->add_option("--variant-index", vi)->required();
  var_cmd->add_option("--samples", vsamples);
  var_cmd->add_option("--cap", vcap);
  var_cmd->add_option("--seed", vseed)->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Bundle several runs");
  bool r_absorb = false, r_cones = false, r_conj = false, r_variant = false;
  int ra = 1, rb = 2, rdepth = 2, rva = 2, rvb = 1, rvi = 1, rsteps = 50;
  long rsamples = 10000, rcap = 100000;
  std::uint64_t rseed = 1;
  report_cmd->add_flag("--with-absorb", r_absorb);
  report_cmd->add_flag("--with-cones", r_cones);
  report_cmd->add_flag("--with-conjugacy", r_conj);
  report_cmd->add_flag("--with-variant", r_variant);
  report_cmd->add_option("--a", ra);
  report_cmd->add_option("--b", rb);
  report_cmd->add_option("--depth", rdepth);
  report_cmd->add_option("--variant-a", rva);
  report_cmd->add_option("--variant-b", rvb);
  report_cmd->add_option("--variant-index", rvi);
  report_cmd->add_option("--samples", rsamples);
  report_cmd->add_option("--steps", rsteps);
  report_cmd->add_option("--cap", rcap);
  report_cmd->add_option("--seed", rseed);

  // pre-scan for --config so its values become defaults before the real parse
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") common.config_path = argv[i + 1];

  try {
    if (!common.config_path.empty()) apply_config(app, common.config_path);
    app.parse(argc, argv);

    if (*orbit_cmd) {
      MapParams p = ovi > 0 ? MapParams(oa, ob, ovi) : MapParams(oa, ob);
      Vec<Rat> x = parse_point(opoint);
      if (!is_ordered(x)) throw usage_error("point must be ordered ascending");
      IterateOptions opt;
      opt.eps = parse_rational(oeps);
      opt.cap = ocap;
      std::vector<Vec<Rat>> trace;
      auto s = iterate(x, p, opt, otrace ? &trace : nullptr);
      write_json(out_path(common, "orbit.json"), orbit_summary_json(s));
      if (otrace) {
        std::ostringstream os;
        os << "step";
        for (int i = 1; i <= p.dim(); ++i) os << ",x" << i;
        os << '\n';
        for (size_t k = 0; k < trace.size(); ++k) {
          os << k;
          for (const auto& v : trace[k]) os << ',' << rat_string(v);
          os << '\n';
        }
        write_file(out_path(common, "orbit_trace.csv"), os.str());
      }
      std::cout << orbit_summary_json(s).dump(2) << "\n";
    } else if (*absorb_cmd) {
      json j = run_absorb(MapParams(aa, ab), asamples, acap, aseed, aregion,
                          common, true);
      std::cout << j.dump(2) << "\n";
    } else if (*cones_cmd) {
      json j = run_cones(cdepth, common, true);
      std::cout << "depths: " << cdepth + 1 << ", complement area at "
                << cdepth << ": "
                << j["depths"].back()["complement_area"]["exact"] << "\n";
    } else if (*conj_cmd) {
      json j = run_conjugacy(csamples, csteps, cseed, common, true);
      std::cout << j.dump(2) << "\n";
    } else if (*var_cmd) {
      json j = run_variant(MapParams(va, vb, vi), vsamples, vcap, vseed,
                           common, true);
      std::cout << j.dump(2) << "\n";
    } else if (*report_cmd) {
      if (!(r_absorb || r_cones || r_conj || r_variant))
        throw usage_error("report: select at least one of --with-absorb, "
                          "--with-cones, --with-conjugacy, --with-variant");
      json bundle{{"schema_version", kSchemaVersion},
                  {"tool_version", kToolVersion}};
      json cfg{{"a", ra},       {"b", rb},         {"depth", rdepth},
               {"samples", rsamples}, {"cap", rcap}, {"seed", rseed},
               {"steps", rsteps}};
      bundle["config"] = cfg;
      if (r_absorb)
        bundle["absorb"] = run_absorb(MapParams(ra, rb), rsamples, rcap, rseed,
                                      "cA", common, false);
      if (r_cones) bundle["cones"] = run_cones(rdepth, common, false);
      if (r_conj)
        bundle["conjugacy"] =
            run_conjugacy(rsamples, rsteps, rseed, common, false);
      if (r_variant)
        bundle["variant"] = run_variant(MapParams(rva, rvb, rvi), rsamples,
                                        rcap, rseed, common, false);
      write_json(out_path(common, "report.json"), bundle);
      std::cout << "report written\n";
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
