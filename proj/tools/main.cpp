#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "transversal/checks.hpp"
#include "transversal/hypersurface.hpp"
#include "transversal/lewis.hpp"
#include "transversal/suite.hpp"
#include "transversal/transversality.hpp"
#include "transversal/volumes.hpp"
#include "transversal/zonotope.hpp"

using namespace transversal;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceOpts {
  std::vector<std::string> surface{"axis-cross"};
  int d = 2;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  double weight = 1.0;
  bool signed_cross = false;

  void add(CLI::App* app) {
    app->add_option("--surface", surface, "generator name or surface JSON file (repeatable)");
    app->add_option("--d", d, "dimension");
    app->add_option("--n", n, "support size (generator default if 0)");
    app->add_option("--seed", seed, "generator seed");
    app->add_option("--weight", weight, "atom weight for axis crosses");
    app->add_flag("--signed", signed_cross, "signed axis cross");
  }

  DiscreteHypersurface one(std::size_t i) const {
    const std::string& s = surface.at(i);
    for (const auto& g : generator_names())
      if (g == s) {
        GeneratorSpec spec;
        spec.name = s;
        spec.d = d;
        spec.n = n;
        spec.seed = seed + i;
        spec.weight = weight;
        spec.signed_cross = signed_cross;
        return generate(spec);
      }
    if (!std::filesystem::exists(s)) throw UsageError("unknown generator or missing file: " + s);
    return load_surface(s);
  }

  std::vector<DiscreteHypersurface> all() const {
    std::vector<DiscreteHypersurface> out;
    for (std::size_t i = 0; i < surface.size(); ++i) out.push_back(one(i));
    return out;
  }
};

std::optional<UniformCover> parse_cover(const std::string& text, int ground) {
  if (text.empty()) return std::nullopt;
  json j;
  try {
    if (std::filesystem::exists(text)) {
      std::ifstream f(text);
      j = json::parse(f);
    } else {
      j = json::parse(text);
    }
    return cover_from_json(j, ground);
  } catch (const json::exception& e) {
    throw UsageError(std::string("cover: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("cover: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string resolve_config(const std::string& path) {
  if (std::filesystem::exists(path)) return path;
#ifdef TRANSVERSAL_CONFIG_DIR
  std::filesystem::path alt = std::filesystem::path(TRANSVERSAL_CONFIG_DIR) / path;
  if (std::filesystem::exists(alt)) return alt.string();
#endif
  throw UsageError("config not found: " + path);
}

void print_report(const CheckReport& r) {
  std::printf("%s [%s] verdict=%s lhs=%.12g rhs=%.12g margin=%.6g mc_error=%.3g\n", r.check_id.c_str(),
              r.instance.c_str(), to_string(r.verdict).c_str(), r.lhs, r.rhs, r.margin, r.mc_error);
  for (const auto& a : r.assertions)
    std::printf("  %-28s %.12g %s %.12g  (%s)\n", a.name.c_str(), a.lhs,
                a.relation == Relation::LE ? "<=" : "==", a.rhs, to_string(a.verdict).c_str());
  for (const auto& t : r.info) std::printf("  info %-23s %.12g\n", t.name.c_str(), t.value);
  for (const auto& n : r.notes) std::printf("  note %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transversality and visibility toolkit"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "worker threads (overrides TRANSVERSAL_WORKERS)");

  // q
  auto* q = app.add_subcommand("q", "compute Q_j^p");
  SurfaceOpts q_s;
  q_s.add(q);
  int q_j = 0;
  double q_p = 1.0;
  std::uint64_t q_mc = 0;
  q->add_option("--j", q_j, "tuple size (default d)");
  q->add_option("--p", q_p, "exponent");
  q->add_option("--mc", q_mc, "Monte Carlo samples instead of exact enumeration");

  // rho
  auto* rho = app.add_subcommand("rho", "sup rho and refined factor");
  SurfaceOpts rho_s;
  rho_s.add(rho);
  int rho_j = 0;
  double rho_p = 1.0;
  std::string rho_cover;
  rho->add_option("--j", rho_j, "tuple size (default d)");
  rho->add_option("--p", rho_p, "exponent");
  rho->add_option("--cover", rho_cover, "cover JSON (1-based) or file; default singletons");

  // vis
  auto* vis = app.add_subcommand("vis", "p-visibility with error bar");
  SurfaceOpts vis_s;
  vis_s.add(vis);
  double vis_p_val = 1.0;
  std::uint64_t vis_samples = kDefaultVolumeSamples;
  std::uint64_t vis_mc_seed = 1;
  std::string vis_method = "auto";
  vis->add_option("--p", vis_p_val, "exponent (>= 1)");
  vis->add_option("--samples", vis_samples, "radial Monte Carlo samples");
  vis->add_option("--mc-seed", vis_mc_seed, "Monte Carlo seed");
  vis->add_option("--method", vis_method, "auto | exact | mc")->check(CLI::IsMember({"auto", "exact", "mc"}));

  // lewis
  auto* lew = app.add_subcommand("lewis", "Lewis position");
  SurfaceOpts lew_s;
  lew_s.add(lew);
  double lew_p = 1.0, lew_tol = 1e-9;
  int lew_iter = 500;
  lew->add_option("--p", lew_p, "exponent (>= 1)");
  lew->add_option("--tol", lew_tol, "isotropy tolerance");
  lew->add_option("--max-iter", lew_iter, "iteration cap");

  // mixedvol
  auto* mv = app.add_subcommand("mixedvol", "V(K[d-k], Pi(S_1), ..., Pi(S_k))");
  SurfaceOpts mv_s;
  mv_s.add(mv);
  std::string mv_body = "ball";
  mv->add_option("--body", mv_body, "ball, or a generator/file whose projection body is K");

  // check
  auto* chk = app.add_subcommand("check", "run one registered check");
  SurfaceOpts chk_s;
  chk_s.add(chk);
  std::string chk_id, chk_cover, chk_matrix, chk_out;
  double chk_p = 1.0;
  int chk_j = 0, chk_frames = 4;
  std::uint64_t chk_samples = 1'000'000, chk_mc_seed = 1;
  bool chk_json = false;
  chk->add_option("id", chk_id, "check id")->required();
  chk->add_option("--p", chk_p, "exponent");
  chk->add_option("--j", chk_j, "tuple size");
  chk->add_option("--cover", chk_cover, "cover JSON (1-based) or file");
  chk->add_option("--matrix", chk_matrix, "positive-definite form as JSON rows or file");
  chk->add_option("--frames", chk_frames, "random frames");
  chk->add_option("--samples", chk_samples, "Monte Carlo samples");
  chk->add_option("--mc-seed", chk_mc_seed, "Monte Carlo seed");
  chk->add_flag("--json", chk_json, "print the JSON report");
  chk->add_option("--out", chk_out, "write the JSON report");

  // suite
  auto* su = app.add_subcommand("suite", "run a suite config");
  std::string su_config, su_out, su_csv;
  bool su_timing = false;
  su->add_option("config", su_config, "config JSON")->required();
  su->add_option("--out", su_out, "JSON report path (stdout if absent)");
  su->add_option("--csv", su_csv, "CSV report path");
  su->add_flag("--timing", su_timing, "record runtime_ms");

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated surface");
  SurfaceOpts gen_s;
  std::string gen_name, gen_out;
  gen->add_option("generator", gen_name, "generator name")->required();
  gen->add_option("--d", gen_s.d, "dimension");
  gen->add_option("--n", gen_s.n, "support size");
  gen->add_option("--seed", gen_s.seed, "seed");
  gen->add_option("--weight", gen_s.weight, "atom weight");
  gen->add_flag("--signed", gen_s.signed_cross, "signed axis cross");
  gen->add_option("--out", gen_out, "output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (workers < 0) throw UsageError("--workers must be nonnegative");
    if (workers > 0) set_worker_count(workers);

    if (*q) {
      auto s = q_s.all();
      const int j = q_j ? q_j : (s.size() == 1 ? s[0].d : static_cast<int>(s.size()));
      if (s.size() == 1) s.assign(static_cast<std::size_t>(j), s[0]);
      if (q_mc) {
        QEstimate e = q_montecarlo(s, j, q_p, q_mc, q_s.seed);
        std::printf("Q = %.15g +- %.3g\nsamples = %llu\n", e.value, e.stderr_value,
                    static_cast<unsigned long long>(e.samples));
      } else {
        QResult r = q_exact(s, j, q_p);
        std::printf("Q = %.15g\ntuples = %llu\n", r.value, static_cast<unsigned long long>(r.tuples));
      }
      return 0;
    }
    if (*rho) {
      auto s = rho_s.all();
      const int j = rho_j ? rho_j : (s.size() == 1 ? s[0].d : static_cast<int>(s.size()));
      if (s.size() == 1) s.assign(static_cast<std::size_t>(j), s[0]);
      auto cover = parse_cover(rho_cover, j);
      FinnerResult f = finner_check(s, cover ? *cover : UniformCover::singletons(j), rho_p);
      std::printf("sup_rho = %.15g\nrefined_factor = %.15g\nQ = %.15g\nrhs_refined = %.15g\n"
                  "rhs_coarse = %.15g\nclassical = %.15g\ntuples = %llu\n",
                  f.sup_rho, f.refined_factor, f.lhs, f.rhs_refined, f.rhs_coarse, f.classical,
                  static_cast<unsigned long long>(f.tuples));
      return 0;
    }
    if (*vis) {
      KpMethod m = vis_method == "exact" ? KpMethod::Exact : vis_method == "mc" ? KpMethod::RadialMC : KpMethod::Auto;
      VisResult v = vis_p(vis_s.one(0), vis_p_val, m, vis_samples, vis_mc_seed);
      std::printf("vis = %.15g +- %.3g\nvolume = %.15g +- %.3g\nmethod = %s\n", v.value, v.stderr_value,
                  v.volume.value, v.volume.stderr_value, v.volume.method.c_str());
      return 0;
    }
    if (*lew) {
      LewisResult r = lewis_solve(lew_s.one(0), lew_p, lew_tol, lew_iter);
      Eigen::IOFormat fmt(Eigen::FullPrecision, 0, " ", "\n", "  ");
      std::cout << "u =\n" << r.u.format(fmt) << "\n";
      std::printf("defect = %.3g\niterations = %d\nconverged = %s\n", r.defect, r.iterations,
                  r.converged ? "true" : "false");
      return r.converged ? 0 : 1;
    }
    if (*mv) {
      auto s = mv_s.all();
      std::vector<Zonotope> zs;
      for (const auto& x : s) zs.push_back(projection_body(x));
      ConvexBody body = Ball{s[0].d};
      if (mv_body != "ball") {
        SurfaceOpts b = mv_s;
        b.surface = {mv_body};
        body = projection_body(b.one(0));
      }
      std::printf("V = %.15g\n", mixed_volume(body, zs));
      return 0;
    }
    if (*chk) {
      if (!is_check_id(chk_id)) throw UsageError("unknown check id " + chk_id);
      CheckInstance in;
      in.surfaces = chk_s.all();
      if (!chk_matrix.empty()) {
        json j;
        if (std::filesystem::exists(chk_matrix)) {
          std::ifstream f(chk_matrix);
          j = json::parse(f);
        } else {
          j = json::parse(chk_matrix);
        }
        json cfg = {{"matrix", j}};
        in.form = instance_from_json(cfg).form;
      }
      CheckParams pr;
      pr.p = chk_p;
      pr.j = chk_j;
      pr.random_frames = chk_frames;
      pr.mc_samples = chk_samples;
      pr.seed = chk_mc_seed;
      const int d = in.surfaces.front().d;
      int ground = d;
      if (chk_id == "FINNER_RHO" || chk_id == "BEZOUT")
        ground = chk_j ? chk_j : (in.surfaces.size() == 1 ? d : static_cast<int>(in.surfaces.size()));
      pr.cover = parse_cover(chk_cover, ground);
      CheckReport r = run_check(chk_id, in, pr);
      if (chk_json)
        std::cout << report_to_json(r).dump(2) << "\n";
      else
        print_report(r);
      if (!chk_out.empty()) write_file(chk_out, report_to_json(r).dump(2) + "\n");
      return r.verdict == Verdict::Fail ? 1 : 0;
    }
    if (*su) {
      SuiteOptions opts;
      opts.timing = su_timing;
      SuiteResult r = run_suite_file(resolve_config(su_config), opts);
      std::string text = suite_to_json(r).dump(2) + "\n";
      if (su_out.empty())
        std::cout << text;
      else
        write_file(su_out, text);
      if (!su_csv.empty()) write_file(su_csv, suite_to_csv(r));
      std::fprintf(stderr, "pass=%d fail=%d inconclusive=%d skipped=%d total=%d\n", r.summary.pass, r.summary.fail,
                   r.summary.inconclusive, r.summary.skipped, r.summary.total());
      return r.summary.ok() ? 0 : 1;
    }
    if (*gen) {
      gen_s.surface = {gen_name};
      bool known = false;
      for (const auto& g : generator_names()) known |= g == gen_name;
      if (!known) throw UsageError("unknown generator " + gen_name);
      std::string text = surface_to_json(gen_s.one(0)).dump(2) + "\n";
      if (gen_out.empty())
        std::cout << text;
      else
        save_surface(gen_s.one(0), gen_out);
      return 0;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
