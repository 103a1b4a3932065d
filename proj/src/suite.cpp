#include "transversal/suite.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "transversal/hypersurface.hpp"

namespace transversal {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw std::runtime_error("config: " + what); }

Mat matrix_from_rows(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) config_error(std::string(what) + " must be a non-empty array of rows");
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) config_error(std::string(what) + " is ragged");
    for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Mat random_pd(const json& j, std::uint64_t seed_offset) {
  const int d = j.value("d", 3);
  if (d < 1) config_error("random_pd needs d >= 1");
  const std::uint64_t seed = j.value("seed", std::uint64_t{1}) + seed_offset;
  const std::string kind = j.value("kind", "general");
  auto rng = chunk_rng(seed, 0x5eed);
  if (kind == "diagonal") {
    Vec diag(d);
    for (int i = 0; i < d; ++i) diag[i] = std::exp(2.0 * uniform01(rng) - 1.0);
    return diag.asDiagonal();
  }
  if (kind != "general") config_error("random_pd kind must be general or diagonal");
  Mat g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = gaussian_vector(rng, d);
  return g * g.transpose() + 0.1 * Mat::Identity(d, d);
}

DiscreteHypersurface surface_from_spec(const json& j, std::uint64_t seed_offset, int index) {
  if (j.contains("generator")) {
    GeneratorSpec g;
    g.name = j["generator"].get<std::string>();
    g.d = j.value("d", 2);
    g.n = j.value("n", std::size_t{0});
    g.seed = j.value("seed", std::uint64_t{1}) + seed_offset + static_cast<std::uint64_t>(index);
    g.weight = j.value("weight", 1.0);
    g.signed_cross = j.value("signed", false);
    return generate(g);
  }
  if (j.contains("file")) return load_surface(j["file"].get<std::string>());
  return surface_from_json(j);
}

}  // namespace

CheckInstance instance_from_json(const json& j, std::uint64_t seed_offset) {
  if (!j.is_object()) config_error("instance must be an object");
  CheckInstance in;
  try {
    if (j.contains("generator")) {
      const int count = j.value("count", 1);
      if (count < 1) config_error("count must be positive");
      for (int i = 0; i < count; ++i) in.surfaces.push_back(surface_from_spec(j, seed_offset, i));
    }
    if (j.contains("file")) in.surfaces.push_back(load_surface(j["file"].get<std::string>()));
    if (j.contains("surface")) in.surfaces.push_back(surface_from_json(j["surface"]));
    if (j.contains("surfaces"))
      for (std::size_t i = 0; i < j["surfaces"].size(); ++i)
        in.surfaces.push_back(surface_from_spec(j["surfaces"][i], seed_offset, static_cast<int>(i)));
    if (j.contains("body")) in.body = surface_from_spec(j["body"], seed_offset, 97);
    if (j.contains("matrix")) in.form = matrix_from_rows(j["matrix"], "matrix");
    if (j.contains("random_pd")) in.form = random_pd(j["random_pd"], seed_offset);
    if (j.contains("basis")) in.basis = matrix_from_rows(j["basis"], "basis").transpose();
  } catch (const json::exception& e) {
    config_error(std::string("instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    config_error(std::string("instance: ") + e.what());
  }
  if (in.surfaces.empty() && !in.form) config_error("instance has neither surfaces nor a matrix");
  in.label = j.value("label", std::string());
  if (seed_offset && !in.label.empty()) in.label += "#" + std::to_string(seed_offset / 1000);
  return in;
}

CheckParams params_from_json(const json& j, int ground_size, const CheckParams& defaults) {
  CheckParams p = defaults;
  if (j.is_null()) return p;
  if (!j.is_object()) config_error("params must be an object");
  try {
    p.p = j.value("p", p.p);
    p.j = j.value("j", p.j);
    p.random_frames = j.value("frames", p.random_frames);
    p.mc_samples = j.value("mc_samples", p.mc_samples);
    p.lewis_tol = j.value("lewis_tol", p.lewis_tol);
    p.lewis_max_iter = j.value("lewis_max_iter", p.lewis_max_iter);
    if (j.contains("cover")) p.cover = cover_from_json(j["cover"], p.j ? p.j : ground_size);
  } catch (const json::exception& e) {
    config_error(std::string("params: ") + e.what());
  } catch (const std::invalid_argument& e) {
    config_error(std::string("params: ") + e.what());
  }
  if (!(p.p > 0.0)) config_error("p must be positive");
  if (p.random_frames < 0) config_error("frames must be nonnegative");
  return p;
}

SuiteSummary summarize(const std::vector<CheckReport>& reports) {
  SuiteSummary s;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::Pass: ++s.pass; break;
      case Verdict::Fail: ++s.fail; break;
      case Verdict::Inconclusive: ++s.inconclusive; break;
      case Verdict::Skipped: ++s.skipped; break;
    }
  }
  return s;
}

namespace {

struct Job {
  std::string id;
  CheckInstance instance;
  CheckParams params;
};

int ground_size(const std::string& id, const CheckInstance& in, const CheckParams& p) {
  if (in.surfaces.empty()) return in.form ? static_cast<int>(in.form->rows()) : 0;
  const int d = in.surfaces.front().d;
  if (id == "FINNER_RHO" || id == "BEZOUT") {
    if (p.j) return p.j;
    return in.surfaces.size() == 1 ? d : static_cast<int>(in.surfaces.size());
  }
  return d;
}

}  // namespace

SuiteResult run_suite(const json& config, const SuiteOptions& opts) {
  if (!config.is_object()) config_error("top level must be an object");
  CheckParams defaults;
  std::vector<Job> jobs;
  try {
    defaults.seed = config.value("seed", std::uint64_t{1});
    defaults.mc_samples = config.value("mc_samples", defaults.mc_samples);
    if (config.contains("test_mode")) defaults.constant_scale = config["test_mode"].value("constant_scale", 1.0);
    const json empty = json::array();
    const json& checks = config.contains("checks") ? config["checks"] : empty;
    if (!checks.is_array()) config_error("checks must be an array");
    for (const auto& c : checks) {
      const std::string id = c.at("id").get<std::string>();
      if (!is_check_id(id)) config_error("unknown check id " + id);
      const int repeat = c.value("repeat", 1);
      if (repeat < 1) config_error("repeat must be positive");
      for (int r = 0; r < repeat; ++r) {
        const std::uint64_t offset = static_cast<std::uint64_t>(r) * 1000;
        Job job;
        job.id = id;
        job.instance = instance_from_json(c.at("instance"), offset);
        CheckParams pr = defaults;
        pr.seed = defaults.seed + static_cast<std::uint64_t>(r);
        const json params = c.value("params", json());
        if (params.is_object()) pr.j = params.value("j", 0);
        job.params = params_from_json(params, ground_size(id, job.instance, pr), pr);
        jobs.push_back(std::move(job));
      }
    }
  } catch (const json::exception& e) {
    config_error(e.what());
  }

  SuiteResult out;
  out.reports.resize(jobs.size());
  parallel_for_chunks(jobs.size(), [&](std::size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    out.reports[i] = run_check(jobs[i].id, jobs[i].instance, jobs[i].params);
    if (opts.timing)
      out.reports[i].runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });
  out.summary = summarize(out.reports);
  return out;
}

SuiteResult run_suite_file(const std::string& path, const SuiteOptions& opts) {
  std::ifstream f(path);
  if (!f) config_error("cannot open " + path);
  json config;
  try {
    config = json::parse(f);
  } catch (const json::exception& e) {
    config_error(path + ": " + e.what());
  }
  return run_suite(config, opts);
}

json suite_to_json(const SuiteResult& r) {
  json j;
  j["summary"] = {{"pass", r.summary.pass},
                  {"fail", r.summary.fail},
                  {"inconclusive", r.summary.inconclusive},
                  {"skipped", r.summary.skipped},
                  {"total", r.summary.total()}};
  j["workers"] = worker_count();
  json reps = json::array();
  for (const auto& rep : r.reports) reps.push_back(report_to_json(rep));
  j["reports"] = reps;
  return j;
}

std::string suite_to_csv(const SuiteResult& r) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& rep : r.reports) os << report_to_csv(rep) << '\n';
  return os.str();
}

}  // namespace transversal
