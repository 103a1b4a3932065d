#include "transversal/hypersurface.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace transversal {

using nlohmann::json;

// ---------------------------------------------------------------- covers

UniformCover UniformCover::weighted(int j, std::vector<std::vector<int>> sets, std::vector<double> alpha) {
  UniformCover c;
  c.j = j;
  c.sets = std::move(sets);
  c.weights = std::move(alpha);
  return c;
}

UniformCover UniformCover::counting(int j, std::vector<std::vector<int>> sets, int s) {
  UniformCover c;
  c.j = j;
  c.sets = std::move(sets);
  c.s = s;
  return c;
}

UniformCover UniformCover::singletons(int j) {
  std::vector<std::vector<int>> sets;
  for (int i = 0; i < j; ++i) sets.push_back({i});
  return weighted(j, sets, std::vector<double>(j, 1.0));
}

UniformCover UniformCover::partition(int j, std::vector<std::vector<int>> sets) {
  std::vector<double> w(sets.size(), 1.0);
  return weighted(j, std::move(sets), std::move(w));
}

std::string UniformCover::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) os << ' ';
    os << '{';
    for (std::size_t k = 0; k < sets[i].size(); ++k) os << (k ? "," : "") << sets[i][k] + 1;
    os << '}';
    if (!is_counting()) os << 'x' << weights[i];
  }
  if (is_counting()) os << " s=" << s;
  return os.str();
}

CoverValidation validate_cover(const UniformCover& c) {
  if (c.j < 1) throw std::invalid_argument("cover ground size must be positive");
  if (c.sets.empty()) throw std::invalid_argument("cover has no sets");
  if (!c.is_counting() && c.weights.size() != c.sets.size())
    throw std::invalid_argument("cover weight count differs from set count");
  std::vector<double> cover(c.j, 0.0);
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    const auto& A = c.sets[i];
    if (A.empty()) throw std::invalid_argument("empty cover set");
    if (!c.is_counting() && !(c.weights[i] > 0.0)) throw std::invalid_argument("cover weight must be positive");
    std::vector<bool> seen(c.j, false);
    for (int l : A) {
      if (l < 0 || l >= c.j) throw std::invalid_argument("cover index out of range");
      if (seen[l]) throw std::invalid_argument("repeated index inside a cover set");
      seen[l] = true;
      cover[l] += c.is_counting() ? 1.0 : c.weights[i];
    }
  }
  CoverValidation out;
  out.valid = true;
  out.residuals.resize(c.j);
  for (int l = 0; l < c.j; ++l) {
    double target = c.is_counting() ? static_cast<double>(c.s) : 1.0;
    out.residuals[l] = cover[l] - target;
    bool ok = c.is_counting() ? out.residuals[l] == 0.0 : std::abs(out.residuals[l]) <= 1e-12;
    if (!ok) {
      out.valid = false;
      if (out.message.empty())
        out.message = "index " + std::to_string(l + 1) + " has coverage " + std::to_string(cover[l]);
    }
  }
  return out;
}

void require_valid_cover(const UniformCover& c) {
  auto v = validate_cover(c);
  if (!v.valid) throw std::invalid_argument("invalid uniform cover: " + v.message);
}

// ---------------------------------------------------------------- surfaces

void DiscreteHypersurface::validate() const {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (atoms.empty()) throw std::invalid_argument("hypersurface has no atoms");
  for (const auto& a : atoms) {
    if (!std::isfinite(a.w) || !(a.w > 0.0)) throw std::invalid_argument("atom weights must be finite and positive");
    if (a.v.size() != d) throw std::invalid_argument("atom vector has wrong length");
    for (int k = 0; k < d; ++k)
      if (!std::isfinite(a.v[k])) throw std::invalid_argument("atom vector has a non-finite entry");
  }
}

double DiscreteHypersurface::total_mass() const {
  CompensatedSum s;
  for (const auto& a : atoms) s.add(a.w);
  return s.value();
}

Mat DiscreteHypersurface::vectors() const {
  Mat m(d, static_cast<int>(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i) m.col(static_cast<int>(i)) = atoms[i].v;
  return m;
}

DiscreteHypersurface DiscreteHypersurface::transformed(const Mat& A, const std::string& new_label) const {
  if (A.cols() != d) throw std::invalid_argument("transform has wrong column count");
  DiscreteHypersurface s;
  s.d = static_cast<int>(A.rows());
  s.label = new_label.empty() ? label + "*A" : new_label;
  for (const auto& a : atoms) s.atoms.push_back({a.w, A * a.v});
  return s;
}

bool DiscreteHypersurface::spans() const { return numerical_rank(vectors()) == d; }

std::string DiscreteHypersurface::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const void* p, std::size_t n) {
    auto b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&d, sizeof d);
  for (const auto& a : atoms) {
    mix(&a.w, sizeof a.w);
    mix(a.v.data(), sizeof(double) * a.v.size());
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

DiscreteHypersurface make_surface(int d, std::vector<Atom> atoms, std::string label) {
  DiscreteHypersurface s{d, std::move(atoms), std::move(label)};
  s.validate();
  return s;
}

DiscreteHypersurface make_axis_cross(int d, double weight_per_axis, bool signed_cross) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<Atom> atoms;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e[i] = 1.0;
    atoms.push_back({weight_per_axis, e});
    if (signed_cross) atoms.push_back({weight_per_axis, -e});
  }
  return make_surface(d, std::move(atoms), signed_cross ? "signed-axis-cross" : "axis-cross");
}

DiscreteHypersurface sample_sphere_uniform(int d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be positive");
  auto rng = chunk_rng(seed, 0);
  std::vector<Atom> atoms;
  atoms.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({w, uniform_sphere(rng, d)});
  return make_surface(d, std::move(atoms), "sphere-uniform");
}

DiscreteHypersurface random_gaussian(int d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("atom count must be positive");
  auto rng = chunk_rng(seed, 1);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 0.5 + uniform01(rng);
    atoms.push_back({w, gaussian_vector(rng, d)});
  }
  return make_surface(d, std::move(atoms), "random-gaussian");
}

DiscreteHypersurface random_sphere_measure(int d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("atom count must be positive");
  auto rng = chunk_rng(seed, 2);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = 0.05 + uniform01(rng);
    total += x;
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({w[i] / total, uniform_sphere(rng, d)});
  return make_surface(d, std::move(atoms), "random-sphere-measure");
}

DiscreteHypersurface random_isotropic(int d, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("basis count must be positive");
  auto rng = chunk_rng(seed, 3);
  std::vector<Atom> atoms;
  const double w = 1.0 / (static_cast<double>(k) * d);
  for (std::size_t b = 0; b < k; ++b) {
    Mat g(d, d);
    for (int c = 0; c < d; ++c) g.col(c) = gaussian_vector(rng, d);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    for (int c = 0; c < d; ++c) atoms.push_back({w, q.col(c)});
  }
  return make_surface(d, std::move(atoms), "random-isotropic");
}

DiscreteHypersurface cube_sheared(int d, std::uint64_t seed) {
  auto rng = chunk_rng(seed, 4);
  Mat t = Mat::Identity(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) t(r, c) = 2.0 * uniform01(rng) - 1.0;
  std::vector<Atom> atoms;
  for (int c = 0; c < d; ++c) atoms.push_back({1.0, t.col(c)});
  return make_surface(d, std::move(atoms), "cube-sheared");
}

std::vector<std::string> generator_names() {
  return {"axis-cross", "signed-axis-cross", "sphere-uniform", "random-gaussian",
          "random-sphere-measure", "random-isotropic", "cube-sheared"};
}

DiscreteHypersurface generate(const GeneratorSpec& g) {
  if (g.name == "axis-cross") return make_axis_cross(g.d, g.weight, g.signed_cross);
  if (g.name == "signed-axis-cross") return make_axis_cross(g.d, g.weight, true);
  if (g.name == "sphere-uniform") return sample_sphere_uniform(g.d, g.n ? g.n : 1000, g.seed);
  if (g.name == "random-gaussian") return random_gaussian(g.d, g.n ? g.n : 6, g.seed);
  if (g.name == "random-sphere-measure") return random_sphere_measure(g.d, g.n ? g.n : 6, g.seed);
  if (g.name == "random-isotropic") return random_isotropic(g.d, g.n ? g.n : 2, g.seed);
  if (g.name == "cube-sheared") return cube_sheared(g.d, g.seed);
  throw std::invalid_argument("unknown generator: " + g.name);
}

// ---------------------------------------------------------------- JSON

json surface_to_json(const DiscreteHypersurface& s) {
  json atoms = json::array();
  for (const auto& a : s.atoms) {
    json v = json::array();
    for (int k = 0; k < s.d; ++k) v.push_back(a.v[k]);
    atoms.push_back({{"w", a.w}, {"v", v}});
  }
  return {{"d", s.d}, {"atoms", atoms}, {"label", s.label}};
}

namespace {
double finite_number(const json& x, const char* what) {
  if (!x.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  double v = x.get<double>();
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
  return v;
}
}  // namespace

DiscreteHypersurface surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("atoms"))
    throw std::invalid_argument("surface JSON needs fields d and atoms");
  DiscreteHypersurface s;
  s.d = j.at("d").get<int>();
  s.label = j.value("label", std::string("file"));
  for (const auto& a : j.at("atoms")) {
    Atom atom;
    atom.w = finite_number(a.at("w"), "atom weight");
    if (!(atom.w > 0.0)) throw std::invalid_argument("atom weight must be positive");
    const auto& v = a.at("v");
    if (!v.is_array() || static_cast<int>(v.size()) != s.d)
      throw std::invalid_argument("atom vector length differs from d");
    atom.v.resize(s.d);
    for (int k = 0; k < s.d; ++k) atom.v[k] = finite_number(v[k], "atom coordinate");
    s.atoms.push_back(std::move(atom));
  }
  s.validate();
  return s;
}

DiscreteHypersurface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open surface file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("surface file parse error: " + std::string(e.what()));
  }
  return surface_from_json(j);
}

void save_surface(const DiscreteHypersurface& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write surface file: " + path);
  out << surface_to_json(s).dump(2) << '\n';
}

json cover_to_json(const UniformCover& c) {
  json sets = json::array();
  for (const auto& A : c.sets) {
    json a = json::array();
    for (int l : A) a.push_back(l + 1);
    sets.push_back(a);
  }
  json out{{"sets", sets}};
  if (c.is_counting())
    out["s"] = c.s;
  else
    out["weights"] = c.weights;
  return out;
}

UniformCover cover_from_json(const json& j, int ground_size) {
  std::vector<std::vector<int>> sets;
  for (const auto& a : j.at("sets")) {
    std::vector<int> A;
    for (const auto& l : a) A.push_back(l.get<int>() - 1);
    sets.push_back(A);
  }
  UniformCover c;
  if (j.contains("s"))
    c = UniformCover::counting(ground_size, sets, j.at("s").get<int>());
  else if (j.contains("weights"))
    c = UniformCover::weighted(ground_size, sets, j.at("weights").get<std::vector<double>>());
  else
    c = UniformCover::partition(ground_size, sets);
  validate_cover(c);
  return c;
}

}  // namespace transversal
