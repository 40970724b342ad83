#include "sqgfront/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "sqgfront/errors.hpp"

namespace sqgfront::cli {

using nlohmann::json;

namespace {

// One JSON object plus its dotted path. Every key read is remembered so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
  }

  std::optional<Section> section(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return Section(*v, where(key));
  }

  void number(const std::string& key, double& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number()) fail(where(key), "expected a number");
    out = v->get<double>();
    if (!std::isfinite(out)) fail(where(key), "must be finite");
  }

  void integer(const std::string& key, int& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number_integer()) fail(where(key), "expected an integer");
    out = v->get<int>();
  }

  void unsigned_integer(const std::string& key, unsigned& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_number_unsigned()) fail(where(key), "expected a non-negative integer");
    out = v->get<unsigned>();
  }

  void boolean(const std::string& key, bool& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_boolean()) fail(where(key), "expected true or false");
    out = v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(where(key), "expected a string");
    return v->get<std::string>();
  }

  template <class T>
  void list(const std::string& key, std::vector<T>& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_array() || v->empty()) fail(where(key), "expected a non-empty array");
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      const std::string at = where(key) + "[" + std::to_string(i) + "]";
      if constexpr (std::is_integral_v<T>) {
        if (!e.is_number_integer()) fail(at, "expected an integer");
      } else {
        if (!e.is_number()) fail(at, "expected a number");
        if (!std::isfinite(e.get<double>())) fail(at, "must be finite");
      }
      out.push_back(e.get<T>());
    }
  }

  void reject_unknown() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) fail(where(key), "unknown key");
    }
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
  }

 private:
  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_grid(Section& s, SimConfig& sim) {
  s.number("x_min", sim.x_min);
  s.number("length", sim.length);
  s.integer("n", sim.n);
  if (auto b = s.string("backend")) {
    try {
      sim.backend = parse_backend(*b);
    } catch (const InvalidArgument& e) {
      Section::fail(s.where("backend"), e.what());
    }
  }
  s.reject_unknown();
}

void read_initial(Section& s, FrontSpec& f) {
  if (auto name = s.string("family")) {
    try {
      f.family = parse_family(*name);
    } catch (const InvalidArgument& e) {
      Section::fail(s.where("family"), e.what());
    }
  }
  s.number("amplitude", f.amplitude);
  s.number("width", f.width);
  s.number("center", f.center);
  s.number("offset", f.offset);
  s.number("wavenumber", f.wavenumber);
  s.number("phase", f.phase);
  s.number("plateau", f.plateau);
  s.number("taper", f.taper);
  s.integer("power", f.power);
  s.integer("modes", f.modes);
  s.unsigned_integer("seed", f.seed);
  s.reject_unknown();
}

std::string_view diagonal_name(DiagonalMode m) {
  return m == DiagonalMode::skip_point ? "skip_point" : "analytic_limit";
}

void read_kernel(Section& s, KernelParams& k) {
  s.number("h", k.h);
  s.number("lambda", k.lambda);
  if (auto d = s.string("diagonal")) {
    if (*d == "analytic_limit") {
      k.diagonal_mode = DiagonalMode::analytic_limit;
    } else if (*d == "skip_point") {
      k.diagonal_mode = DiagonalMode::skip_point;
    } else {
      Section::fail(s.where("diagonal"), "expected analytic_limit or skip_point");
    }
  }
  s.reject_unknown();
}

void read_time(Section& s, SimConfig& sim) {
  s.number("dt", sim.dt);
  s.number("cfl_safety", sim.cfl_safety);
  s.number("t_end", sim.t_end);
  s.integer("output_stride", sim.output_stride);
  s.reject_unknown();
}

void read_options(Section& s, SimConfig& sim) {
  s.boolean("galilean_form", sim.galilean_form);
  s.boolean("nonlinear", sim.nonlinear);
  s.boolean("dealias", sim.dealias);
  s.boolean("audit_i3", sim.audit_i3);
  s.number("slope_limit", sim.slope_limit);
  s.reject_unknown();
}

void check_ranges(const RunConfig& cfg) {
  const SimConfig& sim = cfg.sim;
  auto require = [](bool ok, const char* path, const char* what) {
    if (!ok) Section::fail(path, what);
  };
  require(sim.length > 0.0, "grid.length", "must be positive");
  require(sim.n >= 8 && is_power_of_two(sim.n), "grid.n", "must be a power of two >= 8");
  require(sim.initial.width > 0.0, "initial.width", "must be positive");
  require(sim.initial.power >= 1, "initial.power", "must be >= 1");
  require(sim.initial.modes >= 1, "initial.modes", "must be >= 1");
  require(sim.initial.plateau >= 0.0, "initial.plateau", "must be non-negative");
  require(sim.initial.taper > 0.0, "initial.taper", "must be positive");
  require(sim.kernel.lambda >= 0.0, "kernel.lambda", "must be non-negative");
  require(sim.dt >= 0.0, "time.dt", "must be non-negative (0 selects the CFL step)");
  require(sim.cfl_safety > 0.0, "time.cfl_safety", "must be positive");
  require(sim.t_end > 0.0, "time.t_end", "must be positive");
  require(sim.output_stride >= 1, "time.output_stride", "must be >= 1");
  require(sim.slope_limit > 0.0, "options.slope_limit", "must be positive");
  require(cfg.dispersion.amplitude > 0.0 && cfg.dispersion.amplitude <= 1e-3,
          "dispersion.amplitude", "must lie in (0, 1e-3]");
  require(cfg.dispersion.n >= 8 && is_power_of_two(cfg.dispersion.n), "dispersion.n",
          "must be a power of two >= 8");
  require(cfg.dispersion.t_end > 0.0, "dispersion.t_end", "must be positive");
  for (double k : cfg.symmetry.k) {
    require(k >= 0.5 && k <= 2.0, "symmetry.k", "entries must lie in [0.5, 2]");
  }
  for (int r : cfg.symmetry.refinements) {
    require(r >= 1 && is_power_of_two(r), "symmetry.refinements",
            "entries must be powers of two (grid refinement factors)");
  }
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  Section root(doc, "");
  if (auto s = root.section("grid")) read_grid(*s, cfg.sim);
  if (auto s = root.section("initial")) read_initial(*s, cfg.sim.initial);
  if (auto s = root.section("kernel")) read_kernel(*s, cfg.sim.kernel);
  if (auto s = root.section("time")) read_time(*s, cfg.sim);
  if (auto s = root.section("options")) read_options(*s, cfg.sim);
  if (auto s = root.section("probes")) {
    s->list("x", cfg.probes.x);
    s->list("y", cfg.probes.y);
    s->number("h", cfg.probes.h);
    s->reject_unknown();
  }
  if (auto s = root.section("dispersion")) {
    s->list("xi", cfg.dispersion.xi);
    s->number("amplitude", cfg.dispersion.amplitude);
    s->integer("n", cfg.dispersion.n);
    s->number("t_end", cfg.dispersion.t_end);
    s->reject_unknown();
  }
  if (auto s = root.section("symmetry")) {
    s->list("k", cfg.symmetry.k);
    s->list("refinements", cfg.symmetry.refinements);
    s->reject_unknown();
  }
  root.reject_unknown();
  check_ranges(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  const SimConfig& s = cfg.sim;
  const FrontSpec& f = s.initial;
  return json{
      {"grid", {{"x_min", s.x_min}, {"length", s.length}, {"n", s.n},
                {"backend", backend_name(s.backend)}}},
      {"initial", {{"family", family_name(f.family)}, {"amplitude", f.amplitude},
                   {"width", f.width}, {"center", f.center}, {"offset", f.offset},
                   {"wavenumber", f.wavenumber}, {"phase", f.phase},
                   {"plateau", f.plateau}, {"taper", f.taper}, {"power", f.power},
                   {"modes", f.modes}, {"seed", f.seed}}},
      {"kernel", {{"h", s.kernel.h}, {"lambda", s.kernel.lambda},
                  {"diagonal", diagonal_name(s.kernel.diagonal_mode)}}},
      {"time", {{"dt", s.dt}, {"cfl_safety", s.cfl_safety}, {"t_end", s.t_end},
                {"output_stride", s.output_stride}}},
      {"options", {{"galilean_form", s.galilean_form}, {"nonlinear", s.nonlinear},
                   {"dealias", s.dealias}, {"audit_i3", s.audit_i3},
                   {"slope_limit", s.slope_limit}}},
      {"probes", {{"x", cfg.probes.x}, {"y", cfg.probes.y}, {"h", cfg.probes.h}}},
      {"dispersion", {{"xi", cfg.dispersion.xi}, {"amplitude", cfg.dispersion.amplitude},
                      {"n", cfg.dispersion.n}, {"t_end", cfg.dispersion.t_end}}},
      {"symmetry", {{"k", cfg.symmetry.k}, {"refinements", cfg.symmetry.refinements}}},
  };
}

}  // namespace sqgfront::cli
