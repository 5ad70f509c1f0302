#include "corridor/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "corridor/channel.hpp"
#include "corridor/errors.hpp"
#include "corridor/parallel.hpp"

namespace corridor {

using nlohmann::json;

void RegionSpec::validate() const {
  if (!(ground.width() > 0.0) || !(ground.depth() > 0.0)) {
    throw ValidationError("regions.ground: rectangle is degenerate");
  }
  if (!(mixing_ratio >= 0.0 && mixing_ratio <= 1.0)) {
    throw ValidationError("regions.mixing_ratio: must be in [0, 1]");
  }
  std::set<std::string> names;
  for (const Corridor& c : corridors) {
    if (!names.insert(c.name).second) {
      throw ValidationError("regions.corridors: duplicate corridor name '" +
                            c.name + "'");
    }
    if (!(c.area.width() > 0.0) || !(c.area.depth() > 0.0)) {
      throw ValidationError("regions.corridors[" + c.name +
                            "]: rectangle is degenerate");
    }
  }
  if (mixing_ratio < 1.0 && corridors.empty()) {
    throw ValidationError(
        "regions.corridors: mixing_ratio < 1 requires at least one corridor");
  }
}

std::vector<Corridor> case_study_corridors() {
  return {
      {"Q1", {-770.0, -730.0, -1000.0, 1000.0}, 150.0},
      {"Q2", {-1000.0, 1000.0, -770.0, -730.0}, 120.0},
      {"Q3", {-1000.0, 1000.0, 730.0, 770.0}, 120.0},
      {"Q4", {730.0, 770.0, -1000.0, 1000.0}, 150.0},
  };
}

Deployment build_hex_deployment(int rings, double isd, double height,
                                const AntennaPattern& pattern, double rho_max) {
  if (rings < 0) throw ValidationError("deployment.rings: must be >= 0");
  if (!(isd > 0.0)) throw ValidationError("deployment.isd: must be > 0");
  if (!(pattern.theta_3db > 0.0) || !(pattern.phi_3db > 0.0)) {
    throw ValidationError("deployment: beamwidths must be > 0");
  }

  struct Site {
    int ring;
    long long angle_key;
    double x;
    double y;
  };
  std::vector<Site> sites;
  const double half_sqrt3 = std::sqrt(3.0) / 2.0;
  for (int i = -rings; i <= rings; ++i) {
    for (int j = -rings; j <= rings; ++j) {
      const int ring = (std::abs(i) + std::abs(j) + std::abs(i + j)) / 2;
      if (ring > rings) continue;
      const double x = isd * (i + 0.5 * j);
      const double y = isd * half_sqrt3 * j;
      double angle = std::atan2(y, x) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 360.0;
      sites.push_back({ring, ring == 0 ? 0 : std::llround(angle * 1e6), x, y});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return std::tie(a.ring, a.angle_key) < std::tie(b.ring, b.angle_key);
  });

  Deployment dep;
  dep.pattern = pattern;
  dep.rho_max = rho_max;
  constexpr double kAzimuths[3] = {0.0, 120.0, -120.0};
  int id = 1;
  for (const Site& s : sites) {
    for (double az : kAzimuths) {
      BaseStation bs;
      bs.id = id++;
      bs.x = s.x;
      bs.y = s.y;
      bs.height = height;
      bs.azimuth_deg = az;
      bs.power_dbm = rho_max;
      dep.base_stations.push_back(bs);
    }
  }
  return dep;
}

namespace {

int cell_count(double side, double step, const std::string& field) {
  if (!(step > 0.0)) throw ValidationError(field + ": step must be > 0");
  if (step > side) {
    throw ValidationError(field + ": step exceeds the rectangle side");
  }
  return static_cast<int>(std::ceil(side / step - 1e-9));
}

// Appends midpoint samples of rect; returns the number appended.
std::size_t append_grid(SampleSet& set, const Rect& rect, double height,
                        double step, int region, double raw_weight_per_area,
                        const std::string& field) {
  const int nx = cell_count(rect.width(), step, field);
  const int ny = cell_count(rect.depth(), step, field);
  const double dx = rect.width() / nx;
  const double dy = rect.depth() / ny;
  const double w = raw_weight_per_area * dx * dy;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      SamplePoint sp;
      sp.position = {rect.x_min + (ix + 0.5) * dx, rect.y_min + (iy + 0.5) * dy,
                     height};
      sp.weight = w;
      sp.region = region;
      sp.ground_index = region == kGround ? iy * nx + ix : -1;
      set.points.push_back(sp);
    }
  }
  return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
}

}  // namespace

SampleSet build_sample_grid(const RegionSpec& regions, double ground_step,
                            double corridor_step) {
  regions.validate();
  SampleSet set;
  for (const Corridor& c : regions.corridors) set.corridor_names.push_back(c.name);

  const double r = regions.mixing_ratio;
  if (r > 0.0) {
    append_grid(set, regions.ground, regions.ground_height, ground_step, kGround,
                r / regions.ground.area(), "regions.ground_step");
  }
  if (r < 1.0) {
    double corridor_area = 0.0;
    for (const Corridor& c : regions.corridors) corridor_area += c.area.area();
    for (std::size_t u = 0; u < regions.corridors.size(); ++u) {
      const Corridor& c = regions.corridors[u];
      append_grid(set, c.area, c.height, corridor_step, static_cast<int>(u),
                  (1.0 - r) / corridor_area, "regions.corridor_step");
    }
  }
  if (set.points.empty()) {
    throw ValidationError("sample grid: no points after gridding");
  }

  CompensatedSum total;
  for (const SamplePoint& sp : set.points) total.add(sp.weight);
  const double norm = total.value();
  for (SamplePoint& sp : set.points) sp.weight /= norm;
  return set;
}

SampleSet Scenario::build_samples() const {
  SampleSet set = build_sample_grid(regions, ground_step, corridor_step);
  if (los_model == LosModel::kProbabilistic) {
    set.los_labels = sample_los_labels(set, deployment.base_stations, seed);
    set.los_columns = deployment.size();
  }
  return set;
}

SampleSet Scenario::build_report_samples() const {
  RegionSpec both = regions;
  both.mixing_ratio = regions.corridors.empty() ? 1.0 : 0.5;
  SampleSet set = build_sample_grid(both, ground_step, corridor_step);
  if (los_model == LosModel::kProbabilistic) {
    set.los_labels = sample_los_labels(set, deployment.base_stations, seed);
    set.los_columns = deployment.size();
  }
  return set;
}

Scenario default_scenario() {
  Scenario s;
  s.regions.corridors = case_study_corridors();
  s.deployment =
      build_hex_deployment(s.rings, s.isd, s.bs_height, AntennaPattern{}, 43.0);
  return s;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ValidationError(path_ + ": expected an object");
  }

  void check_keys(std::initializer_list<const char*> allowed) const {
    for (const auto& [key, _] : obj_.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw ValidationError(field(key) + ": unknown key");
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }

  template <typename T>
  void read(const char* key, T& out) const {
    if (!obj_.contains(key)) return;
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ValidationError(field(key) + ": wrong type");
    }
  }

  double number(const char* key, double fallback) const {
    double v = fallback;
    read(key, v);
    if (!std::isfinite(v)) throw ValidationError(field(key) + ": not finite");
    return v;
  }

  Reader child(const char* key) const { return Reader(obj_.at(key), field(key)); }
  const json& at(const char* key) const { return obj_.at(key); }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
};

Rect read_rect(const Reader& r) {
  Rect rect;
  std::vector<double> xs{rect.x_min, rect.x_max}, ys{rect.y_min, rect.y_max};
  r.read("x", xs);
  r.read("y", ys);
  if (xs.size() != 2) throw ValidationError(r.field("x") + ": expected [min, max]");
  if (ys.size() != 2) throw ValidationError(r.field("y") + ": expected [min, max]");
  rect = {xs[0], xs[1], ys[0], ys[1]};
  if (!(rect.width() > 0.0)) throw ValidationError(r.field("x") + ": min >= max");
  if (!(rect.depth() > 0.0)) throw ValidationError(r.field("y") + ": min >= max");
  return rect;
}

LinkClass read_link(const Reader& r, LinkClass link) {
  r.check_keys({"a", "b"});
  link.a = r.number("a", link.a);
  link.b = r.number("b", link.b);
  if (!(link.b > 0.0)) throw ValidationError(r.field("b") + ": must be > 0");
  return link;
}

json rect_json(const Rect& r) {
  return {{"x", {r.x_min, r.x_max}}, {"y", {r.y_min, r.y_max}}};
}

json link_json(const LinkClass& l) { return {{"a", l.a}, {"b", l.b}}; }

}  // namespace

Scenario scenario_from_json(const json& doc) {
  Scenario s = default_scenario();
  const Reader top(doc, "");
  top.check_keys({"deployment", "regions", "objective", "optimizer", "seed"});

  AntennaPattern pattern;
  double rho_max = 43.0;
  LinkConstants pathloss;
  if (top.has("deployment")) {
    const Reader d = top.child("deployment");
    d.check_keys({"rings", "isd", "height", "theta_3db", "phi_3db", "a_max",
                  "rho_max", "pathloss"});
    d.read("rings", s.rings);
    s.isd = d.number("isd", s.isd);
    s.bs_height = d.number("height", s.bs_height);
    pattern.theta_3db = d.number("theta_3db", pattern.theta_3db);
    pattern.phi_3db = d.number("phi_3db", pattern.phi_3db);
    pattern.a_max = d.number("a_max", pattern.a_max);
    rho_max = d.number("rho_max", rho_max);
    if (s.rings < 0) throw ValidationError("deployment.rings: must be >= 0");
    if (!(pattern.theta_3db > 0.0)) {
      throw ValidationError("deployment.theta_3db: must be > 0");
    }
    if (!(pattern.phi_3db > 0.0)) {
      throw ValidationError("deployment.phi_3db: must be > 0");
    }
    if (d.has("pathloss")) {
      const Reader p = d.child("pathloss");
      p.check_keys({"uav_los", "gue_los", "gue_nlos"});
      if (p.has("uav_los")) pathloss.uav_los = read_link(p.child("uav_los"), pathloss.uav_los);
      if (p.has("gue_los")) pathloss.gue_los = read_link(p.child("gue_los"), pathloss.gue_los);
      if (p.has("gue_nlos")) pathloss.gue_nlos = read_link(p.child("gue_nlos"), pathloss.gue_nlos);
    }
  }
  s.deployment = build_hex_deployment(s.rings, s.isd, s.bs_height, pattern, rho_max);
  s.deployment.pathloss = pathloss;

  if (top.has("regions")) {
    const Reader r = top.child("regions");
    r.check_keys({"ground", "corridors", "mixing_ratio", "ground_step",
                  "corridor_step", "los_model"});
    if (r.has("ground")) {
      const Reader g = r.child("ground");
      g.check_keys({"x", "y", "height"});
      s.regions.ground = read_rect(g);
      s.regions.ground_height = g.number("height", s.regions.ground_height);
    }
    if (r.has("corridors")) {
      const json& arr = r.at("corridors");
      if (!arr.is_array()) throw ValidationError("regions.corridors: expected an array");
      s.regions.corridors.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Reader c(arr[i], "regions.corridors[" + std::to_string(i) + "]");
        c.check_keys({"name", "x", "y", "height"});
        Corridor cor;
        cor.name = "Q" + std::to_string(i + 1);
        c.read("name", cor.name);
        cor.area = read_rect(c);
        cor.height = c.number("height", 150.0);
        s.regions.corridors.push_back(cor);
      }
    }
    s.regions.mixing_ratio = r.number("mixing_ratio", s.regions.mixing_ratio);
    s.ground_step = r.number("ground_step", s.ground_step);
    s.corridor_step = r.number("corridor_step", s.corridor_step);
    if (!(s.ground_step > 0.0)) throw ValidationError("regions.ground_step: must be > 0");
    if (!(s.corridor_step > 0.0)) throw ValidationError("regions.corridor_step: must be > 0");
    std::string los = "nlos";
    r.read("los_model", los);
    if (los == "nlos") {
      s.los_model = LosModel::kNlosGround;
    } else if (los == "probabilistic") {
      s.los_model = LosModel::kProbabilistic;
    } else {
      throw ValidationError("regions.los_model: expected 'nlos' or 'probabilistic'");
    }
  }
  s.regions.validate();

  if (top.has("optimizer")) {
    const Reader o = top.child("optimizer");
    o.check_keys({"algorithm", "eta0_theta", "eta0_rho", "kappa", "eps1", "eps2",
                  "eps3", "max_outer", "max_inner", "init_tilt", "init_power",
                  "inactive_threshold_dbm"});
    OptimizerConfig& c = s.optimizer;
    if (o.has("algorithm")) {
      std::string name;
      o.read("algorithm", name);
      const auto algo = parse_algorithm(name);
      if (!algo) throw ValidationError("optimizer.algorithm: unknown '" + name + "'");
      c.algorithm = *algo;
    }
    c.eta0_theta = o.number("eta0_theta", c.eta0_theta);
    c.eta0_rho = o.number("eta0_rho", c.eta0_rho);
    c.kappa = o.number("kappa", c.kappa);
    c.eps1 = o.number("eps1", c.eps1);
    c.eps2 = o.number("eps2", c.eps2);
    c.eps3 = o.number("eps3", c.eps3);
    o.read("max_outer", c.max_outer);
    o.read("max_inner", c.max_inner);
    c.init_tilt = o.number("init_tilt", c.init_tilt);
    if (o.has("init_power")) c.init_power = o.number("init_power", 0.0);
    c.inactive_threshold_dbm =
        o.number("inactive_threshold_dbm", c.inactive_threshold_dbm);
  }
  s.optimizer.rho_max = rho_max;
  s.optimizer.validate();

  s.objective.kind = objective_kind(s.optimizer.algorithm);
  if (top.has("objective")) {
    const Reader ob = top.child("objective");
    ob.check_keys({"noise_dbm", "mu", "nu", "alpha", "xi"});
    if (ob.has("noise_dbm") && ob.at("noise_dbm").is_null()) {
      s.objective.sigma2 = 0.0;
    } else if (ob.has("noise_dbm")) {
      const double noise = ob.number("noise_dbm", -104.0);
      s.objective.sigma2 = dbm_to_mw(noise);
    }
    s.objective.mu = ob.number("mu", s.objective.mu);
    s.objective.nu = ob.number("nu", s.objective.nu);
    s.objective.alpha = ob.number("alpha", s.objective.alpha);
    s.objective.xi = ob.number("xi", s.objective.xi);
  }
  s.objective.validate();

  if (top.has("seed")) {
    top.read("seed", s.seed);
  }
  s.optimizer.seed = s.seed;
  return s;
}

json scenario_to_json(const Scenario& s) {
  const Deployment& d = s.deployment;
  json corridors = json::array();
  for (const Corridor& c : s.regions.corridors) {
    json cj = rect_json(c.area);
    cj["name"] = c.name;
    cj["height"] = c.height;
    corridors.push_back(cj);
  }
  json ground = rect_json(s.regions.ground);
  ground["height"] = s.regions.ground_height;
  const OptimizerConfig& o = s.optimizer;
  json doc = {
      {"deployment",
       {{"rings", s.rings},
        {"isd", s.isd},
        {"height", s.bs_height},
        {"theta_3db", d.pattern.theta_3db},
        {"phi_3db", d.pattern.phi_3db},
        {"a_max", d.pattern.a_max},
        {"rho_max", d.rho_max},
        {"pathloss",
         {{"uav_los", link_json(d.pathloss.uav_los)},
          {"gue_los", link_json(d.pathloss.gue_los)},
          {"gue_nlos", link_json(d.pathloss.gue_nlos)}}}}},
      {"regions",
       {{"ground", ground},
        {"corridors", corridors},
        {"mixing_ratio", s.regions.mixing_ratio},
        {"ground_step", s.ground_step},
        {"corridor_step", s.corridor_step},
        {"los_model",
         s.los_model == LosModel::kProbabilistic ? "probabilistic" : "nlos"}}},
      {"objective",
       {{"noise_dbm", s.objective.sigma2 > 0.0
                          ? json(10.0 * std::log10(s.objective.sigma2))
                          : json(nullptr)},
        {"mu", s.objective.mu},
        {"nu", s.objective.nu},
        {"alpha", s.objective.alpha},
        {"xi", s.objective.xi}}},
      {"optimizer",
       {{"algorithm", std::string(to_string(o.algorithm))},
        {"eta0_theta", o.eta0_theta},
        {"eta0_rho", o.eta0_rho},
        {"kappa", o.kappa},
        {"eps1", o.eps1},
        {"eps2", o.eps2},
        {"eps3", o.eps3},
        {"max_outer", o.max_outer},
        {"max_inner", o.max_inner},
        {"init_tilt", o.init_tilt},
        {"inactive_threshold_dbm", o.inactive_threshold_dbm}}},
      {"seed", s.seed},
  };
  // Left out when unset so the default follows the algorithm.
  if (o.init_power) doc["optimizer"]["init_power"] = *o.init_power;
  return doc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace corridor
