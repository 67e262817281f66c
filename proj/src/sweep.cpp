#include "rydnm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace rydnm {

namespace {

using nlohmann::json;

const char* const kSweepableNames[] = {"R",       "RD1",     "RD2",
                                       "omega_p", "omega_c", "delta_p",
                                       "delta_c", "gamma_p", "J",
                                       "U1",      "U2"};

bool is_sweepable(const std::string& name) {
  for (const char* candidate : kSweepableNames) {
    if (name == candidate) return true;
  }
  return false;
}

bool is_distance(const std::string& name) {
  return name == "R" || name == "RD1" || name == "RD2";
}

bool is_coupling(const std::string& name) {
  return name == "J" || name == "U1" || name == "U2";
}

void apply_one(ScenarioConfig& cfg, const std::string& name, double value) {
  if (is_distance(name)) {
    if (!cfg.physics.geometry) {
      throw ConfigError("parameters",
                        "sweeping " + name + " requires a geometry-mode base");
    }
    if (value <= 0.0) {
      throw ConfigError("parameters", name + " must be > 0");
    }
    if (name == "R") cfg.physics.geometry->r_um = value;
    else if (name == "RD1") cfg.physics.geometry->rd1_um = value;
    else cfg.physics.geometry->rd2_um = value;
    return;
  }
  if (is_coupling(name)) {
    if (cfg.physics.geometry) {
      const EffectiveCouplings derived =
          derive_couplings(*cfg.physics.geometry, cfg.physics.coefficients);
      cfg.physics.j_mhz = derived.j_mhz();
      cfg.physics.u1_mhz = derived.u1_mhz();
      cfg.physics.u2_mhz = derived.u2_mhz();
      cfg.physics.geometry.reset();
    }
    if (name == "J") cfg.physics.j_mhz = value;
    else if (name == "U1") cfg.physics.u1_mhz = value;
    else cfg.physics.u2_mhz = value;
    return;
  }
  auto& lasers = cfg.physics.lasers;
  if (name == "omega_p") lasers.omega_p_mhz = value;
  else if (name == "omega_c") lasers.omega_c_mhz = value;
  else if (name == "delta_p") lasers.delta_p_mhz = value;
  else if (name == "delta_c") lasers.delta_c_mhz = value;
  else if (name == "gamma_p") lasers.gamma_p_mhz = value;
  if ((name == "omega_p" || name == "omega_c" || name == "gamma_p") &&
      value < 0.0) {
    throw ConfigError("parameters", name + " must be >= 0");
  }
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

}  // namespace

SweepSpec sweep_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "expected an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "base" && item.key() != "parameters") {
      throw ConfigError(item.key(), "unknown key");
    }
  }
  if (!doc.contains("base")) throw ConfigError("base", "required");
  if (!doc.contains("parameters")) throw ConfigError("parameters", "required");

  SweepSpec spec;
  spec.base = config_from_json(doc.at("base"));
  const json& params = doc.at("parameters");
  if (!params.is_array() || params.empty() || params.size() > 2) {
    throw ConfigError("parameters", "expected an array of one or two entries");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const json& entry = params[i];
    const std::string path = "parameters[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ConfigError(path, "expected an object");
    for (const auto& item : entry.items()) {
      if (item.key() != "name" && item.key() != "min" && item.key() != "max" &&
          item.key() != "steps") {
        throw ConfigError(path + "." + item.key(), "unknown key");
      }
    }
    SweepParameter p;
    if (!entry.contains("name") || !entry.at("name").is_string()) {
      throw ConfigError(path + ".name", "expected a string");
    }
    p.name = entry.at("name").get<std::string>();
    if (!is_sweepable(p.name)) {
      throw ConfigError(path + ".name", "not a sweepable parameter: " + p.name);
    }
    if (!entry.contains("min") || !entry.at("min").is_number() ||
        !entry.contains("max") || !entry.at("max").is_number()) {
      throw ConfigError(path, "min and max are required numbers");
    }
    p.min = entry.at("min").get<double>();
    p.max = entry.at("max").get<double>();
    if (!entry.contains("steps") || !entry.at("steps").is_number_integer()) {
      throw ConfigError(path + ".steps", "expected an integer");
    }
    p.steps = entry.at("steps").get<int>();
    if (p.steps < 2) throw ConfigError(path + ".steps", "must be >= 2");
    spec.parameters.push_back(std::move(p));
  }
  return spec;
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError("", std::string("invalid JSON: ") + err.what());
  }
  return sweep_from_json(doc);
}

ScenarioConfig apply_sweep_values(const SweepSpec& spec,
                                  const std::vector<double>& values) {
  ScenarioConfig cfg = spec.base;
  for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
    apply_one(cfg, spec.parameters[i].name, values[i]);
  }
  return cfg;
}

double envelope_half_life(const std::vector<double>& times,
                          const std::vector<double>& pop1) {
  const double final_value = pop1.back();
  const double bound = 0.5 * std::abs(pop1.front() - final_value);
  std::size_t earliest = pop1.size() - 1;
  for (std::size_t i = pop1.size(); i-- > 0;) {
    if (std::abs(pop1[i] - final_value) <= bound) {
      earliest = i;
    } else {
      break;
    }
  }
  return times[earliest];
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, int threads) {
  std::vector<long> shape;
  long total = 1;
  for (const SweepParameter& p : spec.parameters) {
    shape.push_back(p.steps);
    total *= p.steps;
  }

  std::vector<SweepCell> cells(total);
  for (long index = 0; index < total; ++index) {
    SweepCell& cell = cells[index];
    cell.index = index;
    long rest = index;
    for (std::size_t axis = spec.parameters.size(); axis-- > 0;) {
      const long i = rest % shape[axis];
      rest /= shape[axis];
      const SweepParameter& p = spec.parameters[axis];
      const double value =
          p.min + (p.max - p.min) * static_cast<double>(i) / (p.steps - 1);
      cell.values.insert(cell.values.begin(), value);
    }
  }

  const auto run_cell = [&spec](SweepCell& cell) {
    try {
      ScenarioConfig cfg = apply_sweep_values(spec, cell.values);
      const ScenarioResult result = run_scenario_in_memory(cfg);
      cell.n = result.summary.nm.n;
      cell.half_life_us =
          envelope_half_life(result.traj1.times, result.traj1.pop1);
      cell.steady_pop1 = result.summary.final_pop1_rho1;
      cell.ok = true;
    } catch (const std::exception& err) {
      cell.ok = false;
      cell.error = err.what();
    }
  };

  int pool_size = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  pool_size = std::max(1, std::min<int>(pool_size, total));
  if (pool_size == 1) {
    for (SweepCell& cell : cells) run_cell(cell);
    return cells;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (int t = 0; t < pool_size; ++t) {
    pool.emplace_back([&]() {
      for (long i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
        run_cell(cells[i]);
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  return cells;
}

std::string sweep_csv(const SweepSpec& spec,
                      const std::vector<SweepCell>& cells) {
  std::string out = "cell";
  for (const SweepParameter& p : spec.parameters) {
    out += ',';
    out += p.name;
  }
  out += ",N,half_life_us,steady_pop1,status\n";
  for (const SweepCell& cell : cells) {
    out += std::to_string(cell.index);
    for (double value : cell.values) {
      out += ',';
      out += format_double(value);
    }
    if (cell.ok) {
      out += ',' + format_double(cell.n);
      out += ',' + format_double(cell.half_life_us);
      out += ',' + format_double(cell.steady_pop1);
      out += ",ok\n";
    } else {
      out += ",nan,nan,nan,error: " + sanitize(cell.error) + "\n";
    }
  }
  return out;
}

}  // namespace rydnm
