#include "neorl/cli/config.hpp"

#include "neorl/cli/csv.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>

namespace neorl::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

double as_double(const std::string& key, const std::string& v) {
  try {
    return parse_double(v);
  } catch (const std::invalid_argument&) {
    fail(key, "expected a number, got '" + v + "'");
  }
}

long as_long(const std::string& key, const std::string& v) {
  try {
    return parse_long(v);
  } catch (const std::invalid_argument&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

int as_int(const std::string& key, const std::string& v) {
  const long x = as_long(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(key, "out of range");
  return static_cast<int>(x);
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "expected true or false, got '" + v + "'");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"env.name", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         const auto& names = envs::environment_names();
         if (std::find(names.begin(), names.end(), v) == names.end()) fail(k, "unknown environment '" + v + "'");
         c.env_name = v;
       }},
      {"env.noise_std", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "default") c.env.noise_std.reset();
         else c.env.noise_std = as_double(k, v);
       }},
      {"env.action_repeat", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "default") c.env.action_repeat.reset();
         else c.env.action_repeat = as_int(k, v);
       }},
      {"env.reset_mode", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "default") c.env.reset_mode = envs::ResetMode::Default;
         else if (v == "never") c.env.reset_mode = envs::ResetMode::Never;
         else if (v == "on_predicate") c.env.reset_mode = envs::ResetMode::OnPredicate;
         else fail(k, "expected default, never or on_predicate, got '" + v + "'");
       }},
      {"env.pendulum_cost", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "squared") c.env.literal_pendulum_cost = false;
         else if (v == "literal") c.env.literal_pendulum_cost = true;
         else fail(k, "expected squared or literal, got '" + v + "'");
       }},
      {"agent.name", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         auto names = split_list(v);
         if (names.empty()) fail(k, "at least one agent is required");
         for (const auto& n : names) {
           try {
             planner::mode_from_agent_name(n);
           } catch (const std::invalid_argument&) {
             fail(k, "unknown agent '" + n + "' (expected neorl, nemean, nepets or nets)");
           }
         }
         c.agents = std::move(names);
       }},
      {"agent.num_samples", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.num_samples = as_int(k, v);
       }},
      {"agent.num_elites", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.num_elites = as_int(k, v);
       }},
      {"agent.optimizer_steps", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.optimizer_steps = as_int(k, v);
       }},
      {"agent.h_mpc", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.horizon = as_int(k, v);
       }},
      {"agent.particles", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.particles = as_int(k, v);
       }},
      {"agent.colored_noise_exponent", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.colored_noise_exponent = as_double(k, v);
       }},
      {"agent.elite_keep_fraction", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.elite_keep_fraction = as_double(k, v);
       }},
      {"agent.population_decay", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.population_decay = as_double(k, v);
       }},
      {"agent.init_std", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "auto") {
           c.planner.init_std.resize(0);
           return;
         }
         const auto items = split_list(v);
         c.planner.init_std.resize(static_cast<Eigen::Index>(items.size()));
         for (std::size_t i = 0; i < items.size(); ++i) c.planner.init_std[static_cast<Eigen::Index>(i)] = as_double(k, items[i]);
       }},
      {"agent.hallucination_init_std", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.hallucination_init_std = as_double(k, v);
       }},
      {"agent.plan_noise", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.planner.process_noise = as_bool(k, v);
       }},
      {"run.steps", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.steps = as_long(k, v); }},
      {"run.schedule", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "fixed") c.schedule.kind = runner::EpisodeSchedule::Kind::Fixed;
         else if (v == "doubling") c.schedule.kind = runner::EpisodeSchedule::Kind::Doubling;
         else fail(k, "expected fixed or doubling, got '" + v + "'");
       }},
      {"run.h", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.schedule.horizon = as_long(k, v);
       }},
      {"run.seeds", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         try {
           c.seeds = parse_seed_list(v);
         } catch (const std::invalid_argument& e) {
           fail(k, e.what());
         }
       }},
      {"run.a_star", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "oracle") {
           c.a_star_oracle = true;
         } else {
           c.a_star_oracle = false;
           c.a_star = as_double(k, v);
         }
       }},
      {"run.oracle_burn_in", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.oracle_burn_in = as_long(k, v);
       }},
      {"run.oracle_window", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.oracle_window = as_long(k, v);
       }},
      {"run.jobs", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.jobs = as_int(k, v); }},
      {"gp.kernel", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         try {
           c.gp.kernel.family = gp::kernel_family_from_string(v);
         } catch (const std::invalid_argument&) {
           fail(k, "unknown kernel '" + v + "'");
         }
       }},
      {"gp.lengthscale", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         const auto items = split_list(v);
         if (items.empty()) fail(k, "expected one or more numbers");
         c.gp.kernel.lengthscale.resize(static_cast<Eigen::Index>(items.size()));
         for (std::size_t i = 0; i < items.size(); ++i) {
           c.gp.kernel.lengthscale[static_cast<Eigen::Index>(i)] = as_double(k, items[i]);
         }
       }},
      {"gp.signal_variance", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.kernel.signal_variance = as_double(k, v);
       }},
      {"gp.noise_variance", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.noise_variance = as_double(k, v);
       }},
      {"gp.beta_schedule", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "fixed") c.gp.beta.kind = gp::BetaSchedule::Kind::Fixed;
         else if (v == "info_gain") c.gp.beta.kind = gp::BetaSchedule::Kind::InfoGainBased;
         else fail(k, "expected fixed or info_gain, got '" + v + "'");
       }},
      {"gp.beta", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.beta.value = as_double(k, v);
       }},
      {"gp.beta_B", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.beta.rkhs_bound = as_double(k, v);
       }},
      {"gp.delta", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.beta.delta = as_double(k, v);
       }},
      {"gp.target", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "delta") c.gp.target = gp::TargetMode::Delta;
         else if (v == "absolute") c.gp.target = gp::TargetMode::Absolute;
         else fail(k, "expected delta or absolute, got '" + v + "'");
       }},
      {"gp.standardize", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.standardize = as_bool(k, v);
       }},
      {"gp.output_scale", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (v == "none") {
           c.gp.output_scale.resize(0);
           return;
         }
         const auto items = split_list(v);
         if (items.empty()) fail(k, "expected one or more numbers or 'none'");
         c.gp.output_scale.resize(static_cast<Eigen::Index>(items.size()));
         for (std::size_t i = 0; i < items.size(); ++i) {
           c.gp.output_scale[static_cast<Eigen::Index>(i)] = as_double(k, items[i]);
         }
       }},
      {"gp.max_points", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.gp.max_points = as_int(k, v);
       }},
      {"output.dir", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(text)) {
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const long lo = parse_long(item.substr(0, dash));
      const long hi = parse_long(item.substr(dash + 1));
      if (lo < 0 || hi < lo) throw std::invalid_argument("bad seed range '" + item + "'");
      for (long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    } else {
      const long s = parse_long(item);
      if (s < 0) throw std::invalid_argument("seeds must be nonnegative");
      seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  return seeds;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

ConfigEntries parse_entries(const std::string& text) {
  ConfigEntries out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

ExperimentConfig defaults_for(const std::string& env_name) {
  ExperimentConfig c;
  c.env_name = env_name;
  auto& p = c.planner;
  c.gp.kernel = gp::make_kernel(gp::KernelFamily::Rbf, 1.0, 1.0);
  c.gp.noise_variance = 1e-3;
  // The physical systems use raw units with a fixed scale per output. Fitting
  // the scale from data shrinks it to whatever the agent has seen so far, which
  // leaves the model overconfident away from the data and stalls exploration.
  const auto raw_units = [&c](std::initializer_list<double> lengthscale, std::initializer_list<double> scale) {
    c.gp.standardize = false;
    c.gp.kernel.lengthscale = Eigen::Map<const Eigen::VectorXd>(lengthscale.begin(), static_cast<Eigen::Index>(lengthscale.size()));
    c.gp.output_scale = Eigen::Map<const Eigen::VectorXd>(scale.begin(), static_cast<Eigen::Index>(scale.size()));
    c.gp.noise_variance = 1e-4;
  };
  if (env_name == "pendulum") {
    raw_units({1.0, 1.0, 4.0, 2.0}, {0.2, 0.2, 0.6});
    p.num_samples = 500, p.num_elites = 50, p.optimizer_steps = 10, p.horizon = 20, p.particles = 5;
    c.schedule = runner::EpisodeSchedule::fixed(10);
    c.env.action_repeat = 1;
  } else if (env_name == "mountaincar") {
    raw_units({0.3, 0.03, 1.0}, {0.1, 0.005});
    p.num_samples = 1000, p.num_elites = 100, p.optimizer_steps = 5, p.horizon = 50, p.particles = 5;
    c.schedule = runner::EpisodeSchedule::fixed(10);
    c.env.action_repeat = 2;
  } else if (env_name == "cartpole" || env_name == "cartpole_balance") {
    raw_units({1.0, 1.0, 1.0, 2.0, 4.0, 1.0}, {0.05, 0.1, 0.1, 0.3, 0.6});
    p.num_samples = 1000, p.num_elites = 100, p.optimizer_steps = 10, p.horizon = 50, p.particles = 5;
    c.schedule = runner::EpisodeSchedule::fixed(10);
    c.env.action_repeat = 2;
  } else if (env_name == "dummy" || env_name == "linear1d") {
    p.num_samples = 100, p.num_elites = 10, p.optimizer_steps = 3, p.horizon = 5, p.particles = 1;
    c.schedule = runner::EpisodeSchedule::fixed(10);
    c.steps = 100;
  } else {
    throw ConfigError("env.name: unknown environment '" + env_name + "'");
  }
  return c;
}

ExperimentConfig build_config(const ConfigEntries& entries) {
  std::string env_name = "pendulum";
  for (const auto& [k, v] : entries) {
    if (k == "env.name") env_name = v;
  }
  const auto& names = envs::environment_names();
  if (std::find(names.begin(), names.end(), env_name) == names.end()) {
    throw ConfigError("env.name: unknown environment '" + env_name + "'");
  }
  ExperimentConfig cfg = defaults_for(env_name);
  const auto& table = setters();
  for (const auto& [k, v] : entries) {
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == k; });
    if (it == table.end()) throw ConfigError(k + ": unknown configuration key");
    it->second(cfg, k, v);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) { return build_config(parse_entries(text)); }

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void ExperimentConfig::validate() const {
  const auto& p = planner;
  if (env.noise_std && !(*env.noise_std >= 0.0)) fail("env.noise_std", "must be >= 0");
  if (env.action_repeat && *env.action_repeat < 1) fail("env.action_repeat", "must be >= 1");
  if (p.num_samples < 1) fail("agent.num_samples", "must be >= 1");
  if (p.num_elites < 1) fail("agent.num_elites", "must be >= 1");
  if (p.num_elites > p.num_samples) {
    fail("agent.num_elites", "must not exceed agent.num_samples (num_elites <= num_samples)");
  }
  if (p.optimizer_steps < 1) fail("agent.optimizer_steps", "must be >= 1");
  if (p.horizon < 1) fail("agent.h_mpc", "must be >= 1");
  if (p.particles < 1) fail("agent.particles", "must be >= 1");
  if (!(p.colored_noise_exponent >= 0.0)) fail("agent.colored_noise_exponent", "must be >= 0");
  if (!(p.elite_keep_fraction >= 0.0 && p.elite_keep_fraction <= 1.0)) {
    fail("agent.elite_keep_fraction", "must lie in [0, 1]");
  }
  if (!(p.population_decay >= 1.0)) fail("agent.population_decay", "must be >= 1");
  if (p.init_std.size() > 0 && !(p.init_std.array() > 0.0).all()) fail("agent.init_std", "must be positive");
  if (!(p.hallucination_init_std > 0.0)) fail("agent.hallucination_init_std", "must be > 0");
  if (steps < 1) fail("run.steps", "must be >= 1");
  if (schedule.horizon < 1) fail("run.h", "must be >= 1");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) fail("run.seeds", "seeds must be distinct");
  if (std::set<std::string>(agents.begin(), agents.end()).size() != agents.size()) {
    fail("agent.name", "agents must be distinct");
  }
  if (oracle_burn_in < 0) fail("run.oracle_burn_in", "must be >= 0");
  if (oracle_window < 1) fail("run.oracle_window", "must be >= 1");
  if (jobs < 1) fail("run.jobs", "must be >= 1");
  if (!std::isfinite(a_star)) fail("run.a_star", "must be finite");
  try {
    gp.kernel.validate(gp.kernel.lengthscale.size() == 1 ? 1 : gp.kernel.lengthscale.size());
  } catch (const std::invalid_argument& e) {
    fail("gp.kernel", e.what());
  }
  if (!(gp.noise_variance > 0.0)) fail("gp.noise_variance", "must be > 0");
  if (gp.beta.kind == gp::BetaSchedule::Kind::Fixed && !(gp.beta.value >= 0.0)) fail("gp.beta", "must be >= 0");
  if (!(gp.beta.delta > 0.0 && gp.beta.delta <= 1.0)) fail("gp.delta", "must lie in (0, 1]");
  if (!(gp.beta.rkhs_bound >= 0.0)) fail("gp.beta_B", "must be >= 0");
  if (gp.max_points < 0) fail("gp.max_points", "must be >= 0");
  if (!(gp.output_scale.array() > 0.0).all()) fail("gp.output_scale", "entries must be > 0");
  if (output_dir.empty()) fail("output.dir", "must not be empty");
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream o;
  auto line = [&](const std::string& k, const std::string& v) { o << k << " = " << v << '\n'; };
  auto vec = [](const Eigen::VectorXd& v) {
    std::vector<std::string> items;
    for (Eigen::Index i = 0; i < v.size(); ++i) items.push_back(format_double(v[i]));
    return join(items);
  };
  line("env.name", c.env_name);
  line("env.noise_std", c.env.noise_std ? format_double(*c.env.noise_std) : "default");
  line("env.action_repeat", c.env.action_repeat ? std::to_string(*c.env.action_repeat) : "default");
  line("env.reset_mode", c.env.reset_mode == envs::ResetMode::Default  ? "default"
                         : c.env.reset_mode == envs::ResetMode::Never ? "never"
                                                                      : "on_predicate");
  line("env.pendulum_cost", c.env.literal_pendulum_cost ? "literal" : "squared");
  line("agent.name", join(c.agents));
  line("agent.num_samples", std::to_string(c.planner.num_samples));
  line("agent.num_elites", std::to_string(c.planner.num_elites));
  line("agent.optimizer_steps", std::to_string(c.planner.optimizer_steps));
  line("agent.h_mpc", std::to_string(c.planner.horizon));
  line("agent.particles", std::to_string(c.planner.particles));
  line("agent.colored_noise_exponent", format_double(c.planner.colored_noise_exponent));
  line("agent.elite_keep_fraction", format_double(c.planner.elite_keep_fraction));
  line("agent.population_decay", format_double(c.planner.population_decay));
  line("agent.init_std", c.planner.init_std.size() == 0 ? "auto" : vec(c.planner.init_std));
  line("agent.hallucination_init_std", format_double(c.planner.hallucination_init_std));
  line("agent.plan_noise", c.planner.process_noise ? "true" : "false");
  line("run.steps", std::to_string(c.steps));
  line("run.schedule", c.schedule.kind == runner::EpisodeSchedule::Kind::Fixed ? "fixed" : "doubling");
  line("run.h", std::to_string(c.schedule.horizon));
  std::vector<std::string> seeds;
  for (auto s : c.seeds) seeds.push_back(std::to_string(s));
  line("run.seeds", join(seeds));
  line("run.a_star", c.a_star_oracle ? "oracle" : format_double(c.a_star));
  line("run.oracle_burn_in", std::to_string(c.oracle_burn_in));
  line("run.oracle_window", std::to_string(c.oracle_window));
  line("run.jobs", std::to_string(c.jobs));
  line("gp.kernel", gp::to_string(c.gp.kernel.family));
  line("gp.lengthscale", vec(c.gp.kernel.lengthscale));
  line("gp.signal_variance", format_double(c.gp.kernel.signal_variance));
  line("gp.noise_variance", format_double(c.gp.noise_variance));
  line("gp.beta_schedule", c.gp.beta.kind == gp::BetaSchedule::Kind::Fixed ? "fixed" : "info_gain");
  line("gp.beta", format_double(c.gp.beta.value));
  line("gp.beta_B", format_double(c.gp.beta.rkhs_bound));
  line("gp.delta", format_double(c.gp.beta.delta));
  line("gp.target", c.gp.target == gp::TargetMode::Delta ? "delta" : "absolute");
  line("gp.standardize", c.gp.standardize ? "true" : "false");
  line("gp.output_scale", c.gp.output_scale.size() == 0 ? std::string("none") : vec(c.gp.output_scale));
  line("gp.max_points", std::to_string(c.gp.max_points));
  line("output.dir", c.output_dir);
  return o.str();
}

}  // namespace neorl::cli
