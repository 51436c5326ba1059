#include "eslab/harness/config.hpp"

#include <fstream>
#include <set>

#include "eslab/harness/digest.hpp"

namespace eslab::cli {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& section,
                  const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.count(key))
      throw ConfigError("config: unknown key \"" + key + "\" in " + section);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for " + where + "." + key + ": " +
                      e.what());
  }
}

void parse_network(const json& j, net::NetworkConfig& cfg) {
  require_keys(j, "network",
               {"area_width_m", "area_height_m", "ru_positions", "rcs_per_ru",
                "band_frequencies_hz", "tx_power_dbm", "rss_min_dbm",
                "capacity_max", "num_ues", "speed_of_light_mps",
                "min_distance_m"});
  read(j, "area_width_m", cfg.area_width_m, "network");
  read(j, "area_height_m", cfg.area_height_m, "network");
  if (j.contains("ru_positions")) {
    const auto& arr = j.at("ru_positions");
    if (!arr.is_array())
      throw ConfigError("config: network.ru_positions must be an array");
    cfg.ru_positions.clear();
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 2)
        throw ConfigError(
            "config: each network.ru_positions entry must be [x, y]");
      cfg.ru_positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  read(j, "rcs_per_ru", cfg.rcs_per_ru, "network");
  read(j, "band_frequencies_hz", cfg.band_frequencies_hz, "network");
  read(j, "tx_power_dbm", cfg.tx_power_dbm, "network");
  read(j, "rss_min_dbm", cfg.rss_min_dbm, "network");
  read(j, "capacity_max", cfg.capacity_max, "network");
  read(j, "num_ues", cfg.num_ues, "network");
  read(j, "speed_of_light_mps", cfg.speed_of_light_mps, "network");
  read(j, "min_distance_m", cfg.min_distance_m, "network");
}

void parse_reward(const json& j, mdp::RewardWeights& w) {
  require_keys(j, "reward",
               {"mode", "w_off", "w_on", "rss_ok_bonus", "rss_breach_penalty",
                "cap_ok_per_rc", "cap_breach_per_rc"});
  if (j.contains("mode")) {
    try {
      w = mdp::RewardWeights::for_mode(
          mdp::reward_mode_from_string(j.at("mode").get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: reward.mode: ") + e.what());
    }
  }
  read(j, "w_off", w.w_off, "reward");
  read(j, "w_on", w.w_on, "reward");
  read(j, "rss_ok_bonus", w.rss_ok_bonus, "reward");
  read(j, "rss_breach_penalty", w.rss_breach_penalty, "reward");
  read(j, "cap_ok_per_rc", w.cap_ok_per_rc, "reward");
  read(j, "cap_breach_per_rc", w.cap_breach_per_rc, "reward");
}

void parse_dqn(const json& j, train::TrainConfig& t) {
  require_keys(j, "dqn",
               {"episodes", "steps_per_episode", "batch_size",
                "buffer_capacity", "gamma", "learning_rate", "weight_decay",
                "target_sync_every", "eps_start", "eps_end", "eps_decay_steps",
                "hidden_dims", "warmup", "grad_clip_norm", "checkpoint_every"});
  read(j, "episodes", t.episodes, "dqn");
  read(j, "steps_per_episode", t.steps_per_episode, "dqn");
  read(j, "batch_size", t.batch_size, "dqn");
  read(j, "buffer_capacity", t.buffer_capacity, "dqn");
  read(j, "gamma", t.gamma, "dqn");
  read(j, "learning_rate", t.learning_rate, "dqn");
  read(j, "weight_decay", t.weight_decay, "dqn");
  read(j, "target_sync_every", t.target_sync_every, "dqn");
  read(j, "eps_start", t.eps_start, "dqn");
  read(j, "eps_end", t.eps_end, "dqn");
  read(j, "eps_decay_steps", t.eps_decay_steps, "dqn");
  read(j, "hidden_dims", t.hidden_dims, "dqn");
  read(j, "checkpoint_every", t.checkpoint_every, "dqn");
  read(j, "grad_clip_norm", t.grad_clip_norm, "dqn");
  if (j.contains("warmup")) {
    const auto s = j.at("warmup").get<std::string>();
    if (s == "batch")
      t.warmup = train::WarmupRule::kBatchReady;
    else if (s == "full_buffer")
      t.warmup = train::WarmupRule::kBufferFull;
    else
      throw ConfigError("config: dqn.warmup must be \"batch\" or "
                        "\"full_buffer\", got \"" + s + "\"");
  }
}

void parse_eval(const json& j, EvalSection& e) {
  require_keys(j, "eval", {"episodes"});
  read(j, "episodes", e.episodes, "eval");
}

void parse_bench(const json& j, BenchSection& b) {
  require_keys(j, "bench", {"policies", "ue_counts", "sims"});
  read(j, "policies", b.policies, "bench");
  read(j, "ue_counts", b.ue_counts, "bench");
  read(j, "sims", b.sims, "bench");
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(doc, "top level", {"network", "reward", "dqn", "eval", "bench"});

  RunConfig cfg;
  if (doc.contains("network")) parse_network(doc["network"], cfg.network);
  if (doc.contains("reward")) parse_reward(doc["reward"], cfg.reward);
  if (doc.contains("dqn")) parse_dqn(doc["dqn"], cfg.dqn);
  if (doc.contains("eval")) parse_eval(doc["eval"], cfg.eval);
  if (doc.contains("bench")) parse_bench(doc["bench"], cfg.bench);

  try {
    cfg.network.validate();
    cfg.trainer_config().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json network;
  network["area_width_m"] = cfg.network.area_width_m;
  network["area_height_m"] = cfg.network.area_height_m;
  json positions = json::array();
  for (const auto& p : cfg.network.ru_positions)
    positions.push_back({p.x, p.y});
  network["ru_positions"] = std::move(positions);
  network["rcs_per_ru"] = cfg.network.rcs_per_ru;
  network["band_frequencies_hz"] = cfg.network.band_frequencies_hz;
  network["tx_power_dbm"] = cfg.network.tx_power_dbm;
  network["rss_min_dbm"] = cfg.network.rss_min_dbm;
  network["capacity_max"] = cfg.network.capacity_max;
  network["num_ues"] = cfg.network.num_ues;
  network["speed_of_light_mps"] = cfg.network.speed_of_light_mps;
  network["min_distance_m"] = cfg.network.min_distance_m;

  json reward;
  reward["mode"] = mdp::to_string(cfg.reward.mode);
  reward["w_off"] = cfg.reward.w_off;
  reward["w_on"] = cfg.reward.w_on;
  reward["rss_ok_bonus"] = cfg.reward.rss_ok_bonus;
  reward["rss_breach_penalty"] = cfg.reward.rss_breach_penalty;
  reward["cap_ok_per_rc"] = cfg.reward.cap_ok_per_rc;
  reward["cap_breach_per_rc"] = cfg.reward.cap_breach_per_rc;

  json dqn;
  dqn["episodes"] = cfg.dqn.episodes;
  dqn["steps_per_episode"] = cfg.dqn.steps_per_episode;
  dqn["batch_size"] = cfg.dqn.batch_size;
  dqn["buffer_capacity"] = cfg.dqn.buffer_capacity;
  dqn["gamma"] = cfg.dqn.gamma;
  dqn["learning_rate"] = cfg.dqn.learning_rate;
  dqn["weight_decay"] = cfg.dqn.weight_decay;
  dqn["target_sync_every"] = cfg.dqn.target_sync_every;
  dqn["eps_start"] = cfg.dqn.eps_start;
  dqn["eps_end"] = cfg.dqn.eps_end;
  dqn["eps_decay_steps"] = cfg.dqn.eps_decay_steps;
  dqn["hidden_dims"] = cfg.dqn.hidden_dims;
  dqn["warmup"] =
      cfg.dqn.warmup == train::WarmupRule::kBatchReady ? "batch" : "full_buffer";
  dqn["grad_clip_norm"] = cfg.dqn.grad_clip_norm;
  dqn["checkpoint_every"] = cfg.dqn.checkpoint_every;

  json eval;
  eval["episodes"] = cfg.eval.episodes;

  json bench;
  bench["policies"] = cfg.bench.policies;
  bench["ue_counts"] = cfg.bench.ue_counts;
  bench["sims"] = cfg.bench.sims;

  json doc;
  doc["network"] = std::move(network);
  doc["reward"] = std::move(reward);
  doc["dqn"] = std::move(dqn);
  doc["eval"] = std::move(eval);
  doc["bench"] = std::move(bench);
  return doc;
}

std::string config_digest(const RunConfig& cfg) {
  return sha256_hex(to_json(cfg).dump());
}

}  // namespace eslab::cli
