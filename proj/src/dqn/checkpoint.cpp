#include "eslab/dqn/checkpoint.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace eslab::dqn {

namespace {

using nlohmann::json;

json matrix_to_json(const MatrixX<float>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back(m(i, j));
  return rows;
}

json vector_to_json(const VectorX<float>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatrixX<float> matrix_from_json(const json& j, int rows, int cols,
                                const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    throw std::runtime_error(std::string("checkpoint: bad ") + what +
                             " array length");
  MatrixX<float> m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = j[idx++].get<float>();
  return m;
}

VectorX<float> vector_from_json(const json& j, int size, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw std::runtime_error(std::string("checkpoint: bad ") + what +
                             " array length");
  VectorX<float> v(size);
  for (int i = 0; i < size; ++i) v(i) = j[i].get<float>();
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const QNetwork<float>& net,
                     const CheckpointMeta& meta,
                     const AdamWState<float>* optimizer_state) {
  json doc;
  doc["format_version"] = kCheckpointFormatVersion;
  doc["created_utc"] = meta.created_utc;
  doc["config_digest"] = meta.config_digest;
  doc["encoding_variant"] = meta.encoding_variant;
  doc["layer_dims"] = net.layer_dims;
  json weights = json::array();
  json biases = json::array();
  for (int l = 0; l < net.num_layers(); ++l) {
    weights.push_back(matrix_to_json(net.weights[l]));
    biases.push_back(vector_to_json(net.biases[l]));
  }
  doc["weights"] = std::move(weights);
  doc["biases"] = std::move(biases);
  if (optimizer_state) {
    json opt;
    opt["step"] = optimizer_state->step;
    json mw = json::array(), vw = json::array(), mb = json::array(),
         vb = json::array();
    for (int l = 0; l < net.num_layers(); ++l) {
      mw.push_back(matrix_to_json(optimizer_state->m_weights[l]));
      vw.push_back(matrix_to_json(optimizer_state->v_weights[l]));
      mb.push_back(vector_to_json(optimizer_state->m_biases[l]));
      vb.push_back(vector_to_json(optimizer_state->v_biases[l]));
    }
    opt["m_weights"] = std::move(mw);
    opt["v_weights"] = std::move(vw);
    opt["m_biases"] = std::move(mb);
    opt["v_biases"] = std::move(vb);
    doc["optimizer_state"] = std::move(opt);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("checkpoint: cannot open for write: " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("checkpoint: parse error in " + path + ": " +
                             e.what());
  }
  if (!doc.contains("format_version") ||
      doc["format_version"].get<int>() != kCheckpointFormatVersion)
    throw std::runtime_error("checkpoint: unknown format_version in " + path);

  Checkpoint ckpt;
  ckpt.meta.created_utc = doc.value("created_utc", "");
  ckpt.meta.config_digest = doc.value("config_digest", "");
  ckpt.meta.encoding_variant = doc.value("encoding_variant", "");

  auto& net = ckpt.net;
  net.layer_dims = doc.at("layer_dims").get<std::vector<int>>();
  if (net.layer_dims.size() < 2)
    throw std::runtime_error("checkpoint: layer_dims too short");
  const int layers = static_cast<int>(net.layer_dims.size()) - 1;
  const auto& jw = doc.at("weights");
  const auto& jb = doc.at("biases");
  if (static_cast<int>(jw.size()) != layers ||
      static_cast<int>(jb.size()) != layers)
    throw std::runtime_error("checkpoint: layer count mismatch");
  for (int l = 0; l < layers; ++l) {
    const int out = net.layer_dims[l + 1];
    const int in = net.layer_dims[l];
    net.weights.push_back(matrix_from_json(jw[l], out, in, "weight"));
    net.biases.push_back(vector_from_json(jb[l], out, "bias"));
  }

  if (doc.contains("optimizer_state")) {
    const auto& jo = doc["optimizer_state"];
    AdamWState<float> opt;
    opt.step = jo.at("step").get<long>();
    for (int l = 0; l < layers; ++l) {
      const int out = net.layer_dims[l + 1];
      const int in = net.layer_dims[l];
      opt.m_weights.push_back(
          matrix_from_json(jo.at("m_weights")[l], out, in, "m_weights"));
      opt.v_weights.push_back(
          matrix_from_json(jo.at("v_weights")[l], out, in, "v_weights"));
      opt.m_biases.push_back(
          vector_from_json(jo.at("m_biases")[l], out, "m_biases"));
      opt.v_biases.push_back(
          vector_from_json(jo.at("v_biases")[l], out, "v_biases"));
    }
    ckpt.optimizer_state = std::move(opt);
  }
  return ckpt;
}

}  // namespace eslab::dqn
