#include "gausscap/channel_io.hpp"

#include <fstream>
#include <sstream>

namespace gausscap {

namespace {

nlohmann::json flatten(const Matrix& m) {
  auto arr = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

Matrix unflatten(const nlohmann::json& arr, Index rows, Index cols, const char* name) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorCode::ParseError, std::string(name) + " must be a flat array of " +
                                           std::to_string(rows * cols) + " numbers");
  }
  Matrix m(rows, cols);
  std::size_t i = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, ++i) {
      if (!arr[i].is_number()) {
        throw Error(ErrorCode::ParseError, std::string(name) + " entries must be numbers");
      }
      m(r, c) = arr[i].get<double>();
    }
  }
  return m;
}

template <class T>
T required(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

nlohmann::json channel_to_json(const GaussianChannel& ch) {
  nlohmann::json doc;
  doc["n_in"] = ch.in_modes();
  doc["n_out"] = ch.out_modes();
  doc["H_s"] = flatten(ch.hs().matrix());
  doc["Y"] = flatten(ch.y());
  doc["n"] = ch.noise().n;
  doc["xi"] = ch.noise().xi;
  return doc;
}

GaussianChannel channel_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "channel document must be an object");
  const auto n_in = required<long long>(doc, "n_in");
  const auto n_out = required<long long>(doc, "n_out");
  if (n_in < 1 || n_out < 1) {
    throw Error(ErrorCode::ParseError, "n_in and n_out must be positive");
  }
  Matrix hs = unflatten(doc.at("H_s"), 2 * n_out, 2 * n_in, "H_s");
  if (!doc.contains("Y")) throw Error(ErrorCode::ParseError, "missing field \"Y\"");
  Matrix y = unflatten(doc.at("Y"), 2 * n_out, 2 * n_out, "Y");
  NoiseParams noise;
  noise.n = doc.contains("n") ? required<double>(doc, "n") : 0.0;
  noise.xi = doc.contains("xi") ? required<double>(doc, "xi") : 0.0;
  try {
    return GaussianChannel(PhaseSpaceMatrix(std::move(hs)), std::move(y), noise);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump_channel(const GaussianChannel& ch) { return channel_to_json(ch).dump(); }

GaussianChannel parse_channel(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return channel_from_json(doc);
}

GaussianChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open channel file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel(buf.str());
}

void save_channel_file(const GaussianChannel& ch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << channel_to_json(ch).dump(2) << '\n';
}

}  // namespace gausscap
