#include "nnapprox/network_json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nnapprox/error.hpp"

namespace nnapprox {

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string network_to_json(const Network& net) {
  if (net.activation().kind() == ActivationKind::General) {
    throw Error("networks with a general sign-selector activation cannot be serialized");
  }
  std::string out;
  out += "{\"activation\": \"";
  out += net.activation().name();
  out += "\", \"weights\": [";
  bool first_layer = true;
  for (const auto& w : net.weights()) {
    if (!first_layer) out += ", ";
    first_layer = false;
    out += '[';
    const auto dense = w.to_dense();
    for (std::size_t r = 0; r < w.rows(); ++r) {
      if (r > 0) out += ", ";
      out += '[';
      for (std::size_t c = 0; c < w.cols(); ++c) {
        if (c > 0) out += ", ";
        out += format_real(dense[r * w.cols() + c]);
      }
      out += ']';
    }
    out += ']';
  }
  out += "], \"meta\": ";
  out += net.meta().dump();
  out += "}\n";
  return out;
}

Network network_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("activation") || !doc.contains("weights")) {
    throw Error("network JSON: expected an object with 'activation' and 'weights'");
  }
  const auto activation = Activation::from_name(doc.at("activation").get<std::string>());
  std::vector<Matrix> weights;
  for (const auto& layer : doc.at("weights")) {
    weights.push_back(Matrix::from_rows(layer.get<std::vector<std::vector<double>>>()));
  }
  Network::Meta meta = doc.contains("meta") ? doc.at("meta") : Network::Meta::object();
  return Network(activation, std::move(weights), std::move(meta));
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open network file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write network file '" + path + "'");
  out << network_to_json(net);
}

}  // namespace nnapprox
