#include "ultab/io.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace ultab {

using nlohmann::json;

namespace {

json poset_json(const Poset& p) {
  json j;
  j["worlds"] = p.names();
  json covers = json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.name(a), p.name(b)});
  j["covers"] = covers;
  if (p.root()) j["root"] = p.name(*p.root());
  return j;
}

Poset poset_from(const json& j) {
  if (!j.is_object() || !j.contains("worlds") || !j.contains("covers"))
    throw SchemaError("poset: expected an object with worlds and covers");
  std::vector<std::string> names;
  for (const auto& w : j.at("worlds")) {
    if (!w.is_string()) throw SchemaError("poset.worlds: world names must be strings");
    names.push_back(w.get<std::string>());
  }
  auto index = [&](const std::string& n, const char* where) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw SchemaError(std::string(where) + ": unknown world '" + n + "'");
  };
  std::vector<std::pair<int, int>> covers;
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2)
      throw SchemaError("poset.covers: each cover must be a [lower, upper] pair");
    covers.emplace_back(index(c[0].get<std::string>(), "poset.covers"),
                        index(c[1].get<std::string>(), "poset.covers"));
  }
  std::optional<int> root;
  if (j.contains("root")) root = index(j.at("root").get<std::string>(), "poset.root");
  try {
    return Poset::from_covers(std::move(names), covers, root);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("poset: ") + e.what());
  }
}

std::string bits(Color c, std::size_t width) {
  std::string s;
  for (std::size_t i = 0; i < width; ++i) s += (c >> i) & 1 ? '1' : '0';
  return s;
}

}  // namespace

std::string poset_to_json(const Poset& p, int indent) {
  return poset_json(p).dump(indent);
}

Poset poset_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid json: ") + e.what());
  }
  return poset_from(j);
}

std::string model_to_json(const Model& m, int indent) {
  json j = poset_json(m.frame);
  j["vars"] = m.vars;
  json colors = json::object();
  for (int w = 0; w < m.frame.size(); ++w)
    colors[m.frame.name(w)] = bits(m.color[w], m.vars.size());
  j["colors"] = colors;
  return j.dump(indent);
}

Model model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid json: ") + e.what());
  }
  Poset frame = poset_from(j);
  if (!j.contains("vars") || !j.contains("colors"))
    throw SchemaError("model: expected vars and colors");
  std::vector<std::string> vars;
  for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
  std::vector<Color> color(frame.size(), 0);
  const auto& colors = j.at("colors");
  for (int w = 0; w < frame.size(); ++w) {
    const std::string& name = frame.name(w);
    if (!colors.contains(name))
      throw SchemaError("model.colors: missing world '" + name + "'");
    const std::string s = colors.at(name).get<std::string>();
    if (s.size() != vars.size())
      throw SchemaError("model.colors['" + name + "']: bitstring length != vars");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1')
        throw SchemaError("model.colors['" + name + "']: bitstring must be 0/1");
      if (s[i] == '1') color[w] |= Color{1} << i;
    }
  }
  try {
    return Model(std::move(frame), std::move(vars), std::move(color));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("model: ") + e.what());
  }
}

bool json_is_model(const std::string& text) {
  try {
    json j = json::parse(text);
    return j.is_object() && j.contains("vars");
  } catch (const json::parse_error&) {
    return false;
  }
}

namespace {

std::string dot_impl(const Poset& p, const std::vector<std::string>* labels) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n";
  std::map<int, std::vector<int>> by_depth;
  for (int i = 0; i < p.size(); ++i) by_depth[p.depth_of(i)].push_back(i);
  for (int i = 0; i < p.size(); ++i) {
    os << "  \"" << p.name(i) << "\"";
    std::string label = p.name(i);
    if (labels) label += "\\n" + (*labels)[i];
    os << " [label=\"" << label << "\"";
    if (p.root() && *p.root() == i) os << ", penwidth=2";
    os << "];\n";
  }
  for (auto& [d, ws] : by_depth) {
    os << "  { rank=same;";
    for (int w : ws) os << " \"" << p.name(w) << "\";";
    os << " }\n";
  }
  for (auto [a, b] : p.cover_pairs())
    os << "  \"" << p.name(a) << "\" -> \"" << p.name(b) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace

std::string poset_to_dot(const Poset& p) { return dot_impl(p, nullptr); }

std::string model_to_dot(const Model& m) {
  std::vector<std::string> labels;
  for (int w = 0; w < m.frame.size(); ++w) labels.push_back(bits(m.color[w], m.vars.size()));
  return dot_impl(m.frame, &labels);
}

}  // namespace ultab
