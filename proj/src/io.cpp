#include "exclust/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace exclust {

namespace {

using Json = nlohmann::ordered_json;

Json radical_to_json(const RadicalSum& v) {
  Json arr = Json::array();
  for (const RadicalSum::Term& t : v.terms())
    arr.push_back(Json::array(
        {rational_to_string(t.coeff), t.radicand.get_str()}));
  return arr;
}

RadicalSum radical_from_json(const Json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("radical must be an array");
  std::vector<RadicalSum> parts;
  for (const Json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("radical term must be a [coeff, radicand] pair");
    Rational coeff = parse_rational(pair[0].get<std::string>());
    Rational radicand = parse_rational(pair[1].get<std::string>());
    parts.push_back(RadicalSum::sqrt_of(radicand, coeff));
  }
  return RadicalSum::sum(parts);
}

Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (const Rational& c : p.coords()) arr.push_back(rational_to_string(c));
  return arr;
}

Point point_from_json(const Json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("point must be an array");
  std::vector<Rational> coords;
  for (const Json& c : arr) coords.push_back(parse_rational(c.get<std::string>()));
  return Point(std::move(coords));
}

Json meta_to_json(const std::map<std::string, std::string>& meta) {
  Json obj = Json::object();
  for (const auto& [key, value] : meta) obj[key] = value;
  return obj;
}

std::map<std::string, std::string> meta_from_json(const Json& obj) {
  std::map<std::string, std::string> meta;
  for (const auto& [key, value] : obj.items())
    meta[key] = value.get<std::string>();
  return meta;
}

Json parse_document(const std::string& text) {
  Json doc = Json::parse(text, nullptr, true);
  if (!doc.is_object()) throw std::invalid_argument("document must be an object");
  return doc;
}

}  // namespace

std::string serialize_instance(const ClusteringInstance& inst) {
  Json doc;
  doc["dimension"] = inst.dimension;
  doc["power"] = inst.power;
  doc["candidates"] = Json::array();
  for (const Point& c : inst.candidates)
    doc["candidates"].push_back(point_to_json(c));
  doc["clients"] = Json::array();
  for (const Client& a : inst.clients) {
    Json client;
    client["coords"] = point_to_json(a.location);
    client["weight"] = a.weight.get_str();
    if (a.penalty) client["penalty"] = radical_to_json(*a.penalty);
    doc["clients"].push_back(std::move(client));
  }
  if (inst.threshold) doc["threshold"] = radical_to_json(*inst.threshold);
  doc["meta"] = meta_to_json(inst.meta);
  return doc.dump(2) + "\n";
}

ClusteringInstance parse_instance(const std::string& text) {
  Json doc = parse_document(text);
  ClusteringInstance inst;
  inst.dimension = doc.at("dimension").get<int>();
  inst.power = doc.at("power").get<int>();
  for (const Json& c : doc.at("candidates"))
    inst.candidates.push_back(point_from_json(c));
  for (const Json& a : doc.at("clients")) {
    Client client;
    client.location = point_from_json(a.at("coords"));
    client.weight = Integer(a.at("weight").get<std::string>());
    if (a.contains("penalty")) client.penalty = radical_from_json(a["penalty"]);
    inst.clients.push_back(std::move(client));
  }
  if (doc.contains("threshold"))
    inst.threshold = radical_from_json(doc["threshold"]);
  if (doc.contains("meta")) inst.meta = meta_from_json(doc["meta"]);
  inst.validate();
  return inst;
}

std::string serialize_metric_instance(const MetricInstance& inst) {
  Json doc;
  doc["num_points"] = inst.num_points;
  doc["matrix"] = Json::array();
  for (const Rational& d : inst.matrix)
    doc["matrix"].push_back(rational_to_string(d));
  doc["candidates"] = inst.candidates;
  doc["clients"] = Json::array();
  for (const auto& a : inst.clients) {
    Json client;
    client["index"] = a.index;
    client["weight"] = a.weight.get_str();
    doc["clients"].push_back(std::move(client));
  }
  if (inst.threshold) doc["threshold"] = rational_to_string(*inst.threshold);
  doc["meta"] = meta_to_json(inst.meta);
  return doc.dump(2) + "\n";
}

MetricInstance parse_metric_instance(const std::string& text) {
  Json doc = parse_document(text);
  MetricInstance inst;
  inst.num_points = doc.at("num_points").get<int>();
  for (const Json& d : doc.at("matrix"))
    inst.matrix.push_back(parse_rational(d.get<std::string>()));
  for (const Json& c : doc.at("candidates"))
    inst.candidates.push_back(c.get<int>());
  for (const Json& a : doc.at("clients"))
    inst.clients.push_back({a.at("index").get<int>(),
                            Integer(a.at("weight").get<std::string>())});
  if (doc.contains("threshold"))
    inst.threshold = parse_rational(doc["threshold"].get<std::string>());
  if (doc.contains("meta")) inst.meta = meta_from_json(doc["meta"]);
  inst.validate();
  return inst;
}

bool is_metric_instance_text(const std::string& text) {
  return parse_document(text).contains("matrix");
}

std::string serialize_gridtiling(const GridTilingInstance& gt) {
  Json doc;
  doc["n"] = gt.n;
  doc["k"] = gt.k;
  doc["sets"] = Json::array();
  for (const auto& row : gt.sets) {
    Json jrow = Json::array();
    for (const auto& cell : row) {
      Json jcell = Json::array();
      for (auto [u, v] : cell) jcell.push_back(Json::array({u, v}));
      jrow.push_back(std::move(jcell));
    }
    doc["sets"].push_back(std::move(jrow));
  }
  return doc.dump(2) + "\n";
}

GridTilingInstance parse_gridtiling(const std::string& text) {
  Json doc = parse_document(text);
  GridTilingInstance gt;
  gt.n = doc.at("n").get<int>();
  gt.k = doc.at("k").get<int>();
  for (const Json& jrow : doc.at("sets")) {
    std::vector<std::vector<std::pair<int, int>>> row;
    for (const Json& jcell : jrow) {
      std::vector<std::pair<int, int>> cell;
      for (const Json& jp : jcell) {
        if (!jp.is_array() || jp.size() != 2)
          throw std::invalid_argument("tiling pair must be [u, v]");
        cell.emplace_back(jp[0].get<int>(), jp[1].get<int>());
      }
      row.push_back(std::move(cell));
    }
    gt.sets.push_back(std::move(row));
  }
  gt.validate();
  return gt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace exclust
