#include "sdg/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdg/errors.hpp"

namespace sdg {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(errc::kParseError, where + ": " + what);
}

void expect_fields(const json& obj, const std::string& where, const std::set<std::string>& required,
                   const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!required.count(key) && !optional.count(key)) fail(where, "unknown field '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) fail(where, "missing field '" + key + "'");
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where, "field '" + key + "' must be a number");
  return v.get<double>();
}

ProfitFunction parse_profit(const json& j, const std::string& where) {
  expect_fields(j, where, {"kind", "params"});
  if (!j["kind"].is_string()) fail(where, "kind must be a string");
  const std::string kind = j["kind"].get<std::string>();
  const json& params = j["params"];
  const std::string pw = where + ".params";
  if (kind == "linear") {
    expect_fields(params, pw, {"p"});
    return ProfitFunction::linear(number(params, "p", pw));
  }
  if (kind == "quadratic") {
    expect_fields(params, pw, {"p", "q"});
    return ProfitFunction::quadratic(number(params, "p", pw), number(params, "q", pw));
  }
  if (kind == "logarithmic") {
    expect_fields(params, pw, {"p"});
    return ProfitFunction::logarithmic(number(params, "p", pw));
  }
  if (kind == "power") {
    expect_fields(params, pw, {"p", "r"});
    return ProfitFunction::power(number(params, "p", pw), number(params, "r", pw));
  }
  fail(where, "unknown profit kind '" + kind + "'");
}

json profit_json(const ProfitFunction& f) {
  json params;
  switch (f.kind()) {
    case ProfitKind::linear:
    case ProfitKind::logarithmic: params = {{"p", f.p()}}; break;
    case ProfitKind::quadratic: params = {{"p", f.p()}, {"q", f.second()}}; break;
    case ProfitKind::power: params = {{"p", f.p()}, {"r", f.second()}}; break;
  }
  return {{"kind", std::string(to_string(f.kind()))}, {"params", params}};
}

}  // namespace

RawInstance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("instance", e.what());
  }
  expect_fields(doc, "instance", {"b0", "nodes"});
  RawInstance raw;
  raw.b0 = number(doc, "b0", "instance");
  if (!doc["nodes"].is_array()) fail("instance", "nodes must be an array");
  int idx = 0;
  for (const json& nd : doc["nodes"]) {
    const std::string where = "nodes[" + std::to_string(idx++) + "]";
    expect_fields(nd, where, {"b", "k", "a", "u", "profit"});
    NodeParams p;
    p.b = number(nd, "b", where);
    p.k = number(nd, "k", where);
    p.a = number(nd, "a", where);
    p.u = number(nd, "u", where);
    p.f = parse_profit(nd["profit"], where + ".profit");
    raw.nodes.push_back(p);
  }
  return raw;
}

std::string instance_to_json(const Instance& inst, int indent) {
  json nodes = json::array();
  for (const NodeParams& nd : inst.nodes())
    nodes.push_back({{"b", nd.b}, {"k", nd.k}, {"a", nd.a}, {"u", nd.u}, {"profit", profit_json(nd.f)}});
  json doc = {{"b0", inst.b0()}, {"nodes", nodes}};
  return doc.dump(indent);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::kParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return make_instance(parse_instance_json(buf.str()));
}

}  // namespace sdg
