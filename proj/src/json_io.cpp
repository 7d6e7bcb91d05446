#include "koch/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace koch {

namespace {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const Json& j, int indent, int level, std::string& out) {
  auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays stay on one line
      bool flat = j.size() <= 9 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) newline(level + 1);
        write(j[i], indent, level + 1, out);
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json ifs_to_json(const IfsSystem& ifs) {
  Json j;
  j["label"] = ifs.label();
  Json maps = Json::array();
  for (const auto& m : ifs.maps()) {
    Json e;
    Json mat = Json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) mat.push_back(m.linear(r, c));
    e["matrix"] = mat;
    e["translation"] = {m.translation.x(), m.translation.y(), m.translation.z()};
    e["ratio"] = m.ratio;
    maps.push_back(e);
  }
  j["maps"] = maps;
  return j;
}

IfsSystem ifs_from_json(const Json& j) {
  std::vector<Similitude> maps;
  for (const auto& e : j.at("maps")) {
    const auto& mat = e.at("matrix");
    const auto& t = e.at("translation");
    if (mat.size() != 9 || t.size() != 3) throw DomainError("map needs 9 matrix and 3 translation entries");
    Mat3 l;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) l(r, c) = mat[3 * r + c].get<double>();
    Similitude s = Similitude::from_parts(l, Vec3(t[0].get<double>(), t[1].get<double>(), t[2].get<double>()));
    if (e.contains("ratio")) {
      double r = e["ratio"].get<double>();
      if (std::abs(r - s.ratio) > 1e-12) throw DomainError("stated ratio disagrees with matrix");
      s.ratio = r;
    }
    maps.push_back(s);
  }
  return IfsSystem(std::move(maps), j.value("label", std::string("ifs")));
}

Json interval_json(const DiameterInterval& d) {
  Json j;
  j["lo"] = d.lo;
  j["hi"] = d.hi;
  j["depth"] = d.depth;
  return j;
}

}  // namespace koch
