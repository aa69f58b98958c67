#pragma once

// Window JSON, point-sample CSV and config hashing.
//
//   { "ring": "Zsqrt2" | "Ztau", "rho": "1" | "sqrt(tau+2)",
//     "vertices": [ [ [p,q,r,s], [p,q,r,s] ], ... ], "boundary": "open" | "closed" }
//
// Each coordinate is (p + q w) + (r + s w) rho; entries are integers or "a/b" strings.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasigap/geometry.hpp"
#include "quasigap/quasicrystal.hpp"
#include "quasigap/tower.hpp"

namespace quasigap {

/// Bad user input: unknown names, malformed JSON, out-of-range values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io {

using nlohmann::json;

inline mpq_class parse_rational(const json& j) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  throw ConfigError("quasigap: expected an integer or \"a/b\", got " + j.dump());
}

inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

inline RingId parse_ring(const std::string& s) {
  if (s == "Zsqrt2") return RingId::Zsqrt2;
  if (s == "Ztau") return RingId::Ztau;
  throw ConfigError("quasigap: unknown ring '" + s + "'");
}

inline TowerReal parse_coord(RingId r, const json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("quasigap: a coordinate is a 4-tuple [p,q,r,s]");
  return TowerReal(r, parse_rational(j[0]), parse_rational(j[1]), parse_rational(j[2]), parse_rational(j[3]));
}

inline json coord_json(const TowerReal& t) {
  return json::array({rational_string(t.p()), rational_string(t.q()), rational_string(t.r()), rational_string(t.s())});
}

inline Window window_from_json(const json& j) {
  try {
    const RingId r = parse_ring(j.at("ring").get<std::string>());
    if (j.contains("rho")) {
      const std::string rho = j["rho"].get<std::string>();
      if ((r == RingId::Zsqrt2 && rho != "1") || (r == RingId::Ztau && rho != "sqrt(tau+2)"))
        throw ConfigError("quasigap: rho '" + rho + "' does not match the ring");
    }
    const std::string b = j.value("boundary", std::string("open"));
    if (b != "open" && b != "closed") throw ConfigError("quasigap: boundary must be open or closed");
    std::vector<Vec2> v;
    for (const auto& vj : j.at("vertices")) {
      if (!vj.is_array() || vj.size() != 2) throw ConfigError("quasigap: a vertex is a pair of coordinates");
      v.push_back({parse_coord(r, vj[0]), parse_coord(r, vj[1])});
    }
    return Window(std::move(v), b == "open" ? Boundary::Open : Boundary::Closed, j.value("label", std::string("custom")));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("quasigap: bad window JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline json window_to_json(const Window& w) {
  json j;
  j["ring"] = to_string(w.ring());
  j["rho"] = w.ring() == RingId::Zsqrt2 ? "1" : "sqrt(tau+2)";
  j["boundary"] = w.boundary() == Boundary::Open ? "open" : "closed";
  j["label"] = w.label();
  json vs = json::array();
  for (const auto& v : w.vertices()) vs.push_back(json::array({coord_json(v.x), coord_json(v.y)}));
  j["vertices"] = vs;
  return j;
}

/// octagon_ab, octagon_ab_457, decagon_t, pentagon_w1.
inline Window builtin_window(const std::string& name) {
  if (name == "octagon_ab") return make_octagon_AB();
  if (name == "octagon_ab_457") return octagon_translate();
  if (name == "decagon_t") return make_decagon_T();
  if (name == "pentagon_w1") return make_pentagon_W1();
  throw ConfigError("quasigap: unknown window '" + name + "'");
}

/// A built-in name, or a path to a JSON file.
inline Window load_window(const std::string& name_or_path) {
  if (name_or_path.size() > 5 && name_or_path.substr(name_or_path.size() - 5) == ".json") {
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("quasigap: cannot open " + name_or_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("quasigap: bad window JSON: ") + e.what());
    }
    return window_from_json(j);
  }
  return builtin_window(name_or_path);
}

/// "2/101,1/101,-2/101,-2/101,1/101"
inline Gamma parse_gamma(const std::string& s) {
  Gamma g;
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 5) throw ConfigError("quasigap: gamma needs exactly 5 entries");
    try {
      g[k] = mpq_class(item);
      if (g[k].get_den() == 0) throw std::invalid_argument("zero denominator");
      g[k].canonicalize();
    } catch (const std::invalid_argument&) {
      throw ConfigError("quasigap: bad rational '" + item + "' in gamma");
    }
    ++k;
  }
  if (k != 5) throw ConfigError("quasigap: gamma needs exactly 5 entries");
  return g;
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

/// a,b,c,d,re,im,visible; one row per point in sample order.
inline void write_sample_csv(std::ostream& os, const PointSample& s) {
  os << "a,b,c,d,re,im,visible\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& p = s.points[i];
    const CycloPoint x = s.point(i);
    os << p.a << ',' << p.b << ',' << p.c << ',' << p.d << ',';
    std::snprintf(buf, sizeof buf, "%.12f,%.12f", physical_re(x), physical_im(x));
    os << buf << ',' << (s.has_visibility() ? int(s.visible[i]) : 0) << '\n';
  }
}

}  // namespace io
}  // namespace quasigap
