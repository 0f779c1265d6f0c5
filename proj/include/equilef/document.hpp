#pragma once

// Input documents: one JSON object with "version": 1, a group, and named
// objects that refer to each other by name.
//
//   gsets            {"X": {"orbits": [1, 2]}}
//   maps             {"m": {"source": "M", "target": "X", "images": [{"orbit": 0, "twist": 1}]}}
//   kclasses         {"xi": {"base": "M", "classes": ["1 + t", "x1"]}}
//   correspondences  {"c": {"b": "m", "f": "identity", "space": "M", "xi": "xi"}}
//   modules          {"P0": {"parities": [0, 1]}}
//   resolutions      {"R": {"modules": ["P0", [1]], "differentials": [[["x1 - 1"]]], "primes": [5]}}
//   lifts            {"L": {"resolution": "R", "maps": [[["1"]], [["1"]]]}}
//   signed_data      {"s": {"points": [{"stabilizer": 1, "sign": -1, "character": "1"}]}}
//   homogeneous      {"h": {"H": 1, "L": 1, "twist": 0, "xi": "1"}}
//
// "identity" in place of a map name is the identity of the correspondence's
// space; an omitted "xi" is the unit class. Every divisor must divide the
// cyclic order.

#include "equilef/gsets.hpp"
#include "equilef/hsm.hpp"
#include "equilef/lefschetz.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace equilef {

/// A well-formed document that is semantically invalid.
class DocumentError : public Error {
public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

struct ResolutionEntry {
  Resolution resolution;
  std::vector<long> primes;
};

struct LiftEntry {
  std::string resolution;
  ChainLift lift;
};

struct HomogeneousEntry {
  Subgroup h;
  Subgroup l;
  int twist = 0;
  RepElem xi;
};

struct Document {
  int version = 1;
  Group group;
  Named<GSet> gsets;
  Named<EquivMap> maps;
  Named<KClass> kclasses;
  Named<Correspondence> correspondences;
  Named<GradedFreeModule> modules;
  Named<ResolutionEntry> resolutions;
  Named<LiftEntry> lifts;
  Named<std::vector<SignedFixedPointDatum>> signed_data;
  Named<HomogeneousEntry> homogeneous;

  template <class T>
  static const T* find(const Named<T>& items, const std::string& name) {
    for (const auto& [n, v] : items)
      if (n == name) return &v;
    return nullptr;
  }
};

namespace detail {

class DocumentReader {
public:
  explicit DocumentReader(const Json& root) : root_(root) {}

  Document read() {
    require_object(root_, "document");
    doc_.version = integer(field(root_, "version", "document"), "version");
    if (doc_.version != 1) throw DocumentError("unsupported document version " + std::to_string(doc_.version));
    const Json& g = field(root_, "group", "document");
    require_object(g, "group");
    int r = integer(field(g, "torus_rank", "group"), "group.torus_rank");
    int k = integer(field(g, "cyclic_order", "group"), "group.cyclic_order");
    if (r < 0 || k < 1) throw DocumentError("group: need torus_rank >= 0 and cyclic_order >= 1");
    doc_.group = Group(r, k);
    static const char* known[] = {"version",  "group",       "gsets",       "maps",      "kclasses",
                                  "correspondences", "modules", "resolutions", "lifts", "signed_data",
                                  "homogeneous"};
    for (const auto& [key, value] : root_.items()) {
      bool ok = false;
      for (const char* k2 : known) ok = ok || key == k2;
      if (!ok) throw DocumentError("unknown section '" + key + "'");
    }
    each("gsets", [&](const std::string& name, const Json& v, const std::string& path) {
      doc_.gsets.emplace_back(name, gset(v, path));
    });
    each("maps", [&](const std::string& name, const Json& v, const std::string& path) {
      doc_.maps.emplace_back(name, equiv_map(v, path));
    });
    each("kclasses", [&](const std::string& name, const Json& v, const std::string& path) {
      require_object(v, path);
      const GSet& base = ref(doc_.gsets, field(v, "base", path), path + ".base", "G-set");
      doc_.kclasses.emplace_back(name, kclass(base, field(v, "classes", path), path + ".classes"));
    });
    each("correspondences", [&](const std::string& name, const Json& v, const std::string& path) {
      doc_.correspondences.emplace_back(name, correspondence(v, path));
    });
    each("modules", [&](const std::string& name, const Json& v, const std::string& path) {
      require_object(v, path);
      doc_.modules.emplace_back(name, GradedFreeModule{doc_.group, parities(field(v, "parities", path), path)});
    });
    each("resolutions", [&](const std::string& name, const Json& v, const std::string& path) {
      doc_.resolutions.emplace_back(name, resolution(v, path));
    });
    each("lifts", [&](const std::string& name, const Json& v, const std::string& path) {
      require_object(v, path);
      const Json& rn = field(v, "resolution", path);
      const ResolutionEntry& re = ref(doc_.resolutions, rn, path + ".resolution", "resolution");
      const Json& maps = field(v, "maps", path);
      require_array(maps, path + ".maps");
      ChainLift lift;
      for (std::size_t j = 0; j < maps.size(); ++j)
        lift.maps.push_back(matrix(maps[j], path + ".maps[" + std::to_string(j) + "]"));
      try {
        validate(re.resolution, lift);
      } catch (const StructuralError& e) {
        throw DocumentError(path + ": " + e.what());
      }
      doc_.lifts.emplace_back(name, LiftEntry{rn.get<std::string>(), std::move(lift)});
    });
    each("signed_data", [&](const std::string& name, const Json& v, const std::string& path) {
      require_object(v, path);
      const Json& pts = field(v, "points", path);
      require_array(pts, path + ".points");
      std::vector<SignedFixedPointDatum> data;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::string p = path + ".points[" + std::to_string(i) + "]";
        require_object(pts[i], p);
        int d = divisor(field(pts[i], "stabilizer", p), p + ".stabilizer");
        int sign = integer(field(pts[i], "sign", p), p + ".sign");
        if (sign != 1 && sign != -1) throw DocumentError(p + ".sign: must be 1 or -1");
        RepElem ch = rep(field(pts[i], "character", p), Group(doc_.group.torus_rank, d), p + ".character");
        data.push_back({Subgroup{d}, sign, std::move(ch)});
      }
      try {
        signed_fixed_point_index(doc_.group, data);
      } catch (const Error& e) {
        throw DocumentError(path + ": " + e.what());
      }
      doc_.signed_data.emplace_back(name, std::move(data));
    });
    each("homogeneous", [&](const std::string& name, const Json& v, const std::string& path) {
      require_object(v, path);
      int h = divisor(field(v, "H", path), path + ".H");
      int l = divisor(field(v, "L", path), path + ".L");
      if (!divides(l, h)) throw DocumentError(path + ": L = " + std::to_string(l) + " does not divide H = " +
                                              std::to_string(h));
      int twist = integer(field(v, "twist", path), path + ".twist");
      RepElem xi = v.contains("xi") ? rep(v.at("xi"), Group(doc_.group.torus_rank, l), path + ".xi")
                                    : RepElem::one(Group(doc_.group.torus_rank, l));
      doc_.homogeneous.emplace_back(name, HomogeneousEntry{Subgroup{h}, Subgroup{l}, twist, std::move(xi)});
    });
    return std::move(doc_);
  }

private:
  template <class Fn>
  void each(const char* section, Fn&& fn) {
    if (!root_.contains(section)) return;
    const Json& s = root_.at(section);
    require_object(s, section);
    for (const auto& [name, value] : s.items()) fn(name, value, std::string(section) + "." + name);
  }

  static void require_object(const Json& v, const std::string& path) {
    if (!v.is_object()) throw DocumentError(path + ": expected an object");
  }
  static void require_array(const Json& v, const std::string& path) {
    if (!v.is_array()) throw DocumentError(path + ": expected an array");
  }
  static const Json& field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw DocumentError(path + ": missing field '" + key + "'");
    return obj.at(key);
  }
  static int integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw DocumentError(path + ": expected an integer");
    return v.get<int>();
  }
  int divisor(const Json& v, const std::string& path) const {
    int d = integer(v, path);
    if (d < 1 || !divides(d, doc_.group.cyclic_order))
      throw DocumentError(path + ": " + std::to_string(d) + " does not divide " +
                          std::to_string(doc_.group.cyclic_order));
    return d;
  }

  template <class T>
  static const T& ref(const Named<T>& items, const Json& name, const std::string& path, const char* kind) {
    if (!name.is_string()) throw DocumentError(path + ": expected a name");
    if (const T* v = Document::find(items, name.get<std::string>())) return *v;
    throw DocumentError(path + ": unknown " + std::string(kind) + " '" + name.get<std::string>() + "'");
  }

  static RepElem rep(const Json& v, const Group& g, const std::string& path) {
    if (v.is_number_integer()) return RepElem::constant(g, Integer(v.get<long>()));
    if (!v.is_string()) throw DocumentError(path + ": expected a representation string");
    try {
      return parse_rep(v.get<std::string>(), g);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at line")),
                       e.line(), e.column());
    }
  }

  std::vector<int> parities(const Json& v, const std::string& path) const {
    require_array(v, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      int p = integer(v[i], path + "[" + std::to_string(i) + "]");
      if (p != 0 && p != 1) throw DocumentError(path + "[" + std::to_string(i) + "]: parity must be 0 or 1");
      out.push_back(p);
    }
    return out;
  }

  GSet gset(const Json& v, const std::string& path) const {
    require_object(v, path);
    const Json& orbits = field(v, "orbits", path);
    require_array(orbits, path + ".orbits");
    std::vector<int> ds;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      ds.push_back(divisor(orbits[i], path + ".orbits[" + std::to_string(i) + "]"));
    return GSet(doc_.group, std::move(ds));
  }

  EquivMap equiv_map(const Json& v, const std::string& path) const {
    require_object(v, path);
    EquivMap m;
    m.source = ref(doc_.gsets, field(v, "source", path), path + ".source", "G-set");
    m.target = ref(doc_.gsets, field(v, "target", path), path + ".target", "G-set");
    const Json& images = field(v, "images", path);
    require_array(images, path + ".images");
    for (std::size_t i = 0; i < images.size(); ++i) {
      std::string p = path + ".images[" + std::to_string(i) + "]";
      require_object(images[i], p);
      m.images.push_back({integer(field(images[i], "orbit", p), p + ".orbit"),
                          integer(field(images[i], "twist", p), p + ".twist")});
    }
    try {
      validate(m);
    } catch (const Error& e) {
      throw DocumentError(path + ": " + e.what());
    }
    return m;
  }

  KClass kclass(const GSet& base, const Json& classes, const std::string& path) const {
    require_array(classes, path);
    if (classes.size() != base.orbits.size())
      throw DocumentError(path + ": " + std::to_string(classes.size()) + " classes for " +
                          std::to_string(base.orbits.size()) + " orbits");
    KClass out{base, {}};
    for (std::size_t i = 0; i < classes.size(); ++i)
      out.classes.push_back(rep(classes[i], Group(doc_.group.torus_rank, base.orbits[i]),
                                path + "[" + std::to_string(i) + "]"));
    return out;
  }

  Correspondence correspondence(const Json& v, const std::string& path) const {
    require_object(v, path);
    const Json& bj = field(v, "b", path);
    const Json& fj = field(v, "f", path);
    auto is_identity = [](const Json& j) { return j.is_string() && j.get<std::string>() == "identity"; };
    GSet space;
    if (v.contains("space"))
      space = ref(doc_.gsets, v.at("space"), path + ".space", "G-set");
    else if (!is_identity(bj))
      space = ref(doc_.maps, bj, path + ".b", "map").source;
    else if (!is_identity(fj))
      space = ref(doc_.maps, fj, path + ".f", "map").source;
    else
      throw DocumentError(path + ": 'space' is required when both maps are the identity");
    auto resolve = [&](const Json& j, const char* key) {
      if (is_identity(j) && !Document::find(doc_.maps, "identity")) return EquivMap::identity(space);
      const EquivMap& m = ref(doc_.maps, j, path + "." + key, "map");
      if (!(m.source == space))
        throw DocumentError(path + "." + key + ": map '" + j.get<std::string>() + "' does not start at the space");
      return m;
    };
    EquivMap b = resolve(bj, "b");
    EquivMap f = resolve(fj, "f");
    KClass xi = KClass::one(space);
    if (v.contains("xi")) {
      const Json& xj = v.at("xi");
      if (xj.is_array()) {
        xi = kclass(space, xj, path + ".xi");
      } else {
        xi = ref(doc_.kclasses, xj, path + ".xi", "K-class");
        if (!(xi.base == space)) throw DocumentError(path + ".xi: K-class does not live on the space");
      }
    }
    for (const char* key : {"source", "target"})
      if (v.contains(key)) {
        const GSet& declared = ref(doc_.gsets, v.at(key), path + "." + key, "G-set");
        const GSet& actual = std::string(key) == "source" ? b.target : f.target;
        if (!(declared == actual)) throw DocumentError(path + "." + key + ": does not match the map's target");
      }
    GSet source = b.target, target = f.target;
    return {std::move(source), std::move(space), std::move(target), std::move(b), std::move(f), std::move(xi)};
  }

  Matrix<RepElem> matrix(const Json& v, const std::string& path) const {
    require_array(v, path);
    std::size_t rows = v.size();
    std::size_t cols = rows ? v[0].size() : 0;
    auto m = zero_matrix(doc_.group, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      std::string rp = path + "[" + std::to_string(i) + "]";
      require_array(v[i], rp);
      if (v[i].size() != cols) throw DocumentError(rp + ": rows have different lengths");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rep(v[i][j], doc_.group, rp + "[" + std::to_string(j) + "]");
    }
    return m;
  }

  ResolutionEntry resolution(const Json& v, const std::string& path) const {
    require_object(v, path);
    ResolutionEntry out;
    out.resolution.ring = doc_.group;
    const Json& mods = field(v, "modules", path);
    require_array(mods, path + ".modules");
    for (std::size_t j = 0; j < mods.size(); ++j) {
      std::string p = path + ".modules[" + std::to_string(j) + "]";
      if (mods[j].is_string())
        out.resolution.parities.push_back(ref(doc_.modules, mods[j], p, "module").parities);
      else
        out.resolution.parities.push_back(parities(mods[j], p));
    }
    const Json& diffs = v.contains("differentials") ? v.at("differentials") : Json::array();
    require_array(diffs, path + ".differentials");
    for (std::size_t j = 0; j < diffs.size(); ++j) {
      std::string p = path + ".differentials[" + std::to_string(j) + "]";
      Matrix<RepElem> d = matrix(diffs[j], p);
      // An empty JSON matrix cannot carry its column count.
      if (d.rows() == 0 && j + 1 < out.resolution.parities.size())
        d = zero_matrix(doc_.group, 0, out.resolution.parities[j + 1].size());
      out.resolution.differentials.push_back(std::move(d));
    }
    if (v.contains("primes")) {
      const Json& ps = v.at("primes");
      require_array(ps, path + ".primes");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        long p = integer(ps[i], path + ".primes[" + std::to_string(i) + "]");
        if (!is_prime(p)) throw DocumentError(path + ".primes[" + std::to_string(i) + "]: " + std::to_string(p) +
                                              " is not prime");
        out.primes.push_back(p);
      }
    }
    try {
      validate(out.resolution);
    } catch (const StructuralError& e) {
      throw DocumentError(path + ": " + e.what());
    }
    return out;
  }

  const Json& root_;
  Document doc_;
};

/// 1-based line and column of a byte offset.
inline SourcePos position_of(std::string_view text, std::size_t byte) {
  SourcePos p;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++p.column;
    }
  }
  return p;
}

} // namespace detail

inline Document parse_document(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    SourcePos at = detail::position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    auto colon = what.find("syntax error");
    throw ParseError("invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon)), at.line,
                     at.column);
  }
  return detail::DocumentReader(root).read();
}

inline Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

} // namespace equilef
