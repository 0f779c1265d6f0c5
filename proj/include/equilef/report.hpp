#pragma once

// Deterministic reports for documents: the `trace` and `verify` views, each
// available as text lines and as JSON. Items appear in document order.

#include "equilef/document.hpp"

#include <string>
#include <vector>

namespace equilef {

struct Report {
  std::vector<std::string> lines;
  Json json = Json::object();
  bool ok = true;

  std::string text() const {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }
};

enum class TraceMethod { Geometric, Homological, Categorical, Hs };

inline TraceMethod parse_trace_method(const std::string& s) {
  if (s == "geometric") return TraceMethod::Geometric;
  if (s == "homological") return TraceMethod::Homological;
  if (s == "categorical") return TraceMethod::Categorical;
  if (s == "hs") return TraceMethod::Hs;
  throw DocumentError("unknown trace method '" + s + "'");
}

inline std::string str(const ModuleMapDescriptor& m) {
  std::string out;
  for (const auto& [d, xi] : m.terms) out += (out.empty() ? "" : ", ") + ("d=" + std::to_string(d) + " -> " + xi.str());
  return out.empty() ? "0" : out;
}

namespace detail {

inline FractionVector component_traces(const Correspondence& c, bool categorical) {
  FractionVector v{c.group(), {}};
  for (int d : cartan_components(c.group())) {
    HomologicalComponent hc = homological_component(c, d);
    v.components.push_back(categorical ? categorical_trace(hc.matrix) : hc.supertrace);
  }
  return v;
}

inline const Resolution& resolution_of(const Document& doc, const LiftEntry& lift) {
  return Document::find(doc.resolutions, lift.resolution)->resolution;
}

} // namespace detail

/// One value per traceable item. A single item prints as its bare value,
/// several as "name: value" lines.
inline Report trace_report(const Document& doc, TraceMethod method) {
  Named<std::string> items;
  switch (method) {
  case TraceMethod::Geometric:
    for (const auto& [name, c] : doc.correspondences)
      if (c.is_endomorphism()) items.emplace_back(name, geometric_index(c).str());
    for (const auto& [name, h] : doc.homogeneous)
      items.emplace_back(name, homogeneous_index(doc.group, h.h, h.l, h.twist, h.xi).str());
    for (const auto& [name, data] : doc.signed_data)
      items.emplace_back(name, signed_fixed_point_index(doc.group, data).str());
    break;
  case TraceMethod::Homological:
  case TraceMethod::Categorical:
    for (const auto& [name, c] : doc.correspondences)
      if (c.is_endomorphism())
        items.emplace_back(name, detail::component_traces(c, method == TraceMethod::Categorical).str());
    break;
  case TraceMethod::Hs:
    for (const auto& [name, lift] : doc.lifts)
      items.emplace_back(name, hs_trace(detail::resolution_of(doc, lift), lift.lift).str());
    break;
  }
  if (items.empty()) throw DocumentError("the document has nothing to trace with this method");
  Report r;
  Json results = Json::object();
  for (const auto& [name, value] : items) {
    r.lines.push_back(items.size() == 1 ? value : name + ": " + value);
    results[name] = value;
  }
  static const char* names[] = {"geometric", "homological", "categorical", "hs"};
  r.json["method"] = names[static_cast<int>(method)];
  r.json["results"] = std::move(results);
  return r;
}

/// Every cross-check the document supports. ok is false on any mismatch
/// or failed exactness check; INCONCLUSIVE resolutions do not fail.
inline Report verify_report(const Document& doc) {
  Report r;
  std::size_t checked = 0, failed = 0;
  auto finish = [&](Json& item, std::vector<std::string> mismatches) {
    ++checked;
    for (const auto& m : mismatches) r.lines.push_back("  mismatch: " + m);
    bool ok = mismatches.empty();
    r.lines.push_back(std::string("  status: ") + (ok ? "ok" : "MISMATCH"));
    item["mismatches"] = std::move(mismatches);
    item["ok"] = ok;
    if (!ok) ++failed;
  };

  r.lines.push_back("group " + doc.group.str());
  r.json["group"] = {{"torus_rank", doc.group.torus_rank}, {"cyclic_order", doc.group.cyclic_order}};

  Json cs = Json::array();
  for (const auto& [name, c] : doc.correspondences) {
    Json item = {{"name", name}};
    r.lines.push_back("correspondence " + name);
    std::vector<std::string> mismatches;
    if (c.is_endomorphism()) {
      IndexReport ir = verify_lefschetz(c);
      r.lines.push_back("  geometric index: " + ir.geometric.str());
      item["geometric"] = ir.geometric.str();
      Json comps = Json::array();
      for (const auto& cr : ir.components) {
        r.lines.push_back("  d=" + std::to_string(cr.divisor) + ": supertrace " + cr.supertrace.value_str() +
                          ", localized geometric " + cr.localized_geometric.value_str() + ", categorical " +
                          cr.categorical.value_str() + ", fixed points " +
                          std::to_string(cr.fixed_matrix.source().dim()) + (cr.agree ? ", agree" : ", DISAGREE"));
        comps.push_back({{"d", cr.divisor},
                         {"fixed_points", cr.fixed_matrix.source().dim()},
                         {"supertrace", cr.supertrace.value_str()},
                         {"localized_geometric", cr.localized_geometric.value_str()},
                         {"categorical", cr.categorical.value_str()},
                         {"agree", cr.agree}});
      }
      item["components"] = std::move(comps);
      r.lines.push_back("  reconstruction: " + ir.reconstructed.value.str() +
                        (ir.integrality ? " (integral)" : " (not integral)"));
      item["reconstructed"] = ir.reconstructed.value.str();
      item["integral"] = ir.integrality;
      mismatches = ir.mismatches;
    } else {
      r.lines.push_back("  not an endomorphism; no trace");
    }
    Json kmap = Json::array();
    auto km = induced_k_map(c);
    for (std::size_t y = 0; y < km.size(); ++y)
      for (std::size_t x = 0; x < km[y].size(); ++x) {
        std::string s = str(km[y][x]);
        r.lines.push_back("  k-map " + std::to_string(y) + " <- " + std::to_string(x) + ": " + s);
        kmap.push_back({{"target", y}, {"source", x}, {"map", s}});
      }
    item["k_map"] = std::move(kmap);
    finish(item, std::move(mismatches));
    cs.push_back(std::move(item));
  }
  r.json["correspondences"] = std::move(cs);

  Json rs = Json::array();
  for (const auto& [name, entry] : doc.resolutions) {
    ResolutionReport rr = verify_resolution(entry.resolution, entry.primes);
    r.lines.push_back("resolution " + name + ": length " + std::to_string(entry.resolution.length()) + ", " +
                      to_string(rr.status));
    for (const auto& n : rr.notes) r.lines.push_back("  " + n);
    Json item = {{"name", name},
                 {"length", entry.resolution.length()},
                 {"status", to_string(rr.status)},
                 {"notes", rr.notes}};
    ++checked;
    if (rr.status == Exactness::Fail) ++failed;
    rs.push_back(std::move(item));
  }
  r.json["resolutions"] = std::move(rs);

  Json ls = Json::array();
  for (const auto& [name, lift] : doc.lifts) {
    Json item = {{"name", name}, {"resolution", lift.resolution}};
    r.lines.push_back("lift " + name + " over " + lift.resolution);
    std::vector<std::string> mismatches;
    try {
      HsComparison cmp = compare_hs_localized(detail::resolution_of(doc, lift), lift.lift);
      r.lines.push_back("  hs trace: " + cmp.hs.str());
      item["hs_trace"] = cmp.hs.str();
      Json comps = Json::array();
      for (const auto& hc : cmp.components) {
        r.lines.push_back("  d=" + std::to_string(hc.divisor) + ": localized " + hc.localized_hs.value_str() +
                          ", homology supertrace " + hc.homology_supertrace.value_str() + " (dim " +
                          std::to_string(hc.homology_dim) + "), euler-poincare " + hc.euler_poincare.value_str() +
                          (hc.agree ? ", agree" : ", DISAGREE"));
        comps.push_back({{"d", hc.divisor},
                         {"localized", hc.localized_hs.value_str()},
                         {"homology_dim", hc.homology_dim},
                         {"homology_supertrace", hc.homology_supertrace.value_str()},
                         {"euler_poincare", hc.euler_poincare.value_str()},
                         {"agree", hc.agree}});
      }
      item["components"] = std::move(comps);
      mismatches = cmp.mismatches;
    } catch (const VerificationError& e) {
      mismatches.push_back(e.what());
    }
    finish(item, std::move(mismatches));
    ls.push_back(std::move(item));
  }
  r.json["lifts"] = std::move(ls);

  Json hs = Json::array();
  for (const auto& [name, h] : doc.homogeneous) {
    Json item = {{"name", name}};
    r.lines.push_back("homogeneous " + name);
    RepElem idx = homogeneous_index(doc.group, h.h, h.l, h.twist, h.xi);
    RepElem geo = geometric_index(homogeneous_correspondence(doc.group, h.h, h.l, h.twist, h.xi));
    r.lines.push_back("  index: " + idx.str());
    r.lines.push_back("  geometric index of G/H <- G/L -> G/H: " + geo.str());
    item["index"] = idx.str();
    item["geometric"] = geo.str();
    std::vector<std::string> mismatches;
    if (idx != geo) mismatches.push_back("homogeneous index " + idx.str() + " != geometric index " + geo.str());
    finish(item, std::move(mismatches));
    hs.push_back(std::move(item));
  }
  r.json["homogeneous"] = std::move(hs);

  Json ss = Json::array();
  for (const auto& [name, data] : doc.signed_data) {
    RepElem idx = signed_fixed_point_index(doc.group, data);
    r.lines.push_back("signed fixed points " + name + ": " + std::to_string(data.size()) + " points, index " +
                      idx.str());
    ss.push_back({{"name", name}, {"points", data.size()}, {"index", idx.str()}});
  }
  r.json["signed_data"] = std::move(ss);

  r.lines.push_back("summary: " + std::to_string(checked) + " checked, " + std::to_string(failed) + " failed");
  r.ok = failed == 0;
  r.json["checked"] = checked;
  r.json["failed"] = failed;
  r.json["ok"] = r.ok;
  return r;
}

} // namespace equilef
