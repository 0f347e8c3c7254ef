#pragma once

// Line-delimited store of moduli points. Each line is one JSON object:
//
//   {"label":"p","preset":"genus2-igusa","coords":["240","1620","119880","46656"],
//    "derived":{"canonical":[...],"height":{"base":"240","root":2,"approx":"..."},
//               "abs_height":{...},"twist_key":"2,4,6,10|40,45,555,6"}}
//
// "weights":[2,4,6,10] may replace "preset". Unknown fields are kept as-is.

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wproj/moduli.hpp"
#include "wproj/wheight.hpp"

namespace wproj {

using json = nlohmann::ordered_json;

inline json height_to_json(const HeightValue& h) {
  return json{{"base", h.base.str()}, {"root", h.root}, {"approx", h.approx_text()}};
}

inline std::string coords_key(const WeightedTuple& t) {
  std::string s = t.weights().str() + "|";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0) s += ',';
    s += t[i].str();
  }
  return s;
}

inline json coords_to_json(std::span<const Integer> x) {
  json a = json::array();
  for (const auto& v : x) a.push_back(v.str());
  return a;
}

struct PointRecord {
  std::string label;
  std::optional<std::string> preset;
  WeightedTuple tuple;

  WeightedTuple canonical_tuple;
  WeightedTuple abs_canonical_tuple;
  HeightValue height;
  HeightValue abs_height;
  std::string twist_key;

  bool duplicate_label = false;
  // The record as read, including fields this module does not interpret.
  json raw;

  static PointRecord derive(std::string label, std::optional<std::string> preset_name, WeightedTuple t,
                            json raw = json::object()) {
    const NormalizedPoint rat = canonical(t, Mode::rational);
    const NormalizedPoint abs = canonical(t, Mode::absolute);
    PointRecord r{std::move(label),
                  std::move(preset_name),
                  t,
                  rat.tuple,
                  abs.tuple,
                  tuple_height(rat.tuple),
                  tuple_height(abs.tuple),
                  coords_key(abs.tuple),
                  false,
                  std::move(raw)};
    return r;
  }

  json derived_json() const {
    return json{{"canonical", coords_to_json(canonical_tuple.coords())},
                {"height", height_to_json(height)},
                {"abs_height", height_to_json(abs_height)},
                {"twist_key", twist_key}};
  }

  json to_json() const {
    json out = raw.is_object() ? raw : json::object();
    out["label"] = label;
    if (preset) {
      out["preset"] = *preset;
    } else {
      json w = json::array();
      for (Weight q : tuple.weights().q()) w.push_back(q);
      out["weights"] = w;
    }
    out["coords"] = coords_to_json(tuple.coords());
    out["derived"] = derived_json();
    return out;
  }

  std::string line() const { return to_json().dump(); }
};

inline PointRecord parse_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw error(errc::parse, std::string("malformed record: ") + e.what());
  }
  if (!j.is_object()) throw error(errc::parse, "record is not an object");
  if (!j.contains("label") || !j["label"].is_string()) throw error(errc::parse, "record needs a string label");
  if (!j.contains("coords") || !j["coords"].is_array()) throw error(errc::parse, "record needs a coords array");

  std::vector<Integer> coords;
  for (const auto& c : j["coords"]) {
    if (c.is_string()) coords.push_back(parse_integer(c.get<std::string>()));
    else if (c.is_number_integer()) coords.push_back(Integer(c.get<std::int64_t>()));
    else throw error(errc::parse, "coordinates must be decimal strings");
  }

  const bool has_preset = j.contains("preset");
  const bool has_weights = j.contains("weights");
  if (has_preset == has_weights) throw error(errc::parse, "record needs exactly one of preset or weights");

  std::optional<std::string> preset_name;
  std::optional<WeightedTuple> t;
  if (has_preset) {
    if (!j["preset"].is_string()) throw error(errc::parse, "preset must be a string");
    preset_name = j["preset"].get<std::string>();
    t = moduli_point(preset(*preset_name), std::move(coords));
  } else {
    std::vector<std::int64_t> q;
    for (const auto& w : j["weights"]) {
      if (!w.is_number_integer()) throw error(errc::parse, "weights must be integers");
      q.push_back(w.get<std::int64_t>());
    }
    t = WeightedTuple(make_weights(q), std::move(coords));
  }

  PointRecord r = PointRecord::derive(j["label"].get<std::string>(), preset_name, *t, j);
  if (j.contains("derived") && j["derived"] != r.derived_json()) {
    throw error(errc::derived_mismatch, "stored derived fields of '" + r.label + "' do not match recomputation");
  }
  return r;
}

struct IngestReport {
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> rejected;
  std::size_t duplicate_labels = 0;
  // (line number, reason, message)
  std::vector<std::tuple<std::size_t, std::string, std::string>> diagnostics;

  std::size_t rejected_total() const {
    std::size_t n = 0;
    for (const auto& [k, v] : rejected) n += v;
    return n;
  }

  json to_json() const {
    json rej = json::object();
    for (const auto& [k, v] : rejected) rej[k] = v;
    return json{{"accepted", accepted}, {"rejected", rej}, {"duplicate_labels", duplicate_labels}};
  }
};

struct TwistGroup {
  std::string twist_key;
  std::vector<std::size_t> members;  // indices into the collection
  std::size_t representative = 0;    // member of minimal height
};

class Database {
 public:
  Database() = default;

  const std::vector<PointRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  void add(PointRecord r) {
    r.duplicate_label = !labels_.insert(r.label).second;
    records_.push_back(std::move(r));
  }

  /// Reads one record per line; bad lines are counted and skipped.
  IngestReport ingest(std::istream& in) {
    IngestReport report;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        PointRecord r = parse_record(line);
        add(std::move(r));
        if (records_.back().duplicate_label) ++report.duplicate_labels;
        ++report.accepted;
      } catch (const error& e) {
        ++report.rejected[std::string(e.reason())];
        report.diagnostics.emplace_back(lineno, std::string(e.reason()), e.what());
      }
    }
    return report;
  }

  void write(std::ostream& out) const {
    for (const auto& r : records_) out << r.line() << '\n';
  }

  static Database load(const std::filesystem::path& path, IngestReport* report = nullptr) {
    Database db;
    if (!std::filesystem::exists(path)) return db;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open " + path.string());
    IngestReport r = db.ingest(in);
    if (report) *report = std::move(r);
    return db;
  }

  /// Writes to a temporary sibling and renames it over `path`.
  void save(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw error(errc::io, "cannot write " + tmp.string());
      write(out);
      if (!out) throw error(errc::io, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  /// Rational mode keeps the first record of each canonical form. Absolute
  /// mode keeps, per twist class, the record of least height (ties by
  /// canonical coordinates). Survivors stay in collection order.
  Database dedupe(Mode mode) const {
    std::map<std::string, std::size_t> keep;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& r = records_[i];
      const std::string key = mode == Mode::rational ? coords_key(r.canonical_tuple) : r.twist_key;
      auto [it, inserted] = keep.emplace(key, i);
      if (!inserted && mode == Mode::absolute && better(r, records_[it->second])) it->second = i;
    }
    std::vector<std::size_t> order;
    for (const auto& [k, i] : keep) order.push_back(i);
    std::sort(order.begin(), order.end());
    Database out;
    for (std::size_t i : order) out.add(records_[i]);
    return out;
  }

  /// Stable ascending sort by exact height; ties by canonical coordinates,
  /// then label.
  Database sort_by_height(Mode which) const {
    std::vector<std::size_t> order(records_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ra = records_[a];
      const auto& rb = records_[b];
      const auto c = which == Mode::rational ? cmp_height(ra.height, rb.height) : cmp_height(ra.abs_height, rb.abs_height);
      if (c != 0) return c < 0;
      if (coord_less(ra.canonical_tuple.coords(), rb.canonical_tuple.coords())) return true;
      if (coord_less(rb.canonical_tuple.coords(), ra.canonical_tuple.coords())) return false;
      return ra.label < rb.label;
    });
    Database out;
    for (std::size_t i : order) out.add(records_[i]);
    return out;
  }

  /// Groups in order of first appearance.
  std::vector<TwistGroup> twist_groups() const {
    std::vector<TwistGroup> groups;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& key = records_[i].twist_key;
      auto [it, inserted] = index.emplace(key, groups.size());
      if (inserted) groups.push_back(TwistGroup{key, {}, i});
      TwistGroup& g = groups[it->second];
      g.members.push_back(i);
      if (better(records_[i], records_[g.representative])) g.representative = i;
    }
    return groups;
  }

 private:
  static bool better(const PointRecord& a, const PointRecord& b) {
    const auto c = cmp_height(a.height, b.height);
    if (c != 0) return c < 0;
    return coord_less(a.canonical_tuple.coords(), b.canonical_tuple.coords());
  }

  std::vector<PointRecord> records_;
  std::set<std::string> labels_;
};

}  // namespace wproj
