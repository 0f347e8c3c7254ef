// wph: weighted projective heights from the command line.
//
//   wph height --preset genus2-igusa --point 240,1620,119880,46656
//   wph enumerate --weights 1,2 --bound 3/2
//   wph db ingest --db points.jsonl < new.jsonl
//
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "wproj/wproj.hpp"

namespace {

using namespace wproj;

constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct PointOptions {
  std::string weights;
  std::string preset_name;
  std::string point;
};

Weights resolve_weights(const PointOptions& o) {
  if (o.weights.empty() == o.preset_name.empty()) throw usage_error("exactly one of --weights or --preset is required");
  if (!o.preset_name.empty()) return preset(o.preset_name).weights;
  std::vector<std::int64_t> q;
  for (const auto& part : split(o.weights, ',')) {
    try {
      std::size_t used = 0;
      q.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw usage_error("invalid weight '" + part + "'");
    }
  }
  return make_weights(q);
}

WeightedTuple resolve_point(const PointOptions& o) {
  if (o.point.empty()) throw usage_error("--point is required");
  std::vector<Integer> x;
  for (const auto& part : split(o.point, ',')) x.push_back(parse_integer(part));
  if (!o.preset_name.empty()) {
    if (!o.weights.empty()) throw usage_error("exactly one of --weights or --preset is required");
    return moduli_point(preset(o.preset_name), std::move(x));
  }
  return WeightedTuple(resolve_weights(o), std::move(x));
}

// "7", "3/2", "240^1/2" or "240^(1/2)"
HeightBound parse_bound(std::string text) {
  std::erase(text, '(');
  std::erase(text, ')');
  const auto caret = text.find('^');
  if (caret == std::string::npos) return HeightBound(parse_rational(text));
  const std::string exp = text.substr(caret + 1);
  if (exp.rfind("1/", 0) != 0) throw error(errc::parse, "bound exponent must be of the form 1/r");
  const Integer root = parse_integer(exp.substr(2));
  if (root <= 0) throw error(errc::parse, "bound root must be positive");
  return HeightBound(parse_rational(text.substr(0, caret)), root.convert_to<std::uint64_t>());
}

json radical_json(const FactoredRadical& s) {
  json m = json::object();
  for (const auto& [p, e] : s.factors()) m[p.str()] = to_string(e);
  return m;
}

json removed_json(const NormalizedPoint& n) {
  if (const auto* d = std::get_if<Integer>(&n.removed)) return d->str();
  return radical_json(std::get<FactoredRadical>(n.removed));
}

std::string removed_text(const NormalizedPoint& n) {
  if (const auto* d = std::get_if<Integer>(&n.removed)) return d->str();
  return std::get<FactoredRadical>(n.removed).str();
}

std::string coords_text(const WeightedTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0) s += ',';
    s += t[i].str();
  }
  return s;
}

std::string height_text(const HeightValue& h) {
  return h.str() + " (base " + h.base.str() + ", root " + std::to_string(h.root) + ", approx " + h.approx_text() +
         ")";
}

json point_header(const WeightedTuple& t) {
  json w = json::array();
  for (Weight q : t.weights().q()) w.push_back(q);
  return json{{"weights", w}, {"point", coords_to_json(t.coords())}};
}

Mode parse_mode(const std::string& s) {
  if (s == "rational") return Mode::rational;
  if (s == "absolute") return Mode::absolute;
  throw usage_error("mode must be rational or absolute, got '" + s + "'");
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) std::cout << j.dump() << '\n';
  else std::cout << text << '\n';
}

void write_records(const Database& db, const std::string& output) {
  if (output.empty()) {
    db.write(std::cout);
  } else {
    db.save(output);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted gcds, normalizations and heights on weighted projective spaces"};
  app.require_subcommand(1);

  bool as_json = false;
  PointOptions po;
  std::string mode_text = "rational";
  std::string bound_text;
  unsigned threads = 1;

  auto add_point_options = [&](CLI::App* sub, bool need_point) {
    sub->add_option("--weights", po.weights, "comma-separated positive weights, e.g. 2,4,6,10");
    sub->add_option("--preset", po.preset_name, "genus2-igusa | genus2-half | genus3-octavic | genus3-octavic-extended");
    if (need_point) sub->add_option("--point", po.point, "comma-separated integers (use --point=-1,2 for a leading sign)");
    sub->add_flag("--json", as_json, "emit one JSON object");
  };

  auto* c_wgcd = app.add_subcommand("wgcd", "weighted gcd");
  auto* c_abs_wgcd = app.add_subcommand("abs-wgcd", "absolute weighted gcd (a radical)");
  auto* c_normalize = app.add_subcommand("normalize", "divide out the weighted gcd");
  auto* c_abs_normalize = app.add_subcommand("abs-normalize", "divide out the absolute weighted gcd");
  auto* c_canonical = app.add_subcommand("canonical", "canonical representative");
  auto* c_height = app.add_subcommand("height", "weighted height");
  auto* c_abs_height = app.add_subcommand("abs-height", "absolute weighted height");
  auto* c_twists = app.add_subcommand("twists", "twists up to a height bound");
  auto* c_enumerate = app.add_subcommand("enumerate", "all points up to a height bound");
  for (auto* sub : {c_wgcd, c_abs_wgcd, c_normalize, c_abs_normalize, c_canonical, c_height, c_abs_height, c_twists}) {
    add_point_options(sub, true);
  }
  add_point_options(c_enumerate, false);
  c_canonical->add_option("--mode", mode_text, "rational | absolute");
  c_twists->add_option("--bound", bound_text, "height bound: a, a/b or base^1/root")->required();
  c_enumerate->add_option("--bound", bound_text, "height bound: a or a/b")->required();
  c_enumerate->add_option("--threads", threads, "worker threads (output order unchanged)");

  auto* c_db = app.add_subcommand("db", "line-delimited point database");
  c_db->require_subcommand(1);
  std::string db_path, input_path = "-", output_path;
  auto* d_ingest = c_db->add_subcommand("ingest", "read records (stdin by default) and append them to --db");
  auto* d_dedupe = c_db->add_subcommand("dedupe", "one record per point (rational) or twist class (absolute)");
  auto* d_sort = c_db->add_subcommand("sort", "sort by exact height");
  auto* d_groups = c_db->add_subcommand("twist-groups", "partition into twist classes");
  d_ingest->add_option("--db", db_path, "database file to append to");
  d_ingest->add_option("--input", input_path, "record file, - for stdin");
  for (auto* sub : {d_dedupe, d_sort, d_groups}) sub->add_option("--db", db_path, "database file")->required();
  for (auto* sub : {d_dedupe, d_sort}) sub->add_option("--output", output_path, "write records here instead of stdout");
  d_dedupe->add_option("--mode", mode_text, "rational | absolute");
  d_sort->add_option("--by", mode_text, "rational | absolute height");
  for (auto* sub : {d_ingest, d_dedupe, d_sort, d_groups}) sub->add_flag("--json", as_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (c_wgcd->parsed()) {
      const auto t = resolve_point(po);
      const Integer d = wgcd(t);
      json j = point_header(t);
      j["wgcd"] = d.str();
      emit(as_json, j, d.str());
    } else if (c_abs_wgcd->parsed()) {
      const auto t = resolve_point(po);
      const FactoredRadical s = abs_wgcd(t);
      json j = point_header(t);
      j["abs_wgcd"] = radical_json(s);
      emit(as_json, j, s.str());
    } else if (c_normalize->parsed() || c_abs_normalize->parsed() || c_canonical->parsed()) {
      const auto t = resolve_point(po);
      NormalizedPoint n = c_normalize->parsed()       ? normalize(t)
                          : c_abs_normalize->parsed() ? normalize_abs(t)
                                                      : canonical(t, parse_mode(mode_text));
      json j = point_header(t);
      if (c_canonical->parsed()) j["mode"] = mode_text;
      j["normalized"] = coords_to_json(n.tuple.coords());
      j["removed"] = removed_json(n);
      j["sign_class"] = n.sign.k;
      emit(as_json, j, coords_text(n.tuple));
    } else if (c_height->parsed() || c_abs_height->parsed()) {
      const auto t = resolve_point(po);
      const HeightValue h = c_height->parsed() ? height(t) : abs_height(t);
      json j = point_header(t);
      j[c_height->parsed() ? "height" : "abs_height"] = height_to_json(h);
      emit(as_json, j, height_text(h));
    } else if (c_twists->parsed()) {
      const auto t = resolve_point(po);
      const auto list = twists_up_to(t, parse_bound(bound_text));
      json j = point_header(t);
      j["bound"] = bound_text;
      json arr = json::array();
      std::string text;
      for (const auto& n : list) {
        const HeightValue h = tuple_height(n.tuple);
        arr.push_back(json{{"point", coords_to_json(n.tuple.coords())},
                           {"scalar", removed_json(n)},
                           {"height", height_to_json(h)}});
        if (!text.empty()) text += '\n';
        text += coords_text(n.tuple) + "  scalar " + removed_text(n) + "  height " + h.str();
      }
      j["twists"] = arr;
      emit(as_json, j, text);
    } else if (c_enumerate->parsed()) {
      const Weights w = resolve_weights(po);
      const HeightBound b = parse_bound(bound_text);
      if (b.root != 1) throw usage_error("enumerate takes a rational bound");
      const auto list = enumerate_bounded(w, b.base, threads);
      json arr = json::array();
      std::string text;
      for (const auto& n : list) {
        arr.push_back(coords_to_json(n.tuple.coords()));
        if (!text.empty()) text += '\n';
        text += coords_text(n.tuple);
      }
      json wj = json::array();
      for (Weight q : w.q()) wj.push_back(q);
      if (as_json) {
        std::cout << json{{"weights", wj}, {"bound", bound_text}, {"count", list.size()}, {"points", arr}}.dump()
                  << '\n';
      } else if (!text.empty()) {
        std::cout << text << '\n';
      }
    } else if (d_ingest->parsed()) {
      Database db;
      if (!db_path.empty()) {
        IngestReport existing;
        db = Database::load(db_path, &existing);
        if (existing.rejected_total() != 0) throw error(errc::parse, db_path + " contains invalid records");
      }
      IngestReport report;
      if (input_path == "-") {
        report = db.ingest(std::cin);
      } else {
        std::ifstream in(input_path, std::ios::binary);
        if (!in) throw error(errc::io, "cannot open " + input_path);
        report = db.ingest(in);
      }
      for (const auto& [line, reason, message] : report.diagnostics) {
        std::cerr << "line " << line << ": " << reason << ": " << message << '\n';
      }
      if (!db_path.empty()) db.save(db_path);
      std::string text = "accepted " + std::to_string(report.accepted);
      for (const auto& [reason, n] : report.rejected) text += "\nrejected " + reason + " " + std::to_string(n);
      if (report.duplicate_labels != 0) text += "\nduplicate-label " + std::to_string(report.duplicate_labels);
      emit(as_json, report.to_json(), text);
    } else if (d_dedupe->parsed() || d_sort->parsed() || d_groups->parsed()) {
      IngestReport loaded;
      const Database db = Database::load(db_path, &loaded);
      if (loaded.rejected_total() != 0) throw error(errc::parse, db_path + " contains invalid records");
      const Mode mode = parse_mode(mode_text);
      if (d_dedupe->parsed()) {
        write_records(db.dedupe(mode), output_path);
      } else if (d_sort->parsed()) {
        write_records(db.sort_by_height(mode), output_path);
      } else {
        json arr = json::array();
        std::string text;
        for (const auto& g : db.twist_groups()) {
          json labels = json::array();
          std::string names;
          for (std::size_t i : g.members) {
            labels.push_back(db.records()[i].label);
            names += (names.empty() ? "" : ",") + db.records()[i].label;
          }
          const auto& rep = db.records()[g.representative];
          arr.push_back(json{{"twist_key", g.twist_key},
                             {"members", labels},
                             {"representative", rep.label},
                             {"representative_point", coords_to_json(rep.canonical_tuple.coords())}});
          if (!text.empty()) text += '\n';
          text += g.twist_key + "  rep " + rep.label + "  members " + names;
        }
        emit(as_json, json{{"groups", arr}}, text);
      }
    }
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const error& e) {
    if (as_json) {
      std::cout << json{{"error", {{"reason", std::string(e.reason())}, {"message", e.what()}}}}.dump() << '\n';
    }
    std::cerr << "error: " << e.reason() << ": " << e.what() << '\n';
    return exit_domain;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return exit_domain;
  }
  return 0;
}
