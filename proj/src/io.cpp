#include "cstar/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar::io {

using exactlat::Int;
using exactlat::LatticeVector;
using exactlat::Rat;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

Json sizes_json(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

std::optional<std::size_t> optional_size(const Json& j, const char* key) {
  const Json& x = field(j, key);
  if (x.is_null()) return std::nullopt;
  return x.get<std::size_t>();
}

Json ints_json(const std::vector<Int>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

std::vector<Int> ints_from_json(const Json& a) {
  if (!a.is_array()) throw ParseError("expected an array of integers");
  std::vector<Int> out;
  for (const auto& x : a) out.push_back(int_from_json(x));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- numbers

Json to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<unsigned long long>())) : Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    Int x;
    if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
    return x;
  }
  throw ParseError("not an integer: " + j.dump());
}

Json to_json(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return to_json(Int(c.get_num()));
  return Json(c.get_str());
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) {
    Rat x;
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
    x.canonicalize();
    return x;
  }
  return Rat(int_from_json(j));
}

Json to_json(const LatticeVector& x) { return ints_json(x.coords()); }

LatticeVector vector_from_json(const Json& j) { return LatticeVector(ints_from_json(j)); }

LatticeVector parse_vector(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<Int> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(' '), last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw ParseError("empty coordinate in '" + text + "'");
    item = item.substr(first, last - first + 1);
    if (item.front() == '+') item.erase(0, 1);
    Int x;
    if (item.empty() || x.set_str(item, 10) != 0) throw ParseError("bad coordinate '" + item + "' in '" + text + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ParseError("empty vector '" + text + "'");
  return LatticeVector(std::move(out));
}

// ---------------------------------------------------------------- fans, divisors, polytopes

Json to_json(const fan::Fan& f) {
  Json j;
  j["rank"] = f.rank();
  j["rays"] = Json::array();
  for (const auto& r : f.rays()) j["rays"].push_back(to_json(r));
  j["max_cones"] = f.max_cones();
  if (f.has_labels()) j["labels"] = f.ray_labels();
  return j;
}

fan::Fan fan_from_json(const Json& j) {
  auto rank = get<std::size_t>(j, "rank");
  std::vector<LatticeVector> rays;
  for (const auto& r : array_field(j, "rays")) {
    LatticeVector u = vector_from_json(r);
    if (u.rank() != rank) throw DimensionMismatch("ray " + u.str() + " in a rank " + std::to_string(rank) + " fan");
    if (u.is_zero()) throw ZeroVector("fan rays must be nonzero");
    rays.push_back(u.primitive());
  }
  std::vector<fan::RaySet> cones;
  for (const auto& c : array_field(j, "max_cones")) {
    fan::RaySet s;
    try {
      s = c.get<fan::RaySet>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("max_cones entries must be arrays of ray indices");
    }
    for (auto i : s)
      if (i >= rays.size()) throw InvalidFan("ray index " + std::to_string(i) + " out of range");
    std::sort(s.begin(), s.end());
    cones.push_back(std::move(s));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
  if (!labels.empty() && labels.size() != rays.size()) throw ParseError("labels must match the rays");
  return fan::Fan(rank, std::move(rays), std::move(cones), std::move(labels));
}

Json to_json(const fan::TDivisor& d) { return Json{{"coeffs", ints_json(d.coeffs)}}; }

fan::TDivisor divisor_from_json(const Json& j, const fan::Fan* f) {
  fan::TDivisor d{ints_from_json(field(j, "coeffs"))};
  if (f && d.coeffs.size() != f->rays().size())
    throw DimensionMismatch("divisor has " + std::to_string(d.coeffs.size()) + " coefficients for " + std::to_string(f->rays().size()) + " rays");
  return d;
}

Json to_json(const drum::LatticePolytope& p) {
  Json j;
  j["rank"] = p.rank();
  j["vertices"] = Json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(to_json(v));
  return j;
}

drum::LatticePolytope polytope_from_json(const Json& j) {
  auto rank = get<std::size_t>(j, "rank");
  std::vector<LatticeVector> pts;
  for (const auto& v : array_field(j, "vertices")) pts.push_back(vector_from_json(v));
  return drum::LatticePolytope(rank, pts);
}

// ---------------------------------------------------------------- reports

Json to_json(const tflow::BBReport& r, const fan::Fan& f) {
  Json j;
  j["fan"] = to_json(f);
  j["v"] = to_json(r.v);
  j["components"] = Json::array();
  for (const auto& c : r.components) {
    Json cj;
    cj["min_cone"] = c.min_cone;
    cj["component_fan"] = to_json(c.component_fan);
    cj["dim"] = c.dim;
    cj["weight_cone"] = sizes_json(c.weight_cone);
    cj["tangent_weights"] = ints_json(c.tangent_weights);
    cj["nu_plus"] = c.nu_plus;
    cj["nu_minus"] = c.nu_minus;
    cj["mu"] = optional_json(c.mu);
    j["components"].push_back(std::move(cj));
  }
  j["source"] = sizes_json(r.source);
  j["sink"] = sizes_json(r.sink);
  j["has_divisor"] = r.has_divisor;
  j["bandwidth"] = optional_json(r.bandwidth);
  j["equalized"] = r.equalized;
  j["b_type"] = r.b_type;
  j["curve_class_rank"] = r.curve_class_rank;
  j["bordism_rank"] = r.bordism_rank ? Json(*r.bordism_rank) : Json(nullptr);
  j["class_group_proxy"] = r.class_group_proxy ? Json(*r.class_group_proxy) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : r.curves.rows)
    rows.push_back(Json{{"wall", row.wall},
                        {"source_cone", row.source_cone},
                        {"sink_cone", row.sink_cone},
                        {"source", row.source},
                        {"sink", row.sink},
                        {"fixed", row.fixed},
                        {"delta", to_json(row.delta)},
                        {"degree", to_json(row.degree)},
                        {"mu_difference", to_json(row.mu_difference)},
                        {"am_fm", row.am_fm},
                        {"normal_weights", row.normal_weights}});
  j["curves"] = Json{{"rows", rows}, {"skipped", r.curves.skipped}};
  return j;
}

std::pair<fan::Fan, tflow::BBReport> bb_report_from_json(const Json& j) {
  fan::Fan f = fan_from_json(field(j, "fan"));
  tflow::BBReport r;
  try {
    r.v = vector_from_json(field(j, "v"));
    for (const auto& cj : array_field(j, "components")) {
      tflow::FixedComponent c;
      c.min_cone = get<fan::RaySet>(cj, "min_cone");
      c.component_fan = fan_from_json(field(cj, "component_fan"));
      c.dim = get<std::size_t>(cj, "dim");
      c.weight_cone = optional_size(cj, "weight_cone");
      c.tangent_weights = ints_from_json(field(cj, "tangent_weights"));
      c.nu_plus = get<std::size_t>(cj, "nu_plus");
      c.nu_minus = get<std::size_t>(cj, "nu_minus");
      if (!field(cj, "mu").is_null()) c.mu = int_from_json(cj.at("mu"));
      r.components.push_back(std::move(c));
    }
    r.source = optional_size(j, "source");
    r.sink = optional_size(j, "sink");
    r.has_divisor = get<bool>(j, "has_divisor");
    if (!field(j, "bandwidth").is_null()) r.bandwidth = int_from_json(j.at("bandwidth"));
    r.equalized = get<bool>(j, "equalized");
    r.b_type = get<bool>(j, "b_type");
    r.curve_class_rank = get<std::size_t>(j, "curve_class_rank");
    if (!field(j, "bordism_rank").is_null()) r.bordism_rank = j.at("bordism_rank").get<long>();
    if (!field(j, "class_group_proxy").is_null()) r.class_group_proxy = j.at("class_group_proxy").get<long>();
    const Json& curves = field(j, "curves");
    for (const auto& row : array_field(curves, "rows")) {
      tflow::CurveRow c;
      c.wall = get<fan::RaySet>(row, "wall");
      c.source_cone = get<std::size_t>(row, "source_cone");
      c.sink_cone = get<std::size_t>(row, "sink_cone");
      c.source = get<std::size_t>(row, "source");
      c.sink = get<std::size_t>(row, "sink");
      c.fixed = get<bool>(row, "fixed");
      c.delta = int_from_json(field(row, "delta"));
      c.degree = int_from_json(field(row, "degree"));
      c.mu_difference = int_from_json(field(row, "mu_difference"));
      c.am_fm = get<bool>(row, "am_fm");
      c.normal_weights = get<bool>(row, "normal_weights");
      r.curves.rows.push_back(std::move(c));
    }
    r.curves.skipped = get<std::vector<fan::RaySet>>(curves, "skipped");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return {std::move(f), std::move(r)};
}

Json to_json(const atiyah::Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"witness", optional_json(c.witness)}});
  return Json{{"title", r.title}, {"ok", r.ok()}, {"checks", checks}};
}

atiyah::Report atiyah_report_from_json(const Json& j) {
  atiyah::Report r;
  r.title = get<std::string>(j, "title");
  for (const auto& cj : array_field(j, "checks")) {
    atiyah::Check c;
    c.name = get<std::string>(cj, "name");
    c.ok = get<bool>(cj, "ok");
    c.detail = get<std::string>(cj, "detail");
    if (!field(cj, "witness").is_null()) c.witness = vector_from_json(cj.at("witness"));
    r.checks.push_back(std::move(c));
  }
  if (get<bool>(j, "ok") != r.ok()) throw ParseError("report \"ok\" disagrees with its checks");
  return r;
}

namespace {

Json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  Json j = Json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

Json coweight_json(const rootsys::Coweight& cw) { return Json{{"name", cw.name}, {"root_values", cw.root_values}}; }

}  // namespace

Json to_json(const homog::ActionReport& r) {
  Json j;
  j["space"] = r.space;
  j["coweight"] = coweight_json(r.cw);
  j["dim"] = r.dim;
  j["shift"] = to_json(r.shift);
  j["bandwidth"] = r.bandwidth;
  j["equalized"] = r.equalized;
  j["equalized_at_extremes"] = r.equalized_at_extremes;
  j["buckets"] = Json::array();
  for (const auto& b : r.buckets)
    j["buckets"].push_back(Json{{"mu", b.key},
                                {"size", b.size},
                                {"zero_weights", histogram_json(b.zero_histogram)},
                                {"nu_plus", b.nu_plus},
                                {"nu_minus", b.nu_minus},
                                {"equalized", b.equalized}});
  j["points"] = Json::array();
  for (const auto& p : r.points)
    j["points"].push_back(Json{{"weight", p.point.weight}, {"word", p.point.word}, {"mu", p.mu}, {"tangent", p.tangent}});
  return j;
}

Json to_json(const homog::AdjointActionReport& r) {
  Json j;
  j["type"] = r.type.str();
  j["node"] = r.node;
  j["M"] = r.M;
  j["short_grading"] = r.short_grading;
  j["y_pm_points"] = r.y_pm_points;
  j["y_0_points"] = r.y_0_points;
  j["y_pm_dim"] = sizes_json(r.y_pm_dim);
  j["y_0_dims"] = histogram_json(r.y_0_histogram);
  j["expected"] = r.expected ? Json{{"y_pm", r.expected->y_pm}, {"y_0", r.expected->y_0}} : Json(nullptr);
  j["identified"] = r.identified;
  j["action"] = to_json(r.action);
  return j;
}

Json to_json(const homog::Bw3Certificate& c) {
  Json clauses = Json::array();
  for (const auto& k : c.clauses) clauses.push_back(Json{{"name", k.name}, {"ok", k.ok}, {"detail", k.detail}});
  return Json{{"space", c.space},
              {"coweight", c.coweight},
              {"n", c.n},
              {"buckets", c.bucket_sizes},
              {"inner_zero_counts", c.inner_zero_counts},
              {"index", optional_json(c.index)},
              {"passed", c.passed()},
              {"clauses", clauses}};
}

homog::Bw3Certificate bw3_certificate_from_json(const Json& j) {
  homog::Bw3Certificate c;
  c.space = get<std::string>(j, "space");
  c.coweight = get<std::string>(j, "coweight");
  c.n = get<std::size_t>(j, "n");
  c.bucket_sizes = get<std::vector<std::size_t>>(j, "buckets");
  c.inner_zero_counts = get<std::vector<std::size_t>>(j, "inner_zero_counts");
  if (!field(j, "index").is_null()) c.index = rat_from_json(j.at("index"));
  for (const auto& k : array_field(j, "clauses"))
    c.clauses.push_back(homog::Clause{get<std::string>(k, "name"), get<bool>(k, "ok"), get<std::string>(k, "detail")});
  if (get<bool>(j, "passed") != c.passed()) throw ParseError("certificate \"passed\" disagrees with its clauses");
  return c;
}

Json to_json(const std::vector<homog::TableRow>& tables) {
  Json out = Json::array();
  for (const auto& t : tables) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row;
      row["node"] = r.node;
      row["y_pm"] = r.expected ? Json(r.expected->y_pm) : Json(nullptr);
      row["y_0"] = r.expected ? Json(r.expected->y_0) : Json(nullptr);
      row["y_pm_dim"] = sizes_json(r.y_pm_dim);
      row["y_0_dims"] = histogram_json(r.y_0_histogram);
      row["buckets"] = {r.y_pm_points, r.y_0_points, r.y_pm_points};
      rows.push_back(std::move(row));
    }
    out.push_back(Json{{"type", t.type}, {"adjoint", t.adjoint}, {"short_nodes", t.short_nodes}, {"rows", rows}});
  }
  return out;
}

// ---------------------------------------------------------------- files

Json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot read " + p.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& p, const Json& j) {
  std::ofstream out(p);
  if (!out) throw ParseError("cannot write " + p.string());
  out << dump(j);
}

void export_suite(const atiyah::AtiyahSuite& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Json fans = Json::array();
  for (const auto& nf : s.fans()) {
    std::string file = nf.name + ".json";
    write_file(dir / file, to_json(nf.fan));
    fans.push_back(Json{{"name", nf.name},
                        {"symbol", nf.symbol},
                        {"lattice", nf.lattice == atiyah::Lattice::big ? "N" : "N'"},
                        {"file", file}});
  }
  Json manifest{{"type", s.type().str()}, {"v", to_json(s.v())}, {"u", to_json(s.u())}, {"fans", fans}};
  write_file(dir / "manifest.json", manifest);
}

}  // namespace cstar::io
