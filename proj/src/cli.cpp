#include "cstar/cli.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "cstar/errors.hpp"
#include "cstar/io.hpp"

namespace cstar::cli {

namespace {

using io::Json;

std::string join_sizes(const std::vector<std::size_t>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return "{" + s + "}";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void print_report(std::ostream& out, const atiyah::Report& r) {
  out << r.title << "\n";
  for (const auto& c : r.checks) {
    out << (c.ok ? "  ok    " : "  FAIL  ") << c.name;
    if (!c.ok && !c.detail.empty()) out << ": " << c.detail;
    if (!c.ok && c.witness) out << " (witness " << c.witness->str() << ")";
    out << "\n";
  }
}

std::string weights(const std::vector<exactlat::Int>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? "," : "") + ws[i].get_str();
  return "(" + s + ")";
}

void print_bb(std::ostream& out, const fan::Fan& f, const tflow::BBReport& r) {
  out << "λ^v with v = " << r.v.str() << ", " << r.components.size() << " fixed components\n";
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    std::string role = r.sink == i ? "sink" : (r.source == i ? "source" : "inner");
    out << "  [" << i << "] " << role << "  V(" << fan::describe(f, c.min_cone) << ")  dim " << c.dim << "  ν+ " << c.nu_plus
        << "  ν− " << c.nu_minus;
    if (c.mu) out << "  μ " << *c.mu;
    if (!c.tangent_weights.empty()) out << "  weights " << weights(c.tangent_weights);
    out << "\n";
  }
  std::size_t am_fm = 0;
  for (const auto& row : r.curves.rows) am_fm += row.am_fm;
  out << "  bandwidth " << (r.bandwidth ? r.bandwidth->get_str() : std::string("undefined")) << ", equalized " << yes(r.equalized)
      << ", B-type " << yes(r.b_type) << "\n";
  out << "  bordism rank " << (r.bordism_rank ? std::to_string(*r.bordism_rank) : std::string("undefined"))
      << ", class-group proxy " << (r.class_group_proxy ? std::to_string(*r.class_group_proxy) : std::string("undefined")) << "\n";
  out << "  invariant curves " << r.curves.rows.size() << " (μ(source)−μ(sink) = δ·deg on " << am_fm << "), skipped walls "
      << r.curves.skipped.size() << "\n";
}

void print_action(std::ostream& out, const homog::ActionReport& r) {
  out << r.space << " under " << r.cw.name << ": dim " << r.dim << ", " << r.points.size() << " fixed points, bandwidth " << r.bandwidth
      << ", equalized " << yes(r.equalized) << "\n";
  for (const auto& b : r.buckets) {
    out << "  μ " << b.key << ": " << b.size << " points, zero weights";
    for (const auto& [z, n] : b.zero_histogram) out << " " << z << "×" << n;
    out << ", ν+ ≤ " << b.nu_plus << ", ν− ≤ " << b.nu_minus << "\n";
  }
}

// ---------------------------------------------------------------- verbs

struct Options {
  bool json = false;
  std::string type, emit, fan_file, v, divisor_file, pminus, pplus, index, out_file;
  int node = 0;
  bool short_nodes = false, sweep = false;
  std::uint64_t seed = 1;
};

std::vector<atiyah::Report> verify_suite(const atiyah::AtiyahSuite& s) {
  return {atiyah::verify_triangulations(s), atiyah::verify_bundle_structure(s), atiyah::verify_normal_degrees(s)};
}

bool all_ok(const std::vector<atiyah::Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const atiyah::Report& r) { return r.ok(); });
}

// every type within the CSTAR_SWEEP bounds, one line each
int cmd_atiyah_sweep(const Options& o, std::ostream& out) {
  auto b = atiyah::SweepBounds::from_env();
  Json rows = Json::array();
  bool ok = true;
  if (!o.json)
    out << "sweep r+s ≤ " << b.max_r_plus_s << ", n ≤ " << b.max_n << (b.max_q >= 0 ? ", q ≤ " + std::to_string(b.max_q) : "") << "\n";
  for (const auto& t : atiyah::sweep(b)) {
    auto reports = verify_suite(atiyah::AtiyahSuite(t));
    Json failed = Json::array();
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        if (!c.ok) failed.push_back(c.name);
    ok = ok && failed.empty();
    if (o.json)
      rows.push_back(Json{{"type", t.str()}, {"ok", failed.empty()}, {"failed", failed}});
    else
      out << "  " << t.str() << (failed.empty() ? "  verified" : "  FAILED: " + failed.front().get<std::string>()) << "\n";
  }
  if (o.json)
    out << io::dump(Json{{"bounds", Json{{"max_r_plus_s", b.max_r_plus_s}, {"max_n", b.max_n}, {"max_q", b.max_q}}}, {"types", rows}, {"ok", ok}});
  else
    out << (ok ? "verified" : "verification FAILED") << "\n";
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_atiyah(const Options& o, std::ostream& out) {
  if (o.sweep) return cmd_atiyah_sweep(o, out);
  if (o.type.empty()) throw ParseError("atiyah needs --type or --sweep");
  atiyah::AtiyahSuite s(atiyah::AtiyahType::parse(o.type));
  auto reports = verify_suite(s);
  if (!o.emit.empty()) io::export_suite(s, o.emit);
  bool ok = all_ok(reports);
  if (o.json) {
    Json fans = Json::array();
    for (const auto& nf : s.fans()) fans.push_back(Json{{"name", nf.name}, {"symbol", nf.symbol}, {"max_cones", nf.fan.max_cones().size()}});
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(io::to_json(r));
    out << io::dump(Json{{"type", s.type().str()}, {"v", io::to_json(s.v())}, {"fans", fans}, {"reports", rs}, {"ok", ok}});
  } else {
    const auto& t = s.type();
    out << "Atiyah flip of type (" << t.str() << "), q = " << t.q() << ", v = " << s.v().str() << "\n";
    out << "  δ_− = cone(" << s.delta_minus().size() << " f-rays), δ_+ = cone(" << s.delta_plus().size() << " e-rays), δ_0 = cone("
        << s.delta_zero().size() << " h-rays)\n";
    for (const auto& nf : s.fans())
      out << "  " << nf.symbol << " [" << nf.name << "]: " << nf.fan.max_cones().size() << " max cones, "
          << nf.fan.rays().size() << " rays\n";
    for (const auto& r : reports) print_report(out, r);
    if (!o.emit.empty()) out << "wrote " << s.fans().size() << " fans and manifest.json to " << o.emit << "\n";
    out << (ok ? "verified" : "verification FAILED") << "\n";
  }
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_bordism(const Options& o, std::ostream& out) {
  atiyah::AtiyahSuite s(atiyah::AtiyahType::parse(o.type));
  atiyah::BordismResult b = atiyah::verify_bordism(s);
  const fan::Fan& hat = s.fan("hat");
  bool ok = b.report.ok();
  if (o.json) {
    out << io::dump(Json{{"type", s.type().str()},
                         {"sink", b.sink},
                         {"source", b.source},
                         {"inner", b.inner},
                         {"report", io::to_json(b.report)},
                         {"bb", io::to_json(b.bb, hat)},
                         {"ok", ok}});
  } else {
    out << "Σ̂ of type (" << s.type().str() << ") with d = V(v) + V(−v)\n";
    print_bb(out, hat, b.bb);
    print_report(out, b.report);
    out << (ok ? "verified" : "verification FAILED") << "\n";
  }
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_bb(const Options& o, std::ostream& out) {
  fan::Fan f = io::fan_from_json(io::read_file(o.fan_file));
  tflow::OneParamSubgroup h(io::parse_vector(o.v));
  std::optional<fan::TDivisor> d;
  if (!o.divisor_file.empty()) d = io::divisor_from_json(io::read_file(o.divisor_file), &f);
  tflow::BBReport r = tflow::bb_report(f, h, d);
  bool ok = std::all_of(r.curves.rows.begin(), r.curves.rows.end(), [](const tflow::CurveRow& c) { return c.am_fm && c.normal_weights; });
  if (o.json)
    out << io::dump(io::to_json(r, f));
  else
    print_bb(out, f, r);
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

std::pair<long, long> parse_pair(const std::string& text) {
  auto v = io::parse_vector(text);
  if (v.rank() != 2 || !v[0].fits_slong_p() || !v[1].fits_slong_p()) throw ParseError("expected k-,k+ got '" + text + "'");
  return {v[0].get_si(), v[1].get_si()};
}

int cmd_drum(const Options& o, std::ostream& out) {
  if (!o.index.empty()) {
    auto [km, kp] = parse_pair(o.index);
    drum::DrumSpec spec{km, kp};
    long idx = drum::drum_index(spec);
    if (o.json)
      out << io::dump(Json{{"k_minus", km}, {"k_plus", kp}, {"index", idx}});
    else
      out << "drum index for k− = " << km << ", k+ = " << kp << ": " << idx << "\n";
    return ExitCode::ok;
  }
  if (o.pminus.empty() || o.pplus.empty()) throw CLI::ValidationError("drum needs --index or both --pminus and --pplus");
  auto pm = io::polytope_from_json(io::read_file(o.pminus));
  auto pp = io::polytope_from_json(io::read_file(o.pplus));
  auto sum = drum::cayley_sum(pm, pp);
  auto layers = drum::drum_bandwidth_check(sum);
  bool simplex = drum::is_unimodular_simplex(sum);
  if (o.json) {
    Json lv = Json::array();
    for (const auto& x : layers.layer_values) lv.push_back(io::to_json(x));
    out << io::dump(Json{{"cayley_sum", io::to_json(sum)},
                         {"bandwidth", io::to_json(layers.bandwidth)},
                         {"layer_values", lv},
                         {"layer_sizes", layers.layer_sizes},
                         {"unimodular_simplex", simplex}});
  } else {
    out << "P_− ⋆ P_+ in rank " << sum.rank() << ", dim " << sum.dim() << ", " << sum.vertices().size() << " vertices\n";
    for (const auto& v : sum.vertices()) out << "  " << v.str() << "\n";
    for (std::size_t i = 0; i < layers.layer_values.size(); ++i)
      out << "  layer " << layers.layer_values[i].get_str() << ": " << layers.layer_sizes[i] << " vertices\n";
    out << "  bandwidth " << layers.bandwidth.get_str() << ", unimodular simplex " << yes(simplex) << "\n";
  }
  return ExitCode::ok;
}

int cmd_adjoint(const Options& o, std::ostream& out) {
  auto t = rootsys::DynkinType::parse(o.type);
  if (o.short_nodes) {
    auto raw = rootsys::short_grading_nodes(t);
    auto nodes = homog::adjoint_short_nodes(t);
    if (o.json)
      out << io::dump(Json{{"type", t.str()}, {"adjoint", homog::adjoint_space(t).str()}, {"short_gradings", raw}, {"short_nodes", nodes}});
    else
      out << t.str() << ": short gradings at " << join_ints(raw) << ", outside the adjoint marking " << join_ints(nodes) << "\n";
    return ExitCode::ok;
  }
  if (o.node == 0) throw CLI::ValidationError("adjoint needs --node or --short");
  auto r = homog::adjoint_report(t, o.node);
  bool ok = !r.expected || r.identified;
  if (o.json) {
    out << io::dump(io::to_json(r));
  } else {
    out << "adjoint variety " << r.action.space << ", grading by node " << r.node << ": max |g| = " << r.M
        << (r.short_grading ? " (short)" : "") << "\n";
    print_action(out, r.action);
    out << "  Y±: " << r.y_pm_points << " points" << (r.y_pm_dim ? ", dim " + std::to_string(*r.y_pm_dim) : std::string()) << "\n";
    out << "  Y0: " << homog::describe(homog::Fingerprint{r.y_0_histogram}) << "\n";
    if (r.expected)
      out << "  " << (r.identified ? "consistent with" : "NOT consistent with") << " Y± = " << r.expected->y_pm << ", Y0 = " << r.expected->y_0
          << "\n";
  }
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_bw3(const Options& o, std::ostream& out) {
  auto t = rootsys::DynkinType::parse(o.type);
  homog::HomogeneousSpace h = homog::bw3_space(t);
  rootsys::RootSystem rs(t);
  homog::Bw3Certificate c = homog::bw3_evaluate(rs, h, rs.fundamental_coweight(h.marked.front()));
  if (o.json) {
    out << io::dump(io::to_json(c));
  } else {
    out << "bandwidth-3 certificate for " << c.space << " under " << c.coweight << ", n = " << c.n << "\n";
    out << "  buckets " << join_sizes(c.bucket_sizes) << ", inner zero weights " << join_sizes(c.inner_zero_counts)
        << ", index " << (c.index ? c.index->get_str() : std::string("undefined")) << "\n";
    for (const auto& k : c.clauses) out << (k.ok ? "  ok    " : "  FAIL  ") << k.name << (k.ok || k.detail.empty() ? "" : ": " + k.detail) << "\n";
    out << (c.passed() ? "certificate passed" : "certificate FAILED") << "\n";
  }
  return c.passed() ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_tables(const Options& o, std::ostream& out) {
  auto tables = homog::adjoint_tables(homog::table_types());
  bool ok = true;
  for (const auto& t : tables)
    for (const auto& r : t.rows) ok = ok && r.short_grading && r.identified;
  Json j = io::to_json(tables);
  if (!o.out_file.empty()) io::write_file(o.out_file, j);
  if (o.json) {
    out << io::dump(j);
  } else {
    for (const auto& t : tables) {
      out << t.type << "  " << t.adjoint << "  short nodes " << join_ints(t.short_nodes) << "\n";
      for (const auto& r : t.rows)
        out << "    node " << r.node << "  Y± " << (r.expected ? r.expected->y_pm : "?") << " (dim "
            << (r.y_pm_dim ? std::to_string(*r.y_pm_dim) : "?") << ")  Y0 " << (r.expected ? r.expected->y_0 : "?") << " ("
            << homog::describe(homog::Fingerprint{r.y_0_histogram}) << ")  buckets " << r.y_pm_points << "," << r.y_0_points << ","
            << r.y_pm_points << (r.identified ? "" : "  NOT identified") << "\n";
    }
  }
  return ok ? ExitCode::ok : ExitCode::verification_failed;
}

// randomized AM vs FM and principal-divisor checks on the bordism fans
int cmd_selftest(const Options& o, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::size_t curves = 0, failures = 0;
  for (const char* type : {"1,1,3", "1,2,4", "2,1,4"}) {
    atiyah::AtiyahSuite s(atiyah::AtiyahType::parse(type));
    for (const char* name : {"hat", "hat_minus", "hat_plus"}) {
      const fan::Fan& f = s.fan(name);
      tflow::OneParamSubgroup h(s.v());
      for (int k = 0; k < 20; ++k) {
        fan::TDivisor d = fan::zero_divisor(f);
        for (auto& c : d.coeffs) c = coeff(rng);
        for (const auto& row : tflow::invariant_curve_table(f, h, d).rows) {
          ++curves;
          if (!row.am_fm || !row.normal_weights) ++failures;
        }
        std::vector<exactlat::Int> m(f.rank());
        for (auto& x : m) x = coeff(rng);
        fan::TDivisor p = fan::principal_divisor(f, exactlat::LatticeVector(m));
        for (const auto& w : fan::walls(f))
          if (w.complete() && fan::curve_degree(f, w.rays, p) != 0) ++failures;
        auto a = tflow::mu_values(f, h, d), b = tflow::mu_values(f, h, d + p);
        auto spread = [](const std::vector<exactlat::Int>& mu) {
          auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
          return exactlat::Int(*hi - *lo);
        };
        if (spread(a) != spread(b)) ++failures;
      }
    }
  }
  if (o.json)
    out << io::dump(Json{{"seed", o.seed}, {"curves", curves}, {"failures", failures}});
  else
    out << "selftest seed " << o.seed << ": " << curves << " curves, " << failures << " failures\n";
  return failures == 0 ? ExitCode::ok : ExitCode::verification_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact ℂ*-actions on toric varieties and rational homogeneous spaces", "cstar"};
  app.require_subcommand(1);
  Options o;
  auto verb = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_flag("--json", o.json, "machine-readable output");
    return c;
  };
  auto type_opt = [&](CLI::App* c, const char* help) { c->add_option("--type", o.type, help)->required(); };

  CLI::App* atiyah_cmd = verb("atiyah", "build the Atiyah flip suite and verify its triangulations and bundle structure");
  auto* atiyah_type = atiyah_cmd->add_option("--type", o.type, "r,s,n");
  auto* emit = atiyah_cmd->add_option("--emit", o.emit, "directory for the fan files and manifest");
  atiyah_cmd->add_flag("--sweep", o.sweep, "verify every type within the CSTAR_SWEEP bounds (default 5,7)")->excludes(atiyah_type)->excludes(emit);

  CLI::App* bordism_cmd = verb("bordism", "BB analysis of the toric bordism Σ̂");
  type_opt(bordism_cmd, "r,s,n");

  CLI::App* bb_cmd = verb("bb", "BB report for λ^v on a fan file");
  bb_cmd->add_option("--fan", o.fan_file, "fan JSON")->required()->check(CLI::ExistingFile);
  bb_cmd->add_option("--v", o.v, "primitive vector a,b,...")->required();
  bb_cmd->add_option("--divisor", o.divisor_file, "divisor JSON")->check(CLI::ExistingFile);

  CLI::App* drum_cmd = verb("drum", "Cayley sums and the drum index");
  auto* pm = drum_cmd->add_option("--pminus", o.pminus, "polytope JSON at height 0")->check(CLI::ExistingFile);
  auto* pp = drum_cmd->add_option("--pplus", o.pplus, "polytope JSON at height 1")->check(CLI::ExistingFile);
  auto* idx = drum_cmd->add_option("--index", o.index, "k-,k+");
  idx->excludes(pm)->excludes(pp);

  CLI::App* adjoint_cmd = verb("adjoint", "short gradings and the induced action on the adjoint variety");
  type_opt(adjoint_cmd, "Dynkin type, e.g. E7");
  auto* node = adjoint_cmd->add_option("--node", o.node, "grading node");
  adjoint_cmd->add_flag("--short", o.short_nodes, "list the short-grading nodes")->excludes(node);

  CLI::App* bw3_cmd = verb("bw3", "bandwidth-3 certificate");
  type_opt(bw3_cmd, "C3, A5, D6 or E7");

  CLI::App* tables_cmd = verb("tables", "regenerate the adjoint tables");
  tables_cmd->add_option("--out", o.out_file, "also write the JSON here");

  CLI::App* selftest_cmd = verb("selftest", "");
  selftest_cmd->group("");
  selftest_cmd->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return ExitCode::usage_error;
  }

  try {
    if (*atiyah_cmd) return cmd_atiyah(o, out);
    if (*bordism_cmd) return cmd_bordism(o, out);
    if (*bb_cmd) return cmd_bb(o, out);
    if (*drum_cmd) return cmd_drum(o, out);
    if (*adjoint_cmd) return cmd_adjoint(o, out);
    if (*bw3_cmd) return cmd_bw3(o, out);
    if (*tables_cmd) return cmd_tables(o, out);
    if (*selftest_cmd) return cmd_selftest(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const CertificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::verification_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::usage_error;
  }
  return ExitCode::usage_error;
}

}  // namespace cstar::cli
