// Copyright 2026 The tripowmin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPOWMIN_CLI_HPP_
#define TRIPOWMIN_CLI_HPP_

// `tripowmin solve|sequence|verify`. Exit codes: 0 success, 2 input
// validation, 3 verification failure.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tripowmin/closed_form.hpp"
#include "tripowmin/error.hpp"
#include "tripowmin/geometry.hpp"
#include "tripowmin/kkt.hpp"
#include "tripowmin/numeric_oracle.hpp"
#include "tripowmin/verification.hpp"

namespace tripowmin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitVerificationFailed = 3;

using Json = nlohmann::ordered_json;

// 12 significant digits for text and CSV.
inline std::string fmt(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace detail {

inline double parse_real(std::string_view tok) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a number: '" + std::string(tok) + "'");
  }
  return v;
}

inline std::vector<double> parse_real_list(std::string_view text, char sep) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(sep, pos), text.size());
    out.push_back(parse_real(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

inline GeneralTriangle parse_vertices(const std::string& text) {
  std::istringstream in(text);
  std::vector<Point2> pts;
  std::string tok;
  while (in >> tok) {
    const auto xy = parse_real_list(tok, ',');
    if (xy.size() != 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "vertex must be 'x,y', got '" + tok + "'");
    }
    pts.push_back({xy[0], xy[1]});
  }
  if (pts.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "--vertices needs exactly three 'x,y' pairs");
  }
  return {{pts[0], pts[1], pts[2]}};
}

struct TriangleInput {
  Canonicalization frame;
  std::array<Point2, 3> original;
};

inline TriangleInput resolve_triangle(const std::string& vertices,
                                      const std::string& canonical) {
  if (vertices.empty() == canonical.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --vertices or --canonical");
  }
  if (!vertices.empty()) {
    const GeneralTriangle t = parse_vertices(vertices);
    return {canonicalize(t), t.v};
  }
  const auto abc = parse_real_list(canonical, ',');
  if (abc.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "--canonical needs a,b,c");
  }
  const CanonicalTriangle tri(abc[0], abc[1], abc[2]);
  return {{tri, Isometry{}}, tri.vertices()};
}

// Adding 0.0 turns -0 into +0.
inline Json point_json(Point2 p) { return Json{{"x", p.x + 0.0}, {"y", p.y + 0.0}}; }

inline Json triangle_json(const TriangleInput& in) {
  Json arr = Json::array();
  for (const Point2& v : in.original) arr.push_back(Json::array({v.x, v.y}));
  return arr;
}

inline Json canonical_json(const CanonicalTriangle& t) {
  return Json{{"a", t.a()}, {"b", t.b()}, {"c", t.c()}};
}

inline constexpr std::array<const char*, 3> kConstraintNames{"AB", "AC", "BC"};

inline Json kkt_json(const KktReport& k) {
  Json active = Json::array();
  for (int i = 0; i < 3; ++i) {
    if (k.active[i]) active.push_back(kConstraintNames[i]);
  }
  Json j;
  j["active_set"] = active;
  j["multipliers"] = Json::array(
      {k.multipliers[0], k.multipliers[1], k.multipliers[2]});
  j["stationarity_residual"] = k.stationarity_residual;
  j["relative_stationarity_residual"] = k.relative_stationarity_residual;
  j["complementary_slackness_residual"] = k.complementary_slackness_residual;
  j["hessian_fxx"] = k.hessian_fxx ? Json(*k.hessian_fxx) : Json(nullptr);
  j["hessian_det"] = k.hessian_det ? Json(*k.hessian_det) : Json(nullptr);
  j["verdict"] = std::string(to_string(k.verdict));
  return j;
}

struct OracleSummary {
  Point2 grid_point;
  double grid_value = 0.0;
  std::optional<ProjectedGradientResult> descent;
  double point_gap = 0.0;
  double value_gap_rel = 0.0;
  double oracle_value = 0.0;
  double closed_form_value = 0.0;
  bool passed = false;
};

inline Json oracle_json(const OracleSummary& o) {
  Json j;
  j["grid"] = Json{{"x", o.grid_point.x}, {"y", o.grid_point.y},
                   {"value", o.grid_value}};
  if (o.descent) {
    j["projected_gradient"] =
        Json{{"x", o.descent->point.x}, {"y", o.descent->point.y},
             {"value", o.descent->value},
             {"iterations", o.descent->iterations}};
  } else {
    j["projected_gradient"] = nullptr;
  }
  j["point_gap"] = o.point_gap;
  j["value_gap_rel"] = o.value_gap_rel;
  j["oracle_value"] = o.oracle_value;
  j["closed_form_value"] = o.closed_form_value;
  j["passed"] = o.passed;
  return j;
}

// RFC 4180: quote fields that contain separators, quotes or line breaks.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& out,
                          const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

inline std::string point_text(Point2 p) {
  return "(" + fmt(p.x) + ", " + fmt(p.y) + ")";
}

struct SolveOptions {
  std::string vertices;
  std::string canonical;
  double n = 0.0;
  std::string format = "text";
  bool verify = false;
  OracleConfig oracle;
  double tol_point = 1e-5;  // relative to the diameter
  double tol_value = 1e-8;  // relative
};

inline int run_solve(const SolveOptions& opt, std::ostream& out) {
  const TriangleInput in = resolve_triangle(opt.vertices, opt.canonical);
  require_exponent_at_least_one(opt.n);
  const CanonicalTriangle& tri = in.frame.triangle;
  const Isometry& iso = in.frame.isometry;
  const double n = opt.n;

  Point2 point;
  double value = 0.0;
  std::optional<DerivedConstants> constants;
  std::optional<VertexLabel> vertex;
  if (n > 1.0) {
    const MinimizerResult m = minimize_closed_form(in.frame, n);
    point = m.point_canonical;
    value = m.value;
    constants = m.constants;
  } else {
    const VertexMinimum vm = minimize_n1(tri);
    point = vm.point;
    value = vm.value;
    vertex = vm.vertex;
  }
  const Point2 point_original = iso.inverse(point);

  std::optional<KktReport> kkt;
  std::optional<OracleSummary> oracle;
  std::string oracle_error;
  if (opt.verify) {
    const double point_tol = opt.tol_point * tri.diameter();
    OracleSummary o;
    if (n > 1.0) {
      kkt = kkt_residual(tri, n, point);
      try {
        const DiscrepancyReport rep =
            compare(tri, n, opt.oracle, point_tol, opt.tol_value);
        o.grid_point = rep.grid.point;
        o.grid_value = rep.grid.value;
        o.descent = rep.descent;
        o.point_gap = rep.point_gap;
        o.value_gap_rel = rep.value_gap_rel;
        o.oracle_value = rep.oracle_value;
        o.closed_form_value = rep.closed_form_value;
        o.passed = rep.passed;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDidNotConverge) throw;
        oracle_error = e.what();
      }
    } else {
      const GridSearchResult g = grid_search(tri, n, opt.oracle);
      o.grid_point = g.point;
      o.grid_value = g.value;
      o.point_gap = distance(g.point, point);
      o.value_gap_rel = std::abs(g.value - value) / value;
      o.oracle_value = g.value;
      o.closed_form_value = value;
      o.passed = o.point_gap <= point_tol && o.value_gap_rel <= opt.tol_value;
    }
    if (oracle_error.empty()) oracle = o;
  }
  const bool failed =
      opt.verify && ((kkt && kkt->verdict != KktVerdict::kSatisfied) ||
                     !oracle || !oracle->passed);

  if (opt.format == "json") {
    Json j;
    j["triangle"] = triangle_json(in);
    j["canonical"] = canonical_json(tri);
    j["n"] = n;
    j["minimizer"] = point_json(point);
    j["minimizer_original"] = point_json(point_original);
    j["value"] = value;
    j["constants"] =
        constants ? Json{{"p", constants->p}, {"q", constants->q},
                         {"t", constants->t}, {"r", constants->r},
                         {"lambda", constants->lambda}}
                  : Json(nullptr);
    j["kkt"] = kkt ? kkt_json(*kkt) : Json(nullptr);
    j["oracle"] = oracle ? oracle_json(*oracle) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    write_csv_row(out, {"n", "x", "y", "x_original", "y_original", "value",
                        "p", "q", "t", "r", "lambda", "kkt_verdict",
                        "oracle_passed"});
    auto opt_num = [&](double DerivedConstants::*field) {
      return constants ? fmt((*constants).*field) : std::string();
    };
    write_csv_row(
        out, {fmt(n), fmt(point.x), fmt(point.y), fmt(point_original.x),
              fmt(point_original.y), fmt(value), opt_num(&DerivedConstants::p),
              opt_num(&DerivedConstants::q), opt_num(&DerivedConstants::t),
              opt_num(&DerivedConstants::r),
              opt_num(&DerivedConstants::lambda),
              kkt ? std::string(to_string(kkt->verdict)) : std::string(),
              oracle ? (oracle->passed ? "true" : "false")
                     : (opt.verify ? "false" : "")});
  } else {
    out << "triangle: " << point_text(in.original[0]) << " "
        << point_text(in.original[1]) << " " << point_text(in.original[2])
        << "\n";
    out << "canonical: a=" << fmt(tri.a()) << " b=" << fmt(tri.b())
        << " c=" << fmt(tri.c()) << "\n";
    out << "n: " << fmt(n) << "\n";
    if (vertex) out << "vertex: " << to_char(*vertex) << "\n";
    out << "minimizer: " << point_text(point) << "\n";
    out << "minimizer_original: " << point_text(point_original) << "\n";
    out << "value: " << fmt(value) << "\n";
    if (constants) {
      out << "constants: p=" << fmt(constants->p) << " q=" << fmt(constants->q)
          << " t=" << fmt(constants->t) << " r=" << fmt(constants->r)
          << " lambda=" << fmt(constants->lambda) << "\n";
    }
    if (kkt) {
      out << "kkt: verdict=" << to_string(kkt->verdict) << " active={";
      bool first = true;
      for (int i = 0; i < 3; ++i) {
        if (!kkt->active[i]) continue;
        out << (first ? "" : ",") << kConstraintNames[i];
        first = false;
      }
      out << "} multipliers=(" << fmt(kkt->multipliers[0]) << ", "
          << fmt(kkt->multipliers[1]) << ", " << fmt(kkt->multipliers[2])
          << ") stationarity_residual=" << fmt(kkt->stationarity_residual);
      if (kkt->hessian_fxx) {
        out << " hessian_fxx=" << fmt(*kkt->hessian_fxx)
            << " hessian_det=" << fmt(*kkt->hessian_det);
      }
      out << "\n";
    }
    if (oracle) {
      out << "oracle: passed=" << (oracle->passed ? "true" : "false")
          << " point_gap=" << fmt(oracle->point_gap)
          << " value_gap_rel=" << fmt(oracle->value_gap_rel)
          << " oracle_value=" << fmt(oracle->oracle_value) << "\n";
    }
  }
  if (!oracle_error.empty()) {
    throw Error(ErrorCode::kDidNotConverge, oracle_error);
  }
  return failed ? kExitVerificationFailed : kExitOk;
}

struct SequenceOptions {
  std::string vertices;
  std::string canonical;
  std::string n_list;
  int n_max = 0;
  std::string format = "text";
};

inline int run_sequence(const SequenceOptions& opt, std::ostream& out) {
  const TriangleInput in = resolve_triangle(opt.vertices, opt.canonical);
  if (opt.n_list.empty() == (opt.n_max == 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --n-list or --n-max");
  }
  std::vector<double> ns;
  if (!opt.n_list.empty()) {
    ns = parse_real_list(opt.n_list, ',');
  } else {
    if (opt.n_max < 2) {
      throw Error(ErrorCode::kInvalidExponent, "--n-max must be at least 2");
    }
    for (int n = 2; n <= opt.n_max; ++n) ns.push_back(n);
  }
  const CanonicalTriangle& tri = in.frame.triangle;
  const Isometry& iso = in.frame.isometry;
  const auto seq = critical_point_sequence(tri, ns);
  const Point2 limit = iso.inverse(limit_point(tri));

  if (opt.format == "json") {
    Json rows = Json::array();
    for (const SequenceEntry& e : seq) {
      const Point2 p = iso.inverse(e.point);
      rows.push_back(Json{{"n", e.n}, {"x", p.x + 0.0}, {"y", p.y + 0.0},
                          {"value", e.value},
                          {"dist_to_incenter", e.distance_to_limit}});
    }
    Json j;
    j["triangle"] = triangle_json(in);
    j["canonical"] = canonical_json(tri);
    j["rows"] = rows;
    j["limit"] = point_json(limit);
    out << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    write_csv_row(out, {"n", "x", "y", "value", "dist_to_incenter"});
    for (const SequenceEntry& e : seq) {
      const Point2 p = iso.inverse(e.point);
      write_csv_row(out, {fmt(e.n), fmt(p.x), fmt(p.y), fmt(e.value),
                          fmt(e.distance_to_limit)});
    }
    write_csv_row(out, {"limit", fmt(limit.x), fmt(limit.y), "", "0"});
  } else {
    out << "n\tx\ty\tvalue\tdist_to_incenter\n";
    for (const SequenceEntry& e : seq) {
      const Point2 p = iso.inverse(e.point);
      out << fmt(e.n) << '\t' << fmt(p.x) << '\t' << fmt(p.y) << '\t'
          << fmt(e.value) << '\t' << fmt(e.distance_to_limit) << "\n";
    }
    out << "limit\t" << fmt(limit.x) << '\t' << fmt(limit.y) << "\t\t0\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  int trials = 20;
  std::uint64_t seed = 1;
  double tol_point = 1e-5;
  double tol_value = 1e-8;
  std::string format = "text";
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out) {
  if (opt.trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--trials must be at least 1");
  }
  if (!(opt.tol_point >= 0.0) || !(opt.tol_value >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be >= 0");
  }
  std::mt19937_64 rng(opt.seed);
  int passed = 0;
  Json failures = Json::array();
  for (int i = 0; i < opt.trials; ++i) {
    const GeneralTriangle t = random_vertex_triangle(rng);
    const CanonicalTriangle tri = canonicalize(t).triangle;
    const TrialOutcome res =
        run_verification_trial(tri, opt.tol_point, opt.tol_value);
    if (res.passed) {
      ++passed;
      continue;
    }
    std::string where;
    for (const Point2& v : t.v) where += (where.empty() ? "" : " ") + fmt(v.x) + "," + fmt(v.y);
    for (const std::string& f : res.failures) {
      failures.push_back(Json{{"trial", i}, {"vertices", where}, {"check", f}});
    }
  }
  if (opt.format == "json") {
    Json j;
    j["trials"] = opt.trials;
    j["seed"] = opt.seed;
    j["passed"] = passed;
    j["failures"] = failures;
    out << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    write_csv_row(out, {"trial", "vertices", "check"});
    for (const Json& f : failures) {
      write_csv_row(out, {std::to_string(f["trial"].get<int>()),
                          f["vertices"].get<std::string>(),
                          f["check"].get<std::string>()});
    }
  } else {
    for (const Json& f : failures) {
      out << "FAIL trial " << f["trial"].get<int>() << " vertices \""
          << f["vertices"].get<std::string>() << "\": "
          << f["check"].get<std::string>() << "\n";
    }
  }
  // The summary line is the last thing on stdout in every format but JSON.
  if (opt.format != "json") {
    out << passed << "/" << opt.trials << " passed\n";
  }
  return passed == opt.trials ? kExitOk : kExitVerificationFailed;
}

}  // namespace detail

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Minimal sum of powered distances from the sides of a triangle",
               "tripowmin"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv", "text"};

  detail::SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "minimize F for one exponent");
  auto* sv = solve_cmd->add_option("--vertices", solve.vertices,
                                   "\"x1,y1 x2,y2 x3,y3\"");
  auto* sc = solve_cmd->add_option("--canonical", solve.canonical, "a,b,c");
  sv->excludes(sc);
  solve_cmd->add_option("--n", solve.n, "exponent >= 1")->required();
  solve_cmd->add_option("--format", solve.format)
      ->check(CLI::IsMember(formats));
  solve_cmd->add_flag("--verify", solve.verify,
                      "certify with KKT and numeric oracles");
  solve_cmd->add_option("--tol-point", solve.tol_point,
                        "oracle point tolerance, relative to the diameter");
  solve_cmd->add_option("--tol-value", solve.tol_value,
                        "oracle relative value tolerance");
  solve_cmd->add_option("--grid-resolution", solve.oracle.grid_resolution);
  solve_cmd->add_option("--zoom-iterations", solve.oracle.zoom_iterations);
  solve_cmd->add_option("--zoom-factor", solve.oracle.zoom_factor);
  solve_cmd->add_option("--pg-step", solve.oracle.pg_step);
  solve_cmd->add_option("--pg-tolerance", solve.oracle.pg_tolerance);
  solve_cmd->add_option("--pg-max-iters", solve.oracle.pg_max_iters);

  detail::SequenceOptions seq;
  CLI::App* seq_cmd =
      app.add_subcommand("sequence", "minimizers for a list of exponents");
  auto* qv = seq_cmd->add_option("--vertices", seq.vertices);
  auto* qc = seq_cmd->add_option("--canonical", seq.canonical);
  qv->excludes(qc);
  auto* nl = seq_cmd->add_option("--n-list", seq.n_list, "comma list of n > 1");
  auto* nm = seq_cmd->add_option("--n-max", seq.n_max, "use n = 2..N");
  nl->excludes(nm);
  seq_cmd->add_option("--format", seq.format)->check(CLI::IsMember(formats));

  detail::VerifyOptions ver;
  CLI::App* ver_cmd =
      app.add_subcommand("verify", "randomized certification runs");
  ver_cmd->add_option("--trials", ver.trials);
  ver_cmd->add_option("--seed", ver.seed);
  ver_cmd->add_option("--tol-point", ver.tol_point);
  ver_cmd->add_option("--tol-value", ver.tol_value);
  ver_cmd->add_option("--format", ver.format)->check(CLI::IsMember(formats));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) return detail::run_solve(solve, out);
    if (seq_cmd->parsed()) return detail::run_sequence(seq, out);
    return detail::run_verify(ver, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kDidNotConverge ? kExitVerificationFailed
                                                  : kExitInvalidInput;
  }
}

}  // namespace tripowmin::cli

#endif  // TRIPOWMIN_CLI_HPP_
