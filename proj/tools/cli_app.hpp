#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hesslab/hesslab.hpp"

namespace hesslab::cli {

enum Exit { kOk = 0, kInput = 1, kInconclusive = 2 };

struct Common {
  bool json = false;
  std::optional<std::string> config_path;
  std::optional<unsigned> precision_bits;
};

inline void add_common(CLI::App* sc, Common& c, bool json_flag = true) {
  if (json_flag) sc->add_flag("--json", c.json, "JSON on stdout");
  sc->add_option("--config", c.config_path, "key=value config file (default ./hessenberg-lab.toml)");
  sc->add_option("--precision-bits", c.precision_bits, "cap for exact sign refinement");
}

inline Config effective_config(const Common& c) {
  Config cfg = resolve_config(c.config_path);
  if (c.precision_bits) cfg.precision_bits = *c.precision_bits;
  return cfg;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << data;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string verdict_text(const ReducedVerdict& v) {
  std::string s = to_string(v.status);
  if (v.status == VerdictStatus::Reduced) {
    s += " (" + to_string(v.certificate);
    if (v.certificate == CertificateKind::BoundChecked) s += ", B=" + v.bound.get_str();
    s += ")";
  }
  if (v.witness) s += " witness " + v.witness->to_string() + " md " + v.witness_value.get_str();
  s += " complexity " + v.complexity.get_str();
  if (!v.reason.empty()) s += ": " + v.reason;
  return s;
}

inline Strategy make_strategy(const std::string& name, long bound, unsigned precision_bits) {
  if (name == "bounded") return BoundedStrategy{bound, 1};
  if (name == "sail") {
    SailStrategy s;
    s.options.precision_bits = precision_bits;
    return s;
  }
  throw PreconditionError("strategy must be 'sail' or 'bounded'");
}

inline ImageFormat image_format_for(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "ppm") return ImageFormat::PPM;
  if (ext == "svg") return ImageFormat::SVG;
  throw PreconditionError("output image must end in .ppm or .svg");
}

inline std::string summary_text(const GridSummary& s, bool four) {
  std::string t;
  auto line = [&](const std::string& k, std::size_t v) { t += k + " " + std::to_string(v) + "\n"; };
  line("ReduciblePoly", s.reducible);
  if (four) {
    line("FourReal", s.four_real);
    line("TwoRealTwoComplex", s.two_two);
    line("FourComplex", s.four_complex);
  } else {
    line("RS", s.rs);
    line("NRS_Reduced", s.reduced);
    line("NRS_Nonreduced", s.nonreduced);
    line("NRS_Unknown", s.unknown);
  }
  return t;
}

/// Runs one CLI invocation; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Hessenberg reduction, MD-minimization, sails and family atlases", "hesslab"};
  app.require_subcommand(1);
  Common com;
  std::string mtext, vtext, ttext, atext, rtext, strategy = "sail", out_path, xtext, start_text;
  std::optional<std::string> json_path;
  std::optional<long> bound, fallback;
  unsigned jobs = 1;
  int side = 1, direction = 0;
  long tmax = 30;
  std::optional<long> slice;

  auto* reduce = app.add_subcommand("reduce", "perfect Hessenberg form of a matrix from a seed vector");
  reduce->add_option("matrix", mtext, "matrix, e.g. \"0 0 1; 1 0 1; 0 1 3\"")->required();
  reduce->add_option("--seed", vtext, "seed vector, e.g. 1,0,0")->required();
  add_common(reduce, com);

  auto* complexity = app.add_subcommand("complexity", "Hessenberg complexity");
  complexity->add_option("matrix", mtext)->required();
  add_common(complexity, com);

  auto* mdchar = app.add_subcommand("mdchar", "MD-characteristic |det[v, Mv, ...]|");
  mdchar->add_option("matrix", mtext)->required();
  mdchar->add_option("--vector", vtext)->required();
  add_common(mdchar, com);

  auto* form = app.add_subcommand("form", "the cubic form det[v, Mv, M^2 v] of a 3x3 matrix");
  form->add_option("matrix", mtext)->required();
  add_common(form, com);

  auto* minimize = app.add_subcommand("minimize", "exact minimum of the MD-characteristic over a box");
  minimize->add_option("matrix", mtext)->required();
  minimize->add_option("--bound", bound, "box half-width B");
  add_common(minimize, com);

  auto* verdict = app.add_subcommand("verdict", "reducedness of a perfect Hessenberg matrix");
  verdict->add_option("matrix", mtext)->required();
  verdict->add_option("--strategy", strategy, "sail or bounded")->check(CLI::IsMember({"sail", "bounded"}));
  verdict->add_option("--bound", bound, "box half-width for the bounded strategy");
  add_common(verdict, com);

  auto* fingerprint = app.add_subcommand("fingerprint", "reduced perfect forms from MD-minimal sail vertices");
  fingerprint->add_option("matrix", mtext)->required();
  add_common(fingerprint, com);

  auto* sail = app.add_subcommand("sail", "vertices of three periods of a 3x3 sail");
  sail->add_option("matrix", mtext)->required();
  sail->add_option("--side", side, "1 or -1")->check(CLI::IsMember({1, -1}));
  add_common(sail, com);

  auto* period = app.add_subcommand("period", "period of the 2D sail characteristic sequence");
  period->add_option("matrix", mtext)->required();
  add_common(period, com);

  auto* classify2 = app.add_subcommand("classify2", "SL(2,Z) conjugacy class invariants");
  classify2->add_option("matrix", mtext)->required();
  add_common(classify2, com);

  auto* atlas = app.add_subcommand("atlas", "classify a 3x3 Hessenberg family over a window");
  atlas->add_option("--type", ttext, "Hessenberg type, e.g. \"<0,1|1,0,2>\"")->required();
  atlas->add_option("--anchor", atext, "anchor last column, e.g. 1,0,1")->required();
  atlas->add_option("--range", rtext, "mlo:mhi,nlo:nhi");
  atlas->add_option("--strategy", strategy)->check(CLI::IsMember({"sail", "bounded"}));
  atlas->add_option("--bound", bound);
  atlas->add_option("--fallback-bound", fallback, "bounded search used when the sail is inconclusive");
  atlas->add_option("--out", out_path, "image file (.ppm or .svg)");
  atlas->add_option("--json", json_path, "cells as JSON to a file, or stdout without a value")->expected(0, 1);
  atlas->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  add_common(atlas, com, false);

  auto* atlas4 = app.add_subcommand("atlas4", "classify the 4D family <0,1|0,0,1|1,3,1,4>");
  atlas4->add_option("--range", rtext, "lo:hi for each of l, m, n");
  atlas4->add_option("--anchor", atext, "anchor last column (default 0,1,0,1)");
  atlas4->add_option("--slice", slice, "render the cells with this l");
  atlas4->add_option("--out", out_path, "image file of the slice (.ppm or .svg)");
  atlas4->add_option("--json", json_path, "cells as JSON to a file, or stdout without a value")->expected(0, 1);
  atlas4->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  add_common(atlas4, com, false);

  auto* ray = app.add_subcommand("ray", "verdicts along a family ray");
  ray->add_option("--type", ttext)->required();
  ray->add_option("--anchor", atext)->required();
  ray->add_option("--start", start_text, "m,n")->required();
  ray->add_option("--direction", direction, "0 for (-1,0), 1 for (a11,a21)")->check(CLI::IsMember({0, 1}));
  ray->add_option("--tmax", tmax)->check(CLI::NonNegativeNumber);
  ray->add_option("--strategy", strategy)->check(CLI::IsMember({"sail", "bounded"}));
  ray->add_option("--bound", bound);
  add_common(ray, com);

  auto* vd = app.add_subcommand("verify-dirichlet", "check that X lies in the Dirichlet group of M");
  vd->add_option("matrix", mtext)->required();
  vd->add_option("candidate", xtext)->required();
  add_common(vd, com);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInput;
  }

  try {
    const Config cfg = effective_config(com);
    const bool json = com.json || cfg.format == "json";
    SailOptions sopt;
    sopt.precision_bits = cfg.precision_bits;
    const long b = bound.value_or(cfg.bound);

    if (*reduce) {
      IntMatrix m = parse_matrix_any(mtext);
      PerfectForm pf = reduce_to_perfect(m, parse_vector(vtext));
      if (json) out << dump(Json{{"perfect", to_json(pf.perfect)}, {"conjugator", to_json(pf.conjugator)}});
      else out << "perfect: " << pf.perfect.to_string() << "\nconjugator: " << pf.conjugator.to_string() << "\n";
      return kOk;
    }
    if (*complexity) {
      IntMatrix m = parse_matrix_any(mtext);
      if (!is_hessenberg(m)) throw PreconditionError("matrix is not upper Hessenberg");
      Integer c = hessenberg_complexity(m);
      if (json) out << dump(Json{{"complexity", to_json(c)}});
      else out << c.get_str() << "\n";
      return kOk;
    }
    if (*mdchar) {
      IntMatrix m = parse_matrix_any(mtext);
      Integer d = md_characteristic(m, parse_vector(vtext));
      if (json) out << dump(Json{{"md", to_json(d)}});
      else out << d.get_str() << "\n";
      return kOk;
    }
    if (*form) {
      MDForm3 f = md_form3(parse_matrix_any(mtext));
      if (json) {
        Json c = Json::array();
        for (const auto& x : f.coeffs) c.push_back(to_json(x));
        out << dump(Json{{"monomials", {"x^3", "x^2y", "x^2z", "xy^2", "xyz", "xz^2", "y^3", "y^2z", "yz^2", "z^3"}},
                         {"coefficients", c},
                         {"all_even", parity_all_even(f)}});
      } else {
        out << f.to_string() << "\n";
      }
      return kOk;
    }
    if (*minimize) {
      IntMatrix m = parse_matrix_any(mtext);
      BoundedMinimum r = minimize_md_bounded(m, b);
      if (json) {
        Json w = Json::array();
        for (const auto& v : r.witnesses) w.push_back(to_json(v));
        out << dump(Json{{"bound", b}, {"min", to_json(r.value)}, {"witnesses", w}});
      } else {
        out << "min " << r.value.get_str() << " over |v| <= " << b << "\n";
        for (const auto& v : r.witnesses) out << v.to_string() << "\n";
      }
      return kOk;
    }
    if (*verdict) {
      IntMatrix m = parse_matrix_any(mtext);
      ReducedVerdict v = is_reduced(m, make_strategy(strategy, b, cfg.precision_bits));
      if (json) out << dump(to_json(v));
      else out << verdict_text(v) << "\n";
      return v.status == VerdictStatus::Inconclusive ? kInconclusive : kOk;
    }
    if (*fingerprint) {
      Fingerprint fp = hesslab::fingerprint(parse_matrix_any(mtext), sopt);
      if (json) {
        Json ms = Json::array();
        for (const auto& x : fp.matrices) ms.push_back(to_json(x));
        out << dump(Json{{"min_value", to_json(fp.min_value)}, {"matrices", ms}});
      } else {
        out << "min " << fp.min_value.get_str() << "\n";
        for (const auto& x : fp.matrices) out << x.to_string() << "\n";
      }
      return kOk;
    }
    if (*sail) {
      SailData s = compute_sail(parse_matrix_any(mtext), sopt, side);
      if (json) {
        out << dump(sail_to_json(s));
      } else {
        out << "generator " << s.generator.to_string() << "\n";
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
          bool fund = std::find(s.fundamental.begin(), s.fundamental.end(), i) != s.fundamental.end();
          out << s.vertices[i].preimage.to_string() << " md " << s.vertices[i].md.get_str() << (fund ? " *" : "")
              << "\n";
        }
      }
      return kOk;
    }
    if (*period) {
      Period p = sail_period(parse_matrix_any(mtext));
      if (json) out << dump(Json{{"period", to_json(p)}});
      else out << period_to_string(p) << "\n";
      return kOk;
    }
    if (*classify2) {
      Sl2Class c = classify_sl2(parse_matrix_any(mtext));
      Json j;
      std::string text;
      if (const auto* cs = std::get_if<ComplexSpectrum>(&c)) {
        j = Json{{"kind", "complex"}, {"representative", to_json(cs->representative)}};
        text = "complex spectrum, representative " + cs->representative.to_string();
      } else if (const auto* me = std::get_if<MultipleEigen>(&c)) {
        j = Json{{"kind", "multiple"}, {"epsilon", me->epsilon}, {"k", to_json(me->k)}};
        text = "multiple eigenvalue " + std::to_string(me->epsilon) + ", k " + me->k.get_str();
      } else {
        const auto& rs = std::get<RealSpectrum>(c);
        j = Json{{"kind", "real"}, {"period", to_json(rs.period)}};
        text = "real spectrum, period " + period_to_string(rs.period);
      }
      if (json) out << dump(j);
      else out << text << "\n";
      return kOk;
    }
    if (*atlas) {
      HessType t = parse_hess_type(ttext);
      IntVector a = parse_vector(atext);
      GridRange r = rtext.empty() ? cfg.window : parse_grid_range(rtext);
      GridOptions opt;
      opt.strategy = make_strategy(strategy, b, cfg.precision_bits);
      opt.fallback_bound = fallback.value_or(cfg.fallback_bound);
      opt.jobs = jobs;
      auto cells = classify_grid(t, a, r, opt);
      GridSummary s = summarize(cells);
      if (!out_path.empty()) write_file(out_path, render_grid(cells, cfg.palette, image_format_for(out_path)));
      const bool json_stdout = json_path && json_path->empty();
      if (json_path && !json_path->empty()) write_file(*json_path, dump(to_json(cells)));
      if (json_stdout) out << dump(to_json(cells));
      else out << summary_text(s, false);
      return s.unknown ? kInconclusive : kOk;
    }
    if (*atlas4) {
      Range3 r = rtext.empty() ? cfg.window4 : parse_range3(rtext);
      IntVector a = atext.empty() ? family4_anchor() : parse_vector(atext);
      auto cells = classify_family_4d(r, a, jobs);
      if (!out_path.empty()) {
        const long l = slice.value_or(0);
        if (l < r.lo || l > r.hi) throw PreconditionError("slice outside the range");
        std::vector<GridCell> flat;
        for (const auto& c : cells)
          if (c.params[0] == l) flat.push_back({{c.params[1], c.params[2]}, c.cls, c.kind, c.discriminant, {}, false});
        write_file(out_path, render_grid(flat, cfg.palette, image_format_for(out_path)));
      }
      const bool json_stdout = json_path && json_path->empty();
      if (json_path && !json_path->empty()) write_file(*json_path, dump(to_json(cells)));
      if (json_stdout) out << dump(to_json(cells));
      else out << summary_text(summarize(cells), true);
      return kOk;
    }
    if (*ray) {
      HessType t = parse_hess_type(ttext);
      IntVector a = parse_vector(atext), st = parse_vector(start_text);
      if (st.size() != 2) throw PreconditionError("start must be m,n");
      RayScan rs = ray_scan(t, a, st[0].get_si(), st[1].get_si(), direction, tmax,
                            make_strategy(strategy, b, cfg.precision_bits));
      bool inconclusive = false;
      for (const auto& p : rs.points)
        if (p.verdict && p.verdict->status == VerdictStatus::Inconclusive) inconclusive = true;
      if (json) {
        Json pts = Json::array();
        for (const auto& p : rs.points) {
          Json params = Json::array();
          for (const auto& x : p.params) params.push_back(to_json(x));
          Json jp{{"t", p.t}, {"params", params}, {"nrs", p.nrs}};
          if (p.verdict) jp["verdict"] = to_json(*p.verdict);
          pts.push_back(jp);
        }
        Json j{{"points", pts}, {"all_nrs", rs.all_nrs}, {"nonreduced", rs.nonreduced}};
        j["last_nonreduced"] = rs.last_nonreduced ? Json(*rs.last_nonreduced) : Json(nullptr);
        out << dump(j);
      } else {
        for (const auto& p : rs.points)
          out << p.t << " (" << p.params[0].get_str() << "," << p.params[1].get_str() << ") "
              << (p.verdict ? verdict_text(*p.verdict) : std::string("not NRS")) << "\n";
        out << "nonreduced " << rs.nonreduced;
        if (rs.last_nonreduced) out << ", last at t=" << *rs.last_nonreduced;
        out << (rs.all_nrs ? "" : ", ray leaves NRS") << "\n";
      }
      return inconclusive ? kInconclusive : kOk;
    }
    if (*vd) {
      bool ok = verify_dirichlet_element(parse_matrix_any(mtext), parse_matrix_any(xtext));
      if (json) out << dump(Json{{"accepted", ok}});
      else out << (ok ? "accepted" : "rejected") << "\n";
      return kOk;
    }
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

}  // namespace hesslab::cli
