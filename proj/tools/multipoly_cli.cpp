// multipoly: norms, polarization, composition checks, and ratio scans for
// multi-homogeneous polynomials over sup-norm spaces. Every subcommand is a
// thin shell over one library call; all numerics live in the library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "multipoly/json_io.hpp"

using namespace multipoly;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path);
  out << text;
}

void emit_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void check_field(Field actual, const std::string& wanted, const std::string& what) {
  if (wanted.empty()) return;
  const Field want = wanted == "complex" ? Field::complex : Field::real;
  if (actual != want) throw Error(what + " is not over the requested field " + wanted);
}

VectorMultiPolynomial load_vector_poly(const std::string& path, const std::string& field) {
  const json j = load_json(path);
  std::vector<MultiPolynomial> components;
  if (j.is_array()) {
    for (const auto& e : j) components.push_back(poly_from_json(e));
  } else {
    components.push_back(poly_from_json(j));
  }
  auto v = VectorMultiPolynomial::create(std::move(components));
  check_field(v.shape().field(), field, path);
  return v;
}

std::vector<std::vector<std::vector<Scalar>>> families_from_json(const json& j) {
  if (!j.is_array()) throw Error("families file must hold an array of families");
  std::vector<std::vector<std::vector<Scalar>>> out;
  for (const auto& fam : j) {
    if (!fam.is_array()) throw Error("each family must be an array of vectors");
    std::vector<std::vector<Scalar>> vectors;
    for (const auto& vec : fam) {
      if (!vec.is_array()) throw Error("each family vector must be an array");
      std::vector<Scalar> v;
      for (const auto& e : vec) {
        if (e.is_number()) {
          v.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
          v.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
          throw Error("family entries must be numbers or [re, im]");
        }
      }
      vectors.push_back(std::move(v));
    }
    out.push_back(std::move(vectors));
  }
  return out;
}

MultiDegree parse_degrees(const std::vector<std::uint32_t>& n) {
  MultiDegree md;
  md.degrees = n;
  if (!md.valid()) throw Error("option --n needs positive block degrees");
  return md;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for multi-homogeneous polynomials on sup-norm balls"};
  app.require_subcommand(1);
  std::string field;
  app.add_option("--field", field, "require inputs over this scalar field")
      ->check(CLI::IsMember({"real", "complex"}));

  // norm
  auto* cmd_norm = app.add_subcommand("norm", "bracket the sup norm of a polynomial");
  std::string norm_in, norm_out;
  SupNormOptions norm_opts;
  cmd_norm->add_option("--in", norm_in, "polynomial JSON")->required();
  cmd_norm->add_option("--out", norm_out, "write the estimate here instead of stdout");
  cmd_norm->add_option("--starts", norm_opts.starts, "ascent start points");
  cmd_norm->add_option("--seed", norm_opts.seed, "ascent start stream seed");
  cmd_norm->add_option("--budget", norm_opts.vertex_budget, "vertex enumeration budget");

  // polarize
  auto* cmd_pol = app.add_subcommand("polarize", "convert between polynomials and symmetric forms");
  std::string pol_in, pol_out;
  bool pol_invert = false, pol_bounds = false;
  unsigned pol_starts = 64;
  cmd_pol->add_option("--in", pol_in, "polynomial JSON (form JSON with --invert/--bounds)")
      ->required();
  cmd_pol->add_option("--out", pol_out, "output path");
  cmd_pol->add_flag("--invert", pol_invert, "form -> polynomial instead");
  cmd_pol->add_flag("--bounds", pol_bounds, "report the norm comparison for a form");
  cmd_pol->add_option("--starts", pol_starts, "ascent start points for --bounds");

  // compose-check
  auto* cmd_comp = app.add_subcommand("compose-check", "ideal inequality for t o P o (u_j)");
  std::string comp_t, comp_p, comp_out;
  std::vector<std::string> comp_us;
  double comp_tol = 1e-6;
  unsigned comp_starts = 64;
  cmd_comp->add_option("--t", comp_t, "output map JSON")->required();
  cmd_comp->add_option("--P", comp_p, "polynomial JSON (array = vector-valued)")->required();
  cmd_comp->add_option("--u", comp_us, "input map JSON, one per block (comma separated)")
      ->required()
      ->delimiter(',');
  cmd_comp->add_option("--tol", comp_tol, "pass tolerance");
  cmd_comp->add_option("--starts", comp_starts, "ascent start points");
  cmd_comp->add_option("--out", comp_out, "write the report here instead of stdout");

  // hyper-check
  auto* cmd_hyper = app.add_subcommand("hyper-check", "hyper inequality for R o P o (Q_i)");
  std::string hyper_r, hyper_p, hyper_out;
  std::vector<std::string> hyper_qs;
  std::vector<double> hyper_c{1.0}, hyper_k{1.0};
  double hyper_tol = 1e-6;
  unsigned hyper_starts = 64;
  cmd_hyper->add_option("--R", hyper_r, "outer polynomial JSON")->required();
  cmd_hyper->add_option("--P", hyper_p, "middle polynomial JSON (array = vector-valued)")
      ->required();
  cmd_hyper->add_option("--Q", hyper_qs, "inner polynomial JSON, one per middle block")
      ->required()
      ->delimiter(',');
  cmd_hyper->add_option("--C", hyper_c, "degree-indexed C constants")->delimiter(',');
  cmd_hyper->add_option("--K", hyper_k, "degree-indexed K constants")->delimiter(',');
  cmd_hyper->add_option("--tol", hyper_tol, "pass tolerance");
  cmd_hyper->add_option("--starts", hyper_starts, "ascent start points");
  cmd_hyper->add_option("--out", hyper_out, "write the report here instead of stdout");

  // summing
  auto* cmd_sum = app.add_subcommand("summing", "summing ratio of a polynomial over families");
  std::string sum_in, sum_fam, sum_mode = "abs", sum_out;
  double sum_p = 1.0;
  std::vector<double> sum_qs;
  cmd_sum->add_option("--in", sum_in, "polynomial JSON")->required();
  cmd_sum->add_option("--families", sum_fam, "families JSON, one family per block")->required();
  cmd_sum->add_option("--p", sum_p, "outer exponent")->required();
  cmd_sum->add_option("--q", sum_qs, "weak exponents, one per block")->required()->delimiter(',');
  cmd_sum->add_option("--mode", sum_mode, "abs (diagonal) or full")
      ->check(CLI::IsMember({"abs", "full"}));
  cmd_sum->add_option("--out", sum_out, "write the report here instead of stdout");

  // bh-scan
  auto* cmd_scan = app.add_subcommand("bh-scan", "coefficient/sup norm ratio growth scan");
  std::vector<std::uint32_t> scan_n, scan_r;
  double scan_p = 1.0;
  unsigned scan_seeds = 1;
  ScanOptions scan_opts;
  std::string scan_out, scan_summary_path;
  cmd_scan->add_option("--n", scan_n, "block degrees, e.g. 1,1")->required()->delimiter(',');
  cmd_scan->add_option("--p", scan_p, "coefficient norm exponent")->required();
  cmd_scan->add_option("--r", scan_r, "ascending slot dimensions")->required()->delimiter(',');
  cmd_scan->add_option("--seeds", scan_seeds, "seeds per r")->required();
  cmd_scan->add_option("--starts", scan_opts.starts, "ascent start points");
  cmd_scan->add_option("--budget", scan_opts.vertex_budget, "vertex enumeration budget");
  cmd_scan->add_option("--out", scan_out, "CSV path (stdout when omitted)");
  cmd_scan->add_option("--summary", scan_summary_path, "summary JSON path (stdout when omitted)");

  // ksz
  auto* cmd_ksz = app.add_subcommand("ksz", "random-sign form, optionally lifted");
  std::uint32_t ksz_r = 2, ksz_m = 2;
  std::uint64_t ksz_seed = 0;
  std::vector<std::uint32_t> ksz_n;
  std::string ksz_out;
  cmd_ksz->add_option("--r", ksz_r, "slot dimension")->required();
  cmd_ksz->add_option("--M", ksz_m, "arity (defaults to sum of --n)");
  cmd_ksz->add_option("--seed", ksz_seed, "sign seed");
  cmd_ksz->add_option("--n", ksz_n, "lift to these block degrees")->delimiter(',');
  cmd_ksz->add_option("--out", ksz_out, "write the polynomial here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_norm) {
      auto p = poly_from_json(load_json(norm_in));
      check_field(p.field(), field, norm_in);
      emit_json(norm_out, estimate_to_json(sup_norm_estimate(p, norm_opts)));
      return 0;
    }

    if (*cmd_pol) {
      if (pol_bounds) {
        auto a = form_from_json(load_json(pol_in));
        check_field(a.field(), field, pol_in);
        SupNormOptions opts;
        opts.starts = pol_starts;
        const auto b = form_norm_bounds(a, opts);
        emit_json(pol_out, json{{"poly", estimate_to_json(b.poly)},
                                {"form", estimate_to_json(b.form)},
                                {"factor", b.factor},
                                {"pass", b.pass}});
        return b.pass ? 0 : 2;
      }
      if (pol_invert) {
        auto a = form_from_json(load_json(pol_in));
        check_field(a.field(), field, pol_in);
        emit_json(pol_out, poly_to_json(poly_from_form(a)));
      } else {
        auto p = poly_from_json(load_json(pol_in));
        check_field(p.field(), field, pol_in);
        emit_json(pol_out, form_to_json(to_symmetric_form(p)));
      }
      return 0;
    }

    if (*cmd_comp) {
      const auto t = map_from_json(load_json(comp_t));
      const auto p = load_vector_poly(comp_p, field);
      std::vector<LinearMap> us;
      for (const auto& path : comp_us) us.push_back(map_from_json(load_json(path)));
      SupNormOptions opts;
      opts.starts = comp_starts;
      const auto rep = ideal_inequality_report(t, p, us, comp_tol, opts);
      emit_json(comp_out, report_to_json(rep));
      return rep.pass ? 0 : 2;
    }

    if (*cmd_hyper) {
      const auto r = poly_from_json(load_json(hyper_r));
      check_field(r.field(), field, hyper_r);
      const auto p = load_vector_poly(hyper_p, field);
      std::vector<VectorMultiPolynomial> qs;
      for (const auto& path : hyper_qs) qs.push_back(load_vector_poly(path, field));
      HyperIneqConfig config;
      config.c_seq = hyper_c;
      config.k_seq = hyper_k;
      config.tol = hyper_tol;
      SupNormOptions opts;
      opts.starts = hyper_starts;
      const auto rep = hyper_inequality_report(r, p, qs, config, opts);
      emit_json(hyper_out, report_to_json(rep));
      return rep.pass ? 0 : 2;
    }

    if (*cmd_sum) {
      const auto p = poly_from_json(load_json(sum_in));
      check_field(p.field(), field, sum_in);
      const auto families = families_from_json(load_json(sum_fam));
      const auto mode = sum_mode == "full" ? SummingMode::full : SummingMode::abs;
      emit_json(sum_out, summing_to_json(summing_ratio(p, families, sum_p, sum_qs, mode)));
      return 0;
    }

    if (*cmd_scan) {
      const auto res = ratio_scan(parse_degrees(scan_n), scan_p, scan_r, scan_seeds, scan_opts);
      write_text(scan_out, scan_csv(res));
      emit_json(scan_summary_path, scan_summary(res));
      return 0;
    }

    if (*cmd_ksz) {
      MultiPolynomial out = [&] {
        if (!ksz_n.empty()) {
          const auto md = parse_degrees(ksz_n);
          if (cmd_ksz->count("--M") && ksz_m != md.total())
            throw Error("option --M disagrees with the sum of --n");
          return ksz_lift(ksz_build(ksz_r, md.total(), ksz_seed), md);
        }
        if (!cmd_ksz->count("--M")) throw Error("option --M or --n is required");
        return ksz_build(ksz_r, ksz_m, ksz_seed).as_polynomial();
      }();
      emit_json(ksz_out, poly_to_json(out));
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
